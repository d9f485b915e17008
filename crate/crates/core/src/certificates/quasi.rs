use num_rational::Rational64;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cayley::{BallGraph, INF};

/// Checks the lower quasi-geodesic inequality `d(p_i, p_j) >= |i-j|/L - C`
/// over all vertex pairs of an edge path; the upper one holds for any path
/// with unit steps. Non-adjacent consecutive vertices fail the check.
pub fn is_quasi_geodesic(ball: &BallGraph, path: &[u32], l: Rational64, c: Rational64) -> bool {
    if path.windows(2).any(|w| ball.dist(w[0], w[1]) != 1) {
        return false;
    }
    for (i, &u) in path.iter().enumerate() {
        let row = ball.dist_row(u);
        for (j, &v) in path.iter().enumerate().skip(i + 1) {
            let d = row[v as usize];
            if d == INF {
                return false;
            }
            // (d + C) L >= j - i
            if (Rational64::from_integer(d as i64) + c) * l < Rational64::from_integer((j - i) as i64) {
                return false;
            }
        }
    }
    true
}

/// A geodesic from `u` to `v` chosen uniformly step by step among the
/// neighbours that keep it geodesic.
pub fn random_geodesic(ball: &BallGraph, u: u32, v: u32, rng: &mut impl Rng) -> Vec<u32> {
    let to_v = ball.dist_row(v);
    let mut path = vec![u];
    let mut x = u;
    let mut options = Vec::new();
    while x != v {
        let dx = to_v[x as usize];
        options.clear();
        options.extend(ball.neighbors(x).map(|(_, y)| y).filter(|&y| to_v[y as usize] + 1 == dx));
        x = *options.choose(rng).expect("ball is connected");
        path.push(x);
    }
    path
}

/// Seeded `(L, C)`-quasi-geodesics from `from` of length at most `max_len`:
/// a random geodesic to a random waypoint followed by one to a random end,
/// kept only when the exact check passes.
pub fn sample_quasi_geodesics(
    ball: &BallGraph,
    from: u32,
    l: Rational64,
    c: Rational64,
    max_len: usize,
    count: usize,
    seed: u64,
) -> Vec<Vec<u32>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = ball.len() as u32;
    let mut out = Vec::with_capacity(count);
    if n < 2 {
        return out;
    }
    let from_row = ball.dist_row(from).to_vec();
    let attempts = count * 200;
    for _ in 0..attempts {
        if out.len() == count {
            break;
        }
        let end = rng.gen_range(0..n);
        if end == from || from_row[end as usize] as usize > max_len {
            continue;
        }
        let to_end = ball.dist_row(end);
        let direct = from_row[end as usize] as i64;
        let budget = (l * direct + c).floor().to_integer().min(max_len as i64);
        let waypoints: Vec<u32> = (0..n)
            .filter(|&w| (from_row[w as usize] as i64 + to_end[w as usize] as i64) <= budget)
            .collect();
        let w = *waypoints.choose(&mut rng).expect("geodesic vertices qualify");
        let mut q = random_geodesic(ball, from, w, &mut rng);
        q.extend_from_slice(&random_geodesic(ball, w, end, &mut rng)[1..]);
        if q.len() - 1 <= max_len && is_quasi_geodesic(ball, &q, l, c) {
            out.push(q);
        }
    }
    out
}
