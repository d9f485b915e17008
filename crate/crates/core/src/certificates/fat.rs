use num_rational::Rational64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::params::FatParams;
use super::quasi::random_geodesic;
use super::report::{AlphaReport, RadiusRow};
use super::lt;
use crate::cayley::{BallGraph, RelBallGraph, INF};
use crate::error::{Error, Result};
use crate::report::{fmt_rational, rational_to_f64};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FatCheck {
    pub fat: bool,
    /// Smallest slack over all (F1) and (F2) inequalities; infinite when no
    /// inequality constrains the polygon.
    pub margin: f64,
    pub f1_margin: f64,
    pub f2_margin: f64,
}

fn validate(ball: &BallGraph, edges: &[Vec<u32>]) -> Result<()> {
    let k = edges.len();
    if k < 2 {
        return Err(Error::InvalidInput(format!("a polygon needs at least 2 edges, got {k}")));
    }
    for (i, e) in edges.iter().enumerate() {
        let (Some(&first), Some(&last)) = (e.first(), e.last()) else {
            return Err(Error::InvalidInput(format!("edge {i} is empty")));
        };
        if e.windows(2).any(|p| ball.dist(p[0], p[1]) != 1) {
            return Err(Error::InvalidInput(format!("edge {i} is not a path")));
        }
        if ball.dist(first, last) as usize != e.len() - 1 {
            return Err(Error::InvalidInput(format!(
                "edge {i} is not geodesic: length {} between points at distance {}",
                e.len() - 1,
                ball.dist(first, last)
            )));
        }
        if edges[(i + 1) % k][0] != last {
            return Err(Error::InvalidInput(format!("edge {i} does not end where edge {} starts", (i + 1) % k)));
        }
    }
    Ok(())
}

fn min_dist(ball: &BallGraph, from: &[u32], to: &[u32]) -> u16 {
    let mut best = INF;
    for &z in from {
        let row = ball.dist_row(z);
        for &t in to {
            best = best.min(row[t as usize]);
        }
    }
    best
}

fn slack(d: u16, need: Rational64) -> f64 {
    if d == INF {
        f64::INFINITY
    } else {
        rational_to_f64(Rational64::from_integer(d as i64) - need)
    }
}

/// Checks (F1) for every edge and (F2) for every vertex of a closed polygon
/// whose edges are given as geodesic vertex paths, edge `i` ending where edge
/// `i+1` starts. Vertex occurrences on other edges count as `P \ q`.
pub fn is_fat_polygon(ball: &BallGraph, edges: &[Vec<u32>], fp: &FatParams) -> Result<FatCheck> {
    validate(ball, edges)?;
    let k = edges.len();
    let near = fp.sigma * fp.theta;
    let mut f1 = f64::INFINITY;
    for (i, q) in edges.iter().enumerate() {
        let (x, y) = (q[0], *q.last().unwrap());
        let inner: Vec<u32> = q
            .iter()
            .copied()
            .filter(|&z| !lt(ball.dist(z, x), near) && !lt(ball.dist(z, y), near))
            .collect();
        let rest: Vec<u32> = (0..k).filter(|&j| j != i).flat_map(|j| edges[j].iter().copied()).collect();
        if inner.is_empty() || rest.is_empty() {
            continue;
        }
        f1 = f1.min(slack(min_dist(ball, &inner, &rest), fp.theta));
    }
    let mut f2 = f64::INFINITY;
    for i in 0..k {
        let x = edges[i][0];
        let prev = (i + k - 1) % k;
        let far: Vec<u32> = (0..k)
            .filter(|&j| j != i && j != prev)
            .flat_map(|j| edges[j].iter().copied())
            .collect();
        if far.is_empty() {
            continue;
        }
        f2 = f2.min(slack(min_dist(ball, &[x], &far), fp.nu * fp.theta));
    }
    let margin = f1.min(f2);
    Ok(FatCheck {
        fat: margin >= 0.0,
        margin,
        f1_margin: f1,
        f2_margin: f2,
    })
}

/// Smallest `χ` with the vertex set inside `N_χ(A)` for some ball coset `A`,
/// with that coset.
fn polygon_chi(rel: &RelBallGraph, vertices: &[u32]) -> (u16, (usize, u32)) {
    let ball = &rel.base;
    let mut best = (INF, (0, 0));
    for i in 0..rel.parabolics.len() {
        let count = rel.coset_count(i);
        let mut worst = vec![0u16; count];
        for &p in vertices {
            let row = ball.dist_row(p);
            let mut to_coset = vec![INF; count];
            for (v, &d) in row.iter().enumerate() {
                let c = rel.coset(i, v as u32) as usize;
                to_coset[c] = to_coset[c].min(d);
            }
            for c in 0..count {
                worst[c] = worst[c].max(to_coset[c]);
            }
        }
        for (c, &w) in worst.iter().enumerate() {
            if w < best.0 {
                best = (w, (i, c as u32));
            }
        }
    }
    best
}

/// Samples `k`-gons (`k` in {3, 4}) with random geodesic edges between
/// seeded random vertices; over those that are fat, `χ` is the largest
/// distance needed to fit the polygon in one coset neighbourhood.
pub fn alpha3_report(rel: &RelBallGraph, fp: &FatParams, k: usize, samples: usize, seed: u64) -> Result<AlphaReport> {
    if !(3..=4).contains(&k) {
        return Err(Error::InvalidInput(format!("polygons must have 3 or 4 vertices, got {k}")));
    }
    let ball = &rel.base;
    let n = ball.len() as u32;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let spread = fp.nu * fp.theta;
    let (mut fat, mut tried) = (0usize, 0usize);
    let mut chi_max: Option<(u16, String)> = None;
    for _ in 0..samples {
        let corners: Vec<u32> = (0..k).map(|_| rng.gen_range(0..n)).collect();
        // (F2) forces every pair of corners at least νθ apart
        let spread_ok = corners
            .iter()
            .enumerate()
            .all(|(a, &x)| corners[a + 1..].iter().all(|&y| !lt(ball.dist(x, y), spread)));
        if !spread_ok {
            continue;
        }
        tried += 1;
        let edges: Vec<Vec<u32>> = (0..k)
            .map(|i| random_geodesic(ball, corners[i], corners[(i + 1) % k], &mut rng))
            .collect();
        if !is_fat_polygon(ball, &edges, fp)?.fat {
            continue;
        }
        fat += 1;
        let mut vertices: Vec<u32> = edges.concat();
        vertices.sort_unstable();
        vertices.dedup();
        let (chi, (i, c)) = polygon_chi(rel, &vertices);
        if chi_max.as_ref().map_or(true, |(m, _)| chi > *m) {
            let names: Vec<String> = corners.iter().map(|&v| ball.word(v).to_string()).collect();
            chi_max = Some((
                chi,
                format!("polygon [{}] lies in N_{chi}({})", names.join(", "), super::alpha::coset_label(rel, i, c)),
            ));
        }
    }
    let mut row = RadiusRow::new(ball.radius);
    row.set("fat", fat as f64);
    row.set("candidates", tried as f64);
    row.set("sampled", samples as f64);
    match chi_max {
        Some((chi, w)) => {
            row.set("chi", chi as f64);
            row.witnesses.push(w);
        }
        None => {
            row.vacuous = true;
            row.witnesses.push(format!("vacuous at radius {}: no fat polygon found", ball.radius));
        }
    }
    Ok(AlphaReport::new(
        "alpha3",
        "chi",
        &[
            ("theta", fmt_rational(fp.theta)),
            ("sigma", fmt_rational(fp.sigma)),
            ("nu", fmt_rational(fp.nu)),
            ("k", k.to_string()),
            ("samples", samples.to_string()),
            ("seed", seed.to_string()),
        ],
        vec![row],
    ))
}
