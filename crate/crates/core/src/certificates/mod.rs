//! Measured certificates for relatively hyperbolic groups on finite balls.
//!
//! Every "there exists a constant" statement becomes a measured number at a
//! fixed radius; boundedness is inspected over a radius sweep with
//! [`AlphaReport::combine`].

mod alpha;
mod bcp;
mod fat;
mod morse;
mod params;
mod quasi;
mod report;
mod saturation;

pub use alpha::{alpha1_report, alpha2_prime_report, alpha2_report};
pub use bcp::{bcp_pair, bcp_report, bcp_report_capped, enumerate_bilipschitz_paths, BcpPair, BCP_PATH_CAP};
pub use fat::{alpha3_report, is_fat_polygon, FatCheck};
pub use morse::{morse_report, morse_sample_report, morse_samples, MorseSample};
pub use params::{FatParams, SatParams};
pub use quasi::{is_quasi_geodesic, random_geodesic, sample_quasi_geodesics};
pub use report::{AlphaReport, RadiusRow, Verdict};
pub use saturation::{saturation, saturation_cosets};

use num_rational::Rational64;

use crate::cayley::{BallGraph, INF};

/// `d ≤ r` for an integer distance.
pub(crate) fn le(d: u16, r: Rational64) -> bool {
    d != INF && (d as i64) * r.denom() <= *r.numer()
}

/// `d < r` for an integer distance.
pub(crate) fn lt(d: u16, r: Rational64) -> bool {
    d != INF && (d as i64) * r.denom() < *r.numer()
}

pub(crate) fn floor_u16(r: Rational64) -> u16 {
    r.floor().to_integer().clamp(0, INF as i64 - 1) as u16
}

/// Diameter of a vertex set in the ball metric, by breadth-first search
/// from each member that stops once every other member is reached.
pub(crate) fn set_diameter(ball: &BallGraph, set: &[u32]) -> u16 {
    if set.len() < 2 {
        return 0;
    }
    let mut target = vec![false; ball.len()];
    for &v in set {
        target[v as usize] = true;
    }
    let mut dist = vec![INF; ball.len()];
    let mut touched = Vec::new();
    let mut best = 0;
    for &s in set {
        let mut remaining = set.len() - 1;
        let mut queue = std::collections::VecDeque::from([s]);
        dist[s as usize] = 0;
        touched.push(s);
        while let Some(x) = queue.pop_front() {
            let dx = dist[x as usize];
            if x != s && target[x as usize] {
                best = best.max(dx);
                remaining -= 1;
                if remaining == 0 {
                    break;
                }
            }
            for (_, y) in ball.neighbors(x) {
                if dist[y as usize] == INF {
                    dist[y as usize] = dx + 1;
                    touched.push(y);
                    queue.push_back(y);
                }
            }
        }
        if remaining > 0 {
            best = INF;
        }
        for t in touched.drain(..) {
            dist[t as usize] = INF;
        }
        if best == INF {
            break;
        }
    }
    best
}

/// Vertices within `radius` of `sources`, with their distances.
pub(crate) fn bounded_bfs(ball: &BallGraph, sources: &[u32], radius: u16) -> Vec<(u32, u16)> {
    let mut seen = std::collections::HashMap::new();
    let mut queue = std::collections::VecDeque::new();
    for &s in sources {
        if seen.insert(s, 0u16).is_none() {
            queue.push_back(s);
        }
    }
    while let Some(x) = queue.pop_front() {
        let dx = seen[&x];
        if dx == radius {
            continue;
        }
        for (_, y) in ball.neighbors(x) {
            if let std::collections::hash_map::Entry::Vacant(e) = seen.entry(y) {
                e.insert(dx + 1);
                queue.push_back(y);
            }
        }
    }
    let mut out: Vec<(u32, u16)> = seen.into_iter().collect();
    out.sort_unstable();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley::{enumerate_ball, FreeAbelian};
    use std::sync::Arc;

    #[test]
    fn diameter_of_lattice_sets() {
        let b = enumerate_ball(Arc::new(FreeAbelian { rank: 2 }), 4).unwrap();
        let v = |s: &str| b.locate(&crate::words::w(s)).unwrap();
        assert_eq!(set_diameter(&b, &[v("a^2"), v("b'^2"), 0]), 4);
        assert_eq!(set_diameter(&b, &[v("ab")]), 0);
        assert_eq!(bounded_bfs(&b, &[0], 1).len(), 5);
    }

    #[test]
    fn rational_comparisons() {
        let third = Rational64::new(1, 3);
        assert!(le(1, third * 3));
        assert!(!lt(1, third * 3));
        assert!(!le(INF, Rational64::from_integer(1000)));
        assert_eq!(floor_u16(Rational64::new(7, 2)), 3);
    }
}
