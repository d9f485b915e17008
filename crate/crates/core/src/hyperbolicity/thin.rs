use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::metric::{interval, Interval, Metric, RelMetric, SMetric};
use crate::cayley::{BallGraph, RelBallGraph};

/// Which triangles to scan.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TriangleMode {
    /// Every vertex triple of the ball, repeated vertices included.
    Exhaustive,
    /// Every triple with one corner at the identity.
    Based,
    Sampled { count: usize, seed: u64 },
}

/// Triangles scanned in exhaustive mode before the scan stops.
pub const TRIANGLE_CAP: usize = 50_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ThinReport {
    pub delta: u16,
    pub triangles: usize,
    pub mode: TriangleMode,
    pub radius: usize,
    pub truncated: bool,
    pub witness: Option<[u32; 3]>,
}

/// Thinness of the triangle over every choice of geodesic sides: for each
/// side and each vertex on some geodesic of that side, the worst choice of
/// the other two sides.
fn triangle_delta(m: &dyn Metric, sides: [&Interval; 3], best: u16, scratch: &mut Vec<u16>) -> u16 {
    // sides[0] = xy, sides[1] = yz, sides[2] = xz
    let mut out = best;
    for (side, (o1, o2)) in [(0, (1, 2)), (1, (0, 2)), (2, (0, 1))] {
        for &v in &sides[side].vertices {
            let f1 = sides[o1].farthest_geodesic(m, v, scratch);
            if f1 <= out {
                continue;
            }
            let f2 = sides[o2].farthest_geodesic(m, v, scratch);
            out = out.max(f1.min(f2));
        }
    }
    out
}

fn scan(m: &dyn Metric, mode: TriangleMode, radius: usize) -> ThinReport {
    let n = m.len() as u32;
    let mut rep = ThinReport {
        delta: 0,
        triangles: 0,
        mode,
        radius,
        truncated: false,
        witness: None,
    };
    let mut scratch = Vec::new();
    let mut consider = |rep: &mut ThinReport, x: u32, y: u32, z: u32, ixy: &Interval, iyz: &Interval, ixz: &Interval| {
        rep.triangles += 1;
        let d = triangle_delta(m, [ixy, iyz, ixz], rep.delta, &mut scratch);
        if d > rep.delta || rep.witness.is_none() {
            rep.delta = d;
            rep.witness = Some([x, y, z]);
        }
    };
    match mode {
        TriangleMode::Exhaustive => {
            'outer: for x in 0..n {
                for y in x..n {
                    let ixy = interval(m, x, y);
                    for z in y..n {
                        if rep.triangles >= TRIANGLE_CAP {
                            rep.truncated = true;
                            break 'outer;
                        }
                        let (iyz, ixz) = (interval(m, y, z), interval(m, x, z));
                        consider(&mut rep, x, y, z, &ixy, &iyz, &ixz);
                    }
                }
            }
        }
        TriangleMode::Based => {
            let from0: Vec<Interval> = (0..n).map(|y| interval(m, 0, y)).collect();
            for y in 0..n {
                for z in y..n {
                    let iyz = interval(m, y, z);
                    consider(&mut rep, 0, y, z, &from0[y as usize], &iyz, &from0[z as usize]);
                }
            }
        }
        TriangleMode::Sampled { count, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..count {
                let (x, y, z) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
                let (ixy, iyz, ixz) = (interval(m, x, y), interval(m, y, z), interval(m, x, z));
                consider(&mut rep, x, y, z, &ixy, &iyz, &ixz);
            }
        }
    }
    rep
}

/// Largest distance from a vertex on one side of a geodesic triangle to the
/// union of the other two sides, over the triangles selected by `mode`.
pub fn thin_triangle_delta(ball: &BallGraph, mode: TriangleMode) -> ThinReport {
    scan(&SMetric::new(ball), mode, ball.radius)
}

/// The relative version: sides are geodesics in `S ∪ ℋ`, while the distance
/// from a side vertex to the other sides is measured in the word metric.
pub fn rel_thin_triangle_delta(rel: &RelBallGraph, mode: TriangleMode) -> ThinReport {
    scan(&RelMetric::new(rel), mode, rel.base.radius)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley::{build_relative_ball, enumerate_ball, FreeAbelian, FreeGroup};
    use std::sync::Arc;

    #[test]
    fn tree_triangles_are_tripods() {
        let b = enumerate_ball(Arc::new(FreeGroup { rank: 2 }), 3).unwrap();
        let rep = thin_triangle_delta(&b, TriangleMode::Exhaustive);
        assert_eq!(rep.delta, 0);
        assert_eq!(rep.triangles, 53 * 54 * 55 / 6);
    }

    #[test]
    fn lattice_is_not_thin() {
        let b = enumerate_ball(Arc::new(FreeAbelian { rank: 2 }), 4).unwrap();
        let rep = thin_triangle_delta(&b, TriangleMode::Exhaustive);
        // a bigon through opposite corners of the diamond
        assert_eq!(rep.delta, 4);
        let based = thin_triangle_delta(&b, TriangleMode::Based);
        assert!(based.delta <= rep.delta);
    }

    #[test]
    fn relative_free_group() {
        let b = Arc::new(enumerate_ball(Arc::new(FreeGroup { rank: 2 }), 4).unwrap());
        let rel = build_relative_ball(b, &[vec![0]]).unwrap();
        let rep = rel_thin_triangle_delta(&rel, TriangleMode::Based);
        assert!(rep.delta <= 1);
    }

    #[test]
    fn sampled_is_seeded() {
        let b = enumerate_ball(Arc::new(FreeAbelian { rank: 2 }), 4).unwrap();
        let mode = TriangleMode::Sampled { count: 200, seed: 9 };
        assert_eq!(thin_triangle_delta(&b, mode), thin_triangle_delta(&b, mode));
    }
}
