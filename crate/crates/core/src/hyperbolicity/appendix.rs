use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cayley::{analyze_path, first_rel_geodesic, Component, RelBallGraph, RelPath, INF};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LogDistortion {
    /// Max over vertices of `q` of the word distance to `p`.
    pub max_distance: u16,
    pub path_len: usize,
    /// `log₂ |p|`; multiply by `1 + ν` for the bound.
    pub log_len: f64,
}

impl LogDistortion {
    pub fn within(&self, nu: f64) -> bool {
        self.max_distance as f64 <= log_bound(nu, self.path_len)
    }
}

/// `(1 + ν) log₂ len`, zero for paths of length at most one.
pub fn log_bound(nu: f64, len: usize) -> f64 {
    if len <= 1 {
        0.0
    } else {
        (1.0 + nu) * (len as f64).log2()
    }
}

/// How far a relative geodesic `q` strays, in the word metric, from a path
/// `p` with the same endpoints.
pub fn log_distortion_check(rel: &RelBallGraph, p: &RelPath, q: &RelPath) -> Result<LogDistortion> {
    p.validate(rel)?;
    q.validate(rel)?;
    if (p.start(), p.end()) != (q.start(), q.end()) {
        return Err(Error::Precondition("paths do not share endpoints".into()));
    }
    if q.len() != rel.rel_dist(q.start(), q.end()) as usize {
        return Err(Error::Precondition("q is not a relative geodesic".into()));
    }
    let d = rel.base.dist_from_set(&p.vertices);
    let max_distance = q.vertices.iter().map(|&v| d[v as usize]).max().unwrap_or(0);
    Ok(LogDistortion {
        max_distance,
        path_len: p.len(),
        log_len: if p.len() <= 1 { 0.0 } else { (p.len() as f64).log2() },
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IsolatedReport {
    pub alpha: f64,
    pub per_cycle: Vec<f64>,
    /// Index of the cycle attaining `alpha`.
    pub worst: Option<usize>,
}

/// Components of a closed path, with a component running through the
/// basepoint counted once.
pub fn cyclic_components(rel: &RelBallGraph, q: &RelPath) -> Vec<Component> {
    let mut comps = analyze_path(q, rel).components;
    if comps.len() >= 2 {
        let (first, last) = (comps[0], comps[comps.len() - 1]);
        if first.start == 0
            && last.end == q.len()
            && (first.parabolic, first.coset) == (last.parabolic, last.coset)
        {
            comps.pop();
            comps[0].start = last.start;
        }
    }
    comps
}

/// Word length of the isolated components of a closed path, divided by its
/// length. A component is isolated when no other component lies in its
/// coset.
pub fn isolated_ratio(rel: &RelBallGraph, q: &RelPath) -> Result<f64> {
    q.validate(rel)?;
    if q.start() != q.end() {
        return Err(Error::Precondition("path is not closed".into()));
    }
    if q.is_empty() {
        return Ok(0.0);
    }
    let comps = cyclic_components(rel, q);
    let mut total = 0u32;
    for (i, c) in comps.iter().enumerate() {
        let isolated = comps
            .iter()
            .enumerate()
            .all(|(j, o)| j == i || (o.parabolic, o.coset) != (c.parabolic, c.coset));
        if isolated {
            let (u, v) = c.endpoints(q);
            let d = rel.dist_s(u, v);
            if d == INF {
                return Err(Error::OutsideBall(format!("component endpoints {u}, {v}")));
            }
            total += d as u32;
        }
    }
    Ok(total as f64 / q.len() as f64)
}

pub fn isolated_component_alpha(rel: &RelBallGraph, cycles: &[RelPath]) -> Result<IsolatedReport> {
    let per_cycle = cycles.iter().map(|q| isolated_ratio(rel, q)).collect::<Result<Vec<_>>>()?;
    let worst = (0..per_cycle.len()).max_by(|&a, &b| per_cycle[a].total_cmp(&per_cycle[b]).then(b.cmp(&a)));
    Ok(IsolatedReport {
        alpha: worst.map_or(0.0, |i| per_cycle[i]),
        per_cycle,
        worst,
    })
}

/// Closed relative paths based at the identity: a random walk closed up by
/// the first relative geodesic back, kept when the total length is at most
/// `max_len`.
pub fn sample_rel_cycles(rel: &RelBallGraph, max_len: usize, count: usize, seed: u64) -> Vec<RelPath> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    if max_len < 2 {
        return out;
    }
    for _ in 0..count * 50 {
        if out.len() == count {
            break;
        }
        let steps = rng.gen_range(1..=max_len / 2);
        let mut walk = vec![0u32];
        for _ in 0..steps {
            let next = *rel.rel_neighbors(*walk.last().unwrap()).choose(&mut rng).unwrap();
            walk.push(next);
        }
        let back = first_rel_geodesic(rel, *walk.last().unwrap(), 0);
        walk.extend_from_slice(&back.vertices[1..]);
        if walk.len() - 1 > max_len || walk.len() < 3 {
            continue;
        }
        if let Ok(p) = RelPath::from_vertices(rel, &walk) {
            out.push(p);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley::{build_relative_ball, enumerate_ball, EdgeTag, FreeAbelian, FreeGroup};
    use crate::words::{w, Letter};
    use std::sync::Arc;

    fn rel(oracle: Arc<dyn crate::cayley::GroupOracle>, r: usize) -> RelBallGraph {
        build_relative_ball(Arc::new(enumerate_ball(oracle, r).unwrap()), &[vec![0]]).unwrap()
    }

    #[test]
    fn geodesic_against_itself_is_zero() {
        let rel = rel(Arc::new(FreeGroup { rank: 2 }), 4);
        let v = rel.base.locate(&w("ba^2b")).unwrap();
        let q = first_rel_geodesic(&rel, 0, v);
        let m = log_distortion_check(&rel, &q, &q).unwrap();
        assert_eq!(m.max_distance, 0);
        let one = RelPath::spell(&rel, 0, &w("b")).unwrap();
        let m = log_distortion_check(&rel, &one, &one).unwrap();
        assert_eq!((m.max_distance, m.log_len), (0, 0.0));
        assert!(m.within(0.0));
    }

    #[test]
    fn detour_in_the_tree_stays_within_the_log_bound() {
        let rel = rel(Arc::new(FreeGroup { rank: 2 }), 8);
        let p = RelPath::spell(&rel, 0, &w("b^3a^2b'^3")).unwrap();
        let q = first_rel_geodesic(&rel, 0, p.end());
        assert_eq!(q.len(), 7);
        let m = log_distortion_check(&rel, &p, &q).unwrap();
        assert_eq!(m.max_distance, 0);
        assert!(m.within(0.0));
        assert!((log_bound(0.0, 8) - 3.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_a_non_geodesic_q() {
        let rel = rel(Arc::new(FreeGroup { rank: 2 }), 4);
        let p = RelPath::spell(&rel, 0, &w("aa")).unwrap();
        assert!(log_distortion_check(&rel, &p, &p).is_err());
    }

    #[test]
    fn two_isolated_cosets_in_the_plane() {
        // b, then the coset edge b -> ba^3, back down, then ⟨a⟩ home
        let rel = rel(Arc::new(FreeAbelian { rank: 2 }), 6);
        let x = |s: &str| rel.base.locate(&w(s)).unwrap();
        let h = |v: u32| EdgeTag::H { parabolic: 0, coset: rel.coset(0, v) };
        let mut q = RelPath::trivial(0);
        q.push(x("b"), EdgeTag::S(Letter::pos(1)));
        q.push(x("ba^3"), h(x("b")));
        q.push(x("a^3"), EdgeTag::S(Letter::neg(1)));
        q.push(0, h(0));
        assert_eq!(isolated_ratio(&rel, &q).unwrap(), 1.5);
    }

    #[test]
    fn cycle_without_components_and_merged_wraparound() {
        let rel = rel(Arc::new(FreeAbelian { rank: 2 }), 4);
        let q = RelPath::spell(&rel, 0, &w("bb'")).unwrap();
        assert_eq!(isolated_ratio(&rel, &q).unwrap(), 0.0);
        // the two a-edges lie in different cosets
        let q = RelPath::spell(&rel, 0, &w("aba'b'")).unwrap();
        assert_eq!(cyclic_components(&rel, &q).len(), 2);
        assert_eq!(isolated_ratio(&rel, &q).unwrap(), 0.5);
        // a rotation starting mid-component merges across the basepoint
        let q = RelPath::spell(&rel, 0, &w("aba'^2b'a")).unwrap();
        assert_eq!(cyclic_components(&rel, &q).len(), 2);
        assert_eq!(isolated_ratio(&rel, &q).unwrap(), 4.0 / 6.0);
    }

    #[test]
    fn sampled_cycles_are_closed_and_seeded() {
        let rel = rel(Arc::new(FreeGroup { rank: 2 }), 5);
        let a = sample_rel_cycles(&rel, 10, 20, 3);
        assert_eq!(a, sample_rel_cycles(&rel, 10, 20, 3));
        assert!(!a.is_empty());
        for q in &a {
            assert!(q.start() == 0 && q.end() == 0 && q.len() <= 10);
        }
        let rep = isolated_component_alpha(&rel, &a).unwrap();
        assert_eq!(rep.per_cycle.len(), a.len());
    }
}
