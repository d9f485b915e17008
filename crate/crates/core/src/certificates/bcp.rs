use std::collections::{BTreeMap, BTreeSet};

use num_rational::Rational64;
use serde::Serialize;

use super::report::{AlphaReport, RadiusRow};
use crate::cayley::{analyze_path, RelBallGraph, RelPath, INF};
use crate::error::{Error, Result};
use crate::report::fmt_rational;

/// Paths visited by [`bcp_report`] before it stops and flags truncation.
pub const BCP_PATH_CAP: usize = 2_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Comp {
    parabolic: usize,
    coset: u32,
    start: usize,
    end: usize,
}

struct Walker<'a, F> {
    rel: &'a RelBallGraph,
    lambda: Rational64,
    len_cap: usize,
    cap: usize,
    visited: usize,
    truncated: bool,
    verts: Vec<u32>,
    visit: F,
}

impl<F: FnMut(&[u32], &[Comp])> Walker<'_, F> {
    fn run(&mut self, comps: &[Comp], active: &[Option<usize>]) {
        if self.visited >= self.cap {
            self.truncated = true;
            return;
        }
        self.visited += 1;
        (self.visit)(&self.verts, comps);
        let n = self.verts.len() - 1;
        if n == self.len_cap {
            return;
        }
        let u = self.verts[n];
        for v in self.rel.rel_neighbors(u) {
            // λ · d(p_i, v) >= (n + 1) - i for every earlier vertex
            let row = self.rel.rel_row(v);
            let ok = self.verts.iter().enumerate().all(|(i, &x)| {
                let d = row[x as usize];
                d != INF && self.lambda * d as i64 >= Rational64::from_integer((n + 1 - i) as i64)
            });
            if !ok {
                continue;
            }
            let mut next = comps.to_vec();
            let mut next_active = active.to_vec();
            let mut backtracks = false;
            for i in 0..self.rel.parabolics.len() {
                if !self.rel.same_coset(i, u, v) {
                    next_active[i] = None;
                    continue;
                }
                let c = self.rel.coset(i, u);
                match active[i] {
                    Some(k) if next[k].coset == c => next[k].end = n + 1,
                    _ => {
                        if next.iter().any(|x| x.parabolic == i && x.coset == c) {
                            backtracks = true;
                            break;
                        }
                        next_active[i] = Some(next.len());
                        next.push(Comp {
                            parabolic: i,
                            coset: c,
                            start: n,
                            end: n + 1,
                        });
                    }
                }
            }
            if backtracks {
                continue;
            }
            self.verts.push(v);
            self.run(&next, &next_active);
            self.verts.pop();
            if self.truncated {
                return;
            }
        }
    }
}

fn walk<F: FnMut(&[u32], &[Comp])>(
    rel: &RelBallGraph,
    lambda: Rational64,
    len_cap: usize,
    cap: usize,
    visit: F,
) -> bool {
    let mut w = Walker {
        rel,
        lambda,
        len_cap,
        cap,
        visited: 0,
        truncated: false,
        verts: vec![0],
        visit,
    };
    w.run(&[], &vec![None; rel.parabolics.len()]);
    w.truncated
}

/// All `λ`-bi-Lipschitz paths without backtracking that start at the
/// identity, with at most `len_cap` edges, as vertex sequences. Bi-Lipschitz
/// is checked on vertices in the relative metric. The flag reports
/// truncation at `cap` paths.
pub fn enumerate_bilipschitz_paths(
    rel: &RelBallGraph,
    lambda: Rational64,
    len_cap: usize,
    cap: usize,
) -> (Vec<Vec<u32>>, bool) {
    let mut out = Vec::new();
    let truncated = walk(rel, lambda, len_cap, cap, |verts, _| out.push(verts.to_vec()));
    (out, truncated)
}

/// BCP constants for one explicit pair of paths.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BcpPair {
    /// Largest `dist_S(s₋, s₊)` over components `s` of `p` with no component
    /// of `q` in the same coset.
    pub a1: u16,
    /// Largest endpoint deviation over same-coset component pairs.
    pub a2: u16,
    pub shared_cosets: usize,
}

pub fn bcp_pair(rel: &RelBallGraph, p: &RelPath, q: &RelPath) -> Result<BcpPair> {
    if p.start() != q.start() {
        return Err(Error::Precondition("paths must start at the same vertex".into()));
    }
    let ball = &rel.base;
    let (cp, cq) = (analyze_path(p, rel), analyze_path(q, rel));
    let mut out = BcpPair {
        a1: 0,
        a2: 0,
        shared_cosets: 0,
    };
    for s in &cp.components {
        let (s0, s1) = s.endpoints(p);
        let mut partner = false;
        for t in cq.components.iter().filter(|t| (t.parabolic, t.coset) == (s.parabolic, s.coset)) {
            partner = true;
            out.shared_cosets += 1;
            let (t0, t1) = t.endpoints(q);
            out.a2 = out.a2.max(ball.dist(s0, t0)).max(ball.dist(s1, t1));
        }
        if !partner {
            out.a1 = out.a1.max(ball.dist(s0, s1));
        }
    }
    Ok(out)
}

#[derive(Default)]
struct EndpointGroup {
    paths: usize,
    /// coset → (paths with a component there, distinct component endpoints)
    by_coset: BTreeMap<(usize, u32), (usize, BTreeSet<(u32, u32)>)>,
}

/// Measures BCP over all pairs of `λ`-bi-Lipschitz paths without
/// backtracking from the identity with at most `len_cap` edges whose
/// endpoints are at most one S-edge apart: `a1` for components left without
/// a same-coset partner, `a2` for endpoint deviations of partnered ones.
pub fn bcp_report(rel: &RelBallGraph, lambda: Rational64, len_cap: usize) -> Result<AlphaReport> {
    bcp_report_capped(rel, lambda, len_cap, BCP_PATH_CAP)
}

pub fn bcp_report_capped(rel: &RelBallGraph, lambda: Rational64, len_cap: usize, cap: usize) -> Result<AlphaReport> {
    if lambda < Rational64::from_integer(1) {
        return Err(Error::InvalidInput(format!("lambda must be at least 1, got {lambda}")));
    }
    let ball = &rel.base;
    let mut groups: BTreeMap<u32, EndpointGroup> = BTreeMap::new();
    let mut total = 0usize;
    let truncated = walk(rel, lambda, len_cap, cap, |verts, comps| {
        total += 1;
        let g = groups.entry(*verts.last().unwrap()).or_default();
        g.paths += 1;
        for c in comps {
            let e = g.by_coset.entry((c.parabolic, c.coset)).or_default();
            e.0 += 1;
            e.1.insert((verts[c.start], verts[c.end]));
        }
    });
    let (mut a1, mut a2) = (0u16, 0u16);
    let (mut w1, mut w2) = (None, None);
    let word = |v: u32| {
        let w = ball.word(v);
        if w.is_empty() {
            "1".to_string()
        } else {
            w.to_string()
        }
    };
    for (&e, g) in &groups {
        let mut partners: Vec<&EndpointGroup> = vec![g];
        partners.extend(ball.neighbors(e).filter_map(|(_, f)| groups.get(&f)));
        for (key, (_, comps)) in &g.by_coset {
            let unmatched = partners
                .iter()
                .any(|h| h.by_coset.get(key).map_or(0, |x| x.0) < h.paths);
            for &(s0, s1) in comps {
                if unmatched {
                    let d = ball.dist(s0, s1);
                    if d > a1 || w1.is_none() {
                        a1 = a1.max(d);
                        w1 = Some(format!("component {} -> {} with no partner: {d}", word(s0), word(s1)));
                    }
                }
                for h in &partners {
                    let Some((_, other)) = h.by_coset.get(key) else { continue };
                    for &(t0, t1) in other {
                        let d = ball.dist(s0, t0).max(ball.dist(s1, t1));
                        if d > a2 {
                            a2 = d;
                            w2 = Some(format!(
                                "components {} -> {} and {} -> {}: {d}",
                                word(s0),
                                word(s1),
                                word(t0),
                                word(t1)
                            ));
                        }
                    }
                }
            }
        }
    }
    let mut row = RadiusRow::new(ball.radius);
    row.set("a1", a1 as f64);
    row.set("a2", a2 as f64);
    row.set("a", a1.max(a2) as f64);
    row.set("paths", total as f64);
    row.set("endpoints", groups.len() as f64);
    row.truncated = truncated;
    row.witnesses.extend(w1);
    row.witnesses.extend(w2);
    Ok(AlphaReport::new(
        "bcp",
        "a",
        &[("lambda", fmt_rational(lambda)), ("len_cap", len_cap.to_string())],
        vec![row],
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley::{analyze_path, build_relative_ball, enumerate_ball, FreeAbelian, FreeGroup};
    use crate::words::w;
    use std::sync::Arc;

    fn rel(oracle: Arc<dyn crate::cayley::GroupOracle>, r: usize) -> RelBallGraph {
        build_relative_ball(Arc::new(enumerate_ball(oracle, r).unwrap()), &[vec![0]]).unwrap()
    }

    #[test]
    fn h_edge_against_s_path() {
        let g = rel(Arc::new(FreeGroup { rank: 2 }), 4);
        let a3 = g.base.locate(&w("a^3")).unwrap();
        let p = RelPath::from_vertices(&g, &[0, a3]).unwrap();
        let q = RelPath::spell(&g, 0, &w("aaa")).unwrap();
        let pair = bcp_pair(&g, &p, &q).unwrap();
        assert_eq!((pair.a1, pair.a2, pair.shared_cosets), (0, 0, 1));
    }

    #[test]
    fn enumerated_paths_satisfy_the_definition() {
        let g = rel(Arc::new(FreeAbelian { rank: 2 }), 3);
        let lambda = Rational64::from_integer(2);
        let (paths, truncated) = enumerate_bilipschitz_paths(&g, lambda, 3, 1_000_000);
        assert!(!truncated);
        assert!(paths.len() > 100);
        for p in &paths {
            let rp = RelPath::from_vertices(&g, p).unwrap();
            assert!(!analyze_path(&rp, &g).backtracking);
            for i in 0..p.len() {
                for j in i + 1..p.len() {
                    assert!(2 * g.rel_dist(p[i], p[j]) as usize >= j - i);
                }
            }
        }
    }

    #[test]
    fn geodesic_paths_in_tree_are_rel_geodesics() {
        let g = rel(Arc::new(FreeGroup { rank: 2 }), 3);
        let (paths, _) = enumerate_bilipschitz_paths(&g, 1.into(), 3, 1_000_000);
        for p in &paths {
            assert_eq!(g.rel_dist(p[0], *p.last().unwrap()) as usize, p.len() - 1);
        }
    }

    #[test]
    fn truncation_is_flagged() {
        let g = rel(Arc::new(FreeAbelian { rank: 2 }), 3);
        let rep = bcp_report_capped(&g, 2.into(), 4, 50).unwrap();
        assert!(rep.per_radius[0].truncated);
        assert!(bcp_report(&g, Rational64::new(1, 2), 2).is_err());
    }
}
