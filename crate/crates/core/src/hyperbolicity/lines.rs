use std::collections::HashMap;

use num_rational::Rational64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cayley::{first_geodesic, RelBallGraph, INF};
use crate::certificates::saturation;
use crate::error::{Error, Result};
use crate::report::{fmt_rational, ser_rational};

/// How a center is picked from the triple intersection of lines.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CenterRule {
    /// Least total word distance to the three points, then least id.
    Central,
    LeastId,
    /// Uniform choice from each center set, from a seeded stream.
    Seeded(u64),
}

/// `N_κ(Sat([u, v]))` for a fixed geodesic `[u, v]`, preordered by the
/// position along `[u, v]` of each member's nearest point.
#[derive(Clone, Debug)]
struct Line {
    geodesic: Vec<u32>,
    /// Members sorted by (position, id).
    members: Vec<u32>,
    pos: HashMap<u32, usize>,
}

/// A line seen from one end.
#[derive(Clone, Copy)]
pub struct LineView<'a> {
    line: &'a Line,
    reversed: bool,
}

impl LineView<'_> {
    pub fn position(&self, x: u32) -> Option<usize> {
        let p = *self.line.pos.get(&x)?;
        Some(if self.reversed { self.line.geodesic.len() - 1 - p } else { p })
    }

    pub fn contains(&self, x: u32) -> bool {
        self.line.pos.contains_key(&x)
    }

    pub fn members(&self) -> &[u32] {
        &self.line.members
    }

    pub fn geodesic(&self) -> Vec<u32> {
        let mut g = self.line.geodesic.clone();
        if self.reversed {
            g.reverse();
        }
        g
    }

    /// `x ≤ y` in the line's preorder.
    pub fn le(&self, x: u32, y: u32) -> Option<bool> {
        Some(self.position(x)? <= self.position(y)?)
    }

    /// Position range spanned by `x` and `y`.
    fn span(&self, x: u32, y: u32) -> Option<(usize, usize)> {
        let (a, b) = (self.position(x)?, self.position(y)?);
        Some((a.min(b), a.max(b)))
    }

    /// The interval `Λ[x, y]`: members between `x` and `y` in the preorder.
    pub fn segment(&self, x: u32, y: u32) -> Option<Vec<u32>> {
        let (lo, hi) = self.span(x, y)?;
        Some(
            self.line
                .members
                .iter()
                .copied()
                .filter(|&z| (lo..=hi).contains(&self.position(z).unwrap()))
                .collect(),
        )
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LineSystem {
    /// The vertices the system is defined on.
    pub vertices: Vec<u32>,
    #[serde(serialize_with = "ser_rational")]
    pub kappa0: Rational64,
    #[serde(serialize_with = "ser_rational")]
    pub mu0: Rational64,
    pub rule: CenterRule,
    /// Largest relative diameter of a triple intersection of lines.
    pub center_set_diameter: u16,
    #[serde(skip)]
    lines: HashMap<(u32, u32), Line>,
    #[serde(skip)]
    centers: HashMap<[u32; 3], u32>,
}

fn sorted3(u: u32, v: u32, w: u32) -> [u32; 3] {
    let mut t = [u, v, w];
    t.sort_unstable();
    t
}

fn rel_diameter(rel: &RelBallGraph, set: &[u32]) -> u16 {
    let mut best = 0;
    for (i, &x) in set.iter().enumerate() {
        let row = rel.rel_row(x);
        for &y in &set[i + 1..] {
            best = best.max(row[y as usize]);
        }
    }
    best
}

fn rel_hausdorff(rel: &RelBallGraph, a: &[u32], b: &[u32]) -> u16 {
    let one_way = |x: &[u32], y: &[u32]| {
        x.iter()
            .map(|&u| {
                let row = rel.rel_row(u);
                y.iter().map(|&v| row[v as usize]).min().unwrap_or(INF)
            })
            .max()
            .unwrap_or(0)
    };
    one_way(a, b).max(one_way(b, a))
}

impl LineSystem {
    pub fn line(&self, u: u32, v: u32) -> LineView<'_> {
        let key = (u.min(v), u.max(v));
        LineView {
            line: &self.lines[&key],
            reversed: u > v,
        }
    }

    /// `φ(u, v, w)`.
    pub fn center(&self, u: u32, v: u32, w: u32) -> u32 {
        self.centers[&sorted3(u, v, w)]
    }

    /// Overrides a center (for perturbation experiments); the axioms are
    /// re-checked by [`bowditch_k`].
    pub fn set_center(&mut self, u: u32, v: u32, w: u32, x: u32) {
        self.centers.insert(sorted3(u, v, w), x);
    }

    /// The triple intersection `Λ_uv ∩ Λ_vw ∩ Λ_uw`.
    pub fn center_set(&self, u: u32, v: u32, w: u32) -> Vec<u32> {
        let (a, b, c) = (self.line(u, v), self.line(v, w), self.line(u, w));
        a.members().iter().copied().filter(|&x| b.contains(x) && c.contains(x)).collect()
    }

    /// Checks the line axioms (l1)-(l3) and center axioms (c1)-(c3); the
    /// error names the first violated axiom.
    pub fn validate(&self) -> Result<()> {
        let vs = &self.vertices;
        for &u in vs {
            for &v in vs {
                let (f, b) = (self.line(u, v), self.line(v, u));
                for &x in f.members() {
                    // a position per member makes the preorder reflexive, transitive and total
                    let (Some(px), Some(qx)) = (f.position(x), b.position(x)) else {
                        return Err(Error::Verification(format!("(l1) member {x} of line {u}-{v} has no position")));
                    };
                    if px + qx != f.line.geodesic.len() - 1 {
                        return Err(Error::Verification(format!("(l3) line {u}-{v} is not reversed from {v}-{u}")));
                    }
                }
                if f.position(u) != Some(0) {
                    return Err(Error::Verification(format!("(l2) {u} is not least on line {u}-{v}")));
                }
            }
        }
        for (a, &u) in vs.iter().enumerate() {
            for (b, &v) in vs.iter().enumerate().skip(a) {
                for &w in &vs[b..] {
                    let c = self.center(u, v, w);
                    for (x, y, z) in [(u, v, w), (u, w, v), (v, u, w), (v, w, u), (w, u, v), (w, v, u)] {
                        if self.center(x, y, z) != c {
                            return Err(Error::Verification(format!("(c1) center of {u},{v},{w} not symmetric")));
                        }
                    }
                    if (u == v || v == w) && c != v {
                        return Err(Error::Verification(format!("(c2) center of {u},{v},{w} is {c}, not {v}")));
                    }
                    if !(self.line(u, v).contains(c) && self.line(v, w).contains(c) && self.line(u, w).contains(c)) {
                        return Err(Error::Verification(format!("(c3) center {c} of {u},{v},{w} leaves a line")));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Lines `Λ_uv = N_κ₀(Sat_μ₀([u, v]))` over the first geodesic `[u, v]`,
/// and centers chosen from the triple intersections, for every pair and
/// triple of vertices within `inner` of the identity.
pub fn build_lines_centers(
    rel: &RelBallGraph,
    kappa0: Rational64,
    mu0: Rational64,
    inner: usize,
    rule: CenterRule,
) -> Result<LineSystem> {
    if kappa0 < mu0 {
        return Err(Error::Precondition(format!("kappa0 = {kappa0} is below mu0 = {mu0}")));
    }
    let ball = &rel.base;
    if inner > ball.radius {
        return Err(Error::Precondition(format!("inner radius {inner} exceeds the ball radius {}", ball.radius)));
    }
    let vertices: Vec<u32> = ball.within(inner).collect();
    let radius = kappa0.floor().to_integer().max(0) as u16;
    let mut lines = HashMap::new();
    for (a, &u) in vertices.iter().enumerate() {
        for &v in &vertices[a..] {
            let geodesic = first_geodesic(ball, u, v);
            let sat = saturation(rel, &geodesic, mu0);
            let d = ball.dist_from_set(&sat);
            let rows: Vec<&[u16]> = geodesic.iter().map(|&g| ball.dist_row(g)).collect();
            let mut pos = HashMap::new();
            for x in 0..ball.len() as u32 {
                if d[x as usize] > radius {
                    continue;
                }
                let k = (0..geodesic.len())
                    .min_by_key(|&k| (rows[k][x as usize], geodesic[k]))
                    .unwrap();
                pos.insert(x, k);
            }
            let mut members: Vec<u32> = pos.keys().copied().collect();
            members.sort_unstable_by_key(|x| (pos[x], *x));
            lines.insert((u, v), Line { geodesic, members, pos });
        }
    }
    let mut ls = LineSystem {
        vertices: vertices.clone(),
        kappa0,
        mu0,
        rule,
        center_set_diameter: 0,
        lines,
        centers: HashMap::new(),
    };
    let mut rng = match rule {
        CenterRule::Seeded(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        _ => None,
    };
    for (a, &u) in vertices.iter().enumerate() {
        for (b, &v) in vertices.iter().enumerate().skip(a) {
            for &w in &vertices[b..] {
                let c = if u == v || v == w {
                    v
                } else {
                    let set = ls.center_set(u, v, w);
                    if set.is_empty() {
                        return Err(Error::Precondition(format!(
                            "empty center set for {}, {}, {} at kappa0 = {}; try a larger kappa0",
                            ball.word(u),
                            ball.word(v),
                            ball.word(w),
                            fmt_rational(kappa0)
                        )));
                    }
                    ls.center_set_diameter = ls.center_set_diameter.max(rel_diameter(rel, &set));
                    match rule {
                        CenterRule::LeastId => set.iter().copied().min().unwrap(),
                        CenterRule::Seeded(_) => set[rng.as_mut().unwrap().gen_range(0..set.len())],
                        CenterRule::Central => set
                            .iter()
                            .copied()
                            .min_by_key(|&x| {
                                let s = ball.dist(x, u) as u32 + ball.dist(x, v) as u32 + ball.dist(x, w) as u32;
                                (s, x)
                            })
                            .unwrap(),
                    }
                };
                ls.centers.insert([u, v, w], c);
            }
        }
    }
    Ok(ls)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BowditchReport {
    #[serde(rename = "K_I")]
    pub k_i: u16,
    #[serde(rename = "K_II")]
    pub k_ii: u16,
    #[serde(rename = "K_III")]
    pub k_iii: u16,
    #[serde(rename = "K")]
    pub k: u16,
    pub radius: usize,
    pub kappa0: f64,
    pub mu0: f64,
    pub vertices: usize,
    pub center_set_diameter: u16,
    pub witnesses: Vec<String>,
}

/// The least constants for conditions (I), (II) and (III) over the system's
/// vertices, with diameters and Hausdorff distances in the relative metric.
/// The axioms are verified first.
pub fn bowditch_k(rel: &RelBallGraph, ls: &LineSystem) -> Result<BowditchReport> {
    ls.validate()?;
    let ball = &rel.base;
    let vs = &ls.vertices;
    let name = |v: u32| {
        let w = ball.word(v);
        if w.is_empty() {
            "1".to_string()
        } else {
            w.to_string()
        }
    };
    let mut rep = BowditchReport {
        k_i: 0,
        k_ii: 0,
        k_iii: 0,
        k: 0,
        radius: ball.radius,
        kappa0: crate::report::rational_to_f64(ls.kappa0),
        mu0: crate::report::rational_to_f64(ls.mu0),
        vertices: vs.len(),
        center_set_diameter: ls.center_set_diameter,
        witnesses: Vec::new(),
    };
    let mut w_i = None;
    for &u in vs {
        for &v in vs {
            for &w in vs {
                let c = ls.center(u, v, w);
                let a = ls.line(u, v).segment(u, c).unwrap();
                let b = ls.line(u, w).segment(u, c).unwrap();
                let h = rel_hausdorff(rel, &a, &b);
                if h > rep.k_i {
                    rep.k_i = h;
                    w_i = Some(format!("(I) u={}, v={}, w={}: {h}", name(u), name(v), name(w)));
                }
            }
        }
    }
    let mut diam_cache: HashMap<(u32, u32, usize, usize), u16> = HashMap::new();
    let mut w_ii = None;
    let mut w_iii = None;
    for &u in vs {
        for &v in vs {
            let line = ls.line(u, v);
            let mut diam = |x: u32, y: u32| {
                let (lo, hi) = line.span(x, y).unwrap();
                *diam_cache
                    .entry((u, v, lo, hi))
                    .or_insert_with(|| rel_diameter(rel, &line.segment(x, y).unwrap()))
            };
            for &p in vs {
                let cp = ls.center(u, v, p);
                for &q in vs {
                    if p >= q || rel.rel_dist(p, q) > 1 {
                        continue;
                    }
                    let d = diam(cp, ls.center(u, v, q));
                    if d > rep.k_ii {
                        rep.k_ii = d;
                        w_ii = Some(format!("(II) u={}, v={}, p={}, q={}: {d}", name(u), name(v), name(p), name(q)));
                    }
                }
                if line.contains(p) {
                    let d = diam(p, cp);
                    if d > rep.k_iii {
                        rep.k_iii = d;
                        w_iii = Some(format!("(III) u={}, v={}, w={}: {d}", name(u), name(v), name(p)));
                    }
                }
            }
        }
    }
    rep.k = rep.k_i.max(rep.k_ii).max(rep.k_iii);
    rep.witnesses.extend(w_i);
    rep.witnesses.extend(w_ii);
    rep.witnesses.extend(w_iii);
    Ok(rep)
}

/// Spread of `K` over center choices: the two deterministic rules plus
/// `samples` seeded ones.
#[derive(Clone, Debug, Serialize)]
pub struct CenterSensitivity {
    pub k_min: u16,
    pub k_max: u16,
    pub choices: usize,
    pub per_choice: Vec<(String, u16)>,
}

pub fn center_sensitivity(
    rel: &RelBallGraph,
    kappa0: Rational64,
    mu0: Rational64,
    inner: usize,
    samples: usize,
    seed: u64,
) -> Result<CenterSensitivity> {
    let mut rules = vec![CenterRule::Central, CenterRule::LeastId];
    rules.extend((0..samples as u64).map(|i| CenterRule::Seeded(seed.wrapping_add(i))));
    let mut per_choice = Vec::new();
    for rule in rules {
        let ls = build_lines_centers(rel, kappa0, mu0, inner, rule)?;
        let k = bowditch_k(rel, &ls)?.k;
        let label = match rule {
            CenterRule::Central => "central".to_string(),
            CenterRule::LeastId => "least-id".to_string(),
            CenterRule::Seeded(s) => format!("seeded-{s}"),
        };
        per_choice.push((label, k));
    }
    Ok(CenterSensitivity {
        k_min: per_choice.iter().map(|c| c.1).min().unwrap(),
        k_max: per_choice.iter().map(|c| c.1).max().unwrap(),
        choices: per_choice.len(),
        per_choice,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley::{build_relative_ball, enumerate_ball, FreeGroup};
    use std::sync::Arc;

    fn f2(r: usize, pars: &[Vec<usize>]) -> RelBallGraph {
        build_relative_ball(Arc::new(enumerate_ball(Arc::new(FreeGroup { rank: 2 }), r).unwrap()), pars).unwrap()
    }

    #[test]
    fn tree_lines_are_geodesics_with_median_centers() {
        // the trivial subgroup: every coset is a point
        let rel = f2(4, &[vec![]]);
        let ls = build_lines_centers(&rel, 0.into(), 0.into(), 2, CenterRule::Central).unwrap();
        let b = &rel.base;
        let v = |s: &str| b.locate(&crate::words::w(s)).unwrap();
        assert_eq!(ls.line(v("a"), v("b")).members().len(), 3);
        assert_eq!(ls.center(v("a"), v("b"), v("ab")), v("a"));
        assert_eq!(ls.center(v("a^2"), v("ab"), v("b")), v("a"));
        assert_eq!(ls.center(v("a^2"), v("b^2"), v("a'")), 0);
        assert_eq!(ls.center_set_diameter, 0);
        let rep = bowditch_k(&rel, &ls).unwrap();
        assert_eq!((rep.k_i, rep.k_iii), (0, 0));
        // medians of adjacent points sit one step apart
        assert_eq!(rep.k_ii, 1);
    }

    #[test]
    fn kappa_must_dominate_mu() {
        let rel = f2(3, &[vec![0]]);
        assert!(build_lines_centers(&rel, 0.into(), 1.into(), 1, CenterRule::Central).is_err());
    }

    #[test]
    fn relative_centers_exist() {
        let rel = f2(4, &[vec![0]]);
        let ls = build_lines_centers(&rel, 1.into(), 0.into(), 2, CenterRule::Central).unwrap();
        ls.validate().unwrap();
        let rep = bowditch_k(&rel, &ls).unwrap();
        assert!(rep.k >= rep.k_ii);
    }

    #[test]
    fn corrupted_center_is_caught_or_costs() {
        let rel = f2(4, &[vec![]]);
        let mut ls = build_lines_centers(&rel, 0.into(), 0.into(), 2, CenterRule::Central).unwrap();
        let b = &rel.base;
        let v = |s: &str| b.locate(&crate::words::w(s)).unwrap();
        ls.set_center(v("a"), v("b"), v("a'"), v("b"));
        assert!(matches!(bowditch_k(&rel, &ls), Err(Error::Verification(m)) if m.starts_with("(c3)")));
    }

    #[test]
    fn moving_a_center_within_its_set_raises_k() {
        let rel = f2(4, &[vec![0]]);
        let mut ls = build_lines_centers(&rel, 1.into(), 0.into(), 2, CenterRule::Central).unwrap();
        assert_eq!(bowditch_k(&rel, &ls).unwrap().k, 5);
        let b = &rel.base;
        let v = |s: &str| b.locate(&crate::words::w(s)).unwrap();
        assert!(ls.center_set(0, v("b"), v("b'")).contains(&v("b'")));
        ls.set_center(0, v("b"), v("b'"), v("b'"));
        assert_eq!(bowditch_k(&rel, &ls).unwrap().k, 6);
    }

    #[test]
    fn central_rule_is_least_on_a_small_sample() {
        let rel = f2(4, &[vec![0]]);
        let s = center_sensitivity(&rel, 1.into(), 0.into(), 2, 2, 7).unwrap();
        assert_eq!(s.choices, 4);
        assert_eq!(s.per_choice[0].1, s.k_min);
    }
}
