use std::collections::{BTreeMap, HashMap};

use num_rational::Rational64;

use super::quasi::sample_quasi_geodesics;
use super::report::{AlphaReport, RadiusRow};
use super::{bounded_bfs, floor_u16, le, set_diameter};
use crate::cayley::RelBallGraph;
use crate::error::{Error, Result};
use crate::report::fmt_rational;

pub(crate) fn coset_label(rel: &RelBallGraph, parabolic: usize, coset: u32) -> String {
    let rep = rel.coset_members(parabolic, coset)[0];
    let w = rel.base.word(rep);
    let w = if w.is_empty() { "1".to_string() } else { w.to_string() };
    format!("{w}H{}", parabolic + 1)
}

/// Largest diameter of `N_δ(A) ∩ N_δ(B)` over distinct ball cosets, with
/// closed neighbourhoods and the ball metric.
pub fn alpha1_report(rel: &RelBallGraph, delta: Rational64) -> Result<AlphaReport> {
    let cosets = rel.cosets(1);
    if cosets.len() < 2 {
        return Err(Error::Precondition("need at least two cosets in the ball".into()));
    }
    let ball = &rel.base;
    let radius = floor_u16(delta);
    let mut near: Vec<Vec<u32>> = vec![Vec::new(); ball.len()];
    for (k, &(i, c)) in cosets.iter().enumerate() {
        for (v, _) in bounded_bfs(ball, rel.coset_members(i, c), radius) {
            near[v as usize].push(k as u32);
        }
    }
    let mut shared: BTreeMap<(u32, u32), Vec<u32>> = BTreeMap::new();
    for (v, ks) in near.iter().enumerate() {
        for (a, &x) in ks.iter().enumerate() {
            for &y in &ks[a + 1..] {
                shared.entry((x, y)).or_default().push(v as u32);
            }
        }
    }
    let mut best: Option<(u16, (u32, u32))> = None;
    for (&pair, set) in &shared {
        let d = set_diameter(ball, set);
        if best.map_or(true, |(b, _)| d > b) {
            best = Some((d, pair));
        }
    }
    let mut row = RadiusRow::new(ball.radius);
    row.set("diameter", best.map_or(0.0, |(d, _)| d as f64));
    row.set("pairs", shared.len() as f64);
    row.set("cosets", cosets.len() as f64);
    if let Some((d, (x, y))) = best {
        let (a, b) = (cosets[x as usize], cosets[y as usize]);
        row.witnesses.push(format!(
            "{} and {}: diameter {d}",
            coset_label(rel, a.0, a.1),
            coset_label(rel, b.0, b.1)
        ));
    }
    Ok(AlphaReport::new("alpha1", "diameter", &[("delta", fmt_rational(delta))], vec![row]))
}

fn check_theta(theta: Rational64) -> Result<()> {
    if theta < Rational64::from_integer(0) || theta >= Rational64::new(1, 2) {
        return Err(Error::InvalidInput(format!("theta must lie in [0, 1/2), got {theta}")));
    }
    Ok(())
}

/// Geodesics from the identity: for every coset `A` and every endpoint `v`
/// at length `ℓ` with `1, v ∈ N_{θℓ}(A)`, the largest over geodesics
/// `[1, v]` of their distance to `A`. `M` is the maximum of these values.
///
/// A max-min dynamic programme over the geodesic layers covers every
/// geodesic, so nothing is sampled or truncated.
pub fn alpha2_report(rel: &RelBallGraph, theta: Rational64) -> Result<AlphaReport> {
    check_theta(theta)?;
    let ball = &rel.base;
    let r = ball.radius;
    let cutoff = floor_u16(theta * r as i64) as usize;
    let mut per_len: BTreeMap<usize, (u16, usize)> = BTreeMap::new();
    let mut witness: Option<(u16, String)> = None;
    let n = ball.len();
    let mut best = vec![0u16; n];
    for (i, c) in rel.cosets(1) {
        let members = rel.coset_members(i, c);
        if ball.depth(members[0]) > cutoff {
            continue;
        }
        let d_a = ball.dist_from_set(members);
        best[0] = d_a[0];
        for v in 1..n as u32 {
            let depth = ball.depth(v);
            let through = ball
                .neighbors(v)
                .filter(|&(_, y)| ball.depth(y) + 1 == depth)
                .map(|(_, y)| best[y as usize])
                .max()
                .expect("every vertex has a parent");
            best[v as usize] = through.min(d_a[v as usize]);
            let bound = theta * depth as i64;
            if le(d_a[0], bound) && le(d_a[v as usize], bound) {
                let entry = per_len.entry(depth).or_insert((0, 0));
                entry.1 += 1;
                let m = best[v as usize];
                if m > entry.0 {
                    entry.0 = m;
                }
                if witness.as_ref().map_or(true, |(w, _)| m > *w) {
                    witness = Some((m, format!("geodesic 1 -> {} stays {m} from {}", ball.word(v), coset_label(rel, i, c))));
                }
            }
        }
    }
    let mut row = RadiusRow::new(r);
    row.set("M", per_len.values().map(|&(m, _)| m as f64).fold(0.0, f64::max));
    row.set("instances", per_len.values().map(|&(_, k)| k as f64).sum());
    for (len, (m, _)) in &per_len {
        row.set(&format!("M_l{len:02}"), *m as f64);
    }
    row.vacuous = per_len.is_empty();
    row.witnesses.extend(witness.map(|(_, w)| w));
    Ok(AlphaReport::new("alpha2", "M", &[("theta", fmt_rational(theta))], vec![row]))
}

/// The quasi-geodesic variant on seeded samples from the identity: for each
/// sampled `q` of length `ℓ` and coset `A` with both endpoints in
/// `N_{θℓ/L}(A)`, the distance from `q` to `A`.
pub fn alpha2_prime_report(
    rel: &RelBallGraph,
    l: Rational64,
    c: Rational64,
    theta: Rational64,
    samples: usize,
    seed: u64,
) -> Result<AlphaReport> {
    check_theta(theta)?;
    if l < Rational64::from_integer(1) || c < Rational64::from_integer(0) {
        return Err(Error::InvalidInput(format!("need L >= 1, C >= 0 (got {l}, {c})")));
    }
    let ball = &rel.base;
    let r = ball.radius;
    let qs = sample_quasi_geodesics(ball, 0, l, c, 2 * r, samples, seed);
    let mut cache: HashMap<(usize, u32), Vec<u16>> = HashMap::new();
    let mut m_max = 0u16;
    let mut instances = 0usize;
    let mut witness = None;
    for q in &qs {
        let len = q.len() - 1;
        let bound = theta * len as i64 / l;
        let end = *q.last().unwrap();
        // cosets within the bound of the identity
        let mut near: Vec<(usize, u32)> = Vec::new();
        for (v, _) in bounded_bfs(ball, &[0], floor_u16(bound)) {
            for i in 0..rel.parabolics.len() {
                near.push((i, rel.coset(i, v)));
            }
        }
        near.sort_unstable();
        near.dedup();
        for (i, cs) in near {
            let d_a = cache
                .entry((i, cs))
                .or_insert_with(|| ball.dist_from_set(rel.coset_members(i, cs)));
            if !(le(d_a[0], bound) && le(d_a[end as usize], bound)) {
                continue;
            }
            instances += 1;
            let m = q.iter().map(|&x| d_a[x as usize]).min().unwrap();
            if m > m_max || witness.is_none() {
                m_max = m_max.max(m);
                witness = Some(format!("sample to {} stays {m} from {}", ball.word(end), coset_label(rel, i, cs)));
            }
        }
    }
    let mut row = RadiusRow::new(r);
    row.set("M", m_max as f64);
    row.set("instances", instances as f64);
    row.set("samples", qs.len() as f64);
    row.vacuous = instances == 0;
    row.truncated = qs.len() < samples;
    row.witnesses.extend(witness);
    Ok(AlphaReport::new(
        "alpha2-prime",
        "M",
        &[
            ("L", fmt_rational(l)),
            ("C", fmt_rational(c)),
            ("theta", fmt_rational(theta)),
            ("samples", samples.to_string()),
            ("seed", seed.to_string()),
        ],
        vec![row],
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley::{build_relative_ball, enumerate_ball, FreeAbelian, FreeGroup};
    use std::sync::Arc;

    fn rel(oracle: Arc<dyn crate::cayley::GroupOracle>, r: usize, pars: &[Vec<usize>]) -> RelBallGraph {
        build_relative_ball(Arc::new(enumerate_ball(oracle, r).unwrap()), pars).unwrap()
    }

    #[test]
    fn alpha1_free_group_is_one() {
        for r in 3..=5 {
            let g = rel(Arc::new(FreeGroup { rank: 2 }), r, &[vec![0]]);
            let rep = alpha1_report(&g, 1.into()).unwrap();
            assert_eq!(rep.per_radius[0].get("diameter"), Some(1.0), "r = {r}");
        }
    }

    #[test]
    fn alpha1_lattice_grows() {
        let vals: Vec<f64> = (3..=5)
            .map(|r| {
                let g = rel(Arc::new(FreeAbelian { rank: 2 }), r, &[vec![0]]);
                alpha1_report(&g, 1.into()).unwrap().series()[0]
            })
            .collect();
        assert!(vals.windows(2).all(|w| w[0] < w[1]), "{vals:?}");
    }

    #[test]
    fn alpha1_needs_two_cosets() {
        let g = rel(Arc::new(FreeAbelian { rank: 1 }), 3, &[vec![0]]);
        assert!(matches!(alpha1_report(&g, 1.into()), Err(Error::Precondition(_))));
    }

    #[test]
    fn alpha2_tree_is_zero() {
        let g = rel(Arc::new(FreeGroup { rank: 2 }), 5, &[vec![0]]);
        let rep = alpha2_report(&g, Rational64::new(1, 3)).unwrap();
        assert_eq!(rep.per_radius[0].get("M"), Some(0.0));
        assert!(rep.per_radius[0].get("instances").unwrap() > 0.0);
        assert!(alpha2_report(&g, Rational64::new(1, 2)).is_err());
    }

    #[test]
    fn alpha2_prime_tree_is_zero() {
        let g = rel(Arc::new(FreeGroup { rank: 2 }), 4, &[vec![0]]);
        let rep = alpha2_prime_report(&g, 2.into(), 0.into(), Rational64::new(1, 3), 30, 3).unwrap();
        assert_eq!(rep.per_radius[0].get("M"), Some(0.0));
        assert_eq!(rep.per_radius[0].get("samples"), Some(30.0));
    }
}
