use num_rational::Rational64;
use serde::Serialize;

use super::params::SatParams;
use super::quasi::{is_quasi_geodesic, sample_quasi_geodesics};
use super::report::{AlphaReport, RadiusRow};
use super::saturation::{saturation, saturation_cosets};
use super::le;
use crate::cayley::{first_geodesic, first_rel_geodesic, lift_path, RelBallGraph, RelPath, INF};
use crate::error::{Error, Result};
use crate::report::fmt_rational;
use crate::words::Word;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
struct MorseValues {
    tau1: u16,
    delta: u16,
    tau3: u16,
    /// `None` when the lift leaves the ball.
    tau4: Option<u16>,
}

fn max_dist_to(rel: &RelBallGraph, points: &[u32], set: &[u32]) -> u16 {
    let d = rel.base.dist_from_set(set);
    points.iter().map(|&x| d[x as usize]).max().unwrap_or(0)
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

fn measure(rel: &RelBallGraph, g: &[u32], q: &[u32], p: &RelPath, sp: &SatParams) -> Result<MorseValues> {
    let ball = &rel.base;
    let (Some(&g0), Some(&g1)) = (g.first(), g.last()) else {
        return Err(Error::InvalidInput("empty geodesic".into()));
    };
    if g.windows(2).any(|e| ball.dist(e[0], e[1]) != 1) || ball.dist(g0, g1) as usize != g.len() - 1 {
        return Err(Error::Precondition("g is not a geodesic".into()));
    }
    if q.first() != Some(&g0) || q.last() != Some(&g1) || p.start() != g0 || p.end() != g1 {
        return Err(Error::Precondition("g, q and p must share endpoints".into()));
    }
    if !is_quasi_geodesic(ball, q, sp.l, sp.c) {
        return Err(Error::Precondition(format!("q is not a ({}, {})-quasi-geodesic", sp.l, sp.c)));
    }
    p.validate(rel)?;

    let tau1 = max_dist_to(rel, q, &saturation(rel, g, sp.m));

    // points of q near two different saturation cosets
    let kappa = sp.mu;
    let cosets = saturation_cosets(rel, g, sp.m);
    let mut near: Vec<Vec<usize>> = vec![Vec::new(); q.len()];
    for (k, &(i, c)) in cosets.iter().enumerate() {
        let d = ball.dist_from_set(rel.coset_members(i, c));
        for (j, &x) in q.iter().enumerate() {
            if le(d[x as usize], kappa) {
                near[j].push(k);
            }
        }
    }
    let to_g = ball.dist_from_set(g);
    let mut delta = 0;
    for (j, here) in near.iter().enumerate() {
        let paired = here.iter().any(|&a| {
            near.iter()
                .enumerate()
                .any(|(t, there)| t != j && there.iter().any(|&b| b != a))
        });
        if paired {
            delta = delta.max(to_g[q[j] as usize]);
        }
    }

    let tau3 = rel_hausdorff(rel, q, &p.vertices);

    let tau4 = match lift_path(p, rel) {
        Ok(lift) => {
            let limit = 2 * ball.radius as u16 + 1;
            let mut found = limit;
            for t in 0..=limit {
                let tr = Rational64::from_integer(t as i64);
                let there = max_dist_to(rel, q, &saturation(rel, &lift, tr));
                let back = max_dist_to(rel, &lift, &saturation(rel, q, tr));
                if there <= t && back <= t {
                    found = t;
                    break;
                }
            }
            Some(found)
        }
        Err(Error::OutsideBall(_)) => None,
        Err(e) => return Err(e),
    };
    Ok(MorseValues {
        tau1,
        delta,
        tau3,
        tau4,
    })
}

fn params(sp: &SatParams) -> Vec<(&'static str, String)> {
    vec![
        ("L", fmt_rational(sp.l)),
        ("C", fmt_rational(sp.c)),
        ("mu", fmt_rational(sp.mu)),
        ("M", fmt_rational(sp.m)),
    ]
}

fn fill(row: &mut RadiusRow, v: &MorseValues) {
    row.set("tau1", v.tau1 as f64);
    row.set("delta", v.delta as f64);
    row.set("tau3", v.tau3 as f64);
    let mut tau = v.tau1.max(v.tau3);
    match v.tau4 {
        Some(t) => {
            row.set("tau4", t as f64);
            tau = tau.max(t);
        }
        None => row.truncated = true,
    }
    row.set("tau", tau as f64);
}

/// Morse diagnostics for one geodesic `g`, quasi-geodesic `q` (both vertex
/// paths in the S-metric) and relative path `p` with common endpoints:
/// `tau1` is the distance from `q` to the `M`-saturation of `g`; `delta` the
/// distance to `g` of points of `q` lying in `μ`-neighbourhoods of two
/// different saturation cosets; `tau3` the relative Hausdorff distance from
/// `q` to `p`; `tau4` the least `t` with `q` and the lift of `p` each inside
/// the `t`-neighbourhood of the other's `t`-saturation.
pub fn morse_report(rel: &RelBallGraph, g: &[u32], q: &[u32], p: &RelPath, sp: &SatParams) -> Result<AlphaReport> {
    let v = measure(rel, g, q, p, sp)?;
    let mut row = RadiusRow::new(rel.base.radius);
    fill(&mut row, &v);
    if v.tau4.is_none() {
        row.witnesses.push("lift of p leaves the ball; tau4 not measured".into());
    }
    Ok(AlphaReport::new("morse", "tau", &params(sp), vec![row]))
}

/// A sampled quasi-geodesic from the identity, stored as words so it can be
/// replayed in larger balls.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MorseSample {
    pub path: Vec<Word>,
}

/// Seeded `(L, C)`-quasi-geodesics from the identity in `rel`'s ball.
pub fn morse_samples(rel: &RelBallGraph, sp: &SatParams, count: usize, seed: u64) -> Vec<MorseSample> {
    let ball = &rel.base;
    sample_quasi_geodesics(ball, 0, sp.l, sp.c, 2 * ball.radius, count, seed)
        .into_iter()
        .map(|q| MorseSample {
            path: q.iter().map(|&v| ball.word(v).clone()).collect(),
        })
        .collect()
}

/// Runs [`morse_report`] on every sample, with `g` the first geodesic and
/// `p` the first relative geodesic between the sample's endpoints, and keeps
/// the largest value of each constant.
pub fn morse_sample_report(rel: &RelBallGraph, samples: &[MorseSample], sp: &SatParams) -> Result<AlphaReport> {
    let ball = &rel.base;
    let mut worst = MorseValues {
        tau4: Some(0),
        ..Default::default()
    };
    let mut used = 0usize;
    let mut skipped = 0usize;
    let mut witness: Option<(u16, String)> = None;
    for s in samples {
        let q: Vec<u32> = s
            .path
            .iter()
            .map(|w| ball.locate(w).ok_or_else(|| Error::OutsideBall(format!("sample vertex {w}"))))
            .collect::<Result<_>>()?;
        let end = *q.last().unwrap();
        let g = first_geodesic(ball, 0, end);
        let p = first_rel_geodesic(rel, 0, end);
        let v = match measure(rel, &g, &q, &p, sp) {
            Ok(v) => v,
            Err(Error::Precondition(_)) => {
                skipped += 1;
                continue;
            }
            Err(e) => return Err(e),
        };
        used += 1;
        let tau = v.tau1.max(v.tau3).max(v.tau4.unwrap_or(0));
        if witness.as_ref().map_or(true, |(t, _)| tau > *t) {
            witness = Some((tau, format!("sample to {}: tau {tau}", ball.word(end))));
        }
        worst.tau1 = worst.tau1.max(v.tau1);
        worst.delta = worst.delta.max(v.delta);
        worst.tau3 = worst.tau3.max(v.tau3);
        worst.tau4 = match (worst.tau4, v.tau4) {
            (Some(a), Some(b)) => Some(a.max(b)),
            _ => None,
        };
    }
    let mut row = RadiusRow::new(ball.radius);
    fill(&mut row, &worst);
    row.set("samples", used as f64);
    row.set("skipped", skipped as f64);
    row.vacuous = used == 0;
    row.witnesses.extend(witness.map(|(_, w)| w));
    Ok(AlphaReport::new("morse", "tau", &params(sp), vec![row]))
}
