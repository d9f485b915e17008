use std::collections::BTreeMap;

use num_rational::Rational64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::report::fmt_rational;
use crate::words::{cyclic_normalize, WordSet};

/// One checked inequality of the certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Instance {
    pub stage: usize,
    pub condition: String,
    pub statement: String,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FastSequence {
    pub d_seq: Vec<i64>,
    pub certificate: Vec<Instance>,
}

/// Number of orbits (under rotation and inversion) of each length in `w`.
pub fn orbit_supply(w: &WordSet) -> BTreeMap<usize, usize> {
    let mut reps = std::collections::BTreeSet::new();
    for x in w {
        let a = cyclic_normalize(x);
        let b = cyclic_normalize(&x.inverse());
        reps.insert(a.min(b));
    }
    let mut out = BTreeMap::new();
    for r in reps {
        *out.entry(r.len()).or_insert(0) += 1;
    }
    out
}

fn ceil(r: Rational64) -> i64 {
    r.ceil().to_integer()
}

/// Least integer sequence, chosen stage by stage, with
/// (1) `κ(i) ≥ E_n` for `⌊ζⁿd_n⌋ ≤ i ≤` the longest length in `kappa`,
/// (2′) `ζⁿd_n / d_{n-1} ≥ growth·n` and (3′) `E_n / (ζⁿd_n) ≤ eps[n]`.
pub fn fast_sequence(
    edge_counts: &[usize],
    zeta: Rational64,
    kappa: &BTreeMap<usize, usize>,
    growth: Rational64,
    eps: &[Rational64],
) -> Result<FastSequence> {
    let zero = Rational64::from_integer(0);
    if zeta <= zero || zeta >= Rational64::from_integer(1) {
        return Err(Error::Precondition(format!("zeta {zeta} outside (0,1)")));
    }
    if growth < zero {
        return Err(Error::Precondition("growth is negative".into()));
    }
    if eps.len() < edge_counts.len() || eps.iter().any(|&e| e <= zero) || eps.windows(2).any(|w| w[1] > w[0]) {
        return Err(Error::Precondition("eps must be positive, nonincreasing and cover every stage".into()));
    }
    let max_len = kappa.keys().next_back().copied().unwrap_or(0);
    let mut d_seq: Vec<i64> = Vec::new();
    for (idx, &e_n) in edge_counts.iter().enumerate() {
        let n = idx + 1;
        let zn = zeta.pow(n as i32);
        let e = Rational64::from_integer(e_n as i64);
        let mut d = ceil(e / (zn * eps[idx])).max(1);
        if let Some(&prev) = d_seq.last() {
            d = d.max(ceil(growth * Rational64::from_integer((n as i64) * prev) / zn)).max(prev + 1);
        }
        let start = |d: i64| (zn * Rational64::from_integer(d)).floor().to_integer() as usize;
        let deficient = |from: usize| (from..=max_len).rev().find(|i| kappa.get(i).copied().unwrap_or(0) < e_n);
        if let Some(i) = deficient(start(d)) {
            if i >= max_len {
                return Err(Error::Shortfall(format!(
                    "stage {n}: length {i} has {} words, {e_n} needed, and no longer words remain",
                    kappa.get(&i).copied().unwrap_or(0)
                )));
            }
            d = d.max(ceil(Rational64::from_integer(i as i64 + 1) / zn));
        }
        let s = start(d);
        if s > max_len || max_len == 0 {
            return Err(Error::Shortfall(format!("stage {n}: no words of length {s} or more")));
        }
        d_seq.push(d);
    }
    let certificate = certify_sequence(&d_seq, edge_counts, zeta, kappa, growth, eps);
    Ok(FastSequence { d_seq, certificate })
}

/// The inequality instances of the three proxies for a given sequence.
pub fn certify_sequence(
    d_seq: &[i64],
    edge_counts: &[usize],
    zeta: Rational64,
    kappa: &BTreeMap<usize, usize>,
    growth: Rational64,
    eps: &[Rational64],
) -> Vec<Instance> {
    let max_len = kappa.keys().next_back().copied().unwrap_or(0);
    let mut certificate = Vec::new();
    for (idx, (&d, &e_n)) in d_seq.iter().zip(edge_counts).enumerate() {
        let n = idx + 1;
        let zn = zeta.pow(n as i32);
        let e = Rational64::from_integer(e_n as i64);
        let s = (zn * Rational64::from_integer(d)).floor().to_integer() as usize;
        let min_supply = (s..=max_len).map(|i| kappa.get(&i).copied().unwrap_or(0)).min();
        certificate.push(Instance {
            stage: n,
            condition: "(1)".into(),
            statement: match min_supply {
                Some(m) => format!("min kappa(i) for {s} <= i <= {max_len} is {m} >= E_n = {e_n}"),
                None => format!("no lengths between {s} and {max_len}"),
            },
            holds: min_supply.is_some_and(|m| m >= e_n),
        });
        if idx > 0 {
            let prev = d_seq[idx - 1];
            let ratio = zn * Rational64::from_integer(d) / Rational64::from_integer(prev);
            let need = growth * Rational64::from_integer(n as i64);
            certificate.push(Instance {
                stage: n,
                condition: "(2')".into(),
                statement: format!("zeta^n d_n / d_(n-1) = {} >= {}", fmt_rational(ratio), fmt_rational(need)),
                holds: ratio >= need && d > prev,
            });
        }
        let ratio = e / (zn * Rational64::from_integer(d));
        let bound = eps.get(idx).copied().unwrap_or(Rational64::from_integer(0));
        certificate.push(Instance {
            stage: n,
            condition: "(3')".into(),
            statement: format!("E_n / (zeta^n d_n) = {} <= {}", fmt_rational(ratio), fmt_rational(bound)),
            holds: ratio <= bound,
        });
    }
    certificate
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(a: i64, b: i64) -> Rational64 {
        Rational64::new(a, b)
    }

    fn flat(lo: usize, hi: usize, k: usize) -> BTreeMap<usize, usize> {
        (lo..=hi).map(|i| (i, k)).collect()
    }

    #[test]
    fn single_stage_from_the_density_condition() {
        // E/(ζ d) ≤ 1/4 with E = 1, ζ = 1/2 gives d = 8
        let s = fast_sequence(&[1], r(1, 2), &flat(1, 40, 1), r(1, 1), &[r(1, 4)]).unwrap();
        assert_eq!(s.d_seq, vec![8]);
        assert!(s.certificate.iter().all(|i| i.holds));
    }

    #[test]
    fn growth_forces_the_second_term() {
        let s = fast_sequence(&[1, 1], r(1, 2), &flat(1, 200, 1), r(2, 1), &[r(1, 1), r(1, 1)]).unwrap();
        let (d1, d2) = (s.d_seq[0], s.d_seq[1]);
        assert_eq!(d2, 2 * 2 * d1 * 4);
    }

    #[test]
    fn deficient_length_pushes_d_up_or_errors() {
        let mut k = flat(1, 40, 3);
        k.insert(5, 1);
        let s = fast_sequence(&[2], r(1, 2), &k, r(1, 1), &[r(1, 1)]).unwrap();
        // d = 4 would start at length 2, below the gap at 5
        assert_eq!(s.d_seq, vec![12]);
        let k = flat(1, 10, 1);
        assert!(matches!(fast_sequence(&[2], r(1, 2), &k, r(1, 1), &[r(1, 1)]), Err(Error::Shortfall(m)) if m.contains("length 10")));
    }
}
