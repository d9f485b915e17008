use std::collections::{BTreeMap, HashMap};

use num_rational::Rational64;
use serde::Serialize;

use super::overlap::for_each_lce;
use super::{ceil_mul, cyclic_classes, cyclic_slice, floor_mul, primitive_period};
use crate::words::{close_word_set, Word, WordSet};

/// A failure of one of the two `C*(λ)` conditions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CStarViolation {
    /// 1: a long subword occurs twice in one word; 2: a subword shared by two
    /// distinct words is too long.
    pub condition: u8,
    pub subword: Word,
    pub host: Word,
    pub other: Word,
}

/// Decides `C*(λ)` for a set closed under rotation and inversion (the set is
/// closed first if it is not).
///
/// Condition (2) ignores a pair of occurrences when both are the same
/// position of the same cyclic word, seen in two of its rotations.
pub fn check_cstar(set: &WordSet, lambda: Rational64) -> (bool, Option<CStarViolation>) {
    let closed;
    let set = if set.is_closed() {
        set
    } else {
        closed = close_word_set(set);
        &closed
    };
    let classes = cyclic_classes(set.iter());
    if let Some(v) = repeated_in_word(&classes, lambda) {
        return (false, Some(v));
    }
    if let Some(v) = shared_between_words(&classes, lambda) {
        return (false, Some(v));
    }
    (true, None)
}

fn doubled(c: &Word) -> Vec<crate::words::Letter> {
    let mut v = c.letters().to_vec();
    v.extend_from_slice(c.letters());
    v
}

/// Condition (1): a subword of length `≥ λ|w|` occurring twice in some word.
fn repeated_in_word(classes: &[Word], lambda: Rational64) -> Option<CStarViolation> {
    for c in classes {
        let n = c.len();
        let t = ceil_mul(lambda, n).max(1) as usize;
        if t >= n {
            continue;
        }
        let d = doubled(c);
        let mut groups: HashMap<&[crate::words::Letter], Vec<usize>> = HashMap::new();
        for x in 0..n {
            groups.entry(&d[x..x + t]).or_default().push(x);
        }
        let mut keys: Vec<_> = groups.into_iter().filter(|(_, v)| v.len() > 1).collect();
        keys.sort();
        for (_, pos) in keys {
            for (a, &x) in pos.iter().enumerate() {
                for &y in &pos[a + 1..] {
                    let gap = y - x;
                    // both occurrences fit in one rotation
                    if t <= gap.max(n - gap) {
                        let start = if t <= n - gap { x } else { y };
                        return Some(CStarViolation {
                            condition: 1,
                            subword: cyclic_slice(c, x, t),
                            host: c.rotate(start),
                            other: c.rotate(start),
                        });
                    }
                }
            }
        }
    }
    None
}

/// Condition (2): a subword of length `> λ min(|w1|,|w2|)` at two different
/// cyclic occurrences.
fn shared_between_words(classes: &[Word], lambda: Rational64) -> Option<CStarViolation> {
    let periods: Vec<usize> = classes.iter().map(|c| primitive_period(c.letters())).collect();
    let doubles: Vec<Vec<crate::words::Letter>> = classes.iter().map(doubled).collect();
    let lengths: std::collections::BTreeSet<usize> = classes.iter().map(|c| c.len()).collect();
    for &a in &lengths {
        let t = floor_mul(lambda, a) + 1;
        if t < 1 || t as usize > a {
            continue;
        }
        let t = t as usize;
        let mut groups: HashMap<&[crate::words::Letter], Vec<(usize, usize)>> = HashMap::new();
        for (ci, c) in classes.iter().enumerate() {
            if c.len() < a {
                continue;
            }
            for o in 0..periods[ci] {
                groups.entry(&doubles[ci][o..o + t]).or_default().push((ci, o));
            }
        }
        let mut hits: Vec<_> = groups
            .into_values()
            .filter(|v| v.len() > 1 && v.iter().any(|&(ci, _)| classes[ci].len() == a))
            .collect();
        hits.sort();
        if let Some(v) = hits.first() {
            let &(c1, o1) = v.iter().find(|&&(ci, _)| classes[ci].len() == a).unwrap();
            let &(c2, o2) = v.iter().find(|&&e| e != (c1, o1)).unwrap();
            return Some(CStarViolation {
                condition: 2,
                subword: cyclic_slice(&classes[c1], o1, t),
                host: classes[c1].rotate(o1),
                other: classes[c2].rotate(o2),
            });
        }
    }
    None
}

/// `λ_n` and `κ(n)` for a closed set.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CStarProfile {
    /// Infimum of the `λ` for which `{w : |w| ≥ n}` satisfies `C*(λ)`; at
    /// this value the strict condition (1) may be attained with equality.
    pub lambda_n: BTreeMap<usize, Rational64>,
    pub kappa_n: BTreeMap<usize, usize>,
}

impl CStarProfile {
    /// CSV with columns `n,lambda_n,kappa_n`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,lambda_n,kappa_n\n");
        for (&n, l) in &self.lambda_n {
            out.push_str(&format!(
                "{n},{},{}\n",
                crate::report::fmt_rational(*l),
                self.kappa_n.get(&n).copied().unwrap_or(0)
            ));
        }
        out
    }

    pub fn is_nonincreasing(&self) -> bool {
        let v: Vec<&Rational64> = self.lambda_n.values().collect();
        v.windows(2).all(|p| p[0] >= p[1])
    }
}

/// Per-class and per-pair ratios that bound `λ` from below.
pub(crate) struct OverlapRatios {
    pub classes: Vec<Word>,
    /// longest fitting repeat in one word over its length
    pub own: Vec<Rational64>,
    /// `pair[i][j]`: longest shared subword at distinct occurrences over the
    /// shorter length (includes `i == j`)
    pub pair: Vec<Vec<Rational64>>,
}

/// Longest subword shared by `ci` and `cj` at distinct cyclic occurrences,
/// and (when `ci == cj`) the longest subword occurring twice in a single
/// rotation of `ci`.
pub(crate) fn class_overlap(ci: &Word, cj: &Word, same: bool) -> (usize, usize) {
    let (a, b) = (ci.letters(), cj.letters());
    let n = a.len();
    let m = n.min(b.len());
    let period = primitive_period(a);
    let mut shared = 0usize;
    let mut repeat = 0usize;
    for_each_lce(a, b, m, |x, y, l| {
        if same {
            if x != y {
                let gap = x.abs_diff(y);
                repeat = repeat.max(l.min(gap.max(n - gap)));
            }
            if x % period != y % period {
                shared = shared.max(l);
            }
        } else {
            shared = shared.max(l);
        }
    });
    (shared, repeat)
}

pub(crate) fn overlap_ratios(classes: Vec<Word>) -> OverlapRatios {
    let k = classes.len();
    let zero = Rational64::from_integer(0);
    let mut own = vec![zero; k];
    let mut pair = vec![vec![zero; k]; k];
    for i in 0..k {
        for j in i..k {
            let (shared, repeat) = class_overlap(&classes[i], &classes[j], i == j);
            let m = classes[i].len().min(classes[j].len());
            let r = Rational64::new(shared as i64, m as i64);
            pair[i][j] = r;
            pair[j][i] = r;
            if i == j {
                own[i] = Rational64::new(repeat as i64, classes[i].len() as i64);
            }
        }
    }
    OverlapRatios { classes, own, pair }
}

pub fn cstar_profile(set: &WordSet) -> CStarProfile {
    let closed;
    let set = if set.is_closed() {
        set
    } else {
        closed = close_word_set(set);
        &closed
    };
    let mut profile = CStarProfile::default();
    for w in set.iter() {
        *profile.kappa_n.entry(w.len()).or_default() += 1;
    }
    let ratios = overlap_ratios(cyclic_classes(set.iter()));
    let lens: Vec<usize> = ratios.classes.iter().map(|c| c.len()).collect();
    let max_len = lens.iter().copied().max().unwrap_or(0);
    let zero = Rational64::from_integer(0);
    for n in 1..=max_len {
        let mut l = zero;
        for i in 0..lens.len() {
            if lens[i] < n {
                continue;
            }
            l = l.max(ratios.own[i]);
            for j in 0..lens.len() {
                if lens[j] >= n {
                    l = l.max(ratios.pair[i][j]);
                }
            }
        }
        profile.lambda_n.insert(n, l);
        profile.kappa_n.entry(n).or_insert(0);
    }
    profile
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::w;

    fn r(n: i64, d: i64) -> Rational64 {
        Rational64::new(n, d)
    }

    #[test]
    fn orbit_of_ab() {
        let set = close_word_set(&WordSet::from_words([w("ab")]));
        assert_eq!(check_cstar(&set, r(9, 10)), (true, None));
        let p = cstar_profile(&set);
        assert_eq!(p.kappa_n[&2], 4);
        assert_eq!(p.lambda_n[&1], r(0, 1));
    }

    #[test]
    fn repeated_subword_is_a_violation() {
        let set = close_word_set(&WordSet::from_words([w("abab")]));
        let (ok, v) = check_cstar(&set, r(2, 5));
        assert!(!ok);
        let v = v.unwrap();
        assert_eq!(v.condition, 1);
        assert_eq!(v.subword.len(), 2);
    }

    #[test]
    fn empty_set_is_vacuous() {
        assert_eq!(check_cstar(&WordSet::new(), r(1, 500)), (true, None));
        let p = cstar_profile(&WordSet::new());
        assert!(p.lambda_n.is_empty() && p.kappa_n.is_empty());
    }

    #[test]
    fn shared_subword_across_classes() {
        let set = close_word_set(&WordSet::from_words([w("aaab"), w("aaab'")]));
        let (ok, v) = check_cstar(&set, r(5, 8));
        assert!(!ok);
        assert_eq!(v.unwrap().condition, 2);
        assert!(check_cstar(&set, r(3, 4)).0);
    }

    #[test]
    fn profile_agrees_with_checker() {
        let set = close_word_set(&WordSet::from_words([w("aabab'"), w("abbba'b"), w("ab")]));
        let p = cstar_profile(&set);
        let l1 = p.lambda_n[&1];
        // slightly above the infimum passes, slightly below fails
        assert!(check_cstar(&set, l1 + r(1, 1000)).0);
        assert!(!check_cstar(&set, l1 - r(1, 1000)).0);
        assert!(p.is_nonincreasing());
    }
}
