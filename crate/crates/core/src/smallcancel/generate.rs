use num_rational::Rational64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::cstar::{check_cstar, class_overlap};
use crate::error::{Error, Result};
use crate::words::{close_word_set, cyclic_normalize, Letter, Word, WordSet};

/// Output of [`generate_cstar_words`].
#[derive(Clone, Debug, Serialize)]
pub struct Generated {
    /// Closed under rotation and inversion.
    #[serde(skip)]
    pub words: WordSet,
    /// One accepted word per orbit, in acceptance order.
    pub representatives: Vec<Word>,
    /// `(length, orbits accepted)` per requested length.
    pub per_length: Vec<(usize, usize)>,
    pub per_length_target: usize,
}

impl Generated {
    pub fn shortfall(&self) -> Vec<(usize, usize)> {
        self.per_length
            .iter()
            .copied()
            .filter(|&(_, got)| got < self.per_length_target)
            .collect()
    }

    /// Errors when some length did not reach its target.
    pub fn complete(self) -> Result<Self> {
        let short = self.shortfall();
        if short.is_empty() {
            Ok(self)
        } else {
            Err(Error::Shortfall(format!(
                "wanted {} orbits per length, got {:?}",
                self.per_length_target, short
            )))
        }
    }
}

/// Rejection sampler for `C*(λ)` sets.
#[derive(Clone, Debug)]
pub struct CStarGenerator {
    pub generators: usize,
    /// Candidates drawn per requested orbit before giving up on a length.
    pub attempts_per_orbit: usize,
}

impl Default for CStarGenerator {
    fn default() -> Self {
        CStarGenerator {
            generators: 2,
            attempts_per_orbit: 2000,
        }
    }
}

fn random_cyclic_word(rng: &mut ChaCha8Rng, generators: usize, len: usize) -> Word {
    let k = 2 * generators;
    loop {
        let mut v: Vec<Letter> = Vec::with_capacity(len);
        for _ in 0..len {
            let l = loop {
                let l = Letter::from_code(rng.gen_range(0..k));
                if v.last() != Some(&l.inverse()) {
                    break l;
                }
            };
            v.push(l);
        }
        if len <= 1 || v[0] != v[len - 1].inverse() {
            return Word::from_letters(v);
        }
    }
}

impl CStarGenerator {
    pub fn generate(&self, lambda: Rational64, lengths: &[usize], per_length: usize, seed: u64) -> Result<Generated> {
        if lambda <= Rational64::from_integer(0) || lambda >= Rational64::from_integer(1) {
            return Err(Error::InvalidInput(format!("lambda {lambda} outside (0,1)")));
        }
        if lengths.iter().any(|&l| l == 0) {
            return Err(Error::InvalidInput("lengths must be positive".into()));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut classes: Vec<Word> = Vec::new();
        let mut reps = Vec::new();
        let mut per = Vec::new();
        for &len in lengths {
            let mut got = 0;
            let mut attempts = 0;
            while got < per_length && attempts < self.attempts_per_orbit * per_length {
                attempts += 1;
                let cand = random_cyclic_word(&mut rng, self.generators, len);
                let c = cyclic_normalize(&cand);
                let ci = cyclic_normalize(&c.inverse());
                if classes.contains(&c) {
                    continue;
                }
                if self.admissible(&c, &ci, &classes, lambda) {
                    classes.push(c);
                    classes.push(ci);
                    reps.push(cand);
                    got += 1;
                }
            }
            per.push((len, got));
        }
        let words = close_word_set(&WordSet::from_words(reps.iter().cloned()));
        let (ok, witness) = check_cstar(&words, lambda);
        if !ok {
            return Err(Error::Verification(format!("generated set fails C*: {witness:?}")));
        }
        Ok(Generated {
            words,
            representatives: reps,
            per_length: per,
            per_length_target: per_length,
        })
    }

    fn admissible(&self, c: &Word, ci: &Word, accepted: &[Word], lambda: Rational64) -> bool {
        let n = c.len() as i64;
        // |u| must be < λ|w| for repeats and ≤ λ·min for shared subwords
        let below = |len: usize, host: usize, strict: bool| {
            let lhs = Rational64::from_integer(len as i64);
            let rhs = lambda * Rational64::from_integer(host as i64);
            if strict {
                lhs < rhs
            } else {
                lhs <= rhs
            }
        };
        let (shared, repeat) = class_overlap(c, c, true);
        if !below(repeat, n as usize, true) || !below(shared, n as usize, false) {
            return false;
        }
        let (shared, _) = class_overlap(c, ci, false);
        if !below(shared, n as usize, false) {
            return false;
        }
        accepted.iter().all(|d| {
            let (shared, _) = class_overlap(c, d, false);
            below(shared, c.len().min(d.len()), false)
        })
    }
}

/// Samples `per_length` orbit representatives of each requested length over
/// the alphabet `{a, b}` so that the closure satisfies `C*(λ)`. The result is
/// re-verified with [`check_cstar`]; unmet targets are reported by
/// [`Generated::shortfall`].
pub fn generate_cstar_words(lambda: Rational64, lengths: &[usize], per_length: usize, seed: u64) -> Result<Generated> {
    CStarGenerator::default().generate(lambda, lengths, per_length, seed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn half_at_length_eight() {
        let g = generate_cstar_words(Rational64::new(1, 2), &[8], 2, 1).unwrap();
        assert_eq!(g.per_length, vec![(8, 2)]);
        assert!(g.shortfall().is_empty());
        assert!(check_cstar(&g.words, Rational64::new(1, 2)).0);
        assert_eq!(g.words.len(), 2 * 2 * 8);
    }

    #[test]
    fn zero_target_is_empty() {
        let g = generate_cstar_words(Rational64::new(1, 2), &[8], 0, 1).unwrap();
        assert!(g.words.is_empty());
    }

    #[test]
    fn tiny_lambda_reports_shortfall() {
        let g = CStarGenerator {
            attempts_per_orbit: 50,
            ..Default::default()
        }
        .generate(Rational64::new(1, 500), &[400, 401], 1, 3)
        .unwrap();
        assert_eq!(g.shortfall(), vec![(400, 0), (401, 0)]);
        assert!(g.complete().is_err());
    }

    #[test]
    fn deterministic_per_seed() {
        let a = generate_cstar_words(Rational64::new(1, 2), &[8, 9], 2, 7).unwrap();
        let b = generate_cstar_words(Rational64::new(1, 2), &[8, 9], 2, 7).unwrap();
        assert_eq!(a.representatives, b.representatives);
    }
}
