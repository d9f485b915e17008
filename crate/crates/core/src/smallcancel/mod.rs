//! Pieces, the `C'(λ)` and `C*(λ)` conditions, generation of `C*(λ)` word
//! sets, and Dehn's algorithm.

mod cstar;
mod dehn;
mod generate;
mod overlap;
mod pieces;

use std::collections::BTreeSet;

use num_rational::Rational64;

use crate::words::{cyclic_normalize, Letter, Word, WordSet};

pub use cstar::{check_cstar, cstar_profile, CStarProfile, CStarViolation};
pub use dehn::{dehn_reduce, DehnReducer};
pub use generate::{generate_cstar_words, Generated};
pub use pieces::{check_c_prime, PieceReport, PieceWitness};

/// Distinct cyclic classes of the words of a set, each as its least rotation.
pub(crate) fn cyclic_classes<'a>(words: impl IntoIterator<Item = &'a Word>) -> Vec<Word> {
    let set: BTreeSet<Word> = words
        .into_iter()
        .map(cyclic_normalize)
        .filter(|c| !c.is_empty())
        .collect();
    set.into_iter().collect()
}

/// Cyclic classes of a set together with the classes of the inverses.
pub(crate) fn symmetrized_classes(set: &WordSet) -> Vec<Word> {
    let mut all: Vec<Word> = set.words();
    all.extend(set.iter().map(|w| w.inverse()));
    cyclic_classes(all.iter())
}

/// Smallest `p` with `s` equal to its rotation by `p`.
pub(crate) fn primitive_period(s: &[Letter]) -> usize {
    let n = s.len();
    if n == 0 {
        return 0;
    }
    let mut fail = vec![0usize; n];
    let mut k = 0;
    for i in 1..n {
        while k > 0 && s[i] != s[k] {
            k = fail[k - 1];
        }
        if s[i] == s[k] {
            k += 1;
        }
        fail[i] = k;
    }
    let p = n - fail[n - 1];
    if n % p == 0 {
        p
    } else {
        n
    }
}

pub(crate) fn floor_mul(lambda: Rational64, n: usize) -> i64 {
    let x = lambda * Rational64::from_integer(n as i64);
    x.floor().to_integer()
}

pub(crate) fn ceil_mul(lambda: Rational64, n: usize) -> i64 {
    let x = lambda * Rational64::from_integer(n as i64);
    x.ceil().to_integer()
}

/// Cyclic subword of length `len` starting at `start`.
pub(crate) fn cyclic_slice(c: &Word, start: usize, len: usize) -> Word {
    let s = c.letters();
    Word::from_letters((0..len).map(|i| s[(start + i) % s.len()]).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::w;

    #[test]
    fn periods() {
        assert_eq!(primitive_period(w("abab").letters()), 2);
        assert_eq!(primitive_period(w("aaaaaaa").letters()), 1);
        assert_eq!(primitive_period(w("aab").letters()), 3);
        assert_eq!(primitive_period(w("abaab").letters()), 5);
    }
}
