//! Words over a signed generator alphabet.
//!
//! Letters are stored as signed generator indices; names only appear at the
//! parsing and printing boundary (see [`presentation`]).

mod presentation;
mod wordset;

use std::fmt;

pub use presentation::{default_names, format_word, parse_presentation, parse_word, Presentation};
pub use wordset::{close_word_set, orbit, WordSet};

/// A generator or its inverse. The derived order is `a < a' < b < b' < ...`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter(u32);

impl Letter {
    pub fn new(generator: usize, inverse: bool) -> Self {
        Letter(((generator as u32) << 1) | inverse as u32)
    }

    pub fn pos(generator: usize) -> Self {
        Self::new(generator, false)
    }

    pub fn neg(generator: usize) -> Self {
        Self::new(generator, true)
    }

    /// Zero-based generator index.
    pub fn generator(self) -> usize {
        (self.0 >> 1) as usize
    }

    pub fn is_inverse(self) -> bool {
        self.0 & 1 == 1
    }

    /// +1 or -1.
    pub fn sign(self) -> i32 {
        if self.is_inverse() {
            -1
        } else {
            1
        }
    }

    pub fn inverse(self) -> Self {
        Letter(self.0 ^ 1)
    }

    /// Dense index in `0..2*generator_count`.
    pub fn code(self) -> usize {
        self.0 as usize
    }

    pub fn from_code(code: usize) -> Self {
        Letter(code as u32)
    }

    /// All letters of an alphabet with `generators` generators, in letter order.
    pub fn all(generators: usize) -> impl Iterator<Item = Letter> {
        (0..2 * generators).map(Letter::from_code)
    }
}

/// A finite sequence of letters. Not necessarily reduced.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn letter(l: Letter) -> Self {
        Word(vec![l])
    }

    /// Builds a word from signed 1-based indices: `3` is the third generator,
    /// `-3` its inverse.
    pub fn from_signed(indices: &[i32]) -> Self {
        Word(
            indices
                .iter()
                .map(|&i| {
                    assert!(i != 0, "generator indices are 1-based");
                    Letter::new(i.unsigned_abs() as usize - 1, i < 0)
                })
                .collect(),
        )
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, l: Letter) {
        self.0.push(l)
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    /// Concatenation without reduction.
    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Concatenation followed by free reduction; assumes both inputs are reduced.
    pub fn mul(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        for &l in &other.0 {
            push_reduced(&mut v, l);
        }
        Word(v)
    }

    pub fn pow(&self, n: i64) -> Word {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut v = Vec::with_capacity(base.len() * n.unsigned_abs() as usize);
        for _ in 0..n.unsigned_abs() {
            for &l in &base.0 {
                push_reduced(&mut v, l);
            }
        }
        Word(v)
    }

    pub fn is_reduced(&self) -> bool {
        self.0.windows(2).all(|w| w[0] != w[1].inverse())
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        self.is_reduced()
            && match (self.0.first(), self.0.last()) {
                (Some(&f), Some(&l)) => self.0.len() == 1 || f != l.inverse(),
                _ => true,
            }
    }

    /// Rotation by `k` letters to the left.
    pub fn rotate(&self, k: usize) -> Word {
        if self.0.is_empty() {
            return self.clone();
        }
        let k = k % self.0.len();
        let mut v = Vec::with_capacity(self.0.len());
        v.extend_from_slice(&self.0[k..]);
        v.extend_from_slice(&self.0[..k]);
        Word(v)
    }

    /// Sum of signed exponents per generator.
    pub fn exponent_sums(&self, generators: usize) -> Vec<i64> {
        let mut sums = vec![0i64; generators];
        for l in &self.0 {
            sums[l.generator()] += l.sign() as i64;
        }
        sums
    }

    /// Shortlex comparison (length first, then letter order).
    pub fn shortlex_cmp(&self, other: &Word) -> std::cmp::Ordering {
        self.len().cmp(&other.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl From<Vec<Letter>> for Word {
    fn from(v: Vec<Letter>) -> Self {
        Word(v)
    }
}

impl fmt::Display for Word {
    /// Writes the word with default single-letter names (`a`, `b`, ...).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let max_gen = self.0.iter().map(|l| l.generator() + 1).max().unwrap_or(0);
        f.write_str(&presentation::format_word(self, &default_names(max_gen)))
    }
}

impl serde::Serialize for Letter {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&Word::letter(*self).to_string())
    }
}

impl serde::Serialize for Word {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Appends a letter, cancelling against the last letter when possible.
#[inline]
pub(crate) fn push_reduced(v: &mut Vec<Letter>, l: Letter) {
    if v.last() == Some(&l.inverse()) {
        v.pop();
    } else {
        v.push(l);
    }
}

/// Free reduction: the unique reduced word representing the same element of
/// the free group.
pub fn free_reduce(w: &Word) -> Word {
    let mut v = Vec::with_capacity(w.len());
    for &l in w.letters() {
        push_reduced(&mut v, l);
    }
    Word(v)
}

/// Strips cancelling first/last letter pairs of a reduced word.
pub fn cyclic_reduce(w: &Word) -> Word {
    let w = free_reduce(w);
    let s = w.letters();
    let (mut i, mut j) = (0, s.len());
    while j - i >= 2 && s[i] == s[j - 1].inverse() {
        i += 1;
        j -= 1;
    }
    Word(s[i..j].to_vec())
}

/// Index of the lexicographically least rotation (minimum expression,
/// two-pointer scan).
pub fn least_rotation(s: &[Letter]) -> usize {
    let n = s.len();
    let (mut i, mut j, mut k) = (0usize, 1usize, 0usize);
    while i < n && j < n && k < n {
        let a = s[(i + k) % n];
        let b = s[(j + k) % n];
        if a == b {
            k += 1;
            continue;
        }
        if a > b {
            i += k + 1;
        } else {
            j += k + 1;
        }
        if i == j {
            j += 1;
        }
        k = 0;
    }
    i.min(j).min(n.saturating_sub(1))
}

/// Canonical representative of a cyclic word: the least rotation of its cyclic
/// reduction.
pub fn cyclic_normalize(w: &Word) -> Word {
    let c = cyclic_reduce(w);
    let k = least_rotation(c.letters());
    c.rotate(k)
}

/// Shorthand used throughout the tests and examples: parses a word in the
/// default alphabet (`a`, `b`, ...; `'` inverts). Panics on malformed input.
pub fn w(text: &str) -> Word {
    let names = default_names(26);
    parse_word(text, &names).unwrap_or_else(|e| panic!("bad word {text:?}: {e}"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn free_reduce_examples() {
        assert_eq!(free_reduce(&w("aa'b")), w("b"));
        assert_eq!(free_reduce(&Word::empty()), Word::empty());
        assert_eq!(free_reduce(&w("abb'a'")), Word::empty());
    }

    #[test]
    fn cyclic_normalize_examples() {
        assert_eq!(cyclic_normalize(&w("bab'")), w("a"));
        assert_eq!(cyclic_normalize(&w("ba")), w("ab"));
        assert_eq!(cyclic_normalize(&w("abab")), w("abab"));
    }

    #[test]
    fn letter_order_puts_inverse_after_generator() {
        assert!(Letter::pos(0) < Letter::neg(0));
        assert!(Letter::neg(0) < Letter::pos(1));
        assert_eq!(Letter::neg(3).inverse(), Letter::pos(3));
    }

    fn word_strategy(gens: usize, max_len: usize) -> impl Strategy<Value = Word> {
        prop::collection::vec(0..2 * gens, 0..=max_len)
            .prop_map(|v| Word::from_letters(v.into_iter().map(Letter::from_code).collect()))
    }

    fn naive_least_rotation(w: &Word) -> Word {
        (0..w.len().max(1)).map(|k| w.rotate(k)).min().unwrap()
    }

    proptest! {
        #[test]
        fn free_reduce_is_idempotent(x in word_strategy(3, 16)) {
            let r = free_reduce(&x);
            prop_assert!(r.is_reduced());
            prop_assert!(r.len() <= x.len());
            prop_assert_eq!(free_reduce(&r), r);
        }

        #[test]
        fn cyclic_normalize_is_rotation_invariant(x in word_strategy(3, 12), k in 0usize..12) {
            let r = free_reduce(&x);
            let n = cyclic_normalize(&r);
            prop_assert!(n.is_cyclically_reduced());
            prop_assert_eq!(&cyclic_normalize(&r.rotate(k)), &n);
            prop_assert_eq!(n.clone(), naive_least_rotation(&cyclic_reduce(&r)));
        }

        #[test]
        fn inverse_cancels(x in word_strategy(2, 10)) {
            let r = free_reduce(&x);
            prop_assert!(r.mul(&r.inverse()).is_empty());
        }
    }
}
