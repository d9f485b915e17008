use std::collections::BTreeSet;

use super::presentation::format_word;
use super::{default_names, parse_word, Word};
use crate::error::Result;

/// A finite set of reduced words, kept in sorted order so iteration is
/// deterministic.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WordSet {
    words: BTreeSet<Word>,
    closed: bool,
}

impl WordSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_words(words: impl IntoIterator<Item = Word>) -> Self {
        WordSet {
            words: words.into_iter().collect(),
            closed: false,
        }
    }

    pub fn insert(&mut self, w: Word) -> bool {
        let added = self.words.insert(w);
        if added {
            self.closed = false;
        }
        added
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.words.contains(w)
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// True when the set is known to be closed under rotation and inversion.
    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn iter(&self) -> impl Iterator<Item = &Word> {
        self.words.iter()
    }

    pub fn words(&self) -> Vec<Word> {
        self.words.iter().cloned().collect()
    }

    /// Checks closure directly instead of trusting the flag.
    pub fn verify_closed(&self) -> bool {
        self.words
            .iter()
            .all(|w| self.words.contains(&w.inverse()) && (1..w.len()).all(|k| self.words.contains(&w.rotate(k))))
    }

    /// One word per line, in the presentation word syntax.
    pub fn to_text(&self, names: &[String]) -> String {
        let mut out = String::new();
        for w in &self.words {
            out.push_str(&format_word(w, names));
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str, names: &[String]) -> Result<Self> {
        let mut set = WordSet::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            set.insert(parse_word(line, names)?);
        }
        Ok(set)
    }

    /// Text form over the default alphabet `a, b, ...`.
    pub fn to_default_text(&self) -> String {
        let g = self
            .words
            .iter()
            .flat_map(|w| w.letters().iter().map(|l| l.generator() + 1))
            .max()
            .unwrap_or(0);
        self.to_text(&default_names(g))
    }
}

impl<'a> IntoIterator for &'a WordSet {
    type Item = &'a Word;
    type IntoIter = std::collections::btree_set::Iter<'a, Word>;

    fn into_iter(self) -> Self::IntoIter {
        self.words.iter()
    }
}

/// All rotations of a word and of its inverse.
pub fn orbit(w: &Word) -> Vec<Word> {
    let inv = w.inverse();
    let mut out = Vec::with_capacity(2 * w.len().max(1));
    for k in 0..w.len().max(1) {
        out.push(w.rotate(k));
        out.push(inv.rotate(k));
    }
    out
}

/// Smallest superset closed under cyclic permutation and inversion.
pub fn close_word_set(set: &WordSet) -> WordSet {
    let mut words = BTreeSet::new();
    for w in &set.words {
        words.extend(orbit(w));
    }
    WordSet { words, closed: true }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::{cyclic_normalize, w};

    #[test]
    fn closes_single_word() {
        let c = close_word_set(&WordSet::from_words([w("ab")]));
        let expected = WordSet::from_words([w("ab"), w("ba"), w("b'a'"), w("a'b'")]);
        assert_eq!(c.words(), expected.words());
        assert!(c.is_closed() && c.verify_closed());
    }

    #[test]
    fn closes_letter_and_empty() {
        assert_eq!(close_word_set(&WordSet::from_words([w("a")])).words(), vec![w("a"), w("a'")]);
        assert!(close_word_set(&WordSet::new()).is_empty());
    }

    #[test]
    fn closure_is_idempotent_and_orbit_sized() {
        let set = WordSet::from_words([w("aab"), w("ab'ab"), w("abab")]);
        let c = close_word_set(&set);
        assert_eq!(close_word_set(&c).words(), c.words());
        // sizes add up over the distinct orbits
        let mut orbits = BTreeSet::new();
        for x in c.iter() {
            let a = cyclic_normalize(x);
            let b = cyclic_normalize(&x.inverse());
            orbits.insert(a.min(b));
        }
        let total: usize = orbits.iter().map(|o| orbit(o).into_iter().collect::<BTreeSet<_>>().len()).sum();
        assert_eq!(total, c.len());
    }

    #[test]
    fn text_round_trip() {
        let c = close_word_set(&WordSet::from_words([w("aab'")]));
        let names = default_names(2);
        let back = WordSet::from_text(&c.to_text(&names), &names).unwrap();
        assert_eq!(back.words(), c.words());
    }
}
