use num_rational::Rational64;

use super::pieces::check_c_prime;
use super::symmetrized_classes;
use crate::error::{Error, Result};
use crate::words::{free_reduce, push_reduced, Letter, Word, WordSet};

const NONE: u32 = u32::MAX;

/// Dehn's algorithm for a `C'(1/6)` presentation.
///
/// Every rotation of every relator and its inverse is stored in a trie; a
/// trie node at depth `k` on the path of a rotation `r = u x` with
/// `2k > |r|` records the replacement `x⁻¹` for `u`.
#[derive(Clone, Debug)]
pub struct DehnReducer {
    alphabet: usize,
    children: Vec<u32>,
    replacement: Vec<u32>,
    complements: Vec<Word>,
    max_depth: usize,
}

impl DehnReducer {
    /// Refuses relator sets that fail `C'(1/6)`, returning the piece witness.
    pub fn new(relators: &WordSet, generators: usize) -> Result<Self> {
        let (report, ok) = check_c_prime(relators, Rational64::new(1, 6))?;
        if !ok {
            return Err(Error::Precondition(format!(
                "relators fail C'(1/6): measured {} with witness {:?}",
                report.lambda_measured, report.witness
            )));
        }
        Ok(Self::new_unchecked(relators, generators))
    }

    /// Builds the rewriting table without the small-cancellation check.
    pub fn new_unchecked(relators: &WordSet, generators: usize) -> Self {
        let alphabet = 2 * generators;
        let mut d = DehnReducer {
            alphabet,
            children: vec![NONE; alphabet],
            replacement: vec![NONE],
            complements: Vec::new(),
            max_depth: 0,
        };
        for c in symmetrized_classes(relators) {
            let n = c.len();
            d.max_depth = d.max_depth.max(n);
            for k in 0..n {
                let r = c.rotate(k);
                let mut node = 0usize;
                for (depth, &l) in r.letters().iter().enumerate() {
                    node = d.child_or_insert(node, l);
                    let len = depth + 1;
                    if 2 * len > n && d.replacement[node] == NONE {
                        let rest = Word::from_letters(r.letters()[len..].to_vec());
                        d.replacement[node] = d.complements.len() as u32;
                        d.complements.push(rest.inverse());
                    }
                }
            }
        }
        d
    }

    fn child_or_insert(&mut self, node: usize, l: Letter) -> usize {
        let slot = node * self.alphabet + l.code();
        if self.children[slot] == NONE {
            let id = self.replacement.len();
            self.children[slot] = id as u32;
            self.children.extend(std::iter::repeat(NONE).take(self.alphabet));
            self.replacement.push(NONE);
        }
        self.children[slot] as usize
    }

    /// Longest match starting at `start`, as (length, complement index).
    fn longest_match(&self, s: &[Letter], start: usize) -> Option<(usize, usize)> {
        let mut node = 0usize;
        let mut best = None;
        for (i, &l) in s[start..].iter().enumerate() {
            if l.code() >= self.alphabet {
                break;
            }
            let next = self.children[node * self.alphabet + l.code()];
            if next == NONE {
                break;
            }
            node = next as usize;
            if self.replacement[node] != NONE {
                best = Some((i + 1, self.replacement[node] as usize));
            }
        }
        best
    }

    /// Applies one rewrite at the leftmost possible position.
    pub fn step(&self, w: &Word) -> Option<Word> {
        let s = w.letters();
        for start in 0..s.len() {
            if let Some((len, c)) = self.longest_match(s, start) {
                let mut v: Vec<Letter> = s[..start].to_vec();
                for &l in self.complements[c].letters() {
                    push_reduced(&mut v, l);
                }
                for &l in &s[start + len..] {
                    push_reduced(&mut v, l);
                }
                return Some(Word::from_letters(v));
            }
        }
        None
    }

    /// Rewrites until no relator is more than half present.
    pub fn reduce(&self, w: &Word) -> Word {
        let mut cur = free_reduce(w);
        while let Some(next) = self.step(&cur) {
            debug_assert!(next.len() < cur.len());
            cur = next;
        }
        cur
    }

    pub fn is_trivial(&self, w: &Word) -> bool {
        self.reduce(w).is_empty()
    }
}

/// One-shot Dehn reduction; checks `C'(1/6)` first.
pub fn dehn_reduce(w: &Word, relators: &WordSet) -> Result<Word> {
    let gens = relators
        .iter()
        .chain(std::iter::once(w))
        .flat_map(|x| x.letters().iter().map(|l| l.generator() + 1))
        .max()
        .unwrap_or(0);
    Ok(DehnReducer::new(relators, gens)?.reduce(w))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::w;

    fn surface() -> WordSet {
        WordSet::from_words([w("[a,b][c,d]")])
    }

    #[test]
    fn relator_reduces_to_empty() {
        assert!(dehn_reduce(&w("[a,b][c,d]"), &surface()).unwrap().is_empty());
        assert_eq!(dehn_reduce(&w("a"), &surface()).unwrap(), w("a"));
    }

    #[test]
    fn conjugated_relators_vanish() {
        let d = DehnReducer::new(&surface(), 4).unwrap();
        let r = w("[a,b][c,d]");
        let x = w("ab'c");
        let word = x.mul(&r).mul(&x.inverse()).mul(&r.rotate(3).inverse());
        assert!(d.is_trivial(&word));
        assert!(!d.is_trivial(&w("aba'b'")));
    }

    #[test]
    fn refuses_without_small_cancellation() {
        let e = dehn_reduce(&w("a"), &WordSet::from_words([w("[a,b]")])).unwrap_err();
        assert!(matches!(e, Error::Precondition(_)));
    }

    #[test]
    fn five_eighths_is_replaced() {
        let d = DehnReducer::new(&surface(), 4).unwrap();
        // five letters of the relator become the inverse of the other three
        assert_eq!(d.reduce(&w("aba'b'c")), w("dcd'"));
    }
}
