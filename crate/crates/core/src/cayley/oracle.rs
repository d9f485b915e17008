use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::smallcancel::DehnReducer;
use crate::words::{free_reduce, Letter, Word, WordSet};

/// Word-problem oracle for a finitely generated group.
pub trait GroupOracle: Send + Sync {
    fn generators(&self) -> usize;

    /// A representative of the element; the canonical one when
    /// [`is_canonical`](Self::is_canonical) holds.
    fn normal_form(&self, w: &Word) -> Word;

    fn is_canonical(&self) -> bool {
        true
    }

    fn is_trivial(&self, w: &Word) -> bool {
        self.normal_form(w).is_empty()
    }

    fn equal(&self, u: &Word, v: &Word) -> bool {
        self.is_trivial(&u.inverse().mul(v))
    }

    /// Membership of `w` in the subgroup generated by `gens`: the letters of
    /// the normal form all lie in `gens`.
    fn in_parabolic(&self, w: &Word, gens: &[usize]) -> bool {
        self.normal_form(w).letters().iter().all(|l| gens.contains(&l.generator()))
    }

    /// A key shared exactly by the elements of the left coset `w⟨gens⟩`, when
    /// the oracle can produce one.
    fn coset_key(&self, _w: &Word, _gens: &[usize]) -> Option<Word> {
        None
    }

    /// An invariant of the element, used to narrow equality searches when
    /// normal forms are not canonical.
    fn bucket(&self, _w: &Word) -> Vec<i64> {
        Vec::new()
    }
}

fn strip_suffix_in(w: &Word, gens: &[usize]) -> Word {
    let s = w.letters();
    let mut k = s.len();
    while k > 0 && gens.contains(&s[k - 1].generator()) {
        k -= 1;
    }
    Word::from_letters(s[..k].to_vec())
}

/// Free group of the given rank.
#[derive(Clone, Debug)]
pub struct FreeGroup {
    pub rank: usize,
}

impl GroupOracle for FreeGroup {
    fn generators(&self) -> usize {
        self.rank
    }

    fn normal_form(&self, w: &Word) -> Word {
        free_reduce(w)
    }

    fn coset_key(&self, w: &Word, gens: &[usize]) -> Option<Word> {
        Some(strip_suffix_in(&free_reduce(w), gens))
    }
}

/// Free abelian group; normal forms are `a^x b^y ...` in generator order.
#[derive(Clone, Debug)]
pub struct FreeAbelian {
    pub rank: usize,
}

fn word_from_exponents(e: &[i64]) -> Word {
    let mut v = Vec::new();
    for (g, &x) in e.iter().enumerate() {
        let l = Letter::new(g, x < 0);
        v.extend(std::iter::repeat(l).take(x.unsigned_abs() as usize));
    }
    Word::from_letters(v)
}

impl GroupOracle for FreeAbelian {
    fn generators(&self) -> usize {
        self.rank
    }

    fn normal_form(&self, w: &Word) -> Word {
        word_from_exponents(&w.exponent_sums(self.rank))
    }

    fn coset_key(&self, w: &Word, gens: &[usize]) -> Option<Word> {
        let mut e = w.exponent_sums(self.rank);
        for &g in gens {
            e[g] = 0;
        }
        Some(word_from_exponents(&e))
    }

    fn bucket(&self, w: &Word) -> Vec<i64> {
        w.exponent_sums(self.rank)
    }
}

/// Finite group given by a multiplication table; generator `i` is element
/// `gens[i]`. Normal forms are shortlex-least words.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    table: Vec<Vec<usize>>,
    inverse: Vec<usize>,
    identity: usize,
    gens: Vec<usize>,
    shortlex: Vec<Word>,
}

impl FiniteGroup {
    pub fn from_table(table: Vec<Vec<usize>>, identity: usize, gens: Vec<usize>) -> Result<Self> {
        let n = table.len();
        if n == 0 || table.iter().any(|row| row.len() != n) || identity >= n {
            return Err(Error::InvalidInput("malformed multiplication table".into()));
        }
        let inverse: Vec<usize> = (0..n)
            .map(|x| (0..n).find(|&y| table[x][y] == identity).ok_or(()))
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::InvalidInput("table is not a group".into()))?;
        let mut g = FiniteGroup {
            table,
            inverse,
            identity,
            gens,
            shortlex: vec![Word::empty(); n],
        };
        // breadth-first in letter order yields shortlex-least words
        let mut seen = vec![false; n];
        seen[identity] = true;
        let mut queue = VecDeque::from([identity]);
        while let Some(x) = queue.pop_front() {
            for l in Letter::all(g.gens.len()) {
                let y = g.table[x][g.letter_element(l)];
                if !seen[y] {
                    seen[y] = true;
                    let mut w = g.shortlex[x].clone();
                    w.push(l);
                    g.shortlex[y] = w;
                    queue.push_back(y);
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::InvalidInput("generators do not generate the group".into()));
        }
        Ok(g)
    }

    /// Group generated by permutations of `0..degree`, composed left to right.
    pub fn from_permutations(perms: &[Vec<usize>]) -> Result<Self> {
        let degree = perms.first().map_or(0, |p| p.len());
        let id: Vec<usize> = (0..degree).collect();
        let mut elems = vec![id.clone()];
        let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(id, 0)]);
        let mut i = 0;
        while i < elems.len() {
            for p in perms {
                let q: Vec<usize> = (0..degree).map(|k| p[elems[i][k]]).collect();
                if !index.contains_key(&q) {
                    index.insert(q.clone(), elems.len());
                    elems.push(q);
                }
            }
            i += 1;
        }
        let n = elems.len();
        let table: Vec<Vec<usize>> = (0..n)
            .map(|x| {
                (0..n)
                    .map(|y| {
                        let q: Vec<usize> = (0..degree).map(|k| elems[y][elems[x][k]]).collect();
                        index[&q]
                    })
                    .collect()
            })
            .collect();
        let gens = perms.iter().map(|p| index[p]).collect();
        Self::from_table(table, 0, gens)
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    fn letter_element(&self, l: Letter) -> usize {
        let g = self.gens[l.generator()];
        if l.is_inverse() {
            self.inverse[g]
        } else {
            g
        }
    }

    pub fn evaluate(&self, w: &Word) -> usize {
        w.letters()
            .iter()
            .fold(self.identity, |x, &l| self.table[x][self.letter_element(l)])
    }

    fn subgroup(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        seen[self.identity] = true;
        let mut out = vec![self.identity];
        let mut i = 0;
        while i < out.len() {
            for &g in gens {
                for e in [self.gens[g], self.inverse[self.gens[g]]] {
                    let y = self.table[out[i]][e];
                    if !seen[y] {
                        seen[y] = true;
                        out.push(y);
                    }
                }
            }
            i += 1;
        }
        out
    }
}

impl GroupOracle for FiniteGroup {
    fn generators(&self) -> usize {
        self.gens.len()
    }

    fn normal_form(&self, w: &Word) -> Word {
        self.shortlex[self.evaluate(w)].clone()
    }

    fn in_parabolic(&self, w: &Word, gens: &[usize]) -> bool {
        self.subgroup(gens).contains(&self.evaluate(w))
    }

    fn coset_key(&self, w: &Word, gens: &[usize]) -> Option<Word> {
        let x = self.evaluate(w);
        let least = self
            .subgroup(gens)
            .into_iter()
            .map(|h| self.table[x][h])
            .min_by(|a, b| self.shortlex[*a].shortlex_cmp(&self.shortlex[*b]))?;
        Some(self.shortlex[least].clone())
    }
}

/// Free product; the generators of factor `k` follow those of factors `< k`.
#[derive(Clone)]
pub struct FreeProduct {
    factors: Vec<Arc<dyn GroupOracle>>,
    offsets: Vec<usize>,
}

impl FreeProduct {
    pub fn new(factors: Vec<Arc<dyn GroupOracle>>) -> Self {
        let mut offsets = Vec::with_capacity(factors.len());
        let mut o = 0;
        for f in &factors {
            offsets.push(o);
            o += f.generators();
        }
        FreeProduct { factors, offsets }
    }

    fn factor_of(&self, g: usize) -> usize {
        self.offsets.partition_point(|&o| o <= g) - 1
    }

    fn local(&self, k: usize, w: &[Letter]) -> Word {
        let o = self.offsets[k];
        Word::from_letters(w.iter().map(|l| Letter::new(l.generator() - o, l.is_inverse())).collect())
    }

    fn global(&self, k: usize, w: &Word) -> Vec<Letter> {
        let o = self.offsets[k];
        w.letters().iter().map(|l| Letter::new(l.generator() + o, l.is_inverse())).collect()
    }

    /// Normal form as a list of (factor, nonempty local normal form).
    fn syllables(&self, w: &Word) -> Vec<(usize, Word)> {
        let mut stack: Vec<(usize, Word)> = Vec::new();
        let s = w.letters();
        let mut i = 0;
        while i < s.len() {
            let k = self.factor_of(s[i].generator());
            let mut j = i;
            while j < s.len() && self.factor_of(s[j].generator()) == k {
                j += 1;
            }
            let mut piece = self.local(k, &s[i..j]);
            if let Some((top, prev)) = stack.last() {
                if *top == k {
                    piece = prev.concat(&piece);
                    stack.pop();
                }
            }
            let nf = self.factors[k].normal_form(&piece);
            if !nf.is_empty() {
                stack.push((k, nf));
            }
            i = j;
        }
        stack
    }
}

impl GroupOracle for FreeProduct {
    fn generators(&self) -> usize {
        self.factors.iter().map(|f| f.generators()).sum()
    }

    fn normal_form(&self, w: &Word) -> Word {
        let mut v = Vec::new();
        for (k, s) in self.syllables(w) {
            v.extend(self.global(k, &s));
        }
        Word::from_letters(v)
    }

    fn is_canonical(&self) -> bool {
        self.factors.iter().all(|f| f.is_canonical())
    }

    fn in_parabolic(&self, w: &Word, gens: &[usize]) -> bool {
        let syl = self.syllables(w);
        match syl.as_slice() {
            [] => true,
            [(k, s)] => {
                let o = self.offsets[*k];
                let local: Vec<usize> = gens
                    .iter()
                    .filter(|&&g| self.factor_of(g) == *k)
                    .map(|&g| g - o)
                    .collect();
                self.factors[*k].in_parabolic(s, &local)
            }
            _ => false,
        }
    }

    /// Supported when `gens` lie in a single factor.
    fn coset_key(&self, w: &Word, gens: &[usize]) -> Option<Word> {
        let k = self.factor_of(*gens.first()?);
        if gens.iter().any(|&g| self.factor_of(g) != k) {
            return None;
        }
        let o = self.offsets[k];
        let local: Vec<usize> = gens.iter().map(|&g| g - o).collect();
        let mut syl = self.syllables(w);
        let last = match syl.last() {
            Some((j, _)) if *j == k => syl.pop().unwrap().1,
            _ => Word::empty(),
        };
        let key = self.factors[k].coset_key(&last, &local)?;
        let mut v = Vec::new();
        for (j, s) in &syl {
            v.extend(self.global(*j, s));
        }
        v.extend(self.global(k, &key));
        Some(Word::from_letters(v))
    }

    fn bucket(&self, w: &Word) -> Vec<i64> {
        w.exponent_sums(self.generators())
    }
}

/// Dehn's algorithm as an oracle for a `C'(1/6)` presentation. Normal forms
/// are Dehn-reduced words and are not canonical.
///
/// Parabolic membership reads the letters of the Dehn-reduced word, which is
/// only sound when the parabolic generators generate a free factor-like
/// subgroup; the caller asserts this.
#[derive(Clone, Debug)]
pub struct DehnOracle {
    reducer: DehnReducer,
    generators: usize,
    abelian_bucket: bool,
}

impl DehnOracle {
    pub fn new(relators: &WordSet, generators: usize) -> Result<Self> {
        let abelian_bucket = relators.iter().all(|r| r.exponent_sums(generators).iter().all(|&e| e == 0));
        Ok(DehnOracle {
            reducer: DehnReducer::new(relators, generators)?,
            generators,
            abelian_bucket,
        })
    }
}

impl GroupOracle for DehnOracle {
    fn generators(&self) -> usize {
        self.generators
    }

    fn normal_form(&self, w: &Word) -> Word {
        self.reducer.reduce(w)
    }

    fn is_canonical(&self) -> bool {
        false
    }

    fn bucket(&self, w: &Word) -> Vec<i64> {
        if self.abelian_bucket {
            w.exponent_sums(self.generators)
        } else {
            Vec::new()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::w;

    #[test]
    fn abelian_normal_form() {
        let z2 = FreeAbelian { rank: 2 };
        assert_eq!(z2.normal_form(&w("bab'a")), w("aa"));
        assert!(z2.in_parabolic(&w("bab'"), &[0]));
        assert_eq!(z2.coset_key(&w("a^3b"), &[0]), Some(w("b")));
    }

    #[test]
    fn free_product_syllables_merge() {
        let z2: Arc<dyn GroupOracle> = Arc::new(FreeAbelian { rank: 2 });
        let p = FreeProduct::new(vec![z2.clone(), z2]);
        assert_eq!(p.normal_form(&w("a c b c' a'")), w("acbc'a'"));
        assert_eq!(p.normal_form(&w("a c c' b a'")), w("b"));
        assert!(p.in_parabolic(&w("cac'"), &[0, 1]) == false);
        assert!(p.in_parabolic(&w("c d c'"), &[2, 3]));
        assert_eq!(p.coset_key(&w("c a b"), &[0, 1]), Some(w("c")));
        assert_eq!(p.coset_key(&w("a d"), &[0, 1]), Some(w("ad")));
    }

    #[test]
    fn finite_group_from_permutations() {
        // S3 generated by a transposition and a 3-cycle
        let s3 = FiniteGroup::from_permutations(&[vec![1, 0, 2], vec![1, 2, 0]]).unwrap();
        assert_eq!(s3.order(), 6);
        assert!(s3.is_trivial(&w("aa")));
        assert!(s3.is_trivial(&w("bbb")));
        assert!(s3.is_trivial(&w("abab")));
        assert!(!s3.is_trivial(&w("ab")));
        assert_eq!(s3.normal_form(&w("bb")), w("b'"));
        assert_eq!(s3.normal_form(&w("a'")), w("a"));
    }

    #[test]
    fn free_coset_key_strips_parabolic_tail() {
        let f = FreeGroup { rank: 2 };
        assert_eq!(f.coset_key(&w("ba^3"), &[0]), Some(w("b")));
        assert_eq!(f.coset_key(&w("a^3b"), &[0]), Some(w("a^3b")));
    }
}
