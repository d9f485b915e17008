use std::collections::{BTreeMap, BTreeSet, HashSet};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::graph::StageGraph;
use crate::error::{Error, Result};
use crate::words::{cyclic_normalize, Word, WordSet};

/// Words on the edges of a stage graph; edge `i` read forwards carries
/// `words[i]`, read backwards its inverse.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeLabeling {
    pub d_n: i64,
    pub words: Vec<Word>,
}

impl EdgeLabeling {
    pub fn word(&self, edge: usize, forward: bool) -> Word {
        if forward {
            self.words[edge].clone()
        } else {
            self.words[edge].inverse()
        }
    }

    /// Injectivity over oriented edges and length bookkeeping.
    pub fn verify(&self, graph: &StageGraph) -> Result<()> {
        let mut seen = HashSet::new();
        for (i, w) in self.words.iter().enumerate() {
            let want = block_length(self.d_n, graph.edges[i].len);
            if w.len() != want {
                return Err(Error::Verification(format!("edge {i} has a word of length {}, not {want}", w.len())));
            }
            if !seen.insert(w.clone()) || !seen.insert(w.inverse()) {
                return Err(Error::Verification(format!("edge {i} repeats a word")));
            }
        }
        Ok(())
    }
}

/// `⌊d_n |e|⌋`.
pub fn block_length(d_n: i64, len: f64) -> usize {
    (d_n as f64 * len + 1e-9).floor() as usize
}

/// One word per orbit of `w` under rotation and inversion, grouped by length.
fn orbits_by_length(w: &WordSet) -> BTreeMap<usize, Vec<Word>> {
    let mut reps = BTreeSet::new();
    for x in w {
        let a = cyclic_normalize(x);
        let b = cyclic_normalize(&x.inverse());
        reps.insert(a.min(b));
    }
    let mut out: BTreeMap<usize, Vec<Word>> = BTreeMap::new();
    for r in reps {
        out.entry(r.len()).or_default().push(r);
    }
    out
}

/// Attaches to each edge a word of `w` of length `⌊d_n|e|⌋`, a different
/// orbit for each edge, in a seeded order.
pub fn assign_edge_words(graph: &StageGraph, w: &WordSet, d_n: i64, seed: u64) -> Result<EdgeLabeling> {
    assign_edge_words_avoiding(graph, w, d_n, seed, &BTreeSet::new())
}

/// As [`assign_edge_words`], skipping the orbits whose representatives are
/// in `used` (orbits taken by earlier stages).
pub fn assign_edge_words_avoiding(
    graph: &StageGraph,
    w: &WordSet,
    d_n: i64,
    seed: u64,
    used: &BTreeSet<Word>,
) -> Result<EdgeLabeling> {
    let mut pools = orbits_by_length(w);
    for pool in pools.values_mut() {
        pool.retain(|r| !used.contains(r));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for pool in pools.values_mut() {
        pool.shuffle(&mut rng);
    }
    let mut demand: BTreeMap<usize, usize> = BTreeMap::new();
    for e in &graph.edges {
        *demand.entry(block_length(d_n, e.len)).or_insert(0) += 1;
    }
    for (&len, &need) in &demand {
        let have = pools.get(&len).map_or(0, Vec::len);
        if len == 0 || have < need {
            return Err(Error::Shortfall(format!("length {len}: {need} edges, {have} orbits in W")));
        }
    }
    let mut words = Vec::with_capacity(graph.edge_count());
    for e in &graph.edges {
        let pool = pools.get_mut(&block_length(d_n, e.len)).unwrap();
        words.push(pool.pop().unwrap());
    }
    let lab = EdgeLabeling { d_n, words };
    lab.verify(graph)?;
    Ok(lab)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::netapprox::graph::Edge;
    use crate::words::{close_word_set, w};

    fn one_orbit() -> WordSet {
        close_word_set(&WordSet::from_words([w("aabab'ab'b'")]))
    }

    #[test]
    fn single_edge_gets_a_word_and_its_reverse_the_inverse() {
        let g = StageGraph::new(2, vec![Edge { u: 0, v: 1, len: 0.5 }]);
        let lab = assign_edge_words(&g, &one_orbit(), 16, 1).unwrap();
        assert_eq!(lab.words[0].len(), 8);
        assert_eq!(lab.word(0, false), lab.words[0].inverse());
    }

    #[test]
    fn two_edges_cannot_share_one_orbit() {
        let e = Edge { u: 0, v: 1, len: 0.5 };
        let g = StageGraph::new(2, vec![e, e]);
        let err = assign_edge_words(&g, &one_orbit(), 16, 1).unwrap_err();
        assert!(matches!(err, Error::Shortfall(m) if m.starts_with("length 8")));
    }

    #[test]
    fn seed_changes_only_the_assignment() {
        let ws = close_word_set(&WordSet::from_words([w("aab"), w("abb"), w("ab'b'")]));
        let e = |u, v| Edge { u, v, len: 1.0 };
        let g = StageGraph::new(3, vec![e(0, 1), e(1, 2), e(0, 2)]);
        let a = assign_edge_words(&g, &ws, 3, 1).unwrap();
        assert_eq!(a, assign_edge_words(&g, &ws, 3, 1).unwrap());
        let mut x = a.words.clone();
        let mut y = assign_edge_words(&g, &ws, 3, 2).unwrap().words;
        x.sort();
        y.sort();
        assert_eq!(x, y);
    }
}
