use std::collections::{HashMap, VecDeque};
use std::sync::{Arc, OnceLock};

use super::oracle::GroupOracle;
use crate::error::{Error, Result};
use crate::words::{Letter, Word};

pub const NONE: u32 = u32::MAX;
pub const INF: u16 = u16::MAX;

/// Default vertex cap for ball enumeration.
pub const DEFAULT_BALL_CAP: usize = 2_000_000;

/// All-pairs distances computed one source row at a time, on demand.
pub struct DistanceTable {
    rows: Vec<OnceLock<Box<[u16]>>>,
}

impl DistanceTable {
    pub fn new(n: usize) -> Self {
        DistanceTable {
            rows: (0..n).map(|_| OnceLock::new()).collect(),
        }
    }

    pub fn row(&self, u: u32, compute: impl FnOnce() -> Vec<u16>) -> &[u16] {
        self.rows[u as usize].get_or_init(|| compute().into_boxed_slice())
    }
}

impl std::fmt::Debug for DistanceTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let filled = self.rows.iter().filter(|r| r.get().is_some()).count();
        write!(f, "DistanceTable({} rows, {filled} computed)", self.rows.len())
    }
}

/// The ball of radius `r` about the identity in `Cayley(G, S)`.
///
/// Vertex ids follow breadth-first order; each vertex carries its
/// shortlex-least geodesic spelling.
pub struct BallGraph {
    pub radius: usize,
    generators: usize,
    words: Vec<Word>,
    sphere_start: Vec<usize>,
    /// `next[v * 2g + code(s)]` is the id of `v·s`, or [`NONE`] outside.
    next: Vec<u32>,
    oracle: Arc<dyn GroupOracle>,
    canonical_index: HashMap<Word, u32>,
    buckets: HashMap<Vec<i64>, Vec<u32>>,
    dist: DistanceTable,
}

impl std::fmt::Debug for BallGraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("BallGraph")
            .field("radius", &self.radius)
            .field("vertices", &self.len())
            .finish()
    }
}

struct Finder<'a> {
    oracle: &'a dyn GroupOracle,
    canonical: HashMap<Word, u32>,
    buckets: HashMap<Vec<i64>, Vec<u32>>,
}

impl Finder<'_> {
    fn find(&self, w: &Word, words: &[Word], lengths: std::ops::RangeInclusive<usize>) -> Option<u32> {
        if self.oracle.is_canonical() {
            return self.canonical.get(&self.oracle.normal_form(w)).copied();
        }
        let inv = w.inverse();
        self.buckets.get(&self.oracle.bucket(w))?.iter().copied().find(|&id| {
            let cand = &words[id as usize];
            lengths.contains(&cand.len()) && self.oracle.is_trivial(&inv.mul(cand))
        })
    }

    fn insert(&mut self, w: &Word, id: u32) {
        if self.oracle.is_canonical() {
            self.canonical.insert(self.oracle.normal_form(w), id);
        } else {
            self.buckets.entry(self.oracle.bucket(w)).or_default().push(id);
        }
    }
}

/// Enumerates the ball of radius `r` with the default vertex cap.
pub fn enumerate_ball(oracle: Arc<dyn GroupOracle>, r: usize) -> Result<BallGraph> {
    enumerate_ball_capped(oracle, r, DEFAULT_BALL_CAP)
}

pub fn enumerate_ball_capped(oracle: Arc<dyn GroupOracle>, r: usize, cap: usize) -> Result<BallGraph> {
    let g = oracle.generators();
    let k = 2 * g;
    let mut words = vec![Word::empty()];
    let mut sphere_start = vec![0usize, 1];
    let mut next: Vec<u32> = vec![NONE; k];
    let mut finder = Finder {
        oracle: oracle.as_ref(),
        canonical: HashMap::new(),
        buckets: HashMap::new(),
    };
    finder.insert(&Word::empty(), 0);
    for depth in 0..=r {
        let (lo, hi) = (sphere_start[depth], sphere_start[depth + 1]);
        for v in lo..hi {
            for l in Letter::all(g) {
                let slot = v * k + l.code();
                if next[slot] != NONE {
                    continue;
                }
                let word = &words[v];
                let target = if word.letters().last() == Some(&l.inverse()) {
                    let mut p = word.clone().into_letters();
                    p.pop();
                    finder.find(&Word::from_letters(p), &words, depth - 1..=depth - 1)
                } else {
                    let cand = word.concat(&Word::letter(l));
                    let lo_len = depth.saturating_sub(1);
                    match finder.find(&cand, &words, lo_len..=depth + 1) {
                        Some(id) => Some(id),
                        None if depth < r => {
                            if words.len() >= cap {
                                return Err(Error::BallCap {
                                    cap,
                                    radius: r,
                                    reached: words.len(),
                                });
                            }
                            let id = words.len() as u32;
                            finder.insert(&cand, id);
                            words.push(cand);
                            next.extend(std::iter::repeat(NONE).take(k));
                            Some(id)
                        }
                        None => None,
                    }
                };
                if let Some(t) = target {
                    next[slot] = t;
                    next[t as usize * k + l.inverse().code()] = v as u32;
                }
            }
        }
        if depth < r {
            sphere_start.push(words.len());
        }
    }
    let n = words.len();
    let Finder { canonical, buckets, .. } = finder;
    Ok(BallGraph {
        radius: r,
        generators: g,
        words,
        sphere_start,
        next,
        oracle,
        canonical_index: canonical,
        buckets,
        dist: DistanceTable::new(n),
    })
}

impl BallGraph {
    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn oracle(&self) -> &Arc<dyn GroupOracle> {
        &self.oracle
    }

    pub fn word(&self, v: u32) -> &Word {
        &self.words[v as usize]
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    /// `|v|_S`.
    pub fn depth(&self, v: u32) -> usize {
        self.words[v as usize].len()
    }

    /// Vertex ids of the sphere of radius `k`.
    pub fn sphere(&self, k: usize) -> std::ops::Range<u32> {
        if k > self.radius {
            return 0..0;
        }
        self.sphere_start[k] as u32..self.sphere_start.get(k + 1).copied().unwrap_or(self.len()) as u32
    }

    /// Vertices with `|v|_S ≤ k`.
    pub fn within(&self, k: usize) -> std::ops::Range<u32> {
        0..self.sphere(k.min(self.radius)).end
    }

    pub fn neighbor(&self, v: u32, l: Letter) -> Option<u32> {
        match self.next[v as usize * 2 * self.generators + l.code()] {
            NONE => None,
            t => Some(t),
        }
    }

    /// `(letter, target)` pairs in letter order.
    pub fn neighbors(&self, v: u32) -> impl Iterator<Item = (Letter, u32)> + '_ {
        let k = 2 * self.generators;
        self.next[v as usize * k..(v as usize + 1) * k]
            .iter()
            .enumerate()
            .filter(|(_, &t)| t != NONE)
            .map(|(c, &t)| (Letter::from_code(c), t))
    }

    /// Vertex representing the element `w`, if it lies in the ball.
    pub fn locate(&self, w: &Word) -> Option<u32> {
        if self.oracle.is_canonical() {
            return self.canonical_index.get(&self.oracle.normal_form(w)).copied();
        }
        let inv = w.inverse();
        self.buckets
            .get(&self.oracle.bucket(w))?
            .iter()
            .copied()
            .find(|&id| self.oracle.is_trivial(&inv.mul(&self.words[id as usize])))
    }

    /// Follows the letters of `w` from `start` without leaving the ball.
    pub fn walk(&self, start: u32, w: &Word) -> Option<u32> {
        w.letters().iter().try_fold(start, |v, &l| self.neighbor(v, l))
    }

    /// Breadth-first distances from `u` inside the ball ([`INF`] if unreachable).
    pub fn dist_row(&self, u: u32) -> &[u16] {
        self.dist.row(u, || {
            let mut d = vec![INF; self.len()];
            let mut q = VecDeque::from([u]);
            d[u as usize] = 0;
            while let Some(x) = q.pop_front() {
                let dx = d[x as usize];
                for (_, y) in self.neighbors(x) {
                    if d[y as usize] == INF {
                        d[y as usize] = dx + 1;
                        q.push_back(y);
                    }
                }
            }
            d
        })
    }

    pub fn dist(&self, u: u32, v: u32) -> u16 {
        if u == 0 {
            return self.depth(v) as u16;
        }
        if v == 0 {
            return self.depth(u) as u16;
        }
        self.dist_row(u)[v as usize]
    }

    /// `|u⁻¹v|_S` when that element lies in the ball.
    pub fn group_dist(&self, u: u32, v: u32) -> Option<usize> {
        let g = self.word(u).inverse().mul(self.word(v));
        self.locate(&g).map(|x| self.depth(x))
    }

    /// True when the in-ball distance is the group distance.
    pub fn is_certified(&self, u: u32, v: u32) -> bool {
        self.group_dist(u, v) == Some(self.dist(u, v) as usize)
    }

    /// Multi-source distances from a vertex set.
    pub fn dist_from_set(&self, sources: &[u32]) -> Vec<u16> {
        let mut d = vec![INF; self.len()];
        let mut q = VecDeque::new();
        for &s in sources {
            if d[s as usize] != 0 {
                d[s as usize] = 0;
                q.push_back(s);
            }
        }
        while let Some(x) = q.pop_front() {
            let dx = d[x as usize];
            for (_, y) in self.neighbors(x) {
                if d[y as usize] == INF {
                    d[y as usize] = dx + 1;
                    q.push_back(y);
                }
            }
        }
        d
    }

    /// S-edges `(u, v, letter)` with `u < v` in id order, plus loops are
    /// impossible in a Cayley graph.
    pub fn s_edges(&self) -> Vec<(u32, u32, Letter)> {
        let mut out = Vec::new();
        for u in 0..self.len() as u32 {
            for (l, v) in self.neighbors(u) {
                if u < v || (u == v && !l.is_inverse()) {
                    out.push((u, v, l));
                }
            }
        }
        out
    }
}
