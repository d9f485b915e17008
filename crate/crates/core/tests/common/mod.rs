//! Independent brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use num_rational::Rational64;
use rand::Rng;
use relhyp::words::{cyclic_normalize, free_reduce, Letter, Word, WordSet};

// ---------------------------------------------------------------- words

/// Calls `f` on every freely reduced word of length at most `max_len`.
pub fn for_each_reduced_word(gens: usize, max_len: usize, mut f: impl FnMut(&[Letter])) {
    let mut stack: Vec<Letter> = Vec::with_capacity(max_len);
    fn rec(gens: usize, max_len: usize, stack: &mut Vec<Letter>, f: &mut dyn FnMut(&[Letter])) {
        f(stack);
        if stack.len() == max_len {
            return;
        }
        for l in Letter::all(gens) {
            if stack.last() == Some(&l.inverse()) {
                continue;
            }
            stack.push(l);
            rec(gens, max_len, stack, f);
            stack.pop();
        }
    }
    rec(gens, max_len, &mut stack, &mut f);
}

pub fn reduced_words(gens: usize, max_len: usize) -> Vec<Word> {
    let mut out = Vec::new();
    for_each_reduced_word(gens, max_len, |s| out.push(Word::from_letters(s.to_vec())));
    out
}

// ---------------------------------------------------------------- C*(λ)

/// Naive `C*(λ)` scan over every pair of linear occurrences in the closed
/// set. Two occurrences in different rotations of one cyclic word at the
/// same cyclic position count as one.
pub fn naive_cstar(set: &WordSet, lambda: Rational64) -> bool {
    let words: Vec<Word> = set.words();
    // cyclic class and position of each word's first letter
    let info: Vec<(Word, usize, usize)> = words
        .iter()
        .map(|w| {
            let c = cyclic_normalize(w);
            let n = c.len();
            let period = (1..=n).find(|&p| n % p == 0 && c.rotate(p) == c).unwrap_or(n);
            let shift = (0..n).find(|&k| &c.rotate(k) == w).expect("word is a rotation of its class");
            (c, shift, period)
        })
        .collect();
    let ge = |len: usize, w: usize| Rational64::from_integer(len as i64) >= lambda * Rational64::from_integer(w as i64);
    let gt = |len: usize, w: usize| Rational64::from_integer(len as i64) > lambda * Rational64::from_integer(w as i64);
    for w in &words {
        let s = w.letters();
        for len in 1..=s.len() {
            if !ge(len, s.len()) {
                continue;
            }
            for i in 0..=s.len() - len {
                for j in i + 1..=s.len() - len {
                    if s[i..i + len] == s[j..j + len] {
                        return false;
                    }
                }
            }
        }
    }
    for (a, w1) in words.iter().enumerate() {
        for (b, w2) in words.iter().enumerate() {
            if a == b {
                continue;
            }
            let (s1, s2) = (w1.letters(), w2.letters());
            let m = s1.len().min(s2.len());
            for len in 1..=m {
                if !gt(len, m) {
                    continue;
                }
                for i in 0..=s1.len() - len {
                    for j in 0..=s2.len() - len {
                        if s1[i..i + len] != s2[j..j + len] {
                            continue;
                        }
                        let (c1, sh1, p1) = &info[a];
                        let (c2, sh2, _) = &info[b];
                        let same = c1 == c2 && (sh1 + i) % p1 == (sh2 + j) % p1;
                        if !same {
                            return false;
                        }
                    }
                }
            }
        }
    }
    true
}

/// A random reduced word of exactly `len` letters.
pub fn random_reduced_word(rng: &mut impl Rng, gens: usize, len: usize) -> Word {
    let mut v: Vec<Letter> = Vec::with_capacity(len);
    while v.len() < len {
        let l = Letter::from_code(rng.gen_range(0..2 * gens));
        if v.last() != Some(&l.inverse()) && (v.len() + 1 < len || v.first() != Some(&l.inverse())) {
            v.push(l);
        }
    }
    Word::from_letters(v)
}

// ---------------------------------------------------------------- triviality

/// Freely reduced products of at most two conjugates `u r u⁻¹`, `r` a
/// rotation of a relator or its inverse and `|u| ≤ conj_len`, that have at
/// most `max_len` letters.
pub fn conjugate_products(relators: &[Word], gens: usize, conj_len: usize, max_len: usize) -> HashSet<Word> {
    let mut rots: BTreeSet<Word> = BTreeSet::new();
    for r in relators {
        for x in [r.clone(), r.inverse()] {
            for k in 0..x.len() {
                rots.insert(x.rotate(k));
            }
        }
    }
    let mut singles: HashSet<Word> = HashSet::new();
    for u in reduced_words(gens, conj_len) {
        for r in &rots {
            singles.insert(free_reduce(&u.concat(r).concat(&u.inverse())));
        }
    }
    let singles: Vec<Word> = singles.into_iter().collect();
    let mut by_prefix: HashMap<&[Letter], Vec<usize>> = HashMap::new();
    for (i, t) in singles.iter().enumerate() {
        for k in 1..=t.len() {
            by_prefix.entry(&t.letters()[..k]).or_default().push(i);
        }
    }
    let mut out: HashSet<Word> = HashSet::from([Word::empty()]);
    for t in &singles {
        if t.len() <= max_len {
            out.insert(t.clone());
        }
    }
    for t1 in &singles {
        let n = t1.len();
        // k letters of t1 cancel against t2; what is left of t1 must fit
        for k in n.saturating_sub(max_len)..=n {
            let keep = n - k;
            let suffix_inv = Word::from_letters(t1.letters()[keep..].to_vec()).inverse();
            let cands: Vec<usize> = if k == 0 {
                (0..singles.len()).collect()
            } else {
                by_prefix.get(suffix_inv.letters()).cloned().unwrap_or_default()
            };
            for j in cands {
                let t2 = &singles[j];
                if keep + t2.len() > max_len + k {
                    continue;
                }
                let p = free_reduce(&t1.concat(t2));
                if p.len() <= max_len {
                    out.insert(p);
                }
            }
        }
    }
    out
}

// ---------------------------------------------------------------- relative balls

/// The ball of radius `r` in the free group of rank `gens`, built from
/// reduced words, relative to the cyclic subgroup `⟨a⟩`.
pub struct FreeRelBall {
    pub words: Vec<Word>,
    pub index: HashMap<Word, usize>,
    pub s_adj: Vec<Vec<usize>>,
    pub rel_adj: Vec<Vec<usize>>,
    pub coset: Vec<usize>,
    pub ds: Vec<Vec<u16>>,
    pub dr: Vec<Vec<u16>>,
}

fn bfs_all(adj: &[Vec<usize>]) -> Vec<Vec<u16>> {
    (0..adj.len())
        .map(|s| {
            let mut d = vec![u16::MAX; adj.len()];
            d[s] = 0;
            let mut q = VecDeque::from([s]);
            while let Some(x) = q.pop_front() {
                for &y in &adj[x] {
                    if d[y] == u16::MAX {
                        d[y] = d[x] + 1;
                        q.push_back(y);
                    }
                }
            }
            d
        })
        .collect()
}

impl FreeRelBall {
    pub fn new(gens: usize, r: usize) -> Self {
        let words = reduced_words(gens, r);
        let index: HashMap<Word, usize> = words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        let mut s_adj = vec![Vec::new(); words.len()];
        for (i, w) in words.iter().enumerate() {
            for l in Letter::all(gens) {
                if let Some(&j) = index.get(&w.mul(&Word::letter(l))) {
                    s_adj[i].push(j);
                }
            }
        }
        // g⟨a⟩ is named by g with its trailing a-letters removed
        let mut keys: HashMap<Word, usize> = HashMap::new();
        let coset: Vec<usize> = words
            .iter()
            .map(|w| {
                let mut v = w.letters().to_vec();
                while v.last().is_some_and(|l| l.generator() == 0) {
                    v.pop();
                }
                let n = keys.len();
                *keys.entry(Word::from_letters(v)).or_insert(n)
            })
            .collect();
        let mut rel_adj = s_adj.clone();
        for i in 0..words.len() {
            for j in 0..words.len() {
                if i != j && coset[i] == coset[j] && !rel_adj[i].contains(&j) {
                    rel_adj[i].push(j);
                }
            }
        }
        let ds = bfs_all(&s_adj);
        let dr = bfs_all(&rel_adj);
        FreeRelBall {
            words,
            index,
            s_adj,
            rel_adj,
            coset,
            ds,
            dr,
        }
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    /// Largest diameter of the intersection of closed `δ`-neighbourhoods of
    /// two distinct cosets.
    pub fn alpha1_diameter(&self, delta: u16) -> u16 {
        let n = self.len();
        let cosets: BTreeSet<usize> = self.coset.iter().copied().collect();
        let near = |c: usize, v: usize| (0..n).any(|x| self.coset[x] == c && self.ds[x][v] <= delta);
        let nbhd: Vec<Vec<bool>> = cosets.iter().map(|&c| (0..n).map(|v| near(c, v)).collect()).collect();
        let mut best = 0;
        for a in 0..nbhd.len() {
            for b in a + 1..nbhd.len() {
                let common: Vec<usize> = (0..n).filter(|&v| nbhd[a][v] && nbhd[b][v]).collect();
                for &x in &common {
                    for &y in &common {
                        best = best.max(self.ds[x][y]);
                    }
                }
            }
        }
        best
    }

    /// Every relative geodesic from `u` to `v` as a vertex list.
    pub fn rel_geodesics(&self, u: usize, v: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut path = vec![u];
        fn rec(b: &FreeRelBall, v: usize, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            let x = *path.last().unwrap();
            if x == v {
                out.push(path.clone());
                return;
            }
            for &y in &b.rel_adj[x] {
                if b.dr[y][v] + 1 == b.dr[x][v] {
                    path.push(y);
                    rec(b, v, path, out);
                    path.pop();
                }
            }
        }
        rec(self, v, &mut path, &mut out);
        out
    }

    /// Thinness of relative geodesic triangles with a corner at the
    /// identity, distances in the word metric: for each side, each vertex on
    /// some geodesic of that side, the smaller over the other two sides of the
    /// worst geodesic's distance.
    pub fn based_rel_thinness(&self) -> u16 {
        let n = self.len();
        let id = self.index[&Word::empty()];
        let geo: HashMap<(usize, usize), Vec<Vec<usize>>> = (0..n)
            .flat_map(|y| (0..n).map(move |z| (y, z)))
            .filter(|&(y, z)| y <= z || y == id)
            .map(|(y, z)| ((y, z), self.rel_geodesics(y, z)))
            .collect();
        let dist_to = |v: usize, g: &[usize]| g.iter().map(|&x| self.ds[v][x]).min().unwrap();
        let worst = |v: usize, side: &[Vec<usize>]| side.iter().map(|g| dist_to(v, g)).max().unwrap();
        let mut delta = 0;
        for y in 0..n {
            for z in y..n {
                let sides = [&geo[&(id, y)], &geo[&(y, z)], &geo[&(id, z)]];
                for (s, (o1, o2)) in [(0, (1, 2)), (1, (0, 2)), (2, (0, 1))] {
                    let on_side: BTreeSet<usize> = sides[s].iter().flatten().copied().collect();
                    for v in on_side {
                        delta = delta.max(worst(v, sides[o1]).min(worst(v, sides[o2])));
                    }
                }
            }
        }
        delta
    }

    /// Bounded coset penetration constants `(a1, a2)` over every
    /// `λ`-bi-Lipschitz relative path from the identity without
    /// backtracking and with at most `len_cap` edges.
    pub fn bcp(&self, lambda: i64, len_cap: usize) -> (u16, u16) {
        let id = self.index[&Word::empty()];
        let mut paths: Vec<Vec<usize>> = Vec::new();
        let mut path = vec![id];
        fn rec(b: &FreeRelBall, lambda: i64, cap: usize, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            out.push(path.clone());
            if path.len() - 1 == cap {
                return;
            }
            let x = *path.last().unwrap();
            for &y in &b.rel_adj[x] {
                let n = path.len();
                let ok = path.iter().enumerate().all(|(i, &p)| lambda * b.dr[p][y] as i64 >= (n - i) as i64);
                if ok {
                    path.push(y);
                    rec(b, lambda, cap, path, out);
                    path.pop();
                }
            }
        }
        rec(self, lambda, len_cap, &mut path, &mut paths);
        // components: maximal runs of edges inside one coset
        let comps = |p: &[usize]| -> Option<HashMap<usize, (usize, usize)>> {
            let mut out: HashMap<usize, (usize, usize)> = HashMap::new();
            let mut i = 0;
            while i + 1 < p.len() {
                if self.coset[p[i]] != self.coset[p[i + 1]] {
                    i += 1;
                    continue;
                }
                let mut j = i + 1;
                while j + 1 < p.len() && self.coset[p[j + 1]] == self.coset[p[i]] {
                    j += 1;
                }
                if out.insert(self.coset[p[i]], (p[i], p[j])).is_some() {
                    return None;
                }
                i = j;
            }
            Some(out)
        };
        let good: Vec<(usize, HashMap<usize, (usize, usize)>)> = paths
            .iter()
            .filter_map(|p| comps(p).map(|c| (*p.last().unwrap(), c)))
            .collect();
        let (mut a1, mut a2) = (0, 0);
        for (e, cp) in &good {
            for (q_end, cq) in &good {
                if self.ds[*e][*q_end] > 1 {
                    continue;
                }
                for (k, &(s0, s1)) in cp {
                    match cq.get(k) {
                        None => a1 = a1.max(self.ds[s0][s1]),
                        Some(&(t0, t1)) => a2 = a2.max(self.ds[s0][t0].max(self.ds[s1][t1])),
                    }
                }
            }
        }
        (a1, a2)
    }
}

// ---------------------------------------------------------------- cactus graphs

pub struct Cactus {
    pub n: usize,
    pub edges: Vec<(usize, usize, f64)>,
    /// Cycles and bridges as sorted vertex sets.
    pub blocks: BTreeSet<Vec<usize>>,
}

/// Grows a cactus by attaching bridges and cycles to random vertices.
pub fn random_cactus(rng: &mut impl Rng, max_vertices: usize) -> Cactus {
    let weights = [0.5, 1.0, 1.0, 1.5, 2.0];
    let mut n = 1;
    let mut edges = Vec::new();
    let mut blocks = BTreeSet::new();
    while n < max_vertices {
        let at = rng.gen_range(0..n);
        let room = max_vertices - n;
        let len = if room >= 2 && rng.gen_bool(0.6) { rng.gen_range(3..=room.min(6) + 1) } else { 2 };
        let w = |rng: &mut dyn rand::RngCore| weights[rng.gen_range(0..weights.len())];
        if len == 2 {
            edges.push((at, n, w(rng)));
            blocks.insert(vec![at, n]);
            n += 1;
        } else {
            let mut cyc = vec![at];
            cyc.extend(n..n + len - 1);
            for i in 0..len {
                edges.push((cyc[i], cyc[(i + 1) % len], w(rng)));
            }
            n += len - 1;
            cyc.sort_unstable();
            blocks.insert(cyc);
        }
        if rng.gen_bool(0.15) {
            break;
        }
    }
    Cactus { n, edges, blocks }
}

/// All-pairs shortest distances by Floyd–Warshall.
pub fn floyd(n: usize, edges: &[(usize, usize, f64)]) -> Vec<Vec<f64>> {
    let mut d = vec![vec![f64::INFINITY; n]; n];
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = 0.0;
    }
    for &(u, v, w) in edges {
        d[u][v] = d[u][v].min(w);
        d[v][u] = d[v][u].min(w);
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = d[i][k] + d[k][j];
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    d
}

/// Nearest vertices of `piece` to `v`.
pub fn nearest_points(d: &[Vec<f64>], v: usize, piece: &[usize]) -> Vec<usize> {
    let best = piece.iter().map(|&p| d[v][p]).fold(f64::INFINITY, f64::min);
    piece.iter().copied().filter(|&p| d[v][p] <= best + 1e-9).collect()
}

// ---------------------------------------------------------------- nets

/// Flat torus distance from integer grid coordinates.
pub fn grid_torus_dist(x: &[i64], y: &[i64], grid: i64) -> f64 {
    let s: i64 = x
        .iter()
        .zip(y)
        .map(|(a, b)| {
            let d = (a - b).rem_euclid(grid);
            let d = d.min(grid - d);
            d * d
        })
        .sum();
    (s as f64).sqrt() / grid as f64
}

/// Separation and coverage of `net` within `domain`, by a full scan.
pub fn scan_snet(dist: impl Fn(usize, usize) -> f64, domain: &[usize], net: &[usize], delta: f64) -> Result<(), String> {
    for (i, &x) in net.iter().enumerate() {
        for &y in &net[i + 1..] {
            if dist(x, y) < delta - 1e-9 {
                return Err(format!("net points {x}, {y} closer than {delta}"));
            }
        }
    }
    for &x in domain {
        if !net.iter().any(|&y| dist(x, y) < delta - 1e-9) {
            return Err(format!("point {x} uncovered at {delta}"));
        }
    }
    Ok(())
}
