use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

use super::ball::{BallGraph, DistanceTable, INF};
use crate::error::{Error, Result};

/// The ball enriched with one coset partition per parabolic subgroup; two
/// distinct vertices in a common coset are joined by an ℋ-edge.
///
/// Coset ids are ball-certified only: two vertices share an id iff the
/// oracle places `u⁻¹v` in the subgroup.
pub struct RelBallGraph {
    pub base: Arc<BallGraph>,
    pub parabolics: Vec<Vec<usize>>,
    /// `coset_of[i][v]`: coset id of `v` for parabolic `i`, numbered by
    /// first appearance in vertex order.
    coset_of: Vec<Vec<u32>>,
    /// `members[i][c]`: vertices of coset `c`, ascending.
    members: Vec<Vec<Vec<u32>>>,
    hub_start: Vec<usize>,
    dist: DistanceTable,
}

impl std::fmt::Debug for RelBallGraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("RelBallGraph")
            .field("radius", &self.base.radius)
            .field("vertices", &self.base.len())
            .field("parabolics", &self.parabolics)
            .finish()
    }
}

fn partition_by_key(ball: &BallGraph, gens: &[usize]) -> Option<Vec<u32>> {
    let oracle = ball.oracle();
    let mut ids: HashMap<crate::words::Word, u32> = HashMap::new();
    let mut out = Vec::with_capacity(ball.len());
    for v in 0..ball.len() as u32 {
        let key = oracle.coset_key(ball.word(v), gens)?;
        let next = ids.len() as u32;
        out.push(*ids.entry(key).or_insert(next));
    }
    Some(out)
}

fn partition_pairwise(ball: &BallGraph, gens: &[usize]) -> Vec<u32> {
    let oracle = ball.oracle();
    let mut reps: Vec<u32> = Vec::new();
    let mut out = Vec::with_capacity(ball.len());
    for v in 0..ball.len() as u32 {
        let inv = ball.word(v).inverse();
        let found = reps
            .iter()
            .position(|&r| oracle.in_parabolic(&inv.mul(ball.word(r)), gens));
        match found {
            Some(c) => out.push(c as u32),
            None => {
                out.push(reps.len() as u32);
                reps.push(v);
            }
        }
    }
    out
}

/// Builds the relative graph for the given generator subsets.
pub fn build_relative_ball(base: Arc<BallGraph>, parabolics: &[Vec<usize>]) -> Result<RelBallGraph> {
    if parabolics.is_empty() {
        return Err(Error::Precondition("relative graph needs at least one parabolic".into()));
    }
    let mut coset_of = Vec::new();
    let mut members = Vec::new();
    let mut hub_start = Vec::new();
    let mut hubs = 0;
    for gens in parabolics {
        let part = partition_by_key(&base, gens).unwrap_or_else(|| partition_pairwise(&base, gens));
        let count = part.iter().map(|&c| c as usize + 1).max().unwrap_or(0);
        let mut m = vec![Vec::new(); count];
        for (v, &c) in part.iter().enumerate() {
            m[c as usize].push(v as u32);
        }
        hub_start.push(hubs);
        hubs += count;
        coset_of.push(part);
        members.push(m);
    }
    let n = base.len();
    Ok(RelBallGraph {
        base,
        parabolics: parabolics.to_vec(),
        coset_of,
        members,
        hub_start,
        dist: DistanceTable::new(n),
    })
}

impl RelBallGraph {
    pub fn len(&self) -> usize {
        self.base.len()
    }

    pub fn is_empty(&self) -> bool {
        self.base.is_empty()
    }

    pub fn coset(&self, parabolic: usize, v: u32) -> u32 {
        self.coset_of[parabolic][v as usize]
    }

    pub fn coset_members(&self, parabolic: usize, coset: u32) -> &[u32] {
        &self.members[parabolic][coset as usize]
    }

    pub fn coset_count(&self, parabolic: usize) -> usize {
        self.members[parabolic].len()
    }

    /// All `(parabolic, coset)` pairs with at least `min_size` members.
    pub fn cosets(&self, min_size: usize) -> Vec<(usize, u32)> {
        let mut out = Vec::new();
        for (i, m) in self.members.iter().enumerate() {
            for (c, vs) in m.iter().enumerate() {
                if vs.len() >= min_size {
                    out.push((i, c as u32));
                }
            }
        }
        out
    }

    pub fn same_coset(&self, parabolic: usize, u: u32, v: u32) -> bool {
        self.coset_of[parabolic][u as usize] == self.coset_of[parabolic][v as usize]
    }

    /// First parabolic (if any) whose coset contains both endpoints.
    pub fn shared_coset(&self, u: u32, v: u32) -> Option<(usize, u32)> {
        (0..self.parabolics.len())
            .find(|&i| self.same_coset(i, u, v))
            .map(|i| (i, self.coset(i, u)))
    }

    /// ℋ-edges `(u, v, parabolic, coset)` with `u < v`.
    pub fn h_edges(&self) -> Vec<(u32, u32, usize, u32)> {
        let mut out = Vec::new();
        for (i, m) in self.members.iter().enumerate() {
            for (c, vs) in m.iter().enumerate() {
                for (a, &u) in vs.iter().enumerate() {
                    for &v in &vs[a + 1..] {
                        out.push((u, v, i, c as u32));
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Distances in `S ∪ ℋ` from `u`: each coset is a hub entered at cost 1
    /// and left at cost 0.
    pub fn rel_row(&self, u: u32) -> &[u16] {
        self.dist.row(u, || {
            let n = self.len();
            let hubs: usize = self.members.iter().map(|m| m.len()).sum();
            let mut d = vec![INF; n + hubs];
            let mut dq = VecDeque::from([u as usize]);
            d[u as usize] = 0;
            while let Some(x) = dq.pop_front() {
                let dx = d[x];
                if x >= n {
                    let h = x - n;
                    let i = self.hub_start.partition_point(|&s| s <= h) - 1;
                    let c = h - self.hub_start[i];
                    for &v in &self.members[i][c] {
                        if d[v as usize] > dx {
                            d[v as usize] = dx;
                            dq.push_front(v as usize);
                        }
                    }
                    continue;
                }
                for (_, y) in self.base.neighbors(x as u32) {
                    if d[y as usize] > dx + 1 {
                        d[y as usize] = dx + 1;
                        dq.push_back(y as usize);
                    }
                }
                for i in 0..self.parabolics.len() {
                    let c = self.coset_of[i][x] as usize;
                    if self.members[i][c].len() < 2 {
                        continue;
                    }
                    let h = n + self.hub_start[i] + c;
                    if d[h] > dx + 1 {
                        d[h] = dx + 1;
                        dq.push_back(h);
                    }
                }
            }
            d.truncate(n);
            d
        })
    }

    pub fn rel_dist(&self, u: u32, v: u32) -> u16 {
        self.rel_row(u)[v as usize]
    }

    pub fn dist_s(&self, u: u32, v: u32) -> u16 {
        self.base.dist(u, v)
    }

    /// Neighbours in `S ∪ ℋ`, deduplicated, ascending.
    pub fn rel_neighbors(&self, v: u32) -> Vec<u32> {
        let mut out: Vec<u32> = self.base.neighbors(v).map(|(_, t)| t).collect();
        for i in 0..self.parabolics.len() {
            out.extend(
                self.coset_members(i, self.coset(i, v))
                    .iter()
                    .copied()
                    .filter(|&t| t != v),
            );
        }
        out.sort_unstable();
        out.dedup();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley::ball::enumerate_ball;
    use crate::cayley::oracle::{FreeAbelian, FreeGroup};
    use crate::words::w;

    #[test]
    fn free_group_relative_to_a() {
        let b = Arc::new(enumerate_ball(Arc::new(FreeGroup { rank: 2 }), 5).unwrap());
        let rel = build_relative_ball(b.clone(), &[vec![0]]).unwrap();
        let v = |s: &str| b.locate(&w(s)).unwrap();
        assert_eq!(rel.rel_dist(0, v("aaa")), 1);
        assert_eq!(rel.rel_dist(0, v("baaab'")), 3);
        assert_eq!(rel.coset_members(0, rel.coset(0, 0)).len(), 11);
    }

    #[test]
    fn z2_relative_to_a() {
        let r = 4;
        let b = Arc::new(enumerate_ball(Arc::new(FreeAbelian { rank: 2 }), r).unwrap());
        let rel = build_relative_ball(b.clone(), &[vec![0]]).unwrap();
        for k in 1..r {
            let v = b.locate(&w(&format!("a^{k}b"))).unwrap();
            assert_eq!(rel.rel_dist(0, v), 2);
        }
    }

    #[test]
    fn relative_distance_is_at_most_word_distance() {
        let b = Arc::new(enumerate_ball(Arc::new(FreeAbelian { rank: 2 }), 3).unwrap());
        let rel = build_relative_ball(b.clone(), &[vec![0]]).unwrap();
        for u in 0..b.len() as u32 {
            for v in 0..b.len() as u32 {
                assert!(rel.rel_dist(u, v) <= b.dist(u, v));
            }
        }
    }

    #[test]
    fn needs_a_parabolic() {
        let b = Arc::new(enumerate_ball(Arc::new(FreeGroup { rank: 2 }), 1).unwrap());
        assert!(build_relative_ball(b, &[]).is_err());
    }
}
