use std::collections::{HashMap, HashSet};

use crate::cayley::{BallGraph, RelBallGraph, INF};

/// A graph whose geodesics form triangle sides, with a possibly different
/// metric for measuring how far apart points are.
pub(crate) trait Metric: Sync {
    fn len(&self) -> usize;
    fn adj(&self, x: u32) -> &[u32];
    fn side_row(&self, u: u32) -> &[u16];
    fn point_row(&self, u: u32) -> &[u16];
}

pub(crate) struct SMetric<'a> {
    ball: &'a BallGraph,
    adj: Vec<Vec<u32>>,
}

impl<'a> SMetric<'a> {
    pub fn new(ball: &'a BallGraph) -> Self {
        let adj = (0..ball.len() as u32)
            .map(|v| {
                let mut a: Vec<u32> = ball.neighbors(v).map(|(_, y)| y).collect();
                a.sort_unstable();
                a.dedup();
                a
            })
            .collect();
        SMetric { ball, adj }
    }
}

impl Metric for SMetric<'_> {
    fn len(&self) -> usize {
        self.ball.len()
    }
    fn adj(&self, x: u32) -> &[u32] {
        &self.adj[x as usize]
    }
    fn side_row(&self, u: u32) -> &[u16] {
        self.ball.dist_row(u)
    }
    fn point_row(&self, u: u32) -> &[u16] {
        self.ball.dist_row(u)
    }
}

/// Sides are relative geodesics; points are compared in the word metric.
pub(crate) struct RelMetric<'a> {
    rel: &'a RelBallGraph,
    adj: Vec<Vec<u32>>,
}

impl<'a> RelMetric<'a> {
    pub fn new(rel: &'a RelBallGraph) -> Self {
        let adj = (0..rel.len() as u32).map(|v| rel.rel_neighbors(v)).collect();
        RelMetric { rel, adj }
    }
}

impl Metric for RelMetric<'_> {
    fn len(&self) -> usize {
        self.rel.len()
    }
    fn adj(&self, x: u32) -> &[u32] {
        &self.adj[x as usize]
    }
    fn side_row(&self, u: u32) -> &[u16] {
        self.rel.rel_row(u)
    }
    fn point_row(&self, u: u32) -> &[u16] {
        self.rel.base.dist_row(u)
    }
}

/// The union of all geodesics from `a` to `b`, in order of distance from
/// `a`, with predecessor lists (indices into `vertices`).
pub(crate) struct Interval {
    pub vertices: Vec<u32>,
    pub preds: Vec<Vec<usize>>,
}

pub(crate) fn interval(m: &dyn Metric, a: u32, b: u32) -> Interval {
    let (da, db) = (m.side_row(a), m.side_row(b));
    if da[b as usize] == INF {
        return Interval {
            vertices: Vec::new(),
            preds: Vec::new(),
        };
    }
    let mut seen = vec![b];
    let mut i = 0;
    let mut member = HashSet::from([b]);
    while i < seen.len() {
        let x = seen[i];
        i += 1;
        for &y in m.adj(x) {
            if da[y as usize] + 1 == da[x as usize] && db[y as usize] == db[x as usize] + 1 && member.insert(y) {
                seen.push(y);
            }
        }
    }
    seen.sort_unstable_by_key(|&x| (da[x as usize], x));
    let index: HashMap<u32, usize> = seen.iter().enumerate().map(|(k, &x)| (x, k)).collect();
    let preds = seen
        .iter()
        .map(|&x| {
            m.adj(x)
                .iter()
                .filter(|&&y| da[y as usize] + 1 == da[x as usize])
                .filter_map(|y| index.get(y).copied())
                .collect()
        })
        .collect();
    Interval { vertices: seen, preds }
}

impl Interval {
    /// Largest, over geodesics in the interval, of the point distance from
    /// `v` to the geodesic.
    pub fn farthest_geodesic(&self, m: &dyn Metric, v: u32, scratch: &mut Vec<u16>) -> u16 {
        let row = m.point_row(v);
        scratch.clear();
        for (k, &x) in self.vertices.iter().enumerate() {
            let here = row[x as usize];
            let through = self.preds[k].iter().map(|&p| scratch[p]).max();
            scratch.push(match through {
                Some(t) => t.min(here),
                None => here,
            });
        }
        scratch.last().copied().unwrap_or(INF)
    }
}
