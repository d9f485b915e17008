use std::cmp::Ordering;
use std::collections::{BinaryHeap, VecDeque};

use serde::Serialize;

use super::space::{MetricSample, EPS};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Edge {
    pub u: u32,
    pub v: u32,
    pub len: f64,
}

/// A finite metric multigraph. Edge `i` read from `u` to `v` is the
/// oriented edge `+i`, read backwards it is `-i`.
#[derive(Clone, Debug, Serialize)]
pub struct StageGraph {
    /// Sample index of each vertex (identity for abstract graphs).
    pub labels: Vec<usize>,
    pub edges: Vec<Edge>,
    #[serde(skip)]
    adj: Vec<Vec<(u32, u32)>>,
    pub connected: bool,
}

struct Entry(f64, u32);

impl PartialEq for Entry {
    fn eq(&self, o: &Self) -> bool {
        self.cmp(o) == Ordering::Equal
    }
}
impl Eq for Entry {}
impl PartialOrd for Entry {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for Entry {
    fn cmp(&self, o: &Self) -> Ordering {
        o.0.total_cmp(&self.0).then(o.1.cmp(&self.1))
    }
}

impl StageGraph {
    pub fn new(vertices: usize, edges: Vec<Edge>) -> Self {
        Self::with_labels((0..vertices).collect(), edges)
    }

    pub fn with_labels(labels: Vec<usize>, edges: Vec<Edge>) -> Self {
        let mut adj = vec![Vec::new(); labels.len()];
        for (i, e) in edges.iter().enumerate() {
            adj[e.u as usize].push((e.v, i as u32));
            adj[e.v as usize].push((e.u, i as u32));
        }
        let mut g = StageGraph {
            labels,
            edges,
            adj,
            connected: true,
        };
        g.connected = g.components().iter().all(|&c| c == 0);
        g
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// `(neighbour, edge index)` pairs.
    pub fn incident(&self, v: u32) -> &[(u32, u32)] {
        &self.adj[v as usize]
    }

    /// Component index per vertex, numbered in order of least vertex.
    pub fn components(&self) -> Vec<usize> {
        let n = self.vertex_count();
        let mut comp = vec![usize::MAX; n];
        let mut next = 0;
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            comp[s] = next;
            let mut q = VecDeque::from([s as u32]);
            while let Some(x) = q.pop_front() {
                for &(y, _) in &self.adj[x as usize] {
                    if comp[y as usize] == usize::MAX {
                        comp[y as usize] = next;
                        q.push_back(y);
                    }
                }
            }
            next += 1;
        }
        comp
    }

    /// Path-metric distances from `src` (infinite when unreachable).
    pub fn distances_from(&self, src: u32) -> Vec<f64> {
        let mut d = vec![f64::INFINITY; self.vertex_count()];
        let mut heap = BinaryHeap::new();
        d[src as usize] = 0.0;
        heap.push(Entry(0.0, src));
        while let Some(Entry(dx, x)) = heap.pop() {
            if dx > d[x as usize] {
                continue;
            }
            for &(y, e) in &self.adj[x as usize] {
                let nd = dx + self.edges[e as usize].len;
                if nd < d[y as usize] {
                    d[y as usize] = nd;
                    heap.push(Entry(nd, y));
                }
            }
        }
        d
    }
}

/// `Γ_κ(A)`: vertices `subset`, an edge of length `dist` for each pair with
/// `0 < dist ≤ κ`.
pub fn gamma_graph(space: &MetricSample, subset: &[usize], kappa: f64) -> StageGraph {
    let mut edges = Vec::new();
    for (i, &x) in subset.iter().enumerate() {
        for (j, &y) in subset.iter().enumerate().skip(i + 1) {
            let d = space.dist(x, y);
            if d > 0.0 && d <= kappa + EPS {
                edges.push(Edge {
                    u: i as u32,
                    v: j as u32,
                    len: d,
                });
            }
        }
    }
    StageGraph::with_labels(subset.to_vec(), edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::netapprox::space::torus_bouquet_space;

    fn pair(d: f64) -> MetricSample {
        MetricSample::from_matrix(vec![vec![0.0, d], vec![d, 0.0]], 0).unwrap()
    }

    #[test]
    fn two_points_at_kappa_and_beyond() {
        let g = gamma_graph(&pair(0.5), &[0, 1], 0.5);
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.edges[0].len, 0.5);
        assert!(g.connected);
        let g = gamma_graph(&pair(0.6), &[0, 1], 0.5);
        assert!(!g.connected);
        assert_eq!(g.distances_from(0)[1], f64::INFINITY);
    }

    #[test]
    fn circle_graph_distances() {
        let s = torus_bouquet_space(&[1], 8).unwrap();
        let all: Vec<usize> = (0..8).collect();
        let g = gamma_graph(&s, &all, 0.125);
        assert_eq!(g.edge_count(), 8);
        let d = g.distances_from(0);
        assert!((d[4] - 0.5).abs() < EPS);
        assert!((d[7] - 0.125).abs() < EPS);
    }

    #[test]
    fn parallel_edges_are_kept() {
        let e = |len| Edge { u: 0, v: 1, len };
        let g = StageGraph::new(2, vec![e(1.0), e(2.0), e(3.0)]);
        assert_eq!(g.incident(0).len(), 3);
        assert_eq!(g.distances_from(1)[0], 1.0);
    }
}
