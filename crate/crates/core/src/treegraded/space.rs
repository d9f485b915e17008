use std::cmp::Ordering;
use std::collections::{BinaryHeap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerance for comparing path lengths.
pub const EPS: f64 = 1e-9;

/// A connected weighted graph with a list of pieces (vertex subsets).
#[derive(Clone, Debug)]
pub struct PieceSpace {
    n: usize,
    edges: Vec<(usize, usize, f64)>,
    adj: Vec<Vec<(usize, f64)>>,
    pub pieces: Vec<Vec<usize>>,
    metric: Vec<Vec<f64>>,
}

#[derive(Serialize, Deserialize)]
struct PieceSpaceJson {
    vertices: usize,
    edges: Vec<(usize, usize, f64)>,
    pieces: Vec<Vec<usize>>,
}

#[derive(Clone, Copy, PartialEq)]
struct State(f64, usize);

impl Eq for State {}

impl Ord for State {
    fn cmp(&self, other: &Self) -> Ordering {
        other.0.total_cmp(&self.0).then_with(|| other.1.cmp(&self.1))
    }
}

impl PartialOrd for State {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Single-source shortest distances restricted to `allowed` vertices.
pub(crate) fn dijkstra(adj: &[Vec<(usize, f64)>], src: usize, allowed: Option<&[bool]>) -> Vec<f64> {
    let mut d = vec![f64::INFINITY; adj.len()];
    d[src] = 0.0;
    let mut heap = BinaryHeap::from([State(0.0, src)]);
    while let Some(State(dx, x)) = heap.pop() {
        if dx > d[x] {
            continue;
        }
        for &(y, w) in &adj[x] {
            if allowed.is_some_and(|a| !a[y]) {
                continue;
            }
            let nd = dx + w;
            if nd < d[y] {
                d[y] = nd;
                heap.push(State(nd, y));
            }
        }
    }
    d
}

impl PieceSpace {
    /// Validates connectivity, edge lengths, and that each piece is connected
    /// and geodesic.
    pub fn new(n: usize, edges: Vec<(usize, usize, f64)>, mut pieces: Vec<Vec<usize>>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput("empty graph".into()));
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v, w) in &edges {
            if u >= n || v >= n || u == v {
                return Err(Error::InvalidInput(format!("bad edge ({u},{v})")));
            }
            if !(w > 0.0 && w.is_finite()) {
                return Err(Error::InvalidInput(format!("edge ({u},{v}) has length {w}")));
            }
            adj[u].push((v, w));
            adj[v].push((u, w));
        }
        for a in &mut adj {
            a.sort_by(|x, y| x.0.cmp(&y.0).then(x.1.total_cmp(&y.1)));
        }
        let metric: Vec<Vec<f64>> = (0..n).map(|s| dijkstra(&adj, s, None)).collect();
        if metric[0].iter().any(|d| d.is_infinite()) {
            return Err(Error::InvalidInput("graph is not connected".into()));
        }
        for p in &mut pieces {
            p.sort_unstable();
            p.dedup();
            if p.is_empty() || p.iter().any(|&v| v >= n) {
                return Err(Error::InvalidInput(format!("bad piece {p:?}")));
            }
        }
        let space = PieceSpace {
            n,
            edges,
            adj,
            pieces,
            metric,
        };
        for (i, p) in space.pieces.iter().enumerate() {
            space.check_piece(p).map_err(|e| Error::InvalidInput(format!("piece {i}: {e}")))?;
        }
        Ok(space)
    }

    fn check_piece(&self, p: &[usize]) -> Result<()> {
        let mask = self.mask(p);
        for &u in p {
            let d = dijkstra(&self.adj, u, Some(&mask));
            for &v in p {
                if d[v].is_infinite() {
                    return Err(Error::InvalidInput(format!("disconnected ({u},{v})")));
                }
                if d[v] > self.metric[u][v] + EPS {
                    return Err(Error::InvalidInput(format!("not geodesic between {u} and {v}")));
                }
            }
        }
        Ok(())
    }

    pub(crate) fn mask(&self, p: &[usize]) -> Vec<bool> {
        let mut m = vec![false; self.n];
        for &v in p {
            m[v] = true;
        }
        m
    }

    /// Same graph, new pieces.
    pub fn with_pieces(&self, pieces: Vec<Vec<usize>>) -> Result<Self> {
        PieceSpace::new(self.n, self.edges.clone(), pieces)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize, f64)] {
        &self.edges
    }

    pub fn adjacency(&self) -> &[Vec<(usize, f64)>] {
        &self.adj
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].iter().map(|&(u, _)| u)
    }

    pub fn dist(&self, u: usize, v: usize) -> f64 {
        self.metric[u][v]
    }

    /// Connectivity of the subgraph induced by `vs`.
    pub fn induces_connected(&self, vs: &[usize]) -> bool {
        let Some(&s) = vs.first() else { return true };
        let mask = self.mask(vs);
        let mut seen = vec![false; self.n];
        seen[s] = true;
        let mut q = VecDeque::from([s]);
        let mut count = 1;
        while let Some(x) = q.pop_front() {
            for y in self.neighbors(x) {
                if mask[y] && !seen[y] {
                    seen[y] = true;
                    count += 1;
                    q.push_back(y);
                }
            }
        }
        count == vs.iter().filter(|&&v| mask[v]).count()
    }

    /// Number of shortest paths from `src` to every vertex.
    pub fn shortest_path_counts(&self, src: usize) -> Vec<f64> {
        let d = &self.metric[src];
        let mut order: Vec<usize> = (0..self.n).collect();
        order.sort_by(|&a, &b| d[a].total_cmp(&d[b]));
        let mut c = vec![0.0; self.n];
        c[src] = 1.0;
        for &x in &order {
            if x == src {
                continue;
            }
            c[x] = self.adj[x]
                .iter()
                .filter(|&&(y, w)| (d[y] + w - d[x]).abs() <= EPS)
                .map(|&(y, _)| c[y])
                .sum();
        }
        c
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&PieceSpaceJson {
            vertices: self.n,
            edges: self.edges.clone(),
            pieces: self.pieces.clone(),
        })
        .expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let j: PieceSpaceJson = serde_json::from_str(text).map_err(|e| Error::InvalidInput(e.to_string()))?;
        PieceSpace::new(j.vertices, j.edges, j.pieces)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_geodesic_piece() {
        // square with a shortcut diagonal; the piece {0,1,2} without vertex 3
        let edges = vec![(0, 1, 1.0), (1, 2, 1.0), (2, 3, 1.0), (3, 0, 1.0), (0, 2, 1.0)];
        assert!(PieceSpace::new(4, edges.clone(), vec![vec![0, 1, 2]]).is_ok());
        assert!(PieceSpace::new(4, edges, vec![vec![0, 3, 2, 1]]).is_ok());
        let path = vec![(0, 1, 1.0), (1, 2, 1.0), (0, 2, 5.0)];
        assert!(PieceSpace::new(3, path, vec![vec![0, 2]]).is_err());
    }

    #[test]
    fn json_round_trip() {
        let x = PieceSpace::new(3, vec![(0, 1, 1.5), (1, 2, 2.0)], vec![vec![0, 1], vec![1, 2]]).unwrap();
        let y = PieceSpace::from_json(&x.to_json()).unwrap();
        assert_eq!(y.pieces, x.pieces);
        assert_eq!(y.dist(0, 2), 3.5);
    }

    #[test]
    fn counts_paths() {
        let sq = PieceSpace::new(4, vec![(0, 1, 1.0), (1, 2, 1.0), (2, 3, 1.0), (3, 0, 1.0)], vec![]).unwrap();
        assert_eq!(sq.shortest_path_counts(0)[2], 2.0);
    }
}
