use serde::Serialize;

use super::geodesics::{edge_tag, first_geodesic};
use super::relative::RelBallGraph;
use crate::error::{Error, Result};
use crate::words::{Letter, Word};

/// Edge of the relative graph: an S-edge with its label or an ℋ-edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum EdgeTag {
    S(Letter),
    H { parabolic: usize, coset: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct RelPath {
    pub vertices: Vec<u32>,
    pub edges: Vec<EdgeTag>,
}

impl RelPath {
    pub fn trivial(v: u32) -> Self {
        RelPath {
            vertices: vec![v],
            edges: Vec::new(),
        }
    }

    pub fn push(&mut self, v: u32, tag: EdgeTag) {
        self.vertices.push(v);
        self.edges.push(tag);
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn start(&self) -> u32 {
        self.vertices[0]
    }

    pub fn end(&self) -> u32 {
        *self.vertices.last().unwrap()
    }

    /// Tags consecutive vertices, preferring S-edges.
    pub fn from_vertices(rel: &RelBallGraph, vertices: &[u32]) -> Result<Self> {
        let mut p = RelPath::trivial(*vertices.first().ok_or_else(|| Error::InvalidInput("empty path".into()))?);
        for pair in vertices.windows(2) {
            let tag = edge_tag(rel, pair[0], pair[1])
                .ok_or_else(|| Error::InvalidInput(format!("no edge {} -> {}", pair[0], pair[1])))?;
            p.push(pair[1], tag);
        }
        Ok(p)
    }

    /// The S-path spelled by `w` from `start`.
    pub fn spell(rel: &RelBallGraph, start: u32, w: &Word) -> Result<Self> {
        let mut p = RelPath::trivial(start);
        for &l in w.letters() {
            let v = rel
                .base
                .neighbor(p.end(), l)
                .ok_or_else(|| Error::OutsideBall(format!("{w} from vertex {start}")))?;
            p.push(v, EdgeTag::S(l));
        }
        Ok(p)
    }

    pub fn validate(&self, rel: &RelBallGraph) -> Result<()> {
        for (i, tag) in self.edges.iter().enumerate() {
            let (u, v) = (self.vertices[i], self.vertices[i + 1]);
            let ok = match *tag {
                EdgeTag::S(l) => rel.base.neighbor(u, l) == Some(v),
                EdgeTag::H { parabolic, coset } => {
                    u != v && rel.coset(parabolic, u) == coset && rel.coset(parabolic, v) == coset
                }
            };
            if !ok {
                return Err(Error::InvalidInput(format!("edge {i} ({u} -> {v}) is not {tag:?}")));
            }
        }
        Ok(())
    }
}

/// A maximal subpath inside one coset: edges `start..end`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Component {
    pub parabolic: usize,
    pub coset: u32,
    pub start: usize,
    pub end: usize,
}

impl Component {
    pub fn endpoints(&self, p: &RelPath) -> (u32, u32) {
        (p.vertices[self.start], p.vertices[self.end])
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PathAnalysis {
    pub components: Vec<Component>,
    /// Components plus edges outside every component.
    pub segments: usize,
    pub backtracking: bool,
}

/// ℋ-components: maximal runs of edges whose endpoints share a coset. An
/// S-edge labelled by a parabolic generator belongs to a component just as an
/// ℋ-edge does.
pub fn analyze_path(p: &RelPath, rel: &RelBallGraph) -> PathAnalysis {
    let mut components = Vec::new();
    let mut covered = vec![false; p.len()];
    for i in 0..rel.parabolics.len() {
        let mut j = 0;
        while j < p.len() {
            let (u, v) = (p.vertices[j], p.vertices[j + 1]);
            if u == v || !rel.same_coset(i, u, v) {
                j += 1;
                continue;
            }
            let c = rel.coset(i, u);
            let start = j;
            while j < p.len() && rel.coset(i, p.vertices[j + 1]) == c && p.vertices[j] != p.vertices[j + 1] {
                covered[j] = true;
                j += 1;
            }
            components.push(Component {
                parabolic: i,
                coset: c,
                start,
                end: j,
            });
        }
    }
    components.sort_by_key(|c| (c.start, c.parabolic));
    let mut backtracking = false;
    for (a, x) in components.iter().enumerate() {
        for y in &components[a + 1..] {
            if x.parabolic == y.parabolic && x.coset == y.coset {
                backtracking = true;
            }
        }
    }
    let segments = components.len() + covered.iter().filter(|c| !**c).count();
    PathAnalysis {
        components,
        segments,
        backtracking,
    }
}

/// Replaces each component that uses an ℋ-edge by the first in-ball
/// geodesic between its endpoints; other edges are kept.
pub fn lift_path(p: &RelPath, rel: &RelBallGraph) -> Result<Vec<u32>> {
    let analysis = analyze_path(p, rel);
    let ball = &rel.base;
    let mut out = vec![p.start()];
    let mut j = 0;
    while j < p.len() {
        let comp = analysis
            .components
            .iter()
            .filter(|c| c.start == j && p.edges[c.start..c.end].iter().any(|e| matches!(e, EdgeTag::H { .. })))
            .max_by_key(|c| c.end - c.start);
        match comp {
            Some(c) => {
                let (u, v) = c.endpoints(p);
                if !ball.is_certified(u, v) {
                    return Err(Error::OutsideBall(format!(
                        "geodesic for edge {} ({u} -> {v}) leaves the ball",
                        c.start
                    )));
                }
                out.extend_from_slice(&first_geodesic(ball, u, v)[1..]);
                j = c.end;
            }
            None => {
                let (u, v) = (p.vertices[j], p.vertices[j + 1]);
                match p.edges[j] {
                    EdgeTag::S(_) => out.push(v),
                    EdgeTag::H { .. } => {
                        if !ball.is_certified(u, v) {
                            return Err(Error::OutsideBall(format!("geodesic for edge {j} leaves the ball")));
                        }
                        out.extend_from_slice(&first_geodesic(ball, u, v)[1..]);
                    }
                }
                j += 1;
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley::{build_relative_ball, enumerate_ball, FreeAbelian, FreeGroup};
    use crate::words::w;
    use std::sync::Arc;

    fn f2_rel_a(r: usize) -> RelBallGraph {
        let b = Arc::new(enumerate_ball(Arc::new(FreeGroup { rank: 2 }), r).unwrap());
        build_relative_ball(b, &[vec![0]]).unwrap()
    }

    #[test]
    fn single_coset_path_is_one_component() {
        let rel = f2_rel_a(3);
        let p = RelPath::spell(&rel, 0, &w("aaa")).unwrap();
        let a = analyze_path(&p, &rel);
        assert_eq!(a.components.len(), 1);
        assert_eq!((a.components[0].start, a.components[0].end), (0, 3));
        assert!(!a.backtracking);
    }

    #[test]
    fn separated_components_do_not_backtrack() {
        let rel = f2_rel_a(3);
        let a = analyze_path(&RelPath::spell(&rel, 0, &w("aba")).unwrap(), &rel);
        assert_eq!(a.segments, 3);
        assert_eq!(a.components.len(), 2);
        assert!(!a.backtracking);
    }

    #[test]
    fn return_to_coset_backtracks() {
        let rel = f2_rel_a(3);
        let mut p = RelPath::trivial(0);
        let b = &rel.base;
        for s in ["a", "ab", "a", "aa"] {
            let v = b.locate(&w(s)).unwrap();
            let tag = crate::cayley::edge_tag(&rel, p.end(), v).unwrap();
            p.push(v, tag);
        }
        p.validate(&rel).unwrap();
        assert!(analyze_path(&p, &rel).backtracking);
    }

    #[test]
    fn lift_of_h_edge() {
        let rel = f2_rel_a(3);
        let a3 = rel.base.locate(&w("aaa")).unwrap();
        let p = RelPath::from_vertices(&rel, &[0, a3]).unwrap();
        assert!(matches!(p.edges[0], EdgeTag::H { .. }));
        let lift = lift_path(&p, &rel).unwrap();
        let words: Vec<String> = lift.iter().map(|&v| rel.base.word(v).to_string()).collect();
        assert_eq!(words, ["", "a", "a^2", "a^3"]);
        let s = RelPath::spell(&rel, 0, &w("ab")).unwrap();
        assert_eq!(lift_path(&s, &rel).unwrap(), s.vertices);
    }

    #[test]
    fn lift_in_z2() {
        let b = Arc::new(enumerate_ball(Arc::new(FreeAbelian { rank: 2 }), 3).unwrap());
        let rel = build_relative_ball(b.clone(), &[vec![0]]).unwrap();
        let a2 = b.locate(&w("aa")).unwrap();
        let a2b = b.locate(&w("aab")).unwrap();
        let mut p = RelPath::from_vertices(&rel, &[0, a2]).unwrap();
        p.push(a2b, EdgeTag::S(crate::words::Letter::pos(1)));
        let lift = lift_path(&p, &rel).unwrap();
        assert_eq!(lift, vec![0, b.locate(&w("a")).unwrap(), a2, a2b]);
    }
}
