use super::ball::{BallGraph, INF};
use super::paths::{EdgeTag, RelPath};
use super::relative::RelBallGraph;
use crate::error::{Error, Result};

/// Default number of geodesics enumerated per vertex pair.
pub const DEFAULT_GEODESIC_CAP: usize = 10_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeodesicSet {
    /// Vertex sequences from `u` to `v`, in letter order.
    pub paths: Vec<Vec<u32>>,
    pub truncated: bool,
}

fn check(ball: &BallGraph, u: u32, v: u32) -> Result<()> {
    let n = ball.len() as u32;
    if u >= n || v >= n {
        return Err(Error::OutsideBall(format!("vertex {} not in ball of {n}", u.max(v))));
    }
    Ok(())
}

/// All in-ball geodesics from `u` to `v`, up to `cap` of them.
pub fn geodesics_between(ball: &BallGraph, u: u32, v: u32, cap: usize) -> Result<GeodesicSet> {
    check(ball, u, v)?;
    let to_v = ball.dist_row(v);
    let mut out = GeodesicSet {
        paths: Vec::new(),
        truncated: false,
    };
    if to_v[u as usize] == INF {
        return Ok(out);
    }
    let mut path = vec![u];
    fn dfs(ball: &BallGraph, to_v: &[u16], path: &mut Vec<u32>, out: &mut GeodesicSet, cap: usize) {
        if out.paths.len() >= cap {
            out.truncated = true;
            return;
        }
        let x = *path.last().unwrap();
        let dx = to_v[x as usize];
        if dx == 0 {
            out.paths.push(path.clone());
            return;
        }
        for (_, y) in ball.neighbors(x) {
            if to_v[y as usize] + 1 == dx {
                path.push(y);
                dfs(ball, to_v, path, out, cap);
                path.pop();
                if out.truncated {
                    return;
                }
            }
        }
    }
    dfs(ball, to_v, &mut path, &mut out, cap);
    Ok(out)
}

/// The first geodesic in letter order.
pub fn first_geodesic(ball: &BallGraph, u: u32, v: u32) -> Vec<u32> {
    let to_v = ball.dist_row(v);
    let mut path = vec![u];
    let mut x = u;
    while x != v {
        let dx = to_v[x as usize];
        x = ball
            .neighbors(x)
            .map(|(_, y)| y)
            .find(|&y| to_v[y as usize] + 1 == dx)
            .expect("ball is connected");
        path.push(x);
    }
    path
}

/// Number of in-ball geodesics from `u` to `v` (saturating).
pub fn count_geodesics(ball: &BallGraph, u: u32, v: u32) -> u64 {
    let to_v = ball.dist_row(v);
    let from_u = ball.dist_row(u);
    let d = to_v[u as usize];
    if d == INF {
        return 0;
    }
    let mut layer: Vec<Vec<u32>> = vec![Vec::new(); d as usize + 1];
    for x in 0..ball.len() {
        if from_u[x] != INF && to_v[x] != INF && from_u[x] + to_v[x] == d {
            layer[from_u[x] as usize].push(x as u32);
        }
    }
    let mut count = std::collections::HashMap::from([(u, 1u64)]);
    for k in 1..=d as usize {
        for &x in &layer[k] {
            let c: u64 = ball
                .neighbors(x)
                .filter(|(_, y)| from_u[*y as usize] as usize + 1 == k)
                .map(|(_, y)| count.get(&y).copied().unwrap_or(0))
                .fold(0u64, |a, b| a.saturating_add(b));
            count.insert(x, c);
        }
    }
    count.get(&v).copied().unwrap_or(0)
}

/// Tag of the edge `u → v` in the relative graph, preferring S-edges.
pub fn edge_tag(rel: &RelBallGraph, u: u32, v: u32) -> Option<EdgeTag> {
    if let Some((l, _)) = rel.base.neighbors(u).find(|&(_, t)| t == v) {
        return Some(EdgeTag::S(l));
    }
    if u == v {
        return None;
    }
    rel.shared_coset(u, v)
        .map(|(parabolic, coset)| EdgeTag::H { parabolic, coset })
}

/// The first relative geodesic, choosing the least next vertex id.
pub fn first_rel_geodesic(rel: &RelBallGraph, u: u32, v: u32) -> RelPath {
    let to_v = rel.rel_row(v);
    let mut p = RelPath::trivial(u);
    let mut x = u;
    while x != v {
        let dx = to_v[x as usize];
        let y = rel
            .rel_neighbors(x)
            .into_iter()
            .find(|&y| to_v[y as usize] + 1 == dx)
            .expect("relative ball is connected");
        p.push(y, edge_tag(rel, x, y).unwrap());
        x = y;
    }
    p
}

/// All relative geodesics from `u` to `v`, up to `cap`.
pub fn rel_geodesics_between(rel: &RelBallGraph, u: u32, v: u32, cap: usize) -> (Vec<RelPath>, bool) {
    let to_v = rel.rel_row(v);
    let mut out = Vec::new();
    let mut truncated = false;
    let mut stack = vec![(RelPath::trivial(u), 0usize)];
    let mut frontier: Vec<Vec<u32>> = vec![rel.rel_neighbors(u)];
    // explicit DFS in ascending neighbour order
    while let Some((path, idx)) = stack.pop() {
        let x = path.end();
        let dx = to_v[x as usize];
        if dx == 0 {
            if out.len() >= cap {
                truncated = true;
                break;
            }
            out.push(path);
            frontier.pop();
            continue;
        }
        let nbrs = frontier.last().unwrap();
        let mut j = idx;
        while j < nbrs.len() && to_v[nbrs[j] as usize] + 1 != dx {
            j += 1;
        }
        if j == nbrs.len() {
            frontier.pop();
            continue;
        }
        let y = nbrs[j];
        stack.push((path.clone(), j + 1));
        let mut next = path;
        next.push(y, edge_tag(rel, x, y).unwrap());
        frontier.push(rel.rel_neighbors(y));
        stack.push((next, 0));
    }
    (out, truncated)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley::{enumerate_ball, FreeAbelian, FreeGroup};
    use crate::words::w;
    use std::sync::Arc;

    #[test]
    fn tree_geodesic_is_unique() {
        let b = enumerate_ball(Arc::new(FreeGroup { rank: 2 }), 3).unwrap();
        let (a, ab) = (b.locate(&w("a")).unwrap(), b.locate(&w("ab")).unwrap());
        let g = geodesics_between(&b, a, ab, 10).unwrap();
        assert_eq!(g.paths, vec![vec![a, ab]]);
    }

    #[test]
    fn lattice_paths() {
        let b = enumerate_ball(Arc::new(FreeAbelian { rank: 2 }), 4).unwrap();
        let ab = b.locate(&w("ab")).unwrap();
        assert_eq!(geodesics_between(&b, 0, ab, 10).unwrap().paths.len(), 2);
        assert_eq!(count_geodesics(&b, 0, ab), 2);
        let x = b.locate(&w("a^2b^2")).unwrap();
        assert_eq!(count_geodesics(&b, 0, x), 6);
        let g = geodesics_between(&b, 0, x, 4).unwrap();
        assert!(g.truncated && g.paths.len() == 4);
        assert_eq!(geodesics_between(&b, x, x, 4).unwrap().paths, vec![vec![x]]);
    }

    #[test]
    fn relative_geodesics_enumerate() {
        let b = Arc::new(enumerate_ball(Arc::new(FreeAbelian { rank: 2 }), 3).unwrap());
        let rel = crate::cayley::build_relative_ball(b.clone(), &[vec![0]]).unwrap();
        let x = b.locate(&w("a^2b")).unwrap();
        let (paths, truncated) = rel_geodesics_between(&rel, 0, x, 100);
        assert!(!truncated);
        assert!(paths.iter().all(|p| p.len() == 2 && p.end() == x));
        // via a^2 (ℋ-edge then b) or via b (b then ℋ-edge)
        assert_eq!(paths.len(), 2);
        assert_eq!(first_rel_geodesic(&rel, 0, x).len(), 2);
    }
}
