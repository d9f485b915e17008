use serde::Serialize;

use super::space::{PieceSpace, EPS};
use crate::error::{Error, Result};

/// Pieces pairwise meeting in at most one vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct T1Result {
    pub ok: bool,
    /// `(i, j, common vertices)`
    pub witness: Option<(usize, usize, Vec<usize>)>,
}

pub fn check_t1(x: &PieceSpace) -> T1Result {
    for i in 0..x.pieces.len() {
        for j in i + 1..x.pieces.len() {
            let common: Vec<usize> = x.pieces[i]
                .iter()
                .copied()
                .filter(|v| x.pieces[j].binary_search(v).is_ok())
                .collect();
            if common.len() > 1 {
                return T1Result {
                    ok: false,
                    witness: Some((i, j, common)),
                };
            }
        }
    }
    T1Result { ok: true, witness: None }
}

/// Every simple cycle up to the cap lies in one piece. The certificate is
/// relative to the cap.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct T2Result {
    pub ok: bool,
    pub cap: usize,
    pub cycles_checked: usize,
    pub witness: Option<Vec<usize>>,
}

/// Calls `f` on each simple cycle with at most `cap` vertices, once per
/// cycle, starting at its least vertex. Stops early when `f` returns false.
pub fn for_each_simple_cycle(x: &PieceSpace, cap: usize, mut f: impl FnMut(&[usize]) -> bool) {
    let n = x.vertex_count();
    let nbrs: Vec<Vec<usize>> = (0..n)
        .map(|v| {
            let mut a: Vec<usize> = x.neighbors(v).collect();
            a.dedup();
            a
        })
        .collect();
    let mut on_path = vec![false; n];
    for s in 0..n {
        let mut path = vec![s];
        on_path[s] = true;
        // stack of (vertex, next neighbour index)
        let mut stack = vec![(s, 0usize)];
        while let Some(&mut (v, ref mut idx)) = stack.last_mut() {
            if *idx < nbrs[v].len() {
                let y = nbrs[v][*idx];
                *idx += 1;
                if y == s && path.len() >= 3 && path[1] < v {
                    if !f(&path) {
                        return;
                    }
                } else if y > s && !on_path[y] && path.len() < cap {
                    on_path[y] = true;
                    path.push(y);
                    stack.push((y, 0));
                }
            } else {
                stack.pop();
                on_path[path.pop().unwrap()] = false;
            }
        }
    }
}

pub fn check_t2(x: &PieceSpace, cycle_cap: usize) -> T2Result {
    let masks: Vec<Vec<bool>> = x.pieces.iter().map(|p| x.mask(p)).collect();
    let mut checked = 0;
    let mut witness = None;
    for_each_simple_cycle(x, cycle_cap, |c| {
        checked += 1;
        if masks.iter().any(|m| c.iter().all(|&v| m[v])) {
            true
        } else {
            witness = Some(c.to_vec());
            false
        }
    });
    T2Result {
        ok: witness.is_none(),
        cap: cycle_cap,
        cycles_checked: checked,
        witness,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Projection {
    pub vertex: usize,
    pub distance: f64,
    /// Every shortest path from `x` to a vertex of the piece passes through
    /// the projection.
    pub through_all_geodesics: bool,
    /// Piece vertex reached by a shortest path avoiding the projection.
    pub violation: Option<usize>,
}

/// Unique nearest vertex of piece `m`.
pub fn project_to_piece(x: &PieceSpace, v: usize, m: usize) -> Result<Projection> {
    let piece = x
        .pieces
        .get(m)
        .ok_or_else(|| Error::InvalidInput(format!("no piece {m}")))?;
    let d = piece.iter().map(|&p| x.dist(v, p)).fold(f64::INFINITY, f64::min);
    let nearest: Vec<usize> = piece.iter().copied().filter(|&p| x.dist(v, p) <= d + EPS).collect();
    if nearest.len() > 1 {
        return Err(Error::NotUnique(format!(
            "vertex {v} has nearest points {nearest:?} in piece {m}"
        )));
    }
    let y = nearest[0];
    let from_v = x.shortest_path_counts(v);
    let from_y = x.shortest_path_counts(y);
    let violation = piece.iter().copied().find(|&p| {
        let through = (x.dist(v, y) + x.dist(y, p) - x.dist(v, p)).abs() <= EPS;
        !(through && from_v[p] == from_v[y] * from_y[p])
    });
    Ok(Projection {
        vertex: y,
        distance: d,
        through_all_geodesics: violation.is_none(),
        violation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(vs: &[usize]) -> Vec<(usize, usize, f64)> {
        (0..vs.len()).map(|i| (vs[i], vs[(i + 1) % vs.len()], 1.0)).collect()
    }

    fn cactus() -> PieceSpace {
        let mut e = cycle(&[0, 1, 2]);
        e.extend(cycle(&[2, 3, 4]));
        PieceSpace::new(5, e, vec![vec![0, 1, 2], vec![2, 3, 4]]).unwrap()
    }

    #[test]
    fn triangles_sharing_a_vertex() {
        let x = cactus();
        assert!(check_t1(&x).ok);
        let t2 = check_t2(&x, 10);
        assert!(t2.ok);
        assert_eq!(t2.cycles_checked, 2);
    }

    #[test]
    fn squares_sharing_an_edge() {
        let mut e = cycle(&[0, 1, 2, 3]);
        e.extend([(1, 4, 1.0), (4, 5, 1.0), (5, 2, 1.0)]);
        let x = PieceSpace::new(6, e, vec![vec![0, 1, 2, 3], vec![1, 4, 5, 2]]).unwrap();
        assert_eq!(check_t1(&x).witness, Some((0, 1, vec![1, 2])));
        assert!(check_t1(&PieceSpace::new(6, x.edges().to_vec(), vec![vec![0, 1, 2, 3]]).unwrap()).ok);
    }

    #[test]
    fn square_with_edge_pieces_fails_t2() {
        let x = PieceSpace::new(4, cycle(&[0, 1, 2, 3]), vec![vec![0, 1], vec![2, 3]]).unwrap();
        let t2 = check_t2(&x, 4);
        assert!(!t2.ok);
        assert_eq!(t2.witness.unwrap().len(), 4);
    }

    #[test]
    fn tree_has_no_cycles() {
        let x = PieceSpace::new(4, vec![(0, 1, 1.0), (1, 2, 1.0), (1, 3, 1.0)], (0..4).map(|v| vec![v]).collect()).unwrap();
        let t2 = check_t2(&x, 10);
        assert!(t2.ok && t2.cycles_checked == 0);
    }

    #[test]
    fn projections() {
        let x = cactus();
        let p = project_to_piece(&x, 0, 1).unwrap();
        assert_eq!(p.vertex, 2);
        assert!(p.through_all_geodesics);
        assert_eq!(project_to_piece(&x, 3, 1).unwrap().vertex, 3);
        // in a square every vertex off an edge is adjacent to exactly one
        // endpoint, so the projection is unique but some geodesic avoids it
        let sq = PieceSpace::new(4, cycle(&[0, 1, 2, 3]), vec![vec![1, 2]]).unwrap();
        let p = project_to_piece(&sq, 3, 0).unwrap();
        assert_eq!(p.vertex, 2);
        assert!(!p.through_all_geodesics);
        assert_eq!(p.violation, Some(1));
        let pent = PieceSpace::new(5, cycle(&[0, 1, 2, 3, 4]), vec![vec![0, 1]]).unwrap();
        assert!(matches!(project_to_piece(&pent, 3, 0), Err(Error::NotUnique(_))));
    }

    #[test]
    fn cycle_counts() {
        // K4 has 7 simple cycles: 4 triangles and 3 squares
        let mut e = Vec::new();
        for u in 0..4 {
            for v in u + 1..4 {
                e.push((u, v, 1.0));
            }
        }
        let x = PieceSpace::new(4, e, vec![]).unwrap();
        let mut n = 0;
        for_each_simple_cycle(&x, 4, |_| {
            n += 1;
            true
        });
        assert_eq!(n, 7);
        let mut n3 = 0;
        for_each_simple_cycle(&x, 3, |_| {
            n3 += 1;
            true
        });
        assert_eq!(n3, 4);
    }
}
