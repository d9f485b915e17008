use super::space::PieceSpace;
use crate::error::Result;

/// Blocks (biconnected components) of a simple graph, each as a sorted vertex
/// list; bridges give two-vertex blocks and isolated vertices singletons.
pub fn blocks(n: usize, edges: &[(usize, usize, f64)]) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); n];
    for (i, &(u, v, _)) in edges.iter().enumerate() {
        adj[u].push((v, i));
        adj[v].push((u, i));
    }
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut timer = 0;
    let mut edge_stack: Vec<(usize, usize)> = Vec::new();
    let mut out = Vec::new();
    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        if adj[root].is_empty() {
            out.push(vec![root]);
            disc[root] = timer;
            timer += 1;
            continue;
        }
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        // (vertex, edge used to enter, next adjacency index)
        let mut stack = vec![(root, usize::MAX, 0usize)];
        while let Some(&mut (v, parent_edge, ref mut idx)) = stack.last_mut() {
            if *idx < adj[v].len() {
                let (y, e) = adj[v][*idx];
                *idx += 1;
                if e == parent_edge {
                    continue;
                }
                if disc[y] == usize::MAX {
                    edge_stack.push((v, y));
                    disc[y] = timer;
                    low[y] = timer;
                    timer += 1;
                    stack.push((y, e, 0));
                } else if disc[y] < disc[v] {
                    edge_stack.push((v, y));
                    low[v] = low[v].min(disc[y]);
                }
            } else {
                stack.pop();
                if let Some(&(p, _, _)) = stack.last() {
                    low[p] = low[p].min(low[v]);
                    if low[v] >= disc[p] {
                        let mut block = Vec::new();
                        while let Some((a, b)) = edge_stack.pop() {
                            block.push(a);
                            block.push(b);
                            if (a, b) == (p, v) {
                                break;
                            }
                        }
                        block.sort_unstable();
                        block.dedup();
                        out.push(block);
                    }
                }
            }
        }
    }
    out.sort();
    out
}

/// The coarsest piece decomposition of a connected graph: its blocks.
pub fn canonical_pieces(n: usize, edges: Vec<(usize, usize, f64)>) -> Result<PieceSpace> {
    let b = blocks(n, &edges);
    PieceSpace::new(n, edges, b)
}

/// Cut vertices of the subgraph induced by `vs`.
pub fn cut_vertices(x: &PieceSpace, vs: &[usize]) -> Vec<usize> {
    let mask = x.mask(vs);
    let mut out = Vec::new();
    for &c in vs {
        let rest: Vec<usize> = vs.iter().copied().filter(|&v| v != c).collect();
        if rest.is_empty() {
            continue;
        }
        let comps = components_without(x, &mask, c);
        if comps.len() > 1 {
            out.push(c);
        }
    }
    out
}

/// Components of the induced subgraph on `mask` after deleting `cut`.
pub(crate) fn components_without(x: &PieceSpace, mask: &[bool], cut: usize) -> Vec<Vec<usize>> {
    let n = x.vertex_count();
    let mut seen = vec![false; n];
    let mut comps = Vec::new();
    for s in 0..n {
        if !mask[s] || s == cut || seen[s] {
            continue;
        }
        let mut comp = vec![s];
        seen[s] = true;
        let mut i = 0;
        while i < comp.len() {
            let v = comp[i];
            for y in x.neighbors(v) {
                if mask[y] && y != cut && !seen[y] {
                    seen[y] = true;
                    comp.push(y);
                }
            }
            i += 1;
        }
        comp.sort_unstable();
        comps.push(comp);
    }
    comps
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(vs: &[usize]) -> Vec<(usize, usize, f64)> {
        (0..vs.len()).map(|i| (vs[i], vs[(i + 1) % vs.len()], 1.0)).collect()
    }

    #[test]
    fn figure_eight() {
        let mut e = cycle(&[0, 1, 2]);
        e.extend(cycle(&[0, 3, 4, 5]));
        let x = canonical_pieces(6, e).unwrap();
        assert_eq!(x.pieces, vec![vec![0, 1, 2], vec![0, 3, 4, 5]]);
    }

    #[test]
    fn tree_pieces_are_edges() {
        let x = canonical_pieces(4, vec![(0, 1, 1.0), (1, 2, 1.0), (1, 3, 2.0)]).unwrap();
        assert_eq!(x.pieces, vec![vec![0, 1], vec![1, 2], vec![1, 3]]);
    }

    #[test]
    fn cycle_is_one_piece() {
        let x = canonical_pieces(5, cycle(&[0, 1, 2, 3, 4])).unwrap();
        assert_eq!(x.pieces, vec![vec![0, 1, 2, 3, 4]]);
        assert!(canonical_pieces(1, vec![]).unwrap().pieces == vec![vec![0]]);
    }

    #[test]
    fn cut_vertex_detection() {
        let mut e = cycle(&[0, 1, 2]);
        e.extend(cycle(&[0, 3, 4]));
        let x = PieceSpace::new(5, e, vec![]).unwrap();
        assert_eq!(cut_vertices(&x, &[0, 1, 2, 3, 4]), vec![0]);
        assert!(cut_vertices(&x, &[0, 1, 2]).is_empty());
    }
}
