use serde::Serialize;

use super::graph::StageGraph;
use super::labeling::EdgeLabeling;
use crate::words::{cyclic_normalize, free_reduce, Word, WordSet};

/// How the spanning forest behind the cycle basis is grown.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SpanningTree {
    Bfs,
    Dfs,
}

/// An oriented edge: index and direction.
pub type Step = (usize, bool);

/// Parent step of each vertex in a spanning forest rooted at the least
/// vertex of each component.
fn forest(g: &StageGraph, kind: SpanningTree) -> Vec<Option<Step>> {
    let n = g.vertex_count();
    let mut parent = vec![None; n];
    let mut seen = vec![false; n];
    let claim = |x: u32, y: u32, e: u32, parent: &mut Vec<Option<Step>>| {
        parent[y as usize] = Some((e as usize, g.edges[e as usize].u == x && g.edges[e as usize].v == y));
    };
    for root in 0..n {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        match kind {
            SpanningTree::Bfs => {
                let mut queue = std::collections::VecDeque::from([root as u32]);
                while let Some(x) = queue.pop_front() {
                    for &(y, e) in g.incident(x) {
                        if !seen[y as usize] {
                            seen[y as usize] = true;
                            claim(x, y, e, &mut parent);
                            queue.push_back(y);
                        }
                    }
                }
            }
            SpanningTree::Dfs => {
                let mut stack = vec![(root as u32, 0usize)];
                while let Some(top) = stack.last_mut() {
                    let (x, i) = *top;
                    if i == g.incident(x).len() {
                        stack.pop();
                        continue;
                    }
                    top.1 += 1;
                    let (y, e) = g.incident(x)[i];
                    if !seen[y as usize] {
                        seen[y as usize] = true;
                        claim(x, y, e, &mut parent);
                        stack.push((y, 0));
                    }
                }
            }
        }
    }
    parent
}

fn tail(g: &StageGraph, (e, forward): Step) -> u32 {
    let edge = g.edges[e];
    if forward {
        edge.u
    } else {
        edge.v
    }
}

/// Steps from the root down to `v`.
fn root_path(g: &StageGraph, parent: &[Option<Step>], v: u32) -> Vec<Step> {
    let mut path = Vec::new();
    let mut x = v;
    while let Some(s) = parent[x as usize] {
        path.push(s);
        x = tail(g, s);
    }
    path.reverse();
    path
}

fn reverse(path: &[Step]) -> Vec<Step> {
    path.iter().rev().map(|&(e, f)| (e, !f)).collect()
}

/// The fundamental cycles of a spanning forest, one per non-forest edge.
pub fn cycle_basis(g: &StageGraph, kind: SpanningTree) -> Vec<Vec<Step>> {
    let parent = forest(g, kind);
    let mut in_tree = vec![false; g.edge_count()];
    for s in parent.iter().flatten() {
        in_tree[s.0] = true;
    }
    let mut out = Vec::new();
    for (i, e) in g.edges.iter().enumerate() {
        if in_tree[i] {
            continue;
        }
        let mut c = root_path(g, &parent, e.u);
        c.push((i, true));
        c.extend(reverse(&root_path(g, &parent, e.v)));
        out.push(c);
    }
    out
}

/// Simple cycles with at most `bound` edges, each listed once: it starts at
/// its least vertex and its first edge index is below its last.
pub fn simple_cycles(g: &StageGraph, bound: usize) -> Vec<Vec<Step>> {
    let mut out = Vec::new();
    let n = g.vertex_count();
    let mut on_path = vec![false; n];
    fn walk(
        g: &StageGraph,
        start: u32,
        x: u32,
        bound: usize,
        path: &mut Vec<Step>,
        on_path: &mut [bool],
        out: &mut Vec<Vec<Step>>,
    ) {
        if path.len() >= bound {
            return;
        }
        for &(y, e) in g.incident(x) {
            let step = (e as usize, g.edges[e as usize].u == x && g.edges[e as usize].v == y);
            if path.last().is_some_and(|&(last, _)| last == e as usize) {
                continue;
            }
            if y == start {
                if !path.is_empty() && path[0].0 < e as usize {
                    path.push(step);
                    out.push(path.clone());
                    path.pop();
                }
                continue;
            }
            if y < start || on_path[y as usize] {
                continue;
            }
            on_path[y as usize] = true;
            path.push(step);
            walk(g, start, y, bound, path, on_path, out);
            path.pop();
            on_path[y as usize] = false;
        }
    }
    for s in 0..n as u32 {
        on_path[s as usize] = true;
        walk(g, s, s, bound, &mut Vec::new(), &mut on_path, &mut out);
        on_path[s as usize] = false;
    }
    out
}

/// `w_n(p)` before any reduction.
pub fn path_word(lab: &EdgeLabeling, path: &[Step]) -> Word {
    let mut w = Word::empty();
    for &(e, f) in path {
        w = w.concat(&lab.word(e, f));
    }
    w
}

/// Cyclic normal form, identified with that of the inverse.
fn relator_form(w: &Word) -> Word {
    let a = cyclic_normalize(w);
    let b = cyclic_normalize(&w.inverse());
    a.min(b)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelatorAudit {
    pub relator: Word,
    pub blocks: Vec<usize>,
    /// `Σ ⌊d_n|e_i|⌋`.
    pub block_total: usize,
    pub length: usize,
    /// Letters removed by free and cyclic reduction.
    pub cancelled: usize,
}

fn cycles(g: &StageGraph, cycle_bound: usize, tree: SpanningTree) -> Vec<Vec<Step>> {
    let mut all = cycle_basis(g, tree);
    all.extend(simple_cycles(g, cycle_bound));
    all
}

/// Per cycle of the basis and each bounded simple cycle: block lengths, the
/// reduced relator and the cancellation between them.
pub fn relator_audit(g: &StageGraph, lab: &EdgeLabeling, cycle_bound: usize, tree: SpanningTree) -> Vec<RelatorAudit> {
    cycles(g, cycle_bound, tree)
        .into_iter()
        .map(|c| {
            let blocks: Vec<usize> = c.iter().map(|&(e, _)| lab.words[e].len()).collect();
            let raw = path_word(lab, &c);
            let relator = relator_form(&free_reduce(&raw));
            let block_total = blocks.iter().sum();
            RelatorAudit {
                length: relator.len(),
                cancelled: block_total - relator.len(),
                relator,
                blocks,
                block_total,
            }
        })
        .collect()
}

/// Relators `w_n(p)` for `p` over a cycle basis and the simple cycles of at
/// most `cycle_bound` edges, reduced, deduplicated, empty ones dropped.
pub fn build_relations(g: &StageGraph, lab: &EdgeLabeling, cycle_bound: usize, tree: SpanningTree) -> WordSet {
    WordSet::from_words(
        relator_audit(g, lab, cycle_bound, tree)
            .into_iter()
            .map(|a| a.relator)
            .filter(|w| !w.is_empty()),
    )
}
