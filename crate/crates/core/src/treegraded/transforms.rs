use std::collections::BTreeSet;

use super::blocks::components_without;
use super::checks::{check_t1, check_t2};
use super::space::PieceSpace;
use crate::error::{Error, Result};

/// Which pieces to merge.
#[derive(Clone, Debug)]
pub enum Selection {
    Pieces(Vec<usize>),
    /// The pieces containing consecutive vertex pairs of a path.
    Path(Vec<usize>),
}

fn recheck(x: PieceSpace, cycle_cap: usize) -> Result<PieceSpace> {
    let t1 = check_t1(&x);
    if !t1.ok {
        return Err(Error::Verification(format!("(T1) fails after transform: {:?}", t1.witness)));
    }
    let t2 = check_t2(&x, cycle_cap);
    if !t2.ok {
        return Err(Error::Verification(format!("cycle {:?} leaves every piece", t2.witness)));
    }
    Ok(x)
}

/// Replaces the selected pieces by their union, which must be connected.
pub fn glue_pieces(x: &PieceSpace, selection: &Selection, cycle_cap: usize) -> Result<PieceSpace> {
    let chosen: BTreeSet<usize> = match selection {
        Selection::Pieces(ps) => ps.iter().copied().collect(),
        Selection::Path(path) => {
            let mut s = BTreeSet::new();
            for pair in path.windows(2) {
                let i = x
                    .pieces
                    .iter()
                    .position(|p| p.binary_search(&pair[0]).is_ok() && p.binary_search(&pair[1]).is_ok())
                    .ok_or_else(|| Error::InvalidInput(format!("no piece contains {pair:?}")))?;
                s.insert(i);
            }
            s
        }
    };
    if let Some(&bad) = chosen.iter().find(|&&i| i >= x.pieces.len()) {
        return Err(Error::InvalidInput(format!("no piece {bad}")));
    }
    let union: BTreeSet<usize> = chosen.iter().flat_map(|&i| x.pieces[i].iter().copied()).collect();
    let union: Vec<usize> = union.into_iter().collect();
    if !x.induces_connected(&union) {
        return Err(Error::InvalidInput("selected pieces are not connected".into()));
    }
    let mut pieces: Vec<Vec<usize>> = x
        .pieces
        .iter()
        .enumerate()
        .filter(|(i, _)| !chosen.contains(i))
        .map(|(_, p)| p.clone())
        .collect();
    if !union.is_empty() {
        pieces.push(union);
    }
    pieces.sort();
    recheck(x.with_pieces(pieces)?, cycle_cap)
}

/// Splits a piece at one of its cut vertices into the sub-pieces through it.
pub fn split_bouquet(x: &PieceSpace, piece: usize, cut: usize, cycle_cap: usize) -> Result<PieceSpace> {
    let p = x
        .pieces
        .get(piece)
        .ok_or_else(|| Error::InvalidInput(format!("no piece {piece}")))?;
    if p.binary_search(&cut).is_err() {
        return Err(Error::InvalidInput(format!("vertex {cut} is not in piece {piece}")));
    }
    let comps = components_without(x, &x.mask(p), cut);
    if comps.len() < 2 {
        return Err(Error::InvalidInput(format!("vertex {cut} does not cut piece {piece}")));
    }
    let mut pieces: Vec<Vec<usize>> = x
        .pieces
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != piece)
        .map(|(_, q)| q.clone())
        .collect();
    for mut c in comps {
        c.push(cut);
        c.sort_unstable();
        pieces.push(c);
    }
    pieces.sort();
    recheck(x.with_pieces(pieces)?, cycle_cap)
}
