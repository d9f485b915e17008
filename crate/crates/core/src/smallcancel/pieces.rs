use num_rational::Rational64;
use serde::Serialize;

use super::overlap::for_each_lce;
use super::{cyclic_slice, symmetrized_classes};
use crate::error::{Error, Result};
use crate::words::{Word, WordSet};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PieceWitness {
    pub piece: Word,
    pub relator: Word,
    pub other: Word,
}

/// Maximal piece lengths between the cyclic relators of a symmetrized set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PieceReport {
    /// Cyclic relators: every input relator and its inverse, as least rotations.
    pub relators: Vec<Word>,
    /// `table[i][j]`: longest common subword of relators `i` and `j`; on the
    /// diagonal, the longest subword occurring at two distinct positions.
    pub table: Vec<Vec<usize>>,
    /// Largest ratio of a piece to the length of a relator containing it.
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub lambda_measured: Rational64,
    pub witness: Option<PieceWitness>,
}

impl PieceReport {
    pub fn max_piece(&self, i: usize) -> usize {
        self.table[i].iter().copied().max().unwrap_or(0)
    }

    /// True iff every piece is strictly shorter than `lambda` times each
    /// relator containing it.
    pub fn satisfies(&self, lambda: Rational64) -> bool {
        self.lambda_measured < lambda
    }
}

/// Measures pieces of the closure of `relators` and decides `C'(λ)`.
///
/// Distinct positions in the same cyclic relator count as distinct
/// occurrences; such a self-overlap is capped at `|r| - 1`.
pub fn check_c_prime(relators: &WordSet, lambda: Rational64) -> Result<(PieceReport, bool)> {
    let classes = symmetrized_classes(relators);
    if classes.is_empty() {
        return Err(Error::InvalidInput("empty relator set".into()));
    }
    let k = classes.len();
    let mut table = vec![vec![0usize; k]; k];
    let mut best: Option<(Rational64, usize, usize, usize, usize)> = None;
    for i in 0..k {
        for j in i..k {
            let (ci, cj) = (classes[i].letters(), classes[j].letters());
            let cap = if i == j { ci.len() - 1 } else { ci.len().min(cj.len()) };
            let mut m = 0;
            let mut at = (0, 0);
            for_each_lce(ci, cj, cap, |x, y, l| {
                if (i != j || x != y) && l > m {
                    m = l;
                    at = (x, y);
                }
            });
            table[i][j] = m;
            table[j][i] = m;
            if m == 0 {
                continue;
            }
            // the shorter relator gives the larger ratio
            let (host, other, hx) = if ci.len() <= cj.len() { (i, j, at.0) } else { (j, i, at.1) };
            let ratio = Rational64::new(m as i64, classes[host].len() as i64);
            if best.map_or(true, |b| ratio > b.0) {
                best = Some((ratio, host, other, hx, m));
            }
        }
    }
    let (lambda_measured, witness) = match best {
        None => (Rational64::from_integer(0), None),
        Some((ratio, host, other, x, m)) => (
            ratio,
            Some(PieceWitness {
                piece: cyclic_slice(&classes[host], x, m),
                relator: classes[host].rotate(x),
                other: classes[other].clone(),
            }),
        ),
    };
    let report = PieceReport {
        relators: classes,
        table,
        lambda_measured,
        witness,
    };
    let ok = report.satisfies(lambda);
    Ok((report, ok))
}
