//! Finite weighted graphs with pieces, as models of tree-graded spaces.

mod blocks;
mod checks;
mod space;
mod transforms;

pub use blocks::{blocks, canonical_pieces, cut_vertices};
pub use checks::{check_t1, check_t2, for_each_simple_cycle, project_to_piece, Projection, T1Result, T2Result};
pub use space::{PieceSpace, EPS};
pub use transforms::{glue_pieces, split_bouquet, Selection};
