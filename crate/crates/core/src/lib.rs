//! Finite-scale tools for tree-graded spaces and relatively hyperbolic groups.
//!
//! The modules build Cayley-graph balls and their relative enrichments, measure
//! tree-graded certificates (neighbourhood intersections, geodesic penetration,
//! fat polygons, bounded coset penetration, Morse diagnostics, Bowditch
//! lines-and-centers), and run a small-cancellation construction over nets in
//! flat tori and bouquets.

pub mod cayley;
pub mod certificates;
pub mod cli;
pub mod error;
pub mod hyperbolicity;
pub mod netapprox;
pub mod words;

pub mod report;
pub mod smallcancel;
pub mod treegraded;

pub use error::{Error, Result};
