//! Separated nets in sampled metric spaces, their approximating graphs, and
//! the construction of a two-generator presentation from a sequence of such
//! graphs labelled by small cancellation words.

mod bounds;
mod eo;
mod graph;
mod labeling;
mod relations;
mod sequence;
mod snet;
mod space;

pub use bounds::{net_metric_bounds_check, upper_bound, BoundWitness, BoundsReport, StageBounds};
pub use eo::{
    build_eo_presentation, space_for_stage, DSeq, EOBuild, EOConfig, EODiagnostics, SpaceSpec, StageDiagnostics,
    WordsSpec,
};
pub use graph::{gamma_graph, Edge, StageGraph};
pub use labeling::{assign_edge_words, assign_edge_words_avoiding, block_length, EdgeLabeling};
pub use relations::{
    build_relations, cycle_basis, path_word, relator_audit, simple_cycles, RelatorAudit, SpanningTree, Step,
};
pub use sequence::{certify_sequence, fast_sequence, orbit_supply, FastSequence, Instance};
pub use snet::{greedy_snet, nested_snets, verify_snet, SeedOrder, SnetChain};
pub use space::{torus_bouquet_space, torus_dist, MetricSample, TorusPoint, EPS};
