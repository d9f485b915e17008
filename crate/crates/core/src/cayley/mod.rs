//! Cayley-graph balls, their relative enrichments and paths in them.

mod ball;
mod export;
mod geodesics;
mod oracle;
mod paths;
mod relative;

pub use ball::{enumerate_ball, enumerate_ball_capped, BallGraph, DistanceTable, DEFAULT_BALL_CAP, INF, NONE};
pub use export::{export_ball, export_relative_ball};
pub use geodesics::{
    count_geodesics, edge_tag, first_geodesic, first_rel_geodesic, geodesics_between, rel_geodesics_between,
    GeodesicSet, DEFAULT_GEODESIC_CAP,
};
pub use oracle::{DehnOracle, FiniteGroup, FreeAbelian, FreeGroup, FreeProduct, GroupOracle};
pub use paths::{analyze_path, lift_path, Component, EdgeTag, PathAnalysis, RelPath};
pub use relative::{build_relative_ball, RelBallGraph};
