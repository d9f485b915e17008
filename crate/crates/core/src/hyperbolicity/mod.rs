//! Thin triangles, Bowditch lines-and-centers certificates and the
//! relative-graph distance bounds used alongside them.

mod appendix;
mod lines;
mod metric;
mod thin;

pub use thin::{rel_thin_triangle_delta, thin_triangle_delta, ThinReport, TriangleMode, TRIANGLE_CAP};
pub use lines::{
    bowditch_k, build_lines_centers, center_sensitivity, BowditchReport, CenterRule, CenterSensitivity, LineSystem, LineView,
};
pub use appendix::{
    cyclic_components, isolated_component_alpha, isolated_ratio, log_bound, log_distortion_check, sample_rel_cycles,
    IsolatedReport, LogDistortion,
};
