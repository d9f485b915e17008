//! Thin triangles in the word and relative metrics, and Bowditch's
//! lines-and-centers constants.

use std::sync::Arc;

use relhyp::cayley::{build_relative_ball, enumerate_ball, FreeAbelian, FreeGroup, FreeProduct, GroupOracle};
use relhyp::hyperbolicity::{
    bowditch_k, build_lines_centers, center_sensitivity, rel_thin_triangle_delta, thin_triangle_delta, CenterRule,
    TriangleMode,
};

fn main() -> relhyp::Result<()> {
    let tree = enumerate_ball(Arc::new(FreeGroup { rank: 2 }), 3)?;
    let z2 = enumerate_ball(Arc::new(FreeAbelian { rank: 2 }), 3)?;
    println!("delta(F_2)  = {}", thin_triangle_delta(&tree, TriangleMode::Exhaustive).delta);
    println!("delta(Z^2)  = {}", thin_triangle_delta(&z2, TriangleMode::Exhaustive).delta);

    let zz = || Arc::new(FreeAbelian { rank: 2 }) as Arc<dyn GroupOracle>;
    let g: Arc<dyn GroupOracle> = Arc::new(FreeProduct::new(vec![zz(), zz()]));
    let rel = build_relative_ball(Arc::new(enumerate_ball(g, 3)?), &[vec![0, 1], vec![2, 3]])?;
    println!("relative delta(Z^2 * Z^2) = {}", rel_thin_triangle_delta(&rel, TriangleMode::Based).delta);

    // lines and centers on the inner ball of radius 1
    let ls = build_lines_centers(&rel, 1.into(), 1.into(), 1, CenterRule::Central)?;
    let k = bowditch_k(&rel, &ls)?;
    println!("K_I = {}, K_II = {}, K_III = {}, K = {}", k.k_i, k.k_ii, k.k_iii, k.k);

    let sens = center_sensitivity(&rel, 1.into(), 1.into(), 1, 2, 0)?;
    println!("K over {} center choices: {}..={}", sens.choices, sens.k_min, sens.k_max);
    Ok(())
}
