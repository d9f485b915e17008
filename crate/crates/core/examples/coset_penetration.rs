//! Bounded coset penetration on relative quasi-geodesics without backtracking.

use std::sync::Arc;

use relhyp::cayley::{analyze_path, build_relative_ball, enumerate_ball, FreeAbelian, FreeGroup, RelPath};
use relhyp::certificates::{bcp_pair, bcp_report};
use relhyp::words::w;

fn main() -> relhyp::Result<()> {
    let f2 = build_relative_ball(Arc::new(enumerate_ball(Arc::new(FreeGroup { rank: 2 }), 4)?), &[vec![0]])?;
    let rep = bcp_report(&f2, 1.into(), 5)?;
    let row = &rep.per_radius[0];
    println!("F_2 rel <a>: a1 = {:?}, a2 = {:?}", row.get("a1"), row.get("a2"));

    // one pair by hand: both paths go from 1 to bab, one through the coset b<a>
    let p = RelPath::spell(&f2, 0, &w("bab"))?;
    let q = RelPath::spell(&f2, 0, &w("baab"))?;
    let analysis = analyze_path(&p, &f2);
    println!("p = bab has {} coset components", analysis.components.len());
    match bcp_pair(&f2, &p, &q) {
        Ok(pair) => println!("pair constants {pair:?}"),
        Err(e) => println!("pair rejected: {e}"),
    }

    // Z^2 rel <a>: the constants grow once paths may travel farther
    for r in 3..=5 {
        let z2 = build_relative_ball(Arc::new(enumerate_ball(Arc::new(FreeAbelian { rank: 2 }), r)?), &[vec![0]])?;
        let a2 = bcp_report(&z2, 2.into(), r)?.per_radius[0].get("a2");
        println!("Z^2 rel <a>, r = {r}: a2 = {a2:?}");
    }
    Ok(())
}
