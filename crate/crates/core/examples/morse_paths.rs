//! Saturations and Morse-type diagnostics for sampled quasi-geodesics.

use std::sync::Arc;

use relhyp::cayley::{build_relative_ball, enumerate_ball, FreeAbelian, FreeProduct, GroupOracle};
use relhyp::certificates::{morse_sample_report, morse_samples, saturation, SatParams};

fn main() -> relhyp::Result<()> {
    let z2 = || Arc::new(FreeAbelian { rank: 2 }) as Arc<dyn GroupOracle>;
    let g: Arc<dyn GroupOracle> = Arc::new(FreeProduct::new(vec![z2(), z2()]));
    let parabolics = [vec![0, 1], vec![2, 3]];
    let sp = SatParams::integers(2, 0, 1, 1)?;

    // sample once in a small ball, replay the same words in larger ones
    let small = build_relative_ball(Arc::new(enumerate_ball(g.clone(), 2)?), &parabolics)?;
    let samples = morse_samples(&small, &sp, 40, 7);
    println!("{} (2, 0)-quasi-geodesics sampled", samples.len());

    for r in 2..=4 {
        let rel = build_relative_ball(Arc::new(enumerate_ball(g.clone(), r)?), &parabolics)?;
        let rep = morse_sample_report(&rel, &samples, &sp)?;
        println!("r = {r}: {:?}", rep.per_radius[0].measured);
    }

    let rel = build_relative_ball(Arc::new(enumerate_ball(g, 3)?), &parabolics)?;
    let path: Vec<u32> = samples[0].path.iter().map(|w| rel.base.locate(w).unwrap()).collect();
    let sat = saturation(&rel, &path, sp.mu);
    println!("saturation of the first sample: {} vertices", sat.len());
    Ok(())
}
