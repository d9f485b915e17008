//! Neighbourhood-intersection and penetration constants on two groups: a free
//! product of two copies of Z^2 (hyperbolic relative to the factors) and Z^2
//! relative to one cyclic factor (not).

use std::sync::Arc;

use num_rational::Rational64;
use relhyp::cayley::{build_relative_ball, enumerate_ball, FreeAbelian, FreeProduct, GroupOracle};
use relhyp::certificates::{alpha1_report, alpha2_report, AlphaReport};

fn z2() -> Arc<dyn GroupOracle> {
    Arc::new(FreeAbelian { rank: 2 })
}

fn run(name: &str, g: Arc<dyn GroupOracle>, parabolics: &[Vec<usize>]) -> relhyp::Result<()> {
    let mut a1 = Vec::new();
    let mut a2 = Vec::new();
    for r in 2..=4 {
        let rel = build_relative_ball(Arc::new(enumerate_ball(g.clone(), r)?), parabolics)?;
        a1.push(alpha1_report(&rel, 1.into())?);
        a2.push(alpha2_report(&rel, Rational64::new(1, 3))?);
    }
    let a1 = AlphaReport::combine(a1)?;
    let a2 = AlphaReport::combine(a2)?;
    println!("{name}");
    println!("  alpha1 diameter by radius {:?} -> {:?}", a1.series(), a1.verdict);
    println!("  alpha2 M by radius        {:?} -> {:?}", a2.series(), a2.verdict);
    Ok(())
}

fn main() -> relhyp::Result<()> {
    run("Z^2 * Z^2 rel factors", Arc::new(FreeProduct::new(vec![z2(), z2()])), &[vec![0, 1], vec![2, 3]])?;
    run("Z^2 rel <a>", z2(), &[vec![0]])?;

    // a report serialises to JSON or CSV
    let rel = build_relative_ball(Arc::new(enumerate_ball(z2(), 3)?), &[vec![0]])?;
    print!("{}", alpha1_report(&rel, 1.into())?.with_bound(4.0).to_csv());
    Ok(())
}
