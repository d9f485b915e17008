//! Nested separated nets in a bouquet of flat tori and the two-sided
//! comparison between the sampled metric and the net graph metric.

use relhyp::netapprox::{greedy_snet, nested_snets, net_metric_bounds_check, torus_bouquet_space, verify_snet, SeedOrder};

fn main() -> relhyp::Result<()> {
    // a circle and a 2-torus glued at a point, sampled on a 32-grid
    let space = torus_bouquet_space(&[1, 2], 32)?;
    println!("{} sample points", space.len());

    let all: Vec<usize> = (0..space.len()).collect();
    let net = greedy_snet(&space, &all, 0.25, &SeedOrder::Natural)?;
    verify_snet(&space, &all, &net, 0.25)?;
    println!("a 1/4-net has {} points", net.len());

    let stages = 5;
    let radii: Vec<f64> = (1..=stages).map(|n| n as f64).collect();
    let deltas: Vec<f64> = (1..=stages).map(|n| 0.5f64.powi(n as i32)).collect();
    let chain = nested_snets(&space, &radii, &deltas, &SeedOrder::Natural)?;
    let report = net_metric_bounds_check(&space, &chain, 0.5)?;
    for s in &report.stages {
        println!(
            "stage {}: {} points, {} lower and {} upper violations",
            s.n,
            chain.net(s.n).len(),
            s.lower_violations,
            s.upper_violations
        );
    }
    println!("bounds hold: {}", report.holds());
    Ok(())
}
