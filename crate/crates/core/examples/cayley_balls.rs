//! Balls in Cayley graphs and their coned-off (relative) versions.

use std::sync::Arc;

use relhyp::cayley::{build_relative_ball, enumerate_ball, DehnOracle, FreeGroup, GroupOracle};
use relhyp::words::{w, WordSet};

fn main() -> relhyp::Result<()> {
    // genus-two surface group, solved by Dehn's algorithm
    let surface = DehnOracle::new(&WordSet::from_words([w("aba'b'cdc'd'")]), 4)?;
    let ball = enumerate_ball(Arc::new(surface), 3)?;
    let spheres: Vec<usize> = (0..=3).map(|k| ball.sphere(k).len()).collect();
    println!("surface group: |B(3)| = {}, spheres {spheres:?}", ball.len());

    let x = ball.locate(&w("abc")).expect("in the ball");
    println!("abc has depth {} and spelling {}", ball.depth(x), ball.word(x));

    // F_2 relative to <a>: every coset of <a> becomes a diameter-one set
    let f2: Arc<dyn GroupOracle> = Arc::new(FreeGroup { rank: 2 });
    let rel = build_relative_ball(Arc::new(enumerate_ball(f2, 4)?), &[vec![0]])?;
    let (u, v) = (rel.base.locate(&w("b")).unwrap(), rel.base.locate(&w("baaa")).unwrap());
    println!(
        "d_S(b, baaa) = {}, relative distance = {}, {} cosets of <a> meet the ball",
        rel.dist_s(u, v),
        rel.rel_dist(u, v),
        rel.coset_count(0)
    );
    Ok(())
}
