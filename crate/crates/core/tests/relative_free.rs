mod common;

use std::sync::Arc;

use num_rational::Rational64;
use relhyp::cayley::{build_relative_ball, enumerate_ball, FreeGroup, RelBallGraph};
use relhyp::certificates::{alpha1_report, bcp_report};
use relhyp::hyperbolicity::{rel_thin_triangle_delta, TriangleMode};

use common::FreeRelBall;

fn library(gens: usize, r: usize) -> RelBallGraph {
    let ball = enumerate_ball(Arc::new(FreeGroup { rank: gens }), r).unwrap();
    build_relative_ball(Arc::new(ball), &[vec![0]]).unwrap()
}

#[test]
fn distances_match_reduced_word_model() {
    for (gens, r) in [(2, 3), (2, 4), (3, 2)] {
        let rel = library(gens, r);
        let brute = FreeRelBall::new(gens, r);
        assert_eq!(rel.len(), brute.len());
        let ids: Vec<usize> = (0..rel.len() as u32).map(|v| brute.index[rel.base.word(v)]).collect();
        for u in 0..rel.len() as u32 {
            for v in 0..rel.len() as u32 {
                let (bu, bv) = (ids[u as usize], ids[v as usize]);
                assert_eq!(rel.dist_s(u, v), brute.ds[bu][bv], "d_S {u} {v}");
                assert_eq!(rel.rel_dist(u, v), brute.dr[bu][bv], "relative {u} {v}");
                assert_eq!(rel.same_coset(0, u, v), brute.coset[bu] == brute.coset[bv]);
            }
        }
    }
}

#[test]
fn certificates_match_reduced_word_model() {
    for r in [3, 4] {
        let rel = library(2, r);
        let brute = FreeRelBall::new(2, r);
        for delta in [1, 2] {
            let rep = alpha1_report(&rel, Rational64::from_integer(delta)).unwrap();
            let got = rep.per_radius[0].get("diameter").unwrap();
            assert_eq!(got, brute.alpha1_diameter(delta as u16) as f64, "r={r} delta={delta}");
        }
        let thin = rel_thin_triangle_delta(&rel, TriangleMode::Based);
        assert_eq!(thin.delta, brute.based_rel_thinness(), "r={r}");
    }
    let rel = library(2, 3);
    let (a1, a2) = FreeRelBall::new(2, 3).bcp(1, 5);
    let row = bcp_report(&rel, 1.into(), 5).unwrap().per_radius.remove(0);
    assert_eq!((row.get("a1").unwrap(), row.get("a2").unwrap()), (a1 as f64, a2 as f64));
}

#[test]
fn frozen_free_group_constants() {
    // brute-force values from the reduced-word model, recorded once
    let brute = FreeRelBall::new(2, 4);
    assert_eq!(brute.len(), 161);
    assert_eq!(brute.alpha1_diameter(1), 1);
    assert_eq!(brute.alpha1_diameter(2), 3);
    assert_eq!(brute.based_rel_thinness(), 0);
}
