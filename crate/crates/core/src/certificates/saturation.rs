use num_rational::Rational64;

use super::{bounded_bfs, floor_u16};
use crate::cayley::RelBallGraph;

/// Ball cosets `(parabolic, coset)` whose closed `mu`-neighbourhood meets `q`.
pub fn saturation_cosets(rel: &RelBallGraph, q: &[u32], mu: Rational64) -> Vec<(usize, u32)> {
    let mut out = Vec::new();
    for (v, _) in bounded_bfs(&rel.base, q, floor_u16(mu)) {
        for i in 0..rel.parabolics.len() {
            out.push((i, rel.coset(i, v)));
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// The vertices of `q` together with every ball coset whose closed
/// `mu`-neighbourhood meets `q`, ascending.
pub fn saturation(rel: &RelBallGraph, q: &[u32], mu: Rational64) -> Vec<u32> {
    let mut out = q.to_vec();
    for (i, c) in saturation_cosets(rel, q, mu) {
        out.extend_from_slice(rel.coset_members(i, c));
    }
    out.sort_unstable();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley::{build_relative_ball, enumerate_ball, FreeGroup};
    use crate::words::w;
    use std::sync::Arc;

    fn f2_rel_a(r: usize) -> RelBallGraph {
        let b = Arc::new(enumerate_ball(Arc::new(FreeGroup { rank: 2 }), r).unwrap());
        build_relative_ball(b, &[vec![0]]).unwrap()
    }

    #[test]
    fn saturation_of_b_squared() {
        let rel = f2_rel_a(4);
        let b = &rel.base;
        let q: Vec<u32> = ["", "b", "b^2"].iter().map(|s| b.locate(&w(s)).unwrap()).collect();
        let sat = saturation(&rel, &q, 0.into());
        // the three a-lines through 1, b and b^2, cut to the ball
        let mut expected: Vec<u32> = (0..b.len() as u32)
            .filter(|&v| {
                let ls = b.word(v).letters();
                let k = ls.iter().take_while(|l| l.generator() == 1 && !l.is_inverse()).count();
                k <= 2 && ls[k..].iter().all(|l| l.generator() == 0)
            })
            .collect();
        expected.sort_unstable();
        assert_eq!(sat, expected);
        assert_eq!(sat.len(), 9 + 7 + 5);
    }

    #[test]
    fn large_mu_gives_whole_ball() {
        let rel = f2_rel_a(3);
        let sat = saturation(&rel, &[0], Rational64::from_integer(6));
        assert_eq!(sat.len(), rel.len());
    }

    #[test]
    fn monotone_in_mu() {
        let rel = f2_rel_a(4);
        let q = [0, rel.base.locate(&w("b")).unwrap()];
        let mut prev = Vec::new();
        for mu in 0..4 {
            let s = saturation(&rel, &q, mu.into());
            assert!(prev.iter().all(|v| s.binary_search(v).is_ok()));
            prev = s;
        }
    }
}
