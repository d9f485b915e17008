use serde::Serialize;

use super::graph::gamma_graph;
use super::snet::SnetChain;
use super::space::{MetricSample, EPS};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundWitness {
    pub x: usize,
    pub y: usize,
    pub dist: f64,
    pub dist_n: f64,
    pub upper: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StageBounds {
    pub n: usize,
    pub k: usize,
    pub kappa: f64,
    pub vertices: usize,
    pub edges: usize,
    pub pairs: usize,
    pub lower_violations: usize,
    pub upper_violations: usize,
    /// Largest `dist_n / dist`.
    pub max_stretch: f64,
    /// Largest `dist_n / upper bound`; at most 1 when the bound holds.
    pub max_bound_use: f64,
    pub witness: Option<BoundWitness>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundsReport {
    pub zeta: f64,
    pub stages: Vec<StageBounds>,
}

impl BoundsReport {
    pub fn holds(&self) -> bool {
        self.stages.iter().all(|s| s.lower_violations == 0 && s.upper_violations == 0)
    }
}

/// `(1 + 6ζᵏ)(d + 2ζᵏ) + 2ζᵏ`.
pub fn upper_bound(d: f64, zeta: f64, k: usize) -> f64 {
    let z = zeta.powi(k as i32);
    (1.0 + 6.0 * z) * (d + 2.0 * z) + 2.0 * z
}

/// Compares the path metric of `Γ_{ζ^k}(N_n)`, `k = ⌊n/2⌋`, with the
/// ambient metric on every pair of `N_n`, for stages `n ≥ 2`.
pub fn net_metric_bounds_check(space: &MetricSample, chain: &SnetChain, zeta: f64) -> Result<BoundsReport> {
    if chain.stages() < 2 {
        return Err(Error::Precondition("the bounds are stated from stage 2 on".into()));
    }
    if !(zeta > 0.0 && zeta < 1.0) {
        return Err(Error::Precondition(format!("zeta {zeta} outside (0,1)")));
    }
    let mut stages = Vec::new();
    for n in 2..=chain.stages() {
        let k = n / 2;
        let kappa = zeta.powi(k as i32);
        let net = chain.net(n);
        let g = gamma_graph(space, net, kappa);
        let mut st = StageBounds {
            n,
            k,
            kappa,
            vertices: net.len(),
            edges: g.edge_count(),
            pairs: 0,
            lower_violations: 0,
            upper_violations: 0,
            max_stretch: 1.0,
            max_bound_use: 0.0,
            witness: None,
        };
        for i in 0..net.len() {
            let dn = g.distances_from(i as u32);
            for (j, &dn_j) in dn.iter().enumerate().skip(i + 1) {
                let d = space.dist(net[i], net[j]);
                let upper = upper_bound(d, zeta, k);
                st.pairs += 1;
                if d > dn_j + EPS {
                    st.lower_violations += 1;
                }
                if dn_j > upper + EPS {
                    st.upper_violations += 1;
                    if st.witness.is_none() {
                        st.witness = Some(BoundWitness {
                            x: net[i],
                            y: net[j],
                            dist: d,
                            dist_n: dn_j,
                            upper,
                        });
                    }
                }
                if d > 0.0 {
                    st.max_stretch = st.max_stretch.max(dn_j / d);
                }
                st.max_bound_use = st.max_bound_use.max(dn_j / upper);
            }
        }
        stages.push(st);
    }
    Ok(BoundsReport { zeta, stages })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::netapprox::snet::{nested_snets, SeedOrder};
    use crate::netapprox::space::torus_bouquet_space;

    #[test]
    fn torus_chain_meets_both_bounds() {
        let s = torus_bouquet_space(&[2], 16).unwrap();
        let deltas: Vec<f64> = (1..=4).map(|n| 0.5f64.powi(n)).collect();
        let c = nested_snets(&s, &[1.0, 2.0, 3.0, 4.0], &deltas, &SeedOrder::Natural).unwrap();
        let r = net_metric_bounds_check(&s, &c, 0.5).unwrap();
        assert_eq!(r.stages.len(), 3);
        assert!(r.holds(), "{r:?}");
        assert!((upper_bound(1.0, 0.5, 2) - 4.25).abs() < EPS);
    }

    #[test]
    fn one_stage_is_rejected() {
        let s = torus_bouquet_space(&[1], 4).unwrap();
        let c = nested_snets(&s, &[1.0], &[0.5], &SeedOrder::Natural).unwrap();
        assert!(net_metric_bounds_check(&s, &c, 0.5).is_err());
    }

    #[test]
    fn a_gap_in_the_net_breaks_the_upper_bound() {
        // three points on a line with a hole larger than κ in the middle
        let m = vec![vec![0.0, 0.2, 1.0], vec![0.2, 0.0, 0.8], vec![1.0, 0.8, 0.0]];
        let s = MetricSample::from_matrix(m, 0).unwrap();
        let c = SnetChain {
            nets: vec![vec![0], vec![0, 1, 2]],
            deltas: vec![0.5, 0.1],
            radii: vec![1.0, 1.0],
        };
        let r = net_metric_bounds_check(&s, &c, 0.5).unwrap();
        assert_eq!(r.stages[0].lower_violations, 0);
        assert_eq!(r.stages[0].upper_violations, 2);
        assert!(r.stages[0].witness.is_some());
    }
}
