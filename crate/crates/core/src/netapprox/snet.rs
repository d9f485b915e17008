use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::space::{MetricSample, EPS};
use crate::error::{Error, Result};

/// Order in which greedy constructions visit candidates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum SeedOrder {
    /// Ascending point index.
    Natural,
    Shuffled(u64),
    /// A permutation of the point indices.
    Explicit(Vec<usize>),
}

impl SeedOrder {
    fn arrange(&self, domain: &[usize], n: usize) -> Result<Vec<usize>> {
        let mut d = domain.to_vec();
        match self {
            SeedOrder::Natural => d.sort_unstable(),
            SeedOrder::Shuffled(seed) => {
                d.sort_unstable();
                d.shuffle(&mut ChaCha8Rng::seed_from_u64(*seed));
            }
            SeedOrder::Explicit(perm) => {
                let mut seen = vec![false; n];
                for &i in perm {
                    if i >= n || std::mem::replace(&mut seen[i], true) {
                        return Err(Error::InvalidInput("explicit order is not a permutation".into()));
                    }
                }
                if perm.len() != n {
                    return Err(Error::InvalidInput("explicit order is not a permutation".into()));
                }
                let mut rank = vec![0; n];
                for (r, &i) in perm.iter().enumerate() {
                    rank[i] = r;
                }
                d.sort_unstable_by_key(|&i| rank[i]);
            }
        }
        Ok(d)
    }
}

fn separated_from(space: &MetricSample, net: &[usize], x: usize, delta: f64) -> bool {
    net.iter().all(|&y| space.dist(x, y) >= delta - EPS)
}

fn extend(space: &MetricSample, net: &mut Vec<usize>, ordered: &[usize], delta: f64) {
    let mut member = vec![false; space.len()];
    for &x in net.iter() {
        member[x] = true;
    }
    for &x in ordered {
        if !member[x] && separated_from(space, net, x, delta) {
            member[x] = true;
            net.push(x);
        }
    }
}

/// A maximal `δ`-separated subset of `domain`, built greedily in `order`.
pub fn greedy_snet(space: &MetricSample, domain: &[usize], delta: f64, order: &SeedOrder) -> Result<Vec<usize>> {
    if delta <= 0.0 {
        return Err(Error::Precondition(format!("delta {delta} is not positive")));
    }
    if domain.is_empty() {
        return Err(Error::InvalidInput("empty domain".into()));
    }
    let ordered = order.arrange(domain, space.len())?;
    let mut net = Vec::new();
    extend(space, &mut net, &ordered, delta);
    Ok(net)
}

/// Separation (distinct points at least `δ` apart) and coverage (every
/// domain point closer than `δ` to the net).
pub fn verify_snet(space: &MetricSample, domain: &[usize], net: &[usize], delta: f64) -> Result<()> {
    for (i, &x) in net.iter().enumerate() {
        for &y in &net[i + 1..] {
            if space.dist(x, y) < delta - EPS {
                return Err(Error::Verification(format!(
                    "net points {x} and {y} are {} apart, below {delta}",
                    space.dist(x, y)
                )));
            }
        }
    }
    for &x in domain {
        if net.iter().all(|&y| space.dist(x, y) >= delta - EPS) {
            return Err(Error::Verification(format!("domain point {x} is not covered at {delta}")));
        }
    }
    Ok(())
}

/// Nested nets `N_1 ⊆ N_2 ⊆ …`, `N_n` a `δ_n`-snet of the ball of radius
/// `r_n` about the basepoint, all containing the basepoint.
#[derive(Clone, Debug, Serialize)]
pub struct SnetChain {
    pub nets: Vec<Vec<usize>>,
    pub deltas: Vec<f64>,
    pub radii: Vec<f64>,
}

impl SnetChain {
    pub fn stages(&self) -> usize {
        self.nets.len()
    }

    /// `N_n` for 1-based `n`.
    pub fn net(&self, n: usize) -> &[usize] {
        &self.nets[n - 1]
    }
}

pub fn nested_snets(space: &MetricSample, radii: &[f64], deltas: &[f64], order: &SeedOrder) -> Result<SnetChain> {
    if radii.len() != deltas.len() {
        return Err(Error::InvalidInput("radii and deltas differ in length".into()));
    }
    if deltas.iter().any(|&d| d <= 0.0) || deltas.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::Precondition("deltas must be positive and strictly decreasing".into()));
    }
    if radii.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::Precondition("radii must be nondecreasing".into()));
    }
    let mut net = vec![space.basepoint];
    let mut nets = Vec::with_capacity(deltas.len());
    for (n, (&r, &delta)) in radii.iter().zip(deltas).enumerate() {
        let domain = space.ball(r);
        let ordered = order.arrange(&domain, space.len())?;
        extend(space, &mut net, &ordered, delta);
        verify_snet(space, &domain, &net, delta).map_err(|e| Error::Stage {
            stage: n + 1,
            source: Box::new(e),
        })?;
        nets.push(net.clone());
    }
    Ok(SnetChain {
        nets,
        deltas: deltas.to_vec(),
        radii: radii.to_vec(),
    })
}
