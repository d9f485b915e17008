use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};

/// Slack for floating-point comparisons of distances.
pub const EPS: f64 = 1e-9;

/// A point of a bouquet of flat tori: a component and coordinates in
/// `[0, 1)`. The shared basepoint has all coordinates zero.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TorusPoint {
    pub component: usize,
    pub coords: Vec<f64>,
}

#[derive(Clone, Debug, Serialize)]
enum Geometry {
    Bouquet { dims: Vec<usize>, points: Vec<TorusPoint> },
    Matrix(Vec<Vec<f64>>),
}

/// A finite metric space with a basepoint.
#[derive(Clone, Debug, Serialize)]
pub struct MetricSample {
    geometry: Geometry,
    pub basepoint: usize,
    /// Grid subdivisions per unit, for torus samples.
    pub grid: Option<usize>,
}

/// Flat distance on `ℝⁿ/ℤⁿ`: per-coordinate wrap, then Euclidean.
pub fn torus_dist(x: &[f64], y: &[f64]) -> f64 {
    x.iter()
        .zip(y)
        .map(|(a, b)| {
            let d = (a - b).abs().rem_euclid(1.0);
            let d = d.min(1.0 - d);
            d * d
        })
        .sum::<f64>()
        .sqrt()
}

fn norm(x: &[f64]) -> f64 {
    torus_dist(x, &vec![0.0; x.len()])
}

impl MetricSample {
    /// Explicit distance matrix; validated for shape, zero diagonal and
    /// symmetry.
    pub fn from_matrix(m: Vec<Vec<f64>>, basepoint: usize) -> Result<Self> {
        let n = m.len();
        if n == 0 || basepoint >= n {
            return Err(Error::InvalidInput("empty matrix or basepoint out of range".into()));
        }
        for (i, row) in m.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidInput(format!("row {i} has {} entries, expected {n}", row.len())));
            }
            if row[i] != 0.0 {
                return Err(Error::InvalidInput(format!("dist({i},{i}) is not zero")));
            }
            for (j, &d) in row.iter().enumerate() {
                if d < 0.0 || (d - m[j][i]).abs() > EPS {
                    return Err(Error::InvalidInput(format!("dist({i},{j}) is negative or asymmetric")));
                }
            }
        }
        Ok(MetricSample {
            geometry: Geometry::Matrix(m),
            basepoint,
            grid: None,
        })
    }

    /// Points of a bouquet of tori given directly. The basepoint is the first
    /// point with all coordinates zero.
    pub fn from_torus_points(dims: Vec<usize>, points: Vec<TorusPoint>) -> Result<Self> {
        for (i, p) in points.iter().enumerate() {
            if p.component >= dims.len() || p.coords.len() != dims[p.component] {
                return Err(Error::InvalidInput(format!("point {i} does not fit the bouquet")));
            }
        }
        let basepoint = points
            .iter()
            .position(|p| p.coords.iter().all(|&c| c == 0.0))
            .ok_or_else(|| Error::InvalidInput("no basepoint (all coordinates zero)".into()))?;
        Ok(MetricSample {
            geometry: Geometry::Bouquet { dims, points },
            basepoint,
            grid: None,
        })
    }

    pub fn len(&self) -> usize {
        match &self.geometry {
            Geometry::Bouquet { points, .. } => points.len(),
            Geometry::Matrix(m) => m.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn point(&self, i: usize) -> Option<&TorusPoint> {
        match &self.geometry {
            Geometry::Bouquet { points, .. } => points.get(i),
            Geometry::Matrix(_) => None,
        }
    }

    /// Torus dimensions of the bouquet components; empty for a matrix.
    pub fn dims(&self) -> &[usize] {
        match &self.geometry {
            Geometry::Bouquet { dims, .. } => dims,
            Geometry::Matrix(_) => &[],
        }
    }

    /// Within a torus the flat distance; across tori, through the cut point.
    pub fn dist(&self, i: usize, j: usize) -> f64 {
        match &self.geometry {
            Geometry::Matrix(m) => m[i][j],
            Geometry::Bouquet { points, .. } => {
                let (p, q) = (&points[i], &points[j]);
                if p.component == q.component {
                    torus_dist(&p.coords, &q.coords)
                } else {
                    norm(&p.coords) + norm(&q.coords)
                }
            }
        }
    }

    /// Indices within `radius` of the basepoint.
    pub fn ball(&self, radius: f64) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.dist(self.basepoint, i) <= radius + EPS).collect()
    }

    /// Spot-checks the metric axioms on `samples` random triples.
    pub fn validate(&self, samples: usize, seed: u64) -> Result<()> {
        let n = self.len();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..samples {
            let (x, y, z) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
            let (xy, yz, xz) = (self.dist(x, y), self.dist(y, z), self.dist(x, z));
            if self.dist(x, x) != 0.0 || (xy - self.dist(y, x)).abs() > EPS || xy < 0.0 {
                return Err(Error::Verification(format!("dist axioms fail at ({x},{y})")));
            }
            if xz > xy + yz + EPS {
                return Err(Error::Verification(format!("triangle inequality fails at ({x},{y},{z})")));
            }
        }
        Ok(())
    }
}

/// Grid samples of the tori `T^d`, `d ∈ dims`, glued at the origin: each
/// torus contributes the points `k/grid` per coordinate, the origin once.
pub fn torus_bouquet_space(dims: &[usize], grid: usize) -> Result<MetricSample> {
    if dims.is_empty() || dims.contains(&0) {
        return Err(Error::InvalidInput("dims must be nonempty and positive".into()));
    }
    if grid < 2 {
        return Err(Error::InvalidInput(format!("grid {grid} is below 2")));
    }
    let mut points = vec![TorusPoint {
        component: 0,
        coords: vec![0.0; dims[0]],
    }];
    for (c, &d) in dims.iter().enumerate() {
        let total = grid.pow(d as u32);
        for idx in 1..total {
            let mut coords = Vec::with_capacity(d);
            let mut k = idx;
            for _ in 0..d {
                coords.push((k % grid) as f64 / grid as f64);
                k /= grid;
            }
            coords.reverse();
            points.push(TorusPoint { component: c, coords });
        }
    }
    let mut s = MetricSample::from_torus_points(dims.to_vec(), points)?;
    s.grid = Some(grid);
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(component: usize, coords: &[f64]) -> TorusPoint {
        TorusPoint {
            component,
            coords: coords.to_vec(),
        }
    }

    #[test]
    fn circle_wraps_around() {
        let s = MetricSample::from_torus_points(vec![1], vec![pt(0, &[0.0]), pt(0, &[0.75])]).unwrap();
        assert!((s.dist(0, 1) - 0.25).abs() < EPS);
    }

    #[test]
    fn square_torus_diagonal() {
        let s = MetricSample::from_torus_points(vec![2], vec![pt(0, &[0.0, 0.0]), pt(0, &[0.5, 0.5])]).unwrap();
        assert!((s.dist(0, 1) - 0.5f64.sqrt()).abs() < EPS);
    }

    #[test]
    fn bouquet_goes_through_the_cut_point() {
        let s = MetricSample::from_torus_points(
            vec![1, 2],
            vec![pt(0, &[0.0]), pt(0, &[0.3]), pt(1, &[0.4, 0.0])],
        )
        .unwrap();
        assert!((s.dist(1, 2) - 0.7).abs() < EPS);
        assert!((s.dist(0, 2) - 0.4).abs() < EPS);
    }

    #[test]
    fn grid_bouquet_counts_origin_once() {
        let s = torus_bouquet_space(&[1, 2], 4).unwrap();
        assert_eq!(s.len(), 1 + 3 + 15);
        assert_eq!(s.basepoint, 0);
        s.validate(2000, 1).unwrap();
        assert!(torus_bouquet_space(&[2], 1).is_err());
    }

    #[test]
    fn matrix_must_be_symmetric() {
        assert!(MetricSample::from_matrix(vec![vec![0.0, 1.0], vec![2.0, 0.0]], 0).is_err());
        let s = MetricSample::from_matrix(vec![vec![0.0, 1.0], vec![1.0, 0.0]], 0).unwrap();
        assert_eq!(s.ball(0.5), vec![0]);
    }
}
