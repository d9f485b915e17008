use num_rational::Rational64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::report::ser_rational;

/// Quasi-geodesic constants and saturation radii. `m` is a measured
/// stand-in for the saturation constant, supplied by the caller.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SatParams {
    #[serde(serialize_with = "ser_rational")]
    pub l: Rational64,
    #[serde(serialize_with = "ser_rational")]
    pub c: Rational64,
    #[serde(serialize_with = "ser_rational")]
    pub mu: Rational64,
    #[serde(serialize_with = "ser_rational")]
    pub m: Rational64,
}

impl SatParams {
    pub fn new(l: Rational64, c: Rational64, mu: Rational64, m: Rational64) -> Result<Self> {
        let zero = Rational64::from_integer(0);
        if l < Rational64::from_integer(1) || c < zero || mu < zero || m < zero {
            return Err(Error::InvalidInput(format!(
                "need L >= 1 and C, mu, M >= 0 (got L={l}, C={c}, mu={mu}, M={m})"
            )));
        }
        Ok(SatParams { l, c, mu, m })
    }

    pub fn integers(l: i64, c: i64, mu: i64, m: i64) -> Result<Self> {
        Self::new(l.into(), c.into(), mu.into(), m.into())
    }
}

/// Fat-polygon parameters with `nu >= 4 sigma` enforced.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FatParams {
    #[serde(serialize_with = "ser_rational")]
    pub theta: Rational64,
    #[serde(serialize_with = "ser_rational")]
    pub sigma: Rational64,
    #[serde(serialize_with = "ser_rational")]
    pub nu: Rational64,
}

impl FatParams {
    pub fn new(theta: Rational64, sigma: Rational64, nu: Rational64) -> Result<Self> {
        if theta <= Rational64::from_integer(0) {
            return Err(Error::InvalidInput(format!("theta must be positive, got {theta}")));
        }
        if sigma < Rational64::from_integer(1) {
            return Err(Error::InvalidInput(format!("sigma must be at least 1, got {sigma}")));
        }
        if nu < sigma * 4 {
            return Err(Error::InvalidInput(format!("nu = {nu} is below 4 sigma = {}", sigma * 4)));
        }
        Ok(FatParams { theta, sigma, nu })
    }

    pub fn integers(theta: i64, sigma: i64, nu: i64) -> Result<Self> {
        Self::new(theta.into(), sigma.into(), nu.into())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nu_bound_enforced() {
        assert!(FatParams::integers(1, 2, 8).is_ok());
        assert!(FatParams::integers(1, 2, 7).is_err());
        assert!(FatParams::integers(0, 2, 8).is_err());
        assert!(FatParams::new(Rational64::new(1, 2), Rational64::new(1, 2), 8.into()).is_err());
    }

    #[test]
    fn sat_params_ranges() {
        assert!(SatParams::integers(1, 0, 0, 0).is_ok());
        assert!(SatParams::integers(0, 0, 0, 0).is_err());
        assert!(SatParams::integers(2, -1, 0, 0).is_err());
    }
}
