//! Shared report helpers.

use num_rational::Rational64;
use serde::Serializer;

pub fn rational_to_f64(r: Rational64) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// `p/q`, or `p` for integers.
pub fn fmt_rational(r: Rational64) -> String {
    if *r.denom() == 1 {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p/q`, an integer, or a finite decimal such as `0.25`.
pub fn parse_rational(text: &str) -> crate::Result<Rational64> {
    let t = text.trim();
    let bad = || crate::Error::InvalidInput(format!("not a rational number: {text:?}"));
    if let Some((int, frac)) = t.split_once('.') {
        if frac.is_empty() || frac.len() > 12 || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let neg = int.starts_with('-');
        let whole: i64 = if int.is_empty() || int == "-" { 0 } else { int.parse().map_err(|_| bad())? };
        let scale = 10i64.pow(frac.len() as u32);
        let f: i64 = frac.parse().map_err(|_| bad())?;
        let num = whole.abs() * scale + f;
        return Ok(Rational64::new(if neg { -num } else { num }, scale));
    }
    let r: Rational64 = t.parse().map_err(|_| bad())?;
    Ok(r)
}

pub fn ser_rational<S: Serializer>(r: &Rational64, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64(rational_to_f64(*r))
}
