use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};

/// Outcome of a report. With a bound the verdict is pass/fail; without one it
/// describes how the primary constant moves across the recorded radii.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Stable,
    Growing,
    Varying,
    Vacuous,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RadiusRow {
    pub r: usize,
    pub measured: BTreeMap<String, f64>,
    pub witnesses: Vec<String>,
    /// Some enumeration hit its cap; the row is a partial certificate.
    pub truncated: bool,
    pub vacuous: bool,
}

impl RadiusRow {
    pub fn new(r: usize) -> Self {
        RadiusRow {
            r,
            measured: BTreeMap::new(),
            witnesses: Vec::new(),
            truncated: false,
            vacuous: false,
        }
    }

    pub fn set(&mut self, key: &str, value: f64) {
        self.measured.insert(key.to_string(), value);
    }

    pub fn get(&self, key: &str) -> Option<f64> {
        self.measured.get(key).copied()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AlphaReport {
    pub condition: String,
    pub params: BTreeMap<String, String>,
    /// Key of the constant the verdict is computed from.
    pub primary: String,
    pub bound: Option<f64>,
    pub per_radius: Vec<RadiusRow>,
    pub verdict: Verdict,
}

impl AlphaReport {
    pub fn new(condition: &str, primary: &str, params: &[(&str, String)], rows: Vec<RadiusRow>) -> Self {
        let mut rep = AlphaReport {
            condition: condition.to_string(),
            params: params.iter().map(|(k, v)| (k.to_string(), v.clone())).collect(),
            primary: primary.to_string(),
            bound: None,
            per_radius: rows,
            verdict: Verdict::Stable,
        };
        rep.refresh();
        rep
    }

    /// Pass/fail against `bound` from now on.
    pub fn with_bound(mut self, bound: f64) -> Self {
        self.bound = Some(bound);
        self.refresh();
        self
    }

    /// Merges single-radius reports of the same condition into a sweep.
    pub fn combine(reports: Vec<AlphaReport>) -> Result<AlphaReport> {
        let mut it = reports.into_iter();
        let mut first = it
            .next()
            .ok_or_else(|| Error::InvalidInput("no reports to combine".into()))?;
        for r in it {
            if r.condition != first.condition {
                return Err(Error::InvalidInput(format!(
                    "cannot combine {} with {}",
                    first.condition, r.condition
                )));
            }
            first.per_radius.extend(r.per_radius);
        }
        first.per_radius.sort_by_key(|row| row.r);
        first.refresh();
        Ok(first)
    }

    /// The primary constant per radius.
    pub fn series(&self) -> Vec<f64> {
        self.series_of(&self.primary)
    }

    pub fn series_of(&self, key: &str) -> Vec<f64> {
        self.per_radius.iter().filter_map(|row| row.get(key)).collect()
    }

    pub fn max_of(&self, key: &str) -> Option<f64> {
        self.series_of(key).into_iter().reduce(f64::max)
    }

    fn refresh(&mut self) {
        let values = self.series();
        self.verdict = if self.per_radius.iter().all(|r| r.vacuous) && !self.per_radius.is_empty() {
            Verdict::Vacuous
        } else if let Some(b) = self.bound {
            if values.iter().all(|&v| v <= b) {
                Verdict::Pass
            } else {
                Verdict::Fail
            }
        } else if values.windows(2).all(|w| w[0] == w[1]) {
            Verdict::Stable
        } else if values.windows(2).all(|w| w[0] <= w[1]) {
            Verdict::Growing
        } else {
            Verdict::Varying
        };
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// One row per radius, one column per measured key (union over rows).
    pub fn to_csv(&self) -> String {
        let mut keys: Vec<&String> = self.per_radius.iter().flat_map(|r| r.measured.keys()).collect();
        keys.sort();
        keys.dedup();
        let mut out = String::from("condition,r");
        for k in &keys {
            out.push(',');
            out.push_str(k);
        }
        out.push_str(",truncated,vacuous\n");
        for row in &self.per_radius {
            out.push_str(&format!("{},{}", self.condition, row.r));
            for k in &keys {
                out.push(',');
                if let Some(v) = row.get(k) {
                    out.push_str(&format_value(v));
                }
            }
            out.push_str(&format!(",{},{}\n", row.truncated, row.vacuous));
        }
        out
    }
}

pub(crate) fn format_value(v: f64) -> String {
    if v.is_infinite() {
        "inf".into()
    } else if v.fract() == 0.0 && v.abs() < 1e15 {
        format!("{}", v as i64)
    } else {
        format!("{v}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(r: usize, v: f64) -> RadiusRow {
        let mut row = RadiusRow::new(r);
        row.set("x", v);
        row
    }

    #[test]
    fn verdicts_over_a_sweep() {
        let stable = AlphaReport::new("alpha1", "x", &[], vec![row(3, 1.0), row(4, 1.0)]);
        assert_eq!(stable.verdict, Verdict::Stable);
        let growing = AlphaReport::new("alpha1", "x", &[], vec![row(3, 1.0), row(4, 2.0)]);
        assert_eq!(growing.verdict, Verdict::Growing);
        assert_eq!(growing.clone().with_bound(1.5).verdict, Verdict::Fail);
        assert_eq!(growing.with_bound(2.0).verdict, Verdict::Pass);
        let varying = AlphaReport::new("alpha1", "x", &[], vec![row(3, 2.0), row(4, 1.0)]);
        assert_eq!(varying.verdict, Verdict::Varying);
    }

    #[test]
    fn combine_sorts_rows() {
        let a = AlphaReport::new("bcp", "x", &[], vec![row(5, 2.0)]);
        let b = AlphaReport::new("bcp", "x", &[], vec![row(3, 2.0)]);
        let c = AlphaReport::combine(vec![a, b]).unwrap();
        assert_eq!(c.per_radius.iter().map(|r| r.r).collect::<Vec<_>>(), [3, 5]);
        let other = AlphaReport::new("alpha2", "x", &[], vec![]);
        assert!(AlphaReport::combine(vec![c, other]).is_err());
    }

    #[test]
    fn csv_has_one_line_per_radius() {
        let rep = AlphaReport::new("alpha1", "x", &[("delta", "1".into())], vec![row(3, 1.0), row(4, 1.5)]);
        let csv = rep.to_csv();
        assert_eq!(csv.lines().count(), 3);
        assert_eq!(csv.lines().nth(2).unwrap(), "alpha1,4,1.5,false,false");
        assert!(rep.to_json().contains("\"verdict\": \"growing\""));
    }
}
