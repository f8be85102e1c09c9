//! Parameter grids for the verification harness.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qcore::Rational;

/// A `u` value, possibly tied to the current `q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum UValue {
    Lit(Rational),
    Q,
    QSquared,
}

impl UValue {
    pub fn resolve(&self, q: &Rational) -> Rational {
        match self {
            UValue::Lit(u) => u.clone(),
            UValue::Q => q.clone(),
            UValue::QSquared => q * q,
        }
    }
}

impl std::str::FromStr for UValue {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "q" => Ok(UValue::Q),
            "q^2" | "q2" => Ok(UValue::QSquared),
            other => other.parse().map(UValue::Lit),
        }
    }
}

#[derive(Deserialize)]
struct GridFile {
    q: Vec<String>,
    u: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridSpec {
    pub q_values: Vec<Rational>,
    pub u_values: Vec<UValue>,
}

/// One concrete `(q, u)` pair.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct GridPoint {
    pub q: Rational,
    pub u: Rational,
}

impl GridSpec {
    /// `q` in `{1/2, 2/3, 2, 3}` plus the classical anchor `q = 1` and
    /// `q = 1/4`; `u` in `{0, 1, 1/2, q, q^2}`.
    pub fn default_grid() -> Self {
        let q = ["1/2", "2/3", "2", "3", "1", "1/4"];
        GridSpec {
            q_values: q.iter().map(|s| s.parse().expect("literal")).collect(),
            u_values: vec![
                UValue::Lit(Rational::zero()),
                UValue::Lit(Rational::one()),
                UValue::Lit(Rational::new(1, 2)),
                UValue::Q,
                UValue::QSquared,
            ],
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: GridFile = serde_json::from_str(text).map_err(|e| Error::Parse(format!("grid file: {e}")))?;
        let q_values = file.q.iter().map(|s| s.parse()).collect::<Result<Vec<Rational>>>()?;
        let u_values = file.u.iter().map(|s| s.parse()).collect::<Result<Vec<UValue>>>()?;
        if q_values.is_empty() || u_values.is_empty() {
            return Err(Error::Parse("grid must list at least one q and one u".into()));
        }
        Ok(GridSpec { q_values, u_values })
    }

    /// Concrete points in grid order, with duplicates removed.
    pub fn points(&self) -> Vec<GridPoint> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for q in &self.q_values {
            for u in &self.u_values {
                let p = GridPoint { q: q.clone(), u: u.resolve(q) };
                if seen.insert(p.clone()) {
                    out.push(p);
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_grid_dedups() {
        let pts = GridSpec::default_grid().points();
        // q = 1 collapses u = 1, q, q^2 into one point
        assert_eq!(pts.iter().filter(|p| p.q.is_one()).count(), 3);
        // q = 1/2 collapses u = 1/2 and u = q
        assert_eq!(pts.len(), 4 + 5 + 5 + 5 + 3 + 5);
    }

    #[test]
    fn parse_grid() {
        let g = GridSpec::from_json(r#"{"q":["1/2"],"u":["q^2","1"]}"#).unwrap();
        assert_eq!(g.points(), vec![
            GridPoint { q: Rational::new(1, 2), u: Rational::new(1, 4) },
            GridPoint { q: Rational::new(1, 2), u: Rational::one() },
        ]);
        assert!(GridSpec::from_json(r#"{"q":[],"u":["1"]}"#).is_err());
        assert!(GridSpec::from_json(r#"{"q":["0.5"],"u":["1"]}"#).is_err());
    }
}
