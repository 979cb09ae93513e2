use serde::ser::Error as _;
use serde::{Deserialize, Serialize, Serializer};
use serde_json::value::RawValue;

use crate::cone::PosVec;
use crate::error::{Error, Result};

fn raw<S: Serializer>(text: String, s: S) -> std::result::Result<S::Ok, S::Error> {
    RawValue::from_string(text)
        .map_err(S::Error::custom)?
        .serialize(s)
}

fn f17(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        // Never produced by the checks; kept valid JSON regardless.
        "null".to_string()
    }
}

pub(crate) fn ser_f64<S: Serializer>(v: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    raw(f17(*v), s)
}

pub(crate) fn ser_points<S: Serializer>(
    v: &[Vec<f64>],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    let rows: Vec<String> = v
        .iter()
        .map(|row| {
            let cells: Vec<String> = row.iter().map(|x| f17(*x)).collect();
            format!("[{}]", cells.join(","))
        })
        .collect();
    raw(format!("[{}]", rows.join(",")), s)
}

/// Residual tolerance: sample `i` passes when
/// `|r_i| <= atol + rtol * scale_i`, with `scale_i` the magnitude of the
/// largest term evaluated for that sample.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    #[serde(serialize_with = "ser_f64")]
    pub atol: f64,
    #[serde(serialize_with = "ser_f64")]
    pub rtol: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Self {
            atol: 1e-9,
            rtol: 1e-9,
        }
    }
}

impl Tolerance {
    pub fn new(atol: f64, rtol: f64) -> Result<Self> {
        let ok = |v: f64| v.is_finite() && v >= 0.0;
        if !(ok(atol) && ok(rtol)) {
            return Err(Error::invalid(format!(
                "tolerances must be finite and nonnegative, got atol={atol}, rtol={rtol}"
            )));
        }
        Ok(Self { atol, rtol })
    }

    /// A purely absolute tolerance.
    pub fn abs(atol: f64) -> Self {
        Self { atol, rtol: 0.0 }
    }

    pub fn bound(&self, scale: f64) -> f64 {
        self.atol + self.rtol * scale
    }

    /// `|r| / bound(scale)`; at most 1 exactly when the sample passes.
    pub fn ratio(&self, residual: f64, scale: f64) -> f64 {
        let b = self.bound(scale);
        let r = residual.abs();
        if r == 0.0 {
            0.0
        } else if b == 0.0 {
            f64::MAX
        } else {
            r / b
        }
    }

    pub fn accepts(&self, residual: f64, scale: f64) -> bool {
        residual.abs() <= self.bound(scale)
    }
}

/// Outcome of running one equation over a sample.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResidualReport {
    pub equation: String,
    pub samples: usize,
    #[serde(serialize_with = "ser_f64")]
    pub max_abs_residual: f64,
    #[serde(serialize_with = "ser_f64")]
    pub mean_abs_residual: f64,
    /// The sample point (one row per argument) where `|r|` is largest.
    #[serde(serialize_with = "ser_points")]
    pub argmax: Vec<Vec<f64>>,
    pub tolerance: Tolerance,
    /// Largest `|r_i| / (atol + rtol * scale_i)`; the check passes iff this
    /// is at most 1.
    #[serde(serialize_with = "ser_f64")]
    pub worst_ratio: f64,
    pub pass: bool,
    pub seed: u64,
}

/// A concrete point where a claimed identity or hypothesis fails.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub claim: String,
    pub found: bool,
    #[serde(serialize_with = "ser_points")]
    pub points: Vec<Vec<f64>>,
    #[serde(serialize_with = "ser_f64")]
    pub violation: f64,
    /// Number of candidate points examined.
    pub searched: usize,
}

impl Witness {
    pub(crate) fn none(claim: &str, searched: usize) -> Self {
        Self {
            claim: claim.to_string(),
            found: false,
            points: Vec::new(),
            violation: 0.0,
            searched,
        }
    }

    pub(crate) fn at(claim: &str, points: &[&PosVec], violation: f64, searched: usize) -> Self {
        Self {
            claim: claim.to_string(),
            found: true,
            points: points.iter().map(|p| p.coords().to_vec()).collect(),
            violation,
            searched,
        }
    }
}

/// Residual and term scale for one sample.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Terms {
    pub residual: f64,
    pub scale: f64,
}

impl Terms {
    /// `Σ lhs - Σ rhs`, with the scale taken over every term.
    pub(crate) fn balance(lhs: &[f64], rhs: &[f64]) -> Result<Self> {
        let residual = lhs.iter().sum::<f64>() - rhs.iter().sum::<f64>();
        let scale = lhs
            .iter()
            .chain(rhs)
            .fold(0.0f64, |m, t| m.max(t.abs()));
        if !(residual.is_finite() && scale.is_finite()) {
            return Err(Error::domain("residual is not finite"));
        }
        Ok(Self { residual, scale })
    }
}
