//! Continuous multiplicative and logarithmic functions on the cone.
//!
//! A multiplicative function is either the zero map or a product of
//! coordinate powers `x ↦ ∏ x_i^{α_i}`; a logarithmic function is a weighted
//! sum of coordinate logarithms `x ↦ Σ c_i ln x_i`. Projections (maps that
//! are both additive and multiplicative) are the zero map and the coordinate
//! maps `x ↦ x_j`.

use serde::{Deserialize, Serialize};

use crate::cone::{cw_add, cw_mul, PosVec};
use crate::error::{Error, Result};
use crate::sample::SampleSpec;

/// Relative tolerance used by the structural projection confirmation.
pub const PROJECTION_PROBE_RTOL: f64 = 1e-9;
const PROJECTION_PROBE_SAMPLES: usize = 64;

/// A continuous multiplicative function on `R^k_{+}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum MultFn {
    Zero,
    Power { alpha: Vec<f64> },
}

impl MultFn {
    pub fn zero() -> Self {
        MultFn::Zero
    }

    pub fn power(alpha: Vec<f64>) -> Result<Self> {
        if alpha.is_empty() {
            return Err(Error::invalid("exponent vector must be non-empty"));
        }
        if alpha.iter().any(|a| !a.is_finite()) {
            return Err(Error::invalid("exponents must be finite"));
        }
        Ok(MultFn::Power { alpha })
    }

    /// The constant map `μ ≡ 1` on `R^k`.
    pub fn one(k: usize) -> Self {
        MultFn::Power {
            alpha: vec![0.0; k],
        }
    }

    /// The coordinate projection `x ↦ x_j` on `R^k`.
    pub fn coordinate(k: usize, j: usize) -> Result<Self> {
        if j >= k {
            return Err(Error::invalid(format!("coordinate {j} out of range for k = {k}")));
        }
        let mut alpha = vec![0.0; k];
        alpha[j] = 1.0;
        Ok(MultFn::Power { alpha })
    }

    /// `x ↦ x` on `R_{+}`.
    pub fn identity() -> Self {
        MultFn::Power { alpha: vec![1.0] }
    }

    /// Dimension the function is defined on; `None` for the zero map, which
    /// is dimension-agnostic.
    pub fn dim(&self) -> Option<usize> {
        match self {
            MultFn::Zero => None,
            MultFn::Power { alpha } => Some(alpha.len()),
        }
    }

    pub fn exponents(&self) -> Option<&[f64]> {
        match self {
            MultFn::Zero => None,
            MultFn::Power { alpha } => Some(alpha),
        }
    }

    pub(crate) fn check_dim(&self, k: usize) -> Result<()> {
        match self.dim() {
            Some(d) if d != k => Err(Error::DimensionMismatch {
                expected: k,
                got: d,
            }),
            _ => Ok(()),
        }
    }

    /// `∏ x_i^{α_i}` with `0^0 = 1` and `0^α = 0` for `α > 0`. A zero
    /// coordinate under a negative exponent is a domain error.
    pub fn eval(&self, x: &PosVec) -> Result<f64> {
        let alpha = match self {
            MultFn::Zero => return Ok(0.0),
            MultFn::Power { alpha } => alpha,
        };
        if alpha.len() != x.dim() {
            return Err(Error::DimensionMismatch {
                expected: alpha.len(),
                got: x.dim(),
            });
        }
        let mut acc = 1.0;
        for (i, (&xi, &ai)) in x.coords().iter().zip(alpha).enumerate() {
            acc *= power_term(xi, ai).map_err(|e| match e {
                Error::Domain(m) => Error::Domain(format!("coordinate {i}: {m}")),
                other => other,
            })?;
        }
        if !acc.is_finite() {
            return Err(Error::domain(format!("μ({x}) overflows")));
        }
        Ok(acc)
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, MultFn::Zero)
    }

    pub fn is_one(&self) -> bool {
        matches!(self, MultFn::Power { alpha } if alpha.iter().all(|a| *a == 0.0))
    }

    /// Zero map or a standard basis exponent vector.
    pub fn is_projection_structural(&self) -> bool {
        match self {
            MultFn::Zero => true,
            MultFn::Power { alpha } => {
                alpha.iter().filter(|a| **a == 1.0).count() == 1
                    && alpha.iter().all(|a| *a == 0.0 || *a == 1.0)
            }
        }
    }

    /// Structural recognition confirmed by the numerical additivity probe.
    pub fn is_projection(&self) -> bool {
        self.is_projection_structural()
            && self
                .additivity_probe(PROJECTION_PROBE_SAMPLES, 0)
                .map(|p| p.max_deviation <= PROJECTION_PROBE_RTOL)
                .unwrap_or(false)
    }

    /// Samples pairs from the default cone and measures
    /// `|μ(x+y) − μ(x) − μ(y)| / (1 + |μ(x+y)|)`. The first pair that
    /// exceeds [`PROJECTION_PROBE_RTOL`] is kept as a counterexample; the
    /// all-ones pair is tried before any random pair.
    pub fn additivity_probe(&self, n: usize, seed: u64) -> Result<AdditivityProbe> {
        let k = self.dim().unwrap_or(1);
        let mut candidates = vec![[PosVec::ones(k), PosVec::ones(k)]];
        candidates.extend(SampleSpec::cone(k, n.max(1), seed).pairs()?);
        let mut max_deviation: f64 = 0.0;
        let mut counterexample = None;
        for [x, y] in candidates {
            let sum = cw_add(&x, &y)?;
            let lhs = self.eval(&sum)?;
            let rhs = self.eval(&x)? + self.eval(&y)?;
            let dev = (lhs - rhs).abs() / (1.0 + lhs.abs());
            max_deviation = max_deviation.max(dev);
            if counterexample.is_none() && dev > PROJECTION_PROBE_RTOL {
                counterexample = Some(AdditivityCounterexample { x, y, lhs, rhs });
            }
        }
        Ok(AdditivityProbe {
            max_deviation,
            counterexample,
        })
    }

    /// Max over `n` seeded pairs of `|μ(xy) − μ(x)μ(y)| / (1 + |μ(xy)|)`.
    pub fn mult_property_probe(&self, n: usize, seed: u64) -> Result<f64> {
        let k = self.dim().unwrap_or(1);
        let mut worst: f64 = 0.0;
        for [x, y] in SampleSpec::cone(k, n, seed).pairs()? {
            let lhs = self.eval(&cw_mul(&x, &y)?)?;
            let rhs = self.eval(&x)? * self.eval(&y)?;
            worst = worst.max((lhs - rhs).abs() / (1.0 + lhs.abs()));
        }
        Ok(worst)
    }

    /// The one-dimensional factor acting on coordinate `i`.
    pub fn factor(&self, i: usize) -> Result<MultFn> {
        match self {
            MultFn::Zero => Ok(MultFn::Zero),
            MultFn::Power { alpha } => alpha
                .get(i)
                .map(|a| MultFn::Power { alpha: vec![*a] })
                .ok_or_else(|| Error::invalid(format!("no coordinate {i}"))),
        }
    }
}

/// `t^a` with the boundary conventions of [`MultFn::eval`].
pub(crate) fn power_term(t: f64, a: f64) -> Result<f64> {
    if t == 0.0 {
        return if a == 0.0 {
            Ok(1.0)
        } else if a > 0.0 {
            Ok(0.0)
        } else {
            Err(Error::domain(format!("0 raised to negative exponent {a}")))
        };
    }
    if t < 0.0 {
        return Err(Error::domain(format!("negative coordinate {t}")));
    }
    Ok(if a == 1.0 { t } else { t.powf(a) })
}

/// Outcome of [`MultFn::additivity_probe`].
#[derive(Debug, Clone, PartialEq)]
pub struct AdditivityProbe {
    pub max_deviation: f64,
    pub counterexample: Option<AdditivityCounterexample>,
}

/// A pair with `μ(x+y) ≠ μ(x) + μ(y)`.
#[derive(Debug, Clone, PartialEq)]
pub struct AdditivityCounterexample {
    pub x: PosVec,
    pub y: PosVec,
    /// `μ(x+y)`
    pub lhs: f64,
    /// `μ(x) + μ(y)`
    pub rhs: f64,
}

/// A continuous logarithmic function `x ↦ Σ c_i ln x_i` on `R^k_{++}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LogFn {
    pub coeffs: Vec<f64>,
}

impl LogFn {
    pub fn new(coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::invalid("coefficient vector must be non-empty"));
        }
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::invalid("coefficients must be finite"));
        }
        Ok(Self { coeffs })
    }

    /// `Σ ln x_i`.
    pub fn natural(k: usize) -> Self {
        Self {
            coeffs: vec![1.0; k],
        }
    }

    /// `Σ log_base x_i`.
    pub fn with_base(k: usize, base: f64) -> Result<Self> {
        Ok(Self {
            coeffs: vec![1.0 / log_of_base(base)?; k],
        })
    }

    pub fn zero(k: usize) -> Self {
        Self {
            coeffs: vec![0.0; k],
        }
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| *c == 0.0)
    }

    pub fn eval(&self, x: &PosVec) -> Result<f64> {
        if self.coeffs.len() != x.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.coeffs.len(),
                got: x.dim(),
            });
        }
        let mut acc = 0.0;
        for (i, (&xi, &ci)) in x.coords().iter().zip(&self.coeffs).enumerate() {
            if xi <= 0.0 {
                return Err(Error::domain(format!(
                    "logarithm of nonpositive coordinate {i} = {xi}"
                )));
            }
            acc += ci * xi.ln();
        }
        Ok(acc)
    }

    /// Max over `n` seeded pairs of `|l(xy) − l(x) − l(y)|`.
    pub fn log_property_probe(&self, n: usize, seed: u64) -> Result<f64> {
        let mut worst: f64 = 0.0;
        for [x, y] in SampleSpec::cone(self.dim(), n, seed).pairs()? {
            let lhs = self.eval(&cw_mul(&x, &y)?)?;
            let rhs = self.eval(&x)? + self.eval(&y)?;
            worst = worst.max((lhs - rhs).abs());
        }
        Ok(worst)
    }

    pub fn factor(&self, i: usize) -> Result<LogFn> {
        self.coeffs
            .get(i)
            .map(|c| LogFn { coeffs: vec![*c] })
            .ok_or_else(|| Error::invalid(format!("no coordinate {i}")))
    }
}

/// `ln(base)`, rejecting bases that do not define a logarithm.
pub(crate) fn log_of_base(base: f64) -> Result<f64> {
    if !(base.is_finite() && base > 0.0 && base != 1.0) {
        return Err(Error::invalid(format!("{base} is not a valid logarithm base")));
    }
    Ok(if base == std::f64::consts::E { 1.0 } else { base.ln() })
}

/// `log_base(t)` for `t > 0`.
pub(crate) fn log_in_base(t: f64, base: f64) -> f64 {
    if base == std::f64::consts::E {
        t.ln()
    } else if base == 2.0 {
        t.log2()
    } else if base == 10.0 {
        t.log10()
    } else {
        t.ln() / base.ln()
    }
}

/// Free-function form of [`MultFn::eval`].
pub fn mult_eval(mu: &MultFn, x: &PosVec) -> Result<f64> {
    mu.eval(x)
}

/// Free-function form of [`LogFn::eval`].
pub fn log_eval(l: &LogFn, x: &PosVec) -> Result<f64> {
    l.eval(x)
}

/// Free-function form of [`MultFn::mult_property_probe`].
pub fn mult_property_probe(mu: &MultFn, n: usize, seed: u64) -> Result<f64> {
    mu.mult_property_probe(n, seed)
}

pub fn is_projection(mu: &MultFn) -> bool {
    mu.is_projection()
}

pub fn is_one(mu: &MultFn) -> bool {
    mu.is_one()
}

pub fn is_zero(mu: &MultFn) -> bool {
    mu.is_zero()
}
