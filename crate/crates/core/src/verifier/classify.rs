//! Recovering the case and parameters of a `k = 1` solution from samples of
//! `h(t) = f(0, 1-t, t)`.

use serde::{Deserialize, Serialize};

use super::report::ser_f64;
use crate::cone::PosVec;
use crate::error::{Error, Result};
use crate::sample::SampleSpec;
use crate::solutions::TripleFn;

/// `h` is treated as constant when its spread is below this (relative).
const CONSTANT_TOL: f64 = 1e-9;
/// Tolerance on the intercept and on `|α - 1|` in the power-law fit.
const ALPHA_TOL: f64 = 1e-6;
/// Largest relative misfit accepted for the final branch fit.
const FIT_TOL: f64 = 1e-8;
const MU_GRID: usize = 21;

/// Estimated case and parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "case", rename_all = "snake_case")]
pub enum Classification {
    Projection {
        alpha: Vec<f64>,
        l_coeff: f64,
        base: f64,
        #[serde(serialize_with = "ser_f64")]
        fit_residual: f64,
    },
    /// `h ≡ 0`. A `μ ≡ 0` solution with `Ψ(1) = 0` looks the same.
    One,
    Other {
        alpha: Vec<f64>,
        b: f64,
        #[serde(serialize_with = "ser_f64")]
        fit_residual: f64,
    },
    ZeroMu {
        psi_at_one: f64,
    },
    Unclassified {
        reason: String,
    },
}

impl Classification {
    pub fn is_classified(&self) -> bool {
        !matches!(self, Classification::Unclassified { .. })
    }

    fn unclassified(reason: impl Into<String>) -> Self {
        Classification::Unclassified {
            reason: reason.into(),
        }
    }
}

fn s1(v: f64) -> PosVec {
    PosVec::closed(vec![v]).expect("finite nonnegative")
}

/// Ordinary least squares `y ≈ a x + c`; returns `(a, c)`.
fn linear_fit(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let a = sxy / sxx;
    (a, my - a * mx)
}

/// Least squares `h ≈ c g` through the origin; returns `(c, max relative misfit)`.
fn scale_fit(g: &[f64], h: &[f64]) -> (f64, f64) {
    let num: f64 = g.iter().zip(h).map(|(g, h)| g * h).sum();
    let den: f64 = g.iter().map(|g| g * g).sum();
    let c = num / den;
    let hmax = h.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let misfit = g
        .iter()
        .zip(h)
        .fold(0.0f64, |m, (g, h)| m.max((h - c * g).abs()));
    (c, misfit / (1.0 + hmax))
}

/// Classifies a black-box `f` on `R^3_{+}` (`k = 1`) that is assumed to solve
/// the modified equation for some multiplicative `μ`.
///
/// `h` is sampled at `spec.count` points of `]0,1[`. A constant `h` means
/// case one (`h ≡ 0`) or `μ ≡ 0`. Otherwise `μ` is recovered from the
/// equation itself at `x = 1`, `(y, z) = s (1-t*, t*)`, as
/// `μ(s) = (f(1, (1-t*)s, t*s) - f(1, s, 0)) / h(t*)`, and a log-log fit
/// gives `α`. With `α = 1` the shape `c (t ln t + (1-t) ln(1-t))` is fitted,
/// otherwise `b (t^α + (1-t)^α - 1)`.
pub fn classify<F: TripleFn + ?Sized>(f: &F, spec: &SampleSpec) -> Result<Classification> {
    if f.dim() != 1 || spec.k != 1 {
        return Err(Error::invalid("classification is implemented for k = 1 only"));
    }
    let zero = s1(0.0);
    let ts: Vec<f64> = spec
        .with_region(crate::sample::Region::OpenCube)
        .points()?
        .into_iter()
        .map(|p| p.coords()[0])
        .collect();
    let mut hs = Vec::with_capacity(ts.len());
    for &t in &ts {
        hs.push(f.eval(&zero, &s1(1.0 - t), &s1(t))?);
    }

    let h0 = hs[0];
    let spread = hs.iter().fold(0.0f64, |m, h| m.max((h - h0).abs()));
    if spread <= CONSTANT_TOL * (1.0 + h0.abs()) {
        return Ok(if h0.abs() <= CONSTANT_TOL {
            Classification::One
        } else {
            Classification::ZeroMu { psi_at_one: h0 }
        });
    }

    let (star, _) = hs
        .iter()
        .enumerate()
        .fold((0, 0.0f64), |(bi, bv), (i, h)| if h.abs() > bv { (i, h.abs()) } else { (bi, bv) });
    let (t_star, h_star) = (ts[star], hs[star]);

    let mut log_s = Vec::with_capacity(MU_GRID);
    let mut log_mu = Vec::with_capacity(MU_GRID);
    for i in 0..MU_GRID {
        let s = 10f64.powf(-1.0 + 2.0 * i as f64 / (MU_GRID - 1) as f64);
        let split = f.eval(&s1(1.0), &s1((1.0 - t_star) * s), &s1(t_star * s))?;
        let merged = f.eval(&s1(1.0), &s1(s), &zero)?;
        let mu = (split - merged) / h_star;
        if !(mu.is_finite() && mu > 0.0) {
            return Ok(Classification::unclassified(format!(
                "recovered μ({s}) = {mu} is not positive"
            )));
        }
        log_s.push(s.ln());
        log_mu.push(mu.ln());
    }
    let (alpha, intercept) = linear_fit(&log_s, &log_mu);
    let loglin_misfit = log_s
        .iter()
        .zip(&log_mu)
        .fold(0.0f64, |m, (x, y)| m.max((y - alpha * x - intercept).abs()));
    if intercept.abs() > ALPHA_TOL || loglin_misfit > ALPHA_TOL {
        return Ok(Classification::unclassified(format!(
            "recovered μ is not a power law (intercept {intercept:e}, misfit {loglin_misfit:e})"
        )));
    }
    if alpha.abs() <= ALPHA_TOL {
        return Ok(Classification::unclassified(
            "μ ≡ 1 but h is not constant",
        ));
    }

    if (alpha - 1.0).abs() <= ALPHA_TOL {
        let g: Vec<f64> = ts
            .iter()
            .map(|t| t * t.ln() + (1.0 - t) * (1.0 - t).ln())
            .collect();
        let (c, misfit) = scale_fit(&g, &hs);
        if misfit > FIT_TOL {
            return Ok(Classification::unclassified(format!(
                "h is not of the form c(t ln t + (1-t) ln(1-t)) (misfit {misfit:e})"
            )));
        }
        return Ok(Classification::Projection {
            alpha: vec![alpha],
            l_coeff: c,
            base: (1.0 / c).exp(),
            fit_residual: misfit,
        });
    }

    let g: Vec<f64> = ts
        .iter()
        .map(|t| t.powf(alpha) + (1.0 - t).powf(alpha) - 1.0)
        .collect();
    let (b, misfit) = scale_fit(&g, &hs);
    if misfit > FIT_TOL {
        return Ok(Classification::unclassified(format!(
            "h is not of the form b(t^α + (1-t)^α - 1) (misfit {misfit:e})"
        )));
    }
    Ok(Classification::Other {
        alpha: vec![alpha],
        b,
        fit_residual: misfit,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{LogFn, MultFn};
    use crate::solutions::{triple_fn, PsiFn, TriSolution};
    use std::f64::consts::E;

    fn spec() -> SampleSpec {
        SampleSpec::open_cube(1, 64, 0)
    }

    #[test]
    fn shannon_is_projection() {
        match classify(&TriSolution::shannon(E).unwrap(), &spec()).unwrap() {
            Classification::Projection { alpha, base, .. } => {
                assert!((alpha[0] - 1.0).abs() <= 1e-6);
                assert!((base - E).abs() <= 1e-6);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn case_one_and_zero_mu() {
        let f = TriSolution::one(1, PsiFn::expr("ln(s[0])", 1).unwrap()).unwrap();
        assert_eq!(classify(&f, &spec()).unwrap(), Classification::One);
        let z = TriSolution::zero_mu(1, LogFn::natural(1), PsiFn::Const(4.0)).unwrap();
        assert_eq!(
            classify(&z, &spec()).unwrap(),
            Classification::ZeroMu { psi_at_one: 4.0 }
        );
    }

    #[test]
    fn other_recovers_parameters() {
        let f = TriSolution::other(1, MultFn::power(vec![3.0]).unwrap(), 2.0, PsiFn::Const(-2.0))
            .unwrap();
        match classify(&f, &spec()).unwrap() {
            Classification::Other { alpha, b, .. } => {
                assert!((alpha[0] - 3.0).abs() <= 1e-6, "{alpha:?}");
                assert!((b - 2.0).abs() <= 1e-6, "{b}");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn non_solutions_are_unclassified() {
        let f = triple_fn(1, |x: &PosVec, y: &PosVec, z: &PosVec| {
            let (x, y, z) = (x.coords()[0], y.coords()[0], z.coords()[0]);
            Ok((x * y + y * z + z * x).sin())
        });
        let c = classify(&f, &spec()).unwrap();
        assert!(!c.is_classified(), "{c:?}");
        let json = serde_json::to_value(&c).unwrap();
        assert_eq!(json["case"], "unclassified");
        assert!(classify(&TriSolution::one(2, PsiFn::Const(0.0)).unwrap(), &spec()).is_err());
    }
}
