use std::f64::consts::E;

use crate::cone::PosVec;
use crate::dsl::{Bindings, Expr, PSI_VARS};
use crate::error::{Error, Result};
use crate::family::{log_in_base, log_of_base};

/// The free function `ψ` applied to `x + y + z`.
#[derive(Debug, Clone, PartialEq)]
pub enum PsiFn {
    /// `s ↦ c`
    Const(f64),
    /// `s ↦ Σ a_i s_i`
    Linear(Vec<f64>),
    /// `s ↦ -Σ s_i log_base s_i`
    NegXLogX { base: f64 },
    /// A user expression over `s[0..k]`.
    Expr(Expr),
}

impl PsiFn {
    pub fn neg_x_log_x() -> Self {
        PsiFn::NegXLogX { base: E }
    }

    pub fn neg_x_log_x_base(base: f64) -> Result<Self> {
        log_of_base(base)?;
        Ok(PsiFn::NegXLogX { base })
    }

    pub fn expr(source: &str, k: usize) -> Result<Self> {
        Ok(PsiFn::Expr(Expr::parse(source, k, PSI_VARS)?))
    }

    pub(crate) fn check_dim(&self, k: usize) -> Result<()> {
        match self {
            PsiFn::Const(c) if !c.is_finite() => Err(Error::invalid("ψ constant must be finite")),
            PsiFn::Linear(a) if a.len() != k => Err(Error::DimensionMismatch {
                expected: k,
                got: a.len(),
            }),
            PsiFn::Linear(a) if a.iter().any(|v| !v.is_finite()) => {
                Err(Error::invalid("ψ coefficients must be finite"))
            }
            PsiFn::NegXLogX { base } => log_of_base(*base).map(|_| ()),
            PsiFn::Expr(e) if e.k() != k => Err(Error::DimensionMismatch {
                expected: k,
                got: e.k(),
            }),
            _ => Ok(()),
        }
    }

    pub fn eval(&self, s: &PosVec) -> Result<f64> {
        if !s.is_positive() {
            return Err(Error::domain(format!("ψ evaluated at nonpositive point {s}")));
        }
        match self {
            PsiFn::Const(c) => Ok(*c),
            PsiFn::Linear(a) => {
                if a.len() != s.dim() {
                    return Err(Error::DimensionMismatch {
                        expected: a.len(),
                        got: s.dim(),
                    });
                }
                Ok(a.iter().zip(s.coords()).map(|(a, s)| a * s).sum())
            }
            PsiFn::NegXLogX { base } => Ok(-s
                .coords()
                .iter()
                .map(|t| t * log_in_base(*t, *base))
                .sum::<f64>()),
            PsiFn::Expr(e) => {
                if e.k() != s.dim() {
                    return Err(Error::DimensionMismatch {
                        expected: e.k(),
                        got: s.dim(),
                    });
                }
                Ok(e.eval(&Bindings::psi(s.coords()))?)
            }
        }
    }

    /// `ψ(1)`. Exact for the builtin kinds.
    pub fn at_one(&self, k: usize) -> Result<f64> {
        match self {
            PsiFn::Const(c) => Ok(*c),
            PsiFn::Linear(a) => Ok(a.iter().sum()),
            PsiFn::NegXLogX { .. } => Ok(0.0),
            PsiFn::Expr(_) => self.eval(&PosVec::ones(k)),
        }
    }

    pub fn is_builtin(&self) -> bool {
        !matches!(self, PsiFn::Expr(_))
    }
}
