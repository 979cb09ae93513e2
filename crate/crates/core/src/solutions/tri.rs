use std::fmt;

use serde::{Deserialize, Serialize};

use super::feim::HFn;
use super::psi::PsiFn;
use super::TripleFn;
use crate::cone::{sum3_sorted, symmetric_sum3, PosVec};
use crate::dsl::{Bindings, Expr, TRIPLE_VARS};
use crate::error::{Error, Result};
use crate::family::{log_in_base, log_of_base, LogFn, MultFn};
use crate::sample::SampleSpec;

/// Tolerance for the normalization constraint when `ψ` is a user expression.
pub const EXPR_CONSTRAINT_TOL: f64 = 1e-9;

const SYMMETRY_PROBE_SAMPLES: usize = 64;
const SYMMETRY_PROBE_RTOL: f64 = 1e-9;

/// Case tags as they appear in descriptors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CaseId {
    Projection,
    One,
    Other,
    ZeroMu,
    Shannon,
    Expr,
}

impl CaseId {
    pub fn as_str(self) -> &'static str {
        match self {
            CaseId::Projection => "projection",
            CaseId::One => "one",
            CaseId::Other => "other",
            CaseId::ZeroMu => "zero_mu",
            CaseId::Shannon => "shannon",
            CaseId::Expr => "expr",
        }
    }
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for CaseId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "projection" => CaseId::Projection,
            "one" => CaseId::One,
            "other" => CaseId::Other,
            "zero_mu" | "zero-mu" => CaseId::ZeroMu,
            "shannon" => CaseId::Shannon,
            "expr" => CaseId::Expr,
            _ => return Err(Error::invalid(format!("unknown case {s:?}"))),
        })
    }
}

/// The shape of a candidate solution.
#[derive(Debug, Clone, PartialEq)]
pub enum Case {
    /// `Σ μ(t) l(t) + ψ(x+y+z)` for a projection `μ`.
    Projection { mu: MultFn, l: LogFn, psi: PsiFn },
    /// `ψ(x+y+z)`, paired with `μ ≡ 1`.
    One { psi: PsiFn },
    /// `b (μ(x)+μ(y)+μ(z)) + ψ(x+y+z)` for any other multiplicative `μ`.
    Other { mu: MultFn, b: f64, psi: PsiFn },
    /// `Ψ(x+y+z)`, paired with `μ ≡ 0`. The logarithmic `l` is carried but
    /// always multiplied by zero.
    ZeroMu { l: LogFn, psi: PsiFn },
    /// `x log x + y log y + z log z − (x+y+z) log(x+y+z)` on `R_{+}`.
    Shannon { base: f64 },
    /// A user expression over `x`, `y`, `z`, optionally with a declared `μ`.
    UserExpr { expr: Expr, mu: Option<MultFn> },
}

impl Case {
    pub fn id(&self) -> CaseId {
        match self {
            Case::Projection { .. } => CaseId::Projection,
            Case::One { .. } => CaseId::One,
            Case::Other { .. } => CaseId::Other,
            Case::ZeroMu { .. } => CaseId::ZeroMu,
            Case::Shannon { .. } => CaseId::Shannon,
            Case::UserExpr { .. } => CaseId::Expr,
        }
    }
}

/// Result of checking the value `ψ(1)` must take for the solution form to
/// satisfy the equation including its boundary evaluations.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalizationCheck {
    /// Required `ψ(1)`, or `None` when the case imposes no constraint.
    pub required: Option<f64>,
    pub actual: Option<f64>,
    pub tolerance: f64,
    pub ok: bool,
}

impl fmt::Display for NormalizationCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.required, self.actual) {
            (None, _) => write!(f, "ψ(1): no constraint"),
            (Some(r), _) if self.ok => write!(f, "ψ(1)={r}: ok"),
            (Some(r), Some(a)) => write!(f, "ψ(1) must equal {r}, got {a}"),
            (Some(r), None) => write!(f, "ψ(1) must equal {r}"),
        }
    }
}

/// A candidate solution `f(x, y, z)` on `R^{3k}_{+}`.
#[derive(Debug, Clone, PartialEq)]
pub struct TriSolution {
    k: usize,
    case: Case,
}

enum Arg {
    Positive,
    Zero,
}

fn classify_arg(t: &PosVec) -> Result<Arg> {
    if t.is_positive() {
        Ok(Arg::Positive)
    } else if t.is_zero_vector() {
        Ok(Arg::Zero)
    } else {
        Err(Error::domain(format!(
            "{t} mixes zero and positive coordinates; only the zero vector is allowed on the boundary"
        )))
    }
}

impl TriSolution {
    /// Builds a solution, rejecting parameters that break the case's
    /// normalization constraint (and asymmetric user expressions).
    pub fn new(k: usize, case: Case) -> Result<Self> {
        let sol = Self::new_unconstrained(k, case)?;
        let check = sol.normalization()?;
        if !check.ok {
            return Err(Error::Normalization(check.to_string()));
        }
        if let Case::UserExpr { .. } = sol.case {
            sol.probe_symmetry()?;
        }
        Ok(sol)
    }

    /// Structural validation only (dimensions, case preconditions on `μ`).
    /// Used to load descriptors that are meant to be checked, including
    /// deliberately broken ones.
    pub fn new_unconstrained(k: usize, case: Case) -> Result<Self> {
        if k == 0 {
            return Err(Error::invalid("dimension k must be positive"));
        }
        let lk = |l: &LogFn| {
            if l.dim() == k {
                Ok(())
            } else {
                Err(Error::DimensionMismatch {
                    expected: k,
                    got: l.dim(),
                })
            }
        };
        match &case {
            Case::Projection { mu, l, psi } => {
                mu.check_dim(k)?;
                if !mu.is_projection() {
                    return Err(Error::invalid(
                        "projection case needs μ = 0 or a coordinate map",
                    ));
                }
                lk(l)?;
                psi.check_dim(k)?;
            }
            Case::One { psi } => psi.check_dim(k)?,
            Case::Other { mu, b, psi } => {
                if mu.is_zero() {
                    return Err(Error::invalid("μ ≡ 0 belongs to the projection case"));
                }
                mu.check_dim(k)?;
                if mu.is_projection_structural() {
                    return Err(Error::invalid("μ is a projection; use the projection case"));
                }
                if mu.is_one() {
                    return Err(Error::invalid("μ ≡ 1; use the one case"));
                }
                if !b.is_finite() {
                    return Err(Error::invalid("b must be finite"));
                }
                psi.check_dim(k)?;
            }
            Case::ZeroMu { l, psi } => {
                lk(l)?;
                psi.check_dim(k)?;
            }
            Case::Shannon { base } => {
                if k != 1 {
                    return Err(Error::invalid("the Shannon solution is defined for k = 1 only"));
                }
                log_of_base(*base)?;
            }
            Case::UserExpr { expr, mu } => {
                if expr.k() != k {
                    return Err(Error::DimensionMismatch {
                        expected: k,
                        got: expr.k(),
                    });
                }
                if let Some(mu) = mu {
                    mu.check_dim(k)?;
                }
            }
        }
        Ok(Self { k, case })
    }

    pub fn projection(k: usize, mu: MultFn, l: LogFn, psi: PsiFn) -> Result<Self> {
        Self::new(k, Case::Projection { mu, l, psi })
    }

    pub fn one(k: usize, psi: PsiFn) -> Result<Self> {
        Self::new(k, Case::One { psi })
    }

    pub fn other(k: usize, mu: MultFn, b: f64, psi: PsiFn) -> Result<Self> {
        Self::new(k, Case::Other { mu, b, psi })
    }

    pub fn zero_mu(k: usize, l: LogFn, psi: PsiFn) -> Result<Self> {
        Self::new(k, Case::ZeroMu { l, psi })
    }

    pub fn shannon(base: f64) -> Result<Self> {
        Self::new(1, Case::Shannon { base })
    }

    /// A user expression over `x[i], y[i], z[i]`.
    pub fn user_expr(k: usize, source: &str, mu: Option<MultFn>) -> Result<Self> {
        let expr = Expr::parse(source, k, TRIPLE_VARS)?;
        Self::new(k, Case::UserExpr { expr, mu })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn case(&self) -> &Case {
        &self.case
    }

    pub fn case_id(&self) -> CaseId {
        self.case.id()
    }

    /// The multiplicative function this solution is meant to pair with.
    pub fn declared_mu(&self) -> Option<MultFn> {
        match &self.case {
            Case::Projection { mu, .. } | Case::Other { mu, .. } => Some(mu.clone()),
            Case::One { .. } => Some(MultFn::one(self.k)),
            Case::ZeroMu { .. } => Some(MultFn::Zero),
            Case::Shannon { .. } => Some(MultFn::identity()),
            Case::UserExpr { mu, .. } => mu.clone(),
        }
    }

    /// The `ψ` constraint this case imposes, evaluated against its `ψ`.
    pub fn normalization(&self) -> Result<NormalizationCheck> {
        let (required, psi) = match &self.case {
            Case::Projection { mu, psi, .. } if !mu.is_zero() => (Some(0.0), Some(psi)),
            Case::One { psi } => (Some(0.0), Some(psi)),
            Case::Other { b, psi, .. } => (Some(-b), Some(psi)),
            Case::Projection { psi, .. } | Case::ZeroMu { psi, .. } => (None, Some(psi)),
            Case::Shannon { .. } | Case::UserExpr { .. } => (None, None),
        };
        let actual = psi.map(|p| p.at_one(self.k)).transpose()?;
        let tolerance = match psi {
            Some(PsiFn::Linear(a)) => {
                let mass: f64 = a.iter().map(|v| v.abs()).sum();
                2.0 * a.len() as f64 * f64::EPSILON * mass.max(1.0)
            }
            Some(p) if !p.is_builtin() => EXPR_CONSTRAINT_TOL,
            _ => 0.0,
        };
        let ok = match (required, actual) {
            (Some(r), Some(a)) => (a - r).abs() <= tolerance,
            _ => true,
        };
        Ok(NormalizationCheck {
            required,
            actual,
            tolerance,
            ok,
        })
    }

    fn probe_symmetry(&self) -> Result<()> {
        let triples = SampleSpec::cone(self.k, SYMMETRY_PROBE_SAMPLES, 0).triples()?;
        for [x, y, z] in &triples {
            let base = self.eval(x, y, z)?;
            for (a, b, c) in [(y, x, z), (x, z, y), (z, y, x), (y, z, x), (z, x, y)] {
                let other = self.eval(a, b, c)?;
                if (other - base).abs() > SYMMETRY_PROBE_RTOL * (1.0 + base.abs()) {
                    return Err(Error::invalid(format!(
                        "expression is not symmetric: f({x}, {y}, {z}) = {base} but f({a}, {b}, {c}) = {other}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// The FEIM branch `h(t) = f(0, 1-t, t)` should reduce to, with the
    /// constants implied by the normalization constraint. `None` for cases
    /// whose `h` is an unconstrained constant (`μ ≡ 0`) or unknown (user
    /// expressions).
    pub fn expected_h(&self) -> Option<HFn> {
        match &self.case {
            Case::Projection { mu, l, .. } if !mu.is_zero() => Some(HFn::Projection {
                mu: mu.clone(),
                l: l.clone(),
                c: 0.0,
            }),
            Case::One { .. } => Some(HFn::One {
                l: LogFn::zero(self.k),
                c: 0.0,
            }),
            Case::Other { mu, b, .. } => Some(HFn::Other {
                mu: mu.clone(),
                b: *b,
                c: *b,
            }),
            Case::Shannon { base } => Some(HFn::Projection {
                mu: MultFn::identity(),
                l: LogFn::with_base(1, *base).ok()?,
                c: 0.0,
            }),
            _ => None,
        }
    }

    fn check_args(&self, args: [&PosVec; 3]) -> Result<()> {
        for a in args {
            if a.dim() != self.k {
                return Err(Error::DimensionMismatch {
                    expected: self.k,
                    got: a.dim(),
                });
            }
        }
        Ok(())
    }

    /// Evaluates `f(x, y, z)`. Arguments must be nonnegative with a strictly
    /// positive sum; apart from Shannon and user expressions, each argument
    /// must be strictly positive or the zero vector, whose `μ`-terms count
    /// as 0.
    pub fn eval(&self, x: &PosVec, y: &PosVec, z: &PosVec) -> Result<f64> {
        self.check_args([x, y, z])?;
        if let Case::UserExpr { expr, .. } = &self.case {
            return Ok(expr.eval(&Bindings::triple(x.coords(), y.coords(), z.coords()))?);
        }
        let sum = symmetric_sum3(x, y, z)?;
        if !sum.is_positive() {
            return Err(Error::domain(format!(
                "x + y + z = {sum} must be strictly positive"
            )));
        }
        let value = match &self.case {
            Case::Projection { mu, l, psi } => {
                let term = |t: &PosVec| -> Result<f64> {
                    match classify_arg(t)? {
                        Arg::Zero => Ok(0.0),
                        Arg::Positive => Ok(mu.eval(t)? * l.eval(t)?),
                    }
                };
                sum3_sorted(term(x)?, term(y)?, term(z)?) + psi.eval(&sum)?
            }
            Case::One { psi } | Case::ZeroMu { psi, .. } => {
                for t in [x, y, z] {
                    classify_arg(t)?;
                }
                psi.eval(&sum)?
            }
            Case::Other { mu, b, psi } => {
                let term = |t: &PosVec| -> Result<f64> {
                    match classify_arg(t)? {
                        Arg::Zero => Ok(0.0),
                        Arg::Positive => mu.eval(t),
                    }
                };
                b * sum3_sorted(term(x)?, term(y)?, term(z)?) + psi.eval(&sum)?
            }
            Case::Shannon { base } => {
                let xlogx = |t: f64| if t == 0.0 { 0.0 } else { t * log_in_base(t, *base) };
                let s = sum.coords()[0];
                sum3_sorted(
                    xlogx(x.coords()[0]),
                    xlogx(y.coords()[0]),
                    xlogx(z.coords()[0]),
                ) - xlogx(s)
            }
            Case::UserExpr { .. } => unreachable!("handled above"),
        };
        if !value.is_finite() {
            return Err(Error::domain(format!("f({x}, {y}, {z}) is not finite")));
        }
        Ok(value)
    }
}

impl TripleFn for TriSolution {
    fn dim(&self) -> usize {
        self.k
    }

    fn eval(&self, x: &PosVec, y: &PosVec, z: &PosVec) -> Result<f64> {
        TriSolution::eval(self, x, y, z)
    }
}
