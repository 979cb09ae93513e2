use super::tri::{Case, TriSolution};
use super::{PairFn, PointFn, TripleFn};
use crate::cone::PosVec;
use crate::error::{Error, Result};
use crate::family::{log_in_base, log_of_base, LogFn};
use crate::sample::SampleSpec;

/// `F(u, v) = f(0, u, v)`.
#[derive(Debug, Clone, Copy)]
pub struct FView<T> {
    f: T,
}

pub fn derive_f<T: TripleFn>(f: T) -> FView<T> {
    FView { f }
}

impl<T: TripleFn> FView<T> {
    pub fn eval(&self, u: &PosVec, v: &PosVec) -> Result<f64> {
        self.f.eval(&PosVec::zeros(self.f.dim()), u, v)
    }
}

impl<T: TripleFn> PairFn for FView<T> {
    fn dim(&self) -> usize {
        self.f.dim()
    }

    fn eval(&self, u: &PosVec, v: &PosVec) -> Result<f64> {
        FView::eval(self, u, v)
    }
}

/// `h(t) = F(1-t, t)` on `]0,1[^k`.
#[derive(Debug, Clone, Copy)]
pub struct HView<T> {
    f: T,
}

pub fn derive_h<T: TripleFn>(f: T) -> HView<T> {
    HView { f }
}

impl<T: TripleFn> HView<T> {
    pub fn eval(&self, t: &PosVec) -> Result<f64> {
        let s = t.one_minus()?;
        self.f.eval(&PosVec::zeros(self.f.dim()), &s, t)
    }
}

impl<T: TripleFn> PointFn for HView<T> {
    fn dim(&self) -> usize {
        self.f.dim()
    }

    fn eval(&self, t: &PosVec) -> Result<f64> {
        HView::eval(self, t)
    }
}

/// `H(u, v) = F(u, v) - g(u) - g(v)`, where `g` strips the per-argument
/// terms of the solution form so that `H` should depend on `u + v` only.
#[derive(Debug, Clone)]
pub struct ReducedPairMap<'a> {
    f: &'a TriSolution,
}

pub fn reduced_pair_map(f: &TriSolution) -> ReducedPairMap<'_> {
    ReducedPairMap { f }
}

impl ReducedPairMap<'_> {
    fn strip(&self, t: &PosVec) -> Result<f64> {
        Ok(match self.f.case() {
            Case::Projection { mu, l, .. } => mu.eval(t)? * l.eval(t)?,
            Case::Other { mu, b, .. } => b * mu.eval(t)?,
            Case::Shannon { base } => {
                let v = t.coords()[0];
                v * log_in_base(v, *base)
            }
            Case::One { .. } | Case::ZeroMu { .. } | Case::UserExpr { .. } => 0.0,
        })
    }

    pub fn eval(&self, u: &PosVec, v: &PosVec) -> Result<f64> {
        let big_f = derive_f(self.f).eval(u, v)?;
        Ok(big_f - self.strip(u)? - self.strip(v)?)
    }
}

impl PairFn for ReducedPairMap<'_> {
    fn dim(&self) -> usize {
        self.f.k()
    }

    fn eval(&self, u: &PosVec, v: &PosVec) -> Result<f64> {
        ReducedPairMap::eval(self, u, v)
    }
}

/// `φ(x) = x l(x)` on `R_{++}`, which satisfies `φ(xy) = x φ(y) + y φ(x)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Derivation {
    l: LogFn,
}

pub fn phi_from_l(l: &LogFn) -> Result<Derivation> {
    if l.dim() != 1 {
        return Err(Error::invalid(format!(
            "φ(x) = x l(x) is defined for k = 1, got k = {}",
            l.dim()
        )));
    }
    Ok(Derivation { l: l.clone() })
}

impl Derivation {
    pub fn eval(&self, x: f64) -> Result<f64> {
        let p = PosVec::strict(vec![x]).map_err(|_| Error::domain(format!("φ({x}) needs x > 0")))?;
        Ok(x * self.l.eval(&p)?)
    }

    /// `|φ(xy) - xφ(y) - yφ(x)| / (1 + max term)` at one pair.
    pub fn deviation(&self, x: f64, y: f64) -> Result<f64> {
        let lhs = self.eval(x * y)?;
        let a = x * self.eval(y)?;
        let b = y * self.eval(x)?;
        let scale = lhs.abs().max(a.abs()).max(b.abs());
        Ok((lhs - a - b).abs() / (1.0 + scale))
    }

    /// Largest [`Derivation::deviation`] over `n` seeded pairs of the
    /// default cone.
    pub fn probe(&self, n: usize, seed: u64) -> Result<f64> {
        let mut worst: f64 = 0.0;
        for [x, y] in SampleSpec::cone(1, n, seed).pairs()? {
            worst = worst.max(self.deviation(x.coords()[0], y.coords()[0])?);
        }
        Ok(worst)
    }
}

/// `λ ↦ -λ log λ + λ ψ(1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HomogeneityForm {
    pub at_one: f64,
    pub base: f64,
}

pub fn psi_homogeneity_form(at_one: f64, base: f64) -> Result<HomogeneityForm> {
    log_of_base(base)?;
    Ok(HomogeneityForm { at_one, base })
}

impl HomogeneityForm {
    pub fn eval(&self, lambda: f64) -> Result<f64> {
        if !(lambda.is_finite() && lambda > 0.0) {
            return Err(Error::domain(format!("λ = {lambda} must be positive")));
        }
        Ok(-lambda * log_in_base(lambda, self.base) + lambda * self.at_one)
    }

    /// `x log x + y log y + z log z + ψ(x+y+z)` for `k = 1`, using this form
    /// as `ψ` and the convention `0 log 0 = 0`.
    pub fn assemble(&self, x: f64, y: f64, z: f64) -> Result<f64> {
        let xlogx = |t: f64| {
            if t == 0.0 {
                0.0
            } else {
                t * log_in_base(t, self.base)
            }
        };
        Ok(xlogx(x) + xlogx(y) + xlogx(z) + self.eval(x + y + z)?)
    }
}
