//! Solution families of the modified entropy equation
//!
//! ```text
//! f(x, y, z) = f(x, y+z, 0) + μ(y+z) · f(0, y/(y+z), z/(y+z))
//! ```
//!
//! together with the branches of the fundamental equation of information of
//! multiplicative type ([`HFn`]) and the views `F(u,v) = f(0,u,v)` and
//! `h(t) = F(1-t, t)` that connect the two.

mod descriptor;
mod feim;
mod psi;
mod tri;
mod views;

pub use descriptor::{PsiSpec, SolutionDescriptor};
pub use feim::HFn;
pub use psi::PsiFn;
pub use tri::{Case, CaseId, NormalizationCheck, TriSolution, EXPR_CONSTRAINT_TOL};
pub use views::{
    derive_f, derive_h, phi_from_l, psi_homogeneity_form, reduced_pair_map, Derivation, FView,
    HView, HomogeneityForm, ReducedPairMap,
};

use crate::cone::PosVec;
use crate::error::Result;

/// A real function of three points of the cone, such as a candidate
/// solution `f(x, y, z)`.
pub trait TripleFn: Sync {
    fn dim(&self) -> usize;
    fn eval(&self, x: &PosVec, y: &PosVec, z: &PosVec) -> Result<f64>;
}

/// A real function of two points, such as `F(u, v)` or an associativity
/// candidate `A(u, v)`.
pub trait PairFn: Sync {
    fn dim(&self) -> usize;
    fn eval(&self, u: &PosVec, v: &PosVec) -> Result<f64>;
}

/// A real function of one point, such as `h(t)` on `]0,1[^k`.
pub trait PointFn: Sync {
    fn dim(&self) -> usize;
    fn eval(&self, t: &PosVec) -> Result<f64>;
}

impl<T: TripleFn + ?Sized> TripleFn for &T {
    fn dim(&self) -> usize {
        (**self).dim()
    }
    fn eval(&self, x: &PosVec, y: &PosVec, z: &PosVec) -> Result<f64> {
        (**self).eval(x, y, z)
    }
}

impl<T: PairFn + ?Sized> PairFn for &T {
    fn dim(&self) -> usize {
        (**self).dim()
    }
    fn eval(&self, u: &PosVec, v: &PosVec) -> Result<f64> {
        (**self).eval(u, v)
    }
}

impl<T: PointFn + ?Sized> PointFn for &T {
    fn dim(&self) -> usize {
        (**self).dim()
    }
    fn eval(&self, t: &PosVec) -> Result<f64> {
        (**self).eval(t)
    }
}

/// Adapts a closure to [`TripleFn`].
pub struct FnTriple<F> {
    k: usize,
    f: F,
}

pub fn triple_fn<F>(k: usize, f: F) -> FnTriple<F>
where
    F: Fn(&PosVec, &PosVec, &PosVec) -> Result<f64> + Sync,
{
    FnTriple { k, f }
}

impl<F> TripleFn for FnTriple<F>
where
    F: Fn(&PosVec, &PosVec, &PosVec) -> Result<f64> + Sync,
{
    fn dim(&self) -> usize {
        self.k
    }
    fn eval(&self, x: &PosVec, y: &PosVec, z: &PosVec) -> Result<f64> {
        (self.f)(x, y, z)
    }
}

/// Adapts a closure to [`PairFn`].
pub struct FnPair<F> {
    k: usize,
    f: F,
}

pub fn pair_fn<F>(k: usize, f: F) -> FnPair<F>
where
    F: Fn(&PosVec, &PosVec) -> Result<f64> + Sync,
{
    FnPair { k, f }
}

impl<F> PairFn for FnPair<F>
where
    F: Fn(&PosVec, &PosVec) -> Result<f64> + Sync,
{
    fn dim(&self) -> usize {
        self.k
    }
    fn eval(&self, u: &PosVec, v: &PosVec) -> Result<f64> {
        (self.f)(u, v)
    }
}

/// Adapts a closure to [`PointFn`].
pub struct FnPoint<F> {
    k: usize,
    f: F,
}

pub fn point_fn<F>(k: usize, f: F) -> FnPoint<F>
where
    F: Fn(&PosVec) -> Result<f64> + Sync,
{
    FnPoint { k, f }
}

impl<F> PointFn for FnPoint<F>
where
    F: Fn(&PosVec) -> Result<f64> + Sync,
{
    fn dim(&self) -> usize {
        self.k
    }
    fn eval(&self, t: &PosVec) -> Result<f64> {
        (self.f)(t)
    }
}
