//! Pointwise residuals (left side minus right side) of each equation.

use super::report::Terms;
use crate::cone::{cw_add, cw_div, PosVec};
use crate::error::{Error, Result};
use crate::family::MultFn;
use crate::sample::in_feim_domain;
use crate::solutions::{PairFn, PointFn, TripleFn};

fn require_positive(args: &[&PosVec]) -> Result<()> {
    for a in args {
        if !a.is_positive() {
            return Err(Error::domain(format!("{a} is not strictly positive")));
        }
    }
    Ok(())
}

fn require_k1(k: usize) -> Result<()> {
    if k != 1 {
        return Err(Error::invalid(format!("equation is stated for k = 1, got k = {k}")));
    }
    Ok(())
}

pub(crate) fn modified_terms<F: TripleFn + ?Sized>(
    f: &F,
    mu: &MultFn,
    x: &PosVec,
    y: &PosVec,
    z: &PosVec,
) -> Result<Terms> {
    require_positive(&[x, y, z])?;
    let zero = PosVec::zeros(f.dim());
    let yz = cw_add(y, z)?;
    let lhs = f.eval(x, y, z)?;
    let head = f.eval(x, &yz, &zero)?;
    let tail = mu.eval(&yz)? * f.eval(&zero, &cw_div(y, &yz)?, &cw_div(z, &yz)?)?;
    Terms::balance(&[lhs], &[head, tail])
}

/// `f(x,y,z) - f(x, y+z, 0) - μ(y+z) f(0, y/(y+z), z/(y+z))`.
pub fn residual_modified<F: TripleFn + ?Sized>(
    f: &F,
    mu: &MultFn,
    x: &PosVec,
    y: &PosVec,
    z: &PosVec,
) -> Result<f64> {
    Ok(modified_terms(f, mu, x, y, z)?.residual)
}

pub(crate) fn entropy_classic_terms<F: TripleFn + ?Sized>(
    f: &F,
    x: &PosVec,
    y: &PosVec,
    z: &PosVec,
) -> Result<Terms> {
    require_k1(f.dim())?;
    require_positive(&[x, y, z])?;
    let zero = PosVec::zeros(1);
    let lhs = f.eval(x, y, z)?;
    let a = f.eval(&cw_add(x, y)?, z, &zero)?;
    let b = f.eval(x, y, &zero)?;
    Terms::balance(&[lhs], &[a, b])
}

/// `f(x,y,z) - f(x+y, z, 0) - f(x, y, 0)` for `k = 1`.
pub fn residual_entropy_classic<F: TripleFn + ?Sized>(
    f: &F,
    x: &PosVec,
    y: &PosVec,
    z: &PosVec,
) -> Result<f64> {
    Ok(entropy_classic_terms(f, x, y, z)?.residual)
}

pub(crate) fn ent_special_terms<F: TripleFn + ?Sized>(
    f: &F,
    x: &PosVec,
    y: &PosVec,
    z: &PosVec,
) -> Result<Terms> {
    require_k1(f.dim())?;
    modified_terms(f, &MultFn::identity(), x, y, z)
}

/// The modified equation with `μ(t) = t`, `k = 1`.
pub fn residual_ent_special<F: TripleFn + ?Sized>(
    f: &F,
    x: &PosVec,
    y: &PosVec,
    z: &PosVec,
) -> Result<f64> {
    Ok(ent_special_terms(f, x, y, z)?.residual)
}

pub(crate) fn feim_terms<H: PointFn + ?Sized>(
    h: &H,
    mu: &MultFn,
    x: &PosVec,
    y: &PosVec,
) -> Result<Terms> {
    if x.dim() != y.dim() {
        return Err(Error::DimensionMismatch {
            expected: x.dim(),
            got: y.dim(),
        });
    }
    if !in_feim_domain(x.coords(), y.coords()) {
        return Err(Error::domain(format!("({x}, {y}) is not in D")));
    }
    let one_minus_x = x.one_minus()?;
    let one_minus_y = y.one_minus()?;
    let a = h.eval(x)?;
    let b = mu.eval(&one_minus_x)? * h.eval(&cw_div(y, &one_minus_x)?)?;
    let c = h.eval(y)?;
    let d = mu.eval(&one_minus_y)? * h.eval(&cw_div(x, &one_minus_y)?)?;
    Terms::balance(&[a, b], &[c, d])
}

/// `h(x) + μ(1-x) h(y/(1-x)) - h(y) - μ(1-y) h(x/(1-y))` on `D`.
pub fn residual_feim<H: PointFn + ?Sized>(
    h: &H,
    mu: &MultFn,
    x: &PosVec,
    y: &PosVec,
) -> Result<f64> {
    Ok(feim_terms(h, mu, x, y)?.residual)
}

pub(crate) fn h_symmetry_terms<H: PointFn + ?Sized>(h: &H, t: &PosVec) -> Result<Terms> {
    let a = h.eval(t)?;
    let b = h.eval(&t.one_minus()?)?;
    Terms::balance(&[a], &[b])
}

pub(crate) fn exchange_terms<A: PairFn + ?Sized>(
    a: &A,
    x: &PosVec,
    y: &PosVec,
    z: &PosVec,
) -> Result<Terms> {
    let lhs = a.eval(x, &cw_add(y, z)?)?;
    let rhs = a.eval(y, &cw_add(x, z)?)?;
    Terms::balance(&[lhs], &[rhs])
}

/// `|f(σ(x,y,z)) - f(x,y,z)|` maximized over the permutations `σ`, with the
/// largest value of `f` seen.
pub(crate) fn symmetry_terms<F: TripleFn + ?Sized>(
    f: &F,
    x: &PosVec,
    y: &PosVec,
    z: &PosVec,
) -> Result<Terms> {
    let base = f.eval(x, y, z)?;
    let mut gap: f64 = 0.0;
    let mut scale = base.abs();
    for (a, b, c) in [(y, x, z), (x, z, y), (z, y, x), (y, z, x), (z, x, y)] {
        let v = f.eval(a, b, c)?;
        gap = gap.max((v - base).abs());
        scale = scale.max(v.abs());
    }
    Ok(Terms {
        residual: gap,
        scale,
    })
}

/// Largest `|f(σ(x,y,z)) - f(x,y,z)|` over all six permutations.
pub fn symmetry_gap<F: TripleFn + ?Sized>(
    f: &F,
    x: &PosVec,
    y: &PosVec,
    z: &PosVec,
) -> Result<f64> {
    Ok(symmetry_terms(f, x, y, z)?.residual)
}

pub(crate) fn homogeneity_terms<F: TripleFn + ?Sized>(
    f: &F,
    degree: f64,
    x: &PosVec,
    y: &PosVec,
    z: &PosVec,
    lambda: f64,
) -> Result<Terms> {
    let lhs = f.eval(&x.scale(lambda)?, &y.scale(lambda)?, &z.scale(lambda)?)?;
    let rhs = lambda.powf(degree) * f.eval(x, y, z)?;
    Terms::balance(&[lhs], &[rhs])
}

/// `f(λx, λy, λz) - λ^d f(x, y, z)`.
pub fn residual_homogeneity<F: TripleFn + ?Sized>(
    f: &F,
    degree: f64,
    x: &PosVec,
    y: &PosVec,
    z: &PosVec,
    lambda: f64,
) -> Result<f64> {
    Ok(homogeneity_terms(f, degree, x, y, z, lambda)?.residual)
}
