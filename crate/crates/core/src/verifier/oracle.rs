//! Witness searches for the symmetry lemmas and the normalization constraint.

use super::report::{Tolerance, Witness};
use super::residual::modified_terms;
use crate::error::{Error, Result};
use crate::family::{LogFn, MultFn};
use crate::sample::{Region, SampleSpec};
use crate::solutions::{Case, CaseId, PsiFn, TriSolution};

fn cube_points(spec: &SampleSpec) -> Result<Vec<crate::cone::PosVec>> {
    spec.with_region(Region::OpenCube).points()
}

/// Searches `]0,1[^k` for `x` with `μ(x) ≠ μ(1-x)` and returns the point
/// with the largest gap. Nothing is found for `μ ≡ 0` and `μ ≡ 1`.
pub fn oracle_lemma_mult(mu: &MultFn, spec: &SampleSpec) -> Result<Witness> {
    const CLAIM: &str = "μ(x) = μ(1-x) on ]0,1[^k";
    mu.check_dim(spec.k)?;
    let points = cube_points(spec)?;
    let mut best: Option<(usize, f64)> = None;
    for (i, x) in points.iter().enumerate() {
        let gap = (mu.eval(x)? - mu.eval(&x.one_minus()?)?).abs();
        if gap > 0.0 && best.is_none_or(|(_, g)| gap > g) {
            best = Some((i, gap));
        }
    }
    Ok(match best {
        Some((i, gap)) => Witness::at(CLAIM, &[&points[i]], gap, points.len()),
        None => Witness::none(CLAIM, points.len()),
    })
}

/// Searches `]0,1[^k` for `x` with `l(x) ≠ l(1-x)`; nothing is found for
/// `l ≡ 0`.
pub fn oracle_lemma_log(l: &LogFn, spec: &SampleSpec) -> Result<Witness> {
    const CLAIM: &str = "l(x) = l(1-x) on ]0,1[^k";
    if l.dim() != spec.k {
        return Err(Error::DimensionMismatch {
            expected: l.dim(),
            got: spec.k,
        });
    }
    let points = cube_points(spec)?;
    let mut best: Option<(usize, f64)> = None;
    for (i, x) in points.iter().enumerate() {
        let gap = (l.eval(x)? - l.eval(&x.one_minus()?)?).abs();
        if gap > 0.0 && best.is_none_or(|(_, g)| gap > g) {
            best = Some((i, gap));
        }
    }
    Ok(match best {
        Some((i, gap)) => Witness::at(CLAIM, &[&points[i]], gap, points.len()),
        None => Witness::none(CLAIM, points.len()),
    })
}

/// The canonical solution of `case` with `ψ(1)` moved `delta` away from the
/// value the constraint requires:
///
/// * projection: `μ = x_0`, `l = Σ ln x_i`, `ψ ≡ δ`
/// * one: `ψ ≡ δ`
/// * other: `μ = ∏ x_i^2`, `b = 1`, `ψ ≡ -1 + δ`
/// * zero_mu: `l = Σ ln x_i`, `Ψ ≡ δ`
pub fn shifted_solution(case: CaseId, k: usize, delta: f64) -> Result<TriSolution> {
    let c = match case {
        CaseId::Projection => Case::Projection {
            mu: MultFn::coordinate(k, 0)?,
            l: LogFn::natural(k),
            psi: PsiFn::Const(delta),
        },
        CaseId::One => Case::One {
            psi: PsiFn::Const(delta),
        },
        CaseId::Other => Case::Other {
            mu: MultFn::power(vec![2.0; k])?,
            b: 1.0,
            psi: PsiFn::Const(-1.0 + delta),
        },
        CaseId::ZeroMu => Case::ZeroMu {
            l: LogFn::natural(k),
            psi: PsiFn::Const(delta),
        },
        CaseId::Shannon | CaseId::Expr => {
            return Err(Error::invalid(format!(
                "case {case} has no ψ to shift"
            )))
        }
    };
    TriSolution::new_unconstrained(k, c)
}

/// Builds [`shifted_solution`] and looks for a cone triple where the
/// modified equation (with the case's own `μ`) fails at `tol`. The witness
/// is the sample with the largest `|residual|`, which equals
/// `|μ(y+z) δ|` up to rounding.
pub fn oracle_normalization(
    case: CaseId,
    delta: f64,
    spec: &SampleSpec,
    tol: Tolerance,
) -> Result<Witness> {
    if delta == 0.0 || !delta.is_finite() {
        return Err(Error::invalid("δ must be a nonzero finite number"));
    }
    let claim = format!("{case} solution with ψ(1) shifted by {delta} solves the equation");
    let f = shifted_solution(case, spec.k, delta)?;
    let mu = f.declared_mu().expect("builtin cases declare μ");
    let triples = spec.triples()?;
    let mut best: Option<(usize, f64)> = None;
    for (i, [x, y, z]) in triples.iter().enumerate() {
        let t = modified_terms(&f, &mu, x, y, z)?;
        let r = t.residual.abs();
        if !tol.accepts(t.residual, t.scale) && best.is_none_or(|(_, m)| r > m) {
            best = Some((i, r));
        }
    }
    Ok(match best {
        Some((i, r)) => {
            let [x, y, z] = &triples[i];
            Witness::at(&claim, &[x, y, z], r, triples.len())
        }
        None => Witness::none(&claim, triples.len()),
    })
}
