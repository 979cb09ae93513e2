//! Sample-driven checks that turn pointwise residuals into reports.

use rayon::prelude::*;

use super::report::{ResidualReport, Terms, Tolerance, Witness};
use super::residual::{
    ent_special_terms, entropy_classic_terms, exchange_terms, feim_terms, h_symmetry_terms,
    homogeneity_terms, modified_terms, symmetry_terms,
};
use crate::cone::{cw_add, PosVec};
use crate::error::{Error, Result};
use crate::family::MultFn;
use crate::sample::{Region, SampleSpec};
use crate::solutions::{PairFn, PointFn, TripleFn};

/// Evaluates every sample (in parallel), then reduces in index order so the
/// report does not depend on the thread count.
pub(crate) fn run<S, F>(
    equation: &str,
    spec: &SampleSpec,
    samples: &[S],
    tol: Tolerance,
    points: impl Fn(&S) -> Vec<Vec<f64>>,
    eval: F,
) -> Result<ResidualReport>
where
    S: Sync,
    F: Fn(&S) -> Result<Terms> + Sync,
{
    if samples.is_empty() {
        return Err(Error::invalid("no samples to check"));
    }
    let results: Vec<Result<Terms>> = samples.par_iter().map(&eval).collect();
    let mut terms = Vec::with_capacity(results.len());
    for r in results {
        terms.push(r?);
    }
    let mut max = 0.0f64;
    let mut argmax = 0usize;
    let mut worst_ratio = 0.0f64;
    let mut sum = 0.0f64;
    for (i, t) in terms.iter().enumerate() {
        let a = t.residual.abs();
        if a > max {
            max = a;
            argmax = i;
        }
        worst_ratio = worst_ratio.max(tol.ratio(t.residual, t.scale));
        sum += a;
    }
    Ok(ResidualReport {
        equation: equation.to_string(),
        samples: samples.len(),
        max_abs_residual: max,
        mean_abs_residual: sum / samples.len() as f64,
        argmax: points(&samples[argmax]),
        tolerance: tol,
        worst_ratio,
        pass: worst_ratio <= 1.0,
        seed: spec.seed,
    })
}

fn rows(ps: &[PosVec]) -> Vec<Vec<f64>> {
    ps.iter().map(|p| p.coords().to_vec()).collect()
}

fn check_k(spec: &SampleSpec, k: usize) -> Result<()> {
    if spec.k != k {
        return Err(Error::DimensionMismatch {
            expected: k,
            got: spec.k,
        });
    }
    Ok(())
}

fn cone_region(spec: &SampleSpec) -> Result<()> {
    match spec.region {
        Region::Cone { .. } => Ok(()),
        other => Err(Error::invalid(format!(
            "this check samples the cone, got region {other:?}"
        ))),
    }
}

/// The modified entropy equation with the given `μ` on cone triples.
pub fn check_modified<F: TripleFn + ?Sized>(
    f: &F,
    mu: &MultFn,
    spec: &SampleSpec,
    tol: Tolerance,
) -> Result<ResidualReport> {
    check_k(spec, f.dim())?;
    mu.check_dim(f.dim())?;
    cone_region(spec)?;
    let triples = spec.triples()?;
    run("modified", spec, &triples, tol, |t| rows(t), |[x, y, z]| {
        modified_terms(f, mu, x, y, z)
    })
}

/// The classic entropy equation, `k = 1`.
pub fn check_entropy_classic<F: TripleFn + ?Sized>(
    f: &F,
    spec: &SampleSpec,
    tol: Tolerance,
) -> Result<ResidualReport> {
    check_k(spec, f.dim())?;
    cone_region(spec)?;
    let triples = spec.triples()?;
    run("entropy-classic", spec, &triples, tol, |t| rows(t), |[x, y, z]| {
        entropy_classic_terms(f, x, y, z)
    })
}

/// The modified equation specialized to `μ(t) = t`, `k = 1`.
pub fn check_ent_special<F: TripleFn + ?Sized>(
    f: &F,
    spec: &SampleSpec,
    tol: Tolerance,
) -> Result<ResidualReport> {
    check_k(spec, f.dim())?;
    cone_region(spec)?;
    let triples = spec.triples()?;
    run("ent-special", spec, &triples, tol, |t| rows(t), |[x, y, z]| {
        ent_special_terms(f, x, y, z)
    })
}

/// The FEIM equation on pairs of `D`. The spec's region must be `FeimD`.
pub fn check_feim<H: PointFn + ?Sized>(
    h: &H,
    mu: &MultFn,
    spec: &SampleSpec,
    tol: Tolerance,
) -> Result<ResidualReport> {
    check_k(spec, h.dim())?;
    mu.check_dim(h.dim())?;
    if spec.region != Region::FeimD {
        return Err(Error::invalid("the FEIM check samples the region FeimD"));
    }
    let pairs = spec.pairs()?;
    run("feim", spec, &pairs, tol, |p| rows(p), |[x, y]| {
        feim_terms(h, mu, x, y)
    })
}

/// `h(t) - h(1-t)` on the open cube.
pub fn check_h_symmetry<H: PointFn + ?Sized>(
    h: &H,
    spec: &SampleSpec,
    tol: Tolerance,
) -> Result<ResidualReport> {
    check_k(spec, h.dim())?;
    let spec = spec.with_region(Region::OpenCube);
    let points = spec.points()?;
    run("h-symmetry", &spec, &points, tol, |p| vec![p.coords().to_vec()], |t| {
        h_symmetry_terms(h, t)
    })
}

/// `max_σ |f∘σ - f|` over the six permutations of the arguments.
pub fn check_symmetry<F: TripleFn + ?Sized>(
    f: &F,
    spec: &SampleSpec,
    tol: Tolerance,
) -> Result<ResidualReport> {
    check_k(spec, f.dim())?;
    let triples = spec.triples()?;
    run("symmetry", spec, &triples, tol, |t| rows(t), |[x, y, z]| {
        symmetry_terms(f, x, y, z)
    })
}

/// First argument permutation that changes the value of `f`. The triple
/// `(1, 2, 3)` (per coordinate) is tried before the sampled ones.
pub fn symmetry_witness<F: TripleFn + ?Sized>(
    f: &F,
    spec: &SampleSpec,
    tol: Tolerance,
) -> Result<Witness> {
    const CLAIM: &str = "f(x,y,z) is symmetric";
    let k = f.dim();
    let mut candidates = vec![[
        PosVec::ones(k),
        PosVec::ones(k).scale(2.0)?,
        PosVec::ones(k).scale(3.0)?,
    ]];
    candidates.extend(spec.triples()?);
    for [x, y, z] in &candidates {
        let base = f.eval(x, y, z)?;
        for (a, b, c) in [(y, x, z), (x, z, y), (z, y, x), (y, z, x), (z, x, y)] {
            let v = f.eval(a, b, c)?;
            let gap = (v - base).abs();
            if !tol.accepts(gap, base.abs().max(v.abs())) {
                return Ok(Witness::at(CLAIM, &[x, y, z, a, b, c], gap, candidates.len()));
            }
        }
    }
    Ok(Witness::none(CLAIM, candidates.len()))
}

/// `f(λx, λy, λz) - λ^degree f(x, y, z)` with `λ` drawn like a cone
/// coordinate. The report's argmax rows are `x, y, z, [λ]`.
pub fn check_homogeneity<F: TripleFn + ?Sized>(
    f: &F,
    degree: f64,
    spec: &SampleSpec,
    tol: Tolerance,
) -> Result<ResidualReport> {
    check_k(spec, f.dim())?;
    cone_region(spec)?;
    if !degree.is_finite() {
        return Err(Error::invalid("degree must be finite"));
    }
    let mut sampler = spec.sampler()?;
    let samples: Vec<([PosVec; 3], f64)> = (0..spec.count)
        .map(|_| {
            let t = [sampler.vector(), sampler.vector(), sampler.vector()];
            (t, sampler.scalar())
        })
        .collect();
    run(
        "homogeneity",
        spec,
        &samples,
        tol,
        |(t, l)| {
            let mut r = rows(t);
            r.push(vec![*l]);
            r
        },
        |([x, y, z], l)| homogeneity_terms(f, degree, x, y, z, *l),
    )
}

/// Result of [`check_associativity`].
#[derive(Debug, Clone, PartialEq)]
pub struct AssociativityOutcome {
    pub pass: bool,
    /// `A(u, v) - φ(u+v)` with `φ(s) = A(s/2, s/2)`, on sampled pairs.
    pub sum_form: ResidualReport,
    /// `A(x, y+z) - A(y, x+z)` on sampled triples.
    pub exchange: ResidualReport,
    /// A triple violating the exchange identity, if one was found.
    pub witness: Witness,
}

/// The candidate `φ(s) = A(s/2, s/2)`.
pub fn associativity_phi<A: PairFn + ?Sized>(a: &A, s: &PosVec) -> Result<f64> {
    let half = s.scale(0.5)?;
    a.eval(&half, &half)
}

/// Checks that `A` depends on `u + v` only: both the exchange identity
/// `A(x, y+z) = A(y, x+z)` and the reduction `A(u, v) = φ(u+v)` must hold.
/// Evaluation failures are errors; identity failures are reported.
pub fn check_associativity<A: PairFn + ?Sized>(
    a: &A,
    spec: &SampleSpec,
    tol: Tolerance,
) -> Result<AssociativityOutcome> {
    check_k(spec, a.dim())?;
    let pairs = spec.pairs()?;
    let sum_form = run("assoc-sum-form", spec, &pairs, tol, |p| rows(p), |[u, v]| {
        let lhs = a.eval(u, v)?;
        let rhs = associativity_phi(a, &cw_add(u, v)?)?;
        Terms::balance(&[lhs], &[rhs])
    })?;
    let triples = spec.triples()?;
    let exchange = run("assoc-exchange", spec, &triples, tol, |t| rows(t), |[x, y, z]| {
        exchange_terms(a, x, y, z)
    })?;

    const CLAIM: &str = "A(x, y+z) = A(y, x+z)";
    let k = a.dim();
    let mut candidates = vec![[
        PosVec::ones(k),
        PosVec::ones(k).scale(2.0)?,
        PosVec::ones(k).scale(3.0)?,
    ]];
    candidates.extend(triples);
    let mut witness = Witness::none(CLAIM, candidates.len());
    for [x, y, z] in &candidates {
        let t = exchange_terms(a, x, y, z)?;
        if !tol.accepts(t.residual, t.scale) {
            witness = Witness::at(CLAIM, &[x, y, z], t.residual.abs(), candidates.len());
            break;
        }
    }
    Ok(AssociativityOutcome {
        pass: sum_form.pass && exchange.pass && !witness.found,
        sum_form,
        exchange,
        witness,
    })
}
