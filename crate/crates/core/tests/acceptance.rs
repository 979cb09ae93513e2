//! Acceptance gate. Runs every criterion at its stated tolerance and prints
//! one PASS/FAIL line per criterion; exits nonzero if any fails.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::f64::consts::E;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use modent::cli::{execute_check, CheckReport, Equation, RunConfig};
use modent::dsl::{self, Bindings, PAIR_VARS, TRIPLE_VARS};
use modent::solutions::{pair_fn, phi_from_l, psi_homogeneity_form};
use modent::verifier::{
    check_associativity, check_ent_special, check_entropy_classic, check_feim, check_h_symmetry,
    check_homogeneity, check_modified, check_symmetry, classify, oracle_lemma_log,
    oracle_lemma_mult, oracle_normalization, residual_modified, shifted_solution,
};
use modent::{
    CaseId, Classification, HFn, LogFn, MultFn, PosVec, PsiFn, Region, SampleSpec,
    SolutionDescriptor, Tolerance, TriSolution,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn ok<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn uniform(r: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    lo + (hi - lo) * r.random::<f64>()
}

fn vec_in(r: &mut ChaCha8Rng, k: usize, lo: f64, hi: f64) -> Vec<f64> {
    (0..k).map(|_| uniform(r, lo, hi)).collect()
}

/// A ψ on R^k with ψ(1) = `at_one`, of a randomly chosen kind.
fn random_psi(r: &mut ChaCha8Rng, k: usize, at_one: f64) -> PsiFn {
    match r.random_range(0..4) {
        0 => PsiFn::Const(at_one),
        1 => {
            let mut a = vec_in(r, k, -2.0, 2.0);
            let rest: f64 = a[1..].iter().sum();
            a[0] = at_one - rest;
            PsiFn::Linear(a)
        }
        2 if at_one == 0.0 => PsiFn::neg_x_log_x(),
        _ => {
            let c = uniform(r, 0.5, 2.0);
            let terms: Vec<String> = (0..k)
                .map(|i| format!("{c} * s[{i}] * ln(s[{i}]) + ln(s[{i}])^2"))
                .collect();
            PsiFn::expr(&format!("{} + ({at_one})", terms.join(" + ")), k).unwrap()
        }
    }
}

/// Exponents in [-2, 3]^k that are neither 0, 1, nor a basis vector.
fn random_alpha(r: &mut ChaCha8Rng, k: usize) -> Vec<f64> {
    loop {
        let a = vec_in(r, k, -2.0, 3.0);
        let mu = MultFn::power(a.clone()).unwrap();
        if !mu.is_one() && !mu.is_projection_structural() {
            return a;
        }
    }
}

fn random_solution(r: &mut ChaCha8Rng, case: CaseId, k: usize) -> TriSolution {
    match case {
        CaseId::Projection => {
            let j = r.random_range(0..k);
            let l = LogFn::new(vec_in(r, k, -2.0, 2.0)).unwrap();
            let psi = random_psi(r, k, 0.0);
            TriSolution::projection(k, MultFn::coordinate(k, j).unwrap(), l, psi).unwrap()
        }
        CaseId::One => TriSolution::one(k, random_psi(r, k, 0.0)).unwrap(),
        CaseId::Other => {
            let mu = MultFn::power(random_alpha(r, k)).unwrap();
            let b = uniform(r, -3.0, 3.0);
            let psi = random_psi(r, k, -b);
            TriSolution::other(k, mu, b, psi).unwrap()
        }
        CaseId::ZeroMu => {
            let l = LogFn::new(vec_in(r, k, -2.0, 2.0)).unwrap();
            let at_one = uniform(r, -5.0, 5.0);
            let psi = random_psi(r, k, at_one);
            TriSolution::zero_mu(k, l, psi).unwrap()
        }
        CaseId::Shannon | CaseId::Expr => unreachable!(),
    }
}

const FOUR_CASES: [CaseId; 4] = [CaseId::Projection, CaseId::One, CaseId::Other, CaseId::ZeroMu];

fn c1_shannon() -> Outcome {
    let f = ok(TriSolution::shannon(E))?;
    let spec = SampleSpec::cone(1, 100_000, 1);
    let tol = Tolerance::default();
    let reports = [
        ok(check_modified(&f, &MultFn::identity(), &spec, tol))?,
        ok(check_entropy_classic(&f, &spec, tol))?,
        ok(check_ent_special(&f, &spec, tol))?,
        ok(check_symmetry(&f, &spec, tol))?,
        ok(check_homogeneity(&f, 1.0, &spec, tol))?,
    ];
    let mut worst: f64 = 0.0;
    for r in &reports {
        ensure!(r.pass, "{} failed: max |r| {:e}, worst ratio {:e}", r.equation, r.max_abs_residual, r.worst_ratio);
        worst = worst.max(r.worst_ratio);
    }
    Ok(format!("5 equations x 1e5 samples, worst ratio {worst:.2e}"))
}

fn c2_three_cases() -> Outcome {
    let mut r = rng(2);
    let tol = Tolerance::default();
    let mut n = 0;
    let mut worst: f64 = 0.0;
    for k in 1..=3 {
        for case in FOUR_CASES {
            for i in 0..20 {
                let f = random_solution(&mut r, case, k);
                let mu = f.declared_mu().unwrap();
                let spec = SampleSpec::cone(k, 10_000, 1000 * k as u64 + i);
                let rep = ok(check_modified(&f, &mu, &spec, tol))?;
                ensure!(
                    rep.pass,
                    "{case} k={k} #{i} failed: max |r| {:e} ratio {:e} at {:?}\n{}",
                    rep.max_abs_residual,
                    rep.worst_ratio,
                    rep.argmax,
                    f.to_descriptor().to_json()
                );
                worst = worst.max(rep.worst_ratio);
                n += 1;
            }
        }
    }
    Ok(format!("{n} solutions x 1e4 samples, worst ratio {worst:.2e}"))
}

fn c3_normalization() -> Outcome {
    let tol = Tolerance::default();
    let mut checked = 0;
    for k in 1..=3 {
        let spec = SampleSpec::cone(k, 1000, 30 + k as u64);
        for case in FOUR_CASES {
            for delta in [1.0, -1.0, 1e-3, -1e-3] {
                let w = ok(oracle_normalization(case, delta, &spec, tol))?;
                if case == CaseId::ZeroMu {
                    ensure!(!w.found, "zero_mu reported a violation {:e}", w.violation);
                    continue;
                }
                ensure!(w.found, "{case} k={k} δ={delta}: no violation found");
                ensure!(
                    w.violation >= 0.5 * delta.abs(),
                    "{case} k={k} δ={delta}: violation {:e} < |δ|/2",
                    w.violation
                );
                if case == CaseId::One {
                    ensure!(w.violation == delta.abs(), "one: violation {:e} != |δ|", w.violation);
                }
                // Brute force at 10 points: residual = -μ(y+z) δ.
                let f = ok(shifted_solution(case, k, delta))?;
                let mu = f.declared_mu().unwrap();
                for [x, y, z] in ok(SampleSpec::cone(k, 10, 99).triples())? {
                    let res = ok(residual_modified(&f, &mu, &x, &y, &z))?;
                    let expect = -ok(mu.eval(&ok(y.add(&z))?))? * delta;
                    ensure!(
                        (res - expect).abs() <= 1e-9 * (1.0 + expect.abs()),
                        "{case} k={k}: residual {res:e} vs -μ(y+z)δ = {expect:e}"
                    );
                }
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} shifted solutions detected, zero_mu never fails"))
}

fn c4_feim() -> Outcome {
    let mut r = rng(4);
    let tol = Tolerance {
        atol: 1e-10,
        rtol: 1e-10,
    };
    let sym_tol = Tolerance {
        atol: 1e-12,
        rtol: 1e-12,
    };
    let mut n = 0;
    let mut worst: f64 = 0.0;
    for k in 1..=3 {
        for trial in 0..5u64 {
            let l = LogFn::new(vec_in(&mut r, k, -2.0, 2.0)).unwrap();
            let j = r.random_range(0..k);
            let c = uniform(&mut r, -3.0, 3.0);
            let b = uniform(&mut r, -3.0, 3.0);
            let mu = MultFn::power(random_alpha(&mut r, k)).unwrap();
            let coord = MultFn::coordinate(k, j).unwrap();
            let branches = [
                (ok(HFn::projection(coord.clone(), l.clone(), c))?, false),
                (ok(HFn::projection(coord, l.clone(), 0.0))?, true),
                (ok(HFn::one(l.clone(), c))?, false),
                (ok(HFn::one(LogFn::zero(k), c))?, true),
                (ok(HFn::other(mu.clone(), b, c))?, false),
                (ok(HFn::other(mu, b, b))?, true),
            ];
            for (h, symmetric) in branches {
                let spec = SampleSpec::feim(k, 10_000, 400 + trial);
                let rep = ok(check_feim(&h, &h.mu(), &spec, tol))?;
                ensure!(rep.pass, "{h:?}: FEIM max |r| {:e} ratio {:e}", rep.max_abs_residual, rep.worst_ratio);
                worst = worst.max(rep.worst_ratio);
                if symmetric {
                    let s = ok(check_h_symmetry(&h, &SampleSpec::open_cube(k, 10_000, trial), sym_tol))?;
                    ensure!(s.pass, "{h:?}: h(x) != h(1-x), max {:e}", s.max_abs_residual);
                }
                n += 1;
            }
        }
    }
    Ok(format!("{n} branches x 1e4 pairs, worst ratio {worst:.2e}"))
}

fn c5_lemmas() -> Outcome {
    let mut r = rng(5);
    let mut min_gap = f64::INFINITY;
    for trial in 0..100u64 {
        let k = r.random_range(1..=3);
        let alpha = loop {
            let a = vec_in(&mut r, k, -3.0, 3.0);
            if a.iter().any(|v| *v != 0.0) {
                break a;
            }
        };
        let spec = SampleSpec::open_cube(k, 100, trial);
        let w = ok(oracle_lemma_mult(&MultFn::power(alpha.clone()).unwrap(), &spec))?;
        ensure!(w.found && w.violation > 1e-6, "α={alpha:?}: gap {:e}", w.violation);
        min_gap = min_gap.min(w.violation);

        let c = vec_in(&mut r, k, -3.0, 3.0);
        let w = ok(oracle_lemma_log(&LogFn::new(c.clone()).unwrap(), &spec))?;
        ensure!(w.found && w.violation > 1e-6, "c={c:?}: gap {:e}", w.violation);
        min_gap = min_gap.min(w.violation);
    }
    for k in 1..=3 {
        let spec = SampleSpec::open_cube(k, 100, 0);
        ensure!(!ok(oracle_lemma_mult(&MultFn::one(k), &spec))?.found, "μ ≡ 1 produced a witness");
        ensure!(!ok(oracle_lemma_mult(&MultFn::Zero, &spec))?.found, "μ ≡ 0 produced a witness");
        ensure!(!ok(oracle_lemma_log(&LogFn::zero(k), &spec))?.found, "l ≡ 0 produced a witness");
    }
    Ok(format!("200 witnesses, smallest gap {min_gap:.2e}; none for μ≡1, μ≡0, l≡0"))
}

fn c6_associativity() -> Outcome {
    let mut r = rng(6);
    let outer = ["ln(1 + {})", "exp(-{} / 7)", "({})^{p}", "abs({} - 5)^{p} + 1", "1 / (1 + {})", "{} * ln({})"];
    let tol = Tolerance::default();
    for i in 0..10u64 {
        let k = r.random_range(1..=2);
        let sum = (0..k)
            .map(|j| format!("(x[{j}] + y[{j}])"))
            .collect::<Vec<_>>()
            .join(" + ");
        let mut src = format!("({sum})");
        for _ in 0..r.random_range(1..=2) {
            let p = uniform(&mut r, 0.5, 2.0);
            let t = outer[r.random_range(0..outer.len())];
            src = t.replace("{p}", &format!("{p}")).replace("{}", &format!("({src})"));
        }
        let expr = ok(dsl::parse(&src, k, PAIR_VARS))?;
        let a = pair_fn(k, |u: &PosVec, v: &PosVec| {
            Ok(expr.eval(&Bindings::pair(u.coords(), v.coords()))?)
        });
        let out = ok(check_associativity(&a, &SampleSpec::cone(k, 2000, i), tol))?;
        ensure!(
            out.pass,
            "A = {src} failed: sum form {:e}, exchange {:e}",
            out.sum_form.worst_ratio,
            out.exchange.worst_ratio
        );
    }
    for (name, src, want) in [("u·v", "x[0]*y[0]", 3.0), ("u", "x[0]", 1.0)] {
        let expr = ok(dsl::parse(src, 1, PAIR_VARS))?;
        let a = pair_fn(1, |u: &PosVec, v: &PosVec| {
            Ok(expr.eval(&Bindings::pair(u.coords(), v.coords()))?)
        });
        let out = ok(check_associativity(&a, &SampleSpec::cone(1, 2000, 0), tol))?;
        ensure!(!out.pass && out.witness.found, "A = {name} passed");
        ensure!(out.witness.violation == want, "A = {name}: witness gap {}", out.witness.violation);
    }
    Ok("10 sum-functions pass; u·v and u fail with witnesses at (1,2,3)".into())
}

fn c7_derivation() -> Outcome {
    let mut worst: f64 = 0.0;
    for (i, c) in [1.0, -0.5, 2.0 / std::f64::consts::LN_2].into_iter().enumerate() {
        let phi = ok(phi_from_l(&ok(LogFn::new(vec![c]))?))?;
        let d = ok(phi.probe(10_000, i as u64))?;
        ensure!(d <= 1e-10, "c={c}: relative deviation {d:e}");
        worst = worst.max(d);
    }
    Ok(format!("3 logarithms x 1e4 pairs, worst relative deviation {worst:.2e}"))
}

fn c8_homogeneity_form() -> Outcome {
    let form = ok(psi_homogeneity_form(0.0, E))?;
    let xlogx = |t: f64| t * t.ln();
    let mut worst: f64 = 0.0;
    for [x, y, z] in ok(SampleSpec::cone(1, 1000, 8).triples())? {
        let (x, y, z) = (x.coords()[0], y.coords()[0], z.coords()[0]);
        let closed = xlogx(x) + xlogx(y) + xlogx(z) - xlogx(x + y + z);
        let assembled = ok(form.assemble(x, y, z))?;
        worst = worst.max((assembled - closed).abs());
    }
    ensure!(worst <= 1e-12, "max difference {worst:e}");
    Ok(format!("1e3 points, max difference {worst:.2e}"))
}

fn c9_classify() -> Outcome {
    let mut r = rng(9);
    let spec = SampleSpec::open_cube(1, 64, 0);
    let mut worst: f64 = 0.0;
    let mut err = |got: f64, want: f64, what: &str| -> Result<(), String> {
        let e = (got - want).abs();
        worst = worst.max(e);
        ensure!(e <= 1e-6, "{what}: got {got}, want {want}");
        Ok(())
    };
    match ok(classify(&ok(TriSolution::shannon(E))?, &spec))? {
        Classification::Projection { alpha, base, .. } => {
            err(alpha[0], 1.0, "shannon α")?;
            err(base, E, "shannon base")?;
        }
        other => return Err(format!("shannon classified as {other:?}")),
    }
    for _ in 0..10 {
        let alpha = loop {
            let a = uniform(&mut r, -2.0, 3.0);
            if a.abs() > 1e-3 && (a - 1.0).abs() > 1e-3 {
                break a;
            }
        };
        let b = uniform(&mut r, -3.0, 3.0);
        let f = ok(TriSolution::other(1, MultFn::power(vec![alpha]).unwrap(), b, random_psi(&mut r, 1, -b)))?;
        match ok(classify(&f, &spec))? {
            Classification::Other { alpha: a, b: bb, .. } => {
                err(a[0], alpha, "other α")?;
                err(bb, b, "other b")?;
            }
            other => return Err(format!("other(α={alpha}, b={b}) classified as {other:?}")),
        }

        let c = uniform(&mut r, 0.2, 3.0);
        let l = LogFn::new(vec![c]).unwrap();
        let f = ok(TriSolution::projection(1, MultFn::identity(), l, random_psi(&mut r, 1, 0.0)))?;
        match ok(classify(&f, &spec))? {
            Classification::Projection { alpha, l_coeff, .. } => {
                err(alpha[0], 1.0, "projection α")?;
                err(l_coeff, c, "projection l")?;
            }
            other => return Err(format!("projection(c={c}) classified as {other:?}")),
        }

        let f = ok(TriSolution::one(1, random_psi(&mut r, 1, 0.0)))?;
        let got = ok(classify(&f, &spec))?;
        ensure!(got == Classification::One, "one classified as {got:?}");

        let at_one = uniform(&mut r, 0.5, 5.0);
        let f = ok(TriSolution::zero_mu(1, LogFn::natural(1), PsiFn::Const(at_one)))?;
        match ok(classify(&f, &spec))? {
            Classification::ZeroMu { psi_at_one } => err(psi_at_one, at_one, "zero_mu ψ(1)")?,
            other => return Err(format!("zero_mu classified as {other:?}")),
        }
    }
    Ok(format!("41 solutions, worst parameter error {worst:.2e}"))
}

fn c10_determinism() -> Outcome {
    let one = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let many = rayon::ThreadPoolBuilder::new().num_threads(8).build().unwrap();
    let shannon = SolutionDescriptor::from_solution(&ok(TriSolution::shannon(E))?);
    let other = ok(TriSolution::other(
        2,
        MultFn::power(vec![1.5, -0.5]).unwrap(),
        2.0,
        PsiFn::Linear(vec![-1.0, -1.0]),
    ))?
    .to_descriptor();
    let broken = ok(SolutionDescriptor::from_json(
        r#"{"k":1,"case":"one","psi":{"kind":"expr","expr":"s[0]"}}"#,
    ))?;
    let cases = [
        (&shannon, Equation::Modified),
        (&shannon, Equation::Homogeneity),
        (&shannon, Equation::EntropyClassic),
        (&other, Equation::Modified),
        (&other, Equation::Feim),
        (&other, Equation::Assoc),
        (&broken, Equation::Modified),
    ];
    for (seed, (desc, eq)) in cases.into_iter().enumerate() {
        let region = if eq == Equation::Feim { Region::FeimD } else { Region::default() };
        let config = RunConfig {
            subcommand: "check".into(),
            descriptor: None,
            equation: Some(eq),
            sample: SampleSpec::new(desc.k, 20_000, seed as u64, region),
            tolerance: Some(Tolerance::default()),
            degree: (eq == Equation::Homogeneity).then_some(1.0),
            oracle: None,
            output: None,
        };
        let a = one.install(|| execute_check(&config, desc)).map_err(|e| e.message)?;
        let json = serde_json::to_string(&a).unwrap();
        let saved: CheckReport = serde_json::from_str(&json).map_err(|e| e.to_string())?;
        let b = many
            .install(|| execute_check(&saved.config, &saved.solution))
            .map_err(|e| e.message)?;
        ensure!(
            a.report.max_abs_residual.to_bits() == b.report.max_abs_residual.to_bits()
                && saved.report.max_abs_residual.to_bits() == b.report.max_abs_residual.to_bits()
                && a.pass() == b.pass()
                && a.report.argmax == b.report.argmax,
            "{eq:?}: 1-thread {:e} vs replayed 8-thread {:e}",
            a.report.max_abs_residual,
            b.report.max_abs_residual
        );
        ensure!(
            (a.report.mean_abs_residual - b.report.mean_abs_residual).abs() <= 1e-15,
            "{eq:?}: means differ"
        );
    }
    Ok(format!("{} configurations replayed bit-identically on 1 and 8 threads", cases.len()))
}

/// Random source text: whitespace, redundant parentheses, every operator,
/// function, constant, and variable family.
fn random_source(r: &mut ChaCha8Rng, depth: u32) -> String {
    let ws = |r: &mut ChaCha8Rng| [" ", "", "  ", "\n"][r.random_range(0..4)];
    if depth == 0 || r.random_range(0..4) == 0 {
        return match r.random_range(0..5) {
            0 => format!("{}", r.random_range(0..1000)),
            1 => format!("{:.3}", uniform(r, 0.0, 100.0)),
            2 => format!("{}e{}", r.random_range(1..10), r.random_range(-3..4)),
            3 => ["e", "pi"][r.random_range(0..2)].to_string(),
            _ => format!("{}[{}]", ["x", "y", "z"][r.random_range(0..3)], r.random_range(0..3)),
        };
    }
    let a = random_source(r, depth - 1);
    match r.random_range(0..4) {
        0 => format!("-{}{a}", ws(r)),
        1 => format!(
            "{}({}{a}{})",
            ["ln", "log2", "log10", "exp", "abs"][r.random_range(0..5)],
            ws(r),
            ws(r)
        ),
        2 => format!("({a})"),
        _ => {
            let b = random_source(r, depth - 1);
            let op = ["+", "-", "*", "/", "^"][r.random_range(0..5)];
            format!("{a}{}{op}{}{b}", ws(r), ws(r))
        }
    }
}

fn c11_dsl() -> Outcome {
    let num = |s: &str| -> Result<f64, String> {
        ok(ok(dsl::parse(s, 1, TRIPLE_VARS))?.eval(&Bindings::default()))
    };
    ensure!(num("2+3*4^2")? == 50.0, "2+3*4^2 != 50");
    ensure!(num("-2^2")? == -4.0, "-2^2 != -4");
    let mut r = rng(11);
    for i in 0..1000 {
        let src = random_source(&mut r, 6);
        let e = dsl::parse(&src, 3, TRIPLE_VARS).map_err(|e| format!("#{i} {src:?}: {e}"))?;
        let printed = e.to_string();
        let back = dsl::parse(&printed, 3, TRIPLE_VARS).map_err(|e| format!("#{i} {printed:?}: {e}"))?;
        ensure!(back == e, "#{i}: {src:?} printed as {printed:?} reparses differently");
        ensure!(back.to_string() == printed, "#{i}: printing is not stable");
    }
    Ok("precedence vectors and 1000 generated expressions round-trip".into())
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("Shannon conformance", c1_shannon),
        ("three-case conformance", c2_three_cases),
        ("normalization detection", c3_normalization),
        ("FEIM branch conformance", c4_feim),
        ("lemma oracles", c5_lemmas),
        ("associativity reduction", c6_associativity),
        ("derivation-like property", c7_derivation),
        ("homogeneity derivation", c8_homogeneity_form),
        ("classification", c9_classify),
        ("determinism", c10_determinism),
        ("DSL", c11_dsl),
    ];
    std::panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, run)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS  {:>2}. {name}: {detail} [{secs:.1}s]", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL  {:>2}. {name}: {why} [{secs:.1}s]", i + 1);
            }
        }
    }
    println!("acceptance: {} of 11 criteria pass", 11 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
