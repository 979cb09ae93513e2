//! The `modent` command line: `construct`, `check`, `oracle`, `classify`.
//!
//! Exit codes: 0 pass, 1 verification failure, 2 usage or configuration
//! error, 3 domain error during evaluation.

use std::ffi::OsString;
use std::f64::consts::E;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::family::{LogFn, MultFn};
use crate::solutions::{
    derive_h, reduced_pair_map, CaseId, PsiSpec, SolutionDescriptor, TriSolution,
};
use crate::verifier::{
    check_associativity, check_ent_special, check_entropy_classic, check_feim, check_homogeneity,
    check_modified, check_symmetry, classify, oracle_lemma_log, oracle_lemma_mult,
    oracle_normalization, symmetry_witness, Classification, Region, ResidualReport, SampleSpec,
    Tolerance, Witness,
};

pub const TOOL: &str = "modent";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "modent", version, about = "Construct and verify solutions of the modified entropy equation")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a solution descriptor after checking its normalization constraint.
    Construct(ConstructArgs),
    /// Verify an equation on seeded samples and write a residual report.
    Check(CheckArgs),
    /// Run a witness-search oracle.
    Oracle(OracleArgs),
    /// Estimate the case and parameters of a k = 1 solution.
    Classify(ClassifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CaseArg {
    Projection,
    One,
    Other,
    ZeroMu,
    Shannon,
    Expr,
}

impl From<CaseArg> for CaseId {
    fn from(c: CaseArg) -> Self {
        match c {
            CaseArg::Projection => CaseId::Projection,
            CaseArg::One => CaseId::One,
            CaseArg::Other => CaseId::Other,
            CaseArg::ZeroMu => CaseId::ZeroMu,
            CaseArg::Shannon => CaseId::Shannon,
            CaseArg::Expr => CaseId::Expr,
        }
    }
}

fn parse_base(s: &str) -> Result<f64, String> {
    if s == "e" {
        return Ok(E);
    }
    s.parse::<f64>().map_err(|e| format!("{s:?} is neither \"e\" nor a number: {e}"))
}

#[derive(Debug, Args)]
pub struct ConstructArgs {
    #[arg(long, value_enum)]
    pub case: CaseArg,
    #[arg(long, default_value_t = 1)]
    pub k: usize,
    /// Logarithm base ("e" or a number) for shannon, and for the default l
    /// and neg-x-log-x ψ.
    #[arg(long, value_parser = parse_base)]
    pub base: Option<f64>,
    /// ψ as an expression over s[0..k].
    #[arg(long, group = "psi_kind", allow_hyphen_values = true)]
    pub psi: Option<String>,
    #[arg(long, group = "psi_kind", allow_hyphen_values = true)]
    pub psi_const: Option<f64>,
    #[arg(long, group = "psi_kind", value_delimiter = ',', allow_hyphen_values = true)]
    pub psi_linear: Option<Vec<f64>>,
    #[arg(long, group = "psi_kind")]
    pub psi_neg_x_log_x: bool,
    /// Exponents of μ, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub alpha: Option<Vec<f64>>,
    /// Use μ ≡ 0.
    #[arg(long, value_parser = ["zero"])]
    pub mu: Option<String>,
    /// Coefficients of l, comma separated (default: Σ log_base).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub l: Option<Vec<f64>>,
    #[arg(long, allow_hyphen_values = true)]
    pub b: Option<f64>,
    /// f as an expression over x, y, z (case expr).
    #[arg(long)]
    pub expr: Option<String>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Equation {
    Modified,
    EntropyClassic,
    EntSpecial,
    Feim,
    Assoc,
    Symmetry,
    Homogeneity,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    /// Solution descriptor (JSON).
    #[arg(required_unless_present = "replay")]
    pub descriptor: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Equation::Modified)]
    pub equation: Equation,
    #[arg(long, default_value_t = 100_000)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Cone sampling range (lo, hi].
    #[arg(long, default_value_t = 0.0)]
    pub lo: f64,
    #[arg(long, default_value_t = 10.0)]
    pub hi: f64,
    #[arg(long, default_value_t = 1e-9)]
    pub atol: f64,
    #[arg(long, default_value_t = 1e-9)]
    pub rtol: f64,
    /// Degree for the homogeneity check.
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub degree: f64,
    /// Worker threads (default: all cores). Does not affect results.
    #[arg(long)]
    pub threads: Option<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Re-run the configuration embedded in a previous report and compare.
    #[arg(long, conflicts_with = "descriptor")]
    pub replay: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Lemma {
    MultSymmetry,
    LogSymmetry,
    Normalization,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[arg(long, value_enum)]
    pub lemma: Lemma,
    /// Exponents of μ (mult-symmetry).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub alpha: Option<Vec<f64>>,
    /// Use μ ≡ 0 (mult-symmetry).
    #[arg(long)]
    pub zero: bool,
    /// Coefficients of l (log-symmetry).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub coeffs: Option<Vec<f64>>,
    /// Case whose normalization is probed.
    #[arg(long, value_enum)]
    pub case: Option<CaseArg>,
    #[arg(long, allow_hyphen_values = true)]
    pub delta: Option<f64>,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long, default_value_t = 100)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1e-9)]
    pub atol: f64,
    #[arg(long, default_value_t = 1e-9)]
    pub rtol: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    pub descriptor: PathBuf,
    /// Number of sampled points of h.
    #[arg(long, default_value_t = 64)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Everything that determines a run's numbers. Embedded in every report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub subcommand: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub descriptor: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub equation: Option<Equation>,
    pub sample: SampleSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<Tolerance>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleConfig {
    pub lemma: Lemma,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu: Option<MultFn>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub l: Option<LogFn>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub case: Option<CaseId>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<f64>,
}

/// Output of `check`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub tool: String,
    pub version: String,
    pub config: RunConfig,
    pub solution: SolutionDescriptor,
    pub report: ResidualReport,
    /// For `assoc`: the `A(u,v) = φ(u+v)` part.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sum_form: Option<ResidualReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl CheckReport {
    pub fn pass(&self) -> bool {
        self.report.pass && self.sum_form.as_ref().is_none_or(|r| r.pass)
    }
}

/// Output of `oracle`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleReport {
    pub tool: String,
    pub version: String,
    pub config: RunConfig,
    pub witness: Witness,
}

/// Output of `classify`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassifyReport {
    pub tool: String,
    pub version: String,
    pub config: RunConfig,
    #[serde(flatten)]
    pub classification: Classification,
}

/// A failed command: exit code plus message.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        Self {
            code: if e.is_domain() { EXIT_DOMAIN } else { EXIT_USAGE },
            message: e.to_string(),
        }
    }
}

type CliResult<T> = Result<T, CliError>;

fn emit<T: Serialize>(value: &T, out: Option<&Path>) -> CliResult<()> {
    let text = serde_json::to_string_pretty(value).expect("reports serialize") + "\n";
    match out {
        Some(p) => std::fs::write(p, text)
            .map_err(|e| CliError::usage(format!("cannot write {}: {e}", p.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .map_err(|e| CliError::usage(format!("cannot write output: {e}")))
        }
    }
}

fn load_descriptor(path: &Path) -> CliResult<SolutionDescriptor> {
    Ok(SolutionDescriptor::load(path)?)
}

/// Builds the descriptor `construct` writes, running the checked
/// constructor. Returns the descriptor and the constraint line to echo.
pub fn construct(a: &ConstructArgs) -> CliResult<(SolutionDescriptor, String)> {
    let k = a.k;
    let case = CaseId::from(a.case);
    let base = a.base.unwrap_or(E);
    let psi = if let Some(src) = &a.psi {
        Some(PsiSpec::Expr { expr: src.clone() })
    } else if let Some(v) = a.psi_const {
        Some(PsiSpec::Const { value: v })
    } else if let Some(v) = &a.psi_linear {
        Some(PsiSpec::Linear { a: v.clone() })
    } else if a.psi_neg_x_log_x {
        Some(PsiSpec::NegXLogX { base })
    } else {
        None
    };
    let mu = match (&a.mu, &a.alpha) {
        (Some(_), Some(_)) => return Err(CliError::usage("give either --mu zero or --alpha")),
        (Some(_), None) => Some(MultFn::Zero),
        (None, Some(alpha)) => Some(MultFn::power(alpha.clone())?),
        (None, None) => None,
    };
    let l = match &a.l {
        Some(c) => Some(LogFn::new(c.clone())?),
        None if matches!(case, CaseId::Projection | CaseId::ZeroMu) => {
            Some(LogFn::with_base(k, base)?)
        }
        None => None,
    };
    let desc = SolutionDescriptor {
        k,
        case,
        mu,
        l,
        b: a.b,
        psi,
        base: (case == CaseId::Shannon).then_some(base),
        expr: a.expr.clone(),
    };
    let f = desc.build()?;
    let line = f.normalization()?.to_string();
    Ok((f.to_descriptor(), line))
}

fn cmd_construct(a: ConstructArgs) -> CliResult<i32> {
    let (desc, line) = construct(&a)?;
    eprintln!("{line}");
    emit(&desc, a.out.as_deref())?;
    Ok(EXIT_PASS)
}

/// Runs the check a [`RunConfig`] describes against a descriptor. The
/// solution is loaded without enforcing the normalization constraint, so
/// broken descriptors produce failing reports rather than load errors.
pub fn execute_check(config: &RunConfig, desc: &SolutionDescriptor) -> CliResult<CheckReport> {
    let equation = config
        .equation
        .ok_or_else(|| CliError::usage("configuration names no equation"))?;
    let tol = config.tolerance.unwrap_or_default();
    let spec = &config.sample;
    let f = desc.build_unconstrained()?;
    if spec.k != f.k() {
        return Err(CliError::usage(format!(
            "sample dimension {} does not match descriptor k = {}",
            spec.k,
            f.k()
        )));
    }
    if matches!(equation, Equation::EntropyClassic | Equation::EntSpecial) && f.k() != 1 {
        return Err(CliError::usage(format!(
            "equation {equation:?} is stated for k = 1, descriptor has k = {}",
            f.k()
        )));
    }
    let declared_mu = || {
        f.declared_mu().ok_or_else(|| {
            CliError::usage("descriptor declares no μ; add a \"mu\" field to check this equation")
        })
    };
    let mut sum_form = None;
    let mut witness = None;
    let report = match equation {
        Equation::Modified => check_modified(&f, &declared_mu()?, spec, tol)?,
        Equation::EntropyClassic => check_entropy_classic(&f, spec, tol)?,
        Equation::EntSpecial => check_ent_special(&f, spec, tol)?,
        Equation::Feim => check_feim(&derive_h(&f), &declared_mu()?, spec, tol)?,
        Equation::Assoc => {
            let out = check_associativity(&reduced_pair_map(&f), spec, tol)?;
            sum_form = Some(out.sum_form);
            witness = out.witness.found.then_some(out.witness);
            out.exchange
        }
        Equation::Symmetry => {
            let r = check_symmetry(&f, spec, tol)?;
            if !r.pass {
                witness = Some(symmetry_witness(&f, spec, tol)?);
            }
            r
        }
        Equation::Homogeneity => {
            check_homogeneity(&f, config.degree.unwrap_or(1.0), spec, tol)?
        }
    };
    Ok(CheckReport {
        tool: TOOL.to_string(),
        version: VERSION.to_string(),
        config: config.clone(),
        solution: desc.clone(),
        report,
        sum_form,
        witness,
    })
}

fn with_threads<T: Send>(threads: Option<usize>, job: impl FnOnce() -> T + Send) -> CliResult<T> {
    match threads {
        None => Ok(job()),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| CliError::usage(format!("cannot start {n} threads: {e}")))?;
            Ok(pool.install(job))
        }
    }
}

fn summarize(r: &CheckReport) {
    let status = if r.pass() { "pass" } else { "FAIL" };
    eprintln!(
        "{}: {status}  samples={} max|r|={:e} worst ratio={:.3e} seed={}",
        r.report.equation, r.report.samples, r.report.max_abs_residual, r.report.worst_ratio, r.report.seed
    );
    if let Some(s) = &r.sum_form {
        eprintln!("  sum form: max|r|={:e} pass={}", s.max_abs_residual, s.pass);
    }
    if let Some(w) = &r.witness {
        eprintln!("  witness for \"{}\": {:?} (violation {:e})", w.claim, w.points, w.violation);
    }
}

fn cmd_check(a: CheckArgs) -> CliResult<i32> {
    if let Some(path) = &a.replay {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))?;
        let old: CheckReport = serde_json::from_str(&text)
            .map_err(|e| CliError::usage(format!("bad report {}: {e}", path.display())))?;
        let new = with_threads(a.threads, || execute_check(&old.config, &old.solution))??;
        summarize(&new);
        let same = new.report.max_abs_residual.to_bits() == old.report.max_abs_residual.to_bits()
            && new.pass() == old.pass();
        if a.out.is_some() {
            emit(&new, a.out.as_deref())?;
        }
        if !same {
            eprintln!(
                "replay mismatch: max|r| {:e} (was {:e}), pass {} (was {})",
                new.report.max_abs_residual,
                old.report.max_abs_residual,
                new.pass(),
                old.pass()
            );
            return Ok(EXIT_FAIL);
        }
        eprintln!("replay: identical max residual and pass flag");
        return Ok(if new.pass() { EXIT_PASS } else { EXIT_FAIL });
    }

    let path = a.descriptor.clone().expect("clap enforces descriptor or replay");
    let desc = load_descriptor(&path)?;
    let region = match a.equation {
        Equation::Feim => Region::FeimD,
        _ => Region::Cone { lo: a.lo, hi: a.hi },
    };
    let config = RunConfig {
        subcommand: "check".into(),
        descriptor: Some(path),
        equation: Some(a.equation),
        sample: SampleSpec::new(desc.k, a.samples, a.seed, region),
        tolerance: Some(Tolerance::new(a.atol, a.rtol)?),
        degree: (a.equation == Equation::Homogeneity).then_some(a.degree),
        oracle: None,
        output: a.out.clone(),
    };
    let report = with_threads(a.threads, || execute_check(&config, &desc))??;
    summarize(&report);
    emit(&report, a.out.as_deref())?;
    Ok(if report.pass() { EXIT_PASS } else { EXIT_FAIL })
}

fn oracle_config(a: &OracleArgs) -> CliResult<(OracleConfig, usize)> {
    let mut cfg = OracleConfig {
        lemma: a.lemma,
        mu: None,
        l: None,
        case: None,
        delta: None,
    };
    let k = match a.lemma {
        Lemma::MultSymmetry => {
            let mu = match (&a.alpha, a.zero) {
                (Some(alpha), false) => MultFn::power(alpha.clone())?,
                (None, true) => MultFn::Zero,
                _ => return Err(CliError::usage("mult-symmetry needs exactly one of --alpha or --zero")),
            };
            let k = mu.dim().or(a.k).unwrap_or(1);
            cfg.mu = Some(mu);
            k
        }
        Lemma::LogSymmetry => {
            let c = a
                .coeffs
                .clone()
                .ok_or_else(|| CliError::usage("log-symmetry needs --coeffs"))?;
            let l = LogFn::new(c)?;
            let k = l.dim();
            cfg.l = Some(l);
            k
        }
        Lemma::Normalization => {
            cfg.case = Some(
                a.case
                    .ok_or_else(|| CliError::usage("normalization needs --case"))?
                    .into(),
            );
            cfg.delta = Some(a.delta.ok_or_else(|| CliError::usage("normalization needs --delta"))?);
            a.k.unwrap_or(1)
        }
    };
    if let Some(want) = a.k {
        if want != k {
            return Err(CliError::usage(format!("--k {want} does not match the parameters (k = {k})")));
        }
    }
    Ok((cfg, k))
}

/// Runs the oracle a [`RunConfig`] describes.
pub fn execute_oracle(config: &RunConfig) -> CliResult<Witness> {
    let o = config
        .oracle
        .as_ref()
        .ok_or_else(|| CliError::usage("configuration names no oracle"))?;
    let spec = &config.sample;
    Ok(match o.lemma {
        Lemma::MultSymmetry => oracle_lemma_mult(o.mu.as_ref().expect("set by oracle_config"), spec)?,
        Lemma::LogSymmetry => oracle_lemma_log(o.l.as_ref().expect("set by oracle_config"), spec)?,
        Lemma::Normalization => oracle_normalization(
            o.case.expect("set by oracle_config"),
            o.delta.expect("set by oracle_config"),
            spec,
            config.tolerance.unwrap_or_default(),
        )?,
    })
}

fn cmd_oracle(a: OracleArgs) -> CliResult<i32> {
    let (oracle, k) = oracle_config(&a)?;
    let region = match a.lemma {
        Lemma::Normalization => Region::default(),
        _ => Region::OpenCube,
    };
    let config = RunConfig {
        subcommand: "oracle".into(),
        descriptor: None,
        equation: None,
        sample: SampleSpec::new(k, a.samples, a.seed, region),
        tolerance: Some(Tolerance::new(a.atol, a.rtol)?),
        degree: None,
        oracle: Some(oracle),
        output: a.out.clone(),
    };
    let witness = execute_oracle(&config)?;
    if witness.found {
        eprintln!(
            "witness for \"{}\": {:?} (violation {:e})",
            witness.claim, witness.points, witness.violation
        );
    } else {
        eprintln!(
            "no witness for \"{}\" in {} samples: search budget exhausted",
            witness.claim, witness.searched
        );
    }
    emit(
        &OracleReport {
            tool: TOOL.into(),
            version: VERSION.into(),
            config,
            witness,
        },
        a.out.as_deref(),
    )?;
    Ok(EXIT_PASS)
}

fn cmd_classify(a: ClassifyArgs) -> CliResult<i32> {
    let desc = load_descriptor(&a.descriptor)?;
    let f: TriSolution = desc.build_unconstrained()?;
    let config = RunConfig {
        subcommand: "classify".into(),
        descriptor: Some(a.descriptor.clone()),
        equation: None,
        sample: SampleSpec::open_cube(desc.k, a.samples, a.seed),
        tolerance: None,
        degree: None,
        oracle: None,
        output: a.out.clone(),
    };
    let classification = classify(&f, &config.sample)?;
    let code = if classification.is_classified() {
        EXIT_PASS
    } else {
        EXIT_FAIL
    };
    eprintln!("{}", serde_json::to_string(&classification).expect("serializes"));
    emit(
        &ClassifyReport {
            tool: TOOL.into(),
            version: VERSION.into(),
            config,
            classification,
        },
        a.out.as_deref(),
    )?;
    Ok(code)
}

/// Parses `args` (including the program name) and runs the command,
/// returning the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
        }
    };
    let result = match cli.command {
        Command::Construct(a) => cmd_construct(a),
        Command::Check(a) => cmd_check(a),
        Command::Oracle(a) => cmd_oracle(a),
        Command::Classify(a) => cmd_classify(a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e.message);
            e.code
        }
    }
}
