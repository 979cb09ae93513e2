//! Builds one solution per case in dimension 2 and verifies each with its own μ.

use modent::verifier::check_modified;
use modent::{LogFn, MultFn, PsiFn, SampleSpec, Tolerance, TriSolution};

fn main() -> modent::Result<()> {
    let k = 2;
    let solutions = [
        TriSolution::projection(
            k,
            MultFn::coordinate(k, 1)?,
            LogFn::new(vec![0.5, -1.0])?,
            PsiFn::expr("s[0]*ln(s[1]) - ln(s[0])^2", k)?,
        )?,
        TriSolution::one(k, PsiFn::Linear(vec![2.0, -2.0]))?,
        TriSolution::other(k, MultFn::power(vec![2.0, -0.5])?, 1.5, PsiFn::Const(-1.5))?,
        TriSolution::zero_mu(k, LogFn::natural(k), PsiFn::Const(3.0))?,
    ];

    // A constraint violation is refused at construction.
    let refused = TriSolution::other(k, MultFn::power(vec![2.0, 0.0])?, 1.0, PsiFn::Const(0.0));
    println!("other with ψ(1)=0 and b=1: {}", refused.unwrap_err());

    for f in &solutions {
        let mu = f.declared_mu().expect("builtin cases declare μ");
        let r = check_modified(f, &mu, &SampleSpec::cone(k, 20_000, 1), Tolerance::default())?;
        println!(
            "{:<10} {}  pass={} max|r|={:.2e}",
            f.case_id(),
            f.normalization()?,
            r.pass,
            r.max_abs_residual
        );
    }
    Ok(())
}
