//! Recovers the case and parameters of one-dimensional solutions from samples.

use std::f64::consts::E;

use modent::verifier::classify;
use modent::{LogFn, MultFn, PsiFn, SampleSpec, TriSolution};

fn main() -> modent::Result<()> {
    let spec = SampleSpec::open_cube(1, 64, 0);
    let solutions = [
        ("shannon, base 2", TriSolution::shannon(2.0)?),
        ("shannon, base e", TriSolution::shannon(E)?),
        ("other α=-1.5 b=0.8", TriSolution::other(1, MultFn::power(vec![-1.5])?, 0.8, PsiFn::Const(-0.8))?),
        ("one", TriSolution::one(1, PsiFn::expr("ln(s[0])^3", 1)?)?),
        ("zero μ", TriSolution::zero_mu(1, LogFn::natural(1), PsiFn::Const(2.0))?),
    ];
    for (name, f) in &solutions {
        let c = classify(f, &spec)?;
        println!("{name:<20} {}", serde_json::to_string(&c).expect("serializes"));
    }
    Ok(())
}
