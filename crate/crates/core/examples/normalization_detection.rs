//! Shows that moving ψ(1) off its required value breaks the equation, and
//! that a μ ≡ 0 solution has no such constraint.

use modent::verifier::oracle_normalization;
use modent::{CaseId, SampleSpec, Tolerance};

fn main() -> modent::Result<()> {
    let spec = SampleSpec::cone(1, 1_000, 0);
    for case in [CaseId::Projection, CaseId::One, CaseId::Other, CaseId::ZeroMu] {
        for delta in [1.0, -1e-3] {
            let w = oracle_normalization(case, delta, &spec, Tolerance::default())?;
            println!(
                "{case:<10} δ={delta:<6} found={:<5} violation={:.4e}",
                w.found, w.violation
            );
        }
    }
    Ok(())
}
