//! Pair maps satisfying the exchange identity depend only on u + v.

use modent::dsl::{self, Bindings, PAIR_VARS};
use modent::solutions::pair_fn;
use modent::verifier::{associativity_phi, check_associativity};
use modent::{PosVec, SampleSpec, Tolerance};

fn main() -> modent::Result<()> {
    let spec = SampleSpec::cone(1, 5_000, 0);
    for src in ["ln(1 + x[0] + y[0])", "(x[0] + y[0])^1.5", "x[0] * y[0]", "x[0]"] {
        let e = dsl::parse(src, 1, PAIR_VARS)?;
        let a = pair_fn(1, |u: &PosVec, v: &PosVec| Ok(e.eval(&Bindings::pair(u.coords(), v.coords()))?));
        let out = check_associativity(&a, &spec, Tolerance::default())?;
        if out.pass {
            let phi = associativity_phi(&a, &PosVec::strict(vec![4.0])?)?;
            println!("{src:<22} depends on u+v; φ(4) = {phi}");
        } else {
            println!(
                "{src:<22} witness {:?}, gap {}",
                out.witness.points, out.witness.violation
            );
        }
    }
    Ok(())
}
