//! Witness searches: a symmetric multiplicative or logarithmic function on
//! the unit cube must be trivial, so any nontrivial one yields a witness.

use modent::verifier::{oracle_lemma_log, oracle_lemma_mult};
use modent::{LogFn, MultFn, SampleSpec};

fn main() -> modent::Result<()> {
    let spec = SampleSpec::open_cube(2, 100, 0);
    for mu in [MultFn::power(vec![0.5, -1.0])?, MultFn::one(2), MultFn::Zero] {
        let w = oracle_lemma_mult(&mu, &spec)?;
        println!("{mu:?}: found={} gap={:.3e} at {:?}", w.found, w.violation, w.points);
    }
    for l in [LogFn::new(vec![1.0, 3.0])?, LogFn::zero(2)] {
        let w = oracle_lemma_log(&l, &spec)?;
        println!("{l:?}: found={} gap={:.3e}", w.found, w.violation);
    }
    Ok(())
}
