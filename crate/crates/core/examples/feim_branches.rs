//! The three solution branches of the two-variable equation for h, and the
//! bridge from a three-variable solution to its h.

use modent::solutions::derive_h;
use modent::verifier::{check_feim, check_h_symmetry};
use modent::{HFn, LogFn, MultFn, PsiFn, SampleSpec, Tolerance, TriSolution};

fn main() -> modent::Result<()> {
    let tol = Tolerance::new(1e-10, 1e-10)?;
    let branches = [
        HFn::projection(MultFn::identity(), LogFn::natural(1), 0.7)?,
        HFn::one(LogFn::new(vec![2.0])?, -1.0)?,
        HFn::other(MultFn::power(vec![2.5])?, 1.0, 0.25)?,
        HFn::other(MultFn::power(vec![2.5])?, 1.0, 1.0)?,
        HFn::one(LogFn::zero(1), -1.0)?,
    ];
    for h in &branches {
        let r = check_feim(h, &h.mu(), &SampleSpec::feim(1, 10_000, 0), tol)?;
        let sym = check_h_symmetry(h, &SampleSpec::open_cube(1, 10_000, 0), tol)?;
        println!(
            "{h:?}\n  equation pass={} max|r|={:.2e}; symmetric={} h(x)=h(1-x) on samples: {}",
            r.pass,
            r.max_abs_residual,
            h.is_symmetric(),
            sym.pass
        );
    }

    let f = TriSolution::other(1, MultFn::power(vec![3.0])?, 2.0, PsiFn::Const(-2.0))?;
    let h = derive_h(&f);
    let r = check_feim(&h, &MultFn::power(vec![3.0])?, &SampleSpec::feim(1, 10_000, 0), tol)?;
    println!("h derived from a case-other solution: pass={}", r.pass);
    Ok(())
}
