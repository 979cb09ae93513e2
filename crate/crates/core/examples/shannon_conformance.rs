//! Checks the Shannon solution against every equation it is expected to solve.

use std::f64::consts::E;

use modent::verifier::{
    check_ent_special, check_entropy_classic, check_homogeneity, check_modified, check_symmetry,
};
use modent::{MultFn, SampleSpec, Tolerance, TriSolution};

fn main() -> modent::Result<()> {
    let f = TriSolution::shannon(E)?;
    let spec = SampleSpec::cone(1, 100_000, 7);
    let tol = Tolerance::default();
    let reports = [
        check_modified(&f, &MultFn::identity(), &spec, tol)?,
        check_entropy_classic(&f, &spec, tol)?,
        check_ent_special(&f, &spec, tol)?,
        check_symmetry(&f, &spec, tol)?,
        check_homogeneity(&f, 1.0, &spec, tol)?,
    ];
    for r in &reports {
        println!(
            "{:<16} pass={} max|r|={:.3e} worst ratio={:.3e}",
            r.equation, r.pass, r.max_abs_residual, r.worst_ratio
        );
    }
    Ok(())
}
