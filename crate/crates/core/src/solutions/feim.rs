use super::PointFn;
use crate::cone::PosVec;
use crate::error::{Error, Result};
use crate::family::{LogFn, MultFn};

/// A solution branch of the fundamental equation of information of
/// multiplicative type,
///
/// ```text
/// h(x) + μ(1-x) h(y/(1-x)) = h(y) + μ(1-y) h(x/(1-y)),   (x, y) ∈ D.
/// ```
#[derive(Debug, Clone, PartialEq)]
pub enum HFn {
    /// `μ(1-x) l(1-x) + μ(x) (l(x) + c)` for a projection `μ`.
    Projection { mu: MultFn, l: LogFn, c: f64 },
    /// `l(1-x) + c`, paired with `μ ≡ 1`.
    One { l: LogFn, c: f64 },
    /// `b μ(1-x) + c μ(x) - b` for any other multiplicative `μ`.
    Other { mu: MultFn, b: f64, c: f64 },
}

impl HFn {
    pub fn projection(mu: MultFn, l: LogFn, c: f64) -> Result<Self> {
        mu.check_dim(l.dim())?;
        if !mu.is_projection() {
            return Err(Error::invalid("projection branch needs μ = 0 or a coordinate map"));
        }
        finite(c)?;
        Ok(HFn::Projection { mu, l, c })
    }

    pub fn one(l: LogFn, c: f64) -> Result<Self> {
        finite(c)?;
        Ok(HFn::One { l, c })
    }

    pub fn other(mu: MultFn, b: f64, c: f64) -> Result<Self> {
        if mu.is_zero() || mu.is_projection_structural() {
            return Err(Error::invalid("μ is a projection; use the projection branch"));
        }
        if mu.is_one() {
            return Err(Error::invalid("μ ≡ 1; use the one branch"));
        }
        finite(b)?;
        finite(c)?;
        Ok(HFn::Other { mu, b, c })
    }

    pub fn dim(&self) -> usize {
        match self {
            HFn::Projection { l, .. } | HFn::One { l, .. } => l.dim(),
            HFn::Other { mu, .. } => mu.dim().unwrap_or(1),
        }
    }

    /// The multiplicative function the branch solves the equation with.
    pub fn mu(&self) -> MultFn {
        match self {
            HFn::Projection { mu, .. } | HFn::Other { mu, .. } => mu.clone(),
            HFn::One { l, .. } => MultFn::one(l.dim()),
        }
    }

    /// True for the restrictions that satisfy `h(x) = h(1-x)`.
    pub fn is_symmetric(&self) -> bool {
        match self {
            HFn::Projection { c, .. } => *c == 0.0,
            HFn::One { l, .. } => l.is_zero(),
            HFn::Other { b, c, .. } => b == c,
        }
    }

    /// Evaluates the branch at a point of `]0,1[^k`.
    pub fn eval(&self, x: &PosVec) -> Result<f64> {
        if x.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: x.dim(),
            });
        }
        let y = x.one_minus()?;
        let v = match self {
            HFn::Projection { mu, l, c } => {
                mu.eval(&y)? * l.eval(&y)? + mu.eval(x)? * (l.eval(x)? + c)
            }
            HFn::One { l, c } => l.eval(&y)? + c,
            HFn::Other { mu, b, c } => b * mu.eval(&y)? + c * mu.eval(x)? - b,
        };
        if !v.is_finite() {
            return Err(Error::domain(format!("h({x}) is not finite")));
        }
        Ok(v)
    }
}

fn finite(v: f64) -> Result<()> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(Error::invalid("branch constants must be finite"))
    }
}

impl PointFn for HFn {
    fn dim(&self) -> usize {
        HFn::dim(self)
    }

    fn eval(&self, t: &PosVec) -> Result<f64> {
        HFn::eval(self, t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[f64]) -> PosVec {
        PosVec::strict(c.to_vec()).unwrap()
    }

    #[test]
    fn branch_values() {
        let h = HFn::projection(MultFn::identity(), LogFn::natural(1), 0.0).unwrap();
        assert!((h.eval(&p(&[0.5])).unwrap() + std::f64::consts::LN_2).abs() < 1e-15);

        let h = HFn::one(LogFn::zero(1), 7.0).unwrap();
        assert_eq!(h.eval(&p(&[0.3])).unwrap(), 7.0);

        let h = HFn::other(MultFn::power(vec![2.0]).unwrap(), 1.0, 1.0).unwrap();
        assert_eq!(h.eval(&p(&[0.5])).unwrap(), -0.5);
    }

    #[test]
    fn outside_open_cube_is_rejected() {
        let h = HFn::one(LogFn::natural(2), 0.0).unwrap();
        assert!(h.eval(&p(&[0.5, 1.0])).is_err());
        assert!(h.eval(&p(&[0.5])).is_err());
    }

    #[test]
    fn symmetric_restrictions() {
        let mu = MultFn::power(vec![3.0, -1.0]).unwrap();
        let sym = HFn::other(mu.clone(), 2.0, 2.0).unwrap();
        let asym = HFn::other(mu, 2.0, 3.0).unwrap();
        assert!(sym.is_symmetric() && !asym.is_symmetric());
        let x = p(&[0.2, 0.7]);
        let y = x.one_minus().unwrap();
        assert!((sym.eval(&x).unwrap() - sym.eval(&y).unwrap()).abs() < 1e-12);
        assert!((asym.eval(&x).unwrap() - asym.eval(&y).unwrap()).abs() > 1e-3);
    }

    #[test]
    fn constructor_guards() {
        assert!(HFn::projection(MultFn::power(vec![2.0]).unwrap(), LogFn::natural(1), 0.0).is_err());
        assert!(HFn::projection(MultFn::identity(), LogFn::natural(2), 0.0).is_err());
        assert!(HFn::other(MultFn::identity(), 1.0, 1.0).is_err());
        assert!(HFn::other(MultFn::one(1), 1.0, 1.0).is_err());
        assert_eq!(HFn::one(LogFn::natural(3), 0.0).unwrap().mu(), MultFn::one(3));
    }
}
