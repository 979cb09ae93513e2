//! Points of the nonnegative cone of `R^k` with componentwise arithmetic.

use std::fmt;

use crate::error::{Error, Result};

/// Which part of the cone a vector is declared to live in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Closure {
    /// Every coordinate is strictly positive.
    Strict,
    /// Coordinates may be zero.
    Closed,
}

/// A point of `R^k_{+}`. The strictness flag records whether the point was
/// built (or derived) as a member of the open cone `R^k_{++}`.
#[derive(Debug, Clone, PartialEq)]
pub struct PosVec {
    coords: Vec<f64>,
    closure: Closure,
}

impl PosVec {
    /// A point of the open cone. Fails on empty input or any coordinate
    /// that is not a finite positive number.
    pub fn strict(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::invalid("vector must have at least one coordinate"));
        }
        if let Some((i, v)) = coords
            .iter()
            .enumerate()
            .find(|(_, v)| !(v.is_finite() && **v > 0.0))
        {
            return Err(Error::domain(format!(
                "coordinate {i} = {v} is not strictly positive"
            )));
        }
        Ok(Self {
            coords,
            closure: Closure::Strict,
        })
    }

    /// A point of the closed cone (zeros allowed).
    pub fn closed(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::invalid("vector must have at least one coordinate"));
        }
        if let Some((i, v)) = coords
            .iter()
            .enumerate()
            .find(|(_, v)| !(v.is_finite() && **v >= 0.0))
        {
            return Err(Error::domain(format!("coordinate {i} = {v} is negative")));
        }
        Ok(Self {
            coords,
            closure: Closure::Closed,
        })
    }

    pub fn zeros(k: usize) -> Self {
        Self {
            coords: vec![0.0; k],
            closure: Closure::Closed,
        }
    }

    pub fn ones(k: usize) -> Self {
        Self::splat(k, 1.0)
    }

    /// All coordinates equal to `v`, which must be positive.
    pub(crate) fn splat(k: usize, v: f64) -> Self {
        debug_assert!(v > 0.0);
        Self {
            coords: vec![v; k],
            closure: Closure::Strict,
        }
    }

    /// Builds a strict vector from coordinates the caller has already checked.
    pub(crate) fn from_positive_unchecked(coords: Vec<f64>) -> Self {
        debug_assert!(coords.iter().all(|v| *v > 0.0));
        Self {
            coords,
            closure: Closure::Strict,
        }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<f64> {
        self.coords
    }

    pub fn closure(&self) -> Closure {
        self.closure
    }

    pub fn is_strict_flagged(&self) -> bool {
        self.closure == Closure::Strict
    }

    /// Every coordinate is `> 0`, regardless of the flag.
    pub fn is_positive(&self) -> bool {
        self.coords.iter().all(|v| *v > 0.0)
    }

    pub fn is_zero_vector(&self) -> bool {
        self.coords.iter().all(|v| *v == 0.0)
    }

    /// Every coordinate lies in the open interval `]0, 1[`.
    pub fn in_open_cube(&self) -> bool {
        self.coords.iter().all(|v| *v > 0.0 && *v < 1.0)
    }

    /// `1 - x`, defined for points of the open unit cube.
    pub fn one_minus(&self) -> Result<Self> {
        if !self.in_open_cube() {
            return Err(Error::domain(format!(
                "{self} is not inside the open unit cube"
            )));
        }
        let coords = self.coords.iter().map(|v| 1.0 - v).collect::<Vec<_>>();
        if coords.iter().any(|v| *v <= 0.0 || *v >= 1.0) {
            return Err(Error::domain(format!(
                "1 - {self} leaves the open unit cube in floating point"
            )));
        }
        Ok(Self::from_positive_unchecked(coords))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        cw_add(self, other)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        cw_mul(self, other)
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        cw_div(self, other)
    }

    pub fn scale(&self, lambda: f64) -> Result<Self> {
        cw_scale(self, lambda)
    }
}

impl fmt::Display for PosVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

fn check_dims(a: &PosVec, b: &PosVec) -> Result<()> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            got: b.dim(),
        });
    }
    Ok(())
}

fn zip_with(a: &PosVec, b: &PosVec, op: impl Fn(f64, f64) -> f64) -> Vec<f64> {
    a.coords
        .iter()
        .zip(&b.coords)
        .map(|(x, y)| op(*x, *y))
        .collect()
}

/// Componentwise sum. The result is strict when either operand is.
pub fn cw_add(a: &PosVec, b: &PosVec) -> Result<PosVec> {
    check_dims(a, b)?;
    let closure = if a.is_strict_flagged() || b.is_strict_flagged() {
        Closure::Strict
    } else {
        Closure::Closed
    };
    Ok(PosVec {
        coords: zip_with(a, b, |x, y| x + y),
        closure,
    })
}

/// Componentwise product. Strict only when both operands are.
pub fn cw_mul(a: &PosVec, b: &PosVec) -> Result<PosVec> {
    check_dims(a, b)?;
    let closure = if a.is_strict_flagged() && b.is_strict_flagged() {
        Closure::Strict
    } else {
        Closure::Closed
    };
    Ok(PosVec {
        coords: zip_with(a, b, |x, y| x * y),
        closure,
    })
}

/// Componentwise quotient; the divisor must be strictly positive.
pub fn cw_div(a: &PosVec, b: &PosVec) -> Result<PosVec> {
    check_dims(a, b)?;
    if !b.is_positive() {
        return Err(Error::domain(format!("nonpositive divisor {b}")));
    }
    Ok(PosVec {
        coords: zip_with(a, b, |x, y| x / y),
        closure: a.closure,
    })
}

/// Multiplication by a positive scalar.
pub fn cw_scale(a: &PosVec, lambda: f64) -> Result<PosVec> {
    if !(lambda.is_finite() && lambda > 0.0) {
        return Err(Error::domain(format!(
            "scale factor {lambda} is not a positive real"
        )));
    }
    Ok(PosVec {
        coords: a.coords.iter().map(|v| v * lambda).collect(),
        closure: a.closure,
    })
}

/// `a + b + c` computed so that the result does not depend on the order of
/// the three operands: each coordinate's summands are sorted first.
pub(crate) fn symmetric_sum3(a: &PosVec, b: &PosVec, c: &PosVec) -> Result<PosVec> {
    check_dims(a, b)?;
    check_dims(a, c)?;
    let coords = (0..a.dim())
        .map(|i| sum3_sorted(a.coords[i], b.coords[i], c.coords[i]))
        .collect();
    let closure = if a.is_strict_flagged() || b.is_strict_flagged() || c.is_strict_flagged() {
        Closure::Strict
    } else {
        Closure::Closed
    };
    Ok(PosVec { coords, closure })
}

pub(crate) fn sum3_sorted(a: f64, b: f64, c: f64) -> f64 {
    let mut t = [a, b, c];
    t.sort_by(f64::total_cmp);
    t[0] + t[1] + t[2]
}
