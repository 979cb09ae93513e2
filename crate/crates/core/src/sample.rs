//! Deterministic samplers for the regions the verifiers draw points from.
//!
//! A [`SampleSpec`] fully determines the point sequence: the generator is a
//! ChaCha8 stream seeded from the 64-bit seed, and every point is drawn in a
//! fixed order before any (possibly parallel) evaluation starts.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cone::PosVec;
use crate::error::{Error, Result};

/// Lower edge of log-uniform cone sampling, relative to `hi`, used when the
/// region's lower bound is 0.
pub const CONE_FLOOR_RATIO: f64 = 1e-4;

/// Where sample points live.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Region {
    /// `]0,1[^k`, uniform per coordinate.
    OpenCube,
    /// `(lo, hi]^k`, log-uniform per coordinate.
    Cone { lo: f64, hi: f64 },
    /// Pairs `(x, y)` with `x, y > 0` and `x + y` in `]0,1[^k`.
    FeimD,
}

impl Default for Region {
    fn default() -> Self {
        Region::Cone { lo: 0.0, hi: 10.0 }
    }
}

impl Region {
    /// Exact membership test for a single vector. For `FeimD` this is the
    /// open-cube test applied to each member of the pair.
    pub fn contains(&self, v: &PosVec) -> bool {
        match *self {
            Region::OpenCube | Region::FeimD => v.in_open_cube(),
            Region::Cone { lo, hi } => v.coords().iter().all(|c| *c > lo && *c <= hi),
        }
    }

    fn validate(&self) -> Result<()> {
        if let Region::Cone { lo, hi } = *self {
            if !(lo.is_finite() && hi.is_finite() && lo >= 0.0 && hi > lo) {
                return Err(Error::invalid(format!(
                    "cone bounds must satisfy 0 <= lo < hi, got ({lo}, {hi}]"
                )));
            }
        }
        Ok(())
    }
}

/// Dimension, size, seed, and region of a sample.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SampleSpec {
    pub k: usize,
    pub count: usize,
    pub seed: u64,
    pub region: Region,
}

impl SampleSpec {
    pub fn new(k: usize, count: usize, seed: u64, region: Region) -> Self {
        Self {
            k,
            count,
            seed,
            region,
        }
    }

    /// The default cone `(0, 10]^k`.
    pub fn cone(k: usize, count: usize, seed: u64) -> Self {
        Self::new(k, count, seed, Region::default())
    }

    pub fn open_cube(k: usize, count: usize, seed: u64) -> Self {
        Self::new(k, count, seed, Region::OpenCube)
    }

    pub fn feim(k: usize, count: usize, seed: u64) -> Self {
        Self::new(k, count, seed, Region::FeimD)
    }

    pub fn with_region(mut self, region: Region) -> Self {
        self.region = region;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.k == 0 {
            return Err(Error::invalid("dimension k must be positive"));
        }
        if self.count == 0 {
            return Err(Error::invalid("sample count must be positive"));
        }
        self.region.validate()
    }

    pub fn sampler(&self) -> Result<Sampler> {
        self.validate()?;
        Ok(Sampler {
            rng: ChaCha8Rng::seed_from_u64(self.seed),
            k: self.k,
            region: self.region,
        })
    }

    /// `count` single points.
    pub fn points(&self) -> Result<Vec<PosVec>> {
        let mut s = self.sampler()?;
        Ok((0..self.count).map(|_| s.vector()).collect())
    }

    /// `count` independent pairs from the region. For `FeimD` the pairs are
    /// members of the set `D`.
    pub fn pairs(&self) -> Result<Vec<[PosVec; 2]>> {
        let mut s = self.sampler()?;
        Ok((0..self.count)
            .map(|_| match self.region {
                Region::FeimD => s.feim_pair(),
                _ => [s.vector(), s.vector()],
            })
            .collect())
    }

    /// `count` independent triples from the region.
    pub fn triples(&self) -> Result<Vec<[PosVec; 3]>> {
        let mut s = self.sampler()?;
        Ok((0..self.count)
            .map(|_| [s.vector(), s.vector(), s.vector()])
            .collect())
    }
}

/// A seeded point stream over one region.
pub struct Sampler {
    rng: ChaCha8Rng,
    k: usize,
    region: Region,
}

impl Sampler {
    /// Uniform draw from `]0,1[`.
    fn unit_open(&mut self) -> f64 {
        loop {
            let u: f64 = self.rng.random();
            if u > 0.0 && u < 1.0 {
                return u;
            }
        }
    }

    /// Log-uniform draw from `(lo, hi]`.
    fn log_uniform(&mut self, lo: f64, hi: f64) -> f64 {
        let floor = if lo > 0.0 { lo } else { hi * CONE_FLOOR_RATIO };
        let (a, b) = (floor.ln(), hi.ln());
        loop {
            let u: f64 = self.rng.random();
            let t = (a + u * (b - a)).exp().min(hi);
            if t > lo && t > 0.0 {
                return t;
            }
        }
    }

    /// One vector from the region. `FeimD` yields open-cube vectors here.
    pub fn vector(&mut self) -> PosVec {
        let coords = match self.region {
            Region::OpenCube | Region::FeimD => (0..self.k).map(|_| self.unit_open()).collect(),
            Region::Cone { lo, hi } => (0..self.k).map(|_| self.log_uniform(lo, hi)).collect(),
        };
        PosVec::from_positive_unchecked(coords)
    }

    /// A positive scalar drawn like one cone coordinate (used for scale
    /// factors). Outside cone regions this uses `(0, 10]`.
    pub fn scalar(&mut self) -> f64 {
        match self.region {
            Region::Cone { lo, hi } => self.log_uniform(lo, hi),
            _ => self.log_uniform(0.0, 10.0),
        }
    }

    /// A member of `D`: `x` uniform in the cube, then `y` uniform in
    /// `]0, 1-x[` per coordinate. Draws whose floating-point image leaves `D`
    /// (including the quotients `y/(1-x)` and `x/(1-y)`) are redrawn.
    pub fn feim_pair(&mut self) -> [PosVec; 2] {
        loop {
            let mut xs = Vec::with_capacity(self.k);
            let mut ys = Vec::with_capacity(self.k);
            for _ in 0..self.k {
                let x = self.unit_open();
                let u = self.unit_open();
                xs.push(x);
                ys.push(u * (1.0 - x));
            }
            if in_feim_domain(&xs, &ys) {
                return [
                    PosVec::from_positive_unchecked(xs),
                    PosVec::from_positive_unchecked(ys),
                ];
            }
        }
    }
}

/// Membership in `D`, plus the derived points the FEIM residual evaluates.
pub(crate) fn in_feim_domain(xs: &[f64], ys: &[f64]) -> bool {
    xs.iter().zip(ys).all(|(&x, &y)| {
        let inside = |t: f64| t > 0.0 && t < 1.0;
        inside(x) && inside(y) && inside(x + y) && inside(y / (1.0 - x)) && inside(x / (1.0 - y))
    })
}
