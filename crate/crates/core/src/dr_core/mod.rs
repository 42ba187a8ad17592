//! The Deaconu-Renault system contract and the operations every system gets
//! for free: `I_n(x)`, the iterate pseudo-metric `d_n`, dynamical balls, and a
//! sampled check that points with full `I_n` can be approximated by points
//! with full `I_{n+1}`.
//!
//! `d_n(x, y)` is the maximum of the base distance over the iterates both
//! points share. It is only a metric on `Dom(σ^{n-1})`; [`IntervalDoubling`]
//! shows the triangle inequality failing outside it.

mod interval;
mod padded;

pub use interval::IntervalDoubling;
pub use padded::{BinaryPoint, PaddedBinary};

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DrError {
    #[error("point is truncated at depth {available}, depth {needed} is required")]
    InsufficientDepth { needed: usize, available: usize },
    #[error("point is not in the domain of the shift")]
    OutsideDomain,
    #[error("zero-length point has no shift")]
    LengthZero,
    #[error("enumeration budget exhausted; distance is at most {bound}")]
    InsufficientBudget { bound: BigRational },
    #[error("invalid point: {0}")]
    InvalidPoint(String),
}

pub type DrResult<T> = Result<T, DrError>;

/// A Deaconu-Renault system with exactly representable points.
pub trait DrSystem: Sync {
    type Point: Clone + std::fmt::Debug + Send + Sync;

    /// Largest `i < n` with `x ∈ Dom(σ^i)`; `n ≥ 1`.
    fn domain_horizon(&self, x: &Self::Point, n: usize) -> DrResult<usize>;

    /// `σ(x)`, defined iff `x ∈ Dom(σ)`.
    fn shift(&self, x: &Self::Point) -> DrResult<Self::Point>;

    fn base_distance(&self, x: &Self::Point, y: &Self::Point) -> DrResult<BigRational>;

    /// Points within `radius` of `x`, used as witnesses by the density check.
    fn neighborhood(&self, _x: &Self::Point, _radius: &BigRational) -> Vec<Self::Point> {
        Vec::new()
    }
}

/// `I_n(x) = {0, …, m}` with `m = domain_horizon(x, n)`.
pub fn index_set<S: DrSystem>(sys: &S, x: &S::Point, n: usize) -> DrResult<Vec<usize>> {
    assert!(n >= 1, "index_set needs n >= 1");
    let m = sys.domain_horizon(x, n)?;
    Ok((0..=m).collect())
}

/// `σ^i(x)`.
pub fn iterate<S: DrSystem>(sys: &S, x: &S::Point, i: usize) -> DrResult<S::Point> {
    let mut p = x.clone();
    for _ in 0..i {
        p = sys.shift(&p)?;
    }
    Ok(p)
}

/// `d_n(x, y) = max_{i ∈ I_n(x) ∩ I_n(y)} d(σ^i x, σ^i y)`.
pub fn iterate_distance<S: DrSystem>(
    sys: &S,
    x: &S::Point,
    y: &S::Point,
    n: usize,
) -> DrResult<BigRational> {
    assert!(n >= 1, "iterate_distance needs n >= 1");
    let m = sys.domain_horizon(x, n)?.min(sys.domain_horizon(y, n)?);
    let (mut a, mut b) = (x.clone(), y.clone());
    let mut best = sys.base_distance(&a, &b)?;
    for _ in 0..m {
        a = sys.shift(&a)?;
        b = sys.shift(&b)?;
        let d = sys.base_distance(&a, &b)?;
        if d > best {
            best = d;
        }
    }
    Ok(best)
}

/// Membership in `U(x, n, ε) = ⋂_{i ∈ I_n(x)} σ^{-i}(B(σ^i x, ε))`.
pub fn in_dynamical_ball<S: DrSystem>(
    sys: &S,
    center: &S::Point,
    candidate: &S::Point,
    n: usize,
    eps: &BigRational,
) -> DrResult<bool> {
    assert!(n >= 1 && eps.is_positive());
    let m = sys.domain_horizon(center, n)?;
    if sys.domain_horizon(candidate, n)? < m {
        return Ok(false);
    }
    let (mut a, mut b) = (center.clone(), candidate.clone());
    for i in 0..=m {
        if i > 0 {
            a = sys.shift(&a)?;
            b = sys.shift(&b)?;
        }
        if sys.base_distance(&a, &b)? >= *eps {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum DensityOutcome {
    /// A witness with full `I_{n+1}` was found in every sampled neighbourhood.
    Pass,
    /// `I_n(x)` is not full, so the hypothesis says nothing about `x`.
    NotApplicable,
    /// No witness within the given radius exponent.
    Inconclusive { radius_exponent: u32 },
}

#[derive(Debug, Clone, Serialize)]
pub struct DensityEntry {
    pub sample: usize,
    pub n: usize,
    pub outcome: DensityOutcome,
}

#[derive(Debug, Clone, Serialize)]
pub struct DensityReport {
    pub entries: Vec<DensityEntry>,
}

impl DensityReport {
    pub fn all_pass_or_na(&self) -> bool {
        self.entries
            .iter()
            .all(|e| !matches!(e.outcome, DensityOutcome::Inconclusive { .. }))
    }
}

/// Sampled check of the density hypothesis: for each sample `x` and each
/// `n ≤ n_max` with `I_n(x)` full, look for `y` within `1/2^j` of `x`
/// (`j = 1..=radii`) with `I_{n+1}(y)` full.
pub fn check_density_sampled<S: DrSystem>(
    sys: &S,
    sample: &[S::Point],
    n_max: usize,
    radii: u32,
) -> DrResult<DensityReport> {
    let mut entries = Vec::new();
    for (si, x) in sample.iter().enumerate() {
        for n in 1..=n_max {
            if sys.domain_horizon(x, n)? + 1 < n {
                entries.push(DensityEntry { sample: si, n, outcome: DensityOutcome::NotApplicable });
                continue;
            }
            let mut outcome = DensityOutcome::Pass;
            for j in 1..=radii {
                let r = crate::numeric::dyadic(j);
                let mut found = false;
                for y in std::iter::once(x.clone()).chain(sys.neighborhood(x, &r)) {
                    if sys.base_distance(x, &y)? < r && sys.domain_horizon(&y, n + 1)? == n {
                        found = true;
                        break;
                    }
                }
                if !found {
                    outcome = DensityOutcome::Inconclusive { radius_exponent: j };
                    break;
                }
            }
            entries.push(DensityEntry { sample: si, n, outcome });
        }
    }
    Ok(DensityReport { entries })
}

/// True iff `d_n(x, z) ≤ d_n(x, y) + d_n(y, z)`.
pub fn triangle_holds<S: DrSystem>(
    sys: &S,
    x: &S::Point,
    y: &S::Point,
    z: &S::Point,
    n: usize,
) -> DrResult<bool> {
    let xz = iterate_distance(sys, x, z, n)?;
    let xy = iterate_distance(sys, x, y, n)?;
    let yz = iterate_distance(sys, y, z, n)?;
    Ok(xz <= xy + yz)
}

pub(crate) fn abs_diff(a: &BigRational, b: &BigRational) -> BigRational {
    let d = a - b;
    if d.is_negative() {
        -d
    } else if d.is_zero() {
        BigRational::zero()
    } else {
        d
    }
}
