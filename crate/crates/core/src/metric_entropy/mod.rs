//! Separated and spanning sets for `d_n`, the `ssep` count on graph shifts,
//! and finite-horizon metric entropy estimates.
//!
//! Separation is strict (`d_n > ε`); spanning is closed (`d_n ≤ ε`, a point
//! may span itself).

mod estimate;
pub mod random;
mod solvers;
mod ssep;

pub use estimate::{entropy_estimate, EntropyCell, EntropyReport, EpsSummary};
pub use solvers::{max_clique, min_dominating, SolverResult, EXACT_CLIQUE_LIMIT, EXACT_DOMINATION_LIMIT};
pub use ssep::{ssep_bruteforce, ssep_count, KSpec, SsepCount, SsepMethod};

use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::dr_core::{iterate_distance, DrError, DrSystem};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MetricError {
    #[error(transparent)]
    Dr(#[from] DrError),
    #[error("representatives are only {delta}-dense, {needed} is required")]
    DensityInsufficient { delta: Box<BigRational>, needed: Box<BigRational> },
    #[error("{0}")]
    Unsupported(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Restriction {
    /// Keep only points of `Dom(σ^{n-1})`.
    DomRestricted,
    Unrestricted,
}

/// A finite point set with its `d_n` matrix.
#[derive(Debug, Clone, Serialize)]
pub struct SepSpanInstance {
    pub n: usize,
    pub eps: BigRational,
    /// Indices into the point list the instance was built from.
    pub kept: Vec<usize>,
    pub dist: Vec<Vec<BigRational>>,
}

impl SepSpanInstance {
    pub fn from_system<S: DrSystem>(
        sys: &S,
        points: &[S::Point],
        n: usize,
        eps: BigRational,
        restriction: Restriction,
    ) -> Result<Self, MetricError> {
        let mut kept = Vec::new();
        for (i, x) in points.iter().enumerate() {
            if restriction == Restriction::Unrestricted || sys.domain_horizon(x, n)? + 1 == n {
                kept.push(i);
            }
        }
        let k = kept.len();
        let pairs: Vec<(usize, usize)> = (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j))).collect();
        let values: Vec<BigRational> = pairs
            .par_iter()
            .map(|&(i, j)| iterate_distance(sys, &points[kept[i]], &points[kept[j]], n))
            .collect::<Result<_, _>>()?;
        let mut dist = vec![vec![BigRational::from_integer(0.into()); k]; k];
        for (&(i, j), d) in pairs.iter().zip(values) {
            dist[i][j] = d.clone();
            dist[j][i] = d;
        }
        Ok(Self { n, eps, kept, dist })
    }

    pub fn from_matrix(dist: Vec<Vec<BigRational>>, n: usize, eps: BigRational) -> Self {
        let kept = (0..dist.len()).collect();
        Self { n, eps, kept, dist }
    }

    pub fn len(&self) -> usize {
        self.dist.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dist.is_empty()
    }

    pub fn with_eps(&self, eps: BigRational) -> Self {
        Self { eps, ..self.clone() }
    }

    /// Largest subset with pairwise `d_n > ε`.
    pub fn max_separated(&self) -> SolverResult {
        let adj: Vec<Vec<bool>> = self.dist.iter().map(|row| row.iter().map(|d| *d > self.eps).collect()).collect();
        let mut adj = adj;
        for (i, row) in adj.iter_mut().enumerate() {
            row[i] = false;
        }
        max_clique(&adj)
    }

    /// Smallest subset within `ε` (closed) of every point.
    pub fn min_spanning(&self) -> SolverResult {
        let close: Vec<Vec<bool>> =
            self.dist.iter().map(|row| row.iter().map(|d| *d <= self.eps).collect()).collect();
        min_dominating(&close)
    }
}

/// `span(ε) ≤ sep(ε) ≤ span(ε/2)` on one instance.
#[derive(Debug, Clone, Serialize)]
pub struct ChainReport {
    pub span: SolverResult,
    pub sep: SolverResult,
    pub span_half: SolverResult,
    pub exact: bool,
    pub holds: bool,
}

/// Checks the chain. With inexact solvers only a certified violation
/// (a lower bound above an upper bound) counts as failure.
pub fn verify_sep_span_chain(inst: &SepSpanInstance) -> ChainReport {
    let span = inst.min_spanning();
    let sep = inst.max_separated();
    let span_half = inst.with_eps(&inst.eps / BigRational::from_integer(2.into())).min_spanning();
    let exact = span.exact && sep.exact && span_half.exact;
    let holds = span.lower <= sep.upper && sep.lower <= span_half.upper;
    ChainReport { span, sep, span_half, exact, holds }
}

#[cfg(test)]
mod tests;
