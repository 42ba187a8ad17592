//! Covers by cylinder sets of graph shift spaces: joins, pullbacks, exact
//! minimal subcover counts `N(α_n, K_n)` and the entropy `h(α, σ, K)`.
//!
//! `α_n = α ∨ σ^{-1}(α) ∨ … ∨ σ^{-n}(α)` has `n + 1` terms and covers
//! `K_n = K ∩ σ^{-1}(K) ∩ … ∩ σ^{-n}(K)`.

mod cover;
pub mod cylinder;
mod families;
mod lemmas;

pub use cover::{
    iterate_cover, join, minimal_subcover_count, min_set_cover, pullback_cover, refinement_counts, Carrier,
    CountMethod, Cover, SubcoverCount, DEFAULT_ATOM_BUDGET,
};
pub use cylinder::Cylinder;
pub use families::{
    cover_diameter, diam_zero_schedule, member_diameter, renewal_cover, word_cover, words_over, Diameter,
    RenewalCover, ScheduledCover,
};
pub use lemmas::{verify_cover_lemmas, LemmaCheck, LemmaReport};

use num_bigint::BigUint;
use serde::Serialize;
use thiserror::Error;

use crate::graph_model::Ultragraph;
use crate::numeric::ln_biguint;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoverError {
    #[error("preimage of {0} is not a finite union of cylinders")]
    UnboundedPreimage(String),
    #[error("atom decomposition reached {atoms} pieces, budget {budget}")]
    BudgetExceeded { atoms: usize, budget: usize },
    #[error("members do not cover the carrier")]
    NotACover,
    #[error("{0}")]
    Unsupported(String),
}

/// `a_n = log N(α_n, K_n)` for `n = 0..=n_max`.
#[derive(Debug, Clone, Serialize)]
pub struct FeketeSequence {
    pub counts: Vec<BigUint>,
    pub values: Vec<f64>,
    /// `a_n / n` for `n = 1..=n_max`.
    pub ratios: Vec<f64>,
    /// `min_{1 ≤ k ≤ n} a_k / k`.
    pub running_inf: Vec<f64>,
    /// `N(α_{n+m}) ≤ N(α_n) N(α_m)` on every computed pair, exactly.
    pub subadditive: bool,
}

impl FeketeSequence {
    pub fn from_counts(counts: Vec<BigUint>) -> Self {
        let values: Vec<f64> = counts.iter().map(ln_biguint).collect();
        let ratios: Vec<f64> = (1..values.len()).map(|n| values[n] / n as f64).collect();
        let mut running_inf = Vec::with_capacity(ratios.len());
        let mut inf = f64::INFINITY;
        for &r in &ratios {
            inf = inf.min(r);
            running_inf.push(inf);
        }
        let len = counts.len();
        let subadditive =
            (0..len).all(|n| (0..len - n).all(|m| counts[n + m] <= &counts[n] * &counts[m]));
        Self { counts, values, ratios, running_inf, subadditive }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CoverEstimate {
    pub sequence: FeketeSequence,
    /// Running infimum at `n_max`.
    pub estimate: f64,
    /// `a_{n_max} / n_max`.
    pub last_ratio: f64,
}

/// `h(α, σ, K)` approximated by `inf_{n ≤ n_max} a_n / n`. Disjoint covers
/// are counted by the forward recursion, others by building `α_n`.
pub fn cover_entropy_estimate(
    g: &Ultragraph,
    a: &Cover,
    n_max: usize,
    atom_budget: usize,
) -> Result<CoverEstimate, CoverError> {
    if n_max == 0 {
        return Err(CoverError::Unsupported("n_max must be at least 1".into()));
    }
    let counts = if a.disjoint {
        refinement_counts(g, a, n_max)?
    } else {
        let mut counts = Vec::with_capacity(n_max + 1);
        let mut cur = a.clone();
        for n in 0..=n_max {
            if n > 0 {
                cur = join(g, a, &pullback_cover(g, &cur)?);
            }
            counts.push(BigUint::from(minimal_subcover_count(g, &cur, atom_budget)?.count));
        }
        counts
    };
    let sequence = FeketeSequence::from_counts(counts);
    Ok(CoverEstimate {
        estimate: *sequence.running_inf.last().expect("n_max ≥ 1"),
        last_ratio: *sequence.ratios.last().expect("n_max ≥ 1"),
        sequence,
    })
}
