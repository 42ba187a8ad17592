use num_rational::BigRational;
use serde::Serialize;

use crate::numeric::dyadic;

#[derive(Debug, Clone, Serialize)]
pub struct ModulusRow {
    /// `δ = 1/2^delta_exponent`.
    pub delta_exponent: u32,
    /// Pairs with `d_a < δ`.
    pub pairs: usize,
    /// Largest `d_b` among them.
    pub max_db: Option<BigRational>,
}

/// Empirical modulus of continuity of `d_b` with respect to `d_a`.
#[derive(Debug, Clone, Serialize)]
pub struct ModulusTable {
    pub rows: Vec<ModulusRow>,
}

impl ModulusTable {
    /// Largest `δ` in the grid for which every sampled pair with `d_a < δ`
    /// has `d_b < ε`.
    pub fn delta_for(&self, eps: &BigRational) -> Option<u32> {
        self.rows
            .iter()
            .find(|r| r.max_db.as_ref().is_none_or(|m| m < eps))
            .map(|r| r.delta_exponent)
    }
}

/// Rows for `δ = 1/2^1, …, 1/2^max_exponent` over sampled `(d_a, d_b)`.
pub fn modulus_table(pairs: &[(BigRational, BigRational)], max_exponent: u32) -> ModulusTable {
    let rows = (1..=max_exponent)
        .map(|j| {
            let delta = dyadic(j);
            let close: Vec<&BigRational> = pairs.iter().filter(|(a, _)| *a < delta).map(|(_, b)| b).collect();
            ModulusRow { delta_exponent: j, pairs: close.len(), max_db: close.into_iter().max().cloned() }
        })
        .collect();
    ModulusTable { rows }
}
