use num_bigint::BigUint;
use rayon::prelude::*;
use serde::Serialize;

use super::{ssep_count, KSpec, MetricError};
use crate::numeric::{dyadic, ln_biguint};
use crate::shift_space::GraphShiftSystem;

#[derive(Debug, Clone, Serialize)]
pub struct EntropyCell {
    pub eps_exponent: u32,
    pub n: usize,
    pub count: BigUint,
    /// `(1/n) log count`.
    pub h: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct EpsSummary {
    pub eps_exponent: u32,
    /// `[n_0, n_max]` with `n_0 = ⌈n_max/2⌉`.
    pub window: (usize, usize),
    /// `max h_ε(n)` over the window.
    pub window_max: f64,
    /// `(log c(n_max) - log c(n_0)) / (n_max - n_0)`.
    pub rate: f64,
    /// Counts nondecreasing in `n`.
    pub monotone_in_n: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct EntropyReport {
    pub budget: usize,
    pub n_max: usize,
    pub cells: Vec<EntropyCell>,
    pub per_eps: Vec<EpsSummary>,
    /// Rate at the smallest `ε`.
    pub estimate: f64,
    /// Rate per `ε`, in schedule order.
    pub trend: Vec<f64>,
    /// `h_ε(n)` nondecreasing as `ε` decreases, at every `n`.
    pub eps_monotone: bool,
}

impl EntropyReport {
    pub fn cell(&self, eps_exponent: u32, n: usize) -> Option<&EntropyCell> {
        self.cells.iter().find(|c| c.eps_exponent == eps_exponent && c.n == n)
    }
}

/// `ssep(n, 1/2^j, K)` for `n = 1..=n_max` and `j` in the schedule, with
/// tail-window summaries. The schedule lists strictly increasing exponents.
pub fn entropy_estimate(
    sys: &GraphShiftSystem,
    k: &KSpec,
    eps_exponents: &[u32],
    n_max: usize,
) -> Result<EntropyReport, MetricError> {
    if eps_exponents.is_empty() || n_max == 0 {
        return Err(MetricError::Unsupported("empty schedule".into()));
    }
    if eps_exponents.windows(2).any(|w| w[0] >= w[1]) {
        return Err(MetricError::Unsupported("eps schedule must be strictly decreasing".into()));
    }
    let jobs: Vec<(u32, usize)> = eps_exponents.iter().flat_map(|&j| (1..=n_max).map(move |n| (j, n))).collect();
    let cells: Vec<EntropyCell> = jobs
        .par_iter()
        .map(|&(j, n)| {
            let c = ssep_count(sys, k, n, &dyadic(j))?;
            let h = ln_biguint(&c.count) / n as f64;
            Ok(EntropyCell { eps_exponent: j, n, count: c.count, h })
        })
        .collect::<Result<_, MetricError>>()?;
    let n0 = n_max.div_ceil(2).max(1);
    let per_eps: Vec<EpsSummary> = eps_exponents
        .iter()
        .enumerate()
        .map(|(ji, &j)| {
            let row = &cells[ji * n_max..(ji + 1) * n_max];
            let window_max = row[n0 - 1..].iter().map(|c| c.h).fold(f64::NEG_INFINITY, f64::max);
            let rate = if n_max > n0 {
                (ln_biguint(&row[n_max - 1].count) - ln_biguint(&row[n0 - 1].count)) / (n_max - n0) as f64
            } else {
                row[n_max - 1].h
            };
            let monotone_in_n = row.windows(2).all(|w| w[0].count <= w[1].count);
            EpsSummary { eps_exponent: j, window: (n0, n_max), window_max, rate, monotone_in_n }
        })
        .collect();
    let eps_monotone = (0..n_max).all(|i| {
        (1..eps_exponents.len()).all(|ji| cells[(ji - 1) * n_max + i].count <= cells[ji * n_max + i].count)
    });
    let trend: Vec<f64> = per_eps.iter().map(|s| s.rate).collect();
    Ok(EntropyReport {
        budget: k.budget,
        n_max,
        estimate: *trend.last().expect("nonempty"),
        cells,
        per_eps,
        trend,
        eps_monotone,
    })
}
