//! Entropy of graph shifts: path counting, spectral radius of the edge
//! transfer operator, suprema over finite subgraphs of row-finite graphs and
//! the max rule for disjoint unions.

use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::graph_model::{count_paths_upto, finite_subgraph, FiniteGraph, GraphError, Ultragraph};
use crate::numeric::ln_biguint;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphEntropyError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("{0} has no edges")]
    Empty(String),
    #[error("{0}")]
    Unsupported(String),
}

#[derive(Debug, Clone, Serialize)]
pub struct PathcountEstimate {
    /// `(1/n) log |𝔭^n|` for `n = 1..=n_max`.
    pub sequence: Vec<f64>,
    /// Value at `n_max`.
    pub estimate: f64,
    /// `(log|𝔭^{n_max}| - log|𝔭^{n_0}|) / (n_max - n_0)` with
    /// `n_0 = ⌈n_max/2⌉`, the averaged growth of the tail.
    pub trend: f64,
}

pub fn finite_graph_entropy_pathcount(g: &FiniteGraph, n_max: usize) -> Result<PathcountEstimate, GraphEntropyError> {
    assert!(n_max >= 1, "n_max must be at least 1");
    if g.edge_count() == 0 {
        return Err(GraphEntropyError::Empty(g.name.clone()));
    }
    let logs: Vec<f64> = count_paths_upto(g, n_max).iter().map(ln_biguint).collect();
    let sequence: Vec<f64> = logs.iter().enumerate().map(|(i, l)| l / (i + 1) as f64).collect();
    let n0 = n_max.div_ceil(2);
    let trend = if n_max > n0 { (logs[n_max - 1] - logs[n0 - 1]) / (n_max - n0) as f64 } else { sequence[0] };
    Ok(PathcountEstimate { estimate: sequence[n_max - 1], sequence, trend })
}

/// Spectral radius `λ` of the edge transfer operator with a certified
/// interval `[lo, hi]`, and `log λ` bounds.
#[derive(Debug, Clone, Serialize)]
pub struct SpectralEstimate {
    pub lambda: f64,
    pub lo: f64,
    pub hi: f64,
    pub log_lo: f64,
    pub log_hi: f64,
    pub iterations: usize,
    /// `hi - lo` at exit.
    pub residual: f64,
    pub converged: bool,
}

impl SpectralEstimate {
    pub fn log_lambda(&self) -> f64 {
        self.lambda.ln()
    }
}

pub const MAX_ITERATIONS: usize = 200_000;

/// Power iteration on `I + A` for each strongly connected block of the edge
/// adjacency `A`. `I + A` is primitive on a block, and for a positive vector
/// `x` every ratio `((I+A)x)_i / x_i` brackets `1 + λ_block`
/// (Collatz-Wielandt). The radius is the largest block radius.
pub fn finite_graph_entropy_spectral(g: &FiniteGraph, tol: f64) -> Result<SpectralEstimate, GraphEntropyError> {
    let succ = g.successors();
    if succ.is_empty() {
        return Err(GraphEntropyError::Empty(g.name.clone()));
    }
    let mut dg = DiGraph::<(), ()>::with_capacity(succ.len(), 0);
    let nodes: Vec<_> = (0..succ.len()).map(|_| dg.add_node(())).collect();
    for (e, fs) in succ.iter().enumerate() {
        for &f in fs {
            dg.add_edge(nodes[e], nodes[f], ());
        }
    }
    let mut best: Option<SpectralEstimate> = None;
    for comp in tarjan_scc(&dg) {
        let idx: Vec<usize> = comp.iter().map(|n| n.index()).collect();
        let cyclic = idx.len() > 1 || succ[idx[0]].contains(&idx[0]);
        if !cyclic {
            continue;
        }
        let est = block_radius(&succ, &idx, tol);
        if best.as_ref().is_none_or(|b| est.lambda > b.lambda) {
            best = Some(est);
        }
    }
    // acyclic: no infinite paths, λ = 0
    Ok(best.unwrap_or(SpectralEstimate {
        lambda: 0.0,
        lo: 0.0,
        hi: 0.0,
        log_lo: f64::NEG_INFINITY,
        log_hi: f64::NEG_INFINITY,
        iterations: 0,
        residual: 0.0,
        converged: true,
    }))
}

fn block_radius(succ: &[Vec<usize>], idx: &[usize], tol: f64) -> SpectralEstimate {
    let k = idx.len();
    let mut local = vec![usize::MAX; succ.len()];
    for (i, &e) in idx.iter().enumerate() {
        local[e] = i;
    }
    let adj: Vec<Vec<usize>> =
        idx.iter().map(|&e| succ[e].iter().filter(|&&f| local[f] != usize::MAX).map(|&f| local[f]).collect()).collect();
    let mut x = vec![1.0f64; k];
    let mut iterations = 0;
    loop {
        let y: Vec<f64> = (0..k).map(|i| x[i] + adj[i].iter().map(|&j| x[j]).sum::<f64>()).collect();
        let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
        for i in 0..k {
            let r = y[i] / x[i];
            lo = lo.min(r);
            hi = hi.max(r);
        }
        iterations += 1;
        let (lo, hi) = ((lo - 1.0).max(0.0), (hi - 1.0).max(0.0));
        let (log_lo, log_hi) = (lo.ln(), hi.ln());
        let converged = lo > 0.0 && log_hi - log_lo <= tol;
        if converged || iterations >= MAX_ITERATIONS {
            let lambda = if converged { (lo * hi).sqrt() } else { (lo + hi) / 2.0 };
            return SpectralEstimate { lambda, lo, hi, log_lo, log_hi, iterations, residual: hi - lo, converged };
        }
        let norm = y.iter().cloned().fold(0.0, f64::max);
        x = y.into_iter().map(|v| v / norm).collect();
    }
}

/// An entropy value with an enclosing interval.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Estimate {
    pub value: f64,
    pub lo: f64,
    pub hi: f64,
}

impl From<&SpectralEstimate> for Estimate {
    fn from(s: &SpectralEstimate) -> Self {
        Self { value: s.log_lambda(), lo: s.log_lo, hi: s.log_hi }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FiltrationRow {
    pub budget: usize,
    pub edges: usize,
    pub entropy: Option<Estimate>,
    pub running_sup: f64,
    pub note: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct FiltrationReport {
    pub rows: Vec<FiltrationRow>,
    /// Running supremum at the last budget: a lower bound for `h(σ)`.
    pub supremum: f64,
    pub nondecreasing: bool,
    /// The last two increments both exceed [`DIVERGENCE_STEP`].
    pub diverging: bool,
}

pub const DIVERGENCE_STEP: f64 = 0.02;

/// Edge count, estimate and note of one budget.
type BudgetCell = (usize, Option<Estimate>, Option<String>);

/// Spectral entropy of the sink-pruned subgraph on the first `b` edges, for
/// each budget `b` in ascending order.
pub fn rowfinite_entropy_sup(g: &Ultragraph, budgets: &[usize], tol: f64) -> Result<FiltrationReport, GraphEntropyError> {
    if !g.is_graph() {
        return Err(GraphError::NotAGraph(g.name().to_string()).into());
    }
    if budgets.is_empty() || budgets.windows(2).any(|w| w[0] >= w[1]) {
        return Err(GraphEntropyError::Unsupported("budgets must be nonempty and strictly ascending".into()));
    }
    let cells: Vec<Result<BudgetCell, GraphEntropyError>> = budgets
        .par_iter()
        .map(|&b| match finite_subgraph(g, b) {
            Ok(fg) => {
                let s = finite_graph_entropy_spectral(&fg, tol)?;
                let note = (!s.converged).then(|| format!("not converged after {} iterations", s.iterations));
                Ok((fg.edge_count(), Some(Estimate::from(&s)), note))
            }
            Err(GraphError::EmptySubgraph) => Ok((0, None, Some("empty after sink pruning".into()))),
            Err(e) => Err(e.into()),
        })
        .collect();
    let mut rows = Vec::with_capacity(budgets.len());
    let mut sup = f64::NEG_INFINITY;
    let mut nondecreasing = true;
    let mut prev: Option<f64> = None;
    let mut increments = Vec::new();
    for (&b, cell) in budgets.iter().zip(cells) {
        let (edges, entropy, note) = cell?;
        if let Some(est) = entropy {
            if let Some(p) = prev {
                nondecreasing &= est.value >= p - tol;
                increments.push(est.value - p);
            }
            prev = Some(est.value);
            sup = sup.max(est.value);
        }
        rows.push(FiltrationRow { budget: b, edges, entropy, running_sup: sup, note });
    }
    let diverging = increments.len() >= 2 && increments[increments.len() - 2..].iter().all(|&d| d > DIVERGENCE_STEP);
    Ok(FiltrationReport { rows, supremum: sup, nondecreasing, diverging })
}

/// Max rule over pairwise disjoint invariant clopen pieces.
pub fn disjoint_union_entropy(components: &[Estimate]) -> Option<Estimate> {
    components.iter().copied().reduce(|a, b| Estimate {
        value: a.value.max(b.value),
        lo: a.lo.max(b.lo),
        hi: a.hi.max(b.hi),
    })
}

/// Entropy of each component of `g` (spectral for finite components, the
/// filtration supremum over `budgets` for an infinite one) and their max.
pub fn union_entropy(
    g: &Ultragraph,
    budgets: &[usize],
    tol: f64,
) -> Result<(Vec<Estimate>, Estimate), GraphEntropyError> {
    let parts: Vec<Estimate> = g
        .components()
        .par_iter()
        .map(|c| {
            if c.is_finite() {
                let fg = FiniteGraph::from_ultragraph(c)?;
                Ok(Estimate::from(&finite_graph_entropy_spectral(&fg, tol)?))
            } else {
                let rep = rowfinite_entropy_sup(c, budgets, tol)?;
                let last = rep.rows.iter().rev().find_map(|r| r.entropy).ok_or_else(|| {
                    GraphEntropyError::Unsupported(format!("every budget of {} is empty", c.name()))
                })?;
                Ok(Estimate { value: rep.supremum, lo: last.lo, hi: rep.supremum.max(last.hi) })
            }
        })
        .collect::<Result<_, GraphEntropyError>>()?;
    let max = disjoint_union_entropy(&parts).expect("a graph has a component");
    Ok((parts, max))
}
