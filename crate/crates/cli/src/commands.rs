//! Entropy pipelines behind `finite`, `rowfinite`, `cover` and `metric`.

use num_bigint::BigUint;

use dr_entropy::cover_entropy::{cover_entropy_estimate, renewal_cover, word_cover, DEFAULT_ATOM_BUDGET};
use dr_entropy::graph_entropy::{finite_graph_entropy_pathcount, finite_graph_entropy_spectral, rowfinite_entropy_sup};
use dr_entropy::graph_model::{count_paths_upto, FiniteGraph, Ultragraph};
use dr_entropy::metric_entropy::{entropy_estimate, KSpec};
use dr_entropy::shift_space::{EnumKind, GraphShiftSystem, Metric, PathEnumeration};

use crate::report::{Cell, Report};
use crate::CliError;

/// Both finite-graph pipelines side by side. They agree when the path-count
/// estimate or its tail trend is within `log(#edges)/n_max + tol` of the
/// spectral value.
pub fn finite(g: &Ultragraph, source: &str, n_max: usize, tol: f64) -> Result<Report, CliError> {
    let fg = FiniteGraph::from_ultragraph(g).map_err(|e| CliError::Input(e.to_string()))?;
    let counts = count_paths_upto(&fg, n_max);
    let p = finite_graph_entropy_pathcount(&fg, n_max).map_err(|e| CliError::Input(e.to_string()))?;
    let s = finite_graph_entropy_spectral(&fg, tol).map_err(|e| CliError::Input(e.to_string()))?;
    let mut r = Report::new("finite", &["n", "paths", "h_n"]);
    r.param("graph", source);
    r.param("nmax", n_max);
    r.param("tol", tol);
    for (i, (c, h)) in counts.iter().zip(&p.sequence).enumerate() {
        r.row(vec![(i + 1).into(), c.clone().into(), (*h).into()]);
    }
    let bound = (fg.edge_count() as f64).ln() / n_max as f64 + tol;
    let spectral = s.log_lambda();
    let agree = if s.lambda == 0.0 {
        counts.last().is_some_and(|c| *c == BigUint::from(0u32))
    } else {
        (p.estimate - spectral).abs() <= bound || (p.trend - spectral).abs() <= bound
    };
    r.note("pathcount_estimate", p.estimate);
    r.note("pathcount_trend", p.trend);
    r.note("spectral_log_lambda", spectral);
    r.note("spectral_log_lo", s.log_lo);
    r.note("spectral_log_hi", s.log_hi);
    r.note("spectral_iterations", s.iterations);
    r.note("spectral_converged", s.converged);
    r.note("agreement_bound", bound);
    r.note("agreement", agree);
    r.ok = agree && s.converged;
    Ok(r)
}

pub fn rowfinite(g: &Ultragraph, source: &str, budgets: &[usize], tol: f64) -> Result<Report, CliError> {
    let rep = rowfinite_entropy_sup(g, budgets, tol).map_err(|e| CliError::Input(e.to_string()))?;
    let mut r = Report::new("rowfinite", &["budget", "entropy_lo", "entropy_hi", "running_sup"]);
    r.param("graph", source);
    r.param("budgets", budgets.iter().map(|b| b.to_string()).collect::<Vec<_>>().join(","));
    r.param("tol", tol);
    let mut notes = Vec::new();
    for row in &rep.rows {
        let finite_sup = row.running_sup.is_finite().then_some(row.running_sup);
        r.row(vec![row.budget.into(), row.entropy.map(|e| e.lo).into(), row.entropy.map(|e| e.hi).into(), finite_sup.into()]);
        if let Some(n) = &row.note {
            notes.push(format!("budget {}: {n}", row.budget));
        }
    }
    r.note("supremum", rep.supremum);
    r.note("nondecreasing", rep.nondecreasing);
    r.note("diverging", rep.diverging);
    if !notes.is_empty() {
        r.note("notes", notes.join("; "));
    }
    Ok(r)
}

pub enum CoverSpec {
    Renewal(usize),
    Words { graph: Ultragraph, depth: usize },
}

pub fn parse_cover_spec(spec: &str, depth: usize) -> Result<CoverSpec, CliError> {
    if let Some(m) = spec.trim().strip_prefix("renewal:") {
        let m: usize = m.trim().parse().map_err(|_| CliError::Input(format!("bad renewal parameter {m:?}")))?;
        if m == 0 {
            return Err(CliError::Input("renewal:m needs m ≥ 1".into()));
        }
        return Ok(CoverSpec::Renewal(m));
    }
    let graph = dr_entropy::graph_model::parse_builtin(spec).map_err(|e| CliError::Input(e.to_string()))?;
    if !graph.is_finite() {
        return Err(CliError::Input(format!("{spec}: word covers need a finite graph; use renewal:m for the renewal shift")));
    }
    Ok(CoverSpec::Words { graph, depth })
}

/// Rows `n = 0..=n_max` of `N(α_n, X_n)`, `a_n/n` and the running infimum.
/// For the renewal covers the count must be exactly `2^n · M`.
pub fn cover(spec: &CoverSpec, source: &str, n_max: usize) -> Result<(Report, bool), CliError> {
    let (g, c, size) = match spec {
        CoverSpec::Renewal(m) => {
            let rc = renewal_cover(*m);
            (Ultragraph::renewal(), rc.cover, Some(rc.size))
        }
        CoverSpec::Words { graph, depth } => {
            let c = word_cover(graph, *depth).map_err(|e| CliError::Input(e.to_string()))?;
            (graph.clone(), c, None)
        }
    };
    let est = cover_entropy_estimate(&g, &c, n_max, DEFAULT_ATOM_BUDGET).map_err(|e| CliError::Input(e.to_string()))?;
    let seq = &est.sequence;
    let mut r = Report::new("cover", &["n", "count", "ratio", "running_inf"]);
    r.param("cover", source);
    if let CoverSpec::Words { depth, .. } = spec {
        r.param("depth", *depth);
    }
    r.param("nmax", n_max);
    for (n, count) in seq.counts.iter().enumerate() {
        let (ratio, inf) = if n == 0 { (None, None) } else { (Some(seq.ratios[n - 1]), Some(seq.running_inf[n - 1])) };
        r.row(vec![n.into(), count.clone().into(), ratio.into(), inf.into()]);
    }
    r.note("members", c.len());
    r.note("estimate", est.estimate);
    r.note("last_ratio", est.last_ratio);
    r.note("subadditive", seq.subadditive);
    let mut doubling = true;
    if let Some(m) = size {
        doubling = seq.counts.iter().enumerate().all(|(n, k)| *k == (BigUint::from(1u32) << n) * BigUint::from(m));
        let bound = (m as f64).ln() / n_max as f64;
        r.note("gap_to_log2", (est.estimate - 2f64.ln()).abs());
        r.note("gap_bound", bound);
        r.note("doubling", doubling);
    }
    r.ok = doubling && seq.subadditive;
    Ok((r, doubling))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum MetricChoice {
    Dx,
    FirstDifference,
}

pub struct MetricOptions {
    pub metric: MetricChoice,
    pub eps: Vec<u32>,
    pub n_max: usize,
    pub budget: Option<usize>,
    pub enum_budget: usize,
}

pub fn metric(g: &Ultragraph, source: &str, o: &MetricOptions) -> Result<Report, CliError> {
    let budget = match (o.budget, g.edge_count()) {
        (Some(b), _) => b,
        (None, Some(n)) => n,
        (None, None) => return Err(CliError::Input(format!("{source} is infinite: pass --budget"))),
    };
    let sys = match o.metric {
        MetricChoice::Dx => GraphShiftSystem::enumerated(g.clone(), PathEnumeration::new(g, EnumKind::default(), o.enum_budget)),
        MetricChoice::FirstDifference => GraphShiftSystem::new(g.clone(), Metric::FirstDifference),
    };
    let rep = entropy_estimate(&sys, &KSpec::budget(budget), &o.eps, o.n_max).map_err(|e| CliError::Input(e.to_string()))?;
    let mut r = Report::new("metric", &["eps_exponent", "n", "ssep", "h"]);
    r.param("graph", source);
    r.param("metric", if o.metric == MetricChoice::Dx { "dx" } else { "first-difference" });
    r.param("eps", o.eps.iter().map(|j| j.to_string()).collect::<Vec<_>>().join(","));
    r.param("nmax", o.n_max);
    r.param("budget", budget);
    for c in &rep.cells {
        r.row(vec![Cell::from(c.eps_exponent as usize), c.n.into(), c.count.clone().into(), c.h.into()]);
    }
    for s in &rep.per_eps {
        r.note(&format!("window_max_eps{}", s.eps_exponent), s.window_max);
        r.note(&format!("rate_eps{}", s.eps_exponent), s.rate);
    }
    r.note("estimate", rep.estimate);
    r.note("eps_monotone", rep.eps_monotone);
    Ok(r)
}
