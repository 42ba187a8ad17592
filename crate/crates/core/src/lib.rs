//! Entropy of Deaconu-Renault systems.
//!
//! Two entropies are computed for partially defined local homeomorphisms
//! `σ: Dom(σ) → X`: a metric entropy built from separated and spanning sets of
//! the iterate pseudo-metric `d_n`, and a topological entropy built from
//! iterated joins of open covers. The main instances are shift spaces of
//! finite graphs, row-finite infinite graphs and ultragraphs (graphs whose
//! edges have set-valued ranges).
//!
//! | Module | Contents |
//! |--------|----------|
//! | [`dr_core`] | the system contract, `I_n`, `d_n`, dynamical balls, two exact toy systems |
//! | [`graph_model`] | ultragraph presentations, built-in families, path counting |
//! | [`shift_space`] | ultrapaths, the enumeration of `S`, metrics `d_X` / first-difference / Gurevich |
//! | [`metric_entropy`] | separated/spanning solvers, `ssep`, entropy reports |
//! | [`cover_entropy`] | the cylinder algebra, joins, pullbacks, `N(α_n, K_n)` |
//! | [`graph_entropy`] | path-count and spectral entropies, subgraph filtrations |
//!
//! Distances are exact rationals throughout. Floating point only appears in
//! logarithms and spectral radii.

pub mod cover_entropy;
pub mod dr_core;
pub mod graph_entropy;
pub mod graph_model;
pub mod metric_entropy;
pub mod numeric;
pub mod shift_space;
