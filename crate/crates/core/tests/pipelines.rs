use num_bigint::BigUint;
use proptest::prelude::*;

use dr_entropy::cover_entropy::{cover_entropy_estimate, word_cover, DEFAULT_ATOM_BUDGET};
use dr_entropy::graph_entropy::{finite_graph_entropy_spectral, rowfinite_entropy_sup};
use dr_entropy::graph_model::{count_paths, parse_builtin, FiniteGraph, Ultragraph};
use dr_entropy::metric_entropy::{entropy_estimate, ssep_count, KSpec};
use dr_entropy::numeric::{dyadic, ln_biguint};
use dr_entropy::shift_space::{GraphShiftSystem, Metric};

/// A graph on `k` vertices where vertex `i` has an edge to `first[i]`, plus
/// the `extra` edges.
fn graph(k: usize, first: &[usize], extra: &[(usize, usize)]) -> Ultragraph {
    let vertices = (0..k).map(|v| format!("v{v}")).collect();
    let mut edges: Vec<(String, usize, Vec<usize>)> =
        (0..k).map(|v| (format!("a{v}"), v, vec![first[v] % k])).collect();
    for (i, &(s, t)) in extra.iter().enumerate() {
        edges.push((format!("b{i}"), s % k, vec![t % k]));
    }
    Ultragraph::explicit("random", vertices, edges).unwrap()
}

fn arb_graph() -> impl Strategy<Value = Ultragraph> {
    (1usize..=4)
        .prop_flat_map(|k| (Just(k), prop::collection::vec(0..k, k), prop::collection::vec((0..k, 0..k), 0..5)))
        .prop_map(|(k, first, extra)| graph(k, &first, &extra))
}

/// `(a_{n_max} - a_{n_0}) / (n_max - n_0)` over a sequence indexed from 0.
fn rate(a: &[f64]) -> f64 {
    let n_max = a.len() - 1;
    let n0 = n_max.div_ceil(2);
    (a[n_max] - a[n0]) / (n_max - n0) as f64
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn path_counts_dominate_the_radius(g in arb_graph()) {
        let fg = FiniteGraph::from_ultragraph(&g).unwrap();
        let s = finite_graph_entropy_spectral(&fg, 1e-10).unwrap();
        prop_assume!(s.converged && s.lambda > 0.0);
        // 1ᵀ A^{n-1} 1 ≥ ρ(A)^{n-1}
        for n in 1..=12 {
            let c = ln_biguint(&count_paths(&fg, n).count);
            prop_assert!(c >= (n - 1) as f64 * s.log_lambda() - 1e-8);
        }
    }

    #[test]
    fn word_cover_counts_are_path_counts(g in arb_graph(), m in 1usize..=2) {
        let fg = FiniteGraph::from_ultragraph(&g).unwrap();
        let est = cover_entropy_estimate(&g, &word_cover(&g, m).unwrap(), 6, DEFAULT_ATOM_BUDGET).unwrap();
        for (n, c) in est.sequence.counts.iter().enumerate() {
            prop_assert_eq!(c, &count_paths(&fg, n + m).count);
        }
        prop_assert!(est.sequence.subadditive);
    }

    #[test]
    fn first_difference_ssep_counts_words(g in arb_graph(), n in 1usize..=4, j in 2u32..=4) {
        let fg = FiniteGraph::from_ultragraph(&g).unwrap();
        let sys = GraphShiftSystem::new(g.clone(), Metric::FirstDifference);
        let k = KSpec::budget(fg.edge_count());
        let c = ssep_count(&sys, &k, n, &dyadic(j)).unwrap();
        prop_assert_eq!(c.count, count_paths(&fg, n + j as usize - 2).count);
    }
}

#[test]
fn three_pipelines_agree_on_ladder_truncations() {
    for m in 2..=4 {
        let g = Ultragraph::ladder_finite(m).unwrap();
        let spectral = finite_graph_entropy_spectral(&FiniteGraph::from_ultragraph(&g).unwrap(), 1e-10).unwrap();
        let cover = cover_entropy_estimate(&g, &word_cover(&g, 2).unwrap(), 12, DEFAULT_ATOM_BUDGET).unwrap();
        let sys = GraphShiftSystem::new(g.clone(), Metric::FirstDifference);
        let metric = entropy_estimate(&sys, &KSpec::budget(2 * m), &[3], 12).unwrap();
        let h = spectral.log_lambda();
        assert!((rate(&cover.sequence.values) - h).abs() < 0.05, "m={m}");
        assert!((metric.estimate - h).abs() < 0.05, "m={m}");
    }
}

#[test]
fn builtins_round_trip_through_their_names() {
    for spec in ["rose:3", "cycle:4", "golden_mean", "ladder:3", "union(rose:2,cycle:3)"] {
        let g = parse_builtin(spec).unwrap();
        let fg = FiniteGraph::from_ultragraph(&g).unwrap();
        assert!(fg.edge_count() > 0, "{spec}");
    }
    assert!(parse_builtin("rose:0").is_err());
    assert!(parse_builtin("union(rose:2").is_err());
    assert!(!parse_builtin("renewal").unwrap().is_graph());
}

#[test]
fn filtration_is_monotone_along_nested_budgets() {
    let g = parse_builtin("union(rose:2,ladder)").unwrap();
    let budgets: Vec<usize> = (1..=14).collect();
    let r = rowfinite_entropy_sup(&g, &budgets, 1e-10).unwrap();
    assert!(r.nondecreasing);
    let sups: Vec<f64> = r.rows.iter().map(|row| row.running_sup).collect();
    assert!(sups.windows(2).all(|w| w[0] <= w[1]));
    assert!((r.supremum - 2f64.ln()).abs() < 1e-9);
    let total: BigUint = count_paths(&FiniteGraph::from_ultragraph(&Ultragraph::rose(2).unwrap()).unwrap(), 5).count;
    assert_eq!(total, BigUint::from(32u32));
}
