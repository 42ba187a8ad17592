use super::*;
use crate::dr_core::IntervalDoubling;
use crate::graph_model::Ultragraph;
use crate::numeric::{dyadic, rational};
use crate::shift_space::{EnumKind, GraphShiftSystem, Metric, PathEnumeration};
use num_bigint::BigUint;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn fd(g: Ultragraph) -> GraphShiftSystem {
    GraphShiftSystem::new(g, Metric::FirstDifference)
}

fn dx(g: Ultragraph, budget: usize) -> GraphShiftSystem {
    let en = PathEnumeration::new(&g, EnumKind::default(), budget);
    GraphShiftSystem::enumerated(g, en)
}

#[test]
fn interval_doubling_instance() {
    let sys = IntervalDoubling;
    let pts = vec![rational(0, 1), rational(6, 25), rational(1, 4)];
    let inst = SepSpanInstance::from_system(&sys, &pts, 3, rational(1, 2), Restriction::Unrestricted).unwrap();
    assert_eq!(inst.dist[0][1], rational(24, 25));
    let sep = inst.max_separated();
    assert_eq!((sep.size, sep.witness.clone(), sep.exact), (2, vec![0, 1], true));
    let chain = verify_sep_span_chain(&inst);
    assert!(chain.holds && chain.exact);
    // restricted to Dom(σ^2) = [0, 1/4) only 0 and 6/25 remain
    let r = SepSpanInstance::from_system(&sys, &pts, 3, rational(1, 2), Restriction::DomRestricted).unwrap();
    assert_eq!(r.kept, vec![0, 1]);
}

#[test]
fn ties_are_not_separated() {
    let d = vec![vec![rational(0, 1), rational(1, 2)], vec![rational(1, 2), rational(0, 1)]];
    let inst = SepSpanInstance::from_matrix(d, 1, rational(1, 2));
    assert_eq!(inst.max_separated().size, 1);
    assert_eq!(inst.min_spanning().size, 1);
}

#[test]
fn first_difference_counts_paths() {
    let sys = fd(Ultragraph::rose(3).unwrap());
    let k = KSpec::budget(3);
    for n in 1..=6 {
        let c = ssep_count(&sys, &k, n, &dyadic(3)).unwrap();
        assert_eq!(c.count, BigUint::from(3u32).pow(n as u32 + 1));
        assert_eq!(ssep_count(&sys, &k, n, &dyadic(1)).unwrap().count, BigUint::from(1u32));
    }
}

#[test]
fn class_count_matches_bruteforce_on_rose2() {
    let g = Ultragraph::rose(2).unwrap();
    for sys in [fd(g.clone()), dx(g.clone(), 300)] {
        for n in 1..=4 {
            for j in 1..=3 {
                let k = KSpec::budget(2);
                let fast = ssep_count(&sys, &k, n, &dyadic(j)).unwrap();
                let slow = ssep_bruteforce(&sys, &k, n, &dyadic(j)).unwrap();
                assert_eq!(fast.count, slow.count, "n={n} eps=1/2^{j}");
                if let Metric::FirstDifference = sys.metric {
                    // distinct length-(n+j-2) words, one separated point each
                    let want = if j == 1 { 1 } else { 1u32 << (n + j as usize - 2) };
                    assert_eq!(fast.count, BigUint::from(want));
                }
            }
        }
    }
}

#[test]
fn class_count_matches_bruteforce_on_renewal() {
    let sys = dx(Ultragraph::renewal(), 400);
    for budget in [2, 3] {
        for n in 1..=3 {
            for j in 1..=4 {
                let k = KSpec::budget(budget);
                let fast = ssep_count(&sys, &k, n, &dyadic(j)).unwrap();
                let slow = ssep_bruteforce(&sys, &k, n, &dyadic(j)).unwrap();
                assert_eq!(fast.count, slow.count, "budget={budget} n={n} eps=1/2^{j}");
            }
        }
    }
}

#[test]
fn density_is_enforced() {
    let sys = fd(Ultragraph::rose(2).unwrap());
    let k = KSpec { budget: 2, depth: Some(3) };
    assert!(matches!(
        ssep_bruteforce(&sys, &k, 2, &dyadic(3)),
        Err(MetricError::DensityInsufficient { .. })
    ));
}

#[test]
fn ssep_monotone_in_n_and_eps() {
    let sys = dx(Ultragraph::rose(3).unwrap(), 400);
    let k = KSpec::budget(3);
    let mut prev = BigUint::from(0u32);
    for n in 1..=6 {
        let c = ssep_count(&sys, &k, n, &dyadic(5)).unwrap().count;
        assert!(c >= prev);
        assert!(c >= ssep_count(&sys, &k, n, &dyadic(4)).unwrap().count);
        prev = c;
    }
}

#[test]
fn rose3_estimate() {
    let sys = fd(Ultragraph::rose(3).unwrap());
    let rep = entropy_estimate(&sys, &KSpec::budget(3), &[2, 3], 12).unwrap();
    let log3 = 3f64.ln();
    assert!((rep.estimate - log3).abs() < 1e-9);
    // the half-window maximum sits at n = 6: (7/6) log 3
    assert!((rep.per_eps[1].window_max - 7.0 / 6.0 * log3).abs() < 1e-9);
    assert!(rep.eps_monotone);
    assert!(rep.per_eps.iter().all(|s| s.monotone_in_n));
    assert_eq!(rep.cell(3, 4).unwrap().count, BigUint::from(243u32));
}

#[test]
fn loop_and_union_estimates() {
    let one = fd(Ultragraph::rose(1).unwrap());
    let rep = entropy_estimate(&one, &KSpec::budget(1), &[2, 4], 8).unwrap();
    assert!(rep.cells.iter().all(|c| c.h == 0.0));
    let u = Ultragraph::disjoint_union(&[Ultragraph::rose(3).unwrap(), Ultragraph::rose(2).unwrap()]).unwrap();
    let rep = entropy_estimate(&fd(u), &KSpec::budget(5), &[3], 12).unwrap();
    assert!((rep.estimate - 3f64.ln()).abs() < 0.05);
}

#[test]
fn bad_schedules() {
    let sys = fd(Ultragraph::rose(2).unwrap());
    assert!(entropy_estimate(&sys, &KSpec::budget(2), &[], 4).is_err());
    assert!(entropy_estimate(&sys, &KSpec::budget(2), &[3, 2], 4).is_err());
}

#[test]
fn random_chain_instances() {
    let insts = random::random_rose_instances(7, 60, 12).unwrap();
    for inst in &insts {
        let r = verify_sep_span_chain(inst);
        assert!(r.exact && r.holds, "{r:?}");
    }
}

/// Exhaustive maximum: every subset.
fn brute_clique(adj: &[Vec<bool>]) -> usize {
    let n = adj.len();
    (0u32..1 << n)
        .filter(|&m| (0..n).all(|i| (0..n).all(|j| i == j || m >> i & 1 == 0 || m >> j & 1 == 0 || adj[i][j])))
        .map(|m| m.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

fn brute_domination(close: &[Vec<bool>]) -> usize {
    let n = close.len();
    (1u32..1 << n)
        .filter(|&m| (0..n).all(|v| (0..n).any(|u| m >> u & 1 == 1 && (u == v || close[u][v]))))
        .map(|m| m.count_ones() as usize)
        .min()
        .unwrap_or(0)
}

proptest! {
    #[test]
    fn solvers_match_exhaustive(seed in any::<u64>(), n in 1usize..=12, p in 0.1f64..0.9) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let adj = random::random_relation(&mut rng, n, p);
        let c = max_clique(&adj);
        prop_assert!(c.exact);
        prop_assert_eq!(c.size, brute_clique(&adj));
        prop_assert!(c.witness.iter().all(|&i| c.witness.iter().all(|&j| i == j || adj[i][j])));
        let d = min_dominating(&adj);
        prop_assert!(d.exact);
        prop_assert_eq!(d.size, brute_domination(&adj));
    }

    #[test]
    fn greedy_bounds_bracket(seed in any::<u64>(), n in 65usize..90) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let adj = random::random_relation(&mut rng, n, 0.5);
        let c = max_clique(&adj);
        prop_assert!(c.lower <= c.upper && c.size == c.witness.len());
        let d = min_dominating(&adj);
        prop_assert!(d.lower <= d.upper);
    }
}
