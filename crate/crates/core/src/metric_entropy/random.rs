//! Seeded random instances for the solver and chain suites.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{MetricError, Restriction, SepSpanInstance};
use crate::graph_model::Ultragraph;
use crate::numeric::dyadic;
use crate::shift_space::{representatives, EnumKind, GraphShiftSystem, Metric, PathEnumeration};

/// Symmetric irreflexive relation on `n` vertices, each pair with
/// probability `p`.
#[allow(clippy::needless_range_loop)]
pub fn random_relation(rng: &mut impl Rng, n: usize, p: f64) -> Vec<Vec<bool>> {
    let mut adj = vec![vec![false; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let b = rng.gen_bool(p);
            adj[i][j] = b;
            adj[j][i] = b;
        }
    }
    adj
}

/// `count` instances of at most `max_points` representatives of rose-2 or
/// rose-3, alternating `d_X` and the first-difference metric, with random
/// `n ≤ 3` and dyadic `ε`.
pub fn random_rose_instances(seed: u64, count: usize, max_points: usize) -> Result<Vec<SepSpanInstance>, MetricError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let systems: Vec<GraphShiftSystem> = [2usize, 3]
        .iter()
        .flat_map(|&k| {
            let g = Ultragraph::rose(k).expect("k ≥ 1");
            let en = PathEnumeration::new(&g, EnumKind::default(), 300);
            [GraphShiftSystem::enumerated(g.clone(), en), GraphShiftSystem::new(g, Metric::FirstDifference)]
        })
        .collect();
    let mut out = Vec::with_capacity(count);
    for i in 0..count {
        let sys = &systems[i % systems.len()];
        let n = rng.gen_range(1..=3);
        let depth = n + rng.gen_range(0..=2);
        let k = sys.graph.edge_count().expect("finite");
        let mut points = representatives(&sys.graph, k, depth);
        points.shuffle(&mut rng);
        points.truncate(rng.gen_range(1..=max_points));
        let eps = dyadic(rng.gen_range(1..=6));
        out.push(SepSpanInstance::from_system(sys, &points, n, eps, Restriction::DomRestricted)?);
    }
    Ok(out)
}
