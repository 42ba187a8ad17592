//! Randomized checks of the cover-counting inequalities on small covers.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::cover::{iterate_cover, join, minimal_subcover_count, pullback_cover, Carrier, Cover};
use super::cylinder::{union_contains, Cylinder};
use super::families::{renewal_cover, word_cover, words_over};
use super::{cover_entropy_estimate, CoverError};
use crate::graph_model::{EdgeId, Ultragraph};

const BUDGET: usize = 1 << 14;

#[derive(Debug, Clone, Serialize)]
pub struct LemmaCheck {
    pub name: String,
    pub instances: usize,
    pub holds: bool,
    pub counterexample: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct LemmaReport {
    pub checks: Vec<LemmaCheck>,
    pub all_hold: bool,
}

struct Tally {
    name: &'static str,
    instances: usize,
    counterexample: Option<String>,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Self { name, instances: 0, counterexample: None }
    }

    fn record(&mut self, ok: bool, dump: impl FnOnce() -> String) {
        self.instances += 1;
        if !ok && self.counterexample.is_none() {
            self.counterexample = Some(dump());
        }
    }

    fn finish(self) -> LemmaCheck {
        LemmaCheck {
            name: self.name.into(),
            instances: self.instances,
            holds: self.counterexample.is_none(),
            counterexample: self.counterexample,
        }
    }
}

fn n_of(g: &Ultragraph, a: &Cover) -> Result<usize, CoverError> {
    Ok(minimal_subcover_count(g, a, BUDGET)?.count)
}

fn dump(g: &Ultragraph, label: &str, a: &Cover) -> String {
    let carrier = match &a.carrier {
        Carrier::Whole => "X".to_string(),
        Carrier::Cylinders(cs) => cs.iter().map(|c| c.render(g)).collect::<Vec<_>>().join(" ∪ "),
    };
    format!("{label} on {}: carrier {carrier}; members {:?}", g.name(), a.render(g))
}

/// A cover of the whole space by unions of depth-2 cylinders, overlapping.
fn random_cover(g: &Ultragraph, rng: &mut ChaCha8Rng) -> Cover {
    let edges: Vec<EdgeId> = (0..g.edge_count().expect("finite")).map(EdgeId).collect();
    let pool: Vec<Cylinder> = words_over(g, &edges, 2)[2].iter().map(|w| Cylinder::word(g, w.clone())).collect();
    let mut members: Vec<Vec<Cylinder>> = Vec::new();
    for _ in 0..rng.gen_range(2..=4) {
        let k = rng.gen_range(1..=3.min(pool.len()));
        let mut m: Vec<Cylinder> = pool.choose_multiple(rng, k).cloned().collect();
        m.sort();
        members.push(m);
    }
    let all: Vec<Cylinder> = members.iter().flatten().cloned().collect();
    for c in &pool {
        if !union_contains(g, &all, std::slice::from_ref(c)) {
            members.push(vec![c.clone()]);
        }
    }
    Cover::new(members, Carrier::Whole, false)
}

/// A nonempty union of depth-1 cylinders.
fn random_carrier(g: &Ultragraph, rng: &mut ChaCha8Rng) -> Vec<Cylinder> {
    let n = g.edge_count().expect("finite");
    let k = rng.gen_range(1..=n);
    let mut idx: Vec<usize> = (0..n).collect();
    idx.shuffle(rng);
    let mut out: Vec<Cylinder> = idx[..k].iter().map(|&i| Cylinder::word(g, vec![EdgeId(i)])).collect();
    out.sort();
    out
}

fn with_carrier(a: &Cover, carrier: Carrier) -> Cover {
    Cover { carrier, ..a.clone() }
}

/// Checks, on `samples` random instances over small finite graphs:
/// `N(α∨β, Y∩Z) ≤ N(α,Y)N(β,Z)`; `N(σ^{-n}(α)_m, σ^{-n}(Y)_m) ≤ N(α_m,Y_m)`;
/// `N(α_{n+m}) ≤ N(α_n)N(α_m)`; `N(β_n,Y_n) ≤ N(β_n,Z_n)` for `Y ⊆ Z`;
/// monotonicity of the estimate in the carrier; subcovers count at least as
/// many; and finer renewal and word covers give larger estimates.
pub fn verify_cover_lemmas(seed: u64, samples: usize) -> Result<LemmaReport, CoverError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let graphs = [
        Ultragraph::rose(2).expect("k ≥ 1"),
        Ultragraph::golden_mean(),
        Ultragraph::cycle(3).expect("l ≥ 1"),
        Ultragraph::rose(3).expect("k ≥ 1"),
    ];
    let mut join_bound = Tally::new("join bound");
    let mut pullback_bound = Tally::new("pullback bound");
    let mut submult = Tally::new("submultiplicativity");
    let mut carrier_mono = Tally::new("carrier monotonicity");
    let mut entropy_mono = Tally::new("entropy monotone in the compact set");
    let mut subcover = Tally::new("subcover comparison");
    let mut finer = Tally::new("finer cover comparison");

    for s in 0..samples {
        let g = &graphs[s % graphs.len()];
        let y = Carrier::Cylinders(random_carrier(g, &mut rng));
        let z = if rng.gen_bool(0.5) { Carrier::Whole } else { Carrier::Cylinders(random_carrier(g, &mut rng)) };
        let a = with_carrier(&random_cover(g, &mut rng), y.clone());
        let b = with_carrier(&random_cover(g, &mut rng), z.clone());

        let (na, nb, nab) = (n_of(g, &a)?, n_of(g, &b)?, n_of(g, &join(g, &a, &b))?);
        join_bound.record(nab <= na * nb, || format!("{} | {} gives {nab} > {na}·{nb}", dump(g, "α", &a), dump(g, "β", &b)));

        let mut shifted = a.clone();
        for n in 1..=2 {
            shifted = pullback_cover(g, &shifted)?;
            for m in 0..=1 {
                let lhs = n_of(g, &iterate_cover(g, &shifted, m)?)?;
                let rhs = n_of(g, &iterate_cover(g, &a, m)?)?;
                pullback_bound.record(lhs <= rhs, || format!("{} n={n} m={m}: {lhs} > {rhs}", dump(g, "α", &a)));
            }
        }

        let counts: Vec<usize> =
            (0..=2).map(|n| n_of(g, &iterate_cover(g, &a, n)?)).collect::<Result<_, CoverError>>()?;
        for n in 0..=2 {
            for m in 0..=2 - n {
                let ok = counts[n + m] <= counts[n] * counts[m];
                submult.record(ok, || format!("{} n={n} m={m}: {counts:?}", dump(g, "α", &a)));
            }
        }

        // Y ⊆ Z with β covering Z
        let inner = Carrier::Cylinders(random_carrier(g, &mut rng));
        let nested = match (&inner, &z) {
            (Carrier::Cylinders(i), Carrier::Cylinders(o)) => Carrier::Cylinders(super::cylinder::intersect_unions(g, i, o)),
            (i, _) => i.clone(),
        };
        for n in 0..=2 {
            let lhs = n_of(g, &iterate_cover(g, &with_carrier(&b, nested.clone()), n)?)?;
            let rhs = n_of(g, &iterate_cover(g, &b, n)?)?;
            carrier_mono.record(lhs <= rhs, || format!("{} n={n}: {lhs} > {rhs}", dump(g, "β", &b)));
        }

        let words = word_cover(g, rng.gen_range(1..=2))?;
        let small = cover_entropy_estimate(g, &with_carrier(&words, y.clone()), 6, BUDGET)?.estimate;
        let big = cover_entropy_estimate(g, &words, 6, BUDGET)?.estimate;
        entropy_mono.record(small <= big + 1e-12, || format!("{}: {small} > {big}", dump(g, "words", &words)));

        // a ⊆ a ∪ extra, both covering Y
        let extra = random_cover(g, &mut rng);
        let mut members = a.members.clone();
        members.extend(extra.members);
        let bigger = Cover::new(members, y.clone(), false);
        for n in 0..=1 {
            let lhs = n_of(g, &iterate_cover(g, &bigger, n)?)?;
            let rhs = n_of(g, &iterate_cover(g, &a, n)?)?;
            subcover.record(lhs <= rhs, || format!("{} n={n}: {lhs} > {rhs}", dump(g, "α", &a)));
        }
    }

    let renewal = Ultragraph::renewal();
    for m in 1..=3 {
        let coarse = cover_entropy_estimate(&renewal, &renewal_cover(m).cover, 10, BUDGET)?.estimate;
        let fine = cover_entropy_estimate(&renewal, &renewal_cover(m + 1).cover, 10, BUDGET)?.estimate;
        finer.record(coarse <= fine + 1e-12, || format!("renewal m={m}: {coarse} > {fine}"));
    }
    for g in &graphs {
        for m in 1..=2 {
            let coarse = cover_entropy_estimate(g, &word_cover(g, m)?, 8, BUDGET)?.estimate;
            let fine = cover_entropy_estimate(g, &word_cover(g, m + 1)?, 8, BUDGET)?.estimate;
            finer.record(coarse <= fine + 1e-12, || format!("{} m={m}: {coarse} > {fine}", g.name()));
        }
    }

    let checks: Vec<LemmaCheck> = [join_bound, pullback_bound, submult, carrier_mono, entropy_mono, subcover, finer]
        .into_iter()
        .map(Tally::finish)
        .collect();
    let all_hold = checks.iter().all(|c| c.holds);
    Ok(LemmaReport { checks, all_hold })
}
