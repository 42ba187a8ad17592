use std::collections::{HashMap, HashSet};

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::{MetricError, Restriction, SepSpanInstance};
use crate::dr_core::DrError;
use crate::graph_model::{EdgeId, EmitterId, Ultragraph};
use crate::numeric::dyadic;
use crate::shift_space::{cylinder_delta, representatives, GraphShiftSystem, Metric, Segment, Tail, Ultrapath};

/// A compact set `K`: the points that use only the first `budget` edges.
/// `depth` pins the representative depth of the brute-force path; `None`
/// takes the smallest depth meeting the density condition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct KSpec {
    pub budget: usize,
    pub depth: Option<usize>,
}

impl KSpec {
    pub fn budget(budget: usize) -> Self {
        Self { budget, depth: None }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum SsepMethod {
    /// Classes of the equivalence `d_n ≤ ε` on `K ∩ Dom(σ^{n-1})`.
    ClassCount { window: usize },
    /// Maximum clique over representatives.
    BruteForce { depth: usize, points: usize, exact: bool },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SsepCount {
    pub n: usize,
    pub eps: BigRational,
    pub count: BigUint,
    pub method: SsepMethod,
}

/// Smallest `t ≥ 1` with `1/2^t ≤ ε`: `d ≤ ε` iff the base distance is
/// decided after `t - 1` dyadic levels.
fn threshold(eps: &BigRational) -> u32 {
    assert!(*eps > BigRational::zero(), "eps must be positive");
    let mut t = 1;
    while dyadic(t) > *eps {
        t += 1;
    }
    t
}

/// Number of live words of each length `0..=max_len` (length 0 counts the
/// empty word once) and of `X_fin` points of each length.
fn live_counts(g: &Ultragraph, live: &[EdgeId], max_len: usize) -> (Vec<BigUint>, Vec<BigUint>) {
    let k = live.len();
    let ems: Vec<usize> = live.iter().map(|&e| g.minimal_infinite_emitters(e).len()).collect();
    let succ: Vec<Vec<usize>> =
        live.iter().map(|&e| (0..k).filter(|&j| g.follows(e, live[j])).collect()).collect();
    let mut zero: Vec<EmitterId> = live.iter().flat_map(|&e| g.minimal_infinite_emitters(e)).collect();
    zero.sort();
    zero.dedup();
    let mut words = vec![BigUint::one()];
    let mut xfin = vec![BigUint::from(zero.len())];
    // ending[j]: words of the current length ending at live[j]
    let mut ending = vec![BigUint::one(); k];
    for len in 1..=max_len {
        if len > 1 {
            let mut next = vec![BigUint::zero(); k];
            for (i, c) in ending.iter().enumerate() {
                for &j in &succ[i] {
                    next[j] += c;
                }
            }
            ending = next;
        }
        words.push(ending.iter().sum());
        xfin.push(ending.iter().zip(&ems).map(|(c, &m)| c * BigUint::from(m)).sum());
    }
    (words, xfin)
}

/// `ssep(n, ε, K) = sep(n, ε, K ∩ Dom(σ^{n-1}))`.
///
/// The base metrics here are ultrametrics, so `d_n ≤ ε` is an equivalence on
/// `Dom(σ^{n-1})` and a maximum separated set picks one point per class. The
/// class of a point is fixed by its first `n - 1 + w` symbols, where the
/// window `w` is what the base distance can see above `ε`.
pub fn ssep_count(sys: &GraphShiftSystem, k: &KSpec, n: usize, eps: &BigRational) -> Result<SsepCount, MetricError> {
    assert!(n >= 1, "n must be at least 1");
    let g = &*sys.graph;
    let live = g.live_budget_edges(k.budget);
    let t = threshold(eps) as usize;
    let done = |count: BigUint, window: usize| SsepCount { n, eps: eps.clone(), count, method: SsepMethod::ClassCount { window } };
    let (_, xfin0) = live_counts(g, &live, 0);
    if live.is_empty() && xfin0[0].is_zero() {
        return Ok(done(BigUint::zero(), 0));
    }
    match &sys.metric {
        Metric::FirstDifference => {
            let w = t - 1;
            if w == 0 {
                return Ok(done(BigUint::one(), 0));
            }
            let (words, xfin) = live_counts(g, &live, n - 1 + w);
            let mut count = words[n - 1 + w].clone();
            for x in &xfin[n - 1..n - 1 + w] {
                count += x;
            }
            Ok(done(count, w))
        }
        Metric::Enumerated(en) => {
            let segs = t - 1;
            if segs == 0 {
                return Ok(done(BigUint::one(), 0));
            }
            if en.len() < segs {
                return Err(DrError::InsufficientBudget { bound: dyadic(en.len() as u32 + 1) }.into());
            }
            let segs = &en.items()[..segs];
            let w = segs.iter().map(Segment::len).max().unwrap_or(0) + 1;
            Ok(done(BigUint::from(count_keys(g, &live, segs, n, w)?), w))
        }
    }
}

struct Keys<'a> {
    g: &'a Ultragraph,
    segs: &'a [Segment],
    ids: HashMap<(u32, Vec<u64>), u32>,
    windows: HashMap<Vec<EdgeId>, Vec<u64>>,
}

impl Keys<'_> {
    fn bits(&self, x: &Ultrapath) -> Result<Vec<u64>, DrError> {
        let mut out = vec![0u64; self.segs.len().div_ceil(64)];
        for (i, s) in self.segs.iter().enumerate() {
            if x.has_initial_segment(self.g, s)? {
                out[i / 64] |= 1 << (i % 64);
            }
        }
        Ok(out)
    }

    fn window(&mut self, win: &[EdgeId]) -> Result<Vec<u64>, DrError> {
        if let Some(b) = self.windows.get(win) {
            return Ok(b.clone());
        }
        let b = self.bits(&Ultrapath { word: win.to_vec(), tail: Tail::Truncated })?;
        self.windows.insert(win.to_vec(), b.clone());
        Ok(b)
    }

    fn intern(&mut self, parent: u32, comp: Vec<u64>) -> u32 {
        let next = self.ids.len() as u32 + 1;
        *self.ids.entry((parent, comp)).or_insert(next)
    }
}

fn count_keys(g: &Ultragraph, live: &[EdgeId], segs: &[Segment], n: usize, w: usize) -> Result<usize, DrError> {
    let mut keys = Keys { g, segs, ids: HashMap::new(), windows: HashMap::new() };
    let total = n - 1 + w;
    let mut states: HashSet<(Vec<EdgeId>, u32)> = HashSet::from([(Vec::new(), 0)]);
    for len in 1..=total {
        let mut next = HashSet::with_capacity(states.len() * 2);
        for (win, key) in &states {
            for &e in live {
                if let Some(&last) = win.last() {
                    if !g.follows(last, e) {
                        continue;
                    }
                }
                let mut nw = win.clone();
                nw.push(e);
                if nw.len() > w {
                    nw.remove(0);
                }
                let key = if len >= w { keys.window(&nw).map(|c| keys.intern(*key, c))? } else { *key };
                next.insert((nw, key));
            }
        }
        states = next;
    }
    let mut finals: HashSet<u32> = states.into_iter().map(|(_, k)| k).collect();

    // X_fin points of Dom(σ^{n-1}) too short for the word search
    let mut zero: Vec<EmitterId> = live.iter().flat_map(|&e| g.minimal_infinite_emitters(e)).collect();
    zero.sort();
    zero.dedup();
    let mut layer: Vec<Vec<EdgeId>> = vec![Vec::new()];
    for len in 0..total {
        if len >= n - 1 {
            for word in &layer {
                let ems = match word.last() {
                    Some(&e) => g.minimal_infinite_emitters(e),
                    None => zero.clone(),
                };
                for a in ems {
                    let mut x = Ultrapath { word: word.clone(), tail: Tail::Emitter(a) };
                    let mut key = 0;
                    for j in 0..n {
                        if j > 0 {
                            x = x.shift(g)?;
                        }
                        let c = keys.bits(&x)?;
                        key = keys.intern(key, c);
                    }
                    finals.insert(key);
                }
            }
        }
        let mut next = Vec::new();
        for word in &layer {
            for &e in live {
                if word.last().is_none_or(|&l| g.follows(l, e)) {
                    let mut w2 = word.clone();
                    w2.push(e);
                    next.push(w2);
                }
            }
        }
        layer = next;
    }
    Ok(finals.len())
}

/// `d_X` (or first-difference) diameter bound of depth-`D` cylinders.
fn delta(sys: &GraphShiftSystem, depth: usize) -> BigRational {
    match &sys.metric {
        Metric::Enumerated(en) => cylinder_delta(&sys.graph, en, depth),
        Metric::FirstDifference => dyadic(depth as u32 + 1),
    }
}

/// `ssep` by maximum clique over depth-`D` representatives restricted to
/// `Dom(σ^{n-1})`. Needs `δ(D - (n-1)) ≤ ε/4`.
pub fn ssep_bruteforce(
    sys: &GraphShiftSystem,
    k: &KSpec,
    n: usize,
    eps: &BigRational,
) -> Result<SsepCount, MetricError> {
    assert!(n >= 1, "n must be at least 1");
    let needed = eps / BigRational::from_integer(4.into());
    let fine = |d: usize| d + 1 >= n && delta(sys, d + 1 - n) <= needed;
    let depth = match k.depth {
        Some(d) => d,
        None => (n - 1..n + 64).find(|&d| fine(d)).unwrap_or(n + 63),
    };
    if !fine(depth) {
        let delta = if depth + 1 >= n { delta(sys, depth + 1 - n) } else { dyadic(0) };
        return Err(MetricError::DensityInsufficient { delta: Box::new(delta), needed: Box::new(needed) });
    }
    let points = representatives(&sys.graph, k.budget, depth);
    let inst = SepSpanInstance::from_system(sys, &points, n, eps.clone(), Restriction::DomRestricted)?;
    let r = inst.max_separated();
    Ok(SsepCount {
        n,
        eps: eps.clone(),
        count: BigUint::from(r.size),
        method: SsepMethod::BruteForce { depth, points: inst.len(), exact: r.exact },
    })
}
