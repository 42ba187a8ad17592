use std::sync::Arc;

use num_rational::BigRational;

use super::{dx_distance, first_difference, PathEnumeration, Segment, Tail, Ultrapath};
use crate::dr_core::{DrResult, DrSystem};
use crate::graph_model::{EdgeId, EmitterId, Ultragraph};
use crate::numeric::dyadic;

#[derive(Debug, Clone)]
pub enum Metric {
    /// `d_X` against a finite prefix of the enumeration of `S`.
    Enumerated(Arc<PathEnumeration>),
    /// `1/2^i` at the first differing edge.
    FirstDifference,
}

/// `(X, σ)` for an ultragraph, with a choice of base metric.
#[derive(Debug, Clone)]
pub struct GraphShiftSystem {
    pub graph: Arc<Ultragraph>,
    pub metric: Metric,
}

impl GraphShiftSystem {
    pub fn new(graph: Ultragraph, metric: Metric) -> Self {
        Self { graph: Arc::new(graph), metric }
    }

    pub fn enumerated(graph: Ultragraph, en: PathEnumeration) -> Self {
        Self::new(graph, Metric::Enumerated(Arc::new(en)))
    }

    pub fn enumeration(&self) -> Option<&PathEnumeration> {
        match &self.metric {
            Metric::Enumerated(en) => Some(en),
            Metric::FirstDifference => None,
        }
    }
}

impl DrSystem for GraphShiftSystem {
    type Point = Ultrapath;

    fn domain_horizon(&self, x: &Ultrapath, n: usize) -> DrResult<usize> {
        assert!(n >= 1);
        Ok(match x.finite_len() {
            Some(l) => l.min(n - 1),
            None => n - 1,
        })
    }

    fn shift(&self, x: &Ultrapath) -> DrResult<Ultrapath> {
        x.shift(&self.graph)
    }

    fn base_distance(&self, x: &Ultrapath, y: &Ultrapath) -> DrResult<BigRational> {
        match &self.metric {
            Metric::Enumerated(en) => dx_distance(&self.graph, en, x, y),
            Metric::FirstDifference => first_difference(&self.graph, x, y),
        }
    }

    /// For `x = (α, A)`: the infinite paths `α g …` for the first edges `g`
    /// emitted by `A`, which approach `x` as `g` grows.
    fn neighborhood(&self, x: &Ultrapath, _radius: &BigRational) -> Vec<Ultrapath> {
        let Tail::Emitter(a) = x.tail else { return Vec::new() };
        (0..64)
            .map(|k| {
                let mut w = x.word.clone();
                w.push(self.graph.emitter_nth_edge(a, k));
                Ultrapath { word: w, tail: Tail::Canonical }
            })
            .collect()
    }
}

/// One infinite path per live word of length `D` over the first `budget`
/// edges (continued by least-indexed live budget edges until a state
/// repeats), plus every `X_fin` point of length `≤ D` over those edges. At
/// `D = 0` only the zero-length points are listed.
pub fn representatives(g: &Ultragraph, budget: usize, depth: usize) -> Vec<Ultrapath> {
    let live = g.live_budget_edges(budget);
    let emitters = |e: EdgeId| -> Vec<EmitterId> { g.minimal_infinite_emitters(e) };
    let mut points = Vec::new();
    let mut zero: Vec<EmitterId> = live.iter().flat_map(|&e| emitters(e)).collect();
    zero.sort();
    zero.dedup();
    points.extend(zero.into_iter().map(Ultrapath::emitter_point));

    let mut layer: Vec<Vec<EdgeId>> = if depth >= 1 { live.iter().map(|&e| vec![e]).collect() } else { Vec::new() };
    for len in 1..=depth {
        for w in &layer {
            for a in emitters(*w.last().expect("nonempty")) {
                points.push(Ultrapath { word: w.clone(), tail: Tail::Emitter(a) });
            }
        }
        if len == depth {
            for w in &layer {
                if let Some(p) = live_extension(g, &live, w) {
                    points.push(p);
                }
            }
            break;
        }
        let mut next = Vec::new();
        for w in &layer {
            let last = *w.last().expect("nonempty");
            for &e in &live {
                if g.follows(last, e) {
                    let mut w2 = w.clone();
                    w2.push(e);
                    next.push(w2);
                }
            }
        }
        layer = next;
    }
    points
}

/// `w` continued by the least live follower until an edge repeats; `None`
/// when the live edges only lead into `X_fin`.
fn live_extension(g: &Ultragraph, live: &[EdgeId], w: &[EdgeId]) -> Option<Ultrapath> {
    let mut tail: Vec<EdgeId> = Vec::new();
    let mut cur = *w.last().expect("nonempty");
    loop {
        let next = live.iter().copied().find(|&e| g.follows(cur, e))?;
        if let Some(pos) = tail.iter().position(|&e| e == next) {
            let mut word = w.to_vec();
            word.extend_from_slice(&tail[..pos]);
            return Some(Ultrapath { word, tail: Tail::Periodic(tail[pos..].to_vec()) });
        }
        tail.push(next);
        cur = next;
    }
}

/// `d_X` diameter bound for depth-`D` cylinders: `1/2^i` for the first `p_i`
/// that can separate two points of one cylinder. Past the enumeration prefix
/// the bound `1/2^{len+1}` is used.
pub fn cylinder_delta(g: &Ultragraph, en: &PathEnumeration, depth: usize) -> BigRational {
    let splits = |s: &Segment| {
        if s.len() > depth {
            return true;
        }
        if s.len() < depth {
            return false;
        }
        if depth == 0 {
            return true;
        }
        let r = g.range(*s.word.last().expect("nonempty"));
        let mut all = r.atoms();
        all.sort();
        let mut mine = s.atoms.clone();
        mine.sort();
        mine != all
    };
    let i = en.items().iter().position(splits).unwrap_or(en.len());
    dyadic(i as u32 + 1)
}
