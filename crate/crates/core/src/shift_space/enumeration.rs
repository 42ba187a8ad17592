use std::collections::HashMap;

use serde::Serialize;

use crate::graph_model::{Atom, EdgeId, Ultragraph};

/// `(α, A)` with `A` the union of `atoms`. Elements of `S` carry one atom.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Segment {
    pub word: Vec<EdgeId>,
    pub atoms: Vec<Atom>,
}

impl Segment {
    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn render(&self, g: &Ultragraph) -> String {
        let set = self.atoms.iter().map(|&a| g.atom_name(a)).collect::<Vec<_>>().join("∪");
        if self.word.is_empty() {
            format!("({set}, {set})")
        } else {
            let w = self.word.iter().map(|&e| g.edge_name(e)).collect::<Vec<_>>().join(" ");
            format!("({w}, {set})")
        }
    }
}

/// Staging of the enumeration. Stage `k` admits atoms `B_1..B_k`, the first
/// `k · edges_per_stage` edges and words of length at most `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EnumKind {
    pub edges_per_stage: usize,
    /// Also list `(α, r(α))` when `r(α)` is not a single atom.
    pub with_ranges: bool,
}

impl Default for EnumKind {
    fn default() -> Self {
        Self { edges_per_stage: 1, with_ranges: false }
    }
}

impl EnumKind {
    /// Two edges per stage, so that `e_k` and `f_k` of the ladder families
    /// enter together.
    pub fn paired() -> Self {
        Self { edges_per_stage: 2, with_ranges: false }
    }

    pub fn with_ranges() -> Self {
        Self { edges_per_stage: 1, with_ranges: true }
    }
}

/// A prefix `p_1, p_2, …` of the enumeration, without repeats.
#[derive(Debug, Clone)]
pub struct PathEnumeration {
    pub kind: EnumKind,
    items: Vec<Segment>,
    index: HashMap<Segment, usize>,
}

impl PathEnumeration {
    /// The first `budget` elements (fewer only if the stages run dry, which
    /// needs a graph whose stages stop growing).
    pub fn new(g: &Ultragraph, kind: EnumKind, budget: usize) -> Self {
        assert!(kind.edges_per_stage >= 1);
        let mut en = Self { kind, items: Vec::new(), index: HashMap::new() };
        let total_edges = g.edge_count();
        let mut quiet = 0usize;
        let mut k = 1usize;
        while en.items.len() < budget {
            let before = en.items.len();
            en.stage(g, k, budget, total_edges);
            if en.items.len() == before {
                quiet += 1;
                // a finite graph with every atom and edge admitted and no new
                // words can only be acyclic past this point
                if quiet > 2 && total_edges.is_some_and(|n| k > n + g.vertex_count().unwrap_or(0)) {
                    break;
                }
            } else {
                quiet = 0;
            }
            k += 1;
        }
        en
    }

    fn push(&mut self, s: Segment, budget: usize) -> bool {
        if self.items.len() >= budget {
            return false;
        }
        if !self.index.contains_key(&s) {
            self.index.insert(s.clone(), self.items.len());
            self.items.push(s);
        }
        self.items.len() < budget
    }

    fn stage(&mut self, g: &Ultragraph, k: usize, budget: usize, total_edges: Option<usize>) {
        let atoms: Vec<Atom> = (0..k).map_while(|i| g.atom(i)).collect();
        for &a in &atoms {
            if !self.push(Segment { word: Vec::new(), atoms: vec![a] }, budget) {
                return;
            }
        }
        let ne = total_edges.map_or(k * self.kind.edges_per_stage, |n| n.min(k * self.kind.edges_per_stage));
        let edges: Vec<EdgeId> = (0..ne).map(EdgeId).collect();
        let mut layer: Vec<Vec<EdgeId>> = edges.iter().map(|&e| vec![e]).collect();
        for len in 1..=k {
            for w in &layer {
                let last = *w.last().expect("nonempty");
                let r = g.range(last);
                let mut single: Vec<Atom> = atoms.iter().copied().filter(|&a| g.atom_in_range(a, last)).collect();
                single.sort_by_key(|&a| g.atom_index(a));
                for a in single {
                    if !self.push(Segment { word: w.clone(), atoms: vec![a] }, budget) {
                        return;
                    }
                }
                if self.kind.with_ranges && !r.is_single_atom() {
                    let mut all = r.atoms();
                    all.sort();
                    if !self.push(Segment { word: w.clone(), atoms: all }, budget) {
                        return;
                    }
                }
            }
            if len == k {
                break;
            }
            let mut next = Vec::new();
            for w in &layer {
                let last = *w.last().expect("nonempty");
                for &e in &edges {
                    if g.follows(last, e) {
                        let mut w2 = w.clone();
                        w2.push(e);
                        next.push(w2);
                    }
                }
            }
            layer = next;
        }
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn items(&self) -> &[Segment] {
        &self.items
    }

    /// 0-based position; `p_{i+1}` in 1-based terms.
    pub fn position(&self, s: &Segment) -> Option<usize> {
        self.index.get(s).copied()
    }
}
