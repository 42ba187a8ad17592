//! Finitely presented graphs and ultragraphs.
//!
//! An ultragraph has a source vertex and a *set* of range vertices for each
//! edge. Every presentation here has no sinks and satisfies RFUM: each range
//! is a finite set of finitely emitting vertices plus finitely many minimal
//! infinite emitters. Infinite presentations are the built-in families; their
//! canonical edge orders are fixed and drive every enumeration downstream.
//!
//! | Family | Vertices | Edges (canonical order) |
//! |--------|----------|-------------------------|
//! | `rose:k` | `u` | loops `g1..gk` |
//! | `cycle:L` | `c0..c{L-1}` | `a0..a{L-1}`, `ai: ci → c{i+1 mod L}` |
//! | `golden_mean` | `a, b` | `aa: a→a`, `ab: a→b`, `ba: b→a` |
//! | `ladder` | `v0, v1, …` | `e1, f1, e2, f2, …`; `ek: v{k-1}→vk`, `fk: vk→v{k-1}` |
//! | `ladder:m` | `v0..vm` | the first `2m` ladder edges |
//! | `double_chain` | `v1, v2, …` | `e1, f1, e2, …`; `ei, fi: vi→v{i+1}` |
//! | `renewal` | `v1, v2, …` | `e, f1, f2, …`; `e: v1→{all}`, `fi: v{i+1}→vi` |
//! | `roses` | `u` | loops `g1, g2, …` (infinitely many) |
//! | `union(a,b,…)` | disjoint | concatenated; only the last part may be infinite |

mod families;
mod finite;
mod parse;

pub use finite::{count_paths, count_paths_upto, finite_subgraph, FiniteGraph, PathCount};
pub use parse::parse_builtin;

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use families::{Explicit, Family};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct EdgeId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct VertexId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct EmitterId(pub usize);

/// A vertex or minimal infinite emitter: the elements `B_i` listed by the
/// path enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Atom {
    Vertex(VertexId),
    Emitter(EmitterId),
}

/// RFUM decomposition of a range: finitely emitting vertices plus minimal
/// infinite emitters, disjoint.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct RangeSet {
    pub finite_part: Vec<VertexId>,
    pub emitter_parts: Vec<EmitterId>,
}

impl RangeSet {
    pub fn vertex(v: VertexId) -> Self {
        Self { finite_part: vec![v], emitter_parts: Vec::new() }
    }

    pub fn emitter(a: EmitterId) -> Self {
        Self { finite_part: Vec::new(), emitter_parts: vec![a] }
    }

    pub fn atoms(&self) -> Vec<Atom> {
        let mut out: Vec<Atom> = self.emitter_parts.iter().map(|&a| Atom::Emitter(a)).collect();
        out.extend(self.finite_part.iter().map(|&v| Atom::Vertex(v)));
        out
    }

    pub fn is_single_atom(&self) -> bool {
        self.finite_part.len() + self.emitter_parts.len() == 1
    }
}

/// Out-edges of a vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Emission {
    Finite(Vec<EdgeId>),
    /// The vertex is itself a minimal infinite emitter.
    Infinite(EmitterId),
}

/// How the edges meeting a minimal emitter `A` split once a finite set `F`
/// of edges is excluded: edges in `explicit` are handled one by one, and every
/// other edge `g` with `r(g) ∩ A ≠ ∅` lies in `ε(A) \ tail_exclusion`, has
/// `r(g) ⊆ A` finite, and no out-edge of `r(g)` lies in `F`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmitterEntry {
    pub explicit: Vec<EdgeId>,
    pub tail_exclusion: BTreeSet<EdgeId>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("unknown family {0:?}")]
    UnknownFamily(String),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("vertex {0} is a sink")]
    SinkFound(String),
    #[error("range of edge {0} has no RFUM decomposition")]
    RfumViolation(String),
    #[error("truncation leaves no edges after sink pruning")]
    EmptySubgraph,
    #[error("operation needs singleton ranges; {0} is an ultragraph")]
    NotAGraph(String),
    #[error("operation needs a finite presentation; {0} is infinite")]
    NotFinite(String),
}

#[derive(Debug, Clone, Serialize)]
pub struct ValidationReport {
    pub vertices_checked: usize,
    pub edges_checked: usize,
    pub decompositions: Vec<(EdgeId, RangeSet)>,
}

/// An ultragraph presentation: an explicit finite one or a built-in family.
#[derive(Debug, Clone)]
pub struct Ultragraph {
    name: String,
    finite: Option<Explicit>,
    family: Option<Family>,
    parts: Vec<Ultragraph>,
}

impl Ultragraph {
    /// Explicit finite ultragraph. `edges` are `(name, source, range)` with
    /// indices into `vertices`.
    pub fn explicit(
        name: &str,
        vertices: Vec<String>,
        edges: Vec<(String, usize, Vec<usize>)>,
    ) -> Result<Self, GraphError> {
        let ex = Explicit::new(vertices, edges)?;
        Ok(Self { name: name.to_string(), finite: Some(ex), family: None, parts: Vec::new() })
    }

    pub(crate) fn from_family(name: String, family: Family) -> Self {
        Self { name, finite: None, family: Some(family), parts: Vec::new() }
    }

    pub fn rose(k: usize) -> Result<Self, GraphError> {
        if k == 0 {
            return Err(GraphError::InvalidParameters("rose needs at least one petal".into()));
        }
        let edges = (1..=k).map(|i| (format!("g{i}"), 0, vec![0])).collect();
        Self::explicit(&format!("rose:{k}"), vec!["u".into()], edges)
    }

    pub fn cycle(l: usize) -> Result<Self, GraphError> {
        if l == 0 {
            return Err(GraphError::InvalidParameters("cycle needs length >= 1".into()));
        }
        let vertices = (0..l).map(|i| format!("c{i}")).collect();
        let edges = (0..l).map(|i| (format!("a{i}"), i, vec![(i + 1) % l])).collect();
        Self::explicit(&format!("cycle:{l}"), vertices, edges)
    }

    pub fn golden_mean() -> Self {
        Self::explicit(
            "golden_mean",
            vec!["a".into(), "b".into()],
            vec![("aa".into(), 0, vec![0]), ("ab".into(), 0, vec![1]), ("ba".into(), 1, vec![0])],
        )
        .expect("static presentation")
    }

    /// The finite subgraph `H_m` of the ladder: vertices `v0..vm`, edges `e1, f1, …, em, fm`.
    pub fn ladder_finite(m: usize) -> Result<Self, GraphError> {
        if m == 0 {
            return Err(GraphError::InvalidParameters("ladder:m needs m >= 1".into()));
        }
        let vertices = (0..=m).map(|k| format!("v{k}")).collect();
        let mut edges = Vec::new();
        for k in 1..=m {
            edges.push((format!("e{k}"), k - 1, vec![k]));
            edges.push((format!("f{k}"), k, vec![k - 1]));
        }
        Self::explicit(&format!("ladder:{m}"), vertices, edges)
    }

    pub fn ladder() -> Self {
        Self::from_family("ladder".into(), Family::Ladder)
    }

    pub fn double_chain() -> Self {
        Self::from_family("double_chain".into(), Family::DoubleChain)
    }

    pub fn renewal() -> Self {
        Self::from_family("renewal".into(), Family::Renewal)
    }

    pub fn increasing_roses() -> Self {
        Self::from_family("roses".into(), Family::Roses)
    }

    /// Concatenates presentations with relabelled vertices. Every part but the
    /// last must be finite.
    pub fn disjoint_union(parts: &[Ultragraph]) -> Result<Self, GraphError> {
        if parts.is_empty() {
            return Err(GraphError::InvalidParameters("empty union".into()));
        }
        let mut finite = Explicit::empty();
        let mut tail = None;
        for (i, p) in parts.iter().enumerate() {
            if let Some(inner) = &p.family {
                if i + 1 != parts.len() || p.finite.is_some() {
                    return Err(GraphError::InvalidParameters(
                        "only the last component of a union may be infinite".into(),
                    ));
                }
                tail = Some(inner.clone());
            }
            if let Some(ex) = &p.finite {
                finite.append(ex, &format!("{i}."));
            }
        }
        let name = format!(
            "union({})",
            parts.iter().map(|p| p.name.as_str()).collect::<Vec<_>>().join(",")
        );
        Ok(Self { name, finite: Some(finite), family: tail, parts: parts.to_vec() })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    fn nf_edges(&self) -> usize {
        self.finite.as_ref().map_or(0, |f| f.edge_count())
    }

    fn nf_vertices(&self) -> usize {
        self.finite.as_ref().map_or(0, |f| f.vertex_count())
    }

    pub fn is_finite(&self) -> bool {
        self.family.is_none()
    }

    pub fn edge_count(&self) -> Option<usize> {
        self.is_finite().then(|| self.nf_edges())
    }

    pub fn vertex_count(&self) -> Option<usize> {
        self.is_finite().then(|| self.nf_vertices())
    }

    pub fn has_edge(&self, e: EdgeId) -> bool {
        e.0 < self.nf_edges() || self.family.is_some()
    }

    pub fn has_vertex(&self, v: VertexId) -> bool {
        v.0 < self.nf_vertices() || self.family.is_some()
    }

    fn split_edge(&self, e: EdgeId) -> Result<usize, usize> {
        let nf = self.nf_edges();
        if e.0 < nf {
            Ok(e.0)
        } else {
            assert!(self.family.is_some(), "edge {} out of range", e.0);
            Err(e.0 - nf)
        }
    }

    fn split_vertex(&self, v: VertexId) -> Result<usize, usize> {
        let nf = self.nf_vertices();
        if v.0 < nf {
            Ok(v.0)
        } else {
            assert!(self.family.is_some(), "vertex {} out of range", v.0);
            Err(v.0 - nf)
        }
    }

    fn fam(&self) -> &Family {
        self.family.as_ref().expect("infinite part")
    }

    fn ex(&self) -> &Explicit {
        self.finite.as_ref().expect("finite part")
    }

    fn lift_e(&self, e: EdgeId) -> EdgeId {
        EdgeId(e.0 + self.nf_edges())
    }

    fn lift_v(&self, v: VertexId) -> VertexId {
        VertexId(v.0 + self.nf_vertices())
    }

    pub fn edge_name(&self, e: EdgeId) -> String {
        match self.split_edge(e) {
            Ok(i) => self.ex().edge_names[i].clone(),
            Err(i) => self.fam().edge_name(EdgeId(i)),
        }
    }

    pub fn vertex_name(&self, v: VertexId) -> String {
        match self.split_vertex(v) {
            Ok(i) => self.ex().vertex_names[i].clone(),
            Err(i) => self.fam().vertex_name(VertexId(i)),
        }
    }

    pub fn emitter_name(&self, a: EmitterId) -> String {
        self.fam().emitter_name(a)
    }

    pub fn atom_name(&self, a: Atom) -> String {
        match a {
            Atom::Vertex(v) => self.vertex_name(v),
            Atom::Emitter(a) => self.emitter_name(a),
        }
    }

    pub fn source(&self, e: EdgeId) -> VertexId {
        match self.split_edge(e) {
            Ok(i) => self.ex().sources[i],
            Err(i) => self.lift_v(self.fam().source(EdgeId(i))),
        }
    }

    pub fn range(&self, e: EdgeId) -> RangeSet {
        match self.split_edge(e) {
            Ok(i) => RangeSet { finite_part: self.ex().ranges[i].clone(), emitter_parts: Vec::new() },
            Err(i) => {
                let mut r = self.fam().range(EdgeId(i));
                for v in &mut r.finite_part {
                    *v = self.lift_v(*v);
                }
                r
            }
        }
    }

    /// `v ∈ r(e)`.
    pub fn range_contains(&self, e: EdgeId, v: VertexId) -> bool {
        match (self.split_edge(e), self.split_vertex(v)) {
            (Ok(i), Ok(j)) => self.ex().ranges[i].binary_search(&VertexId(j)).is_ok(),
            (Err(i), Err(j)) => self.fam().range_contains(EdgeId(i), VertexId(j)),
            _ => false,
        }
    }

    /// `s(g) ∈ r(e)`: `g` may follow `e` in a path.
    pub fn follows(&self, e: EdgeId, g: EdgeId) -> bool {
        self.range_contains(e, self.source(g))
    }

    pub fn emitter_contains(&self, a: EmitterId, v: VertexId) -> bool {
        match self.split_vertex(v) {
            Ok(_) => false,
            Err(j) => self.fam().emitter_contains(a, VertexId(j)),
        }
    }

    /// `g ∈ ε(A)`.
    pub fn emitter_emits(&self, a: EmitterId, g: EdgeId) -> bool {
        self.emitter_contains(a, self.source(g))
    }

    /// The `k`-th edge (0-based, canonical order) of `ε(A)`.
    pub fn emitter_nth_edge(&self, a: EmitterId, k: usize) -> EdgeId {
        self.lift_e(self.fam().emitter_nth_edge(a, k))
    }

    pub fn atom_contains(&self, atom: Atom, v: VertexId) -> bool {
        match atom {
            Atom::Vertex(w) => w == v,
            Atom::Emitter(a) => self.emitter_contains(a, v),
        }
    }

    /// `atom ⊆ r(e)`.
    pub fn atom_in_range(&self, atom: Atom, e: EdgeId) -> bool {
        let r = self.range(e);
        match atom {
            Atom::Vertex(v) => r.finite_part.contains(&v),
            Atom::Emitter(a) => r.emitter_parts.contains(&a),
        }
    }

    pub fn out_edges(&self, v: VertexId) -> Emission {
        match self.split_vertex(v) {
            Ok(i) => Emission::Finite(self.ex().out[i].clone()),
            Err(i) => match self.fam().out_edges(VertexId(i)) {
                Emission::Finite(es) => Emission::Finite(es.into_iter().map(|e| self.lift_e(e)).collect()),
                inf => inf,
            },
        }
    }

    /// Edges of `ε(atom)`, if finitely many.
    pub fn atom_out_edges(&self, atom: Atom) -> Option<Vec<EdgeId>> {
        match atom {
            Atom::Vertex(v) => match self.out_edges(v) {
                Emission::Finite(es) => Some(es),
                Emission::Infinite(_) => None,
            },
            Atom::Emitter(_) => None,
        }
    }

    /// Edges `g` with `v ∈ r(g)`, if finitely many.
    pub fn in_edges(&self, v: VertexId) -> Option<Vec<EdgeId>> {
        match self.split_vertex(v) {
            Ok(i) => Some(self.ex().inn[i].clone()),
            Err(i) => self
                .fam()
                .in_edges(VertexId(i))
                .map(|es| es.into_iter().map(|e| self.lift_e(e)).collect()),
        }
    }

    /// The `k`-th atom `B_{k+1}` of the canonical atom order, if it exists.
    pub fn atom(&self, k: usize) -> Option<Atom> {
        let nf = self.nf_vertices();
        if k < nf {
            return Some(Atom::Vertex(VertexId(k)));
        }
        let a = self.family.as_ref()?.atom(k - nf)?;
        Some(match a {
            Atom::Vertex(v) => Atom::Vertex(self.lift_v(v)),
            e => e,
        })
    }

    /// Position of an atom in the canonical atom order.
    pub fn atom_index(&self, atom: Atom) -> usize {
        match atom {
            Atom::Vertex(v) => match self.split_vertex(v) {
                Ok(i) => i,
                Err(i) => self.nf_vertices() + self.fam().atom_index(Atom::Vertex(VertexId(i))),
            },
            Atom::Emitter(a) => self.nf_vertices() + self.fam().atom_index(Atom::Emitter(a)),
        }
    }

    pub fn emitter_entry(&self, a: EmitterId, excluded: &BTreeSet<EdgeId>) -> Option<EmitterEntry> {
        let nf = self.nf_edges();
        let local: BTreeSet<EdgeId> = excluded.iter().filter(|e| e.0 >= nf).map(|e| EdgeId(e.0 - nf)).collect();
        let entry = self.family.as_ref()?.emitter_entry(a, &local)?;
        Some(EmitterEntry {
            explicit: entry.explicit.into_iter().map(|e| self.lift_e(e)).collect(),
            tail_exclusion: entry.tail_exclusion.into_iter().map(|e| self.lift_e(e)).collect(),
        })
    }

    /// Forward counterpart of [`Self::emitter_entry`]: `σ` of the points
    /// `gγ` with `g ∈ ε(A) \ F` is the union of `σ(D_g)` over the `explicit`
    /// edges of `ε(A) \ F` and of the points whose first edge lies in
    /// `ε(A) \ tail_exclusion`.
    pub fn emitter_image(&self, a: EmitterId, excluded: &BTreeSet<EdgeId>) -> Option<EmitterEntry> {
        let nf = self.nf_edges();
        let local: BTreeSet<EdgeId> = excluded.iter().filter(|e| e.0 >= nf).map(|e| EdgeId(e.0 - nf)).collect();
        let entry = self.family.as_ref()?.emitter_image(a, &local)?;
        Some(EmitterEntry {
            explicit: entry.explicit.into_iter().map(|e| self.lift_e(e)).collect(),
            tail_exclusion: entry.tail_exclusion.into_iter().map(|e| self.lift_e(e)).collect(),
        })
    }

    /// Edges of the explicit finite block, which precede family edges.
    pub fn explicit_edge_count(&self) -> usize {
        self.nf_edges()
    }

    /// A minimal emitter containing every family vertex, if there is one.
    pub fn universal_emitter(&self) -> Option<EmitterId> {
        match self.family.as_ref()? {
            Family::Renewal | Family::Roses => Some(EmitterId(0)),
            _ => None,
        }
    }

    /// The single vertex of `r(e)` when the range is a singleton.
    pub fn single_target(&self, e: EdgeId) -> Option<VertexId> {
        match self.split_edge(e) {
            Ok(i) => {
                let r = &self.ex().ranges[i];
                (r.len() == 1).then(|| r[0])
            }
            Err(i) => self.fam().single_target(EdgeId(i)).map(|v| self.lift_v(v)),
        }
    }

    /// Every range is a single vertex.
    pub fn is_graph(&self) -> bool {
        let fin = self.finite.as_ref().is_none_or(|f| f.ranges.iter().all(|r| r.len() == 1));
        fin && self.family.as_ref().is_none_or(|f| f.is_graph())
    }

    /// Least-indexed edge `g` with `s(g) ∈ r(e)`.
    pub fn least_follower(&self, e: EdgeId) -> EdgeId {
        let r = self.range(e);
        let mut best: Option<EdgeId> = None;
        for &a in &r.emitter_parts {
            let g = self.emitter_nth_edge(a, 0);
            best = Some(best.map_or(g, |b| b.min(g)));
        }
        for &v in &r.finite_part {
            if let Emission::Finite(es) = self.out_edges(v) {
                if let Some(&g) = es.iter().min() {
                    best = Some(best.map_or(g, |b| b.min(g)));
                }
            }
        }
        best.expect("no sinks")
    }

    /// Checks no-sinks and the RFUM decomposition on every vertex and edge
    /// (finite presentations) or on the first `budget` of each (families).
    pub fn validate(&self, budget: usize) -> Result<ValidationReport, GraphError> {
        let nv = self.vertex_count().unwrap_or(self.nf_vertices() + budget);
        let ne = self.edge_count().unwrap_or(self.nf_edges() + budget);
        for v in 0..nv {
            let v = VertexId(v);
            if let Emission::Finite(es) = self.out_edges(v) {
                if es.is_empty() {
                    return Err(GraphError::SinkFound(self.vertex_name(v)));
                }
            }
        }
        let mut decompositions = Vec::with_capacity(ne);
        for e in 0..ne {
            let e = EdgeId(e);
            let r = self.range(e);
            if r.finite_part.is_empty() && r.emitter_parts.is_empty() {
                return Err(GraphError::RfumViolation(self.edge_name(e)));
            }
            for &v in &r.finite_part {
                if matches!(self.out_edges(v), Emission::Infinite(_)) {
                    return Err(GraphError::RfumViolation(self.edge_name(e)));
                }
            }
            decompositions.push((e, r));
        }
        Ok(ValidationReport { vertices_checked: nv, edges_checked: ne, decompositions })
    }

    /// Minimal infinite emitters of `r(e)`, ordered by first emitted edge.
    pub fn minimal_infinite_emitters(&self, e: EdgeId) -> Vec<EmitterId> {
        let mut ems = self.range(e).emitter_parts;
        ems.sort_by_key(|&a| self.emitter_nth_edge(a, 0));
        ems
    }

    /// Finite paths of length `≤ max_len` over the first `edge_budget` edges,
    /// in shortlex order; zero-length paths are listed first.
    pub fn enumerate_paths(&self, max_len: usize, edge_budget: usize) -> Vec<FinitePath> {
        let budget = self.edge_count().map_or(edge_budget, |n| n.min(edge_budget));
        let edges: Vec<EdgeId> = (0..budget).map(EdgeId).collect();
        let mut out: Vec<FinitePath> = Vec::new();
        let vertices: BTreeSet<VertexId> = match self.vertex_count() {
            Some(n) => (0..n).map(VertexId).collect(),
            None => {
                let mut vs = BTreeSet::new();
                for &e in &edges {
                    vs.insert(self.source(e));
                    vs.extend(self.range(e).finite_part);
                }
                vs
            }
        };
        out.extend(vertices.into_iter().map(FinitePath::Vertex));
        let mut layer: Vec<Vec<EdgeId>> = if max_len >= 1 { edges.iter().map(|&e| vec![e]).collect() } else { Vec::new() };
        for len in 1..=max_len {
            out.extend(layer.iter().cloned().map(FinitePath::Edges));
            if len == max_len {
                break;
            }
            let mut next = Vec::new();
            for w in &layer {
                let last = *w.last().expect("nonempty");
                for &g in &edges {
                    if self.follows(last, g) {
                        let mut w2 = w.clone();
                        w2.push(g);
                        next.push(w2);
                    }
                }
            }
            layer = next;
        }
        out
    }

    /// Edges among the first `budget` from which some point of the
    /// budget-restricted space starts: either an infinite path over budget
    /// edges or an `X_fin` point ending at a minimal emitter.
    pub fn live_budget_edges(&self, budget: usize) -> Vec<EdgeId> {
        let budget = self.edge_count().map_or(budget, |n| n.min(budget));
        let mut alive = vec![true; budget];
        loop {
            let mut changed = false;
            for i in 0..budget {
                if !alive[i] {
                    continue;
                }
                let e = EdgeId(i);
                let ok = !self.range(e).emitter_parts.is_empty()
                    || (0..budget).any(|j| alive[j] && self.follows(e, EdgeId(j)));
                if !ok {
                    alive[i] = false;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        (0..budget).filter(|&i| alive[i]).map(EdgeId).collect()
    }

    /// The union components, in order; a non-union is its own component.
    pub fn components(&self) -> Vec<Ultragraph> {
        if self.parts.is_empty() {
            vec![self.clone()]
        } else {
            self.parts.clone()
        }
    }
}

/// A finite path: a zero-length path at a vertex, or a nonempty edge word.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum FinitePath {
    Vertex(VertexId),
    Edges(Vec<EdgeId>),
}

impl FinitePath {
    pub fn len(&self) -> usize {
        match self {
            FinitePath::Vertex(_) => 0,
            FinitePath::Edges(w) => w.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[cfg(test)]
mod tests;
