use std::collections::{BTreeSet, HashSet};

use super::{Atom, EdgeId, Emission, EmitterEntry, EmitterId, GraphError, RangeSet, VertexId};

/// An explicit finite ultragraph.
#[derive(Debug, Clone)]
pub(crate) struct Explicit {
    pub vertex_names: Vec<String>,
    pub edge_names: Vec<String>,
    pub sources: Vec<VertexId>,
    /// Sorted, deduplicated.
    pub ranges: Vec<Vec<VertexId>>,
    pub out: Vec<Vec<EdgeId>>,
    pub inn: Vec<Vec<EdgeId>>,
}

impl Explicit {
    pub fn empty() -> Self {
        Self {
            vertex_names: Vec::new(),
            edge_names: Vec::new(),
            sources: Vec::new(),
            ranges: Vec::new(),
            out: Vec::new(),
            inn: Vec::new(),
        }
    }

    pub fn new(vertices: Vec<String>, edges: Vec<(String, usize, Vec<usize>)>) -> Result<Self, GraphError> {
        let mut seen = HashSet::new();
        for v in &vertices {
            if !seen.insert(v.as_str()) {
                return Err(GraphError::InvalidParameters(format!("duplicate vertex {v}")));
            }
        }
        let mut seen = HashSet::new();
        let mut ex = Self::empty();
        ex.vertex_names = vertices;
        ex.out = vec![Vec::new(); ex.vertex_names.len()];
        ex.inn = vec![Vec::new(); ex.vertex_names.len()];
        let nv = ex.vertex_names.len();
        for (name, s, r) in edges {
            if !seen.insert(name.clone()) {
                return Err(GraphError::InvalidParameters(format!("duplicate edge {name}")));
            }
            if s >= nv || r.iter().any(|&v| v >= nv) {
                return Err(GraphError::InvalidParameters(format!("edge {name} uses an unknown vertex")));
            }
            if r.is_empty() {
                return Err(GraphError::RfumViolation(name));
            }
            let mut r: Vec<VertexId> = r.into_iter().map(VertexId).collect();
            r.sort();
            r.dedup();
            ex.push_edge(name, VertexId(s), r);
        }
        Ok(ex)
    }

    fn push_edge(&mut self, name: String, s: VertexId, r: Vec<VertexId>) {
        let id = EdgeId(self.edge_names.len());
        self.out[s.0].push(id);
        for v in &r {
            self.inn[v.0].push(id);
        }
        self.edge_names.push(name);
        self.sources.push(s);
        self.ranges.push(r);
    }

    pub fn append(&mut self, other: &Explicit, prefix: &str) {
        let off = self.vertex_names.len();
        for v in &other.vertex_names {
            self.vertex_names.push(format!("{prefix}{v}"));
            self.out.push(Vec::new());
            self.inn.push(Vec::new());
        }
        for i in 0..other.edge_names.len() {
            let r = other.ranges[i].iter().map(|v| VertexId(v.0 + off)).collect();
            self.push_edge(format!("{prefix}{}", other.edge_names[i]), VertexId(other.sources[i].0 + off), r);
        }
    }

    pub fn edge_count(&self) -> usize {
        self.edge_names.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_names.len()
    }
}

/// Built-in infinite families, with local (0-based) ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Family {
    /// `v_0, v_1, …`; `e_k = 2k-2: v_{k-1} → v_k`, `f_k = 2k-1: v_k → v_{k-1}`.
    Ladder,
    /// `v_i = i-1`; `e_i = 2i-2`, `f_i = 2i-1`, both `v_i → v_{i+1}`.
    DoubleChain,
    /// `v_i = i-1`; `e = 0: v_1 → V`, `f_i = i: v_{i+1} → v_i`; emitter `V = 0`.
    Renewal,
    /// One vertex `u`, loops `g_i = i-1`; `{u}` is emitter 0.
    Roses,
}

impl Family {
    pub fn name(&self) -> String {
        match self {
            Family::Ladder => "ladder",
            Family::DoubleChain => "double_chain",
            Family::Renewal => "renewal",
            Family::Roses => "roses",
        }
        .to_string()
    }

    pub fn edge_name(&self, e: EdgeId) -> String {
        let i = e.0;
        match self {
            Family::Ladder | Family::DoubleChain => {
                let k = i / 2 + 1;
                if i.is_multiple_of(2) { format!("e{k}") } else { format!("f{k}") }
            }
            Family::Renewal => {
                if i == 0 { "e".into() } else { format!("f{i}") }
            }
            Family::Roses => format!("g{}", i + 1),
        }
    }

    pub fn vertex_name(&self, v: VertexId) -> String {
        match self {
            Family::Ladder => format!("v{}", v.0),
            Family::DoubleChain | Family::Renewal => format!("v{}", v.0 + 1),
            Family::Roses => "u".into(),
        }
    }

    pub fn emitter_name(&self, a: EmitterId) -> String {
        match self {
            Family::Renewal => "V".into(),
            Family::Roses => "{u}".into(),
            _ => format!("emitter{}", a.0),
        }
    }

    pub fn source(&self, e: EdgeId) -> VertexId {
        let i = e.0;
        match self {
            Family::Ladder => {
                let k = i / 2 + 1;
                if i.is_multiple_of(2) { VertexId(k - 1) } else { VertexId(k) }
            }
            Family::DoubleChain => VertexId(i / 2),
            Family::Renewal => {
                if i == 0 { VertexId(0) } else { VertexId(i) }
            }
            Family::Roses => VertexId(0),
        }
    }

    pub fn range(&self, e: EdgeId) -> RangeSet {
        let i = e.0;
        match self {
            Family::Ladder => {
                let k = i / 2 + 1;
                RangeSet::vertex(if i.is_multiple_of(2) { VertexId(k) } else { VertexId(k - 1) })
            }
            Family::DoubleChain => RangeSet::vertex(VertexId(i / 2 + 1)),
            Family::Renewal => {
                if i == 0 { RangeSet::emitter(EmitterId(0)) } else { RangeSet::vertex(VertexId(i - 1)) }
            }
            Family::Roses => RangeSet::emitter(EmitterId(0)),
        }
    }

    pub fn range_contains(&self, e: EdgeId, v: VertexId) -> bool {
        match self {
            Family::Renewal if e.0 == 0 => true,
            Family::Roses => true,
            _ => self.range(e).finite_part.contains(&v),
        }
    }

    pub fn single_target(&self, e: EdgeId) -> Option<VertexId> {
        match self {
            Family::Renewal if e.0 == 0 => None,
            Family::Roses => Some(VertexId(0)),
            _ => Some(self.range(e).finite_part[0]),
        }
    }

    pub fn is_graph(&self) -> bool {
        !matches!(self, Family::Renewal)
    }

    pub fn emitter_contains(&self, _a: EmitterId, _v: VertexId) -> bool {
        matches!(self, Family::Renewal | Family::Roses)
    }

    pub fn emitter_nth_edge(&self, _a: EmitterId, k: usize) -> EdgeId {
        match self {
            Family::Renewal | Family::Roses => EdgeId(k),
            _ => panic!("{} has no infinite emitters", self.name()),
        }
    }

    pub fn out_edges(&self, v: VertexId) -> Emission {
        let j = v.0;
        match self {
            Family::Ladder => {
                if j == 0 {
                    Emission::Finite(vec![EdgeId(0)])
                } else {
                    Emission::Finite(vec![EdgeId(2 * j - 1), EdgeId(2 * j)])
                }
            }
            Family::DoubleChain => Emission::Finite(vec![EdgeId(2 * j), EdgeId(2 * j + 1)]),
            Family::Renewal => {
                if j == 0 {
                    Emission::Finite(vec![EdgeId(0)])
                } else {
                    Emission::Finite(vec![EdgeId(j)])
                }
            }
            Family::Roses => Emission::Infinite(EmitterId(0)),
        }
    }

    pub fn in_edges(&self, v: VertexId) -> Option<Vec<EdgeId>> {
        let j = v.0;
        match self {
            Family::Ladder => {
                let mut es = Vec::new();
                if j >= 1 {
                    es.push(EdgeId(2 * j - 2));
                }
                es.push(EdgeId(2 * j + 1));
                Some(es)
            }
            Family::DoubleChain => {
                if j == 0 { Some(Vec::new()) } else { Some(vec![EdgeId(2 * j - 2), EdgeId(2 * j - 1)]) }
            }
            Family::Renewal => Some(vec![EdgeId(0), EdgeId(j + 1)]),
            Family::Roses => None,
        }
    }

    pub fn atom(&self, k: usize) -> Option<Atom> {
        match self {
            Family::Ladder | Family::DoubleChain => Some(Atom::Vertex(VertexId(k))),
            Family::Renewal => Some(if k == 0 { Atom::Emitter(EmitterId(0)) } else { Atom::Vertex(VertexId(k - 1)) }),
            Family::Roses => (k == 0).then_some(Atom::Emitter(EmitterId(0))),
        }
    }

    pub fn atom_index(&self, a: Atom) -> usize {
        match (self, a) {
            (Family::Renewal, Atom::Emitter(_)) => 0,
            (Family::Renewal, Atom::Vertex(v)) => v.0 + 1,
            (Family::Roses, _) => 0,
            (_, Atom::Vertex(v)) => v.0,
            (_, Atom::Emitter(e)) => panic!("no emitter {}", e.0),
        }
    }

    pub fn emitter_entry(&self, _a: EmitterId, excluded: &BTreeSet<EdgeId>) -> Option<EmitterEntry> {
        match self {
            Family::Renewal => {
                // edges meeting V: all of them; f_i for i beyond every excluded
                // index lands on v_i whose only out-edge f_{i-1} is not excluded
                let k = excluded.iter().map(|e| e.0).max().unwrap_or(0) + 1;
                let explicit: Vec<EdgeId> = (0..=k).map(EdgeId).collect();
                let tail_exclusion = explicit.iter().copied().collect();
                Some(EmitterEntry { explicit, tail_exclusion })
            }
            Family::Roses if excluded.is_empty() => {
                Some(EmitterEntry { explicit: Vec::new(), tail_exclusion: BTreeSet::new() })
            }
            _ => None,
        }
    }

    pub fn emitter_image(&self, _a: EmitterId, excluded: &BTreeSet<EdgeId>) -> Option<EmitterEntry> {
        match self {
            Family::Renewal => {
                // f_i with i > k maps onto D_{f_{i-1}}; those unions are the
                // points starting beyond f_{k-1}
                let k = excluded.iter().map(|e| e.0 + 1).max().unwrap_or(0);
                let explicit: Vec<EdgeId> = (0..=k).map(EdgeId).collect();
                let tail_exclusion = (0..k).map(EdgeId).collect();
                Some(EmitterEntry { explicit, tail_exclusion })
            }
            Family::Roses => Some(EmitterEntry { explicit: Vec::new(), tail_exclusion: BTreeSet::new() }),
            _ => None,
        }
    }
}
