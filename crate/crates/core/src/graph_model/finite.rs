use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;

use super::{EdgeId, GraphError, Ultragraph, VertexId};

/// A finite graph or finite ultragraph with explicit edge lists. Edge `f` may
/// follow edge `e` iff `s(f) ∈ r(e)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiniteGraph {
    pub name: String,
    pub vertex_names: Vec<String>,
    pub edge_names: Vec<String>,
    pub sources: Vec<usize>,
    pub ranges: Vec<Vec<usize>>,
    /// Edge ids in the presentation this graph was cut from.
    pub origin: Vec<EdgeId>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PathCount {
    pub n: usize,
    pub count: BigUint,
}

impl FiniteGraph {
    pub fn from_ultragraph(g: &Ultragraph) -> Result<Self, GraphError> {
        let ne = g.edge_count().ok_or_else(|| GraphError::NotFinite(g.name().to_string()))?;
        let nv = g.vertex_count().expect("finite");
        let edges: Vec<EdgeId> = (0..ne).map(EdgeId).collect();
        let ranges = edges.iter().map(|&e| g.range(e).finite_part.iter().map(|v| v.0).collect()).collect();
        Ok(Self {
            name: g.name().to_string(),
            vertex_names: (0..nv).map(|v| g.vertex_name(VertexId(v))).collect(),
            edge_names: edges.iter().map(|&e| g.edge_name(e)).collect(),
            sources: edges.iter().map(|&e| g.source(e).0).collect(),
            ranges,
            origin: edges,
        })
    }

    pub fn edge_count(&self) -> usize {
        self.edge_names.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_names.len()
    }

    /// `succ[e]`: edges that may follow `e`.
    pub fn successors(&self) -> Vec<Vec<usize>> {
        let mut by_source = vec![Vec::new(); self.vertex_count()];
        for (f, &s) in self.sources.iter().enumerate() {
            by_source[s].push(f);
        }
        self.ranges
            .iter()
            .map(|r| {
                let mut out: Vec<usize> = r.iter().flat_map(|&v| by_source[v].iter().copied()).collect();
                out.sort_unstable();
                out.dedup();
                out
            })
            .collect()
    }

    pub fn has_sink(&self) -> bool {
        let mut emits = vec![false; self.vertex_count()];
        for &s in &self.sources {
            emits[s] = true;
        }
        emits.iter().any(|&b| !b)
    }

    pub fn is_graph(&self) -> bool {
        self.ranges.iter().all(|r| r.len() == 1)
    }
}

/// Number of length-`n` edge paths, by `n-1` applications of the edge
/// transfer operator to the all-ones vector. `n = 0` counts vertices.
pub fn count_paths(g: &FiniteGraph, n: usize) -> PathCount {
    if n == 0 {
        return PathCount { n, count: BigUint::from(g.vertex_count()) };
    }
    let succ = g.successors();
    let mut v = vec![BigUint::one(); g.edge_count()];
    for _ in 1..n {
        v = succ.iter().map(|fs| fs.iter().fold(BigUint::zero(), |acc, &f| acc + &v[f])).collect();
    }
    PathCount { n, count: v.into_iter().sum() }
}

/// Counts for every length `1..=n_max` in one sweep.
pub fn count_paths_upto(g: &FiniteGraph, n_max: usize) -> Vec<BigUint> {
    let succ = g.successors();
    let mut v = vec![BigUint::one(); g.edge_count()];
    let mut out = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        if n > 1 {
            v = succ.iter().map(|fs| fs.iter().fold(BigUint::zero(), |acc, &f| acc + &v[f])).collect();
        }
        out.push(v.iter().sum());
    }
    out
}

/// The subgraph on the first `edge_budget` edges with sinks pruned until none
/// remain. Needs singleton ranges.
pub fn finite_subgraph(g: &Ultragraph, edge_budget: usize) -> Result<FiniteGraph, GraphError> {
    let budget = g.edge_count().map_or(edge_budget, |n| n.min(edge_budget));
    let mut edges: Vec<(EdgeId, VertexId, VertexId)> = Vec::with_capacity(budget);
    for i in 0..budget {
        let e = EdgeId(i);
        let t = g.single_target(e).ok_or_else(|| GraphError::NotAGraph(g.name().to_string()))?;
        edges.push((e, g.source(e), t));
    }
    loop {
        let emitting: BTreeSet<VertexId> = edges.iter().map(|x| x.1).collect();
        let before = edges.len();
        edges.retain(|x| emitting.contains(&x.2));
        if edges.len() == before {
            break;
        }
    }
    if edges.is_empty() {
        return Err(GraphError::EmptySubgraph);
    }
    let vertices: Vec<VertexId> = edges
        .iter()
        .flat_map(|x| [x.1, x.2])
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let pos = |v: VertexId| vertices.binary_search(&v).expect("kept vertex");
    Ok(FiniteGraph {
        name: format!("{}[{}]", g.name(), edge_budget),
        vertex_names: vertices.iter().map(|&v| g.vertex_name(v)).collect(),
        edge_names: edges.iter().map(|x| g.edge_name(x.0)).collect(),
        sources: edges.iter().map(|x| pos(x.1)).collect(),
        ranges: edges.iter().map(|x| vec![pos(x.2)]).collect(),
        origin: edges.iter().map(|x| x.0).collect(),
    })
}
