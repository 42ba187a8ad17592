use super::*;
use num_bigint::BigUint;
use proptest::prelude::*;

fn fg(g: &Ultragraph) -> FiniteGraph {
    FiniteGraph::from_ultragraph(g).unwrap()
}

#[test]
fn rose_counts() {
    let g = fg(&Ultragraph::rose(3).unwrap());
    assert_eq!(count_paths(&g, 5).count, BigUint::from(243u32));
    let single = fg(&Ultragraph::rose(1).unwrap());
    for n in 1..10 {
        assert_eq!(count_paths(&single, n).count, BigUint::from(1u32));
    }
}

#[test]
fn ladder_counts_match_enumerator() {
    // exhaustive word enumeration, computed outside this crate
    let h2 = [4u32, 6, 8, 12, 16, 24];
    let h3 = [6u32, 10, 16, 26, 42, 68];
    let g2 = fg(&Ultragraph::ladder_finite(2).unwrap());
    let g3 = fg(&Ultragraph::ladder_finite(3).unwrap());
    for n in 1..=6 {
        assert_eq!(count_paths(&g2, n).count, BigUint::from(h2[n - 1]));
        assert_eq!(count_paths(&g3, n).count, BigUint::from(h3[n - 1]));
    }
    let c = count_paths(&g3, 4).count;
    assert!(c >= BigUint::from(16u32) && c <= BigUint::from(96u32));
}

#[test]
fn ladder_truncation_is_h_m() {
    for m in 1..=6 {
        let sub = finite_subgraph(&Ultragraph::ladder(), 2 * m).unwrap();
        let h = fg(&Ultragraph::ladder_finite(m).unwrap());
        assert_eq!(sub.edge_names, h.edge_names);
        assert_eq!(sub.vertex_names, h.vertex_names);
        assert_eq!(sub.sources, h.sources);
        assert_eq!(sub.ranges, h.ranges);
    }
    // an odd budget leaves e_{m+1} dangling into a sink
    let sub = finite_subgraph(&Ultragraph::ladder(), 5).unwrap();
    assert_eq!(sub.edge_count(), 4);
}

#[test]
fn rose_truncation() {
    let sub = finite_subgraph(&Ultragraph::rose(3).unwrap(), 2).unwrap();
    assert_eq!(sub.edge_names, vec!["g1", "g2"]);
    assert_eq!(sub.vertex_count(), 1);
}

#[test]
fn acyclic_truncation_is_empty() {
    let g = Ultragraph::explicit(
        "two",
        vec!["a".into(), "b".into()],
        vec![("x".into(), 0, vec![1]), ("y".into(), 1, vec![0])],
    )
    .unwrap();
    assert_eq!(finite_subgraph(&g, 1), Err(GraphError::EmptySubgraph));
    assert_eq!(finite_subgraph(&g, 2).unwrap().edge_count(), 2);
}

#[test]
fn truncating_an_ultragraph_is_refused() {
    assert!(matches!(finite_subgraph(&Ultragraph::renewal(), 4), Err(GraphError::NotAGraph(_))));
}

#[test]
fn validation() {
    assert!(Ultragraph::rose(3).unwrap().validate(0).is_ok());
    let rep = Ultragraph::renewal().validate(10).unwrap();
    assert_eq!(rep.decompositions[0].1, RangeSet::emitter(EmitterId(0)));
    for i in 1..10 {
        assert_eq!(rep.decompositions[i].1, RangeSet::vertex(VertexId(i - 1)));
    }
    let sink = Ultragraph::explicit("s", vec!["a".into(), "b".into()], vec![("x".into(), 0, vec![0])]).unwrap();
    assert_eq!(sink.validate(0).unwrap_err(), GraphError::SinkFound("b".into()));
}

#[test]
fn minimal_emitters() {
    let r = Ultragraph::renewal();
    assert_eq!(r.minimal_infinite_emitters(EdgeId(0)), vec![EmitterId(0)]);
    for i in 1..6 {
        assert!(r.minimal_infinite_emitters(EdgeId(i)).is_empty());
    }
    let g = Ultragraph::golden_mean();
    for e in 0..3 {
        assert!(g.minimal_infinite_emitters(EdgeId(e)).is_empty());
    }
}

/// Sets generated by `v1..v4` and `V = r(e)` under union and intersection: a
/// set is either all of `V` or a finite set of vertices.
#[test]
fn renewal_emitter_is_minimal_by_closure() {
    use std::collections::BTreeSet;
    #[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
    enum S {
        All,
        Fin(BTreeSet<usize>),
    }
    let mut family: BTreeSet<S> = (1..=4).map(|i| S::Fin([i].into())).collect();
    family.insert(S::All);
    for _ in 0..3 {
        let cur: Vec<S> = family.iter().cloned().collect();
        for a in &cur {
            for b in &cur {
                let u = match (a, b) {
                    (S::All, _) | (_, S::All) => S::All,
                    (S::Fin(x), S::Fin(y)) => S::Fin(x | y),
                };
                let i = match (a, b) {
                    (S::All, o) | (o, S::All) => o.clone(),
                    (S::Fin(x), S::Fin(y)) => S::Fin(x & y),
                };
                family.insert(u);
                if i != S::Fin(BTreeSet::new()) {
                    family.insert(i);
                }
            }
        }
    }
    // every proper subset of V in the algebra is finite, hence finitely emitting
    let g = Ultragraph::renewal();
    for s in &family {
        if let S::Fin(vs) = s {
            let emitted: usize = vs
                .iter()
                .map(|&i| match g.out_edges(VertexId(i - 1)) {
                    Emission::Finite(es) => es.len(),
                    Emission::Infinite(_) => usize::MAX,
                })
                .sum();
            assert!(emitted < usize::MAX);
        }
    }
}

#[test]
fn renewal_paths() {
    let g = Ultragraph::renewal();
    let got = g.enumerate_paths(2, 3);
    let name = |p: &FinitePath| match p {
        FinitePath::Vertex(v) => g.vertex_name(*v),
        FinitePath::Edges(w) => w.iter().map(|&e| g.edge_name(e)).collect::<Vec<_>>().join(" "),
    };
    let names: Vec<String> = got.iter().map(name).collect();
    assert_eq!(
        names,
        vec!["v1", "v2", "v3", "e", "f1", "f2", "e e", "e f1", "e f2", "f1 e", "f2 f1"]
    );
}

#[test]
fn rose_paths() {
    let g = Ultragraph::rose(3).unwrap();
    let ps = g.enumerate_paths(1, 3);
    assert_eq!(ps.iter().filter(|p| p.is_empty()).count(), 1);
    assert_eq!(ps.iter().filter(|p| p.len() == 1).count(), 3);
    let none = g.enumerate_paths(3, 0);
    assert!(none.iter().all(|p| p.is_empty()));
}

#[test]
fn renewal_emits_unboundedly() {
    let g = Ultragraph::renewal();
    for b in [5usize, 50, 500] {
        let n = (0..b).filter(|&i| g.emitter_emits(EmitterId(0), EdgeId(i))).count();
        assert_eq!(n, b);
    }
}

#[test]
fn builtins_parse() {
    assert_eq!(parse_builtin("rose:3").unwrap().edge_count(), Some(3));
    assert!(parse_builtin("ladder").unwrap().edge_count().is_none());
    assert_eq!(parse_builtin("ladder:2").unwrap().edge_count(), Some(4));
    let u = parse_builtin("union(rose:3,ladder)").unwrap();
    assert_eq!(u.components().len(), 2);
    assert_eq!(u.edge_name(EdgeId(3)), "e1");
    assert_eq!(u.source(EdgeId(3)), VertexId(1));
    assert!(u.follows(EdgeId(3), EdgeId(4)));
    assert!(!u.follows(EdgeId(0), EdgeId(3)));
    assert!(matches!(parse_builtin("torus"), Err(GraphError::UnknownFamily(_))));
    assert!(parse_builtin("union(ladder,rose:3)").is_err());
    assert!(parse_builtin("rose").is_err());
}

#[test]
fn family_structure_is_consistent() {
    for g in [Ultragraph::ladder(), Ultragraph::double_chain(), Ultragraph::renewal()] {
        for i in 0..40 {
            let v = VertexId(i);
            if let Emission::Finite(es) = g.out_edges(v) {
                for e in es {
                    assert_eq!(g.source(e), v, "{}", g.name());
                }
            }
            for e in g.in_edges(v).unwrap() {
                assert!(g.range_contains(e, v), "{}", g.name());
            }
            for e in 0..40 {
                let e = EdgeId(e);
                let listed = g.in_edges(v).unwrap().contains(&e);
                assert_eq!(listed, g.range_contains(e, v), "{} {:?} {:?}", g.name(), e, v);
            }
        }
    }
}

fn small_graph() -> impl Strategy<Value = FiniteGraph> {
    (1usize..5).prop_flat_map(|nv| {
        let edge = (0..nv, 0..nv);
        proptest::collection::vec(edge, 1..9).prop_map(move |es| {
            let mut vertices: Vec<String> = (0..nv).map(|i| format!("v{i}")).collect();
            // keep every vertex emitting by adding a loop where needed
            let mut edges: Vec<(String, usize, Vec<usize>)> =
                es.iter().enumerate().map(|(i, &(s, t))| (format!("x{i}"), s, vec![t])).collect();
            for v in 0..nv {
                if !edges.iter().any(|e| e.1 == v) {
                    edges.push((format!("l{v}"), v, vec![v]));
                }
            }
            vertices.truncate(nv);
            FiniteGraph::from_ultragraph(&Ultragraph::explicit("p", vertices, edges).unwrap()).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn counts_are_submultiplicative(g in small_graph(), n in 1usize..6, m in 1usize..6) {
        let a = count_paths(&g, n + m).count;
        let b = count_paths(&g, n).count * count_paths(&g, m).count;
        prop_assert!(a <= b);
    }

    #[test]
    fn enumeration_matches_counts(g in small_graph(), n in 1usize..5) {
        let names = g.vertex_names.clone();
        let edges = (0..g.edge_count()).map(|i| (g.edge_names[i].clone(), g.sources[i], g.ranges[i].clone())).collect();
        let u = Ultragraph::explicit("p", names, edges).unwrap();
        let listed = u.enumerate_paths(n, usize::MAX).iter().filter(|p| p.len() == n).count();
        prop_assert_eq!(BigUint::from(listed), count_paths(&g, n).count);
    }

    #[test]
    fn truncation_is_monotone(b in 1usize..30, extra in 0usize..10) {
        for g in [Ultragraph::ladder(), Ultragraph::double_chain(), Ultragraph::increasing_roses()] {
            let small = finite_subgraph(&g, b);
            let big = finite_subgraph(&g, b + extra);
            if let (Ok(s), Ok(l)) = (small, big) {
                prop_assert!(s.origin.iter().all(|e| l.origin.contains(e)));
            }
        }
    }
}
