use std::collections::BTreeSet;

use serde::Serialize;

use super::CoverError;
use crate::graph_model::{Atom, EdgeId, Emission, EmitterId, Ultragraph};
use crate::shift_space::Segment;

/// A cylinder set of the ultragraph shift space.
///
/// `Word(β)` is `D_β`, every point whose first `|β|` edges are `β`
/// (`|β| ≥ 1`). `Emitter` is `D_{(β,A),F}`: the point `(β, A)` together with
/// every `βgγ` with `g ∈ ε(A) \ F`. A word whose range is a single minimal
/// emitter is stored in the emitter form, with `F = ∅`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Cylinder {
    Word(Vec<EdgeId>),
    Emitter { word: Vec<EdgeId>, set: EmitterId, excluded: BTreeSet<EdgeId> },
}

impl Cylinder {
    pub fn word(g: &Ultragraph, word: Vec<EdgeId>) -> Self {
        assert!(!word.is_empty(), "word cylinders need a nonempty word");
        let r = g.range(*word.last().expect("nonempty"));
        if r.finite_part.is_empty() && r.emitter_parts.len() == 1 {
            Cylinder::Emitter { word, set: r.emitter_parts[0], excluded: BTreeSet::new() }
        } else {
            Cylinder::Word(word)
        }
    }

    pub fn emitter(g: &Ultragraph, word: Vec<EdgeId>, set: EmitterId, excluded: BTreeSet<EdgeId>) -> Self {
        let excluded = excluded.into_iter().filter(|&h| g.emitter_emits(set, h)).collect();
        Cylinder::Emitter { word, set, excluded }
    }

    pub fn base(&self) -> &[EdgeId] {
        match self {
            Cylinder::Word(w) => w,
            Cylinder::Emitter { word, .. } => word,
        }
    }

    fn with_word(&self, word: Vec<EdgeId>) -> Self {
        match self {
            Cylinder::Word(_) => Cylinder::Word(word),
            Cylinder::Emitter { set, excluded, .. } => {
                Cylinder::Emitter { word, set: *set, excluded: excluded.clone() }
            }
        }
    }

    pub fn render(&self, g: &Ultragraph) -> String {
        let w = |word: &[EdgeId]| word.iter().map(|&e| g.edge_name(e)).collect::<Vec<_>>().join(" ");
        match self {
            Cylinder::Word(word) => format!("D[{}]", w(word)),
            Cylinder::Emitter { word, set, excluded } => {
                let a = g.emitter_name(*set);
                let head = if word.is_empty() { format!("({a},{a})") } else { format!("({},{a})", w(word)) };
                if excluded.is_empty() {
                    format!("D[{head}]")
                } else {
                    let f = excluded.iter().map(|&e| g.edge_name(e)).collect::<Vec<_>>().join(",");
                    format!("D[{head};{{{f}}}]")
                }
            }
        }
    }
}

fn extended(word: &[EdgeId], h: EdgeId) -> Vec<EdgeId> {
    let mut w = word.to_vec();
    w.push(h);
    w
}

fn finite_out(g: &Ultragraph, v: crate::graph_model::VertexId) -> Vec<EdgeId> {
    match g.out_edges(v) {
        Emission::Finite(es) => es,
        Emission::Infinite(a) => panic!("vertex {} of a finite part is the emitter {}", g.vertex_name(v), a.0),
    }
}

/// `D_β` split by the next step: one emitter piece per minimal emitter of
/// `r(β)` and one word cylinder per out-edge of its finite part.
pub fn parts(g: &Ultragraph, word: &[EdgeId]) -> Vec<Cylinder> {
    let r = g.range(*word.last().expect("nonempty"));
    let mut out: Vec<Cylinder> = r
        .emitter_parts
        .iter()
        .map(|&a| Cylinder::Emitter { word: word.to_vec(), set: a, excluded: BTreeSet::new() })
        .collect();
    for &v in &r.finite_part {
        out.extend(finite_out(g, v).into_iter().map(|h| Cylinder::word(g, extended(word, h))));
    }
    out
}

pub fn intersect(g: &Ultragraph, a: &Cylinder, b: &Cylinder) -> Option<Cylinder> {
    let (short, long) = if a.base().len() <= b.base().len() { (a, b) } else { (b, a) };
    let k = short.base().len();
    if !long.base().starts_with(short.base()) {
        return None;
    }
    if k < long.base().len() {
        let next = long.base()[k];
        return match short {
            Cylinder::Word(_) => Some(long.clone()),
            Cylinder::Emitter { set, excluded, .. } => {
                (g.emitter_emits(*set, next) && !excluded.contains(&next)).then(|| long.clone())
            }
        };
    }
    match (a, b) {
        (Cylinder::Word(_), x) | (x, Cylinder::Word(_)) => Some(x.clone()),
        (
            Cylinder::Emitter { word, set: s1, excluded: f1 },
            Cylinder::Emitter { set: s2, excluded: f2, .. },
        ) => (s1 == s2).then(|| Cylinder::Emitter { word: word.clone(), set: *s1, excluded: f1 | f2 }),
    }
}

/// `c = piece ⊔ rest` where `piece` is the part of `c` continuing with
/// `next` right after its base word.
pub fn split_toward(g: &Ultragraph, c: &Cylinder, next: EdgeId) -> (Cylinder, Vec<Cylinder>) {
    let piece = Cylinder::word(g, extended(c.base(), next));
    match c {
        Cylinder::Emitter { word, set, excluded } => {
            let mut f = excluded.clone();
            f.insert(next);
            (piece, vec![Cylinder::Emitter { word: word.clone(), set: *set, excluded: f }])
        }
        Cylinder::Word(word) => {
            let mut rest = Vec::new();
            let mut found = false;
            for p in parts(g, word) {
                match &p {
                    Cylinder::Emitter { set, excluded, .. } if p.base().len() == word.len() && g.emitter_emits(*set, next) => {
                        let mut f = excluded.clone();
                        f.insert(next);
                        rest.push(Cylinder::Emitter { word: word.clone(), set: *set, excluded: f });
                        found = true;
                    }
                    _ if p.base().last() == Some(&next) && p.base().len() == word.len() + 1 => found = true,
                    _ => rest.push(p),
                }
            }
            assert!(found, "edge {} does not continue {:?}", next.0, word);
            (piece, rest)
        }
    }
}

/// `a \ b` as pairwise disjoint cylinders.
pub fn difference(g: &Ultragraph, a: &Cylinder, b: &Cylinder) -> Vec<Cylinder> {
    let Some(i) = intersect(g, a, b) else {
        return vec![a.clone()];
    };
    if i == *a {
        return Vec::new();
    }
    let (la, lb) = (a.base().len(), b.base().len());
    if la < lb {
        let (piece, mut rest) = split_toward(g, a, b.base()[la]);
        rest.extend(difference(g, &piece, b));
        return rest;
    }
    match (a, b) {
        (Cylinder::Word(word), Cylinder::Emitter { .. }) => {
            parts(g, word).iter().flat_map(|p| difference(g, p, b)).collect()
        }
        (Cylinder::Emitter { word, excluded: f1, .. }, Cylinder::Emitter { excluded: f2, .. }) => {
            f2.difference(f1).map(|&h| Cylinder::word(g, extended(word, h))).collect()
        }
        _ => unreachable!("equal word cylinders intersect to themselves"),
    }
}

/// `a \ (b_1 ∪ … ∪ b_k)` as pairwise disjoint cylinders.
pub fn difference_all(g: &Ultragraph, a: &Cylinder, bs: &[Cylinder]) -> Vec<Cylinder> {
    let mut pieces = vec![a.clone()];
    for b in bs {
        pieces = pieces.iter().flat_map(|p| difference(g, p, b)).collect();
        if pieces.is_empty() {
            break;
        }
    }
    pieces
}

pub fn union_contains(g: &Ultragraph, big: &[Cylinder], small: &[Cylinder]) -> bool {
    small.iter().all(|c| difference_all(g, c, big).is_empty())
}

pub fn unions_meet(g: &Ultragraph, a: &[Cylinder], b: &[Cylinder]) -> bool {
    a.iter().any(|x| b.iter().any(|y| intersect(g, x, y).is_some()))
}

/// Pairwise intersections, deduplicated.
pub fn intersect_unions(g: &Ultragraph, a: &[Cylinder], b: &[Cylinder]) -> Vec<Cylinder> {
    let mut out: Vec<Cylinder> = a.iter().flat_map(|x| b.iter().filter_map(move |y| intersect(g, x, y))).collect();
    out.sort();
    out.dedup();
    out
}

/// `σ^{-1}(c)`. For a zero-length emitter cylinder the result also contains
/// `(A, A)`, which lies outside `Dom(σ)`; every cylinder holds infinite
/// paths, so this never decides an emptiness question.
pub fn pullback(g: &Ultragraph, c: &Cylinder) -> Result<Vec<Cylinder>, CoverError> {
    if let Some(&first) = c.base().first() {
        let ins = g
            .in_edges(g.source(first))
            .ok_or_else(|| CoverError::UnboundedPreimage(c.render(g)))?;
        return Ok(ins.into_iter().map(|h| c.with_word([&[h][..], c.base()].concat())).collect());
    }
    let Cylinder::Emitter { set, excluded, .. } = c else { unreachable!("word cylinders are nonempty") };
    let entry = g
        .emitter_entry(*set, excluded)
        .ok_or_else(|| CoverError::UnboundedPreimage(c.render(g)))?;
    let mut out = Vec::new();
    for &h in &entry.explicit {
        let r = g.range(h);
        if r.emitter_parts.contains(set) {
            out.push(Cylinder::emitter(g, vec![h], *set, excluded.clone()));
            continue;
        }
        for &v in r.finite_part.iter().filter(|&&v| g.emitter_contains(*set, v)) {
            for x in finite_out(g, v) {
                if !excluded.contains(&x) {
                    out.push(Cylinder::word(g, vec![h, x]));
                }
            }
        }
    }
    out.push(Cylinder::emitter(g, Vec::new(), *set, entry.tail_exclusion));
    Ok(out)
}

/// `σ(D_h)`: the points whose first edge leaves `r(h)`, with `(A, A)` for
/// each minimal emitter `A` of `r(h)`.
fn range_image(g: &Ultragraph, h: EdgeId) -> Vec<Cylinder> {
    let r = g.range(h);
    let mut out: Vec<Cylinder> = r
        .emitter_parts
        .iter()
        .map(|&a| Cylinder::Emitter { word: Vec::new(), set: a, excluded: BTreeSet::new() })
        .collect();
    for &v in &r.finite_part {
        out.extend(finite_out(g, v).into_iter().map(|x| Cylinder::word(g, vec![x])));
    }
    out
}

/// `σ(c ∩ Dom(σ))`, up to zero-length emitter points as in [`pullback`].
pub fn image(g: &Ultragraph, c: &Cylinder) -> Result<Vec<Cylinder>, CoverError> {
    let w = c.base();
    if w.len() >= 2 {
        return Ok(vec![c.with_word(w[1..].to_vec())]);
    }
    match c {
        Cylinder::Word(word) => Ok(range_image(g, word[0])),
        Cylinder::Emitter { word, set, excluded } if word.len() == 1 => {
            Ok(vec![Cylinder::Emitter { word: Vec::new(), set: *set, excluded: excluded.clone() }])
        }
        Cylinder::Emitter { set, excluded, .. } => {
            let entry = g
                .emitter_image(*set, excluded)
                .ok_or_else(|| CoverError::UnboundedPreimage(c.render(g)))?;
            let mut out = Vec::new();
            for &h in &entry.explicit {
                if g.emitter_emits(*set, h) && !excluded.contains(&h) {
                    out.extend(range_image(g, h));
                }
            }
            out.push(Cylinder::emitter(g, Vec::new(), *set, entry.tail_exclusion));
            Ok(out)
        }
    }
}

/// The points having `seg` as an initial segment.
pub fn initial_set(g: &Ultragraph, seg: &Segment) -> Vec<Cylinder> {
    let mut out = Vec::new();
    for &atom in &seg.atoms {
        match atom {
            Atom::Emitter(a) => {
                out.push(Cylinder::Emitter { word: seg.word.clone(), set: a, excluded: BTreeSet::new() })
            }
            Atom::Vertex(v) => {
                out.extend(finite_out(g, v).into_iter().map(|h| Cylinder::word(g, extended(&seg.word, h))))
            }
        }
    }
    out
}

/// The whole space as cylinders, when finitely many suffice: every edge of a
/// finite graph, plus `D_{(A,A),∅}` for a family whose vertices form one
/// minimal emitter.
pub fn whole_space(g: &Ultragraph) -> Option<Vec<Cylinder>> {
    if let Some(n) = g.edge_count() {
        return Some((0..n).map(|i| Cylinder::word(g, vec![EdgeId(i)])).collect());
    }
    let a = g.universal_emitter()?;
    let mut out: Vec<Cylinder> = (0..g.explicit_edge_count()).map(|i| Cylinder::word(g, vec![EdgeId(i)])).collect();
    out.push(Cylinder::Emitter { word: Vec::new(), set: a, excluded: BTreeSet::new() });
    Some(out)
}
