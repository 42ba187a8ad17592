use std::collections::BTreeSet;

use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;

use super::cover::{Carrier, Cover};
use super::cylinder::{difference_all, initial_set, unions_meet, Cylinder};
use super::CoverError;
use crate::graph_model::{EdgeId, EmitterId, Ultragraph};
use crate::numeric::dyadic;
use crate::shift_space::PathEnumeration;

/// `α^m` on the renewal ultragraph, with its index sets.
#[derive(Debug, Clone, Serialize)]
pub struct RenewalCover {
    pub m: usize,
    pub cover: Cover,
    /// `F = {e, f_1, …, f_m}`.
    pub f: Vec<EdgeId>,
    /// Paths over `F` ending in `e`, of length `1..m`.
    pub q: Vec<Vec<EdgeId>>,
    /// Paths over `F` of length `m`.
    pub r: Vec<Vec<EdgeId>>,
    /// `|α^m| = 1 + |Q| + |R|`.
    pub size: usize,
}

/// Admissible words of each length `1..=max_len` over `edges`.
pub fn words_over(g: &Ultragraph, edges: &[EdgeId], max_len: usize) -> Vec<Vec<Vec<EdgeId>>> {
    let mut out = vec![Vec::new()];
    let mut layer: Vec<Vec<EdgeId>> = edges.iter().map(|&e| vec![e]).collect();
    for len in 1..=max_len {
        out.push(layer.clone());
        if len == max_len {
            break;
        }
        let mut next = Vec::new();
        for w in &layer {
            for &h in edges {
                if g.follows(*w.last().expect("nonempty"), h) {
                    let mut w2 = w.clone();
                    w2.push(h);
                    next.push(w2);
                }
            }
        }
        layer = next;
    }
    out
}

pub fn renewal_cover(m: usize) -> RenewalCover {
    assert!(m >= 1, "m must be at least 1");
    let g = Ultragraph::renewal();
    let v = EmitterId(0);
    let f: Vec<EdgeId> = (0..=m).map(EdgeId).collect();
    let fset: BTreeSet<EdgeId> = f.iter().copied().collect();
    let words = words_over(&g, &f, m);
    let e = EdgeId(0);
    let q: Vec<Vec<EdgeId>> = words[1..m].iter().flatten().filter(|w| w.last() == Some(&e)).cloned().collect();
    let r = words[m].clone();
    let mut members = vec![vec![Cylinder::emitter(&g, Vec::new(), v, fset.clone())]];
    members.extend(q.iter().map(|b| vec![Cylinder::emitter(&g, b.clone(), v, fset.clone())]));
    members.extend(r.iter().map(|w| vec![Cylinder::word(&g, w.clone())]));
    let size = members.len();
    RenewalCover { m, cover: Cover::new(members, Carrier::Whole, true), f, q, r, size }
}

/// `{D_γ : |γ| = m}` over a finite graph.
pub fn word_cover(g: &Ultragraph, m: usize) -> Result<Cover, CoverError> {
    let n = g
        .edge_count()
        .ok_or_else(|| CoverError::Unsupported(format!("{} has infinitely many words of length {m}", g.name())))?;
    assert!(m >= 1, "m must be at least 1");
    let edges: Vec<EdgeId> = (0..n).map(EdgeId).collect();
    let words = words_over(g, &edges, m);
    let members = words[m].iter().map(|w| vec![Cylinder::word(g, w.clone())]).collect();
    Ok(Cover::new(members, Carrier::Whole, true))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Diameter {
    pub value: BigRational,
    /// `false` when no enumerated segment splits a member; `value` is then
    /// the bound past the enumeration.
    pub exact: bool,
}

/// `d_X` diameter of a union of cylinders: `1/2^{i+1}` for the first `p_i`
/// whose initial set meets the union without containing it.
pub fn member_diameter(g: &Ultragraph, en: &PathEnumeration, member: &[Cylinder]) -> Diameter {
    for (i, seg) in en.items().iter().enumerate() {
        let init = initial_set(g, seg);
        if unions_meet(g, member, &init) && member.iter().any(|c| !difference_all(g, c, &init).is_empty()) {
            return Diameter { value: dyadic(i as u32 + 1), exact: true };
        }
    }
    Diameter { value: dyadic(en.len() as u32 + 1), exact: false }
}

pub fn cover_diameter(g: &Ultragraph, en: &PathEnumeration, cover: &Cover) -> Diameter {
    let ds: Vec<Diameter> = cover.members.par_iter().map(|m| member_diameter(g, en, m)).collect();
    let value = ds.iter().map(|d| d.value.clone()).max().unwrap_or_else(|| dyadic(0));
    Diameter { exact: ds.iter().all(|d| d.exact), value }
}

#[derive(Debug, Clone, Serialize)]
pub struct ScheduledCover {
    pub m: usize,
    pub cover: Cover,
    pub diameter: Diameter,
}

/// `α^m` for renewal, depth-`m` word covers for finite graphs, with their
/// `d_X` diameters.
pub fn diam_zero_schedule(
    g: &Ultragraph,
    en: &PathEnumeration,
    ms: &[usize],
) -> Result<Vec<ScheduledCover>, CoverError> {
    let renewal = g.name() == "renewal";
    if !renewal && !g.is_finite() {
        return Err(CoverError::Unsupported(format!("no cover schedule for {}", g.name())));
    }
    ms.par_iter()
        .map(|&m| {
            let cover = if renewal { renewal_cover(m).cover } else { word_cover(g, m)? };
            let diameter = cover_diameter(g, en, &cover);
            Ok(ScheduledCover { m, cover, diameter })
        })
        .collect()
}
