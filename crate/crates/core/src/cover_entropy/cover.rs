use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;

use super::cylinder::{
    difference_all, image, intersect, intersect_unions, pullback, unions_meet, whole_space, Cylinder,
};
use super::CoverError;
use crate::graph_model::Ultragraph;

/// The set a cover is asked to cover.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Carrier {
    Whole,
    Cylinders(Vec<Cylinder>),
}

impl Carrier {
    pub fn intersect(&self, g: &Ultragraph, other: &Carrier) -> Carrier {
        match (self, other) {
            (Carrier::Whole, c) | (c, Carrier::Whole) => c.clone(),
            (Carrier::Cylinders(a), Carrier::Cylinders(b)) => Carrier::Cylinders(intersect_unions(g, a, b)),
        }
    }

    pub fn pullback(&self, g: &Ultragraph) -> Result<Carrier, CoverError> {
        match self {
            Carrier::Whole => Ok(Carrier::Whole),
            Carrier::Cylinders(cs) => Ok(Carrier::Cylinders(pullback_union(g, cs)?)),
        }
    }

    /// Explicit cylinders, expanding the whole space when possible.
    pub fn cylinders(&self, g: &Ultragraph) -> Result<Vec<Cylinder>, CoverError> {
        match self {
            Carrier::Whole => whole_space(g).ok_or_else(|| CoverError::Unsupported(format!(
                "the whole space of {} is not a finite union of cylinders",
                g.name()
            ))),
            Carrier::Cylinders(cs) => Ok(cs.clone()),
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, Carrier::Cylinders(cs) if cs.is_empty())
    }
}

fn pullback_union(g: &Ultragraph, cs: &[Cylinder]) -> Result<Vec<Cylinder>, CoverError> {
    let mut out = Vec::new();
    for c in cs {
        out.extend(pullback(g, c)?);
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// Members are finite unions of cylinders. `disjoint` records that distinct
/// members are known to be pairwise disjoint.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Cover {
    pub members: Vec<Vec<Cylinder>>,
    pub carrier: Carrier,
    pub disjoint: bool,
}

impl Cover {
    pub fn new(members: Vec<Vec<Cylinder>>, carrier: Carrier, disjoint: bool) -> Self {
        let members = members.into_iter().filter(|m| !m.is_empty()).collect();
        Self { members, carrier, disjoint }
    }

    /// `{X}`.
    pub fn trivial(g: &Ultragraph) -> Result<Self, CoverError> {
        let all = Carrier::Whole.cylinders(g)?;
        Ok(Self::new(vec![all], Carrier::Whole, true))
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Carrier ⊆ union of members.
    pub fn covers_carrier(&self, g: &Ultragraph) -> Result<bool, CoverError> {
        let all: Vec<Cylinder> = self.members.iter().flatten().cloned().collect();
        Ok(self.carrier.cylinders(g)?.iter().all(|c| difference_all(g, c, &all).is_empty()))
    }

    /// Checks pairwise disjointness symbolically.
    pub fn members_disjoint(&self, g: &Ultragraph) -> bool {
        let m = &self.members;
        (0..m.len()).all(|i| (i + 1..m.len()).all(|j| !unions_meet(g, &m[i], &m[j])))
    }

    pub fn render(&self, g: &Ultragraph) -> Vec<String> {
        self.members
            .iter()
            .map(|m| m.iter().map(|c| c.render(g)).collect::<Vec<_>>().join(" ∪ "))
            .collect()
    }
}

/// `a ∨ b`: the nonempty pairwise intersections, carrier intersected.
pub fn join(g: &Ultragraph, a: &Cover, b: &Cover) -> Cover {
    let mut members: Vec<Vec<Cylinder>> = Vec::new();
    for x in &a.members {
        for y in &b.members {
            let m = intersect_unions(g, x, y);
            if !m.is_empty() {
                members.push(m);
            }
        }
    }
    members.sort();
    members.dedup();
    Cover { members, carrier: a.carrier.intersect(g, &b.carrier), disjoint: a.disjoint && b.disjoint }
}

/// `σ^{-1}(a)`, with `σ^{-1}` of the carrier.
pub fn pullback_cover(g: &Ultragraph, a: &Cover) -> Result<Cover, CoverError> {
    let members = a.members.iter().map(|m| pullback_union(g, m)).collect::<Result<_, _>>()?;
    Ok(Cover { members, carrier: a.carrier.pullback(g)?, disjoint: a.disjoint })
}

/// `α_n = α ∨ σ^{-1}(α) ∨ … ∨ σ^{-n}(α)`, built as `α ∨ σ^{-1}(α_{n-1})`.
pub fn iterate_cover(g: &Ultragraph, a: &Cover, n: usize) -> Result<Cover, CoverError> {
    let mut cur = a.clone();
    for _ in 0..n {
        cur = join(g, a, &pullback_cover(g, &cur)?);
    }
    Ok(cur)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CountMethod {
    /// Pairwise disjoint members: the number meeting the carrier.
    Disjoint,
    /// Minimum set cover over the atoms of the members.
    SetCover { atoms: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubcoverCount {
    pub count: usize,
    pub method: CountMethod,
}

pub const DEFAULT_ATOM_BUDGET: usize = 4096;

/// `N(α, Y)` with `Y` the carrier of `α`.
pub fn minimal_subcover_count(g: &Ultragraph, a: &Cover, atom_budget: usize) -> Result<SubcoverCount, CoverError> {
    if a.carrier.is_empty() {
        return Ok(SubcoverCount { count: 1, method: CountMethod::Disjoint });
    }
    if a.disjoint {
        let count = match &a.carrier {
            Carrier::Whole => a.members.len(),
            Carrier::Cylinders(k) => a.members.iter().filter(|m| unions_meet(g, m, k)).count(),
        };
        return Ok(SubcoverCount { count: count.max(1), method: CountMethod::Disjoint });
    }
    let atoms = atoms_of(g, &a.carrier.cylinders(g)?, &a.members, atom_budget)?;
    if atoms.is_empty() {
        return Ok(SubcoverCount { count: 1, method: CountMethod::SetCover { atoms: 0 } });
    }
    let words = atoms.len().div_ceil(64);
    let sets: Vec<Vec<u64>> = a
        .members
        .iter()
        .map(|m| {
            let mut bits = vec![0u64; words];
            for (i, atom) in atoms.iter().enumerate() {
                if m.iter().any(|c| intersect(g, atom, c).is_some()) {
                    bits[i / 64] |= 1 << (i % 64);
                }
            }
            bits
        })
        .collect();
    let count = min_set_cover(atoms.len(), &sets).ok_or(CoverError::NotACover)?;
    Ok(SubcoverCount { count, method: CountMethod::SetCover { atoms: atoms.len() } })
}

/// Disjoint pieces of the carrier, each inside or outside every member
/// cylinder.
fn atoms_of(
    g: &Ultragraph,
    carrier: &[Cylinder],
    members: &[Vec<Cylinder>],
    budget: usize,
) -> Result<Vec<Cylinder>, CoverError> {
    let mut pieces: Vec<Cylinder> = Vec::new();
    for c in carrier {
        let fresh = difference_all(g, c, &pieces);
        pieces.extend(fresh);
    }
    for c in members.iter().flatten() {
        let mut next = Vec::with_capacity(pieces.len());
        for p in pieces {
            match intersect(g, &p, c) {
                None => next.push(p),
                Some(i) if i == p => next.push(p),
                Some(i) => {
                    next.extend(difference_all(g, &p, std::slice::from_ref(c)));
                    next.push(i);
                }
            }
        }
        pieces = next;
        if pieces.len() > budget {
            return Err(CoverError::BudgetExceeded { atoms: pieces.len(), budget });
        }
    }
    Ok(pieces)
}

/// Exact minimum number of sets covering `0..n`, or `None` if some element
/// is in no set.
pub fn min_set_cover(n: usize, sets: &[Vec<u64>]) -> Option<usize> {
    let words = n.div_ceil(64);
    let mut full = vec![0u64; words];
    for i in 0..n {
        full[i / 64] |= 1 << (i % 64);
    }
    let mut union = vec![0u64; words];
    for s in sets {
        for (u, x) in union.iter_mut().zip(s) {
            *u |= x;
        }
    }
    if union != full {
        return None;
    }
    let max_size = sets.iter().map(|s| s.iter().map(|x| x.count_ones()).sum::<u32>()).max().unwrap_or(0) as usize;
    let mut best = sets.len();
    let mut covered = vec![0u64; words];
    search(n, sets, &mut covered, 0, max_size, &mut best);
    Some(best)
}

fn search(n: usize, sets: &[Vec<u64>], covered: &mut Vec<u64>, used: usize, max_size: usize, best: &mut usize) {
    let open = n - covered.iter().map(|x| x.count_ones() as usize).sum::<usize>();
    if open == 0 {
        *best = (*best).min(used);
        return;
    }
    if used + open.div_ceil(max_size.max(1)) >= *best {
        return;
    }
    // branch on the uncovered element with the fewest candidate sets
    let mut pick = None;
    for i in 0..n {
        if covered[i / 64] >> (i % 64) & 1 == 1 {
            continue;
        }
        let c = sets.iter().filter(|s| s[i / 64] >> (i % 64) & 1 == 1).count();
        if pick.is_none_or(|(_, k)| c < k) {
            pick = Some((i, c));
        }
    }
    let (i, _) = pick.expect("an open element exists");
    for s in sets.iter().filter(|s| s[i / 64] >> (i % 64) & 1 == 1) {
        let saved = covered.clone();
        for (c, x) in covered.iter_mut().zip(s) {
            *c |= x;
        }
        search(n, sets, covered, used + 1, max_size, best);
        *covered = saved;
    }
}

/// `N(α_n, K_n)` for `n = 0..=n_max` of a cover with pairwise disjoint
/// members, without building `α_n`.
///
/// A member `D_0 ∩ σ^{-1}(D_1) ∩ … ∩ σ^{-n}(D_n)` meets `K_n` iff the
/// forward sets `S_0 = D_0 ∩ K`, `S_j = σ(S_{j-1}) ∩ D_j ∩ K` stay nonempty.
/// Each `S_j` is a union of cylinders no deeper than the cover, so the count
/// is memoized on `(S_j, steps left)`.
pub fn refinement_counts(g: &Ultragraph, a: &Cover, n_max: usize) -> Result<Vec<BigUint>, CoverError> {
    if !a.disjoint {
        return Err(CoverError::Unsupported("the forward count needs pairwise disjoint members".into()));
    }
    let carrier = match &a.carrier {
        Carrier::Whole => None,
        Carrier::Cylinders(k) => Some(k.clone()),
    };
    let mut counter = Forward { g, members: &a.members, carrier, memo: HashMap::new() };
    let mut starts = Vec::new();
    for m in &a.members {
        let s = counter.restrict(m.clone());
        if !s.is_empty() {
            starts.push(s);
        }
    }
    let mut out = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let mut total = BigUint::zero();
        for s in &starts {
            total += counter.count(s, n)?;
        }
        // an empty K_n is covered by the empty subcover, counted as 1
        out.push(if total.is_zero() { BigUint::one() } else { total });
    }
    Ok(out)
}

struct Forward<'a> {
    g: &'a Ultragraph,
    members: &'a [Vec<Cylinder>],
    carrier: Option<Vec<Cylinder>>,
    memo: HashMap<(Vec<Cylinder>, usize), BigUint>,
}

impl Forward<'_> {
    fn restrict(&self, mut s: Vec<Cylinder>) -> Vec<Cylinder> {
        if let Some(k) = &self.carrier {
            s = intersect_unions(self.g, &s, k);
        }
        s.sort();
        s.dedup();
        s
    }

    fn count(&mut self, s: &[Cylinder], steps: usize) -> Result<BigUint, CoverError> {
        if steps == 0 {
            return Ok(BigUint::one());
        }
        let key = (s.to_vec(), steps);
        if let Some(v) = self.memo.get(&key) {
            return Ok(v.clone());
        }
        let mut img = Vec::new();
        for c in s {
            img.extend(image(self.g, c)?);
        }
        let mut total = BigUint::zero();
        for m in self.members {
            let next = self.restrict(intersect_unions(self.g, &img, m));
            if !next.is_empty() {
                total += self.count(&next, steps - 1)?;
            }
        }
        self.memo.insert(key, total.clone());
        Ok(total)
    }
}
