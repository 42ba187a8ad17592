//! The shift space `X = 𝔭^∞ ∪ X_fin` of an ultragraph as a Deaconu-Renault
//! system.
//!
//! Points are [`Ultrapath`]s: an edge word followed by a tail that is either
//! a minimal infinite emitter (an `X_fin` point), a repeated cycle, the
//! canonical extension by least-indexed admissible edges, or unknown (a
//! truncation). Initial-segment tests against an enumeration of
//! `S = {(α, A) : A a vertex or minimal emitter}` give the metric `d_X`.

mod enumeration;
mod metrics;
mod modulus;
mod system;

pub use enumeration::{EnumKind, PathEnumeration, Segment};
pub use metrics::{dx_distance, first_difference, gurevich, same_point};
pub use modulus::{modulus_table, ModulusRow, ModulusTable};
pub use system::{cylinder_delta, representatives, GraphShiftSystem, Metric};

use crate::dr_core::{DrError, DrResult};
use crate::graph_model::{Atom, EdgeId, EmitterId, Ultragraph};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tail {
    /// `(α, A)` with `A ∈ M_α`; with an empty word this is `(A, A)`.
    Emitter(EmitterId),
    /// `α c c c …`
    Periodic(Vec<EdgeId>),
    /// `α` followed by least-indexed admissible edges forever.
    Canonical,
    /// An infinite path of which only `α` is known.
    Truncated,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ultrapath {
    pub word: Vec<EdgeId>,
    pub tail: Tail,
}

impl Ultrapath {
    pub fn new(g: &Ultragraph, word: Vec<EdgeId>, tail: Tail) -> DrResult<Self> {
        for w in word.windows(2) {
            if !g.follows(w[0], w[1]) {
                return Err(DrError::InvalidPoint(format!(
                    "{} cannot follow {}",
                    g.edge_name(w[1]),
                    g.edge_name(w[0])
                )));
            }
        }
        match &tail {
            Tail::Emitter(a) => {
                if let Some(&last) = word.last() {
                    if !g.range(last).emitter_parts.contains(a) {
                        return Err(DrError::InvalidPoint(format!(
                            "{} is not a minimal emitter in the range of {}",
                            g.emitter_name(*a),
                            g.edge_name(last)
                        )));
                    }
                }
            }
            Tail::Periodic(c) => {
                if c.is_empty() {
                    return Err(DrError::InvalidPoint("empty cycle".into()));
                }
                let mut seq: Vec<EdgeId> = word.last().copied().into_iter().collect();
                seq.extend(c.iter().copied());
                seq.push(c[0]);
                for w in seq.windows(2) {
                    if !g.follows(w[0], w[1]) {
                        return Err(DrError::InvalidPoint("cycle is not a path".into()));
                    }
                }
            }
            Tail::Canonical => {
                if word.is_empty() {
                    return Err(DrError::InvalidPoint("canonical extension needs a first edge".into()));
                }
            }
            Tail::Truncated => {}
        }
        Ok(Self { word, tail })
    }

    /// `(A, A)`.
    pub fn emitter_point(a: EmitterId) -> Self {
        Self { word: Vec::new(), tail: Tail::Emitter(a) }
    }

    pub fn is_infinite(&self) -> bool {
        !matches!(self.tail, Tail::Emitter(_))
    }

    /// Length of an `X_fin` point; `None` for infinite paths.
    pub fn finite_len(&self) -> Option<usize> {
        match self.tail {
            Tail::Emitter(_) => Some(self.word.len()),
            _ => None,
        }
    }

    /// The `i`-th edge (0-based), `None` past the end of an `X_fin` point.
    pub fn edge_at(&self, g: &Ultragraph, i: usize) -> DrResult<Option<EdgeId>> {
        if i < self.word.len() {
            return Ok(Some(self.word[i]));
        }
        match &self.tail {
            Tail::Emitter(_) => Ok(None),
            Tail::Periodic(c) => Ok(Some(c[(i - self.word.len()) % c.len()])),
            Tail::Canonical => {
                let mut e = *self.word.last().expect("validated");
                for _ in self.word.len()..=i {
                    e = g.least_follower(e);
                }
                Ok(Some(e))
            }
            Tail::Truncated => Err(DrError::InsufficientDepth { needed: i + 1, available: self.word.len() }),
        }
    }

    /// The first `min(len, |x|)` edges.
    pub fn prefix(&self, g: &Ultragraph, len: usize) -> DrResult<Vec<EdgeId>> {
        let mut out = Vec::with_capacity(len);
        if let Tail::Canonical = self.tail {
            out.extend(self.word.iter().take(len).copied());
            let mut e = *self.word.last().expect("validated");
            while out.len() < len {
                e = g.least_follower(e);
                out.push(e);
            }
            return Ok(out);
        }
        for i in 0..len {
            match self.edge_at(g, i)? {
                Some(e) => out.push(e),
                None => break,
            }
        }
        Ok(out)
    }

    /// `σ(x)`.
    pub fn shift(&self, g: &Ultragraph) -> DrResult<Self> {
        match &self.tail {
            Tail::Emitter(_) => {
                if self.word.is_empty() {
                    return Err(DrError::LengthZero);
                }
                Ok(Self { word: self.word[1..].to_vec(), tail: self.tail.clone() })
            }
            Tail::Periodic(c) => {
                if self.word.is_empty() {
                    let mut r = c[1..].to_vec();
                    r.push(c[0]);
                    Ok(Self { word: Vec::new(), tail: Tail::Periodic(r) })
                } else {
                    Ok(Self { word: self.word[1..].to_vec(), tail: self.tail.clone() })
                }
            }
            Tail::Canonical => {
                if self.word.len() == 1 {
                    Ok(Self { word: vec![g.least_follower(self.word[0])], tail: Tail::Canonical })
                } else {
                    Ok(Self { word: self.word[1..].to_vec(), tail: Tail::Canonical })
                }
            }
            Tail::Truncated => {
                if self.word.is_empty() {
                    return Err(DrError::InsufficientDepth { needed: 1, available: 0 });
                }
                Ok(Self { word: self.word[1..].to_vec(), tail: Tail::Truncated })
            }
        }
    }

    /// Whether `(α, ⋃ atoms)` is an initial segment of this point.
    pub fn has_initial_segment(&self, g: &Ultragraph, seg: &Segment) -> DrResult<bool> {
        let k = seg.word.len();
        for (i, &e) in seg.word.iter().enumerate() {
            match self.edge_at(g, i)? {
                Some(f) if f == e => {}
                _ => return Ok(false),
            }
        }
        match self.edge_at(g, k)? {
            Some(h) => {
                let s = g.source(h);
                Ok(seg.atoms.iter().any(|&a| g.atom_contains(a, s)))
            }
            None => match self.tail {
                Tail::Emitter(b) => Ok(seg.atoms.contains(&Atom::Emitter(b))),
                _ => unreachable!("only X_fin points end"),
            },
        }
    }
}

#[cfg(test)]
mod tests;
