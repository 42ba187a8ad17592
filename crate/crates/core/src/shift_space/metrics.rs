use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;

use super::{PathEnumeration, Tail, Ultrapath};
use crate::dr_core::{abs_diff, DrError, DrResult};
use crate::graph_model::Ultragraph;
use crate::numeric::dyadic;

fn period(x: &Ultrapath) -> usize {
    match &x.tail {
        Tail::Periodic(c) => c.len(),
        _ => 1,
    }
}

/// Whether two points are equal; `None` when a truncation hides the answer.
pub fn same_point(g: &Ultragraph, x: &Ultrapath, y: &Ultrapath) -> DrResult<Option<bool>> {
    match (&x.tail, &y.tail) {
        (Tail::Emitter(a), Tail::Emitter(b)) => return Ok(Some(a == b && x.word == y.word)),
        (Tail::Emitter(_), _) | (_, Tail::Emitter(_)) => return Ok(Some(false)),
        (Tail::Truncated, _) | (_, Tail::Truncated) => {
            let known = [x, y]
                .iter()
                .filter(|p| matches!(p.tail, Tail::Truncated))
                .map(|p| p.word.len())
                .min()
                .expect("one is truncated");
            for i in 0..known {
                if x.edge_at(g, i)? != y.edge_at(g, i)? {
                    return Ok(Some(false));
                }
            }
            return Ok(None);
        }
        _ => {}
    }
    let wl = x.word.len().max(y.word.len());
    let span = match (&x.tail, &y.tail) {
        (Tail::Canonical, Tail::Canonical) => 1,
        (Tail::Periodic(_), Tail::Periodic(_)) => period(x).lcm(&period(y)),
        (Tail::Periodic(c), Tail::Canonical) | (Tail::Canonical, Tail::Periodic(c)) => {
            let closed = (0..c.len()).all(|i| g.least_follower(c[i]) == c[(i + 1) % c.len()]);
            if !closed {
                return Ok(Some(false));
            }
            c.len()
        }
        _ => unreachable!(),
    };
    Ok(Some(x.prefix(g, wl + span)? == y.prefix(g, wl + span)?))
}

/// `d_X(x, y) = 1/2^i` with `p_i` the first element of the enumeration that
/// is an initial segment of exactly one of the points.
pub fn dx_distance(g: &Ultragraph, en: &PathEnumeration, x: &Ultrapath, y: &Ultrapath) -> DrResult<BigRational> {
    if same_point(g, x, y)? == Some(true) {
        return Ok(BigRational::zero());
    }
    for (i, p) in en.items().iter().enumerate() {
        if x.has_initial_segment(g, p)? != y.has_initial_segment(g, p)? {
            return Ok(dyadic(i as u32 + 1));
        }
    }
    Err(DrError::InsufficientBudget { bound: dyadic(en.len() as u32 + 1) })
}

#[derive(PartialEq)]
enum Sym {
    Edge(usize),
    End(usize),
}

fn sym(g: &Ultragraph, x: &Ultrapath, i: usize) -> DrResult<Option<Sym>> {
    Ok(match x.edge_at(g, i)? {
        Some(e) => Some(Sym::Edge(e.0)),
        None if i == x.word.len() => match x.tail {
            Tail::Emitter(a) => Some(Sym::End(a.0)),
            _ => unreachable!(),
        },
        None => None,
    })
}

/// `1/2^i` with `i` the first (1-based) position where the edge sequences
/// differ; an `X_fin` point ends with its emitter as a final symbol.
pub fn first_difference(g: &Ultragraph, x: &Ultrapath, y: &Ultrapath) -> DrResult<BigRational> {
    if same_point(g, x, y)? == Some(true) {
        return Ok(BigRational::zero());
    }
    let mut i = 0usize;
    loop {
        let (a, b) = (sym(g, x, i)?, sym(g, y, i)?);
        if a != b {
            return Ok(dyadic(i as u32 + 1));
        }
        if a.is_none() {
            return Ok(BigRational::zero());
        }
        i += 1;
    }
}

/// Enclosure of `Σ_i |1/h(x_i) − 1/h(y_i)| / 2^i` with `h(e) = index + 1`:
/// the first `k` terms exactly plus the tail bound `1/2^k`.
pub fn gurevich(g: &Ultragraph, x: &Ultrapath, y: &Ultrapath, k: u32) -> DrResult<(BigRational, BigRational)> {
    if !x.is_infinite() || !y.is_infinite() {
        return Err(DrError::InvalidPoint("the Gurevich metric is defined on infinite paths".into()));
    }
    let mut s = BigRational::zero();
    for i in 0..k as usize {
        let (a, b) = (x.edge_at(g, i)?.expect("infinite"), y.edge_at(g, i)?.expect("infinite"));
        if a != b {
            let ha = BigRational::new(BigInt::from(1), BigInt::from(a.0 + 1));
            let hb = BigRational::new(BigInt::from(1), BigInt::from(b.0 + 1));
            s += abs_diff(&ha, &hb) * dyadic(i as u32 + 1);
        }
    }
    let hi = &s + dyadic(k);
    Ok((s, hi))
}
