use super::*;
use crate::dr_core::{iterate_distance, DrError, DrSystem};
use crate::graph_model::{VertexId, EmitterId};
use crate::numeric::{dyadic, rational};
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;

fn e(i: usize) -> EdgeId {
    EdgeId(i)
}

fn seg(word: &[usize], atom: Atom) -> Segment {
    Segment { word: word.iter().map(|&i| EdgeId(i)).collect(), atoms: vec![atom] }
}

const V: Atom = Atom::Emitter(EmitterId(0));

fn vtx(i: usize) -> Atom {
    Atom::Vertex(VertexId(i))
}

#[test]
fn renewal_enumeration_prefix() {
    let g = Ultragraph::renewal();
    let en = PathEnumeration::new(&g, EnumKind::default(), 9);
    // worked out by hand: stage 1 then stage 2, then the start of stage 3
    let want = vec![
        seg(&[], V),
        seg(&[0], V),
        seg(&[], vtx(0)),
        seg(&[1], vtx(0)),
        seg(&[0, 0], V),
        seg(&[0, 1], vtx(0)),
        seg(&[1, 0], V),
        seg(&[], vtx(1)),
        seg(&[2], vtx(1)),
    ];
    assert_eq!(en.items(), &want[..]);
    assert_eq!(en.position(&seg(&[0, 1], vtx(0))), Some(5));
}

#[test]
fn enumeration_has_no_repeats() {
    for g in [Ultragraph::renewal(), Ultragraph::ladder(), Ultragraph::rose(3).unwrap()] {
        for kind in [EnumKind::default(), EnumKind::paired(), EnumKind::with_ranges()] {
            let en = PathEnumeration::new(&g, kind, 300);
            assert_eq!(en.len(), 300);
            let set: std::collections::HashSet<_> = en.items().iter().collect();
            assert_eq!(set.len(), 300);
        }
    }
}

#[test]
fn range_variant_lists_whole_ranges() {
    let g = Ultragraph::explicit(
        "fork",
        vec!["a".into(), "b".into()],
        vec![("x".into(), 0, vec![0, 1]), ("y".into(), 1, vec![0])],
    )
    .unwrap();
    let en = PathEnumeration::new(&g, EnumKind::with_ranges(), 40);
    let whole = Segment { word: vec![e(0)], atoms: vec![vtx(0), vtx(1)] };
    let pos = en.position(&whole).unwrap();
    assert!(en.position(&seg(&[0], vtx(0))).unwrap() < pos);
    assert!(PathEnumeration::new(&g, EnumKind::default(), 40).position(&whole).is_none());
}

#[test]
fn point_validation() {
    let g = Ultragraph::renewal();
    assert!(Ultrapath::new(&g, vec![e(2), e(1), e(0)], Tail::Emitter(EmitterId(0))).is_ok());
    assert!(Ultrapath::new(&g, vec![e(1), e(1)], Tail::Canonical).is_err());
    assert!(Ultrapath::new(&g, vec![e(1)], Tail::Emitter(EmitterId(0))).is_err());
    assert!(Ultrapath::new(&g, vec![], Tail::Canonical).is_err());
    assert!(Ultrapath::new(&g, vec![], Tail::Periodic(vec![e(0)])).is_ok());
    assert!(Ultrapath::new(&g, vec![], Tail::Periodic(vec![e(1)])).is_err());
}

#[test]
fn shift_on_xfin_points() {
    let g = Ultragraph::renewal();
    let mut x = Ultrapath::new(&g, vec![e(2), e(1), e(0)], Tail::Emitter(EmitterId(0))).unwrap();
    for len in (0..3).rev() {
        x = x.shift(&g).unwrap();
        assert_eq!(x.word.len(), len);
    }
    assert_eq!(x, Ultrapath::emitter_point(EmitterId(0)));
    assert_eq!(x.shift(&g), Err(DrError::LengthZero));
}

#[test]
fn canonical_extension_on_ladder() {
    let g = Ultragraph::ladder();
    let x = Ultrapath::new(&g, vec![e(2)], Tail::Canonical).unwrap();
    let names: Vec<String> = x.prefix(&g, 7).unwrap().iter().map(|&f| g.edge_name(f)).collect();
    assert_eq!(names, ["e2", "f2", "f1", "e1", "f1", "e1", "f1"]);
    let y = x.shift(&g).unwrap().shift(&g).unwrap();
    assert_eq!(y.prefix(&g, 3).unwrap(), x.prefix(&g, 5).unwrap()[2..]);
    let p = Ultrapath::new(&g, vec![e(2), e(3), e(1)], Tail::Periodic(vec![e(0), e(1)])).unwrap();
    assert_eq!(same_point(&g, &x, &p).unwrap(), Some(true));
    let q = Ultrapath::new(&g, vec![e(2), e(3)], Tail::Periodic(vec![e(1), e(0)])).unwrap();
    assert_eq!(same_point(&g, &p, &q).unwrap(), Some(true));
    let t = Ultrapath::new(&g, vec![e(2), e(3)], Tail::Truncated).unwrap();
    assert_eq!(same_point(&g, &x, &t).unwrap(), None);
    assert!(matches!(t.edge_at(&g, 2), Err(DrError::InsufficientDepth { .. })));
}

#[test]
fn dx_on_renewal() {
    let g = Ultragraph::renewal();
    let en = PathEnumeration::new(&g, EnumKind::default(), 50);
    let x = Ultrapath::new(&g, vec![e(0)], Tail::Emitter(EmitterId(0))).unwrap();
    let y = Ultrapath::new(&g, vec![e(0)], Tail::Periodic(vec![e(0)])).unwrap();
    // (e e, V) at position 5 is the first element that tells them apart
    assert_eq!(dx_distance(&g, &en, &x, &y).unwrap(), dyadic(5));
    assert_eq!(dx_distance(&g, &en, &x, &x).unwrap(), BigRational::zero());
    let short = PathEnumeration::new(&g, EnumKind::default(), 3);
    assert_eq!(
        dx_distance(&g, &short, &x, &y),
        Err(DrError::InsufficientBudget { bound: dyadic(4) })
    );
}

#[test]
fn first_difference_and_gurevich() {
    let g = Ultragraph::rose(3).unwrap();
    let x = Ultrapath::new(&g, vec![e(0), e(1)], Tail::Periodic(vec![e(2)])).unwrap();
    let y = Ultrapath::new(&g, vec![e(0), e(2)], Tail::Periodic(vec![e(2)])).unwrap();
    assert_eq!(first_difference(&g, &x, &y).unwrap(), dyadic(2));
    assert_eq!(first_difference(&g, &x, &x).unwrap(), BigRational::zero());
    let (lo, hi) = gurevich(&g, &x, &y, 10).unwrap();
    // |1/2 - 1/3| / 4
    assert_eq!(lo, rational(1, 24));
    assert_eq!(hi - &lo, dyadic(10));
    let r = Ultragraph::renewal();
    let a = Ultrapath::new(&r, vec![e(0)], Tail::Emitter(EmitterId(0))).unwrap();
    let b = Ultrapath::new(&r, vec![e(0), e(0)], Tail::Emitter(EmitterId(0))).unwrap();
    assert_eq!(first_difference(&r, &a, &b).unwrap(), dyadic(2));
    assert!(gurevich(&r, &a, &b, 4).is_err());
}

#[test]
fn ladder_pairs_collapse_in_dx_only() {
    let g = Ultragraph::ladder();
    let en = PathEnumeration::new(&g, EnumKind::default(), 400);
    let mut last = dyadic(0);
    for k in 1..=8 {
        let x = Ultrapath::new(&g, vec![e(2 * k - 2)], Tail::Canonical).unwrap();
        let y = Ultrapath::new(&g, vec![e(2 * k - 1)], Tail::Canonical).unwrap();
        let pos = en.position(&Segment { word: vec![], atoms: vec![vtx(k - 1)] }).unwrap();
        let d = dx_distance(&g, &en, &x, &y).unwrap();
        assert_eq!(d, dyadic(pos as u32 + 1));
        assert!(d < last);
        last = d;
        assert_eq!(first_difference(&g, &x, &y).unwrap(), dyadic(1));
    }
}

#[test]
fn system_domain_and_iterates() {
    let g = Ultragraph::renewal();
    let en = PathEnumeration::new(&g, EnumKind::default(), 200);
    let sys = GraphShiftSystem::enumerated(g.clone(), en);
    let x = Ultrapath::new(&g, vec![e(1), e(0)], Tail::Emitter(EmitterId(0))).unwrap();
    assert_eq!(sys.domain_horizon(&x, 5).unwrap(), 2);
    assert_eq!(sys.domain_horizon(&x, 2).unwrap(), 1);
    let y = Ultrapath::new(&g, vec![e(1), e(0)], Tail::Periodic(vec![e(0)])).unwrap();
    assert_eq!(sys.domain_horizon(&y, 5).unwrap(), 4);
    let d = iterate_distance(&sys, &x, &y, 5).unwrap();
    assert!(d >= sys.base_distance(&x, &y).unwrap());
    let near = sys.neighborhood(&x, &dyadic(4));
    assert!(near.iter().any(|z| sys.base_distance(&x, z).unwrap() < dyadic(6)));
}

#[test]
fn renewal_representatives() {
    let g = Ultragraph::renewal();
    let en = PathEnumeration::new(&g, EnumKind::default(), 100);
    let reps = representatives(&g, 3, 1);
    assert_eq!(reps.len(), 5);
    assert!(reps.contains(&Ultrapath::emitter_point(EmitterId(0))));
    assert!(reps.contains(&Ultrapath { word: vec![e(0)], tail: Tail::Emitter(EmitterId(0)) }));
    assert_eq!(cylinder_delta(&g, &en, 1), dyadic(5));
    assert_eq!(representatives(&g, 3, 0), vec![Ultrapath::emitter_point(EmitterId(0))]);
}

#[test]
fn modulus_rows() {
    let pairs = vec![(dyadic(3), dyadic(1)), (dyadic(6), dyadic(1)), (dyadic(2), dyadic(4))];
    let t = modulus_table(&pairs, 8);
    assert_eq!(t.rows[0].pairs, 3);
    assert_eq!(t.rows[2].max_db, Some(dyadic(1)));
    assert_eq!(t.rows[7].pairs, 0);
    assert_eq!(t.delta_for(&dyadic(2)), Some(6));
}

fn rose_point() -> impl Strategy<Value = Ultrapath> {
    (proptest::collection::vec(0usize..2, 0..6), proptest::collection::vec(0usize..2, 1..4)).prop_map(|(w, c)| {
        Ultrapath { word: w.into_iter().map(EdgeId).collect(), tail: Tail::Periodic(c.into_iter().map(EdgeId).collect()) }
    })
}

proptest! {
    #[test]
    fn representatives_are_delta_dense(y in rose_point(), depth in 1usize..4) {
        let g = Ultragraph::rose(2).unwrap();
        let en = PathEnumeration::new(&g, EnumKind::default(), 400);
        let reps = representatives(&g, 2, depth);
        let best = reps.iter().map(|p| dx_distance(&g, &en, p, &y).unwrap()).min().unwrap();
        prop_assert!(best <= cylinder_delta(&g, &en, depth));
    }

    #[test]
    fn dx_is_an_ultrametric(x in rose_point(), y in rose_point(), z in rose_point()) {
        let g = Ultragraph::rose(2).unwrap();
        let en = PathEnumeration::new(&g, EnumKind::default(), 400);
        let d = |a: &Ultrapath, b: &Ultrapath| dx_distance(&g, &en, a, b);
        if let (Ok(xy), Ok(yz), Ok(xz)) = (d(&x, &y), d(&y, &z), d(&x, &z)) {
            prop_assert!(xz <= xy.clone().max(yz));
            prop_assert_eq!(d(&y, &x).unwrap(), xy);
        }
    }

    #[test]
    fn first_difference_is_an_ultrametric(x in rose_point(), y in rose_point(), z in rose_point()) {
        let g = Ultragraph::rose(2).unwrap();
        let d = |a: &Ultrapath, b: &Ultrapath| first_difference(&g, a, b).unwrap();
        prop_assert!(d(&x, &z) <= d(&x, &y).max(d(&y, &z)));
        prop_assert_eq!(d(&x, &x), BigRational::zero());
    }
}
