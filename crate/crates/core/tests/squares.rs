use std::sync::Arc;

use catsq_core::fincat::{
    connected_components, library, product_cat, terminal_objects, CatFunctor, FinCat, ObjId,
};
use catsq_core::squares::{
    comma_category, compose_h, compose_v, coslice, fiber, induced_coslice_functor,
    induced_slice_functor, library as sq, link_category, opposite_square, pullback_cat, slice,
    TwoSquare,
};
use catsq_core::Limits;

fn arc(c: FinCat) -> Arc<FinCat> {
    Arc::new(c)
}

fn lim() -> Limits {
    Limits::default()
}

#[test]
fn arrow_category_of_interval() {
    let two = arc(library::interval());
    let id = CatFunctor::identity(two);
    let c = comma_category(&id, &id, &lim()).unwrap();
    assert_eq!(c.comma.num_objects(), 3);
    assert_eq!(c.comma.num_arrows(), 6);
    assert!(c.comma.check_laws().is_empty());
}

#[test]
fn comma_of_endpoints_is_single_arrow() {
    let two = arc(library::interval());
    let zero = CatFunctor::from_point(two.clone(), ObjId(0));
    let one = CatFunctor::from_point(two, ObjId(1));
    let c = comma_category(&zero, &one, &lim()).unwrap();
    assert_eq!(c.comma.object_names(), &["(•,•,t)".to_string()]);
    assert_eq!(c.comma.num_arrows(), 1);
    assert_eq!(connected_components(&c.comma).len(), 1);
}

#[test]
fn comma_over_empty_source_is_empty() {
    let empty = arc(FinCat::empty());
    let two = arc(library::interval());
    let u = CatFunctor::new(empty, two.clone(), vec![], vec![]).unwrap();
    let c = comma_category(&u, &CatFunctor::identity(two), &lim()).unwrap();
    assert!(c.comma.is_empty());
}

#[test]
fn comma_requires_shared_target() {
    let two = arc(library::interval());
    let pq = arc(library::discrete(&["p", "q"]));
    let err = comma_category(
        &CatFunctor::identity(two),
        &CatFunctor::identity(pq),
        &lim(),
    );
    assert!(matches!(err, Err(catsq_core::Error::TargetMismatch(_))));
}

#[test]
fn slice_over_identity_has_terminal_identity() {
    let c = arc(library::chain(3));
    let id = CatFunctor::identity(c.clone());
    for b in c.objects() {
        let s = slice(&id, b, &lim()).unwrap();
        let top = s.object_of(b, ObjId(0), c.id(b)).unwrap();
        assert_eq!(terminal_objects(&s.comma), vec![top]);
    }
}

#[test]
fn fibers() {
    let b = arc(library::parallel("a", "b"));
    let f = fiber(&CatFunctor::identity(b.clone()), ObjId(1), &lim()).unwrap();
    assert_eq!((f.cat.num_objects(), f.cat.num_arrows()), (1, 1));
    let two = arc(library::interval());
    let f = fiber(&CatFunctor::to_point(two.clone()), ObjId(0), &lim()).unwrap();
    assert_eq!(*f.cat, *two);
    let a = arc(library::discrete(&["p", "q"]));
    let p = product_cat(&a, &two, &lim()).unwrap();
    let f = fiber(&p.pr1, ObjId(0), &lim()).unwrap();
    assert_eq!(f.cat.num_objects(), 2);
    assert_eq!(f.cat.num_arrows(), 3);
}

#[test]
fn pullbacks() {
    let two = arc(library::interval());
    let zero = CatFunctor::from_point(two.clone(), ObjId(0));
    let one = CatFunctor::from_point(two.clone(), ObjId(1));
    assert!(pullback_cat(&zero, &one, &lim()).unwrap().cat.is_empty());
    let pb = pullback_cat(&CatFunctor::identity(two.clone()), &one, &lim()).unwrap();
    assert_eq!(pb.cat.num_objects(), 1);
    let pq = arc(library::discrete(&["p", "q"]));
    let pb = pullback_cat(
        &CatFunctor::to_point(pq.clone()),
        &CatFunctor::to_point(two.clone())
            .with_categories(two.clone(), CatFunctor::to_point(pq).dst().clone()),
        &lim(),
    )
    .unwrap();
    assert_eq!(pb.cat.num_objects(), 4);
    assert_eq!(pb.cat.num_arrows(), 6);
}

#[test]
fn induced_functors_of_identity_square_are_identities() {
    let c = arc(library::chain(3));
    let d = TwoSquare::identity(c.clone());
    for x in c.objects() {
        let s = induced_slice_functor(&d, x, &lim()).unwrap();
        assert!(s.functor.ob_map().iter().enumerate().all(|(i, y)| y.0 == i));
        let t = induced_coslice_functor(&d, x, &lim()).unwrap();
        assert!(t.functor.ob_map().iter().enumerate().all(|(i, y)| y.0 == i));
    }
}

#[test]
fn swgr_link_categories() {
    let d = sq::swgr();
    let b = d.b();
    let alpha = b.arrow("α").unwrap();
    let beta = b.arrow("β").unwrap();
    let at_alpha = link_category(&d, ObjId(0), ObjId(0), alpha, &lim()).unwrap();
    assert_eq!(at_alpha.cat.num_objects(), 1);
    let at_beta = link_category(&d, ObjId(0), ObjId(0), beta, &lim()).unwrap();
    assert!(at_beta.cat.is_empty());
    let s = induced_slice_functor(&d, ObjId(0), &lim()).unwrap();
    assert_eq!(
        s.functor.ob(ObjId(0)),
        s.dst.object_of(ObjId(0), ObjId(0), alpha).unwrap()
    );
}

#[test]
fn cocomma_link_is_the_base() {
    let pq = arc(library::discrete(&["p", "q"]));
    let d = sq::cocomma(pq);
    let t = d.b().arrow("t").unwrap();
    let link = link_category(&d, ObjId(0), ObjId(0), t, &lim()).unwrap();
    assert_eq!(link.cat.num_objects(), 2);
    assert_eq!(connected_components(&link.cat).len(), 2);
}

#[test]
fn link_rejects_mistyped_arrow() {
    let d = sq::swgr();
    let id0 = d.b().id(ObjId(0));
    assert!(link_category(&d, ObjId(0), ObjId(0), id0, &lim()).is_err());
}

#[test]
fn coslice_of_comma_square() {
    let two = arc(library::interval());
    let zero = CatFunctor::from_point(two.clone(), ObjId(0));
    let c = comma_category(&zero, &CatFunctor::identity(two.clone()), &lim()).unwrap();
    let d = c.square();
    let ind = induced_coslice_functor(&d, ObjId(0), &lim()).unwrap();
    assert_eq!(ind.src.comma.num_objects(), 2);
    assert_eq!(ind.dst.comma.num_objects(), 2);
    assert!(ind.functor.is_isomorphism());
    let co = coslice(&zero, ObjId(0), &lim()).unwrap();
    assert_eq!(co.comma.num_objects(), 1);
}

#[test]
fn opposite_square_is_involutive() {
    for d in [sq::swgr(), sq::cocomma(arc(library::interval()))] {
        assert_eq!(opposite_square(&opposite_square(&d)), d);
    }
}

#[test]
fn composing_with_units() {
    let d = sq::cocomma(arc(library::interval()));
    let h = compose_h(&d, &TwoSquare::trivial_h(d.u_prime())).unwrap();
    assert_eq!(h, d);
    let v = compose_v(&d, &TwoSquare::trivial_v(d.w())).unwrap();
    assert_eq!(v, d);
    assert!(compose_h(&d, &TwoSquare::trivial_h(d.u())).is_err());
}

#[test]
fn pasting_comma_squares_composes_components() {
    let two = arc(library::interval());
    let id = CatFunctor::identity(two.clone());
    let right = comma_category(&id, &id, &lim()).unwrap();
    let left = comma_category(&right.proj_right, &id, &lim()).unwrap();
    let pasted = compose_h(&right.square(), &left.square()).unwrap();
    for x in pasted.a_prime().objects() {
        let (y, _, g2) = left.triple(x);
        let (_, _, g1) = right.triple(y);
        assert_eq!(pasted.alpha().component(x), two.compose(g2, g1));
    }
}
