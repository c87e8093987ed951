use std::sync::Arc;

use catsq_core::exactness::{
    is_aspheric_functor, is_exact, is_local_equivalence, is_weak_exact, CheckOptions,
};
use catsq_core::fincat::{library, CatFunctor, FinCat, Localizer, ObjId};
use catsq_core::gen::{Budget, Generator};
use catsq_core::presheaf::{
    base_change_coh, base_change_hom, bipartite_counterexample, check_aspheric_via_presheaves,
    check_local_equiv_via_presheaves, classify_presheaf_localizer, cogenerator,
    cohomological_oracle, der_axiom_suite, discrete_product_square, finset_colimit, finset_limit,
    guitart_oracle, hom_set, hom_square, lan, lan_transpose, lan_untranspose, ran, ran_transpose,
    ran_untranspose, representable, restrict, Presheaf, PresheafLocalizer, PresheafMorphism,
    SAMPLE_SIZES,
};
use catsq_core::squares::{library as sq, TwoSquare};
use catsq_core::Limits;

mod common;
use common::{cocone_count, cone_count};

fn arc(c: FinCat) -> Arc<FinCat> {
    Arc::new(c)
}

fn opts() -> CheckOptions {
    CheckOptions::default()
}

fn lim() -> Limits {
    Limits::default()
}

fn small() -> Budget {
    Budget {
        max_objects: 3,
        max_arrows: 8,
    }
}

fn pq() -> Arc<FinCat> {
    arc(library::discrete(&["p", "q"]))
}

fn sized(base: &Arc<FinCat>, sizes: &[usize]) -> Presheaf {
    let sets: Vec<(String, Vec<String>)> = base
        .objects()
        .map(|x| {
            let elems = (0..sizes[x.0])
                .map(|i| format!("{}{i}", base.obj_name(x)))
                .collect();
            (base.obj_name(x).to_string(), elems)
        })
        .collect();
    Presheaf::from_names(base.clone(), &sets, &[]).unwrap()
}

#[test]
fn finite_limits_and_colimits() {
    let p = sized(&pq(), &[2, 3]);
    assert_eq!(finset_limit(&p, &lim()).unwrap().len(), 6);
    assert_eq!(finset_colimit(&p, &lim()).unwrap().len(), 5);
    let empty = Presheaf::constant_n(arc(FinCat::empty()), 0);
    assert_eq!(finset_limit(&empty, &lim()).unwrap().len(), 1);
    assert_eq!(finset_colimit(&empty, &lim()).unwrap().len(), 0);
}

#[test]
fn limit_tokens_are_tuples() {
    let p = sized(&pq(), &[1, 2]);
    let l = finset_limit(&p, &lim()).unwrap();
    assert_eq!(l.tokens, vec!["(p0,q0)", "(p0,q1)"]);
    let c = finset_colimit(&p, &lim()).unwrap();
    assert_eq!(c.tokens, vec!["p0@p", "q0@q", "q1@q"]);
}

#[test]
fn representables_count_homs() {
    let e = arc(FinCat::point());
    assert_eq!(representable(&e, ObjId(0)).sizes(), vec![1]);
    let two = arc(library::interval());
    assert_eq!(representable(&two, ObjId(1)).sizes(), vec![1, 1]);
    let par = arc(library::parallel("a", "b"));
    assert_eq!(representable(&par, ObjId(1)).sizes(), vec![2, 1]);
}

#[test]
fn restriction_examples() {
    let two = arc(library::interval());
    let g = Presheaf::from_names(
        two.clone(),
        &[("0", vec!["x", "y"]), ("1", vec!["z"])],
        &[("t", vec![("x", "z")])],
    )
    .unwrap();
    assert_eq!(restrict(&CatFunctor::identity(two.clone()), &g).unwrap(), g);
    let zero = CatFunctor::from_point(two.clone(), ObjId(0));
    assert_eq!(restrict(&zero, &g).unwrap().sizes(), vec![2]);
    let other = CatFunctor::identity(pq());
    assert!(restrict(&other, &g).is_err());
}

#[test]
fn kan_extension_examples() {
    let u = CatFunctor::to_point(pq());
    let f = sized(&pq(), &[2, 3]);
    assert_eq!(ran(&u, &f, &lim()).unwrap().presheaf.sizes(), vec![6]);
    assert_eq!(lan(&u, &f, &lim()).unwrap().presheaf.sizes(), vec![5]);

    let two = arc(library::interval());
    let one = CatFunctor::from_point(two, ObjId(1));
    let f = Presheaf::constant_n(one.src().clone(), 2);
    assert_eq!(ran(&one, &f, &lim()).unwrap().presheaf.sizes(), vec![1, 2]);

    let id = CatFunctor::identity(arc(library::chain(3)));
    let mut g = Generator::new(5, small());
    let f = g.presheaf(id.src(), 2);
    assert_eq!(ran(&id, &f, &lim()).unwrap().presheaf.sizes(), f.sizes());
    assert_eq!(lan(&id, &f, &lim()).unwrap().presheaf.sizes(), f.sizes());
}

#[test]
fn kan_sizes_match_brute_force() {
    let mut g = Generator::new(11, small());
    for _ in 0..60 {
        let a = arc(g.category());
        let b = arc(g.category());
        let Some(u) = g.functor(&a, &b) else { continue };
        let f = g.presheaf(&a, 2);
        let r = ran(&u, &f, &lim()).unwrap().presheaf;
        let l = lan(&u, &f, &lim()).unwrap().presheaf;
        for x in b.objects() {
            assert_eq!(r.size(x), cone_count(&u, &f, x));
            assert_eq!(l.size(x), cocone_count(&u, &f, x));
        }
    }
}

#[test]
fn generated_presheaves_validate() {
    let mut g = Generator::new(2, small());
    for _ in 0..50 {
        let a = arc(g.category());
        let p = g.presheaf(&a, 3);
        Presheaf::new(
            a,
            p.sets().to_vec(),
            (0..p.base().num_arrows())
                .map(|f| p.action(catsq_core::fincat::ArrowId(f)).to_vec())
                .collect(),
        )
        .unwrap();
    }
}

#[test]
fn adjunction_round_trips() {
    let mut g = Generator::new(17, small());
    let mut checked = 0;
    while checked < 40 {
        let a = arc(g.category());
        let b = arc(g.category());
        let Some(u) = g.functor(&a, &b) else { continue };
        let f = g.presheaf(&a, 2);
        let gb = g.presheaf(&b, 2);
        let ug = restrict(&u, &gb).unwrap();
        let ext_f = ran(&u, &f, &lim()).unwrap();
        let left = hom_set(&ug, &f, 4096).unwrap();
        let right = hom_set(&gb, &ext_f.presheaf, 4096).unwrap();
        assert_eq!(left.len(), right.len());
        for psi in &left {
            let phi = ran_transpose(psi, &gb, &u, &lim()).unwrap();
            assert!(right.contains(&phi));
            assert_eq!(&ran_untranspose(&phi, &ext_f).unwrap(), psi);
        }
        let lan_f = lan(&u, &f, &lim()).unwrap();
        let left = hom_set(&lan_f.presheaf, &gb, 4096).unwrap();
        let right = hom_set(&f, &ug, 4096).unwrap();
        assert_eq!(left.len(), right.len());
        for psi in &left {
            let phi = lan_transpose(psi, &lan_f).unwrap();
            assert!(right.contains(&phi));
            assert_eq!(&lan_untranspose(&phi, &gb, &u, &lim()).unwrap(), psi);
        }
        checked += 1;
    }
}

#[test]
fn base_change_of_identity_square_is_identity() {
    let a = arc(library::chain(3));
    let d = TwoSquare::identity(a.clone());
    let mut g = Generator::new(1, small());
    let f = g.presheaf(&a, 2);
    let c = base_change_coh(&d, &f, &lim()).unwrap();
    assert_eq!(c, PresheafMorphism::identity(c.src()));
    let c = base_change_hom(&d, &f, &lim()).unwrap();
    assert_eq!(c, PresheafMorphism::identity(c.src()));
}

#[test]
fn comma_squares_have_invertible_base_change() {
    let mut g = Generator::new(3, small());
    for _ in 0..40 {
        let d = g.comma_square();
        let f = g.presheaf(d.a(), 2);
        assert!(base_change_coh(&d, &f, &lim()).unwrap().is_iso());
        let h = g.presheaf(d.b_prime(), 2);
        assert!(base_change_hom(&d, &h, &lim()).unwrap().is_iso());
    }
}

#[test]
fn cocomma_base_change_detects_two_components() {
    let d = sq::cocomma(pq());
    let h = representable(d.b_prime(), ObjId(0));
    let c = base_change_hom(&d, &h, &lim()).unwrap();
    assert_eq!(c.src().sizes(), vec![2]);
    assert_eq!(c.dst().sizes(), vec![1]);
    assert!(!c.is_iso());
    let r = guitart_oracle(&d, &opts()).unwrap();
    assert!(!r.holds());
    assert_eq!(r.witnesses[0].location, "(•,•,t)");
    assert_eq!(r.witnesses[0].reason, "base change fiber has 2 classes");
}

#[test]
fn guitart_oracle_examples() {
    assert!(!guitart_oracle(&sq::swgr(), &opts()).unwrap().holds());
    let r = guitart_oracle(&sq::swgr(), &opts()).unwrap();
    assert_eq!(r.witnesses[0].location, "(•,•,β)");
    assert!(
        guitart_oracle(&sq::cocomma(arc(library::interval())), &opts())
            .unwrap()
            .holds()
    );
    let mut g = Generator::new(4, small());
    for _ in 0..20 {
        assert!(guitart_oracle(&g.comma_square(), &opts()).unwrap().holds());
    }
}

#[test]
fn guitart_oracle_agrees_with_links() {
    let mut g = Generator::new(21, small());
    for _ in 0..120 {
        let d = g.square();
        let oracle = guitart_oracle(&d, &opts()).unwrap();
        let links = is_exact(&d, Localizer::W0, &opts()).unwrap();
        assert_eq!(oracle.holds(), links.holds());
        let all = CheckOptions {
            all_witnesses: true,
            ..opts()
        };
        let o: Vec<_> = guitart_oracle(&d, &all)
            .unwrap()
            .witnesses
            .into_iter()
            .map(|w| w.key)
            .collect();
        let l: Vec<_> = is_exact(&d, Localizer::W0, &all)
            .unwrap()
            .witnesses
            .into_iter()
            .map(|w| w.key)
            .collect();
        assert_eq!(o, l);
    }
}

#[test]
fn exact_squares_have_invertible_cohomological_base_change() {
    let mut g = Generator::new(8, small());
    for _ in 0..80 {
        let d = g.square();
        let exact = is_exact(&d, Localizer::W0, &opts()).unwrap().holds();
        let samples: Vec<Presheaf> = (0..3).map(|_| g.presheaf(d.a(), 2)).collect();
        let sampled_iso = samples
            .iter()
            .all(|f| base_change_coh(&d, f, &lim()).unwrap().is_iso());
        if exact {
            assert!(sampled_iso);
        }
        let cogenerators = cohomological_oracle(&d, &opts()).unwrap().holds();
        let weak = is_weak_exact(&d, Localizer::W0, &opts()).unwrap().holds();
        assert_eq!(sampled_iso && cogenerators, weak);
        assert_eq!(cogenerators, exact);
    }
}

#[test]
fn cogenerators_are_powers_of_two() {
    let two = arc(library::interval());
    assert_eq!(
        cogenerator(&two, ObjId(0), &lim()).unwrap().sizes(),
        vec![2, 2]
    );
    assert_eq!(
        cogenerator(&two, ObjId(1), &lim()).unwrap().sizes(),
        vec![1, 2]
    );
    let par = arc(library::parallel("a", "b"));
    assert_eq!(
        cogenerator(&par, ObjId(0), &lim()).unwrap().sizes(),
        vec![2, 4]
    );
}

#[test]
fn classification_fixtures() {
    assert_eq!(
        classify_presheaf_localizer(&library::parallel("a", "b")),
        PresheafLocalizer::W0
    );
    assert_eq!(
        classify_presheaf_localizer(&library::interval()),
        PresheafLocalizer::Wgr
    );
    assert_eq!(
        classify_presheaf_localizer(&FinCat::point()),
        PresheafLocalizer::Wtr
    );
    assert_eq!(
        classify_presheaf_localizer(&FinCat::empty()),
        PresheafLocalizer::Wtr
    );
    assert_eq!(
        classify_presheaf_localizer(&library::iso_groupoid()),
        PresheafLocalizer::Wtr
    );
    assert_eq!(
        classify_presheaf_localizer(&library::z2()),
        PresheafLocalizer::W0
    );
}

#[test]
fn aspheric_via_presheaves_examples() {
    let id = CatFunctor::identity(arc(library::chain(2)));
    assert!(check_aspheric_via_presheaves(&id, &SAMPLE_SIZES, &opts())
        .unwrap()
        .holds());
    let u = CatFunctor::to_point(pq());
    let r = check_aspheric_via_presheaves(&u, &[2], &opts()).unwrap();
    assert!(!r.holds());
    assert_eq!(r.witnesses[0].reason, "unit at |X|=2 maps 2 elements to 4");
}

#[test]
fn local_equivalence_via_presheaves_examples() {
    let b = arc(library::chain(3));
    let id = CatFunctor::identity(b.clone());
    assert!(
        check_local_equiv_via_presheaves(&id, &id, &id, &SAMPLE_SIZES, &opts())
            .unwrap()
            .holds()
    );
    let u = CatFunctor::to_point(pq());
    let e = CatFunctor::identity(u.dst().clone());
    assert!(
        !check_local_equiv_via_presheaves(&u, &u, &e, &SAMPLE_SIZES, &opts())
            .unwrap()
            .holds()
    );
    let wrong = CatFunctor::identity(pq());
    assert!(check_local_equiv_via_presheaves(&u, &wrong, &e, &SAMPLE_SIZES, &opts()).is_err());
}

#[test]
fn presheaf_criteria_agree_with_slices() {
    let mut g = Generator::new(30, small());
    let mut seen = 0;
    while seen < 60 {
        let a = arc(g.category());
        let b = arc(g.category());
        let c = arc(g.category());
        let (Some(u), Some(w)) = (g.functor(&a, &b), g.functor(&b, &c)) else {
            continue;
        };
        let v = CatFunctor::compose(&w, &u).unwrap();
        assert_eq!(
            check_aspheric_via_presheaves(&u, &SAMPLE_SIZES, &opts())
                .unwrap()
                .holds(),
            is_aspheric_functor(&u, Localizer::W0, &opts())
                .unwrap()
                .holds()
        );
        assert_eq!(
            check_local_equiv_via_presheaves(&u, &v, &w, &SAMPLE_SIZES, &opts())
                .unwrap()
                .holds(),
            is_local_equivalence(&u, &v, &w, Localizer::W0, false, &opts())
                .unwrap()
                .holds()
        );
        seen += 1;
    }
}

#[test]
fn der_suite_on_fixtures() {
    let u = CatFunctor::to_point(pq());
    let samples = vec![sized(&pq(), &[2, 3]), sized(&pq(), &[0, 1])];
    let r = der_axiom_suite(&u, &samples, &lim()).unwrap();
    assert!(r.all_passed(), "{r:?}");
    assert_eq!(r.checks.len(), 4);

    let e = arc(FinCat::point());
    let u = CatFunctor::identity(e.clone());
    let r = der_axiom_suite(&u, &[Presheaf::constant_n(e, 2)], &lim()).unwrap();
    assert!(r.all_passed());

    let mut g = Generator::new(9, small());
    for _ in 0..20 {
        let a = arc(g.category());
        let b = arc(g.category());
        let Some(u) = g.functor(&a, &b) else { continue };
        let samples: Vec<_> = (0..2).map(|_| g.presheaf(&a, 2)).collect();
        let r = der_axiom_suite(&u, &samples, &lim()).unwrap();
        assert!(r.all_passed(), "{r:?}");
    }
}

#[test]
fn bipartite_counterexample_has_empty_link() {
    let h = bipartite_counterexample(&lim()).unwrap();
    assert_eq!(h.bottom_right.cat.num_objects(), 256);
    assert_eq!(h.bottom_right.cat.num_arrows(), 4096);
    let r = is_exact(&h.square, Localizer::W0, &opts()).unwrap();
    assert!(!r.holds());
    assert!(
        r.witnesses
            .iter()
            .any(|w| w.reason == "link category empty"),
        "{r:?}"
    );
}

#[test]
fn hom_square_over_complete_preorders_tracks_weak_exactness() {
    for c in [library::interval(), library::chain(3)] {
        let c = arc(c);
        assert_eq!(classify_presheaf_localizer(&c), PresheafLocalizer::Wgr);
        let mut g = Generator::new(
            1,
            Budget {
                max_objects: 2,
                max_arrows: 3,
            },
        );
        let mut squares = vec![
            sq::swgr(),
            sq::cocomma(pq()),
            sq::cocomma(arc(library::interval())),
        ];
        squares.extend((0..30).map(|_| g.square()));
        for d in squares {
            let h = hom_square(&d, &c, &lim()).unwrap();
            assert_eq!(
                is_exact(&h.square, Localizer::W0, &opts()).unwrap().holds(),
                is_weak_exact(&d, Localizer::Wgr, &opts()).unwrap().holds()
            );
        }
    }
}

#[test]
fn hom_square_over_point_is_always_exact() {
    let e = arc(FinCat::point());
    let mut g = Generator::new(
        2,
        Budget {
            max_objects: 2,
            max_arrows: 3,
        },
    );
    for _ in 0..20 {
        let h = hom_square(&g.square(), &e, &lim()).unwrap();
        assert!(is_exact(&h.square, Localizer::W0, &opts()).unwrap().holds());
    }
}

#[test]
fn hom_square_over_parallel_pair_breaks_both_ways() {
    // The parallel pair is neither complete nor cocomplete, so Guitart
    // exactness of D and of Hom(D^op, C) are unrelated.
    let c = arc(library::parallel("a", "b"));
    assert_eq!(classify_presheaf_localizer(&c), PresheafLocalizer::W0);
    let mut g = Generator::new(
        1,
        Budget {
            max_objects: 2,
            max_arrows: 3,
        },
    );
    let (mut gained, mut lost) = (false, false);
    for _ in 0..60 {
        let d = g.square();
        let before = is_exact(&d, Localizer::W0, &opts()).unwrap().holds();
        let h = hom_square(&d, &c, &lim()).unwrap();
        let after = is_exact(&h.square, Localizer::W0, &opts()).unwrap().holds();
        gained |= !before && after;
        lost |= before && !after;
    }
    assert!(gained && lost);
}

#[test]
fn discrete_product_square_is_a_comma_square() {
    let d = discrete_product_square();
    assert_eq!(d.a_prime().num_objects(), 4);
    assert!(is_exact(&d, Localizer::W0, &opts()).unwrap().holds());
    assert!(guitart_oracle(&d, &opts()).unwrap().holds());
}
