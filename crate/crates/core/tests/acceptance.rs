//! End-to-end acceptance suite. Runs without the test harness and prints one
//! PASS/FAIL line per criterion.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use catsq_core::dsl::parse_workspace;
use catsq_core::exactness::{
    has_final_object_criterion, is_aspheric_functor, is_bc_left, is_exact,
    is_exact_via_coaspherique, is_local_equivalence, is_weak_exact, link_is_aspheric,
    CheckOptions,
};
use catsq_core::fincat::{find_right_adjoint, CatFunctor, FinCat, Localizer, ObjId, TieBreak};
use catsq_core::gen::{Budget, Generator};
use catsq_core::presheaf::{
    bipartite_counterexample, check_aspheric_via_presheaves, check_local_equiv_via_presheaves,
    classify_presheaf_localizer, der_axiom_suite, guitart_oracle, hom_set, lan, lan_transpose,
    lan_untranspose, ran, ran_transpose, ran_untranspose, restrict, PresheafLocalizer,
    SAMPLE_SIZES,
};
use catsq_core::squares::{
    comma_category, compose_h, compose_v, link_objects, opposite_square, slice, TwoSquare,
};
use catsq_core::Limits;

mod common;
use common::{cocone_count, cone_count};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn opts() -> CheckOptions {
    CheckOptions::default()
}

fn lim() -> Limits {
    Limits::default()
}

fn exact(d: &TwoSquare, l: Localizer) -> bool {
    is_exact(d, l, &opts()).unwrap().holds()
}

fn fixture(name: &str) -> String {
    let path = format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(path).unwrap()
}

fn small() -> Budget {
    Budget {
        max_objects: 3,
        max_arrows: 8,
    }
}

fn comma_squares() -> Outcome {
    let mut g = Generator::new(1, Budget::default());
    for i in 0..200 {
        let d = g.comma_square();
        for l in Localizer::ALL {
            ensure(exact(&d, l), || format!("comma square #{i} not {l}-exact"))?;
        }
    }
    Ok("200 comma squares exact for w0 and wgr".into())
}

fn cocomma_asymmetry() -> Outcome {
    let ws = parse_workspace(&fixture("cocomma.catsq")).map_err(|e| e.to_string())?;
    ensure(exact(&ws.squares["CTwo"].square, Localizer::W0), || {
        "cocomma over 2 not exact".into()
    })?;
    let r = is_exact(&ws.squares["CPQ"].square, Localizer::W0, &opts()).unwrap();
    ensure(!r.holds(), || "cocomma over {p,q} exact".into())?;
    let w = &r.witnesses[0];
    ensure(w.reason.starts_with("link category has 2 components"), || {
        format!("unexpected witness {}: {}", w.location, w.reason)
    })?;
    Ok(format!("over {{p,q}}: {}: {}", w.location, w.reason))
}

fn wgr_separation() -> Outcome {
    let ws = parse_workspace(&fixture("wgr.catsq")).map_err(|e| e.to_string())?;
    let d = &ws.squares["Swgr"].square;
    ensure(is_weak_exact(d, Localizer::Wgr, &opts()).unwrap().holds(), || {
        "S_wgr not weakly exact".into()
    })?;
    let r = is_exact(d, Localizer::Wgr, &opts()).unwrap();
    ensure(!r.holds(), || "S_wgr exact".into())?;
    let line = format!("{}: {}", r.witnesses[0].location, r.witnesses[0].reason);
    ensure(line == "(•,•,β): link category empty", || line.clone())?;
    Ok(line)
}

fn engine_agreement() -> Outcome {
    let mut g = Generator::new(4, small());
    let (mut yes, mut no) = (0, 0);
    for i in 0..300 {
        let d = g.square();
        let a = exact(&d, Localizer::W0);
        let b = is_exact_via_coaspherique(&d, Localizer::W0, &opts())
            .unwrap()
            .holds();
        let c = is_weak_exact(&d, Localizer::W0, &opts()).unwrap().holds();
        let o = guitart_oracle(&d, &opts()).unwrap().holds();
        ensure(a == b && b == c && c == o, || {
            format!("square #{i}: exact {a}, via coaspheric {b}, weak {c}, oracle {o}")
        })?;
        if a {
            yes += 1;
        } else {
            no += 1;
        }
    }
    Ok(format!("300 squares ({yes} exact, {no} not), four engines agree"))
}

fn beck_chevalley() -> Outcome {
    let mut g = Generator::new(9, small());
    let mut fails = 0;
    for i in 0..50 {
        let d = g.square_with_right_adjoints();
        ensure(
            find_right_adjoint(d.u()).is_some() && find_right_adjoint(d.u_prime()).is_some(),
            || format!("square #{i} lacks right adjoints"),
        )?;
        let bc = is_bc_left(&d, &opts()).unwrap();
        let rev = is_bc_left(
            &d,
            &CheckOptions {
                tie_break: TieBreak::Greatest,
                ..opts()
            },
        )
        .unwrap();
        let ex = exact(&d, Localizer::W0);
        let fin = has_final_object_criterion(&d, &opts()).unwrap().holds();
        ensure(bc.holds() == ex && ex == fin, || {
            format!("square #{i}: bc {}, exact {ex}, final {fin}", bc.holds())
        })?;
        ensure(bc.verdict == rev.verdict, || {
            format!("square #{i}: verdict depends on the adjoint tie-break")
        })?;
        fails += usize::from(!ex);
    }
    Ok(format!("50 squares ({fails} not exact), tie-break invariant"))
}

fn stability() -> Outcome {
    let mut g = Generator::new(13, small());
    let (mut op, mut h, mut v, mut mono, mut desc) = (0, 0, 0, 0, 0);
    let mut tries = 0;
    while (op < 100 || h < 100 || v < 100 || mono < 100 || desc < 100) && tries < 2000 {
        tries += 1;
        let d = g.square();
        let o = opposite_square(&d);
        ensure(opposite_square(&o) == d, || "opposite is not an involution".into())?;
        for l in Localizer::ALL {
            ensure(exact(&d, l) == exact(&o, l), || format!("opposite changes {l}"))?;
        }
        op += 1;
        if exact(&d, Localizer::W0) {
            ensure(exact(&d, Localizer::Wgr), || "w0-exact but not wgr-exact".into())?;
            mono += 1;
        }
        if let Some(left) = g.square_with_right_vertical(d.u_prime()) {
            let p = compose_h(&d, &left).unwrap();
            for l in Localizer::ALL {
                if exact(&d, l) && exact(&left, l) {
                    ensure(exact(&p, l), || "horizontal composite not exact".into())?;
                    h += 1;
                }
            }
        }
        if let Some(below) = g.square_with_top(d.w()) {
            let p = compose_v(&d, &below).unwrap();
            for l in Localizer::ALL {
                if exact(&d, l) && exact(&below, l) {
                    ensure(exact(&p, l), || "vertical composite not exact".into())?;
                    v += 1;
                }
            }
        }
        // Cover B' by the slices B'/b', each glued to u' by a comma square.
        let bp = d.b_prime();
        let family: Vec<TwoSquare> = bp
            .objects()
            .map(|b| {
                let s = slice(&CatFunctor::identity(bp.clone()), b, &lim()).unwrap();
                let wj = s.square().v().clone();
                comma_category(d.u_prime(), &wj, &lim()).unwrap().square()
            })
            .collect();
        for l in Localizer::ALL {
            let all = family
                .iter()
                .all(|dj| exact(dj, l) && exact(&compose_h(&d, dj).unwrap(), l));
            ensure(all == exact(&d, l), || format!("slice descent fails for {l}"))?;
        }
        desc += 1;
    }
    ensure(op >= 100 && h >= 100 && v >= 100 && mono >= 100 && desc >= 100, || {
        format!("too few instances: op {op}, h {h}, v {v}, w0=>wgr {mono}, descent {desc}")
    })?;
    Ok(format!(
        "op {op}, horizontal {h}, vertical {v}, w0=>wgr {mono}, descent {desc}"
    ))
}

fn kan_engine() -> Outcome {
    let mut g = Generator::new(17, small());
    let mut triples = 0;
    let mut sized = 0;
    while triples < 100 {
        let a = Arc::new(g.category());
        let b = Arc::new(g.category());
        let Some(u) = g.functor(&a, &b) else { continue };
        let f = g.presheaf(&a, 2);
        let gb = g.presheaf(&b, 2);
        let ug = restrict(&u, &gb).unwrap();
        let ext_f = ran(&u, &f, &lim()).unwrap();
        let lan_f = lan(&u, &f, &lim()).unwrap();
        for psi in hom_set(&ug, &f, 4096).unwrap() {
            let phi = ran_transpose(&psi, &gb, &u, &lim()).unwrap();
            ensure(ran_untranspose(&phi, &ext_f).unwrap() == psi, || {
                "ran round trip".into()
            })?;
        }
        for psi in hom_set(&lan_f.presheaf, &gb, 4096).unwrap() {
            let phi = lan_transpose(&psi, &lan_f).unwrap();
            ensure(lan_untranspose(&phi, &gb, &u, &lim()).unwrap() == psi, || {
                "lan round trip".into()
            })?;
        }
        for x in b.objects() {
            let space: usize = a
                .objects()
                .map(|y| f.size(y).max(1).pow(b.hom(u.ob(y), x).len() as u32))
                .product();
            if space <= 1_000_000 {
                ensure(ext_f.presheaf.size(x) == cone_count(&u, &f, x), || {
                    "ran size differs from the cone count".into()
                })?;
                ensure(lan_f.presheaf.size(x) == cocone_count(&u, &f, x), || {
                    "lan size differs from the cocone count".into()
                })?;
                sized += 1;
            }
        }
        triples += 1;
    }
    let ws = parse_workspace(&fixture("kan.catsq")).map_err(|e| e.to_string())?;
    let u = &ws.functors["u"].functor;
    let f = &ws.presheaves["F"].presheaf;
    let r = der_axiom_suite(u, std::slice::from_ref(f), &lim()).unwrap();
    ensure(r.all_passed(), || format!("{r:?}"))?;
    let pq = Arc::new(FinCat::discrete(&["p", "q"]));
    let to_point = CatFunctor::to_point(pq.clone());
    let r = der_axiom_suite(&to_point, &[g.presheaf(&pq, 3)], &lim()).unwrap();
    ensure(r.all_passed(), || format!("{r:?}"))?;
    Ok(format!(
        "100 round trips, {sized} sizes matched by brute force, Der suite passes"
    ))
}

fn final_remark() -> Outcome {
    let h = bipartite_counterexample(&lim()).unwrap();
    let r = is_exact(&h.square, Localizer::W0, &opts()).unwrap();
    ensure(!r.holds(), || "Hom square reported exact".into())?;
    let w = &r.witnesses[0];
    ensure(w.reason == "link category empty", || w.reason.clone())?;
    let (a, bp, gk) = (w.key[0], w.key[1], w.key[2]);
    let objs = link_objects(
        &h.square,
        ObjId(a),
        ObjId(bp),
        catsq_core::fincat::ArrowId(gk),
    )
    .unwrap();
    ensure(objs.is_empty(), || "witness link is not empty".into())?;
    ensure(!link_is_aspheric(&h.square, &w.key, Localizer::W0).unwrap(), || {
        "witness link is aspheric".into()
    })?;
    Ok(format!(
        "{} objects in the corner; witness (F,G,phi) = {}",
        h.bottom_right.cat.num_objects(),
        w.location
    ))
}

fn classification() -> Outcome {
    let ws = parse_workspace(&fixture("classify.catsq")).map_err(|e| e.to_string())?;
    let expect = [
        ("parallel", PresheafLocalizer::W0),
        ("two", PresheafLocalizer::Wgr),
        ("e", PresheafLocalizer::Wtr),
        ("empty", PresheafLocalizer::Wtr),
    ];
    let mut got = Vec::new();
    for (name, want) in expect {
        let c = classify_presheaf_localizer(&ws.categories[name]);
        ensure(c == want, || format!("{name}: {c}, expected {want}"))?;
        got.push(format!("{name}={c}"));
    }
    Ok(got.join(", "))
}

fn presheaf_criteria() -> Outcome {
    let mut g = Generator::new(30, small());
    let mut seen = 0;
    while seen < 100 {
        let a = Arc::new(g.category());
        let b = Arc::new(g.category());
        let c = Arc::new(g.category());
        let (Some(u), Some(w)) = (g.functor(&a, &b), g.functor(&b, &c)) else {
            continue;
        };
        let v = CatFunctor::compose(&w, &u).unwrap();
        let p = check_aspheric_via_presheaves(&u, &SAMPLE_SIZES, &opts())
            .unwrap()
            .holds();
        let q = is_aspheric_functor(&u, Localizer::W0, &opts())
            .unwrap()
            .holds();
        ensure(p == q, || format!("triangle #{seen}: asphericity {p} vs {q}"))?;
        let p = check_local_equiv_via_presheaves(&u, &v, &w, &SAMPLE_SIZES, &opts())
            .unwrap()
            .holds();
        let q = is_local_equivalence(&u, &v, &w, Localizer::W0, false, &opts())
            .unwrap()
            .holds();
        ensure(p == q, || format!("triangle #{seen}: local equivalence {p} vs {q}"))?;
        seen += 1;
    }
    Ok("100 triangles agree, sample sizes 0..=3".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome, u64); 10] = [
        ("comma squares are exact", comma_squares, 10),
        ("cocomma asymmetry", cocomma_asymmetry, 1),
        ("wgr separation", wgr_separation, 1),
        ("engine cross-validation", engine_agreement, 60),
        ("Beck-Chevalley equivalences", beck_chevalley, 60),
        ("stability laws", stability, 120),
        ("Kan engine", kan_engine, 120),
        ("Hom-square counterexample", final_remark, 30),
        ("localizer classification", classification, 1),
        ("presheaf criteria", presheaf_criteria, 60),
    ];
    let mut failed = 0;
    for (i, (name, run, budget)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(run))
            .unwrap_or_else(|_| Err("panicked".into()));
        let took = start.elapsed();
        let result = result.and_then(|detail| {
            if took <= Duration::from_secs(budget) {
                Ok(detail)
            } else {
                Err(format!("took {took:.2?}, budget {budget}s"))
            }
        });
        match result {
            Ok(detail) => println!("criterion {:>2} PASS {name} ({took:.2?}): {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name} ({took:.2?}): {why}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
