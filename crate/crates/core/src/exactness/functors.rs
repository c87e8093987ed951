use std::sync::Arc;

use super::report::{describe_components, CheckOptions, CheckReport, Witness};
use crate::error::{Error, Result};
use crate::fincat::{
    connected_components, find_left_adjoint, find_right_adjoint, pi0_map, same_cat, CatFunctor,
    FinCat, Localizer,
};
use crate::squares::{fiber, slice, CommaData};

/// Why `c` is not `W`-aspheric, if it is not.
pub(crate) fn aspheric_failure(c: &FinCat, l: Localizer, what: &str) -> Option<String> {
    match l {
        Localizer::Wgr => c.is_empty().then(|| format!("{what} empty")),
        Localizer::W0 => {
            let classes: Vec<Vec<usize>> = connected_components(c)
                .into_iter()
                .map(|k| k.into_iter().map(|x| x.0).collect())
                .collect();
            (classes.len() != 1).then(|| {
                describe_components(what, &classes, |i| {
                    c.obj_name(crate::fincat::ObjId(i)).into()
                })
            })
        }
    }
}

/// Why `u` is not a `W`-equivalence, if it is not.
pub(crate) fn w_equivalence_failure(u: &CatFunctor, l: Localizer) -> Option<String> {
    match l {
        Localizer::Wgr => {
            let (s, t) = (u.src().is_empty(), u.dst().is_empty());
            (s != t).then(|| {
                format!(
                    "source {}, target {}",
                    if s { "empty" } else { "nonempty" },
                    if t { "empty" } else { "nonempty" }
                )
            })
        }
        Localizer::W0 => {
            let (ns, nt, map) = pi0_map(u);
            let mut hit = vec![false; nt];
            let injective = map.iter().all(|&c| !std::mem::replace(&mut hit[c], true));
            (ns != nt || !injective)
                .then(|| format!("pi0 map is not bijective: {ns} components -> {nt} components"))
        }
    }
}

/// `u` is aspheric when every slice `A/b` is aspheric.
pub fn is_aspheric_functor(
    u: &CatFunctor,
    l: Localizer,
    opts: &CheckOptions,
) -> Result<CheckReport> {
    let cb = u.dst();
    let mut witnesses = Vec::new();
    for b in cb.objects() {
        let s = slice(u, b, &opts.limits)?;
        if let Some(reason) = aspheric_failure(&s.comma, l, "slice") {
            witnesses.push(Witness {
                key: vec![b.0],
                location: cb.obj_name(b).to_string(),
                reason,
            });
            if !opts.all_witnesses {
                break;
            }
        }
    }
    Ok(CheckReport::from_witnesses(witnesses))
}

/// `u` is coaspheric when `op u` is aspheric, i.e. every coslice `b\A` is.
pub fn is_coaspheric_functor(
    u: &CatFunctor,
    l: Localizer,
    opts: &CheckOptions,
) -> Result<CheckReport> {
    let mut r = is_aspheric_functor(&u.op(), l, opts)?;
    for w in &mut r.witnesses {
        w.reason = w.reason.replacen("slice", "coslice", 1);
    }
    Ok(r)
}

/// A commuting triangle `v = w.u` over `C`.
pub(crate) fn check_triangle(u: &CatFunctor, v: &CatFunctor, w: &CatFunctor) -> Result<()> {
    let fits =
        same_cat(u.src(), v.src()) && same_cat(u.dst(), w.src()) && same_cat(v.dst(), w.dst());
    if !fits {
        return Err(Error::TriangleMismatch(
            "functors do not form a triangle".into(),
        ));
    }
    let wu = CatFunctor::compose(w, u)?;
    if wu.ob_map() != v.ob_map() || wu.ar_map() != v.ar_map() {
        return Err(Error::TriangleMismatch("w.u differs from v".into()));
    }
    Ok(())
}

/// The functor `A/c -> B/c`, `(a, g) |-> (u(a), g)`, induced by a triangle.
pub fn induced_over(
    u: &CatFunctor,
    v: &CatFunctor,
    w: &CatFunctor,
    c: crate::fincat::ObjId,
    limits: &crate::limits::Limits,
) -> Result<(CommaData, CommaData, CatFunctor)> {
    check_triangle(u, v, w)?;
    let src = slice(v, c, limits)?;
    let dst = slice(w, c, limits)?;
    let pt = crate::fincat::ObjId(0);
    let ob_map: Vec<_> = src
        .triples()
        .iter()
        .map(|&(a, _, g)| dst.object_of(u.ob(a), pt, g).expect("image in B/c"))
        .collect();
    let idp = dst.w.src().id(pt);
    let ar_map = src
        .comma
        .arrows()
        .map(|k| {
            let (f, _) = src.pair(k);
            let (x, y) = (src.comma.dom(k), src.comma.cod(k));
            dst.arrow_of(ob_map[x.0], ob_map[y.0], u.ar(f), idp)
                .expect("image arrow in B/c")
        })
        .collect();
    let f = CatFunctor::new_unchecked(src.comma.clone(), dst.comma.clone(), ob_map, ar_map);
    Ok((src, dst, f))
}

/// Whether every induced `A/c -> B/c` (or `c\A -> c\B` when `colocal`) is a
/// `W`-equivalence, for the triangle `v = w.u` over `C`.
pub fn is_local_equivalence(
    u: &CatFunctor,
    v: &CatFunctor,
    w: &CatFunctor,
    l: Localizer,
    colocal: bool,
    opts: &CheckOptions,
) -> Result<CheckReport> {
    check_triangle(u, v, w)?;
    if colocal {
        let a = Arc::new(u.src().opposite());
        let b = Arc::new(u.dst().opposite());
        let c = Arc::new(v.dst().opposite());
        let (uo, vo, wo) = (
            u.op_with(a.clone(), b.clone()),
            v.op_with(a, c.clone()),
            w.op_with(b, c),
        );
        return is_local_equivalence(&uo, &vo, &wo, l, false, opts);
    }
    let cc = v.dst();
    let mut witnesses = Vec::new();
    for c in cc.objects() {
        let (_, _, f) = induced_over(u, v, w, c, &opts.limits)?;
        if let Some(reason) = w_equivalence_failure(&f, l) {
            witnesses.push(Witness {
                key: vec![c.0],
                location: cc.obj_name(c).to_string(),
                reason: format!("induced functor over {}: {reason}", cc.obj_name(c)),
            });
            if !opts.all_witnesses {
                break;
            }
        }
    }
    Ok(CheckReport::from_witnesses(witnesses))
}

/// Proper: every canonical `A_b -> A/b` is coaspheric.
pub fn is_proper(u: &CatFunctor, l: Localizer, opts: &CheckOptions) -> Result<CheckReport> {
    fiberwise(u, opts, |fib| {
        let r = is_coaspheric_functor(&fib.to_slice, l, opts)?;
        Ok(r.witnesses.first().map(|w| {
            format!(
                "fiber -> slice not coaspheric at {}: {}",
                w.location, w.reason
            )
        }))
    })
}

/// Smooth: every canonical `A_b -> b\A` is aspheric.
pub fn is_smooth(u: &CatFunctor, l: Localizer, opts: &CheckOptions) -> Result<CheckReport> {
    fiberwise(u, opts, |fib| {
        let r = is_aspheric_functor(&fib.to_coslice, l, opts)?;
        Ok(r.witnesses.first().map(|w| {
            format!(
                "fiber -> coslice not aspheric at {}: {}",
                w.location, w.reason
            )
        }))
    })
}

/// Every canonical `A_b -> A/b` has a left adjoint.
pub fn is_precofibration(u: &CatFunctor, opts: &CheckOptions) -> Result<CheckReport> {
    fiberwise(u, opts, |fib| {
        Ok(find_left_adjoint(&fib.to_slice)
            .is_none()
            .then(|| "fiber -> slice has no left adjoint".to_string()))
    })
}

/// Every canonical `A_b -> b\A` has a right adjoint.
pub fn is_prefibration(u: &CatFunctor, opts: &CheckOptions) -> Result<CheckReport> {
    fiberwise(u, opts, |fib| {
        Ok(find_right_adjoint(&fib.to_coslice)
            .is_none()
            .then(|| "fiber -> coslice has no right adjoint".to_string()))
    })
}

fn fiberwise(
    u: &CatFunctor,
    opts: &CheckOptions,
    mut fails: impl FnMut(&crate::squares::Fiber) -> Result<Option<String>>,
) -> Result<CheckReport> {
    let cb = u.dst();
    let mut witnesses = Vec::new();
    for b in cb.objects() {
        let fib = fiber(u, b, &opts.limits)?;
        if let Some(reason) = fails(&fib)? {
            witnesses.push(Witness {
                key: vec![b.0],
                location: cb.obj_name(b).to_string(),
                reason,
            });
            if !opts.all_witnesses {
                break;
            }
        }
    }
    Ok(CheckReport::from_witnesses(witnesses))
}
