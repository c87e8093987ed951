use rayon::prelude::*;

use super::functors::{aspheric_failure, is_coaspheric_functor, is_local_equivalence};
use super::report::{describe_components, CheckOptions, CheckReport, Witness};
use crate::error::Result;
use crate::fincat::{terminal_objects, ArrowId, CatFunctor, Localizer, ObjId};
use crate::squares::{
    induced_coslice_functor, induced_slice_functor, link_category, link_components, TwoSquare,
};

/// Runs `check` on every triple `(a, b', g : u(a) -> w(b'))`, grouped by `b'`.
/// Within a group the scan stops at the first failure unless all witnesses
/// are requested.
fn over_triples(
    d: &TwoSquare,
    opts: &CheckOptions,
    check: impl Fn(ObjId, ObjId, ArrowId) -> Result<Option<String>> + Sync,
) -> Result<CheckReport> {
    let group = |bp: ObjId| -> Result<Vec<Witness>> {
        let mut out = Vec::new();
        for a in d.a().objects() {
            for &g in d.b().hom(d.u().ob(a), d.w().ob(bp)) {
                if let Some(reason) = check(a, bp, g)? {
                    out.push(Witness {
                        key: vec![a.0, bp.0, g.0],
                        location: d.triple_label(a, bp, g),
                        reason,
                    });
                    if !opts.all_witnesses {
                        return Ok(out);
                    }
                }
            }
        }
        Ok(out)
    };
    let groups: Vec<Vec<Witness>> = if opts.parallel {
        d.b_prime()
            .objects()
            .collect::<Vec<_>>()
            .into_par_iter()
            .map(group)
            .collect::<Result<_>>()?
    } else {
        d.b_prime().objects().map(group).collect::<Result<_>>()?
    };
    Ok(CheckReport::from_witnesses(
        groups.into_iter().flatten().collect(),
    ))
}

/// Exactness: every link category is `W`-aspheric.
pub fn is_exact(d: &TwoSquare, l: Localizer, opts: &CheckOptions) -> Result<CheckReport> {
    let ap = d.a_prime();
    over_triples(d, opts, |a, bp, g| {
        let (objects, classes) = link_components(d, a, bp, g)?;
        let aspheric = match l {
            Localizer::W0 => classes.len() == 1,
            Localizer::Wgr => !objects.is_empty(),
        };
        Ok((!aspheric).then(|| {
            describe_components("link category", &classes, |i| {
                let (x, f, gp) = objects[i];
                format!(
                    "({},{},{})",
                    ap.obj_name(x),
                    d.a().arrow_name(f),
                    d.b_prime().arrow_name(gp)
                )
            })
        }))
    })
}

/// Exactness through the induced slice functors `A'/b' -> A/w(b')`: each
/// must be `W`-coaspheric. Failures are located at the object `(a, g)` of
/// `A/w(b')` whose coslice is not aspheric, reported as `(a,b',g)`.
pub fn is_exact_via_coaspherique(
    d: &TwoSquare,
    l: Localizer,
    opts: &CheckOptions,
) -> Result<CheckReport> {
    let mut witnesses = Vec::new();
    for bp in d.b_prime().objects() {
        let ind = induced_slice_functor(d, bp, &opts.limits)?;
        let r = is_coaspheric_functor(&ind.functor, l, opts)?;
        for w in r.witnesses {
            let (a, _, g) = ind.dst.triple(ObjId(w.key[0]));
            witnesses.push(Witness {
                key: vec![a.0, bp.0, g.0],
                location: d.triple_label(a, bp, g),
                reason: format!(
                    "coslice of the induced slice functor: {}",
                    strip_what(&w.reason)
                ),
            });
        }
    }
    Ok(CheckReport::from_witnesses(witnesses))
}

fn strip_what(reason: &str) -> &str {
    reason.strip_prefix("coslice ").unwrap_or(reason)
}

/// Weak exactness, criterion (a): every induced slice functor
/// `A'/b' -> A/w(b')` is a colocal `W`-equivalence over `A`.
pub fn is_weak_exact(d: &TwoSquare, l: Localizer, opts: &CheckOptions) -> Result<CheckReport> {
    let mut witnesses = Vec::new();
    for bp in d.b_prime().objects() {
        let ind = induced_slice_functor(d, bp, &opts.limits)?;
        let over_src = CatFunctor::compose(d.v(), &ind.src.proj_left)?;
        let r = is_local_equivalence(&ind.functor, &over_src, &ind.dst.proj_left, l, true, opts)?;
        for w in r.witnesses {
            witnesses.push(Witness {
                key: vec![bp.0, w.key[0]],
                location: format!("b'={}, a={}", d.b_prime().obj_name(bp), w.location),
                reason: format!(
                    "induced slice functor not a colocal equivalence: {}",
                    w.reason
                ),
            });
        }
        if !opts.all_witnesses && !witnesses.is_empty() {
            break;
        }
    }
    Ok(CheckReport::from_witnesses(witnesses))
}

/// Weak exactness, criterion (b): every induced coslice functor
/// `a\A' -> u(a)\B'` is a local `W`-equivalence over `B'`.
pub fn is_weak_exact_dual(d: &TwoSquare, l: Localizer, opts: &CheckOptions) -> Result<CheckReport> {
    let mut witnesses = Vec::new();
    for a in d.a().objects() {
        let ind = induced_coslice_functor(d, a, &opts.limits)?;
        let over_src = CatFunctor::compose(d.u_prime(), &ind.src.proj_right)?;
        let r = is_local_equivalence(&ind.functor, &over_src, &ind.dst.proj_right, l, false, opts)?;
        for w in r.witnesses {
            witnesses.push(Witness {
                key: vec![a.0, w.key[0]],
                location: format!("a={}, b'={}", d.a().obj_name(a), w.location),
                reason: format!(
                    "induced coslice functor not a local equivalence: {}",
                    w.reason
                ),
            });
        }
        if !opts.all_witnesses && !witnesses.is_empty() {
            break;
        }
    }
    Ok(CheckReport::from_witnesses(witnesses))
}

/// Every link category has a terminal object.
pub fn has_final_object_criterion(d: &TwoSquare, opts: &CheckOptions) -> Result<CheckReport> {
    over_triples(d, opts, |a, bp, g| {
        let link = link_category(d, a, bp, g, &opts.limits)?;
        Ok(terminal_objects(&link.cat).is_empty().then(|| {
            if link.cat.is_empty() {
                "link category empty".to_string()
            } else {
                "link category has no terminal object".to_string()
            }
        }))
    })
}

/// Whether the link category at a witness key is `W`-aspheric; used to
/// re-check witnesses in isolation.
pub fn link_is_aspheric(d: &TwoSquare, key: &[usize], l: Localizer) -> Result<bool> {
    let link = link_category(
        d,
        ObjId(key[0]),
        ObjId(key[1]),
        ArrowId(key[2]),
        &crate::limits::Limits::default(),
    )?;
    Ok(aspheric_failure(&link.cat, l, "link category").is_none())
}
