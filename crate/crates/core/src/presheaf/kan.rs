use std::collections::HashMap;

use super::finset::{finset_colimit, finset_limit, FinColimit, FinLimit};
use super::sheaf::{restrict, Presheaf, PresheafMorphism};
use crate::error::{Error, Result};
use crate::fincat::{same_cat, CatFunctor, ObjId};
use crate::limits::Limits;
use crate::squares::{coslice, slice, CommaData};

/// Makes tokens distinct by suffixing repeats with `#k`.
pub(crate) fn dedup_tokens(tokens: Vec<String>) -> Vec<String> {
    let mut seen: HashMap<String, usize> = HashMap::new();
    tokens
        .into_iter()
        .map(|t| {
            let n = seen.entry(t.clone()).or_default();
            *n += 1;
            if *n == 1 {
                t
            } else {
                format!("{t}#{}", *n - 1)
            }
        })
        .collect()
}

/// `u_* F` with the slice data it was computed from.
#[derive(Debug, Clone)]
pub struct RightKan {
    pub functor: CatFunctor,
    pub source: Presheaf,
    pub presheaf: Presheaf,
    /// `A/b` per object `b`.
    pub slices: Vec<CommaData>,
    /// Compatible families over `A/b` per object `b`.
    pub limits: Vec<FinLimit>,
}

/// Pointwise right Kan extension: `(u_* F)(b)` is the limit of `F` over `A/b`.
pub fn ran(u: &CatFunctor, f: &Presheaf, limits: &Limits) -> Result<RightKan> {
    if !same_cat(u.src(), f.base()) {
        return Err(Error::BaseMismatch(
            "right Kan extension: presheaf does not live on the source of the functor".into(),
        ));
    }
    let cb = u.dst();
    let mut slices = Vec::with_capacity(cb.num_objects());
    let mut lims = Vec::with_capacity(cb.num_objects());
    for b in cb.objects() {
        let s = slice(u, b, limits)?;
        let p = restrict(&s.proj_left, f)?;
        lims.push(finset_limit(&p, limits)?);
        slices.push(s);
    }
    let pt = ObjId(0);
    let act = cb
        .arrows()
        .map(|h| {
            let (b, b2) = (cb.dom(h), cb.cod(h));
            let (s, s2) = (&slices[b.0], &slices[b2.0]);
            let reindex: Vec<usize> = s
                .triples()
                .iter()
                .map(|&(a, _, g)| s2.object_of(a, pt, cb.compose(h, g)).unwrap().0)
                .collect();
            lims[b2.0]
                .families
                .iter()
                .map(|y| {
                    let x: Vec<usize> = reindex.iter().map(|&k| y[k]).collect();
                    lims[b.0]
                        .position(&x)
                        .expect("restricted family is compatible")
                })
                .collect()
        })
        .collect();
    let sets = lims
        .iter()
        .map(|l| dedup_tokens(l.tokens.clone()))
        .collect();
    let presheaf = Presheaf::new_unchecked(cb.clone(), sets, act);
    Ok(RightKan {
        functor: u.clone(),
        source: f.clone(),
        presheaf,
        slices,
        limits: lims,
    })
}

/// `u_! F` with the coslice data it was computed from.
#[derive(Debug, Clone)]
pub struct LeftKan {
    pub functor: CatFunctor,
    pub source: Presheaf,
    pub presheaf: Presheaf,
    /// `b\A` per object `b`.
    pub coslices: Vec<CommaData>,
    pub colimits: Vec<FinColimit>,
}

/// Pointwise left Kan extension: `(u_! F)(b)` is the colimit of `F` over
/// `b\A`.
pub fn lan(u: &CatFunctor, f: &Presheaf, limits: &Limits) -> Result<LeftKan> {
    if !same_cat(u.src(), f.base()) {
        return Err(Error::BaseMismatch(
            "left Kan extension: presheaf does not live on the source of the functor".into(),
        ));
    }
    let cb = u.dst();
    let mut coslices = Vec::with_capacity(cb.num_objects());
    let mut colims = Vec::with_capacity(cb.num_objects());
    for b in cb.objects() {
        let c = coslice(u, b, limits)?;
        let p = restrict(&c.proj_right, f)?;
        colims.push(finset_colimit(&p, limits)?);
        coslices.push(c);
    }
    let pt = ObjId(0);
    let act = cb
        .arrows()
        .map(|h| {
            let (b, b2) = (cb.dom(h), cb.cod(h));
            let (c, c2) = (&coslices[b.0], &coslices[b2.0]);
            colims[b2.0]
                .reps
                .iter()
                .map(|&(o, e)| {
                    let (_, a, g) = c2.triple(o);
                    let o1 = c.object_of(pt, a, cb.compose(g, h)).unwrap();
                    colims[b.0].inject(o1, e)
                })
                .collect()
        })
        .collect();
    let sets = colims
        .iter()
        .map(|c| dedup_tokens(c.tokens.clone()))
        .collect();
    let presheaf = Presheaf::new_unchecked(cb.clone(), sets, act);
    Ok(LeftKan {
        functor: u.clone(),
        source: f.clone(),
        presheaf,
        coslices,
        colimits: colims,
    })
}

/// `u^* psi`.
pub fn restrict_map(u: &CatFunctor, psi: &PresheafMorphism) -> Result<PresheafMorphism> {
    let src = restrict(u, psi.src())?;
    let dst = restrict(u, psi.dst())?;
    let comps = u
        .src()
        .objects()
        .map(|a| psi.component(u.ob(a)).to_vec())
        .collect();
    Ok(PresheafMorphism::new_unchecked(src, dst, comps))
}

/// `u_* phi : u_* F -> u_* F'`, given both extensions.
pub fn ran_map(phi: &PresheafMorphism, from: &RightKan, to: &RightKan) -> Result<PresheafMorphism> {
    if *phi.src() != from.source || *phi.dst() != to.source {
        return Err(Error::BoundaryMismatch(
            "ran_map: extensions do not match the morphism".into(),
        ));
    }
    let comps = from
        .slices
        .iter()
        .enumerate()
        .map(|(b, s)| {
            from.limits[b]
                .families
                .iter()
                .map(|x| {
                    let y: Vec<usize> = s
                        .triples()
                        .iter()
                        .zip(x)
                        .map(|(&(a, _, _), &e)| phi.component(a)[e])
                        .collect();
                    to.limits[b]
                        .position(&y)
                        .expect("image family is compatible")
                })
                .collect()
        })
        .collect();
    Ok(PresheafMorphism::new_unchecked(
        from.presheaf.clone(),
        to.presheaf.clone(),
        comps,
    ))
}

/// `u_! phi : u_! F -> u_! F'`, given both extensions.
pub fn lan_map(phi: &PresheafMorphism, from: &LeftKan, to: &LeftKan) -> Result<PresheafMorphism> {
    if *phi.src() != from.source || *phi.dst() != to.source {
        return Err(Error::BoundaryMismatch(
            "lan_map: extensions do not match the morphism".into(),
        ));
    }
    let comps = from
        .coslices
        .iter()
        .enumerate()
        .map(|(b, c)| {
            from.colimits[b]
                .reps
                .iter()
                .map(|&(o, e)| {
                    let (_, a, _) = c.triple(o);
                    to.colimits[b].inject(o, phi.component(a)[e])
                })
                .collect()
        })
        .collect();
    Ok(PresheafMorphism::new_unchecked(
        from.presheaf.clone(),
        to.presheaf.clone(),
        comps,
    ))
}

/// Unit `G -> u_* u^* G`, where `ext` is `u_*` of `u^* G`.
pub fn ran_unit(g: &Presheaf, ext: &RightKan) -> Result<PresheafMorphism> {
    let u = &ext.functor;
    if restrict(u, g)? != ext.source {
        return Err(Error::BaseMismatch(
            "ran_unit: extension is not of u^* G".into(),
        ));
    }
    let comps = u
        .dst()
        .objects()
        .map(|b| {
            (0..g.size(b))
                .map(|x| {
                    let fam: Vec<usize> = ext.slices[b.0]
                        .triples()
                        .iter()
                        .map(|&(_, _, h)| g.act(h, x))
                        .collect();
                    ext.limits[b.0]
                        .position(&fam)
                        .expect("unit family is compatible")
                })
                .collect()
        })
        .collect();
    Ok(PresheafMorphism::new_unchecked(
        g.clone(),
        ext.presheaf.clone(),
        comps,
    ))
}

/// Counit `u^* u_* F -> F`: evaluation at `(a, id)`.
pub fn ran_counit(ext: &RightKan) -> Result<PresheafMorphism> {
    let u = &ext.functor;
    let src = restrict(u, &ext.presheaf)?;
    let comps = u
        .src()
        .objects()
        .map(|a| {
            let b = u.ob(a);
            let k = ext.slices[b.0]
                .object_of(a, ObjId(0), u.dst().id(b))
                .expect("(a, id) in A/u(a)");
            ext.limits[b.0]
                .families
                .iter()
                .map(|fam| fam[k.0])
                .collect()
        })
        .collect();
    Ok(PresheafMorphism::new_unchecked(
        src,
        ext.source.clone(),
        comps,
    ))
}

/// Unit `F -> u^* u_! F`: `x |-> [(a, id), x]`.
pub fn lan_unit(ext: &LeftKan) -> Result<PresheafMorphism> {
    let u = &ext.functor;
    let dst = restrict(u, &ext.presheaf)?;
    let comps = u
        .src()
        .objects()
        .map(|a| {
            let b = u.ob(a);
            let k = ext.coslices[b.0]
                .object_of(ObjId(0), a, u.dst().id(b))
                .expect("(a, id) in u(a)\\A");
            (0..ext.source.size(a))
                .map(|x| ext.colimits[b.0].inject(k, x))
                .collect()
        })
        .collect();
    Ok(PresheafMorphism::new_unchecked(
        ext.source.clone(),
        dst,
        comps,
    ))
}

/// Counit `u_! u^* G -> G`: `[(a, g), x] |-> G(g)(x)`, where `ext` is `u_!`
/// of `u^* G`.
pub fn lan_counit(g: &Presheaf, ext: &LeftKan) -> Result<PresheafMorphism> {
    let u = &ext.functor;
    if restrict(u, g)? != ext.source {
        return Err(Error::BaseMismatch(
            "lan_counit: extension is not of u^* G".into(),
        ));
    }
    let comps = u
        .dst()
        .objects()
        .map(|b| {
            ext.colimits[b.0]
                .reps
                .iter()
                .map(|&(o, x)| {
                    let (_, _, h) = ext.coslices[b.0].triple(o);
                    g.act(h, x)
                })
                .collect()
        })
        .collect();
    Ok(PresheafMorphism::new_unchecked(
        ext.presheaf.clone(),
        g.clone(),
        comps,
    ))
}

/// `psi : u^* G -> F` to its transpose `G -> u_* F`.
pub fn ran_transpose(
    psi: &PresheafMorphism,
    g: &Presheaf,
    u: &CatFunctor,
    limits: &Limits,
) -> Result<PresheafMorphism> {
    let ext_g = ran(u, psi.src(), limits)?;
    let ext_f = ran(u, psi.dst(), limits)?;
    let unit = ran_unit(g, &ext_g)?;
    PresheafMorphism::compose(&ran_map(psi, &ext_g, &ext_f)?, &unit)
}

/// `phi : G -> u_* F` to its transpose `u^* G -> F`.
pub fn ran_untranspose(phi: &PresheafMorphism, ext_f: &RightKan) -> Result<PresheafMorphism> {
    let restricted = restrict_map(&ext_f.functor, phi)?;
    PresheafMorphism::compose(&ran_counit(ext_f)?, &restricted)
}

/// `psi : u_! F -> G` to its transpose `F -> u^* G`.
pub fn lan_transpose(psi: &PresheafMorphism, ext_f: &LeftKan) -> Result<PresheafMorphism> {
    let restricted = restrict_map(&ext_f.functor, psi)?;
    PresheafMorphism::compose(&restricted, &lan_unit(ext_f)?)
}

/// `phi : F -> u^* G` to its transpose `u_! F -> G`.
pub fn lan_untranspose(
    phi: &PresheafMorphism,
    g: &Presheaf,
    u: &CatFunctor,
    limits: &Limits,
) -> Result<PresheafMorphism> {
    let ext_f = lan(u, phi.src(), limits)?;
    let ext_g = lan(u, phi.dst(), limits)?;
    let counit = lan_counit(g, &ext_g)?;
    PresheafMorphism::compose(&counit, &lan_map(phi, &ext_f, &ext_g)?)
}
