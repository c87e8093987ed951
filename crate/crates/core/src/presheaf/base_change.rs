use std::sync::Arc;

use rayon::prelude::*;

use super::kan::{lan, ran};
use super::sheaf::{representable, restrict, Presheaf, PresheafMorphism};
use crate::error::{Error, Result};
use crate::exactness::{CheckOptions, CheckReport, Witness};
use crate::fincat::{same_cat, CatFunctor, FinCat, ObjId};
use crate::limits::Limits;
use crate::squares::{induced_coslice_functor, induced_slice_functor, TwoSquare};

/// `c_D : w^* u_* F -> u'_* v^* F` for `F` on `A`. At `b'` a compatible family
/// over `A/w(b')` is restricted along the induced functor `A'/b' -> A/w(b')`.
pub fn base_change_coh(d: &TwoSquare, f: &Presheaf, limits: &Limits) -> Result<PresheafMorphism> {
    if !same_cat(f.base(), d.a()) {
        return Err(Error::BaseMismatch("c_D: presheaf must live on A".into()));
    }
    let ext = ran(d.u(), f, limits)?;
    let src = restrict(d.w(), &ext.presheaf)?;
    let ext2 = ran(d.u_prime(), &restrict(d.v(), f)?, limits)?;
    let comps = d
        .b_prime()
        .objects()
        .map(|bp| {
            let ind = induced_slice_functor(d, bp, limits)?;
            let wb = d.w().ob(bp);
            Ok(ext.limits[wb.0]
                .families
                .iter()
                .map(|x| {
                    let y: Vec<usize> = ind.functor.ob_map().iter().map(|k| x[k.0]).collect();
                    ext2.limits[bp.0]
                        .position(&y)
                        .expect("restricted family is compatible")
                })
                .collect())
        })
        .collect::<Result<_>>()?;
    Ok(PresheafMorphism::new_unchecked(src, ext2.presheaf, comps))
}

/// `c'_D : v_! u'^* G -> u^* w_! G` for `G` on `B'`. At `a` a class over
/// `a\A'` is sent along the induced functor `a\A' -> u(a)\B'`.
pub fn base_change_hom(d: &TwoSquare, g: &Presheaf, limits: &Limits) -> Result<PresheafMorphism> {
    if !same_cat(g.base(), d.b_prime()) {
        return Err(Error::BaseMismatch("c'_D: presheaf must live on B'".into()));
    }
    let ext = lan(d.v(), &restrict(d.u_prime(), g)?, limits)?;
    let ext2 = lan(d.w(), g, limits)?;
    let dst = restrict(d.u(), &ext2.presheaf)?;
    let comps = d
        .a()
        .objects()
        .map(|a| {
            let ind = induced_coslice_functor(d, a, limits)?;
            let ua = d.u().ob(a);
            Ok(ext.colimits[a.0]
                .reps
                .iter()
                .map(|&(o, e)| ext2.colimits[ua.0].inject(ind.functor.ob(o), e))
                .collect())
        })
        .collect::<Result<_>>()?;
    Ok(PresheafMorphism::new_unchecked(ext.presheaf, dst, comps))
}

/// Guitart exactness decided through `c'_D` on every representable of `B'`.
///
/// The component of `c'_D(h_b')` at `a` lands in classes indexed by arrows
/// `g : u(a) -> w(b')`; a witness is reported at every `(a, b', g)` whose
/// fiber is not a single class.
pub fn guitart_oracle(d: &TwoSquare, opts: &CheckOptions) -> Result<CheckReport> {
    let bpc = d.b_prime();
    let group = |bp: ObjId| -> Result<Vec<Witness>> {
        let h = representable(bpc, bp);
        let c = base_change_hom(d, &h, &opts.limits)?;
        let target = lan(d.w(), &h, &opts.limits)?;
        let mut out = Vec::new();
        for a in d.a().objects() {
            let ua = d.u().ob(a);
            let colim = &target.colimits[ua.0];
            let cos = &target.coslices[ua.0];
            let mut count = vec![0usize; colim.len()];
            for &t in c.component(a) {
                count[t] += 1;
            }
            let mut bad: Vec<_> = colim
                .reps
                .iter()
                .zip(&count)
                .filter(|&(_, &n)| n != 1)
                .map(|(&(o, e), &n)| {
                    let (_, b2, k) = cos.triple(o);
                    let arrow = h.base().hom(b2, bp)[e];
                    (d.b().compose(d.w().ar(arrow), k), n)
                })
                .collect();
            bad.sort();
            for (g, n) in bad {
                out.push(Witness {
                    key: vec![a.0, bp.0, g.0],
                    location: d.triple_label(a, bp, g),
                    reason: format!("base change fiber has {n} classes"),
                });
                if !opts.all_witnesses {
                    return Ok(out);
                }
            }
        }
        Ok(out)
    };
    let groups: Vec<Vec<Witness>> = if opts.parallel {
        bpc.objects()
            .collect::<Vec<_>>()
            .into_par_iter()
            .map(group)
            .collect::<Result<_>>()?
    } else {
        bpc.objects().map(group).collect::<Result<_>>()?
    };
    Ok(CheckReport::from_witnesses(
        groups.into_iter().flatten().collect(),
    ))
}

/// The injective cogenerator `a_*(2)`, with `(a_* 2)(x) = 2^Hom(a, x)`.
pub fn cogenerator(a: &Arc<FinCat>, x: ObjId, limits: &Limits) -> Result<Presheaf> {
    let at = CatFunctor::from_point(a.clone(), x);
    Ok(ran(&at, &Presheaf::constant_n(at.src().clone(), 2), limits)?.presheaf)
}

/// Exactness decided through `c_D` on the cogenerators `a_*(2)` of `A`.
/// Both sides of `c_D` preserve limits and every presheaf is a limit of
/// products of cogenerators, so these suffice.
pub fn cohomological_oracle(d: &TwoSquare, opts: &CheckOptions) -> Result<CheckReport> {
    let ca = d.a();
    let mut witnesses = Vec::new();
    for a in ca.objects() {
        let f = cogenerator(ca, a, &opts.limits)?;
        let c = base_change_coh(d, &f, &opts.limits)?;
        for bp in c.non_iso_objects() {
            witnesses.push(Witness {
                key: vec![bp.0, a.0],
                location: d.b_prime().obj_name(bp).to_string(),
                reason: format!(
                    "c_D on the cogenerator at {} maps {} elements to {}",
                    ca.obj_name(a),
                    c.src().size(bp),
                    c.dst().size(bp)
                ),
            });
        }
    }
    witnesses.sort();
    if !opts.all_witnesses {
        witnesses.truncate(1);
    }
    Ok(CheckReport::from_witnesses(witnesses))
}
