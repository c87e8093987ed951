use std::collections::HashMap;
use std::sync::Arc;

use petgraph::unionfind::UnionFind;

use super::comma::{check_obj, coslice, slice, CommaData};
use super::square::TwoSquare;
use crate::error::{Error, Result};
use crate::fincat::naming::{tuple, uniquify};
use crate::fincat::{ArrowData, ArrowId, CatFunctor, FinCat, ObjId};
use crate::limits::Limits;

/// The functor `A'/b' -> A/w(b')`, `(a', g') |-> (v(a'), w(g').alpha_a')`,
/// with its source and target slices.
#[derive(Debug, Clone)]
pub struct InducedSlice {
    pub src: CommaData,
    pub dst: CommaData,
    pub functor: CatFunctor,
}

pub fn induced_slice_functor(
    d: &TwoSquare,
    b_prime: ObjId,
    limits: &Limits,
) -> Result<InducedSlice> {
    check_obj(d.b_prime(), b_prime)?;
    let src = slice(d.u_prime(), b_prime, limits)?;
    let dst = slice(d.u(), d.w().ob(b_prime), limits)?;
    let b = d.b();
    let pt = ObjId(0);
    let ob_map: Vec<ObjId> = src
        .triples()
        .iter()
        .map(|&(ap, _, gp)| {
            let g = b.compose(d.w().ar(gp), d.alpha().component(ap));
            dst.object_of(d.v().ob(ap), pt, g)
                .expect("image lies in A/w(b')")
        })
        .collect();
    let idp = dst.w.src().id(pt);
    let ar_map = src
        .comma
        .arrows()
        .map(|k| {
            let (fp, _) = src.pair(k);
            let (x, y) = (src.comma.dom(k), src.comma.cod(k));
            dst.arrow_of(ob_map[x.0], ob_map[y.0], d.v().ar(fp), idp)
                .expect("image arrow lies in A/w(b')")
        })
        .collect();
    let functor = CatFunctor::new_unchecked(src.comma.clone(), dst.comma.clone(), ob_map, ar_map);
    Ok(InducedSlice { src, dst, functor })
}

/// The functor `a\A' -> u(a)\B'`, `(a', f) |-> (u'(a'), alpha_a'.u(f))`, with
/// its source and target coslices.
#[derive(Debug, Clone)]
pub struct InducedCoslice {
    pub src: CommaData,
    pub dst: CommaData,
    pub functor: CatFunctor,
}

pub fn induced_coslice_functor(d: &TwoSquare, a: ObjId, limits: &Limits) -> Result<InducedCoslice> {
    check_obj(d.a(), a)?;
    let src = coslice(d.v(), a, limits)?;
    let dst = coslice(d.w(), d.u().ob(a), limits)?;
    let b = d.b();
    let pt = ObjId(0);
    let ob_map: Vec<ObjId> = src
        .triples()
        .iter()
        .map(|&(_, ap, f)| {
            let g = b.compose(d.alpha().component(ap), d.u().ar(f));
            dst.object_of(pt, d.u_prime().ob(ap), g)
                .expect("image lies in u(a)\\B'")
        })
        .collect();
    let idp = dst.u.src().id(pt);
    let ar_map = src
        .comma
        .arrows()
        .map(|k| {
            let (_, fp) = src.pair(k);
            let (x, y) = (src.comma.dom(k), src.comma.cod(k));
            dst.arrow_of(ob_map[x.0], ob_map[y.0], idp, d.u_prime().ar(fp))
                .expect("image arrow lies in u(a)\\B'")
        })
        .collect();
    let functor = CatFunctor::new_unchecked(src.comma.clone(), dst.comma.clone(), ob_map, ar_map);
    Ok(InducedCoslice { src, dst, functor })
}

/// Objects `(a', f : a -> v(a'), g' : u'(a') -> b')` with
/// `w(g').alpha_a'.u(f) = g`, in lexicographic order.
pub fn link_objects(
    d: &TwoSquare,
    a: ObjId,
    b_prime: ObjId,
    g: ArrowId,
) -> Result<Vec<(ObjId, ArrowId, ArrowId)>> {
    check_link_args(d, a, b_prime, g)?;
    let (ap_cat, ca, cbp, cb) = (d.a_prime(), d.a(), d.b_prime(), d.b());
    let mut out = Vec::new();
    for ap in ap_cat.objects() {
        let alpha = d.alpha().component(ap);
        for &f in ca.hom(a, d.v().ob(ap)) {
            let t = cb.compose(alpha, d.u().ar(f));
            for &gp in cbp.hom(d.u_prime().ob(ap), b_prime) {
                if cb.compose(d.w().ar(gp), t) == g {
                    out.push((ap, f, gp));
                }
            }
        }
    }
    Ok(out)
}

fn check_link_args(d: &TwoSquare, a: ObjId, b_prime: ObjId, g: ArrowId) -> Result<()> {
    check_obj(d.a(), a)?;
    check_obj(d.b_prime(), b_prime)?;
    let cb = d.b();
    if g.0 >= cb.num_arrows() || cb.dom(g) != d.u().ob(a) || cb.cod(g) != d.w().ob(b_prime) {
        return Err(Error::ArrowMismatch(format!(
            "link category at ({},{}): arrow is not u(a) -> w(b')",
            d.a().obj_name(a),
            d.b_prime().obj_name(b_prime)
        )));
    }
    Ok(())
}

/// Arrows `f' : a'1 -> a'2` of the link category as `(dom, cod, f')`.
fn link_arrows(
    d: &TwoSquare,
    objects: &[(ObjId, ArrowId, ArrowId)],
) -> Vec<(usize, usize, ArrowId)> {
    let (ap_cat, ca, cbp) = (d.a_prime(), d.a(), d.b_prime());
    let index: HashMap<(ObjId, ArrowId, ArrowId), usize> =
        objects.iter().enumerate().map(|(i, &o)| (o, i)).collect();
    let b_prime = objects.first().map(|o| cbp.cod(o.2));
    let mut out = Vec::new();
    for (i, &(ap1, f1, gp1)) in objects.iter().enumerate() {
        for &fp in ap_cat.arrows_from(ap1) {
            let ap2 = ap_cat.cod(fp);
            let f2 = ca.compose(d.v().ar(fp), f1);
            let b_prime = b_prime.expect("nonempty");
            for &gp2 in cbp.hom(d.u_prime().ob(ap2), b_prime) {
                if cbp.compose(gp2, d.u_prime().ar(fp)) != gp1 {
                    continue;
                }
                if let Some(&j) = index.get(&(ap2, f2, gp2)) {
                    out.push((i, j, fp));
                }
            }
        }
    }
    out
}

/// Connected components of the link category at `(a, b', g)`, computed
/// without tabulating its composition. Classes are ordered by least member.
pub fn link_components(
    d: &TwoSquare,
    a: ObjId,
    b_prime: ObjId,
    g: ArrowId,
) -> Result<(Vec<(ObjId, ArrowId, ArrowId)>, Vec<Vec<usize>>)> {
    let objects = link_objects(d, a, b_prime, g)?;
    let mut uf = UnionFind::<usize>::new(objects.len());
    for (i, j, _) in link_arrows(d, &objects) {
        uf.union(i, j);
    }
    let mut class_of = HashMap::new();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for i in 0..objects.len() {
        let r = uf.find(i);
        let c = *class_of.entry(r).or_insert_with(|| {
            classes.push(Vec::new());
            classes.len() - 1
        });
        classes[c].push(i);
    }
    Ok((objects, classes))
}

/// The link category at `(a, b', g)` as a finite category.
#[derive(Debug, Clone)]
pub struct LinkCategory {
    pub cat: Arc<FinCat>,
    /// `(a', f, g')` per object.
    pub objects: Vec<(ObjId, ArrowId, ArrowId)>,
    /// The underlying arrow `f'` of `A'` per arrow.
    pub arrows: Vec<ArrowId>,
}

pub fn link_category(
    d: &TwoSquare,
    a: ObjId,
    b_prime: ObjId,
    g: ArrowId,
    limits: &Limits,
) -> Result<LinkCategory> {
    let objects = link_objects(d, a, b_prime, g)?;
    limits.check_objects("link category", objects.len())?;
    let mut found = link_arrows(d, &objects);
    limits.check_arrows("link category", found.len())?;
    found.sort();
    let (ap_cat, ca, cbp) = (d.a_prime(), d.a(), d.b_prime());
    let names: Vec<String> = objects
        .iter()
        .map(|&(ap, f, gp)| tuple(&[ap_cat.obj_name(ap), ca.arrow_name(f), cbp.arrow_name(gp)]))
        .collect();
    let index: HashMap<(usize, usize, ArrowId), ArrowId> = found
        .iter()
        .enumerate()
        .map(|(k, &t)| (t, ArrowId(k)))
        .collect();
    let identity = objects
        .iter()
        .enumerate()
        .map(|(i, o)| index[&(i, i, ap_cat.id(o.0))])
        .collect();
    let mut arrows: Vec<ArrowData> = found
        .iter()
        .map(|&(i, j, fp)| ArrowData {
            name: ap_cat.arrow_name(fp).to_string(),
            dom: ObjId(i),
            cod: ObjId(j),
        })
        .collect();
    uniquify(&mut arrows, &names);
    let cat = FinCat::assemble(names, arrows, identity, |k, h| {
        let (i, _, f1) = found[h.0];
        let (_, j, f2) = found[k.0];
        index[&(i, j, ap_cat.compose(f2, f1))]
    });
    Ok(LinkCategory {
        cat: Arc::new(cat),
        objects,
        arrows: found.iter().map(|t| t.2).collect(),
    })
}
