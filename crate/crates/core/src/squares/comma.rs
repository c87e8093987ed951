use std::collections::HashMap;
use std::sync::Arc;

use super::square::TwoSquare;
use crate::error::{Error, Result};
use crate::fincat::naming::{tuple, uniquify};
use crate::fincat::{same_cat, ArrowData, ArrowId, CatFunctor, FinCat, NatTransform, ObjId};
use crate::limits::Limits;

/// The comma category `u | w` of `u : A -> B` and `w : B' -> B` with its
/// projections and canonical 2-cell.
///
/// Objects are triples `(a, b', g : u(a) -> w(b'))` in lexicographic order;
/// arrows `(f, g')` satisfy `w(g').g1 = g2.u(f)`.
#[derive(Debug, Clone)]
pub struct CommaData {
    pub comma: Arc<FinCat>,
    /// Projection to `A`.
    pub proj_left: CatFunctor,
    /// Projection to `B'`.
    pub proj_right: CatFunctor,
    /// `alpha_(a,b',g) = g`.
    pub alpha: NatTransform,
    pub u: CatFunctor,
    pub w: CatFunctor,
    triples: Vec<(ObjId, ObjId, ArrowId)>,
    pairs: Vec<(ArrowId, ArrowId)>,
    obj_index: HashMap<(ObjId, ObjId, ArrowId), ObjId>,
    arrow_index: HashMap<(ObjId, ObjId, ArrowId, ArrowId), ArrowId>,
}

pub fn comma_category(u: &CatFunctor, w: &CatFunctor, limits: &Limits) -> Result<CommaData> {
    if !same_cat(u.dst(), w.dst()) {
        return Err(Error::TargetMismatch(
            "comma category: the two functors have different targets".into(),
        ));
    }
    let (ca, cbp, cb) = (u.src(), w.src(), u.dst());
    let mut triples = Vec::new();
    for a in ca.objects() {
        for bp in cbp.objects() {
            for &g in cb.hom(u.ob(a), w.ob(bp)) {
                triples.push((a, bp, g));
            }
        }
    }
    limits.check_objects("comma category", triples.len())?;
    let obj_index: HashMap<_, _> = triples
        .iter()
        .enumerate()
        .map(|(i, &t)| (t, ObjId(i)))
        .collect();
    let names: Vec<String> = triples
        .iter()
        .map(|&(a, bp, g)| tuple(&[ca.obj_name(a), cbp.obj_name(bp), cb.arrow_name(g)]))
        .collect();
    // (dom, cod, f, g') in lexicographic order.
    let mut found: Vec<(ObjId, ObjId, ArrowId, ArrowId)> = Vec::new();
    for (i, &(a1, b1, g1)) in triples.iter().enumerate() {
        for &f in ca.arrows_from(a1) {
            let a2 = ca.cod(f);
            for &gp in cbp.arrows_from(b1) {
                let b2 = cbp.cod(gp);
                let lhs = cb.compose(w.ar(gp), g1);
                for &g2 in cb.hom(u.ob(a2), w.ob(b2)) {
                    if cb.compose(g2, u.ar(f)) == lhs {
                        found.push((ObjId(i), obj_index[&(a2, b2, g2)], f, gp));
                    }
                }
            }
            limits.check_arrows("comma category", found.len())?;
        }
    }
    found.sort();
    let mut arrows = Vec::with_capacity(found.len());
    let mut pairs = Vec::with_capacity(found.len());
    let mut arrow_index = HashMap::with_capacity(found.len());
    let mut identity = vec![ArrowId(0); triples.len()];
    for (k, &(i, j, f, gp)) in found.iter().enumerate() {
        let (a1, b1, _) = triples[i.0];
        if i == j && f == ca.id(a1) && gp == cbp.id(b1) {
            identity[i.0] = ArrowId(k);
        }
        arrows.push(ArrowData {
            name: tuple(&[ca.arrow_name(f), cbp.arrow_name(gp)]),
            dom: i,
            cod: j,
        });
        pairs.push((f, gp));
        arrow_index.insert((i, j, f, gp), ArrowId(k));
    }
    uniquify(&mut arrows, &names);
    let comma = Arc::new(FinCat::assemble(names, arrows.clone(), identity, |k, h| {
        let (f2, g2) = pairs[k.0];
        let (f1, g1) = pairs[h.0];
        arrow_index[&(
            arrows[h.0].dom,
            arrows[k.0].cod,
            ca.compose(f2, f1),
            cbp.compose(g2, g1),
        )]
    }));
    let proj_left = CatFunctor::new_unchecked(
        comma.clone(),
        ca.clone(),
        triples.iter().map(|t| t.0).collect(),
        pairs.iter().map(|p| p.0).collect(),
    );
    let proj_right = CatFunctor::new_unchecked(
        comma.clone(),
        cbp.clone(),
        triples.iter().map(|t| t.1).collect(),
        pairs.iter().map(|p| p.1).collect(),
    );
    let alpha = NatTransform::new_unchecked(
        CatFunctor::compose(u, &proj_left)?,
        CatFunctor::compose(w, &proj_right)?,
        triples.iter().map(|t| t.2).collect(),
    );
    Ok(CommaData {
        comma,
        proj_left,
        proj_right,
        alpha,
        u: u.clone(),
        w: w.clone(),
        triples,
        pairs,
        obj_index,
        arrow_index,
    })
}

impl CommaData {
    /// The comma square with `v` = left projection, `u'` = right projection.
    pub fn square(&self) -> TwoSquare {
        TwoSquare::new_unchecked(
            self.proj_left.clone(),
            self.u.clone(),
            self.proj_right.clone(),
            self.w.clone(),
            self.alpha.clone(),
        )
    }

    pub fn triple(&self, x: ObjId) -> (ObjId, ObjId, ArrowId) {
        self.triples[x.0]
    }

    pub fn triples(&self) -> &[(ObjId, ObjId, ArrowId)] {
        &self.triples
    }

    pub fn pair(&self, f: ArrowId) -> (ArrowId, ArrowId) {
        self.pairs[f.0]
    }

    pub fn object_of(&self, a: ObjId, b_prime: ObjId, g: ArrowId) -> Option<ObjId> {
        self.obj_index.get(&(a, b_prime, g)).copied()
    }

    pub fn arrow_of(
        &self,
        dom: ObjId,
        cod: ObjId,
        f: ArrowId,
        g_prime: ArrowId,
    ) -> Option<ArrowId> {
        self.arrow_index.get(&(dom, cod, f, g_prime)).copied()
    }
}

/// `A/b`: the comma of `u` against the object `b : e -> B`. Objects
/// `(a, •, g : u(a) -> b)`.
pub fn slice(u: &CatFunctor, b: ObjId, limits: &Limits) -> Result<CommaData> {
    check_obj(u.dst(), b)?;
    comma_category(u, &CatFunctor::from_point(u.dst().clone(), b), limits)
}

/// `b\A`: the comma of the object `b : e -> B` against `u`. Objects
/// `(•, a, g : b -> u(a))`.
pub fn coslice(u: &CatFunctor, b: ObjId, limits: &Limits) -> Result<CommaData> {
    check_obj(u.dst(), b)?;
    comma_category(&CatFunctor::from_point(u.dst().clone(), b), u, limits)
}

pub(crate) fn check_obj(c: &FinCat, x: ObjId) -> Result<()> {
    if x.0 >= c.num_objects() {
        return Err(Error::UnknownObject(format!("#{}", x.0)));
    }
    Ok(())
}

/// The fiber `A_b` of `u` with its canonical functors into `A/b` and `b\A`
/// (both `a |-> (a, id_b)`).
#[derive(Debug, Clone)]
pub struct Fiber {
    pub cat: Arc<FinCat>,
    pub inclusion: CatFunctor,
    pub slice: CommaData,
    pub coslice: CommaData,
    pub to_slice: CatFunctor,
    pub to_coslice: CatFunctor,
}

pub fn fiber(u: &CatFunctor, b: ObjId, limits: &Limits) -> Result<Fiber> {
    check_obj(u.dst(), b)?;
    let (ca, cb) = (u.src(), u.dst());
    let idb = cb.id(b);
    let obs: Vec<ObjId> = ca.objects().filter(|&a| u.ob(a) == b).collect();
    let mut pos = vec![usize::MAX; ca.num_objects()];
    for (i, a) in obs.iter().enumerate() {
        pos[a.0] = i;
    }
    let ars: Vec<ArrowId> = ca.arrows().filter(|&f| u.ar(f) == idb).collect();
    let mut apos = vec![usize::MAX; ca.num_arrows()];
    for (i, f) in ars.iter().enumerate() {
        apos[f.0] = i;
    }
    let cat = Arc::new(FinCat::assemble(
        obs.iter().map(|&a| ca.obj_name(a).to_string()).collect(),
        ars.iter()
            .map(|&f| ArrowData {
                name: ca.arrow_name(f).to_string(),
                dom: ObjId(pos[ca.dom(f).0]),
                cod: ObjId(pos[ca.cod(f).0]),
            })
            .collect(),
        obs.iter().map(|&a| ArrowId(apos[ca.id(a).0])).collect(),
        |g, f| ArrowId(apos[ca.compose(ars[g.0], ars[f.0]).0]),
    ));
    let inclusion = CatFunctor::new_unchecked(cat.clone(), ca.clone(), obs.clone(), ars.clone());
    let sl = slice(u, b, limits)?;
    let co = coslice(u, b, limits)?;
    let pt = sl.w.src().clone();
    let idp = pt.id(ObjId(0));
    let to_slice = CatFunctor::new_unchecked(
        cat.clone(),
        sl.comma.clone(),
        obs.iter()
            .map(|&a| sl.object_of(a, ObjId(0), idb).expect("(a, id_b) in A/b"))
            .collect(),
        ars.iter()
            .map(|&f| {
                let d = sl.object_of(ca.dom(f), ObjId(0), idb).unwrap();
                let c = sl.object_of(ca.cod(f), ObjId(0), idb).unwrap();
                sl.arrow_of(d, c, f, idp).expect("fiber arrow lies in A/b")
            })
            .collect(),
    );
    let to_coslice = CatFunctor::new_unchecked(
        cat.clone(),
        co.comma.clone(),
        obs.iter()
            .map(|&a| co.object_of(ObjId(0), a, idb).expect("(a, id_b) in b\\A"))
            .collect(),
        ars.iter()
            .map(|&f| {
                let d = co.object_of(ObjId(0), ca.dom(f), idb).unwrap();
                let c = co.object_of(ObjId(0), ca.cod(f), idb).unwrap();
                co.arrow_of(d, c, idp, f).expect("fiber arrow lies in b\\A")
            })
            .collect(),
    );
    Ok(Fiber {
        cat,
        inclusion,
        slice: sl,
        coslice: co,
        to_slice,
        to_coslice,
    })
}

/// The strict pullback `B' x_B A` with its projections and the commutative
/// square it spans.
#[derive(Debug, Clone)]
pub struct Pullback {
    pub cat: Arc<FinCat>,
    /// Projection to `A`.
    pub proj_left: CatFunctor,
    /// Projection to `B'`.
    pub proj_right: CatFunctor,
    pub square: TwoSquare,
}

/// Objects `(a, b')` with `u(a) = w(b')`, arrows `(f, g')` with `u(f) = w(g')`.
pub fn pullback_cat(u: &CatFunctor, w: &CatFunctor, limits: &Limits) -> Result<Pullback> {
    if !same_cat(u.dst(), w.dst()) {
        return Err(Error::TargetMismatch(
            "pullback: the two functors have different targets".into(),
        ));
    }
    let (ca, cbp) = (u.src(), w.src());
    let pairs: Vec<(ObjId, ObjId)> = ca
        .objects()
        .flat_map(|a| cbp.objects().map(move |b| (a, b)))
        .filter(|&(a, b)| u.ob(a) == w.ob(b))
        .collect();
    limits.check_objects("pullback", pairs.len())?;
    let index: HashMap<(ObjId, ObjId), ObjId> = pairs
        .iter()
        .enumerate()
        .map(|(i, &p)| (p, ObjId(i)))
        .collect();
    let mut arrows = Vec::new();
    let mut ar_pairs = Vec::new();
    for f in ca.arrows() {
        for g in cbp.arrows() {
            if u.ar(f) != w.ar(g) {
                continue;
            }
            arrows.push(ArrowData {
                name: tuple(&[ca.arrow_name(f), cbp.arrow_name(g)]),
                dom: index[&(ca.dom(f), cbp.dom(g))],
                cod: index[&(ca.cod(f), cbp.cod(g))],
            });
            ar_pairs.push((f, g));
        }
    }
    limits.check_arrows("pullback", arrows.len())?;
    let ar_index: HashMap<(ArrowId, ArrowId), ArrowId> = ar_pairs
        .iter()
        .enumerate()
        .map(|(i, &p)| (p, ArrowId(i)))
        .collect();
    let names: Vec<String> = pairs
        .iter()
        .map(|&(a, b)| tuple(&[ca.obj_name(a), cbp.obj_name(b)]))
        .collect();
    let identity = pairs
        .iter()
        .map(|&(a, b)| ar_index[&(ca.id(a), cbp.id(b))])
        .collect();
    let cat = Arc::new(FinCat::assemble(names, arrows, identity, |k, h| {
        let (f2, g2) = ar_pairs[k.0];
        let (f1, g1) = ar_pairs[h.0];
        ar_index[&(ca.compose(f2, f1), cbp.compose(g2, g1))]
    }));
    let proj_left = CatFunctor::new_unchecked(
        cat.clone(),
        ca.clone(),
        pairs.iter().map(|p| p.0).collect(),
        ar_pairs.iter().map(|p| p.0).collect(),
    );
    let proj_right = CatFunctor::new_unchecked(
        cat.clone(),
        cbp.clone(),
        pairs.iter().map(|p| p.1).collect(),
        ar_pairs.iter().map(|p| p.1).collect(),
    );
    let square =
        TwoSquare::commutative(proj_left.clone(), u.clone(), proj_right.clone(), w.clone())?;
    Ok(Pullback {
        cat,
        proj_left,
        proj_right,
        square,
    })
}
