use std::collections::HashMap;
use std::sync::Arc;

use super::category::{ArrowData, ArrowId, FinCat, ObjId};
use super::functor::CatFunctor;
use super::naming::{tuple, uniquify};
use super::nat::NatTransform;
use crate::error::{Error, Result};
use crate::limits::Limits;

/// Object and arrow tables of a functor.
pub type FunctorTable = (Vec<ObjId>, Vec<ArrowId>);

/// All functors `A -> C`, ordered lexicographically by (object map, arrow map).
///
/// Fails with a size-guard error as soon as more than `cap` functors exist.
pub fn enumerate_functor_tables(a: &FinCat, c: &FinCat, cap: usize) -> Result<Vec<FunctorTable>> {
    let mut out = Vec::new();
    let mut identity = |n: usize| (0..n).collect::<Vec<_>>();
    search_functors(a, c, &mut identity, &mut |t| {
        if out.len() == cap {
            return Err(Error::SizeGuardExceeded {
                what: "functor enumeration".into(),
                limit: cap,
            });
        }
        out.push(t);
        Ok(true)
    })?;
    out.sort();
    Ok(out)
}

/// First functor `A -> C` found when candidates at every step are tried in
/// the order given by `order(n)`, a permutation of `0..n`.
pub fn first_functor_table(
    a: &FinCat,
    c: &FinCat,
    order: &mut dyn FnMut(usize) -> Vec<usize>,
) -> Option<FunctorTable> {
    let mut found = None;
    search_functors(a, c, order, &mut |t| {
        found = Some(t);
        Ok(false)
    })
    .expect("visitor never fails");
    found
}

/// Backtracking search over functor tables. `visit` returns whether to keep
/// searching.
fn search_functors(
    a: &FinCat,
    c: &FinCat,
    order: &mut dyn FnMut(usize) -> Vec<usize>,
    visit: &mut dyn FnMut(FunctorTable) -> Result<bool>,
) -> Result<()> {
    let non_id: Vec<ArrowId> = a.non_identity_arrows().collect();
    let mut pos = vec![usize::MAX; a.num_arrows()];
    for (i, f) in non_id.iter().enumerate() {
        pos[f.0] = i;
    }
    // Composites g.f = h among non-identity arrows, attached to the step at
    // which the last of the three gets its image.
    let mut checks: Vec<Vec<(ArrowId, ArrowId, ArrowId)>> = vec![Vec::new(); non_id.len()];
    for &g in &non_id {
        for &f in a.arrows_into(a.dom(g)) {
            if a.is_identity(f) {
                continue;
            }
            let h = a.compose(g, f);
            let last = pos[g.0]
                .max(pos[f.0])
                .max(if a.is_identity(h) { 0 } else { pos[h.0] });
            checks[last].push((g, f, h));
        }
    }
    let mut ob = vec![ObjId(0); a.num_objects()];
    let mut ar: Vec<ArrowId> = vec![ArrowId(usize::MAX); a.num_arrows()];
    let mut state = Search {
        a,
        c,
        non_id: &non_id,
        checks: &checks,
        order,
        visit,
    };
    state.objects(0, &mut ob, &mut ar)?;
    Ok(())
}

struct Search<'a> {
    a: &'a FinCat,
    c: &'a FinCat,
    non_id: &'a [ArrowId],
    checks: &'a [Vec<(ArrowId, ArrowId, ArrowId)>],
    order: &'a mut dyn FnMut(usize) -> Vec<usize>,
    visit: &'a mut dyn FnMut(FunctorTable) -> Result<bool>,
}

impl Search<'_> {
    /// Returns whether to keep searching.
    fn objects(&mut self, i: usize, ob: &mut Vec<ObjId>, ar: &mut Vec<ArrowId>) -> Result<bool> {
        if i == ob.len() {
            for x in self.a.objects() {
                ar[self.a.id(x).0] = self.c.id(ob[x.0]);
            }
            return self.arrows(0, ob, ar);
        }
        for k in (self.order)(self.c.num_objects()) {
            let y = ObjId(k);
            ob[i] = y;
            // Prune on arrows whose endpoints are both assigned.
            let x = ObjId(i);
            let feasible = self
                .a
                .arrows_from(x)
                .iter()
                .chain(self.a.arrows_into(x))
                .all(|&f| {
                    let (d, e) = (self.a.dom(f), self.a.cod(f));
                    d.0 > i || e.0 > i || !self.c.hom(ob[d.0], ob[e.0]).is_empty()
                });
            if feasible && !self.objects(i + 1, ob, ar)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn arrows(&mut self, k: usize, ob: &[ObjId], ar: &mut Vec<ArrowId>) -> Result<bool> {
        if k == self.non_id.len() {
            return (self.visit)((ob.to_vec(), ar.clone()));
        }
        let f = self.non_id[k];
        let (d, e) = (ob[self.a.dom(f).0], ob[self.a.cod(f).0]);
        let hom = self.c.hom(d, e);
        for j in (self.order)(hom.len()) {
            ar[f.0] = hom[j];
            let ok = self.checks[k]
                .iter()
                .all(|&(g1, f1, h1)| self.c.compose(ar[g1.0], ar[f1.0]) == ar[h1.0]);
            if ok && !self.arrows(k + 1, ob, ar)? {
                ar[f.0] = ArrowId(usize::MAX);
                return Ok(false);
            }
        }
        ar[f.0] = ArrowId(usize::MAX);
        Ok(true)
    }
}

/// All functors `A -> C` as values.
pub fn enumerate_functors(a: &Arc<FinCat>, c: &Arc<FinCat>, cap: usize) -> Result<Vec<CatFunctor>> {
    Ok(enumerate_functor_tables(a, c, cap)?
        .into_iter()
        .map(|(ob, ar)| CatFunctor::new_unchecked(a.clone(), c.clone(), ob, ar))
        .collect())
}

/// Components `theta_x in Hom(F x, G x)` of every natural transformation
/// `F => G`, lexicographically ordered.
pub fn enumerate_nat_components(
    a: &FinCat,
    c: &FinCat,
    f: &FunctorTable,
    g: &FunctorTable,
) -> Vec<Vec<ArrowId>> {
    fn go(
        x: usize,
        a: &FinCat,
        c: &FinCat,
        f: &FunctorTable,
        g: &FunctorTable,
        cur: &mut Vec<ArrowId>,
        out: &mut Vec<Vec<ArrowId>>,
    ) {
        if x == a.num_objects() {
            out.push(cur.clone());
            return;
        }
        for &t in c.hom(f.0[x], g.0[x]) {
            cur.push(t);
            let natural = a
                .arrows_from(ObjId(x))
                .iter()
                .chain(a.arrows_into(ObjId(x)))
                .all(|&h| {
                    let (d, e) = (a.dom(h), a.cod(h));
                    d.0 > x
                        || e.0 > x
                        || c.compose(g.1[h.0], cur[d.0]) == c.compose(cur[e.0], f.1[h.0])
                });
            if natural {
                go(x + 1, a, c, f, g, cur, out);
            }
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, a, c, f, g, &mut Vec::new(), &mut out);
    out
}

/// The category `[A, C]` of functors and natural transformations, together
/// with the tables needed to translate between its ids and the underlying
/// functors and components.
#[derive(Debug, Clone)]
pub struct FunctorCategory {
    pub cat: Arc<FinCat>,
    pub base: Arc<FinCat>,
    pub target: Arc<FinCat>,
    functors: Vec<FunctorTable>,
    functor_index: HashMap<FunctorTable, ObjId>,
    components: Vec<Vec<ArrowId>>,
    arrow_index: HashMap<(ObjId, ObjId, Vec<ArrowId>), ArrowId>,
}

pub fn functor_category(
    a: &Arc<FinCat>,
    c: &Arc<FinCat>,
    limits: &Limits,
) -> Result<FunctorCategory> {
    let functors = enumerate_functor_tables(a, c, limits.max_objects)?;
    let names: Vec<String> = functors.iter().map(|t| functor_name(a, c, t)).collect();
    let mut arrows = Vec::new();
    let mut components = Vec::new();
    let mut arrow_index = HashMap::new();
    let mut identity = vec![ArrowId(0); functors.len()];
    for (i, f) in functors.iter().enumerate() {
        for (j, g) in functors.iter().enumerate() {
            for comps in enumerate_nat_components(a, c, f, g) {
                let id = ArrowId(arrows.len());
                limits.check_arrows("functor category", id.0 + 1)?;
                if i == j && comps.iter().all(|&t| c.is_identity(t)) {
                    identity[i] = id;
                }
                let parts: Vec<&str> = comps.iter().map(|&t| c.arrow_name(t)).collect();
                arrows.push(ArrowData {
                    name: tuple(&parts),
                    dom: ObjId(i),
                    cod: ObjId(j),
                });
                arrow_index.insert((ObjId(i), ObjId(j), comps.clone()), id);
                components.push(comps);
            }
        }
    }
    uniquify(&mut arrows, &names);
    let cat = FinCat::assemble(names, arrows.clone(), identity, |psi, theta| {
        let comps = components[psi.0]
            .iter()
            .zip(&components[theta.0])
            .map(|(&p, &t)| c.compose(p, t))
            .collect();
        arrow_index[&(arrows[theta.0].dom, arrows[psi.0].cod, comps)]
    });
    let functor_index = functors
        .iter()
        .enumerate()
        .map(|(i, t)| (t.clone(), ObjId(i)))
        .collect();
    Ok(FunctorCategory {
        cat: Arc::new(cat),
        base: a.clone(),
        target: c.clone(),
        functors,
        functor_index,
        components,
        arrow_index,
    })
}

fn functor_name(a: &FinCat, c: &FinCat, t: &FunctorTable) -> String {
    let obs: Vec<&str> = t.0.iter().map(|&y| c.obj_name(y)).collect();
    let ars: Vec<&str> = a
        .non_identity_arrows()
        .map(|f| c.arrow_name(t.1[f.0]))
        .collect();
    if ars.is_empty() {
        format!("[{}]", obs.join(","))
    } else {
        format!("[{};{}]", obs.join(","), ars.join(","))
    }
}

impl FunctorCategory {
    pub fn functor(&self, x: ObjId) -> CatFunctor {
        let (ob, ar) = self.functors[x.0].clone();
        CatFunctor::new_unchecked(self.base.clone(), self.target.clone(), ob, ar)
    }

    pub fn functor_table(&self, x: ObjId) -> &FunctorTable {
        &self.functors[x.0]
    }

    pub fn object_of(&self, f: &CatFunctor) -> Option<ObjId> {
        self.object_of_table(&(f.ob_map().to_vec(), f.ar_map().to_vec()))
    }

    pub fn object_of_table(&self, t: &FunctorTable) -> Option<ObjId> {
        self.functor_index.get(t).copied()
    }

    pub fn components(&self, theta: ArrowId) -> &[ArrowId] {
        &self.components[theta.0]
    }

    pub fn nat(&self, theta: ArrowId) -> NatTransform {
        let (d, e) = (self.cat.dom(theta), self.cat.cod(theta));
        NatTransform::new_unchecked(
            self.functor(d),
            self.functor(e),
            self.components[theta.0].clone(),
        )
    }

    pub fn arrow_of(&self, dom: ObjId, cod: ObjId, comps: &[ArrowId]) -> Option<ArrowId> {
        self.arrow_index.get(&(dom, cod, comps.to_vec())).copied()
    }

    /// Precomposition `k^* : [A2, C] -> [A, C]` along `k : A -> A2`, where
    /// `self` is `[A2, C]` and `onto` is `[A, C]`.
    pub fn precompose(&self, k: &CatFunctor, onto: &FunctorCategory) -> Result<CatFunctor> {
        if **k.dst() != *self.base || **k.src() != *onto.base || *self.target != *onto.target {
            return Err(Error::BoundaryMismatch(
                "precomposition: functor does not match the functor categories".into(),
            ));
        }
        let ob_map = self
            .cat
            .objects()
            .map(|x| {
                let (ob, ar) = &self.functors[x.0];
                let t = (
                    k.ob_map().iter().map(|&y| ob[y.0]).collect(),
                    k.ar_map().iter().map(|&f| ar[f.0]).collect(),
                );
                onto.object_of_table(&t)
                    .expect("restricted functor is enumerated")
            })
            .collect::<Vec<_>>();
        let ar_map = self
            .cat
            .arrows()
            .map(|theta| {
                let comps: Vec<ArrowId> = k
                    .ob_map()
                    .iter()
                    .map(|&y| self.components[theta.0][y.0])
                    .collect();
                let (d, e) = (self.cat.dom(theta), self.cat.cod(theta));
                onto.arrow_of(ob_map[d.0], ob_map[e.0], &comps)
                    .expect("restricted transformation is enumerated")
            })
            .collect();
        Ok(CatFunctor::new_unchecked(
            self.cat.clone(),
            onto.cat.clone(),
            ob_map,
            ar_map,
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::library;

    fn arc(c: FinCat) -> Arc<FinCat> {
        Arc::new(c)
    }

    #[test]
    fn monotone_maps_of_interval() {
        let two = arc(library::interval());
        let fc = functor_category(&two, &two, &Limits::default()).unwrap();
        assert_eq!(fc.cat.num_objects(), 3);
        assert!(fc.cat.check_laws().is_empty());
        assert!(fc.cat.is_thin());
    }

    #[test]
    fn over_point_is_target() {
        let e = arc(FinCat::point());
        let c = arc(library::parallel("a", "b"));
        let fc = functor_category(&e, &c, &Limits::default()).unwrap();
        assert_eq!(fc.cat.num_objects(), c.num_objects());
        assert_eq!(fc.cat.num_arrows(), c.num_arrows());
    }

    #[test]
    fn over_discrete_pair_is_square() {
        let pq = arc(library::discrete(&["p", "q"]));
        let c = arc(library::parallel("a", "b"));
        let fc = functor_category(&pq, &c, &Limits::default()).unwrap();
        assert_eq!(fc.cat.num_objects(), 4);
        assert_eq!(fc.cat.num_arrows(), 16);
    }

    #[test]
    fn enumeration_is_lexicographic_and_capped() {
        let two = library::interval();
        let tables = enumerate_functor_tables(&two, &two, 10).unwrap();
        assert!(tables.windows(2).all(|w| w[0] < w[1]));
        let err = enumerate_functor_tables(&two, &two, 2).unwrap_err();
        assert!(err.is_size_guard());
    }

    #[test]
    fn precompose_along_endpoint() {
        let two = arc(library::interval());
        let e = arc(FinCat::point());
        let c = arc(library::chain(3));
        let big = functor_category(&two, &c, &Limits::default()).unwrap();
        let small = functor_category(&e, &c, &Limits::default()).unwrap();
        let k = CatFunctor::from_point(two.clone(), ObjId(1));
        let kstar = big.precompose(&k, &small).unwrap();
        for x in big.cat.objects() {
            let f = big.functor(x);
            assert_eq!(small.functor(kstar.ob(x)).ob(ObjId(0)), f.ob(ObjId(1)));
        }
    }
}
