use std::collections::HashSet;
use std::sync::Arc;

use petgraph::unionfind::UnionFind;

use super::category::{ArrowData, ArrowId, FinCat, ObjId};
use super::functor::CatFunctor;
use super::naming::tuple;
use crate::error::{Error, Result};
use crate::limits::Limits;

impl FinCat {
    /// Same objects and arrow names, with every arrow reversed.
    pub fn opposite(&self) -> FinCat {
        let arrows = self
            .arrow_data()
            .iter()
            .map(|a| ArrowData {
                name: a.name.clone(),
                dom: a.cod,
                cod: a.dom,
            })
            .collect();
        let identity = self.objects().map(|x| self.id(x)).collect();
        FinCat::assemble(self.object_names().to_vec(), arrows, identity, |g, f| {
            self.compose(f, g)
        })
    }
}

/// `A x B` with its two projections.
#[derive(Debug, Clone)]
pub struct Product {
    pub cat: Arc<FinCat>,
    pub pr1: CatFunctor,
    pub pr2: CatFunctor,
}

pub fn product_cat(a: &Arc<FinCat>, b: &Arc<FinCat>, limits: &Limits) -> Result<Product> {
    let (na, nb) = (a.num_objects(), b.num_objects());
    let (ma, mb) = (a.num_arrows(), b.num_arrows());
    limits.check_objects("product", na * nb)?;
    limits.check_arrows("product", ma * mb)?;
    let objects = a
        .objects()
        .flat_map(|x| b.objects().map(move |y| (x, y)))
        .map(|(x, y)| tuple(&[a.obj_name(x), b.obj_name(y)]))
        .collect();
    let mut arrows = Vec::with_capacity(ma * mb);
    for f in a.arrows() {
        for g in b.arrows() {
            arrows.push(ArrowData {
                name: tuple(&[a.arrow_name(f), b.arrow_name(g)]),
                dom: ObjId(a.dom(f).0 * nb + b.dom(g).0),
                cod: ObjId(a.cod(f).0 * nb + b.cod(g).0),
            });
        }
    }
    let identity = a
        .objects()
        .flat_map(|x| b.objects().map(move |y| (x, y)))
        .map(|(x, y)| ArrowId(a.id(x).0 * mb + b.id(y).0))
        .collect();
    let cat = Arc::new(FinCat::assemble(objects, arrows, identity, |h, k| {
        let (f2, g2) = (ArrowId(h.0 / mb), ArrowId(h.0 % mb));
        let (f1, g1) = (ArrowId(k.0 / mb), ArrowId(k.0 % mb));
        ArrowId(a.compose(f2, f1).0 * mb + b.compose(g2, g1).0)
    }));
    let pr1 = CatFunctor::new_unchecked(
        cat.clone(),
        a.clone(),
        (0..na * nb).map(|i| ObjId(i / nb)).collect(),
        (0..ma * mb).map(|i| ArrowId(i / mb)).collect(),
    );
    let pr2 = CatFunctor::new_unchecked(
        cat.clone(),
        b.clone(),
        (0..na * nb).map(|i| ObjId(i % nb)).collect(),
        (0..ma * mb).map(|i| ArrowId(i % mb)).collect(),
    );
    Ok(Product { cat, pr1, pr2 })
}

/// `A + B` with its two injections.
#[derive(Debug, Clone)]
pub struct Coproduct {
    pub cat: Arc<FinCat>,
    pub in1: CatFunctor,
    pub in2: CatFunctor,
}

/// Names are kept when the two sides share no object or arrow name and are
/// tagged `(0,x)` / `(1,x)` otherwise.
pub fn coproduct_cat(a: &Arc<FinCat>, b: &Arc<FinCat>, limits: &Limits) -> Result<Coproduct> {
    let (na, ma) = (a.num_objects(), a.num_arrows());
    limits.check_objects("coproduct", na + b.num_objects())?;
    limits.check_arrows("coproduct", ma + b.num_arrows())?;
    let a_names: HashSet<&str> = a
        .object_names()
        .iter()
        .map(String::as_str)
        .chain(a.arrow_data().iter().map(|d| d.name.as_str()))
        .collect();
    let clash = b
        .object_names()
        .iter()
        .map(String::as_str)
        .chain(b.arrow_data().iter().map(|d| d.name.as_str()))
        .any(|n| a_names.contains(n));
    let tag = |side: usize, n: &str| {
        if clash {
            tuple(&[side.to_string().as_str(), n])
        } else {
            n.to_string()
        }
    };
    let objects = a
        .object_names()
        .iter()
        .map(|n| tag(0, n))
        .chain(b.object_names().iter().map(|n| tag(1, n)))
        .collect();
    let arrows = a
        .arrow_data()
        .iter()
        .map(|d| ArrowData {
            name: tag(0, &d.name),
            dom: d.dom,
            cod: d.cod,
        })
        .chain(b.arrow_data().iter().map(|d| ArrowData {
            name: tag(1, &d.name),
            dom: ObjId(d.dom.0 + na),
            cod: ObjId(d.cod.0 + na),
        }))
        .collect();
    let identity = a
        .objects()
        .map(|x| a.id(x))
        .chain(b.objects().map(|y| ArrowId(b.id(y).0 + ma)))
        .collect();
    let cat = Arc::new(FinCat::assemble(objects, arrows, identity, |g, f| {
        if g.0 < ma {
            a.compose(g, f)
        } else {
            ArrowId(b.compose(ArrowId(g.0 - ma), ArrowId(f.0 - ma)).0 + ma)
        }
    }));
    let in1 = CatFunctor::new_unchecked(
        a.clone(),
        cat.clone(),
        a.objects().collect(),
        a.arrows().collect(),
    );
    let in2 = CatFunctor::new_unchecked(
        b.clone(),
        cat.clone(),
        b.objects().map(|y| ObjId(y.0 + na)).collect(),
        b.arrows().map(|g| ArrowId(g.0 + ma)).collect(),
    );
    Ok(Coproduct { cat, in1, in2 })
}

/// Connected components: classes ordered by their least object, each class
/// listed in declaration order.
pub fn connected_components(c: &FinCat) -> Vec<Vec<ObjId>> {
    let n = c.num_objects();
    let mut uf = UnionFind::<usize>::new(n);
    for f in c.arrows() {
        uf.union(c.dom(f).0, c.cod(f).0);
    }
    let mut class_of_root = vec![usize::MAX; n];
    let mut classes: Vec<Vec<ObjId>> = Vec::new();
    for x in 0..n {
        let r = uf.find(x);
        if class_of_root[r] == usize::MAX {
            class_of_root[r] = classes.len();
            classes.push(Vec::new());
        }
        classes[class_of_root[r]].push(ObjId(x));
    }
    classes
}

/// For each object, the index of its class in [`connected_components`].
pub fn component_labels(c: &FinCat) -> (usize, Vec<usize>) {
    let classes = connected_components(c);
    let mut label = vec![0; c.num_objects()];
    for (i, class) in classes.iter().enumerate() {
        for x in class {
            label[x.0] = i;
        }
    }
    (classes.len(), label)
}

/// Objects `x` with exactly one arrow `y -> x` from every `y`.
pub fn terminal_objects(c: &FinCat) -> Vec<ObjId> {
    c.objects()
        .filter(|&x| c.objects().all(|y| c.hom(y, x).len() == 1))
        .collect()
}

/// Objects `x` with exactly one arrow `x -> y` to every `y`.
pub fn initial_objects(c: &FinCat) -> Vec<ObjId> {
    c.objects()
        .filter(|&x| c.objects().all(|y| c.hom(x, y).len() == 1))
        .collect()
}

pub fn is_invertible(c: &FinCat, f: ArrowId) -> Result<bool> {
    if f.0 >= c.num_arrows() {
        return Err(Error::UnknownArrow(format!("#{}", f.0)));
    }
    Ok(inverse(c, f).is_some())
}

pub fn inverse(c: &FinCat, f: ArrowId) -> Option<ArrowId> {
    let (x, y) = (c.dom(f), c.cod(f));
    c.hom(y, x)
        .iter()
        .copied()
        .find(|&g| c.compose(g, f) == c.id(x) && c.compose(f, g) == c.id(y))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::library;

    fn arc(c: FinCat) -> Arc<FinCat> {
        Arc::new(c)
    }

    #[test]
    fn opposite_of_point_and_involution() {
        assert_eq!(FinCat::point().opposite(), FinCat::point());
        let two = library::interval();
        assert_eq!(two.opposite().opposite(), two);
        let iso = library::iso_groupoid();
        assert_eq!(iso.opposite().opposite(), iso);
    }

    #[test]
    fn opposite_of_parallel_pair_reverses_both_arrows() {
        let p = library::parallel("a", "b").opposite();
        let (zero, one) = (p.obj("0").unwrap(), p.obj("1").unwrap());
        assert_eq!(p.hom(one, zero).len(), 2);
        assert!(p.hom(zero, one).is_empty());
    }

    #[test]
    fn product_sizes() {
        let two = arc(library::interval());
        let p = product_cat(&two, &two, &Limits::default()).unwrap();
        assert_eq!(p.cat.num_objects(), 4);
        assert_eq!(p.cat.num_arrows(), 9);
        assert!(p.cat.check_laws().is_empty());
        let e = arc(FinCat::point());
        let eb = product_cat(&e, &two, &Limits::default()).unwrap();
        assert!(eb.pr2.is_isomorphism());
    }

    #[test]
    fn product_respects_arrow_budget() {
        let two = arc(library::interval());
        let limits = Limits {
            max_arrows: 8,
            ..Limits::default()
        };
        let err = product_cat(&two, &two, &limits).unwrap_err();
        assert!(err.is_size_guard());
    }

    #[test]
    fn coproduct_of_discrete() {
        let pq = arc(library::discrete(&["p", "q"]));
        let r = arc(library::discrete(&["r"]));
        let s = coproduct_cat(&pq, &r, &Limits::default()).unwrap();
        assert_eq!(*s.cat, library::discrete(&["p", "q", "r"]));
        let e = arc(FinCat::point());
        let ee = coproduct_cat(&e, &e, &Limits::default()).unwrap();
        assert_eq!(
            ee.cat.object_names(),
            &["(0,•)".to_string(), "(1,•)".to_string()]
        );
        assert_eq!(connected_components(&ee.cat).len(), 2);
    }

    #[test]
    fn components() {
        assert_eq!(connected_components(&library::interval()).len(), 1);
        assert_eq!(
            connected_components(&library::discrete(&["p", "q"])).len(),
            2
        );
        assert!(connected_components(&FinCat::empty()).is_empty());
    }

    #[test]
    fn terminal_and_initial() {
        let two = library::interval();
        assert_eq!(terminal_objects(&two), vec![ObjId(1)]);
        assert_eq!(initial_objects(&two), vec![ObjId(0)]);
        assert!(terminal_objects(&library::parallel("a", "b")).is_empty());
        for c in [two, library::iso_groupoid(), library::chain(3)] {
            assert_eq!(initial_objects(&c), terminal_objects(&c.opposite()));
        }
    }

    #[test]
    fn invertibility() {
        let two = library::interval();
        assert!(is_invertible(&two, two.id(ObjId(0))).unwrap());
        assert!(!is_invertible(&two, two.arrow("t").unwrap()).unwrap());
        let iso = library::iso_groupoid();
        assert!(iso.arrows().all(|f| is_invertible(&iso, f).unwrap()));
        assert!(is_invertible(&two, ArrowId(99)).is_err());
    }
}
