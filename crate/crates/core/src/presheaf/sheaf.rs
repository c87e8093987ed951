use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fincat::{same_cat, ArrowId, CatFunctor, FinCat, ObjId};

/// A presheaf of finite sets on `A`: a set per object and, for every arrow
/// `f : x -> y`, a map `F(y) -> F(x)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presheaf {
    base: Arc<FinCat>,
    sets: Vec<Vec<String>>,
    /// `act[f][j]` is the image of element `j` of `F(cod f)` in `F(dom f)`.
    act: Vec<Vec<usize>>,
}

impl Presheaf {
    /// Checks table shapes, identities and contravariant functoriality.
    pub fn new(base: Arc<FinCat>, sets: Vec<Vec<String>>, act: Vec<Vec<usize>>) -> Result<Self> {
        let p = Presheaf { base, sets, act };
        p.check()?;
        Ok(p)
    }

    pub(crate) fn new_unchecked(
        base: Arc<FinCat>,
        sets: Vec<Vec<String>>,
        act: Vec<Vec<usize>>,
    ) -> Self {
        let p = Presheaf { base, sets, act };
        debug_assert!(
            p.check().is_ok(),
            "constructed presheaf invalid: {:?}",
            p.check()
        );
        p
    }

    fn check(&self) -> Result<()> {
        let a = &*self.base;
        let bad = |m: String| Err(Error::InvalidPresheaf(m));
        if self.sets.len() != a.num_objects() || self.act.len() != a.num_arrows() {
            return bad("table sizes do not match the base".into());
        }
        for x in a.objects() {
            let mut seen = std::collections::HashSet::new();
            if let Some(dup) = self.sets[x.0].iter().find(|e| !seen.insert(*e)) {
                return bad(format!("duplicate element {dup} at {}", a.obj_name(x)));
            }
        }
        for f in a.arrows() {
            let (x, y) = (a.dom(f), a.cod(f));
            let m = &self.act[f.0];
            if m.len() != self.size(y) || m.iter().any(|&i| i >= self.size(x)) {
                return bad(format!(
                    "action of {} is not a map F(cod) -> F(dom)",
                    a.arrow_name(f)
                ));
            }
        }
        for x in a.objects() {
            if self.act[a.id(x).0].iter().enumerate().any(|(i, &j)| i != j) {
                return bad(format!("identity of {} acts nontrivially", a.obj_name(x)));
            }
        }
        for g in a.arrows() {
            for &f in a.arrows_into(a.dom(g)) {
                let gf = a.compose(g, f);
                let ok = (0..self.size(a.cod(g)))
                    .all(|z| self.act[f.0][self.act[g.0][z]] == self.act[gf.0][z]);
                if !ok {
                    return bad(format!(
                        "action of {}.{} differs from the composite action",
                        a.arrow_name(g),
                        a.arrow_name(f)
                    ));
                }
            }
        }
        Ok(())
    }

    /// Builds a presheaf from element names. `act` lists `(f, [(x, y)])`
    /// meaning `F(f)(y) = x`; identity actions are implicit.
    pub fn from_names<S: AsRef<str>>(
        base: Arc<FinCat>,
        sets: &[(S, Vec<S>)],
        act: &[(S, Vec<(S, S)>)],
    ) -> Result<Self> {
        let a = base.clone();
        let mut table: Vec<Option<Vec<String>>> = vec![None; a.num_objects()];
        for (o, elems) in sets {
            let x = a
                .obj(o.as_ref())
                .ok_or_else(|| Error::UnknownObject(o.as_ref().to_string()))?;
            table[x.0] = Some(elems.iter().map(|e| e.as_ref().to_string()).collect());
        }
        let sets: Vec<Vec<String>> = table
            .into_iter()
            .enumerate()
            .map(|(i, s)| {
                s.ok_or_else(|| {
                    Error::InvalidPresheaf(format!("no set given for {}", a.obj_name(ObjId(i))))
                })
            })
            .collect::<Result<_>>()?;
        let index: Vec<HashMap<&str, usize>> = sets
            .iter()
            .map(|s| s.iter().enumerate().map(|(i, e)| (e.as_str(), i)).collect())
            .collect();
        let mut maps: Vec<Option<Vec<usize>>> = vec![None; a.num_arrows()];
        for x in a.objects() {
            maps[a.id(x).0] = Some((0..sets[x.0].len()).collect());
        }
        for (fname, pairs) in act {
            let f = a
                .arrow(fname.as_ref())
                .ok_or_else(|| Error::UnknownArrow(fname.as_ref().to_string()))?;
            let (x, y) = (a.dom(f), a.cod(f));
            let mut m = vec![usize::MAX; sets[y.0].len()];
            for (img, src) in pairs {
                let lookup = |o: ObjId, e: &str| {
                    index[o.0].get(e).copied().ok_or_else(|| {
                        Error::InvalidPresheaf(format!(
                            "{e} is not an element at {} (action of {})",
                            a.obj_name(o),
                            a.arrow_name(f)
                        ))
                    })
                };
                m[lookup(y, src.as_ref())?] = lookup(x, img.as_ref())?;
            }
            if let Some(j) = m.iter().position(|&i| i == usize::MAX) {
                return Err(Error::InvalidPresheaf(format!(
                    "action of {} undefined on {}",
                    a.arrow_name(f),
                    sets[y.0][j]
                )));
            }
            maps[f.0] = Some(m);
        }
        let act = maps
            .into_iter()
            .enumerate()
            .map(|(i, m)| {
                m.ok_or_else(|| {
                    Error::InvalidPresheaf(format!(
                        "no action given for {}",
                        a.arrow_name(ArrowId(i))
                    ))
                })
            })
            .collect::<Result<_>>()?;
        Presheaf::new(base, sets, act)
    }

    /// The constant presheaf with value `elems`.
    pub fn constant<S: AsRef<str>>(base: Arc<FinCat>, elems: &[S]) -> Self {
        let set: Vec<String> = elems.iter().map(|e| e.as_ref().to_string()).collect();
        let n = set.len();
        let sets = vec![set; base.num_objects()];
        let act = vec![(0..n).collect(); base.num_arrows()];
        Presheaf::new_unchecked(base, sets, act)
    }

    /// The canonical `n`-element constant presheaf with elements `0..n`.
    pub fn constant_n(base: Arc<FinCat>, n: usize) -> Self {
        let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        Presheaf::constant(base, &names)
    }

    pub fn base(&self) -> &Arc<FinCat> {
        &self.base
    }

    pub fn size(&self, x: ObjId) -> usize {
        self.sets[x.0].len()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.sets.iter().map(Vec::len).collect()
    }

    pub fn set(&self, x: ObjId) -> &[String] {
        &self.sets[x.0]
    }

    pub fn sets(&self) -> &[Vec<String>] {
        &self.sets
    }

    pub fn element(&self, x: ObjId, i: usize) -> &str {
        &self.sets[x.0][i]
    }

    /// `F(f)(j)` for `j` in `F(cod f)`.
    pub fn act(&self, f: ArrowId, j: usize) -> usize {
        self.act[f.0][j]
    }

    pub fn action(&self, f: ArrowId) -> &[usize] {
        &self.act[f.0]
    }

    pub fn total_size(&self) -> usize {
        self.sets.iter().map(Vec::len).sum()
    }
}

/// `Hom_A(-, a)`; elements are arrow names.
pub fn representable(a: &Arc<FinCat>, x: ObjId) -> Presheaf {
    let sets: Vec<Vec<String>> = a
        .objects()
        .map(|y| {
            a.hom(y, x)
                .iter()
                .map(|&f| a.arrow_name(f).to_string())
                .collect()
        })
        .collect();
    let pos: HashMap<ArrowId, usize> = a
        .objects()
        .flat_map(|y| a.hom(y, x).iter().enumerate().map(|(i, &f)| (f, i)))
        .collect();
    let act = a
        .arrows()
        .map(|f| {
            a.hom(a.cod(f), x)
                .iter()
                .map(|&h| pos[&a.compose(h, f)])
                .collect()
        })
        .collect();
    Presheaf::new_unchecked(a.clone(), sets, act)
}

/// `u^* G = G.u`.
pub fn restrict(u: &CatFunctor, g: &Presheaf) -> Result<Presheaf> {
    if !same_cat(u.dst(), g.base()) {
        return Err(Error::BaseMismatch(
            "restriction: presheaf does not live on the target of the functor".into(),
        ));
    }
    let a = u.src();
    let sets = a.objects().map(|x| g.set(u.ob(x)).to_vec()).collect();
    let act = a.arrows().map(|f| g.action(u.ar(f)).to_vec()).collect();
    Ok(Presheaf::new_unchecked(a.clone(), sets, act))
}

/// A natural map of presheaves on the same base.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PresheafMorphism {
    src: Presheaf,
    dst: Presheaf,
    comps: Vec<Vec<usize>>,
}

impl PresheafMorphism {
    pub fn new(src: Presheaf, dst: Presheaf, comps: Vec<Vec<usize>>) -> Result<Self> {
        let m = PresheafMorphism { src, dst, comps };
        m.check()?;
        Ok(m)
    }

    pub(crate) fn new_unchecked(src: Presheaf, dst: Presheaf, comps: Vec<Vec<usize>>) -> Self {
        let m = PresheafMorphism { src, dst, comps };
        debug_assert!(
            m.check().is_ok(),
            "constructed morphism invalid: {:?}",
            m.check()
        );
        m
    }

    fn check(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidPresheaf(m.to_string()));
        if !same_cat(self.src.base(), self.dst.base()) {
            return Err(Error::BaseMismatch(
                "morphism between presheaves on different bases".into(),
            ));
        }
        let a = self.src.base();
        if self.comps.len() != a.num_objects() {
            return bad("component table malformed");
        }
        for x in a.objects() {
            let c = &self.comps[x.0];
            if c.len() != self.src.size(x) || c.iter().any(|&j| j >= self.dst.size(x)) {
                return bad("component is not a map F(x) -> G(x)");
            }
        }
        for f in a.arrows() {
            let (x, y) = (a.dom(f), a.cod(f));
            let natural = (0..self.src.size(y)).all(|j| {
                self.comps[x.0][self.src.act(f, j)] == self.dst.act(f, self.comps[y.0][j])
            });
            if !natural {
                return Err(Error::InvalidPresheaf(format!(
                    "naturality fails at {}",
                    a.arrow_name(f)
                )));
            }
        }
        Ok(())
    }

    pub fn identity(p: &Presheaf) -> Self {
        let comps = p.sets.iter().map(|s| (0..s.len()).collect()).collect();
        PresheafMorphism {
            src: p.clone(),
            dst: p.clone(),
            comps,
        }
    }

    pub fn src(&self) -> &Presheaf {
        &self.src
    }

    pub fn dst(&self) -> &Presheaf {
        &self.dst
    }

    pub fn component(&self, x: ObjId) -> &[usize] {
        &self.comps[x.0]
    }

    pub fn components(&self) -> &[Vec<usize>] {
        &self.comps
    }

    /// `outer . inner`.
    pub fn compose(outer: &PresheafMorphism, inner: &PresheafMorphism) -> Result<Self> {
        if inner.dst != outer.src {
            return Err(Error::BoundaryMismatch(
                "presheaf morphisms do not compose".into(),
            ));
        }
        let comps = inner
            .comps
            .iter()
            .zip(&outer.comps)
            .map(|(i, o)| i.iter().map(|&j| o[j]).collect())
            .collect();
        Ok(PresheafMorphism::new_unchecked(
            inner.src.clone(),
            outer.dst.clone(),
            comps,
        ))
    }

    /// Every component is a bijection.
    pub fn is_iso(&self) -> bool {
        self.src
            .base()
            .objects()
            .all(|x| is_bijection(&self.comps[x.0], self.dst.size(x)))
    }

    /// Objects at which the component is not a bijection.
    pub fn non_iso_objects(&self) -> Vec<ObjId> {
        self.src
            .base()
            .objects()
            .filter(|&x| !is_bijection(&self.comps[x.0], self.dst.size(x)))
            .collect()
    }

    /// The inverse morphism, when every component is bijective.
    pub fn inverse(&self) -> Option<PresheafMorphism> {
        if !self.is_iso() {
            return None;
        }
        let comps = self
            .comps
            .iter()
            .map(|c| {
                let mut inv = vec![0; c.len()];
                for (i, &j) in c.iter().enumerate() {
                    inv[j] = i;
                }
                inv
            })
            .collect();
        PresheafMorphism::new(self.dst.clone(), self.src.clone(), comps).ok()
    }
}

pub(crate) fn is_bijection(m: &[usize], n: usize) -> bool {
    if m.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    m.iter().all(|&j| !std::mem::replace(&mut seen[j], true))
}

/// Every natural map `F -> G`, in lexicographic order of components.
pub fn hom_set(f: &Presheaf, g: &Presheaf, cap: usize) -> Result<Vec<PresheafMorphism>> {
    if !same_cat(f.base(), g.base()) {
        return Err(Error::BaseMismatch(
            "hom set between presheaves on different bases".into(),
        ));
    }
    let a = f.base().clone();
    let mut out: Vec<Vec<Vec<usize>>> = Vec::new();
    let mut cur: Vec<Vec<usize>> = Vec::new();
    fn objects(
        x: usize,
        a: &FinCat,
        f: &Presheaf,
        g: &Presheaf,
        cur: &mut Vec<Vec<usize>>,
        out: &mut Vec<Vec<Vec<usize>>>,
        cap: usize,
    ) -> Result<()> {
        if x == a.num_objects() {
            if out.len() == cap {
                return Err(Error::SizeGuardExceeded {
                    what: "presheaf hom set".into(),
                    limit: cap,
                });
            }
            out.push(cur.clone());
            return Ok(());
        }
        let (n, m) = (f.size(ObjId(x)), g.size(ObjId(x)));
        let mut map = vec![0usize; n];
        loop {
            cur.push(map.clone());
            let natural = a
                .arrows_from(ObjId(x))
                .iter()
                .chain(a.arrows_into(ObjId(x)))
                .all(|&h| {
                    let (d, e) = (a.dom(h), a.cod(h));
                    d.0 > x
                        || e.0 > x
                        || (0..f.size(e)).all(|j| cur[d.0][f.act(h, j)] == g.act(h, cur[e.0][j]))
                });
            if natural {
                objects(x + 1, a, f, g, cur, out, cap)?;
            }
            cur.pop();
            // Next map in lexicographic order.
            let mut k = n;
            loop {
                if k == 0 {
                    return Ok(());
                }
                k -= 1;
                if map[k] + 1 < m {
                    map[k] += 1;
                    for z in &mut map[k + 1..] {
                        *z = 0;
                    }
                    break;
                }
            }
        }
    }
    // A nonempty set with an empty target has no maps.
    if a.objects().any(|x| f.size(x) > 0 && g.size(x) == 0) {
        return Ok(Vec::new());
    }
    objects(0, &a, f, g, &mut cur, &mut out, cap)?;
    Ok(out
        .into_iter()
        .map(|c| PresheafMorphism::new_unchecked(f.clone(), g.clone(), c))
        .collect())
}
