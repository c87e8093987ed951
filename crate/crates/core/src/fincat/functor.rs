use std::fmt;
use std::sync::Arc;

use super::category::{same_cat, ArrowId, FinCat, ObjId};
use crate::error::{Error, Result};

/// A functor between finite categories, fully tabulated.
#[derive(Clone)]
pub struct CatFunctor {
    src: Arc<FinCat>,
    dst: Arc<FinCat>,
    ob_map: Vec<ObjId>,
    ar_map: Vec<ArrowId>,
}

impl PartialEq for CatFunctor {
    fn eq(&self, other: &Self) -> bool {
        self.ob_map == other.ob_map
            && self.ar_map == other.ar_map
            && same_cat(&self.src, &other.src)
            && same_cat(&self.dst, &other.dst)
    }
}

impl Eq for CatFunctor {}

impl fmt::Debug for CatFunctor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let obs: Vec<String> = self
            .src
            .objects()
            .map(|x| {
                format!(
                    "{} |-> {}",
                    self.src.obj_name(x),
                    self.dst.obj_name(self.ob(x))
                )
            })
            .collect();
        f.debug_struct("CatFunctor").field("ob", &obs).finish()
    }
}

impl CatFunctor {
    /// Checks every functor law exhaustively.
    pub fn new(
        src: Arc<FinCat>,
        dst: Arc<FinCat>,
        ob_map: Vec<ObjId>,
        ar_map: Vec<ArrowId>,
    ) -> Result<Self> {
        let f = CatFunctor {
            src,
            dst,
            ob_map,
            ar_map,
        };
        f.check()?;
        Ok(f)
    }

    pub(crate) fn new_unchecked(
        src: Arc<FinCat>,
        dst: Arc<FinCat>,
        ob_map: Vec<ObjId>,
        ar_map: Vec<ArrowId>,
    ) -> Self {
        let f = CatFunctor {
            src,
            dst,
            ob_map,
            ar_map,
        };
        debug_assert!(
            f.src.num_arrows() > 5000 || f.check().is_ok(),
            "constructed functor invalid: {:?}",
            f.check()
        );
        f
    }

    /// Builds a functor from name pairs. Identity arrows not listed are sent
    /// to the identity of the image object.
    pub fn from_names<S: AsRef<str>>(
        src: Arc<FinCat>,
        dst: Arc<FinCat>,
        ob: &[(S, S)],
        ar: &[(S, S)],
    ) -> Result<Self> {
        let mut ob_map = vec![None; src.num_objects()];
        for (a, b) in ob {
            let x = src
                .obj(a.as_ref())
                .ok_or_else(|| Error::UnknownObject(a.as_ref().to_string()))?;
            let y = dst
                .obj(b.as_ref())
                .ok_or_else(|| Error::UnknownObject(b.as_ref().to_string()))?;
            ob_map[x.0] = Some(y);
        }
        let ob_map: Vec<ObjId> = ob_map
            .into_iter()
            .enumerate()
            .map(|(i, y)| {
                y.ok_or_else(|| {
                    Error::InvalidFunctor(format!("object {} has no image", src.obj_name(ObjId(i))))
                })
            })
            .collect::<Result<_>>()?;
        let mut ar_map = vec![None; src.num_arrows()];
        for (f, g) in ar {
            let a = src
                .arrow(f.as_ref())
                .ok_or_else(|| Error::UnknownArrow(f.as_ref().to_string()))?;
            let b = dst
                .arrow(g.as_ref())
                .ok_or_else(|| Error::UnknownArrow(g.as_ref().to_string()))?;
            ar_map[a.0] = Some(b);
        }
        let ar_map: Vec<ArrowId> = ar_map
            .into_iter()
            .enumerate()
            .map(|(i, g)| {
                let f = ArrowId(i);
                match g {
                    Some(g) => Ok(g),
                    None if src.is_identity(f) => Ok(dst.id(ob_map[src.dom(f).0])),
                    None => Err(Error::InvalidFunctor(format!(
                        "arrow {} has no image",
                        src.arrow_name(f)
                    ))),
                }
            })
            .collect::<Result<_>>()?;
        CatFunctor::new(src, dst, ob_map, ar_map)
    }

    fn check(&self) -> Result<()> {
        let (s, d) = (&*self.src, &*self.dst);
        if self.ob_map.len() != s.num_objects() || self.ar_map.len() != s.num_arrows() {
            return Err(Error::InvalidFunctor(
                "table sizes do not match source".into(),
            ));
        }
        if self.ob_map.iter().any(|y| y.0 >= d.num_objects())
            || self.ar_map.iter().any(|g| g.0 >= d.num_arrows())
        {
            return Err(Error::InvalidFunctor("image out of range".into()));
        }
        for f in s.arrows() {
            let g = self.ar(f);
            if d.dom(g) != self.ob(s.dom(f)) || d.cod(g) != self.ob(s.cod(f)) {
                return Err(Error::InvalidFunctor(format!(
                    "arrow {} mapped to {} which has the wrong endpoints",
                    s.arrow_name(f),
                    d.arrow_name(g)
                )));
            }
        }
        for x in s.objects() {
            if self.ar(s.id(x)) != d.id(self.ob(x)) {
                return Err(Error::InvalidFunctor(format!(
                    "identity of {} not preserved",
                    s.obj_name(x)
                )));
            }
        }
        for g in s.arrows() {
            for &f in s.arrows_into(s.dom(g)) {
                if self.ar(s.compose(g, f)) != d.compose(self.ar(g), self.ar(f)) {
                    return Err(Error::InvalidFunctor(format!(
                        "composite {}.{} not preserved",
                        s.arrow_name(g),
                        s.arrow_name(f)
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn identity(cat: Arc<FinCat>) -> Self {
        let ob_map = cat.objects().collect();
        let ar_map = cat.arrows().collect();
        CatFunctor {
            src: cat.clone(),
            dst: cat,
            ob_map,
            ar_map,
        }
    }

    /// Constant functor at `y`.
    pub fn constant(src: Arc<FinCat>, dst: Arc<FinCat>, y: ObjId) -> Self {
        let ob_map = vec![y; src.num_objects()];
        let ar_map = vec![dst.id(y); src.num_arrows()];
        CatFunctor {
            src,
            dst,
            ob_map,
            ar_map,
        }
    }

    /// The functor `e -> dst` picking the object `y`.
    pub fn from_point(dst: Arc<FinCat>, y: ObjId) -> Self {
        Self::constant(Arc::new(FinCat::point()), dst, y)
    }

    /// The unique functor `src -> e`.
    pub fn to_point(src: Arc<FinCat>) -> Self {
        Self::constant(src, Arc::new(FinCat::point()), ObjId(0))
    }

    pub fn src(&self) -> &Arc<FinCat> {
        &self.src
    }

    pub fn dst(&self) -> &Arc<FinCat> {
        &self.dst
    }

    pub fn ob(&self, x: ObjId) -> ObjId {
        self.ob_map[x.0]
    }

    pub fn ar(&self, f: ArrowId) -> ArrowId {
        self.ar_map[f.0]
    }

    pub fn ob_map(&self) -> &[ObjId] {
        &self.ob_map
    }

    pub fn ar_map(&self) -> &[ArrowId] {
        &self.ar_map
    }

    /// `outer.inner`, i.e. first `inner` then `outer`.
    pub fn compose(outer: &CatFunctor, inner: &CatFunctor) -> Result<CatFunctor> {
        if !same_cat(&inner.dst, &outer.src) {
            return Err(Error::BoundaryMismatch(
                "composite functor: target of the inner functor differs from source of the outer"
                    .into(),
            ));
        }
        Ok(CatFunctor {
            src: inner.src.clone(),
            dst: outer.dst.clone(),
            ob_map: inner.ob_map.iter().map(|&x| outer.ob(x)).collect(),
            ar_map: inner.ar_map.iter().map(|&f| outer.ar(f)).collect(),
        })
    }

    /// Same maps, viewed between the opposite categories.
    pub fn op(&self) -> CatFunctor {
        CatFunctor {
            src: Arc::new(self.src.opposite()),
            dst: Arc::new(self.dst.opposite()),
            ob_map: self.ob_map.clone(),
            ar_map: self.ar_map.clone(),
        }
    }

    /// `op` with already-built opposite categories, avoiding rebuilding them.
    pub fn op_with(&self, src_op: Arc<FinCat>, dst_op: Arc<FinCat>) -> CatFunctor {
        CatFunctor {
            src: src_op,
            dst: dst_op,
            ob_map: self.ob_map.clone(),
            ar_map: self.ar_map.clone(),
        }
    }

    pub fn with_categories(&self, src: Arc<FinCat>, dst: Arc<FinCat>) -> CatFunctor {
        debug_assert!(*src == *self.src && *dst == *self.dst);
        CatFunctor {
            src,
            dst,
            ob_map: self.ob_map.clone(),
            ar_map: self.ar_map.clone(),
        }
    }

    pub fn is_identity(&self) -> bool {
        same_cat(&self.src, &self.dst)
            && self.ob_map.iter().enumerate().all(|(i, y)| y.0 == i)
            && self.ar_map.iter().enumerate().all(|(i, g)| g.0 == i)
    }

    /// Bijective on objects and on arrows.
    pub fn is_isomorphism(&self) -> bool {
        let bij = |m: &[usize], n: usize| {
            if m.len() != n {
                return false;
            }
            let mut seen = vec![false; n];
            m.iter().all(|&i| !std::mem::replace(&mut seen[i], true))
        };
        let obs: Vec<usize> = self.ob_map.iter().map(|x| x.0).collect();
        let ars: Vec<usize> = self.ar_map.iter().map(|x| x.0).collect();
        bij(&obs, self.dst.num_objects()) && bij(&ars, self.dst.num_arrows())
    }
}
