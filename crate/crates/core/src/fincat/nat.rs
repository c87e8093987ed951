use std::sync::Arc;

use super::category::{same_cat, ArrowId, FinCat, ObjId};
use super::functor::CatFunctor;
use crate::error::{Error, Result};

/// A natural transformation between parallel functors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NatTransform {
    src: CatFunctor,
    dst: CatFunctor,
    components: Vec<ArrowId>,
}

impl NatTransform {
    /// Checks that the functors are parallel, every component has the right
    /// endpoints, and every naturality square commutes.
    pub fn new(src: CatFunctor, dst: CatFunctor, components: Vec<ArrowId>) -> Result<Self> {
        let t = NatTransform {
            src,
            dst,
            components,
        };
        t.check()?;
        Ok(t)
    }

    pub(crate) fn new_unchecked(
        src: CatFunctor,
        dst: CatFunctor,
        components: Vec<ArrowId>,
    ) -> Self {
        let t = NatTransform {
            src,
            dst,
            components,
        };
        debug_assert!(
            t.check().is_ok(),
            "constructed 2-cell invalid: {:?}",
            t.check()
        );
        t
    }

    fn check(&self) -> Result<()> {
        if !same_cat(self.src.src(), self.dst.src()) || !same_cat(self.src.dst(), self.dst.dst()) {
            return Err(Error::InvalidNatTransform(
                "functors are not parallel".into(),
            ));
        }
        let a = self.src.src();
        let c = self.src.dst();
        if self.components.len() != a.num_objects()
            || self.components.iter().any(|h| h.0 >= c.num_arrows())
        {
            return Err(Error::InvalidNatTransform(
                "component table malformed".into(),
            ));
        }
        for x in a.objects() {
            let h = self.component(x);
            if c.dom(h) != self.src.ob(x) || c.cod(h) != self.dst.ob(x) {
                return Err(Error::InvalidNatTransform(format!(
                    "component at {} is {} which has the wrong endpoints",
                    a.obj_name(x),
                    c.arrow_name(h)
                )));
            }
        }
        for f in a.arrows() {
            let (x, y) = (a.dom(f), a.cod(f));
            let lhs = c.compose(self.dst.ar(f), self.component(x));
            let rhs = c.compose(self.component(y), self.src.ar(f));
            if lhs != rhs {
                return Err(Error::InvalidNatTransform(format!(
                    "naturality fails at {}",
                    a.arrow_name(f)
                )));
            }
        }
        Ok(())
    }

    pub fn identity(f: &CatFunctor) -> Self {
        let components = f.src().objects().map(|x| f.dst().id(f.ob(x))).collect();
        NatTransform {
            src: f.clone(),
            dst: f.clone(),
            components,
        }
    }

    pub fn src(&self) -> &CatFunctor {
        &self.src
    }

    pub fn dst(&self) -> &CatFunctor {
        &self.dst
    }

    pub fn component(&self, x: ObjId) -> ArrowId {
        self.components[x.0]
    }

    pub fn components(&self) -> &[ArrowId] {
        &self.components
    }

    pub fn base(&self) -> &Arc<FinCat> {
        self.src.src()
    }

    pub fn target_cat(&self) -> &Arc<FinCat> {
        self.src.dst()
    }

    pub fn is_identity(&self) -> bool {
        self.src == self.dst
            && self
                .base()
                .objects()
                .all(|x| self.target_cat().is_identity(self.component(x)))
    }

    /// Vertical composite `outer . inner`.
    pub fn vcompose(outer: &NatTransform, inner: &NatTransform) -> Result<NatTransform> {
        if inner.dst != outer.src {
            return Err(Error::BoundaryMismatch(
                "vertical composite of 2-cells: middle functors differ".into(),
            ));
        }
        let c = inner.target_cat();
        let components = inner
            .base()
            .objects()
            .map(|x| c.compose(outer.component(x), inner.component(x)))
            .collect();
        Ok(NatTransform::new_unchecked(
            inner.src.clone(),
            outer.dst.clone(),
            components,
        ))
    }

    /// `h * self`: components `h(alpha_x)`.
    pub fn whisker_left(&self, h: &CatFunctor) -> Result<NatTransform> {
        let src = CatFunctor::compose(h, &self.src)?;
        let dst = CatFunctor::compose(h, &self.dst)?;
        let components = self.components.iter().map(|&a| h.ar(a)).collect();
        Ok(NatTransform::new_unchecked(src, dst, components))
    }

    /// `self * k`: components `alpha_{k(x)}`.
    pub fn whisker_right(&self, k: &CatFunctor) -> Result<NatTransform> {
        let src = CatFunctor::compose(&self.src, k)?;
        let dst = CatFunctor::compose(&self.dst, k)?;
        let components = k.src().objects().map(|x| self.component(k.ob(x))).collect();
        Ok(NatTransform::new_unchecked(src, dst, components))
    }

    /// The opposite 2-cell `op(G) => op(F)` with the same components.
    pub fn op(&self) -> NatTransform {
        let a_op = Arc::new(self.base().opposite());
        let c_op = Arc::new(self.target_cat().opposite());
        self.op_with(a_op, c_op)
    }

    pub fn op_with(&self, base_op: Arc<FinCat>, target_op: Arc<FinCat>) -> NatTransform {
        NatTransform {
            src: self.dst.op_with(base_op.clone(), target_op.clone()),
            dst: self.src.op_with(base_op, target_op),
            components: self.components.clone(),
        }
    }
}
