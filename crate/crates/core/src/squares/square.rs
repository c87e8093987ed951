use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fincat::{same_cat, CatFunctor, FinCat, NatTransform};

/// A square of categories
///
/// ```text
///        v
///   A' ----> A
///   |        |
/// u'|   =>   | u
///   v        v
///   B' ----> B
///        w
/// ```
///
/// with a 2-cell `alpha : u.v => w.u'`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoSquare {
    v: CatFunctor,
    u: CatFunctor,
    u_prime: CatFunctor,
    w: CatFunctor,
    alpha: NatTransform,
}

impl TwoSquare {
    /// Checks that the four functors fit together and that `alpha` goes
    /// exactly from `u.v` to `w.u'`.
    pub fn new(
        v: CatFunctor,
        u: CatFunctor,
        u_prime: CatFunctor,
        w: CatFunctor,
        alpha: NatTransform,
    ) -> Result<Self> {
        let corner = |ok: bool, what: &str| {
            if ok {
                Ok(())
            } else {
                Err(Error::InvalidSquare(format!(
                    "{what} do not share a corner"
                )))
            }
        };
        corner(same_cat(v.src(), u_prime.src()), "v and u'")?;
        corner(same_cat(v.dst(), u.src()), "v and u")?;
        corner(same_cat(u_prime.dst(), w.src()), "u' and w")?;
        corner(same_cat(u.dst(), w.dst()), "u and w")?;
        let uv = CatFunctor::compose(&u, &v)?;
        let wu = CatFunctor::compose(&w, &u_prime)?;
        if *alpha.src() != uv {
            return Err(Error::InvalidSquare("2-cell source is not u.v".into()));
        }
        if *alpha.dst() != wu {
            return Err(Error::InvalidSquare("2-cell target is not w.u'".into()));
        }
        Ok(TwoSquare {
            v,
            u,
            u_prime,
            w,
            alpha,
        })
    }

    pub(crate) fn new_unchecked(
        v: CatFunctor,
        u: CatFunctor,
        u_prime: CatFunctor,
        w: CatFunctor,
        alpha: NatTransform,
    ) -> Self {
        let s = TwoSquare {
            v,
            u,
            u_prime,
            w,
            alpha,
        };
        debug_assert!(
            TwoSquare::new(
                s.v.clone(),
                s.u.clone(),
                s.u_prime.clone(),
                s.w.clone(),
                s.alpha.clone()
            )
            .is_ok(),
            "constructed square invalid"
        );
        s
    }

    /// A commutative square `w.u' = u.v` with identity 2-cell.
    pub fn commutative(
        v: CatFunctor,
        u: CatFunctor,
        u_prime: CatFunctor,
        w: CatFunctor,
    ) -> Result<Self> {
        let uv = CatFunctor::compose(&u, &v)?;
        let wu = CatFunctor::compose(&w, &u_prime)?;
        if uv.ob_map() != wu.ob_map() || uv.ar_map() != wu.ar_map() {
            return Err(Error::InvalidSquare("square does not commute".into()));
        }
        let alpha = NatTransform::identity(&uv);
        let alpha = NatTransform::new(alpha.src().clone(), wu, alpha.components().to_vec())?;
        TwoSquare::new(v, u, u_prime, w, alpha)
    }

    /// All four sides identities on `a`.
    pub fn identity(a: Arc<FinCat>) -> Self {
        let id = CatFunctor::identity(a);
        let alpha = NatTransform::identity(&id);
        TwoSquare::new_unchecked(id.clone(), id.clone(), id.clone(), id, alpha)
    }

    /// Horizontal unit for `u`: identities across, `u` on both verticals.
    pub fn trivial_h(u: &CatFunctor) -> Self {
        let ia = CatFunctor::identity(u.src().clone());
        let ib = CatFunctor::identity(u.dst().clone());
        TwoSquare::new_unchecked(ia, u.clone(), u.clone(), ib, NatTransform::identity(u))
    }

    /// Vertical unit for `v`: `v` on both horizontals, identities down.
    pub fn trivial_v(v: &CatFunctor) -> Self {
        let ia = CatFunctor::identity(v.src().clone());
        let ib = CatFunctor::identity(v.dst().clone());
        TwoSquare::new_unchecked(v.clone(), ib, ia, v.clone(), NatTransform::identity(v))
    }

    pub fn v(&self) -> &CatFunctor {
        &self.v
    }

    pub fn u(&self) -> &CatFunctor {
        &self.u
    }

    pub fn u_prime(&self) -> &CatFunctor {
        &self.u_prime
    }

    pub fn w(&self) -> &CatFunctor {
        &self.w
    }

    pub fn alpha(&self) -> &NatTransform {
        &self.alpha
    }

    pub fn a_prime(&self) -> &Arc<FinCat> {
        self.v.src()
    }

    pub fn a(&self) -> &Arc<FinCat> {
        self.u.src()
    }

    pub fn b_prime(&self) -> &Arc<FinCat> {
        self.w.src()
    }

    pub fn b(&self) -> &Arc<FinCat> {
        self.u.dst()
    }

    /// Location label `(a,b',g)` used in witnesses.
    pub fn triple_label(
        &self,
        a: crate::fincat::ObjId,
        b_prime: crate::fincat::ObjId,
        g: crate::fincat::ArrowId,
    ) -> String {
        format!(
            "({},{},{})",
            self.a().obj_name(a),
            self.b_prime().obj_name(b_prime),
            self.b().arrow_name(g)
        )
    }
}

/// Pastes `left` (with `A'' -> A'` on top) to the left of `right`:
/// `alpha''_{a''} = w(alpha'_{a''}) . alpha_{v'(a'')}`.
pub fn compose_h(right: &TwoSquare, left: &TwoSquare) -> Result<TwoSquare> {
    if *left.u() != *right.u_prime() {
        return Err(Error::BoundaryMismatch(
            "horizontal pasting: right vertical of the left square is not u' of the right square"
                .into(),
        ));
    }
    let v = CatFunctor::compose(right.v(), left.v())?;
    let w = CatFunctor::compose(right.w(), left.w())?;
    let b = right.b();
    let comps = left
        .a_prime()
        .objects()
        .map(|x| {
            let inner = right.alpha().component(left.v().ob(x));
            b.compose(right.w().ar(left.alpha().component(x)), inner)
        })
        .collect();
    let uv = CatFunctor::compose(right.u(), &v)?;
    let wu = CatFunctor::compose(&w, left.u_prime())?;
    let alpha = NatTransform::new_unchecked(uv, wu, comps);
    Ok(TwoSquare::new_unchecked(
        v,
        right.u().clone(),
        left.u_prime().clone(),
        w,
        alpha,
    ))
}

/// Pastes `bottom` below `top` (the top row of `bottom` is `w` of `top`):
/// `gamma_{a'} = beta_{u'(a')} . u_E(alpha_{a'})`.
pub fn compose_v(top: &TwoSquare, bottom: &TwoSquare) -> Result<TwoSquare> {
    if *bottom.v() != *top.w() {
        return Err(Error::BoundaryMismatch(
            "vertical pasting: top row of the lower square is not w of the upper square".into(),
        ));
    }
    let u = CatFunctor::compose(bottom.u(), top.u())?;
    let u_prime = CatFunctor::compose(bottom.u_prime(), top.u_prime())?;
    let c = bottom.b();
    let comps = top
        .a_prime()
        .objects()
        .map(|x| {
            let first = bottom.u().ar(top.alpha().component(x));
            c.compose(bottom.alpha().component(top.u_prime().ob(x)), first)
        })
        .collect();
    let uv = CatFunctor::compose(&u, top.v())?;
    let wu = CatFunctor::compose(bottom.w(), &u_prime)?;
    let alpha = NatTransform::new_unchecked(uv, wu, comps);
    Ok(TwoSquare::new_unchecked(
        top.v().clone(),
        u,
        u_prime,
        bottom.w().clone(),
        alpha,
    ))
}

/// The square of opposite categories, transposed: `op u'` on top, `op w` on
/// the right, `op v` on the left and `op u` at the bottom; the 2-cell keeps
/// its components.
pub fn opposite_square(d: &TwoSquare) -> TwoSquare {
    let ap = Arc::new(d.a_prime().opposite());
    let a = Arc::new(d.a().opposite());
    let bp = Arc::new(d.b_prime().opposite());
    let b = Arc::new(d.b().opposite());
    let v = d.u_prime().op_with(ap.clone(), bp.clone());
    let u = d.w().op_with(bp, b.clone());
    let u_prime = d.v().op_with(ap.clone(), a.clone());
    let w = d.u().op_with(a, b.clone());
    let src = CatFunctor::compose(&u, &v).expect("composable");
    let dst = CatFunctor::compose(&w, &u_prime).expect("composable");
    let alpha = NatTransform::new_unchecked(src, dst, d.alpha().components().to_vec());
    TwoSquare::new_unchecked(v, u, u_prime, w, alpha)
}
