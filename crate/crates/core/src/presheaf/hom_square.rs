use std::sync::Arc;

use crate::error::Result;
use crate::fincat::library::{bipartite_2x2, discrete};
use crate::fincat::{functor_category, CatFunctor, FinCat, FunctorCategory, NatTransform};
use crate::limits::Limits;
use crate::squares::{comma_category, TwoSquare};

/// The square `Hom(D^op, C)` of `C`-valued presheaf categories together with
/// its four corners.
///
/// For `D` with corners `A', A, B', B` the square has
/// `[B^op, C] --w^*--> [B'^op, C]` on top, `u'^*` down the right,
/// `u^*` down the left and `[A^op, C] --v^*--> [A'^op, C]` at the bottom;
/// the 2-cell at `F` has components `F(alpha_a')`.
#[derive(Debug, Clone)]
pub struct HomSquare {
    pub square: TwoSquare,
    /// `[B^op, C]`, the new `A'`.
    pub top_left: FunctorCategory,
    /// `[B'^op, C]`, the new `A`.
    pub top_right: FunctorCategory,
    /// `[A^op, C]`, the new `B'`.
    pub bottom_left: FunctorCategory,
    /// `[A'^op, C]`, the new `B`.
    pub bottom_right: FunctorCategory,
}

pub fn hom_square(d: &TwoSquare, c: &Arc<FinCat>, limits: &Limits) -> Result<HomSquare> {
    let op = |x: &Arc<FinCat>| Arc::new(x.opposite());
    let (ap_op, a_op, bp_op, b_op) = (op(d.a_prime()), op(d.a()), op(d.b_prime()), op(d.b()));
    let fb = functor_category(&b_op, c, limits)?;
    let fbp = functor_category(&bp_op, c, limits)?;
    let fa = functor_category(&a_op, c, limits)?;
    let fap = functor_category(&ap_op, c, limits)?;
    let v_op = d.v().op_with(ap_op.clone(), a_op.clone());
    let u_op = d.u().op_with(a_op.clone(), b_op.clone());
    let up_op = d.u_prime().op_with(ap_op.clone(), bp_op.clone());
    let w_op = d.w().op_with(bp_op, b_op);

    let v = fb.precompose(&w_op, &fbp)?;
    let u = fbp.precompose(&up_op, &fap)?;
    let u_prime = fb.precompose(&u_op, &fa)?;
    let w = fa.precompose(&v_op, &fap)?;
    let uv = CatFunctor::compose(&u, &v)?;
    let wu = CatFunctor::compose(&w, &u_prime)?;
    let components = fb
        .cat
        .objects()
        .map(|f| {
            let (_, ar) = fb.functor_table(f);
            let comps: Vec<_> = d
                .a_prime()
                .objects()
                .map(|ap| ar[d.alpha().component(ap).0])
                .collect();
            fap.arrow_of(uv.ob(f), wu.ob(f), &comps)
                .expect("components of F(alpha) form a transformation")
        })
        .collect();
    let alpha = NatTransform::new(uv, wu, components)?;
    let square = TwoSquare::new(v, u, u_prime, w, alpha)?;
    Ok(HomSquare {
        square,
        top_left: fb,
        top_right: fbp,
        bottom_left: fa,
        bottom_right: fap,
    })
}

/// The product square of two discrete pairs, `X x Y` over `X` and `Y`
/// projecting to the point: the comma square of `Y -> e <- X`.
pub fn discrete_product_square() -> TwoSquare {
    let x = Arc::new(discrete(&["x0", "x1"]));
    let y = Arc::new(discrete(&["y0", "y1"]));
    let c = comma_category(
        &CatFunctor::to_point(y),
        &CatFunctor::to_point(x),
        &Limits::default(),
    )
    .expect("small comma category");
    c.square()
}

/// `Hom(D^op, C)` for the discrete product square and the four-object
/// category with all cross arrows `a_i -> b_j`.
pub fn bipartite_counterexample(limits: &Limits) -> Result<HomSquare> {
    hom_square(
        &discrete_product_square(),
        &Arc::new(bipartite_2x2()),
        limits,
    )
}
