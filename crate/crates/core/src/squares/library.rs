//! Named squares used by fixtures and tests.

use std::sync::Arc;

use super::square::TwoSquare;
use crate::fincat::{library, CatFunctor, FinCat, NatTransform, ObjId};

/// `e -> e` over the parallel pair `{0 => 1}` with arrows `α, β`: `u` picks
/// `0`, `w` picks `1`, and the 2-cell is `α`.
pub fn swgr() -> TwoSquare {
    let e = Arc::new(FinCat::point());
    let b = Arc::new(library::parallel("α", "β"));
    let id = CatFunctor::identity(e.clone());
    let u = CatFunctor::from_point(b.clone(), ObjId(0));
    let w = CatFunctor::from_point(b.clone(), ObjId(1));
    let alpha = NatTransform::new(u.clone(), w.clone(), vec![b.arrow("α").unwrap()])
        .expect("constant 2-cell");
    TwoSquare::new(id.clone(), u, id, w, alpha).expect("S_wgr")
}

/// The cocomma square of `A`: `A -> e` on both legs, `0, 1 : e -> 𝟚` at the
/// bottom, every component `t : 0 -> 1`.
pub fn cocomma(a: Arc<FinCat>) -> TwoSquare {
    let e = Arc::new(FinCat::point());
    let two = Arc::new(library::interval());
    let v = CatFunctor::to_point(a.clone()).with_categories(a.clone(), e.clone());
    let u_prime = CatFunctor::to_point(a.clone()).with_categories(a, e.clone());
    let u = CatFunctor::from_point(two.clone(), ObjId(0)).with_categories(e.clone(), two.clone());
    let w = CatFunctor::from_point(two.clone(), ObjId(1)).with_categories(e, two.clone());
    let t = two.arrow("t").unwrap();
    let uv = CatFunctor::compose(&u, &v).unwrap();
    let wu = CatFunctor::compose(&w, &u_prime).unwrap();
    let n = uv.src().num_objects();
    let alpha = NatTransform::new(uv, wu, vec![t; n]).expect("constant 2-cell");
    TwoSquare::new(v, u, u_prime, w, alpha).expect("cocomma square")
}
