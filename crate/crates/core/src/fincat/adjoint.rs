use std::sync::Arc;

use super::category::{ArrowId, FinCat, ObjId};
use super::functor::CatFunctor;
use super::nat::NatTransform;

/// Which terminal object to pick when several exist.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TieBreak {
    #[default]
    Least,
    Greatest,
}

/// An adjunction `left -| right` with unit `id => right.left` and counit
/// `left.right => id`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Adjunction {
    pub left: CatFunctor,
    pub right: CatFunctor,
    pub unit: NatTransform,
    pub counit: NatTransform,
}

impl Adjunction {
    /// `r(eps) . eta_r = id_r` and `eps_l . l(eta) = id_l`, checked literally.
    pub fn triangle_identities_hold(&self) -> bool {
        let (l, r) = (&self.left, &self.right);
        let (a, b) = (l.src(), l.dst());
        let first = b.objects().all(|y| {
            let eta = self.unit.component(r.ob(y));
            a.compose(r.ar(self.counit.component(y)), eta) == a.id(r.ob(y))
        });
        let second = a.objects().all(|x| {
            let eps = self.counit.component(l.ob(x));
            b.compose(eps, l.ar(self.unit.component(x))) == b.id(l.ob(x))
        });
        first && second
    }
}

/// Whether `(a, g: u(a) -> b)` is terminal in `u/b`: every `(a', g')` factors
/// through it by exactly one `f: a' -> a`.
fn is_terminal_in_slice(u: &CatFunctor, b: ObjId, a: ObjId, g: ArrowId) -> bool {
    let (ca, cb) = (u.src(), u.dst());
    ca.objects().all(|a2| {
        cb.hom(u.ob(a2), b).iter().all(|&g2| {
            ca.hom(a2, a)
                .iter()
                .filter(|&&f| cb.compose(g, u.ar(f)) == g2)
                .count()
                == 1
        })
    })
}

/// Terminal objects of the slice `u/b`, in the slice's declaration order.
pub fn slice_terminals(u: &CatFunctor, b: ObjId) -> Vec<(ObjId, ArrowId)> {
    let (ca, cb) = (u.src(), u.dst());
    ca.objects()
        .flat_map(|a| cb.hom(u.ob(a), b).iter().map(move |&g| (a, g)))
        .filter(|&(a, g)| is_terminal_in_slice(u, b, a, g))
        .collect()
}

/// Searches for a right adjoint by choosing a terminal object in every slice
/// `u/b`. Returns `None` when some slice has none.
pub fn find_right_adjoint(u: &CatFunctor) -> Option<Adjunction> {
    find_right_adjoint_with(u, TieBreak::Least)
}

pub fn find_right_adjoint_with(u: &CatFunctor, tie: TieBreak) -> Option<Adjunction> {
    let (ca, cb) = (u.src(), u.dst());
    let mut r_ob = Vec::with_capacity(cb.num_objects());
    let mut eps = Vec::with_capacity(cb.num_objects());
    for b in cb.objects() {
        let terminals = slice_terminals(u, b);
        let pick = match tie {
            TieBreak::Least => terminals.first(),
            TieBreak::Greatest => terminals.last(),
        }?;
        r_ob.push(pick.0);
        eps.push(pick.1);
    }
    // The factorization of h.eps_b through eps_b2 gives r(h).
    let factor = |a2: ObjId, g2: ArrowId, b: ObjId| -> ArrowId {
        let (a, g) = (r_ob[b.0], eps[b.0]);
        *ca.hom(a2, a)
            .iter()
            .find(|&&f| cb.compose(g, u.ar(f)) == g2)
            .expect("terminal object factors every arrow")
    };
    let r_ar = cb
        .arrows()
        .map(|h| {
            let (b1, b2) = (cb.dom(h), cb.cod(h));
            factor(r_ob[b1.0], cb.compose(h, eps[b1.0]), b2)
        })
        .collect();
    let r = CatFunctor::new_unchecked(cb.clone(), ca.clone(), r_ob.clone(), r_ar);
    let unit_comps = ca
        .objects()
        .map(|a| factor(a, cb.id(u.ob(a)), u.ob(a)))
        .collect();
    let ru = CatFunctor::compose(&r, u).expect("composable");
    let ur = CatFunctor::compose(u, &r).expect("composable");
    let unit = NatTransform::new_unchecked(CatFunctor::identity(ca.clone()), ru, unit_comps);
    let counit = NatTransform::new_unchecked(ur, CatFunctor::identity(cb.clone()), eps);
    let adj = Adjunction {
        left: u.clone(),
        right: r,
        unit,
        counit,
    };
    debug_assert!(adj.triangle_identities_hold());
    Some(adj)
}

/// Left adjoint of `u`, found as the right adjoint of `op u`.
pub fn find_left_adjoint(u: &CatFunctor) -> Option<Adjunction> {
    find_left_adjoint_with(u, TieBreak::Least)
}

pub fn find_left_adjoint_with(u: &CatFunctor, tie: TieBreak) -> Option<Adjunction> {
    let (ca, cb) = (u.src().clone(), u.dst().clone());
    let (ca_op, cb_op) = (Arc::new(ca.opposite()), Arc::new(cb.opposite()));
    let adj_op = find_right_adjoint_with(&u.op_with(ca_op, cb_op), tie)?;
    let l = adj_op.right.op_with(cb.clone(), ca.clone());
    let ul = CatFunctor::compose(u, &l).expect("composable");
    let lu = CatFunctor::compose(&l, u).expect("composable");
    let unit = NatTransform::new_unchecked(
        CatFunctor::identity(cb),
        ul,
        adj_op.counit.components().to_vec(),
    );
    let counit = NatTransform::new_unchecked(
        lu,
        CatFunctor::identity(ca),
        adj_op.unit.components().to_vec(),
    );
    Some(Adjunction {
        left: l,
        right: u.clone(),
        unit,
        counit,
    })
}

/// Checks whether some object of `c` is terminal; convenience for callers
/// holding only a category.
pub fn has_terminal(c: &FinCat) -> bool {
    !super::constructions::terminal_objects(c).is_empty()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::library;

    #[test]
    fn identity_is_self_adjoint() {
        let c = Arc::new(library::chain(3));
        let id = CatFunctor::identity(c.clone());
        let adj = find_right_adjoint(&id).unwrap();
        assert!(adj.right.is_identity());
        assert!(adj.unit.is_identity() && adj.counit.is_identity());
        assert!(find_left_adjoint(&id).unwrap().left.is_identity());
    }

    #[test]
    fn zero_into_interval_has_right_adjoint() {
        let two = Arc::new(library::interval());
        let zero = CatFunctor::from_point(two.clone(), ObjId(0));
        let adj = find_right_adjoint(&zero).unwrap();
        assert!(adj.triangle_identities_hold());
        assert!(find_left_adjoint(&zero).is_none());
        let one = CatFunctor::from_point(two, ObjId(1));
        assert!(find_right_adjoint(&one).is_none());
        assert!(find_left_adjoint(&one).unwrap().triangle_identities_hold());
    }

    #[test]
    fn point_into_discrete_has_no_right_adjoint() {
        let pq = Arc::new(library::discrete(&["p", "q"]));
        let p = CatFunctor::from_point(pq, ObjId(0));
        assert!(find_right_adjoint(&p).is_none());
    }

    #[test]
    fn tie_break_on_equivalent_terminals() {
        let iso = Arc::new(library::iso_groupoid());
        let to_e = CatFunctor::to_point(iso);
        let least = find_right_adjoint_with(&to_e, TieBreak::Least).unwrap();
        let greatest = find_right_adjoint_with(&to_e, TieBreak::Greatest).unwrap();
        assert_eq!(least.right.ob(ObjId(0)), ObjId(0));
        assert_eq!(greatest.right.ob(ObjId(0)), ObjId(1));
        assert!(least.triangle_identities_hold() && greatest.triangle_identities_hold());
    }
}
