//! Finite categories, functors, natural transformations and the basic
//! localizer predicates.

mod adjoint;
mod category;
mod constructions;
mod functor;
mod functor_category;
pub mod library;
mod localizer;
pub(crate) mod naming;
mod nat;
mod raw;

pub use adjoint::{
    find_left_adjoint, find_left_adjoint_with, find_right_adjoint, find_right_adjoint_with,
    has_terminal, slice_terminals, Adjunction, TieBreak,
};
pub use category::{same_cat, ArrowData, ArrowId, FinCat, ObjId};
pub use constructions::{
    component_labels, connected_components, coproduct_cat, initial_objects, inverse, is_invertible,
    product_cat, terminal_objects, Coproduct, Product,
};
pub use functor::CatFunctor;
pub use functor_category::{
    enumerate_functor_tables, enumerate_functors, enumerate_nat_components, first_functor_table,
    functor_category, FunctorCategory, FunctorTable,
};
pub use localizer::{is_aspherical_cat, is_w_equivalence, pi0_map, Localizer};
pub use nat::NatTransform;
pub use raw::{validate_category, RawCategory};

/// Opposite category; free-function form of [`FinCat::opposite`].
pub fn opposite_cat(c: &FinCat) -> FinCat {
    c.opposite()
}
