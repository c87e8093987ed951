//! Squares of categories and the categories their criteria quantify over.

mod comma;
mod induced;
pub mod library;
mod square;

pub use comma::{comma_category, coslice, fiber, pullback_cat, slice, CommaData, Fiber, Pullback};
pub use induced::{
    induced_coslice_functor, induced_slice_functor, link_category, link_components, link_objects,
    InducedCoslice, InducedSlice, LinkCategory,
};
pub use square::{compose_h, compose_v, opposite_square, TwoSquare};
