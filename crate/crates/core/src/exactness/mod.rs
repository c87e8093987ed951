//! Decision procedures for exactness and the functor predicates it rests on,
//! parameterized by a localizer.

mod bc;
mod exact;
mod functors;
mod report;

pub use bc::{bc_mate, is_bc_left, is_bc_right};
pub use exact::{
    has_final_object_criterion, is_exact, is_exact_via_coaspherique, is_weak_exact,
    is_weak_exact_dual, link_is_aspheric,
};
pub(crate) use functors::check_triangle;
pub use functors::{
    induced_over, is_aspheric_functor, is_coaspheric_functor, is_local_equivalence,
    is_precofibration, is_prefibration, is_proper, is_smooth,
};
pub use report::{CheckOptions, CheckReport, Verdict, Witness};
