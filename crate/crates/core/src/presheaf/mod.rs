//! Presheaves of finite sets, Kan extensions along functors, and the
//! presheaf-level exactness criteria.

mod base_change;
mod criteria;
mod finset;
mod hom_square;
mod kan;
mod sheaf;

pub use base_change::{
    base_change_coh, base_change_hom, cogenerator, cohomological_oracle, guitart_oracle,
};
pub use criteria::{
    check_aspheric_via_presheaves, check_local_equiv_via_presheaves, classify_presheaf_localizer,
    der_axiom_suite, DerCheck, DerReport, PresheafLocalizer, SAMPLE_SIZES,
};
pub use finset::{finset_colimit, finset_limit, FinColimit, FinLimit};
pub use hom_square::{bipartite_counterexample, discrete_product_square, hom_square, HomSquare};
pub use kan::{
    lan, lan_counit, lan_map, lan_transpose, lan_unit, lan_untranspose, ran, ran_counit, ran_map,
    ran_transpose, ran_unit, ran_untranspose, restrict_map, LeftKan, RightKan,
};
pub use sheaf::{hom_set, representable, restrict, Presheaf, PresheafMorphism};
