//! Glivenko contexts: the left adjoint on algebras, the ρ translation and
//! bounded checks of the Glivenko equivalence and its compatibility
//! conditions.

mod checks;
mod context;
mod heyting;

pub use checks::{
    glivenko_equivalence, glivenko_sweep, image_filter, lind_compatibility_check, lind_compatibility_sides,
    matrix_compatibility_check, matrix_compatibility_sides, naturality_witness, section_check, Disagreement,
    GlivenkoChecker, NaturalityWitness, SweepConfig, SweepReport,
};
pub use context::{
    compose_contexts, rho_translate, rho_translate_all, Adjoint, AdjointData, ContextValidation, GlivenkoContext,
    REFLECTION_MAX_SIZE,
};
pub use heyting::{dense_filter, left_adjoint_quotient, quotient_isomorphism, regular_elements, unit_map};
