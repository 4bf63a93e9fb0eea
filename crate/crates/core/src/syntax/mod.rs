//! Signatures, formulas, the prefix parser, substitution and flexible
//! morphisms.

mod enumerate;
mod formula;
mod morphism;
mod parse;
mod signature;

pub use enumerate::{count_formulas, enumerate_formulas, index_subsets, FormulaSampler};
pub(crate) use enumerate::advance;
pub use formula::{Formula, Substitution};
pub use morphism::{compose_morphisms, extend_morphism, FlexibleMorphism};
pub(crate) use morphism::generic_application;
pub use parse::{parse_formula, parse_formula_list};
pub use signature::{Connective, Signature};

/// Simultaneous substitution; variables missing from `sigma` stay fixed.
pub fn substitute(phi: &Formula, sigma: &Substitution) -> Formula {
    phi.substitute(sigma)
}
