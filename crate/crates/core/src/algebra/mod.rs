//! Finite algebras, congruences, filters and the Leibniz operator.

pub mod build;
mod congruence;
mod filter;
mod homomorphism;
mod leibniz;
mod structure;

pub use congruence::{all_congruences, congruence_generated, join, quotient, Congruence};
pub use filter::{
    all_filters, all_filters_with, filter_closure, filter_closure_with, filter_violation,
    hilbert_axioms, is_filter, Filter, FilterBounds,
};
pub use homomorphism::{are_isomorphic, find_isomorphism, homomorphisms, is_homomorphism};
pub use leibniz::{
    is_reduced, leibniz, leibniz_brute_force, leibniz_by_polynomials, reduce_matrix,
    unary_polynomials,
};
pub(crate) use structure::find_valuation;
pub use structure::{FiniteAlgebra, Program};

use crate::error::Result;
use crate::syntax::Formula;

/// Evaluates `phi` under `x_i ↦ valuation[i]`.
pub fn evaluate(alg: &FiniteAlgebra, phi: &Formula, valuation: &[usize]) -> Result<usize> {
    alg.evaluate(phi, valuation)
}
