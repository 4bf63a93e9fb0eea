//! Finite algebraic-logic workbench.
//!
//! Logics are given by matrix families or by the built-in classical and
//! intuitionistic engines. On top of them the crate provides reducts along
//! flexible morphisms, the Leibniz operator, algebraizing pairs and their
//! defining conditions, Glivenko contexts with the Heyting to Boolean
//! adjoint, and finite-sample checks of institution satisfaction conditions.

pub mod algebra;
pub mod algebraization;
pub mod corpus;
pub mod error;
pub mod glivenko;
pub mod institutions;
pub mod io;
pub mod provers;
pub mod semantics;
pub mod syntax;

pub use algebra::{Congruence, Filter, FiniteAlgebra};
pub use error::{Error, Result};
pub use provers::Equation;
pub use algebraization::AlgebraizingPair;
pub use glivenko::GlivenkoContext;
pub use semantics::{LogicMorphism, LogicSpec, Matrix};
pub use syntax::{FlexibleMorphism, Formula, Signature};
