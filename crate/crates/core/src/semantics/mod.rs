//! Matrices, logics, reducts and the translation of models along morphisms.

mod logic;
mod translate;

pub use logic::{consequence, Decider, Engine, LogicSpec, Matrix, Refutation};
pub use translate::{
    mod_translate, mod_translate_with, reduct, satisfaction_condition_check, satisfaction_sides,
    FilterViolation, LogicMorphism, TranslateOptions,
};
