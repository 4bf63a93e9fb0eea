//! Algebraizing pairs, the τ/Δ translations, bounded checks of the
//! algebraizability conditions, quasivariety axioms and the Lindenbaum
//! property.

mod bp;
mod lindenbaum;
mod pair;
mod qv;

pub use bp::{check_bp_conditions, check_bp_conditions_with, BpCondition, BpOptions, BpReport, BpWitness};
pub use lindenbaum::{is_lindenbaum, LindenbaumOutcome, LindenbaumReport};
pub use pair::{
    check_interpretation, check_inverse_condition, delta_translate, detachment_check, tau_translate,
    AlgebraizingPair,
};
pub use qv::{qv_axioms, qv_membership, qv_violation, QuasiIdentity, QuasiKind, QvBounds, QvClass};
