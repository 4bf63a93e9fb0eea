//! Decision procedures for the built-in logics and equational consequence.

mod equational;
mod g4ip;
mod kripke;
mod truth_table;

pub use equational::{
    equational_consequence, equational_countermodel, quasiidentity_holds, Equation,
    EquationalCountermodel,
};
pub use g4ip::{ipc_decide, IpcProver};
pub use kripke::{kripke_countermodel, rooted_frames, Countermodel, KripkeFrame};
pub use truth_table::{cpc_decide, MAX_TABLE_VARS};
