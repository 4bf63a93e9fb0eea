//! Finite-sample versions of the institutions of matrices (`I_f`), of
//! algebraizable logics (InsAL) and of Lindenbaum algebraizable logics
//! (InsLAL), with their satisfaction conditions.

mod corpus;
mod report;
mod sentences;

pub use corpus::{Corpus, CorpusMatrix, CorpusMorphism, Fault, FaultTarget};
pub use report::{institution_report, InstitutionKind, InstitutionReport, ReportBounds, Violation};
pub use sentences::{
    class_equal, comorphism_plus_check, comorphism_plus_sides, insal_satisfies, inslal_satisfies, InsALSentence,
    InsLALSentence,
};
