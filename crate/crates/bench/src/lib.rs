//! Shared fixtures for the benchmarks.

use aal_core::syntax::enumerate_formulas;
use aal_core::{Formula, Signature};

/// Every `stride`-th formula of the enumeration, up to `n` of them, so
/// that runs are reproducible without a random source.
pub fn formula_pool(vars: u32, depth: usize, n: usize) -> Vec<Formula> {
    let all = enumerate_formulas(&Signature::propositional(), vars, depth);
    let stride = (all.len() / n).max(1);
    all.into_iter().step_by(stride).take(n).collect()
}
