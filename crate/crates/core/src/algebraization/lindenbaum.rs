use std::fmt;

use crate::error::Result;
use crate::semantics::{Decider, LogicSpec, Matrix};
use crate::syntax::{enumerate_formulas, Formula};

use super::pair::AlgebraizingPair;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LindenbaumOutcome {
    Pass,
    /// `φ ⊣⊢ ψ` and `⊢ φΔψ` disagree on this pair.
    Fail {
        phi: Formula,
        psi: Formula,
        interderivable: bool,
        delta_theorem: bool,
    },
    /// Δ is not a set of formulas of the logic.
    NotApplicable(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LindenbaumReport {
    pub logic: String,
    pub vars: u32,
    pub depth: usize,
    /// Unordered pairs examined (including `φ = ψ`).
    pub pairs: u64,
    /// Pairs where a finite sound matrix did not settle both sides.
    pub prover_pairs: u64,
    pub outcome: LindenbaumOutcome,
}

impl LindenbaumReport {
    pub fn passed(&self) -> bool {
        self.outcome == LindenbaumOutcome::Pass
    }
}

impl fmt::Display for LindenbaumReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "logic: {}", self.logic)?;
        writeln!(f, "bounds: vars {}, depth {}", self.vars, self.depth)?;
        writeln!(f, "pairs: {} ({} sent to the prover)", self.pairs, self.prover_pairs)?;
        match &self.outcome {
            LindenbaumOutcome::Pass => write!(f, "result: pass"),
            LindenbaumOutcome::Fail {
                phi,
                psi,
                interderivable,
                delta_theorem,
            } => write!(
                f,
                "result: FAIL at φ = {phi}, ψ = {psi}: interderivable {interderivable}, ⊢ φΔψ {delta_theorem}"
            ),
            LindenbaumOutcome::NotApplicable(why) => write!(f, "result: not applicable ({why})"),
        }
    }
}

/// Values of every formula under every valuation of one matrix.
struct Table {
    size: usize,
    rows: usize,
    designated: Vec<bool>,
    /// `values[formula * rows + valuation]`.
    values: Vec<usize>,
    /// `delta[j][a * size + b]` = value of `Δ_j(a, b)`.
    delta: Vec<Vec<usize>>,
}

impl Table {
    fn new(m: &Matrix, vars: u32, formulas: &[Formula], pair: &AlgebraizingPair) -> Result<Self> {
        let alg = m.algebra();
        let size = alg.size();
        let rows = size.pow(vars);
        let mut values = Vec::with_capacity(formulas.len() * rows);
        let mut stack = Vec::new();
        let mut val = vec![0usize; vars as usize];
        for phi in formulas {
            let prog = alg.compile(phi)?;
            for r in 0..rows {
                let mut rest = r;
                for slot in val.iter_mut() {
                    *slot = rest % size;
                    rest /= size;
                }
                values.push(prog.eval(alg, &val, &mut stack));
            }
        }
        let delta = pair
            .delta()
            .iter()
            .map(|d| {
                let prog = alg.compile(d)?;
                let mut t = Vec::with_capacity(size * size);
                for a in 0..size {
                    for b in 0..size {
                        t.push(prog.eval(alg, &[a, b], &mut stack));
                    }
                }
                Ok(t)
            })
            .collect::<Result<Vec<_>>>()?;
        let designated = (0..size).map(|a| m.filter().contains(a)).collect();
        Ok(Table {
            size,
            rows,
            designated,
            values,
            delta,
        })
    }

    fn row(&self, i: usize) -> &[usize] {
        &self.values[i * self.rows..(i + 1) * self.rows]
    }

    /// Some valuation separates `φ` from `ψ` with respect to the filter.
    fn separates(&self, i: usize, j: usize) -> bool {
        let (a, b) = (self.row(i), self.row(j));
        a.iter().zip(b).any(|(&x, &y)| self.designated[x] != self.designated[y])
    }

    /// Some valuation sends some `Δ_k(φ, ψ)` outside the filter.
    fn refutes_delta(&self, i: usize, j: usize) -> bool {
        let (a, b) = (self.row(i), self.row(j));
        self.delta
            .iter()
            .any(|t| a.iter().zip(b).any(|(&x, &y)| !self.designated[t[x * self.size + y]]))
    }
}

/// Checks `φ ⊣⊢ ψ ⇔ ⊢ φΔψ` for every pair of formulas within the bounds.
/// Sides refuted in a sound finite matrix are settled without the prover.
pub fn is_lindenbaum(l: &LogicSpec, pair: &AlgebraizingPair, vars: u32, depth: usize) -> Result<LindenbaumReport> {
    let mut report = LindenbaumReport {
        logic: l.to_string(),
        vars,
        depth,
        pairs: 0,
        prover_pairs: 0,
        outcome: LindenbaumOutcome::Pass,
    };
    if let Err(e) = pair.check(l.signature()) {
        report.outcome = LindenbaumOutcome::NotApplicable(e.to_string());
        return Ok(report);
    }
    let formulas = enumerate_formulas(l.signature(), vars, depth);
    let tables = l
        .sound_matrices()?
        .iter()
        .map(|m| Table::new(m, vars, &formulas, pair))
        .collect::<Result<Vec<_>>>()?;
    let mut decider = Decider::new(l);
    for i in 0..formulas.len() {
        for j in i..formulas.len() {
            report.pairs += 1;
            let split = tables.iter().any(|t| t.separates(i, j));
            let no_delta = tables.iter().any(|t| t.refutes_delta(i, j));
            if split && no_delta {
                continue;
            }
            report.prover_pairs += 1;
            let (phi, psi) = (&formulas[i], &formulas[j]);
            let interderivable = !split && decider.interderivable(phi, psi)?;
            let mut delta_theorem = !no_delta;
            if delta_theorem {
                for d in pair.delta_of(phi, psi) {
                    if !decider.decide(&[], &d)? {
                        delta_theorem = false;
                        break;
                    }
                }
            }
            if interderivable != delta_theorem {
                report.outcome = LindenbaumOutcome::Fail {
                    phi: phi.clone(),
                    psi: psi.clone(),
                    interderivable,
                    delta_theorem,
                };
                return Ok(report);
            }
        }
    }
    Ok(report)
}
