use std::fmt;

use crate::algebra::{is_reduced, FiniteAlgebra};
use crate::algebraization::{qv_violation, AlgebraizingPair, QvClass};
use crate::error::{Error, Result};
use crate::provers::quasiidentity_holds;
use crate::semantics::{Decider, Engine, LogicSpec, Matrix};
use crate::syntax::Formula;

fn join(fs: &[Formula]) -> String {
    fs.iter().map(|f| f.to_string()).collect::<Vec<_>>().join(", ")
}

/// `⊢ φΔψ`: `φ` and `ψ` name the same class.
pub fn class_equal(l: &LogicSpec, pair: &AlgebraizingPair, phi: &Formula, psi: &Formula) -> Result<bool> {
    let mut decider = Decider::new(l);
    for d in pair.delta_of(phi, psi) {
        if !decider.decide(&[], &d)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `⟨Γ/Δ, φ/Δ⟩`, stored by class representatives.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct InsALSentence {
    pub gamma: Vec<Formula>,
    pub phi: Formula,
}

impl InsALSentence {
    pub fn new(gamma: Vec<Formula>, phi: Formula) -> Self {
        InsALSentence { gamma, phi }
    }

    /// Same length and componentwise [`class_equal`].
    pub fn same_classes(&self, other: &InsALSentence, l: &LogicSpec, pair: &AlgebraizingPair) -> Result<bool> {
        if self.gamma.len() != other.gamma.len() || !class_equal(l, pair, &self.phi, &other.phi)? {
            return Ok(false);
        }
        for (a, b) in self.gamma.iter().zip(&other.gamma) {
            if !class_equal(l, pair, a, b)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl fmt::Display for InsALSentence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}} ⊢ {}", join(&self.gamma), self.phi)
    }
}

/// The quasi-equation generated by a sequence `s = (ψ_1, …, ψ_n, ψ)`:
/// `τ(ψ_1), …, τ(ψ_n) ⇒ τ(ψ)` for whichever pair is in use.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct InsLALSentence {
    pub premises: Vec<Formula>,
    pub conclusion: Formula,
}

impl InsLALSentence {
    pub fn new(premises: Vec<Formula>, conclusion: Formula) -> Self {
        InsLALSentence { premises, conclusion }
    }

    /// Same length and componentwise interderivable.
    pub fn equivalent(&self, other: &InsLALSentence, l: &LogicSpec) -> Result<bool> {
        if self.premises.len() != other.premises.len() {
            return Ok(false);
        }
        let mut decider = Decider::new(l);
        if !decider.interderivable(&self.conclusion, &other.conclusion)? {
            return Ok(false);
        }
        for (a, b) in self.premises.iter().zip(&other.premises) {
            if !decider.interderivable(a, b)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl fmt::Display for InsLALSentence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "τ[{}] ⇒ τ({})", join(&self.premises), self.conclusion)
    }
}

/// `M ⊨ ⟨Γ/Δ, φ/Δ⟩` for a reduced model; for the built-in logics the
/// algebra must also lie in the matching quasivariety.
pub fn insal_satisfies(l: &LogicSpec, m: &Matrix, s: &InsALSentence) -> Result<bool> {
    if !is_reduced(m.algebra(), m.filter())? {
        return Err(Error::Precondition(format!("the matrix with filter {} is not reduced", m.filter())));
    }
    let class = match l.engine() {
        Engine::Cpc => Some(QvClass::Boolean),
        Engine::Ipc => Some(QvClass::Heyting),
        Engine::Matrices(_) => None,
    };
    if let Some(class) = class {
        if let Some(why) = qv_violation(class, m.algebra())? {
            return Err(Error::Precondition(format!("algebra outside the quasivariety: {why}")));
        }
    }
    m.satisfies(&s.gamma, &s.phi)
}

/// Every valuation satisfying `τ(ψ_i)` for all premises satisfies
/// `τ(conclusion)`.
pub fn inslal_satisfies(m: &FiniteAlgebra, q: &InsLALSentence, pair: &AlgebraizingPair) -> Result<bool> {
    let premises = pair.tau_all(&q.premises);
    for c in pair.tau_of(&q.conclusion) {
        if !quasiidentity_holds(m, &premises, &c)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `(v(φ) ∈ F, v(ε(φ)) = v(δ(φ)) for every τ equation)`.
pub fn comorphism_plus_sides(m: &Matrix, pair: &AlgebraizingPair, phi: &Formula, v: &[usize]) -> Result<(bool, bool)> {
    let alg = m.algebra();
    if let Some(&bad) = v.iter().find(|&&a| a >= alg.size()) {
        return Err(Error::OutOfRange { element: bad, size: alg.size() });
    }
    let left = m.filter().contains(alg.evaluate(phi, v)?);
    let mut right = true;
    for eq in pair.tau_of(phi) {
        right &= alg.evaluate(&eq.lhs, v)? == alg.evaluate(&eq.rhs, v)?;
    }
    Ok((left, right))
}

/// Whether both sides of [`comorphism_plus_sides`] agree; `M` must be
/// reduced.
pub fn comorphism_plus_check(m: &Matrix, pair: &AlgebraizingPair, phi: &Formula, v: &[usize]) -> Result<bool> {
    if !is_reduced(m.algebra(), m.filter())? {
        return Err(Error::Precondition(format!("the matrix with filter {} is not reduced", m.filter())));
    }
    let (left, right) = comorphism_plus_sides(m, pair, phi, v)?;
    Ok(left == right)
}
