use std::fmt;

use crate::algebra::FiniteAlgebra;
use crate::error::{Error, Result};
use crate::provers::{equational_consequence, Equation};
use crate::semantics::{Decider, LogicSpec};
use crate::syntax::{Formula, Signature};

/// Equivalence formulas `Δ(x0,x1)` and defining equations `δ_i(x0) ≡ ε_i(x0)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AlgebraizingPair {
    delta: Vec<Formula>,
    tau: Vec<(Formula, Formula)>,
}

impl AlgebraizingPair {
    pub fn new(delta: Vec<Formula>, tau: Vec<(Formula, Formula)>) -> Result<Self> {
        if delta.is_empty() || tau.is_empty() {
            return Err(Error::Precondition("Δ and τ must both be nonempty".into()));
        }
        if let Some(d) = delta.iter().find(|d| d.max_var().is_some_and(|v| v > 1)) {
            return Err(Error::Precondition(format!("equivalence formula {d} uses a variable beyond x1")));
        }
        for (d, e) in &tau {
            if d.max_var().is_some_and(|v| v > 0) || e.max_var().is_some_and(|v| v > 0) {
                return Err(Error::Precondition(format!("defining equation {d} ≡ {e} uses a variable beyond x0")));
            }
        }
        Ok(AlgebraizingPair { delta, tau })
    }

    /// `Δ = {iff(x0,x1)}`, `τ = {imp(x0,x0) ≡ x0}`.
    pub fn iff() -> Self {
        let x = Formula::var;
        AlgebraizingPair {
            delta: vec![Formula::iff(x(0), x(1))],
            tau: vec![(Formula::imp(x(0), x(0)), x(0))],
        }
    }

    /// `Δ = {imp(x0,x1), imp(x1,x0)}`, `τ = {imp(x0,x0) ≡ x0}`.
    pub fn implication() -> Self {
        let x = Formula::var;
        AlgebraizingPair {
            delta: vec![Formula::imp(x(0), x(1)), Formula::imp(x(1), x(0))],
            tau: vec![(Formula::imp(x(0), x(0)), x(0))],
        }
    }

    pub fn delta(&self) -> &[Formula] {
        &self.delta
    }

    pub fn tau(&self) -> &[(Formula, Formula)] {
        &self.tau
    }

    /// Whether every formula of the pair is over `sig`.
    pub fn check(&self, sig: &Signature) -> Result<()> {
        for f in self.delta.iter().chain(self.tau.iter().flat_map(|(d, e)| [d, e])) {
            f.check(sig)?;
        }
        Ok(())
    }

    /// `φ Δ ψ`.
    pub fn delta_of(&self, phi: &Formula, psi: &Formula) -> Vec<Formula> {
        let args = [phi.clone(), psi.clone()];
        self.delta.iter().map(|d| d.instantiate(&args)).collect()
    }

    /// `τ(φ)`.
    pub fn tau_of(&self, phi: &Formula) -> Vec<Equation> {
        let args = [phi.clone()];
        self.tau
            .iter()
            .map(|(d, e)| Equation::new(d.instantiate(&args), e.instantiate(&args)))
            .collect()
    }

    /// `τ[Γ]`.
    pub fn tau_all(&self, gamma: &[Formula]) -> Vec<Equation> {
        gamma.iter().flat_map(|g| self.tau_of(g)).collect()
    }

    /// `Δ(τ(φ))`: the union of `δ_i(φ) Δ ε_i(φ)`.
    pub fn delta_tau(&self, phi: &Formula) -> Vec<Formula> {
        self.tau_of(phi)
            .iter()
            .flat_map(|eq| self.delta_of(&eq.lhs, &eq.rhs))
            .collect()
    }
}

impl fmt::Display for AlgebraizingPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let delta: Vec<String> = self.delta.iter().map(|d| d.to_string()).collect();
        let tau: Vec<String> = self.tau.iter().map(|(d, e)| format!("{d} ≡ {e}")).collect();
        write!(f, "Δ = {{{}}}, τ = {{{}}}", delta.join(", "), tau.join(", "))
    }
}

pub fn tau_translate(pair: &AlgebraizingPair, phi: &Formula) -> Vec<Equation> {
    pair.tau_of(phi)
}

pub fn delta_translate(pair: &AlgebraizingPair, eq: &Equation) -> Vec<Formula> {
    pair.delta_of(&eq.lhs, &eq.rhs)
}

fn entails_all(class: &[FiniteAlgebra], gamma: &[Equation], goals: &[Equation]) -> Result<bool> {
    for g in goals {
        if !equational_consequence(class, gamma, g)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `(Γ ⊢ φ, τ[Γ] ⊨_K τ(φ))`.
pub fn check_interpretation(
    l: &LogicSpec,
    pair: &AlgebraizingPair,
    class: &[FiniteAlgebra],
    gamma: &[Formula],
    phi: &Formula,
) -> Result<(bool, bool)> {
    let left = Decider::new(l).decide(gamma, phi)?;
    let right = entails_all(class, &pair.tau_all(gamma), &pair.tau_of(phi))?;
    Ok((left, right))
}

/// `(φ≡ψ ⊨_K τ(φΔψ), τ(φΔψ) ⊨_K φ≡ψ)`.
pub fn check_inverse_condition(
    l: &LogicSpec,
    pair: &AlgebraizingPair,
    class: &[FiniteAlgebra],
    eq: &Equation,
) -> Result<(bool, bool)> {
    l.check(&eq.lhs)?;
    l.check(&eq.rhs)?;
    let translated = pair.tau_all(&delta_translate(pair, eq));
    let forward = entails_all(class, std::slice::from_ref(eq), &translated)?;
    let backward = equational_consequence(class, &translated, eq)?;
    Ok((forward, backward))
}

/// `φ, φΔψ ⊢ ψ`.
pub fn detachment_check(l: &LogicSpec, pair: &AlgebraizingPair, phi: &Formula, psi: &Formula) -> Result<bool> {
    let mut premises = vec![phi.clone()];
    premises.extend(pair.delta_of(phi, psi));
    Decider::new(l).decide(&premises, psi)
}
