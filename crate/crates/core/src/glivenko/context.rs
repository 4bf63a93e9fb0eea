use std::fmt;

use crate::algebra::{all_congruences, quotient, Congruence, FiniteAlgebra, FilterBounds};
use crate::algebraization::{qv_membership, AlgebraizingPair, QvClass};
use crate::error::{Error, Result};
use crate::semantics::{Decider, Engine, LogicMorphism, LogicSpec};
use crate::syntax::{enumerate_formulas, FlexibleMorphism, Formula};

use super::heyting::{regular_elements, unit_map};

/// Largest carrier for which [`Adjoint::Reflection`] searches congruences.
pub const REFLECTION_MAX_SIZE: usize = 5;

/// How the left adjoint `L_h` acts on a finite algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Adjoint {
    /// `L_h(M) = M`.
    Identity,
    /// `L_h(H) = H_¬¬` with unit `x ↦ ¬¬x`.
    RegularElements,
    /// `M/θ` for the least congruence whose quotient lies in the target
    /// quasivariety; only for identity morphisms between built-in logics.
    Reflection,
    /// `L_g ∘ L_f`.
    Composite(Box<GlivenkoContext>, Box<GlivenkoContext>),
}

impl Adjoint {
    /// Identity for an identity morphism into the same engine, regular
    /// elements for intuitionistic into classical, reflection otherwise.
    pub fn infer(source: &LogicSpec, target: &LogicSpec, h: &FlexibleMorphism) -> Adjoint {
        let same = h == &FlexibleMorphism::identity(source.signature());
        match (source.engine(), target.engine()) {
            (a, b) if same && a == b => Adjoint::Identity,
            (Engine::Ipc, Engine::Cpc) if same => Adjoint::RegularElements,
            _ => Adjoint::Reflection,
        }
    }
}

/// `L_h(M)` with the unit `M → L_h(M)` and the section `L_h(M) → M`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdjointData {
    pub algebra: FiniteAlgebra,
    pub unit: Vec<usize>,
    pub section: Vec<usize>,
}

/// A consequence-preserving translation `h: a → a′` with the fixed formula
/// `θ(x0)` inducing `ρ(φ′) = θ[φ′]`, and the left adjoint on finite algebras.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GlivenkoContext {
    morphism: LogicMorphism,
    theta: Formula,
    adjoint: Adjoint,
    pair: AlgebraizingPair,
    target_pair: AlgebraizingPair,
}

impl GlivenkoContext {
    pub fn new(
        morphism: LogicMorphism,
        theta: Formula,
        adjoint: Adjoint,
        pair: AlgebraizingPair,
        target_pair: AlgebraizingPair,
    ) -> Result<Self> {
        theta.check(morphism.source().signature())?;
        if theta.max_var().is_some_and(|v| v > 0) {
            return Err(Error::Precondition(format!("θ = {theta} must be a formula in x0")));
        }
        pair.check(morphism.source().signature())?;
        target_pair.check(morphism.target().signature())?;
        if let Adjoint::Composite(f, g) = &adjoint {
            if f.source() != morphism.source() || g.target() != morphism.target() || f.target() != g.source() {
                return Err(Error::Precondition("composite adjoint does not match the morphism".into()));
            }
        }
        Ok(GlivenkoContext {
            morphism,
            theta,
            adjoint,
            pair,
            target_pair,
        })
    }

    /// Intuitionistic into classical logic along the identity, `θ = ¬¬x0`.
    pub fn classical() -> Self {
        let morphism = LogicMorphism::new(
            LogicSpec::ipc(),
            LogicSpec::cpc(),
            FlexibleMorphism::identity(LogicSpec::ipc().signature()),
        )
        .expect("shared signature");
        GlivenkoContext {
            morphism,
            theta: Formula::neg(Formula::neg(Formula::var(0))),
            adjoint: Adjoint::RegularElements,
            pair: AlgebraizingPair::iff(),
            target_pair: AlgebraizingPair::iff(),
        }
    }

    /// The identity context on `l`: identity morphism, `θ = x0`.
    pub fn identity(l: &LogicSpec, pair: &AlgebraizingPair) -> Self {
        GlivenkoContext {
            morphism: LogicMorphism::identity(l),
            theta: Formula::var(0),
            adjoint: Adjoint::Identity,
            pair: pair.clone(),
            target_pair: pair.clone(),
        }
    }

    pub fn source(&self) -> &LogicSpec {
        self.morphism.source()
    }

    pub fn target(&self) -> &LogicSpec {
        self.morphism.target()
    }

    pub fn morphism(&self) -> &LogicMorphism {
        &self.morphism
    }

    pub fn h(&self) -> &FlexibleMorphism {
        self.morphism.map()
    }

    pub fn theta(&self) -> &Formula {
        &self.theta
    }

    pub fn adjoint(&self) -> &Adjoint {
        &self.adjoint
    }

    pub fn pair(&self) -> &AlgebraizingPair {
        &self.pair
    }

    pub fn target_pair(&self) -> &AlgebraizingPair {
        &self.target_pair
    }

    /// `L_h(M)`, its unit and its section.
    pub fn left_adjoint(&self, m: &FiniteAlgebra) -> Result<AdjointData> {
        let m = m.restrict(self.source().signature())?;
        match &self.adjoint {
            Adjoint::Identity => {
                let algebra = m.restrict(self.target().signature())?;
                let id: Vec<usize> = (0..m.size()).collect();
                Ok(AdjointData {
                    algebra,
                    unit: id.clone(),
                    section: id,
                })
            }
            Adjoint::RegularElements => {
                let (reg, embedding) = regular_elements(&m)?;
                Ok(AdjointData {
                    algebra: reg.restrict(self.target().signature())?,
                    unit: unit_map(&m)?,
                    section: embedding,
                })
            }
            Adjoint::Reflection => self.reflection(&m),
            Adjoint::Composite(f, g) => {
                let first = f.left_adjoint(&m)?;
                let second = g.left_adjoint(&first.algebra)?;
                Ok(AdjointData {
                    unit: first.unit.iter().map(|&a| second.unit[a]).collect(),
                    section: second.section.iter().map(|&b| first.section[b]).collect(),
                    algebra: second.algebra,
                })
            }
        }
    }

    fn reflection(&self, m: &FiniteAlgebra) -> Result<AdjointData> {
        if self.h() != &FlexibleMorphism::identity(self.source().signature()) {
            return Err(Error::Unsupported("reflection along a non-identity morphism".into()));
        }
        let class = match self.target().engine() {
            Engine::Cpc => QvClass::Boolean,
            Engine::Ipc => QvClass::Heyting,
            Engine::Matrices(_) => {
                return Err(Error::Unsupported("reflection into the quasivariety of a matrix logic".into()))
            }
        };
        if m.size() > REFLECTION_MAX_SIZE {
            return Err(Error::BoundExhausted(format!(
                "reflection searches congruences of carriers up to {REFLECTION_MAX_SIZE}, not {}",
                m.size()
            )));
        }
        let mut least: Option<Congruence> = None;
        for theta in all_congruences(m) {
            let (q, _) = quotient(m, &theta)?;
            if !qv_membership(class, &q)? {
                continue;
            }
            least = Some(match least {
                None => theta,
                Some(prev) => {
                    let labels: Vec<(usize, usize)> = (0..m.size())
                        .map(|a| (prev.representative(a), theta.representative(a)))
                        .collect();
                    let ids: Vec<usize> = labels.iter().map(|p| labels.iter().position(|q| q == p).unwrap()).collect();
                    Congruence::from_labels(&ids)
                }
            });
        }
        let theta = least.ok_or_else(|| Error::Precondition("no quotient lies in the target class".into()))?;
        let (algebra, unit) = quotient(m, &theta)?;
        if !qv_membership(class, &algebra)? {
            return Err(Error::Precondition("the least candidate quotient leaves the target class".into()));
        }
        let prog = m.compile(&self.theta)?;
        let mut stack = Vec::new();
        let mut section = vec![usize::MAX; algebra.size()];
        for a in 0..m.size() {
            let v = prog.eval(m, &[a], &mut stack);
            let slot = &mut section[unit[a]];
            if *slot != usize::MAX && *slot != v {
                return Err(Error::Precondition(format!("θ = {} is not constant on the class of {a}", self.theta)));
            }
            *slot = v;
        }
        Ok(AdjointData {
            algebra: algebra.restrict(self.target().signature())?,
            unit,
            section,
        })
    }

    /// Bounded validity checks.
    pub fn validate(&self, bounds: &FilterBounds) -> Result<ContextValidation> {
        let x0 = Formula::var(0);
        let image = self.h().extend(&self.theta)?;
        let mut tgt = Decider::new(self.target());
        let mut section_equation = true;
        for d in self.target_pair.delta_of(&x0, &image) {
            section_equation &= tgt.decide(&[], &d)?;
        }
        let preservation = self.morphism.preservation_witness(bounds)?;
        let mut undense = Vec::new();
        for c in self.target().signature().connectives() {
            let args: Vec<Formula> = (0..c.arity as u32).map(Formula::var).collect();
            let goal = Formula::app(&c.name, args);
            let mut found = false;
            for psi in enumerate_formulas(self.source().signature(), c.arity as u32, bounds.depth.max(1)) {
                if tgt.interderivable(&self.h().extend(&psi)?, &goal)? {
                    found = true;
                    break;
                }
            }
            if !found {
                undense.push(c.name.clone());
            }
        }
        Ok(ContextValidation {
            bounds: *bounds,
            section_equation,
            preservation,
            undense,
        })
    }
}

/// Outcome of [`GlivenkoContext::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContextValidation {
    pub bounds: FilterBounds,
    /// `⊢′ x0 Δ′ ȟ(θ(x0))`.
    pub section_equation: bool,
    /// A bounded consequence that `h` fails to preserve.
    pub preservation: Option<(Vec<Formula>, Formula)>,
    /// Target connectives with no `⊣⊢′`-equivalent image of a source formula
    /// within the bounds. A bounded search: an entry is not a proof of
    /// non-density.
    pub undense: Vec<String>,
}

impl ContextValidation {
    pub fn passed(&self) -> bool {
        self.section_equation && self.preservation.is_none()
    }
}

impl fmt::Display for ContextValidation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "bounds: vars {}, depth {}, |Γ| ≤ {}",
            self.bounds.vars, self.bounds.depth, self.bounds.gamma_size
        )?;
        writeln!(f, "section equation: {}", if self.section_equation { "holds" } else { "FAILS" })?;
        match &self.preservation {
            None => writeln!(f, "preservation: no counterexample")?,
            Some((g, p)) => {
                let g: Vec<String> = g.iter().map(|x| x.to_string()).collect();
                writeln!(f, "preservation: FAILS at {{{}}} ⊢ {p}", g.join("; "))?
            }
        }
        if self.undense.is_empty() {
            write!(f, "density: every target connective has an equivalent image")
        } else {
            write!(f, "density: no image found for {}", self.undense.join(", "))
        }
    }
}

/// `ρ(φ′) = θ[φ′]`.
pub fn rho_translate(ctx: &GlivenkoContext, phi: &Formula) -> Result<Formula> {
    ctx.target().check(phi)?;
    ctx.source().check(phi)?;
    Ok(ctx.theta.instantiate(std::slice::from_ref(phi)))
}

/// `ρ` applied elementwise.
pub fn rho_translate_all(ctx: &GlivenkoContext, gamma: &[Formula]) -> Result<Vec<Formula>> {
    gamma.iter().map(|g| rho_translate(ctx, g)).collect()
}

/// Composite `g • f` of contexts `f: a → a′` and `g: a′ → a″`, with
/// `θ(x0) = θ_f(θ_g(x0))` and sections composed as `ρ_f ∘ ρ_g`.
pub fn compose_contexts(g: &GlivenkoContext, f: &GlivenkoContext) -> Result<GlivenkoContext> {
    if f.target() != g.source() {
        return Err(Error::SignatureMismatch(format!(
            "cannot compose a context into {} with one out of {}",
            f.target(),
            g.source()
        )));
    }
    g.theta.check(f.source().signature()).map_err(|_| {
        Error::Unsupported(format!("θ = {} is not a formula of {}", g.theta, f.source()))
    })?;
    let map = g.h().compose_after(f.h())?;
    let morphism = LogicMorphism::new(f.source().clone(), g.target().clone(), map)?;
    let theta = f.theta.instantiate(std::slice::from_ref(&g.theta));
    let adjoint = Adjoint::Composite(Box::new(f.clone()), Box::new(g.clone()));
    GlivenkoContext::new(morphism, theta, adjoint, f.pair.clone(), g.target_pair.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::build;

    #[test]
    fn rho_examples() {
        let ctx = GlivenkoContext::classical();
        let x0 = Formula::var(0);
        assert_eq!(rho_translate(&ctx, &x0).unwrap(), Formula::neg(Formula::neg(x0.clone())));
        let id = GlivenkoContext::identity(&LogicSpec::ipc(), &AlgebraizingPair::iff());
        let phi = Formula::peirce();
        assert_eq!(rho_translate(&id, &phi).unwrap(), phi);
        assert_eq!(rho_translate_all(&ctx, &[x0.clone(), phi]).unwrap().len(), 2);
        assert!(rho_translate(&ctx, &Formula::app("box", vec![x0])).is_err());
    }

    #[test]
    fn classical_context_validates() {
        let ctx = GlivenkoContext::classical();
        let v = ctx.validate(&FilterBounds { vars: 2, depth: 1, gamma_size: 1, ..FilterBounds::default() }).unwrap();
        assert!(v.passed(), "{v}");
        assert!(v.undense.is_empty(), "{v}");
    }

    #[test]
    fn reflection_agrees_with_regular_elements() {
        let ctx = GlivenkoContext::classical();
        let reflective = GlivenkoContext { adjoint: Adjoint::Reflection, ..ctx.clone() };
        for h in [build::chain(3), build::chain(4), build::boolean(2), build::chain(5)] {
            let a = ctx.left_adjoint(&h).unwrap();
            let b = reflective.left_adjoint(&h).unwrap();
            assert_eq!(a.algebra.size(), b.algebra.size());
            assert_eq!(a.unit.iter().map(|&u| a.section[u]).collect::<Vec<_>>(), b.unit.iter().map(|&u| b.section[u]).collect::<Vec<_>>());
        }
        assert!(matches!(reflective.left_adjoint(&build::chain(6)), Err(Error::BoundExhausted(_))));
    }
}
