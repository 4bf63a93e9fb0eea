use std::collections::HashSet;
use std::fmt;

use crate::algebra::FiniteAlgebra;
use crate::error::{Error, Result};
use crate::provers::{quasiidentity_holds, Equation};
use crate::semantics::{Decider, LogicSpec};
use crate::syntax::{enumerate_formulas, index_subsets, Formula};

use super::pair::AlgebraizingPair;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum QuasiKind {
    /// `δ(x0Δx0) ≡ ε(x0Δx0)`.
    Reflexive,
    /// `δ(x0Δx1) ≡ ε(x0Δx1) → x0 ≡ x1`.
    Antisymmetric,
    /// `τ[Γ] → τ(φ)` for a bounded consequence `Γ ⊢ φ`.
    Rule,
}

/// `premises → conclusion`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuasiIdentity {
    pub kind: QuasiKind,
    pub premises: Vec<Equation>,
    pub conclusion: Equation,
    /// The consequence a [`QuasiKind::Rule`] axiom was generated from.
    pub origin: Option<(Vec<Formula>, Formula)>,
}

impl QuasiIdentity {
    pub fn holds_in(&self, alg: &FiniteAlgebra) -> Result<bool> {
        quasiidentity_holds(alg, &self.premises, &self.conclusion)
    }
}

impl fmt::Display for QuasiIdentity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prem: Vec<String> = self.premises.iter().map(|p| p.to_string()).collect();
        if prem.is_empty() {
            write!(f, "{}", self.conclusion)
        } else {
            write!(f, "{} → {}", prem.join(" ∧ "), self.conclusion)
        }
    }
}

/// Bounds for the consequence search behind the rule axioms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QvBounds {
    pub vars: u32,
    pub depth: usize,
    pub gamma_size: usize,
}

impl Default for QvBounds {
    fn default() -> Self {
        QvBounds {
            vars: 2,
            depth: 1,
            gamma_size: 2,
        }
    }
}

/// Quasi-identities of the three kinds. Rule axioms come from consequences
/// `Γ ⊢ φ` within `bounds` with `φ ∉ Γ` and no proper subset of `Γ`
/// entailing `φ`.
pub fn qv_axioms(l: &LogicSpec, pair: &AlgebraizingPair, bounds: &QvBounds) -> Result<Vec<QuasiIdentity>> {
    pair.check(l.signature())?;
    let x = Formula::var;
    let mut out = Vec::new();
    let refl = pair.delta_of(&x(0), &x(0));
    for d in &refl {
        for conclusion in pair.tau_of(d) {
            out.push(QuasiIdentity {
                kind: QuasiKind::Reflexive,
                premises: vec![],
                conclusion,
                origin: None,
            });
        }
    }
    out.push(QuasiIdentity {
        kind: QuasiKind::Antisymmetric,
        premises: pair.tau_all(&pair.delta_of(&x(0), &x(1))),
        conclusion: Equation::new(x(0), x(1)),
        origin: None,
    });
    let formulas = enumerate_formulas(l.signature(), bounds.vars, bounds.depth);
    let mut decider = Decider::new(l);
    let mut entailed: HashSet<(Vec<usize>, usize)> = HashSet::new();
    for gamma in index_subsets(formulas.len(), bounds.gamma_size) {
        let premises: Vec<Formula> = gamma.iter().map(|&i| formulas[i].clone()).collect();
        for (k, phi) in formulas.iter().enumerate() {
            if gamma.contains(&k) {
                continue;
            }
            let redundant = (0..gamma.len()).any(|skip| {
                let sub: Vec<usize> = gamma.iter().enumerate().filter(|(i, _)| *i != skip).map(|(_, &g)| g).collect();
                entailed.contains(&(sub, k))
            });
            if redundant {
                entailed.insert((gamma.clone(), k));
                continue;
            }
            if !decider.decide(&premises, phi)? {
                continue;
            }
            entailed.insert((gamma.clone(), k));
            for conclusion in pair.tau_of(phi) {
                out.push(QuasiIdentity {
                    kind: QuasiKind::Rule,
                    premises: pair.tau_all(&premises),
                    conclusion,
                    origin: Some((premises.clone(), phi.clone())),
                });
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QvClass {
    Boolean,
    Heyting,
}

/// The first failing law and a witness tuple, if any.
pub fn qv_violation(class: QvClass, alg: &FiniteAlgebra) -> Result<Option<String>> {
    let op = |name: &str| -> Result<&[usize]> {
        alg.table(name)
            .ok_or_else(|| Error::SignatureMismatch(format!("missing connective `{name}`")))
    };
    let (neg, imp, and, or) = (op("neg")?, op("imp")?, op("and")?, op("or")?);
    for (name, arity) in [("neg", 1), ("imp", 2), ("and", 2), ("or", 2)] {
        if alg.signature().arity(name) != Some(arity) {
            return Err(Error::SignatureMismatch(format!("`{name}` must have arity {arity}")));
        }
    }
    let n = alg.size();
    if n == 0 {
        return Ok(Some("empty carrier".into()));
    }
    let m = |a: usize, b: usize| and[a * n + b];
    let j = |a: usize, b: usize| or[a * n + b];
    let i = |a: usize, b: usize| imp[a * n + b];
    let le = |a: usize, b: usize| m(a, b) == a;
    for a in 0..n {
        if m(a, a) != a || j(a, a) != a {
            return Ok(Some(format!("idempotence fails at {a}")));
        }
        for b in 0..n {
            if m(a, b) != m(b, a) || j(a, b) != j(b, a) {
                return Ok(Some(format!("commutativity fails at ({a},{b})")));
            }
            if m(a, j(a, b)) != a || j(a, m(a, b)) != a {
                return Ok(Some(format!("absorption fails at ({a},{b})")));
            }
            for c in 0..n {
                if m(a, m(b, c)) != m(m(a, b), c) || j(a, j(b, c)) != j(j(a, b), c) {
                    return Ok(Some(format!("associativity fails at ({a},{b},{c})")));
                }
                if m(a, j(b, c)) != j(m(a, b), m(a, c)) {
                    return Ok(Some(format!("distributivity fails at ({a},{b},{c})")));
                }
                if le(m(a, b), c) != le(a, i(b, c)) {
                    return Ok(Some(format!("residuation fails at ({a},{b},{c})")));
                }
            }
        }
    }
    let Some(bottom) = (0..n).find(|&b| (0..n).all(|a| le(b, a))) else {
        return Ok(Some("no least element".into()));
    };
    let Some(top) = (0..n).find(|&t| (0..n).all(|a| le(a, t))) else {
        return Ok(Some("no greatest element".into()));
    };
    for a in 0..n {
        if neg[a] != i(a, bottom) {
            return Ok(Some(format!("negation is not a → ⊥ at {a}")));
        }
        if class == QvClass::Boolean && j(a, neg[a]) != top {
            return Ok(Some(format!("excluded middle fails at {a}")));
        }
    }
    if let Some(iff) = alg.table("iff") {
        for a in 0..n {
            for b in 0..n {
                if iff[a * n + b] != m(i(a, b), i(b, a)) {
                    return Ok(Some(format!("iff is not the meet of both implications at ({a},{b})")));
                }
            }
        }
    }
    Ok(None)
}

/// Direct law check for membership in the Boolean or Heyting quasivariety.
pub fn qv_membership(class: QvClass, alg: &FiniteAlgebra) -> Result<bool> {
    Ok(qv_violation(class, alg)?.is_none())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::build;

    #[test]
    fn membership() {
        let b2 = build::boolean(1);
        let h3 = build::chain(3);
        assert!(qv_membership(QvClass::Boolean, &b2).unwrap());
        assert!(qv_membership(QvClass::Heyting, &h3).unwrap());
        assert!(!qv_membership(QvClass::Boolean, &h3).unwrap());
        let diamond = build::boolean(2);
        assert!(qv_membership(QvClass::Boolean, &diamond).unwrap());
        assert!(qv_membership(QvClass::Heyting, &diamond).unwrap());
        let broken = h3.with_entry("imp", &[2, 1], 2).unwrap();
        assert!(qv_violation(QvClass::Heyting, &broken).unwrap().unwrap().contains("residuation"));
        let small = h3.restrict(&crate::syntax::Signature::from_pairs(&[("imp", 2)]).unwrap()).unwrap();
        assert!(qv_membership(QvClass::Heyting, &small).is_err());
    }

    #[test]
    fn axioms_of_classical_logic() {
        let pair = AlgebraizingPair::iff();
        let qs = qv_axioms(&LogicSpec::cpc(), &pair, &QvBounds::default()).unwrap();
        let x = Formula::var;
        let t = Formula::iff(x(0), x(0));
        let first = &qs[0];
        assert_eq!(first.kind, QuasiKind::Reflexive);
        assert_eq!(first.conclusion, Equation::new(Formula::imp(t.clone(), t.clone()), t));
        assert_eq!(qs.iter().filter(|q| q.kind == QuasiKind::Antisymmetric).count(), 1);
        let mp = (vec![x(0), Formula::imp(x(0), x(1))], x(1));
        assert!(qs.iter().any(|q| q.origin.as_ref() == Some(&mp)));
        let b2 = build::boolean(1);
        for q in &qs {
            assert!(q.holds_in(&b2).unwrap(), "{q}");
        }
    }
}
