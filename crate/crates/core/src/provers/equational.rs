use std::collections::BTreeSet;
use std::fmt;

use crate::algebra::{find_valuation, FiniteAlgebra};
use crate::error::Result;
use crate::syntax::{Formula, Substitution};

/// An identity `lhs ≡ rhs` between formulas.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Equation {
    pub lhs: Formula,
    pub rhs: Formula,
}

impl Equation {
    pub fn new(lhs: Formula, rhs: Formula) -> Self {
        Equation { lhs, rhs }
    }

    pub fn variables(&self) -> BTreeSet<u32> {
        let mut out = BTreeSet::new();
        self.lhs.collect_variables(&mut out);
        self.rhs.collect_variables(&mut out);
        out
    }

    pub fn substitute(&self, sigma: &Substitution) -> Equation {
        Equation::new(self.lhs.substitute(sigma), self.rhs.substitute(sigma))
    }
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ≡ {}", self.lhs, self.rhs)
    }
}

/// A failing instance of an equational entailment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquationalCountermodel {
    /// Position of the algebra in the class.
    pub algebra: usize,
    /// Dense valuation indexed by variable number.
    pub valuation: Vec<usize>,
}

/// The first algebra and valuation satisfying every premise but not the
/// conclusion, if any.
pub fn equational_countermodel(
    class: &[FiniteAlgebra],
    gamma: &[Equation],
    eq: &Equation,
) -> Result<Option<EquationalCountermodel>> {
    let mut vars = eq.variables();
    for g in gamma {
        vars.extend(g.variables());
    }
    let vars: Vec<u32> = vars.into_iter().collect();
    for (k, alg) in class.iter().enumerate() {
        let premises = gamma
            .iter()
            .map(|g| Ok((alg.compile(&g.lhs)?, alg.compile(&g.rhs)?)))
            .collect::<Result<Vec<_>>>()?;
        let (l, r) = (alg.compile(&eq.lhs)?, alg.compile(&eq.rhs)?);
        let mut stack = Vec::new();
        let found = find_valuation(&vars, alg.size(), |v| {
            premises
                .iter()
                .all(|(a, b)| a.eval(alg, v, &mut stack) == b.eval(alg, v, &mut stack))
                && l.eval(alg, v, &mut stack) != r.eval(alg, v, &mut stack)
        });
        if let Some(valuation) = found {
            return Ok(Some(EquationalCountermodel {
                algebra: k,
                valuation,
            }));
        }
    }
    Ok(None)
}

/// `gamma ⊨_K eq`: every valuation into a member of `class` that equalizes
/// all premises equalizes `eq`.
pub fn equational_consequence(class: &[FiniteAlgebra], gamma: &[Equation], eq: &Equation) -> Result<bool> {
    Ok(equational_countermodel(class, gamma, eq)?.is_none())
}

/// Whether the quasi-identity `premises → conclusion` holds in `alg`.
pub fn quasiidentity_holds(alg: &FiniteAlgebra, premises: &[Equation], conclusion: &Equation) -> Result<bool> {
    equational_consequence(std::slice::from_ref(alg), premises, conclusion)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::build;

    fn x(i: u32) -> Formula {
        Formula::var(i)
    }

    #[test]
    fn spot_checks() {
        let b2 = build::boolean(1);
        let h3 = build::chain(3);
        let k = [b2.clone()];
        assert!(equational_consequence(&k, &[], &Equation::new(x(0), x(0))).unwrap());
        let prem = Equation::new(x(0), Formula::imp(x(0), x(0)));
        let concl = Equation::new(x(0), Formula::imp(x(1), x(1)));
        assert!(equational_consequence(&k, &[prem], &concl).unwrap());
        let dn = Equation::new(Formula::neg(Formula::neg(x(0))), x(0));
        assert!(!equational_consequence(&[h3.clone()], &[], &dn).unwrap());
        assert!(!quasiidentity_holds(&h3, &[], &dn).unwrap());
        assert!(quasiidentity_holds(&b2, &[], &dn).unwrap());
    }
}
