use std::fmt;

use crate::algebra::{filter_violation, FiniteAlgebra, FilterBounds};
use crate::error::{Error, Result};
use crate::syntax::{enumerate_formulas, index_subsets, FlexibleMorphism, Formula};

use super::logic::{Decider, LogicSpec, Matrix};

/// A consequence `Γ ⊢ φ` of a logic that fails in a matrix under `valuation`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FilterViolation {
    pub premises: Vec<Formula>,
    pub conclusion: Formula,
    /// Dense valuation indexed by variable number.
    pub valuation: Vec<usize>,
}

impl fmt::Display for FilterViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, p) in self.premises.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "}} ⊢ {} fails at {:?}", self.conclusion, self.valuation)
    }
}

/// The reduct `h*(M)`: same carrier, each source connective `c`
/// interpreted as the `M`-evaluation of `h(c)`.
pub fn reduct(h: &FlexibleMorphism, m: &FiniteAlgebra) -> Result<FiniteAlgebra> {
    let programs = h
        .assignment()
        .iter()
        .map(|f| m.compile(f))
        .collect::<Result<Vec<_>>>()?;
    let mut stack = Vec::new();
    FiniteAlgebra::from_fn(h.source().clone(), m.size(), |ci, args| {
        programs[ci].eval(m, args, &mut stack)
    })
}

/// A signature morphism between two logics, expected to preserve
/// consequence: `Γ ⊢ φ` implies `ȟ[Γ] ⊢' ȟ(φ)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LogicMorphism {
    source: LogicSpec,
    target: LogicSpec,
    map: FlexibleMorphism,
}

impl LogicMorphism {
    pub fn new(source: LogicSpec, target: LogicSpec, map: FlexibleMorphism) -> Result<Self> {
        if map.source() != source.signature() || map.target() != target.signature() {
            return Err(Error::SignatureMismatch(format!(
                "morphism {} → {} does not connect {} and {}",
                map.source(),
                map.target(),
                source.signature(),
                target.signature()
            )));
        }
        Ok(LogicMorphism { source, target, map })
    }

    pub fn identity(l: &LogicSpec) -> Self {
        LogicMorphism {
            source: l.clone(),
            target: l.clone(),
            map: FlexibleMorphism::identity(l.signature()),
        }
    }

    pub fn source(&self) -> &LogicSpec {
        &self.source
    }

    pub fn target(&self) -> &LogicSpec {
        &self.target
    }

    pub fn map(&self) -> &FlexibleMorphism {
        &self.map
    }

    /// The first bounded source consequence `Γ ⊢ φ` whose translation fails
    /// in the target, if any. Premise sets are drawn from the formulas within
    /// `bounds` with at most `bounds.gamma_size` members.
    pub fn preservation_witness(&self, bounds: &FilterBounds) -> Result<Option<(Vec<Formula>, Formula)>> {
        let formulas = enumerate_formulas(self.source.signature(), bounds.vars, bounds.depth);
        let translated = self.map.extend_all(&formulas)?;
        let mut src = Decider::new(&self.source);
        let mut tgt = Decider::new(&self.target);
        for gamma in index_subsets(formulas.len(), bounds.gamma_size) {
            let premises: Vec<Formula> = gamma.iter().map(|&i| formulas[i].clone()).collect();
            let images: Vec<Formula> = gamma.iter().map(|&i| translated[i].clone()).collect();
            for (phi, image) in formulas.iter().zip(&translated) {
                if src.decide(&premises, phi)? && !tgt.decide(&images, image)? {
                    return Ok(Some((premises, phi.clone())));
                }
            }
        }
        Ok(None)
    }
}

/// How [`mod_translate_with`] certifies its preconditions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TranslateOptions {
    /// Check consequence preservation within `preservation_bounds` instead of
    /// trusting it.
    pub check_preservation: bool,
    pub preservation_bounds: FilterBounds,
    /// Bounds for the filter checks on both sides.
    pub filter_bounds: FilterBounds,
}

impl Default for TranslateOptions {
    fn default() -> Self {
        TranslateOptions {
            check_preservation: true,
            preservation_bounds: FilterBounds {
                vars: 2,
                depth: 1,
                gamma_size: 1,
                ..FilterBounds::default()
            },
            filter_bounds: FilterBounds {
                vars: 2,
                depth: 1,
                ..FilterBounds::default()
            },
        }
    }
}

/// `Mod(h)(⟨M,F⟩) = ⟨h*(M), F⟩`, with the filter checked against the
/// source logic.
pub fn mod_translate(h: &LogicMorphism, m: &Matrix) -> Result<Matrix> {
    mod_translate_with(h, m, &TranslateOptions::default())
}

pub fn mod_translate_with(h: &LogicMorphism, m: &Matrix, opts: &TranslateOptions) -> Result<Matrix> {
    if opts.check_preservation {
        if let Some((gamma, phi)) = h.preservation_witness(&opts.preservation_bounds)? {
            let shown: Vec<String> = gamma.iter().map(|g| g.to_string()).collect();
            return Err(Error::Precondition(format!(
                "translation does not preserve {{{}}} ⊢ {phi}",
                shown.join("; ")
            )));
        }
    }
    if let Some(v) = filter_violation(h.target(), m.algebra(), m.filter(), &opts.filter_bounds)? {
        return Err(Error::Precondition(format!(
            "the matrix is not a model of the target logic: {v}"
        )));
    }
    let algebra = reduct(h.map(), m.algebra())?;
    if let Some(v) = filter_violation(h.source(), &algebra, m.filter(), &opts.filter_bounds)? {
        return Err(Error::Filter(Box::new(v)));
    }
    Matrix::new(algebra, m.filter().clone())
}

/// Both sides of the satisfaction condition for `I_f`:
/// `M ⊨ ⟨ȟ[Γ], ȟ(φ)⟩` and `⟨reduct, F⟩ ⊨ ⟨Γ, φ⟩`.
pub fn satisfaction_sides(
    h: &FlexibleMorphism,
    m: &Matrix,
    reduct_algebra: &FiniteAlgebra,
    gamma: &[Formula],
    phi: &Formula,
) -> Result<(bool, bool)> {
    let images = h.extend_all(gamma)?;
    let image = h.extend(phi)?;
    let left = m.satisfies(&images, &image)?;
    let right = Matrix::new(reduct_algebra.clone(), m.filter().clone())?.satisfies(gamma, phi)?;
    Ok((left, right))
}

/// Whether the satisfaction condition holds for this instance.
pub fn satisfaction_condition_check(
    h: &FlexibleMorphism,
    m: &Matrix,
    gamma: &[Formula],
    phi: &Formula,
) -> Result<bool> {
    let r = reduct(h, m.algebra())?;
    let (left, right) = satisfaction_sides(h, m, &r, gamma, phi)?;
    Ok(left == right)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::build;
    use crate::syntax::Signature;
    use std::collections::BTreeMap;

    fn x(i: u32) -> Formula {
        Formula::var(i)
    }

    fn double_neg_on(sig: &Signature) -> FlexibleMorphism {
        let map = BTreeMap::from([("neg".to_string(), Formula::neg(Formula::neg(x(0))))]);
        FlexibleMorphism::from_map(sig.clone(), sig.clone(), &map).unwrap()
    }

    #[test]
    fn reduct_tables() {
        let h3 = build::chain(3);
        let sig = Signature::propositional_with_iff();
        let id = FlexibleMorphism::identity(&sig);
        assert_eq!(reduct(&id, &h3).unwrap(), h3);
        let r = reduct(&double_neg_on(&sig), &h3).unwrap();
        assert_eq!(r.table("neg").unwrap(), &[0, 2, 2]);
        assert_eq!(r.size(), h3.size());
    }

    #[test]
    fn translate_models() {
        let b2 = Matrix::with_elements(build::boolean(1), &[1]).unwrap();
        let ipc_to_cpc = LogicMorphism::new(
            LogicSpec::ipc(),
            LogicSpec::cpc(),
            FlexibleMorphism::identity(&Signature::propositional_with_iff()),
        )
        .unwrap();
        assert_eq!(mod_translate(&ipc_to_cpc, &b2).unwrap(), b2);
        // ¬¬ on neg is a morphism out of the logic of its own reduct of B2
        let sig = Signature::propositional_with_iff();
        let h = double_neg_on(&sig);
        let reduced = Matrix::with_elements(reduct(&h, b2.algebra()).unwrap(), &[1]).unwrap();
        let source = LogicSpec::matrices(sig, vec![reduced]).unwrap();
        let dn = LogicMorphism::new(source, LogicSpec::cpc(), h).unwrap();
        let out = mod_translate(&dn, &b2).unwrap();
        assert_eq!(out.algebra().table("neg").unwrap(), &[0, 1]);
    }

    #[test]
    fn satisfaction_condition_examples() {
        let b2 = Matrix::with_elements(build::boolean(1), &[1]).unwrap();
        let sig = Signature::propositional_with_iff();
        let h = double_neg_on(&sig);
        assert!(satisfaction_condition_check(&h, &b2, &[x(0)], &x(0)).unwrap());
        assert!(satisfaction_condition_check(&FlexibleMorphism::identity(&sig), &b2, &[], &x(0)).unwrap());
    }

    #[test]
    fn cpc_into_ipc_is_not_a_morphism() {
        let wrong = LogicMorphism::new(
            LogicSpec::cpc(),
            LogicSpec::ipc(),
            FlexibleMorphism::identity(&Signature::propositional_with_iff()),
        )
        .unwrap();
        let h3 = Matrix::with_elements(build::chain(3), &[2]).unwrap();
        let checking = TranslateOptions {
            preservation_bounds: FilterBounds {
                vars: 1,
                depth: 2,
                gamma_size: 0,
                ..FilterBounds::default()
            },
            ..TranslateOptions::default()
        };
        assert!(matches!(
            mod_translate_with(&wrong, &h3, &checking),
            Err(Error::Precondition(_))
        ));
        let trusting = TranslateOptions {
            check_preservation: false,
            ..TranslateOptions::default()
        };
        assert!(matches!(
            mod_translate_with(&wrong, &h3, &trusting),
            Err(Error::Filter(_))
        ));
    }
}
