use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::semantics::{Decider, Engine, FilterViolation, LogicSpec};
use crate::syntax::{enumerate_formulas, index_subsets, parse_formula, Formula, Signature};

use super::structure::{find_valuation, FiniteAlgebra};

/// A subset of the carrier `{0..carrier-1}`, kept sorted.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Filter {
    carrier: usize,
    elements: Vec<usize>,
}

impl Filter {
    pub fn new(carrier: usize, elements: impl IntoIterator<Item = usize>) -> Result<Self> {
        let set: BTreeSet<usize> = elements.into_iter().collect();
        if let Some(&bad) = set.iter().find(|&&e| e >= carrier) {
            return Err(Error::OutOfRange {
                element: bad,
                size: carrier,
            });
        }
        Ok(Filter {
            carrier,
            elements: set.into_iter().collect(),
        })
    }

    pub fn full(carrier: usize) -> Self {
        Filter {
            carrier,
            elements: (0..carrier).collect(),
        }
    }

    pub fn from_mask(mask: &[bool]) -> Self {
        Filter {
            carrier: mask.len(),
            elements: (0..mask.len()).filter(|&i| mask[i]).collect(),
        }
    }

    pub fn carrier(&self) -> usize {
        self.carrier
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, a: usize) -> bool {
        self.elements.binary_search(&a).is_ok()
    }

    pub fn mask(&self) -> Vec<bool> {
        let mut m = vec![false; self.carrier];
        for &e in &self.elements {
            m[e] = true;
        }
        m
    }

    pub fn is_subset_of(&self, other: &Filter) -> bool {
        self.elements.iter().all(|&e| other.contains(e))
    }

    pub fn intersection(&self, other: &Filter) -> Filter {
        Filter {
            carrier: self.carrier,
            elements: self
                .elements
                .iter()
                .copied()
                .filter(|&e| other.contains(e))
                .collect(),
        }
    }
}

impl fmt::Debug for Filter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Filter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.elements.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

/// Bounds for filter checks that cannot be decided exactly.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FilterBounds {
    /// Variables in enumerated theorems and entailments.
    pub vars: u32,
    /// Formula depth of enumerated theorems and entailments.
    pub depth: usize,
    /// Largest premise set in the generic entailment check.
    pub gamma_size: usize,
    /// Largest carrier for which [`all_filters`] enumerates subsets.
    pub max_carrier: usize,
}

impl Default for FilterBounds {
    fn default() -> Self {
        FilterBounds {
            vars: 4,
            depth: 2,
            gamma_size: 2,
            max_carrier: 12,
        }
    }
}

const INTUITIONISTIC_AXIOMS: &[(&[&str], &str)] = &[
    (&["imp"], "imp(x0,imp(x1,x0))"),
    (&["imp"], "imp(imp(x0,imp(x1,x2)),imp(imp(x0,x1),imp(x0,x2)))"),
    (&["imp", "and"], "imp(and(x0,x1),x0)"),
    (&["imp", "and"], "imp(and(x0,x1),x1)"),
    (&["imp", "and"], "imp(x0,imp(x1,and(x0,x1)))"),
    (&["imp", "or"], "imp(x0,or(x0,x1))"),
    (&["imp", "or"], "imp(x1,or(x0,x1))"),
    (&["imp", "or"], "imp(imp(x0,x2),imp(imp(x1,x2),imp(or(x0,x1),x2)))"),
    (&["imp", "neg"], "imp(imp(x0,x1),imp(imp(x0,neg(x1)),neg(x0)))"),
    (&["imp", "neg"], "imp(neg(x0),imp(x0,x1))"),
    (&["imp", "iff"], "imp(iff(x0,x1),imp(x0,x1))"),
    (&["imp", "iff"], "imp(iff(x0,x1),imp(x1,x0))"),
    (&["imp", "iff"], "imp(imp(x0,x1),imp(imp(x1,x0),iff(x0,x1)))"),
];

const CLASSICAL_AXIOMS: &[(&[&str], &str)] = &[
    (&["imp", "neg"], "imp(neg(neg(x0)),x0)"),
    (&["imp"], "imp(imp(imp(x0,x1),x0),x0)"),
];

/// Axiom schemes of the Hilbert calculus of a built-in logic whose
/// connectives all occur in `sig`. Modus ponens is the only rule.
pub fn hilbert_axioms(classical: bool, sig: &Signature) -> Vec<Formula> {
    let extra: &[(&[&str], &str)] = if classical { CLASSICAL_AXIOMS } else { &[] };
    INTUITIONISTIC_AXIOMS
        .iter()
        .chain(extra)
        .filter(|(needs, _)| needs.iter().all(|c| sig.contains(c)))
        .map(|(_, text)| parse_formula(sig, text).expect("axiom schemes are well formed"))
        .collect()
}

/// Formulas every valuation of which must land in an l-filter, for logics
/// whose filters are exactly the theorem-containing, modus-ponens-closed
/// sets.
fn implicative_basis(l: &LogicSpec, alg: &FiniteAlgebra, bounds: &FilterBounds) -> Result<Vec<Formula>> {
    let sig = l.signature();
    if sig.arity("imp") != Some(2) || alg.signature().arity("imp") != Some(2) {
        return Err(Error::NotImplicative(format!(
            "no binary `imp` shared by {sig} and the algebra"
        )));
    }
    let usable: Vec<&str> = sig
        .connectives()
        .iter()
        .filter(|c| alg.signature().arity(&c.name) == Some(c.arity))
        .map(|c| c.name.as_str())
        .collect();
    let common = sig.restrict(&usable);
    match l.engine() {
        Engine::Cpc => Ok(hilbert_axioms(true, &common)),
        Engine::Ipc => Ok(hilbert_axioms(false, &common)),
        Engine::Matrices(_) => {
            let mut decider = Decider::new(l);
            let x0 = Formula::var(0);
            let x1 = Formula::var(1);
            if !decider.decide(&[], &Formula::imp(x0.clone(), x0.clone()))?
                || !decider.decide(&[x0.clone(), Formula::imp(x0.clone(), x1.clone())], &x1)?
            {
                return Err(Error::NotImplicative(
                    "the logic lacks ⊢ imp(x0,x0) or detachment for imp".into(),
                ));
            }
            if alg.size() as u32 > bounds.vars {
                return Err(Error::BoundExhausted(format!(
                    "theorems are enumerated in {} variables, the carrier has {} elements",
                    bounds.vars,
                    alg.size()
                )));
            }
            let mut out = Vec::new();
            for phi in enumerate_formulas(&common, alg.size() as u32, bounds.depth) {
                if decider.decide(&[], &phi)? {
                    out.push(phi);
                }
            }
            Ok(out)
        }
    }
}

/// All values of `phi` in `alg` over every valuation of its variables.
fn value_set(alg: &FiniteAlgebra, phi: &Formula) -> Result<Vec<bool>> {
    let program = alg.compile(phi)?;
    let vars: Vec<u32> = phi.variables().into_iter().collect();
    let mut seen = vec![false; alg.size()];
    let mut stack = Vec::new();
    find_valuation(&vars, alg.size(), |v| {
        seen[program.eval(alg, v, &mut stack)] = true;
        false
    });
    Ok(seen)
}

fn mp_close(alg: &FiniteAlgebra, member: &mut [bool]) {
    let imp = alg.signature().index_of("imp").expect("checked implicative");
    let n = alg.size();
    loop {
        let mut changed = false;
        for a in 0..n {
            if !member[a] {
                continue;
            }
            for b in 0..n {
                if !member[b] && member[alg.apply(imp, &[a, b])] {
                    member[b] = true;
                    changed = true;
                }
            }
        }
        if !changed {
            return;
        }
    }
}

/// The least l-filter of `alg` containing `seed`.
pub fn filter_closure(l: &LogicSpec, alg: &FiniteAlgebra, seed: &[usize]) -> Result<Filter> {
    filter_closure_with(l, alg, seed, &FilterBounds::default())
}

pub fn filter_closure_with(
    l: &LogicSpec,
    alg: &FiniteAlgebra,
    seed: &[usize],
    bounds: &FilterBounds,
) -> Result<Filter> {
    let n = alg.size();
    let mut member = vec![false; n];
    for &s in seed {
        if s >= n {
            return Err(Error::OutOfRange { element: s, size: n });
        }
        member[s] = true;
    }
    let basis = implicative_basis(l, alg, bounds).map_err(|e| match e {
        Error::NotImplicative(msg) => Error::NotImplicative(format!(
            "filter generation needs an implicative logic: {msg}"
        )),
        other => other,
    })?;
    for phi in &basis {
        for (a, hit) in value_set(alg, phi)?.into_iter().enumerate() {
            member[a] |= hit;
        }
    }
    mp_close(alg, &mut member);
    Ok(Filter::from_mask(&member))
}

/// A reason why `filter` is not an l-filter of `alg`, if there is one.
///
/// Exact for the built-in logics. For implicative matrix logics theorems are
/// enumerated within `bounds`; for other logics entailments `Γ ⊢ φ` with
/// `|Γ| ≤ bounds.gamma_size` over formulas within the bounds are tested.
pub fn filter_violation(
    l: &LogicSpec,
    alg: &FiniteAlgebra,
    filter: &Filter,
    bounds: &FilterBounds,
) -> Result<Option<FilterViolation>> {
    if filter.carrier() != alg.size() {
        return Err(Error::OutOfRange {
            element: filter.carrier(),
            size: alg.size(),
        });
    }
    match implicative_basis(l, alg, bounds) {
        Ok(basis) => Ok(implicative_violation(alg, filter, &basis)?),
        Err(Error::NotImplicative(_)) => generic_violation(l, alg, filter, bounds),
        Err(e) => Err(e),
    }
}

fn implicative_violation(
    alg: &FiniteAlgebra,
    filter: &Filter,
    basis: &[Formula],
) -> Result<Option<FilterViolation>> {
    for phi in basis {
        let program = alg.compile(phi)?;
        let vars: Vec<u32> = phi.variables().into_iter().collect();
        let mut stack = Vec::new();
        if let Some(v) = find_valuation(&vars, alg.size(), |v| {
            !filter.contains(program.eval(alg, v, &mut stack))
        }) {
            return Ok(Some(FilterViolation {
                premises: Vec::new(),
                conclusion: phi.clone(),
                valuation: v,
            }));
        }
    }
    let imp = alg.signature().index_of("imp").expect("checked implicative");
    for &a in filter.elements() {
        for b in 0..alg.size() {
            if !filter.contains(b) && filter.contains(alg.apply(imp, &[a, b])) {
                let (x0, x1) = (Formula::var(0), Formula::var(1));
                return Ok(Some(FilterViolation {
                    premises: vec![x0.clone(), Formula::imp(x0, x1.clone())],
                    conclusion: x1,
                    valuation: vec![a, b],
                }));
            }
        }
    }
    Ok(None)
}

fn generic_violation(
    l: &LogicSpec,
    alg: &FiniteAlgebra,
    filter: &Filter,
    bounds: &FilterBounds,
) -> Result<Option<FilterViolation>> {
    let formulas = enumerate_formulas(l.signature(), bounds.vars, bounds.depth);
    let vars: Vec<u32> = (0..bounds.vars).collect();
    let programs = formulas
        .iter()
        .map(|f| alg.compile(f))
        .collect::<Result<Vec<_>>>()?;
    let mut decider = Decider::new(l);
    let mut cache: HashMap<(Vec<usize>, usize), bool> = HashMap::new();
    let mut stack = Vec::new();
    let mut failure: Option<Result<FilterViolation>> = None;
    find_valuation(&vars, alg.size(), |v| {
        let inside: Vec<bool> = programs
            .iter()
            .map(|p| filter.contains(p.eval(alg, v, &mut stack)))
            .collect();
        let held: Vec<usize> = (0..formulas.len()).filter(|&i| inside[i]).collect();
        let failed: Vec<usize> = (0..formulas.len()).filter(|&i| !inside[i]).collect();
        let premise_sets: Vec<Vec<usize>> = index_subsets(held.len(), bounds.gamma_size)
            .into_iter()
            .map(|ix| ix.into_iter().map(|i| held[i]).collect())
            .collect();
        for gamma in &premise_sets {
            let premises: Vec<Formula> = gamma.iter().map(|&i| formulas[i].clone()).collect();
            for &c in &failed {
                let key = (gamma.clone(), c);
                let entailed = match cache.get(&key) {
                    Some(&b) => b,
                    None => match decider.decide(&premises, &formulas[c]) {
                        Ok(b) => {
                            cache.insert(key, b);
                            b
                        }
                        Err(e) => {
                            failure = Some(Err(e));
                            return true;
                        }
                    },
                };
                if entailed {
                    failure = Some(Ok(FilterViolation {
                        premises,
                        conclusion: formulas[c].clone(),
                        valuation: v.to_vec(),
                    }));
                    return true;
                }
            }
        }
        false
    });
    failure.transpose()
}

pub fn is_filter(l: &LogicSpec, alg: &FiniteAlgebra, filter: &Filter) -> Result<bool> {
    Ok(filter_violation(l, alg, filter, &FilterBounds::default())?.is_none())
}

/// Every l-filter of `alg`, smaller filters first, then by elements.
pub fn all_filters(l: &LogicSpec, alg: &FiniteAlgebra) -> Result<Vec<Filter>> {
    all_filters_with(l, alg, &FilterBounds::default())
}

pub fn all_filters_with(l: &LogicSpec, alg: &FiniteAlgebra, bounds: &FilterBounds) -> Result<Vec<Filter>> {
    let n = alg.size();
    if n > bounds.max_carrier {
        return Err(Error::BoundExhausted(format!(
            "carrier of {n} elements exceeds the subset bound {}",
            bounds.max_carrier
        )));
    }
    let basis = implicative_basis(l, alg, bounds)?;
    let mut out = Vec::new();
    for mask in 0u64..(1 << n) {
        let filter = Filter::new(n, (0..n).filter(|&i| mask >> i & 1 == 1))?;
        if implicative_violation(alg, &filter, &basis)?.is_none() {
            out.push(filter);
        }
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.elements().cmp(b.elements())));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::build;

    #[test]
    fn closures() {
        let h3 = build::chain(3);
        let ipc = LogicSpec::ipc();
        assert_eq!(filter_closure(&ipc, &h3, &[1]).unwrap().elements(), &[1, 2]);
        let b2 = build::boolean(1);
        assert_eq!(filter_closure(&LogicSpec::cpc(), &b2, &[]).unwrap().elements(), &[1]);
        assert_eq!(filter_closure(&ipc, &h3, &[0, 1, 2]).unwrap().elements(), &[0, 1, 2]);
    }

    #[test]
    fn filter_lattices() {
        let b2 = build::boolean(1);
        let fs = all_filters(&LogicSpec::cpc(), &b2).unwrap();
        assert_eq!(fs, vec![Filter::new(2, [1]).unwrap(), Filter::full(2)]);
        let h3 = build::chain(3);
        let fs = all_filters(&LogicSpec::ipc(), &h3).unwrap();
        let elems: Vec<&[usize]> = fs.iter().map(|f| f.elements()).collect();
        assert_eq!(elems, vec![&[2][..], &[1, 2], &[0, 1, 2]]);
    }

    #[test]
    fn classical_filters_on_three_chain() {
        // Peirce fails at the middle element, so {2} is not a CPC filter
        let h3 = build::chain(3);
        let v = filter_violation(&LogicSpec::cpc(), &h3, &Filter::new(3, [2]).unwrap(), &FilterBounds::default())
            .unwrap()
            .expect("violation");
        assert!(v.premises.is_empty());
    }
}
