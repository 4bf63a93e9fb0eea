mod common;

use std::collections::BTreeMap;

use aal_core::algebra::{build, is_reduced};
use aal_core::corpus;
use aal_core::semantics::{consequence, mod_translate, satisfaction_condition_check, LogicMorphism, LogicSpec, Matrix};
use aal_core::syntax::{parse_formula, Substitution};
use aal_core::{FlexibleMorphism, Formula, Signature};
use common::{formula, formulas, morphism};
use proptest::prelude::*;
use proptest::sample::select;

fn family() -> LogicSpec {
    let sig = Signature::propositional();
    let m = |a: aal_core::FiniteAlgebra, f: &[usize]| Matrix::with_elements(a.restrict(&sig).unwrap(), f).unwrap();
    LogicSpec::matrices(sig.clone(), vec![m(build::boolean(1), &[1]), m(build::chain(3), &[1, 2])]).unwrap()
}

fn matrix_logics() -> Vec<LogicSpec> {
    vec![family(), corpus::logic("l3_logic").unwrap()]
}

fn corpus_matrices() -> Vec<Matrix> {
    let mut out = Vec::new();
    for (_, a) in corpus::algebras() {
        if a.size() > 5 {
            continue;
        }
        let top = a.size() - 1;
        out.push(Matrix::with_elements(a.clone(), &[top]).unwrap());
        if a.size() > 2 {
            out.push(Matrix::with_elements(a.clone(), &[top - 1, top]).unwrap());
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn matrix_consequence_is_tarskian(
        li in 0usize..2,
        gamma in formulas(Signature::implicational_negation(), 2, 2, 2),
        extra in formula(Signature::implicational_negation(), 2, 2),
        phi in formula(Signature::implicational_negation(), 2, 2),
        images in proptest::collection::vec(formula(Signature::implicational_negation(), 2, 1), 2),
    ) {
        let l = &matrix_logics()[li];
        for g in &gamma {
            prop_assert!(consequence(l, &gamma, g).unwrap());
        }
        let holds = consequence(l, &gamma, &phi).unwrap();
        let mut wider = gamma.clone();
        wider.push(extra.clone());
        if holds {
            prop_assert!(consequence(l, &wider, &phi).unwrap());
            let sigma: Substitution = images.iter().cloned().enumerate().map(|(i, f)| (i as u32, f)).collect();
            let moved: Vec<Formula> = gamma.iter().map(|g| g.substitute(&sigma)).collect();
            prop_assert!(consequence(l, &moved, &phi.substitute(&sigma)).unwrap());
        }
        if consequence(l, &gamma, &extra).unwrap() && consequence(l, &wider, &phi).unwrap() {
            prop_assert!(holds);
        }
    }

    #[test]
    fn satisfaction_condition_holds(
        h in morphism(Signature::propositional_with_iff(), 2),
        m in select(corpus_matrices()),
        gamma in formulas(Signature::propositional_with_iff(), 2, 2, 2),
        phi in formula(Signature::propositional_with_iff(), 2, 3),
    ) {
        prop_assume!(m.algebra().signature() == &Signature::propositional_with_iff());
        prop_assert!(satisfaction_condition_check(&h, &m, &gamma, &phi).unwrap());
    }
}

/// Argument swaps are invertible up to interderivability, so reducts of
/// reduced models stay reduced.
#[test]
fn translation_along_an_invertible_morphism_keeps_models_reduced() {
    let sig = Signature::propositional_with_iff();
    let map: BTreeMap<String, Formula> = [("and", "and(x1,x0)"), ("or", "or(x1,x0)"), ("iff", "iff(x1,x0)")]
        .iter()
        .map(|(k, v)| (k.to_string(), parse_formula(&sig, v).unwrap()))
        .collect();
    let swap = FlexibleMorphism::from_map(sig.clone(), sig.clone(), &map).unwrap();
    let mut checked = 0;
    for (l, algebras) in [
        (LogicSpec::cpc(), corpus::boolean_algebras()),
        (LogicSpec::ipc(), corpus::heyting_algebras()),
    ] {
        let h = LogicMorphism::new(l.clone(), l.clone(), swap.clone()).unwrap();
        for (name, a) in algebras.into_iter().filter(|(_, a)| a.size() <= 6) {
            let top = a.size() - 1;
            let m = Matrix::with_elements(a, &[top]).unwrap();
            assert!(is_reduced(m.algebra(), m.filter()).unwrap(), "{name}");
            let t = mod_translate(&h, &m).unwrap();
            assert!(is_reduced(t.algebra(), t.filter()).unwrap(), "{l} {name}");
            checked += 1;
        }
    }
    assert!(checked >= 10);
}
