mod common;

use aal_core::algebra::{are_isomorphic, is_reduced};
use aal_core::corpus;
use aal_core::glivenko::{
    glivenko_equivalence, lind_compatibility_check, matrix_compatibility_check, regular_elements, section_check,
    GlivenkoContext,
};
use aal_core::institutions::InsLALSentence;
use aal_core::{FiniteAlgebra, Matrix, Signature};
use common::{formula, formulas};
use proptest::prelude::*;
use proptest::sample::select;

fn sig() -> Signature {
    Signature::propositional_with_iff()
}

fn heyting_small() -> Vec<(&'static str, FiniteAlgebra)> {
    corpus::heyting_algebras().into_iter().filter(|(_, h)| h.size() <= 6).collect()
}

#[test]
fn boolean_algebras_are_their_own_regular_elements() {
    for (name, b) in corpus::boolean_algebras() {
        let (reg, embedding) = regular_elements(&b).unwrap();
        assert!(are_isomorphic(&reg, &b), "{name}");
        assert_eq!(embedding, (0..b.size()).collect::<Vec<_>>());
    }
}

#[test]
fn sections_are_natural_on_small_heyting_algebras() {
    let ctx = GlivenkoContext::classical();
    for (name, h) in corpus::heyting_algebras().into_iter().filter(|(_, h)| h.size() <= 5) {
        assert!(section_check(&ctx, &h).unwrap(), "{name}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn classical_context_equivalence(gamma in formulas(sig(), 2, 2, 2), phi in formula(sig(), 2, 3)) {
        let (left, right) = glivenko_equivalence(&GlivenkoContext::classical(), &gamma, &phi).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn matrix_compatibility(
        (_, h) in select(heyting_small()),
        gamma in formulas(sig(), 2, 2, 2),
        phi in formula(sig(), 2, 3),
    ) {
        let m = Matrix::with_elements(h.clone(), &[h.size() - 1]).unwrap();
        prop_assert!(is_reduced(m.algebra(), m.filter()).unwrap());
        for ctx in [GlivenkoContext::classical(), corpus::context("identity_context").unwrap()] {
            prop_assert!(matrix_compatibility_check(&ctx, &m, &gamma, &phi).unwrap());
        }
    }

    #[test]
    fn quasi_equation_compatibility(
        (_, h) in select(heyting_small()),
        premises in formulas(sig(), 2, 2, 2),
        conclusion in formula(sig(), 2, 3),
    ) {
        let q = InsLALSentence::new(premises, conclusion);
        for ctx in [GlivenkoContext::classical(), corpus::context("identity_context").unwrap()] {
            prop_assert!(lind_compatibility_check(&ctx, &h, &q).unwrap());
        }
    }
}
