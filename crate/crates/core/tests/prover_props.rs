mod common;

use aal_core::algebra::build;
use aal_core::provers::{cpc_decide, ipc_decide, kripke_countermodel, IpcProver};
use aal_core::semantics::Matrix;
use aal_core::syntax::enumerate_formulas;
use aal_core::{Formula, Signature};
use common::{dn, formula, formulas};
use proptest::prelude::*;

fn sig() -> Signature {
    Signature::propositional_with_iff()
}

/// Every formula over three variables up to depth two.
#[test]
fn classical_and_intuitionistic_verdicts_exhaustive() {
    let b2 = Matrix::with_elements(build::boolean(1), &[1]).unwrap();
    let mut ipc = IpcProver::new();
    let all = enumerate_formulas(&sig(), 3, 2);
    let mut classical_only = 0;
    for phi in &all {
        let c = cpc_decide(&[], phi).unwrap();
        assert_eq!(c, b2.satisfies(&[], phi).unwrap(), "{phi}");
        let i = ipc.decide(&[], phi).unwrap();
        assert!(!i || c, "{phi}");
        if c && !i {
            classical_only += 1;
        }
        assert_eq!(c, ipc.decide(&[], &dn(phi.clone())).unwrap(), "¬¬{phi}");
    }
    assert!(classical_only > 0);
}

#[test]
fn prover_and_kripke_refuter_never_conflict_exhaustive() {
    for phi in enumerate_formulas(&sig(), 2, 2) {
        if ipc_decide(&[], &phi).unwrap() {
            assert!(kripke_countermodel(&[], &phi, 3).unwrap().is_none(), "{phi}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn classical_prover_matches_two_element_matrix(
        gamma in formulas(sig(), 3, 3, 2),
        phi in formula(sig(), 3, 4),
    ) {
        let b2 = Matrix::with_elements(build::boolean(1), &[1]).unwrap();
        prop_assert_eq!(cpc_decide(&gamma, &phi).unwrap(), b2.satisfies(&gamma, &phi).unwrap());
    }

    #[test]
    fn intuitionistic_is_contained_in_classical(gamma in formulas(sig(), 3, 3, 2), phi in formula(sig(), 3, 4)) {
        if ipc_decide(&gamma, &phi).unwrap() {
            prop_assert!(cpc_decide(&gamma, &phi).unwrap());
        }
    }

    #[test]
    fn prover_and_refuter_agree(gamma in formulas(sig(), 2, 2, 1), phi in formula(sig(), 2, 3)) {
        let proved = ipc_decide(&gamma, &phi).unwrap();
        let refuted = kripke_countermodel(&gamma, &phi, 4).unwrap().is_some();
        prop_assert!(!(proved && refuted));
    }

    #[test]
    fn glivenko_translation_of_theorems(phi in formula(sig(), 3, 4)) {
        prop_assert_eq!(cpc_decide(&[], &phi).unwrap(), ipc_decide(&[], &dn(phi.clone())).unwrap());
    }
}

#[test]
fn peirce_separates() {
    let p = Formula::peirce();
    assert!(cpc_decide(&[], &p).unwrap());
    assert!(!ipc_decide(&[], &p).unwrap());
    assert!(kripke_countermodel(&[], &p, 2).unwrap().is_some());
}
