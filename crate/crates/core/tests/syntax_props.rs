mod common;

use std::collections::BTreeMap;

use aal_core::syntax::{compose_morphisms, enumerate_formulas, extend_morphism, parse_formula, Substitution};
use aal_core::{FlexibleMorphism, Formula, Signature};
use common::{dn, formula, morphism, x};
use proptest::prelude::*;

fn sig() -> Signature {
    Signature::propositional_with_iff()
}

fn fixed_morphisms() -> Vec<FlexibleMorphism> {
    let s = sig();
    let text = |pairs: &[(&str, &str)]| {
        let map: BTreeMap<String, Formula> = pairs
            .iter()
            .map(|(k, v)| (k.to_string(), parse_formula(&s, v).unwrap()))
            .collect();
        FlexibleMorphism::from_map(s.clone(), s.clone(), &map).unwrap()
    };
    vec![
        FlexibleMorphism::identity(&s),
        text(&[("neg", "neg(neg(x0))")]),
        text(&[("imp", "or(neg(x0),x1)"), ("and", "and(x1,x0)")]),
        text(&[("iff", "and(imp(x0,x1),imp(x1,x0))"), ("or", "neg(and(neg(x0),neg(x1)))")]),
    ]
}

#[test]
fn composition_exhaustive_at_depth_two() {
    let fs = fixed_morphisms();
    let all = enumerate_formulas(&sig(), 3, 2);
    assert_eq!(all.len(), 7101);
    for f in &fs {
        for g in &fs {
            let gf = compose_morphisms(g, f).unwrap();
            for phi in &all {
                let once = extend_morphism(&gf, phi).unwrap();
                let twice = extend_morphism(g, &extend_morphism(f, phi).unwrap()).unwrap();
                assert_eq!(once, twice, "{phi}");
            }
        }
    }
}

#[test]
fn double_negation_example() {
    let f = &fixed_morphisms()[1];
    assert_eq!(f.extend(&Formula::neg(x(0))).unwrap(), dn(x(0)));
    assert_eq!(f.extend(&Formula::imp(x(0), x(1))).unwrap(), Formula::imp(x(0), x(1)));
}

proptest! {
    #[test]
    fn extension_never_adds_variables(f in morphism(sig(), 2), phi in formula(sig(), 3, 4)) {
        let image = f.extend(&phi).unwrap();
        prop_assert!(image.variables().is_subset(&phi.variables()));
    }

    #[test]
    fn extension_respects_composition(
        f in morphism(sig(), 2),
        g in morphism(sig(), 2),
        phi in formula(sig(), 3, 4),
    ) {
        let gf = compose_morphisms(&g, &f).unwrap();
        prop_assert_eq!(gf.extend(&phi).unwrap(), g.extend(&f.extend(&phi).unwrap()).unwrap());
    }

    #[test]
    fn extension_is_structural(
        f in morphism(sig(), 2),
        phi in formula(sig(), 3, 3),
        images in proptest::collection::vec(formula(sig(), 3, 2), 3),
    ) {
        let sigma: Substitution = images.iter().cloned().enumerate().map(|(i, s)| (i as u32, s)).collect();
        let lifted: Substitution = images
            .iter()
            .enumerate()
            .map(|(i, s)| (i as u32, f.extend(s).unwrap()))
            .collect();
        let left = f.extend(&phi.substitute(&sigma)).unwrap();
        let right = f.extend(&phi).unwrap().substitute(&lifted);
        prop_assert_eq!(left, right);
    }

    #[test]
    fn printing_parses_back(phi in formula(sig(), 4, 5)) {
        prop_assert_eq!(parse_formula(&sig(), &phi.to_string()).unwrap(), phi);
    }
}
