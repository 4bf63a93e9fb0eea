#![allow(dead_code)]

use aal_core::{FlexibleMorphism, Formula, Signature};
use proptest::prelude::*;
use proptest::sample::select;

pub fn x(i: u32) -> Formula {
    Formula::var(i)
}

pub fn dn(f: Formula) -> Formula {
    Formula::neg(Formula::neg(f))
}

/// Formulas over `sig` in `x0..x{vars-1}` of depth at most `depth`.
pub fn formula(sig: Signature, vars: u32, depth: u32) -> BoxedStrategy<Formula> {
    let leaf = (0..vars).prop_map(Formula::var).boxed();
    let conns = sig.connectives().to_vec();
    leaf.prop_recursive(depth, 48, 2, move |inner| {
        select(conns.clone())
            .prop_flat_map(move |c| {
                proptest::collection::vec(inner.clone(), c.arity).prop_map(move |args| Formula::app(&c.name, args))
            })
            .boxed()
    })
    .boxed()
}

pub fn formulas(sig: Signature, vars: u32, depth: u32, max: usize) -> BoxedStrategy<Vec<Formula>> {
    proptest::collection::vec(formula(sig, vars, depth), 0..=max).boxed()
}

/// A morphism `sig → sig` sending each connective to a random formula in
/// its argument variables.
pub fn morphism(sig: Signature, depth: u32) -> BoxedStrategy<FlexibleMorphism> {
    let images: Vec<BoxedStrategy<Formula>> = sig
        .connectives()
        .iter()
        .map(|c| formula(sig.clone(), c.arity.max(1) as u32, depth))
        .collect();
    let arities: Vec<usize> = sig.connectives().iter().map(|c| c.arity).collect();
    images
        .prop_filter_map("nullary images must be closed", move |imgs| {
            let ok = imgs
                .iter()
                .zip(&arities)
                .all(|(f, &a)| f.max_var().is_none_or(|v| (v as usize) < a));
            ok.then(|| FlexibleMorphism::new(sig.clone(), sig.clone(), imgs).unwrap())
        })
        .boxed()
}
