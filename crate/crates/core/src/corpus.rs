//! The bundled test corpus: small algebras, pairs, logics, contexts and
//! institution corpora, compiled into the library.

use crate::algebra::FiniteAlgebra;
use crate::algebraization::AlgebraizingPair;
use crate::error::Result;
use crate::glivenko::GlivenkoContext;
use crate::institutions::Corpus;
use crate::io::{self, Location};
use crate::semantics::LogicSpec;

macro_rules! bundle {
    ($($name:literal),* $(,)?) => {
        &[$(($name, include_str!(concat!("../corpus/", $name)))),*]
    };
}

static FILES: &[(&str, &str)] = bundle![
    "propositional.json",
    "B1.json",
    "B2.json",
    "B4.json",
    "B8.json",
    "H3.json",
    "H4.json",
    "H5.json",
    "H6.json",
    "B4T.json",
    "B4B.json",
    "B4TT.json",
    "B4BB.json",
    "B4BT.json",
    "C2xC3.json",
    "L3.json",
    "cpc_pair.json",
    "imp_pair.json",
    "bad_pair.json",
    "l3_logic.json",
    "b2_neg_logic.json",
    "classical_context.json",
    "identity_context.json",
    "classical_corpus.json",
    "identity_corpus.json",
    "faulty_corpus.json",
];

/// Algebras in the corpus, smallest first.
const ALGEBRAS: &[&str] = &[
    "B1", "B2", "H3", "L3", "B4", "H4", "H5", "B4T", "B4B", "H6", "C2xC3", "B4TT", "B4BB", "B4BT",
    "B8",
];

/// Text of a bundled file; the `.json` suffix may be omitted.
pub fn bundled_file(name: &str) -> Option<&'static str> {
    let name = name.strip_prefix("corpus/").unwrap_or(name);
    FILES
        .iter()
        .find(|(n, _)| *n == name || n.strip_suffix(".json") == Some(name))
        .map(|(_, text)| *text)
}

pub fn file_names() -> impl Iterator<Item = &'static str> {
    FILES.iter().map(|(n, _)| *n)
}

pub fn algebra_names() -> &'static [&'static str] {
    ALGEBRAS
}

pub fn algebra(name: &str) -> Result<FiniteAlgebra> {
    let (doc, loc) = Location::Bundled.read_json(name)?;
    io::algebra_from_value(&doc, &loc)
}

/// Every bundled algebra with its name.
pub fn algebras() -> Vec<(&'static str, FiniteAlgebra)> {
    ALGEBRAS
        .iter()
        .map(|n| (*n, algebra(n).expect("bundled algebras are well formed")))
        .collect()
}

/// The bundled Heyting algebras (everything except `L3`).
pub fn heyting_algebras() -> Vec<(&'static str, FiniteAlgebra)> {
    algebras().into_iter().filter(|(n, _)| *n != "L3").collect()
}

/// The bundled Boolean algebras.
pub fn boolean_algebras() -> Vec<(&'static str, FiniteAlgebra)> {
    algebras()
        .into_iter()
        .filter(|(n, _)| matches!(*n, "B1" | "B2" | "B4" | "B8"))
        .collect()
}

pub fn pair(name: &str) -> Result<AlgebraizingPair> {
    let (doc, loc) = Location::Bundled.read_json(name)?;
    io::pair_from_value(&doc, &loc, &crate::syntax::Signature::propositional_with_iff())
}

pub fn logic(name: &str) -> Result<LogicSpec> {
    let (doc, loc) = Location::Bundled.read_json(name)?;
    io::logic_from_value(&doc, &loc)
}

pub fn context(name: &str) -> Result<GlivenkoContext> {
    let (doc, loc) = Location::Bundled.read_json(name)?;
    io::context_from_value(&doc, &loc)
}

pub fn institution_corpus(name: &str) -> Result<Corpus> {
    let (doc, loc) = Location::Bundled.read_json(name)?;
    Corpus::from_value(&doc, &loc)
}

pub fn classical_corpus() -> Corpus {
    institution_corpus("classical_corpus.json").expect("bundled corpus is well formed")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{are_isomorphic, build};

    #[test]
    fn files_resolve() {
        for name in file_names() {
            assert!(bundled_file(name).is_some());
        }
        assert!(bundled_file("H3").is_some());
        assert!(bundled_file("nope").is_none());
    }

    #[test]
    fn corpus_matches_builders() {
        let chain_sum = |lower: FiniteAlgebra, upper: FiniteAlgebra| build::ordinal_sum(&lower, &upper).unwrap();
        let b4 = build::boolean(2);
        let expected = [
            ("B1", build::boolean(0)),
            ("B2", build::boolean(1)),
            ("B4", b4.clone()),
            ("B8", build::boolean(3)),
            ("H3", build::chain(3)),
            ("H4", build::chain(4)),
            ("H5", build::chain(5)),
            ("H6", build::chain(6)),
            ("B4T", chain_sum(b4.clone(), build::chain(2))),
            ("B4B", chain_sum(build::chain(2), b4.clone())),
            ("B4TT", chain_sum(b4.clone(), build::chain(3))),
            ("B4BB", chain_sum(build::chain(3), b4.clone())),
            ("B4BT", chain_sum(chain_sum(build::chain(2), b4.clone()), build::chain(2))),
            ("C2xC3", build::chain(2).product(&build::chain(3)).unwrap()),
        ];
        for (name, built) in expected {
            let bundled = algebra(name).unwrap();
            assert!(are_isomorphic(&bundled, &built), "{name}");
        }
    }

    #[test]
    fn corpus_documents_load() {
        assert_eq!(pair("cpc_pair").unwrap(), AlgebraizingPair::iff());
        assert_eq!(pair("imp_pair").unwrap(), AlgebraizingPair::implication());
        assert!(logic("l3_logic").is_ok());
        assert!(context("classical_context").is_ok());
        assert!(!classical_corpus().morphisms.is_empty());
        assert!(!institution_corpus("faulty_corpus.json").unwrap().faults.is_empty());
    }
}
