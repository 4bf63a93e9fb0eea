use std::collections::BTreeMap;

use serde_json::{Map, Value};

use crate::algebra::FiniteAlgebra;
use crate::algebraization::AlgebraizingPair;
use crate::error::{Error, Result};
use crate::glivenko::GlivenkoContext;
use crate::io::{self, Location};
use crate::semantics::{LogicMorphism, LogicSpec, Matrix};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusMorphism {
    pub name: String,
    pub source: String,
    pub target: String,
    pub morphism: LogicMorphism,
    /// Name of a morphism claimed to be inverse to this one.
    pub inverse: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusMatrix {
    pub name: String,
    pub logic: String,
    pub matrix: Matrix,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FaultTarget {
    /// Corrupts `reduct(h, M)` for every matrix `M` of the target logic.
    Morphism(String),
    /// Corrupts `L_h(M)` for every matrix `M` of the source logic.
    Context(String),
}

/// One table entry overwritten before checking.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fault {
    pub target: FaultTarget,
    pub connective: String,
    pub args: Vec<usize>,
    pub value: usize,
}

impl Fault {
    /// Applies the fault when the entry lies inside the carrier.
    pub fn apply(&self, alg: &FiniteAlgebra) -> FiniteAlgebra {
        alg.with_entry(&self.connective, &self.args, self.value)
            .unwrap_or_else(|_| alg.clone())
    }

    fn from_value(v: &Value) -> Result<Fault> {
        let obj = object(v, "fault")?;
        let target = match (obj.get("morphism"), obj.get("context")) {
            (Some(m), None) => FaultTarget::Morphism(string(m, "fault morphism")?.to_string()),
            (None, Some(c)) => FaultTarget::Context(string(c, "fault context")?.to_string()),
            _ => return Err(Error::Format("a fault names exactly one morphism or context".into())),
        };
        let connective = string(get(obj, "connective")?, "fault connective")?.to_string();
        let args = get(obj, "args")?
            .as_array()
            .ok_or_else(|| Error::Format("fault args must be an array".into()))?
            .iter()
            .map(|a| index(a, "fault argument"))
            .collect::<Result<Vec<_>>>()?;
        let value = index(get(obj, "value")?, "fault value")?;
        Ok(Fault {
            target,
            connective,
            args,
            value,
        })
    }
}

/// Named logics, pairs, morphisms, matrices and Glivenko contexts to check
/// satisfaction conditions on, plus optional injected faults.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Corpus {
    pub logics: BTreeMap<String, LogicSpec>,
    pub pairs: BTreeMap<String, AlgebraizingPair>,
    pub morphisms: Vec<CorpusMorphism>,
    pub matrices: Vec<CorpusMatrix>,
    pub contexts: BTreeMap<String, GlivenkoContext>,
    pub faults: Vec<Fault>,
}

fn object<'a>(v: &'a Value, what: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| Error::Format(format!("{what} must be a JSON object")))
}

fn get<'a>(obj: &'a Map<String, Value>, key: &str) -> Result<&'a Value> {
    obj.get(key).ok_or_else(|| Error::Format(format!("missing field `{key}`")))
}

fn string<'a>(v: &'a Value, what: &str) -> Result<&'a str> {
    v.as_str().ok_or_else(|| Error::Format(format!("{what} must be a string")))
}

fn index(v: &Value, what: &str) -> Result<usize> {
    v.as_u64()
        .map(|n| n as usize)
        .ok_or_else(|| Error::Format(format!("{what} must be a nonnegative integer")))
}

impl Corpus {
    /// Reads a corpus document. `"include"` names another corpus whose
    /// entries come first.
    pub fn from_value(v: &Value, loc: &Location) -> Result<Corpus> {
        let obj = object(v, "corpus")?;
        let mut corpus = match obj.get("include") {
            Some(inc) => {
                let (doc, inner) = loc.read_json(string(inc, "include")?)?;
                Corpus::from_value(&doc, &inner)?
            }
            None => Corpus::default(),
        };
        if let Some(logics) = obj.get("logics") {
            for (name, l) in object(logics, "logics")? {
                corpus.logics.insert(name.clone(), io::logic_from_value(l, loc)?);
            }
        }
        if let Some(pairs) = obj.get("pairs") {
            for (name, p) in object(pairs, "pairs")? {
                let sig = corpus.logic(name)?.signature().clone();
                corpus.pairs.insert(name.clone(), io::pair_from_value(p, loc, &sig)?);
            }
        }
        if let Some(ms) = obj.get("morphisms") {
            for m in ms.as_array().ok_or_else(|| Error::Format("morphisms must be an array".into()))? {
                let m = object(m, "morphism")?;
                let name = string(get(m, "name")?, "morphism name")?.to_string();
                let source = string(get(m, "source")?, "morphism source")?.to_string();
                let target = string(get(m, "target")?, "morphism target")?.to_string();
                let (s, t) = (corpus.logic(&source)?.clone(), corpus.logic(&target)?.clone());
                let map = io::morphism_from_value(get(m, "map")?, s.signature(), t.signature())?;
                let inverse = m
                    .get("inverse")
                    .map(|i| string(i, "morphism inverse").map(str::to_string))
                    .transpose()?;
                corpus.morphisms.push(CorpusMorphism {
                    name,
                    source,
                    target,
                    morphism: LogicMorphism::new(s, t, map)?,
                    inverse,
                });
            }
        }
        if let Some(ms) = obj.get("matrices") {
            for m in ms.as_array().ok_or_else(|| Error::Format("matrices must be an array".into()))? {
                let o = object(m, "matrix")?;
                let name = string(get(o, "name")?, "matrix name")?.to_string();
                let logic = string(get(o, "logic")?, "matrix logic")?.to_string();
                let sig = corpus.logic(&logic)?.signature().clone();
                let raw = io::matrix_from_value(m, loc)?;
                let matrix = Matrix::new(raw.algebra().restrict(&sig)?, raw.filter().clone())?;
                corpus.matrices.push(CorpusMatrix { name, logic, matrix });
            }
        }
        if let Some(cs) = obj.get("contexts") {
            for (name, c) in object(cs, "contexts")? {
                corpus.contexts.insert(name.clone(), io::context_from_value(c, loc)?);
            }
        }
        if let Some(fs) = obj.get("faults") {
            for f in fs.as_array().ok_or_else(|| Error::Format("faults must be an array".into()))? {
                let fault = Fault::from_value(f)?;
                match &fault.target {
                    FaultTarget::Morphism(m) if corpus.morphism(m).is_none() => {
                        return Err(Error::Format(format!("fault names unknown morphism `{m}`")))
                    }
                    FaultTarget::Context(c) if !corpus.contexts.contains_key(c) => {
                        return Err(Error::Format(format!("fault names unknown context `{c}`")))
                    }
                    _ => corpus.faults.push(fault),
                }
            }
        }
        for m in &corpus.morphisms {
            if let Some(inv) = &m.inverse {
                if corpus.morphism(inv).is_none() {
                    return Err(Error::Format(format!("`{}` claims unknown inverse `{inv}`", m.name)));
                }
            }
        }
        Ok(corpus)
    }

    pub fn load(path: &str) -> Result<Corpus> {
        let (doc, loc) = io::open(path)?;
        Corpus::from_value(&doc, &loc)
    }

    pub fn logic(&self, name: &str) -> Result<&LogicSpec> {
        self.logics
            .get(name)
            .ok_or_else(|| Error::Format(format!("unknown logic `{name}`")))
    }

    pub fn morphism(&self, name: &str) -> Option<&CorpusMorphism> {
        self.morphisms.iter().find(|m| m.name == name)
    }

    /// The pair of a logic, `Δ = {x0 ↔ x1}` when none is listed.
    pub fn pair(&self, logic: &str) -> AlgebraizingPair {
        self.pairs.get(logic).cloned().unwrap_or_else(AlgebraizingPair::iff)
    }

    /// Matrices whose logic is `l`.
    pub fn matrices_of<'a>(&'a self, l: &'a LogicSpec) -> impl Iterator<Item = &'a CorpusMatrix> + 'a {
        self.matrices
            .iter()
            .filter(move |m| self.logics.get(&m.logic) == Some(l))
    }

    pub fn faults_on(&self, target: &FaultTarget) -> impl Iterator<Item = &Fault> + '_ {
        let target = target.clone();
        self.faults.iter().filter(move |f| f.target == target)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::institution_corpus;

    #[test]
    fn classical_corpus_contents() {
        let c = institution_corpus("classical_corpus.json").unwrap();
        assert_eq!(c.logics.len(), 2);
        assert_eq!(c.morphisms.len(), 3);
        assert_eq!(c.matrices.len(), 9);
        assert_eq!(c.matrices_of(&LogicSpec::ipc()).count(), 7);
        assert!(c.contexts.contains_key("classical"));
        assert!(c.faults.is_empty());
    }

    #[test]
    fn faulty_corpus_includes_base() {
        let c = institution_corpus("faulty_corpus.json").unwrap();
        assert_eq!(c.morphisms.len(), 3);
        assert_eq!(c.faults.len(), 2);
        let f = &c.faults[0];
        assert_eq!(f.target, FaultTarget::Morphism("ipc_to_cpc".into()));
        let b2 = c.matrices[0].matrix.algebra();
        assert_eq!(f.apply(b2).apply(b2.signature().index_of("imp").unwrap(), &[1, 0]), 1);
    }

    #[test]
    fn bad_references() {
        let bad = serde_json::json!({"include": "classical_corpus.json", "faults": [{"morphism": "nope", "connective": "imp", "args": [0, 0], "value": 0}]});
        assert!(Corpus::from_value(&bad, &Location::Bundled).is_err());
        let bad = serde_json::json!({"logics": {"a": "cpc"}, "matrices": [{"name": "m", "logic": "b", "algebra": "B2", "filter": [1]}]});
        assert!(Corpus::from_value(&bad, &Location::Bundled).is_err());
    }
}
