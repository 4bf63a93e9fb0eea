//! JSON formats for signatures, algebras, logics, algebraizing pairs and
//! Glivenko contexts.
//!
//! File references inside a document are resolved against the directory of
//! the referring file first and then against the bundled corpus.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde_json::{json, Map, Value};

use crate::algebra::{Filter, FiniteAlgebra};
use crate::algebraization::AlgebraizingPair;
use crate::corpus;
use crate::error::{Error, Result};
use crate::glivenko::{Adjoint, GlivenkoContext};
use crate::semantics::{Engine, LogicMorphism, LogicSpec, Matrix};
use crate::syntax::{parse_formula, FlexibleMorphism, Signature};

/// Where relative file references are looked up.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Location {
    Dir(PathBuf),
    Bundled,
}

impl Location {
    /// Reads `name`, returning its text and the location of its own
    /// references.
    pub fn read(&self, name: &str) -> Result<(String, Location)> {
        if let Location::Dir(dir) = self {
            let path = dir.join(name);
            if path.is_file() {
                let text = std::fs::read_to_string(&path)
                    .map_err(|e| Error::Format(format!("{}: {e}", path.display())))?;
                let parent = path.parent().map(Path::to_path_buf).unwrap_or_default();
                return Ok((text, Location::Dir(parent)));
            }
        }
        match corpus::bundled_file(name) {
            Some(text) => Ok((text.to_string(), Location::Bundled)),
            None => Err(Error::Format(format!("cannot find `{name}`"))),
        }
    }

    /// Reads a JSON document.
    pub fn read_json(&self, name: &str) -> Result<(Value, Location)> {
        let (text, loc) = self.read(name)?;
        let value = serde_json::from_str(&text).map_err(|e| Error::Format(format!("{name}: {e}")))?;
        Ok((value, loc))
    }
}

/// Opens a file given on the command line or by a caller: a path on disk,
/// or else the name of a bundled file.
pub fn open(path: &str) -> Result<(Value, Location)> {
    let p = Path::new(path);
    if p.is_file() {
        let dir = p.parent().map(Path::to_path_buf).unwrap_or_default();
        let name = p.file_name().and_then(|n| n.to_str()).unwrap_or(path);
        return Location::Dir(dir).read_json(name);
    }
    Location::Bundled.read_json(path)
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str) -> Result<&'a Value> {
    obj.get(key).ok_or_else(|| Error::Format(format!("missing field `{key}`")))
}

fn as_object<'a>(v: &'a Value, what: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| Error::Format(format!("{what} must be a JSON object")))
}

fn as_str<'a>(v: &'a Value, what: &str) -> Result<&'a str> {
    v.as_str().ok_or_else(|| Error::Format(format!("{what} must be a string")))
}

fn as_index(v: &Value, what: &str) -> Result<usize> {
    v.as_u64()
        .map(|n| n as usize)
        .ok_or_else(|| Error::Format(format!("{what} must be a nonnegative integer")))
}

/// A signature given inline or as a file reference.
pub fn signature_from_value(v: &Value, loc: &Location) -> Result<Signature> {
    match v {
        Value::String(name) => match name.as_str() {
            "propositional" => Ok(Signature::propositional()),
            "propositional_with_iff" => Ok(Signature::propositional_with_iff()),
            _ => {
                let (doc, _) = loc.read_json(name)?;
                Ok(serde_json::from_value(doc)?)
            }
        },
        _ => Ok(serde_json::from_value(v.clone())?),
    }
}

fn flatten_table(v: &Value, arity: usize, size: usize, out: &mut Vec<usize>) -> Result<()> {
    if arity == 0 {
        out.push(as_index(v, "table entry")?);
        return Ok(());
    }
    let rows = v
        .as_array()
        .ok_or_else(|| Error::Format(format!("expected a nested array of depth {arity}")))?;
    if rows.len() != size {
        return Err(Error::Format(format!("table row has {} entries, expected {size}", rows.len())));
    }
    for r in rows {
        flatten_table(r, arity - 1, size, out)?;
    }
    Ok(())
}

fn nest_table(flat: &[usize], arity: usize, size: usize) -> Value {
    if arity == 0 {
        return json!(flat[0]);
    }
    let stride = size.pow(arity as u32 - 1);
    Value::Array(
        (0..size)
            .map(|i| nest_table(&flat[i * stride..(i + 1) * stride], arity - 1, size))
            .collect(),
    )
}

/// An algebra document: `{"signature": ..., "size": n, "tables": {...}}`.
/// Unary tables are flat arrays, binary tables nested rows, and so on.
pub fn algebra_from_value(v: &Value, loc: &Location) -> Result<FiniteAlgebra> {
    if let Value::String(name) = v {
        let (doc, inner) = loc.read_json(name)?;
        return algebra_from_value(&doc, &inner);
    }
    let obj = as_object(v, "algebra")?;
    let sig = signature_from_value(field(obj, "signature")?, loc)?;
    let size = as_index(field(obj, "size")?, "size")?;
    let tables = as_object(field(obj, "tables")?, "tables")?;
    if let Some(extra) = tables.keys().find(|k| !sig.contains(k)) {
        return Err(Error::Format(format!("table for `{extra}` is not in the signature")));
    }
    let mut flat = Vec::with_capacity(sig.len());
    for c in sig.connectives() {
        let t = tables
            .get(&c.name)
            .ok_or_else(|| Error::Format(format!("missing table for `{}`", c.name)))?;
        let mut out = Vec::new();
        flatten_table(t, c.arity, size, &mut out)?;
        flat.push(out);
    }
    FiniteAlgebra::new(sig, size, flat)
}

pub fn algebra_to_value(alg: &FiniteAlgebra) -> Value {
    let mut tables = Map::new();
    for (c, t) in alg.signature().connectives().iter().zip(alg.tables()) {
        tables.insert(c.name.clone(), nest_table(t, c.arity, alg.size()));
    }
    json!({
        "signature": serde_json::to_value(alg.signature()).expect("signatures serialize"),
        "size": alg.size(),
        "tables": tables,
    })
}

pub fn load_algebra(path: &str) -> Result<FiniteAlgebra> {
    let (doc, loc) = open(path)?;
    algebra_from_value(&doc, &loc)
}

/// Parses a comma-separated list of element indices.
pub fn parse_elements(text: &str) -> Result<Vec<usize>> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<usize>()
                .map_err(|_| Error::Format(format!("`{s}` is not an element index")))
        })
        .collect()
}

fn filter_from_value(v: &Value, size: usize) -> Result<Filter> {
    let items = v
        .as_array()
        .ok_or_else(|| Error::Format("filter must be an array of element indices".into()))?;
    let elems = items
        .iter()
        .map(|e| as_index(e, "filter element"))
        .collect::<Result<Vec<_>>>()?;
    Filter::new(size, elems)
}

/// `{"algebra": ..., "filter": [..]}`.
pub fn matrix_from_value(v: &Value, loc: &Location) -> Result<Matrix> {
    let obj = as_object(v, "matrix")?;
    let alg = algebra_from_value(field(obj, "algebra")?, loc)?;
    let filter = filter_from_value(field(obj, "filter")?, alg.size())?;
    Matrix::new(alg, filter)
}

/// A logic: `"cpc"`, `"ipc"`, a file reference, or an object with
/// `"kind": "builtin"` (fields `engine`, optional `signature`) or
/// `"kind": "matrices"` (fields `signature`, `matrices`).
pub fn logic_from_value(v: &Value, loc: &Location) -> Result<LogicSpec> {
    if let Value::String(name) = v {
        return match name.as_str() {
            "cpc" => Ok(LogicSpec::cpc()),
            "ipc" => Ok(LogicSpec::ipc()),
            _ => {
                let (doc, inner) = loc.read_json(name)?;
                logic_from_value(&doc, &inner)
            }
        };
    }
    let obj = as_object(v, "logic")?;
    match as_str(field(obj, "kind")?, "kind")? {
        "builtin" => {
            let engine = match as_str(field(obj, "engine")?, "engine")? {
                "cpc" => Engine::Cpc,
                "ipc" => Engine::Ipc,
                other => return Err(Error::Format(format!("unknown engine `{other}`"))),
            };
            let sig = match obj.get("signature") {
                Some(s) => signature_from_value(s, loc)?,
                None => Signature::propositional_with_iff(),
            };
            LogicSpec::builtin(engine, sig)
        }
        "matrices" => {
            let sig = signature_from_value(field(obj, "signature")?, loc)?;
            let ms = field(obj, "matrices")?
                .as_array()
                .ok_or_else(|| Error::Format("`matrices` must be an array".into()))?
                .iter()
                .map(|m| {
                    let m = matrix_from_value(m, loc)?;
                    let alg = m.algebra().restrict(&sig)?;
                    Matrix::new(alg, m.filter().clone())
                })
                .collect::<Result<Vec<_>>>()?;
            LogicSpec::matrices(sig, ms)
        }
        other => Err(Error::Format(format!("unknown logic kind `{other}`"))),
    }
}

/// Loads a logic named on the command line: `cpc`, `ipc` or a file.
pub fn load_logic(name: &str) -> Result<LogicSpec> {
    match name {
        "cpc" => Ok(LogicSpec::cpc()),
        "ipc" => Ok(LogicSpec::ipc()),
        _ => {
            let (doc, loc) = open(name)?;
            logic_from_value(&doc, &loc)
        }
    }
}

/// `{"delta": ["iff(x0,x1)"], "tau": [["imp(x0,x0)", "x0"]]}`, parsed over `sig`.
pub fn pair_from_value(v: &Value, loc: &Location, sig: &Signature) -> Result<AlgebraizingPair> {
    if let Value::String(name) = v {
        let (doc, inner) = loc.read_json(name)?;
        return pair_from_value(&doc, &inner, sig);
    }
    let obj = as_object(v, "pair")?;
    let delta = field(obj, "delta")?
        .as_array()
        .ok_or_else(|| Error::Format("`delta` must be an array".into()))?
        .iter()
        .map(|d| parse_formula(sig, as_str(d, "delta entry")?))
        .collect::<Result<Vec<_>>>()?;
    let tau = field(obj, "tau")?
        .as_array()
        .ok_or_else(|| Error::Format("`tau` must be an array".into()))?
        .iter()
        .map(|p| match p.as_array().map(Vec::as_slice) {
            Some([d, e]) => Ok((
                parse_formula(sig, as_str(d, "tau entry")?)?,
                parse_formula(sig, as_str(e, "tau entry")?)?,
            )),
            _ => Err(Error::Format("each `tau` entry must be a pair of formulas".into())),
        })
        .collect::<Result<Vec<_>>>()?;
    AlgebraizingPair::new(delta, tau)
}

pub fn load_pair(path: &str, sig: &Signature) -> Result<AlgebraizingPair> {
    let (doc, loc) = open(path)?;
    pair_from_value(&doc, &loc, sig)
}

pub fn pair_to_value(pair: &AlgebraizingPair) -> Value {
    json!({
        "delta": pair.delta().iter().map(|d| d.to_string()).collect::<Vec<_>>(),
        "tau": pair.tau().iter().map(|(d, e)| vec![d.to_string(), e.to_string()]).collect::<Vec<_>>(),
    })
}

/// `"identity"`, `"inclusion"`, or an object sending connective names to
/// formulas; unlisted connectives go to their namesakes.
pub fn morphism_from_value(v: &Value, source: &Signature, target: &Signature) -> Result<FlexibleMorphism> {
    match v {
        Value::String(s) if s == "identity" => {
            if source != target {
                return Err(Error::InvalidMorphism(format!(
                    "identity between different signatures {source} and {target}"
                )));
            }
            Ok(FlexibleMorphism::identity(source))
        }
        Value::String(s) if s == "inclusion" => FlexibleMorphism::inclusion(source, target),
        Value::Object(obj) => {
            let mut map = BTreeMap::new();
            for (k, f) in obj {
                map.insert(k.clone(), parse_formula(target, as_str(f, "morphism image")?)?);
            }
            FlexibleMorphism::from_map(source.clone(), target.clone(), &map)
        }
        _ => Err(Error::Format("a morphism is \"identity\", \"inclusion\" or an object".into())),
    }
}

/// A context document:
/// `{"source": "ipc", "target": "cpc", "h": "identity", "theta": "neg(neg(x0))"}`
/// with optional `pair`, `target_pair` and `adjoint`
/// (`"identity"`, `"regular"`, `"reflection"`).
pub fn context_from_value(v: &Value, loc: &Location) -> Result<GlivenkoContext> {
    if let Value::String(name) = v {
        let (doc, inner) = loc.read_json(name)?;
        return context_from_value(&doc, &inner);
    }
    let obj = as_object(v, "context")?;
    let source = logic_from_value(field(obj, "source")?, loc)?;
    let target = logic_from_value(field(obj, "target")?, loc)?;
    let h = morphism_from_value(field(obj, "h")?, source.signature(), target.signature())?;
    let theta = parse_formula(source.signature(), as_str(field(obj, "theta")?, "theta")?)?;
    let pair = match obj.get("pair") {
        Some(p) => pair_from_value(p, loc, source.signature())?,
        None => AlgebraizingPair::iff(),
    };
    let target_pair = match obj.get("target_pair") {
        Some(p) => pair_from_value(p, loc, target.signature())?,
        None => AlgebraizingPair::iff(),
    };
    let adjoint = match obj.get("adjoint").map(|a| as_str(a, "adjoint")).transpose()? {
        Some("identity") => Adjoint::Identity,
        Some("regular") => Adjoint::RegularElements,
        Some("reflection") => Adjoint::Reflection,
        Some(other) => return Err(Error::Format(format!("unknown adjoint `{other}`"))),
        None => Adjoint::infer(&source, &target, &h),
    };
    let morphism = LogicMorphism::new(source, target, h)?;
    GlivenkoContext::new(morphism, theta, adjoint, pair, target_pair)
}

pub fn load_context(path: &str) -> Result<GlivenkoContext> {
    let (doc, loc) = open(path)?;
    context_from_value(&doc, &loc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::build;

    #[test]
    fn algebra_round_trip() {
        let h3 = build::chain(3);
        let v = algebra_to_value(&h3);
        assert_eq!(v["tables"]["neg"], json!([2, 0, 0]));
        assert_eq!(v["tables"]["imp"][2], json!([0, 1, 2]));
        assert_eq!(algebra_from_value(&v, &Location::Bundled).unwrap(), h3);
    }

    #[test]
    fn malformed_algebras() {
        let bad_row = json!({"signature": {"connectives": [{"name": "neg", "arity": 1}]},
                             "size": 2, "tables": {"neg": [1]}});
        assert!(algebra_from_value(&bad_row, &Location::Bundled).is_err());
        let out_of_range = json!({"signature": {"connectives": [{"name": "neg", "arity": 1}]},
                                  "size": 2, "tables": {"neg": [1, 2]}});
        assert!(algebra_from_value(&out_of_range, &Location::Bundled).is_err());
        let extra = json!({"signature": {"connectives": [{"name": "neg", "arity": 1}]},
                           "size": 1, "tables": {"neg": [0], "box": [0]}});
        assert!(algebra_from_value(&extra, &Location::Bundled).is_err());
    }

    #[test]
    fn nullary_and_ternary_tables() {
        let sig = Signature::from_pairs(&[("top", 0), ("maj", 3)]).unwrap();
        let alg = FiniteAlgebra::from_fn(sig, 2, |c, args| {
            if c == 0 {
                1
            } else {
                usize::from(args.iter().sum::<usize>() >= 2)
            }
        })
        .unwrap();
        let v = algebra_to_value(&alg);
        assert_eq!(v["tables"]["top"], json!(1));
        assert_eq!(v["tables"]["maj"][1][1], json!([1, 1]));
        assert_eq!(algebra_from_value(&v, &Location::Bundled).unwrap(), alg);
    }

    #[test]
    fn pairs_and_elements() {
        let sig = Signature::propositional_with_iff();
        let v = json!({"delta": ["iff(x0,x1)"], "tau": [["imp(x0,x0)", "x0"]]});
        let p = pair_from_value(&v, &Location::Bundled, &sig).unwrap();
        assert_eq!(p, AlgebraizingPair::iff());
        assert_eq!(pair_to_value(&p), v);
        assert_eq!(parse_elements("1, 2").unwrap(), vec![1, 2]);
        assert!(parse_elements("1,a").is_err());
    }

    #[test]
    fn logic_documents() {
        let v = json!({"kind": "matrices", "signature": {"connectives": [{"name": "neg", "arity": 1}]},
                       "matrices": [{"algebra": "B2.json", "filter": [1]}]});
        let l = logic_from_value(&v, &Location::Bundled).unwrap();
        assert_eq!(l.signature().len(), 1);
        let b = json!({"kind": "builtin", "engine": "ipc", "signature": "propositional"});
        assert_eq!(logic_from_value(&b, &Location::Bundled).unwrap().signature(), &Signature::propositional());
    }
}
