use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A named connective with a fixed arity.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Connective {
    pub name: String,
    pub arity: usize,
}

impl Connective {
    pub fn new(name: impl Into<String>, arity: usize) -> Self {
        Connective {
            name: name.into(),
            arity,
        }
    }
}

/// An ordered list of connectives. The order is the canonical enumeration
/// order used by formula generators and by algebra tables.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawSignature", into = "RawSignature")]
pub struct Signature {
    connectives: Vec<Connective>,
}

#[derive(Serialize, Deserialize)]
struct RawSignature {
    connectives: Vec<Connective>,
}

impl TryFrom<RawSignature> for Signature {
    type Error = Error;

    fn try_from(raw: RawSignature) -> Result<Self> {
        Signature::new(raw.connectives)
    }
}

impl From<Signature> for RawSignature {
    fn from(sig: Signature) -> Self {
        RawSignature {
            connectives: sig.connectives,
        }
    }
}

pub(crate) fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_lowercase() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_lowercase() || c.is_ascii_digit() || c == '_')
}

/// Names of the form `x<digits>` are reserved for variables.
pub(crate) fn is_variable_name(name: &str) -> bool {
    name.len() > 1 && name.starts_with('x') && name[1..].bytes().all(|b| b.is_ascii_digit())
}

impl Signature {
    pub fn new(connectives: Vec<Connective>) -> Result<Self> {
        let mut seen = HashSet::new();
        for c in &connectives {
            if !is_identifier(&c.name) {
                return Err(Error::InvalidSignature(format!(
                    "`{}` is not a connective identifier",
                    c.name
                )));
            }
            if is_variable_name(&c.name) {
                return Err(Error::InvalidSignature(format!(
                    "`{}` clashes with the variable syntax",
                    c.name
                )));
            }
            if !seen.insert(c.name.as_str()) {
                return Err(Error::InvalidSignature(format!(
                    "duplicate connective `{}`",
                    c.name
                )));
            }
        }
        Ok(Signature { connectives })
    }

    /// Builds a signature from `(name, arity)` pairs.
    pub fn from_pairs(pairs: &[(&str, usize)]) -> Result<Self> {
        Signature::new(pairs.iter().map(|&(n, a)| Connective::new(n, a)).collect())
    }

    /// `{neg/1, imp/2, and/2, or/2}`.
    pub fn propositional() -> Self {
        Signature::from_pairs(&[("neg", 1), ("imp", 2), ("and", 2), ("or", 2)]).unwrap()
    }

    /// `{neg/1, imp/2, and/2, or/2, iff/2}`: the full language of the
    /// built-in provers.
    pub fn propositional_with_iff() -> Self {
        Signature::from_pairs(&[("neg", 1), ("imp", 2), ("and", 2), ("or", 2), ("iff", 2)]).unwrap()
    }

    /// `{neg/1, imp/2}`.
    pub fn implicational_negation() -> Self {
        Signature::from_pairs(&[("neg", 1), ("imp", 2)]).unwrap()
    }

    pub fn connectives(&self) -> &[Connective] {
        &self.connectives
    }

    pub fn len(&self) -> usize {
        self.connectives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.connectives.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.connectives.iter().position(|c| c.name == name)
    }

    pub fn arity(&self, name: &str) -> Option<usize> {
        self.connectives
            .iter()
            .find(|c| c.name == name)
            .map(|c| c.arity)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.index_of(name).is_some()
    }

    pub fn max_arity(&self) -> usize {
        self.connectives.iter().map(|c| c.arity).max().unwrap_or(0)
    }

    /// Every connective of `self` occurs in `other` with the same arity.
    pub fn is_subsignature_of(&self, other: &Signature) -> bool {
        self.connectives
            .iter()
            .all(|c| other.arity(&c.name) == Some(c.arity))
    }

    /// Keeps only the connectives named in `names`, in canonical order.
    pub fn restrict(&self, names: &[&str]) -> Signature {
        Signature {
            connectives: self
                .connectives
                .iter()
                .filter(|c| names.contains(&c.name.as_str()))
                .cloned()
                .collect(),
        }
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, c) in self.connectives.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}/{}", c.name, c.arity)?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_duplicates_and_bad_names() {
        assert!(Signature::from_pairs(&[("neg", 1), ("neg", 2)]).is_err());
        assert!(Signature::from_pairs(&[("Neg", 1)]).is_err());
        assert!(Signature::from_pairs(&[("x3", 1)]).is_err());
        assert!(Signature::from_pairs(&[("x", 1), ("x_y", 2)]).is_ok());
    }

    #[test]
    fn json_round_trip_uses_file_layout() {
        let sig = Signature::implicational_negation();
        let text = serde_json::to_string(&sig).unwrap();
        assert_eq!(
            text,
            r#"{"connectives":[{"name":"neg","arity":1},{"name":"imp","arity":2}]}"#
        );
        let back: Signature = serde_json::from_str(&text).unwrap();
        assert_eq!(back, sig);
        let dup = r#"{"connectives":[{"name":"neg","arity":1},{"name":"neg","arity":1}]}"#;
        assert!(serde_json::from_str::<Signature>(dup).is_err());
    }

    #[test]
    fn subsignature() {
        let small = Signature::implicational_negation();
        assert!(small.is_subsignature_of(&Signature::propositional()));
        assert!(!Signature::propositional().is_subsignature_of(&small));
        assert_eq!(Signature::propositional().restrict(&["imp", "neg"]), small);
    }
}
