use std::collections::BTreeMap;

use crate::error::{Error, Result};

use super::formula::Formula;
use super::parse::parse_formula;
use super::signature::Signature;

/// A signature translation sending each `n`-ary source connective to a
/// target formula in the variables `x0..x_{n-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FlexibleMorphism {
    source: Signature,
    target: Signature,
    /// Indexed like `source.connectives()`.
    assignment: Vec<Formula>,
}

impl FlexibleMorphism {
    pub fn new(source: Signature, target: Signature, assignment: Vec<Formula>) -> Result<Self> {
        if assignment.len() != source.len() {
            return Err(Error::InvalidMorphism(format!(
                "{} assignments for {} source connectives",
                assignment.len(),
                source.len()
            )));
        }
        for (c, image) in source.connectives().iter().zip(&assignment) {
            image.check(&target)?;
            if let Some(v) = image.max_var() {
                if v as usize >= c.arity {
                    return Err(Error::InvalidMorphism(format!(
                        "image of `{}` uses x{v} but the connective has arity {}",
                        c.name, c.arity
                    )));
                }
            }
        }
        Ok(FlexibleMorphism {
            source,
            target,
            assignment,
        })
    }

    /// Builds a morphism from a name-indexed map. Connectives that are absent
    /// from the map are sent to the same-named target connective, which must
    /// exist with the same arity.
    pub fn from_map(
        source: Signature,
        target: Signature,
        map: &BTreeMap<String, Formula>,
    ) -> Result<Self> {
        if let Some(extra) = map.keys().find(|k| !source.contains(k)) {
            return Err(Error::InvalidMorphism(format!(
                "`{extra}` is not a source connective"
            )));
        }
        let mut assignment = Vec::with_capacity(source.len());
        for c in source.connectives() {
            let image = match map.get(&c.name) {
                Some(f) => f.clone(),
                None => {
                    if target.arity(&c.name) != Some(c.arity) {
                        return Err(Error::InvalidMorphism(format!(
                            "no image given for `{}` and the target has no connective of that name and arity",
                            c.name
                        )));
                    }
                    generic_application(&c.name, c.arity)
                }
            };
            assignment.push(image);
        }
        FlexibleMorphism::new(source, target, assignment)
    }

    /// Like [`FlexibleMorphism::from_map`], with images given as text.
    pub fn from_text_map(
        source: Signature,
        target: Signature,
        map: &BTreeMap<String, String>,
    ) -> Result<Self> {
        let parsed = map
            .iter()
            .map(|(k, v)| Ok((k.clone(), parse_formula(&target, v)?)))
            .collect::<Result<BTreeMap<_, _>>>()?;
        FlexibleMorphism::from_map(source, target, &parsed)
    }

    /// The identity morphism `j_Σ`: each connective goes to itself applied
    /// to its variables.
    pub fn identity(sig: &Signature) -> Self {
        Self::inclusion(sig, sig).expect("a signature includes itself")
    }

    /// The inclusion of `source` into a larger signature `target`.
    pub fn inclusion(source: &Signature, target: &Signature) -> Result<Self> {
        if !source.is_subsignature_of(target) {
            return Err(Error::SignatureMismatch(format!(
                "{source} is not included in {target}"
            )));
        }
        let assignment = source
            .connectives()
            .iter()
            .map(|c| generic_application(&c.name, c.arity))
            .collect();
        Ok(FlexibleMorphism {
            source: source.clone(),
            target: target.clone(),
            assignment,
        })
    }

    pub fn source(&self) -> &Signature {
        &self.source
    }

    pub fn target(&self) -> &Signature {
        &self.target
    }

    pub fn assignment(&self) -> &[Formula] {
        &self.assignment
    }

    pub fn image(&self, connective: &str) -> Option<&Formula> {
        self.source.index_of(connective).map(|i| &self.assignment[i])
    }

    /// True when every connective is sent to the same-named connective.
    pub fn is_inclusion(&self) -> bool {
        self.source
            .connectives()
            .iter()
            .zip(&self.assignment)
            .all(|(c, f)| *f == generic_application(&c.name, c.arity))
    }

    /// The unique extension to all source formulas: variables are fixed and
    /// `c(φ0..φn-1)` becomes the image of `c` with `x_i := extend(φi)`.
    ///
    /// Connectives outside the source signature are an error.
    pub fn extend(&self, phi: &Formula) -> Result<Formula> {
        match phi {
            Formula::Var(_) => Ok(phi.clone()),
            Formula::App(name, args) => {
                let idx = self
                    .source
                    .index_of(name)
                    .ok_or_else(|| Error::UnknownConnective(name.to_string()))?;
                let expected = self.source.connectives()[idx].arity;
                if expected != args.len() {
                    return Err(Error::Arity {
                        name: name.to_string(),
                        expected,
                        found: args.len(),
                    });
                }
                let translated = args
                    .iter()
                    .map(|a| self.extend(a))
                    .collect::<Result<Vec<_>>>()?;
                Ok(self.assignment[idx].instantiate(&translated))
            }
        }
    }

    pub fn extend_all(&self, phis: &[Formula]) -> Result<Vec<Formula>> {
        phis.iter().map(|f| self.extend(f)).collect()
    }

    /// `self ∘ first`: first apply `first`, then `self`.
    pub fn compose_after(&self, first: &FlexibleMorphism) -> Result<FlexibleMorphism> {
        compose_morphisms(self, first)
    }
}

/// `c(x0, ..., x_{n-1})`.
pub(crate) fn generic_application(name: &str, arity: usize) -> Formula {
    Formula::app(name, (0..arity as u32).map(Formula::var).collect())
}

/// Extends a flexible morphism to an arbitrary formula.
pub fn extend_morphism(f: &FlexibleMorphism, phi: &Formula) -> Result<Formula> {
    f.extend(phi)
}

/// Composes `g ∘ f` connective-wise: `(g∘f)(c) = ǧ(f(c))`.
pub fn compose_morphisms(g: &FlexibleMorphism, f: &FlexibleMorphism) -> Result<FlexibleMorphism> {
    if f.target != g.source {
        return Err(Error::SignatureMismatch(format!(
            "cannot compose: target {} differs from source {}",
            f.target, g.source
        )));
    }
    let assignment = f
        .assignment
        .iter()
        .map(|image| g.extend(image))
        .collect::<Result<Vec<_>>>()?;
    Ok(FlexibleMorphism {
        source: f.source.clone(),
        target: g.target.clone(),
        assignment,
    })
}
