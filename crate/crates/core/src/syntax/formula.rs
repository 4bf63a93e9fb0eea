use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

use super::signature::Signature;

/// A propositional formula over the fixed variable set `x0, x1, ...`.
///
/// Formulas are immutable trees with structural equality; cloning is cheap
/// because children are shared.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Var(u32),
    App(Arc<str>, Arc<[Formula]>),
}

impl Formula {
    pub fn var(index: u32) -> Self {
        Formula::Var(index)
    }

    pub fn app(name: &str, args: Vec<Formula>) -> Self {
        Formula::App(Arc::from(name), Arc::from(args))
    }

    pub fn neg(a: Formula) -> Self {
        Formula::app("neg", vec![a])
    }

    pub fn imp(a: Formula, b: Formula) -> Self {
        Formula::app("imp", vec![a, b])
    }

    pub fn and(a: Formula, b: Formula) -> Self {
        Formula::app("and", vec![a, b])
    }

    pub fn or(a: Formula, b: Formula) -> Self {
        Formula::app("or", vec![a, b])
    }

    pub fn iff(a: Formula, b: Formula) -> Self {
        Formula::app("iff", vec![a, b])
    }

    /// Peirce's law `((x0 -> x1) -> x0) -> x0`.
    pub fn peirce() -> Self {
        let (p, q) = (Formula::var(0), Formula::var(1));
        Formula::imp(Formula::imp(Formula::imp(p.clone(), q), p.clone()), p)
    }

    pub fn as_var(&self) -> Option<u32> {
        match self {
            Formula::Var(i) => Some(*i),
            Formula::App(..) => None,
        }
    }

    pub fn head(&self) -> Option<&str> {
        match self {
            Formula::Var(_) => None,
            Formula::App(name, _) => Some(name),
        }
    }

    pub fn args(&self) -> &[Formula] {
        match self {
            Formula::Var(_) => &[],
            Formula::App(_, args) => args,
        }
    }

    /// Depth of the tree; variables have depth 0.
    pub fn depth(&self) -> usize {
        match self {
            Formula::Var(_) => 0,
            Formula::App(_, args) => 1 + args.iter().map(Formula::depth).max().unwrap_or(0),
        }
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        match self {
            Formula::Var(_) => 1,
            Formula::App(_, args) => 1 + args.iter().map(Formula::size).sum::<usize>(),
        }
    }

    pub fn variables(&self) -> BTreeSet<u32> {
        let mut out = BTreeSet::new();
        self.collect_variables(&mut out);
        out
    }

    pub(crate) fn collect_variables(&self, out: &mut BTreeSet<u32>) {
        match self {
            Formula::Var(i) => {
                out.insert(*i);
            }
            Formula::App(_, args) => args.iter().for_each(|a| a.collect_variables(out)),
        }
    }

    pub fn max_var(&self) -> Option<u32> {
        match self {
            Formula::Var(i) => Some(*i),
            Formula::App(_, args) => args.iter().filter_map(Formula::max_var).max(),
        }
    }

    /// Checks that every application matches `sig` in name and arity.
    pub fn check(&self, sig: &Signature) -> Result<()> {
        match self {
            Formula::Var(_) => Ok(()),
            Formula::App(name, args) => {
                let expected = sig
                    .arity(name)
                    .ok_or_else(|| Error::UnknownConnective(name.to_string()))?;
                if expected != args.len() {
                    return Err(Error::Arity {
                        name: name.to_string(),
                        expected,
                        found: args.len(),
                    });
                }
                args.iter().try_for_each(|a| a.check(sig))
            }
        }
    }

    /// Simultaneous substitution; unmapped variables stay fixed.
    pub fn substitute(&self, sigma: &HashMap<u32, Formula>) -> Formula {
        self.substitute_with(&|i| sigma.get(&i).cloned())
    }

    /// Simultaneous substitution driven by a closure returning `None` for
    /// variables that stay fixed.
    pub fn substitute_with(&self, sigma: &dyn Fn(u32) -> Option<Formula>) -> Formula {
        match self {
            Formula::Var(i) => sigma(*i).unwrap_or_else(|| self.clone()),
            Formula::App(name, args) => Formula::App(
                name.clone(),
                args.iter().map(|a| a.substitute_with(sigma)).collect(),
            ),
        }
    }

    /// Replaces `x_i` by `args[i]`. Variables beyond `args` stay fixed.
    pub fn instantiate(&self, args: &[Formula]) -> Formula {
        self.substitute_with(&|i| args.get(i as usize).cloned())
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Var(i) => write!(f, "x{i}"),
            Formula::App(name, args) => {
                write!(f, "{name}")?;
                if args.is_empty() {
                    return Ok(());
                }
                write!(f, "(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{a}")?;
                }
                write!(f, ")")
            }
        }
    }
}

impl fmt::Debug for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A finite substitution `x_i ↦ formula`.
pub type Substitution = HashMap<u32, Formula>;

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: u32) -> Formula {
        Formula::var(i)
    }

    #[test]
    fn substitute_identity() {
        let sigma = Substitution::from([(0, x(0))]);
        assert_eq!(x(0).substitute(&sigma), x(0));
    }

    #[test]
    fn substitute_is_simultaneous() {
        let sigma = Substitution::from([(0, x(1)), (1, x(0))]);
        assert_eq!(
            Formula::imp(x(0), x(1)).substitute(&sigma),
            Formula::imp(x(1), x(0))
        );
    }

    #[test]
    fn substitute_recurses() {
        let sigma = Substitution::from([(0, Formula::neg(x(0)))]);
        assert_eq!(
            Formula::neg(x(0)).substitute(&sigma),
            Formula::neg(Formula::neg(x(0)))
        );
    }

    #[test]
    fn measures() {
        let p = Formula::peirce();
        assert_eq!(p.depth(), 3);
        assert_eq!(p.size(), 7);
        assert_eq!(p.variables(), BTreeSet::from([0, 1]));
        assert_eq!(p.max_var(), Some(1));
        assert_eq!(p.to_string(), "imp(imp(imp(x0,x1),x0),x0)");
    }

    #[test]
    fn check_against_signature() {
        let sig = Signature::implicational_negation();
        assert!(Formula::peirce().check(&sig).is_ok());
        assert!(matches!(
            Formula::or(x(0), x(1)).check(&sig),
            Err(Error::UnknownConnective(_))
        ));
        assert!(matches!(
            Formula::app("imp", vec![x(0)]).check(&sig),
            Err(Error::Arity { .. })
        ));
    }
}
