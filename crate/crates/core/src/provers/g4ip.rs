//! Intuitionistic consequence in Dyckhoff's contraction-free calculus.
//!
//! `neg(a)` is read as `a → ⊥` and `iff(a,b)` as `(a → b) ∧ (b → a)`.
//! Contexts are sets; contraction is admissible, so duplicates are dropped.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::syntax::Formula;

type Id = u32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Node {
    Atom(u32),
    Bot,
    And(Id, Id),
    Or(Id, Id),
    Imp(Id, Id),
}

/// A G4ip prover with hash-consed formulas and a memo table of decided
/// sequents that persists across queries.
#[derive(Debug, Clone)]
pub struct IpcProver {
    nodes: Vec<Node>,
    index: HashMap<Node, Id>,
    memo: HashMap<(Vec<Id>, Id), bool>,
    bot: Id,
}

impl Default for IpcProver {
    fn default() -> Self {
        Self::new()
    }
}

impl IpcProver {
    pub fn new() -> Self {
        let mut p = IpcProver {
            nodes: Vec::new(),
            index: HashMap::new(),
            memo: HashMap::new(),
            bot: 0,
        };
        p.bot = p.node(Node::Bot);
        p
    }

    /// Number of memoised sequents.
    pub fn cache_len(&self) -> usize {
        self.memo.len()
    }

    pub fn clear_cache(&mut self) {
        self.memo.clear();
    }

    fn node(&mut self, n: Node) -> Id {
        if let Some(&id) = self.index.get(&n) {
            return id;
        }
        let id = self.nodes.len() as Id;
        self.nodes.push(n);
        self.index.insert(n, id);
        id
    }

    fn intern(&mut self, phi: &Formula) -> Result<Id> {
        match phi {
            Formula::Var(i) => Ok(self.node(Node::Atom(*i))),
            Formula::App(name, args) => {
                let ids = args
                    .iter()
                    .map(|a| self.intern(a))
                    .collect::<Result<Vec<_>>>()?;
                Ok(match (&**name, ids.as_slice()) {
                    ("neg", &[a]) => self.node(Node::Imp(a, self.bot)),
                    ("imp", &[a, b]) => self.node(Node::Imp(a, b)),
                    ("and", &[a, b]) => self.node(Node::And(a, b)),
                    ("or", &[a, b]) => self.node(Node::Or(a, b)),
                    ("iff", &[a, b]) => {
                        let l = self.node(Node::Imp(a, b));
                        let r = self.node(Node::Imp(b, a));
                        self.node(Node::And(l, r))
                    }
                    _ => {
                        return Err(Error::Unsupported(format!(
                            "the intuitionistic prover does not interpret `{name}/{}`",
                            args.len()
                        )))
                    }
                })
            }
        }
    }

    /// Decides `gamma ⊢_IPC phi`.
    pub fn decide(&mut self, gamma: &[Formula], phi: &Formula) -> Result<bool> {
        let ctx = gamma
            .iter()
            .map(|g| self.intern(g))
            .collect::<Result<Vec<_>>>()?;
        let goal = self.intern(phi)?;
        Ok(self.prove(ctx, goal))
    }

    fn prove(&mut self, mut ctx: Vec<Id>, goal: Id) -> bool {
        ctx.sort_unstable();
        ctx.dedup();
        let key = (ctx, goal);
        if let Some(&known) = self.memo.get(&key) {
            return known;
        }
        let result = self.search(&key.0, goal);
        self.memo.insert(key, result);
        result
    }

    fn without(ctx: &[Id], i: usize, extra: &[Id]) -> Vec<Id> {
        let mut out = Vec::with_capacity(ctx.len() + extra.len());
        out.extend_from_slice(&ctx[..i]);
        out.extend_from_slice(&ctx[i + 1..]);
        out.extend_from_slice(extra);
        out
    }

    fn search(&mut self, ctx: &[Id], goal: Id) -> bool {
        if ctx.binary_search(&self.bot).is_ok() || ctx.binary_search(&goal).is_ok() {
            return true;
        }
        // invertible left rules
        for (i, &a) in ctx.iter().enumerate() {
            match self.nodes[a as usize] {
                Node::And(p, q) => return self.prove(Self::without(ctx, i, &[p, q]), goal),
                Node::Or(p, q) => {
                    return self.prove(Self::without(ctx, i, &[p]), goal)
                        && self.prove(Self::without(ctx, i, &[q]), goal)
                }
                Node::Imp(p, b) => match self.nodes[p as usize] {
                    Node::Atom(_) if ctx.binary_search(&p).is_ok() => {
                        return self.prove(Self::without(ctx, i, &[b]), goal)
                    }
                    Node::Bot => return self.prove(Self::without(ctx, i, &[]), goal),
                    Node::And(c, d) => {
                        let db = self.node(Node::Imp(d, b));
                        let cdb = self.node(Node::Imp(c, db));
                        return self.prove(Self::without(ctx, i, &[cdb]), goal);
                    }
                    Node::Or(c, d) => {
                        let cb = self.node(Node::Imp(c, b));
                        let db = self.node(Node::Imp(d, b));
                        return self.prove(Self::without(ctx, i, &[cb, db]), goal);
                    }
                    _ => {}
                },
                Node::Atom(_) | Node::Bot => {}
            }
        }
        // invertible right rules
        match self.nodes[goal as usize] {
            Node::And(p, q) => return self.prove(ctx.to_vec(), p) && self.prove(ctx.to_vec(), q),
            Node::Imp(p, q) => {
                let mut grown = ctx.to_vec();
                grown.push(p);
                return self.prove(grown, q);
            }
            _ => {}
        }
        // non-invertible rules
        if let Node::Or(p, q) = self.nodes[goal as usize] {
            if self.prove(ctx.to_vec(), p) || self.prove(ctx.to_vec(), q) {
                return true;
            }
        }
        for (i, &a) in ctx.iter().enumerate() {
            if let Node::Imp(cd, b) = self.nodes[a as usize] {
                if let Node::Imp(_, d) = self.nodes[cd as usize] {
                    let db = self.node(Node::Imp(d, b));
                    if self.prove(Self::without(ctx, i, &[db]), cd)
                        && self.prove(Self::without(ctx, i, &[b]), goal)
                    {
                        return true;
                    }
                }
            }
        }
        false
    }
}

/// Decides `gamma ⊢_IPC phi` with a fresh prover.
pub fn ipc_decide(gamma: &[Formula], phi: &Formula) -> Result<bool> {
    IpcProver::new().decide(gamma, phi)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: u32) -> Formula {
        Formula::var(i)
    }

    fn nn(f: Formula) -> Formula {
        Formula::neg(Formula::neg(f))
    }

    #[test]
    fn basic_verdicts() {
        assert!(ipc_decide(&[], &Formula::imp(x(0), x(0))).unwrap());
        assert!(!ipc_decide(&[], &Formula::peirce()).unwrap());
        assert!(ipc_decide(&[], &nn(Formula::peirce())).unwrap());
        assert!(!ipc_decide(&[], &Formula::or(x(0), Formula::neg(x(0)))).unwrap());
        assert!(ipc_decide(&[], &nn(Formula::or(x(0), Formula::neg(x(0))))).unwrap());
        assert!(!ipc_decide(&[nn(x(0))], &x(0)).unwrap());
        assert!(ipc_decide(&[x(0)], &nn(x(0))).unwrap());
    }

    #[test]
    fn context_rules() {
        let mp = [x(0), Formula::imp(x(0), x(1))];
        assert!(ipc_decide(&mp, &x(1)).unwrap());
        assert!(ipc_decide(&[Formula::or(x(0), x(1))], &Formula::or(x(1), x(0))).unwrap());
        assert!(ipc_decide(&[Formula::iff(x(0), x(1)), x(1)], &x(0)).unwrap());
        // (x0 → x1) → x2, x1 → x2 ⊬ x2 but ⊢ with x1 present
        let nested = Formula::imp(Formula::imp(x(0), x(1)), x(2));
        assert!(!ipc_decide(&[nested.clone()], &x(2)).unwrap());
        assert!(ipc_decide(&[nested, x(1)], &x(2)).unwrap());
    }

    #[test]
    fn shared_cache_gives_same_answers() {
        let mut prover = IpcProver::new();
        for _ in 0..2 {
            assert!(!prover.decide(&[], &Formula::peirce()).unwrap());
            assert!(prover.decide(&[], &nn(Formula::peirce())).unwrap());
        }
        assert!(prover.cache_len() > 0);
    }
}
