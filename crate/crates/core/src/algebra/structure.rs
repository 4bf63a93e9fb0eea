use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::syntax::{advance, Formula, Signature};

/// A finite Σ-algebra with carrier `{0, ..., size-1}`.
///
/// Tables are stored flat and row-major: the entry for `(a0, ..., ak-1)`
/// sits at `Σ a_i · size^(k-1-i)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteAlgebra {
    signature: Signature,
    size: usize,
    tables: Vec<Vec<usize>>,
}

impl FiniteAlgebra {
    pub fn new(signature: Signature, size: usize, tables: Vec<Vec<usize>>) -> Result<Self> {
        if size == 0 {
            return Err(Error::InvalidAlgebra("carrier must be nonempty".into()));
        }
        if tables.len() != signature.len() {
            return Err(Error::InvalidAlgebra(format!(
                "{} tables for {} connectives",
                tables.len(),
                signature.len()
            )));
        }
        for (c, table) in signature.connectives().iter().zip(&tables) {
            let expected = size.pow(c.arity as u32);
            if table.len() != expected {
                return Err(Error::InvalidAlgebra(format!(
                    "table for `{}` has {} entries, expected {expected}",
                    c.name,
                    table.len()
                )));
            }
            if let Some(&bad) = table.iter().find(|&&v| v >= size) {
                return Err(Error::OutOfRange {
                    element: bad,
                    size,
                });
            }
        }
        Ok(FiniteAlgebra {
            signature,
            size,
            tables,
        })
    }

    /// Tabulates `op(connective_index, args)` for every connective.
    pub fn from_fn(
        signature: Signature,
        size: usize,
        mut op: impl FnMut(usize, &[usize]) -> usize,
    ) -> Result<Self> {
        let tables = signature
            .connectives()
            .iter()
            .enumerate()
            .map(|(ci, c)| {
                let mut table = Vec::with_capacity(size.pow(c.arity as u32));
                let mut args = vec![0; c.arity];
                loop {
                    table.push(op(ci, &args));
                    if !advance(&mut args, size) {
                        break;
                    }
                }
                table
            })
            .collect();
        FiniteAlgebra::new(signature, size, tables)
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn tables(&self) -> &[Vec<usize>] {
        &self.tables
    }

    pub fn table(&self, name: &str) -> Option<&[usize]> {
        self.signature.index_of(name).map(|i| self.tables[i].as_slice())
    }

    pub(crate) fn offset(&self, args: &[usize]) -> usize {
        args.iter().fold(0, |acc, &a| acc * self.size + a)
    }

    /// Applies the connective at position `index` of the signature.
    #[inline]
    pub fn apply(&self, index: usize, args: &[usize]) -> usize {
        self.tables[index][self.offset(args)]
    }

    /// Applies a connective by name.
    pub fn op(&self, name: &str, args: &[usize]) -> Result<usize> {
        let index = self
            .signature
            .index_of(name)
            .ok_or_else(|| Error::UnknownConnective(name.to_string()))?;
        let arity = self.signature.connectives()[index].arity;
        if args.len() != arity {
            return Err(Error::Arity {
                name: name.to_string(),
                expected: arity,
                found: args.len(),
            });
        }
        if let Some(&bad) = args.iter().find(|&&a| a >= self.size) {
            return Err(Error::OutOfRange {
                element: bad,
                size: self.size,
            });
        }
        Ok(self.apply(index, args))
    }

    /// Enumerates all argument tuples of a connective along with the result.
    pub(crate) fn entries(&self, index: usize) -> impl Iterator<Item = (Vec<usize>, usize)> + '_ {
        let arity = self.signature.connectives()[index].arity;
        let size = self.size;
        self.tables[index].iter().enumerate().map(move |(pos, &value)| {
            let mut args = vec![0; arity];
            let mut rest = pos;
            for slot in args.iter_mut().rev() {
                *slot = rest % size;
                rest /= size;
            }
            (args, value)
        })
    }

    /// Evaluates `phi` under the valuation `x_i ↦ valuation[i]`.
    pub fn evaluate(&self, phi: &Formula, valuation: &[usize]) -> Result<usize> {
        let program = self.compile(phi)?;
        if let Some(v) = program.max_var {
            if v as usize >= valuation.len() {
                return Err(Error::MissingBinding(v));
            }
        }
        if let Some(&bad) = valuation.iter().find(|&&a| a >= self.size) {
            return Err(Error::OutOfRange {
                element: bad,
                size: self.size,
            });
        }
        Ok(program.eval(self, valuation, &mut Vec::new()))
    }

    /// Evaluates `phi` under a sparse valuation.
    pub fn evaluate_map(&self, phi: &Formula, valuation: &BTreeMap<u32, usize>) -> Result<usize> {
        let len = phi.max_var().map_or(0, |v| v as usize + 1);
        let mut dense = vec![0; len];
        for v in phi.variables() {
            dense[v as usize] = *valuation.get(&v).ok_or(Error::MissingBinding(v))?;
        }
        self.evaluate(phi, &dense)
    }

    /// Resolves connective names once so that repeated evaluation is cheap.
    pub fn compile(&self, phi: &Formula) -> Result<Program> {
        let mut code = Vec::with_capacity(phi.size());
        self.compile_into(phi, &mut code)?;
        Ok(Program {
            code,
            max_var: phi.max_var(),
        })
    }

    fn compile_into(&self, phi: &Formula, code: &mut Vec<Instr>) -> Result<()> {
        match phi {
            Formula::Var(i) => code.push(Instr::Var(*i as usize)),
            Formula::App(name, args) => {
                let index = self.signature.index_of(name).ok_or_else(|| {
                    Error::SignatureMismatch(format!(
                        "connective `{name}` is not interpreted in an algebra over {}",
                        self.signature
                    ))
                })?;
                let arity = self.signature.connectives()[index].arity;
                if arity != args.len() {
                    return Err(Error::Arity {
                        name: name.to_string(),
                        expected: arity,
                        found: args.len(),
                    });
                }
                for a in args.iter() {
                    self.compile_into(a, code)?;
                }
                code.push(Instr::Apply { index, arity });
            }
        }
        Ok(())
    }

    /// The algebra over a subsignature, keeping only the named tables.
    pub fn restrict(&self, sig: &Signature) -> Result<FiniteAlgebra> {
        let tables = sig
            .connectives()
            .iter()
            .map(|c| {
                let i = self
                    .signature
                    .index_of(&c.name)
                    .filter(|&i| self.signature.connectives()[i].arity == c.arity)
                    .ok_or_else(|| {
                        Error::SignatureMismatch(format!(
                            "`{}/{}` is not interpreted in this algebra",
                            c.name, c.arity
                        ))
                    })?;
                Ok(self.tables[i].clone())
            })
            .collect::<Result<Vec<_>>>()?;
        FiniteAlgebra::new(sig.clone(), self.size, tables)
    }

    /// Replaces one table entry. Used to build deliberately broken inputs.
    pub fn with_entry(&self, name: &str, args: &[usize], value: usize) -> Result<FiniteAlgebra> {
        self.op(name, args)?;
        if value >= self.size {
            return Err(Error::OutOfRange {
                element: value,
                size: self.size,
            });
        }
        let index = self.signature.index_of(name).expect("checked above");
        let mut out = self.clone();
        let offset = self.offset(args);
        out.tables[index][offset] = value;
        Ok(out)
    }

    /// The subalgebra on `elements` (ascending), renumbered `0..k`.
    pub fn subalgebra(&self, elements: &[usize]) -> Result<FiniteAlgebra> {
        let mut position = vec![usize::MAX; self.size];
        for (i, &e) in elements.iter().enumerate() {
            if e >= self.size {
                return Err(Error::OutOfRange {
                    element: e,
                    size: self.size,
                });
            }
            position[e] = i;
        }
        FiniteAlgebra::from_fn(self.signature.clone(), elements.len(), |ci, args| {
            let orig: Vec<usize> = args.iter().map(|&a| elements[a]).collect();
            let value = self.apply(ci, &orig);
            // out-of-subset values are caught by the range check in `new`
            if position[value] == usize::MAX {
                usize::MAX
            } else {
                position[value]
            }
        })
        .map_err(|_| Error::InvalidAlgebra("subset is not closed under the operations".into()))
    }

    /// Direct product, carrier indexed as `a * other.size + b`.
    pub fn product(&self, other: &FiniteAlgebra) -> Result<FiniteAlgebra> {
        if self.signature != other.signature {
            return Err(Error::SignatureMismatch(
                "product of algebras over different signatures".into(),
            ));
        }
        let m = other.size;
        FiniteAlgebra::from_fn(self.signature.clone(), self.size * m, |ci, args| {
            let left: Vec<usize> = args.iter().map(|&a| a / m).collect();
            let right: Vec<usize> = args.iter().map(|&a| a % m).collect();
            self.apply(ci, &left) * m + other.apply(ci, &right)
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Instr {
    Var(usize),
    Apply { index: usize, arity: usize },
}

/// A formula with connective names resolved against one algebra's
/// signature, evaluated by a small stack machine.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Program {
    code: Vec<Instr>,
    max_var: Option<u32>,
}

impl Program {
    pub fn max_var(&self) -> Option<u32> {
        self.max_var
    }

    /// Evaluates with a caller-provided scratch stack. The valuation must
    /// cover `max_var` and be in range.
    #[inline]
    pub fn eval(&self, alg: &FiniteAlgebra, valuation: &[usize], stack: &mut Vec<usize>) -> usize {
        stack.clear();
        for instr in &self.code {
            match *instr {
                Instr::Var(i) => stack.push(valuation[i]),
                Instr::Apply { index, arity } => {
                    let base = stack.len() - arity;
                    let value = alg.apply(index, &stack[base..]);
                    stack.truncate(base);
                    stack.push(value);
                }
            }
        }
        stack[0]
    }
}

/// Returns the first valuation (dense, indexed by variable number) of the
/// variables `vars` into `{0..size-1}` satisfying `pred`, in lexicographic
/// order with the last listed variable varying fastest.
pub(crate) fn find_valuation(
    vars: &[u32],
    size: usize,
    mut pred: impl FnMut(&[usize]) -> bool,
) -> Option<Vec<usize>> {
    let len = vars.iter().map(|&v| v as usize + 1).max().unwrap_or(0);
    let mut current = vec![0; len];
    loop {
        if pred(&current) {
            return Some(current);
        }
        let mut advanced = false;
        for &v in vars.iter().rev() {
            let slot = &mut current[v as usize];
            *slot += 1;
            if *slot < size {
                advanced = true;
                break;
            }
            *slot = 0;
        }
        if !advanced {
            return None;
        }
    }
}
