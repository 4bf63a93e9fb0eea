use std::fmt;

use crate::algebra::{build, find_valuation, FiniteAlgebra, Filter};
use crate::error::{Error, Result};
use crate::provers::{cpc_decide, IpcProver};
use crate::syntax::{Formula, Signature};

/// A logical matrix `⟨A, F⟩`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    algebra: FiniteAlgebra,
    filter: Filter,
}

impl Matrix {
    pub fn new(algebra: FiniteAlgebra, filter: Filter) -> Result<Self> {
        if filter.carrier() != algebra.size() {
            return Err(Error::InvalidAlgebra(format!(
                "filter over {} elements for a carrier of {}",
                filter.carrier(),
                algebra.size()
            )));
        }
        Ok(Matrix { algebra, filter })
    }

    /// Convenience constructor from element indices.
    pub fn with_elements(algebra: FiniteAlgebra, elements: &[usize]) -> Result<Self> {
        let filter = Filter::new(algebra.size(), elements.iter().copied())?;
        Matrix::new(algebra, filter)
    }

    pub fn algebra(&self) -> &FiniteAlgebra {
        &self.algebra
    }

    pub fn filter(&self) -> &Filter {
        &self.filter
    }

    /// A valuation with `v[Γ] ⊆ F` and `v(φ) ∉ F`, if one exists.
    pub fn countervaluation(&self, gamma: &[Formula], phi: &Formula) -> Result<Option<Vec<usize>>> {
        let alg = &self.algebra;
        let premises = gamma
            .iter()
            .map(|g| alg.compile(g))
            .collect::<Result<Vec<_>>>()?;
        let goal = alg.compile(phi)?;
        let mut vars = phi.variables();
        for g in gamma {
            g.collect_variables(&mut vars);
        }
        let vars: Vec<u32> = vars.into_iter().collect();
        let mut stack = Vec::new();
        Ok(find_valuation(&vars, alg.size(), |v| {
            premises
                .iter()
                .all(|p| self.filter.contains(p.eval(alg, v, &mut stack)))
                && !self.filter.contains(goal.eval(alg, v, &mut stack))
        }))
    }

    /// `⟨A,F⟩ ⊨ ⟨Γ,φ⟩`: every valuation sending `Γ` into `F` sends `φ` into `F`.
    pub fn satisfies(&self, gamma: &[Formula], phi: &Formula) -> Result<bool> {
        Ok(self.countervaluation(gamma, phi)?.is_none())
    }
}

/// How a logic decides consequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Engine {
    /// Consequence of a nonempty finite family of matrices.
    Matrices(Vec<Matrix>),
    /// Classical logic by truth tables.
    Cpc,
    /// Intuitionistic logic by G4ip.
    Ipc,
}

/// A logic: a signature together with a decidable consequence relation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LogicSpec {
    signature: Signature,
    engine: Engine,
}

impl LogicSpec {
    /// Classical logic over `{neg, imp, and, or, iff}`.
    pub fn cpc() -> Self {
        LogicSpec {
            signature: Signature::propositional_with_iff(),
            engine: Engine::Cpc,
        }
    }

    /// Intuitionistic logic over `{neg, imp, and, or, iff}`.
    pub fn ipc() -> Self {
        LogicSpec {
            signature: Signature::propositional_with_iff(),
            engine: Engine::Ipc,
        }
    }

    /// A built-in engine over a sublanguage of `{neg, imp, and, or, iff}`.
    pub fn builtin(engine: Engine, signature: Signature) -> Result<Self> {
        if matches!(engine, Engine::Matrices(_)) {
            return Err(Error::Precondition("use LogicSpec::matrices for matrix families".into()));
        }
        if !signature.is_subsignature_of(&Signature::propositional_with_iff()) {
            return Err(Error::SignatureMismatch(format!(
                "built-in logics are defined over sublanguages of {}, not {signature}",
                Signature::propositional_with_iff()
            )));
        }
        Ok(LogicSpec { signature, engine })
    }

    /// The logic of a finite family of matrices over `signature`. Every
    /// algebra must interpret every connective of the signature.
    pub fn matrices(signature: Signature, matrices: Vec<Matrix>) -> Result<Self> {
        if matrices.is_empty() {
            return Err(Error::Precondition("a matrix family must be nonempty".into()));
        }
        for m in &matrices {
            for c in signature.connectives() {
                if m.algebra().signature().arity(&c.name) != Some(c.arity) {
                    return Err(Error::SignatureMismatch(format!(
                        "matrix algebra over {} does not interpret `{}/{}`",
                        m.algebra().signature(),
                        c.name,
                        c.arity
                    )));
                }
            }
        }
        Ok(LogicSpec {
            signature,
            engine: Engine::Matrices(matrices),
        })
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn engine(&self) -> &Engine {
        &self.engine
    }

    /// The same consequence relation over a sublanguage.
    pub fn restricted(&self, signature: Signature) -> Result<Self> {
        if !signature.is_subsignature_of(&self.signature) {
            return Err(Error::SignatureMismatch(format!(
                "{signature} is not a sublanguage of {}",
                self.signature
            )));
        }
        Ok(LogicSpec {
            signature,
            engine: self.engine.clone(),
        })
    }

    pub fn check(&self, phi: &Formula) -> Result<()> {
        phi.check(&self.signature)
    }

    /// Finite matrices in which every consequence of the logic holds. For
    /// the matrix engine this is the defining family; for the built-ins it is
    /// a fixed list of small Boolean or Heyting algebras with filter `{⊤}`.
    pub fn sound_matrices(&self) -> Result<Vec<Matrix>> {
        let algebras = match &self.engine {
            Engine::Matrices(ms) => return Ok(ms.clone()),
            Engine::Cpc => vec![build::boolean(1)],
            Engine::Ipc => {
                let b4 = build::boolean(2);
                vec![
                    build::chain(3),
                    build::chain(4),
                    b4.clone(),
                    build::chain(5),
                    build::ordinal_sum(&b4, &build::chain(2))?,
                    build::ordinal_sum(&build::chain(2), &b4)?,
                ]
            }
        };
        algebras
            .into_iter()
            .map(|a| {
                let top = a.size() - 1;
                Matrix::with_elements(a.restrict(&self.signature)?, &[top])
            })
            .collect()
    }

    /// A sound matrix and valuation refuting `gamma ⊢ phi`, if one of
    /// [`LogicSpec::sound_matrices`] does.
    pub fn refute(&self, gamma: &[Formula], phi: &Formula) -> Result<Option<Refutation>> {
        for (index, m) in self.sound_matrices()?.into_iter().enumerate() {
            if let Some(valuation) = m.countervaluation(gamma, phi)? {
                return Ok(Some(Refutation {
                    index,
                    matrix: m,
                    valuation,
                }));
            }
        }
        Ok(None)
    }
}

/// A valuation in a sound matrix that separates premises from conclusion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Refutation {
    /// Position in [`LogicSpec::sound_matrices`].
    pub index: usize,
    pub matrix: Matrix,
    pub valuation: Vec<usize>,
}

impl fmt::Display for Refutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "valuation {:?} in the {}-element matrix with filter {}",
            self.valuation,
            self.matrix.algebra().size(),
            self.matrix.filter()
        )
    }
}

impl fmt::Display for LogicSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.engine {
            Engine::Cpc => write!(f, "cpc over {}", self.signature),
            Engine::Ipc => write!(f, "ipc over {}", self.signature),
            Engine::Matrices(ms) => write!(f, "{} matrices over {}", ms.len(), self.signature),
        }
    }
}

/// Answers consequence queries for one logic, keeping prover caches warm
/// between queries.
#[derive(Debug, Clone)]
pub struct Decider<'a> {
    logic: &'a LogicSpec,
    ipc: IpcProver,
}

impl<'a> Decider<'a> {
    pub fn new(logic: &'a LogicSpec) -> Self {
        Decider {
            logic,
            ipc: IpcProver::new(),
        }
    }

    pub fn logic(&self) -> &LogicSpec {
        self.logic
    }

    /// Decides `gamma ⊢ phi`.
    pub fn decide(&mut self, gamma: &[Formula], phi: &Formula) -> Result<bool> {
        for f in gamma.iter().chain([phi]) {
            self.logic.check(f)?;
        }
        match &self.logic.engine {
            Engine::Cpc => cpc_decide(gamma, phi),
            Engine::Ipc => {
                if self.ipc.cache_len() > 4_000_000 {
                    self.ipc.clear_cache();
                }
                self.ipc.decide(gamma, phi)
            }
            Engine::Matrices(ms) => {
                for m in ms {
                    if !m.satisfies(gamma, phi)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
        }
    }

    /// `phi ⊣⊢ psi`.
    pub fn interderivable(&mut self, phi: &Formula, psi: &Formula) -> Result<bool> {
        Ok(self.decide(std::slice::from_ref(phi), psi)? && self.decide(std::slice::from_ref(psi), phi)?)
    }
}

/// Decides `gamma ⊢_l phi`.
pub fn consequence(l: &LogicSpec, gamma: &[Formula], phi: &Formula) -> Result<bool> {
    Decider::new(l).decide(gamma, phi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::build;

    fn x(i: u32) -> Formula {
        Formula::var(i)
    }

    fn b2_logic() -> LogicSpec {
        let m = Matrix::with_elements(build::boolean(1), &[1]).unwrap();
        LogicSpec::matrices(Signature::propositional(), vec![m]).unwrap()
    }

    #[test]
    fn matrix_consequence() {
        let l = b2_logic();
        assert!(consequence(&l, &[x(0)], &x(0)).unwrap());
        assert!(consequence(&l, &[x(0), Formula::imp(x(0), x(1))], &x(1)).unwrap());
        assert!(!consequence(&l, &[], &x(0)).unwrap());
    }

    #[test]
    fn rejects_foreign_connectives() {
        let l = b2_logic();
        let bad = Formula::iff(x(0), x(0));
        assert!(consequence(&l, &[], &bad).is_err());
    }

    #[test]
    fn builtin_sublanguages() {
        let imp_only = Signature::from_pairs(&[("imp", 2)]).unwrap();
        assert!(LogicSpec::builtin(Engine::Ipc, imp_only).is_ok());
        let foreign = Signature::from_pairs(&[("box", 1)]).unwrap();
        assert!(LogicSpec::builtin(Engine::Cpc, foreign).is_err());
    }

    #[test]
    fn refutations() {
        let peirce = Formula::peirce();
        assert!(LogicSpec::cpc().refute(&[], &peirce).unwrap().is_none());
        let r = LogicSpec::ipc().refute(&[], &peirce).unwrap().unwrap();
        assert!(!r.matrix.satisfies(&[], &peirce).unwrap());
        let dn = Formula::imp(Formula::neg(Formula::neg(x(0))), x(0));
        assert_eq!(LogicSpec::ipc().refute(&[], &dn).unwrap().unwrap().valuation, vec![1]);
        for m in LogicSpec::ipc().sound_matrices().unwrap() {
            assert_eq!(m.filter().len(), 1);
        }
    }
}
