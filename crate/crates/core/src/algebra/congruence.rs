use std::fmt;

use crate::error::{Error, Result};

use super::structure::FiniteAlgebra;

/// An equivalence relation on `{0..n-1}` in canonical form: each element
/// maps to the least element of its block.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Congruence {
    repr: Vec<usize>,
}

impl Congruence {
    pub fn identity(n: usize) -> Self {
        Congruence {
            repr: (0..n).collect(),
        }
    }

    pub fn total(n: usize) -> Self {
        Congruence { repr: vec![0; n] }
    }

    /// Builds the canonical form from any block labelling.
    pub fn from_labels(labels: &[usize]) -> Self {
        let mut repr = vec![0; labels.len()];
        for i in 0..labels.len() {
            repr[i] = (0..=i).find(|&j| labels[j] == labels[i]).unwrap();
        }
        Congruence { repr }
    }

    /// Builds the partition from explicit blocks; every element must occur
    /// exactly once.
    pub fn from_blocks(n: usize, blocks: &[Vec<usize>]) -> Result<Self> {
        let mut labels = vec![usize::MAX; n];
        for (b, block) in blocks.iter().enumerate() {
            for &e in block {
                if e >= n {
                    return Err(Error::OutOfRange { element: e, size: n });
                }
                if labels[e] != usize::MAX {
                    return Err(Error::IncompatiblePartition(format!(
                        "element {e} occurs in two blocks"
                    )));
                }
                labels[e] = b;
            }
        }
        if let Some(e) = labels.iter().position(|&l| l == usize::MAX) {
            return Err(Error::IncompatiblePartition(format!(
                "element {e} is in no block"
            )));
        }
        Ok(Congruence::from_labels(&labels))
    }

    pub fn size(&self) -> usize {
        self.repr.len()
    }

    pub fn representative(&self, a: usize) -> usize {
        self.repr[a]
    }

    pub fn representatives(&self) -> &[usize] {
        &self.repr
    }

    pub fn related(&self, a: usize, b: usize) -> bool {
        self.repr[a] == self.repr[b]
    }

    pub fn is_identity(&self) -> bool {
        self.repr.iter().enumerate().all(|(i, &r)| i == r)
    }

    pub fn block_count(&self) -> usize {
        self.repr.iter().enumerate().filter(|(i, &r)| *i == r).count()
    }

    /// Blocks in ascending order of least element.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        let mut slot = vec![usize::MAX; self.repr.len()];
        for (i, &r) in self.repr.iter().enumerate() {
            if slot[r] == usize::MAX {
                slot[r] = blocks.len();
                blocks.push(Vec::new());
            }
            blocks[slot[r]].push(i);
        }
        blocks
    }

    /// Inclusion of relations.
    pub fn is_finer_than(&self, other: &Congruence) -> bool {
        (0..self.size()).all(|a| other.related(a, self.repr[a]))
    }

    /// Compatibility with every operation of `alg`.
    pub fn is_compatible(&self, alg: &FiniteAlgebra) -> bool {
        self.violation(alg).is_none()
    }

    /// A connective index and argument tuple where the relation fails to be
    /// preserved after replacing one argument by its representative.
    pub(crate) fn violation(&self, alg: &FiniteAlgebra) -> Option<(usize, Vec<usize>, usize)> {
        if self.size() != alg.size() {
            return Some((usize::MAX, Vec::new(), 0));
        }
        for ci in 0..alg.signature().len() {
            for (args, value) in alg.entries(ci) {
                for pos in 0..args.len() {
                    let r = self.repr[args[pos]];
                    if r == args[pos] {
                        continue;
                    }
                    let mut moved = args.clone();
                    moved[pos] = r;
                    if !self.related(value, alg.apply(ci, &moved)) {
                        return Some((ci, args, pos));
                    }
                }
            }
        }
        None
    }

    /// No block meets both `filter` and its complement.
    pub fn is_compatible_with_filter(&self, member: &[bool]) -> bool {
        (0..self.size()).all(|a| member[a] == member[self.repr[a]])
    }
}

impl fmt::Debug for Congruence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Congruence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, block) in self.blocks().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{{")?;
            for (j, e) in block.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{e}")?;
            }
            write!(f, "}}")?;
        }
        write!(f, "}}")
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut a: usize) -> usize {
        while self.parent[a] != a {
            self.parent[a] = self.parent[self.parent[a]];
            a = self.parent[a];
        }
        a
    }

    /// Returns true when two distinct classes were merged.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }

    fn into_congruence(mut self) -> Congruence {
        let labels: Vec<usize> = (0..self.parent.len()).map(|i| self.find(i)).collect();
        Congruence::from_labels(&labels)
    }
}

/// The least congruence containing `pairs`.
///
/// Pairs are merged, then every table entry is compared with the entry
/// obtained by moving one argument to its current representative; unequal
/// results are merged until nothing changes.
pub fn congruence_generated(alg: &FiniteAlgebra, pairs: &[(usize, usize)]) -> Result<Congruence> {
    let n = alg.size();
    let mut uf = UnionFind::new(n);
    for &(a, b) in pairs {
        for e in [a, b] {
            if e >= n {
                return Err(Error::OutOfRange { element: e, size: n });
            }
        }
        uf.union(a, b);
    }
    loop {
        let mut changed = false;
        for ci in 0..alg.signature().len() {
            let entries: Vec<_> = alg.entries(ci).collect();
            for (args, value) in entries {
                for pos in 0..args.len() {
                    let r = uf.find(args[pos]);
                    if r == args[pos] {
                        continue;
                    }
                    let mut moved = args.clone();
                    moved[pos] = r;
                    changed |= uf.union(value, alg.apply(ci, &moved));
                }
            }
        }
        if !changed {
            return Ok(uf.into_congruence());
        }
    }
}

/// The join of two congruences in the congruence lattice.
pub fn join(alg: &FiniteAlgebra, a: &Congruence, b: &Congruence) -> Result<Congruence> {
    let pairs: Vec<(usize, usize)> = (0..alg.size())
        .flat_map(|i| [(i, a.representative(i)), (i, b.representative(i))])
        .collect();
    congruence_generated(alg, &pairs)
}

/// Every congruence of `alg`, by brute force over all set partitions of the
/// carrier, sorted canonically.
pub fn all_congruences(alg: &FiniteAlgebra) -> Vec<Congruence> {
    let mut out = Vec::new();
    let mut labels = vec![0usize; alg.size()];
    partitions(&mut labels, 0, 0, &mut |labels| {
        let c = Congruence::from_labels(labels);
        if c.is_compatible(alg) {
            out.push(c);
        }
    });
    out.sort();
    out
}

/// Restricted growth strings: `labels[i] <= max(labels[..i]) + 1`.
fn partitions(labels: &mut [usize], pos: usize, used: usize, visit: &mut dyn FnMut(&[usize])) {
    if pos == labels.len() {
        visit(labels);
        return;
    }
    for l in 0..=used {
        labels[pos] = l;
        partitions(labels, pos + 1, if l == used { used + 1 } else { used }, visit);
    }
}

/// The quotient `A/θ` with blocks numbered in ascending order of least
/// element, together with the quotient map.
pub fn quotient(alg: &FiniteAlgebra, theta: &Congruence) -> Result<(FiniteAlgebra, Vec<usize>)> {
    if theta.size() != alg.size() {
        return Err(Error::IncompatiblePartition(format!(
            "partition of {} elements for a carrier of {}",
            theta.size(),
            alg.size()
        )));
    }
    if let Some((ci, args, pos)) = theta.violation(alg) {
        let name = &alg.signature().connectives()[ci].name;
        return Err(Error::IncompatiblePartition(format!(
            "`{name}` at {args:?} does not respect the block of argument {pos}"
        )));
    }
    let mut index = vec![usize::MAX; alg.size()];
    let mut reps = Vec::new();
    for a in 0..alg.size() {
        if theta.representative(a) == a {
            index[a] = reps.len();
            reps.push(a);
        }
    }
    let map: Vec<usize> = (0..alg.size())
        .map(|a| index[theta.representative(a)])
        .collect();
    let q = FiniteAlgebra::from_fn(alg.signature().clone(), reps.len(), |ci, args| {
        let lifted: Vec<usize> = args.iter().map(|&b| reps[b]).collect();
        map[alg.apply(ci, &lifted)]
    })?;
    Ok((q, map))
}
