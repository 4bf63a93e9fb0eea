//! Countermodel search over small finite Kripke frames.
//!
//! Frames are partial orders on `0..n` with `0` least, labelled along a
//! linear extension. Every rooted poset of at most `n` points arises this
//! way up to isomorphism.

use crate::error::{Error, Result};
use crate::syntax::Formula;

/// A finite rooted partial order; `up[w]` is the bitmask of worlds `≥ w`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KripkeFrame {
    up: Vec<u32>,
}

impl KripkeFrame {
    pub fn worlds(&self) -> usize {
        self.up.len()
    }

    pub fn successors(&self, w: usize) -> u32 {
        self.up[w]
    }

    /// All persistent (upward closed) sets of worlds, as bitmasks.
    pub fn up_sets(&self) -> Vec<u32> {
        let n = self.worlds();
        (0..1u32 << n)
            .filter(|&s| (0..n).all(|w| s >> w & 1 == 0 || self.up[w] & !s == 0))
            .collect()
    }

    fn force(&self, phi: &Formula, val: &dyn Fn(u32) -> u32) -> Result<u32> {
        let all = (1u32 << self.worlds()) - 1;
        Ok(match phi {
            Formula::Var(i) => val(*i),
            Formula::App(name, args) => {
                let a = args
                    .iter()
                    .map(|x| self.force(x, val))
                    .collect::<Result<Vec<_>>>()?;
                let imp = |p: u32, q: u32| -> u32 {
                    (0..self.worlds())
                        .filter(|&w| self.up[w] & p & !q == 0)
                        .fold(0, |m, w| m | 1 << w)
                };
                match (&**name, a.as_slice()) {
                    ("neg", &[p]) => imp(p, 0),
                    ("imp", &[p, q]) => imp(p, q),
                    ("and", &[p, q]) => p & q,
                    ("or", &[p, q]) => p | q,
                    ("iff", &[p, q]) => imp(p, q) & imp(q, p),
                    _ => {
                        return Err(Error::Unsupported(format!(
                            "Kripke semantics not defined for `{name}/{}`",
                            args.len()
                        )))
                    }
                }
            }
        } & all)
    }
}

/// Every rooted frame with `1..=max_worlds` worlds.
pub fn rooted_frames(max_worlds: usize) -> Vec<KripkeFrame> {
    let mut out = Vec::new();
    for n in 1..=max_worlds {
        // candidate strict pairs i < j with i >= 1; 0 sees everything
        let pairs: Vec<(usize, usize)> = (1..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .collect();
        for mask in 0u64..(1 << pairs.len()) {
            let mut rel = vec![vec![false; n]; n];
            for (w, row) in rel.iter_mut().enumerate() {
                row[w] = true;
            }
            for j in 0..n {
                rel[0][j] = true;
            }
            for (k, &(i, j)) in pairs.iter().enumerate() {
                if mask >> k & 1 == 1 {
                    rel[i][j] = true;
                }
            }
            let transitive = (0..n).all(|a| {
                (0..n).all(|b| (0..n).all(|c| !(rel[a][b] && rel[b][c]) || rel[a][c]))
            });
            if transitive {
                let up = rel
                    .iter()
                    .map(|row| (0..n).filter(|&j| row[j]).fold(0u32, |m, j| m | 1 << j))
                    .collect();
                out.push(KripkeFrame { up });
            }
        }
    }
    out
}

/// A refuting model: a world forcing every premise but not the conclusion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Countermodel {
    pub frame: KripkeFrame,
    /// `(variable, up-set)` for each variable of the sequent.
    pub valuation: Vec<(u32, u32)>,
    pub world: usize,
}

/// Searches frames with at most `max_worlds` worlds for a countermodel to
/// `gamma ⊢ phi`. Finding one proves non-derivability; finding none
/// proves nothing.
pub fn kripke_countermodel(
    gamma: &[Formula],
    phi: &Formula,
    max_worlds: usize,
) -> Result<Option<Countermodel>> {
    let mut vars = std::collections::BTreeSet::new();
    for f in gamma.iter().chain([phi]) {
        f.collect_variables(&mut vars);
    }
    let vars: Vec<u32> = vars.into_iter().collect();
    for frame in rooted_frames(max_worlds) {
        let ups = frame.up_sets();
        let mut idx = vec![0usize; vars.len()];
        loop {
            let lookup = |v: u32| -> u32 {
                let k = vars.binary_search(&v).expect("collected");
                ups[idx[k]]
            };
            let mut held = (1u32 << frame.worlds()) - 1;
            for g in gamma {
                held &= frame.force(g, &lookup)?;
            }
            let bad = held & !frame.force(phi, &lookup)?;
            if bad != 0 {
                return Ok(Some(Countermodel {
                    valuation: vars.iter().zip(&idx).map(|(&v, &i)| (v, ups[i])).collect(),
                    world: bad.trailing_zeros() as usize,
                    frame,
                }));
            }
            if !crate::syntax::advance(&mut idx, ups.len()) {
                break;
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frame_counts() {
        // rooted posets with 1, 2, 3, 4 points: 1, 1, 2, 5
        let count = |n: usize| rooted_frames(n).len() - rooted_frames(n - 1).len();
        assert_eq!(rooted_frames(1).len(), 1);
        assert_eq!(count(2), 1);
        assert_eq!(count(3), 2);
        // labelled along linear extensions, so isomorphic copies may repeat
        assert!(count(4) >= 5);
    }

    #[test]
    fn refutes_excluded_middle_and_peirce() {
        let x0 = Formula::var(0);
        let lem = Formula::or(x0.clone(), Formula::neg(x0.clone()));
        assert!(kripke_countermodel(&[], &lem, 2).unwrap().is_some());
        assert!(kripke_countermodel(&[], &Formula::peirce(), 2).unwrap().is_some());
        let nn_peirce = Formula::neg(Formula::neg(Formula::peirce()));
        assert!(kripke_countermodel(&[], &nn_peirce, 4).unwrap().is_none());
        assert!(kripke_countermodel(&[], &Formula::imp(x0.clone(), x0), 4).unwrap().is_none());
    }
}
