use rand::Rng;

use crate::error::{Error, Result};

use super::formula::Formula;
use super::signature::Signature;

/// All formulas over `sig` in the variables `x0..x_{vars-1}` with depth at
/// most `depth`, ordered by depth first. The list for `depth - 1` is a
/// prefix of the list for `depth`.
pub fn enumerate_formulas(sig: &Signature, vars: u32, depth: usize) -> Vec<Formula> {
    let mut all: Vec<Formula> = (0..vars).map(Formula::var).collect();
    // start index of the newest depth layer inside `all`
    let mut layer_start = 0;
    for d in 1..=depth {
        let previous = all.clone();
        let previous_layer = layer_start;
        layer_start = all.len();
        for c in sig.connectives() {
            if c.arity == 0 {
                if d == 1 {
                    all.push(Formula::app(&c.name, Vec::new()));
                }
                continue;
            }
            let mut idx = vec![0usize; c.arity];
            loop {
                if idx.iter().any(|&i| i >= previous_layer) {
                    let args = idx.iter().map(|&i| previous[i].clone()).collect();
                    all.push(Formula::app(&c.name, args));
                }
                if !advance(&mut idx, previous.len()) {
                    break;
                }
            }
        }
    }
    all
}

/// Lexicographic odometer; returns false after the last tuple.
pub(crate) fn advance(idx: &mut [usize], base: usize) -> bool {
    for slot in idx.iter_mut().rev() {
        *slot += 1;
        if *slot < base {
            return true;
        }
        *slot = 0;
    }
    false
}

/// Strictly increasing index lists of length at most `max_len` over
/// `0..n`, shortest first, each length in lexicographic order.
pub fn index_subsets(n: usize, max_len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    let mut frontier: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for set in &frontier {
            let start = set.last().map_or(0, |&l| l + 1);
            for i in start..n {
                let mut grown = set.clone();
                grown.push(i);
                next.push(grown);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// Number of formulas of depth at most `depth`, or `None` on overflow.
pub fn count_formulas(sig: &Signature, vars: u32, depth: usize) -> Option<u128> {
    layer_counts(sig, vars, depth).map(|c| c[depth])
}

fn layer_counts(sig: &Signature, vars: u32, depth: usize) -> Option<Vec<u128>> {
    let mut counts = vec![vars as u128];
    for d in 1..=depth {
        let prev = counts[d - 1];
        let mut total = vars as u128;
        for c in sig.connectives() {
            let block = prev.checked_pow(c.arity as u32)?;
            total = total.checked_add(block)?;
        }
        counts.push(total);
    }
    Some(counts)
}

/// Uniform sampler over the same set that [`enumerate_formulas`] lists.
#[derive(Debug, Clone)]
pub struct FormulaSampler {
    sig: Signature,
    vars: u32,
    counts: Vec<u128>,
}

impl FormulaSampler {
    pub fn new(sig: &Signature, vars: u32, depth: usize) -> Result<Self> {
        if vars == 0 && !sig.connectives().iter().any(|c| c.arity == 0) {
            return Err(Error::Precondition(
                "need at least one variable or constant".into(),
            ));
        }
        let counts = layer_counts(sig, vars, depth)
            .ok_or_else(|| Error::BoundExhausted(format!("formula count overflows at depth {depth}")))?;
        Ok(FormulaSampler {
            sig: sig.clone(),
            vars,
            counts,
        })
    }

    pub fn depth(&self) -> usize {
        self.counts.len() - 1
    }

    pub fn population(&self) -> u128 {
        self.counts[self.depth()]
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Formula {
        self.sample_at(rng, self.depth())
    }

    fn sample_at<R: Rng + ?Sized>(&self, rng: &mut R, depth: usize) -> Formula {
        let mut r = rng.gen_range(0..self.counts[depth]);
        if r < self.vars as u128 {
            return Formula::var(r as u32);
        }
        r -= self.vars as u128;
        let prev = if depth == 0 { 0 } else { self.counts[depth - 1] };
        for c in self.sig.connectives() {
            let block = prev.pow(c.arity as u32);
            if r < block {
                let args = (0..c.arity)
                    .map(|_| self.sample_at(rng, depth - 1))
                    .collect();
                return Formula::app(&c.name, args);
            }
            r -= block;
        }
        unreachable!("sample index within population")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::collections::HashSet;

    #[test]
    fn counts_match_enumeration() {
        let sig = Signature::propositional();
        for depth in 0..=2 {
            let list = enumerate_formulas(&sig, 2, depth);
            let set: HashSet<_> = list.iter().cloned().collect();
            assert_eq!(set.len(), list.len(), "no duplicates");
            assert_eq!(count_formulas(&sig, 2, depth), Some(list.len() as u128));
            assert!(list.iter().all(|f| f.depth() <= depth));
        }
        assert_eq!(count_formulas(&sig, 2, 2), Some(786));
        assert_eq!(count_formulas(&sig, 2, 3), Some(1_854_176));
    }

    #[test]
    fn subsets() {
        let s = index_subsets(3, 2);
        assert_eq!(s.len(), 1 + 3 + 3);
        assert_eq!(s[4], vec![0, 1]);
        assert_eq!(index_subsets(0, 2), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn prefix_property() {
        let sig = Signature::implicational_negation();
        let d1 = enumerate_formulas(&sig, 2, 1);
        let d2 = enumerate_formulas(&sig, 2, 2);
        assert_eq!(&d2[..d1.len()], &d1[..]);
    }

    #[test]
    fn sampler_stays_in_population() {
        let sig = Signature::propositional();
        let sampler = FormulaSampler::new(&sig, 2, 2).unwrap();
        let universe: HashSet<_> = enumerate_formulas(&sig, 2, 2).into_iter().collect();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..500 {
            assert!(universe.contains(&sampler.sample(&mut rng)));
        }
    }
}
