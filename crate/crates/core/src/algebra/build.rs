//! Heyting algebras from finite distributive lattices, over
//! `{neg, imp, and, or, iff}`.

use crate::error::{Error, Result};
use crate::syntax::Signature;

use super::structure::FiniteAlgebra;

/// Builds the Heyting algebra of a finite lattice given by its order
/// relation `leq[a][b]`. Fails unless the relation is a distributive lattice.
pub fn heyting_from_order(leq: &[Vec<bool>]) -> Result<FiniteAlgebra> {
    let n = leq.len();
    if n == 0 || leq.iter().any(|row| row.len() != n) {
        return Err(Error::NotHeyting("order matrix must be square and nonempty".into()));
    }
    for a in 0..n {
        if !leq[a][a] {
            return Err(Error::NotHeyting(format!("{a} ≰ {a}")));
        }
        for b in 0..n {
            if a != b && leq[a][b] && leq[b][a] {
                return Err(Error::NotHeyting(format!("{a} and {b} are mutually below")));
            }
            for c in 0..n {
                if leq[a][b] && leq[b][c] && !leq[a][c] {
                    return Err(Error::NotHeyting(format!("order not transitive at {a},{b},{c}")));
                }
            }
        }
    }
    let extreme = |pick_least: bool, candidates: &mut dyn Iterator<Item = usize>| -> Option<usize> {
        let cands: Vec<usize> = candidates.collect();
        cands.iter().copied().find(|&c| {
            cands
                .iter()
                .all(|&d| if pick_least { leq[c][d] } else { leq[d][c] })
        })
    };
    let mut meet = vec![0; n * n];
    let mut join = vec![0; n * n];
    for a in 0..n {
        for b in 0..n {
            meet[a * n + b] = extreme(false, &mut (0..n).filter(|&c| leq[c][a] && leq[c][b]))
                .ok_or_else(|| Error::NotHeyting(format!("{a} and {b} have no meet")))?;
            join[a * n + b] = extreme(true, &mut (0..n).filter(|&c| leq[a][c] && leq[b][c]))
                .ok_or_else(|| Error::NotHeyting(format!("{a} and {b} have no join")))?;
        }
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let lhs = meet[a * n + join[b * n + c]];
                let rhs = join[meet[a * n + b] * n + meet[a * n + c]];
                if lhs != rhs {
                    return Err(Error::NotHeyting(format!(
                        "distributivity fails at ({a},{b},{c})"
                    )));
                }
            }
        }
    }
    let bottom = extreme(true, &mut (0..n)).expect("a lattice has a bottom");
    let mut imp = vec![0; n * n];
    for a in 0..n {
        for b in 0..n {
            imp[a * n + b] = extreme(false, &mut (0..n).filter(|&c| leq[meet[c * n + a]][b]))
                .expect("finite distributive lattices are Heyting");
        }
    }
    let neg: Vec<usize> = (0..n).map(|a| imp[a * n + bottom]).collect();
    let iff: Vec<usize> = (0..n * n)
        .map(|i| {
            let (a, b) = (i / n, i % n);
            meet[imp[a * n + b] * n + imp[b * n + a]]
        })
        .collect();
    let sig = Signature::propositional_with_iff();
    let tables = sig
        .connectives()
        .iter()
        .map(|c| match c.name.as_str() {
            "neg" => neg.clone(),
            "imp" => imp.clone(),
            "and" => meet.clone(),
            "or" => join.clone(),
            "iff" => iff.clone(),
            other => unreachable!("unexpected connective {other}"),
        })
        .collect();
    FiniteAlgebra::new(sig, n, tables)
}

/// The chain `0 < 1 < ... < n-1`.
pub fn chain(n: usize) -> FiniteAlgebra {
    let leq: Vec<Vec<bool>> = (0..n).map(|a| (0..n).map(|b| a <= b).collect()).collect();
    heyting_from_order(&leq).expect("chains are Heyting")
}

/// The Boolean algebra of subsets of a `k`-element set, elements as bitmasks.
pub fn boolean(k: u32) -> FiniteAlgebra {
    let n = 1usize << k;
    let leq: Vec<Vec<bool>> = (0..n)
        .map(|a| (0..n).map(|b| a & b == a).collect())
        .collect();
    heyting_from_order(&leq).expect("powersets are Heyting")
}

/// The order of a lattice-ordered algebra, read from its `and` table.
pub fn order_of(alg: &FiniteAlgebra) -> Result<Vec<Vec<bool>>> {
    let and = alg
        .signature()
        .index_of("and")
        .ok_or_else(|| Error::SignatureMismatch("no `and` connective".into()))?;
    let n = alg.size();
    Ok((0..n)
        .map(|a| (0..n).map(|b| alg.apply(and, &[a, b]) == a).collect())
        .collect())
}

/// `lower` placed below `upper`, identifying the top of `lower` with the
/// bottom of `upper`.
pub fn ordinal_sum(lower: &FiniteAlgebra, upper: &FiniteAlgebra) -> Result<FiniteAlgebra> {
    let lo = order_of(lower)?;
    let hi = order_of(upper)?;
    let (m, k) = (lo.len(), hi.len());
    if !(0..m).any(|a| (0..m).all(|b| lo[b][a])) {
        return Err(Error::NotHeyting("lower summand has no top".into()));
    }
    let bot_hi = (0..k).find(|&a| (0..k).all(|b| hi[a][b])).ok_or_else(|| {
        Error::NotHeyting("upper summand has no bottom".into())
    })?;
    // elements of `lower` keep their indices; `upper` minus its bottom follows
    let upper_elems: Vec<usize> = (0..k).filter(|&a| a != bot_hi).collect();
    let n = m + upper_elems.len();
    let place = |i: usize| -> (bool, usize) {
        if i < m {
            (false, i)
        } else {
            (true, upper_elems[i - m])
        }
    };
    let leq: Vec<Vec<bool>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| match (place(i), place(j)) {
                    ((false, a), (false, b)) => lo[a][b],
                    ((false, _), (true, _)) => true,
                    ((true, _), (false, _)) => false,
                    ((true, a), (true, b)) => hi[a][b],
                })
                .collect()
        })
        .collect();
    heyting_from_order(&leq)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_tables() {
        let h3 = chain(3);
        assert_eq!(h3.table("neg").unwrap(), &[2, 0, 0]);
        assert_eq!(h3.table("imp").unwrap(), &[2, 2, 2, 0, 2, 2, 0, 1, 2]);
    }

    #[test]
    fn boolean_negation_is_complement() {
        let b4 = boolean(2);
        assert_eq!(b4.table("neg").unwrap(), &[3, 2, 1, 0]);
    }

    #[test]
    fn rejects_non_distributive() {
        // the diamond M3: 0 < a,b,c < 1
        let n = 5;
        let leq: Vec<Vec<bool>> = (0..n)
            .map(|a| (0..n).map(|b| a == b || a == 0 || b == 4).collect())
            .collect();
        assert!(matches!(heyting_from_order(&leq), Err(Error::NotHeyting(_))));
    }

    #[test]
    fn ordinal_sums() {
        let s = ordinal_sum(&chain(2), &chain(3)).unwrap();
        assert_eq!(s, chain(4));
        let b4_top = ordinal_sum(&boolean(2), &chain(2)).unwrap();
        assert_eq!(b4_top.size(), 5);
        assert_eq!(b4_top.table("neg").unwrap(), &[4, 2, 1, 0, 0]);
    }
}
