use std::collections::{HashMap, HashSet, VecDeque};

use crate::error::{Error, Result};

use super::congruence::{all_congruences, quotient, Congruence};
use super::filter::Filter;
use super::structure::FiniteAlgebra;

fn check_filter(alg: &FiniteAlgebra, filter: &Filter) -> Result<()> {
    if filter.carrier() != alg.size() {
        return Err(Error::OutOfRange {
            element: filter.carrier(),
            size: alg.size(),
        });
    }
    Ok(())
}

/// The Leibniz congruence `Ω^A(F)`: `a` and `b` are related iff every unary
/// polynomial `p` has `p(a) ∈ F ⇔ p(b) ∈ F`.
///
/// Unary polynomials are the closure of the identity under basic
/// translations `x ↦ c(e0, .., x, .., ek)` with constant `e_i`. The
/// relation is computed as a fixpoint: start from the split `F / A∖F`
/// and refine by the block of every one-step translate until stable.
pub fn leibniz(alg: &FiniteAlgebra, filter: &Filter) -> Result<Congruence> {
    check_filter(alg, filter)?;
    let n = alg.size();
    let translations = basic_translations(alg);
    let mut labels: Vec<usize> = (0..n).map(|a| filter.contains(a) as usize).collect();
    let mut blocks = count_distinct(&labels);
    loop {
        let mut keys: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut next = vec![0; n];
        for a in 0..n {
            let mut key = Vec::with_capacity(translations.len() + 1);
            key.push(labels[a]);
            key.extend(translations.iter().map(|t| labels[t[a]]));
            let fresh = keys.len();
            next[a] = *keys.entry(key).or_insert(fresh);
        }
        let count = count_distinct(&next);
        labels = next;
        if count == blocks {
            return Ok(Congruence::from_labels(&labels));
        }
        blocks = count;
    }
}

/// Every map `x ↦ c(e0, .., x, .., ek)` for a connective `c`, a position and
/// constants `e_i` in the remaining positions.
fn basic_translations(alg: &FiniteAlgebra) -> Vec<Vec<usize>> {
    let n = alg.size();
    let mut out = Vec::new();
    for ci in 0..alg.signature().len() {
        let arity = alg.signature().connectives()[ci].arity;
        for pos in 0..arity {
            let mut consts = vec![0usize; arity - 1];
            loop {
                let t: Vec<usize> = (0..n)
                    .map(|x| {
                        let mut args = consts.clone();
                        args.insert(pos, x);
                        alg.apply(ci, &args)
                    })
                    .collect();
                out.push(t);
                if !crate::syntax::advance(&mut consts, n) {
                    break;
                }
            }
        }
    }
    out
}

fn count_distinct(labels: &[usize]) -> usize {
    labels.iter().collect::<HashSet<_>>().len()
}

/// Every unary polynomial function of `alg`, generated breadth-first from
/// the identity by basic translations. Stops with an error once more than
/// `limit` distinct functions have been produced.
pub fn unary_polynomials(alg: &FiniteAlgebra, limit: usize) -> Result<Vec<Vec<usize>>> {
    let n = alg.size();
    let identity: Vec<usize> = (0..n).collect();
    let mut seen: HashSet<Vec<usize>> = HashSet::from([identity.clone()]);
    let mut order = vec![identity.clone()];
    let mut queue = VecDeque::from([identity]);
    let translations = basic_translations(alg);
    // nullary operations give constant polynomials
    for ci in 0..alg.signature().len() {
        if alg.signature().connectives()[ci].arity == 0 {
            let c = vec![alg.apply(ci, &[]); n];
            if seen.insert(c.clone()) {
                order.push(c.clone());
                queue.push_back(c);
            }
        }
    }
    while let Some(p) = queue.pop_front() {
        for t in &translations {
            let q: Vec<usize> = p.iter().map(|&v| t[v]).collect();
            if seen.insert(q.clone()) {
                if seen.len() > limit {
                    return Err(Error::BoundExhausted(format!(
                        "more than {limit} unary polynomials"
                    )));
                }
                order.push(q.clone());
                queue.push_back(q);
            }
        }
    }
    Ok(order)
}

/// The Leibniz congruence read off an explicit list of unary polynomials.
pub fn leibniz_by_polynomials(alg: &FiniteAlgebra, filter: &Filter, limit: usize) -> Result<Congruence> {
    check_filter(alg, filter)?;
    let polys = unary_polynomials(alg, limit)?;
    let labels: Vec<Vec<bool>> = (0..alg.size())
        .map(|a| polys.iter().map(|p| filter.contains(p[a])).collect())
        .collect();
    let mut ids: HashMap<&Vec<bool>, usize> = HashMap::new();
    let dense: Vec<usize> = labels
        .iter()
        .map(|l| {
            let fresh = ids.len();
            *ids.entry(l).or_insert(fresh)
        })
        .collect();
    Ok(Congruence::from_labels(&dense))
}

/// The largest congruence compatible with `filter`, found by enumerating
/// the whole congruence lattice.
pub fn leibniz_brute_force(alg: &FiniteAlgebra, filter: &Filter) -> Result<Congruence> {
    check_filter(alg, filter)?;
    let member = filter.mask();
    let compatible: Vec<Congruence> = all_congruences(alg)
        .into_iter()
        .filter(|c| c.is_compatible_with_filter(&member))
        .collect();
    let top = compatible
        .iter()
        .find(|c| compatible.iter().all(|d| d.is_finer_than(c)))
        .cloned()
        .expect("the compatible congruences of a finite algebra have a maximum");
    Ok(top)
}

pub fn is_reduced(alg: &FiniteAlgebra, filter: &Filter) -> Result<bool> {
    Ok(leibniz(alg, filter)?.is_identity())
}

/// The reduced matrix `⟨A/Ω(F), F/Ω(F)⟩`.
pub fn reduce_matrix(alg: &FiniteAlgebra, filter: &Filter) -> Result<(FiniteAlgebra, Filter)> {
    let omega = leibniz(alg, filter)?;
    let (q, map) = quotient(alg, &omega)?;
    let image = Filter::new(q.size(), filter.elements().iter().map(|&a| map[a]))?;
    Ok((q, image))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::build;

    fn f(n: usize, xs: &[usize]) -> Filter {
        Filter::new(n, xs.iter().copied()).unwrap()
    }

    #[test]
    fn boolean_two_is_reduced() {
        let b2 = build::boolean(1);
        assert!(leibniz(&b2, &f(2, &[1])).unwrap().is_identity());
        assert!(is_reduced(&b2, &f(2, &[1])).unwrap());
    }

    #[test]
    fn three_chain_filters() {
        let h3 = build::chain(3);
        assert!(leibniz(&h3, &f(3, &[2])).unwrap().is_identity());
        let omega = leibniz(&h3, &f(3, &[1, 2])).unwrap();
        assert_eq!(omega.blocks(), vec![vec![0], vec![1, 2]]);
        assert!(!is_reduced(&h3, &f(3, &[1, 2])).unwrap());
        let (q, image) = reduce_matrix(&h3, &f(3, &[1, 2])).unwrap();
        assert_eq!(q, build::boolean(1));
        assert_eq!(image.elements(), &[1]);
    }

    #[test]
    fn trivial_algebra() {
        let one = build::boolean(0);
        let (q, image) = reduce_matrix(&one, &f(1, &[0])).unwrap();
        assert_eq!(q.size(), 1);
        assert_eq!(image.elements(), &[0]);
    }

    #[test]
    fn three_routes_agree() {
        for alg in [build::chain(3), build::chain(4), build::boolean(2)] {
            let n = alg.size();
            for mask in 0u32..(1 << n) {
                let filter = Filter::new(n, (0..n).filter(|&i| mask >> i & 1 == 1)).unwrap();
                let fast = leibniz(&alg, &filter).unwrap();
                assert_eq!(fast, leibniz_by_polynomials(&alg, &filter, 100_000).unwrap());
                assert_eq!(fast, leibniz_brute_force(&alg, &filter).unwrap());
            }
        }
    }
}
