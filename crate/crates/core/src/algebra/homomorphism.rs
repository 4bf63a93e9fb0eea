use crate::error::{Error, Result};

use super::structure::FiniteAlgebra;

fn same_signature(a: &FiniteAlgebra, b: &FiniteAlgebra) -> Result<()> {
    if a.signature() != b.signature() {
        return Err(Error::SignatureMismatch(format!(
            "{} versus {}",
            a.signature(),
            b.signature()
        )));
    }
    Ok(())
}

/// Whether the map `h` (indexed by elements of `a`) commutes with every
/// operation.
pub fn is_homomorphism(a: &FiniteAlgebra, b: &FiniteAlgebra, h: &[usize]) -> bool {
    if a.signature() != b.signature() || h.len() != a.size() || h.iter().any(|&v| v >= b.size()) {
        return false;
    }
    (0..a.signature().len()).all(|ci| {
        a.entries(ci).all(|(args, value)| {
            let image: Vec<usize> = args.iter().map(|&x| h[x]).collect();
            h[value] == b.apply(ci, &image)
        })
    })
}

/// Entries to check once element `k` receives its image: those whose
/// arguments and value are all `<= k` and involve `k`.
fn checkpoints(a: &FiniteAlgebra) -> Vec<Vec<(usize, Vec<usize>, usize)>> {
    let mut at = vec![Vec::new(); a.size()];
    for ci in 0..a.signature().len() {
        for (args, value) in a.entries(ci) {
            let top = args.iter().copied().chain([value]).max().unwrap();
            at[top].push((ci, args, value));
        }
    }
    at
}

/// Depth-first search over partial maps assigning elements in increasing
/// order; `visit` returns false to stop.
fn search(
    a: &FiniteAlgebra,
    b: &FiniteAlgebra,
    injective: bool,
    visit: &mut dyn FnMut(&[usize]) -> bool,
) {
    let checks = checkpoints(a);
    let mut h = vec![0usize; a.size()];
    let mut used = vec![false; b.size()];
    fn go(
        k: usize,
        a: &FiniteAlgebra,
        b: &FiniteAlgebra,
        injective: bool,
        checks: &[Vec<(usize, Vec<usize>, usize)>],
        h: &mut Vec<usize>,
        used: &mut Vec<bool>,
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        if k == a.size() {
            return visit(h);
        }
        let mut image = Vec::new();
        for t in 0..b.size() {
            if injective && used[t] {
                continue;
            }
            h[k] = t;
            let ok = checks[k].iter().all(|(ci, args, value)| {
                image.clear();
                image.extend(args.iter().map(|&x| h[x]));
                h[*value] == b.apply(*ci, &image)
            });
            if !ok {
                continue;
            }
            used[t] = true;
            let keep_going = go(k + 1, a, b, injective, checks, h, used, visit);
            used[t] = false;
            if !keep_going {
                return false;
            }
        }
        true
    }
    go(0, a, b, injective, &checks, &mut h, &mut used, visit);
}

/// All homomorphisms `a → b`, in lexicographic order of their tables.
pub fn homomorphisms(a: &FiniteAlgebra, b: &FiniteAlgebra) -> Result<Vec<Vec<usize>>> {
    same_signature(a, b)?;
    let mut out = Vec::new();
    search(a, b, false, &mut |h| {
        out.push(h.to_vec());
        true
    });
    Ok(out)
}

/// The lexicographically first isomorphism `a → b`, if any.
pub fn find_isomorphism(a: &FiniteAlgebra, b: &FiniteAlgebra) -> Result<Option<Vec<usize>>> {
    same_signature(a, b)?;
    if a.size() != b.size() {
        return Ok(None);
    }
    let mut found = None;
    search(a, b, true, &mut |h| {
        found = Some(h.to_vec());
        false
    });
    Ok(found)
}

pub fn are_isomorphic(a: &FiniteAlgebra, b: &FiniteAlgebra) -> bool {
    matches!(find_isomorphism(a, b), Ok(Some(_)))
}
