use crate::algebra::{filter_closure, is_homomorphism, quotient, Congruence, Filter, FiniteAlgebra};
use crate::algebraization::{qv_violation, QvClass};
use crate::error::{Error, Result};
use crate::semantics::LogicSpec;

fn require_heyting(h: &FiniteAlgebra) -> Result<()> {
    match qv_violation(QvClass::Heyting, h) {
        Ok(None) => Ok(()),
        Ok(Some(why)) => Err(Error::NotHeyting(why)),
        Err(e) => Err(Error::NotHeyting(e.to_string())),
    }
}

fn op2(h: &FiniteAlgebra, name: &str, a: usize, b: usize) -> usize {
    h.table(name).expect("checked Heyting signature")[a * h.size() + b]
}

fn dneg(h: &FiniteAlgebra, a: usize) -> usize {
    let neg = h.table("neg").expect("checked Heyting signature");
    neg[neg[a]]
}

/// `H_¬¬ = {x : ¬¬x = x}` with meet, implication and negation inherited and
/// join `¬¬(a ∨ b)`, together with the inclusion into `H`.
pub fn regular_elements(h: &FiniteAlgebra) -> Result<(FiniteAlgebra, Vec<usize>)> {
    require_heyting(h)?;
    let embedding: Vec<usize> = (0..h.size()).filter(|&a| dneg(h, a) == a).collect();
    let mut position = vec![usize::MAX; h.size()];
    for (i, &a) in embedding.iter().enumerate() {
        position[a] = i;
    }
    if let Some(c) = h
        .signature()
        .connectives()
        .iter()
        .find(|c| !matches!(c.name.as_str(), "neg" | "imp" | "and" | "or" | "iff"))
    {
        return Err(Error::Unsupported(format!("regular elements for connective `{}`", c.name)));
    }
    let sig = h.signature().clone();
    let names: Vec<String> = sig.connectives().iter().map(|c| c.name.clone()).collect();
    let alg = FiniteAlgebra::from_fn(sig, embedding.len(), |ci, args| {
        let lifted: Vec<usize> = args.iter().map(|&i| embedding[i]).collect();
        let value = match names[ci].as_str() {
            "or" => dneg(h, op2(h, "or", lifted[0], lifted[1])),
            _ => h.apply(ci, &lifted),
        };
        position[value]
    })?;
    Ok((alg, embedding))
}

/// `a ↦ ¬¬a` as a map onto [`regular_elements`], checked to be a
/// surjective homomorphism.
pub fn unit_map(h: &FiniteAlgebra) -> Result<Vec<usize>> {
    let (reg, embedding) = regular_elements(h)?;
    let map: Vec<usize> = (0..h.size())
        .map(|a| embedding.iter().position(|&r| r == dneg(h, a)).expect("¬¬a is regular"))
        .collect();
    if !is_homomorphism(h, &reg, &map) {
        return Err(Error::NotHomomorphism("x ↦ ¬¬x onto the regular elements".into()));
    }
    if (0..reg.size()).any(|r| !map.contains(&r)) {
        return Err(Error::NotHomomorphism("x ↦ ¬¬x misses a regular element".into()));
    }
    Ok(map)
}

/// `H/F_H` with `a ~ b` iff `a ↔ b ∈ F_H`, and the quotient map.
pub fn left_adjoint_quotient(h: &FiniteAlgebra) -> Result<(FiniteAlgebra, Vec<usize>)> {
    let f_h = dense_filter(h)?;
    let iff = |a: usize, b: usize| op2(h, "and", op2(h, "imp", a, b), op2(h, "imp", b, a));
    let labels: Vec<usize> = (0..h.size())
        .map(|a| (0..h.size()).find(|&b| f_h.contains(iff(a, b))).expect("a ↔ a is ⊤"))
        .collect();
    let theta = Congruence::from_labels(&labels);
    for a in 0..h.size() {
        for b in 0..h.size() {
            if theta.related(a, b) != f_h.contains(iff(a, b)) {
                return Err(Error::IncompatiblePartition(format!(
                    "the relation induced by {f_h} is not transitive at ({a},{b})"
                )));
            }
        }
    }
    quotient(h, &theta)
}

/// `F_H`: the intuitionistic filter generated by the values of `x ↔ ¬¬x`.
pub fn dense_filter(h: &FiniteAlgebra) -> Result<Filter> {
    require_heyting(h)?;
    let ipc = LogicSpec::ipc().restricted(h.signature().clone())?;
    let iff = |a: usize, b: usize| op2(h, "and", op2(h, "imp", a, b), op2(h, "imp", b, a));
    let seed: Vec<usize> = (0..h.size()).map(|a| iff(a, dneg(h, a))).collect();
    filter_closure(&ipc, h, &seed)
}

/// The isomorphism `H_¬¬ → H/F_H` sending a regular element to its class,
/// checked to be a bijective homomorphism.
pub fn quotient_isomorphism(h: &FiniteAlgebra) -> Result<Vec<usize>> {
    let (reg, embedding) = regular_elements(h)?;
    let (q, map) = left_adjoint_quotient(h)?;
    let iso: Vec<usize> = embedding.iter().map(|&a| map[a]).collect();
    let mut seen = vec![false; q.size()];
    for &i in &iso {
        seen[i] = true;
    }
    if reg.size() != q.size() || seen.contains(&false) {
        return Err(Error::NotHomomorphism(format!(
            "{} regular elements against {} classes",
            reg.size(),
            q.size()
        )));
    }
    if !is_homomorphism(&reg, &q, &iso) {
        return Err(Error::NotHomomorphism("regular element ↦ class".into()));
    }
    Ok(iso)
}
