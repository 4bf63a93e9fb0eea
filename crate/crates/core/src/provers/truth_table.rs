use crate::error::{Error, Result};
use crate::syntax::Formula;

/// Largest number of distinct variables a truth table is built for.
pub const MAX_TABLE_VARS: usize = 26;

/// Columns of a truth table as bit vectors, one bit per row.
struct Table {
    vars: Vec<u32>,
    words: usize,
    /// Mask for the last word when the row count is not a multiple of 64.
    tail: u64,
}

impl Table {
    fn new(formulas: &[&Formula]) -> Result<Table> {
        let mut set = std::collections::BTreeSet::new();
        for f in formulas {
            f.collect_variables(&mut set);
        }
        let vars: Vec<u32> = set.into_iter().collect();
        if vars.len() > MAX_TABLE_VARS {
            return Err(Error::BoundExhausted(format!(
                "{} variables exceed the truth-table limit of {MAX_TABLE_VARS}",
                vars.len()
            )));
        }
        let rows = 1usize << vars.len();
        let words = rows.div_ceil(64);
        let tail = if rows % 64 == 0 { u64::MAX } else { (1u64 << rows) - 1 };
        Ok(Table { vars, words, tail })
    }

    fn column(&self, var: u32) -> Vec<u64> {
        let j = self.vars.binary_search(&var).expect("variable collected");
        (0..self.words)
            .map(|w| {
                let mut bits = 0u64;
                for b in 0..64 {
                    let row = w * 64 + b;
                    if row >> j & 1 == 1 {
                        bits |= 1 << b;
                    }
                }
                bits
            })
            .collect()
    }

    fn eval(&self, phi: &Formula) -> Result<Vec<u64>> {
        let mut out = match phi {
            Formula::Var(i) => self.column(*i),
            Formula::App(name, args) => {
                let cols = args
                    .iter()
                    .map(|a| self.eval(a))
                    .collect::<Result<Vec<_>>>()?;
                let zip = |f: fn(u64, u64) -> u64| -> Vec<u64> {
                    cols[0].iter().zip(&cols[1]).map(|(&a, &b)| f(a, b)).collect()
                };
                match (&**name, cols.len()) {
                    ("neg", 1) => cols[0].iter().map(|a| !a).collect(),
                    ("imp", 2) => zip(|a, b| !a | b),
                    ("and", 2) => zip(|a, b| a & b),
                    ("or", 2) => zip(|a, b| a | b),
                    ("iff", 2) => zip(|a, b| !(a ^ b)),
                    _ => {
                        return Err(Error::Unsupported(format!(
                            "classical truth tables do not interpret `{name}/{}`",
                            args.len()
                        )))
                    }
                }
            }
        };
        if let Some(last) = out.last_mut() {
            *last &= self.tail;
        }
        Ok(out)
    }
}

/// Classical consequence by truth tables: every row making all of `gamma`
/// true makes `phi` true.
pub fn cpc_decide(gamma: &[Formula], phi: &Formula) -> Result<bool> {
    let all: Vec<&Formula> = gamma.iter().chain([phi]).collect();
    let table = Table::new(&all)?;
    let mut rows = vec![u64::MAX; table.words];
    if let Some(w) = rows.last_mut() {
        *w &= table.tail;
    }
    for g in gamma {
        for (r, c) in rows.iter_mut().zip(table.eval(g)?) {
            *r &= c;
        }
    }
    let goal = table.eval(phi)?;
    Ok(rows.iter().zip(&goal).all(|(&r, &g)| r & !g == 0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: u32) -> Formula {
        Formula::var(i)
    }

    #[test]
    fn small_cases() {
        assert!(cpc_decide(&[], &Formula::or(x(0), Formula::neg(x(0)))).unwrap());
        assert!(!cpc_decide(&[], &x(0)).unwrap());
        assert!(cpc_decide(&[], &Formula::peirce()).unwrap());
        assert!(cpc_decide(&[x(0), Formula::imp(x(0), x(1))], &x(1)).unwrap());
    }

    #[test]
    fn many_variables_cross_word_boundaries() {
        // x0 ∧ ... ∧ x7 → x7 needs 256 rows
        let conj = (1..8).fold(x(0), |acc, i| Formula::and(acc, x(i)));
        assert!(cpc_decide(&[], &Formula::imp(conj.clone(), x(7))).unwrap());
        assert!(!cpc_decide(&[], &Formula::imp(x(7), conj)).unwrap());
    }
}
