use std::fmt;

use crate::error::Result;
use crate::semantics::{Decider, LogicSpec};
use crate::syntax::{count_formulas, enumerate_formulas, Formula};

use super::pair::AlgebraizingPair;

/// Bounds for [`check_bp_conditions_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BpOptions {
    pub vars: u32,
    pub depth: usize,
    /// Largest number of formula tuples enumerated for one schema. Schemas
    /// with `k` metavariables use the deepest formula layer `≤ depth` whose
    /// `k`-th power fits.
    pub budget: u64,
}

impl BpOptions {
    pub fn new(vars: u32, depth: usize) -> Self {
        BpOptions {
            vars,
            depth,
            budget: 10_000,
        }
    }
}

/// One failing instance: `premises ⊢ conclusion` does not hold.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BpWitness {
    /// The formulas substituted for the metavariables `x0, x1, ..`.
    pub instance: Vec<Formula>,
    pub premises: Vec<Formula>,
    pub conclusion: Formula,
    /// A refuting valuation in a sound finite matrix, when one is found.
    pub refutation: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BpCondition {
    pub label: char,
    pub name: &'static str,
    /// The generic instance over distinct variables holds. By structurality
    /// this covers every substitution instance.
    pub schematic: bool,
    /// Bounded tuples checked, summed over schemas.
    pub instances: u64,
    /// Depth of the formula layer each schema was enumerated at; `None`
    /// when even the variables alone exceed the budget.
    pub depths: Vec<Option<usize>>,
    pub witness: Option<BpWitness>,
}

impl BpCondition {
    pub fn passed(&self) -> bool {
        self.schematic && self.witness.is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BpReport {
    pub logic: String,
    pub pair: String,
    pub options: BpOptions,
    pub conditions: Vec<BpCondition>,
}

impl BpReport {
    pub fn all_pass(&self) -> bool {
        self.conditions.iter().all(BpCondition::passed)
    }

    pub fn condition(&self, label: char) -> Option<&BpCondition> {
        self.conditions.iter().find(|c| c.label == label)
    }
}

impl fmt::Display for BpReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "logic: {}", self.logic)?;
        writeln!(f, "pair: {}", self.pair)?;
        writeln!(
            f,
            "bounds: vars {}, depth {}, at most {} tuples per schema",
            self.options.vars, self.options.depth, self.options.budget
        )?;
        for c in &self.conditions {
            let depths: Vec<String> = c
                .depths
                .iter()
                .map(|d| d.map_or("-".to_string(), |d| d.to_string()))
                .collect();
            writeln!(
                f,
                "({}) {:<12} {}  schematic {}, {} bounded instances (layer depths {})",
                c.label,
                c.name,
                if c.passed() { "pass" } else { "FAIL" },
                if c.schematic { "holds" } else { "fails" },
                c.instances,
                depths.join(",")
            )?;
            if let Some(w) = &c.witness {
                let inst: Vec<String> = w.instance.iter().map(|i| i.to_string()).collect();
                let prem: Vec<String> = w.premises.iter().map(|p| p.to_string()).collect();
                writeln!(
                    f,
                    "    witness [{}]: {{{}}} ⊬ {}",
                    inst.join(", "),
                    prem.join("; "),
                    w.conclusion
                )?;
                if let Some(r) = &w.refutation {
                    writeln!(f, "    refuted by {r}")?;
                }
            }
        }
        write!(f, "overall: {}", if self.all_pass() { "pass" } else { "FAIL" })
    }
}

/// `premises ⊢ each conclusion`, over metavariables `x0..x_{arity-1}`.
struct Schema {
    arity: usize,
    premises: Vec<Formula>,
    conclusions: Vec<Formula>,
}

fn schemas(l: &LogicSpec, pair: &AlgebraizingPair, label: char) -> Vec<Schema> {
    let x = Formula::var;
    match label {
        'a' => vec![Schema {
            arity: 1,
            premises: vec![],
            conclusions: pair.delta_of(&x(0), &x(0)),
        }],
        'b' => vec![Schema {
            arity: 2,
            premises: pair.delta_of(&x(0), &x(1)),
            conclusions: pair.delta_of(&x(1), &x(0)),
        }],
        'c' => {
            let mut premises = pair.delta_of(&x(0), &x(1));
            premises.extend(pair.delta_of(&x(1), &x(2)));
            vec![Schema {
                arity: 3,
                premises,
                conclusions: pair.delta_of(&x(0), &x(2)),
            }]
        }
        'd' => l
            .signature()
            .connectives()
            .iter()
            .map(|c| {
                let n = c.arity as u32;
                let left: Vec<Formula> = (0..n).map(x).collect();
                let right: Vec<Formula> = (n..2 * n).map(x).collect();
                let premises = left
                    .iter()
                    .zip(&right)
                    .flat_map(|(a, b)| pair.delta_of(a, b))
                    .collect();
                Schema {
                    arity: 2 * c.arity,
                    premises,
                    conclusions: pair.delta_of(&Formula::app(&c.name, left), &Formula::app(&c.name, right)),
                }
            })
            .collect(),
        _ => vec![
            Schema {
                arity: 1,
                premises: vec![x(0)],
                conclusions: pair.delta_tau(&x(0)),
            },
            Schema {
                arity: 1,
                premises: pair.delta_tau(&x(0)),
                conclusions: vec![x(0)],
            },
        ],
    }
}

const CONDITIONS: [(char, &str); 5] = [
    ('a', "reflexivity"),
    ('b', "symmetry"),
    ('c', "transitivity"),
    ('d', "congruence"),
    ('e', "τ-Δ inverse"),
];

struct Checker<'a> {
    logic: &'a LogicSpec,
    decider: Decider<'a>,
}

impl Checker<'_> {
    /// The first failing conclusion of the schema under `args`, if any.
    fn instance(&mut self, schema: &Schema, args: &[Formula]) -> Result<Option<BpWitness>> {
        let premises: Vec<Formula> = schema.premises.iter().map(|p| p.instantiate(args)).collect();
        for c in &schema.conclusions {
            let goal = c.instantiate(args);
            if !self.decider.decide(&premises, &goal)? {
                let refutation = self.logic.refute(&premises, &goal)?.map(|r| r.to_string());
                return Ok(Some(BpWitness {
                    instance: args.to_vec(),
                    premises,
                    conclusion: goal,
                    refutation,
                }));
            }
        }
        Ok(None)
    }
}

/// The deepest layer `≤ depth` whose `arity`-th power is within `budget`.
fn layer_for(l: &LogicSpec, opts: &BpOptions, arity: usize) -> Option<usize> {
    (0..=opts.depth).rev().find(|&d| {
        count_formulas(l.signature(), opts.vars, d)
            .and_then(|n| n.checked_pow(arity as u32))
            .is_some_and(|t| t <= opts.budget as u128)
    })
}

/// Checks reflexivity, symmetry, transitivity, congruence and the τ-Δ
/// inverse condition at the default budget.
pub fn check_bp_conditions(l: &LogicSpec, pair: &AlgebraizingPair, vars: u32, depth: usize) -> Result<BpReport> {
    check_bp_conditions_with(l, pair, &BpOptions::new(vars, depth))
}

pub fn check_bp_conditions_with(l: &LogicSpec, pair: &AlgebraizingPair, opts: &BpOptions) -> Result<BpReport> {
    pair.check(l.signature())?;
    let mut checker = Checker {
        logic: l,
        decider: Decider::new(l),
    };
    let formulas = enumerate_formulas(l.signature(), opts.vars, opts.depth);
    let mut conditions = Vec::new();
    for (label, name) in CONDITIONS {
        let mut cond = BpCondition {
            label,
            name,
            schematic: true,
            instances: 0,
            depths: Vec::new(),
            witness: None,
        };
        for schema in schemas(l, pair, label) {
            let generic: Vec<Formula> = (0..schema.arity as u32).map(Formula::var).collect();
            if let Some(w) = checker.instance(&schema, &generic)? {
                cond.schematic = false;
                cond.witness.get_or_insert(w);
            }
            let layer = layer_for(l, opts, schema.arity);
            cond.depths.push(layer);
            let Some(d) = layer else { continue };
            let n = count_formulas(l.signature(), opts.vars, d).unwrap_or(0) as usize;
            if n == 0 && schema.arity > 0 {
                continue;
            }
            let pool = &formulas[..n];
            let mut idx = vec![0usize; schema.arity];
            loop {
                let args: Vec<Formula> = idx.iter().map(|&i| pool[i].clone()).collect();
                cond.instances += 1;
                if let Some(w) = checker.instance(&schema, &args)? {
                    cond.witness.get_or_insert(w);
                    break;
                }
                if !crate::syntax::advance(&mut idx, n) {
                    break;
                }
            }
        }
        conditions.push(cond);
    }
    Ok(BpReport {
        logic: l.to_string(),
        pair: pair.to_string(),
        options: *opts,
        conditions,
    })
}
