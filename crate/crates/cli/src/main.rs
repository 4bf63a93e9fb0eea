//! `aal`: command-line front end for the workbench.
//!
//! Exit codes: 0 when every check passes, 1 when a check fails, 2 for usage,
//! parse and input errors.

use std::process::ExitCode;

use aal_core::algebra::{is_reduced, leibniz, leibniz_brute_force, quotient, FilterBounds};
use aal_core::algebraization::{check_bp_conditions, is_lindenbaum, AlgebraizingPair, BpReport, LindenbaumOutcome};
use aal_core::glivenko::{
    dense_filter, glivenko_equivalence, glivenko_sweep, quotient_isomorphism, regular_elements, section_check,
    unit_map, ContextValidation, GlivenkoContext, SweepConfig,
};
use aal_core::institutions::{institution_report, Corpus, InstitutionKind, ReportBounds};
use aal_core::io::{load_algebra, load_context, load_logic, load_pair, parse_elements};
use aal_core::semantics::consequence;
use aal_core::syntax::{parse_formula, parse_formula_list};
use aal_core::{Error, Filter, Formula, LogicSpec, Signature};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

const INSTITUTION_SAMPLES: usize = 10_000;

#[derive(Parser)]
#[command(name = "aal", version, about = "Finite algebraic-logic workbench")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide `Γ ⊢ φ` in a logic.
    Consequence {
        /// `cpc`, `ipc`, or a logic file.
        #[arg(long, default_value = "cpc")]
        logic: String,
        /// `;`-separated premises.
        #[arg(long, default_value = "")]
        gamma: String,
        #[arg(long)]
        phi: String,
        #[arg(long)]
        json: bool,
    },
    /// Check `ρ[Γ′] ⊢ ρ(φ′) ⇔ Γ′ ⊢′ φ′` for one instance, or sweep all
    /// instances within the bounds when `--phi` is absent.
    Glivenko {
        #[arg(long, default_value = "classical_context.json")]
        context: String,
        #[arg(long)]
        gamma: Option<String>,
        #[arg(long)]
        phi: Option<String>,
        #[command(flatten)]
        bounds: SweepBounds,
        #[arg(long)]
        json: bool,
    },
    /// Run one of the bounded checkers.
    Check {
        #[command(subcommand)]
        kind: Check,
    },
}

#[derive(Args)]
struct SweepBounds {
    #[arg(long, default_value_t = 2)]
    vars: u32,
    #[arg(long, default_value_t = 3)]
    depth: usize,
    /// Largest premise set; 0 sweeps theorems only.
    #[arg(long, default_value_t = 0)]
    gamma_size: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum Check {
    /// Algebraizability conditions (a)–(e).
    Bp {
        #[arg(long)]
        logic: String,
        /// Pair file; defaults to `Δ = {iff(x0,x1)}`, `τ = {imp(x0,x0) ≡ x0}`.
        #[arg(long)]
        pair: Option<String>,
        #[arg(long, default_value_t = 2)]
        vars: u32,
        #[arg(long, default_value_t = 2)]
        depth: usize,
        #[arg(long)]
        json: bool,
    },
    /// `φ ⊣⊢ ψ` against `⊢ φΔψ` on all pairs within the bounds.
    Lindenbaum {
        #[arg(long)]
        logic: String,
        #[arg(long)]
        pair: Option<String>,
        #[arg(long, default_value_t = 2)]
        vars: u32,
        #[arg(long, default_value_t = 2)]
        depth: usize,
        #[arg(long)]
        json: bool,
    },
    /// Satisfaction conditions of the three institutions on a corpus.
    Institution {
        /// Corpus file; the bundled classical corpus by default.
        #[arg(default_value = "classical_corpus.json")]
        corpus: String,
        #[arg(long, default_value_t = 2)]
        vars: u32,
        #[arg(long, default_value_t = 2)]
        depth: usize,
        #[arg(long, default_value_t = 2)]
        gamma_size: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Regular elements, unit, dense filter and `H_¬¬ ≅ H/F_H`.
    Adjoint {
        #[arg(long)]
        algebra: String,
        /// Also check the section of this context.
        #[arg(long)]
        context: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// The Leibniz congruence of a matrix.
    Leibniz {
        #[arg(long)]
        algebra: String,
        /// Comma-separated element indices.
        #[arg(long, default_value = "")]
        filter: String,
        #[arg(long)]
        json: bool,
    },
}

/// A finished command: what to print and whether every check passed.
struct Report {
    text: String,
    json: Value,
    passed: bool,
}

fn emit(r: Report, as_json: bool) -> ExitCode {
    if as_json {
        println!("{}", serde_json::to_string_pretty(&r.json).expect("serializable"));
    } else {
        println!("{}", r.text);
    }
    ExitCode::from(if r.passed { 0 } else { 1 })
}

fn check_bounds(vars: u32, depth: usize) -> Result<(), Error> {
    if vars == 0 || depth == 0 {
        return Err(Error::Precondition("--vars and --depth must be at least 1".into()));
    }
    Ok(())
}

fn strings(fs: &[Formula]) -> Vec<String> {
    fs.iter().map(|f| f.to_string()).collect()
}

fn pair_for(path: &Option<String>, l: &LogicSpec) -> Result<AlgebraizingPair, Error> {
    match path {
        Some(p) => load_pair(p, l.signature()),
        None => Ok(AlgebraizingPair::iff()),
    }
}

fn cmd_consequence(logic: &str, gamma: &str, phi: &str) -> Result<Report, Error> {
    let l = load_logic(logic)?;
    let gamma = parse_formula_list(l.signature(), gamma)?;
    let phi = parse_formula(l.signature(), phi)?;
    let verdict = consequence(&l, &gamma, &phi)?;
    let refutation = if verdict { None } else { l.refute(&gamma, &phi)? };
    let mut text = verdict.to_string();
    if let Some(r) = &refutation {
        text.push_str(&format!("\nrefuted by {r}"));
    }
    Ok(Report {
        text,
        json: json!({
            "logic": l.to_string(),
            "gamma": strings(&gamma),
            "phi": phi.to_string(),
            "verdict": verdict,
            "refutation": refutation.map(|r| r.to_string()),
        }),
        passed: true,
    })
}

/// Connectives shared by both logics of the context, without `iff`, which
/// both built-in engines read as a derived connective.
fn sweep_signature(ctx: &GlivenkoContext) -> Result<Signature, Error> {
    let target = ctx.target().signature();
    let shared: Vec<_> = ctx
        .source()
        .signature()
        .connectives()
        .iter()
        .filter(|c| c.name != "iff" && target.arity(&c.name) == Some(c.arity))
        .cloned()
        .collect();
    Signature::new(shared)
}

/// Bounds for certifying a context before it is used.
const VALIDATION_BOUNDS: FilterBounds = FilterBounds {
    vars: 2,
    depth: 1,
    gamma_size: 1,
    max_carrier: 0,
};

fn validation_json(v: &ContextValidation) -> Value {
    json!({
        "bounds": {"vars": v.bounds.vars, "depth": v.bounds.depth, "gamma_size": v.bounds.gamma_size},
        "section_equation": v.section_equation,
        "preservation_counterexample": v.preservation.as_ref().map(|(g, p)| json!({"gamma": strings(g), "phi": p.to_string()})),
        "no_dense_image": v.undense,
        "passed": v.passed(),
    })
}

fn cmd_glivenko(
    context: &str,
    gamma: &Option<String>,
    phi: &Option<String>,
    b: &SweepBounds,
) -> Result<Report, Error> {
    let ctx = load_context(context)?;
    let sig = ctx.target().signature();
    let validation = ctx.validate(&VALIDATION_BOUNDS)?;
    let header = format!("context: {context}\ncontext validation:\n{validation}\n");
    let mut report = glivenko_body(&ctx, context, sig, gamma, phi, b)?;
    report.text = header + &report.text;
    report.json["validation"] = validation_json(&validation);
    report.passed &= validation.passed();
    Ok(report)
}

fn glivenko_body(
    ctx: &GlivenkoContext,
    context: &str,
    sig: &Signature,
    gamma: &Option<String>,
    phi: &Option<String>,
    b: &SweepBounds,
) -> Result<Report, Error> {
    match phi {
        Some(phi) => {
            let gamma = parse_formula_list(sig, gamma.as_deref().unwrap_or(""))?;
            let phi = parse_formula(sig, phi)?;
            let (left, right) = glivenko_equivalence(ctx, &gamma, &phi)?;
            let shown = strings(&gamma).join("; ");
            Ok(Report {
                text: format!(
                    "instance: {{{shown}}} ⊢′ {phi}\nρ[Γ′] ⊢ ρ(φ′): {left}\nΓ′ ⊢′ φ′: {right}\nresult: {}",
                    if left == right { "agree" } else { "DISAGREE" }
                ),
                json: json!({
                    "context": context,
                    "gamma": strings(&gamma),
                    "phi": phi.to_string(),
                    "left": left,
                    "right": right,
                    "agree": left == right,
                }),
                passed: left == right,
            })
        }
        None => {
            check_bounds(b.vars, b.depth)?;
            let cfg = SweepConfig::new(sweep_signature(ctx)?, b.vars, b.depth, b.gamma_size, b.seed);
            let r = glivenko_sweep(ctx, &cfg)?;
            let disagreements: Vec<Value> = r
                .disagreements
                .iter()
                .map(|d| json!({"gamma": strings(&d.gamma), "phi": d.phi.to_string(), "left": d.left, "right": d.right}))
                .collect();
            Ok(Report {
                text: r.to_string(),
                json: json!({
                    "context": context,
                    "bounds": {"signature": cfg.signature.to_string(), "vars": b.vars, "depth": b.depth, "gamma_size": b.gamma_size},
                    "mode": if r.exhaustive { "exhaustive" } else { "sampled" },
                    "samples": if r.exhaustive { Value::Null } else { json!(cfg.samples) },
                    "seed": b.seed,
                    "instances": r.instances,
                    "both_true": r.both_true,
                    "agreements": r.agreements(),
                    "disagreements": disagreements,
                    "passed": r.passed(),
                }),
                passed: r.passed(),
            })
        }
    }
}

fn bp_json(r: &BpReport) -> Value {
    let conditions: Vec<Value> = r
        .conditions
        .iter()
        .map(|c| {
            json!({
                "label": c.label.to_string(),
                "name": c.name,
                "passed": c.passed(),
                "schematic": c.schematic,
                "instances": c.instances,
                "layer_depths": c.depths,
                "witness": c.witness.as_ref().map(|w| json!({
                    "instance": strings(&w.instance),
                    "premises": strings(&w.premises),
                    "conclusion": w.conclusion.to_string(),
                    "refutation": w.refutation,
                })),
            })
        })
        .collect();
    json!({
        "logic": r.logic,
        "pair": r.pair,
        "bounds": {"vars": r.options.vars, "depth": r.options.depth, "budget": r.options.budget},
        "conditions": conditions,
        "passed": r.all_pass(),
    })
}

fn cmd_bp(logic: &str, pair: &Option<String>, vars: u32, depth: usize) -> Result<Report, Error> {
    check_bounds(vars, depth)?;
    let l = load_logic(logic)?;
    let pair = pair_for(pair, &l)?;
    let r = check_bp_conditions(&l, &pair, vars, depth)?;
    Ok(Report {
        text: r.to_string(),
        json: bp_json(&r),
        passed: r.all_pass(),
    })
}

fn cmd_lindenbaum(logic: &str, pair: &Option<String>, vars: u32, depth: usize) -> Result<Report, Error> {
    check_bounds(vars, depth)?;
    let l = load_logic(logic)?;
    let pair = pair_for(pair, &l)?;
    let r = is_lindenbaum(&l, &pair, vars, depth)?;
    let outcome = match &r.outcome {
        LindenbaumOutcome::Pass => json!({"result": "pass"}),
        LindenbaumOutcome::Fail {
            phi,
            psi,
            interderivable,
            delta_theorem,
        } => json!({
            "result": "fail",
            "phi": phi.to_string(),
            "psi": psi.to_string(),
            "interderivable": interderivable,
            "delta_theorem": delta_theorem,
        }),
        LindenbaumOutcome::NotApplicable(why) => json!({"result": "not applicable", "reason": why}),
    };
    Ok(Report {
        text: r.to_string(),
        json: json!({
            "logic": r.logic,
            "pair": pair.to_string(),
            "bounds": {"vars": vars, "depth": depth},
            "pairs": r.pairs,
            "prover_pairs": r.prover_pairs,
            "outcome": outcome,
            "passed": r.passed(),
        }),
        passed: r.passed(),
    })
}

fn cmd_institution(corpus: &str, bounds: ReportBounds, seed: u64) -> Result<Report, Error> {
    check_bounds(bounds.vars, bounds.depth)?;
    let c = Corpus::load(corpus)?;
    let mut texts = vec![format!("corpus: {corpus}")];
    let mut reports = Vec::new();
    let mut passed = true;
    for kind in InstitutionKind::ALL {
        let r = institution_report(kind, &c, &bounds, INSTITUTION_SAMPLES, seed)?;
        passed &= r.passed();
        texts.push(r.to_string());
        reports.push(r.to_json());
    }
    Ok(Report {
        text: texts.join("\n\n"),
        json: json!({"corpus": corpus, "reports": reports, "passed": passed}),
        passed,
    })
}

fn cmd_adjoint(algebra: &str, context: &Option<String>) -> Result<Report, Error> {
    let h = load_algebra(algebra)?;
    let analysis = (|| -> Result<_, Error> {
        let (reg, embedding) = regular_elements(&h)?;
        let unit = unit_map(&h)?;
        let dense = dense_filter(&h)?;
        let iso = quotient_isomorphism(&h)?;
        Ok((reg.size(), embedding, unit, dense, iso))
    })();
    let (size, embedding, unit, dense, iso) = match analysis {
        Ok(parts) => parts,
        Err(e @ (Error::NotHeyting(_) | Error::NotHomomorphism(_) | Error::IncompatiblePartition(_))) => {
            return Ok(Report {
                text: format!("algebra: {algebra}\nresult: FAIL ({e})"),
                json: json!({"algebra": algebra, "passed": false, "error": e.to_string()}),
                passed: false,
            })
        }
        Err(e) => return Err(e),
    };
    let section = match context {
        Some(c) => Some(section_check(&load_context(c)?, &h)?),
        None => None,
    };
    let passed = section.unwrap_or(true);
    let mut text = format!(
        "algebra: {algebra} ({} elements)\nregular elements: {embedding:?} ({size} elements)\nunit x ↦ ¬¬x: {unit:?}\nF_H: {dense}\nH_¬¬ ≅ H/F_H: {iso:?}",
        h.size()
    );
    if let Some(s) = section {
        text.push_str(&format!("\nsection: {}", if s { "natural, right inverse of the unit" } else { "FAILS" }));
    }
    text.push_str(&format!("\nresult: {}", if passed { "pass" } else { "FAIL" }));
    Ok(Report {
        text,
        json: json!({
            "algebra": algebra,
            "size": h.size(),
            "regular_elements": embedding,
            "unit": unit,
            "dense_filter": dense.elements(),
            "isomorphism": iso,
            "section": section,
            "passed": passed,
        }),
        passed,
    })
}

fn cmd_leibniz(algebra: &str, filter: &str) -> Result<Report, Error> {
    let alg = load_algebra(algebra)?;
    let f = Filter::new(alg.size(), parse_elements(filter)?)?;
    let omega = leibniz(&alg, &f)?;
    let reduced = is_reduced(&alg, &f)?;
    let (q, _) = quotient(&alg, &omega)?;
    let agrees = if alg.size() <= 6 {
        Some(leibniz_brute_force(&alg, &f)? == omega)
    } else {
        None
    };
    let passed = agrees.unwrap_or(true);
    let blocks = omega.blocks();
    let mut text = format!(
        "algebra: {algebra}, filter {f}\nΩ(F) blocks: {blocks:?}{}\nquotient size: {}",
        if omega.is_identity() { " (identity)" } else { "" },
        q.size()
    );
    text.push_str(&format!("\nreduced: {reduced}"));
    if let Some(a) = agrees {
        text.push_str(&format!("\nbrute-force maximum agrees: {a}"));
    }
    Ok(Report {
        text,
        json: json!({
            "algebra": algebra,
            "filter": f.elements(),
            "blocks": blocks,
            "identity": omega.is_identity(),
            "reduced": reduced,
            "quotient_size": q.size(),
            "brute_force_agrees": agrees,
            "passed": passed,
        }),
        passed,
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (result, as_json) = match &cli.command {
        Command::Consequence { logic, gamma, phi, json } => (cmd_consequence(logic, gamma, phi), *json),
        Command::Glivenko {
            context,
            gamma,
            phi,
            bounds,
            json,
        } => (cmd_glivenko(context, gamma, phi, bounds), *json),
        Command::Check { kind } => match kind {
            Check::Bp {
                logic,
                pair,
                vars,
                depth,
                json,
            } => (cmd_bp(logic, pair, *vars, *depth), *json),
            Check::Lindenbaum {
                logic,
                pair,
                vars,
                depth,
                json,
            } => (cmd_lindenbaum(logic, pair, *vars, *depth), *json),
            Check::Institution {
                corpus,
                vars,
                depth,
                gamma_size,
                seed,
                json,
            } => {
                let bounds = ReportBounds {
                    vars: *vars,
                    depth: *depth,
                    gamma_size: *gamma_size,
                };
                (cmd_institution(corpus, bounds, *seed), *json)
            }
            Check::Adjoint { algebra, context, json } => (cmd_adjoint(algebra, context), *json),
            Check::Leibniz { algebra, filter, json } => (cmd_leibniz(algebra, filter), *json),
        },
    };
    match result {
        Ok(r) => emit(r, as_json),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
