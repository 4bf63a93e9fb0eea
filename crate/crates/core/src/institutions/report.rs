use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::algebra::{is_reduced, FiniteAlgebra};
use crate::error::{Error, Result};
use crate::glivenko::{
    lind_compatibility_sides, matrix_compatibility_sides, rho_translate, AdjointData, GlivenkoContext,
};
use crate::semantics::{reduct, satisfaction_sides, Decider, Matrix};
use crate::syntax::{generic_application, Formula, FormulaSampler};

use super::corpus::{Corpus, FaultTarget};
use super::sentences::{comorphism_plus_sides, InsALSentence, InsLALSentence};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum InstitutionKind {
    /// Matrices along logic morphisms.
    If,
    /// Reduced matrices along Glivenko contexts.
    InsAL,
    /// Quasi-equations along Glivenko contexts.
    InsLAL,
}

impl InstitutionKind {
    pub const ALL: [InstitutionKind; 3] = [InstitutionKind::If, InstitutionKind::InsAL, InstitutionKind::InsLAL];
}

impl fmt::Display for InstitutionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            InstitutionKind::If => "if",
            InstitutionKind::InsAL => "insal",
            InstitutionKind::InsLAL => "inslal",
        })
    }
}

impl FromStr for InstitutionKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "if" | "i_f" => Ok(InstitutionKind::If),
            "insal" => Ok(InstitutionKind::InsAL),
            "inslal" => Ok(InstitutionKind::InsLAL),
            _ => Err(Error::Format(format!("unknown institution `{s}` (if, insal, inslal)"))),
        }
    }
}

/// Sizes of sampled sentences.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReportBounds {
    pub vars: u32,
    pub depth: usize,
    pub gamma_size: usize,
}

impl Default for ReportBounds {
    fn default() -> Self {
        ReportBounds {
            vars: 2,
            depth: 2,
            gamma_size: 2,
        }
    }
}

/// One instance where the two sides of a satisfaction condition differ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub check: &'static str,
    /// Morphism or context name.
    pub subject: String,
    pub matrix: String,
    pub sentence: String,
    pub left: bool,
    pub right: bool,
    pub detail: Option<String>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} via {} on {}: {}: left {}, right {}",
            self.check, self.subject, self.matrix, self.sentence, self.left, self.right
        )?;
        if let Some(d) = &self.detail {
            write!(f, " ({d})")?;
        }
        Ok(())
    }
}

const KEPT_WITNESSES: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstitutionReport {
    pub kind: InstitutionKind,
    pub bounds: ReportBounds,
    pub samples: usize,
    pub seed: u64,
    pub faults: usize,
    /// Individual checks run, including those outside the sampling loop.
    pub checks: u64,
    /// Matrices skipped because a precondition failed, with the reason.
    pub skipped: Vec<String>,
    pub violation_count: u64,
    /// The first violations found, in sampling order.
    pub violations: Vec<Violation>,
}

impl InstitutionReport {
    pub fn passed(&self) -> bool {
        self.violation_count == 0
    }

    fn push(&mut self, v: Violation) {
        self.violation_count += 1;
        if self.violations.len() < KEPT_WITNESSES {
            self.violations.push(v);
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "institution": self.kind.to_string(),
            "bounds": {"vars": self.bounds.vars, "depth": self.bounds.depth, "gamma_size": self.bounds.gamma_size},
            "samples": self.samples,
            "seed": self.seed,
            "faults": self.faults,
            "checks": self.checks,
            "skipped": self.skipped,
            "violations": self.violation_count,
            "witnesses": self.violations.iter().map(|v| json!({
                "check": v.check,
                "subject": v.subject,
                "matrix": v.matrix,
                "sentence": v.sentence,
                "left": v.left,
                "right": v.right,
                "detail": v.detail,
            })).collect::<Vec<_>>(),
            "passed": self.passed(),
        })
    }
}

impl fmt::Display for InstitutionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "institution: {}", self.kind)?;
        writeln!(
            f,
            "bounds: vars {}, depth {}, |Γ| ≤ {}; {} samples, seed {}",
            self.bounds.vars, self.bounds.depth, self.bounds.gamma_size, self.samples, self.seed
        )?;
        if self.faults > 0 {
            writeln!(f, "injected faults: {}", self.faults)?;
        }
        for s in &self.skipped {
            writeln!(f, "skipped: {s}")?;
        }
        writeln!(f, "checks: {}, violations: {}", self.checks, self.violation_count)?;
        for v in &self.violations {
            writeln!(f, "violation: {v}")?;
        }
        write!(f, "result: {}", if self.passed() { "pass" } else { "FAIL" })
    }
}

fn sample_sentence(
    sampler: &FormulaSampler,
    bounds: &ReportBounds,
    rng: &mut ChaCha8Rng,
) -> (Vec<Formula>, Formula) {
    let k = rng.gen_range(0..=bounds.gamma_size);
    let gamma = (0..k).map(|_| sampler.sample(rng)).collect();
    (gamma, sampler.sample(rng))
}

fn countervaluation_note(m: &Matrix, gamma: &[Formula], phi: &Formula) -> Option<String> {
    m.countervaluation(gamma, phi)
        .ok()
        .flatten()
        .map(|v| format!("countervaluation {v:?}"))
}

/// One subject (morphism or context) applied to one matrix, with the
/// possibly faulted algebra it produces.
struct Case<'a> {
    subject: &'a str,
    matrix_name: &'a str,
    matrix: &'a Matrix,
    sampler: usize,
}

/// Runs the satisfaction conditions of one institution on seeded samples
/// drawn from the corpus, with any injected faults applied.
pub fn institution_report(
    kind: InstitutionKind,
    corpus: &Corpus,
    bounds: &ReportBounds,
    samples: usize,
    seed: u64,
) -> Result<InstitutionReport> {
    let mut report = InstitutionReport {
        kind,
        bounds: *bounds,
        samples,
        seed,
        faults: corpus.faults.len(),
        checks: 0,
        skipped: Vec::new(),
        violation_count: 0,
        violations: Vec::new(),
    };
    match kind {
        InstitutionKind::If => if_report(corpus, &mut report)?,
        InstitutionKind::InsAL | InstitutionKind::InsLAL => glivenko_report(kind, corpus, &mut report)?,
    }
    Ok(report)
}

fn if_report(corpus: &Corpus, report: &mut InstitutionReport) -> Result<()> {
    let bounds = report.bounds;
    let mut samplers = Vec::new();
    let mut cases = Vec::new();
    let mut reducts = Vec::new();
    for m in &corpus.morphisms {
        samplers.push(FormulaSampler::new(m.morphism.source().signature(), bounds.vars, bounds.depth)?);
        let target = corpus.logic(&m.target)?;
        for cm in corpus.matrices_of(target) {
            let mut r = reduct(m.morphism.map(), cm.matrix.algebra())?;
            for fault in corpus.faults_on(&FaultTarget::Morphism(m.name.clone())) {
                r = fault.apply(&r);
            }
            cases.push(Case {
                subject: &m.name,
                matrix_name: &cm.name,
                matrix: &cm.matrix,
                sampler: samplers.len() - 1,
            });
            reducts.push(r);
        }
        if let Some(inv) = &m.inverse {
            inverse_check(corpus, m, inv, report)?;
        }
    }
    if cases.is_empty() {
        report.skipped.push("no morphism has a matrix over its target".into());
        return Ok(());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(report.seed);
    for _ in 0..report.samples {
        let i = rng.gen_range(0..cases.len());
        let case = &cases[i];
        let (gamma, phi) = sample_sentence(&samplers[case.sampler], &bounds, &mut rng);
        let h = &corpus.morphism(case.subject).expect("listed morphism").morphism;
        let (left, right) = satisfaction_sides(h.map(), case.matrix, &reducts[i], &gamma, &phi)?;
        report.checks += 1;
        if left != right {
            let detail = if left {
                let m = Matrix::new(reducts[i].clone(), case.matrix.filter().clone())?;
                countervaluation_note(&m, &gamma, &phi).map(|c| format!("{c} in the reduct"))
            } else {
                countervaluation_note(case.matrix, &h.map().extend_all(&gamma)?, &h.map().extend(&phi)?)
                    .map(|c| format!("{c} in the target matrix"))
            };
            report.push(Violation {
                check: "satisfaction",
                subject: case.subject.to_string(),
                matrix: case.matrix_name.to_string(),
                sentence: InsALSentence::new(gamma, phi).to_string(),
                left,
                right,
                detail,
            });
        }
    }
    Ok(())
}

/// A claimed inverse must send each connective, after the morphism, to an
/// interderivable formula.
fn inverse_check(corpus: &Corpus, m: &super::CorpusMorphism, inv: &str, report: &mut InstitutionReport) -> Result<()> {
    let inverse = &corpus.morphism(inv).expect("checked when loading").morphism;
    let round = inverse.map().compose_after(m.morphism.map())?;
    let source = m.morphism.source();
    let mut decider = Decider::new(source);
    for c in source.signature().connectives() {
        let atom = generic_application(&c.name, c.arity);
        let image = round.extend(&atom)?;
        report.checks += 1;
        if !decider.interderivable(&atom, &image)? {
            report.push(Violation {
                check: "inverse",
                subject: format!("{inv} ∘ {}", m.name),
                matrix: "-".into(),
                sentence: format!("{atom} ⊣⊢ {image}"),
                left: true,
                right: false,
                detail: None,
            });
        }
    }
    Ok(())
}

fn glivenko_report(kind: InstitutionKind, corpus: &Corpus, report: &mut InstitutionReport) -> Result<()> {
    let bounds = report.bounds;
    let mut samplers = Vec::new();
    let mut cases = Vec::new();
    let mut data: Vec<AdjointData> = Vec::new();
    let mut contexts: Vec<&GlivenkoContext> = Vec::new();
    for (name, ctx) in &corpus.contexts {
        samplers.push(FormulaSampler::new(ctx.target().signature(), bounds.vars, bounds.depth)?);
        for cm in corpus.matrices_of(ctx.source()) {
            if kind == InstitutionKind::InsAL && !is_reduced(cm.matrix.algebra(), cm.matrix.filter())? {
                report.skipped.push(format!("{} for {name}: not reduced", cm.name));
                continue;
            }
            let mut d = match ctx.left_adjoint(cm.matrix.algebra()) {
                Ok(d) => d,
                Err(e) => {
                    report.skipped.push(format!("{} for {name}: {e}", cm.name));
                    continue;
                }
            };
            for fault in corpus.faults_on(&FaultTarget::Context(name.clone())) {
                d.algebra = fault.apply(&d.algebra);
            }
            cases.push(Case {
                subject: name,
                matrix_name: &cm.name,
                matrix: &cm.matrix,
                sampler: samplers.len() - 1,
            });
            data.push(d);
            contexts.push(ctx);
        }
    }
    if cases.is_empty() {
        report.skipped.push("no context has a matrix over its source".into());
        return Ok(());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(report.seed);
    for _ in 0..report.samples {
        let i = rng.gen_range(0..cases.len());
        let (case, ctx, d) = (&cases[i], contexts[i], &data[i]);
        let (gamma, phi) = sample_sentence(&samplers[case.sampler], &bounds, &mut rng);
        match kind {
            InstitutionKind::InsAL => {
                let (left, right) = matrix_compatibility_sides(ctx, case.matrix, d, &gamma, &phi)?;
                report.checks += 1;
                if left != right {
                    report.push(Violation {
                        check: "matrix compatibility",
                        subject: case.subject.to_string(),
                        matrix: case.matrix_name.to_string(),
                        sentence: InsALSentence::new(gamma.clone(), phi.clone()).to_string(),
                        left,
                        right,
                        detail: None,
                    });
                }
                let rho = rho_translate(ctx, &phi)?;
                let alg: &FiniteAlgebra = case.matrix.algebra();
                let v: Vec<usize> = (0..bounds.vars).map(|_| rng.gen_range(0..alg.size())).collect();
                let (l, r) = comorphism_plus_sides(case.matrix, ctx.pair(), &rho, &v)?;
                report.checks += 1;
                if l != r {
                    report.push(Violation {
                        check: "comorphism (+)",
                        subject: case.subject.to_string(),
                        matrix: case.matrix_name.to_string(),
                        sentence: rho.to_string(),
                        left: l,
                        right: r,
                        detail: Some(format!("valuation {v:?}")),
                    });
                }
            }
            _ => {
                let q = InsLALSentence::new(gamma, phi);
                let (left, right) = lind_compatibility_sides(ctx, case.matrix.algebra(), d, &q)?;
                report.checks += 1;
                if left != right {
                    report.push(Violation {
                        check: "quasi-equation compatibility",
                        subject: case.subject.to_string(),
                        matrix: case.matrix_name.to_string(),
                        sentence: q.to_string(),
                        left,
                        right,
                        detail: None,
                    });
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{classical_corpus, institution_corpus};

    #[test]
    fn classical_corpus_passes() {
        let c = classical_corpus();
        for kind in InstitutionKind::ALL {
            let r = institution_report(kind, &c, &ReportBounds::default(), 500, 1).unwrap();
            assert!(r.passed(), "{r}");
            assert!(r.checks >= 500);
        }
    }

    #[test]
    fn faults_are_found() {
        let c = institution_corpus("faulty_corpus.json").unwrap();
        for kind in InstitutionKind::ALL {
            let r = institution_report(kind, &c, &ReportBounds::default(), 2000, 3).unwrap();
            assert!(!r.passed(), "{kind}");
            assert!(!r.violations.is_empty());
        }
    }

    #[test]
    fn deterministic() {
        let c = institution_corpus("faulty_corpus.json").unwrap();
        let a = institution_report(InstitutionKind::If, &c, &ReportBounds::default(), 300, 9).unwrap();
        let b = institution_report(InstitutionKind::If, &c, &ReportBounds::default(), 300, 9).unwrap();
        assert_eq!(a, b);
        assert_eq!("InsLAL".parse::<InstitutionKind>().unwrap(), InstitutionKind::InsLAL);
    }
}
