use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{homomorphisms, is_homomorphism, is_reduced, FiniteAlgebra, Filter};
use crate::corpus;
use crate::error::{Error, Result};
use crate::institutions::InsLALSentence;
use crate::provers::quasiidentity_holds;
use crate::semantics::{reduct, Decider, Matrix};
use crate::syntax::{count_formulas, enumerate_formulas, index_subsets, Formula, FormulaSampler, Signature};

use super::context::{rho_translate, rho_translate_all, AdjointData, GlivenkoContext};

/// A homomorphism `f: M → N` with `f ∘ ρ_M ≠ ρ_N ∘ L(f)` at `element`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NaturalityWitness {
    pub hom: Vec<usize>,
    pub element: usize,
}

/// `L(f)` for `f: M → N`, defined by `L(f)(unit_M(a)) = unit_N(f(a))`;
/// `None` if that is not well defined.
fn lift(f: &[usize], dm: &AdjointData, dn: &AdjointData) -> Option<Vec<usize>> {
    let mut out = vec![usize::MAX; dm.algebra.size()];
    for (a, &fa) in f.iter().enumerate() {
        let slot = &mut out[dm.unit[a]];
        let v = dn.unit[fa];
        if *slot != usize::MAX && *slot != v {
            return None;
        }
        *slot = v;
    }
    Some(out)
}

/// Checks naturality of the section against every homomorphism `M → N`.
pub fn naturality_witness(ctx: &GlivenkoContext, m: &FiniteAlgebra, n: &FiniteAlgebra) -> Result<Option<NaturalityWitness>> {
    let m = m.restrict(ctx.source().signature())?;
    let n = n.restrict(ctx.source().signature())?;
    let dm = ctx.left_adjoint(&m)?;
    let dn = ctx.left_adjoint(&n)?;
    for f in homomorphisms(&m, &n)? {
        let Some(lf) = lift(&f, &dm, &dn) else {
            return Ok(Some(NaturalityWitness { hom: f, element: usize::MAX }));
        };
        for c in 0..dm.algebra.size() {
            if f[dm.section[c]] != dn.section[lf[c]] {
                return Ok(Some(NaturalityWitness { hom: f, element: c }));
            }
        }
    }
    Ok(None)
}

/// The unit is a homomorphism onto the reduct of `L_h(M)`, the section is a
/// right inverse of the unit, `ρ_M(unit(a)) = θ^M(a)`, and the section is
/// natural for homomorphisms between `M` and every bundled algebra of the
/// source class.
pub fn section_check(ctx: &GlivenkoContext, m: &FiniteAlgebra) -> Result<bool> {
    let m = m.restrict(ctx.source().signature())?;
    let d = ctx.left_adjoint(&m)?;
    let back = reduct(ctx.h(), &d.algebra)?;
    if !is_homomorphism(&m, &back, &d.unit) {
        return Ok(false);
    }
    if (0..d.algebra.size()).any(|c| d.unit[d.section[c]] != c) {
        return Ok(false);
    }
    let theta = m.compile(ctx.theta())?;
    let mut stack = Vec::new();
    if (0..m.size()).any(|a| d.section[d.unit[a]] != theta.eval(&m, &[a], &mut stack)) {
        return Ok(false);
    }
    for (_, other) in corpus::algebras() {
        let Ok(other) = other.restrict(ctx.source().signature()) else { continue };
        if ctx.left_adjoint(&other).is_err() {
            continue;
        }
        if naturality_witness(ctx, &m, &other)?.is_some() || naturality_witness(ctx, &other, &m)?.is_some() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Keeps prover caches across many Glivenko queries.
pub struct GlivenkoChecker<'a> {
    ctx: &'a GlivenkoContext,
    source: Decider<'a>,
    target: Decider<'a>,
}

impl<'a> GlivenkoChecker<'a> {
    pub fn new(ctx: &'a GlivenkoContext) -> Self {
        GlivenkoChecker {
            ctx,
            source: Decider::new(ctx.source()),
            target: Decider::new(ctx.target()),
        }
    }

    /// `(ρ[Γ′] ⊢ ρ(φ′), Γ′ ⊢′ φ′)`.
    pub fn check(&mut self, gamma: &[Formula], phi: &Formula) -> Result<(bool, bool)> {
        let left = self
            .source
            .decide(&rho_translate_all(self.ctx, gamma)?, &rho_translate(self.ctx, phi)?)?;
        let right = self.target.decide(gamma, phi)?;
        Ok((left, right))
    }
}

/// `(ρ[Γ′] ⊢ ρ(φ′), Γ′ ⊢′ φ′)`; the two agree for a valid context.
pub fn glivenko_equivalence(ctx: &GlivenkoContext, gamma: &[Formula], phi: &Formula) -> Result<(bool, bool)> {
    GlivenkoChecker::new(ctx).check(gamma, phi)
}

/// Bounds of a Glivenko sweep.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepConfig {
    /// Formulas are drawn over this signature.
    pub signature: Signature,
    pub vars: u32,
    pub depth: usize,
    pub gamma_size: usize,
    /// Run exhaustively when the instance count is at most this; sample
    /// otherwise.
    pub exhaustive_limit: u128,
    pub samples: usize,
    pub seed: u64,
}

impl SweepConfig {
    pub fn new(signature: Signature, vars: u32, depth: usize, gamma_size: usize, seed: u64) -> Self {
        SweepConfig {
            signature,
            vars,
            depth,
            gamma_size,
            exhaustive_limit: 2_000_000,
            samples: 10_000,
            seed,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Disagreement {
    pub gamma: Vec<Formula>,
    pub phi: Formula,
    pub left: bool,
    pub right: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepReport {
    pub config: SweepConfig,
    pub exhaustive: bool,
    pub instances: u64,
    /// Instances where both sides hold.
    pub both_true: u64,
    pub disagreements: Vec<Disagreement>,
}

impl SweepReport {
    pub fn agreements(&self) -> u64 {
        self.instances - self.disagreements.len() as u64
    }

    pub fn passed(&self) -> bool {
        self.disagreements.is_empty()
    }
}

impl fmt::Display for SweepReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = &self.config;
        writeln!(
            f,
            "bounds: signature {}, vars {}, depth {}, |Γ′| ≤ {}",
            c.signature, c.vars, c.depth, c.gamma_size
        )?;
        if self.exhaustive {
            writeln!(f, "mode: exhaustive")?;
        } else {
            writeln!(f, "mode: {} seeded samples, seed {}", c.samples, c.seed)?;
        }
        writeln!(
            f,
            "instances: {} ({} with both sides true), agreement {}/{}",
            self.instances,
            self.both_true,
            self.agreements(),
            self.instances
        )?;
        for d in self.disagreements.iter().take(10) {
            let g: Vec<String> = d.gamma.iter().map(|x| x.to_string()).collect();
            writeln!(f, "disagreement: {{{}}} ⊢ {}: left {}, right {}", g.join("; "), d.phi, d.left, d.right)?;
        }
        write!(f, "result: {}", if self.passed() { "pass" } else { "FAIL" })
    }
}

/// Checks the Glivenko equivalence on every `(Γ′, φ′)` within the bounds,
/// or on seeded samples when there are too many.
pub fn glivenko_sweep(ctx: &GlivenkoContext, config: &SweepConfig) -> Result<SweepReport> {
    let mut checker = GlivenkoChecker::new(ctx);
    let mut report = SweepReport {
        config: config.clone(),
        exhaustive: false,
        instances: 0,
        both_true: 0,
        disagreements: Vec::new(),
    };
    let record = |report: &mut SweepReport, gamma: Vec<Formula>, phi: Formula, checker: &mut GlivenkoChecker| -> Result<()> {
        let (left, right) = checker.check(&gamma, &phi)?;
        report.instances += 1;
        if left && right {
            report.both_true += 1;
        }
        if left != right {
            report.disagreements.push(Disagreement { gamma, phi, left, right });
        }
        Ok(())
    };
    let n = count_formulas(&config.signature, config.vars, config.depth);
    let total = n.and_then(|n| {
        let mut subsets: u128 = 0;
        let mut choose: u128 = 1;
        for k in 0..=config.gamma_size as u128 {
            subsets = subsets.checked_add(choose)?;
            choose = choose.checked_mul(n.checked_sub(k)?)? / (k + 1);
        }
        subsets.checked_mul(n)
    });
    if total.is_some_and(|t| t <= config.exhaustive_limit) {
        report.exhaustive = true;
        let formulas = enumerate_formulas(&config.signature, config.vars, config.depth);
        for gamma in index_subsets(formulas.len(), config.gamma_size) {
            let premises: Vec<Formula> = gamma.iter().map(|&i| formulas[i].clone()).collect();
            for phi in &formulas {
                record(&mut report, premises.clone(), phi.clone(), &mut checker)?;
            }
        }
    } else {
        let sampler = FormulaSampler::new(&config.signature, config.vars, config.depth)?;
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        for _ in 0..config.samples {
            let k = rng.gen_range(0..=config.gamma_size);
            let gamma: Vec<Formula> = (0..k).map(|_| sampler.sample(&mut rng)).collect();
            let phi = sampler.sample(&mut rng);
            record(&mut report, gamma, phi, &mut checker)?;
        }
    }
    Ok(report)
}

/// `F_{L_h(M)}`: the image of `F` under the unit.
pub fn image_filter(data: &AdjointData, filter: &Filter) -> Result<Filter> {
    Filter::new(data.algebra.size(), filter.elements().iter().map(|&a| data.unit[a]))
}

/// Both sides of the matrix compatibility claim:
/// `⟨L_h(M), F_{L_h(M)}⟩ ⊨′ ⟨Γ′, φ′⟩` and `⟨M, F⟩ ⊨ ⟨ρ[Γ′], ρ(φ′)⟩`.
pub fn matrix_compatibility_sides(
    ctx: &GlivenkoContext,
    m: &Matrix,
    data: &AdjointData,
    gamma: &[Formula],
    phi: &Formula,
) -> Result<(bool, bool)> {
    let image = Matrix::new(data.algebra.clone(), image_filter(data, m.filter())?)?;
    let left = image.satisfies(gamma, phi)?;
    let right = m.satisfies(&rho_translate_all(ctx, gamma)?, &rho_translate(ctx, phi)?)?;
    Ok((left, right))
}

/// Whether the two sides of [`matrix_compatibility_sides`] agree. `M` must
/// be reduced.
pub fn matrix_compatibility_check(ctx: &GlivenkoContext, m: &Matrix, gamma: &[Formula], phi: &Formula) -> Result<bool> {
    if !is_reduced(m.algebra(), m.filter())? {
        return Err(Error::Precondition(format!("the matrix with filter {} is not reduced", m.filter())));
    }
    let data = ctx.left_adjoint(m.algebra())?;
    let (left, right) = matrix_compatibility_sides(ctx, m, &data, gamma, phi)?;
    Ok(left == right)
}

/// Both sides of the quasi-equation compatibility claim:
/// `M ⊨ τ[ρ[premises]] → τ(ρ(conclusion))` and
/// `L_h(M) ⊨ τ′[premises] → τ′(conclusion)`.
pub fn lind_compatibility_sides(
    ctx: &GlivenkoContext,
    m: &FiniteAlgebra,
    data: &AdjointData,
    q: &InsLALSentence,
) -> Result<(bool, bool)> {
    let m = m.restrict(ctx.source().signature())?;
    let rho_premises = ctx.pair().tau_all(&rho_translate_all(ctx, &q.premises)?);
    let mut left = true;
    for c in ctx.pair().tau_of(&rho_translate(ctx, &q.conclusion)?) {
        left &= quasiidentity_holds(&m, &rho_premises, &c)?;
    }
    let premises = ctx.target_pair().tau_all(&q.premises);
    let mut right = true;
    for c in ctx.target_pair().tau_of(&q.conclusion) {
        right &= quasiidentity_holds(&data.algebra, &premises, &c)?;
    }
    Ok((left, right))
}

pub fn lind_compatibility_check(ctx: &GlivenkoContext, m: &FiniteAlgebra, q: &InsLALSentence) -> Result<bool> {
    let data = ctx.left_adjoint(m)?;
    let (left, right) = lind_compatibility_sides(ctx, m, &data, q)?;
    Ok(left == right)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::build;
    use crate::algebraization::AlgebraizingPair;
    use crate::semantics::LogicSpec;

    fn x(i: u32) -> Formula {
        Formula::var(i)
    }

    #[test]
    fn equivalence_examples() {
        let ctx = GlivenkoContext::classical();
        assert_eq!(glivenko_equivalence(&ctx, &[], &Formula::peirce()).unwrap(), (true, true));
        assert_eq!(glivenko_equivalence(&ctx, &[], &x(0)).unwrap(), (false, false));
        let dn = Formula::neg(Formula::neg(x(0)));
        assert_eq!(glivenko_equivalence(&ctx, &[x(0)], &dn).unwrap(), (true, true));
    }

    #[test]
    fn sections() {
        let ctx = GlivenkoContext::classical();
        assert!(section_check(&ctx, &build::boolean(1)).unwrap());
        assert!(section_check(&ctx, &build::chain(3)).unwrap());
        let homs = homomorphisms(&build::chain(3), &build::boolean(1)).unwrap();
        assert_eq!(homs, vec![vec![0, 1, 1]]);
        assert!(naturality_witness(&ctx, &build::chain(3), &build::boolean(1)).unwrap().is_none());
    }

    #[test]
    fn matrix_compatibility_examples() {
        let ctx = GlivenkoContext::classical();
        let peirce = Formula::peirce();
        let b2 = Matrix::with_elements(build::boolean(1), &[1]).unwrap();
        let h3 = Matrix::with_elements(build::chain(3), &[2]).unwrap();
        assert!(matrix_compatibility_check(&ctx, &b2, &[], &peirce).unwrap());
        let data = ctx.left_adjoint(h3.algebra()).unwrap();
        assert_eq!(matrix_compatibility_sides(&ctx, &h3, &data, &[], &peirce).unwrap(), (true, true));
        let id = GlivenkoContext::identity(&LogicSpec::ipc(), &AlgebraizingPair::iff());
        assert!(matrix_compatibility_check(&id, &h3, &[x(0)], &x(1)).unwrap());
        let unreduced = Matrix::with_elements(build::chain(3), &[1, 2]).unwrap();
        assert!(matrix_compatibility_check(&ctx, &unreduced, &[], &peirce).is_err());
    }

    #[test]
    fn lind_compatibility_examples() {
        let ctx = GlivenkoContext::classical();
        let refl = InsLALSentence::new(vec![], Formula::iff(x(0), x(0)));
        assert!(lind_compatibility_check(&ctx, &build::boolean(1), &refl).unwrap());
        let h3 = build::chain(3);
        let data = ctx.left_adjoint(&h3).unwrap();
        let peirce = InsLALSentence::new(vec![], Formula::peirce());
        assert_eq!(lind_compatibility_sides(&ctx, &h3, &data, &peirce).unwrap(), (true, true));
        let dn = InsLALSentence::new(vec![x(0)], Formula::neg(Formula::neg(x(0))));
        assert!(lind_compatibility_check(&ctx, &h3, &dn).unwrap());
    }

    #[test]
    fn small_sweep() {
        let ctx = GlivenkoContext::classical();
        let cfg = SweepConfig::new(Signature::propositional(), 2, 1, 1, 7);
        let r = glivenko_sweep(&ctx, &cfg).unwrap();
        assert!(r.exhaustive);
        assert_eq!(r.instances, 16 * 17);
        assert!(r.passed(), "{r}");
    }
}
