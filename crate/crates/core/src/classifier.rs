//! Verdicts on `h_{α,β}`: infinitely divisible, not positive definite, or
//! unknown.
//!
//! Rules are tried in order:
//!
//! 1. `|α| ⪯_w |β|` gives an explicit factorization into infinitely
//!    divisible factors.
//! 2. `Σ a_i > Σ b_i` makes `h` unbounded, so it is not positive definite.
//! 3. `max a_i > max b_i` likewise rules out positive definiteness.
//! 4. Optional probes: an exact nonnegativity certificate for the Lévy
//!    density (rational exponents only), then a Gram-matrix witness search.
//! 5. Otherwise the verdict is unknown.

use alloc::vec::Vec;
use core::fmt;

use num_rational::BigRational;

use crate::density::{exact_numerator, CombinedDensity};
use crate::error::{Error, Result};
use crate::expander::{
    certify_nonnegative, default_order, expand, rescale_to_integers, CertificateVerdict, CoshExpansion,
    PositivityCertificate, SinhProductTerm,
};
use crate::exponents::{first_prefix_violation, sort_desc, Exponent, ExponentPair, ExponentTuple};
use crate::factorizer::{factorize, Factorization};
use crate::gram::{gram_probe_until, GramWitness, DEFAULT_SPACINGS};
use crate::scalarfn::SinhRatio;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    InfinitelyDivisible,
    NotPositiveDefinite,
    Unknown,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::InfinitelyDivisible => "infinitely_divisible",
            Verdict::NotPositiveDefinite => "not_positive_definite",
            Verdict::Unknown => "unknown",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rule {
    WeakSubmajorization,
    SumCondition,
    MaxCondition,
    DensityCertificate,
    GramProbe,
    NoRuleApplies,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rule::WeakSubmajorization => "weak_submajorization",
            Rule::SumCondition => "sum_condition",
            Rule::MaxCondition => "max_condition",
            Rule::DensityCertificate => "density_certificate",
            Rule::GramProbe => "gram_probe",
            Rule::NoRuleApplies => "none",
        })
    }
}

/// Exact nonnegativity proof for the Lévy density of `log h`.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityCertificate {
    /// Density numerator in units of `π`.
    pub numerator: Vec<SinhProductTerm>,
    /// Substitution factor that made the frequencies integers.
    pub scale: BigRational,
    pub expansion: CoshExpansion,
    pub certificate: PositivityCertificate,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Certificate {
    Factorization(Factorization),
    Positivity(DensityCertificate),
    SumWitness { sum_alpha: Exponent, sum_beta: Exponent },
    MaxWitness { max_alpha: Exponent, max_beta: Exponent },
    Gram(GramWitness),
    None,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Classification {
    pub verdict: Verdict,
    pub rule: Rule,
    pub certificate: Certificate,
    /// Pair after abs-normalization and removal of matched zero slots.
    pub source: ExponentPair,
    /// Set when the probe budget ran out before the probes finished.
    pub budget_exhausted: bool,
}

/// Bounded effort for the numeric probes; polled between units of work.
pub trait Budget {
    fn exhausted(&mut self) -> bool;
}

/// Never runs out.
#[derive(Clone, Copy, Debug, Default)]
pub struct Unlimited;

impl Budget for Unlimited {
    fn exhausted(&mut self) -> bool {
        false
    }
}

/// Allows a fixed number of polls.
#[derive(Clone, Copy, Debug)]
pub struct StepBudget {
    remaining: usize,
}

impl StepBudget {
    pub fn new(steps: usize) -> Self {
        StepBudget { remaining: steps }
    }
}

impl Budget for StepBudget {
    fn exhausted(&mut self) -> bool {
        if self.remaining == 0 {
            return true;
        }
        self.remaining -= 1;
        false
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProbeOptions {
    pub density_certificate: bool,
    pub gram: bool,
    pub spacings: Vec<f64>,
    pub max_size: usize,
    /// Taylor order for the density certificate; `None` uses
    /// [`default_order`].
    pub order: Option<u32>,
    /// Largest number of sinh factors per numerator term that the exact
    /// expansion will attempt.
    pub max_factors: usize,
}

impl Default for ProbeOptions {
    fn default() -> Self {
        ProbeOptions {
            density_certificate: true,
            gram: true,
            spacings: DEFAULT_SPACINGS.to_vec(),
            max_size: 16,
            order: None,
            max_factors: 16,
        }
    }
}

impl ProbeOptions {
    pub fn disabled() -> Self {
        ProbeOptions {
            density_certificate: false,
            gram: false,
            ..Self::default()
        }
    }
}

/// Classification with default probes and no budget.
pub fn classify(alpha: &ExponentTuple, beta: &ExponentTuple) -> Result<Classification> {
    classify_with(alpha, beta, &ProbeOptions::default(), &mut Unlimited)
}

pub fn classify_pair(pair: &ExponentPair) -> Result<Classification> {
    classify(pair.alpha(), pair.beta())
}

pub fn classify_with(
    alpha: &ExponentTuple,
    beta: &ExponentTuple,
    options: &ProbeOptions,
    budget: &mut dyn Budget,
) -> Result<Classification> {
    let source = reduce(alpha, beta)?;
    let done = |verdict, rule, certificate, budget_exhausted| Classification {
        verdict,
        rule,
        certificate,
        source: source.clone(),
        budget_exhausted,
    };

    if first_prefix_violation(source.alpha(), source.beta())?.is_none() {
        let f = factorize(source.alpha(), source.beta())?;
        return Ok(done(
            Verdict::InfinitelyDivisible,
            Rule::WeakSubmajorization,
            Certificate::Factorization(f),
            false,
        ));
    }

    let sum_alpha = source.alpha().sum();
    let sum_beta = source.beta().sum();
    if sum_alpha > sum_beta {
        return Ok(done(
            Verdict::NotPositiveDefinite,
            Rule::SumCondition,
            Certificate::SumWitness { sum_alpha, sum_beta },
            false,
        ));
    }

    let max_alpha = source.alpha().values()[0].clone();
    let max_beta = source.beta().values()[0].clone();
    if max_alpha > max_beta {
        return Ok(done(
            Verdict::NotPositiveDefinite,
            Rule::MaxCondition,
            Certificate::MaxWitness { max_alpha, max_beta },
            false,
        ));
    }

    if options.density_certificate && source.is_exact() {
        if budget.exhausted() {
            return Ok(done(Verdict::Unknown, Rule::NoRuleApplies, Certificate::None, true));
        }
        if let Some(cert) = try_density_certificate(&source, options)? {
            if cert.certificate.verdict == CertificateVerdict::Certified {
                return Ok(done(
                    Verdict::InfinitelyDivisible,
                    Rule::DensityCertificate,
                    Certificate::Positivity(cert),
                    false,
                ));
            }
        }
    }

    if options.gram {
        let ratio = SinhRatio::from_pair(&source);
        let mut exhausted = false;
        let witness = gram_probe_until(|x| ratio.eval(x), &options.spacings, options.max_size, || {
            exhausted = budget.exhausted();
            exhausted
        })?;
        if let Some(w) = witness {
            return Ok(done(Verdict::NotPositiveDefinite, Rule::GramProbe, Certificate::Gram(w), false));
        }
        if exhausted {
            return Ok(done(Verdict::Unknown, Rule::NoRuleApplies, Certificate::None, true));
        }
    }

    Ok(done(Verdict::Unknown, Rule::NoRuleApplies, Certificate::None, false))
}

/// Abs-normalizes, sorts descending and drops slots where both tuples hold
/// a zero (keeping at least one slot).
fn reduce(alpha: &ExponentTuple, beta: &ExponentTuple) -> Result<ExponentPair> {
    let pair = ExponentPair::new(alpha.abs_normalize(), beta.abs_normalize())?;
    let mut a = pair.alpha().values().to_vec();
    let mut b = pair.beta().values().to_vec();
    sort_desc(&mut a);
    sort_desc(&mut b);
    while a.len() > 1 && a.last().is_some_and(Exponent::is_zero) && b.last().is_some_and(Exponent::is_zero) {
        a.pop();
        b.pop();
    }
    ExponentPair::new(ExponentTuple::new(a)?, ExponentTuple::new(b)?)
}

fn try_density_certificate(pair: &ExponentPair, options: &ProbeOptions) -> Result<Option<DensityCertificate>> {
    let density = match CombinedDensity::from_pair(pair) {
        Ok(d) => d,
        Err(Error::Unsupported(_)) => return Ok(None),
        Err(e) => return Err(e),
    };
    let numerator = exact_numerator(&density)?;
    if numerator.is_empty() || numerator.iter().any(|t| t.factor_count() > options.max_factors) {
        return Ok(None);
    }
    build_certificate(numerator, options.order).map(Some)
}

fn build_certificate(numerator: Vec<SinhProductTerm>, order: Option<u32>) -> Result<DensityCertificate> {
    let (scale, ints) = rescale_to_integers(&numerator)?;
    let expansion = expand(&ints)?;
    let k = order.unwrap_or_else(|| default_order(&expansion));
    let certificate = certify_nonnegative(&expansion, k)?;
    Ok(DensityCertificate {
        numerator,
        scale,
        expansion,
        certificate,
    })
}

/// Exact density certificate for a pair with rational, nonzero exponents.
pub fn density_certificate(pair: &ExponentPair, order: Option<u32>) -> Result<DensityCertificate> {
    let density = CombinedDensity::from_pair(pair)?;
    let numerator = exact_numerator(&density)?;
    if numerator.is_empty() {
        return Err(Error::InvalidArgument("density vanishes identically"));
    }
    build_certificate(numerator, order)
}

/// `f_{a,b} ⪯ f_{c,d}` for single exponents, by the explicit regions:
///
/// * `a > b`: `c ≥ a` and `d ≤ c − a + b`;
/// * `a ≤ b`: `c ≤ d ≤ c − a + b` with `d ≤ b`, or `d ≤ c`.
pub fn classify_single(a: &Exponent, b: &Exponent, c: &Exponent, d: &Exponent) -> Result<bool> {
    if [a, b, c, d].iter().any(|v| v.to_f64() < 0.0) {
        return Err(Error::Negative);
    }
    let below_diagonal_shift = d + a <= c + b;
    Ok(if a > b {
        c >= a && below_diagonal_shift
    } else {
        (c <= d && below_diagonal_shift && d <= b) || d <= c
    })
}

pub fn classify_single_f64(a: f64, b: f64, c: f64, d: f64) -> Result<bool> {
    classify_single(&Exponent::real(a), &Exponent::real(b), &Exponent::real(c), &Exponent::real(d))
}

/// Positive definiteness of `sinh(a₁x) sinh(a₂x) / (sinh(b₁x) sinh(b₂x))`
/// for `a₁ ≥ a₂ ≥ 0`, `b₁ ≥ b₂ ≥ 0`: `a₁ ≤ b₁` and `a₁ + a₂ ≤ b₁ + b₂`.
pub fn two_factor_criterion(a1: &Exponent, a2: &Exponent, b1: &Exponent, b2: &Exponent) -> Result<bool> {
    if [a1, a2, b1, b2].iter().any(|v| v.to_f64() < 0.0) {
        return Err(Error::Negative);
    }
    if a1 < a2 || b1 < b2 {
        return Err(Error::Unsorted);
    }
    Ok(a1 <= b1 && a1 + a2 <= b1 + b2)
}

pub fn two_factor_criterion_f64(a1: f64, a2: f64, b1: f64, b2: f64) -> Result<bool> {
    two_factor_criterion(&Exponent::real(a1), &Exponent::real(a2), &Exponent::real(b1), &Exponent::real(b2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gram::{gram_probe, gram_report};
    use alloc::vec;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn run(a: &[i64], b: &[i64]) -> Classification {
        classify_pair(&ExponentPair::from_ints(a, b).unwrap()).unwrap()
    }

    fn e(n: i64, d: i64) -> Exponent {
        Exponent::ratio(n, d).unwrap()
    }

    #[test]
    fn non_positive_definite_counterexample() {
        let c = run(&[8, 6, 3], &[9, 4, 4]);
        assert_eq!(c.verdict, Verdict::NotPositiveDefinite);
        assert_eq!(c.rule, Rule::GramProbe);
        let Certificate::Gram(w) = &c.certificate else {
            panic!("expected a Gram witness")
        };
        assert_eq!(w.points, vec![0.0, 1.0 / 3.0, 2.0 / 3.0, 1.0]);
        assert!(w.min_eigenvalue < 0.0);
    }

    #[test]
    fn density_certified_example() {
        let c = run(&[8, 6, 1], &[9, 4, 4]);
        assert_eq!(c.verdict, Verdict::InfinitelyDivisible);
        assert_eq!(c.rule, Rule::DensityCertificate);
        let Certificate::Positivity(cert) = &c.certificate else {
            panic!("expected a positivity certificate")
        };
        assert_eq!(cert.scale, BigRational::from_integer(144.into()));
        assert_eq!(cert.expansion.len(), 12);
        assert_eq!(cert.certificate.verdict, CertificateVerdict::Certified);
    }

    #[test]
    fn necessary_conditions() {
        let c = run(&[3, 1], &[2, 2]);
        assert_eq!(c.verdict, Verdict::NotPositiveDefinite);
        assert_eq!(c.rule, Rule::MaxCondition);
        assert_eq!(
            c.certificate,
            Certificate::MaxWitness {
                max_alpha: Exponent::integer(3),
                max_beta: Exponent::integer(2)
            }
        );
        let c = run(&[2, 2], &[2, 1]);
        assert_eq!(c.rule, Rule::SumCondition);
        // cross-check by Gram sampling
        for pair in [([3i64, 1], [2i64, 2]), ([2, 2], [2, 1])] {
            let r = SinhRatio::from_pair(&ExponentPair::from_ints(&pair.0, &pair.1).unwrap());
            assert!(gram_probe(|x| r.eval(x), &DEFAULT_SPACINGS, 16).unwrap().is_some());
        }
    }

    #[test]
    fn submajorized_pairs_factorize() {
        let c = run(&[6, 5, 3], &[9, 4, 1]);
        assert_eq!(c.verdict, Verdict::InfinitelyDivisible);
        assert_eq!(c.rule, Rule::WeakSubmajorization);
        assert!(matches!(c.certificate, Certificate::Factorization(_)));
        let c = run(&[0, 0], &[0, 0]);
        assert_eq!(c.verdict, Verdict::InfinitelyDivisible);
        assert_eq!(c.source.len(), 1);
    }

    #[test]
    fn budget_limits_probes() {
        let p = ExponentPair::from_ints(&[8, 6, 3], &[9, 4, 4]).unwrap();
        let c = classify_with(p.alpha(), p.beta(), &ProbeOptions::default(), &mut StepBudget::new(0)).unwrap();
        assert_eq!(c.verdict, Verdict::Unknown);
        assert!(c.budget_exhausted);
        let c = classify_with(p.alpha(), p.beta(), &ProbeOptions::disabled(), &mut Unlimited).unwrap();
        assert_eq!(c.verdict, Verdict::Unknown);
        assert!(!c.budget_exhausted);
    }

    #[test]
    fn single_pair_regions() {
        let i = Exponent::integer;
        assert!(classify_single(&i(1), &i(1), &i(2), &i(1)).unwrap());
        assert!(!classify_single(&i(2), &i(1), &i(3), &i(3)).unwrap());
        for (a, b) in [(1, 2), (2, 1), (3, 3), (0, 4)] {
            assert!(classify_single(&i(a), &i(b), &i(a), &i(b)).unwrap());
        }
        assert!(classify_single(&i(-1), &i(1), &i(1), &i(1)).is_err());
        assert!(classify_single_f64(1.0, 1.0, 2.0, 1.0).unwrap());
    }

    #[test]
    fn equal_single_exponents_boundary() {
        // With a = b the quotient for (1, 1, 1/2, 0) is 1/sinhc(x/2), which is
        // positive definite although c < a.
        let i = Exponent::integer;
        assert!(classify_single(&i(1), &i(1), &e(1, 2), &i(0)).unwrap());
        assert!(two_factor_criterion(&i(1), &i(0), &i(1), &e(1, 2)).unwrap());
    }

    #[test]
    fn two_factor_examples() {
        let i = Exponent::integer;
        assert!(two_factor_criterion(&i(1), &i(1), &i(2), &i(1)).unwrap());
        assert!(!two_factor_criterion(&i(8), &i(6), &i(9), &i(4)).unwrap());
        assert!(two_factor_criterion(&i(3), &i(3), &i(3), &i(3)).unwrap());
        assert_eq!(two_factor_criterion(&i(1), &i(2), &i(3), &i(1)), Err(Error::Unsorted));
        assert_eq!(two_factor_criterion_f64(-1.0, -2.0, 3.0, 1.0), Err(Error::Negative));
    }

    fn sort2(x: &Exponent, y: &Exponent) -> (Exponent, Exponent) {
        if x >= y {
            (x.clone(), y.clone())
        } else {
            (y.clone(), x.clone())
        }
    }

    #[test]
    fn single_pair_matches_two_factor_reduction() {
        let grid: Vec<Exponent> = (0..=8).map(|k| e(k, 2)).collect();
        for a in &grid {
            for b in &grid {
                for c in &grid {
                    for d in &grid {
                        let (a1, a2) = sort2(a, d);
                        let (b1, b2) = sort2(b, c);
                        assert_eq!(
                            classify_single(a, b, c, d).unwrap(),
                            two_factor_criterion(&a1, &a2, &b1, &b2).unwrap(),
                            "({a}, {b}, {c}, {d})"
                        );
                    }
                }
            }
        }
    }

    fn random_points(rng: &mut ChaCha8Rng) -> Vec<f64> {
        let n = rng.gen_range(2..=8);
        (0..n).map(|_| rng.gen_range(-4.0..4.0)).collect()
    }

    fn small_pair() -> impl Strategy<Value = ExponentPair> {
        (1usize..=3)
            .prop_flat_map(|n| (prop::collection::vec(0i64..=9, n), prop::collection::vec(0i64..=9, n)))
            .prop_map(|(a, b)| ExponentPair::from_ints(&a, &b).unwrap())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn infinitely_divisible_verdicts_are_positive_definite(p in small_pair(), seed in any::<u64>()) {
            let c = classify_pair(&p).unwrap();
            if c.verdict == Verdict::InfinitelyDivisible {
                let r = SinhRatio::from_pair(&p);
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                for _ in 0..50 {
                    let pts = random_points(&mut rng);
                    let rep = gram_report(|x| r.eval(x), &pts).unwrap();
                    prop_assert!(rep.min_eigenvalue >= -1e-9 * pts.len() as f64);
                }
            }
        }

        #[test]
        fn large_sum_gap_has_gram_witness(p in small_pair()) {
            let c = classify_pair(&p).unwrap();
            if c.rule == Rule::SumCondition {
                let (sa, sb) = (p.alpha().sum().to_f64(), p.beta().sum().to_f64());
                if sa >= 1.1 * sb {
                    let r = SinhRatio::from_pair(&p);
                    prop_assert!(gram_probe(|x| r.eval(x), &DEFAULT_SPACINGS, 16).unwrap().is_some());
                }
            }
        }

        #[test]
        fn monotone_transfer(p in small_pair(), down in prop::collection::vec(0i64..=2, 3), up in prop::collection::vec(0i64..=2, 3)) {
            let c = classify_pair(&p).unwrap();
            if c.verdict == Verdict::InfinitelyDivisible {
                let a: Vec<i64> = p.alpha().values().iter().zip(&down).map(|(v, d)| (v.to_f64() as i64 - d).max(1)).collect();
                let b: Vec<i64> = p.beta().values().iter().zip(&up).map(|(v, u)| v.to_f64() as i64 + u).collect();
                // a′ ≤ a only holds where a was positive.
                if p.alpha().values().iter().all(Exponent::is_positive) && p.beta().values().iter().all(Exponent::is_positive) {
                    let c2 = classify_pair(&ExponentPair::from_ints(&a, &b).unwrap()).unwrap();
                    prop_assert!(c2.verdict != Verdict::NotPositiveDefinite, "{:?} -> {:?}", p, (a, b));
                }
            }
        }
    }
}
