//! Reproduction bundles: each runs one reference computation and compares
//! the measured values with the reference ones.

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use sinhmajor_core::classifier::{
    classify, classify_single, classify_with, density_certificate, two_factor_criterion, ProbeOptions, Rule,
    Unlimited, Verdict,
};
use sinhmajor_core::density::{reconstruct_log_h, CombinedDensity};
use sinhmajor_core::expander::{taylor_coefficient, CertificateVerdict};
use sinhmajor_core::exponents::weak_submajorize;
use sinhmajor_core::factorizer::{factor_value, factorize_pair, ElementaryFactor};
use sinhmajor_core::gram::{gram_probe, gram_report, DEFAULT_SPACINGS};
use sinhmajor_core::matmeans::{mean_apply, trial_inputs};
use sinhmajor_core::matrix::ComplexMatrix;
use sinhmajor_core::scalarfn::{eval_h, SinhRatio};
use sinhmajor_core::{Exponent, ExponentPair, ExponentTuple, Result};

use crate::trials::verify_parallel;

/// Bundle names accepted by [`run`].
pub const BUNDLES: [&str; 9] = [
    "example-2.9",
    "example-2.10",
    "remark-factorizations",
    "mcintosh",
    "section-3",
    "theorem-1.2-grid",
    "infinite-divisibility",
    "density-reconstruction",
    "negative-controls",
];

#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub measured: Value,
    pub expected: String,
    pub pass: bool,
}

impl Check {
    pub fn close(name: impl Into<String>, measured: f64, expected: f64, tol: f64) -> Self {
        Check {
            name: name.into(),
            measured: json!(measured),
            expected: format!("{expected} ± {tol:e}"),
            pass: (measured - expected).abs() <= tol,
        }
    }

    pub fn at_least(name: impl Into<String>, measured: f64, bound: f64) -> Self {
        Check {
            name: name.into(),
            measured: json!(measured),
            expected: format!(">= {bound:e}"),
            pass: measured >= bound,
        }
    }

    pub fn at_most(name: impl Into<String>, measured: f64, bound: f64) -> Self {
        Check {
            name: name.into(),
            measured: json!(measured),
            expected: format!("<= {bound:e}"),
            pass: measured <= bound,
        }
    }

    pub fn holds(name: impl Into<String>, measured: Value, expected: impl Into<String>, pass: bool) -> Self {
        Check {
            name: name.into(),
            measured,
            expected: expected.into(),
            pass,
        }
    }

    pub fn count(name: impl Into<String>, measured: usize, expected: usize) -> Self {
        Check {
            name: name.into(),
            measured: json!(measured),
            expected: expected.to_string(),
            pass: measured == expected,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Bundle {
    pub name: &'static str,
    pub seed: Option<u64>,
    pub checks: Vec<Check>,
    /// Time spent in the computation proper.
    pub elapsed: Duration,
    pub limit: Duration,
}

impl Bundle {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn within_limit(&self) -> bool {
        self.elapsed <= self.limit
    }

    pub fn to_json(&self) -> Value {
        json!({
            "name": self.name,
            "seed": self.seed,
            "pass": self.pass(),
            "elapsed_ms": self.elapsed.as_secs_f64() * 1e3,
            "limit_ms": self.limit.as_secs_f64() * 1e3,
            "checks": self.checks.iter().map(|c| json!({
                "name": c.name,
                "measured": c.measured,
                "expected": c.expected,
                "pass": c.pass,
            })).collect::<Vec<_>>(),
        })
    }

    pub fn to_text(&self) -> String {
        let mut s = format!(
            "{} {} ({:.3} ms, limit {} ms)\n",
            if self.pass() { "PASS" } else { "FAIL" },
            self.name,
            self.elapsed.as_secs_f64() * 1e3,
            self.limit.as_millis()
        );
        for c in &self.checks {
            let _ = writeln!(
                s,
                "  {} {}: {} (expected {})",
                if c.pass { "ok  " } else { "FAIL" },
                c.name,
                c.measured,
                c.expected
            );
        }
        s
    }
}

fn timed<T>(f: impl FnOnce() -> Result<T>) -> Result<(T, Duration)> {
    let start = Instant::now();
    let v = f()?;
    Ok((v, start.elapsed()))
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

fn ints(a: &[i64], b: &[i64]) -> ExponentPair {
    ExponentPair::from_ints(a, b).expect("valid literal pair")
}

/// Runs the bundles behind `name`; `"all"` runs every bundle.
pub fn run(name: &str, seed: u64) -> Result<Option<Vec<Bundle>>> {
    Ok(Some(match name {
        "all" => {
            let mut out = Vec::new();
            for n in BUNDLES {
                out.extend(run(n, seed)?.expect("known bundle"));
            }
            out
        }
        "example-2.9" => vec![counterexample_values()?, counterexample_gram()?],
        "example-2.10" => vec![density_positivity_certificate()?],
        "remark-factorizations" => vec![factorization_reconstruction()?],
        "mcintosh" => vec![mcintosh(seed)?],
        "section-3" => vec![mixed_length_inequality(seed)?],
        "theorem-1.2-grid" => vec![single_pair_regions(seed)?],
        "infinite-divisibility" => vec![infinite_divisibility(seed)?],
        "density-reconstruction" => vec![density_reconstruction()?],
        "negative-controls" => vec![negative_controls(seed)?],
        _ => return Ok(None),
    }))
}

fn counterexample_pair() -> ExponentPair {
    ints(&[8, 6, 3], &[9, 4, 4])
}

/// Three values of the counterexample function.
pub fn counterexample_values() -> Result<Bundle> {
    let pair = counterexample_pair();
    let xs = [1.0 / 3.0, 2.0 / 3.0, 1.0];
    let reference = [0.978_019_294_0, 0.990_882_967_9, 0.998_184_616_7];
    let (values, elapsed) = timed(|| Ok(xs.map(|x| eval_h(&pair, x))))?;
    let labels = ["h(1/3)", "h(2/3)", "h(1)"];
    Ok(Bundle {
        name: "example-2.9/values",
        seed: None,
        checks: (0..3).map(|i| Check::close(labels[i], values[i], reference[i], 1e-9)).collect(),
        elapsed,
        limit: Duration::from_millis(1),
    })
}

/// The 4×4 Gram matrix at `{0, 1/3, 2/3, 1}`.
pub fn counterexample_gram() -> Result<Bundle> {
    let pair = counterexample_pair();
    let ratio = SinhRatio::from_pair(&pair);
    let ((report, witness), elapsed) = timed(|| {
        let report = gram_report(|x| ratio.eval(x), &[0.0, 1.0 / 3.0, 2.0 / 3.0, 1.0])?;
        let witness = gram_probe(|x| ratio.eval(x), &DEFAULT_SPACINGS, 16)?;
        Ok((report, witness))
    })?;
    let witness_size = witness.as_ref().map_or(0, |w| w.points.len());
    Ok(Bundle {
        name: "example-2.9/gram",
        seed: None,
        checks: vec![
            Check::close("determinant", report.determinant, -0.000_009_5, 1e-7),
            Check::holds(
                "min_eigenvalue",
                json!(report.min_eigenvalue),
                "< 0",
                report.min_eigenvalue < 0.0,
            ),
            Check::count("smallest probe witness size", witness_size, 4),
        ],
        elapsed,
        limit: Duration::from_millis(10),
    })
}

const WORKED_EXPANSION: [(i64, i64); 12] = [
    (103, 1),
    (83, 2),
    (77, 2),
    (49, 2),
    (43, 2),
    (101, -1),
    (95, -1),
    (67, -3),
    (65, -1),
    (61, -1),
    (59, -1),
    (25, -1),
];

/// Exact positivity certificate for the density of the worked example.
pub fn density_positivity_certificate() -> Result<Bundle> {
    let pair = ints(&[8, 6, 1], &[9, 4, 4]);
    let (cert, elapsed) = timed(|| density_certificate(&pair, Some(9)))?;
    let e = &cert.expansion;
    let expansion_matches = e.len() == WORKED_EXPANSION.len()
        && WORKED_EXPANSION
            .iter()
            .all(|&(w, c8)| e.coefficient(&q(w, 1)) == Some(&q(c8, 8)));
    let first_nine_nonneg = cert.certificate.coefficients[..9].iter().all(|c| !c.is_negative());
    let c9 = taylor_coefficient(e, 9) * q(8, 1);
    let ratio = to_f64(&(c9 / BigRational::from_integer(num_traits::pow(BigInt::from(103), 18))));
    let margin = to_f64(&cert.certificate.tail_bound);
    Ok(Bundle {
        name: "example-2.10",
        seed: None,
        checks: vec![
            Check::holds("substitution scale", crate::dto::rational(&cert.scale), "144", cert.scale == q(144, 1)),
            Check::holds(
                "12-term cosh expansion",
                crate::dto::expansion(e)["terms"].clone(),
                "(1,2,2,2,2,-1,-1,-3,-1,-1,-1,-1)/8 at (103,83,77,49,43,101,95,67,65,61,59,25)",
                expansion_matches,
            ),
            Check::holds(
                "c_0..c_8 >= 0",
                json!(first_nine_nonneg),
                "true",
                first_nine_nonneg,
            ),
            Check::at_least("c_9 / 103^18", ratio, 0.06),
            Check::close("dominance lower bound for c_9 / 103^18", margin, 0.062, 1e-3),
            Check::holds(
                "certificate at K = 9",
                json!(crate::dto::certificate_verdict(cert.certificate.verdict)),
                "certified",
                cert.certificate.verdict == CertificateVerdict::Certified && cert.certificate.checked_upto == 9,
            ),
        ],
        elapsed,
        limit: Duration::from_secs(1),
    })
}

fn quad(a: i64, c: i64, b: i64, d: i64) -> ElementaryFactor {
    ElementaryFactor::Quad {
        a: Exponent::integer(a),
        c: Exponent::integer(c),
        b: Exponent::integer(b),
        d: Exponent::integer(d),
    }
}

fn reconstruction_error(pair: &ExponentPair, factors: &[ElementaryFactor]) -> f64 {
    (0..=100)
        .map(|i| {
            let x = -5.0 + 0.1 * i as f64;
            let want = eval_h(pair, x);
            let got: f64 = factors.iter().map(|f| factor_value(f, x)).product();
            ((got - want) / want).abs()
        })
        .fold(0.0, f64::max)
}

/// Factorizations of two submajorized pairs, ours and the reference lists.
pub fn factorization_reconstruction() -> Result<Bundle> {
    let cases = [
        (ints(&[6, 5, 3], &[9, 4, 1]), vec![quad(6, 3, 1, 8), quad(5, 8, 4, 9)]),
        (ints(&[7, 5, 4], &[9, 6, 1]), vec![quad(7, 5, 3, 9), quad(4, 3, 1, 6)]),
    ];
    let (results, elapsed) = timed(|| {
        cases
            .iter()
            .map(|(pair, reference)| {
                let f = factorize_pair(pair)?;
                let ours = f.factors().to_vec();
                let e_ours = reconstruction_error(pair, &ours);
                let e_pub = reconstruction_error(pair, reference);
                Ok((ours, e_ours, e_pub))
            })
            .collect::<Result<Vec<_>>>()
    })?;
    let mut checks = Vec::new();
    for ((pair, reference), (ours, e_ours, e_pub)) in cases.iter().zip(&results) {
        let list = |t: &ExponentTuple| t.values().iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",");
        let label = format!("({})/({})", list(pair.alpha()), list(pair.beta()));
        let shown = |fs: &[ElementaryFactor]| fs.iter().map(|f| f.to_string()).collect::<Vec<_>>().join(" * ");
        checks.push(Check::holds(
            format!("{label} factors valid"),
            json!(shown(ours)),
            "every factor elementary",
            ours.iter().all(ElementaryFactor::is_valid),
        ));
        checks.push(Check::at_most(format!("{label} reconstruction"), *e_ours, 1e-11));
        checks.push(Check::holds(
            format!("{label} reference factors valid"),
            json!(shown(reference)),
            "every factor elementary",
            reference.iter().all(ElementaryFactor::is_valid),
        ));
        checks.push(Check::at_most(format!("{label} reference reconstruction"), *e_pub, 1e-11));
    }
    Ok(Bundle {
        name: "remark-factorizations",
        seed: None,
        checks,
        elapsed,
        limit: Duration::from_millis(10),
    })
}

fn max_entry_error(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    let scale = b.max_abs().max(1.0);
    a.as_slice()
        .iter()
        .zip(b.as_slice())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
        / scale
}

/// Geometric mean ≤ arithmetic mean for every Ky Fan norm.
pub fn mcintosh(seed: u64) -> Result<Bundle> {
    let geometric = ints(&[1], &[1]);
    let arithmetic = ints(&[2], &[1]);
    let ((run, geo_err, ari_err), elapsed) = timed(|| {
        let run = verify_parallel(&geometric, &arithmetic, 3, 100, seed)?;
        let (mut geo_err, mut ari_err) = (0.0f64, 0.0f64);
        for trial in 0..10 {
            let (h, k, x) = trial_inputs(3, seed, trial)?;
            let geo = mean_apply(&geometric, &h, &k, &x)?;
            let want = h.apply_fn(f64::sqrt).matmul(&x)?.matmul(&k.apply_fn(f64::sqrt))?;
            geo_err = geo_err.max(max_entry_error(&geo, &want));
            let ari = mean_apply(&arithmetic, &h, &k, &x)?;
            let want = h.matrix().matmul(&x)?.add(&x.matmul(k.matrix())?)?.scale(0.5);
            ari_err = ari_err.max(max_entry_error(&ari, &want));
        }
        Ok((run, geo_err, ari_err))
    })?;
    Ok(Bundle {
        name: "mcintosh",
        seed: Some(seed),
        checks: vec![
            Check::count("passing trials (N = 3)", run.reports.len() - run.failures(), 100),
            Check::at_most("H^1/2 X K^1/2 identity", geo_err, 1e-12),
            Check::at_most("(HX + XK)/2 identity", ari_err, 1e-12),
        ],
        elapsed,
        limit: Duration::from_secs(1),
    })
}

/// The three-versus-two exponent inequality.
pub fn mixed_length_inequality(seed: u64) -> Result<Bundle> {
    let lhs = ints(&[8, 7, 3], &[10, 6, 4]);
    let rhs = ints(&[9, 2], &[8, 5]);
    let (run, elapsed) = timed(|| verify_parallel(&lhs, &rhs, 4, 100, seed))?;
    Ok(Bundle {
        name: "section-3",
        seed: Some(seed),
        checks: vec![
            Check::holds("relation certified", json!(!run.exploratory), "true", !run.exploratory),
            Check::count("passing trials (N = 4)", run.reports.len() - run.failures(), 100),
            Check::at_least("min margin", run.min_margin(), -1e-10),
        ],
        elapsed,
        limit: Duration::from_secs(2),
    })
}

fn pair_of(a: &Exponent, b: &Exponent, c: &Exponent, d: &Exponent) -> Result<ExponentPair> {
    ExponentPair::new(
        ExponentTuple::new(vec![a.clone(), d.clone()])?,
        ExponentTuple::new(vec![b.clone(), c.clone()])?,
    )
}

fn sort2(x: &Exponent, y: &Exponent) -> (Exponent, Exponent) {
    if x >= y {
        (x.clone(), y.clone())
    } else {
        (y.clone(), x.clone())
    }
}

/// Signed distance to the boundary of the two-factor region:
/// `min(b₁ − a₁, b₁ + b₂ − a₁ − a₂)`.
fn region_margin(a: &Exponent, b: &Exponent, c: &Exponent, d: &Exponent) -> f64 {
    let (a1, a2) = sort2(a, d);
    let (b1, b2) = sort2(b, c);
    let first = (&b1 - &a1).to_f64();
    let sum = (&(&b1 + &b2) - &(&a1 + &a2)).to_f64();
    first.min(sum)
}

/// Single-pair regions against the two-factor reduction, plus Gram probes
/// on sampled points inside and well outside the region.
pub fn single_pair_regions(seed: u64) -> Result<Bundle> {
    let grid: Vec<Exponent> = (0..=8).map(|k| Exponent::ratio(k, 2).expect("nonzero denominator")).collect();
    let (stats, elapsed) = timed(|| {
        let mut points = Vec::new();
        let mut disagreements = 0usize;
        for a in &grid {
            for b in &grid {
                for c in &grid {
                    for d in &grid {
                        let (a1, a2) = sort2(a, d);
                        let (b1, b2) = sort2(b, c);
                        if classify_single(a, b, c, d)? != two_factor_criterion(&a1, &a2, &b1, &b2)? {
                            disagreements += 1;
                        }
                        points.push([a.clone(), b.clone(), c.clone(), d.clone()]);
                    }
                }
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let inside: Vec<_> = points
            .iter()
            .filter(|p| region_margin(&p[0], &p[1], &p[2], &p[3]) > 0.0)
            .collect();
        let outside: Vec<_> = points
            .iter()
            .filter(|p| region_margin(&p[0], &p[1], &p[2], &p[3]) <= -0.25)
            .collect();
        let mut inside_clean = 0usize;
        for p in inside.choose_multiple(&mut rng, 50) {
            let ratio = SinhRatio::from_pair(&pair_of(&p[0], &p[1], &p[2], &p[3])?);
            if gram_probe(|x| ratio.eval(x), &DEFAULT_SPACINGS, 16)?.is_none() {
                inside_clean += 1;
            }
        }
        let (mut necessary, mut sum_violating, mut sum_witnessed) = (0usize, 0usize, 0usize);
        for p in outside.choose_multiple(&mut rng, 50) {
            let pair = pair_of(&p[0], &p[1], &p[2], &p[3])?;
            let c = classify_with(pair.alpha(), pair.beta(), &ProbeOptions::disabled(), &mut Unlimited)?;
            if c.verdict == Verdict::NotPositiveDefinite
                && matches!(c.rule, Rule::SumCondition | Rule::MaxCondition)
            {
                necessary += 1;
            }
            if pair.alpha().sum() > pair.beta().sum() {
                sum_violating += 1;
                let ratio = SinhRatio::from_pair(&pair);
                if gram_probe(|x| ratio.eval(x), &DEFAULT_SPACINGS, 16)?.is_some() {
                    sum_witnessed += 1;
                }
            }
        }
        Ok((points.len(), disagreements, inside_clean, necessary, sum_violating, sum_witnessed))
    })?;
    let (total, disagreements, inside_clean, necessary, sum_violating, sum_witnessed) = stats;
    Ok(Bundle {
        name: "theorem-1.2-grid",
        seed: Some(seed),
        checks: vec![
            Check::holds("grid points", json!(total), "6561", total == 6561),
            Check::count("disagreements with two-factor reduction", disagreements, 0),
            Check::count("inside samples without Gram witness", inside_clean, 50),
            Check::count("outside samples caught by sum/max condition", necessary, 50),
            Check::count("sum-violating samples with Gram witness", sum_witnessed, sum_violating),
        ],
        elapsed,
        limit: Duration::from_secs(60),
    })
}

fn random_rational(rng: &mut ChaCha8Rng) -> Exponent {
    let den = rng.gen_range(1..=3);
    Exponent::ratio(rng.gen_range(0..=4 * den), den).expect("nonzero denominator")
}

fn random_submajorized_pair(rng: &mut ChaCha8Rng) -> Result<ExponentPair> {
    loop {
        let n = rng.gen_range(1..=4);
        let alpha = ExponentTuple::new((0..n).map(|_| random_rational(rng)).collect())?;
        let beta = ExponentTuple::new((0..n).map(|_| random_rational(rng)).collect())?;
        if weak_submajorize(&alpha, &beta)? {
            return ExponentPair::new(alpha, beta);
        }
    }
}

/// Powers `h^r` of submajorized pairs stay positive definite.
pub fn infinite_divisibility(seed: u64) -> Result<Bundle> {
    let powers = [0.5, 1.0, 2.0];
    let (stats, elapsed) = timed(|| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (mut matrices, mut violations, mut worst) = (0usize, 0usize, f64::INFINITY);
        for _ in 0..30 {
            let pair = random_submajorized_pair(&mut rng)?;
            let ratio = SinhRatio::from_pair(&pair);
            for r in powers {
                for _ in 0..20 {
                    let size = rng.gen_range(2..=6);
                    let points: Vec<f64> = (0..size).map(|_| rng.gen_range(-3.0..3.0)).collect();
                    let report = gram_report(|x| (r * ratio.ln_eval(x)).exp(), &points)?;
                    let normalized = report.min_eigenvalue / size as f64;
                    worst = worst.min(normalized);
                    matrices += 1;
                    if report.min_eigenvalue < -1e-9 * size as f64 {
                        violations += 1;
                    }
                }
            }
        }
        Ok((matrices, violations, worst))
    })?;
    let (matrices, violations, worst) = stats;
    Ok(Bundle {
        name: "infinite-divisibility",
        seed: Some(seed),
        checks: vec![
            Check::count("Gram matrices checked", matrices, 30 * 3 * 20),
            Check::count("min eigenvalue below -1e-9 n", violations, 0),
            Check::at_least("worst min eigenvalue / n", worst, -1e-9),
        ],
        elapsed,
        limit: Duration::from_secs(30),
    })
}

/// Lévy-density integrals against `log h`.
pub fn density_reconstruction() -> Result<Bundle> {
    let cases = [
        ("(8,6,1)/(9,4,4)", ints(&[8, 6, 1], &[9, 4, 4])),
        ("(5,8)/(4,9)", ints(&[5, 8], &[4, 9])),
    ];
    let xs = [0.25, 0.5, 1.0, 2.0];
    let (errors, elapsed) = timed(|| {
        let mut out = Vec::new();
        for (_, pair) in &cases {
            let d = CombinedDensity::from_pair(pair)?;
            let mut worst = 0.0f64;
            for x in xs {
                worst = worst.max((reconstruct_log_h(&d, x)? - eval_h(pair, x).ln()).abs());
            }
            out.push(worst);
        }
        Ok(out)
    })?;
    Ok(Bundle {
        name: "density-reconstruction",
        seed: None,
        checks: cases
            .iter()
            .zip(&errors)
            .map(|((label, _), e)| Check::at_most(format!("{label} max |error| at x in {{1/4,1/2,1,2}}"), *e, 1e-6))
            .collect(),
        elapsed,
        limit: Duration::from_secs(5),
    })
}

/// Pairs that must be rejected, and an inequality that must fail.
pub fn negative_controls(seed: u64) -> Result<Bundle> {
    let sum = ints(&[3], &[1]);
    let max = ints(&[3, 1], &[2, 2]);
    let (results, elapsed) = timed(|| {
        let c_sum = classify(sum.alpha(), sum.beta())?;
        let c_max = classify(max.alpha(), max.beta())?;
        let run = verify_parallel(&sum, &ints(&[1], &[1]), 2, 200, seed)?;
        Ok((c_sum, c_max, run))
    })?;
    let (c_sum, c_max, run) = results;
    let label = |c: &sinhmajor_core::classifier::Classification| json!(format!("{} via {}", c.verdict, c.rule));
    Ok(Bundle {
        name: "negative-controls",
        seed: Some(seed),
        checks: vec![
            Check::holds(
                "(3)/(1)",
                label(&c_sum),
                "not_positive_definite via sum_condition",
                c_sum.verdict == Verdict::NotPositiveDefinite && c_sum.rule == Rule::SumCondition,
            ),
            Check::holds(
                "(3,1)/(2,2)",
                label(&c_max),
                "not_positive_definite via max_condition",
                c_max.verdict == Verdict::NotPositiveDefinite && c_max.rule == Rule::MaxCondition,
            ),
            Check::holds("run is exploratory", json!(run.exploratory), "true", run.exploratory),
            Check::holds(
                "first violating trial (N = 2, 200 trials)",
                json!(run.first_failure()),
                "some trial",
                run.first_failure().is_some(),
            ),
        ],
        elapsed,
        limit: Duration::from_secs(5),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_bundle() {
        assert!(run("nope", 1).unwrap().is_none());
    }

    #[test]
    fn quick_bundles_pass() {
        for b in [counterexample_values().unwrap(), counterexample_gram().unwrap(), factorization_reconstruction().unwrap()] {
            assert!(b.pass(), "{}", b.to_text());
        }
    }

    #[test]
    fn region_margin_signs() {
        let e = |n| Exponent::integer(n);
        // (a, d) = (1, 1) against (b, c) = (2, 2)
        assert_eq!(region_margin(&e(1), &e(2), &e(2), &e(1)), 1.0);
        assert_eq!(region_margin(&e(3), &e(1), &e(1), &e(0)), -2.0);
    }
}
