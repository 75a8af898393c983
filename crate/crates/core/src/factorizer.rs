//! Decomposition of a submajorized sinh ratio `h_{α,β}` into elementary
//! infinitely divisible factors.
//!
//! Two kinds of factor are used:
//!
//! * `b sinh(ax) / (a sinh(bx))` with `a ≤ b`,
//! * `sinh(ax) sinh(cx) / (sinh(bx) sinh(dx))`, normalized to 1 at 0, with
//!   `d > max{a, b, c}` and `a + c = b + d`.
//!
//! Both sort tuples descending and repeatedly take the first slot `j` with
//! `a_j > b_j`. The factor
//! `sinh(a_j x) sinh(e x) / (sinh(b_{j−1} x) sinh(b_j x))` with
//! `e = b_{j−1} + b_j − a_j` is split off, `b_{j−1}` is replaced by `e`, and
//! `a_j`, `b_j` are removed. When no slot is violated the remaining pairs are
//! simple ratios.

use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::exponents::{first_prefix_violation, sort_desc, Exponent, ExponentPair, ExponentTuple};
use crate::scalarfn::SinhRatio;

#[derive(Clone, Debug, PartialEq)]
pub enum ElementaryFactor {
    /// `sinhc(ax) / sinhc(bx)`, `a ≤ b`.
    SimpleRatio { a: Exponent, b: Exponent },
    /// `sinhc(ax) sinhc(cx) / (sinhc(bx) sinhc(dx))`, `d` the dominant
    /// denominator frequency.
    Quad {
        a: Exponent,
        c: Exponent,
        b: Exponent,
        d: Exponent,
    },
}

impl ElementaryFactor {
    pub fn numerator(&self) -> Vec<Exponent> {
        match self {
            ElementaryFactor::SimpleRatio { a, .. } => alloc::vec![a.clone()],
            ElementaryFactor::Quad { a, c, .. } => alloc::vec![a.clone(), c.clone()],
        }
    }

    pub fn denominator(&self) -> Vec<Exponent> {
        match self {
            ElementaryFactor::SimpleRatio { b, .. } => alloc::vec![b.clone()],
            ElementaryFactor::Quad { b, d, .. } => alloc::vec![b.clone(), d.clone()],
        }
    }

    pub fn ratio(&self) -> SinhRatio {
        let f = |v: Vec<Exponent>| v.iter().map(Exponent::to_f64).collect();
        SinhRatio::new(f(self.numerator()), f(self.denominator()))
    }

    /// `a = b` for a simple ratio; float exponents within `1e−12` relative.
    pub fn is_unit(&self) -> bool {
        match self {
            ElementaryFactor::SimpleRatio { a: Exponent::Rational(a), b: Exponent::Rational(b) } => a == b,
            ElementaryFactor::SimpleRatio { a, b } => {
                let (a, b) = (a.to_f64(), b.to_f64());
                (a - b).abs() <= 1e-12 * a.abs().max(b.abs())
            }
            ElementaryFactor::Quad { .. } => false,
        }
    }

    /// Whether the factor satisfies the condition of its kind.
    pub fn is_valid(&self) -> bool {
        match self {
            ElementaryFactor::SimpleRatio { a, b } => a.to_f64().is_nan() || a.to_f64() >= 0.0 && a <= b,
            ElementaryFactor::Quad { a, c, b, d } => quad_condition(a, c, b, d),
        }
    }
}

impl fmt::Display for ElementaryFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ElementaryFactor::SimpleRatio { a, b } => write!(f, "SimpleRatio({a},{b})"),
            ElementaryFactor::Quad { a, c, b, d } => write!(f, "Quad({a},{c};{b},{d})"),
        }
    }
}

fn quad_condition(a: &Exponent, c: &Exponent, b: &Exponent, d: &Exponent) -> bool {
    let nonneg = [a, b, c, d].iter().all(|v| v.to_f64().is_nan() || v.to_f64() >= 0.0);
    let dominant = d > a && d > b && d > c;
    let balanced = match (a, c, b, d) {
        (Exponent::Rational(_), Exponent::Rational(_), Exponent::Rational(_), Exponent::Rational(_)) => {
            (a + c) == (b + d)
        }
        _ => {
            let (l, r) = ((a + c).to_f64(), (b + d).to_f64());
            (l - r).abs() <= 1e-12 * l.abs().max(r.abs())
        }
    };
    nonneg && dominant && balanced
}

/// Whether `sinh(ax) sinh(cx) / (sinh(bx) sinh(dx))` satisfies the
/// elementary-factor condition once the larger denominator frequency is
/// called `d`: `d > max{a, b, c}` and `a + c = b + d` (relative `1e−12`).
pub fn lemma23_check(a: f64, c: f64, b: f64, d: f64) -> bool {
    let (b, d) = if b > d { (d, b) } else { (b, d) };
    quad_condition(&Exponent::real(a), &Exponent::real(c), &Exponent::real(b), &Exponent::real(d))
}

/// Exact variant of [`lemma23_check`].
pub fn lemma23_check_exact(a: &Exponent, c: &Exponent, b: &Exponent, d: &Exponent) -> bool {
    let (b, d) = if b > d { (d, b) } else { (b, d) };
    quad_condition(a, c, b, d)
}

/// Value of the factor at `x`, normalized so that it is 1 at `x = 0`.
pub fn factor_value(f: &ElementaryFactor, x: f64) -> f64 {
    f.ratio().eval(x)
}

#[derive(Clone, Debug, PartialEq)]
pub struct Factorization {
    factors: Vec<ElementaryFactor>,
    source: ExponentPair,
}

impl Factorization {
    pub fn factors(&self) -> &[ElementaryFactor] {
        &self.factors
    }

    /// The abs-normalized pair that was factorized.
    pub fn source(&self) -> &ExponentPair {
        &self.source
    }

    /// Product of the factor values.
    pub fn eval(&self, x: f64) -> f64 {
        self.factors.iter().map(|f| factor_value(f, x)).product()
    }
}

/// Factorizes `h_{α,β}`. Requires `|α| ⪯_w |β|`.
pub fn factorize(alpha: &ExponentTuple, beta: &ExponentTuple) -> Result<Factorization> {
    if let Some(prefix) = first_prefix_violation(alpha, beta)? {
        return Err(Error::NotSubmajorized { prefix });
    }
    let source = ExponentPair::new(alpha.abs_normalize(), beta.abs_normalize())?;
    let mut a: Vec<Exponent> = source.alpha().values().to_vec();
    let mut b: Vec<Exponent> = source.beta().values().to_vec();
    drop_matched_zeros(&mut a, &mut b);

    let mut factors = Vec::new();
    loop {
        sort_desc(&mut a);
        sort_desc(&mut b);
        let Some(j) = a.iter().zip(&b).position(|(x, y)| x > y) else {
            for (x, y) in a.drain(..).zip(b.drain(..)) {
                factors.push(ElementaryFactor::SimpleRatio { a: x, b: y });
            }
            break;
        };
        if j == 0 {
            return Err(Error::NotSubmajorized { prefix: 1 });
        }
        let aj = a.remove(j);
        let bj = b.remove(j);
        let e = &(&b[j - 1] + &bj) - &aj;
        if aj == b[j - 1] {
            // The quotient collapses to 1 · sinhc(b_j x)/sinhc(b_j x).
            factors.push(ElementaryFactor::SimpleRatio {
                a: aj,
                b: b[j - 1].clone(),
            });
            factors.push(ElementaryFactor::SimpleRatio { a: e.clone(), b: bj });
        } else {
            factors.push(ElementaryFactor::Quad {
                a: aj,
                c: e.clone(),
                b: bj,
                d: b[j - 1].clone(),
            });
        }
        b[j - 1] = e;
    }
    factors.retain(|f| !f.is_unit());
    Ok(Factorization { factors, source })
}

pub fn factorize_pair(pair: &ExponentPair) -> Result<Factorization> {
    factorize(pair.alpha(), pair.beta())
}

/// Removes slots where both tuples (sorted descending) hold a zero.
fn drop_matched_zeros(a: &mut Vec<Exponent>, b: &mut Vec<Exponent>) {
    let za = a.iter().filter(|v| v.is_zero()).count();
    let zb = b.iter().filter(|v| v.is_zero()).count();
    let k = za.min(zb).min(a.len() - 1);
    for v in [a, b] {
        for _ in 0..k {
            let i = v.iter().position(Exponent::is_zero).expect("counted");
            v.remove(i);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalarfn::eval_h;
    use alloc::string::ToString;
    use proptest::prelude::*;

    fn pair(a: &[i64], b: &[i64]) -> ExponentPair {
        ExponentPair::from_ints(a, b).unwrap()
    }

    fn fac(a: &[i64], b: &[i64]) -> Factorization {
        factorize_pair(&pair(a, b)).unwrap()
    }

    fn int(n: i64) -> Exponent {
        Exponent::integer(n)
    }

    fn quad(a: i64, c: i64, b: i64, d: i64) -> ElementaryFactor {
        ElementaryFactor::Quad {
            a: int(a),
            c: int(c),
            b: int(b),
            d: int(d),
        }
    }

    fn check_reconstruction(p: &ExponentPair, f: &Factorization) {
        for i in 0..=100 {
            let x = -5.0 + 0.1 * i as f64;
            if x.abs() < 1e-12 {
                continue;
            }
            let want = eval_h(p, x);
            let got = f.eval(x);
            assert!((got - want).abs() <= 1e-11 * want, "x = {x}: {got} vs {want}");
        }
    }

    /// Multiset comparison of numerator and denominator frequencies.
    fn same_quotient(f: &ElementaryFactor, num: [i64; 2], den: [i64; 2]) -> bool {
        let sorted = |mut v: Vec<f64>| {
            v.sort_by(f64::total_cmp);
            v
        };
        let n = sorted(f.numerator().iter().map(Exponent::to_f64).collect());
        let d = sorted(f.denominator().iter().map(Exponent::to_f64).collect());
        n == sorted(num.iter().map(|&v| v as f64).collect()) && d == sorted(den.iter().map(|&v| v as f64).collect())
    }

    #[test]
    fn first_reference_factorization() {
        let p = pair(&[6, 5, 3], &[9, 4, 1]);
        let f = factorize_pair(&p).unwrap();
        assert_eq!(f.factors(), &[quad(5, 8, 4, 9), quad(3, 6, 1, 8)]);
        assert!(same_quotient(&f.factors()[0], [5, 8], [9, 4]));
        assert!(same_quotient(&f.factors()[1], [6, 3], [8, 1]));
        check_reconstruction(&p, &f);
    }

    #[test]
    fn second_reference_factorization() {
        let p = pair(&[7, 5, 4], &[9, 6, 1]);
        let f = factorize_pair(&p).unwrap();
        assert_eq!(f.factors().len(), 2);
        assert!(same_quotient(&f.factors()[0], [4, 3], [6, 1]));
        assert!(same_quotient(&f.factors()[1], [7, 5], [9, 3]));
        check_reconstruction(&p, &f);
    }

    #[test]
    fn componentwise_dominated() {
        let f = fac(&[1, 1], &[2, 1]);
        assert_eq!(
            f.factors(),
            &[ElementaryFactor::SimpleRatio { a: int(1), b: int(2) }]
        );
        let f = fac(&[3, 3], &[3, 3]);
        assert!(f.factors().is_empty());
        assert_eq!(f.eval(2.0), 1.0);
    }

    #[test]
    fn not_submajorized() {
        let err = factorize_pair(&pair(&[8, 6, 3], &[9, 4, 4])).unwrap_err();
        assert_eq!(err, Error::NotSubmajorized { prefix: 2 });
        let err = factorize_pair(&pair(&[3, 1], &[2, 2])).unwrap_err();
        assert_eq!(err, Error::NotSubmajorized { prefix: 1 });
    }

    #[test]
    fn signs_and_order_are_irrelevant() {
        let p = pair(&[-3, 6, -5], &[1, -9, 4]);
        let f = factorize_pair(&p).unwrap();
        assert_eq!(f.factors(), fac(&[6, 5, 3], &[9, 4, 1]).factors());
        check_reconstruction(&p, &f);
    }

    #[test]
    fn degenerate_quad_splits_into_units() {
        // Slot 3 is violated with a_3 = b_2 = 5, so the step quotient is 1.
        let p = pair(&[6, 5, 5], &[9, 5, 3]);
        let f = factorize_pair(&p).unwrap();
        assert_eq!(
            f.factors(),
            &[quad(5, 7, 3, 9), ElementaryFactor::SimpleRatio { a: int(6), b: int(7) }]
        );
        check_reconstruction(&p, &f);
    }

    fn weak_ok(p: &ExponentPair) -> bool {
        crate::exponents::weak_submajorize(p.alpha(), p.beta()).unwrap()
    }

    #[test]
    fn zeros() {
        let p = pair(&[2, 1], &[3, 0]);
        let f = factorize_pair(&p).unwrap();
        assert_eq!(f.factors(), &[quad(1, 2, 0, 3)]);
        check_reconstruction(&p, &f);
        let p = pair(&[0, 0, 2], &[0, 3, 0]);
        let f = factorize_pair(&p).unwrap();
        assert_eq!(f.factors(), &[ElementaryFactor::SimpleRatio { a: int(2), b: int(3) }]);
        let p = pair(&[0], &[0]);
        assert!(factorize_pair(&p).unwrap().factors().is_empty());
    }

    #[test]
    fn float_inputs() {
        let p = ExponentPair::from_f64s(&[0.6, 0.5, 0.3], &[0.9, 0.4, 0.1]).unwrap();
        let f = factorize_pair(&p).unwrap();
        assert_eq!(f.factors().len(), 2);
        assert!(f.factors().iter().all(ElementaryFactor::is_valid));
        check_reconstruction(&p, &f);
    }

    #[test]
    fn quad_condition_examples() {
        assert!(lemma23_check(6.0, 3.0, 1.0, 8.0));
        assert!(lemma23_check(6.0, 3.0, 8.0, 1.0));
        assert!(lemma23_check(5.0, 8.0, 4.0, 9.0));
        assert!(!lemma23_check(2.0, 2.0, 1.0, 2.0));
        assert!(!lemma23_check(9.0, 3.0, 4.0, 8.0));
        assert!(lemma23_check_exact(&int(6), &int(3), &int(1), &int(8)));
    }

    #[test]
    fn factor_values() {
        let s = ElementaryFactor::SimpleRatio { a: int(1), b: int(2) };
        assert_eq!(factor_value(&s, 0.0), 1.0);
        assert!((factor_value(&s, 1.0) - 0.6480542736638855).abs() < 1e-15);
        let q = quad(6, 3, 1, 8);
        assert_eq!(factor_value(&q, 0.0), 1.0);
        let direct = 8.0 * 6f64.sinh() * 3f64.sinh() / (18.0 * 1f64.sinh() * 8f64.sinh());
        assert!((factor_value(&q, 1.0) - direct).abs() < 1e-14 * direct);
        assert!(factor_value(&q, 400.0).is_finite());
        assert_eq!(q.to_string(), "Quad(6,3;1,8)");
    }

    fn submajorized_pair() -> impl Strategy<Value = ExponentPair> {
        (1usize..=6)
            .prop_flat_map(|n| (prop::collection::vec(0i64..=12, n), prop::collection::vec(0i64..=12, n)))
            .prop_filter_map("needs |α| ⪯_w |β|", |(a, b)| {
                let p = ExponentPair::from_ints(&a, &b).ok()?;
                weak_ok(&p).then_some(p)
            })
    }

    proptest! {
        #[test]
        fn reconstruction(p in submajorized_pair()) {
            let f = factorize_pair(&p).unwrap();
            prop_assert!(f.factors().len() < 2 * p.len());
            for factor in f.factors() {
                prop_assert!(factor.is_valid(), "{}", factor);
            }
            for i in 0..=100 {
                let x = -5.0 + 0.1 * i as f64;
                if x.abs() < 1e-12 {
                    continue;
                }
                let want = eval_h(&p, x);
                prop_assert!((f.eval(x) - want).abs() <= 1e-11 * want);
            }
        }

        #[test]
        fn dominated_inputs_give_simple_ratios(
            a in prop::collection::vec(0i64..=10, 1..=6),
            extra in prop::collection::vec(0i64..=5, 6),
        ) {
            let mut a = a;
            a.sort_unstable_by(|x, y| y.cmp(x));
            let b: Vec<i64> = a.iter().zip(&extra).map(|(x, e)| x + e).collect();
            let f = fac(&a, &b);
            let simple = f.factors().iter().all(|f| matches!(f, ElementaryFactor::SimpleRatio { .. }));
            prop_assert!(simple);
        }
    }
}
