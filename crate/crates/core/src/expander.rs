//! Exact expansion of signed sums of sinh products into cosh (even factor
//! count) or sinh (odd factor count) sums over rational frequencies, and a
//! Taylor-coefficient certificate of nonnegativity.
//!
//! For a product of `n` factors,
//!
//! ```text
//! ∏ sinh(β_i s) = 2^{−n} Σ_{ε∈{±1}^n} (∏ε_i) e^{(ε·β) s},
//! ```
//!
//! and pairing `ε` with `−ε` folds the exponentials into `cosh` (n even) or
//! `sinh` (n odd). Frequencies are rational multiples of one symbolic unit;
//! only ratios matter for positivity.
//!
//! An even expansion `E(s) = Σ c_j cosh(ω_j s) = Σ_k C_k s^{2k}/(2k)!` with
//! `C_k = Σ c_j ω_j^{2k}` is nonnegative whenever every `C_k ≥ 0`. The
//! certificate checks `C_0..C_K` exactly and bounds the tail by dominance of
//! the largest frequency: if `1 − Σ_{c_j<0} (|c_j|/c_max)(ω_j/ω_max)^{2K} > 0`
//! then `C_k > 0` for all `k ≥ K`. Odd expansions use `ω^{2k+1}` and certify
//! `E(s) ≥ 0` for `s ≥ 0`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
#[allow(unused_imports)]
use num_traits::Float;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// `coefficient · ∏ sinh(ω_i s)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SinhProductTerm {
    coefficient: BigRational,
    frequencies: Vec<BigRational>,
}

impl SinhProductTerm {
    pub fn new(coefficient: BigRational, frequencies: Vec<BigRational>) -> Result<Self> {
        if frequencies.is_empty() {
            return Err(Error::InvalidArgument("sinh product needs at least one factor"));
        }
        if frequencies.iter().any(|f| !f.is_positive()) {
            return Err(Error::InvalidArgument("sinh frequencies must be positive"));
        }
        Ok(SinhProductTerm {
            coefficient,
            frequencies,
        })
    }

    pub fn from_ints(coefficient: i64, frequencies: &[i64]) -> Result<Self> {
        Self::new(
            int(coefficient),
            frequencies.iter().map(|&f| int(f)).collect(),
        )
    }

    pub fn coefficient(&self) -> &BigRational {
        &self.coefficient
    }

    pub fn frequencies(&self) -> &[BigRational] {
        &self.frequencies
    }

    pub fn factor_count(&self) -> usize {
        self.frequencies.len()
    }

    /// Direct floating-point evaluation.
    pub fn eval(&self, s: f64) -> f64 {
        let c = to_f64(&self.coefficient);
        self.frequencies.iter().fold(c, |acc, w| acc * (to_f64(w) * s).sinh())
    }
}

fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

fn rpow(r: &BigRational, e: u32) -> BigRational {
    BigRational::new_raw(
        num_traits::pow(r.numer().clone(), e as usize),
        num_traits::pow(r.denom().clone(), e as usize),
    )
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    /// `Σ c_j cosh(ω_j s)`
    Even,
    /// `Σ c_j sinh(ω_j s)`
    Odd,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CoshExpansion {
    parity: Parity,
    terms: BTreeMap<BigRational, BigRational>,
}

impl CoshExpansion {
    /// Builds an expansion from `(frequency, coefficient)` pairs, merging
    /// repeated frequencies and dropping zero coefficients.
    pub fn from_terms(parity: Parity, terms: impl IntoIterator<Item = (BigRational, BigRational)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (w, c) in terms {
            if w.is_negative() {
                return Err(Error::InvalidArgument("frequencies must be nonnegative"));
            }
            if parity == Parity::Odd && w.is_zero() {
                continue;
            }
            *map.entry(w).or_insert_with(BigRational::zero) += c;
        }
        map.retain(|_, c| !c.is_zero());
        Ok(CoshExpansion { parity, terms: map })
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, frequency: &BigRational) -> Option<&BigRational> {
        self.terms.get(frequency)
    }

    /// Terms by descending frequency.
    pub fn terms_desc(&self) -> impl Iterator<Item = (&BigRational, &BigRational)> {
        self.terms.iter().rev()
    }

    /// Largest frequency and its coefficient.
    pub fn leading(&self) -> Option<(&BigRational, &BigRational)> {
        self.terms.iter().next_back()
    }

    fn kernel(&self, x: f64) -> f64 {
        match self.parity {
            Parity::Even => x.cosh(),
            Parity::Odd => x.sinh(),
        }
    }

    pub fn eval(&self, s: f64) -> f64 {
        self.terms.iter().map(|(w, c)| to_f64(c) * self.kernel(to_f64(w) * s)).sum()
    }

    /// `E(s) / k(ω_max s)` for `s > 0` (and `s = 0` in the even case), where
    /// `k` is cosh or sinh. Avoids overflow at large `ω s`; the sign of `E`
    /// is preserved. Returns `(value, Σ |c_j| k(ω_j s)/k(ω_max s))`.
    pub fn eval_scaled(&self, s: f64) -> (f64, f64) {
        let Some((wmax, _)) = self.leading() else {
            return (0.0, 0.0);
        };
        let b = to_f64(wmax) * s.abs();
        let ratio = |a: f64| -> f64 {
            match self.parity {
                Parity::Even => (a - b).exp() * (1.0 + (-2.0 * a).exp()) / (1.0 + (-2.0 * b).exp()),
                Parity::Odd => {
                    if b == 0.0 {
                        0.0
                    } else if a == b {
                        1.0
                    } else {
                        (a - b).exp() * (-(-2.0 * a).exp_m1()) / (-(-2.0 * b).exp_m1())
                    }
                }
            }
        };
        let sign = if self.parity == Parity::Odd && s < 0.0 { -1.0 } else { 1.0 };
        let mut value = 0.0;
        let mut scale = 0.0;
        for (w, c) in &self.terms {
            let r = ratio(to_f64(w) * s.abs());
            let c = to_f64(c);
            value += c * r;
            scale += c.abs() * r;
        }
        (sign * value, scale)
    }
}

/// Substitutes `s → s·scale` so that every frequency becomes a positive
/// integer with overall gcd 1. Returns `scale` and the rescaled terms.
pub fn rescale_to_integers(terms: &[SinhProductTerm]) -> Result<(BigRational, Vec<SinhProductTerm>)> {
    if terms.is_empty() {
        return Err(Error::InvalidArgument("no terms to rescale"));
    }
    let mut lcm = BigInt::one();
    for w in terms.iter().flat_map(|t| &t.frequencies) {
        lcm = lcm.lcm(w.denom());
    }
    let mut gcd = BigInt::zero();
    for w in terms.iter().flat_map(|t| &t.frequencies) {
        let m = (w * BigRational::from_integer(lcm.clone())).to_integer();
        gcd = gcd.gcd(&m);
    }
    let scale = BigRational::new(lcm, gcd);
    let rescaled = terms
        .iter()
        .map(|t| SinhProductTerm {
            coefficient: t.coefficient.clone(),
            frequencies: t.frequencies.iter().map(|w| w * &scale).collect(),
        })
        .collect();
    Ok((scale, rescaled))
}

/// Exact expansion of `Σ_terms coefficient · ∏ sinh(ω_i s)`.
pub fn expand(terms: &[SinhProductTerm]) -> Result<CoshExpansion> {
    let first = terms
        .first()
        .ok_or(Error::InvalidArgument("no terms to expand"))?;
    let parity = if first.factor_count() % 2 == 0 {
        Parity::Even
    } else {
        Parity::Odd
    };
    if terms.iter().any(|t| (t.factor_count() % 2 == 0) != (parity == Parity::Even)) {
        return Err(Error::MixedParity);
    }

    let mut acc: BTreeMap<BigRational, BigRational> = BTreeMap::new();
    for term in terms {
        let n = term.factor_count();
        if n > 30 {
            return Err(Error::Unsupported("more than 30 sinh factors in one term"));
        }
        // ε_1 = +1 fixed; the partner −ε doubles each contribution.
        let weight = &term.coefficient / BigRational::from_integer(BigInt::from(1u64) << (n - 1));
        let (head, rest) = term.frequencies.split_first().expect("non-empty");
        for mask in 0u64..(1u64 << (n - 1)) {
            let mut w = head.clone();
            let mut negative = false;
            for (i, f) in rest.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    w -= f;
                    negative = !negative;
                } else {
                    w += f;
                }
            }
            let mut c = if negative { -weight.clone() } else { weight.clone() };
            if w.is_negative() {
                w = -w;
                if parity == Parity::Odd {
                    c = -c;
                }
            }
            if parity == Parity::Odd && w.is_zero() {
                continue;
            }
            *acc.entry(w).or_insert_with(BigRational::zero) += c;
        }
    }
    acc.retain(|_, c| !c.is_zero());
    Ok(CoshExpansion { parity, terms: acc })
}

fn power_for(parity: Parity, k: u32) -> u32 {
    match parity {
        Parity::Even => 2 * k,
        Parity::Odd => 2 * k + 1,
    }
}

/// `C_k = Σ c_j ω_j^{2k}` (even) or `Σ c_j ω_j^{2k+1}` (odd); the factorial
/// of the Taylor series is omitted.
pub fn taylor_coefficient(e: &CoshExpansion, k: u32) -> BigRational {
    let p = power_for(e.parity, k);
    e.terms
        .iter()
        .fold(BigRational::zero(), |acc, (w, c)| acc + c * rpow(w, p))
}

/// Normalized dominance margin at order `k`:
/// `1 − Σ_{c_j<0} (|c_j|/c_max)(ω_j/ω_max)^{p}`. `None` when the leading
/// coefficient is not positive, in which case dominance cannot apply.
pub fn dominance_margin(e: &CoshExpansion, k: u32) -> Option<BigRational> {
    let Some((wmax, cmax)) = e.leading() else {
        return Some(BigRational::one());
    };
    if !cmax.is_positive() {
        return None;
    }
    let p = power_for(e.parity, k);
    let mut margin = BigRational::one();
    for (w, c) in e.terms.iter().filter(|(_, c)| c.is_negative()) {
        margin -= (-c / cmax) * rpow(&(w / wmax), p);
    }
    Some(margin)
}

/// `max(16, K_min + 2)` where `K_min` is the smallest order at which the
/// dominance margin is positive.
pub fn default_order(e: &CoshExpansion) -> u32 {
    const FLOOR: u32 = 16;
    let Some((wmax, cmax)) = e.leading() else {
        return FLOOR;
    };
    if !cmax.is_positive() {
        return FLOOR;
    }
    let wmax = to_f64(wmax);
    let cmax = to_f64(cmax);
    let negatives: Vec<(f64, f64)> = e
        .terms
        .iter()
        .filter(|(_, c)| c.is_negative())
        .map(|(w, c)| ((-to_f64(c) / cmax).ln(), (to_f64(w) / wmax).ln()))
        .collect();
    let estimate = (1..=100_000u32).find(|&k| {
        let p = power_for(e.parity, k) as f64;
        let s: f64 = negatives.iter().map(|(lc, lr)| (lc + p * lr).exp()).sum();
        s < 1.0 - 1e-12
    });
    let Some(mut k) = estimate else {
        return FLOOR;
    };
    for _ in 0..64 {
        if dominance_margin(e, k).is_some_and(|m| m.is_positive()) {
            break;
        }
        k += 1;
    }
    FLOOR.max(k + 2)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CertificateVerdict {
    /// `C_k ≥ 0` for every `k`: the expansion is nonnegative.
    Certified,
    /// Some `C_k < 0` with `k ≤ K`. The Taylor route fails; this alone does
    /// not prove the expansion takes negative values.
    Refuted,
    /// All checked `C_k ≥ 0` but the tail bound did not close.
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PositivityCertificate {
    pub checked_upto: u32,
    /// `C_0..C_K`.
    pub coefficients: Vec<BigRational>,
    /// Normalized dominance margin at `K`; for a non-positive leading
    /// coefficient this holds that coefficient instead (≤ 0).
    pub tail_bound: BigRational,
    pub verdict: CertificateVerdict,
    pub refutation_index: Option<u32>,
}

pub fn certify_nonnegative(e: &CoshExpansion, order: u32) -> Result<PositivityCertificate> {
    if order < 1 {
        return Err(Error::InvalidArgument("certificate order must be at least 1"));
    }
    let coefficients: Vec<BigRational> = (0..=order).map(|k| taylor_coefficient(e, k)).collect();
    let refutation_index = coefficients.iter().position(|c| c.is_negative()).map(|i| i as u32);
    let tail_bound = match dominance_margin(e, order) {
        Some(m) => m,
        None => e.leading().map(|(_, c)| c.clone()).unwrap_or_else(BigRational::zero),
    };
    let verdict = if refutation_index.is_some() {
        CertificateVerdict::Refuted
    } else if tail_bound.is_positive() {
        CertificateVerdict::Certified
    } else {
        CertificateVerdict::Inconclusive
    };
    Ok(PositivityCertificate {
        checked_upto: order,
        coefficients,
        tail_bound,
        verdict,
        refutation_index,
    })
}
