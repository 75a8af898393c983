//! Lévy densities of sinh ratios.
//!
//! For `a, b > 0`,
//!
//! ```text
//! log(b sinh(ax) / (a sinh(bx))) = ∫ (cos(xt) − 1) D_{a,b}(t) dt,
//! D_{a,b}(t) = sinh((1/a − 1/b)πt/2) / (2t sinh(πt/2a) sinh(πt/2b)),
//! ```
//!
//! and `D_{a,b} ≥ 0` exactly when `a ≤ b`. Since `D_{a,b} = −D_{b,a}`, a
//! product of ratios has the signed sum of densities, independent of how
//! numerator and denominator frequencies are paired. Everything here works
//! with the regular function `G(t) = t² D(t)`, which tends to `(b − a)/π` at
//! the origin and decays like `t e^{−π|t|/max(a,b)}`.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_rational::BigRational;
#[allow(unused_imports)]
use num_traits::Float;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::expander::SinhProductTerm;
use crate::exponents::{sort_desc, Exponent, ExponentPair};
use crate::quadrature::integrate;

/// `t² D_{a,b}(t)`; even in `t`.
pub fn kosaki_t2(a: f64, b: f64, t: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    let t = t.abs();
    let big_a = PI * t / (2.0 * a);
    let big_b = PI * t / (2.0 * b);
    if t < 1e-2 * a.min(b) / PI {
        let d1 = big_b - big_a;
        let d3 = big_b.powi(3) - big_a.powi(3);
        let d5 = big_b.powi(5) - big_a.powi(5);
        return (b - a) / PI + t * d1 / 6.0 - t * d3 / 90.0 + t * d5 / 945.0;
    }
    // t sinh(A − B) / (2 sinh A sinh B), rewritten with decaying exponentials.
    let num = if big_b >= big_a {
        (-2.0 * big_a).exp() * (-2.0 * (big_b - big_a)).exp_m1()
    } else {
        -(-2.0 * big_b).exp() * (2.0 * (big_b - big_a)).exp_m1()
    };
    let den = (-2.0 * big_a).exp_m1() * (-2.0 * big_b).exp_m1();
    t * num / den
}

/// `D_{a,b}(t)`; infinite at `t = 0` unless `a = b`.
pub fn kosaki_density(a: f64, b: f64, t: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    if t == 0.0 {
        return if a < b { f64::INFINITY } else { f64::NEG_INFINITY };
    }
    kosaki_t2(a, b, t) / (t * t)
}

/// `sign · D_{a,b}`: the density of `sign · log(sinhc(ax) / sinhc(bx))`.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityTerm {
    a: Exponent,
    b: Exponent,
    sign: i8,
}

impl DensityTerm {
    pub fn new(a: Exponent, b: Exponent, sign: i8) -> Result<Self> {
        if !a.is_positive() || !b.is_positive() {
            return Err(Error::InvalidArgument("density parameters must be positive"));
        }
        if sign != 1 && sign != -1 {
            return Err(Error::InvalidArgument("density sign must be ±1"));
        }
        Ok(DensityTerm { a, b, sign })
    }

    pub fn from_f64(a: f64, b: f64, sign: i8) -> Result<Self> {
        Self::new(Exponent::real(a), Exponent::real(b), sign)
    }

    pub fn from_ints(a: i64, b: i64, sign: i8) -> Result<Self> {
        Self::new(Exponent::integer(a), Exponent::integer(b), sign)
    }

    pub fn a(&self) -> &Exponent {
        &self.a
    }

    pub fn b(&self) -> &Exponent {
        &self.b
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn eval_t2(&self, t: f64) -> f64 {
        f64::from(self.sign) * kosaki_t2(self.a.to_f64(), self.b.to_f64(), t)
    }

    pub fn eval(&self, t: f64) -> f64 {
        f64::from(self.sign) * kosaki_density(self.a.to_f64(), self.b.to_f64(), t)
    }

    /// Exponential decay rate `π / max(a, b)`.
    fn rate(&self) -> f64 {
        PI / self.a.to_f64().max(self.b.to_f64())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CombinedDensity {
    terms: Vec<DensityTerm>,
    regularized: bool,
}

impl CombinedDensity {
    pub fn new(terms: Vec<DensityTerm>) -> Self {
        let mut lead = Exponent::integer(0);
        for t in &terms {
            let d = &t.b - &t.a;
            lead = if t.sign > 0 { &lead + &d } else { &lead - &d };
        }
        let regularized = match lead {
            Exponent::Rational(r) => r.is_zero(),
            Exponent::Real(x) => {
                let scale: f64 = terms.iter().map(|t| t.a.to_f64() + t.b.to_f64()).sum();
                x.abs() <= 1e-12 * scale
            }
        };
        CombinedDensity { terms, regularized }
    }

    /// Density of `log h_{α,β}` using the sorted pairing `a_(i) ↔ b_(i)`.
    /// Matched zeros are dropped; any other zero exponent is unsupported.
    pub fn from_pair(pair: &ExponentPair) -> Result<Self> {
        let n = pair.abs_normalized();
        let mut a: Vec<Exponent> = n.alpha().values().to_vec();
        let mut b: Vec<Exponent> = n.beta().values().to_vec();
        sort_desc(&mut a);
        sort_desc(&mut b);
        let mut terms = Vec::new();
        for (x, y) in a.into_iter().zip(b) {
            if x == y {
                continue;
            }
            if x.is_zero() || y.is_zero() {
                return Err(Error::Unsupported("zero exponent in a density"));
            }
            terms.push(DensityTerm::new(x, y, 1)?);
        }
        Ok(Self::new(terms))
    }

    pub fn terms(&self) -> &[DensityTerm] {
        &self.terms
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// True when the `1/t²` singularities of the terms cancel.
    pub fn regularized(&self) -> bool {
        self.regularized
    }

    pub fn eval_t2(&self, t: f64) -> f64 {
        self.terms.iter().map(|d| d.eval_t2(t)).sum()
    }

    pub fn eval(&self, t: f64) -> f64 {
        if t == 0.0 {
            let g = self.eval_t2(0.0);
            return if self.regularized || g == 0.0 {
                self.limit_at_zero()
            } else {
                g.signum() * f64::INFINITY
            };
        }
        self.eval_t2(t) / (t * t)
    }

    /// Finite value at the origin of a regularized density: the `t²`
    /// coefficient of `t² D` summed over terms.
    fn limit_at_zero(&self) -> f64 {
        self.terms
            .iter()
            .map(|d| {
                let (a, b) = (d.a.to_f64(), d.b.to_f64());
                f64::from(d.sign) * PI * (1.0 / b - 1.0 / a) / 12.0
            })
            .sum()
    }

    /// Upper bound on `2∫_T^∞ |(cos(xt) − 1) D(t)| dt`, valid for
    /// `T ≥ max(a, b)` per term.
    fn tail_bound(&self, t_cut: f64) -> f64 {
        self.terms
            .iter()
            .map(|d| {
                let r = d.rate();
                16.0 * (-r * t_cut).exp() / (r * t_cut)
            })
            .sum()
    }

    fn min_cutoff(&self) -> f64 {
        self.terms
            .iter()
            .map(|d| d.a.to_f64().max(d.b.to_f64()))
            .fold(1.0, f64::max)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NonnegReport {
    pub nonnegative: bool,
    /// Minimum of `t² D(t)` over the grid.
    pub min_value: f64,
    pub min_location: f64,
    pub scale: f64,
}

/// Screens `t² D(t)` on a symmetric log-spaced grid over
/// `[−t_max, −t_max·1e−6] ∪ [t_max·1e−6, t_max]` plus the origin.
pub fn check_nonneg_grid(d: &CombinedDensity, t_max: f64, n_points: usize) -> Result<NonnegReport> {
    if n_points < 16 {
        return Err(Error::InvalidArgument("grid needs at least 16 points"));
    }
    if t_max.is_nan() || t_max <= 0.0 || !t_max.is_finite() {
        return Err(Error::InvalidArgument("grid extent must be positive"));
    }
    let half = n_points / 2;
    let mut pts = Vec::with_capacity(2 * half + 1);
    for i in (0..half).rev() {
        pts.push(-t_max * 10f64.powf(-6.0 + 6.0 * i as f64 / (half - 1) as f64));
    }
    pts.push(0.0);
    for i in 0..half {
        pts.push(t_max * 10f64.powf(-6.0 + 6.0 * i as f64 / (half - 1) as f64));
    }
    let mut min_value = 0.0;
    let mut min_location = 0.0;
    let mut scale = 0.0f64;
    let mut first = true;
    for &t in &pts {
        let v = d.eval_t2(t);
        let s: f64 = d.terms.iter().map(|term| term.eval_t2(t).abs()).sum();
        scale = scale.max(s);
        if first || v < min_value {
            min_value = v;
            min_location = t;
            first = false;
        }
    }
    if d.is_empty() {
        min_value = 0.0;
        min_location = 0.0;
    }
    Ok(NonnegReport {
        nonnegative: min_value >= -1e-12 * scale,
        min_value,
        min_location,
        scale,
    })
}

/// `(cos(xt) − 1)/t² = −(x²/2) sinc²(xt/2)`.
fn cos_kernel(x: f64, t: f64) -> f64 {
    let u = 0.5 * x * t;
    let s = if u.abs() < 1e-4 { 1.0 - u * u / 6.0 } else { u.sin() / u };
    -0.5 * x * x * s * s
}

/// `log h(x) = 2∫_0^∞ (cos(xt) − 1)/t² · t²D(t) dt` by adaptive quadrature
/// on `[0, T]`, doubling `T` until successive values agree to `1e−8` and the
/// analytic tail bound is below `1e−9`.
pub fn reconstruct_log_h(d: &CombinedDensity, x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::InvalidArgument("x must be finite"));
    }
    if x == 0.0 || d.is_empty() {
        return Ok(0.0);
    }
    let mut cut = d.min_cutoff();
    while d.tail_bound(cut) >= 1e-9 {
        cut *= 2.0;
    }
    let integrand = |t: f64| 2.0 * cos_kernel(x, t) * d.eval_t2(t);
    let panels = 4000;
    let mut prev = integrate(integrand, 0.0, cut, 1e-11, panels)?.value;
    for _ in 0..16 {
        cut *= 2.0;
        let next = integrate(integrand, 0.0, cut, 1e-11, panels)?.value;
        if (next - prev).abs() < 1e-8 {
            return Ok(next);
        }
        prev = next;
    }
    Err(Error::Quadrature { estimate: prev })
}

/// Numerator of the combined density over a common denominator:
///
/// ```text
/// D(t) = g(t) / (2t ∏_{ω∈Ω} sinh(ωπt)),   Ω = distinct {1/(2a), 1/(2b)},
/// ```
///
/// with `g` a signed sum of sinh products whose frequencies are rational
/// multiples of `π`. Since the denominator is positive for `t > 0` and `D`
/// is even, `D ≥ 0` everywhere iff `g(s) ≥ 0` for `s > 0`. Requires exact
/// parameters.
pub fn exact_numerator(d: &CombinedDensity) -> Result<Vec<SinhProductTerm>> {
    let exact = |e: &Exponent| -> Result<BigRational> {
        e.as_rational()
            .cloned()
            .ok_or(Error::Unsupported("exact density numerator needs rational parameters"))
    };
    let half = BigRational::new(1.into(), 2.into());
    let mut pairs = Vec::new();
    let mut common = BTreeSet::new();
    for term in &d.terms {
        let (a, b) = (exact(&term.a)?, exact(&term.b)?);
        if a == b {
            continue;
        }
        let fa = a.recip() * &half;
        let fb = b.recip() * &half;
        common.insert(fa.clone());
        common.insert(fb.clone());
        pairs.push((term.sign, fa, fb));
    }
    let mut out = Vec::with_capacity(pairs.len());
    for (sign, fa, fb) in pairs {
        // sinh((1/a − 1/b)πt/2) = ± sinh(|fa − fb| · 2 · πt / 2)
        let diff = &fa - &fb;
        let mut coefficient = if diff.is_positive() == (sign > 0) {
            BigRational::one()
        } else {
            -BigRational::one()
        };
        if diff.is_zero() {
            coefficient = BigRational::zero();
        }
        let mut freqs = alloc::vec![diff.abs()];
        freqs.extend(common.iter().filter(|w| **w != fa && **w != fb).cloned());
        out.push(SinhProductTerm::new(coefficient, freqs)?);
    }
    Ok(out)
}

/// Evaluates `g(t) / (2t ∏ sinh(ωπt))` for a numerator from
/// [`exact_numerator`]; used to cross-check the common-denominator form.
pub fn eval_from_numerator(numerator: &[SinhProductTerm], common: &[BigRational], t: f64) -> f64 {
    use num_traits::ToPrimitive;
    let g: f64 = numerator.iter().map(|term| term.eval(PI * t)).sum();
    let den: f64 = common
        .iter()
        .map(|w| (w.to_f64().unwrap_or(f64::NAN) * PI * t).sinh())
        .product();
    g / (2.0 * t * den)
}

/// The distinct half-reciprocal frequencies `1/(2a), 1/(2b)` of a density.
pub fn common_frequencies(d: &CombinedDensity) -> Result<Vec<BigRational>> {
    let mut set = BTreeSet::new();
    for term in &d.terms {
        let (Some(a), Some(b)) = (term.a.as_rational(), term.b.as_rational()) else {
            return Err(Error::Unsupported("exact density numerator needs rational parameters"));
        };
        if a == b {
            continue;
        }
        let half = BigRational::new(1.into(), 2.into());
        set.insert(a.recip() * &half);
        set.insert(b.recip() * half);
    }
    Ok(set.into_iter().collect())
}
