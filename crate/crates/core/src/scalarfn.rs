//! Evaluation of `f_{α,β}`, the reduced even function
//! `h(x) = ∏ b_i sinh(a_i x) / (a_i sinh(b_i x))` and the mean `M_{α,β}(s, t)`.
//!
//! Everything goes through `x = log(t) / 2` and the kernel `sinhc(y) =
//! sinh(y) / y`, since `b sinh(a x) / (a sinh(b x)) = sinhc(a x) / sinhc(b x)`.
//! A zero exponent contributes `sinhc(0) = 1`, which is the `(t^a − 1)/a =
//! log t` convention.

use alloc::vec::Vec;
use core::f64::consts::LN_2;

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::exponents::ExponentPair;

const LOG_SPACE_THRESHOLD: f64 = 700.0;

/// `sinh(y) / y`, equal to 1 at `y = 0`.
pub fn sinhc(y: f64) -> f64 {
    let y = y.abs();
    if y < 1e-2 {
        let y2 = y * y;
        1.0 + y2 / 6.0 * (1.0 + y2 / 20.0 * (1.0 + y2 / 42.0))
    } else {
        y.sinh() / y
    }
}

/// `log(sinh(y) / y)`, finite for every finite `y`.
pub fn ln_sinhc(y: f64) -> f64 {
    let y = y.abs();
    if y < 1e-2 {
        let y2 = y * y;
        (y2 / 6.0 * (1.0 + y2 / 20.0 * (1.0 + y2 / 42.0))).ln_1p()
    } else if y < 20.0 {
        (y.sinh() / y).ln()
    } else {
        y - LN_2 + (-(-2.0 * y).exp()).ln_1p() - y.ln()
    }
}

/// A point where `f` may be evaluated: either the mean argument `t > 0` or
/// the log-half coordinate `x` with `t = e^{2x}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum EvalPoint {
    T(f64),
    X(f64),
}

impl EvalPoint {
    pub fn from_t(t: f64) -> Result<Self> {
        if t.is_nan() || t <= 0.0 || !t.is_finite() {
            return Err(Error::InvalidArgument("t must be positive and finite"));
        }
        Ok(EvalPoint::T(t))
    }

    pub fn from_x(x: f64) -> Result<Self> {
        if !x.is_finite() {
            return Err(Error::InvalidArgument("x must be finite"));
        }
        Ok(EvalPoint::X(x))
    }

    pub fn x(&self) -> f64 {
        match *self {
            EvalPoint::T(t) => t.ln() / 2.0,
            EvalPoint::X(x) => x,
        }
    }

    pub fn t(&self) -> f64 {
        match *self {
            EvalPoint::T(t) => t,
            EvalPoint::X(x) => (2.0 * x).exp(),
        }
    }
}

/// Precomputed `h(x) = ∏ sinhc(a_i x) / ∏ sinhc(b_i x)` over absolute
/// exponent values. Numerator and denominator lengths may differ, which is
/// how quotients `h_{α,β} / h_{α',β'}` are represented.
#[derive(Clone, Debug, PartialEq)]
pub struct SinhRatio {
    num: Vec<f64>,
    den: Vec<f64>,
    max_freq: f64,
}

impl SinhRatio {
    pub fn new(num: Vec<f64>, den: Vec<f64>) -> Self {
        let num: Vec<f64> = num.into_iter().map(f64::abs).collect();
        let den: Vec<f64> = den.into_iter().map(f64::abs).collect();
        let max_freq = num.iter().chain(&den).fold(0.0, |m: f64, &v| m.max(v));
        SinhRatio { num, den, max_freq }
    }

    pub fn from_pair(pair: &ExponentPair) -> Self {
        Self::new(pair.alpha().to_f64_vec(), pair.beta().to_f64_vec())
    }

    pub fn numerator(&self) -> &[f64] {
        &self.num
    }

    pub fn denominator(&self) -> &[f64] {
        &self.den
    }

    pub fn ln_eval(&self, x: f64) -> f64 {
        let n: f64 = self.num.iter().map(|&a| ln_sinhc(a * x)).sum();
        let d: f64 = self.den.iter().map(|&b| ln_sinhc(b * x)).sum();
        n - d
    }

    pub fn eval(&self, x: f64) -> f64 {
        if x == 0.0 {
            return 1.0;
        }
        if self.max_freq * x.abs() > LOG_SPACE_THRESHOLD {
            return self.ln_eval(x).exp();
        }
        let mut v = 1.0;
        let mut i = 0;
        while i < self.num.len() || i < self.den.len() {
            if let Some(&a) = self.num.get(i) {
                v *= sinhc(a * x);
            }
            if let Some(&b) = self.den.get(i) {
                v /= sinhc(b * x);
            }
            i += 1;
        }
        if v.is_finite() && v > 0.0 {
            v
        } else {
            self.ln_eval(x).exp()
        }
    }
}

/// `h_{α,β}(x) = ∏ b_i sinh(a_i x) / (a_i sinh(b_i x))`; even, `h(0) = 1`.
pub fn eval_h(pair: &ExponentPair, x: f64) -> f64 {
    SinhRatio::from_pair(pair).eval(x)
}

/// `f_{α,β}(t) = e^x h(x)` with `x = log(t)/2`.
pub fn eval_f(pair: &ExponentPair, t: f64) -> f64 {
    let ratio = SinhRatio::from_pair(pair);
    let x = t.ln() / 2.0;
    let h = ratio.eval(x);
    let v = x.exp() * h;
    if v.is_finite() && v > 0.0 {
        v
    } else {
        (x + ratio.ln_eval(x)).exp()
    }
}

/// `M_{α,β}(s, t) = t f(s/t) = √(st) h((log s − log t)/2)`.
pub fn eval_mean(pair: &ExponentPair, s: f64, t: f64) -> f64 {
    mean_with(&SinhRatio::from_pair(pair), s, t)
}

pub(crate) fn mean_with(ratio: &SinhRatio, s: f64, t: f64) -> f64 {
    let x = (s.ln() - t.ln()) / 2.0;
    s.sqrt() * t.sqrt() * ratio.eval(x)
}
