//! Exponent tuples `α = (a_1, …, a_n)`, `β = (b_1, …, b_n)` and the weak
//! submajorization test `|α| ⪯_w |β|`.
//!
//! Components are either exact rationals or binary floats. Arithmetic between
//! two rationals stays exact; anything touching a float falls back to `f64`.
//! Prefix-sum comparisons are non-strict (ties pass) and use no tolerance.

use alloc::string::ToString;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Neg, Sub};
use core::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A single exponent.
#[derive(Clone, Debug)]
pub enum Exponent {
    Rational(BigRational),
    Real(f64),
}

impl Exponent {
    pub fn integer(n: i64) -> Self {
        Exponent::Rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn ratio(numer: i64, denom: i64) -> Result<Self> {
        if denom == 0 {
            return Err(Error::InvalidArgument("zero denominator"));
        }
        Ok(Exponent::Rational(BigRational::new(
            BigInt::from(numer),
            BigInt::from(denom),
        )))
    }

    pub fn real(x: f64) -> Self {
        Exponent::Real(x)
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Exponent::Rational(r) => r.to_f64().unwrap_or(f64::NAN),
            Exponent::Real(x) => *x,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Exponent::Rational(r) => Some(r),
            Exponent::Real(_) => None,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Exponent::Rational(_))
    }

    pub fn is_finite(&self) -> bool {
        match self {
            Exponent::Rational(_) => true,
            Exponent::Real(x) => x.is_finite(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Exponent::Rational(r) => r.is_zero(),
            Exponent::Real(x) => *x == 0.0,
        }
    }

    pub fn is_positive(&self) -> bool {
        match self {
            Exponent::Rational(r) => r.is_positive(),
            Exponent::Real(x) => *x > 0.0,
        }
    }

    pub fn abs(&self) -> Self {
        match self {
            Exponent::Rational(r) => Exponent::Rational(r.abs()),
            Exponent::Real(x) => Exponent::Real(x.abs()),
        }
    }

    fn combine(
        &self,
        other: &Self,
        exact: impl FnOnce(&BigRational, &BigRational) -> BigRational,
        float: impl FnOnce(f64, f64) -> f64,
    ) -> Self {
        match (self, other) {
            (Exponent::Rational(a), Exponent::Rational(b)) => Exponent::Rational(exact(a, b)),
            _ => Exponent::Real(float(self.to_f64(), other.to_f64())),
        }
    }
}

impl Default for Exponent {
    fn default() -> Self {
        Exponent::integer(0)
    }
}

impl From<i64> for Exponent {
    fn from(n: i64) -> Self {
        Exponent::integer(n)
    }
}

impl From<i32> for Exponent {
    fn from(n: i32) -> Self {
        Exponent::integer(n as i64)
    }
}

impl From<f64> for Exponent {
    fn from(x: f64) -> Self {
        Exponent::Real(x)
    }
}

impl From<BigRational> for Exponent {
    fn from(r: BigRational) -> Self {
        Exponent::Rational(r)
    }
}

impl PartialEq for Exponent {
    fn eq(&self, other: &Self) -> bool {
        self.partial_cmp(other) == Some(Ordering::Equal)
    }
}

impl PartialOrd for Exponent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self, other) {
            (Exponent::Rational(a), Exponent::Rational(b)) => Some(a.cmp(b)),
            _ => self.to_f64().partial_cmp(&other.to_f64()),
        }
    }
}

impl Add for &Exponent {
    type Output = Exponent;
    fn add(self, rhs: &Exponent) -> Exponent {
        self.combine(rhs, |a, b| a + b, |a, b| a + b)
    }
}

impl Sub for &Exponent {
    type Output = Exponent;
    fn sub(self, rhs: &Exponent) -> Exponent {
        self.combine(rhs, |a, b| a - b, |a, b| a - b)
    }
}

impl Add for Exponent {
    type Output = Exponent;
    fn add(self, rhs: Exponent) -> Exponent {
        &self + &rhs
    }
}

impl Sub for Exponent {
    type Output = Exponent;
    fn sub(self, rhs: Exponent) -> Exponent {
        &self - &rhs
    }
}

impl Neg for &Exponent {
    type Output = Exponent;
    fn neg(self) -> Exponent {
        match self {
            Exponent::Rational(r) => Exponent::Rational(-r),
            Exponent::Real(x) => Exponent::Real(-x),
        }
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Rational(r) if r.is_integer() => write!(f, "{}", r.numer()),
            Exponent::Rational(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            Exponent::Real(x) => write!(f, "{}", x),
        }
    }
}

/// Parses `"p/q"`, `"p"` and plain decimals (`"2.25"`) exactly; anything
/// else that `f64` accepts (exponent notation) becomes a float.
impl FromStr for Exponent {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some((p, q)) = s.split_once('/') {
            let p = BigInt::from_str(p.trim()).map_err(|_| Error::InvalidArgument("bad numerator"))?;
            let q =
                BigInt::from_str(q.trim()).map_err(|_| Error::InvalidArgument("bad denominator"))?;
            if q.is_zero() {
                return Err(Error::InvalidArgument("zero denominator"));
            }
            return Ok(Exponent::Rational(BigRational::new(p, q)));
        }
        if let Ok(n) = BigInt::from_str(s) {
            return Ok(Exponent::Rational(BigRational::from_integer(n)));
        }
        if let Some(r) = parse_decimal(s) {
            return Ok(Exponent::Rational(r));
        }
        match s.parse::<f64>() {
            Ok(x) if x.is_finite() => Ok(Exponent::Real(x)),
            _ => Err(Error::InvalidArgument("not a number")),
        }
    }
}

fn parse_decimal(s: &str) -> Option<BigRational> {
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int, frac) = body.split_once('.')?;
    if int.is_empty() && frac.is_empty() {
        return None;
    }
    if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let mut digits = int.to_string();
    digits.push_str(frac);
    let numer = BigInt::from_str(&digits).ok()?;
    let denom = num_traits::pow(BigInt::from(10u32), frac.len());
    let r = BigRational::new(numer, denom);
    Some(if neg { -r } else { r })
}

/// Non-empty tuple of finite exponents.
#[derive(Clone, Debug, PartialEq)]
pub struct ExponentTuple(Vec<Exponent>);

impl ExponentTuple {
    pub fn new(values: Vec<Exponent>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptyTuple);
        }
        if let Some(index) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        Ok(ExponentTuple(values))
    }

    pub fn from_ints(values: &[i64]) -> Result<Self> {
        Self::new(values.iter().map(|&v| Exponent::integer(v)).collect())
    }

    pub fn from_f64s(values: &[f64]) -> Result<Self> {
        Self::new(values.iter().map(|&v| Exponent::Real(v)).collect())
    }

    pub fn values(&self) -> &[Exponent] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_exact(&self) -> bool {
        self.0.iter().all(Exponent::is_exact)
    }

    pub fn to_f64_vec(&self) -> Vec<f64> {
        self.0.iter().map(Exponent::to_f64).collect()
    }

    pub fn sum(&self) -> Exponent {
        self.0.iter().fold(Exponent::integer(0), |acc, v| &acc + v)
    }

    /// Absolute values sorted in non-increasing order.
    pub fn abs_normalize(&self) -> ExponentTuple {
        let mut v: Vec<Exponent> = self.0.iter().map(Exponent::abs).collect();
        sort_desc(&mut v);
        ExponentTuple(v)
    }

    pub fn concat(&self, other: &ExponentTuple) -> ExponentTuple {
        let mut v = self.0.clone();
        v.extend(other.0.iter().cloned());
        ExponentTuple(v)
    }

    /// Components at the given (distinct, in-range) indices.
    pub fn select(&self, indices: &[usize]) -> Result<ExponentTuple> {
        check_indices(indices, self.len())?;
        ExponentTuple::new(indices.iter().map(|&i| self.0[i].clone()).collect())
    }

    /// The tuple with the given indices deleted.
    pub fn without(&self, indices: &[usize]) -> Result<ExponentTuple> {
        check_indices(indices, self.len())?;
        let kept = self
            .0
            .iter()
            .enumerate()
            .filter(|(i, _)| !indices.contains(i))
            .map(|(_, v)| v.clone())
            .collect();
        ExponentTuple::new(kept)
    }
}

fn check_indices(indices: &[usize], len: usize) -> Result<()> {
    for (k, &i) in indices.iter().enumerate() {
        if i >= len {
            return Err(Error::InvalidArgument("index out of range"));
        }
        if indices[..k].contains(&i) {
            return Err(Error::InvalidArgument("repeated index"));
        }
    }
    Ok(())
}

pub(crate) fn sort_desc(v: &mut [Exponent]) {
    v.sort_by(|a, b| b.partial_cmp(a).unwrap_or(Ordering::Equal));
}

/// The pair `(α, β)` defining `f_{α,β}` and `h_{α,β}`.
#[derive(Clone, Debug, PartialEq)]
pub struct ExponentPair {
    alpha: ExponentTuple,
    beta: ExponentTuple,
}

impl ExponentPair {
    pub fn new(alpha: ExponentTuple, beta: ExponentTuple) -> Result<Self> {
        if alpha.len() != beta.len() {
            return Err(Error::LengthMismatch {
                left: alpha.len(),
                right: beta.len(),
            });
        }
        Ok(ExponentPair { alpha, beta })
    }

    pub fn from_ints(alpha: &[i64], beta: &[i64]) -> Result<Self> {
        Self::new(ExponentTuple::from_ints(alpha)?, ExponentTuple::from_ints(beta)?)
    }

    pub fn from_f64s(alpha: &[f64], beta: &[f64]) -> Result<Self> {
        Self::new(ExponentTuple::from_f64s(alpha)?, ExponentTuple::from_f64s(beta)?)
    }

    pub fn alpha(&self) -> &ExponentTuple {
        &self.alpha
    }

    pub fn beta(&self) -> &ExponentTuple {
        &self.beta
    }

    pub fn len(&self) -> usize {
        self.alpha.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_exact(&self) -> bool {
        self.alpha.is_exact() && self.beta.is_exact()
    }

    /// `γ(α, β) = (1 − Σ(a_i − b_i)) / 2`.
    pub fn gamma(&self) -> Exponent {
        let one = Exponent::integer(1);
        let diff = &self.alpha.sum() - &self.beta.sum();
        let num = &one - &diff;
        match num {
            Exponent::Rational(r) => Exponent::Rational(r / BigInt::from(2)),
            Exponent::Real(x) => Exponent::Real(x / 2.0),
        }
    }

    /// Both tuples replaced by their abs-normalized forms. The function
    /// `f_{α,β}` is unchanged: it only depends on the multisets `|α|`, `|β|`.
    pub fn abs_normalized(&self) -> ExponentPair {
        ExponentPair {
            alpha: self.alpha.abs_normalize(),
            beta: self.beta.abs_normalize(),
        }
    }

    /// Deletion construction: from `|α| ⪯_w |β|` and index sets `I`, `J` of
    /// equal size `k` (0 < k < n), returns
    /// `(α∖I, β∖J)` and `((b_j)_{j∈J}, (a_i)_{i∈I})`, for which
    /// `f_{α∖I, β∖J} ⪯ f_{b_J, a_I}`.
    pub fn deletion(&self, remove_alpha: &[usize], remove_beta: &[usize]) -> Result<(ExponentPair, ExponentPair)> {
        if remove_alpha.len() != remove_beta.len() {
            return Err(Error::LengthMismatch {
                left: remove_alpha.len(),
                right: remove_beta.len(),
            });
        }
        if remove_alpha.is_empty() || remove_alpha.len() >= self.len() {
            return Err(Error::InvalidArgument("deletion size must satisfy 0 < k < n"));
        }
        let lhs = ExponentPair::new(self.alpha.without(remove_alpha)?, self.beta.without(remove_beta)?)?;
        let rhs = ExponentPair::new(self.beta.select(remove_beta)?, self.alpha.select(remove_alpha)?)?;
        Ok((lhs, rhs))
    }
}

pub fn gamma(pair: &ExponentPair) -> Exponent {
    pair.gamma()
}

pub fn abs_normalize(t: &ExponentTuple) -> ExponentTuple {
    t.abs_normalize()
}

/// First `k` (1-based) at which the sorted prefix sums of `|u|` exceed those
/// of `|v|`, or `None` when `|u| ⪯_w |v|`.
pub fn first_prefix_violation(u: &ExponentTuple, v: &ExponentTuple) -> Result<Option<usize>> {
    if u.len() != v.len() {
        return Err(Error::LengthMismatch {
            left: u.len(),
            right: v.len(),
        });
    }
    let u = u.abs_normalize();
    let v = v.abs_normalize();
    let mut su = Exponent::integer(0);
    let mut sv = Exponent::integer(0);
    for (k, (a, b)) in u.values().iter().zip(v.values()).enumerate() {
        su = &su + a;
        sv = &sv + b;
        if su > sv {
            return Ok(Some(k + 1));
        }
    }
    Ok(None)
}

/// `|u| ⪯_w |v|`: every prefix sum of sorted `|u|` is at most the matching
/// prefix sum of sorted `|v|`.
pub fn weak_submajorize(u: &ExponentTuple, v: &ExponentTuple) -> Result<bool> {
    Ok(first_prefix_violation(u, v)?.is_none())
}

/// For `f_{α,β}` (left) and `f_{α',β'}` (right) returns the tuples
/// `(a_1..a_n, d_1..d_m)` and `(b_1..b_n, c_1..c_m)`. The left mean is
/// dominated by the right one whenever the second weakly submajorizes the
/// first.
pub fn combined_pair_tuples(left: &ExponentPair, right: &ExponentPair) -> (ExponentTuple, ExponentTuple) {
    (
        left.alpha.concat(&right.beta),
        left.beta.concat(&right.alpha),
    )
}

/// The pair whose `h` is `h_left / h_right`.
pub fn combined_pair(left: &ExponentPair, right: &ExponentPair) -> ExponentPair {
    let (alpha, beta) = combined_pair_tuples(left, right);
    ExponentPair { alpha, beta }
}
