//! JSON input formats.
//!
//! Exponents are JSON numbers or strings. Integers and strings such as
//! `"1/3"` or `"2.25"` are exact; other JSON numbers become floats.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::Value;
use sinhmajor_core::density::{CombinedDensity, DensityTerm};
use sinhmajor_core::expander::SinhProductTerm;
use sinhmajor_core::{Exponent, ExponentPair, ExponentTuple};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum InputError {
    #[error("malformed JSON at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("{path}: {message}")]
    Field { path: String, message: String },

    #[error("length mismatch: alpha has {alpha} entries, beta has {beta}")]
    LengthMismatch { alpha: usize, beta: usize },

    #[error(transparent)]
    Core(#[from] sinhmajor_core::Error),
}

fn field(path: impl Into<String>, message: impl Into<String>) -> InputError {
    InputError::Field {
        path: path.into(),
        message: message.into(),
    }
}

/// Parses a JSON document, reporting syntax errors by line and column.
pub fn parse_json(text: &str) -> Result<Value, InputError> {
    serde_json::from_str(text).map_err(|e| InputError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

pub fn parse_exponent(v: &Value, path: &str) -> Result<Exponent, InputError> {
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(Exponent::integer(i))
            } else if let Some(u) = n.as_u64() {
                Ok(Exponent::Rational(BigRational::from_integer(BigInt::from(u))))
            } else {
                match n.as_f64() {
                    Some(x) if x.is_finite() => Ok(Exponent::real(x)),
                    _ => Err(field(path, "not a finite number")),
                }
            }
        }
        Value::String(s) => Exponent::from_str(s).map_err(|e| field(path, format!("{s:?}: {e}"))),
        _ => Err(field(path, "expected a number or a \"p/q\" string")),
    }
}

/// Exact value: a JSON integer or a string without exponent notation.
pub fn parse_rational(v: &Value, path: &str) -> Result<BigRational, InputError> {
    match parse_exponent(v, path)? {
        Exponent::Rational(r) => Ok(r),
        Exponent::Real(_) => Err(field(path, "expected an exact value (integer or \"p/q\" string)")),
    }
}

fn tuple(v: &Value, path: &str) -> Result<ExponentTuple, InputError> {
    let items = v.as_array().ok_or_else(|| field(path, "expected an array"))?;
    if items.is_empty() {
        return Err(field(path, "must not be empty"));
    }
    let values = items
        .iter()
        .enumerate()
        .map(|(i, x)| parse_exponent(x, &format!("{path}/{i}")))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(ExponentTuple::new(values)?)
}

fn object<'a>(v: &'a Value, path: &str, keys: &[&str]) -> Result<&'a serde_json::Map<String, Value>, InputError> {
    let map = v.as_object().ok_or_else(|| field(path, "expected an object"))?;
    if let Some(k) = map.keys().find(|k| !keys.contains(&k.as_str())) {
        return Err(field(format!("{path}/{k}"), "unknown key"));
    }
    for k in keys {
        if !map.contains_key(*k) {
            return Err(field(path, format!("missing key {k:?}")));
        }
    }
    Ok(map)
}

/// `{"alpha": [...], "beta": [...]}` at `path`.
pub fn pair_from_value(v: &Value, path: &str, abs_normalize: bool) -> Result<ExponentPair, InputError> {
    let map = object(v, path, &["alpha", "beta"])?;
    let alpha = tuple(&map["alpha"], &format!("{path}/alpha"))?;
    let beta = tuple(&map["beta"], &format!("{path}/beta"))?;
    if alpha.len() != beta.len() {
        return Err(InputError::LengthMismatch {
            alpha: alpha.len(),
            beta: beta.len(),
        });
    }
    let pair = ExponentPair::new(alpha, beta)?;
    Ok(if abs_normalize { pair.abs_normalized() } else { pair })
}

pub fn parse_pair(text: &str, abs_normalize: bool) -> Result<ExponentPair, InputError> {
    pair_from_value(&parse_json(text)?, "", abs_normalize)
}

/// `{"lhs": pair, "rhs": pair}`.
pub fn parse_pair_relation(text: &str) -> Result<(ExponentPair, ExponentPair), InputError> {
    let v = parse_json(text)?;
    let map = object(&v, "", &["lhs", "rhs"])?;
    Ok((
        pair_from_value(&map["lhs"], "/lhs", false)?,
        pair_from_value(&map["rhs"], "/rhs", false)?,
    ))
}

/// `[{"coefficient": "1/2", "frequencies": [1, "3/2"]}, ...]`, exact values
/// only.
pub fn parse_terms(text: &str) -> Result<Vec<SinhProductTerm>, InputError> {
    let v = parse_json(text)?;
    let items = v.as_array().ok_or_else(|| field("", "expected an array of terms"))?;
    items
        .iter()
        .enumerate()
        .map(|(i, t)| {
            let path = format!("/{i}");
            let map = object(t, &path, &["coefficient", "frequencies"])?;
            let c = parse_rational(&map["coefficient"], &format!("{path}/coefficient"))?;
            let fpath = format!("{path}/frequencies");
            let freqs = map["frequencies"]
                .as_array()
                .ok_or_else(|| field(&fpath, "expected an array"))?
                .iter()
                .enumerate()
                .map(|(j, f)| parse_rational(f, &format!("{fpath}/{j}")))
                .collect::<Result<Vec<_>, _>>()?;
            SinhProductTerm::new(c, freqs).map_err(|e| field(&path, e.to_string()))
        })
        .collect()
}

/// Either a pair (sorted pairing) or an explicit list
/// `[{"a": .., "b": .., "sign": ±1}, ...]`.
pub fn parse_pairing(text: &str) -> Result<CombinedDensity, InputError> {
    let v = parse_json(text)?;
    if v.is_object() {
        let pair = pair_from_value(&v, "", true)?;
        return Ok(CombinedDensity::from_pair(&pair)?);
    }
    let items = v
        .as_array()
        .ok_or_else(|| field("", "expected a pair object or an array of density terms"))?;
    let terms = items
        .iter()
        .enumerate()
        .map(|(i, t)| {
            let path = format!("/{i}");
            let map = object(t, &path, &["a", "b", "sign"])?;
            let a = parse_exponent(&map["a"], &format!("{path}/a"))?;
            let b = parse_exponent(&map["b"], &format!("{path}/b"))?;
            let sign = match map["sign"].as_i64() {
                Some(1) => 1,
                Some(-1) => -1,
                _ => return Err(field(format!("{path}/sign"), "must be 1 or -1")),
            };
            DensityTerm::new(a, b, sign).map_err(|e| field(&path, e.to_string()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    if terms.is_empty() {
        return Err(field("", "at least one density term is required"));
    }
    Ok(CombinedDensity::new(terms))
}
