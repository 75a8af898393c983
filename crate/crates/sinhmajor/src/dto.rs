//! JSON views of core results. Exact values are written as `"p/q"` strings
//! (`"p"` for integers), floats as JSON numbers.

use num_rational::BigRational;
use serde_json::{json, Value};
use sinhmajor_core::classifier::{Certificate, Classification, DensityCertificate};
use sinhmajor_core::density::{CombinedDensity, NonnegReport};
use sinhmajor_core::expander::{CertificateVerdict, CoshExpansion, Parity, PositivityCertificate, SinhProductTerm};
use sinhmajor_core::factorizer::{ElementaryFactor, Factorization};
use sinhmajor_core::gram::{GramReport, GramWitness};
use sinhmajor_core::matmeans::{MeanTrialReport, NormProfile};
use sinhmajor_core::matrix::RealMatrix;
use sinhmajor_core::{Exponent, ExponentPair, ExponentTuple};

pub fn rational(r: &BigRational) -> Value {
    if r.is_integer() {
        Value::String(r.numer().to_string())
    } else {
        Value::String(format!("{}/{}", r.numer(), r.denom()))
    }
}

pub fn exponent(e: &Exponent) -> Value {
    match e {
        Exponent::Rational(r) => rational(r),
        Exponent::Real(x) => json!(x),
    }
}

pub fn tuple(t: &ExponentTuple) -> Value {
    Value::Array(t.values().iter().map(exponent).collect())
}

pub fn pair(p: &ExponentPair) -> Value {
    json!({"alpha": tuple(p.alpha()), "beta": tuple(p.beta())})
}

pub fn matrix(m: &RealMatrix) -> Value {
    Value::Array((0..m.rows()).map(|i| json!(m.row(i))).collect())
}

pub fn factor(f: &ElementaryFactor) -> Value {
    match f {
        ElementaryFactor::SimpleRatio { a, b } => json!({
            "kind": "simple_ratio",
            "a": exponent(a),
            "b": exponent(b),
            "display": f.to_string(),
        }),
        ElementaryFactor::Quad { a, c, b, d } => json!({
            "kind": "quad",
            "a": exponent(a),
            "c": exponent(c),
            "b": exponent(b),
            "d": exponent(d),
            "display": f.to_string(),
        }),
    }
}

pub fn factorization(f: &Factorization) -> Value {
    json!({
        "source": pair(f.source()),
        "factors": f.factors().iter().map(factor).collect::<Vec<_>>(),
    })
}

pub fn term(t: &SinhProductTerm) -> Value {
    json!({
        "coefficient": rational(t.coefficient()),
        "frequencies": t.frequencies().iter().map(rational).collect::<Vec<_>>(),
    })
}

pub fn expansion(e: &CoshExpansion) -> Value {
    json!({
        "parity": match e.parity() {
            Parity::Even => "even",
            Parity::Odd => "odd",
        },
        "terms": e
            .terms_desc()
            .map(|(w, c)| json!({"frequency": rational(w), "coefficient": rational(c)}))
            .collect::<Vec<_>>(),
    })
}

pub fn certificate_verdict(v: CertificateVerdict) -> &'static str {
    match v {
        CertificateVerdict::Certified => "certified",
        CertificateVerdict::Refuted => "refuted",
        CertificateVerdict::Inconclusive => "inconclusive",
    }
}

pub fn positivity(c: &PositivityCertificate) -> Value {
    json!({
        "verdict": certificate_verdict(c.verdict),
        "checked_upto": c.checked_upto,
        "coefficients": c.coefficients.iter().map(rational).collect::<Vec<_>>(),
        "tail_bound": rational(&c.tail_bound),
        "refutation_index": c.refutation_index,
    })
}

pub fn density_certificate(c: &DensityCertificate) -> Value {
    json!({
        "numerator": c.numerator.iter().map(term).collect::<Vec<_>>(),
        "scale": rational(&c.scale),
        "expansion": expansion(&c.expansion),
        "certificate": positivity(&c.certificate),
    })
}

pub fn gram_report(r: &GramReport) -> Value {
    json!({
        "points": r.points,
        "matrix": matrix(&r.matrix),
        "eigenvalues": r.eigenvalues,
        "min_eigenvalue": r.min_eigenvalue,
        "determinant": r.determinant,
        "tolerance": r.tolerance(),
        "is_psd": r.is_psd,
    })
}

pub fn witness(w: &GramWitness) -> Value {
    json!({
        "spacing": w.spacing,
        "points": w.points,
        "min_eigenvalue": w.min_eigenvalue,
        "determinant": w.determinant,
    })
}

pub fn certificate(c: &Certificate) -> Value {
    match c {
        Certificate::Factorization(f) => json!({"kind": "factorization", "factorization": factorization(f)}),
        Certificate::Positivity(d) => json!({"kind": "density", "density": density_certificate(d)}),
        Certificate::SumWitness { sum_alpha, sum_beta } => json!({
            "kind": "sum_witness",
            "sum_alpha": exponent(sum_alpha),
            "sum_beta": exponent(sum_beta),
        }),
        Certificate::MaxWitness { max_alpha, max_beta } => json!({
            "kind": "max_witness",
            "max_alpha": exponent(max_alpha),
            "max_beta": exponent(max_beta),
        }),
        Certificate::Gram(w) => json!({"kind": "gram", "witness": witness(w)}),
        Certificate::None => json!({"kind": "none"}),
    }
}

pub fn classification(c: &Classification) -> Value {
    json!({
        "verdict": c.verdict.to_string(),
        "rule": c.rule.to_string(),
        "certificate": certificate(&c.certificate),
        "source": pair(&c.source),
        "budget_exhausted": c.budget_exhausted,
    })
}

pub fn norms(p: &NormProfile) -> Value {
    json!({"ky_fan": p.ky_fan, "frobenius": p.frobenius})
}

pub fn trial(r: &MeanTrialReport) -> Value {
    json!({
        "seed": r.seed,
        "trial": r.trial,
        "n": r.n,
        "pass": r.pass,
        "margin": r.margin,
        "lhs_norms": norms(&r.lhs_norms),
        "rhs_norms": norms(&r.rhs_norms),
    })
}

pub fn density_terms(d: &CombinedDensity) -> Value {
    Value::Array(
        d.terms()
            .iter()
            .map(|t| json!({"a": exponent(t.a()), "b": exponent(t.b()), "sign": t.sign()}))
            .collect(),
    )
}

pub fn nonneg(r: &NonnegReport) -> Value {
    json!({
        "nonnegative": r.nonnegative,
        "min_value": r.min_value,
        "min_location": r.min_location,
        "scale": r.scale,
    })
}
