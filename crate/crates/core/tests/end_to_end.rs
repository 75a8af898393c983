use sinhmajor_core::classifier::{classify_pair, classify_single, density_certificate, Rule, Verdict};
use sinhmajor_core::density::{reconstruct_log_h, CombinedDensity};
use sinhmajor_core::expander::{certify_nonnegative, default_order, expand, CertificateVerdict, SinhProductTerm};
use sinhmajor_core::factorizer::factorize_pair;
use sinhmajor_core::gram::{gram_probe, gram_report};
use sinhmajor_core::matmeans::verify_inequality;
use sinhmajor_core::scalarfn::{eval_h, SinhRatio};
use sinhmajor_core::{Exponent, ExponentPair};

fn pair(alpha: &[i64], beta: &[i64]) -> ExponentPair {
    ExponentPair::from_ints(alpha, beta).unwrap()
}

#[test]
fn counterexample_has_a_gram_witness() {
    let p = pair(&[8, 6, 3], &[9, 4, 4]);
    let ratio = SinhRatio::from_pair(&p);
    let report = gram_report(|x| ratio.eval(x), &[0.0, 1.0 / 3.0, 2.0 / 3.0, 1.0]).unwrap();
    assert!(report.min_eigenvalue < 0.0);
    assert!(!report.is_psd);
    let witness = gram_probe(|x| ratio.eval(x), &[1.0 / 3.0], 16).unwrap();
    assert!(witness.is_some());
}

#[test]
fn submajorized_pair_factors_back_to_h() {
    let p = pair(&[6, 5, 3], &[9, 4, 1]);
    let f = factorize_pair(&p).unwrap();
    assert!(f.factors().iter().all(|e| e.is_valid()));
    for x in [0.05, 0.3, 1.0, 2.5] {
        let h = eval_h(&p, x);
        assert!((f.eval(x) - h).abs() <= 1e-12 * h.abs());
    }
    let c = classify_pair(&p).unwrap();
    assert_eq!((c.verdict, c.rule), (Verdict::InfinitelyDivisible, Rule::WeakSubmajorization));
}

#[test]
fn density_certificate_matches_reconstruction() {
    let p = pair(&[8, 6, 1], &[9, 4, 4]);
    let cert = density_certificate(&p, None).unwrap();
    assert_eq!(cert.certificate.verdict, CertificateVerdict::Certified);
    let d = CombinedDensity::from_pair(&p).unwrap();
    for x in [0.25, 0.5, 1.0, 2.0] {
        let err = (reconstruct_log_h(&d, x).unwrap() - eval_h(&p, x).ln()).abs();
        assert!(err < 1e-6, "x = {x}: {err}");
    }
}

#[test]
fn sum_and_max_conditions_refute() {
    let c = classify_pair(&pair(&[3], &[1])).unwrap();
    assert_eq!((c.verdict, c.rule), (Verdict::NotPositiveDefinite, Rule::SumCondition));
    let c = classify_pair(&pair(&[3, 1], &[2, 2])).unwrap();
    assert_eq!((c.verdict, c.rule), (Verdict::NotPositiveDefinite, Rule::MaxCondition));
}

#[test]
fn single_pair_order() {
    let e = |v: i64| Exponent::from(v);
    assert!(classify_single(&e(1), &e(2), &e(1), &e(2)).unwrap());
    assert!(!classify_single(&e(1), &e(2), &e(1), &e(3)).unwrap());
}

#[test]
fn expansion_certificate_pipeline() {
    let terms = vec![
        SinhProductTerm::from_ints(1, &[1, 2]).unwrap(),
        SinhProductTerm::from_ints(-1, &[1, 1]).unwrap(),
    ];
    let e = expand(&terms).unwrap();
    let cert = certify_nonnegative(&e, default_order(&e)).unwrap();
    assert_eq!(cert.verdict, CertificateVerdict::Certified);
    for s in [0.1, 1.0, 3.0] {
        let direct: f64 = terms.iter().map(|t| t.eval(s)).sum();
        assert!((e.eval(s) - direct).abs() <= 1e-12 * direct.abs().max(1.0));
    }
}

#[test]
fn matrix_means_are_seeded() {
    let lhs = pair(&[1], &[1]);
    let rhs = pair(&[2], &[1]);
    let a = verify_inequality(&lhs, &rhs, 3, 10, 7).unwrap();
    let b = verify_inequality(&lhs, &rhs, 3, 10, 7).unwrap();
    assert_eq!(a.len(), 10);
    assert!(a.iter().zip(&b).all(|(x, y)| x.margin == y.margin));
}
