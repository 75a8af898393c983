//! Matrix means `M_{α,β}(L_H, R_K)X` and unitarily invariant norms.
//!
//! With `H = U diag(λ) U*` and `K = V diag(μ) V*`,
//!
//! ```text
//! M(L_H, R_K) X = U [ (M_{α,β}(λ_i, μ_j))_{ij} ∘ (U* X V) ] V*.
//! ```
//!
//! Norm comparisons use the Ky Fan `k`-norms, which control every unitarily
//! invariant norm, plus the Frobenius norm.

use alloc::vec::Vec;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::eigen::{hermitian_eigen, Eigen};
use crate::error::{Error, Result};
use crate::exponents::{combined_pair_tuples, weak_submajorize, ExponentPair};
use crate::matrix::{ComplexMatrix, RealMatrix};
use crate::scalarfn::{mean_with, SinhRatio};

/// Relative slack allowed when comparing norms.
pub const NORM_TOLERANCE: f64 = 1e-10;

/// Hermitian positive definite matrix with its spectral decomposition.
#[derive(Clone, Debug, PartialEq)]
pub struct PosDefMatrix {
    matrix: ComplexMatrix,
    eigen: Eigen<Complex64>,
}

impl PosDefMatrix {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        if !matrix.is_square() || matrix.rows() == 0 {
            return Err(Error::Dimension("positive definite matrix must be square and non-empty"));
        }
        let norm = matrix.frobenius_norm();
        let asymmetry = matrix.hermitian_defect();
        if asymmetry > 1e-13 * norm {
            return Err(Error::NotHermitian { asymmetry });
        }
        let sym = matrix.add(&matrix.adjoint())?.scale(0.5);
        let eigen = hermitian_eigen(&sym)?;
        let min_eigenvalue = eigen.min();
        if min_eigenvalue.is_nan() || min_eigenvalue <= 0.0 {
            return Err(Error::NotPositiveDefinite { min_eigenvalue });
        }
        Ok(PosDefMatrix { matrix: sym, eigen })
    }

    pub fn from_real(m: &RealMatrix) -> Result<Self> {
        Self::new(ComplexMatrix::from_real(m))
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    /// Ascending.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigen.values
    }

    pub fn eigenvectors(&self) -> &ComplexMatrix {
        &self.eigen.vectors
    }

    /// `g(H)` by the functional calculus.
    pub fn apply_fn(&self, g: impl Fn(f64) -> f64) -> ComplexMatrix {
        self.eigen.reconstruct_with(g)
    }
}

pub fn mean_apply(pair: &ExponentPair, h: &PosDefMatrix, k: &PosDefMatrix, x: &ComplexMatrix) -> Result<ComplexMatrix> {
    mean_apply_ratio(&SinhRatio::from_pair(pair), h, k, x)
}

fn mean_apply_ratio(ratio: &SinhRatio, h: &PosDefMatrix, k: &PosDefMatrix, x: &ComplexMatrix) -> Result<ComplexMatrix> {
    if x.rows() != h.dim() || x.cols() != k.dim() {
        return Err(Error::Dimension("X must be dim(H) × dim(K)"));
    }
    let u = h.eigenvectors();
    let v = k.eigenvectors();
    let lam = h.eigenvalues();
    let mu = k.eigenvalues();
    let y = u.adjoint().matmul(x)?.matmul(v)?;
    let weights = ComplexMatrix::from_fn(lam.len(), mu.len(), |i, j| {
        Complex64::new(mean_with(ratio, lam[i], mu[j]), 0.0)
    });
    u.matmul(&weights.hadamard(&y)?)?.matmul(&v.adjoint())
}

/// Singular values in non-increasing order, from the spectrum of the
/// Hermitian dilation `[[0, X], [X*, 0]]`, which is `±σ_i` plus zeros.
pub fn singular_values(x: &ComplexMatrix) -> Result<Vec<f64>> {
    let (m, n) = (x.rows(), x.cols());
    let dilation = ComplexMatrix::from_fn(m + n, m + n, |i, j| {
        if i < m && j >= m {
            x[(i, j - m)]
        } else if i >= m && j < m {
            x[(j, i - m)].conj()
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    let e = hermitian_eigen(&dilation)?;
    Ok(e.values.iter().rev().take(m.min(n)).map(|s| s.max(0.0)).collect())
}

/// Ky Fan `k`-norms for `k = 1..min(m, n)`.
pub fn ky_fan_norms(x: &ComplexMatrix) -> Result<Vec<f64>> {
    let mut acc = 0.0;
    Ok(singular_values(x)?
        .into_iter()
        .map(|s| {
            acc += s;
            acc
        })
        .collect())
}

#[derive(Clone, Debug, PartialEq)]
pub struct NormProfile {
    /// Ky Fan `k`-norms, `k = 1..N`.
    pub ky_fan: Vec<f64>,
    pub frobenius: f64,
}

impl NormProfile {
    pub fn of(x: &ComplexMatrix) -> Result<Self> {
        Ok(NormProfile {
            ky_fan: ky_fan_norms(x)?,
            frobenius: x.frobenius_norm(),
        })
    }

    pub fn operator(&self) -> f64 {
        self.ky_fan.first().copied().unwrap_or(0.0)
    }

    pub fn trace(&self) -> f64 {
        self.ky_fan.last().copied().unwrap_or(0.0)
    }

    /// All compared norms: Ky Fan 1..N, then Frobenius.
    pub fn values(&self) -> Vec<f64> {
        let mut v = self.ky_fan.clone();
        v.push(self.frobenius);
        v
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MeanTrialReport {
    pub seed: u64,
    pub trial: u64,
    pub n: usize,
    pub lhs_norms: NormProfile,
    pub rhs_norms: NormProfile,
    pub pass: bool,
    /// `min (rhs − lhs)/rhs` over the compared norms.
    pub margin: f64,
}

/// `A A* + 10⁻³ I` with entries of `A` uniform on `[−1, 1] + i[−1, 1]`.
pub fn random_pd(rng: &mut impl Rng, n: usize) -> Result<PosDefMatrix> {
    let a = random_matrix(rng, n);
    let h = a.matmul(&a.adjoint())?.add(&ComplexMatrix::identity(n).scale(1e-3))?;
    PosDefMatrix::new(h)
}

pub fn random_matrix(rng: &mut impl Rng, n: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(n, n, |_, _| {
        let re = rng.gen_range(-1.0..=1.0);
        let im = rng.gen_range(-1.0..=1.0);
        Complex64::new(re, im)
    })
}

/// Random `(H, K, X)` for one trial; the stream depends only on
/// `(seed, trial)`.
pub fn trial_inputs(n: usize, seed: u64, trial: u64) -> Result<(PosDefMatrix, PosDefMatrix, ComplexMatrix)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    let h = random_pd(&mut rng, n)?;
    let k = random_pd(&mut rng, n)?;
    let x = random_matrix(&mut rng, n);
    Ok((h, k, x))
}

/// Compares two norm profiles.
pub fn compare(lhs: &NormProfile, rhs: &NormProfile) -> (bool, f64) {
    let mut pass = true;
    let mut margin = f64::INFINITY;
    for (l, r) in lhs.values().into_iter().zip(rhs.values()) {
        if l > r * (1.0 + NORM_TOLERANCE) {
            pass = false;
        }
        let m = if r > 0.0 {
            (r - l) / r
        } else if l > 0.0 {
            f64::NEG_INFINITY
        } else {
            0.0
        };
        margin = margin.min(m);
    }
    (pass, margin)
}

pub fn run_trial(lhs: &ExponentPair, rhs: &ExponentPair, n: usize, seed: u64, trial: u64) -> Result<MeanTrialReport> {
    let (h, k, x) = trial_inputs(n, seed, trial)?;
    let lhs_norms = NormProfile::of(&mean_apply(lhs, &h, &k, &x)?)?;
    let rhs_norms = NormProfile::of(&mean_apply(rhs, &h, &k, &x)?)?;
    let (pass, margin) = compare(&lhs_norms, &rhs_norms);
    Ok(MeanTrialReport {
        seed,
        trial,
        n,
        lhs_norms,
        rhs_norms,
        pass,
        margin,
    })
}

/// Seeded random check of `|||M_lhs(L_H, R_K)X||| ≤ |||M_rhs(L_H, R_K)X|||`.
pub fn verify_inequality(
    lhs: &ExponentPair,
    rhs: &ExponentPair,
    n: usize,
    trials: u64,
    seed: u64,
) -> Result<Vec<MeanTrialReport>> {
    if n == 0 {
        return Err(Error::InvalidArgument("matrix dimension must be positive"));
    }
    (0..trials).map(|t| run_trial(lhs, rhs, n, seed, t)).collect()
}

/// Whether the pair relation lacks the weak-submajorization guarantee, in
/// which case a verification run is only exploratory.
pub fn is_exploratory(lhs: &ExponentPair, rhs: &ExponentPair) -> bool {
    let (u, v) = combined_pair_tuples(lhs, rhs);
    !weak_submajorize(&u, &v).unwrap_or(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use proptest::prelude::*;

    fn pair(a: &[i64], b: &[i64]) -> ExponentPair {
        ExponentPair::from_ints(a, b).unwrap()
    }

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn rel_diff(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
        a.sub(b).unwrap().frobenius_norm() / b.frobenius_norm().max(1e-300)
    }

    fn inputs(seed: u64, n: usize) -> (PosDefMatrix, PosDefMatrix, ComplexMatrix) {
        trial_inputs(n, seed, 0).unwrap()
    }

    #[test]
    fn one_by_one_geometric_mean() {
        let h = PosDefMatrix::new(ComplexMatrix::from_rows(&[vec![c(4.0)]]).unwrap()).unwrap();
        let k = PosDefMatrix::new(ComplexMatrix::from_rows(&[vec![c(9.0)]]).unwrap()).unwrap();
        let x = ComplexMatrix::from_rows(&[vec![c(1.0)]]).unwrap();
        let y = mean_apply(&pair(&[1], &[1]), &h, &k, &x).unwrap();
        assert!((y[(0, 0)] - c(6.0)).norm() < 1e-14);
    }

    #[test]
    fn arithmetic_mean_identity() {
        for seed in 0..5 {
            let (h, k, x) = inputs(seed, 4);
            let y = mean_apply(&pair(&[2], &[1]), &h, &k, &x).unwrap();
            let want = h.matrix().matmul(&x).unwrap().add(&x.matmul(k.matrix()).unwrap()).unwrap().scale(0.5);
            let entry = y.sub(&want).unwrap().max_abs();
            assert!(entry < 1e-12 * want.max_abs().max(1.0), "{entry}");
        }
    }

    #[test]
    fn geometric_mean_identity() {
        for seed in 0..5 {
            let (h, k, x) = inputs(seed, 3);
            let y = mean_apply(&pair(&[1], &[1]), &h, &k, &x).unwrap();
            let want = h
                .apply_fn(f64::sqrt)
                .matmul(&x)
                .unwrap()
                .matmul(&k.apply_fn(f64::sqrt))
                .unwrap();
            assert!(y.sub(&want).unwrap().max_abs() < 1e-12);
        }
    }

    #[test]
    fn scalar_matrices() {
        let h = PosDefMatrix::new(ComplexMatrix::identity(3).scale(2.5)).unwrap();
        let (_, _, x) = inputs(7, 3);
        let y = mean_apply(&pair(&[8, 7, 3], &[10, 6, 4]), &h, &h, &x).unwrap();
        assert!(rel_diff(&y, &x.scale(2.5)) < 1e-14);
    }

    #[test]
    fn rejects_bad_inputs() {
        let not_pd = ComplexMatrix::from_rows(&[vec![c(1.0), c(2.0)], vec![c(2.0), c(1.0)]]).unwrap();
        assert!(matches!(PosDefMatrix::new(not_pd), Err(Error::NotPositiveDefinite { .. })));
        let not_herm = ComplexMatrix::from_rows(&[vec![c(1.0), c(2.0)], vec![c(0.0), c(1.0)]]).unwrap();
        assert!(matches!(PosDefMatrix::new(not_herm), Err(Error::NotHermitian { .. })));
        let (h, k, _) = inputs(1, 3);
        let x = ComplexMatrix::zeros(2, 3);
        assert!(mean_apply(&pair(&[1], &[1]), &h, &k, &x).is_err());
    }

    #[test]
    fn norm_examples() {
        let d = ComplexMatrix::diagonal(&[c(3.0), c(-5.0)]);
        let kf = ky_fan_norms(&d).unwrap();
        assert!((kf[0] - 5.0).abs() < 1e-14 && (kf[1] - 8.0).abs() < 1e-14);
        let kf = ky_fan_norms(&ComplexMatrix::identity(3)).unwrap();
        for (k, v) in kf.iter().enumerate() {
            assert!((v - (k + 1) as f64).abs() < 1e-14);
        }
        let nil = ComplexMatrix::from_rows(&[vec![c(0.0), c(2.0)], vec![c(0.0), c(0.0)]]).unwrap();
        let p = NormProfile::of(&nil).unwrap();
        assert!((p.operator() - 2.0).abs() < 1e-14);
        assert!((p.trace() - 2.0).abs() < 1e-14);
        assert!((p.frobenius - 2.0).abs() < 1e-14);
    }

    #[test]
    fn singular_values_match_gram_spectrum() {
        let (_, _, x) = inputs(3, 5);
        let s = singular_values(&x).unwrap();
        let g = hermitian_eigen(&x.adjoint().matmul(&x).unwrap()).unwrap();
        for (sv, ev) in s.iter().zip(g.values.iter().rev()) {
            assert!((sv * sv - ev).abs() < 1e-12 * g.max());
        }
    }

    #[test]
    fn mcintosh_trials() {
        let reports = verify_inequality(&pair(&[1], &[1]), &pair(&[2], &[1]), 3, 100, 42).unwrap();
        assert!(reports.iter().all(|r| r.pass));
        assert!(!is_exploratory(&pair(&[1], &[1]), &pair(&[2], &[1])));
    }

    #[test]
    fn three_term_relation_trials() {
        let l = pair(&[8, 7, 3], &[10, 6, 4]);
        let r = pair(&[9, 2], &[8, 5]);
        assert!(!is_exploratory(&l, &r));
        let reports = verify_inequality(&l, &r, 4, 100, 7).unwrap();
        assert!(reports.iter().all(|r| r.pass));
    }

    #[test]
    fn equal_pairs_have_zero_margin() {
        let p = pair(&[8, 7, 3], &[10, 6, 4]);
        for r in verify_inequality(&p, &p, 3, 5, 1).unwrap() {
            assert!(r.pass);
            assert!(r.margin.abs() < 1e-12);
        }
    }

    #[test]
    fn reversed_relation_fails() {
        let reports = verify_inequality(&pair(&[3], &[1]), &pair(&[1], &[1]), 3, 10, 5).unwrap();
        assert!(reports.iter().all(|r| !r.pass));
        assert!(is_exploratory(&pair(&[3], &[1]), &pair(&[1], &[1])));
    }

    #[test]
    fn trials_are_reproducible() {
        let a = run_trial(&pair(&[1], &[1]), &pair(&[2], &[1]), 3, 9, 4).unwrap();
        let b = run_trial(&pair(&[1], &[1]), &pair(&[2], &[1]), 3, 9, 4).unwrap();
        assert_eq!(a, b);
        let c = run_trial(&pair(&[1], &[1]), &pair(&[2], &[1]), 3, 9, 5).unwrap();
        assert_ne!(a.lhs_norms, c.lhs_norms);
    }

    fn unitary(seed: u64, n: usize) -> ComplexMatrix {
        let (h, _, _) = inputs(seed ^ 0xdead_beef, n);
        h.eigenvectors().clone()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn mean_of_equal_arguments(seed in any::<u64>(), n in 1usize..6) {
            let (h, _, _) = inputs(seed, n);
            let y = mean_apply(&pair(&[8, 7, 3], &[10, 6, 4]), &h, &h, &ComplexMatrix::identity(n)).unwrap();
            prop_assert!(rel_diff(&y, h.matrix()) < 1e-11);
        }

        #[test]
        fn unitary_congruence(seed in any::<u64>(), n in 1usize..5) {
            let p = pair(&[9, 2], &[8, 5]);
            let (h, k, x) = inputs(seed, n);
            let w = unitary(seed, n);
            let w2 = unitary(seed.wrapping_add(1), n);
            let h2 = PosDefMatrix::new(w.adjoint().matmul(h.matrix()).unwrap().matmul(&w).unwrap()).unwrap();
            let k2 = PosDefMatrix::new(w2.adjoint().matmul(k.matrix()).unwrap().matmul(&w2).unwrap()).unwrap();
            let x2 = w.adjoint().matmul(&x).unwrap().matmul(&w2).unwrap();
            let a = ky_fan_norms(&mean_apply(&p, &h, &k, &x).unwrap()).unwrap();
            let b = ky_fan_norms(&mean_apply(&p, &h2, &k2, &x2).unwrap()).unwrap();
            for (u, v) in a.iter().zip(&b) {
                prop_assert!((u - v).abs() <= 1e-10 * u.abs());
            }
        }

        #[test]
        fn homogeneity(seed in any::<u64>(), n in 1usize..5, scale in 0.01f64..100.0) {
            let p = pair(&[8, 6, 1], &[9, 4, 4]);
            let (h, k, x) = inputs(seed, n);
            let hs = PosDefMatrix::new(h.matrix().scale(scale)).unwrap();
            let ks = PosDefMatrix::new(k.matrix().scale(scale)).unwrap();
            let y = mean_apply(&p, &h, &k, &x).unwrap().scale(scale);
            let ys = mean_apply(&p, &hs, &ks, &x).unwrap();
            prop_assert!(rel_diff(&ys, &y) < 1e-12);
        }
    }
}
