//! Cyclic Jacobi eigensolver for real symmetric and complex Hermitian
//! matrices.
//!
//! Each rotation first removes the phase of the pivot `a_pq = |a_pq| e^{iφ}`
//! with a diagonal unitary, then applies the classical real rotation. For
//! real input the phase is ±1 and the update is the textbook one.

use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, Matrix, RealMatrix, Scalar};

pub const MAX_SWEEPS: usize = 60;
pub const CONVERGENCE: f64 = 1e-14;

/// Eigenvalues in ascending order; column `i` of `vectors` belongs to
/// `values[i]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Eigen<T> {
    pub values: Vec<f64>,
    pub vectors: Matrix<T>,
}

impl<T: Scalar> Eigen<T> {
    pub fn min(&self) -> f64 {
        self.values.first().copied().unwrap_or(0.0)
    }

    pub fn max(&self) -> f64 {
        self.values.last().copied().unwrap_or(0.0)
    }

    /// `V diag(g(λ)) V*`.
    pub fn reconstruct_with(&self, g: impl Fn(f64) -> f64) -> Matrix<T> {
        let n = self.values.len();
        let v = &self.vectors;
        Matrix::from_fn(n, n, |i, j| {
            let mut acc = T::zero();
            for k in 0..n {
                acc = acc + (v[(i, k)] * v[(j, k)].conj()).scale(g(self.values[k]));
            }
            acc
        })
    }
}

fn off_diagonal<T: Scalar>(a: &Matrix<T>) -> f64 {
    let n = a.rows();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)].modulus_sqr();
            }
        }
    }
    s.sqrt()
}

/// Diagonalizes a Hermitian (or real symmetric) matrix. Only the Hermitian
/// part is meaningful; callers validate symmetry.
pub fn jacobi_eigen<T: Scalar>(m: &Matrix<T>) -> Result<Eigen<T>> {
    if !m.is_square() {
        return Err(Error::Dimension("eigensolver needs a square matrix"));
    }
    let n = m.rows();
    let mut a = m.clone();
    let mut v = Matrix::<T>::identity(n);
    let norm = a.frobenius_norm();
    let target = CONVERGENCE * norm;

    let mut converged = norm == 0.0;
    let mut sweeps = 0;
    while !converged {
        if off_diagonal(&a) <= target {
            converged = true;
            break;
        }
        if sweeps == MAX_SWEEPS {
            break;
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }
    if !converged {
        return Err(Error::NonConvergence {
            sweeps,
            residual: off_diagonal(&a),
        });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re().total_cmp(&a[(j, j)].re()));
    let values = order.iter().map(|&i| a[(i, i)].re()).collect();
    let vectors = Matrix::from_fn(n, n, |i, j| v[(i, order[j])]);
    Ok(Eigen { values, vectors })
}

fn rotate<T: Scalar>(a: &mut Matrix<T>, v: &mut Matrix<T>, p: usize, q: usize) {
    let apq = a[(p, q)];
    let g = apq.modulus();
    if g == 0.0 {
        return;
    }
    let app = a[(p, p)].re();
    let aqq = a[(q, q)].re();
    // Skip pivots that are negligible against both diagonal entries.
    if g < f64::EPSILON * 1e-3 * (app.abs() + aqq.abs()) {
        a[(p, q)] = T::zero();
        a[(q, p)] = T::zero();
        return;
    }
    let phase = apq.scale(1.0 / g);
    let phase_c = phase.conj();
    let theta = (aqq - app) / (2.0 * g);
    let t = if theta.abs() > 1e150 {
        0.5 / theta
    } else {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    let n = a.rows();

    // A ← A V with V_pp = c, V_pq = s, V_qp = −s·conj(u), V_qq = c·conj(u)
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp.scale(c) - (akq * phase_c).scale(s);
        a[(k, q)] = akp.scale(s) + (akq * phase_c).scale(c);
    }
    // A ← V* A
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = apk.scale(c) - (aqk * phase).scale(s);
        a[(q, k)] = apk.scale(s) + (aqk * phase).scale(c);
    }
    a[(p, q)] = T::zero();
    a[(q, p)] = T::zero();
    a[(p, p)] = T::from_re(a[(p, p)].re());
    a[(q, q)] = T::from_re(a[(q, q)].re());

    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp.scale(c) - (vkq * phase_c).scale(s);
        v[(k, q)] = vkp.scale(s) + (vkq * phase_c).scale(c);
    }
}

/// Eigen-decomposition of a real symmetric matrix.
pub fn sym_eigen(m: &RealMatrix) -> Result<Eigen<f64>> {
    jacobi_eigen(m)
}

/// Eigen-decomposition of a complex Hermitian matrix.
pub fn hermitian_eigen(m: &ComplexMatrix) -> Result<Eigen<Complex64>> {
    jacobi_eigen(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use proptest::prelude::*;

    fn real(rows: &[Vec<f64>]) -> RealMatrix {
        RealMatrix::from_rows(rows).unwrap()
    }

    #[test]
    fn diagonal_input() {
        let e = sym_eigen(&real(&[vec![3.0, 0.0], vec![0.0, -5.0]])).unwrap();
        assert_eq!(e.values, vec![-5.0, 3.0]);
    }

    #[test]
    fn two_by_two() {
        // λ² − 4λ + 3 = 0
        let e = sym_eigen(&real(&[vec![2.0, 1.0], vec![1.0, 2.0]])).unwrap();
        assert!((e.values[0] - 1.0).abs() < 1e-15);
        assert!((e.values[1] - 3.0).abs() < 1e-15);
    }

    #[test]
    fn rank_one() {
        let e = sym_eigen(&RealMatrix::from_fn(3, 3, |_, _| 1.0)).unwrap();
        assert!(e.values[0].abs() < 1e-15 && e.values[1].abs() < 1e-15);
        assert!((e.values[2] - 3.0).abs() < 1e-14);
    }

    #[test]
    fn zero_and_empty_matrices() {
        assert_eq!(sym_eigen(&RealMatrix::zeros(3, 3)).unwrap().values, vec![0.0; 3]);
        assert!(sym_eigen(&RealMatrix::zeros(0, 0)).unwrap().values.is_empty());
        assert!(sym_eigen(&RealMatrix::zeros(2, 3)).is_err());
    }

    #[test]
    fn hermitian_known_spectrum() {
        // [[2, i], [−i, 2]] has eigenvalues 1 and 3.
        let m = ComplexMatrix::from_rows(&[
            vec![Complex64::new(2.0, 0.0), Complex64::new(0.0, 1.0)],
            vec![Complex64::new(0.0, -1.0), Complex64::new(2.0, 0.0)],
        ])
        .unwrap();
        let e = hermitian_eigen(&m).unwrap();
        assert!((e.values[0] - 1.0).abs() < 1e-15);
        assert!((e.values[1] - 3.0).abs() < 1e-15);
        let back = e.reconstruct_with(|x| x);
        assert!(back.sub(&m).unwrap().frobenius_norm() < 1e-14);
    }

    fn sym_strategy() -> impl Strategy<Value = RealMatrix> {
        (1usize..12).prop_flat_map(|n| {
            prop::collection::vec(-10.0f64..10.0, n * n).prop_map(move |v| {
                RealMatrix::from_fn(n, n, |i, j| {
                    let (r, c) = if i <= j { (i, j) } else { (j, i) };
                    v[r * n + c]
                })
            })
        })
    }

    fn herm_strategy() -> impl Strategy<Value = ComplexMatrix> {
        (1usize..9).prop_flat_map(|n| {
            prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), n * n).prop_map(move |v| {
                let raw = ComplexMatrix::from_fn(n, n, |i, j| Complex64::new(v[i * n + j].0, v[i * n + j].1));
                raw.add(&raw.adjoint()).unwrap()
            })
        })
    }

    fn check<T: Scalar>(m: &Matrix<T>) -> core::result::Result<(), TestCaseError> {
        let e = jacobi_eigen(m).unwrap();
        let n = m.rows();
        let norm = m.frobenius_norm();
        // ascending
        for w in e.values.windows(2) {
            prop_assert!(w[0] <= w[1]);
        }
        // reconstruction
        let back = e.reconstruct_with(|x| x);
        prop_assert!(back.sub(m).unwrap().frobenius_norm() <= 1e-10 * norm.max(1e-300));
        // orthonormal columns
        let vtv = e.vectors.adjoint().matmul(&e.vectors).unwrap();
        prop_assert!(vtv.sub(&Matrix::identity(n)).unwrap().max_abs() <= 1e-12);
        // M v = λ v
        for k in 0..n {
            let col = Matrix::from_fn(n, 1, |i, _| e.vectors[(i, k)]);
            let mv = m.matmul(&col).unwrap();
            let lv = col.scale(e.values[k]);
            prop_assert!(mv.sub(&lv).unwrap().frobenius_norm() <= 1e-10 * norm.max(1e-300));
        }
        Ok(())
    }

    proptest! {
        #[test]
        fn real_symmetric_invariants(m in sym_strategy()) {
            check(&m)?;
        }

        #[test]
        fn hermitian_invariants(m in herm_strategy()) {
            check(&m)?;
        }
    }
}
