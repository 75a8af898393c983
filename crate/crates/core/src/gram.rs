//! Numerical positive-definiteness probing through Gram matrices
//! `[φ(x_i − x_j)]`.
//!
//! A Gram matrix with a clearly negative eigenvalue is a witness that `φ`
//! is not positive definite. The converse never holds: "no witness found"
//! is not a positive-definiteness claim.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::matrix::RealMatrix;

pub use crate::eigen::{sym_eigen, Eigen};

/// Relative threshold: an eigenvalue below `−WITNESS_TOLERANCE · ‖M‖₁` is a
/// witness of non-positive-definiteness.
pub const WITNESS_TOLERANCE: f64 = 1e-8;

pub const MAX_PROBE_SIZE: usize = 32;

pub const DEFAULT_SPACINGS: [f64; 4] = [1.0 / 3.0, 0.5, 1.0, 2.0];

/// `[φ(x_i − x_j)]`, filled from the upper triangle so it is exactly
/// symmetric.
pub fn gram_matrix(phi: impl Fn(f64) -> f64, points: &[f64]) -> Result<RealMatrix> {
    if points.is_empty() {
        return Err(Error::InvalidArgument("gram matrix needs at least one point"));
    }
    let n = points.len();
    let mut m = RealMatrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let d = points[i] - points[j];
            let v = phi(d);
            if !v.is_finite() {
                return Err(Error::Evaluation { at: d });
            }
            m[(i, j)] = v;
            m[(j, i)] = v;
        }
    }
    Ok(m)
}

#[derive(Clone, Debug, PartialEq)]
pub struct GramReport {
    pub points: Vec<f64>,
    pub matrix: RealMatrix,
    pub eigenvalues: Vec<f64>,
    pub min_eigenvalue: f64,
    /// Product of the eigenvalues.
    pub determinant: f64,
    pub is_psd: bool,
}

impl GramReport {
    pub fn tolerance(&self) -> f64 {
        WITNESS_TOLERANCE * self.matrix.norm_one()
    }
}

pub fn gram_report(phi: impl Fn(f64) -> f64, points: &[f64]) -> Result<GramReport> {
    let matrix = gram_matrix(phi, points)?;
    let eig = sym_eigen(&matrix)?;
    let min_eigenvalue = eig.min();
    let determinant = eig.values.iter().product();
    let tol = WITNESS_TOLERANCE * matrix.norm_one();
    Ok(GramReport {
        points: points.to_vec(),
        is_psd: min_eigenvalue >= -tol,
        eigenvalues: eig.values,
        matrix,
        min_eigenvalue,
        determinant,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct GramWitness {
    pub spacing: f64,
    pub points: Vec<f64>,
    pub min_eigenvalue: f64,
    pub determinant: f64,
}

/// Arithmetic grid `{0, δ, …, (size − 1)δ}`.
pub fn grid(spacing: f64, size: usize) -> Vec<f64> {
    (0..size).map(|i| i as f64 * spacing).collect()
}

/// Searches arithmetic grids for a Gram matrix with a negative eigenvalue.
///
/// Enumeration: sizes ascending from 2, and for each size the spacings
/// ascending; the first witness found is returned, so reports are the
/// smallest matrix that works.
pub fn gram_probe(phi: impl Fn(f64) -> f64, spacings: &[f64], max_size: usize) -> Result<Option<GramWitness>> {
    gram_probe_until(phi, spacings, max_size, || false)
}

/// Like [`gram_probe`], but stops (returning `Ok(None)`) as soon as
/// `stop()` reports true; it is polled before each Gram matrix.
pub fn gram_probe_until(
    phi: impl Fn(f64) -> f64,
    spacings: &[f64],
    max_size: usize,
    mut stop: impl FnMut() -> bool,
) -> Result<Option<GramWitness>> {
    if max_size > MAX_PROBE_SIZE {
        return Err(Error::InvalidArgument("probe size is limited to 32"));
    }
    if spacings.iter().any(|d| d.is_nan() || *d <= 0.0 || !d.is_finite()) {
        return Err(Error::InvalidArgument("grid spacings must be positive"));
    }
    let mut order: Vec<f64> = spacings.to_vec();
    order.sort_by(f64::total_cmp);
    for size in 2..=max_size {
        for &spacing in &order {
            if stop() {
                return Ok(None);
            }
            let points = grid(spacing, size);
            let report = match gram_report(&phi, &points) {
                Ok(r) => r,
                // Overflowing values at large separations carry no
                // information about this grid; move on.
                Err(Error::Evaluation { .. }) => continue,
                Err(e) => return Err(e),
            };
            if !report.is_psd {
                return Ok(Some(GramWitness {
                    spacing,
                    points,
                    min_eigenvalue: report.min_eigenvalue,
                    determinant: report.determinant,
                }));
            }
        }
    }
    Ok(None)
}
