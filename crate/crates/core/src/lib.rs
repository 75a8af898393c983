//! # sinhmajor-core
//!
//! Symmetric homogeneous means built from ratios of hyperbolic sines,
//!
//! ```text
//! f_{α,β}(t) = t^γ ∏ b_i (t^{a_i} − 1) / (a_i (t^{b_i} − 1)),   γ = (1 − Σ(a_i − b_i)) / 2,
//! ```
//!
//! together with the machinery needed to decide (or numerically probe) the
//! order `f ⪯ g`: positive definiteness of `x ↦ f(e^{2x}) / g(e^{2x})`.
//! Under the substitution `t = e^{2x}` every question reduces to the even
//! function
//!
//! ```text
//! h(x) = ∏ b_i sinh(a_i x) / (a_i sinh(b_i x)).
//! ```
//!
//! ## Modules
//!
//! | Module | Purpose |
//! |--------|---------|
//! | [`exponents`] | exponent tuples, γ, weak submajorization |
//! | [`scalarfn`] | stable evaluation of `f`, `h` and the two-variable mean |
//! | [`expander`] | exact sinh-product to cosh/sinh expansion, Taylor positivity certificates |
//! | [`factorizer`] | decomposition of a submajorized ratio into elementary factors |
//! | [`classifier`] | verdicts: infinitely divisible / not positive definite / unknown |
//! | [`gram`] | Gram matrices, Jacobi eigensolver, witness search |
//! | [`density`] | Lévy-type densities of sinh ratios and quadrature reconstruction |
//! | [`matmeans`] | matrix means on Hermitian pairs and unitarily invariant norms |
//!
//! The crate is `no_std` and only needs `alloc`. File formats, the CLI and
//! wall-clock budgets live in the companion `sinhmajor` crate.
//!
//! ## Quick start
//!
//! ```
//! use sinhmajor_core::exponents::ExponentPair;
//! use sinhmajor_core::scalarfn::eval_h;
//!
//! let pair = ExponentPair::from_ints(&[8, 6, 3], &[9, 4, 4]).unwrap();
//! let v = eval_h(&pair, 1.0 / 3.0);
//! assert!((v - 0.9780192940).abs() < 1e-9);
//! ```

#![no_std]

extern crate alloc;

pub mod classifier;
pub mod density;
pub mod eigen;
pub mod error;
pub mod expander;
pub mod exponents;
pub mod factorizer;
pub mod gram;
pub mod matmeans;
pub mod matrix;
pub mod quadrature;
pub mod scalarfn;

pub use error::{Error, Result};
pub use exponents::{Exponent, ExponentPair, ExponentTuple};
