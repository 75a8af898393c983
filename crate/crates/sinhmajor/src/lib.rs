//! Command-line driver and file formats for [`sinhmajor_core`].
//!
//! * [`io`] parses exponent pairs, sinh-product terms and density pairings
//!   from JSON.
//! * [`dto`] turns core results into JSON values.
//! * [`output`] writes JSON with 17 significant digits per float.
//! * [`trials`] runs matrix-mean trials on a thread pool.
//! * [`repro`] holds the reproduction bundles.

pub mod budget;
pub mod dto;
pub mod io;
pub mod output;
pub mod repro;
pub mod trials;

/// Seed used when neither `--seed` nor `SINHMAJOR_SEED` is given.
pub const DEFAULT_SEED: u64 = 42;
