//! Parallel matrix-mean trials. Each trial draws from its own RNG stream,
//! so reports do not depend on the thread schedule.

use std::io::Write;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use sinhmajor_core::matmeans::{is_exploratory, run_trial, MeanTrialReport};
use sinhmajor_core::{Error, ExponentPair, Result};

use crate::dto;

#[derive(Clone, Debug)]
pub struct MeanRun {
    pub lhs: ExponentPair,
    pub rhs: ExponentPair,
    pub n: usize,
    pub seed: u64,
    pub exploratory: bool,
    pub reports: Vec<MeanTrialReport>,
}

impl MeanRun {
    pub fn failures(&self) -> usize {
        self.reports.iter().filter(|r| !r.pass).count()
    }

    pub fn min_margin(&self) -> f64 {
        self.reports.iter().map(|r| r.margin).fold(f64::INFINITY, f64::min)
    }

    pub fn first_failure(&self) -> Option<u64> {
        self.reports.iter().find(|r| !r.pass).map(|r| r.trial)
    }

    pub fn summary(&self) -> Value {
        json!({
            "trials": self.reports.len(),
            "passes": self.reports.len() - self.failures(),
            "failures": self.failures(),
            "first_failure": self.first_failure(),
            "min_margin": if self.reports.is_empty() { Value::Null } else { json!(self.min_margin()) },
        })
    }

    pub fn to_json(&self) -> Value {
        json!({
            "command": "verify-mean",
            "lhs": dto::pair(&self.lhs),
            "rhs": dto::pair(&self.rhs),
            "n": self.n,
            "seed": self.seed,
            "exploratory": self.exploratory,
            "summary": self.summary(),
            "trials": self.reports.iter().map(dto::trial).collect::<Vec<_>>(),
        })
    }

    /// One row per trial with the operator, trace and Frobenius norms.
    pub fn write_csv<W: Write>(&self, w: W) -> csv::Result<()> {
        let mut out = csv::Writer::from_writer(w);
        for r in &self.reports {
            out.serialize(CsvRow {
                seed: r.seed,
                trial: r.trial,
                n: r.n,
                pass: r.pass,
                margin: r.margin,
                lhs_operator: r.lhs_norms.operator(),
                rhs_operator: r.rhs_norms.operator(),
                lhs_trace: r.lhs_norms.trace(),
                rhs_trace: r.rhs_norms.trace(),
                lhs_frobenius: r.lhs_norms.frobenius,
                rhs_frobenius: r.rhs_norms.frobenius,
            })?;
        }
        out.flush()?;
        Ok(())
    }
}

#[derive(Serialize)]
struct CsvRow {
    seed: u64,
    trial: u64,
    n: usize,
    pass: bool,
    margin: f64,
    lhs_operator: f64,
    rhs_operator: f64,
    lhs_trace: f64,
    rhs_trace: f64,
    lhs_frobenius: f64,
    rhs_frobenius: f64,
}

/// Runs trials `0..trials` in parallel; reports come back in trial order.
pub fn verify_parallel(lhs: &ExponentPair, rhs: &ExponentPair, n: usize, trials: u64, seed: u64) -> Result<MeanRun> {
    if n == 0 {
        return Err(Error::InvalidArgument("matrix dimension must be positive"));
    }
    let reports = (0..trials)
        .into_par_iter()
        .map(|t| run_trial(lhs, rhs, n, seed, t))
        .collect::<Result<Vec<_>>>()?;
    Ok(MeanRun {
        lhs: lhs.clone(),
        rhs: rhs.clone(),
        n,
        seed,
        exploratory: is_exploratory(lhs, rhs),
        reports,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use sinhmajor_core::matmeans::verify_inequality;

    #[test]
    fn matches_sequential_run() {
        let l = ExponentPair::from_ints(&[1], &[1]).unwrap();
        let r = ExponentPair::from_ints(&[2], &[1]).unwrap();
        let par = verify_parallel(&l, &r, 3, 12, 7).unwrap();
        let seq = verify_inequality(&l, &r, 3, 12, 7).unwrap();
        assert_eq!(par.reports, seq);
        assert_eq!(par.failures(), 0);
        assert!(!par.exploratory);
    }

    #[test]
    fn csv_has_a_row_per_trial() {
        let l = ExponentPair::from_ints(&[1], &[1]).unwrap();
        let r = ExponentPair::from_ints(&[2], &[1]).unwrap();
        let run = verify_parallel(&l, &r, 2, 3, 1).unwrap();
        let mut buf = Vec::new();
        run.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), 4);
        assert!(text.starts_with("seed,trial,n,pass,margin,"));
    }
}
