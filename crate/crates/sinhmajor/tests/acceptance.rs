//! Acceptance suite: one line per criterion with the measured values, the
//! pinned tolerances and the runtime against its limit.

use std::process::ExitCode;

use sinhmajor::repro::{self, Bundle};
use sinhmajor::DEFAULT_SEED;

type Criterion = (&'static str, fn() -> sinhmajor_core::Result<Bundle>);

fn criteria() -> Vec<Criterion> {
    vec![
        ("AC1", repro::counterexample_values),
        ("AC2", repro::counterexample_gram),
        ("AC3", repro::density_positivity_certificate),
        ("AC4", repro::factorization_reconstruction),
        ("AC5", || repro::mcintosh(DEFAULT_SEED)),
        ("AC6", || repro::mixed_length_inequality(DEFAULT_SEED)),
        ("AC7", || repro::single_pair_regions(DEFAULT_SEED)),
        ("AC8", || repro::infinite_divisibility(DEFAULT_SEED)),
        ("AC9", repro::density_reconstruction),
        ("AC10", || repro::negative_controls(DEFAULT_SEED)),
    ]
}

fn summary(b: &Bundle) -> String {
    b.checks
        .iter()
        .map(|c| {
            let measured = match &c.measured {
                serde_json::Value::Array(_) | serde_json::Value::Object(_) => "[..]".to_string(),
                v => v.to_string(),
            };
            format!("{}{} = {} ({})", if c.pass { "" } else { "!" }, c.name, measured, c.expected)
        })
        .collect::<Vec<_>>()
        .join("; ")
}

fn main() -> ExitCode {
    let mut failed = Vec::new();
    for (id, run) in criteria() {
        match run() {
            Ok(b) => {
                let ok = b.pass() && b.within_limit();
                println!(
                    "{id:<4} {} {} | {} | {:.3} ms (limit {} ms)",
                    if ok { "PASS" } else { "FAIL" },
                    b.name,
                    summary(&b),
                    b.elapsed.as_secs_f64() * 1e3,
                    b.limit.as_millis(),
                );
                if !ok {
                    failed.push(id);
                }
            }
            Err(e) => {
                println!("{id:<4} FAIL error: {e}");
                failed.push(id);
            }
        }
    }
    if failed.is_empty() {
        println!("acceptance: all criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failed {}", failed.join(", "));
        ExitCode::FAILURE
    }
}
