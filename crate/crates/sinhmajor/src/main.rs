use std::fs::File;
use std::io::{self, IsTerminal, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use sinhmajor::budget::Deadline;
use sinhmajor::io::{parse_pair, parse_pair_relation, parse_pairing, parse_terms, InputError};
use sinhmajor::output::write_json;
use sinhmajor::trials::verify_parallel;
use sinhmajor::{dto, repro, DEFAULT_SEED};
use sinhmajor_core::classifier::{classify_single, classify_with, ProbeOptions};
use sinhmajor_core::density::{check_nonneg_grid, reconstruct_log_h, CombinedDensity};
use sinhmajor_core::expander::{certify_nonnegative, default_order, expand, rescale_to_integers};
use sinhmajor_core::gram::{gram_probe, gram_report};
use sinhmajor_core::scalarfn::{ln_sinhc, SinhRatio};
use sinhmajor_core::{Exponent, ExponentPair};

#[derive(Parser)]
#[command(name = "sinhmajor", version, about = "Sinh-ratio means: evaluation, classification, certificates and matrix-mean checks")]
struct Cli {
    /// Read the main JSON input from a file ("-" for stdin) instead of a flag
    #[arg(long = "in", global = true, value_name = "PATH")]
    input: Option<PathBuf>,

    /// Write the result to a file instead of stdout
    #[arg(long = "out", global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Replace exponents by their absolute values when reading pairs
    #[arg(long, global = true)]
    abs: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate h(x), f(t) and the two-variable mean
    Eval {
        /// Pair as JSON: {"alpha": [...], "beta": [...]}
        #[arg(long)]
        pair: Option<String>,
        /// Points x for h(x)
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        x: Vec<f64>,
        /// Points t > 0 for f(t)
        #[arg(long, value_delimiter = ',')]
        t: Vec<f64>,
        /// Arguments s t of the mean M(s, t); repeatable
        #[arg(long, num_args = 2, value_names = ["S", "T"])]
        mean: Vec<f64>,
    },
    /// Gram matrix of h (or h^power) at the given points
    Gram {
        #[arg(long)]
        pair: Option<String>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        points: Vec<f64>,
        #[arg(long)]
        power: Option<f64>,
    },
    /// Search equally spaced grids for a Gram matrix with a negative eigenvalue
    Probe {
        #[arg(long)]
        pair: Option<String>,
        #[arg(long, value_delimiter = ',', default_value = "1/3,1/2,1,2")]
        spacings: Vec<String>,
        #[arg(long, default_value_t = 16)]
        max_size: usize,
        #[arg(long)]
        power: Option<f64>,
    },
    /// Decide infinite divisibility or non-positive-definiteness of h
    Classify {
        #[arg(long)]
        pair: Option<String>,
        /// Also run the Gram probes
        #[arg(long)]
        probe: bool,
        /// Wall-clock budget for the certificate search and probes
        #[arg(long, default_value_t = 2000)]
        budget_ms: u64,
        /// Taylor order for the density certificate
        #[arg(long)]
        order: Option<u32>,
    },
    /// Exact single-pair order f_{a,b} <= f_{c,d}
    ClassifySingle { a: String, b: String, c: String, d: String },
    /// Factor a weakly submajorized pair into elementary factors
    Factorize {
        #[arg(long)]
        pair: Option<String>,
    },
    /// Expand signed sinh products into a cosh (or sinh) sum
    Expand {
        /// Terms as JSON: [{"coefficient": "1", "frequencies": [1, "1/2"]}, ...]
        #[arg(long)]
        terms: Option<String>,
        /// Keep the frequencies as given instead of scaling them to integers
        #[arg(long)]
        no_rescale: bool,
    },
    /// Taylor-coefficient positivity certificate for sinh-product terms
    Certify {
        #[arg(long)]
        terms: Option<String>,
        #[arg(long)]
        order: Option<u32>,
    },
    /// Lévy density of log h: nonnegativity screen and reconstruction
    Density {
        /// A pair, or [{"a": .., "b": .., "sign": 1}, ...]
        #[arg(long)]
        pairing: Option<String>,
        #[arg(long, default_value_t = 400)]
        grid: usize,
        #[arg(long)]
        t_max: Option<f64>,
        /// Points x at which to rebuild log h from the density
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        reconstruct: Vec<f64>,
    },
    /// Random matrix check of |||M_lhs X||| <= |||M_rhs X|||
    VerifyMean {
        #[arg(long)]
        lhs: Option<String>,
        #[arg(long)]
        rhs: Option<String>,
        #[arg(long, default_value_t = 4)]
        n: usize,
        #[arg(long, default_value_t = 200)]
        trials: u64,
        #[arg(long, env = "SINHMAJOR_SEED", default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Also write per-trial norms as CSV
        #[arg(long, value_name = "PATH")]
        csv: Option<PathBuf>,
        /// Exit with status 1 on any violation, including exploratory runs
        #[arg(long)]
        strict: bool,
    },
    /// Run a reproduction bundle ("all" runs every bundle)
    Repro {
        name: String,
        #[arg(long, env = "SINHMAJOR_SEED", default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

enum Failure {
    Check(String),
    Usage(String),
    Numerical(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Check(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Numerical(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Check(m) | Failure::Usage(m) | Failure::Numerical(m) => m,
        }
    }
}

impl From<sinhmajor_core::Error> for Failure {
    fn from(e: sinhmajor_core::Error) -> Self {
        if e.is_numerical() {
            Failure::Numerical(e.to_string())
        } else {
            Failure::Usage(e.to_string())
        }
    }
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        match e {
            InputError::Core(c) => c.into(),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("sinhmajor: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

/// The main JSON input: the flag if given, then `--in`, then piped stdin.
fn primary(flag: Option<String>, input: &Option<PathBuf>, what: &str) -> Result<String, Failure> {
    if let Some(text) = flag {
        return Ok(text);
    }
    match input {
        Some(p) if p.as_os_str() == "-" => read_stdin(),
        Some(p) => std::fs::read_to_string(p).map_err(|e| Failure::Usage(format!("{}: {e}", p.display()))),
        None if !io::stdin().is_terminal() => read_stdin(),
        None => Err(Failure::Usage(format!("missing {what} (pass the flag, --in PATH or pipe JSON to stdin)"))),
    }
}

fn read_stdin() -> Result<String, Failure> {
    let mut s = String::new();
    io::stdin().read_to_string(&mut s)?;
    Ok(s)
}

fn open_out(out: &Option<PathBuf>) -> Result<Box<dyn Write>, Failure> {
    Ok(match out {
        Some(p) => Box::new(File::create(p).map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))?),
        None => Box::new(io::stdout().lock()),
    })
}

fn emit_json(out: &Option<PathBuf>, v: &Value) -> Outcome {
    let mut w = open_out(out)?;
    write_json(&mut w, v)?;
    w.flush()?;
    Ok(())
}

fn no_csv(format: Format, command: &str) -> Outcome {
    if format == Format::Csv {
        return Err(Failure::Usage(format!("{command} has no CSV output")));
    }
    Ok(())
}

fn power_fn(ratio: SinhRatio, power: Option<f64>) -> Result<impl Fn(f64) -> f64, Failure> {
    if let Some(r) = power {
        if !(r > 0.0 && r.is_finite()) {
            return Err(Failure::Usage("--power must be positive".into()));
        }
    }
    Ok(move |x: f64| match power {
        None => ratio.eval(x),
        Some(r) => (r * ratio.ln_eval(x)).exp(),
    })
}

fn run(cli: Cli) -> Outcome {
    let Cli {
        input,
        out,
        format,
        abs,
        command,
    } = cli;
    let pair_from = |flag: Option<String>| -> Result<ExponentPair, Failure> {
        Ok(parse_pair(&primary(flag, &input, "--pair")?, abs)?)
    };
    match command {
        Command::Eval { pair, x, t, mean } => {
            let pair = pair_from(pair)?;
            eval(&pair, &x, &t, &mean, format, &out)
        }
        Command::Gram { pair, points, power } => {
            no_csv(format, "gram")?;
            let pair = pair_from(pair)?;
            let phi = power_fn(SinhRatio::from_pair(&pair), power)?;
            let report = gram_report(phi, &points)?;
            let mut v = dto::gram_report(&report);
            v["command"] = json!("gram");
            v["pair"] = dto::pair(&pair);
            v["power"] = json!(power.unwrap_or(1.0));
            emit_json(&out, &v)
        }
        Command::Probe {
            pair,
            spacings,
            max_size,
            power,
        } => {
            no_csv(format, "probe")?;
            let pair = pair_from(pair)?;
            let spacings = spacings
                .iter()
                .map(|s| Exponent::from_str(s).map(|e| e.to_f64()))
                .collect::<Result<Vec<_>, _>>()?;
            let phi = power_fn(SinhRatio::from_pair(&pair), power)?;
            let witness = gram_probe(phi, &spacings, max_size)?;
            emit_json(
                &out,
                &json!({
                    "command": "probe",
                    "pair": dto::pair(&pair),
                    "power": power.unwrap_or(1.0),
                    "spacings": spacings,
                    "max_size": max_size,
                    "witness": witness.as_ref().map(dto::witness),
                }),
            )
        }
        Command::Classify {
            pair,
            probe,
            budget_ms,
            order,
        } => {
            no_csv(format, "classify")?;
            let pair = pair_from(pair)?;
            let options = ProbeOptions {
                gram: probe,
                order,
                ..ProbeOptions::default()
            };
            let mut budget = Deadline::from_millis(budget_ms);
            let c = classify_with(pair.alpha(), pair.beta(), &options, &mut budget)?;
            if format == Format::Text {
                let mut w = open_out(&out)?;
                writeln!(w, "{} via {}", c.verdict, c.rule)?;
                return Ok(());
            }
            let mut v = dto::classification(&c);
            v["command"] = json!("classify");
            v["pair"] = dto::pair(&pair);
            emit_json(&out, &v)
        }
        Command::ClassifySingle { a, b, c, d } => {
            no_csv(format, "classify-single")?;
            let parse = |s: &str| Exponent::from_str(s).map_err(|e| Failure::Usage(format!("{s:?}: {e}")));
            let (a, b, c, d) = (parse(&a)?, parse(&b)?, parse(&c)?, parse(&d)?);
            let holds = classify_single(&a, &b, &c, &d)?;
            if format == Format::Text {
                let mut w = open_out(&out)?;
                writeln!(w, "{holds}")?;
                return Ok(());
            }
            emit_json(
                &out,
                &json!({
                    "command": "classify-single",
                    "a": dto::exponent(&a),
                    "b": dto::exponent(&b),
                    "c": dto::exponent(&c),
                    "d": dto::exponent(&d),
                    "dominated": holds,
                }),
            )
        }
        Command::Factorize { pair } => {
            no_csv(format, "factorize")?;
            let pair = pair_from(pair)?;
            let f = sinhmajor_core::factorizer::factorize_pair(&pair)?;
            let mut v = dto::factorization(&f);
            v["command"] = json!("factorize");
            emit_json(&out, &v)
        }
        Command::Expand { terms, no_rescale } => {
            no_csv(format, "expand")?;
            let terms = parse_terms(&primary(terms, &input, "--terms")?)?;
            let (scale, used) = if no_rescale {
                (None, terms)
            } else {
                let (s, t) = rescale_to_integers(&terms)?;
                (Some(s), t)
            };
            let e = expand(&used)?;
            emit_json(
                &out,
                &json!({
                    "command": "expand",
                    "scale": scale.as_ref().map(dto::rational),
                    "terms": used.iter().map(dto::term).collect::<Vec<_>>(),
                    "expansion": dto::expansion(&e),
                }),
            )
        }
        Command::Certify { terms, order } => {
            no_csv(format, "certify")?;
            let terms = parse_terms(&primary(terms, &input, "--terms")?)?;
            let (scale, ints) = rescale_to_integers(&terms)?;
            let e = expand(&ints)?;
            let k = order.unwrap_or_else(|| default_order(&e));
            let c = certify_nonnegative(&e, k)?;
            emit_json(
                &out,
                &json!({
                    "command": "certify",
                    "scale": dto::rational(&scale),
                    "expansion": dto::expansion(&e),
                    "certificate": dto::positivity(&c),
                }),
            )
        }
        Command::Density {
            pairing,
            grid,
            t_max,
            reconstruct,
        } => {
            let d = parse_pairing(&primary(pairing, &input, "--pairing")?)?;
            density(&d, grid, t_max, &reconstruct, format, &out)
        }
        Command::VerifyMean {
            lhs,
            rhs,
            n,
            trials,
            seed,
            csv,
            strict,
        } => {
            let (lhs, rhs) = match (lhs, rhs) {
                (Some(l), Some(r)) => (parse_pair(&l, abs)?, parse_pair(&r, abs)?),
                (None, None) => parse_pair_relation(&primary(None, &input, "--lhs/--rhs")?)?,
                _ => return Err(Failure::Usage("give both --lhs and --rhs".into())),
            };
            let run = verify_parallel(&lhs, &rhs, n, trials, seed)?;
            if let Some(path) = &csv {
                let f = File::create(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
                run.write_csv(f).map_err(|e| Failure::Usage(e.to_string()))?;
            }
            if format == Format::Csv {
                run.write_csv(open_out(&out)?).map_err(|e| Failure::Usage(e.to_string()))?;
            } else {
                emit_json(&out, &run.to_json())?;
            }
            if (strict || !run.exploratory) && run.failures() > 0 {
                return Err(Failure::Check(format!(
                    "{} of {} trials violate the inequality",
                    run.failures(),
                    run.reports.len()
                )));
            }
            Ok(())
        }
        Command::Repro { name, seed } => {
            no_csv(format, "repro")?;
            let Some(bundles) = repro::run(&name, seed)? else {
                return Err(Failure::Usage(format!(
                    "unknown bundle {name:?}; expected one of: all, {}",
                    repro::BUNDLES.join(", ")
                )));
            };
            let pass = bundles.iter().all(repro::Bundle::pass);
            let mut w = open_out(&out)?;
            if format == Format::Text {
                for b in &bundles {
                    write!(w, "{}", b.to_text())?;
                }
            } else {
                write_json(
                    &mut w,
                    &json!({
                        "command": "repro",
                        "name": name,
                        "seed": seed,
                        "pass": pass,
                        "bundles": bundles.iter().map(repro::Bundle::to_json).collect::<Vec<_>>(),
                    }),
                )?;
            }
            w.flush()?;
            if pass {
                Ok(())
            } else {
                let failed: Vec<_> = bundles.iter().filter(|b| !b.pass()).map(|b| b.name).collect();
                Err(Failure::Check(format!("failed: {}", failed.join(", "))))
            }
        }
    }
}

fn eval(pair: &ExponentPair, xs: &[f64], ts: &[f64], mean: &[f64], format: Format, out: &Option<PathBuf>) -> Outcome {
    if xs.is_empty() && ts.is_empty() && mean.is_empty() {
        return Err(Failure::Usage("give at least one of --x, --t, --mean".into()));
    }
    let ratio = SinhRatio::from_pair(pair);
    let mut rows = Vec::new();
    for &x in xs {
        let h = ratio.eval(x);
        rows.push((x, (2.0 * x).exp(), h, x.exp() * h));
    }
    for &t in ts {
        if t.is_nan() || t <= 0.0 {
            return Err(Failure::Usage(format!("--t must be positive, got {t}")));
        }
        let x = 0.5 * t.ln();
        let h = ratio.eval(x);
        rows.push((x, t, h, t.sqrt() * h));
    }
    let means = mean
        .chunks(2)
        .map(|st| {
            let (s, t) = (st[0], st[1]);
            if !(s > 0.0 && t > 0.0) {
                return Err(Failure::Usage("mean arguments must be positive".into()));
            }
            Ok(json!({"s": s, "t": t, "value": sinhmajor_core::scalarfn::eval_mean(pair, s, t)}))
        })
        .collect::<Result<Vec<_>, _>>()?;
    if format == Format::Csv {
        if !means.is_empty() {
            return Err(Failure::Usage("--mean has no CSV output".into()));
        }
        let mut w = csv::Writer::from_writer(open_out(out)?);
        w.write_record(["x", "t", "h", "f"]).map_err(|e| Failure::Usage(e.to_string()))?;
        for (x, t, h, f) in rows {
            w.serialize((x, t, h, f)).map_err(|e| Failure::Usage(e.to_string()))?;
        }
        w.flush()?;
        return Ok(());
    }
    emit_json(
        out,
        &json!({
            "command": "eval",
            "pair": dto::pair(pair),
            "points": rows.iter().map(|(x, t, h, f)| json!({"x": x, "t": t, "h": h, "f": f})).collect::<Vec<_>>(),
            "means": means,
        }),
    )
}

fn log_h_from_terms(d: &CombinedDensity, x: f64) -> f64 {
    d.terms()
        .iter()
        .map(|t| t.sign() as f64 * (ln_sinhc(t.a().to_f64() * x) - ln_sinhc(t.b().to_f64() * x)))
        .sum()
}

fn density(
    d: &CombinedDensity,
    grid: usize,
    t_max: Option<f64>,
    reconstruct: &[f64],
    format: Format,
    out: &Option<PathBuf>,
) -> Outcome {
    let largest = d
        .terms()
        .iter()
        .flat_map(|t| [t.a().to_f64(), t.b().to_f64()])
        .fold(0.0, f64::max);
    let t_max = t_max.unwrap_or(20.0 * largest);
    if format == Format::Csv {
        return density_csv(d, grid, t_max, out);
    }
    let report = check_nonneg_grid(d, t_max, grid)?;
    let points = reconstruct
        .iter()
        .map(|&x| {
            let rebuilt = reconstruct_log_h(d, x)?;
            let direct = log_h_from_terms(d, x);
            Ok(json!({"x": x, "reconstructed": rebuilt, "direct": direct, "error": (rebuilt - direct).abs()}))
        })
        .collect::<Result<Vec<_>, sinhmajor_core::Error>>()?;
    emit_json(
        out,
        &json!({
            "command": "density",
            "terms": dto::density_terms(d),
            "regularized": d.regularized(),
            "t_max": t_max,
            "grid": grid,
            "screen": dto::nonneg(&report),
            "reconstruction": points,
        }),
    )
}

fn density_csv(d: &CombinedDensity, grid: usize, t_max: f64, out: &Option<PathBuf>) -> Outcome {
    if grid < 2 || t_max.is_nan() || t_max <= 0.0 {
        return Err(Failure::Usage("density CSV needs --grid >= 2 and a positive --t-max".into()));
    }
    let mut w = csv::Writer::from_writer(open_out(out)?);
    w.write_record(["t", "t2_density", "density"]).map_err(|e| Failure::Usage(e.to_string()))?;
    for i in 0..grid {
        let t = t_max * i as f64 / (grid - 1) as f64;
        w.serialize((t, d.eval_t2(t), d.eval(t))).map_err(|e| Failure::Usage(e.to_string()))?;
    }
    w.flush()?;
    Ok(())
}
