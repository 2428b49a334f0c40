//! `crimelab` command-line front end.
//!
//! Every subcommand builds an experiment config, runs it through the
//! library and prints a table. `--out` (or `CRIMELAB_OUT_DIR`) additionally
//! saves the JSON report, a CSV where one is defined, and with `--plot` an
//! SVG view.

mod render;

use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use crimelab::experiment::{
    csv_string, emit_plot, error_report, load_config, run, write_report, BasisSpec,
    ExperimentConfig, ExperimentKind, ExperimentReport, ExperimentResult, OutputError,
};
use crimelab::models::synthesize;
use crimelab::Complex64;
use crimelab::{BasisKind, ParameterRange, SeriesModel};

#[derive(Parser)]
#[command(
    name = "crimelab",
    version,
    about = "Inverse-crime laboratory for scalar inverse problems"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a synthetic datum.
    Synth {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, allow_hyphen_values = true)]
        truth: f64,
        #[arg(long, default_value_t = 0.0)]
        noise: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_parser = parse_range, default_value = "0,1")]
        range: (f64, f64),
    },
    /// Invert a monomial model against its own synthetic datum.
    Invert {
        #[arg(long, value_parser = Complex64::from_str, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        coeffs: Vec<Complex64>,
        #[arg(long, allow_hyphen_values = true)]
        truth: f64,
        /// Estimator order (default: all coefficients).
        #[arg(long = "M")]
        m: Option<usize>,
        /// Predictor order (default: all coefficients).
        #[arg(long = "N")]
        n: Option<usize>,
        #[arg(long, default_value_t = 0.0)]
        noise: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_parser = parse_range, default_value = "0,1")]
        range: (f64, f64),
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Print the solution lattice of the mirror-exponential model.
    Mirror {
        #[arg(long)]
        k: f64,
        #[arg(long, allow_hyphen_values = true)]
        truth: f64,
        #[arg(long, value_parser = Complex64::from_str, allow_hyphen_values = true, default_value = "-1")]
        a0: Complex64,
        #[arg(long, default_value_t = 16)]
        lattice_bound: u32,
        #[arg(long, value_parser = parse_range, default_value = "0,1")]
        range: (f64, f64),
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Intersect mirror lattices over several wavenumbers.
    Multifreq {
        #[arg(long, value_delimiter = ',', required = true)]
        k: Vec<f64>,
        #[arg(long, allow_hyphen_values = true)]
        truth: f64,
        #[arg(long, value_parser = Complex64::from_str, allow_hyphen_values = true, default_value = "-1")]
        a0: Complex64,
        #[arg(long, value_parser = parse_range, default_value = "0,1")]
        range: (f64, f64),
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Tabulate the truncation-mismatch bias over a grid of truths.
    Mismatch {
        #[arg(long, value_parser = Complex64::from_str, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        coeffs: Vec<Complex64>,
        #[arg(long = "M")]
        m: usize,
        #[arg(long = "N")]
        n: usize,
        /// Comma list, or `start:stop:count` (inclusive).
        #[arg(long, value_parser = parse_grid, allow_hyphen_values = true)]
        phi_grid: Grid,
        #[arg(long, value_parser = parse_range, default_value = "0,1")]
        range: (f64, f64),
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Sample the discrepancy curve and list its minima.
    Scan {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, allow_hyphen_values = true)]
        truth: f64,
        #[arg(long = "M")]
        m: Option<usize>,
        #[arg(long, default_value_t = 1024)]
        samples: usize,
        #[arg(long, value_parser = parse_range, default_value = "0,1")]
        range: (f64, f64),
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run an experiment config file.
    Run {
        #[arg(long)]
        config: PathBuf,
        #[command(flatten)]
        output: OutputArgs,
    },
}

/// Either a monomial (`--coeffs`) or a mirror-exponential (`--k`, with `a_0 = -1`) model.
#[derive(Args)]
#[group(required = true, multiple = false, id = "model")]
struct ModelArgs {
    #[arg(long, value_parser = Complex64::from_str, value_delimiter = ',', allow_hyphen_values = true)]
    coeffs: Option<Vec<Complex64>>,
    #[arg(long)]
    k: Option<f64>,
}

#[derive(Args)]
struct OutputArgs {
    /// Directory for report.json and CSV output.
    #[arg(long, env = "CRIMELAB_OUT_DIR")]
    out: Option<PathBuf>,
    /// Also write plot.svg into the output directory.
    #[arg(long, requires = "out")]
    plot: bool,
}

/// Outcome of a subcommand, mapped to the process exit code.
enum Failure {
    Usage(String),
    Domain(String),
}

fn parse_range(s: &str) -> Result<(f64, f64), String> {
    let (lo, hi) = s
        .split_once(',')
        .ok_or_else(|| format!("expected `lo,hi`, got {s:?}"))?;
    let num = |v: &str| v.trim().parse::<f64>().map_err(|e| format!("{v:?}: {e}"));
    Ok((num(lo)?, num(hi)?))
}

/// Truth values for a mismatch sweep.
#[derive(Clone)]
struct Grid(Vec<f64>);

fn parse_grid(s: &str) -> Result<Grid, String> {
    let num = |v: &str| v.trim().parse::<f64>().map_err(|e| format!("{v:?}: {e}"));
    let parts: Vec<&str> = s.split(':').collect();
    match parts.as_slice() {
        [start, stop, count] => {
            let (a, b) = (num(start)?, num(stop)?);
            let n: usize = count
                .trim()
                .parse()
                .map_err(|e| format!("{count:?}: {e}"))?;
            match n {
                0 => Err("grid count must be positive".into()),
                1 => Ok(Grid(vec![a])),
                _ => Ok(Grid(
                    (0..n)
                        .map(|i| a + (b - a) * i as f64 / (n - 1) as f64)
                        .collect(),
                )),
            }
        }
        [list] => list.split(',').map(num).collect::<Result<_, _>>().map(Grid),
        _ => Err(format!(
            "expected a comma list or start:stop:count, got {s:?}"
        )),
    }
}

fn range_of((lo, hi): (f64, f64)) -> Result<ParameterRange, Failure> {
    ParameterRange::new(lo, hi).map_err(|e| Failure::Usage(e.to_string()))
}

fn model_config(kind: ExperimentKind, model: ModelArgs) -> ExperimentConfig {
    match (model.coeffs, model.k) {
        (Some(coeffs), _) => ExperimentConfig::new(kind, BasisSpec::Monomial, coeffs),
        (None, k) => ExperimentConfig::new(
            kind,
            BasisSpec::MirrorExponential { wavenumber: k },
            vec![Complex64::new(-1.0, 0.0)],
        ),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            // One line: clap's message without the usage and help hints.
            let text = e.to_string();
            let message = text.split("\n\n").next().unwrap_or_default();
            let words: Vec<&str> = message.split_whitespace().collect();
            eprintln!("{}", words.join(" "));
            return ExitCode::from(2);
        }
    };
    match dispatch(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn dispatch(command: Command) -> Result<(), Failure> {
    let (config, output) = match command {
        Command::Synth {
            model,
            truth,
            noise,
            seed,
            range,
        } => return synth(model, truth, noise, seed, range),
        Command::Run { config, output } => {
            let text = std::fs::read_to_string(&config)
                .map_err(|e| Failure::Domain(format!("{}: {e}", config.display())))?;
            match load_config(&text) {
                Ok(c) => (c, output),
                Err(e) => {
                    let report = error_report(None, e.kind(), e.to_string());
                    save(&report, &output)?;
                    return Err(Failure::Domain(e.to_string()));
                }
            }
        }
        Command::Invert {
            coeffs,
            truth,
            m,
            n,
            noise,
            seed,
            range,
            output,
        } => {
            let mut c = ExperimentConfig::new(ExperimentKind::Invert, BasisSpec::Monomial, coeffs);
            c.estimator_order = m.unwrap_or(c.estimator_order);
            c.predictor_order = n.unwrap_or(c.predictor_order);
            c.truth = Some(truth);
            c.noise_magnitude = noise;
            c.seed = seed;
            c.range = range_of(range)?;
            (c, output)
        }
        Command::Mirror {
            k,
            truth,
            a0,
            lattice_bound,
            range,
            output,
        } => {
            let mut c = ExperimentConfig::new(
                ExperimentKind::MirrorInvert,
                BasisSpec::MirrorExponential {
                    wavenumber: Some(k),
                },
                vec![a0],
            );
            c.truth = Some(truth);
            c.lattice_bound = lattice_bound;
            c.range = range_of(range)?;
            (c, output)
        }
        Command::Multifreq {
            k,
            truth,
            a0,
            range,
            output,
        } => {
            let mut c = ExperimentConfig::new(
                ExperimentKind::MultiFrequency,
                BasisSpec::MirrorExponential { wavenumber: None },
                vec![a0],
            );
            c.wavenumbers = Some(k);
            c.truth = Some(truth);
            c.range = range_of(range)?;
            (c, output)
        }
        Command::Mismatch {
            coeffs,
            m,
            n,
            phi_grid,
            range,
            output,
        } => {
            let mut c =
                ExperimentConfig::new(ExperimentKind::MismatchSweep, BasisSpec::Monomial, coeffs);
            c.estimator_order = m;
            c.predictor_order = n;
            c.phi_grid = Some(phi_grid.0);
            c.range = range_of(range)?;
            (c, output)
        }
        Command::Scan {
            model,
            truth,
            m,
            samples,
            range,
            output,
        } => {
            let mut c = model_config(ExperimentKind::DiscrepancyScan, model);
            c.estimator_order = m.unwrap_or(c.estimator_order);
            c.truth = Some(truth);
            c.samples = samples;
            c.range = range_of(range)?;
            (c, output)
        }
    };
    config
        .validate()
        .map_err(|e| Failure::Usage(e.to_string()))?;

    let report = run(&config);
    save(&report, &output)?;
    match (&report.result, &report.error) {
        (Some(result), _) => {
            print!("{}", render::result(result));
            Ok(())
        }
        (None, Some(error)) => Err(Failure::Domain(describe(
            &config,
            &error.kind,
            &error.message,
        ))),
        (None, None) => Err(Failure::Domain("experiment produced no result".into())),
    }
}

/// An order-0 estimator has no dependence on the parameter, so it can never
/// identify it; the case where the datum happens to match is reported as
/// such rather than as a solution.
fn describe(config: &ExperimentConfig, kind: &str, message: &str) -> String {
    if kind == "EverywhereSolution"
        && config.kind == ExperimentKind::Invert
        && config.estimator_order == 0
    {
        format!(
            "NoSolutionPossible: constant estimator {} cannot identify eps ({message})",
            render::complex(config.coefficients[0])
        )
    } else {
        message.to_string()
    }
}

fn synth(
    model: ModelArgs,
    truth: f64,
    noise: f64,
    seed: u64,
    range: (f64, f64),
) -> Result<(), Failure> {
    let range = range_of(range)?;
    let predictor = match (model.coeffs, model.k) {
        (Some(coeffs), _) => SeriesModel::new(BasisKind::Monomial, coeffs),
        (None, Some(k)) => SeriesModel::mirror(k, Complex64::new(-1.0, 0.0)),
        (None, None) => unreachable!("clap requires one model flag"),
    }
    .map_err(|e| Failure::Usage(e.to_string()))?;
    let datum = synthesize(&predictor, truth, range, noise, seed)
        .map_err(|e| Failure::Domain(e.to_string()))?;
    print!("{}", render::datum(&datum));
    Ok(())
}

fn save(report: &ExperimentReport, output: &OutputArgs) -> Result<(), Failure> {
    let Some(dir) = &output.out else {
        return Ok(());
    };
    let io = |e: &dyn std::fmt::Display| Failure::Domain(e.to_string());
    std::fs::create_dir_all(dir).map_err(|e| io(&format!("{}: {e}", dir.display())))?;
    write_report(report, &dir.join("report.json")).map_err(|e| io(&e))?;
    if let Some(name) = csv_name(report.result.as_ref()) {
        let path = dir.join(name);
        let text = csv_string(report).map_err(|e| io(&e))?;
        std::fs::write(&path, text).map_err(|e| io(&format!("{}: {e}", path.display())))?;
    }
    if output.plot && report.result.is_some() {
        match emit_plot(report, &dir.join("plot.svg")) {
            Err(e @ OutputError::PlotUnsupported(_)) => eprintln!("note: {e}"),
            other => other.map_err(|e| io(&e))?,
        }
    }
    Ok(())
}

fn csv_name(result: Option<&ExperimentResult>) -> Option<&'static str> {
    match result? {
        ExperimentResult::MismatchSweep { .. } => Some("mismatch.csv"),
        ExperimentResult::DiscrepancyScan { .. } => Some("scan.csv"),
        _ => None,
    }
}
