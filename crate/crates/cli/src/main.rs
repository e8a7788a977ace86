//! `tetrafit`: sample uniform points inside a tetrahedron, estimate a
//! tetrahedron's vertices from such points, and run validation sweeps.
//!
//! Exit codes: 0 success, 2 input/configuration error, 3 estimation
//! failure (the failure reason is still serialized to the output path).

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use tetrafit::estimator::estimate_vertices;
use tetrafit::harness::sweep;
use tetrafit::io::{read_points_file, read_vertices_file, write_points_csv};
use tetrafit::sampler::{sample_batch, SeededGenerator};
use tetrafit::{DEstimatorConfig, Error, MatchingVariant};

#[derive(Parser)]
#[command(
    name = "tetrafit",
    version,
    about = "Uniform sampling inside a tetrahedron and vertex estimation from interior points"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate uniform random points inside a tetrahedron.
    Sample(SampleArgs),
    /// Estimate a tetrahedron's vertices from interior points.
    Estimate(EstimateArgs),
    /// Monte Carlo validation sweep against a known tetrahedron.
    Validate(ValidateArgs),
}

#[derive(Args)]
struct SampleArgs {
    /// Vertices file: four lines of "x y z" ('#' comments allowed).
    #[arg(long)]
    vertices: PathBuf,
    /// Number of points to generate.
    #[arg(long)]
    n: usize,
    /// Generator seed; identical seeds give identical output.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output CSV path (header "x,y,z").
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args, Clone)]
struct EstimationOpts {
    /// Matching objective: "corrected" or "paper".
    #[arg(long, default_value = "corrected")]
    matching: String,
    /// Relative containment slack.
    #[arg(long, default_value_t = 1e-9)]
    slack: f64,
    /// Fraction of points allowed outside a valid candidate.
    #[arg(long, default_value_t = 0.005)]
    outlier_fraction: f64,
    /// Disable per-axis normalization.
    #[arg(long)]
    no_normalize: bool,
    /// Run the method exactly as originally published: "paper" matching
    /// and a zero outlier budget. Overrides --matching and
    /// --outlier-fraction.
    #[arg(long)]
    paper_exact: bool,
}

impl EstimationOpts {
    fn to_config(&self) -> Result<DEstimatorConfig, Error> {
        let mut config = DEstimatorConfig {
            matching_variant: self.matching.parse()?,
            slack: self.slack,
            outlier_fraction: self.outlier_fraction,
            normalize: !self.no_normalize,
        };
        if self.paper_exact {
            config.matching_variant = MatchingVariant::Paper;
            config.outlier_fraction = 0.0;
        }
        if !(0.0..=1.0).contains(&config.outlier_fraction) {
            return Err(Error::InvalidConfig(
                "--outlier-fraction must be in [0, 1]".to_string(),
            ));
        }
        if !config.slack.is_finite() || config.slack < 0.0 {
            return Err(Error::InvalidConfig(
                "--slack must be finite and >= 0".to_string(),
            ));
        }
        Ok(config)
    }
}

#[derive(Args)]
struct EstimateArgs {
    /// Points CSV (header "x,y,z").
    #[arg(long)]
    points: PathBuf,
    /// Output JSON path.
    #[arg(long)]
    out: PathBuf,
    #[command(flatten)]
    estimation: EstimationOpts,
}

#[derive(Args)]
struct ValidateArgs {
    /// Vertices file of the known tetrahedron.
    #[arg(long)]
    vertices: PathBuf,
    /// Comma-separated sample sizes, e.g. 1000,10000.
    #[arg(long, value_delimiter = ',', required = true)]
    sizes: Vec<usize>,
    /// Trials per size.
    #[arg(long, default_value_t = 20)]
    trials: usize,
    /// Base seed; trial seeds are base + global index.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Per-trial CSV output path.
    #[arg(long)]
    out_trials: PathBuf,
    /// Per-size summary CSV output path.
    #[arg(long)]
    out_summary: PathBuf,
    #[command(flatten)]
    estimation: EstimationOpts,
}

#[derive(Serialize)]
struct ConfigEcho {
    matching_variant: String,
    slack: f64,
    outlier_fraction: f64,
    normalize: bool,
}

#[derive(Serialize)]
struct EstimateReport {
    vertices: [[f64; 3]; 4],
    objective: f64,
    containment_fraction: f64,
    /// Two 1-based permutation arrays: y and z assignments per x-slot.
    pair: [[u8; 4]; 2],
    matching_variant: String,
    diagnostics: Vec<String>,
    n: usize,
    config: ConfigEcho,
}

#[derive(Serialize)]
struct FailureReport {
    error: String,
    n: usize,
    config: ConfigEcho,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let outcome = match cli.command {
        Command::Sample(args) => cmd_sample(&args),
        Command::Estimate(args) => cmd_estimate(&args),
        Command::Validate(args) => cmd_validate(&args),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn cmd_sample(args: &SampleArgs) -> Result<ExitCode, Error> {
    if args.n == 0 {
        return Err(Error::InvalidCount);
    }
    let tet = read_vertices_file(&args.vertices)?;
    let mut gen = SeededGenerator::new(args.seed);
    let points = sample_batch(&tet, args.n, &mut gen)?;
    let mut file = std::io::BufWriter::new(std::fs::File::create(&args.out)?);
    write_points_csv(&points, &mut file)?;
    file.flush()?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_estimate(args: &EstimateArgs) -> Result<ExitCode, Error> {
    let config = args.estimation.to_config()?;
    let points = read_points_file(&args.points)?;
    if points.is_empty() {
        return Err(Error::EmptySample);
    }
    let echo = ConfigEcho {
        matching_variant: config.matching_variant.to_string(),
        slack: config.slack,
        outlier_fraction: config.outlier_fraction,
        normalize: config.normalize,
    };
    match estimate_vertices(&points, &config) {
        Ok(result) => {
            let report = EstimateReport {
                vertices: std::array::from_fn(|i| {
                    let v = result.vertices.vertices[i];
                    [v.x, v.y, v.z]
                }),
                objective: result.objective,
                containment_fraction: result.containment_fraction,
                pair: {
                    let (pi, theta) = result.pair.one_based();
                    [pi, theta]
                },
                matching_variant: result.matching_variant.to_string(),
                diagnostics: result.diagnostics.iter().map(|d| d.to_string()).collect(),
                n: points.len(),
                config: echo,
            };
            write_json(&args.out, &report)?;
            Ok(ExitCode::SUCCESS)
        }
        Err(e) => {
            // Estimation failures still produce a report, and exit 3.
            let report = FailureReport {
                error: e.to_string(),
                n: points.len(),
                config: echo,
            };
            write_json(&args.out, &report)?;
            eprintln!("estimation failed: {e}");
            if matches!(e, Error::ComplexRoots { .. }) {
                eprintln!("hint: a larger sample usually resolves this");
            }
            Ok(ExitCode::from(3))
        }
    }
}

fn cmd_validate(args: &ValidateArgs) -> Result<ExitCode, Error> {
    let config = args.estimation.to_config()?;
    if args.sizes.contains(&0) {
        return Err(Error::InvalidConfig(
            "--sizes entries must be >= 1".to_string(),
        ));
    }
    if args.trials == 0 {
        return Err(Error::InvalidConfig("--trials must be >= 1".to_string()));
    }
    let tet = read_vertices_file(&args.vertices)?;
    let report = sweep(&tet, &args.sizes, args.trials, args.seed, &config)?;
    let mut trials = std::io::BufWriter::new(std::fs::File::create(&args.out_trials)?);
    report.write_trials_csv(&mut trials)?;
    trials.flush()?;
    let mut summary = std::io::BufWriter::new(std::fs::File::create(&args.out_summary)?);
    report.write_summary_csv(&mut summary)?;
    summary.flush()?;
    Ok(ExitCode::SUCCESS)
}

fn write_json<T: Serialize>(path: &PathBuf, value: &T) -> Result<(), Error> {
    let mut file = std::io::BufWriter::new(std::fs::File::create(path)?);
    serde_json::to_writer_pretty(&mut file, value)
        .map_err(|e| Error::InvalidConfig(format!("serialization failed: {e}")))?;
    file.write_all(b"\n")?;
    file.flush()?;
    Ok(())
}
