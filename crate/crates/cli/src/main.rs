use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use lipgeo_cli::commands::{self, GeodesicArgs, Outcome};
use lipgeo_cli::curve_file::CurveFile;
use lipgeo_cli::Result;

/// Geometry of normed and snowflaked metric spaces.
///
/// Exit codes: 0 success, 1 property violation, 2 parse error,
/// 3 dimension or count mismatch, 4 numeric precondition failure.
#[derive(Parser)]
#[command(name = "lipgeo", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Partition-sum length and Lipschitz estimate of a curve file.
    Length {
        /// Curve file (JSON, or CSV rows `t,x1,..,xn`); `-` reads stdin.
        curve: String,
        #[arg(long, default_value = "lp:2")]
        metric: String,
    },
    /// Path of minimal Lipschitz constant between two points.
    Geodesic {
        #[arg(
            long,
            value_delimiter = ',',
            allow_hyphen_values = true,
            required = true
        )]
        start: Vec<f64>,
        #[arg(
            long,
            value_delimiter = ',',
            allow_hyphen_values = true,
            required = true
        )]
        end: Vec<f64>,
        #[arg(long, default_value = "lp:2")]
        metric: String,
        #[arg(long, default_value_t = 16)]
        segments: usize,
        #[arg(long, default_value_t = lipgeo::geodesic::DEFAULT_TOLERANCE)]
        tol: f64,
        #[arg(long, default_value_t = lipgeo::geodesic::DEFAULT_MAX_ITERS)]
        max_iters: usize,
        /// Accepted for uniformity; the solver is deterministic.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Unit-speed reparameterization of a curve file with `derivs`.
    Reparam {
        curve: String,
        /// Norm (no snowflake suffix).
        #[arg(long, default_value = "lp:2")]
        metric: String,
        #[arg(long, default_value_t = lipgeo::reparam::DEFAULT_SPEED_FLOOR)]
        speed_floor: f64,
    },
    /// Fit a Hölder bound between matching samples of two curve files.
    Holder {
        domain: String,
        range: String,
        #[arg(long, default_value = "lp:2")]
        d1: String,
        #[arg(long, default_value = "lp:2")]
        d2: String,
        /// Fixed order; omit to fit the exponent by log-log regression.
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Sampled norm and metric axiom checks.
    Check {
        #[arg(long, default_value = "lp:2")]
        metric: String,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 3)]
        dim: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Parameter-block covering sums of a curve at several scales.
    Cover {
        curve: String,
        #[arg(long, default_value = "lp:2")]
        metric: String,
        #[arg(long)]
        alpha: f64,
        #[arg(long, value_delimiter = ',', default_value = "3,9,27,81")]
        scales: Vec<usize>,
    },
    /// Emit the Koch curve of the given level as a curve file.
    Koch {
        #[arg(long)]
        level: u32,
    },
    /// Distance between two points.
    Distance {
        #[arg(long, default_value = "lp:2")]
        metric: String,
        #[arg(
            long,
            value_delimiter = ',',
            allow_hyphen_values = true,
            required = true
        )]
        x: Vec<f64>,
        #[arg(
            long,
            value_delimiter = ',',
            allow_hyphen_values = true,
            required = true
        )]
        y: Vec<f64>,
    },
}

fn run(cmd: Command) -> Result<Outcome> {
    match cmd {
        Command::Length { curve, metric } => commands::length(&CurveFile::read(&curve)?, &metric),
        Command::Geodesic {
            start,
            end,
            metric,
            segments,
            tol,
            max_iters,
            seed: _,
        } => commands::geodesic(&GeodesicArgs {
            start: &start,
            end: &end,
            metric: &metric,
            segments,
            tol,
            max_iters,
        }),
        Command::Reparam {
            curve,
            metric,
            speed_floor,
        } => commands::reparam(&CurveFile::read(&curve)?, &metric, speed_floor),
        Command::Holder {
            domain,
            range,
            d1,
            d2,
            alpha,
            seed,
        } => commands::holder(
            &CurveFile::read(&domain)?,
            &CurveFile::read(&range)?,
            &d1,
            &d2,
            alpha,
            seed,
        ),
        Command::Check {
            metric,
            samples,
            dim,
            seed,
        } => commands::check(&metric, dim, samples, seed),
        Command::Cover {
            curve,
            metric,
            alpha,
            scales,
        } => commands::cover(&CurveFile::read(&curve)?, &metric, alpha, &scales),
        Command::Koch { level } => commands::koch(level),
        Command::Distance { metric, x, y } => commands::distance(&metric, &x, &y),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(outcome) => {
            // A closed pipe on stdout is not an error worth reporting.
            let _ = writeln!(std::io::stdout().lock(), "{}", outcome.json);
            ExitCode::from(if outcome.violation { 1 } else { 0 })
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
