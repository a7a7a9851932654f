use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use pjroot::cli::{parse_emit, parse_rational, run, RunConfig, Tolerances};
use pjroot::solver::{BLOW_UP_THRESHOLD, DEFAULT_ISOLATION_WIDTH};
use pjroot::Result;

/// Projective root locus of a rational transfer function.
#[derive(Parser, Debug)]
#[command(name = "pjroot", version)]
struct Args {
    /// Transfer function n(s)/d(s), e.g. "(s+1)/s^2".
    #[arg(long)]
    plant: String,

    /// xy, zy, xz, sphere or all.
    #[arg(long, default_value = "all")]
    patch: String,

    #[arg(long, default_value = "-1000", allow_hyphen_values = true)]
    k_min: String,

    #[arg(long, default_value = "1000", allow_hyphen_values = true)]
    k_max: String,

    #[arg(long, default_value_t = 400)]
    samples: usize,

    /// Comma-separated subset of csv, svg, json.
    #[arg(long, default_value = "csv,json")]
    emit: String,

    #[arg(long, default_value = "pjroot-out")]
    out: PathBuf,

    /// Also report the system with the gain as the variable `lambda`.
    #[arg(long)]
    symbolic_lambda: bool,

    /// Exact slices computed at evenly spaced grid gains.
    #[arg(long, default_value_t = 5)]
    exact_samples: usize,

    /// Interval width for algebraic values in report.json.
    #[arg(long, default_value_t = DEFAULT_ISOLATION_WIDTH)]
    isolation_width: f64,

    /// |x| below which a root is at infinity of the zy chart.
    #[arg(long, default_value_t = BLOW_UP_THRESHOLD)]
    blow_up: f64,
}

fn config(args: Args) -> Result<RunConfig> {
    let mut c = RunConfig::new(args.plant);
    c.patch = args.patch.parse()?;
    c.k_min = parse_rational(&args.k_min)?;
    c.k_max = parse_rational(&args.k_max)?;
    c.samples = args.samples;
    c.emit = parse_emit(&args.emit)?;
    c.out_dir = args.out;
    c.symbolic_lambda = args.symbolic_lambda;
    c.exact_samples = args.exact_samples;
    c.tolerances = Tolerances { isolation_width: args.isolation_width, blow_up: args.blow_up };
    Ok(c)
}

fn main() -> ExitCode {
    let args = Args::parse();
    match config(args).and_then(|c| run(&c).map(|r| (c, r))) {
        Ok((c, r)) => {
            println!("initial:  {}", points(r.initial().all_points()));
            println!("terminal: {}", points(r.terminal().all_points()));
            if !c.emit.is_empty() {
                println!("wrote artifacts to {}", c.out_dir.display());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("pjroot: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn points(ps: Vec<pjroot::geometry::ProjectivePoint>) -> String {
    ps.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}
