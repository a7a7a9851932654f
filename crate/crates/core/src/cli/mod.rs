//! The end-to-end pipeline behind the `pjroot` binary: parse a plant,
//! compute its endpoint slices and gain sweep, and write plot and report
//! artifacts.
//!
//! ```no_run
//! use pjroot::cli::{run, RunConfig};
//!
//! let mut config = RunConfig::new("(s+1)/s^2");
//! config.out_dir = "out".into();
//! let report = run(&config)?;
//! println!("{}", report.initial().finite_points.len());
//! # Ok::<(), pjroot::Error>(())
//! ```

mod emit;
mod report;

pub use emit::{format_float, round_sig, write_atomic};
pub use report::{AsymptoteLine, Branch, DegreeDrop, LocusReport, PatchSummary, SymbolicView, SymbolicReport};

use std::collections::BTreeSet;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::pencil::RationalFunction;
use crate::pjrl::Patch;
use crate::poly::{int, parse_polynomial, Rational, VariableSet};
use crate::solver::{BLOW_UP_THRESHOLD, DEFAULT_ISOLATION_WIDTH};

/// Which affine charts (and the sphere) to report and plot.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PatchSelection {
    Xy,
    Zy,
    Xz,
    Sphere,
    All,
}

impl PatchSelection {
    pub fn patches(self) -> Vec<Patch> {
        match self {
            PatchSelection::Xy => vec![Patch::XY],
            PatchSelection::Zy => vec![Patch::ZY],
            PatchSelection::Xz => vec![Patch::XZ],
            PatchSelection::Sphere | PatchSelection::All => Patch::ALL.to_vec(),
        }
    }

    pub fn includes(self, patch: Patch) -> bool {
        self.patches().contains(&patch)
    }

    pub fn includes_sphere(self) -> bool {
        matches!(self, PatchSelection::Sphere | PatchSelection::All)
    }

    pub fn name(self) -> &'static str {
        match self {
            PatchSelection::Xy => "xy",
            PatchSelection::Zy => "zy",
            PatchSelection::Xz => "xz",
            PatchSelection::Sphere => "sphere",
            PatchSelection::All => "all",
        }
    }
}

impl FromStr for PatchSelection {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.trim().to_ascii_lowercase().as_str() {
            "xy" => PatchSelection::Xy,
            "zy" => PatchSelection::Zy,
            "xz" => PatchSelection::Xz,
            "sphere" => PatchSelection::Sphere,
            "all" => PatchSelection::All,
            other => return Err(Error::Config(format!("unknown patch {other:?} (expected xy, zy, xz, sphere or all)"))),
        })
    }
}

impl fmt::Display for PatchSelection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Output file families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Artifact {
    Csv,
    Svg,
    Json,
}

impl FromStr for Artifact {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.trim().to_ascii_lowercase().as_str() {
            "csv" => Artifact::Csv,
            "svg" => Artifact::Svg,
            "json" => Artifact::Json,
            other => return Err(Error::Config(format!("unknown artifact {other:?} (expected csv, svg or json)"))),
        })
    }
}

/// Comma-separated artifact list, e.g. `"csv,json"`.
pub fn parse_emit(text: &str) -> Result<BTreeSet<Artifact>> {
    text.split(',').filter(|s| !s.trim().is_empty()).map(str::parse).collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct Tolerances {
    /// Width to which algebraic coordinates are refined in the report.
    pub isolation_width: f64,
    /// `|x|` below which a root maps to infinity of the `ZY` chart.
    pub blow_up: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { isolation_width: DEFAULT_ISOLATION_WIDTH, blow_up: BLOW_UP_THRESHOLD }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub plant: String,
    pub patch: PatchSelection,
    pub k_min: Rational,
    pub k_max: Rational,
    pub samples: usize,
    pub emit: BTreeSet<Artifact>,
    pub out_dir: PathBuf,
    /// Also report the system with the gain kept as a variable.
    pub symbolic_lambda: bool,
    /// Number of grid gains at which the exact slice is also computed.
    pub exact_samples: usize,
    pub tolerances: Tolerances,
}

impl RunConfig {
    /// Defaults: all patches, gains in `[-1000, 1000]`, 400 samples, CSV and
    /// JSON output to `pjroot-out`.
    pub fn new(plant: impl Into<String>) -> Self {
        RunConfig {
            plant: plant.into(),
            patch: PatchSelection::All,
            k_min: int(-1000),
            k_max: int(1000),
            samples: 400,
            emit: [Artifact::Csv, Artifact::Json].into_iter().collect(),
            out_dir: PathBuf::from("pjroot-out"),
            symbolic_lambda: false,
            exact_samples: 5,
            tolerances: Tolerances::default(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.samples < 2 {
            return Err(Error::Config(format!("samples must be at least 2, got {}", self.samples)));
        }
        if self.k_min >= self.k_max {
            return Err(Error::Config(format!("k_min ({}) must be below k_max ({})", self.k_min, self.k_max)));
        }
        let t = &self.tolerances;
        if !(t.isolation_width > 0.0 && t.isolation_width.is_finite()) {
            return Err(Error::Config(format!("isolation width must be positive, got {}", t.isolation_width)));
        }
        if !(t.blow_up > 0.0 && t.blow_up.is_finite()) {
            return Err(Error::Config(format!("blow-up threshold must be positive, got {}", t.blow_up)));
        }
        Ok(())
    }
}

/// `"n(s)/d(s)"` with integer or decimal coefficients; decimals are exact.
pub fn parse_transfer_function(text: &str) -> Result<RationalFunction> {
    RationalFunction::parse(text)
}

/// A constant expression such as `-1000`, `1/4` or `0.25`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let empty = VariableSet::new(Vec::<&str>::new())?;
    let p = parse_polynomial(text, &empty).map_err(|e| Error::Config(format!("{text:?}: {e}")))?;
    if p.is_zero() {
        return Ok(Rational::zero());
    }
    p.as_constant().ok_or_else(|| Error::Config(format!("{text:?} is not a number")))
}

/// Computes the report without writing anything.
pub fn build_report(config: &RunConfig) -> Result<LocusReport> {
    config.validate()?;
    let plant = parse_transfer_function(&config.plant).map_err(|e| e.at_stage("parse"))?;
    LocusReport::compute(&plant, config)
}

/// Computes the report and writes the selected artifacts into
/// `config.out_dir`. Every file is written whole or not at all.
pub fn run(config: &RunConfig) -> Result<LocusReport> {
    let report = build_report(config)?;
    emit::write_artifacts(&report, config).map_err(|e| e.at_stage("emit"))?;
    Ok(report)
}
