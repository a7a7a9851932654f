//! The whole pipeline as the command-line tool runs it: writes CSV, SVG and
//! JSON artifacts into a directory.
//!
//! ```text
//! cargo run --example full_report -- "s/(s^2+1)" out
//! ```

use pjroot::cli::{run, Artifact, RunConfig};
use pjroot::pjrl::Patch;

fn main() -> pjroot::Result<()> {
    let mut args = std::env::args().skip(1);
    let plant = args.next().unwrap_or_else(|| "s/(s^2+1)".into());
    let mut config = RunConfig::new(plant);
    config.out_dir = args.next().unwrap_or_else(|| "pjroot-out".into()).into();
    config.emit = [Artifact::Csv, Artifact::Svg, Artifact::Json].into_iter().collect();
    config.symbolic_lambda = true;

    let report = run(&config)?;
    println!("closure system:");
    for line in report.closure_system() {
        println!("  {line}");
    }
    for patch in Patch::ALL {
        if let Some(p) = report.patch(patch) {
            let dirs = |d: &[pjroot::pjrl::Direction]| d.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ");
            println!("{patch}: asymptotes at k=0 [{}], at k=inf [{}]", dirs(&p.initial), dirs(&p.terminal));
        }
    }
    println!("{} branches, crossings at {:?}", report.branches().len(), report.crossings);
    println!("artifacts in {}", config.out_dir.display());
    Ok(())
}
