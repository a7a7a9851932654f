//! Exact initial and terminal slices for a few plants.
//!
//! ```text
//! cargo run --example endpoints
//! ```

use pjroot::pencil::RationalFunction;
use pjroot::pjrl::{analyze, asymptote_directions, Patch};

fn main() -> pjroot::Result<()> {
    for plant in ["s/(s^2+1)", "(s+1)/s^2", "1/(s*((s+4)^2+4^2))", "(1-s^2)/(1+s^2)"] {
        let a = analyze(&RationalFunction::parse(plant)?)?;
        println!("{plant}");
        let show = |pts: Vec<_>| pts.iter().map(ToString::to_string).collect::<Vec<String>>().join(" ");
        println!("  W0   = {}", show(a.initial.all_points()));
        println!("  Winf = {}", show(a.terminal.all_points()));
        for p in a.terminal.infinite_points.iter().chain(&a.initial.infinite_points) {
            for (i, c) in p.coords().iter().enumerate() {
                if !c.is_rational() {
                    println!("    coordinate {i} of {p}: {}", c.describe(["x", "y", "z"][i]));
                }
            }
        }
        let slopes: Vec<String> = asymptote_directions(&a.terminal, Patch::XY).iter().map(ToString::to_string).collect();
        println!("  xy asymptote slopes at k = inf: {}", slopes.join(", "));
    }
    Ok(())
}
