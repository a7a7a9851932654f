//! Gnomonic picture of the locus on the unit upper hemisphere: finite
//! points lift into the open hemisphere, points at infinity to the equator.
//!
//! ```text
//! cargo run --example semi_sphere
//! ```

use pjroot::geometry::{gnomonic_lift, gnomonic_project, SpherePoint};
use pjroot::poly::rational_to_f64;
use pjroot::pencil::RationalFunction;
use pjroot::pjrl::analyze;
use pjroot::solver::{k_grid, sweep_conventional};

fn main() -> pjroot::Result<()> {
    let g = RationalFunction::parse("(s+1)/s^2")?;
    let a = analyze(&g)?;
    for p in a.initial.points().chain(a.terminal.points()) {
        let sp = gnomonic_lift(p);
        println!("{p:>10} -> [{:.6}, {:.6}, {:.6}] -> {:?}", sp.x, sp.y, sp.z, gnomonic_project(&sp));
    }

    println!("branch samples on the sphere:");
    for s in sweep_conventional(&g, &k_grid(0.0, 1000.0, 6)) {
        let lifted: Vec<String> = s
            .roots
            .iter()
            .filter_map(|&(x, y)| SpherePoint::from_direction(x, y, 1.0))
            .map(|p| format!("[{:.4}, {:.4}, {:.4}]", p.x, p.y, p.z))
            .collect();
        println!("  k = {:>9.4}: {}", rational_to_f64(&s.k), lifted.join(" "));
    }
    Ok(())
}
