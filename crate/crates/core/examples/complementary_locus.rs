//! The locus seen from the `x = 1` chart, where imaginary-axis crossings of
//! the conventional locus become asymptotes. With the gain kept symbolic,
//! the `y != 0` branch is cut out by saturation.
//!
//! ```text
//! cargo run --example complementary_locus
//! ```

use pjroot::pencil::{build_pencil, RationalFunction};
use pjroot::poly::rational_to_f64;
use pjroot::pjrl::{affine_view, projective_closure, Patch, Specialization};
use pjroot::solver::{k_grid, sweep_complementary, sweep_conventional};

fn main() -> pjroot::Result<()> {
    let g = RationalFunction::parse("1/(s*((s+4)^2+4^2))")?;
    let closure = projective_closure(&build_pencil(&g)?)?;

    let view = affine_view(&closure, Patch::ZY, &Specialization::Symbolic)?;
    println!("zy view with symbolic gain:");
    for p in &view.polys {
        println!("  {p}");
    }
    println!("y != 0 branch:");
    for p in view.saturate_nonzero("y")?.elements() {
        println!("  {p}");
    }

    let grid = k_grid(200.0, 300.0, 11);
    let sweep = sweep_conventional(&g, &grid);
    for c in sweep_complementary(&sweep) {
        let far = c.points.iter().map(|p| p.1.abs()).fold(0.0, f64::max);
        println!("k = {:>8.3}: largest |z| = {far:10.2}, blow-ups: {}", rational_to_f64(&c.k), c.blow_up.len());
    }
    Ok(())
}
