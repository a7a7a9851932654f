//! Companion-matrix sweep of the closed-loop poles with branch pairing,
//! degree-drop detection and the gain where stability is lost.
//!
//! ```text
//! cargo run --example numeric_sweep
//! ```

use pjroot::poly::rational_to_f64;
use pjroot::pencil::RationalFunction;
use pjroot::solver::{imaginary_axis_crossing, k_grid, pair_branches, sweep_conventional};

fn main() -> pjroot::Result<()> {
    let g = RationalFunction::parse("1/(s*((s+4)^2+4^2))")?;
    let grid = k_grid(0.0, 1000.0, 9);
    let sweep = sweep_conventional(&g, &grid);
    let ids = pair_branches(&sweep);
    for (s, ids) in sweep.iter().zip(&ids) {
        let roots: Vec<String> =
            s.roots.iter().zip(ids).map(|(&(x, y), b)| format!("#{b} {x:+.4}{y:+.4}i")).collect();
        println!("k = {:>10.4}  residual {:.1e}  {}", rational_to_f64(&s.k), s.residual, roots.join("  "));
    }
    if let Some(k) = imaginary_axis_crossing(&g, 1.0, 1000.0, 1e-9) {
        println!("rightmost root crosses the imaginary axis at k = {k:.6}");
    }

    let g = RationalFunction::parse("(1-s^2)/(1+s^2)")?;
    for s in sweep_conventional(&g, &k_grid(0.5, 2.0, 3)) {
        println!("k = {}: {} roots, degree drop: {}", s.k, s.roots.len(), s.degree_drop);
    }
    Ok(())
}
