//! Projective closure versus naive homogenization, and the spurious point
//! the naive system admits at infinite gain.
//!
//! ```text
//! cargo run --example projective_closure
//! ```

use pjroot::geometry::ProjectivePoint;
use pjroot::pencil::{build_pencil, RationalFunction};
use pjroot::pjrl::{naive_homogenization, projective_closure, slice_at, specialize, vanishes_at, ParameterValue};

fn main() -> pjroot::Result<()> {
    let g = RationalFunction::parse("s/(s^2+1)")?;
    let pencil = build_pencil(&g)?;

    let closure = projective_closure(&pencil)?;
    println!("closure generators:");
    for p in closure.polys() {
        println!("  {p}");
    }
    println!("invariants hold: {}", closure.check_invariants()?);

    let naive = naive_homogenization(&pencil)?;
    let inf = ParameterValue::infinity();
    let spurious = ProjectivePoint::from_ints(1, 1, 0)?;
    let naive_at_inf = specialize(&naive, &inf.clone().into(), false)?;
    println!("naive system vanishes at {spurious}: {}", vanishes_at(&naive_at_inf, &spurious));

    let terminal = slice_at(&closure, &inf)?;
    println!("closure terminal slice contains {spurious}: {}", terminal.contains(&spurious));
    Ok(())
}
