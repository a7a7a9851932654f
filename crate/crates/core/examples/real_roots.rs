//! Exact real roots: Sturm isolation, certified algebraic numbers and
//! zero-dimensional systems.
//!
//! ```text
//! cargo run --example real_roots
//! ```

use pjroot::poly::{int, parse_polynomial, rational_to_f64, VariableSet};
use pjroot::solver::{real_root_values, real_roots, solve_zero_dim, SturmSequence, UniPoly};

fn main() -> pjroot::Result<()> {
    let p = UniPoly::from_ints(&[-3, 0, 1]);
    for (r, mult) in real_root_values(&p) {
        println!("root of y^2 - 3: {} (multiplicity {mult})", r.describe("y"));
    }

    let p = UniPoly::from_ints(&[32, 24, 8, 1]).mul(&UniPoly::from_ints(&[-2, 0, 1]));
    let sturm = SturmSequence::new(&p.squarefree());
    println!("{} has {} real roots", p.display_in("s"), sturm.count_open(&int(-100), &int(100)));
    for root in real_roots(&p) {
        println!("  in [{:.12}, {:.12}]", rational_to_f64(&root.lo), rational_to_f64(&root.hi));
    }

    let vars = VariableSet::new(["x", "y"])?;
    let system = ["x^2 + y^2 - 4", "y - x - 1"].map(|t| parse_polynomial(t, &vars).expect("valid"));
    for point in solve_zero_dim(&system)? {
        let coords: Vec<String> = point.iter().zip(["x", "y"]).map(|(c, v)| c.describe(v)).collect();
        println!("solution: {}", coords.join(", "));
    }
    Ok(())
}
