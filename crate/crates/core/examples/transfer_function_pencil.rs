//! From a transfer function to the real pencil polynomials `q`, `r`.
//!
//! ```text
//! cargo run --example transfer_function_pencil -- "1/(s*((s+4)^2+4^2))"
//! ```

use pjroot::cli::parse_transfer_function;
use pjroot::pencil::build_pencil;

fn main() -> pjroot::Result<()> {
    let text = std::env::args().nth(1).unwrap_or_else(|| "(s+1)/s^2".into());
    let g = parse_transfer_function(&text)?;
    println!("G(s) = {g}");
    println!("proper: {}", g.is_proper());

    let pencil = build_pencil(&g)?;
    println!("d(x+iy) = ({}) + i({})", pencil.parts.q_d, pencil.parts.r_d);
    println!("n(x+iy) = ({}) + i({})", pencil.parts.q_n, pencil.parts.r_n);
    println!("q = {}", pencil.q);
    println!("r = {}", pencil.r);

    match parse_transfer_function("(s+1)/(s^2-1)") {
        Err(e) => println!("rejected: {e} (exit code {})", e.exit_code()),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
