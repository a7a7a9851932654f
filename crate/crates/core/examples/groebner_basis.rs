//! Reduced Gröbner basis of a pencil ideal, plus membership and
//! elimination.
//!
//! ```text
//! cargo run --example groebner_basis
//! ```

use pjroot::groebner::{eliminate, groebner_basis};
use pjroot::poly::{parse_polynomial, MonomialOrder, VariableSet};

fn main() -> pjroot::Result<()> {
    let vars = VariableSet::new(["x", "y", "k_d", "k_n"])?;
    let q = parse_polynomial("k_d*(x^2 - y^2 + 1) + k_n*x", &vars)?;
    let r = parse_polynomial("2*k_d*x*y + k_n*y", &vars)?;

    let gb = groebner_basis(&[q.clone(), r.clone()], MonomialOrder::Grevlex)?;
    println!("grevlex basis of <q, r>, {} elements:", gb.len());
    for g in gb.elements() {
        println!("  {g}");
    }
    println!("reduced: {}, S-pairs reduce to zero: {}", gb.check_reduced(), gb.satisfies_buchberger_criterion());

    let member = &(&q * &r) + &q;
    println!("q*r + q in ideal: {}", gb.contains(&member));

    // eliminate x: relations among y and the gains alone
    let elim = eliminate(&[q, r], &["x"])?;
    println!("<q, r> ∩ Q[y, k_d, k_n]:");
    for g in elim.elements() {
        println!("  {g}");
    }
    Ok(())
}
