//! Exact polynomial arithmetic over the rationals.

mod monomial;
mod multipoly;
mod parse;

pub use monomial::{Monomial, MonomialOrder, VariableSet};
pub use multipoly::MultiPoly;
pub use parse::{parse_fraction, parse_polynomial, ParseError};

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

/// Arbitrary-precision rational, always in lowest terms with a positive
/// denominator.
pub type Rational = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Nearest `f64`, robust to numerators and denominators beyond `f64` range.
pub fn rational_to_f64(r: &Rational) -> f64 {
    if let (Some(n), Some(d)) = (r.numer().to_f64(), r.denom().to_f64()) {
        if n.is_finite() && d.is_finite() && d != 0.0 {
            return n / d;
        }
    }
    // scale both to ~60 significant bits
    let nb = r.numer().bits() as i64;
    let db = r.denom().bits() as i64;
    let shift = nb - db - 60;
    let scaled: BigInt = if shift >= 0 {
        r.numer() / (r.denom() << (shift as u64))
    } else {
        (r.numer() << ((-shift) as u64)) / r.denom()
    };
    scaled.to_f64().unwrap_or(0.0) * 2f64.powi(shift as i32)
}

/// Exact rational value of a finite `f64`.
pub fn f64_to_rational(x: f64) -> Option<Rational> {
    Rational::from_float(x)
}

/// The decimal rational closest to `x` with `digits` significant digits.
pub fn decimal_rational(x: f64, digits: usize) -> Rational {
    if x == 0.0 || !x.is_finite() {
        return Rational::zero();
    }
    let s = format!("{:.*e}", digits.saturating_sub(1), x);
    let (mantissa, exp) = s.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("exponent");
    let neg = mantissa.starts_with('-');
    let digits_only: String = mantissa.chars().filter(|c| c.is_ascii_digit()).collect();
    let frac_len = mantissa.split_once('.').map_or(0, |(_, f)| f.len()) as i32;
    let mut n: BigInt = digits_only.parse().expect("digits");
    if neg {
        n = -n;
    }
    let e = exp - frac_len;
    let ten = BigInt::from(10);
    if e >= 0 {
        Rational::from_integer(n * num_traits::pow(ten, e as usize))
    } else {
        Rational::new(n, num_traits::pow(ten, (-e) as usize))
    }
}
