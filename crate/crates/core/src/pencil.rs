//! Transfer functions and the real pencil polynomials `q`, `r`.
//!
//! For `G(s) = n(s)/d(s)` the closed-loop poles satisfy
//! `k_d d(s) + k_n n(s) = 0`. Substituting `s = x + iy` and separating real
//! and imaginary parts gives two real polynomials in `x, y, k_d, k_n`.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{parse_fraction, Monomial, MultiPoly, Rational, VariableSet};
use crate::solver::UniPoly;

/// `n(s) / d(s)` with `d` monic and `gcd(n, d) = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalFunction {
    num: MultiPoly,
    den: MultiPoly,
}

fn univariate(p: &MultiPoly) -> Result<UniPoly> {
    match p.variables().len() {
        0 => Ok(UniPoly::constant(p.as_constant().unwrap_or_else(Rational::zero))),
        1 => UniPoly::from_multipoly(p, 0),
        _ => Err(Error::Config(format!("{p} is not univariate"))),
    }
}

fn s_vars() -> VariableSet {
    VariableSet::new(["s"]).expect("single name")
}

impl RationalFunction {
    /// Normalizes `den` to be monic and rejects common factors.
    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<Self> {
        let vars = num.variables().union(den.variables());
        if vars.len() > 1 {
            return Err(Error::Config(format!("transfer function must use a single variable, found {vars:?}")));
        }
        let vars = if vars.is_empty() { s_vars() } else { vars };
        let num = num.embed(&vars)?;
        let den = den.embed(&vars)?;
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        let g = univariate(&num)?.gcd(&univariate(&den)?);
        if g.degree().unwrap_or(0) > 0 {
            return Err(Error::NotCoprime { factor: g.display_in(vars.name(0)) });
        }
        let lc = univariate(&den)?.leading_coeff().expect("nonzero").recip();
        Ok(RationalFunction { num: num.scale(&lc), den: den.scale(&lc) })
    }

    /// Parses `"n(s)/d(s)"`, e.g. `"(s+1)/s^2"`.
    pub fn parse(text: &str) -> Result<Self> {
        let (num, den) = parse_fraction(text, &s_vars())?;
        RationalFunction::new(num, den)
    }

    pub fn num(&self) -> &MultiPoly {
        &self.num
    }

    pub fn den(&self) -> &MultiPoly {
        &self.den
    }

    pub fn num_uni(&self) -> UniPoly {
        univariate(&self.num).expect("checked at construction")
    }

    pub fn den_uni(&self) -> UniPoly {
        univariate(&self.den).expect("checked at construction")
    }

    pub fn variable(&self) -> &str {
        self.num.variables().name(0)
    }

    pub fn num_degree(&self) -> usize {
        self.num_uni().degree().unwrap_or(0)
    }

    pub fn den_degree(&self) -> usize {
        self.den_uni().degree().unwrap_or(0)
    }

    /// `deg n <= deg d`.
    pub fn is_proper(&self) -> bool {
        self.num.is_zero() || self.num_degree() <= self.den_degree()
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.num, self.den)
    }
}

/// True iff `gcd(n, d)` is a nonzero constant.
pub fn coprimality_check(n: &MultiPoly, d: &MultiPoly) -> Result<bool> {
    let vars = n.variables().union(d.variables());
    let (n, d) = (n.embed(&vars)?, d.embed(&vars)?);
    let g = univariate(&n)?.gcd(&univariate(&d)?);
    Ok(g.degree() == Some(0))
}

fn xy_vars() -> VariableSet {
    VariableSet::new(["x", "y"]).expect("distinct")
}

fn binomial(n: u32, k: u32) -> Rational {
    let mut acc = Rational::one();
    for i in 0..k {
        acc = acc * Rational::from_integer((n - i).into()) / Rational::from_integer((i + 1).into());
    }
    acc
}

/// Real and imaginary parts of `p(x + iy)`, as polynomials in `x, y`.
pub fn complex_split(p: &MultiPoly) -> Result<(MultiPoly, MultiPoly)> {
    let u = univariate(p)?;
    let vars = xy_vars();
    let mut re = MultiPoly::zero(&vars);
    let mut im = MultiPoly::zero(&vars);
    for (j, a) in u.coeffs().iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        let j = j as u32;
        for m in 0..=j {
            // (x + iy)^j = sum C(j,m) x^(j-m) i^m y^m
            let c = a * binomial(j, m);
            let term = MultiPoly::from_terms(&vars, [(Monomial::new(vec![j - m, m]), c)]);
            match m % 4 {
                0 => re = &re + &term,
                1 => im = &im + &term,
                2 => re = &re - &term,
                _ => im = &im - &term,
            }
        }
    }
    Ok((re, im))
}

/// The four split parts: `d(x+iy) = q_d + i r_d`, `n(x+iy) = q_n + i r_n`.
#[derive(Clone, Debug, PartialEq)]
pub struct SplitParts {
    pub q_d: MultiPoly,
    pub r_d: MultiPoly,
    pub q_n: MultiPoly,
    pub r_n: MultiPoly,
}

/// `q = k_d q_d + k_n q_n` and `r = k_d r_d + k_n r_n` over
/// `x > y > k_d > k_n`.
#[derive(Clone, Debug, PartialEq)]
pub struct PencilPair {
    pub q: MultiPoly,
    pub r: MultiPoly,
    pub parts: SplitParts,
    /// The plant was improper, so numerator and denominator trade places:
    /// the pencil's `k_n/k_d` is the reciprocal of the plant gain.
    pub swapped: bool,
}

pub fn pencil_vars() -> VariableSet {
    VariableSet::new(["x", "y", "k_d", "k_n"]).expect("distinct")
}

pub fn build_pencil(g: &RationalFunction) -> Result<PencilPair> {
    let swapped = !g.is_proper();
    let (d, n) = if swapped { (g.num(), g.den()) } else { (g.den(), g.num()) };
    let (q_d, r_d) = complex_split(d)?;
    let (q_n, r_n) = complex_split(n)?;
    let vars = pencil_vars();
    let kd = MultiPoly::var(&vars, "k_d")?;
    let kn = MultiPoly::var(&vars, "k_n")?;
    let lift = |p: &MultiPoly| p.embed(&vars);
    let q = &(&kd * &lift(&q_d)?) + &(&kn * &lift(&q_n)?);
    let r = &(&kd * &lift(&r_d)?) + &(&kn * &lift(&r_n)?);
    Ok(PencilPair { q, r, parts: SplitParts { q_d, r_d, q_n, r_n }, swapped })
}
