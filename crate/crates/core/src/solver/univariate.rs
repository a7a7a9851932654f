use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::{rational_to_f64, Monomial, MultiPoly, Rational, VariableSet};

/// Dense univariate polynomial with rational coefficients, lowest degree
/// first. Trailing zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        UniPoly::new(coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        UniPoly::new(vec![c])
    }

    pub fn one() -> Self {
        UniPoly::constant(Rational::one())
    }

    /// `x - r`.
    pub fn linear_root(r: &Rational) -> Self {
        UniPoly::new(vec![-r.clone(), Rational::one()])
    }

    /// Reads `p` as a polynomial in the variable at `var`; fails when another
    /// variable occurs.
    pub fn from_multipoly(p: &MultiPoly, var: usize) -> Result<Self> {
        let mut coeffs: Vec<Rational> = Vec::new();
        for (m, c) in p.terms() {
            for (i, &e) in m.exponents().iter().enumerate() {
                if i != var && e > 0 {
                    return Err(Error::Numeric(format!(
                        "{p} is not univariate in {}",
                        p.variables().name(var)
                    )));
                }
            }
            let d = m.exponents()[var] as usize;
            if coeffs.len() <= d {
                coeffs.resize(d + 1, Rational::zero());
            }
            coeffs[d] = c.clone();
        }
        Ok(UniPoly::new(coeffs))
    }

    pub fn to_multipoly(&self, vars: &VariableSet, var: usize) -> MultiPoly {
        MultiPoly::from_terms(
            vars,
            self.coeffs.iter().enumerate().map(|(d, c)| {
                let mut e = vec![0u32; vars.len()];
                e[var] = d as u32;
                (Monomial::new(e), c.clone())
            }),
        )
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn monic(&self) -> UniPoly {
        match self.leading_coeff() {
            Some(lc) if !lc.is_one() => {
                let inv = lc.recip();
                UniPoly::new(self.coeffs.iter().map(|c| c * &inv).collect())
            }
            _ => self.clone(),
        }
    }

    pub fn scale(&self, c: &Rational) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + rational_to_f64(c))
    }

    pub fn sign_at(&self, x: &Rational) -> i32 {
        sign(&self.eval(x))
    }

    /// Enclosure of `{p(x) : lo <= x <= hi}` by interval Horner evaluation.
    pub fn eval_interval(&self, lo: &Rational, hi: &Rational) -> (Rational, Rational) {
        let mut acc = (Rational::zero(), Rational::zero());
        for c in self.coeffs.iter().rev() {
            let prods = [&acc.0 * lo, &acc.0 * hi, &acc.1 * lo, &acc.1 * hi];
            let min = prods.iter().min().expect("four").clone();
            let max = prods.iter().max().expect("four").clone();
            acc = (min + c, max + c);
        }
        acc
    }

    pub fn derivative(&self) -> UniPoly {
        UniPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(d, c)| c * Rational::from_integer(d.into()))
                .collect(),
        )
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        UniPoly::new(
            (0..n)
                .map(|i| {
                    let a = self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero);
                    let b = other.coeffs.get(i).cloned().unwrap_or_else(Rational::zero);
                    a + b
                })
                .collect(),
        )
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &UniPoly) -> (UniPoly, UniPoly) {
        let dd = divisor.degree().expect("division by zero polynomial");
        let lc = divisor.leading_coeff().expect("nonzero").clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (UniPoly::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] / &lc;
            if !c.is_zero() {
                for (j, b) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] -= &c * b;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (UniPoly::new(quot), UniPoly::new(rem))
    }

    /// Quotient of an exact division.
    pub fn exact_div(&self, divisor: &UniPoly) -> UniPoly {
        let (q, r) = self.div_rem(divisor);
        debug_assert!(r.is_zero(), "inexact division");
        q
    }

    /// Monic greatest common divisor (zero when both are zero).
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = primitive_part(&r);
        }
        a.monic()
    }

    /// `p / gcd(p, p')`, monic.
    pub fn squarefree(&self) -> UniPoly {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        self.exact_div(&self.gcd(&self.derivative())).monic()
    }

    /// Yun's square-free factorization: monic, pairwise coprime factors
    /// `f_m` with `p = c * prod f_m^m`. Constant factors are omitted.
    pub fn squarefree_factors(&self) -> Vec<(UniPoly, u32)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let d = self.derivative();
        let a0 = self.gcd(&d);
        let mut b = self.exact_div(&a0);
        let mut c = d.exact_div(&a0);
        let mut dd = c.sub(&b.derivative());
        let mut m = 1;
        while b.degree().unwrap_or(0) > 0 {
            let a = b.gcd(&dd);
            if a.degree().unwrap_or(0) > 0 {
                out.push((a.clone(), m));
            }
            b = b.exact_div(&a);
            c = dd.exact_div(&a);
            dd = c.sub(&b.derivative());
            m += 1;
        }
        out
    }

    /// `x^n p(1/x)`.
    pub fn reversed(&self) -> UniPoly {
        let mut c = self.coeffs.clone();
        c.reverse();
        UniPoly::new(c)
    }

    /// `p(-x)`.
    pub fn negated_var(&self) -> UniPoly {
        UniPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(d, c)| if d % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    /// `p(x / c)` up to a constant factor, for `c != 0`.
    pub fn scaled_var(&self, c: &Rational) -> UniPoly {
        let inv = c.recip();
        let mut f = Rational::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            out.push(a * &f);
            f *= &inv;
        }
        UniPoly::new(out)
    }

    /// `p(x - r)`.
    pub fn shifted(&self, r: &Rational) -> UniPoly {
        let lin = UniPoly::new(vec![-r.clone(), Rational::one()]);
        let mut acc = UniPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(&lin).add(&UniPoly::constant(c.clone()));
        }
        acc
    }

    /// Strict upper bound on the absolute value of every root.
    pub fn cauchy_bound(&self) -> Rational {
        let lc = self.leading_coeff().expect("nonzero").abs();
        let n = self.coeffs.len() - 1;
        let max = self.coeffs[..n]
            .iter()
            .map(|c| c.abs() / &lc)
            .max()
            .unwrap_or_else(Rational::zero);
        Rational::from_integer((max + Rational::one()).ceil().to_integer() + 1)
    }

    /// Scalar multiple with coprime integer coefficients.
    pub fn integer_primitive(&self) -> Vec<BigInt> {
        let lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self.coeffs.iter().map(|c| (c * Rational::from_integer(lcm.clone())).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if g.is_zero() {
            ints
        } else {
            ints.into_iter().map(|c| c / &g).collect()
        }
    }

    pub fn display_in(&self, var: &str) -> String {
        let vars = VariableSet::new([var]).expect("single name");
        self.to_multipoly(&vars, 0).to_string()
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("x"))
    }
}

fn primitive_part(p: &UniPoly) -> UniPoly {
    match p.leading_coeff() {
        Some(lc) => p.scale(&lc.abs().recip()),
        None => p.clone(),
    }
}

pub(crate) fn sign(r: &Rational) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

/// Sturm chain of a polynomial, each element scaled by a positive constant.
#[derive(Clone, Debug)]
pub struct SturmSequence {
    chain: Vec<UniPoly>,
}

impl SturmSequence {
    pub fn new(p: &UniPoly) -> Self {
        let mut chain = vec![primitive_part(p)];
        let d = p.derivative();
        if !d.is_zero() {
            chain.push(primitive_part(&d));
        }
        while chain.len() >= 2 {
            let n = chain.len();
            let r = chain[n - 2].div_rem(&chain[n - 1]).1;
            if r.is_zero() {
                break;
            }
            chain.push(primitive_part(&r.scale(&-Rational::one())));
        }
        SturmSequence { chain }
    }

    pub fn chain(&self) -> &[UniPoly] {
        &self.chain
    }

    pub fn variations(&self, x: &Rational) -> usize {
        let signs: Vec<i32> = self.chain.iter().map(|p| p.sign_at(x)).filter(|&s| s != 0).collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    }

    /// Distinct real roots in the half-open interval `(a, b]`.
    pub fn count(&self, a: &Rational, b: &Rational) -> usize {
        self.variations(a).saturating_sub(self.variations(b))
    }

    /// Distinct real roots in the open interval `(a, b)`.
    pub fn count_open(&self, a: &Rational, b: &Rational) -> usize {
        let c = self.count(a, b);
        if self.chain[0].eval(b).is_zero() {
            c - 1
        } else {
            c
        }
    }
}

/// One isolated real root: either the exact point `lo == hi` or an open
/// interval `(lo, hi)` on whose ends the square-free part changes sign.
#[derive(Clone, Debug, PartialEq)]
pub struct IsolatedRoot {
    pub lo: Rational,
    pub hi: Rational,
    pub multiplicity_hint: u32,
    pub refined: f64,
}

impl IsolatedRoot {
    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn exact(&self) -> Option<&Rational> {
        self.is_exact().then_some(&self.lo)
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }
}

pub const DEFAULT_ISOLATION_WIDTH: f64 = 1e-12;

/// Real roots of `p` with the default isolation width.
pub fn real_roots(p: &UniPoly) -> Vec<IsolatedRoot> {
    real_roots_with_width(p, &width_rational(DEFAULT_ISOLATION_WIDTH))
}

pub(crate) fn width_rational(w: f64) -> Rational {
    crate::poly::f64_to_rational(w).unwrap_or_else(|| Rational::new(1.into(), BigInt::from(10).pow(12u32)))
}

/// All distinct real roots of `p` in increasing order. Rational roots are
/// returned as exact points; the others as sign-change intervals narrower
/// than `width`. A constant polynomial has no roots.
pub fn real_roots_with_width(p: &UniPoly, width: &Rational) -> Vec<IsolatedRoot> {
    if p.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let factors = p.squarefree_factors();
    let sqf = factors.iter().fold(UniPoly::one(), |acc, (f, _)| acc.mul(f));
    let raw = isolate_squarefree(&sqf);
    let seqs: Vec<(SturmSequence, &UniPoly, u32)> =
        factors.iter().map(|(f, m)| (SturmSequence::new(f), f, *m)).collect();

    let mut out: Vec<IsolatedRoot> = raw
        .into_iter()
        .map(|(lo, hi, f)| {
            let (lo, hi) = if lo == hi { (lo, hi) } else { refine_rational(&f, lo, hi, width) };
            let multiplicity_hint = seqs
                .iter()
                .find(|(s, f, _)| {
                    if lo == hi {
                        f.eval(&lo).is_zero()
                    } else {
                        s.count_open(&lo, &hi) == 1
                    }
                })
                .map_or(1, |(_, _, m)| *m);
            let refined = if lo == hi {
                rational_to_f64(&lo)
            } else {
                rational_to_f64(&((&lo + &hi) / Rational::from_integer(2.into())))
            };
            IsolatedRoot { lo, hi, multiplicity_hint, refined }
        })
        .collect();
    out.sort_by(|a, b| a.lo.cmp(&b.lo));
    out
}

/// Isolating intervals `(lo, hi)` (or exact points `lo == hi`) for the roots
/// of a square-free polynomial, each with the deflated polynomial that has
/// no root at the interval ends.
fn isolate_squarefree(f: &UniPoly) -> Vec<(Rational, Rational, UniPoly)> {
    let b = f.cauchy_bound();
    let mut out = Vec::new();
    let seq = SturmSequence::new(f);
    let n = seq.count(&-b.clone(), &b);
    isolate_rec(f, &seq, -b.clone(), b, n, &mut out);
    out
}

fn isolate_rec(
    f: &UniPoly,
    seq: &SturmSequence,
    a: Rational,
    b: Rational,
    count: usize,
    out: &mut Vec<(Rational, Rational, UniPoly)>,
) {
    if count == 0 {
        return;
    }
    if count == 1 {
        out.push((a, b, f.clone()));
        return;
    }
    let m = (&a + &b) / Rational::from_integer(2.into());
    if f.eval(&m).is_zero() {
        out.push((m.clone(), m.clone(), f.clone()));
        let g = f.exact_div(&UniPoly::linear_root(&m));
        let gs = SturmSequence::new(&g);
        let left = gs.count(&a, &m);
        let right = gs.count(&m, &b);
        isolate_rec(&g, &gs, a, m.clone(), left, out);
        isolate_rec(&g, &gs, m, b, right, out);
        return;
    }
    let left = seq.count(&a, &m);
    let right = count - left;
    isolate_rec(f, seq, a, m.clone(), left, out);
    isolate_rec(f, seq, m, b, right, out);
}

/// Bisects a sign-change interval of square-free `f` until narrower than
/// `width` and narrow enough to recognise a rational root. Returns an exact
/// point when the root is rational.
fn refine_rational(f: &UniPoly, mut lo: Rational, mut hi: Rational, width: &Rational) -> (Rational, Rational) {
    let ints = f.integer_primitive();
    let lead = Rational::from_integer(ints.last().expect("nonzero").abs());
    let rational_width = (&lead * &lead).recip();
    let target = if &rational_width < width { rational_width.clone() } else { width.clone() };
    let two = Rational::from_integer(2.into());
    let mut slo = f.sign_at(&lo);
    // ends may be exact roots only for point intervals
    while &hi - &lo >= target {
        let m = (&lo + &hi) / &two;
        let sm = f.sign_at(&m);
        if sm == 0 {
            return (m.clone(), m);
        }
        if sm == slo {
            lo = m;
            slo = sm;
        } else {
            hi = m;
        }
    }
    let candidate = simplest_rational(&lo, &hi);
    if f.eval(&candidate).is_zero() {
        return (candidate.clone(), candidate);
    }
    (lo, hi)
}

/// Rational with the smallest denominator in the closed interval `[lo, hi]`.
pub fn simplest_rational(lo: &Rational, hi: &Rational) -> Rational {
    debug_assert!(lo <= hi);
    if !lo.is_positive() && !hi.is_negative() {
        return Rational::zero();
    }
    if hi.is_negative() {
        return -simplest_rational(&-hi, &-lo);
    }
    let fl = lo.floor();
    if &fl == lo {
        return fl;
    }
    let next = &fl + Rational::one();
    if &next <= hi {
        return next;
    }
    let inner = simplest_rational(&(hi - &fl).recip(), &(lo - &fl).recip());
    fl + inner.recip()
}
