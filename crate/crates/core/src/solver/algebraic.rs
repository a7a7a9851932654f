use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Signed, Zero};

use super::univariate::{real_roots_with_width, sign, width_rational, UniPoly};
use crate::error::{Error, Result};
use crate::groebner::eliminate;
use crate::poly::{rational_to_f64, MultiPoly, Rational, VariableSet};

/// A real algebraic number given by a defining polynomial and an isolating
/// interval.
///
/// The polynomial is monic, square-free and has no rational roots, so the
/// number is irrational and nonzero; the interval `(lo, hi)` contains exactly
/// one of its roots, with a sign change at the ends.
#[derive(Clone, Debug)]
pub struct AlgebraicReal {
    poly: UniPoly,
    lo: Rational,
    hi: Rational,
}

/// An exact real: rational, or irrational algebraic.
#[derive(Clone, Debug)]
pub enum Real {
    Rational(Rational),
    Algebraic(AlgebraicReal),
}

fn two() -> Rational {
    Rational::from_integer(2.into())
}

impl AlgebraicReal {
    /// Caller guarantees the invariants; the interval is tightened so the
    /// midpoint is accurate to double precision.
    fn from_parts(poly: UniPoly, lo: Rational, hi: Rational) -> Self {
        let mut a = AlgebraicReal { poly, lo, hi };
        let scale = a.lo.abs().max(a.hi.abs()).max(Rational::one());
        let target = scale * Rational::new(1.into(), num_bigint::BigInt::from(10).pow(18u32));
        a.refine_below(&target);
        a
    }

    pub fn poly(&self) -> &UniPoly {
        &self.poly
    }

    /// Current isolating interval.
    pub fn interval(&self) -> (&Rational, &Rational) {
        (&self.lo, &self.hi)
    }

    pub fn degree(&self) -> usize {
        self.poly.degree().unwrap_or(0)
    }

    pub fn to_f64(&self) -> f64 {
        rational_to_f64(&((&self.lo + &self.hi) / two()))
    }

    fn bisect(&mut self) {
        let m = (&self.lo + &self.hi) / two();
        let sm = self.poly.sign_at(&m);
        debug_assert!(sm != 0, "defining polynomial has no rational roots");
        if sm == self.poly.sign_at(&self.lo) {
            self.lo = m;
        } else {
            self.hi = m;
        }
    }

    fn refine_below(&mut self, width: &Rational) {
        while &(&self.hi - &self.lo) >= width {
            self.bisect();
        }
    }

    /// Copy with interval narrower than `width`.
    pub fn refined(&self, width: &Rational) -> AlgebraicReal {
        let mut a = self.clone();
        a.refine_below(width);
        a
    }

    fn excluding(&self, r: &Rational) -> AlgebraicReal {
        let mut a = self.clone();
        while &a.lo <= r && r <= &a.hi {
            a.bisect();
        }
        a
    }

    pub fn signum(&self) -> i32 {
        let a = self.excluding(&Rational::zero());
        if a.lo.is_positive() {
            1
        } else {
            -1
        }
    }

    fn neg(&self) -> AlgebraicReal {
        let p = self.poly.negated_var().monic();
        AlgebraicReal { poly: p, lo: -self.hi.clone(), hi: -self.lo.clone() }
    }

    fn recip(&self) -> AlgebraicReal {
        let a = self.excluding(&Rational::zero());
        let p = a.poly.reversed().monic();
        AlgebraicReal::from_parts(p, a.hi.recip(), a.lo.recip())
    }

    fn add_rational(&self, r: &Rational) -> AlgebraicReal {
        AlgebraicReal { poly: self.poly.shifted(r).monic(), lo: &self.lo + r, hi: &self.hi + r }
    }

    fn mul_rational(&self, r: &Rational) -> AlgebraicReal {
        debug_assert!(!r.is_zero());
        let p = self.poly.scaled_var(r).monic();
        let (a, b) = (&self.lo * r, &self.hi * r);
        if r.is_positive() {
            AlgebraicReal::from_parts(p, a, b)
        } else {
            AlgebraicReal::from_parts(p, b, a)
        }
    }

    fn equals(&self, other: &AlgebraicReal) -> bool {
        let g = self.poly.gcd(&other.poly);
        if g.degree().unwrap_or(0) == 0 {
            return false;
        }
        let lo = (&self.lo).max(&other.lo).clone();
        let hi = (&self.hi).min(&other.hi).clone();
        if lo >= hi {
            return false;
        }
        super::univariate::SturmSequence::new(&g).count_open(&lo, &hi) > 0
    }
}

/// Real roots of `p` as exact values, with multiplicity hints.
pub fn real_root_values(p: &UniPoly) -> Vec<(Real, u32)> {
    let roots = real_roots_with_width(p, &width_rational(1e-12));
    let sqf = p.squarefree();
    let stripped = roots
        .iter()
        .filter_map(|r| r.exact())
        .fold(sqf, |acc, r| acc.exact_div(&UniPoly::linear_root(r)))
        .monic();
    roots
        .into_iter()
        .map(|r| {
            let value = match r.exact() {
                Some(q) => Real::Rational(q.clone()),
                None => Real::Algebraic(AlgebraicReal::from_parts(stripped.clone(), r.lo.clone(), r.hi.clone())),
            };
            (value, r.multiplicity_hint)
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Op {
    Add,
    Sub,
    Mul,
    Div,
}

impl Real {
    pub fn zero() -> Self {
        Real::Rational(Rational::zero())
    }

    pub fn one() -> Self {
        Real::Rational(Rational::one())
    }

    pub fn from_i64(n: i64) -> Self {
        Real::Rational(Rational::from_integer(n.into()))
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Real::Rational(r) if r.is_zero())
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, Real::Rational(_))
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            Real::Rational(r) => Some(r),
            Real::Algebraic(_) => None,
        }
    }

    pub fn as_algebraic(&self) -> Option<&AlgebraicReal> {
        match self {
            Real::Rational(_) => None,
            Real::Algebraic(a) => Some(a),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Real::Rational(r) => rational_to_f64(r),
            Real::Algebraic(a) => a.to_f64(),
        }
    }

    pub fn signum(&self) -> i32 {
        match self {
            Real::Rational(r) => sign(r),
            Real::Algebraic(a) => a.signum(),
        }
    }

    /// Closed rational interval containing the value, narrower than `width`.
    pub fn enclosure(&self, width: &Rational) -> (Rational, Rational) {
        match self {
            Real::Rational(r) => (r.clone(), r.clone()),
            Real::Algebraic(a) => {
                let a = a.refined(width);
                (a.lo, a.hi)
            }
        }
    }

    /// Minimal-degree defining polynomial available for the value: `x - r`
    /// for rationals.
    pub fn defining_poly(&self) -> UniPoly {
        match self {
            Real::Rational(r) => UniPoly::linear_root(r),
            Real::Algebraic(a) => a.poly.clone(),
        }
    }

    pub fn neg(&self) -> Real {
        match self {
            Real::Rational(r) => Real::Rational(-r),
            Real::Algebraic(a) => Real::Algebraic(a.neg()),
        }
    }

    pub fn recip(&self) -> Result<Real> {
        match self {
            Real::Rational(r) if r.is_zero() => Err(Error::Numeric("division by zero".into())),
            Real::Rational(r) => Ok(Real::Rational(r.recip())),
            Real::Algebraic(a) => Ok(Real::Algebraic(a.recip())),
        }
    }

    pub fn add(&self, other: &Real) -> Real {
        self.combine(other, Op::Add).expect("addition is total")
    }

    pub fn sub(&self, other: &Real) -> Real {
        self.combine(other, Op::Sub).expect("subtraction is total")
    }

    pub fn mul(&self, other: &Real) -> Real {
        self.combine(other, Op::Mul).expect("multiplication is total")
    }

    pub fn div(&self, other: &Real) -> Result<Real> {
        self.combine(other, Op::Div)
    }

    fn combine(&self, other: &Real, op: Op) -> Result<Real> {
        use Real::{Algebraic as A, Rational as Q};
        Ok(match (self, other, op) {
            (Q(a), Q(b), Op::Add) => Q(a + b),
            (Q(a), Q(b), Op::Sub) => Q(a - b),
            (Q(a), Q(b), Op::Mul) => Q(a * b),
            (Q(_), Q(b), Op::Div) if b.is_zero() => return Err(Error::Numeric("division by zero".into())),
            (Q(a), Q(b), Op::Div) => Q(a / b),
            (A(a), Q(b), Op::Add) | (Q(b), A(a), Op::Add) => A(a.add_rational(b)),
            (A(a), Q(b), Op::Sub) => A(a.add_rational(&-b)),
            (Q(b), A(a), Op::Sub) => A(a.neg().add_rational(b)),
            (_, Q(b), Op::Mul) | (Q(b), _, Op::Mul) if b.is_zero() => Q(Rational::zero()),
            (A(a), Q(b), Op::Mul) | (Q(b), A(a), Op::Mul) => A(a.mul_rational(b)),
            (A(_), Q(b), Op::Div) if b.is_zero() => return Err(Error::Numeric("division by zero".into())),
            (A(a), Q(b), Op::Div) => A(a.mul_rational(&b.recip())),
            (Q(b), A(a), Op::Div) if b.is_zero() => Q(Rational::zero()),
            (Q(b), A(a), Op::Div) => A(a.recip().mul_rational(b)),
            (A(a), A(b), op) => combine_algebraic(a, b, op)?,
        })
    }

    /// `poly` in variable `var`, plus the current interval and a float.
    pub fn describe(&self, var: &str) -> String {
        match self {
            Real::Rational(r) => r.to_string(),
            Real::Algebraic(a) => format!(
                "root of {} in ({}, {}) ~ {}",
                a.poly.display_in(var),
                rational_to_f64(&a.lo),
                rational_to_f64(&a.hi),
                a.to_f64()
            ),
        }
    }
}

/// Exact `a op b` for two algebraic numbers: eliminate `a, b` from
/// `<p_a(a), p_b(b), relation(a, b, c)>` and pick the root of the resulting
/// polynomial in `c` that lies in the interval image of the operands.
fn combine_algebraic(a: &AlgebraicReal, b: &AlgebraicReal, op: Op) -> Result<Real> {
    if op == Op::Div && b.signum() == 0 {
        return Err(Error::Numeric("division by zero".into()));
    }
    if op == Op::Sub && a.equals(b) {
        return Ok(Real::zero());
    }
    if op == Op::Div && a.equals(b) {
        return Ok(Real::one());
    }
    let vars = VariableSet::new(["a", "b", "c"])?;
    let pa = a.poly.to_multipoly(&vars, 0);
    let pb = b.poly.to_multipoly(&vars, 1);
    let va = MultiPoly::var(&vars, "a")?;
    let vb = MultiPoly::var(&vars, "b")?;
    let vc = MultiPoly::var(&vars, "c")?;
    let rel = match op {
        Op::Add => &vc - &(&va + &vb),
        Op::Sub => &vc - &(&va - &vb),
        Op::Mul => &vc - &(&va * &vb),
        Op::Div => &(&vc * &vb) - &va,
    };
    let gb = eliminate(&[pa, pb, rel], &["a", "b"])?;
    let r = gb
        .elements()
        .iter()
        .find(|g| !g.is_constant())
        .ok_or_else(|| Error::Numeric("empty elimination ideal".into()))?;
    let r = UniPoly::from_multipoly(r, 0)?;
    let candidates: Vec<Real> = real_root_values(&r).into_iter().map(|(v, _)| v).collect();

    let mut a = a.clone();
    let mut b = if op == Op::Div { b.excluding(&Rational::zero()) } else { b.clone() };
    for _ in 0..400 {
        let (lo, hi) = interval_op(&a.lo, &a.hi, &b.lo, &b.hi, op);
        let hits: Vec<&Real> = candidates
            .iter()
            .filter(|c| match c {
                Real::Rational(q) => &lo <= q && q <= &hi,
                Real::Algebraic(x) => x.lo <= hi && lo <= x.hi,
            })
            .collect();
        if hits.len() == 1 {
            return Ok(hits[0].clone());
        }
        a.bisect();
        b.bisect();
    }
    Err(Error::Numeric("could not separate algebraic result".into()))
}

fn interval_op(al: &Rational, ah: &Rational, bl: &Rational, bh: &Rational, op: Op) -> (Rational, Rational) {
    match op {
        Op::Add => (al + bl, ah + bh),
        Op::Sub => (al - bh, ah - bl),
        Op::Mul | Op::Div => {
            let (bl, bh) = if op == Op::Div { (bh.recip(), bl.recip()) } else { (bl.clone(), bh.clone()) };
            let p = [al * &bl, al * &bh, ah * &bl, ah * &bh];
            (p.iter().min().expect("four").clone(), p.iter().max().expect("four").clone())
        }
    }
}

impl PartialEq for Real {
    fn eq(&self, other: &Real) -> bool {
        match (self, other) {
            (Real::Rational(a), Real::Rational(b)) => a == b,
            (Real::Algebraic(a), Real::Algebraic(b)) => a.equals(b),
            _ => false,
        }
    }
}

impl Eq for Real {}

impl PartialOrd for Real {
    fn partial_cmp(&self, other: &Real) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Real {
    fn cmp(&self, other: &Real) -> Ordering {
        match (self, other) {
            (Real::Rational(a), Real::Rational(b)) => a.cmp(b),
            (Real::Algebraic(a), Real::Rational(r)) => {
                let a = a.excluding(r);
                if &a.hi < r {
                    Ordering::Less
                } else {
                    Ordering::Greater
                }
            }
            (Real::Rational(_), Real::Algebraic(_)) => other.cmp(self).reverse(),
            (Real::Algebraic(a), Real::Algebraic(b)) => {
                if a.equals(b) {
                    return Ordering::Equal;
                }
                let (mut a, mut b) = (a.clone(), b.clone());
                while a.hi >= b.lo && b.hi >= a.lo {
                    a.bisect();
                    b.bisect();
                }
                if a.hi < b.lo {
                    Ordering::Less
                } else {
                    Ordering::Greater
                }
            }
        }
    }
}

impl From<Rational> for Real {
    fn from(r: Rational) -> Self {
        Real::Rational(r)
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Real::Rational(r) => write!(f, "{r}"),
            Real::Algebraic(a) => write!(f, "{}", a.to_f64()),
        }
    }
}
