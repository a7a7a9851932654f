use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::{Monomial, MonomialOrder, Rational, VariableSet};
use crate::error::{Error, Result};

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// Zero coefficients are never stored, so structural equality is equality
/// of polynomials.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MultiPoly {
    vars: VariableSet,
    terms: BTreeMap<Monomial, Rational>,
}

impl MultiPoly {
    pub fn zero(vars: &VariableSet) -> Self {
        MultiPoly { vars: vars.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(vars: &VariableSet, c: Rational) -> Self {
        let mut p = Self::zero(vars);
        p.add_term(Monomial::one(vars.len()), c);
        p
    }

    pub fn one(vars: &VariableSet) -> Self {
        Self::constant(vars, Rational::one())
    }

    pub fn var(vars: &VariableSet, name: &str) -> Result<Self> {
        let idx = vars.require(name)?;
        let mut p = Self::zero(vars);
        p.add_term(Monomial::var(vars.len(), idx), Rational::one());
        Ok(p)
    }

    pub fn from_terms<I>(vars: &VariableSet, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut p = Self::zero(vars);
        for (m, c) in terms {
            assert_eq!(m.nvars(), vars.len(), "monomial arity does not match variable set");
            p.add_term(m, c);
        }
        p
    }

    /// Convenience constructor from `(coefficient, exponents)` pairs with
    /// integer coefficients.
    pub fn from_int_terms(vars: &VariableSet, terms: &[(i64, &[u32])]) -> Self {
        Self::from_terms(
            vars,
            terms
                .iter()
                .map(|(c, e)| (Monomial::new(e.to_vec()), Rational::from_integer((*c).into()))),
        )
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn variables(&self) -> &VariableSet {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// The constant term value when the polynomial is constant.
    pub fn as_constant(&self) -> Option<Rational> {
        if self.is_zero() {
            Some(Rational::zero())
        } else if self.is_constant() {
            self.terms.values().next().cloned()
        } else {
            None
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn degree_in(&self, name: &str) -> Result<u32> {
        let idx = self.vars.require(name)?;
        Ok(self.terms.keys().map(|m| m.exponents()[idx]).max().unwrap_or(0))
    }

    /// Indices of variables that occur with positive exponent.
    pub fn support(&self) -> Vec<usize> {
        (0..self.vars.len())
            .filter(|&i| self.terms.keys().any(|m| m.exponents()[i] > 0))
            .collect()
    }

    pub fn leading_term(&self, order: MonomialOrder) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().max_by(|a, b| order.compare(a.0, b.0))
    }

    pub fn leading_monomial(&self, order: MonomialOrder) -> Option<&Monomial> {
        self.leading_term(order).map(|(m, _)| m)
    }

    pub fn leading_coeff(&self, order: MonomialOrder) -> Option<&Rational> {
        self.leading_term(order).map(|(_, c)| c)
    }

    /// Terms sorted from largest to smallest under `order`.
    pub fn sorted_terms(&self, order: MonomialOrder) -> Vec<(&Monomial, &Rational)> {
        let mut t: Vec<_> = self.terms.iter().collect();
        t.sort_by(|a, b| order.compare(b.0, a.0));
        t
    }

    pub fn monic(&self, order: MonomialOrder) -> MultiPoly {
        match self.leading_coeff(order) {
            Some(lc) => self.scale(&lc.recip()),
            None => self.clone(),
        }
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(t, a)| (t.mul(m), a * c)).collect(),
        }
    }

    /// Lifts both operands to a common variable set when one embeds into
    /// the other.
    fn align(&self, other: &MultiPoly) -> Result<(MultiPoly, MultiPoly)> {
        if self.vars == other.vars {
            return Ok((self.clone(), other.clone()));
        }
        if other.vars.embedding_into(&self.vars).is_some() {
            return Ok((self.clone(), other.embed(&self.vars)?));
        }
        if self.vars.embedding_into(&other.vars).is_some() {
            return Ok((self.embed(&other.vars)?, other.clone()));
        }
        Err(Error::VariableMismatch {
            left: self.vars.names().join(", "),
            right: other.vars.names().join(", "),
        })
    }

    pub fn checked_add(&self, other: &MultiPoly) -> Result<MultiPoly> {
        let (mut a, b) = self.align(other)?;
        for (m, c) in b.terms {
            a.add_term(m, c);
        }
        Ok(a)
    }

    pub fn checked_sub(&self, other: &MultiPoly) -> Result<MultiPoly> {
        let (mut a, b) = self.align(other)?;
        for (m, c) in b.terms {
            a.add_term(m, -c);
        }
        Ok(a)
    }

    pub fn checked_mul(&self, other: &MultiPoly) -> Result<MultiPoly> {
        let (a, b) = self.align(other)?;
        let mut out = Self::zero(&a.vars);
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = Self::one(&self.vars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Re-expresses the polynomial over `target`, which must contain every
    /// variable of `self` (in any order).
    pub fn embed(&self, target: &VariableSet) -> Result<MultiPoly> {
        let map = self.vars.embedding_into(target).ok_or_else(|| Error::VariableMismatch {
            left: self.vars.names().join(", "),
            right: target.names().join(", "),
        })?;
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            let mut e = vec![0; target.len()];
            for (i, &x) in m.exponents().iter().enumerate() {
                e[map[i]] = x;
            }
            out.add_term(Monomial::new(e), c.clone());
        }
        Ok(out)
    }

    /// Drops variables that do not occur, keeping the remaining order.
    pub fn restrict_to(&self, target: &VariableSet) -> Result<MultiPoly> {
        let map = target.embedding_into(&self.vars).ok_or_else(|| Error::VariableMismatch {
            left: self.vars.names().join(", "),
            right: target.names().join(", "),
        })?;
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            let e = m.exponents();
            let used: u32 = map.iter().map(|&i| e[i]).sum();
            if used != m.degree() {
                return Err(Error::VariableMismatch {
                    left: self.vars.names().join(", "),
                    right: target.names().join(", "),
                });
            }
            out.add_term(Monomial::new(map.iter().map(|&i| e[i]).collect()), c.clone());
        }
        Ok(out)
    }

    /// Substitutes `name = value` and removes the variable.
    pub fn substitute(&self, name: &str, value: &Rational) -> Result<MultiPoly> {
        let (vars, idx) = self.vars.remove(name)?;
        let mut out = Self::zero(&vars);
        for (m, c) in &self.terms {
            let mut e = m.exponents().to_vec();
            let k = e.remove(idx);
            let factor = pow_rational(value, k);
            out.add_term(Monomial::new(e), c * factor);
        }
        Ok(out)
    }

    /// Substitutes `name = p` (with `p` over the remaining variables, or a
    /// subset of them) and removes the variable.
    pub fn substitute_poly(&self, name: &str, p: &MultiPoly) -> Result<MultiPoly> {
        let (vars, idx) = self.vars.remove(name)?;
        let p = p.embed(&vars)?;
        let mut out = Self::zero(&vars);
        let mut powers: Vec<MultiPoly> = vec![Self::one(&vars)];
        for (m, c) in &self.terms {
            let mut e = m.exponents().to_vec();
            let k = e.remove(idx) as usize;
            while powers.len() <= k {
                let next = &powers[powers.len() - 1] * &p;
                powers.push(next);
            }
            let t = powers[k].mul_monomial(&Monomial::new(e), c);
            out = &out + &t;
        }
        Ok(out)
    }

    /// Setting `name = 1`.
    pub fn dehomogenize(&self, name: &str) -> Result<MultiPoly> {
        self.substitute(name, &Rational::one())
    }

    /// Homogenizes with respect to the variables in `block` using the new
    /// variable `new_var`, inserted right after the last block variable.
    ///
    /// Every term is padded with `new_var` up to the maximal block degree,
    /// so variables outside the block keep their exponents.
    pub fn homogenize(&self, block: &[&str], new_var: &str) -> Result<MultiPoly> {
        if self.vars.contains(new_var) {
            return Err(Error::DuplicateVariable(new_var.to_string()));
        }
        let idx: Vec<usize> = block.iter().map(|b| self.vars.require(b)).collect::<Result<_>>()?;
        let at = idx.iter().max().map_or(self.vars.len(), |&i| i + 1);
        let vars = self.vars.insert_at(at, new_var)?;
        let d = self.terms.keys().map(|m| m.degree_in(&idx)).max().unwrap_or(0);
        let mut out = Self::zero(&vars);
        for (m, c) in &self.terms {
            let mut e = m.exponents().to_vec();
            e.insert(at, d - m.degree_in(&idx));
            out.add_term(Monomial::new(e), c.clone());
        }
        Ok(out)
    }

    pub fn is_homogeneous_in(&self, block: &[&str]) -> Result<bool> {
        let idx: Vec<usize> = block.iter().map(|b| self.vars.require(b)).collect::<Result<_>>()?;
        let mut degs = self.terms.keys().map(|m| m.degree_in(&idx));
        Ok(match degs.next() {
            None => true,
            Some(d) => degs.all(|x| x == d),
        })
    }

    pub fn evaluate(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.vars.len());
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.exponents()) {
                if e > 0 {
                    t *= pow_rational(x, e);
                }
            }
            acc += t;
        }
        acc
    }

    pub fn evaluate_f64(&self, point: &[f64]) -> f64 {
        assert_eq!(point.len(), self.vars.len());
        self.terms
            .iter()
            .map(|(m, c)| {
                let mut t = super::rational_to_f64(c);
                for (x, &e) in point.iter().zip(m.exponents()) {
                    t *= x.powi(e as i32);
                }
                t
            })
            .sum()
    }

    /// Exact division by a monomial when every term is divisible.
    pub fn div_monomial(&self, m: &Monomial) -> Option<MultiPoly> {
        let mut out = Self::zero(&self.vars);
        for (t, c) in &self.terms {
            out.add_term(t.div(m)?, c.clone());
        }
        Some(out)
    }

    /// True when `self = c * other` for some nonzero rational `c`.
    pub fn is_scalar_multiple_of(&self, other: &MultiPoly) -> bool {
        if self.vars != other.vars || self.terms.len() != other.terms.len() {
            return false;
        }
        let Some((m, c)) = self.terms.iter().next() else {
            return other.is_zero();
        };
        let d = other.coeff(m);
        if d.is_zero() {
            return false;
        }
        let ratio = c / d;
        *self == other.scale(&ratio)
    }

    /// Canonical text form: terms in descending grevlex order, `*` between
    /// factors, `^` for powers. Round-trips through [`parse_polynomial`].
    ///
    /// [`parse_polynomial`]: super::parse_polynomial
    pub fn to_canonical_string(&self) -> String {
        self.to_string()
    }
}

pub(crate) fn pow_rational(x: &Rational, e: u32) -> Rational {
    num_traits::pow::pow(x.clone(), e as usize)
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.sorted_terms(MonomialOrder::Grevlex).into_iter().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let a = c.abs();
            let mut factors: Vec<String> = Vec::new();
            if !a.is_one() || m.is_one() {
                factors.push(a.to_string());
            }
            for (k, &e) in m.exponents().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.vars.name(k).to_string()),
                    _ => factors.push(format!("{}^{}", self.vars.name(k), e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.checked_add(rhs).expect("polynomial variable sets are incompatible")
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self.checked_sub(rhs).expect("polynomial variable sets are incompatible")
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.checked_mul(rhs).expect("polynomial variable sets are incompatible")
    }
}

impl Mul<&Rational> for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &Rational) -> MultiPoly {
        self.scale(rhs)
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&-Rational::one())
    }
}

impl Add for MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: MultiPoly) -> MultiPoly {
        &self + &rhs
    }
}

impl Sub for MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: MultiPoly) -> MultiPoly {
        &self - &rhs
    }
}

impl Mul for MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: MultiPoly) -> MultiPoly {
        &self * &rhs
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}
