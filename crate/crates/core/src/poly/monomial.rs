use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Ordered variable names. Position is precedence: index 0 is the largest
/// variable for every monomial order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VariableSet(Arc<[String]>);

impl VariableSet {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(Error::DuplicateVariable(n.clone()));
            }
        }
        Ok(VariableSet(names.into()))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn name(&self, idx: usize) -> &str {
        &self.0[idx]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|n| n == name)
    }

    pub fn require(&self, name: &str) -> Result<usize> {
        self.index_of(name).ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    pub fn contains(&self, name: &str) -> bool {
        self.index_of(name).is_some()
    }

    /// New set with `name` inserted at position `at`.
    pub fn insert_at(&self, at: usize, name: &str) -> Result<Self> {
        let mut names = self.0.to_vec();
        names.insert(at, name.to_string());
        VariableSet::new(names)
    }

    pub fn push(&self, name: &str) -> Result<Self> {
        self.insert_at(self.len(), name)
    }

    /// New set without `name`, plus the removed position.
    pub fn remove(&self, name: &str) -> Result<(Self, usize)> {
        let idx = self.require(name)?;
        let mut names = self.0.to_vec();
        names.remove(idx);
        Ok((VariableSet(names.into()), idx))
    }

    /// For each variable of `self`, its index in `target`; `None` when some
    /// variable is missing from `target`.
    pub fn embedding_into(&self, target: &VariableSet) -> Option<Vec<usize>> {
        self.0.iter().map(|n| target.index_of(n)).collect()
    }

    /// Smallest set containing both, keeping `self`'s order first.
    pub fn union(&self, other: &VariableSet) -> VariableSet {
        let mut names = self.0.to_vec();
        for n in other.0.iter() {
            if !names.contains(n) {
                names.push(n.clone());
            }
        }
        VariableSet(names.into())
    }

    /// A variable name not present in the set, derived from `base`.
    pub fn fresh_name(&self, base: &str) -> String {
        let mut name = base.to_string();
        while self.contains(&name) {
            name.push('_');
        }
        name
    }
}

impl fmt::Debug for VariableSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.0.join(", "))
    }
}

impl fmt::Display for VariableSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.join(" > "))
    }
}

/// Exponent vector aligned with a [`VariableSet`].
///
/// The derived `Ord` is plain lexicographic comparison of the exponent
/// vectors; it only serves as a storage key. Use [`MonomialOrder`] for
/// term orders.
///
/// [`MonomialOrder`]: super::MonomialOrder
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, idx: usize) -> Self {
        let mut e = vec![0; nvars];
        e[idx] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn degree_in(&self, vars: &[usize]) -> u32 {
        vars.iter().map(|&i| self.0[i]).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// `Some(i)` when the monomial is `x_i^e` with `e > 0`.
    pub fn pure_power_of(&self) -> Option<usize> {
        let mut found = None;
        for (i, &e) in self.0.iter().enumerate() {
            if e > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some(i);
            }
        }
        found
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if other.divides(self) {
            Some(Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()))
        } else {
            None
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }
}

/// Term orders. Variable precedence comes from the position in the
/// polynomial's [`VariableSet`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum MonomialOrder {
    Lex,
    /// Graded, ties broken lexicographically.
    Grlex,
    /// Graded reverse lexicographic.
    Grevlex,
    /// Block order eliminating the first `n` variables: grevlex on the
    /// first block, ties broken by grevlex on the rest.
    Elimination(usize),
}

impl MonomialOrder {
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let (a, b) = (a.exponents(), b.exponents());
        match *self {
            MonomialOrder::Lex => lex(a, b),
            MonomialOrder::Grlex => degree(a)
                .cmp(&degree(b))
                .then_with(|| lex(a, b)),
            MonomialOrder::Grevlex => grevlex(a, b),
            MonomialOrder::Elimination(n) => {
                let n = n.min(a.len());
                grevlex(&a[..n], &b[..n]).then_with(|| grevlex(&a[n..], &b[n..]))
            }
        }
    }

    pub fn is_graded(&self) -> bool {
        matches!(self, MonomialOrder::Grlex | MonomialOrder::Grevlex)
    }
}

fn degree(e: &[u32]) -> u32 {
    e.iter().sum()
}

fn lex(a: &[u32], b: &[u32]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.cmp(y) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    Ordering::Equal
}

fn grevlex(a: &[u32], b: &[u32]) -> Ordering {
    degree(a).cmp(&degree(b)).then_with(|| {
        for (x, y) in a.iter().zip(b).rev() {
            match x.cmp(y) {
                Ordering::Equal => continue,
                // smaller exponent in the least variable wins
                o => return o.reverse(),
            }
        }
        Ordering::Equal
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    #[test]
    fn grevlex_examples() {
        let o = MonomialOrder::Grevlex;
        // x^2 vs xy, x > y
        assert_eq!(o.compare(&m(&[2, 0]), &m(&[1, 1])), Ordering::Greater);
        // x vs y^2
        assert_eq!(o.compare(&m(&[1, 0]), &m(&[0, 2])), Ordering::Less);
        // classic grevlex vs grlex split: x^2 z^2 vs x y^3 z^0... use x y z^2 vs y^3 z
        // grlex: xyz^2 > y^3 z, grevlex: y^3 z > x y z^2
        let a = m(&[1, 1, 2]);
        let b = m(&[0, 3, 1]);
        assert_eq!(MonomialOrder::Grlex.compare(&a, &b), Ordering::Greater);
        assert_eq!(o.compare(&a, &b), Ordering::Less);
    }

    #[test]
    fn lex_ignores_degree() {
        assert_eq!(
            MonomialOrder::Lex.compare(&m(&[1, 0]), &m(&[0, 2])),
            Ordering::Greater
        );
    }

    #[test]
    fn elimination_puts_first_block_on_top() {
        let o = MonomialOrder::Elimination(1);
        assert_eq!(o.compare(&m(&[1, 0, 0]), &m(&[0, 5, 5])), Ordering::Greater);
        assert_eq!(o.compare(&m(&[0, 2, 0]), &m(&[0, 1, 1])), Ordering::Greater);
    }

    #[test]
    fn variable_set_rejects_duplicates() {
        assert!(VariableSet::new(["x", "y", "x"]).is_err());
        let v = VariableSet::new(["x", "y", "k_d", "k_n"]).unwrap();
        let w = v.insert_at(2, "z").unwrap();
        assert_eq!(w.names(), ["x", "y", "z", "k_d", "k_n"]);
        assert_eq!(v.embedding_into(&w), Some(vec![0, 1, 3, 4]));
        assert_eq!(w.embedding_into(&v), None);
    }

    #[test]
    fn pure_powers() {
        assert_eq!(m(&[0, 3, 0]).pure_power_of(), Some(1));
        assert_eq!(m(&[1, 3, 0]).pure_power_of(), None);
        assert_eq!(m(&[0, 0, 0]).pure_power_of(), None);
    }
}
