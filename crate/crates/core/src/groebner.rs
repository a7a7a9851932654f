//! Buchberger's algorithm, multivariate division and derived ideal
//! operations (membership, elimination, saturation).
//!
//! Internally polynomials are kept as term vectors sorted from the largest
//! to the smallest monomial under the active order, so leading-term access
//! is O(1) and subtraction is a linear merge.

use std::cmp::Ordering;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{Monomial, MonomialOrder, MultiPoly, Rational, VariableSet};

type Term = (Monomial, Rational);

fn to_sorted(p: &MultiPoly, order: MonomialOrder) -> Vec<Term> {
    p.sorted_terms(order)
        .into_iter()
        .map(|(m, c)| (m.clone(), c.clone()))
        .collect()
}

fn from_sorted(vars: &VariableSet, terms: Vec<Term>) -> MultiPoly {
    MultiPoly::from_terms(vars, terms)
}

fn make_monic(p: &mut [Term]) {
    if let Some((_, lc)) = p.first() {
        if !lc.is_one() {
            let inv = lc.recip();
            for (_, c) in p.iter_mut() {
                *c *= &inv;
            }
        }
    }
}

/// `p - c * m * g`, all sorted descending.
fn sub_scaled(p: &[Term], g: &[Term], m: &Monomial, c: &Rational, order: MonomialOrder) -> Vec<Term> {
    let mut out = Vec::with_capacity(p.len() + g.len());
    let mut i = 0;
    let mut j = 0;
    let shifted = |k: usize| -> Term { (g[k].0.mul(m), &g[k].1 * c) };
    while i < p.len() || j < g.len() {
        if j == g.len() {
            out.extend_from_slice(&p[i..]);
            break;
        }
        let (gm, gc) = shifted(j);
        if i == p.len() {
            out.push((gm, -gc));
            j += 1;
            continue;
        }
        match order.compare(&p[i].0, &gm) {
            Ordering::Greater => {
                out.push(p[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push((gm, -gc));
                j += 1;
            }
            Ordering::Equal => {
                let c = &p[i].1 - gc;
                if !c.is_zero() {
                    out.push((gm, c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// Full normal form of `f` modulo `basis` (every basis element nonempty).
fn normal_form(f: Vec<Term>, basis: &[Vec<Term>], order: MonomialOrder) -> Vec<Term> {
    let mut p = f;
    let mut rem: Vec<Term> = Vec::new();
    while !p.is_empty() {
        let divisor = basis.iter().find(|g| g[0].0.divides(&p[0].0));
        match divisor {
            Some(g) => {
                let q = p[0].0.div(&g[0].0).expect("divisible");
                let c = &p[0].1 / &g[0].1;
                p = sub_scaled(&p, g, &q, &c, order);
            }
            None => rem.push(p.remove(0)),
        }
    }
    rem
}

fn spoly_sorted(f: &[Term], g: &[Term], order: MonomialOrder) -> Vec<Term> {
    let lcm = f[0].0.lcm(&g[0].0);
    let mf = lcm.div(&f[0].0).expect("lcm");
    let mg = lcm.div(&g[0].0).expect("lcm");
    let cf = f[0].1.recip();
    let cg = g[0].1.recip();
    let scaled_f: Vec<Term> = f.iter().map(|(m, c)| (m.mul(&mf), c * &cf)).collect();
    sub_scaled(&scaled_f, g, &mg, &cg, order)
}

/// Generators of a polynomial ideal over a common variable set.
#[derive(Clone, Debug)]
pub struct Ideal {
    generators: Vec<MultiPoly>,
    vars: VariableSet,
}

impl Ideal {
    /// Zero generators are dropped. Generators over smaller variable sets
    /// are embedded into the first generator's set.
    pub fn new(generators: Vec<MultiPoly>) -> Result<Self> {
        let vars = match generators.first() {
            Some(g) => g.variables().clone(),
            None => return Err(Error::Config("an ideal needs at least one generator".into())),
        };
        Self::with_variables(generators, &vars)
    }

    pub fn with_variables(generators: Vec<MultiPoly>, vars: &VariableSet) -> Result<Self> {
        let generators = generators
            .into_iter()
            .filter(|g| !g.is_zero())
            .map(|g| g.embed(vars))
            .collect::<Result<Vec<_>>>()?;
        Ok(Ideal { generators, vars: vars.clone() })
    }

    pub fn generators(&self) -> &[MultiPoly] {
        &self.generators
    }

    pub fn variables(&self) -> &VariableSet {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }
}

/// A Gröbner basis together with the order it was computed under.
#[derive(Clone, Debug, PartialEq)]
pub struct GrobnerBasis {
    elements: Vec<MultiPoly>,
    order: MonomialOrder,
    vars: VariableSet,
    reduced: bool,
}

impl GrobnerBasis {
    pub fn elements(&self) -> &[MultiPoly] {
        &self.elements
    }

    pub fn into_elements(self) -> Vec<MultiPoly> {
        self.elements
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn variables(&self) -> &VariableSet {
        &self.vars
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// True when the basis is `{1}`.
    pub fn is_unit(&self) -> bool {
        self.elements.iter().any(|g| g.is_constant() && !g.is_zero())
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.elements
            .iter()
            .filter_map(|g| g.leading_monomial(self.order).cloned())
            .collect()
    }

    pub fn reduce(&self, f: &MultiPoly) -> MultiPoly {
        reduce(f, &self.elements, self.order)
    }

    pub fn contains(&self, f: &MultiPoly) -> bool {
        ideal_membership(f, self)
    }

    /// Every pairwise S-polynomial reduces to zero.
    pub fn satisfies_buchberger_criterion(&self) -> bool {
        let n = self.elements.len();
        (0..n).all(|i| {
            (i + 1..n).all(|j| {
                let s = s_polynomial(&self.elements[i], &self.elements[j], self.order);
                self.reduce(&s).is_zero()
            })
        })
    }

    /// Reduced-basis conditions: monic elements, no term of any element
    /// divisible by the leading monomial of another.
    pub fn check_reduced(&self) -> bool {
        let lms = self.leading_monomials();
        self.elements.iter().enumerate().all(|(i, g)| {
            g.leading_coeff(self.order).is_some_and(|c| c.is_one())
                && g.terms().all(|(m, _)| {
                    lms.iter().enumerate().all(|(j, l)| i == j || !l.divides(m))
                })
        })
    }

    /// Mutual containment with the ideal generated by `polys`.
    pub fn same_ideal_as(&self, polys: &[MultiPoly]) -> Result<bool> {
        let other = buchberger(&Ideal::with_variables(polys.to_vec(), &self.vars)?, self.order);
        Ok(polys.iter().all(|p| self.contains(p)) && self.elements.iter().all(|g| other.contains(g)))
    }
}

/// Normal form of `f` modulo `basis` under `order`: no term of the result
/// is divisible by a leading monomial of the basis.
pub fn reduce(f: &MultiPoly, basis: &[MultiPoly], order: MonomialOrder) -> MultiPoly {
    let vars = f.variables().clone();
    let sorted: Vec<Vec<Term>> = basis
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| to_sorted(&g.embed(&vars).expect("basis over the same variables"), order))
        .collect();
    from_sorted(&vars, normal_form(to_sorted(f, order), &sorted, order))
}

/// `S(f, g) = (L / LT(f)) f - (L / LT(g)) g` with `L` the lcm of the leading
/// monomials.
pub fn s_polynomial(f: &MultiPoly, g: &MultiPoly, order: MonomialOrder) -> MultiPoly {
    let vars = f.variables().clone();
    if f.is_zero() || g.is_zero() {
        return MultiPoly::zero(&vars);
    }
    let g = g.embed(&vars).expect("same variables");
    from_sorted(&vars, spoly_sorted(&to_sorted(f, order), &to_sorted(&g, order), order))
}

/// Reduced Gröbner basis of `ideal`: monic elements sorted by increasing
/// leading monomial.
///
/// Pairs are processed smallest-lcm first, skipping pairs with coprime
/// leading monomials and pairs covered by the chain criterion.
pub fn buchberger(ideal: &Ideal, order: MonomialOrder) -> GrobnerBasis {
    let vars = ideal.vars.clone();
    let mut basis: Vec<Vec<Term>> = Vec::new();
    for g in &ideal.generators {
        let mut t = normal_form(to_sorted(g, order), &basis, order);
        if !t.is_empty() {
            make_monic(&mut t);
            basis.push(t);
        }
    }

    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pairs.push((i, j));
        }
    }

    while !pairs.is_empty() {
        let lcm_of = |&(i, j): &(usize, usize)| basis[i][0].0.lcm(&basis[j][0].0);
        let best = (0..pairs.len())
            .min_by(|&a, &b| {
                order
                    .compare(&lcm_of(&pairs[a]), &lcm_of(&pairs[b]))
                    .then_with(|| (pairs[a].1, pairs[a].0).cmp(&(pairs[b].1, pairs[b].0)))
            })
            .expect("nonempty");
        let (i, j) = pairs[best];
        let li = &basis[i][0].0;
        let lj = &basis[j][0].0;
        let skip = li.is_coprime(lj) || chain_criterion(i, j, &pairs, &basis);
        if !skip {
            let s = spoly_sorted(&basis[i], &basis[j], order);
            let mut h = normal_form(s, &basis, order);
            if !h.is_empty() {
                make_monic(&mut h);
                basis.push(h);
                let t = basis.len() - 1;
                for k in 0..t {
                    pairs.push((k, t));
                }
            }
        }
        pairs.remove(best);
    }

    let elements = interreduce(basis, order);
    GrobnerBasis {
        elements: elements.into_iter().map(|t| from_sorted(&vars, t)).collect(),
        order,
        vars,
        reduced: true,
    }
}

fn chain_criterion(i: usize, j: usize, pairs: &[(usize, usize)], basis: &[Vec<Term>]) -> bool {
    let lcm = basis[i][0].0.lcm(&basis[j][0].0);
    let pending = |a: usize, b: usize| {
        let key = (a.min(b), a.max(b));
        pairs.contains(&key)
    };
    (0..basis.len()).any(|k| {
        k != i && k != j && !pending(i, k) && !pending(j, k) && basis[k][0].0.divides(&lcm)
    })
}

fn interreduce(basis: Vec<Vec<Term>>, order: MonomialOrder) -> Vec<Vec<Term>> {
    // minimal basis: drop elements whose leading monomial is divisible by
    // another's (keeping the first of equal ones)
    let mut keep: Vec<Vec<Term>> = Vec::new();
    for (idx, g) in basis.iter().enumerate() {
        let lm = &g[0].0;
        let redundant = basis.iter().enumerate().any(|(k, h)| {
            k != idx && h[0].0.divides(lm) && (h[0].0 != *lm || k < idx)
        });
        if !redundant {
            keep.push(g.clone());
        }
    }
    for idx in 0..keep.len() {
        let (head, tail) = keep[idx].split_at(1);
        let others: Vec<Vec<Term>> = keep
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != idx)
            .map(|(_, g)| g.clone())
            .collect();
        let mut reduced = head.to_vec();
        reduced.extend(normal_form(tail.to_vec(), &others, order));
        make_monic(&mut reduced);
        keep[idx] = reduced;
    }
    keep.sort_by(|a, b| order.compare(&a[0].0, &b[0].0));
    keep
}

/// `reduce(f, basis) == 0`.
pub fn ideal_membership(f: &MultiPoly, basis: &GrobnerBasis) -> bool {
    basis.reduce(f).is_zero()
}

/// Reduced Gröbner basis of `polys` under `order`.
pub fn groebner_basis(polys: &[MultiPoly], order: MonomialOrder) -> Result<GrobnerBasis> {
    Ok(buchberger(&Ideal::new(polys.to_vec())?, order))
}

/// Generators of `⟨polys⟩ ∩ Q[remaining]` where `remaining` are the
/// variables not listed in `eliminate`. The result is the reduced grevlex
/// basis of the elimination ideal over the remaining variables (in their
/// original order).
pub fn eliminate(polys: &[MultiPoly], eliminate: &[&str]) -> Result<GrobnerBasis> {
    let vars = polys
        .first()
        .map(|p| p.variables().clone())
        .ok_or_else(|| Error::Config("nothing to eliminate from".into()))?;
    for name in eliminate {
        vars.require(name)?;
    }
    let rest: Vec<String> = vars
        .names()
        .iter()
        .filter(|n| !eliminate.contains(&n.as_str()))
        .cloned()
        .collect();
    let ordered = VariableSet::new(eliminate.iter().map(|s| s.to_string()).chain(rest.iter().cloned()))?;
    let rest_vars = VariableSet::new(rest)?;
    let ideal = Ideal::with_variables(polys.to_vec(), &ordered)?;
    let gb = buchberger(&ideal, MonomialOrder::Elimination(eliminate.len()));
    let elements = gb
        .elements
        .iter()
        .filter_map(|g| g.restrict_to(&rest_vars).ok())
        .collect();
    Ok(GrobnerBasis { elements, order: MonomialOrder::Grevlex, vars: rest_vars, reduced: true })
}

/// Saturation `⟨polys⟩ : var^∞`, i.e. the algebraic branch where `var ≠ 0`.
pub fn saturate(polys: &[MultiPoly], var: &str) -> Result<GrobnerBasis> {
    let vars = polys
        .first()
        .map(|p| p.variables().clone())
        .ok_or_else(|| Error::Config("nothing to saturate".into()))?;
    let w = vars.fresh_name("w");
    let ext = vars.push(&w)?;
    let mut gens = polys.iter().map(|p| p.embed(&ext)).collect::<Result<Vec<_>>>()?;
    let wy = &MultiPoly::var(&ext, &w)? * &MultiPoly::var(&ext, var)?;
    gens.push(&MultiPoly::one(&ext) - &wy);
    let gb = eliminate(&gens, &[&w])?;
    // the elimination drops `w`; the remaining set equals `vars`
    let elements = gb.elements.iter().map(|g| g.embed(&vars)).collect::<Result<Vec<_>>>()?;
    Ok(GrobnerBasis { elements, order: MonomialOrder::Grevlex, vars, reduced: true })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_polynomial;

    fn vs(names: &[&str]) -> VariableSet {
        VariableSet::new(names.iter().copied()).unwrap()
    }

    fn p(text: &str, v: &VariableSet) -> MultiPoly {
        parse_polynomial(text, v).unwrap()
    }

    #[test]
    fn reduce_examples() {
        let v = vs(&["x", "y"]);
        assert!(reduce(&p("x^2", &v), &[p("x", &v)], MonomialOrder::Grevlex).is_zero());
        assert!(reduce(&p("x^2*y + y", &v), &[p("x^2+1", &v)], MonomialOrder::Lex).is_zero());
        let r = reduce(&p("x^2*y + x + 1", &v), &[p("x*y - 1", &v)], MonomialOrder::Lex);
        assert_eq!(r, p("2*x + 1", &v));
    }

    #[test]
    fn s_polynomial_examples() {
        let v = vs(&["x", "y"]);
        let f = p("x^2 + y", &v);
        assert!(s_polynomial(&f, &f, MonomialOrder::Grevlex).is_zero());
        assert!(s_polynomial(&p("x^2", &v), &p("y^2", &v), MonomialOrder::Grevlex).is_zero());
        let s = s_polynomial(&p("x*y - 1", &v), &p("y^2 - x", &v), MonomialOrder::Grevlex);
        // y(xy - 1) - x(y^2 - x) = x^2 - y
        assert_eq!(s, p("x^2 - y", &v));
    }

    #[test]
    fn single_generator_basis() {
        let v = vs(&["x", "y"]);
        let gb = groebner_basis(&[p("x", &v)], MonomialOrder::Grevlex).unwrap();
        assert_eq!(gb.elements(), &[p("x", &v)]);
        let gb = groebner_basis(&[p("3*x", &v), p("x", &v)], MonomialOrder::Grevlex).unwrap();
        assert_eq!(gb.elements(), &[p("x", &v)]);
    }

    #[test]
    fn membership() {
        let v = vs(&["x", "y"]);
        let gb = groebner_basis(&[p("x", &v), p("y", &v)], MonomialOrder::Grevlex).unwrap();
        assert!(!gb.contains(&p("1", &v)));
        assert!(gb.contains(&p("x*y + y^3", &v)));
    }

    #[test]
    fn classic_textbook_basis() {
        // Cox-Little-O'Shea: <x^3 - 2xy, x^2 y - 2y^2 + x> under grlex
        let v = vs(&["x", "y"]);
        let gb = groebner_basis(
            &[p("x^3 - 2*x*y", &v), p("x^2*y - 2*y^2 + x", &v)],
            MonomialOrder::Grlex,
        )
        .unwrap();
        let expected = [p("x^2", &v), p("x*y", &v), p("y^2 - 1/2*x", &v)];
        assert_eq!(gb.len(), 3);
        for e in &expected {
            assert!(gb.elements().contains(e), "missing {e}");
        }
        assert!(gb.satisfies_buchberger_criterion());
        assert!(gb.check_reduced());
    }

    #[test]
    fn inconsistent_system_gives_unit() {
        let v = vs(&["x", "y"]);
        let gb = groebner_basis(&[p("x*y - 1", &v), p("x", &v)], MonomialOrder::Lex).unwrap();
        assert!(gb.is_unit());
        assert_eq!(gb.elements(), &[p("1", &v)]);
    }

    #[test]
    fn elimination_and_saturation() {
        let v = vs(&["t", "x", "y"]);
        // x = t^2, y = t^3  =>  x^3 - y^2
        let gb = eliminate(&[p("x - t^2", &v), p("y - t^3", &v)], &["t"]).unwrap();
        assert_eq!(gb.elements(), &[p("x^3 - y^2", &vs(&["x", "y"]))]);

        let v = vs(&["y", "z"]);
        // y (z - 1) with y != 0 leaves z - 1
        let sat = saturate(&[p("y*z - y", &v), p("y^2*z - y^2", &v)], "y").unwrap();
        assert_eq!(sat.elements(), &[p("z - 1", &v)]);
    }

    fn assert_same_up_to_scalar(got: &GrobnerBasis, expected: &[MultiPoly]) {
        assert_eq!(got.len(), expected.len());
        for e in expected {
            assert!(
                got.elements().iter().any(|g| g.is_scalar_multiple_of(e)),
                "{e} not in {:?}",
                got.elements().iter().map(|g| g.to_string()).collect::<Vec<_>>()
            );
        }
        assert!(got.same_ideal_as(expected).unwrap());
    }

    #[test]
    fn pencil_bases_of_the_two_quadratic_plants() {
        let v = vs(&["x", "y", "k_d", "k_n"]);
        // s/(s^2+1)
        let q = p("k_d*(x^2-y^2+1) + k_n*x", &v);
        let r = p("k_d*2*x*y + k_n*y", &v);
        let gb = groebner_basis(&[q.clone(), r.clone()], MonomialOrder::Grevlex).unwrap();
        let expected: Vec<_> = [
            "2*x*y*k_d + y*k_n",
            "x^2*k_d - y^2*k_d + x*k_n + k_d",
            "x^2*y*k_n + y^3*k_n - y*k_n",
            "2*y^3*k_d - x*y*k_n - 2*y*k_d",
        ]
        .iter()
        .map(|t| p(t, &v))
        .collect();
        assert_same_up_to_scalar(&gb, &expected);
        assert!(gb.satisfies_buchberger_criterion());
        assert!(gb.contains(&q) && gb.contains(&r));
        let s = s_polynomial(&expected[0], &expected[1], MonomialOrder::Grevlex);
        assert!(reduce(&s, &expected, MonomialOrder::Grevlex).is_zero());

        // (s+1)/s^2
        let q = p("k_d*(x^2-y^2) + k_n*(x+1)", &v);
        let r = p("k_d*2*x*y + k_n*y", &v);
        let gb = groebner_basis(&[q, r], MonomialOrder::Grevlex).unwrap();
        let expected: Vec<_> = [
            "2*x*y*k_d + y*k_n",
            "x^2*k_d - y^2*k_d + x*k_n + k_n",
            "x^2*y*k_n + y^3*k_n + 2*x*y*k_n",
            "2*y^3*k_d - x*y*k_n - 2*y*k_n",
        ]
        .iter()
        .map(|t| p(t, &v))
        .collect();
        assert_same_up_to_scalar(&gb, &expected);
    }

    #[test]
    fn shuffled_generators_give_identical_basis() {
        let v = vs(&["x", "y", "z"]);
        let gens = [p("x^2 + y*z - 1", &v), p("x*y - z^2", &v), p("y^3 + x - 2", &v)];
        let a = groebner_basis(&gens, MonomialOrder::Grevlex).unwrap();
        let b = groebner_basis(&[gens[2].clone(), gens[0].clone(), gens[1].clone()], MonomialOrder::Grevlex).unwrap();
        assert_eq!(a, b);
        assert!(a.check_reduced());
    }
}
