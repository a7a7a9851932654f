//! Strategies and property checks shared by the proptest suite and the
//! acceptance binary.

#![allow(dead_code)]

use std::cmp::Ordering;

use num_traits::{One, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

use pjroot::cli::{build_report, RunConfig};
use pjroot::geometry::{gnomonic_lift, gnomonic_project, ProjectivePoint, Projected};
use pjroot::groebner::groebner_basis;
use pjroot::pencil::{complex_split, RationalFunction};
use pjroot::poly::{int, rat, Monomial, MonomialOrder, MultiPoly, Rational, VariableSet};
use pjroot::solver::{k_grid, sweep_conventional, SturmSequence, UniPoly};

pub type Check = std::result::Result<(), TestCaseError>;

pub const ORDERS: [MonomialOrder; 4] =
    [MonomialOrder::Lex, MonomialOrder::Grlex, MonomialOrder::Grevlex, MonomialOrder::Elimination(1)];

pub fn vars(n: usize) -> VariableSet {
    VariableSet::new(["x", "y", "z"].into_iter().take(n)).unwrap()
}

pub fn small_rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

pub fn nonzero_rational() -> impl Strategy<Value = Rational> {
    small_rational().prop_filter("nonzero", |r| !r.is_zero())
}

pub fn monomial(nvars: usize, max_exp: u32) -> impl Strategy<Value = Monomial> {
    proptest::collection::vec(0..=max_exp, nvars).prop_map(Monomial::new)
}

/// Polynomial in `nvars` variables with total degree at most `max_deg`.
pub fn poly(nvars: usize, max_deg: u32, max_terms: usize) -> impl Strategy<Value = MultiPoly> {
    proptest::collection::vec((monomial(nvars, max_deg), nonzero_rational()), 1..=max_terms).prop_map(move |terms| {
        let v = vars(nvars);
        let terms = terms.into_iter().filter(|(m, _)| m.degree() <= max_deg);
        MultiPoly::from_terms(&v, terms)
    })
}

pub fn runner(cases: u32) -> TestRunner {
    TestRunner::new_with_rng(Config { cases, failure_persistence: None, ..Config::default() }, proptest::test_runner::TestRng::deterministic_rng(proptest::test_runner::RngAlgorithm::ChaCha))
}

pub fn check_order_laws((a, b, c): (Monomial, Monomial, Monomial)) -> Check {
    for o in ORDERS {
        prop_assert_eq!(o.compare(&a, &b), o.compare(&b, &a).reverse(), "antisymmetry under {:?}", o);
        prop_assert_eq!(o.compare(&a, &a), Ordering::Equal);
        if o.compare(&a, &b) == Ordering::Less && o.compare(&b, &c) == Ordering::Less {
            prop_assert_eq!(o.compare(&a, &c), Ordering::Less, "transitivity under {:?}", o);
        }
        prop_assert_eq!(o.compare(&a.mul(&c), &b.mul(&c)), o.compare(&a, &b), "multiplicativity under {:?}", o);
        prop_assert_ne!(o.compare(&Monomial::one(a.nvars()), &a), Ordering::Greater, "1 is least under {:?}", o);
    }
    Ok(())
}

pub fn check_ring_laws((p, q, r): (MultiPoly, MultiPoly, MultiPoly)) -> Check {
    prop_assert_eq!(&p + &q, &q + &p);
    prop_assert_eq!(&p * &q, &q * &p);
    prop_assert_eq!(&(&p + &q) + &r, &p + &(&q + &r));
    prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
    prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
    prop_assert!((&p - &p).is_zero());
    prop_assert_eq!(&p * &MultiPoly::one(p.variables()), p.clone());
    Ok(())
}

pub fn ideal(nvars: usize) -> impl Strategy<Value = Vec<MultiPoly>> {
    proptest::collection::vec(poly(nvars, 3, 3), 1..=3)
}

pub fn small_ideal() -> impl Strategy<Value = Vec<MultiPoly>> {
    (1usize..=3).prop_flat_map(ideal)
}

pub fn check_buchberger(gens: Vec<MultiPoly>) -> Check {
    let gb = groebner_basis(&gens, MonomialOrder::Grevlex).map_err(|e| TestCaseError::fail(e.to_string()))?;
    prop_assert!(gb.satisfies_buchberger_criterion(), "S-pairs do not reduce to zero");
    prop_assert!(gb.check_reduced(), "basis is not reduced");
    for g in &gens {
        prop_assert!(gb.contains(g), "generator {} not in ideal", g);
    }
    Ok(())
}

pub fn check_homogenization((p, t): (MultiPoly, Rational)) -> Check {
    let names: Vec<String> = p.variables().names().to_vec();
    let block: Vec<&str> = names.iter().map(String::as_str).collect();
    let h = p.homogenize(&block, "w").map_err(|e| TestCaseError::fail(e.to_string()))?;
    let mut all = block.clone();
    all.push("w");
    prop_assert!(h.is_homogeneous_in(&all).unwrap());
    prop_assert_eq!(h.dehomogenize("w").unwrap(), p.clone());

    // h(t v, t w) = t^deg h(v, w) at a fixed point
    let point: Vec<Rational> = (0..h.variables().len()).map(|i| rat(i as i64 + 2, 3)).collect();
    let scaled: Vec<Rational> = point.iter().map(|c| c * &t).collect();
    let deg = h.total_degree().unwrap_or(0);
    let mut tp = Rational::one();
    for _ in 0..deg {
        tp *= &t;
    }
    prop_assert_eq!(h.evaluate(&scaled), h.evaluate(&point) * tp);
    Ok(())
}

/// `(a + bi)` arithmetic over exact rationals.
fn cmul(a: &(Rational, Rational), b: &(Rational, Rational)) -> (Rational, Rational) {
    (&a.0 * &b.0 - &a.1 * &b.1, &a.0 * &b.1 + &a.1 * &b.0)
}

pub fn check_split((coeffs, x, y): (Vec<Rational>, Rational, Rational)) -> Check {
    let s = VariableSet::new(["s"]).unwrap();
    let p = MultiPoly::from_terms(&s, coeffs.iter().enumerate().map(|(i, c)| (Monomial::new(vec![i as u32]), c.clone())));
    let (re, im) = complex_split(&p).map_err(|e| TestCaseError::fail(e.to_string()))?;
    let mut acc = (Rational::zero(), Rational::zero());
    for c in coeffs.iter().rev() {
        acc = cmul(&acc, &(x.clone(), y.clone()));
        acc.0 += c;
    }
    let pt = [x.clone(), y.clone()];
    prop_assert_eq!(re.evaluate(&pt), acc.0);
    prop_assert_eq!(im.evaluate(&pt), acc.1);
    Ok(())
}

pub fn check_gnomonic((x, y, t): (Rational, Rational, Rational)) -> Check {
    let p = ProjectivePoint::from_rationals(x.clone(), y.clone(), int(1)).unwrap();
    let sp = gnomonic_lift(&p);
    prop_assert!((sp.norm() - 1.0).abs() < 1e-12);
    prop_assert!(sp.z > 0.0);
    match gnomonic_project(&sp) {
        Projected::Finite(a, b) => {
            let (xf, yf) = (pjroot::poly::rational_to_f64(&x), pjroot::poly::rational_to_f64(&y));
            prop_assert!((a - xf).abs() <= 1e-9 * xf.abs().max(1.0));
            prop_assert!((b - yf).abs() <= 1e-9 * yf.abs().max(1.0));
        }
        other => prop_assert!(false, "finite point projected to {:?}", other),
    }
    let q = ProjectivePoint::from_rationals(&x * &t, &y * &t, t.clone()).unwrap();
    prop_assert_eq!(gnomonic_lift(&q), sp);

    // points at infinity: sign fixed by the exact coordinates
    if !(x.is_zero() && y.is_zero()) {
        let a = ProjectivePoint::from_rationals(x.clone(), y.clone(), int(0)).unwrap();
        let b = ProjectivePoint::from_rationals(&x * &t, &y * &t, int(0)).unwrap();
        prop_assert_eq!(gnomonic_lift(&a), gnomonic_lift(&b));
        prop_assert!(matches!(gnomonic_project(&gnomonic_lift(&a)), Projected::AtInfinity(..)));
    }
    Ok(())
}

/// Product of `(s - r)` over distinct half-integer roots, and the count in
/// `(a, b]` known by construction.
pub fn check_sturm((roots, a, b): (Vec<i64>, i64, i64)) -> Check {
    let mut rs: Vec<Rational> = roots.iter().map(|&r| rat(r, 2)).collect();
    rs.sort();
    rs.dedup();
    let mut p = UniPoly::one();
    for r in &rs {
        p = p.mul(&UniPoly::new(vec![-r.clone(), Rational::one()]));
    }
    // an irreducible quadratic factor adds no real roots
    p = p.mul(&UniPoly::from_ints(&[1, 0, 1]));
    let (lo, hi) = (rat(a.min(b), 3), rat(a.max(b) + 1, 3));
    let expected = rs.iter().filter(|r| &lo < *r && *r <= &hi).count();
    let sturm = SturmSequence::new(&p);
    prop_assert_eq!(sturm.count(&lo, &hi), expected);
    Ok(())
}

/// Random proper plant with a monic denominator of degree 1 to 4.
pub fn plant() -> impl Strategy<Value = (Vec<i64>, Vec<i64>)> {
    (1usize..=4)
        .prop_flat_map(|deg| {
            (proptest::collection::vec(-6i64..=6, deg), proptest::collection::vec(-6i64..=6, 1..=deg))
        })
        .prop_map(|(mut d, n)| {
            d.push(1);
            (d, n)
        })
}

fn plant_text(d: &[i64], n: &[i64]) -> String {
    let poly = |c: &[i64]| {
        let terms: Vec<String> = c.iter().enumerate().map(|(i, a)| format!("({a})*s^{i}")).collect();
        terms.join(" + ")
    };
    format!("({})/({})", poly(n), poly(d))
}

pub fn check_conjugate_symmetry(((d, n), k): ((Vec<i64>, Vec<i64>), i64)) -> Check {
    let Ok(g) = RationalFunction::parse(&plant_text(&d, &n)) else {
        return Ok(());
    };
    for s in sweep_conventional(&g, &[rat(k, 4)]) {
        for &(x, y) in &s.roots {
            let scale = (x * x + y * y).sqrt().max(1.0);
            let mirror = s.roots.iter().map(|&(a, b)| ((a - x).powi(2) + (b + y).powi(2)).sqrt()).fold(f64::MAX, f64::min);
            prop_assert!(mirror <= 1e-6 * scale, "no conjugate for {}+{}i in {:?}", x, y, s.roots);
        }
    }
    Ok(())
}

pub fn check_report_determinism(plant: &str) -> Check {
    let mut c = RunConfig::new(plant);
    c.samples = 24;
    c.exact_samples = 2;
    let a = build_report(&c).map_err(|e| TestCaseError::fail(e.to_string()))?;
    let b = build_report(&c).map_err(|e| TestCaseError::fail(e.to_string()))?;
    prop_assert_eq!(serde_json::to_string(&a.to_json()).unwrap(), serde_json::to_string(&b.to_json()).unwrap());
    let grid = k_grid(-10.0, 10.0, 30);
    prop_assert_eq!(grid.clone(), k_grid(-10.0, 10.0, 30));
    Ok(())
}
