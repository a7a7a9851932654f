use num_traits::Zero;

use super::algebraic::{real_root_values, Real};
use super::univariate::UniPoly;
use crate::error::{Error, Result};
use crate::groebner::{buchberger, GrobnerBasis, Ideal};
use crate::poly::{MonomialOrder, MultiPoly, Rational, VariableSet};

/// A real solution, one coordinate per variable of the system.
pub type RealPoint = Vec<Real>;

fn lex_basis(polys: &[MultiPoly], vars: &VariableSet) -> Result<GrobnerBasis> {
    Ok(buchberger(&Ideal::with_variables(polys.to_vec(), vars)?, MonomialOrder::Lex))
}

fn is_zero_dimensional(gb: &GrobnerBasis) -> bool {
    let lms = gb.leading_monomials();
    (0..gb.variables().len()).all(|i| lms.iter().any(|m| m.pure_power_of() == Some(i)))
}

/// Generator of `I ∩ Q[v]` for the variable at `idx`, from a lex basis with
/// that variable placed last.
fn eliminant(polys: &[MultiPoly], vars: &VariableSet, idx: usize) -> Result<UniPoly> {
    let name = vars.name(idx).to_string();
    let (rest, _) = vars.remove(&name)?;
    let reordered = rest.push(&name)?;
    let gb = lex_basis(polys, &reordered)?;
    let last = reordered.len() - 1;
    gb.elements()
        .iter()
        .find_map(|g| UniPoly::from_multipoly(g, last).ok().filter(|u| u.degree().unwrap_or(0) > 0))
        .ok_or_else(|| Error::NotZeroDimensional { basis: gb.elements().iter().map(|g| g.to_string()).collect() })
}

/// All real solutions of a zero-dimensional polynomial system, exactly.
///
/// Coordinates are rational or certified algebraic numbers. An inconsistent
/// system yields an empty list; a system with infinitely many complex
/// solutions is rejected with the offending lex basis.
pub fn solve_zero_dim(system: &[MultiPoly]) -> Result<Vec<RealPoint>> {
    let vars = system
        .first()
        .map(|p| p.variables().clone())
        .ok_or_else(|| Error::NotZeroDimensional { basis: Vec::new() })?;
    let polys: Vec<MultiPoly> = system
        .iter()
        .filter(|p| !p.is_zero())
        .map(|p| p.embed(&vars))
        .collect::<Result<_>>()?;
    let n = vars.len();
    if n == 0 {
        return Ok(if polys.is_empty() { vec![Vec::new()] } else { Vec::new() });
    }
    let gb = lex_basis(&polys, &vars)?;
    if gb.is_unit() {
        return Ok(Vec::new());
    }
    if gb.is_empty() || !is_zero_dimensional(&gb) {
        return Err(Error::NotZeroDimensional { basis: gb.elements().iter().map(|g| g.to_string()).collect() });
    }

    let eliminants = (0..n).map(|i| eliminant(&polys, &vars, i)).collect::<Result<Vec<_>>>()?;
    let candidates: Vec<Vec<Real>> = eliminants
        .iter()
        .map(|e| real_root_values(e).into_iter().map(|(r, _)| r).collect())
        .collect();
    if candidates.iter().any(Vec::is_empty) {
        return Ok(Vec::new());
    }

    let mut points = if candidates.iter().flatten().all(Real::is_rational) {
        rational_candidates(&polys, &candidates)
    } else if n == 1 {
        candidates[0].iter().map(|c| vec![c.clone()]).collect()
    } else {
        shape_solve(&polys, &vars, &eliminants, &candidates)?
    };
    points.sort();
    points.dedup();
    Ok(points)
}

fn rational_candidates(polys: &[MultiPoly], candidates: &[Vec<Real>]) -> Vec<RealPoint> {
    let mut out = Vec::new();
    let mut current: Vec<Rational> = Vec::with_capacity(candidates.len());
    fn walk(
        polys: &[MultiPoly],
        candidates: &[Vec<Real>],
        current: &mut Vec<Rational>,
        out: &mut Vec<RealPoint>,
    ) {
        if current.len() == candidates.len() {
            if polys.iter().all(|p| p.evaluate(current).is_zero()) {
                out.push(current.iter().cloned().map(Real::Rational).collect());
            }
            return;
        }
        for c in &candidates[current.len()] {
            current.push(c.as_rational().expect("rational candidates").clone());
            walk(polys, candidates, current, out);
            current.pop();
        }
    }
    walk(polys, candidates, &mut current, &mut out);
    out
}

/// Solutions via a separating linear form `t = sum c_i v_i`: the radical
/// ideal plus that form has a lex basis `{v_i - h_i(t), g(t)}`, and every real
/// solution is `(h_i(t0))` for a real root `t0` of `g`.
fn shape_solve(
    polys: &[MultiPoly],
    vars: &VariableSet,
    eliminants: &[UniPoly],
    candidates: &[Vec<Real>],
) -> Result<Vec<RealPoint>> {
    let n = vars.len();
    let t = vars.fresh_name("t");
    let ext = vars.push(&t)?;
    let mut gens: Vec<MultiPoly> = polys.iter().map(|p| p.embed(&ext)).collect::<Result<_>>()?;
    for (i, e) in eliminants.iter().enumerate() {
        gens.push(e.squarefree().to_multipoly(&ext, i));
    }
    let tv = MultiPoly::var(&ext, &t)?;
    for m in 1..=32i64 {
        let mut lin = tv.clone();
        let mut c = Rational::from_integer(1.into());
        for i in 0..n {
            lin = &lin - &MultiPoly::var(&ext, vars.name(i))?.scale(&c);
            c *= Rational::from_integer(m.into());
        }
        let mut all = gens.clone();
        all.push(lin);
        let gb = lex_basis(&all, &ext)?;
        if let Some((g, hs)) = shape_form(&gb, n) {
            return certify_shape(&g, &hs, candidates);
        }
    }
    Err(Error::Numeric("no separating linear form found".into()))
}

/// `(g, [h_0, .., h_{n-1}])` when the basis is `{v_i - h_i(t)} ∪ {g(t)}`.
fn shape_form(gb: &GrobnerBasis, n: usize) -> Option<(UniPoly, Vec<UniPoly>)> {
    if gb.len() != n + 1 {
        return None;
    }
    let g = UniPoly::from_multipoly(&gb.elements()[0], n).ok()?;
    let mut hs = vec![UniPoly::zero(); n];
    for el in &gb.elements()[1..] {
        let lm = el.leading_monomial(MonomialOrder::Lex)?;
        let i = lm.pure_power_of()?;
        if i >= n || lm.exponents()[i] != 1 {
            return None;
        }
        let vi = MultiPoly::var(el.variables(), el.variables().name(i)).ok()?;
        let tail = el - &vi;
        hs[i] = UniPoly::from_multipoly(&tail, n).ok()?.scale(&Rational::from_integer((-1).into()));
    }
    Some((g, hs))
}

fn certify_shape(g: &UniPoly, hs: &[UniPoly], candidates: &[Vec<Real>]) -> Result<Vec<RealPoint>> {
    let mut out = Vec::new();
    for (t0, _) in real_root_values(g) {
        let mut point = Vec::with_capacity(hs.len());
        for (h, cands) in hs.iter().zip(candidates) {
            point.push(identify(&t0, h, cands)?);
        }
        out.push(point);
    }
    Ok(out)
}

/// The candidate equal to `h(t0)`, found by shrinking the interval image of
/// `t0` until it meets a single candidate.
fn identify(t0: &Real, h: &UniPoly, cands: &[Real]) -> Result<Real> {
    if let Some(q) = t0.as_rational() {
        return Ok(Real::Rational(h.eval(q)));
    }
    let mut width = Rational::new(1.into(), 1024.into());
    for _ in 0..200 {
        let (lo, hi) = t0.enclosure(&width);
        let (vlo, vhi) = h.eval_interval(&lo, &hi);
        let hits: Vec<&Real> = cands
            .iter()
            .filter(|c| {
                let (clo, chi) = c.enclosure(&width);
                clo <= vhi && vlo <= chi
            })
            .collect();
        if hits.len() == 1 {
            return Ok(hits[0].clone());
        }
        width /= Rational::from_integer(16.into());
    }
    Err(Error::Numeric("could not identify solution coordinate".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{int, parse_polynomial};

    fn sys(texts: &[&str], names: &[&str]) -> Vec<MultiPoly> {
        let v = VariableSet::new(names.iter().copied()).unwrap();
        texts.iter().map(|t| parse_polynomial(t, &v).unwrap()).collect()
    }

    fn r(n: i64) -> Real {
        Real::Rational(int(n))
    }

    #[test]
    fn third_order_plant_initial_points() {
        let s = sys(
            &["3*x^2 - y^2 + 16*x + 32", "3*x*y^2 + 8*y^2 - 8*x + 32", "3*y^4 - 40*y^2 + 160*x + 512"],
            &["x", "y"],
        );
        assert_eq!(solve_zero_dim(&s).unwrap(), vec![vec![r(-4), r(-4)], vec![r(-4), r(4)]]);
    }

    #[test]
    fn linear_system() {
        let s = sys(&["y", "x + 1"], &["x", "y"]);
        assert_eq!(solve_zero_dim(&s).unwrap(), vec![vec![r(-1), r(0)]]);
    }

    #[test]
    fn single_equation_in_two_variables_is_rejected() {
        let s = sys(&["x^2 + y^2 + 1"], &["x", "y"]);
        assert!(matches!(solve_zero_dim(&s), Err(Error::NotZeroDimensional { .. })));
    }

    #[test]
    fn inconsistent_system_is_empty() {
        let s = sys(&["x", "x - 1", "y"], &["x", "y"]);
        assert!(solve_zero_dim(&s).unwrap().is_empty());
    }

    #[test]
    fn irrational_coordinates_are_paired_correctly() {
        // circle x^2 + y^2 = 4 meets y = x + 1 at x = (-1 ± sqrt 7)/2
        let s = sys(&["x^2 + y^2 - 4", "y - x - 1"], &["x", "y"]);
        let pts = solve_zero_dim(&s).unwrap();
        assert_eq!(pts.len(), 2);
        let s7 = 7f64.sqrt();
        for (p, x) in pts.iter().zip([(-1.0 - s7) / 2.0, (-1.0 + s7) / 2.0]) {
            assert!((p[0].to_f64() - x).abs() < 1e-12);
            assert!((p[1].to_f64() - (x + 1.0)).abs() < 1e-12);
        }
    }

    #[test]
    fn conjugate_coordinates_with_shared_eliminants() {
        // xy = 2, x^2 = 2: (sqrt2, sqrt2) and (-sqrt2, -sqrt2), never mixed
        let s = sys(&["x*y - 2", "x^2 - 2"], &["x", "y"]);
        let pts = solve_zero_dim(&s).unwrap();
        assert_eq!(pts.len(), 2);
        for p in &pts {
            assert_eq!(p[0], p[1]);
        }
    }

    #[test]
    fn complex_only_solutions_are_dropped() {
        let s = sys(&["x^2 + 1", "y - 1"], &["x", "y"]);
        assert!(solve_zero_dim(&s).unwrap().is_empty());
    }
}
