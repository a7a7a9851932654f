use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::Zero;
use rayon::prelude::*;

use super::univariate::UniPoly;
use crate::pencil::RationalFunction;
use crate::poly::{decimal_rational, rational_to_f64, Rational};

/// Numeric roots of `d(s) + k n(s)` at one gain.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepPoint {
    pub k: Rational,
    /// `(Re, Im)` of each root, counted with multiplicity.
    pub roots: Vec<(f64, f64)>,
    /// `deg(d + k n) < max(deg d, deg n)`: some roots escaped to infinity.
    pub degree_drop: bool,
    /// Largest relative backward error `|p(s)| / sum |a_i| |s|^i`.
    pub residual: f64,
}

/// Image of one sweep sample on the `x = 1` patch.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplementarySample {
    pub k: Rational,
    /// `(root index, z, y)` for roots with `|x|` above the blow-up threshold.
    pub points: Vec<(usize, f64, f64)>,
    /// Root indices whose image lies at infinity of the `ZY` plane.
    pub blow_up: Vec<usize>,
}

pub const BLOW_UP_THRESHOLD: f64 = 1e-9;

/// Roots of `d + k n` for every gain in `k_grid`, computed in parallel.
pub fn sweep_conventional(g: &RationalFunction, k_grid: &[Rational]) -> Vec<SweepPoint> {
    let d = g.den_uni();
    let n = g.num_uni();
    k_grid.par_iter().map(|k| sweep_point(&d, &n, k)).collect()
}

pub fn sweep_point(d: &UniPoly, n: &UniPoly, k: &Rational) -> SweepPoint {
    let p = d.add(&n.scale(k));
    let full = d.degree().unwrap_or(0).max(n.degree().unwrap_or(0));
    let degree_drop = p.degree().unwrap_or(0) < full;
    let coeffs: Vec<f64> = p.coeffs().iter().map(rational_to_f64).collect();
    let roots = polynomial_roots(p.coeffs());
    let residual = roots.iter().map(|&(x, y)| relative_residual(&coeffs, Complex64::new(x, y))).fold(0.0, f64::max);
    SweepPoint { k: k.clone(), roots, degree_drop, residual }
}

fn eval_c(coeffs: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::zero();
    let mut dp = Complex64::zero();
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

fn relative_residual(coeffs: &[f64], z: Complex64) -> f64 {
    let (p, _) = eval_c(coeffs, z);
    let scale: f64 = coeffs.iter().rev().fold(0.0, |acc, c| acc * z.norm() + c.abs());
    if scale == 0.0 {
        0.0
    } else {
        p.norm() / scale
    }
}

/// All complex roots (with multiplicity) of a polynomial with rational
/// coefficients, lowest degree first. Exact zero roots are split off first;
/// the rest come from companion-matrix eigenvalues polished by Newton steps.
pub fn polynomial_roots(coeffs: &[Rational]) -> Vec<(f64, f64)> {
    let zeros = coeffs.iter().take_while(|c| c.is_zero()).count();
    let mut out = vec![(0.0, 0.0); zeros.min(coeffs.len().saturating_sub(1))];
    let rest: Vec<f64> = coeffs[zeros.min(coeffs.len())..].iter().map(rational_to_f64).collect();
    let deg = rest.len().saturating_sub(1);
    if deg == 0 {
        return out;
    }
    let lead = rest[deg];
    let mut found: Vec<Complex64> = if deg == 1 {
        vec![Complex64::new(-rest[0] / lead, 0.0)]
    } else {
        let mut m = DMatrix::<f64>::zeros(deg, deg);
        for i in 1..deg {
            m[(i, i - 1)] = 1.0;
        }
        for i in 0..deg {
            m[(i, deg - 1)] = -rest[i] / lead;
        }
        m.complex_eigenvalues().iter().copied().collect()
    };
    for z in found.iter_mut() {
        *z = polish(&rest, *z);
    }
    // real coefficients: snap tiny imaginary parts and keep conjugate symmetry
    for z in found.iter_mut() {
        if z.im.abs() <= 1e-14 * z.norm().max(1.0) {
            z.im = 0.0;
        }
    }
    out.extend(found.into_iter().map(|z| (z.re, z.im)));
    out.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
    out
}

fn polish(coeffs: &[f64], mut z: Complex64) -> Complex64 {
    let mut best = eval_c(coeffs, z).0.norm();
    for _ in 0..8 {
        let (p, dp) = eval_c(coeffs, z);
        if dp.norm() == 0.0 || p.norm() == 0.0 {
            break;
        }
        let next = z - p / dp;
        let r = eval_c(coeffs, next).0.norm();
        if !(r < best) {
            break;
        }
        best = r;
        z = next;
    }
    z
}

/// Maps each conventional root `(x, y)` to `(z, y') = (1/x, y/x)`.
pub fn sweep_complementary(sweep: &[SweepPoint]) -> Vec<ComplementarySample> {
    sweep_complementary_with(sweep, BLOW_UP_THRESHOLD)
}

/// [`sweep_complementary`] with a custom blow-up threshold on `|x|`.
pub fn sweep_complementary_with(sweep: &[SweepPoint], threshold: f64) -> Vec<ComplementarySample> {
    sweep
        .iter()
        .map(|s| {
            let mut points = Vec::new();
            let mut blow_up = Vec::new();
            for (i, &(x, y)) in s.roots.iter().enumerate() {
                if x.abs() < threshold {
                    blow_up.push(i);
                } else {
                    points.push((i, 1.0 / x, y / x));
                }
            }
            ComplementarySample { k: s.k.clone(), points, blow_up }
        })
        .collect()
}

fn log_spaced(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![hi],
        _ => (0..count)
            .map(|i| lo * (hi / lo).powf(i as f64 / (count - 1) as f64))
            .collect(),
    }
}

/// Gains from `k_min` to `k_max`: logarithmic in `|k|` down to `10^-3`, zero
/// included when the range straddles it. Values are short decimals so the
/// grid is exact and reproducible.
pub fn k_grid(k_min: f64, k_max: f64, samples: usize) -> Vec<Rational> {
    const FLOOR: f64 = 1e-3;
    let mut ks: Vec<f64> = Vec::new();
    if k_min < 0.0 && k_max > 0.0 {
        let rest = samples.saturating_sub(1);
        let neg = rest / 2;
        let pos = rest - neg;
        ks.push(0.0);
        ks.extend(log_spaced(FLOOR.min(-k_min), -k_min, neg).into_iter().map(|v| -v));
        ks.extend(log_spaced(FLOOR.min(k_max), k_max, pos));
    } else if k_min >= 0.0 {
        let (start, count) = if k_min == 0.0 {
            ks.push(0.0);
            (FLOOR.min(k_max), samples.saturating_sub(1))
        } else {
            (k_min, samples)
        };
        ks.extend(log_spaced(start, k_max, count));
    } else {
        let (start, count) = if k_max == 0.0 {
            ks.push(0.0);
            (FLOOR.min(-k_min), samples.saturating_sub(1))
        } else {
            (-k_max, samples)
        };
        ks.extend(log_spaced(start, -k_min, count).into_iter().map(|v| -v));
    }
    let mut out: Vec<Rational> = ks.into_iter().map(|v| decimal_rational(v, 9)).collect();
    out.sort();
    out.dedup();
    out
}

/// Branch id for every root of every sample. Roots are matched to the
/// nearest last-known branch position; unmatched roots open new branches.
pub fn pair_branches(sweep: &[SweepPoint]) -> Vec<Vec<usize>> {
    let mut last: Vec<(f64, f64)> = Vec::new();
    let mut out = Vec::with_capacity(sweep.len());
    for s in sweep {
        let mut cand: Vec<(f64, usize, usize)> = Vec::new();
        for (i, r) in s.roots.iter().enumerate() {
            for (b, p) in last.iter().enumerate() {
                cand.push((((r.0 - p.0).powi(2) + (r.1 - p.1).powi(2)).sqrt(), b, i));
            }
        }
        cand.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));
        let mut ids = vec![usize::MAX; s.roots.len()];
        let mut used = vec![false; last.len()];
        for (_, b, i) in cand {
            if ids[i] == usize::MAX && !used[b] {
                ids[i] = b;
                used[b] = true;
            }
        }
        for (i, id) in ids.iter_mut().enumerate() {
            if *id == usize::MAX {
                *id = last.len();
                last.push(s.roots[i]);
            }
        }
        for (i, &id) in ids.iter().enumerate() {
            last[id] = s.roots[i];
        }
        out.push(ids);
    }
    out
}

/// Largest real part among the roots of `d + k n`.
pub fn max_real_part(g: &RationalFunction, k: &Rational) -> f64 {
    sweep_point(&g.den_uni(), &g.num_uni(), k)
        .roots
        .iter()
        .map(|r| r.0)
        .fold(f64::NEG_INFINITY, f64::max)
}

/// Gain in `[lo, hi]` where the largest real part changes sign, by
/// bisection to `tol`. `None` if there is no sign change at the ends.
pub fn imaginary_axis_crossing(g: &RationalFunction, lo: f64, hi: f64, tol: f64) -> Option<f64> {
    let f = |k: f64| max_real_part(g, &Rational::from_float(k).expect("finite gain"));
    let (mut a, mut b) = (lo, hi);
    let fa = f(a);
    if fa.signum() == f(b).signum() {
        return None;
    }
    while b - a > tol {
        let m = 0.5 * (a + b);
        if f(m).signum() == fa.signum() {
            a = m;
        } else {
            b = m;
        }
    }
    Some(0.5 * (a + b))
}
