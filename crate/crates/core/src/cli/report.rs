use num_complex::Complex64;
use num_traits::Zero;
use serde_json::{json, Map, Value};

use super::emit::json_number;
use super::RunConfig;
use crate::error::Result;
use crate::geometry::{gnomonic_lift, ProjectivePoint};
use crate::groebner::GrobnerBasis;
use crate::pencil::RationalFunction;
use crate::pjrl::{
    affine_coords, affine_view, analyze, asymptote_directions, slice_at, specialize, Analysis, Direction, LocusSlice,
    ParameterValue, Patch, Specialization,
};
use crate::poly::{rational_to_f64, MultiPoly, Rational};
use crate::solver::{
    width_rational,
    imaginary_axis_crossing, k_grid, pair_branches, sweep_complementary_with, sweep_conventional,
    ComplementarySample, Real, SweepPoint, UniPoly,
};

/// A dashed overlay line in a patch: `v = slope * (h - through.0) + through.1`,
/// or the vertical line `h = through.0`.
#[derive(Clone, Debug, PartialEq)]
pub struct AsymptoteLine {
    pub slope: Option<f64>,
    pub through: (f64, f64),
}

/// Endpoint geometry as seen from one affine chart.
#[derive(Clone, Debug, PartialEq)]
pub struct PatchSummary {
    pub patch: Patch,
    pub initial: Vec<Direction>,
    pub terminal: Vec<Direction>,
    pub initial_points: Vec<(Real, Real)>,
    pub terminal_points: Vec<(Real, Real)>,
    pub lines: Vec<AsymptoteLine>,
}

/// One paired sweep branch: `(k, x, y)` samples in gain order.
#[derive(Clone, Debug, PartialEq)]
pub struct Branch {
    pub id: usize,
    pub points: Vec<(Rational, f64, f64)>,
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct DegreeDrop {
    /// The single finite gain where `d + k n` loses degree, if any.
    pub gain: Option<Rational>,
    /// Grid samples at which the drop was observed.
    pub samples: Vec<Rational>,
}

#[derive(Clone, Debug)]
pub struct SymbolicView {
    pub patch: Patch,
    pub basis: GrobnerBasis,
    /// Vertical variable assumed nonzero for `saturated`.
    pub nonzero: &'static str,
    pub saturated: GrobnerBasis,
}

/// The system with the gain kept as the variable `lambda`.
#[derive(Clone, Debug)]
pub struct SymbolicReport {
    pub system: Vec<MultiPoly>,
    pub views: Vec<SymbolicView>,
}

#[derive(Clone, Debug)]
pub struct LocusReport {
    pub config: RunConfig,
    pub analysis: Analysis,
    pub intermediary: Vec<LocusSlice>,
    pub patches: Vec<PatchSummary>,
    pub sweep: Vec<SweepPoint>,
    /// Branch id of every root of every sweep sample.
    pub branch_ids: Vec<Vec<usize>>,
    pub complementary: Vec<ComplementarySample>,
    pub degree_drop: DegreeDrop,
    /// Gains where the rightmost root crosses the imaginary axis.
    pub crossings: Vec<f64>,
    pub symbolic: Option<SymbolicReport>,
}

fn horner(coeffs: &[f64], s: Complex64) -> Complex64 {
    coeffs.iter().rev().fold(Complex64::zero(), |acc, &c| acc * s + c)
}

fn f64_coeffs(p: &UniPoly) -> Vec<f64> {
    p.coeffs().iter().map(rational_to_f64).collect()
}

fn vertical_var(patch: Patch) -> &'static str {
    match patch {
        Patch::XY | Patch::ZY => "y",
        Patch::XZ => "z",
    }
}

fn axis_names(patch: Patch) -> (&'static str, &'static str) {
    match patch {
        Patch::XY => ("x", "y"),
        Patch::ZY => ("z", "y"),
        Patch::XZ => ("x", "z"),
    }
}

/// `(sum of poles - sum of zeros) / (n - m)`, where the conventional
/// asymptotes meet the real axis.
fn centroid(plant: &RationalFunction) -> Option<f64> {
    let (d, n) = (plant.den_uni(), plant.num_uni());
    let (dn, nm) = (d.degree()?, n.degree()?);
    if dn == nm {
        return None;
    }
    let root_sum = |p: &UniPoly, deg: usize| {
        if deg == 0 {
            0.0
        } else {
            -rational_to_f64(&p.coeffs()[deg - 1]) / rational_to_f64(&p.coeffs()[deg])
        }
    };
    Some((root_sum(&d, dn) - root_sum(&n, nm)) / (dn as f64 - nm as f64))
}

/// Offset of the complementary asymptote produced by a root on the
/// imaginary axis: the slope `dy/dx` of the conventional branch there.
fn complementary_offset(plant: &RationalFunction, s0: Complex64, k: &ParameterValue) -> Option<f64> {
    let d = f64_coeffs(&plant.den_uni());
    let n = f64_coeffs(&plant.num_uni());
    let dd = f64_coeffs(&plant.den_uni().derivative());
    let dn = f64_coeffs(&plant.num_uni().derivative());
    let v = match k.as_finite() {
        Some(k) => {
            let k = rational_to_f64(k);
            -horner(&n, s0) / (horner(&dd, s0) + horner(&dn, s0) * k)
        }
        None => -horner(&d, s0) / horner(&dn, s0),
    };
    if !v.re.is_finite() || !v.im.is_finite() || v.re.abs() < 1e-12 * v.norm().max(1e-300) {
        return None;
    }
    Some(v.im / v.re)
}

fn patch_lines(plant: &RationalFunction, patch: Patch, slices: &[&LocusSlice]) -> Vec<AsymptoteLine> {
    let mut lines = Vec::new();
    match patch {
        Patch::XY => {
            let Some(sigma) = centroid(plant) else { return lines };
            let at_infinity = if plant.is_proper() { slices[1] } else { slices[0] };
            for dir in asymptote_directions(at_infinity, patch) {
                lines.push(match dir {
                    Direction::Slope(m) => AsymptoteLine { slope: Some(m.to_f64()), through: (sigma, 0.0) },
                    Direction::Vertical => AsymptoteLine { slope: None, through: (sigma, 0.0) },
                });
            }
        }
        Patch::ZY => {
            for slice in slices {
                for p in slice.points().filter(|p| p.x().is_zero() && !p.z().is_zero()) {
                    let m = p.y().to_f64();
                    if let Some(c) = complementary_offset(plant, Complex64::new(0.0, m), &slice.k) {
                        lines.push(AsymptoteLine { slope: Some(m), through: (0.0, c) });
                    }
                }
            }
        }
        Patch::XZ => {}
    }
    lines
}

fn exact_degree_drop(plant: &RationalFunction) -> Option<Rational> {
    let (d, n) = (plant.den_uni(), plant.num_uni());
    if d.degree() != n.degree() || n.is_zero() {
        return None;
    }
    Some(-(d.leading_coeff()? / n.leading_coeff()?))
}

fn pick_evenly<T: Clone>(items: &[T], count: usize) -> Vec<T> {
    if items.is_empty() || count == 0 {
        return Vec::new();
    }
    if count >= items.len() {
        return items.to_vec();
    }
    let mut idx: Vec<usize> = (0..count).map(|i| i * (items.len() - 1) / (count.max(2) - 1)).collect();
    idx.dedup();
    idx.into_iter().map(|i| items[i].clone()).collect()
}

fn crossings(plant: &RationalFunction, sweep: &[SweepPoint]) -> Vec<f64> {
    const FLAT: f64 = 1e-9;
    let max_re = |s: &SweepPoint| s.roots.iter().map(|r| r.0).fold(f64::NEG_INFINITY, f64::max);
    let mut out = Vec::new();
    for w in sweep.windows(2) {
        let (a, b) = (max_re(&w[0]), max_re(&w[1]));
        if !a.is_finite() || !b.is_finite() || a.abs() < FLAT || b.abs() < FLAT || a.signum() == b.signum() {
            continue;
        }
        let (lo, hi) = (rational_to_f64(&w[0].k), rational_to_f64(&w[1].k));
        let tol = 1e-9 * hi.abs().max(lo.abs()).max(1.0);
        if let Some(k) = imaginary_axis_crossing(plant, lo, hi, tol) {
            out.push(k);
        }
    }
    out
}

impl LocusReport {
    pub fn compute(plant: &RationalFunction, config: &RunConfig) -> Result<LocusReport> {
        let analysis = analyze(plant)?;

        let grid = k_grid(rational_to_f64(&config.k_min), rational_to_f64(&config.k_max), config.samples);
        let sweep = sweep_conventional(plant, &grid);
        let branch_ids = pair_branches(&sweep);
        let complementary = sweep_complementary_with(&sweep, config.tolerances.blow_up);
        let degree_drop = DegreeDrop {
            gain: exact_degree_drop(plant),
            samples: sweep.iter().filter(|s| s.degree_drop).map(|s| s.k.clone()).collect(),
        };
        let crossings = crossings(plant, &sweep);

        let nonzero: Vec<Rational> = grid.iter().filter(|k| !k.is_zero()).cloned().collect();
        let mut gains = pick_evenly(&nonzero, config.exact_samples);
        gains.extend(degree_drop.gain.clone());
        gains.sort();
        gains.dedup();
        let intermediary = gains
            .into_iter()
            .map(|k| slice_at(&analysis.closure, &ParameterValue::finite(k)))
            .collect::<Result<Vec<_>>>()
            .map_err(|e| e.at_stage("intermediary slice"))?;

        let patches = config
            .patch
            .patches()
            .into_iter()
            .map(|patch| {
                let coords = |s: &LocusSlice| s.points().filter_map(|p| affine_coords(p, patch)).collect::<Vec<_>>();
                let mut slices = vec![&analysis.initial, &analysis.terminal];
                slices.extend(intermediary.iter());
                PatchSummary {
                    patch,
                    initial: asymptote_directions(&analysis.initial, patch),
                    terminal: asymptote_directions(&analysis.terminal, patch),
                    initial_points: coords(&analysis.initial),
                    terminal_points: coords(&analysis.terminal),
                    lines: patch_lines(plant, patch, &slices),
                }
            })
            .collect();

        let symbolic = if config.symbolic_lambda {
            Some(symbolic_report(&analysis, config).map_err(|e| e.at_stage("symbolic"))?)
        } else {
            None
        };

        Ok(LocusReport {
            config: config.clone(),
            analysis,
            intermediary,
            patches,
            sweep,
            branch_ids,
            complementary,
            degree_drop,
            crossings,
            symbolic,
        })
    }

    pub fn plant(&self) -> &RationalFunction {
        &self.analysis.plant
    }

    pub fn initial(&self) -> &LocusSlice {
        &self.analysis.initial
    }

    pub fn terminal(&self) -> &LocusSlice {
        &self.analysis.terminal
    }

    pub fn patch(&self, patch: Patch) -> Option<&PatchSummary> {
        self.patches.iter().find(|p| p.patch == patch)
    }

    /// The closure generators, one per line.
    pub fn closure_system(&self) -> Vec<String> {
        self.analysis.closure.polys().iter().map(|p| p.to_string()).collect()
    }

    pub fn branches(&self) -> Vec<Branch> {
        let mut out: Vec<Branch> = Vec::new();
        for (s, ids) in self.sweep.iter().zip(&self.branch_ids) {
            for (&(x, y), &id) in s.roots.iter().zip(ids) {
                while out.len() <= id {
                    out.push(Branch { id: out.len(), points: Vec::new() });
                }
                out[id].points.push((s.k.clone(), x, y));
            }
        }
        out
    }

    /// Deterministic JSON rendering: sorted keys, rationals as `"p/q"`,
    /// floats rounded to 12 significant digits.
    pub fn to_json(&self) -> Value {
        let width = width_rational(self.config.tolerances.isolation_width);
        let slice = |s: &LocusSlice| slice_json(s, &width);
        let mut asymptotes = Map::new();
        let mut patch_points = Map::new();
        for p in &self.patches {
            let (h, v) = axis_names(p.patch);
            let dirs = |d: &[Direction]| d.iter().map(|d| direction_json(d, &width)).collect::<Vec<_>>();
            let pts = |ps: &[(Real, Real)]| {
                ps.iter().map(|(a, b)| json!([real_json(a, h, &width), real_json(b, v, &width)])).collect::<Vec<_>>()
            };
            let lines: Vec<Value> = p
                .lines
                .iter()
                .map(|l| {
                    json!({
                        "slope": l.slope.map_or(Value::Null, json_number),
                        "through": [json_number(l.through.0), json_number(l.through.1)],
                    })
                })
                .collect();
            asymptotes.insert(
                p.patch.name().into(),
                json!({ "initial": dirs(&p.initial), "terminal": dirs(&p.terminal), "lines": lines }),
            );
            patch_points
                .insert(p.patch.name().into(), json!({ "initial": pts(&p.initial_points), "terminal": pts(&p.terminal_points) }));
        }
        let branches: Vec<Value> = self
            .branches()
            .iter()
            .map(|b| {
                let pts: Vec<Value> = b
                    .points
                    .iter()
                    .map(|(k, x, y)| json!([json_number(rational_to_f64(k)), json_number(*x), json_number(*y)]))
                    .collect();
                json!({ "id": b.id, "points": pts })
            })
            .collect();
        let symbolic = self.symbolic.as_ref().map_or(Value::Null, |s| {
            let mut views = Map::new();
            for v in &s.views {
                views.insert(
                    v.patch.name().into(),
                    json!({
                        "basis": strings(v.basis.elements()),
                        "nonzero": v.nonzero,
                        "saturated": strings(v.saturated.elements()),
                    }),
                );
            }
            json!({ "system": strings(&s.system), "views": views })
        });
        let plant = self.plant();
        let residual = self.sweep.iter().map(|s| s.residual).fold(0.0, f64::max);
        json!({
            "plant": {
                "input": self.config.plant,
                "num": plant.num().to_string(),
                "den": plant.den().to_string(),
                "proper": plant.is_proper(),
            },
            "config": {
                "patch": self.config.patch.name(),
                "k_min": self.config.k_min.to_string(),
                "k_max": self.config.k_max.to_string(),
                "samples": self.config.samples,
                "isolation_width": json_number(self.config.tolerances.isolation_width),
                "blow_up": json_number(self.config.tolerances.blow_up),
            },
            "closure_system": self.closure_system(),
            "initial": slice(&self.analysis.initial),
            "terminal": slice(&self.analysis.terminal),
            "intermediary": self.intermediary.iter().map(slice).collect::<Vec<_>>(),
            "asymptotes": asymptotes,
            "patch_points": patch_points,
            "branches": branches,
            "degree_drop": {
                "gain": self.degree_drop.gain.as_ref().map_or(Value::Null, |g| Value::String(g.to_string())),
                "samples": self.degree_drop.samples.iter().map(|k| k.to_string()).collect::<Vec<_>>(),
            },
            "crossings": self.crossings.iter().map(|&k| json_number(k)).collect::<Vec<_>>(),
            "max_residual": json_number(residual),
            "symbolic": symbolic,
        })
    }
}

fn symbolic_report(analysis: &Analysis, config: &RunConfig) -> Result<SymbolicReport> {
    let system = specialize(&analysis.closure, &Specialization::Symbolic, false)?;
    let views = config
        .patch
        .patches()
        .into_iter()
        .map(|patch| {
            let view = affine_view(&analysis.closure, patch, &Specialization::Symbolic)?;
            let nonzero = vertical_var(patch);
            Ok(SymbolicView { patch, basis: view.basis()?, nonzero, saturated: view.saturate_nonzero(nonzero)? })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SymbolicReport { system, views })
}

fn strings(polys: &[MultiPoly]) -> Vec<String> {
    polys.iter().map(|p| p.to_string()).collect()
}

/// Rational: `{exact, approx}`. Algebraic: `{poly, interval, interval_exact,
/// approx}` with the interval refined below `width`.
pub(crate) fn real_json(r: &Real, var: &str, width: &Rational) -> Value {
    match r {
        Real::Rational(q) => json!({ "exact": q.to_string(), "approx": json_number(rational_to_f64(q)) }),
        Real::Algebraic(a) => {
            let a = a.refined(width);
            let (lo, hi) = a.interval();
            json!({
                "poly": a.poly().display_in(var),
                "interval": [json_number(rational_to_f64(lo)), json_number(rational_to_f64(hi))],
                "interval_exact": [lo.to_string(), hi.to_string()],
                "approx": json_number(a.to_f64()),
            })
        }
    }
}

fn direction_json(d: &Direction, width: &Rational) -> Value {
    match d {
        Direction::Slope(m) => real_json(m, "m", width),
        Direction::Vertical => Value::String("vertical".into()),
    }
}

pub(crate) fn point_json(p: &ProjectivePoint, width: &Rational) -> Value {
    let sp = gnomonic_lift(p);
    json!({
        "text": p.to_string(),
        "coords": [real_json(p.x(), "x", width), real_json(p.y(), "y", width), real_json(p.z(), "z", width)],
        "sphere": sp.as_array().iter().map(|&c| json_number(c)).collect::<Vec<_>>(),
    })
}

fn slice_json(s: &LocusSlice, width: &Rational) -> Value {
    let comps: Vec<Value> =
        s.components.iter().map(|c| json!({ "chart": c.chart, "polys": strings(&c.polys) })).collect();
    json!({
        "k": s.k.to_string(),
        "kind": s.kind.name(),
        "finite": s.finite_points.iter().map(|p| point_json(p, width)).collect::<Vec<_>>(),
        "infinite": s.infinite_points.iter().map(|p| point_json(p, width)).collect::<Vec<_>>(),
        "components": comps,
        "inconsistent": s.inconsistent,
    })
}
