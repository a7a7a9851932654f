//! The projective root locus: closure of the pencil variety, slices at
//! fixed gains, affine patch views and asymptote directions.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::geometry::{normalize, ProjectivePoint};
use crate::groebner::{buchberger, saturate, GrobnerBasis, Ideal};
use crate::pencil::{build_pencil, PencilPair, RationalFunction};
use crate::poly::{MonomialOrder, MultiPoly, Rational, VariableSet};
use crate::solver::{solve_zero_dim, Real};

pub const LAMBDA: &str = "lambda";

/// Affine chart of the projective plane, named by its two visible axes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Patch {
    /// `z = 1`, the conventional locus.
    XY,
    /// `x = 1`, the complementary locus (horizontal `z`, vertical `y`).
    ZY,
    /// `y = 1` (horizontal `x`, vertical `z`).
    XZ,
}

impl Patch {
    pub const ALL: [Patch; 3] = [Patch::XY, Patch::ZY, Patch::XZ];

    /// The homogeneous variable set to 1.
    pub fn chart_var(self) -> &'static str {
        match self {
            Patch::XY => "z",
            Patch::ZY => "x",
            Patch::XZ => "y",
        }
    }

    /// Coordinate indices `(horizontal, vertical, chart)` in `(x, y, z)`.
    pub fn axes(self) -> (usize, usize, usize) {
        match self {
            Patch::XY => (0, 1, 2),
            Patch::ZY => (2, 1, 0),
            Patch::XZ => (0, 2, 1),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Patch::XY => "xy",
            Patch::ZY => "zy",
            Patch::XZ => "xz",
        }
    }
}

impl fmt::Display for Patch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A gain `k = k_n / k_d` in `P^1(R)`, stored canonically: `k_d = 1` for
/// finite gains and `(k_n, k_d) = (1, 0)` for infinity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ParameterValue {
    k_n: Rational,
    k_d: Rational,
}

impl ParameterValue {
    pub fn new(k_n: Rational, k_d: Rational) -> Result<Self> {
        if k_d.is_zero() {
            if k_n.is_zero() {
                return Err(Error::ZeroParameter);
            }
            return Ok(ParameterValue::infinity());
        }
        Ok(ParameterValue { k_n: k_n / &k_d, k_d: Rational::one() })
    }

    pub fn finite(k: Rational) -> Self {
        ParameterValue { k_n: k, k_d: Rational::one() }
    }

    pub fn zero() -> Self {
        ParameterValue::finite(Rational::zero())
    }

    pub fn infinity() -> Self {
        ParameterValue { k_n: Rational::one(), k_d: Rational::zero() }
    }

    pub fn k_n(&self) -> &Rational {
        &self.k_n
    }

    pub fn k_d(&self) -> &Rational {
        &self.k_d
    }

    pub fn is_infinite(&self) -> bool {
        self.k_d.is_zero()
    }

    pub fn as_finite(&self) -> Option<&Rational> {
        (!self.is_infinite()).then_some(&self.k_n)
    }

    /// `1/k`, exchanging the roles of `k_n` and `k_d`.
    pub fn reciprocal(&self) -> Self {
        ParameterValue::new(self.k_d.clone(), self.k_n.clone()).expect("nonzero pair")
    }

    pub fn kind(&self) -> SliceKind {
        if self.is_infinite() {
            SliceKind::Terminal
        } else if self.k_n.is_zero() {
            SliceKind::Initial
        } else {
            SliceKind::Intermediary
        }
    }
}

impl fmt::Display for ParameterValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_finite() {
            Some(k) => write!(f, "{k}"),
            None => f.write_str("inf"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SliceKind {
    Initial,
    Terminal,
    Intermediary,
}

impl SliceKind {
    pub fn name(self) -> &'static str {
        match self {
            SliceKind::Initial => "initial",
            SliceKind::Terminal => "terminal",
            SliceKind::Intermediary => "intermediary",
        }
    }
}

/// Homogeneous polynomials in `x > y > z > k_d > k_n` cutting out the
/// projective locus variety.
#[derive(Clone, Debug, PartialEq)]
pub struct HomogeneousSystem {
    polys: Vec<MultiPoly>,
    source_basis: Option<GrobnerBasis>,
    swapped: bool,
}

pub fn homogeneous_vars() -> VariableSet {
    VariableSet::new(["x", "y", "z", "k_d", "k_n"]).expect("distinct")
}

pub fn plane_vars() -> VariableSet {
    VariableSet::new(["x", "y", "z"]).expect("distinct")
}

impl HomogeneousSystem {
    pub fn polys(&self) -> &[MultiPoly] {
        &self.polys
    }

    /// The affine basis that was homogenized; `None` for the naive system.
    pub fn source_basis(&self) -> Option<&GrobnerBasis> {
        self.source_basis.as_ref()
    }

    /// The pencil had `k_d`, `k_n` exchanged for an improper plant.
    pub fn swapped(&self) -> bool {
        self.swapped
    }

    /// Homogeneous in `(x, y, z)`, linear homogeneous in `(k_d, k_n)`, and
    /// reproducing the source basis when `z = 1`.
    pub fn check_invariants(&self) -> Result<bool> {
        for p in &self.polys {
            if !p.is_homogeneous_in(&["x", "y", "z"])? || !p.is_homogeneous_in(&["k_d", "k_n"])? {
                return Ok(false);
            }
            if p.terms().any(|(m, _)| m.exponents()[3] + m.exponents()[4] != 1) {
                return Ok(false);
            }
        }
        if let Some(gb) = &self.source_basis {
            for (h, g) in self.polys.iter().zip(gb.elements()) {
                if &h.dehomogenize("z")? != g {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

fn homogenize_all(polys: &[MultiPoly]) -> Result<Vec<MultiPoly>> {
    polys.iter().map(|g| g.homogenize(&["x", "y"], "z")).collect()
}

/// Reduced grevlex basis of `<q, r>` over `x > y > k_d > k_n`, each element
/// homogenized over `{x, y}` with `z`.
pub fn projective_closure(pair: &PencilPair) -> Result<HomogeneousSystem> {
    let ideal = Ideal::new(vec![pair.q.clone(), pair.r.clone()])?;
    let gb = buchberger(&ideal, MonomialOrder::Grevlex);
    let polys = homogenize_all(gb.elements())?;
    Ok(HomogeneousSystem { polys, source_basis: Some(gb), swapped: pair.swapped })
}

/// `q^h, r^h` directly, without a Gröbner basis. Its variety can contain
/// points at infinity that are not limits of the affine locus.
pub fn naive_homogenization(pair: &PencilPair) -> Result<HomogeneousSystem> {
    let polys = homogenize_all(&[pair.q.clone(), pair.r.clone()])?;
    Ok(HomogeneousSystem { polys, source_basis: None, swapped: pair.swapped })
}

/// Gain substitution for the pencil variables.
#[derive(Clone, Debug, PartialEq)]
pub enum Specialization {
    At(ParameterValue),
    /// `k_d = 1`, `k_n = lambda` with `lambda` kept as the lowest variable.
    Symbolic,
}

impl From<ParameterValue> for Specialization {
    fn from(k: ParameterValue) -> Self {
        Specialization::At(k)
    }
}

fn symbolic_vars() -> VariableSet {
    VariableSet::new(["x", "y", "z", LAMBDA]).expect("distinct")
}

fn specialize_one(p: &MultiPoly, spec: &Specialization, swapped: bool) -> Result<MultiPoly> {
    match spec {
        Specialization::At(k) => {
            let k = if swapped { k.reciprocal() } else { k.clone() };
            p.substitute("k_n", k.k_n())?.substitute("k_d", k.k_d())
        }
        Specialization::Symbolic => {
            let (keep, set) = if swapped { ("k_d", "k_n") } else { ("k_n", "k_d") };
            let q = p.substitute(set, &Rational::one())?;
            // same positions, `keep` renamed
            debug_assert_eq!(q.variables().name(3), keep);
            let vars = symbolic_vars();
            Ok(MultiPoly::from_terms(&vars, q.terms().map(|(m, c)| (m.clone(), c.clone()))))
        }
    }
}

/// The system at a gain, over `x > y > z` (and `lambda` when symbolic).
/// Zero polynomials are dropped; with `recompute` the result is the reduced
/// grevlex basis of the specialized ideal.
pub fn specialize(sys: &HomogeneousSystem, k: &Specialization, recompute: bool) -> Result<Vec<MultiPoly>> {
    let polys: Vec<MultiPoly> = sys
        .polys
        .iter()
        .map(|p| specialize_one(p, k, sys.swapped))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter(|p| !p.is_zero())
        .collect();
    if polys.is_empty() {
        let label = match k {
            Specialization::At(k) => k.to_string(),
            Specialization::Symbolic => LAMBDA.to_string(),
        };
        return Err(Error::DegenerateSpecialization(label));
    }
    if recompute {
        Ok(buchberger(&Ideal::new(polys)?, MonomialOrder::Grevlex).into_elements())
    } else {
        Ok(polys)
    }
}

/// A chart where the slice is not a finite point set.
#[derive(Clone, Debug, PartialEq)]
pub struct PositiveDimensional {
    pub chart: String,
    pub polys: Vec<MultiPoly>,
}

/// The real points `W_k` of the locus at one gain.
#[derive(Clone, Debug, PartialEq)]
pub struct LocusSlice {
    pub k: ParameterValue,
    pub kind: SliceKind,
    /// Points with `z != 0`, normalized to `(x:y:1)`.
    pub finite_points: Vec<ProjectivePoint>,
    /// Points on the line at infinity `z = 0`.
    pub infinite_points: Vec<ProjectivePoint>,
    pub components: Vec<PositiveDimensional>,
    /// No solutions in any chart and no components.
    pub inconsistent: bool,
}

impl LocusSlice {
    pub fn points(&self) -> impl Iterator<Item = &ProjectivePoint> {
        self.finite_points.iter().chain(&self.infinite_points)
    }

    pub fn all_points(&self) -> Vec<ProjectivePoint> {
        self.points().cloned().collect()
    }

    pub fn contains(&self, p: &ProjectivePoint) -> bool {
        self.points().any(|q| q == p)
    }

    pub fn is_finite_set(&self) -> bool {
        self.components.is_empty()
    }
}

fn solve_chart(polys: &[MultiPoly], chart: &str, out: &mut Vec<Vec<Real>>, comps: &mut Vec<PositiveDimensional>) -> Result<()> {
    match solve_zero_dim(polys) {
        Ok(points) => {
            out.extend(points);
            Ok(())
        }
        Err(Error::NotZeroDimensional { .. }) => {
            comps.push(PositiveDimensional {
                chart: chart.to_string(),
                polys: polys.iter().filter(|p| !p.is_zero()).cloned().collect(),
            });
            Ok(())
        }
        Err(e) => Err(e),
    }
}

/// Real points of a specialized system in `x, y, z`, chart by chart:
/// `z = 1`, then `z = 0, x = 1`, then the single point `(0:1:0)`.
pub fn solve_slice(specialized: &[MultiPoly], k: &ParameterValue) -> Result<LocusSlice> {
    let vars = plane_vars();
    let polys: Vec<MultiPoly> = specialized.iter().map(|p| p.embed(&vars)).collect::<Result<_>>()?;
    let one = Rational::one();
    let zero = Rational::zero();
    let mut components = Vec::new();

    let affine: Vec<MultiPoly> = polys.iter().map(|p| p.substitute("z", &one)).collect::<Result<_>>()?;
    let mut finite_raw = Vec::new();
    solve_chart(&affine, "z=1", &mut finite_raw, &mut components)?;

    let at_infinity: Vec<MultiPoly> = polys.iter().map(|p| p.substitute("z", &zero)).collect::<Result<_>>()?;
    let x_chart: Vec<MultiPoly> = at_infinity.iter().map(|p| p.substitute("x", &one)).collect::<Result<_>>()?;
    let mut infinite_raw = Vec::new();
    solve_chart(&x_chart, "z=0,x=1", &mut infinite_raw, &mut components)?;
    let pole_vanishes = at_infinity
        .iter()
        .map(|p| p.substitute("x", &zero).and_then(|q| q.substitute("y", &one)))
        .collect::<Result<Vec<_>>>()?
        .iter()
        .all(MultiPoly::is_zero);

    let mut finite_points = finite_raw
        .into_iter()
        .map(|p| normalize(p[0].clone(), p[1].clone(), Real::one()))
        .collect::<Result<Vec<_>>>()?;
    let mut infinite_points = infinite_raw
        .into_iter()
        .map(|p| normalize(Real::one(), p[0].clone(), Real::zero()))
        .collect::<Result<Vec<_>>>()?;
    if pole_vanishes {
        infinite_points.push(ProjectivePoint::from_ints(0, 1, 0)?);
    }
    finite_points.sort();
    finite_points.dedup();
    infinite_points.sort();
    infinite_points.dedup();
    let inconsistent = finite_points.is_empty() && infinite_points.is_empty() && components.is_empty();
    Ok(LocusSlice { k: k.clone(), kind: k.kind(), finite_points, infinite_points, components, inconsistent })
}

/// Specialize (with basis recomputation) and solve.
pub fn slice_at(sys: &HomogeneousSystem, k: &ParameterValue) -> Result<LocusSlice> {
    let polys = specialize(sys, &Specialization::At(k.clone()), true)?;
    solve_slice(&polys, k)
}

/// The system on one affine chart.
#[derive(Clone, Debug, PartialEq)]
pub struct AffineView {
    pub patch: Patch,
    pub specialization: Specialization,
    /// Polynomials in the two visible variables (plus `lambda` if symbolic).
    pub polys: Vec<MultiPoly>,
}

impl AffineView {
    pub fn variables(&self) -> Option<&VariableSet> {
        self.polys.first().map(MultiPoly::variables)
    }

    /// Reduced grevlex basis of the view.
    pub fn basis(&self) -> Result<GrobnerBasis> {
        Ok(buchberger(&Ideal::new(self.polys.clone())?, MonomialOrder::Grevlex))
    }

    /// The branch where `var != 0`, as the reduced basis of the saturation.
    pub fn saturate_nonzero(&self, var: &str) -> Result<GrobnerBasis> {
        saturate(&self.polys, var)
    }
}

/// Specialize at `k` (no recomputation) and set the chart variable to 1.
pub fn affine_view(sys: &HomogeneousSystem, patch: Patch, k: &Specialization) -> Result<AffineView> {
    let polys = specialize(sys, k, false)?;
    let polys: Vec<MultiPoly> = polys
        .iter()
        .map(|p| p.dehomogenize(patch.chart_var()))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter(|p| !p.is_zero())
        .collect();
    Ok(AffineView { patch, specialization: k.clone(), polys })
}

/// Moves the chart coordinate of `patch` into the `z` slot: `(x:y:z)`
/// becomes `(z:y:x)` for `ZY` and `(x:z:y)` for `XZ`.
pub fn swap_patch_coords(p: &ProjectivePoint, patch: Patch) -> ProjectivePoint {
    match patch {
        Patch::XY => p.clone(),
        Patch::ZY => p.permuted([2, 1, 0]),
        Patch::XZ => p.permuted([0, 2, 1]),
    }
}

/// `(horizontal, vertical)` coordinates of `p` in the chart, or `None` if `p`
/// lies at infinity there.
pub fn affine_coords(p: &ProjectivePoint, patch: Patch) -> Option<(Real, Real)> {
    let (h, v, c) = patch.axes();
    let cs = p.coords();
    if cs[c].is_zero() {
        return None;
    }
    Some((cs[h].div(&cs[c]).ok()?, cs[v].div(&cs[c]).ok()?))
}

/// Asymptote direction in an affine chart.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Direction {
    Slope(Real),
    Vertical,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Direction::Slope(m) => write!(f, "{m}"),
            Direction::Vertical => f.write_str("vertical"),
        }
    }
}

/// Directions of the slice points lying at infinity of the chart: a point
/// with chart coordinate 0 and visible coordinates `(h, v)` has slope `v/h`.
pub fn asymptote_directions(slice: &LocusSlice, patch: Patch) -> Vec<Direction> {
    let (h, v, c) = patch.axes();
    let mut out: Vec<Direction> = slice
        .points()
        .filter(|p| p.coords()[c].is_zero())
        .map(|p| {
            let cs = p.coords();
            if cs[h].is_zero() {
                Direction::Vertical
            } else {
                Direction::Slope(cs[v].div(&cs[h]).expect("nonzero"))
            }
        })
        .collect();
    out.sort_by(|a, b| match (a, b) {
        (Direction::Slope(x), Direction::Slope(y)) => x.cmp(y),
        (Direction::Slope(_), Direction::Vertical) => std::cmp::Ordering::Less,
        (Direction::Vertical, Direction::Slope(_)) => std::cmp::Ordering::Greater,
        _ => std::cmp::Ordering::Equal,
    });
    out.dedup();
    out
}

/// Exact vanishing of every polynomial at a rational projective point.
pub fn vanishes_at(polys: &[MultiPoly], p: &ProjectivePoint) -> bool {
    match p.rational_coords() {
        Some(c) => polys.iter().all(|f| f.evaluate(&c).is_zero()),
        None => false,
    }
}

/// Pencil, closure and the two endpoint slices of a plant.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub plant: RationalFunction,
    pub pencil: PencilPair,
    pub closure: HomogeneousSystem,
    pub initial: LocusSlice,
    pub terminal: LocusSlice,
}

pub fn analyze(plant: &RationalFunction) -> Result<Analysis> {
    let pencil = build_pencil(plant).map_err(|e| e.at_stage("pencil"))?;
    let closure = projective_closure(&pencil).map_err(|e| e.at_stage("closure"))?;
    let initial = slice_at(&closure, &ParameterValue::zero()).map_err(|e| e.at_stage("initial slice"))?;
    let terminal = slice_at(&closure, &ParameterValue::infinity()).map_err(|e| e.at_stage("terminal slice"))?;
    Ok(Analysis { plant: plant.clone(), pencil, closure, initial, terminal })
}
