//! Points of the real projective plane and their gnomonic picture on the
//! unit upper hemisphere.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::poly::Rational;
use crate::solver::Real;

/// `(x:y:z)`, kept normalized: the last nonzero coordinate in the priority
/// `z`, then `y`, then `x` equals 1. Two points are equal iff their
/// normalized coordinates are.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectivePoint {
    coords: [Real; 3],
}

/// Scales `(x, y, z)` to normalized form.
pub fn normalize(x: Real, y: Real, z: Real) -> Result<ProjectivePoint> {
    let pivot = [&z, &y, &x]
        .into_iter()
        .find(|c| !c.is_zero())
        .cloned()
        .ok_or(Error::ZeroPoint)?;
    let one = Real::one();
    let scale = |c: Real| -> Result<Real> {
        if c.is_zero() {
            Ok(c)
        } else if pivot == one {
            Ok(c)
        } else {
            c.div(&pivot)
        }
    };
    Ok(ProjectivePoint { coords: [scale(x)?, scale(y)?, scale(z)?] })
}

impl ProjectivePoint {
    pub fn new(x: Real, y: Real, z: Real) -> Result<Self> {
        normalize(x, y, z)
    }

    pub fn from_rationals(x: Rational, y: Rational, z: Rational) -> Result<Self> {
        normalize(Real::Rational(x), Real::Rational(y), Real::Rational(z))
    }

    pub fn from_ints(x: i64, y: i64, z: i64) -> Result<Self> {
        normalize(Real::from_i64(x), Real::from_i64(y), Real::from_i64(z))
    }

    pub fn coords(&self) -> &[Real; 3] {
        &self.coords
    }

    pub fn x(&self) -> &Real {
        &self.coords[0]
    }

    pub fn y(&self) -> &Real {
        &self.coords[1]
    }

    pub fn z(&self) -> &Real {
        &self.coords[2]
    }

    pub fn is_at_infinity(&self) -> bool {
        self.coords[2].is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.coords.iter().all(Real::is_rational)
    }

    /// Rational coordinates, if all are rational.
    pub fn rational_coords(&self) -> Option<[Rational; 3]> {
        let c: Vec<Rational> = self.coords.iter().filter_map(|r| r.as_rational().cloned()).collect();
        c.try_into().ok()
    }

    pub fn to_f64(&self) -> [f64; 3] {
        [self.coords[0].to_f64(), self.coords[1].to_f64(), self.coords[2].to_f64()]
    }

    /// Coordinates permuted so that position `i` holds the old coordinate
    /// `perm[i]`, then renormalized.
    pub fn permuted(&self, perm: [usize; 3]) -> ProjectivePoint {
        let c = &self.coords;
        normalize(c[perm[0]].clone(), c[perm[1]].clone(), c[perm[2]].clone()).expect("nonzero point")
    }
}

impl PartialOrd for ProjectivePoint {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ProjectivePoint {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coords.cmp(&other.coords)
    }
}

impl fmt::Display for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}:{}:{})", self.coords[0], self.coords[1], self.coords[2])
    }
}

/// A point of the closed upper unit hemisphere.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpherePoint {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

pub const EQUATOR_TOLERANCE: f64 = 1e-12;

impl SpherePoint {
    /// Unit vector along `(x, y, z)` on the canonical hemisphere.
    pub fn from_direction(x: f64, y: f64, z: f64) -> Option<SpherePoint> {
        let n = (x * x + y * y + z * z).sqrt();
        if n == 0.0 || !n.is_finite() {
            return None;
        }
        let (mut x, mut y, mut z) = (x / n, y / n, z / n);
        let flip = if z.abs() > EQUATOR_TOLERANCE { z < 0.0 } else { x < 0.0 || (x == 0.0 && y < 0.0) };
        if flip {
            x = -x;
            y = -y;
            z = -z;
        }
        Some(SpherePoint { x, y, z })
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn norm(&self) -> f64 {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }
}

/// Lift onto the hemisphere along the ray through the origin.
///
/// The sign is fixed from the exact normalized coordinates, so scaled
/// representatives of one projective point lift to the identical
/// `SpherePoint`: `Z > 0` off the equator, and on the equator `X > 0`, or
/// `X = 0` and `Y > 0`.
pub fn gnomonic_lift(p: &ProjectivePoint) -> SpherePoint {
    let [x, y, z] = p.to_f64();
    let negate = p.z().is_zero() && (p.x().signum() < 0 || (p.x().is_zero() && p.y().signum() < 0));
    let s = if negate { -1.0 } else { 1.0 };
    let n = (x * x + y * y + z * z).sqrt();
    SpherePoint { x: s * x / n, y: s * y / n, z: s * z / n }
}

/// Result of projecting a hemisphere point back to the plane `z = 1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Projected {
    Finite(f64, f64),
    /// On the equator: the point at infinity in direction `(X, Y)`.
    AtInfinity(f64, f64),
}

pub fn gnomonic_project(sp: &SpherePoint) -> Projected {
    if sp.z > EQUATOR_TOLERANCE {
        Projected::Finite(sp.x / sp.z, sp.y / sp.z)
    } else {
        Projected::AtInfinity(sp.x, sp.y)
    }
}
