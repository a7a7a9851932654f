//! Real-root machinery: univariate isolation, exact algebraic reals,
//! zero-dimensional system solving and the numeric gain sweep.

mod algebraic;
mod sweep;
mod univariate;
mod zero_dim;

pub use algebraic::{real_root_values, AlgebraicReal, Real};
pub use sweep::{
    imaginary_axis_crossing, k_grid, max_real_part, pair_branches, polynomial_roots, sweep_complementary,
    sweep_complementary_with,
    sweep_conventional, sweep_point, ComplementarySample, SweepPoint, BLOW_UP_THRESHOLD,
};
pub use univariate::{
    real_roots, real_roots_with_width, simplest_rational, IsolatedRoot, SturmSequence, UniPoly,
    DEFAULT_ISOLATION_WIDTH,
};
pub(crate) use univariate::width_rational;
pub use zero_dim::{solve_zero_dim, RealPoint};
