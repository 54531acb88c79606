//! Traveling-front solver for the ignition-temperature combustion model
//! with fractional reaction order.
//!
//! For parameters (theta, Lambda, alpha) the front is found by a reduction
//! to a single singular profile ODE: the reactant shape w is grown from a
//! series seed at the degenerate origin, two monotone functionals phi and
//! zeta of w are evaluated along the way, the unique root phi(sigma*) =
//! theta is bisected, and the speed c* = zeta(sigma*), zone width
//! R* = sigma*/c* and full profiles follow. Closed-form limits
//! (theta -> 0, theta -> 1, alpha -> 0, alpha -> 1) live in
//! [`asymptotics`] and double as independent cross-checks; the appendix
//! phase-plane diagnostic lives in [`phase`].
//!
//! Entry points: [`ModelParams`], [`solve_front`], [`reconstruct_profiles`],
//! [`validate_front`].

// Validators use negated comparisons so NaN inputs fall into the reject
// branch; `x >= lo` would quietly accept them.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod dopri;
mod error;
mod front;
mod params;
mod quad;
mod trajectory;

pub mod asymptotics;
pub mod phase;

pub use error::{Error, Result};
pub use front::{
    phi, reconstruct_profiles, solve_front, solve_front_with, solve_sigma, validate_front, zeta,
    FrontOptions, FrontSolution, ProfileRow, ProfileTable, ResidualReport,
};
pub use params::{
    ModelParams, SeedOffset, ALPHA_MAX, ALPHA_MIN, DEFAULT_ABS_TOL, DEFAULT_REL_TOL, TOL_INV,
};
pub use trajectory::{series_seed, TrajNode, WTrajectory};
