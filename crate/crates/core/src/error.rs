//! Error types shared across the crate.

use std::fmt;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Failure modes of parameter validation, integration and root bracketing.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A parameter is outside its admissible range. `name` matches the
    /// CLI flag / field name so callers can point at the offending input.
    InvalidParameter { name: &'static str, message: String },
    /// The adaptive step size collapsed below the floating-point floor.
    StepSizeUnderflow { x: f64 },
    /// The integrator exceeded its step budget before reaching the target.
    MaxStepsExceeded { x: f64 },
    /// A runtime invariant of the trajectory failed beyond tolerance.
    InvariantBreach { x: f64, message: String },
    /// Bracket expansion for the root solve hit the configured ceiling.
    /// Reports the value of the monotone functional at the ceiling.
    BracketCeiling { max_x: f64, phi_at_ceiling: f64 },
    /// Evaluation point outside the computed span of the trajectory.
    OutOfDomain { x: f64, reach: f64 },
    /// A trace is too degenerate to convert (fewer than two usable points,
    /// or an interior point at the origin of the phase plane).
    DegenerateTrace { message: String },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidParameter { name, message } => {
                write!(f, "invalid parameter `{name}`: {message}")
            }
            Error::StepSizeUnderflow { x } => {
                write!(f, "step size underflow near x = {x:e}")
            }
            Error::MaxStepsExceeded { x } => {
                write!(f, "step budget exhausted near x = {x:e}")
            }
            Error::InvariantBreach { x, message } => {
                write!(f, "internal consistency failure at x = {x:e}: {message}")
            }
            Error::BracketCeiling {
                max_x,
                phi_at_ceiling,
            } => {
                write!(
                    f,
                    "bracket expansion reached the ceiling x = {max_x:e} with phi = {phi_at_ceiling:e}; \
                     raise the ceiling or use a closed-form limit"
                )
            }
            Error::OutOfDomain { x, reach } => {
                write!(f, "x = {x:e} outside the computed range [{reach:e}, 0]")
            }
            Error::DegenerateTrace { message } => write!(f, "degenerate trace: {message}"),
        }
    }
}

impl std::error::Error for Error {}
