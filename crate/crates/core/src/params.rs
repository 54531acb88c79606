//! Model parameters and their validation.

use crate::error::{Error, Result};

/// Default per-step relative error target of the profile integrator.
pub const DEFAULT_REL_TOL: f64 = 1e-10;
/// Default per-step absolute error target of the profile integrator.
pub const DEFAULT_ABS_TOL: f64 = 1e-12;
/// Slack allowed on runtime invariant checks (concavity ratio, upper bound).
pub const TOL_INV: f64 = 1e-9;
/// Reaction orders outside this window are rejected: the exponents
/// 1/(1-alpha) and 2/(1-alpha) degrade conditioning, and both ends have
/// exact closed forms (`asymptotics::front_alpha_zero`,
/// `asymptotics::front_alpha_one`).
pub const ALPHA_MIN: f64 = 0.005;
/// Upper end of the supported reaction-order window.
pub const ALPHA_MAX: f64 = 0.995;

/// How the singular start offset of the profile integration is chosen.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SeedOffset {
    /// Shrink the offset geometrically until two successive seeds agree
    /// at the x = -1 checkpoint to 10x the relative tolerance.
    Auto,
    /// Fixed offset, must be positive.
    Explicit(f64),
}

/// Parameters of the reduced reactant profile problem: inverse Lewis
/// number, reaction order, and the numerical knobs of the integrator.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelParams {
    lambda: f64,
    alpha: f64,
    rel_tol: f64,
    abs_tol: f64,
    seed_offset: SeedOffset,
}

impl ModelParams {
    /// Validates `lambda > 0` and `alpha` inside the supported window;
    /// tolerances default to 1e-10 / 1e-12 and the seed offset to `Auto`.
    pub fn new(lambda: f64, alpha: f64) -> Result<Self> {
        if !(lambda > 0.0 && lambda.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "lambda",
                message: format!("lambda must be a positive finite number, got {lambda}"),
            });
        }
        if !(alpha > 0.0 && alpha < 1.0) {
            return Err(Error::InvalidParameter {
                name: "alpha",
                message: format!("alpha must lie in (0,1), got {alpha}"),
            });
        }
        if alpha < ALPHA_MIN {
            return Err(Error::InvalidParameter {
                name: "alpha",
                message: format!(
                    "alpha = {alpha} is below the supported window [{ALPHA_MIN}, {ALPHA_MAX}]; \
                     use the alpha -> 0 closed form (asymptotics::front_alpha_zero)"
                ),
            });
        }
        if alpha > ALPHA_MAX {
            return Err(Error::InvalidParameter {
                name: "alpha",
                message: format!(
                    "alpha = {alpha} is above the supported window [{ALPHA_MIN}, {ALPHA_MAX}]; \
                     use the alpha -> 1 closed form (asymptotics::front_alpha_one)"
                ),
            });
        }
        Ok(ModelParams {
            lambda,
            alpha,
            rel_tol: DEFAULT_REL_TOL,
            abs_tol: DEFAULT_ABS_TOL,
            seed_offset: SeedOffset::Auto,
        })
    }

    /// Replaces the integrator error targets.
    pub fn with_tolerances(mut self, rel_tol: f64, abs_tol: f64) -> Result<Self> {
        if !(rel_tol > 0.0 && rel_tol.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "rel_tol",
                message: format!("rel_tol must be positive, got {rel_tol}"),
            });
        }
        if !(abs_tol > 0.0 && abs_tol.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "abs_tol",
                message: format!("abs_tol must be positive, got {abs_tol}"),
            });
        }
        self.rel_tol = rel_tol;
        self.abs_tol = abs_tol;
        Ok(self)
    }

    /// Replaces the seed-offset policy.
    pub fn with_seed_offset(mut self, seed_offset: SeedOffset) -> Result<Self> {
        if let SeedOffset::Explicit(eps) = seed_offset {
            if !(eps > 0.0 && eps.is_finite()) {
                return Err(Error::InvalidParameter {
                    name: "seed_offset",
                    message: format!("explicit seed offset must be positive, got {eps}"),
                });
            }
        }
        self.seed_offset = seed_offset;
        Ok(self)
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn rel_tol(&self) -> f64 {
        self.rel_tol
    }

    pub fn abs_tol(&self) -> f64 {
        self.abs_tol
    }

    pub fn seed_offset(&self) -> SeedOffset {
        self.seed_offset
    }
}
