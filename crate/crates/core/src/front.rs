//! Front assembly: the monotone functionals phi and zeta, the scalar root
//! solve for sigma*, reconstruction of the temperature/reactant profiles on
//! all three regions, and the residual diagnostics.
//!
//! For a trajectory w the two functionals are
//!     phi(x)  = K(x) / I(x)            (strictly decreasing, 0 < phi < 1)
//!     zeta(x) = I(x)^{(1-alpha)/2}     (strictly increasing)
//! and the front is determined by phi(sigma*) = theta, c* = zeta(sigma*),
//! R* = sigma*/c*.

use crate::dopri::{DenseSeg, Dopri5};
use crate::error::{Error, Result};
use crate::params::ModelParams;
use crate::quad::graded_toward_zero;
use crate::trajectory::WTrajectory;

/// Controls for the sigma* root solve.
#[derive(Debug, Clone)]
pub struct FrontOptions {
    /// Relative width at which bisection stops.
    pub sigma_tol: f64,
    /// Ceiling for upward bracket expansion.
    pub max_x: f64,
}

impl Default for FrontOptions {
    fn default() -> Self {
        FrontOptions {
            sigma_tol: 1e-10,
            max_x: 1e6,
        }
    }
}

/// The solved traveling front for one parameter set (theta, Lambda, alpha).
/// Immutable once constructed; holds the trajectory it was built from.
pub struct FrontSolution {
    pub theta: f64,
    pub sigma_star: f64,
    pub c_star: f64,
    pub r_star: f64,
    /// Upstream reactant amplitude: v = 1 - a e^{c(xi+R)/Lambda} ahead of
    /// the ignition point, with a in (0,1).
    pub a_coef: f64,
    traj: WTrajectory,
}

/// Sampled front profiles over `[xi_min, 0]` with the interface markers.
#[derive(Debug, Clone)]
pub struct ProfileTable {
    pub rows: Vec<ProfileRow>,
    /// Ignition interface, -R*.
    pub xi_ign: f64,
    /// Trailing interface (fixed at 0 by the normalization).
    pub xi_tr: f64,
}

#[derive(Debug, Clone, Copy)]
pub struct ProfileRow {
    pub xi: f64,
    pub u: f64,
    pub v: f64,
    pub uprime: f64,
    pub vprime: f64,
}

/// Maximum absolute residuals of the assembled front, grouped by the
/// condition they probe. Thresholds are the caller's business.
#[derive(Debug, Clone, Copy)]
pub struct ResidualReport {
    /// Ignition conditions u(-R) = theta, u'(-R) = c theta.
    pub ignition: f64,
    /// Interface flux consistency c (1 - v(-R)) + Lambda v'(-R) = 0.
    pub flux: f64,
    /// Pointwise residuals of both reaction-zone equations.
    pub ode: f64,
    /// Speed identity c = int v^alpha over the reaction zone.
    pub c_identity: f64,
    /// Weighted identity c theta = int v^alpha e^{-c(xi+R)}.
    pub theta_identity: f64,
}

impl ResidualReport {
    pub fn max(&self) -> f64 {
        self.ignition
            .max(self.flux)
            .max(self.ode)
            .max(self.c_identity)
            .max(self.theta_identity)
    }
}

/// phi(x) = K(x)/I(x), extending the trajectory on demand.
/// Satisfies e^{-x} < phi(x) < 1 on x > 0.
pub fn phi(traj: &mut WTrajectory, x: f64) -> Result<f64> {
    if !(x > 0.0 && x.is_finite()) {
        return Err(Error::InvalidParameter {
            name: "x",
            message: format!("phi requires x > 0, got {x}"),
        });
    }
    traj.extend(-x)?;
    let z = traj.eval_log(-x)?;
    Ok((z[3] - z[2]).exp())
}

/// zeta(x) = I(x)^{(1-alpha)/2}, extending the trajectory on demand.
pub fn zeta(traj: &mut WTrajectory, x: f64) -> Result<f64> {
    if !(x > 0.0 && x.is_finite()) {
        return Err(Error::InvalidParameter {
            name: "x",
            message: format!("zeta requires x > 0, got {x}"),
        });
    }
    traj.extend(-x)?;
    let z = traj.eval_log(-x)?;
    Ok((z[2] * (1.0 - traj.params().alpha()) / 2.0).exp())
}

/// Finds the unique sigma with phi(sigma) = theta by bracketing bisection:
/// the upper bracket doubles until phi drops below theta (capped at
/// `max_x`), the lower halves until phi exceeds theta, then bisection
/// narrows to relative width `tol`. Monotonicity of phi makes this
/// globally convergent.
pub fn solve_sigma(traj: &mut WTrajectory, theta: f64, tol: f64, max_x: f64) -> Result<f64> {
    if !(theta > 0.0 && theta < 1.0) {
        return Err(Error::InvalidParameter {
            name: "theta",
            message: format!("theta must lie in (0,1), got {theta}"),
        });
    }
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::InvalidParameter {
            name: "tol",
            message: format!("tolerance must be positive, got {tol}"),
        });
    }

    let mut hi = 1.0_f64;
    while phi(traj, hi)? >= theta {
        hi *= 2.0;
        if hi > max_x {
            return Err(Error::BracketCeiling {
                max_x,
                phi_at_ceiling: phi(traj, max_x)?,
            });
        }
    }
    let mut lo = 0.5 * hi;
    while phi(traj, lo)? < theta {
        hi = lo;
        lo *= 0.5;
        if lo < 1e-300 {
            return Err(Error::InvariantBreach {
                x: 0.0,
                message: "lower bracket collapsed to zero".to_string(),
            });
        }
    }

    for _ in 0..200 {
        if hi - lo <= tol * hi {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if phi(traj, mid)? >= theta {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Solves the front at default options.
pub fn solve_front(params: &ModelParams, theta: f64) -> Result<FrontSolution> {
    solve_front_with(params, theta, &FrontOptions::default())
}

/// Solves the front: builds the trajectory, roots phi(sigma*) = theta,
/// and assembles c* = zeta(sigma*), R* = sigma*/c*, and the upstream
/// coefficient a = 1 - v(-R+).
pub fn solve_front_with(
    params: &ModelParams,
    theta: f64,
    opts: &FrontOptions,
) -> Result<FrontSolution> {
    let mut traj = WTrajectory::new(params.clone())?;
    let sigma = solve_sigma(&mut traj, theta, opts.sigma_tol, opts.max_x)?;
    let c = zeta(&mut traj, sigma)?;
    FrontSolution::from_parts(theta, sigma, c, traj)
}

impl FrontSolution {
    /// Low-level assembly from an explicit (sigma, c) pair; `solve_front`
    /// is the standard entry point. Useful for diagnostics: passing a pair
    /// that does not satisfy c = zeta(sigma) produces a front whose
    /// residual report flags the inconsistency.
    pub fn from_parts(theta: f64, sigma: f64, c: f64, mut traj: WTrajectory) -> Result<Self> {
        if !(theta > 0.0 && theta < 1.0) {
            return Err(Error::InvalidParameter {
                name: "theta",
                message: format!("theta must lie in (0,1), got {theta}"),
            });
        }
        if !(sigma > 0.0 && c > 0.0) {
            return Err(Error::InvalidParameter {
                name: "sigma",
                message: format!("sigma and c must be positive, got sigma={sigma}, c={c}"),
            });
        }
        traj.extend(-sigma)?;
        let alpha = traj.params().alpha();
        let ln_a_scale = -(2.0 / (1.0 - alpha)) * c.ln(); // ln A, A = c^{-2/(1-alpha)}
        let z = traj.eval_log(-sigma)?;
        let a_coef = 1.0 - (z[0] + ln_a_scale).exp();
        if !(a_coef > 0.0 && a_coef < 1.0) {
            return Err(Error::InvariantBreach {
                x: -sigma,
                message: format!("upstream coefficient a = {a_coef} outside (0,1)"),
            });
        }
        Ok(FrontSolution {
            theta,
            sigma_star: sigma,
            c_star: c,
            r_star: sigma / c,
            a_coef,
            traj,
        })
    }

    pub fn params(&self) -> &ModelParams {
        self.traj.params()
    }

    pub fn trajectory(&self) -> &WTrajectory {
        &self.traj
    }

    /// ln A with v(xi) = A w(c xi).
    fn ln_a_scale(&self) -> f64 {
        -(2.0 / (1.0 - self.params().alpha())) * self.c_star.ln()
    }

    /// Reactant value and slope at xi in `[-R*, 0]`.
    fn v_point(&self, xi: f64) -> Result<(f64, f64)> {
        let s = (-self.c_star * xi).min(self.sigma_star);
        if s <= 0.0 {
            return Ok((0.0, 0.0));
        }
        let z = self.traj.eval_log(-s)?;
        let v = (z[0] + self.ln_a_scale()).exp();
        let vprime = if z[1] > 0.0 {
            -self.c_star * (z[0] + self.ln_a_scale() + z[1].ln()).exp()
        } else {
            0.0
        };
        Ok((v, vprime))
    }

    /// v^alpha at xi in `[-R*, 0]`, formed in logs.
    fn v_alpha(&self, xi: f64) -> Result<f64> {
        let s = (-self.c_star * xi).min(self.sigma_star);
        if s <= 0.0 {
            return Ok(0.0);
        }
        let z = self.traj.eval_log(-s)?;
        Ok((self.params().alpha() * (z[0] + self.ln_a_scale())).exp())
    }

    /// Default left edge for profile output: five e-folding lengths of the
    /// upstream temperature tail ahead of the ignition interface.
    pub fn default_xi_min(&self) -> f64 {
        -self.r_star - 5.0 / self.c_star
    }
}

/// Dense solution of the temperature equation on the reaction zone,
/// marched backward from the trailing interface in tau = -xi.
struct TempProfile {
    segs: Vec<DenseSeg<2>>,
    y_start: [f64; 2],
    r: f64,
    y_end: [f64; 2],
}

impl TempProfile {
    /// (u, u') at xi = -tau.
    fn eval(&self, tau: f64) -> [f64; 2] {
        if tau <= 0.0 {
            return self.y_start;
        }
        if tau >= self.r {
            return self.y_end;
        }
        let idx = self.segs.partition_point(|seg| seg.s0 <= tau);
        if idx == 0 {
            return self.y_start;
        }
        self.segs[idx - 1].eval(tau)
    }
}

/// Integrates u'' - c u' = -v^alpha backward from u(0) = 1, u'(0) = 0.
/// Both homogeneous solutions are bounded in this direction, so the march
/// is stable. State is [u, u'] with u' taken with respect to xi.
fn integrate_temperature(front: &FrontSolution) -> Result<TempProfile> {
    let c = front.c_star;
    let r = front.r_star;
    let rhs = move |tau: f64, y: &[f64; 2]| -> [f64; 2] {
        let va = front.v_alpha(-tau).unwrap_or(f64::NAN);
        [-y[1], va - c * y[1]]
    };
    let params = front.params();
    let solver = Dopri5::new(params.rel_tol(), params.abs_tol());
    let mut segs = Vec::new();
    let (y_end, _) = solver.integrate(rhs, 0.0, [1.0, 0.0], r, r * 1e-4, |_, _, seg| {
        segs.push(seg);
        Ok(())
    })?;
    Ok(TempProfile {
        segs,
        y_start: [1.0, 0.0],
        r,
        y_end,
    })
}

/// Samples the three-region front on `[xi_min, 0]`: `n_points` across the
/// reaction zone and half as many upstream, endpoints included at -R* and
/// exactly 0.
pub fn reconstruct_profiles(
    front: &FrontSolution,
    xi_min: f64,
    n_points: usize,
) -> Result<ProfileTable> {
    let r = front.r_star;
    if !(xi_min < -r && xi_min.is_finite()) {
        return Err(Error::InvalidParameter {
            name: "xi_min",
            message: format!("xi_min must lie left of -R* = {:e}, got {xi_min}", -r),
        });
    }
    if n_points < 16 {
        return Err(Error::InvalidParameter {
            name: "n_points",
            message: format!("need at least 16 points, got {n_points}"),
        });
    }

    let temp = integrate_temperature(front)?;
    let c = front.c_star;
    let theta = front.theta;
    let lambda = front.params().lambda();
    let a = front.a_coef;

    let mut rows = Vec::with_capacity(n_points + n_points / 2 + 1);

    // Region (i): xi < -R*, closed forms of the non-reacting equations.
    let n_up = n_points.div_ceil(2);
    let step_up = (-r - xi_min) / n_up as f64;
    for i in 0..n_up {
        let xi = xi_min + step_up * i as f64;
        let grow = (c * (xi + r)).exp();
        let grow_v = (c * (xi + r) / lambda).exp();
        rows.push(ProfileRow {
            xi,
            u: theta * grow,
            v: 1.0 - a * grow_v,
            uprime: c * theta * grow,
            vprime: -(a * c / lambda) * grow_v,
        });
    }

    // Region (ii): the reaction zone, numeric u and rescaled w as v.
    let step = r / (n_points - 1) as f64;
    for i in 0..n_points {
        let xi = if i + 1 == n_points {
            0.0
        } else {
            -r + step * i as f64
        };
        let [u, uprime] = temp.eval(-xi);
        let (v, vprime) = front.v_point(xi)?;
        rows.push(ProfileRow {
            xi,
            u,
            v,
            uprime,
            vprime,
        });
    }

    Ok(ProfileTable {
        rows,
        xi_ign: -r,
        xi_tr: 0.0,
    })
}

/// Computes the residual report for an assembled front/profile pair.
/// Always returns a report; when a sub-computation cannot be carried out
/// the corresponding residual is reported as infinite. Pass/fail
/// thresholds belong to the caller.
pub fn validate_front(front: &FrontSolution, profile: &ProfileTable) -> ResidualReport {
    let ignition = residual_ignition(front, profile);
    let flux = residual_flux(front).unwrap_or(f64::INFINITY);
    let ode = residual_ode(front).unwrap_or(f64::INFINITY);
    let (c_identity, theta_identity) =
        residual_identities(front).unwrap_or((f64::INFINITY, f64::INFINITY));
    ResidualReport {
        ignition,
        flux,
        ode,
        c_identity,
        theta_identity,
    }
}

fn residual_ignition(front: &FrontSolution, profile: &ProfileTable) -> f64 {
    // The reaction-zone grid contains xi_ign exactly; tolerate reordering
    // by picking the row closest to it.
    let row = profile
        .rows
        .iter()
        .min_by(|a, b| {
            let da = (a.xi - profile.xi_ign).abs();
            let db = (b.xi - profile.xi_ign).abs();
            da.partial_cmp(&db).unwrap()
        })
        .copied();
    match row {
        Some(row) => {
            let du = (row.u - front.theta).abs();
            let dup = (row.uprime - front.c_star * front.theta).abs();
            du.max(dup)
        }
        None => f64::INFINITY,
    }
}

fn residual_flux(front: &FrontSolution) -> Result<f64> {
    let (v, vprime) = front.v_point(-front.r_star)?;
    Ok((front.c_star * (1.0 - v) + front.params().lambda() * vprime).abs())
}

fn residual_ode(front: &FrontSolution) -> Result<f64> {
    let temp = integrate_temperature(front)?;
    let c = front.c_star;
    let lambda = front.params().lambda();
    let r = front.r_star;
    let h = 2e-6 * r;
    let n = 25;
    let mut worst = 0.0_f64;
    for i in 0..n {
        let xi = -r * (0.02 + 0.96 * i as f64 / (n - 1) as f64);
        let va = front.v_alpha(xi)?;

        // Temperature equation u'' - c u' = -v^alpha, u'' by central
        // difference of the integrated slope channel.
        let up_m = temp.eval(-(xi - h))[1];
        let up_p = temp.eval(-(xi + h))[1];
        let upp = (up_p - up_m) / (2.0 * h);
        let up = temp.eval(-xi)[1];
        worst = worst.max((upp - c * up + va).abs());

        // Reactant equation Lambda v'' - c v' = v^alpha, v'' by central
        // difference of the trajectory-backed slope.
        let (_, vp_m) = front.v_point(xi - h)?;
        let (_, vp_p) = front.v_point(xi + h)?;
        let vpp = (vp_p - vp_m) / (2.0 * h);
        let (_, vp) = front.v_point(xi)?;
        worst = worst.max((lambda * vpp - c * vp - va).abs());
    }
    Ok(worst)
}

// Integrates g over [0, r] with panels halving toward BOTH ends: the
// trailing end carries a fractional power of tau, and the ignition end
// can hold a sharp boundary layer (width ~R/q for alpha near 1, ~1/c for
// the exponentially weighted identity). `tail_zero(cut)` supplies the
// closed-form sliver at tau = 0; the sliver at tau = r is a trapezoid on
// a smooth bounded integrand.
fn graded_both_ends<F: Fn(f64) -> f64>(g: &F, r: f64, tail_zero: impl Fn(f64) -> f64) -> f64 {
    let half = 0.5 * r;
    let (left, cut0) = graded_toward_zero(g, half, 48);
    let mirrored = |u: f64| g(r - u);
    let (right, cut_r) = graded_toward_zero(&mirrored, half, 48);
    let sliver = 0.5 * cut_r * (mirrored(cut_r) + mirrored(0.0));
    left + tail_zero(cut0) + right + sliver
}

fn residual_identities(front: &FrontSolution) -> Result<(f64, f64)> {
    let c = front.c_star;
    let sigma = front.sigma_star;
    let r = front.r_star;
    let alpha = front.params().alpha();

    // Near tau = 0 the integrand follows the seeding series:
    // v^alpha ~ (A C)^alpha (c tau)^q.
    let q = 2.0 * alpha / (1.0 - alpha);
    let ln_series_amp = alpha * (front.ln_a_scale() + series_ln_c(front.params()));
    let tail1 =
        |cut: f64| (ln_series_amp + (q + 1.0) * (c * cut).ln() - c.ln() - (q + 1.0).ln()).exp();

    let g1 = |tau: f64| front.v_alpha(-tau).unwrap_or(f64::NAN);
    let q1 = graded_both_ends(&g1, r, tail1);

    let g2 = |tau: f64| g1(tau) * (c * tau - sigma).exp();
    let q2 = graded_both_ends(&g2, r, |cut| tail1(cut) * (c * cut - sigma).exp());

    Ok(((q1 - c).abs(), (q2 - c * front.theta).abs()))
}

// Local copy of the series amplitude; kept private to the trajectory
// module otherwise.
fn series_ln_c(params: &ModelParams) -> f64 {
    let a = params.alpha();
    (2.0 * (1.0 - a).ln() - (2.0 * params.lambda() * (1.0 + a)).ln()) / (1.0 - a)
}
