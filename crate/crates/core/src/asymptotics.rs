//! Closed-form limits and asymptotic formulas used as independent
//! cross-checks of the numeric solver, and as the only available answers
//! outside the supported reaction-order window.
//!
//! All functions here are pure; none touch the integrator.

use crate::error::{Error, Result};

/// Which asymptotic expression a caller wants.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    SmallX,
    LargeX,
}

/// Named asymptotic regimes, mainly for CLI dispatch.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AsymptoticRegime {
    ThetaNearOne,
    ThetaSmall,
    AlphaZero,
    AlphaOne,
    WSmallX,
    WLargeX,
    W0Profile,
    WUpperBound,
    PhiZetaSmallX,
    PhiZetaLargeX,
}

impl AsymptoticRegime {
    pub fn name(&self) -> &'static str {
        match self {
            AsymptoticRegime::ThetaNearOne => "theta-near-one",
            AsymptoticRegime::ThetaSmall => "theta-small",
            AsymptoticRegime::AlphaZero => "alpha-zero",
            AsymptoticRegime::AlphaOne => "alpha-one",
            AsymptoticRegime::WSmallX => "w-small-x",
            AsymptoticRegime::WLargeX => "w-large-x",
            AsymptoticRegime::W0Profile => "w0-profile",
            AsymptoticRegime::WUpperBound => "w-upper-bound",
            AsymptoticRegime::PhiZetaSmallX => "phi-zeta-small-x",
            AsymptoticRegime::PhiZetaLargeX => "phi-zeta-large-x",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "theta-near-one" => Some(AsymptoticRegime::ThetaNearOne),
            "theta-small" => Some(AsymptoticRegime::ThetaSmall),
            "alpha-zero" => Some(AsymptoticRegime::AlphaZero),
            "alpha-one" => Some(AsymptoticRegime::AlphaOne),
            "w-small-x" => Some(AsymptoticRegime::WSmallX),
            "w-large-x" => Some(AsymptoticRegime::WLargeX),
            "w0-profile" => Some(AsymptoticRegime::W0Profile),
            "w-upper-bound" => Some(AsymptoticRegime::WUpperBound),
            "phi-zeta-small-x" => Some(AsymptoticRegime::PhiZetaSmallX),
            "phi-zeta-large-x" => Some(AsymptoticRegime::PhiZetaLargeX),
            _ => None,
        }
    }
}

fn check_alpha(alpha: f64) -> Result<()> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::InvalidParameter {
            name: "alpha",
            message: format!("alpha must lie in (0,1), got {alpha}"),
        });
    }
    Ok(())
}

/// Leading behavior of the profile:
/// near the origin  w = [(1-a)^2/(2 L (1+a))]^{1/(1-a)} (-x)^{2/(1-a)},
/// far out          w = [(1-a)(-x)]^{1/(1-a)}.
pub fn w_asymptotic(lambda: f64, alpha: f64, x: f64, branch: Branch) -> Result<f64> {
    check_alpha(alpha)?;
    if !(x < 0.0) {
        return Err(Error::InvalidParameter {
            name: "x",
            message: format!("asymptotic profile expects x < 0, got {x}"),
        });
    }
    let s = -x;
    let val = match branch {
        Branch::SmallX => {
            let ln_c =
                (2.0 * (1.0 - alpha).ln() - (2.0 * lambda * (1.0 + alpha)).ln()) / (1.0 - alpha);
            (ln_c + 2.0 / (1.0 - alpha) * s.ln()).exp()
        }
        Branch::LargeX => (((1.0 - alpha) * s).ln() / (1.0 - alpha)).exp(),
    };
    Ok(val)
}

/// Limit profile of w as the reaction order tends to zero:
/// w0(x) = -x + Lambda (e^{x/Lambda} - 1).
pub fn w0_profile(lambda: f64, x: f64) -> f64 {
    -x + lambda * (x / lambda).exp_m1()
}

/// Pointwise upper bound w(x) <= [(1-alpha)(-x)]^{1/(1-alpha)}.
pub fn w_upper_bound(alpha: f64, x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    (((1.0 - alpha) * -x).ln() / (1.0 - alpha)).exp()
}

/// Front speed and zone width for ignition temperatures close to unity:
/// c ~ sqrt(2/(1+a)) L^{-a/2} (1-theta)^{(1+a)/2},
/// R ~ sqrt(2(1+a))/(1-a) L^{a/2} (1-theta)^{(1-a)/2}.
pub fn front_theta_near_one(theta: f64, lambda: f64, alpha: f64) -> Result<(f64, f64)> {
    check_alpha(alpha)?;
    let one_m = 1.0 - theta;
    let c =
        (2.0 / (1.0 + alpha)).sqrt() * lambda.powf(-alpha / 2.0) * one_m.powf((1.0 + alpha) / 2.0);
    let r = (2.0 * (1.0 + alpha)).sqrt() / (1.0 - alpha)
        * lambda.powf(alpha / 2.0)
        * one_m.powf((1.0 - alpha) / 2.0);
    Ok((c, r))
}

/// Front speed and zone width for small ignition temperature:
/// c ~ theta^{-1/2} (independent of Lambda and alpha), R ~ c/(1-alpha).
pub fn front_theta_small(theta: f64, alpha: f64) -> (f64, f64) {
    let c = theta.powf(-0.5);
    (c, c / (1.0 - alpha))
}

/// Exact first-order-kinetics front speed; the paired reaction-zone width
/// is infinite and reported as such.
pub fn front_alpha_one(theta: f64, lambda: f64) -> (f64, f64) {
    let g = theta / (1.0 - theta);
    ((g + lambda * g * g).powf(-0.5), f64::INFINITY)
}

/// Exact zero-order-kinetics front: c = R = sqrt(kappa) with kappa the
/// positive root of theta kappa = 1 - e^{-kappa}.
pub fn front_alpha_zero(theta: f64) -> Result<(f64, f64)> {
    let kappa = kappa_root(theta)?;
    let c = kappa.sqrt();
    Ok((c, c))
}

/// Positive root of theta kappa = 1 - e^{-kappa}, bisected to 1e-12.
/// This rearrangement of e^kappa = 1/(1 - theta kappa) never overflows and
/// excludes the spurious root at zero.
pub fn kappa_root(theta: f64) -> Result<f64> {
    if !(theta > 0.0 && theta < 1.0) {
        return Err(Error::InvalidParameter {
            name: "theta",
            message: format!("theta must lie in (0,1), got {theta}"),
        });
    }
    let f = |k: f64| theta * k - 1.0 + (-k).exp();
    let mut lo = 1e-12;
    // The root lies strictly below 1/theta but only by e^{-kappa}/theta,
    // which for small theta is far below one ulp of 1/theta; the 2% margin
    // keeps f(hi) = 0.02 + e^{-hi} safely positive. kappa = 0 is excluded
    // by the positive lower end.
    let mut hi = 1.02 / theta;
    if !(f(lo) < 0.0 && f(hi) > 0.0) {
        return Err(Error::InvariantBreach {
            x: 0.0,
            message: format!("kappa bracket failed for theta = {theta}"),
        });
    }
    while hi - lo > 1e-12 {
        let mid = 0.5 * (lo + hi);
        if f(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Asymptotics of the pair (phi, zeta):
/// small x:  phi ~ 1 - (1-a)x/2,
///           zeta = (2L)^{-a/2} (1-a)^{(1+a)/2} / sqrt(1+a) * x^{(1+a)/2};
/// large x:  phi ~ 1/((1-a)x), zeta ~ sqrt((1-a)x).
pub fn phi_zeta_asymptotic(lambda: f64, alpha: f64, x: f64, branch: Branch) -> Result<(f64, f64)> {
    check_alpha(alpha)?;
    if !(x > 0.0) {
        return Err(Error::InvalidParameter {
            name: "x",
            message: format!("phi/zeta asymptotics expect x > 0, got {x}"),
        });
    }
    let pair = match branch {
        Branch::SmallX => {
            let phi = 1.0 - 0.5 * (1.0 - alpha) * x;
            let zeta = (2.0 * lambda).powf(-alpha / 2.0) * (1.0 - alpha).powf((1.0 + alpha) / 2.0)
                / (1.0 + alpha).sqrt()
                * x.powf((1.0 + alpha) / 2.0);
            (phi, zeta)
        }
        Branch::LargeX => (1.0 / ((1.0 - alpha) * x), ((1.0 - alpha) * x).sqrt()),
    };
    Ok(pair)
}

#[cfg(test)]
#[allow(clippy::excessive_precision)] // frozen oracle digits as printed by the reference tool
mod tests {
    use super::*;

    #[test]
    fn w_small_x_matches_frozen_values() {
        // Arbitrary-precision evaluations of the leading term.
        let v = w_asymptotic(1.0, 0.5, -0.1, Branch::SmallX).unwrap();
        assert!((v - 6.9444444444444444e-7).abs() < 1e-20);
        let v = w_asymptotic(1.0, 0.25, -0.1, Branch::SmallX).unwrap();
        assert!((v - 2.9483340684850087e-4).abs() < 1e-17, "{v}");
    }

    #[test]
    fn w_large_x_value_and_crossover() {
        let v = w_asymptotic(1.0, 0.5, -10.0, Branch::LargeX).unwrap();
        assert!((v - 25.0).abs() < 1e-12);
        // Each branch is monotone in |x|.
        let a = w_asymptotic(1.0, 0.5, -1.0, Branch::SmallX).unwrap();
        let b = w_asymptotic(1.0, 0.5, -2.0, Branch::SmallX).unwrap();
        assert!(b > a);
        let a = w_asymptotic(1.0, 0.5, -1.0, Branch::LargeX).unwrap();
        let b = w_asymptotic(1.0, 0.5, -2.0, Branch::LargeX).unwrap();
        assert!(b > a);
    }

    #[test]
    fn w_asymptotic_rejects_bad_input() {
        assert!(w_asymptotic(1.0, 1.5, -1.0, Branch::SmallX).is_err());
        assert!(w_asymptotic(1.0, 0.5, 1.0, Branch::SmallX).is_err());
    }

    #[test]
    fn w0_profile_values() {
        assert_eq!(w0_profile(1.0, 0.0), 0.0);
        let v = w0_profile(1.0, -1.0);
        assert!((v - 0.36787944117144232).abs() < 1e-15);
    }

    #[test]
    fn upper_bound_values() {
        assert_eq!(w_upper_bound(0.5, 0.0), 0.0);
        assert!((w_upper_bound(0.5, -2.0) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn theta_near_one_reference_pair() {
        let (c, r) = front_theta_near_one(0.98, 1.0, 0.5).unwrap();
        assert!((c - 0.061410391354625428).abs() / 0.0614 < 1e-12, "{c}");
        assert!((r - 1.3027111248652612).abs() / 1.3027 < 1e-12, "{r}");
    }

    #[test]
    fn theta_near_one_monotone_in_lambda_and_alpha() {
        let grid = [0.2, 1.0, 5.0];
        for pair in grid.windows(2) {
            let (c0, r0) = front_theta_near_one(0.98, pair[0], 0.5).unwrap();
            let (c1, r1) = front_theta_near_one(0.98, pair[1], 0.5).unwrap();
            assert!(c1 < c0 && r1 > r0);
        }
        for pair in [0.25, 0.5, 0.75].windows(2) {
            let (c0, r0) = front_theta_near_one(0.98, 1.0, pair[0]).unwrap();
            let (c1, r1) = front_theta_near_one(0.98, 1.0, pair[1]).unwrap();
            assert!(c1 < c0 && r1 > r0);
        }
    }

    #[test]
    fn theta_small_values_and_independence() {
        let (c, r) = front_theta_small(0.01, 0.5);
        assert!((c - 10.0).abs() < 1e-12);
        assert!((r - 20.0).abs() < 1e-12);
        // Speed depends only on theta in this regime.
        let (c2, _) = front_theta_small(0.01, 0.9);
        assert_eq!(c, c2);
    }

    #[test]
    fn alpha_one_speed() {
        let (c, r) = front_alpha_one(0.5, 1.0);
        assert!((c - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
        assert!(r.is_infinite());
        // theta near one: c ~ (1-theta)/sqrt(Lambda).
        let th = 0.999;
        let (c, _) = front_alpha_one(th, 1.0);
        let approx = (1.0 - th) / 1.0_f64.sqrt();
        assert!((c - approx).abs() / approx < 2e-3, "{c} vs {approx}");
    }

    #[test]
    fn alpha_zero_kappa_and_speed() {
        let kappa = kappa_root(0.5).unwrap();
        assert!((kappa - 1.5936242600400401).abs() < 1e-11, "{kappa}");
        let (c, r) = front_alpha_zero(0.5).unwrap();
        assert!((c - 1.2623883158679979).abs() < 1e-11);
        assert_eq!(c, r);
        // theta near one: c ~ sqrt(2(1-theta)).
        let th = 0.9995;
        let (c, _) = front_alpha_zero(th).unwrap();
        let approx = (2.0 * (1.0 - th)).sqrt();
        assert!((c - approx).abs() / approx < 2e-3, "{c} vs {approx}");
    }

    #[test]
    fn kappa_root_rejects_bad_theta() {
        assert!(kappa_root(0.0).is_err());
        assert!(kappa_root(1.0).is_err());
    }

    #[test]
    fn phi_zeta_small_x_value() {
        let (phi, _) = phi_zeta_asymptotic(1.0, 0.5, 0.01, Branch::SmallX).unwrap();
        assert!((phi - 0.9975).abs() < 1e-12);
    }

    #[test]
    fn regime_consistency_theta_near_one_reproduces_alpha_limits() {
        // As alpha -> 1 the near-unity expansion approaches the exact
        // first-order speed expanded at theta -> 1, and as alpha -> 0 the
        // zero-order sqrt(2(1-theta)).
        let th = 0.9999;
        let (c_near, _) = front_theta_near_one(th, 1.0, 0.995).unwrap();
        let (c_one, _) = front_alpha_one(th, 1.0);
        assert!((c_near - c_one).abs() / c_one < 0.05, "{c_near} vs {c_one}");

        let (c_near, _) = front_theta_near_one(th, 1.0, 0.005).unwrap();
        let c_zero = (2.0 * (1.0 - th)).sqrt();
        assert!(
            (c_near - c_zero).abs() / c_zero < 0.05,
            "{c_near} vs {c_zero}"
        );
    }

    #[test]
    fn pure_functions_are_deterministic() {
        for _ in 0..3 {
            assert_eq!(
                front_theta_near_one(0.93, 2.0, 0.4).unwrap(),
                front_theta_near_one(0.93, 2.0, 0.4).unwrap()
            );
            assert_eq!(kappa_root(0.37).unwrap(), kappa_root(0.37).unwrap());
        }
    }

    #[test]
    fn regime_names_round_trip() {
        for r in [
            AsymptoticRegime::ThetaNearOne,
            AsymptoticRegime::ThetaSmall,
            AsymptoticRegime::AlphaZero,
            AsymptoticRegime::AlphaOne,
            AsymptoticRegime::WSmallX,
            AsymptoticRegime::WLargeX,
            AsymptoticRegime::W0Profile,
            AsymptoticRegime::WUpperBound,
            AsymptoticRegime::PhiZetaSmallX,
            AsymptoticRegime::PhiZetaLargeX,
        ] {
            assert_eq!(AsymptoticRegime::parse(r.name()), Some(r));
        }
        assert_eq!(AsymptoticRegime::parse("bogus"), None);
    }
}
