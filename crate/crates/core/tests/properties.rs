//! Property-based invariants over randomly drawn parameters.

use flamefront_core::asymptotics::{front_alpha_zero, kappa_root, w_upper_bound};
use flamefront_core::{phi, series_seed, solve_front, zeta, ModelParams, WTrajectory};
use proptest::prelude::*;

fn params(lambda: f64, alpha: f64) -> ModelParams {
    ModelParams::new(lambda, alpha).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, .. ProptestConfig::default() })]

    #[test]
    fn solved_front_satisfies_its_contracts(
        theta in 0.05f64..0.95,
        lambda in 0.2f64..5.0,
        alpha in 0.1f64..0.9,
    ) {
        let front = solve_front(&params(lambda, alpha), theta).unwrap();
        prop_assert!(front.sigma_star > 0.0);
        prop_assert!(front.c_star > 0.0);
        prop_assert!(front.r_star > 0.0);
        prop_assert!(front.a_coef > 0.0 && front.a_coef < 1.0);
        let rel = (front.sigma_star - front.c_star * front.r_star).abs() / front.sigma_star;
        prop_assert!(rel < 1e-14);

        let mut traj = WTrajectory::new(params(lambda, alpha)).unwrap();
        let back = phi(&mut traj, front.sigma_star).unwrap();
        prop_assert!((back - theta).abs() < 1e-8, "phi(sigma*) = {} vs theta = {}", back, theta);
    }

    #[test]
    fn trajectory_channels_stay_ordered(
        lambda in 0.2f64..5.0,
        alpha in 0.1f64..0.9,
    ) {
        let mut traj = WTrajectory::new(params(lambda, alpha)).unwrap();
        traj.extend(-20.0).unwrap();
        let mut prev: Option<flamefront_core::TrajNode> = None;
        for node in traj.nodes() {
            prop_assert!(node.w >= 0.0 && node.wprime <= 0.0);
            prop_assert!(node.k <= node.i * (1.0 + 1e-12), "K must stay below I");
            prop_assert!(node.w <= w_upper_bound(alpha, node.x) * (1.0 + 1e-9) + 1e-300);
            if let Some(p) = prev {
                prop_assert!(node.x < p.x);
                prop_assert!(node.w > p.w);
                prop_assert!(node.i > p.i);
            }
            prev = Some(node);
        }
    }

    #[test]
    fn phi_decreases_and_zeta_increases_pairwise(
        lambda in 0.2f64..5.0,
        alpha in 0.1f64..0.9,
        x in 0.01f64..50.0,
        factor in 1.1f64..8.0,
    ) {
        let mut traj = WTrajectory::new(params(lambda, alpha)).unwrap();
        let (x1, x2) = (x, x * factor);
        let (p1, p2) = (phi(&mut traj, x1).unwrap(), phi(&mut traj, x2).unwrap());
        prop_assert!(p2 < p1, "phi({x2}) = {p2} !< phi({x1}) = {p1}");
        prop_assert!(p1 < 1.0 && p2 > (-x2).exp());
        let (z1, z2) = (zeta(&mut traj, x1).unwrap(), zeta(&mut traj, x2).unwrap());
        prop_assert!(z2 > z1, "zeta({x2}) = {z2} !> zeta({x1}) = {z1}");
    }

    #[test]
    fn kappa_root_solves_its_equation(theta in 0.01f64..0.99) {
        let kappa = kappa_root(theta).unwrap();
        prop_assert!(kappa > 0.0);
        prop_assert!((theta * kappa - 1.0 + (-kappa).exp()).abs() < 1e-12);
        let (c, r) = front_alpha_zero(theta).unwrap();
        prop_assert_eq!(c, r);
        prop_assert!((c * c - kappa).abs() < 1e-11);
    }

    #[test]
    fn seed_follows_its_power_law(
        lambda in 0.2f64..5.0,
        alpha in 0.1f64..0.9,
        eps in 1e-6f64..1e-3,
    ) {
        let p = params(lambda, alpha);
        let (w1, wp1) = series_seed(&p, eps).unwrap();
        let (w2, wp2) = series_seed(&p, 2.0 * eps).unwrap();
        let grow = 2f64.powf(2.0 / (1.0 - alpha));
        prop_assert!((w2 / w1 - grow).abs() < 1e-10 * grow);
        let grow_p = 2f64.powf((1.0 + alpha) / (1.0 - alpha));
        prop_assert!((wp2 / wp1 - grow_p).abs() < 1e-10 * grow_p);
        prop_assert!(w1 > 0.0 && wp1 < 0.0);
    }
}
