//! The reactant profile w on the half line x <= 0.
//!
//! w solves the degenerate problem
//!     Lambda w'' - w' - w^alpha = 0,   w(0) = w'(0) = 0,   w > 0 on x < 0,
//! and is grown leftwards from a series seed at x = -eps. Alongside w the
//! integrator carries the two running quadratures used downstream,
//!     I(x) = int_{-x}^0 w^alpha(s) ds,
//!     K(x) = int_{-x}^0 w^alpha(s) e^{-(s+x)} ds,
//! the latter via dK/ds = w^alpha - K so no factor e^{s} is ever formed.
//!
//! The marching state is stored in logarithmic variables
//!     z = [ln w, (dW/ds)/W, ln I, ln K]   (W(s) = w(-s), s = -x >= 0)
//! because the linear values span far beyond f64 range when alpha is close
//! to 1 (ln w reaches the order of -2000 before the profile turns over).
//! Ratios such as phi = K/I stay well conditioned as exp of differences.

use crate::dopri::{DenseSeg, Dopri5};
use crate::error::{Error, Result};
use crate::params::{ModelParams, SeedOffset, TOL_INV};

/// One sampled point of the profile in linear variables. `w` and `wprime`
/// can underflow to zero (or overflow) for extreme parameters even though
/// the underlying log state is finite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajNode {
    pub x: f64,
    pub w: f64,
    pub wprime: f64,
    /// Running integral of w^alpha over [x, 0].
    pub i: f64,
    /// Running exponentially weighted integral (numerator of phi).
    pub k: f64,
}

struct RawNode {
    s: f64,
    z: [f64; 4],
}

/// Dense, extendable numerical representation of w, w' and the running
/// integrals on `[reach, 0]`. Extension is append-only: once a node is
/// accepted it is never modified, so repeated evaluations during root
/// finding reuse all prior work.
pub struct WTrajectory {
    params: ModelParams,
    eps: f64,
    ln_c: f64,
    p: f64,
    q: f64,
    nodes: Vec<RawNode>,
    segs: Vec<DenseSeg<4>>,
    h_next: f64,
}

/// Leading-order series value of (w, w') at x = -eps.
///
/// w(-eps) = C eps^{2/(1-alpha)} with C = [(1-alpha)^2 / (2 Lambda (1+alpha))]^{1/(1-alpha)};
/// the derivative is the term-wise x-derivative of the same monomial.
/// For alpha near 1 the returned linear values may underflow to zero.
pub fn series_seed(params: &ModelParams, eps: f64) -> Result<(f64, f64)> {
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(Error::InvalidParameter {
            name: "eps",
            message: format!("series offset must be positive, got {eps}"),
        });
    }
    let p = 2.0 / (1.0 - params.alpha());
    if !p.is_finite() {
        return Err(Error::InvalidParameter {
            name: "alpha",
            message: "exponent 2/(1-alpha) overflows".to_string(),
        });
    }
    let ln_c = series_ln_c(params);
    let w = (ln_c + p * eps.ln()).exp();
    let wprime = -(ln_c + p.ln() + (p - 1.0) * eps.ln()).exp();
    if w.is_nan() || wprime.is_nan() {
        return Err(Error::InvalidParameter {
            name: "alpha",
            message: "series amplitude is not representable".to_string(),
        });
    }
    Ok((w, wprime))
}

fn series_ln_c(params: &ModelParams) -> f64 {
    let a = params.alpha();
    (2.0 * (1.0 - a).ln() - (2.0 * params.lambda() * (1.0 + a)).ln()) / (1.0 - a)
}

impl WTrajectory {
    /// Seeds a trajectory at the resolved offset. With `SeedOffset::Auto`
    /// the offset is halved until two successive seeds agree at the
    /// x = -1 checkpoint to 10x the relative tolerance.
    pub fn new(params: ModelParams) -> Result<Self> {
        let eps = match params.seed_offset() {
            SeedOffset::Explicit(e) => e,
            SeedOffset::Auto => auto_eps(&params)?,
        };
        Self::with_eps(params, eps)
    }

    fn with_eps(params: ModelParams, eps: f64) -> Result<Self> {
        if !(eps > 0.0 && eps.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "seed_offset",
                message: format!("seed offset must be positive, got {eps}"),
            });
        }
        let a = params.alpha();
        let p = 2.0 / (1.0 - a);
        let q = a * p;
        let ln_c = series_ln_c(&params);
        let z = series_log_state(ln_c, p, q, eps);
        Ok(WTrajectory {
            params,
            eps,
            ln_c,
            p,
            q,
            nodes: vec![RawNode { s: eps, z }],
            segs: Vec::new(),
            h_next: eps * 1e-2,
        })
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    /// The seed offset actually in use (after auto selection).
    pub fn seed_offset(&self) -> f64 {
        self.eps
    }

    /// Leftmost computed x.
    pub fn reach(&self) -> f64 {
        -self.s_end()
    }

    fn s_end(&self) -> f64 {
        self.nodes.last().expect("at least the seed node").s
    }

    /// Accepted nodes in linear variables, ordered by decreasing x
    /// (seed first, deepest point last).
    pub fn nodes(&self) -> impl Iterator<Item = TrajNode> + '_ {
        self.nodes.iter().map(|n| to_linear(n.s, &n.z))
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// Extends the trajectory so that `reach <= x_target` by adaptive
    /// integration in the marching variable s = -x. Already-covered
    /// targets are a no-op; existing nodes are never modified.
    pub fn extend(&mut self, x_target: f64) -> Result<()> {
        if !x_target.is_finite() {
            return Err(Error::InvalidParameter {
                name: "x_target",
                message: format!("extension target must be finite, got {x_target}"),
            });
        }
        let s_target = -x_target;
        if s_target <= self.s_end() {
            return Ok(());
        }

        let lambda = self.params.lambda();
        let alpha = self.params.alpha();
        let rhs = move |_s: f64, z: &[f64; 4]| -> [f64; 4] {
            let [l, m, j, k] = *z;
            [
                m,
                (-m + ((alpha - 1.0) * l).exp()) / lambda - m * m,
                (alpha * l - j).exp(),
                (alpha * l - k).exp() - 1.0,
            ]
        };

        let solver = Dopri5::new(self.params.rel_tol(), self.params.abs_tol());
        let s0 = self.s_end();
        let z0 = self.nodes.last().unwrap().z;
        let nodes = &mut self.nodes;
        let segs = &mut self.segs;
        let (_, h_next) = solver.integrate(rhs, s0, z0, s_target, self.h_next, |s1, z1, seg| {
            node_checks(lambda, alpha, s1, z1)?;
            nodes.push(RawNode { s: s1, z: *z1 });
            segs.push(seg);
            Ok(())
        })?;
        self.h_next = h_next;
        Ok(())
    }

    /// Interpolated (w, w', I, K) at x in `[reach, 0]`. Node values are
    /// returned exactly; between nodes the integrator's dense output is
    /// used, and on `(-eps, 0]` the seeding series.
    pub fn eval(&self, x: f64) -> Result<TrajNode> {
        if x == 0.0 {
            return Ok(TrajNode {
                x: 0.0,
                w: 0.0,
                wprime: 0.0,
                i: 0.0,
                k: 0.0,
            });
        }
        let z = self.eval_log(x)?;
        Ok(to_linear(-x, &z))
    }

    /// Log-state [ln w, (dW/ds)/W, ln I, ln K] at x in `[reach, 0)`.
    pub(crate) fn eval_log(&self, x: f64) -> Result<[f64; 4]> {
        let s = -x;
        if !(s > 0.0) || s > self.s_end() {
            return Err(Error::OutOfDomain {
                x,
                reach: self.reach(),
            });
        }
        if s < self.eps {
            return Ok(series_log_state(self.ln_c, self.p, self.q, s));
        }
        match self
            .nodes
            .binary_search_by(|n| n.s.partial_cmp(&s).unwrap())
        {
            Ok(idx) => Ok(self.nodes[idx].z),
            Err(idx) => {
                // s lies strictly between nodes[idx-1].s and nodes[idx].s;
                // segment idx-1 spans exactly that interval.
                let seg = &self.segs[idx - 1];
                debug_assert!(s >= seg.s0 && s <= seg.end() * (1.0 + 1e-12));
                Ok(seg.eval(s))
            }
        }
    }
}

fn to_linear(s: f64, z: &[f64; 4]) -> TrajNode {
    let [l, m, j, k] = *z;
    // wprime forms exp(ln m + ln w) so a huge slope times a tiny w does
    // not round through zero.
    let wprime = if m > 0.0 { -(l + m.ln()).exp() } else { 0.0 };
    TrajNode {
        x: -s,
        w: l.exp(),
        wprime,
        i: j.exp(),
        k: k.exp(),
    }
}

// Seeding series in log variables: ln w = ln C + p ln s, and the induced
// leading-order quadratures ln I = alpha ln w + ln(s/(q+1)),
// K = I e^{-s} (1 + s(q+1)/(q+2)).
fn series_log_state(ln_c: f64, p: f64, q: f64, s: f64) -> [f64; 4] {
    let l = ln_c + p * s.ln();
    let m = p / s;
    let j = (q / p) * l + (s / (q + 1.0)).ln();
    let kap = j - s + (s * (q + 1.0) / (q + 2.0)).ln_1p();
    [l, m, j, kap]
}

fn node_checks(lambda: f64, alpha: f64, s: f64, z: &[f64; 4]) -> Result<()> {
    let [l, m, j, k] = *z;
    if !(l.is_finite() && m.is_finite() && j.is_finite() && k.is_finite()) {
        return Err(Error::InvariantBreach {
            x: -s,
            message: "non-finite state".to_string(),
        });
    }
    // w decreasing on the half line: the log-slope must stay nonnegative.
    if m < -TOL_INV {
        return Err(Error::InvariantBreach {
            x: -s,
            message: format!("w' positive beyond tolerance (log-slope {m:e})"),
        });
    }
    // Concavity ratio (w')^2 - w w'' >= 0, checked as
    // w^2 * [m^2 + (m - W^{alpha-1})/Lambda] >= -TOL_INV in log form.
    let d = m * m + (m - ((alpha - 1.0) * l).exp()) / lambda;
    if d < 0.0 && (-d).ln() + 2.0 * l > TOL_INV.ln() {
        return Err(Error::InvariantBreach {
            x: -s,
            message: format!("concavity ratio violated (scaled defect {d:e})"),
        });
    }
    // Upper bound w <= [(1-alpha) s]^{1/(1-alpha)} + TOL_INV.
    let bound_l = ((1.0 - alpha) * s).ln() / (1.0 - alpha);
    let slack = if bound_l < 700.0 {
        (TOL_INV * (-bound_l).exp()).ln_1p()
    } else {
        0.0
    };
    if l > bound_l + slack + 1e-12 {
        return Err(Error::InvariantBreach {
            x: -s,
            message: format!("upper bound exceeded (ln w {l:e} > {bound_l:e})"),
        });
    }
    Ok(())
}

fn checkpoint_ln_w(params: &ModelParams, eps: f64) -> Result<f64> {
    // Tighter tolerances than the caller's so integrator noise does not
    // mask the seed-truncation differences being measured.
    let tight = params
        .clone()
        .with_tolerances(
            (params.rel_tol() * 1e-2).max(1e-13),
            (params.abs_tol() * 1e-2).max(1e-15),
        )?
        .with_seed_offset(SeedOffset::Explicit(eps))?;
    let mut traj = WTrajectory::with_eps(tight, eps)?;
    traj.extend(-1.0)?;
    Ok(traj.eval_log(-1.0)?[0])
}

fn auto_eps(params: &ModelParams) -> Result<f64> {
    let tol = 10.0 * params.rel_tol();
    let mut eps = 1e-2 * params.lambda().min(1.0);
    let mut prev = checkpoint_ln_w(params, eps)?;
    for _ in 0..40 {
        let next = eps / 2.0;
        let cur = checkpoint_ln_w(params, next)?;
        if (cur - prev).abs() <= tol {
            return Ok(next);
        }
        prev = cur;
        eps = next;
    }
    Err(Error::InvariantBreach {
        x: -eps,
        message: "seed-offset selection did not converge".to_string(),
    })
}
