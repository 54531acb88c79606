//! Phase-plane view of the profile: the planar system (q, p) = (w, w'),
//! its polar representation, and the monotone-angle diagnostic.
//!
//! The trajectory lives in the quadrant q >= 0, p <= 0, so the polar angle
//! stays in [-pi/2, 0]; along the true solution it is non-increasing in t,
//! which is the phase-plane face of the concavity bound on w. The check is
//! performed, never assumed.

use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};
use crate::trajectory::WTrajectory;

#[derive(Debug, Clone, Copy)]
pub struct PolarRow {
    pub t: f64,
    pub q: f64,
    pub p: f64,
    pub r: f64,
    pub theta_angle: f64,
}

/// Polar trace of the profile, rows ordered by increasing t (toward the
/// origin equilibrium at t = 0).
#[derive(Debug, Clone)]
pub struct PolarTrace {
    pub rows: Vec<PolarRow>,
}

/// Largest positive increment of the polar angle along the trace.
#[derive(Debug, Clone, Copy)]
pub struct AngleReport {
    pub max_positive_increment: f64,
    /// Interval (t_before, t_after) where the worst increment occurs.
    pub location: Option<(f64, f64)>,
    /// Number of strictly positive increments.
    pub positive_count: usize,
}

/// Maps every trajectory node (x, w, w') to polar coordinates, appending
/// the terminal equilibrium at t = 0 with its one-sided limit angle -pi/2.
pub fn to_polar(traj: &WTrajectory) -> Result<PolarTrace> {
    if traj.node_count() < 2 {
        return Err(Error::DegenerateTrace {
            message: format!("need at least 2 nodes, have {}", traj.node_count()),
        });
    }
    let mut rows = Vec::with_capacity(traj.node_count() + 1);
    for node in traj.nodes() {
        let q = node.w;
        let p = node.wprime;
        if !(q.is_finite() && p.is_finite()) {
            return Err(Error::DegenerateTrace {
                message: format!("node at x = {:e} outside f64 range", node.x),
            });
        }
        if q == 0.0 && p == 0.0 {
            return Err(Error::DegenerateTrace {
                message: format!("interior node at x = {:e} sits on the equilibrium", node.x),
            });
        }
        rows.push(PolarRow {
            t: node.x,
            q,
            p,
            r: q.hypot(p),
            theta_angle: p.atan2(q),
        });
    }
    // Nodes come ordered by decreasing x; the trace runs forward in t.
    rows.reverse();
    rows.push(PolarRow {
        t: 0.0,
        q: 0.0,
        p: 0.0,
        r: 0.0,
        theta_angle: -FRAC_PI_2,
    });
    Ok(PolarTrace { rows })
}

/// Scans successive angle differences in t and reports the largest
/// positive one; a compliant trajectory stays at or below roundoff.
pub fn angle_monotonicity_report(trace: &PolarTrace) -> AngleReport {
    let mut report = AngleReport {
        max_positive_increment: 0.0,
        location: None,
        positive_count: 0,
    };
    for pair in trace.rows.windows(2) {
        let d = pair[1].theta_angle - pair[0].theta_angle;
        if d > 0.0 {
            report.positive_count += 1;
            if d > report.max_positive_increment {
                report.max_positive_increment = d;
                report.location = Some((pair[0].t, pair[1].t));
            }
        }
    }
    report
}
