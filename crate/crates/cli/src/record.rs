//! One sweep/solve record and its serializations. Column order is fixed;
//! numbers print with 12 significant digits so outputs are reproducible
//! byte for byte.

use flamefront_core::ResidualReport;
use serde::Serialize;

pub const CSV_HEADER: &str = "theta,lambda,alpha,sigma_star,c_star,r_star,a_coef,\
res_ign,res_flux,res_ode,res_c_identity,res_theta_identity,wall_time_ms";

#[derive(Debug, Clone, Serialize)]
pub struct SweepRecord {
    pub theta: f64,
    pub lambda: f64,
    pub alpha: f64,
    pub sigma_star: f64,
    pub c_star: f64,
    pub r_star: f64,
    pub a_coef: f64,
    pub res_ign: f64,
    pub res_flux: f64,
    pub res_ode: f64,
    pub res_c_identity: f64,
    pub res_theta_identity: f64,
    pub wall_time_ms: f64,
}

/// 12-significant-digit scientific formatting shared by every column.
pub fn sig(v: f64) -> String {
    format!("{v:.11e}")
}

impl SweepRecord {
    /// Placeholder for a failed tuple: NaN outputs, infinite residuals.
    pub fn failed(theta: f64, lambda: f64, alpha: f64, wall_time_ms: f64) -> Self {
        SweepRecord {
            theta,
            lambda,
            alpha,
            sigma_star: f64::NAN,
            c_star: f64::NAN,
            r_star: f64::NAN,
            a_coef: f64::NAN,
            res_ign: f64::INFINITY,
            res_flux: f64::INFINITY,
            res_ode: f64::INFINITY,
            res_c_identity: f64::INFINITY,
            res_theta_identity: f64::INFINITY,
            wall_time_ms,
        }
    }

    pub fn max_residual(&self) -> f64 {
        self.res_ign
            .max(self.res_flux)
            .max(self.res_ode)
            .max(self.res_c_identity)
            .max(self.res_theta_identity)
    }

    pub fn csv_row(&self) -> String {
        [
            self.theta,
            self.lambda,
            self.alpha,
            self.sigma_star,
            self.c_star,
            self.r_star,
            self.a_coef,
            self.res_ign,
            self.res_flux,
            self.res_ode,
            self.res_c_identity,
            self.res_theta_identity,
            self.wall_time_ms,
        ]
        .map(sig)
        .join(",")
    }

    pub fn set_residuals(&mut self, report: &ResidualReport) {
        self.res_ign = report.ignition;
        self.res_flux = report.flux;
        self.res_ode = report.ode;
        self.res_c_identity = report.c_identity;
        self.res_theta_identity = report.theta_identity;
    }
}
