//! Adaptive Dormand-Prince 5(4) stepper with 4th-order dense output.
//!
//! One-step explicit method with an embedded error estimate; the continuous
//! extension interpolates value and slope at both step ends, so the global
//! dense solution is C^1.

use crate::error::{Error, Result};

const A21: f64 = 0.2;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const C2: f64 = 0.2;
const C3: f64 = 0.3;
const C4: f64 = 0.8;
const C5: f64 = 8.0 / 9.0;

const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;

const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

const D1: f64 = -12715105075.0 / 11282082432.0;
const D3: f64 = 87487479700.0 / 32700410799.0;
const D4: f64 = -10690763975.0 / 1880347072.0;
const D5: f64 = 701980252875.0 / 199316789632.0;
const D6: f64 = -1453857185.0 / 822651844.0;
const D7: f64 = 69997945.0 / 29380423.0;

const SAFETY: f64 = 0.9;
const FAC_MIN: f64 = 0.2;
const FAC_MAX: f64 = 10.0;

/// Continuous extension of one accepted step on `[s0, s0 + h]`.
#[derive(Debug, Clone)]
pub(crate) struct DenseSeg<const N: usize> {
    pub s0: f64,
    pub h: f64,
    cont: [[f64; N]; 5],
}

impl<const N: usize> DenseSeg<N> {
    pub fn end(&self) -> f64 {
        self.s0 + self.h
    }

    #[allow(clippy::needless_range_loop)]
    pub fn eval(&self, s: f64) -> [f64; N] {
        let t = ((s - self.s0) / self.h).clamp(0.0, 1.0);
        let t1 = 1.0 - t;
        let mut out = [0.0; N];
        for i in 0..N {
            let c = [
                self.cont[0][i],
                self.cont[1][i],
                self.cont[2][i],
                self.cont[3][i],
                self.cont[4][i],
            ];
            out[i] = c[0] + t * (c[1] + t1 * (c[2] + t * (c[3] + t1 * c[4])));
        }
        out
    }
}

/// Integration controls; the error norm is a mixed absolute/relative RMS.
pub(crate) struct Dopri5 {
    pub rtol: f64,
    pub atol: f64,
    pub max_steps: usize,
}

impl Dopri5 {
    pub fn new(rtol: f64, atol: f64) -> Self {
        Dopri5 {
            rtol,
            atol,
            max_steps: 10_000_000,
        }
    }

    /// Integrates `y' = f(s, y)` from `(s0, y0)` to `s_end > s0`, invoking
    /// `on_accept(s1, y1, seg)` after every accepted step. Returns the final
    /// state and a step-size suggestion for a follow-up call.
    pub fn integrate<const N: usize, F, G>(
        &self,
        f: F,
        s0: f64,
        y0: [f64; N],
        s_end: f64,
        h0: f64,
        mut on_accept: G,
    ) -> Result<([f64; N], f64)>
    where
        F: Fn(f64, &[f64; N]) -> [f64; N],
        G: FnMut(f64, &[f64; N], DenseSeg<N>) -> Result<()>,
    {
        debug_assert!(s_end > s0);
        let mut s = s0;
        let mut y = y0;
        let mut k1 = f(s, &y);
        let mut h = h0.min(s_end - s0).max(f64::MIN_POSITIVE);
        let mut rejected = false;

        for _ in 0..self.max_steps {
            if s >= s_end {
                return Ok((y, h));
            }
            let last = h >= s_end - s;
            if last {
                h = s_end - s;
            }
            if h < 16.0 * f64::EPSILON * s.abs().max(1.0) {
                return Err(Error::StepSizeUnderflow { x: -s });
            }

            let ys = add_scaled(&y, h, &[(A21, &k1)]);
            let k2 = f(s + C2 * h, &ys);
            let ys = add_scaled(&y, h, &[(A31, &k1), (A32, &k2)]);
            let k3 = f(s + C3 * h, &ys);
            let ys = add_scaled(&y, h, &[(A41, &k1), (A42, &k2), (A43, &k3)]);
            let k4 = f(s + C4 * h, &ys);
            let ys = add_scaled(&y, h, &[(A51, &k1), (A52, &k2), (A53, &k3), (A54, &k4)]);
            let k5 = f(s + C5 * h, &ys);
            let ys = add_scaled(
                &y,
                h,
                &[(A61, &k1), (A62, &k2), (A63, &k3), (A64, &k4), (A65, &k5)],
            );
            let k6 = f(s + h, &ys);
            let y_new = add_scaled(
                &y,
                h,
                &[(B1, &k1), (B3, &k3), (B4, &k4), (B5, &k5), (B6, &k6)],
            );
            let k7 = f(s + h, &y_new);

            // Embedded 4th-order error estimate.
            let mut err_sq = 0.0;
            let mut finite = y_new.iter().all(|v| v.is_finite());
            if finite {
                for i in 0..N {
                    let e = h
                        * (E1 * k1[i]
                            + E3 * k3[i]
                            + E4 * k4[i]
                            + E5 * k5[i]
                            + E6 * k6[i]
                            + E7 * k7[i]);
                    let scale = self.atol + self.rtol * y[i].abs().max(y_new[i].abs());
                    err_sq += (e / scale) * (e / scale);
                    finite &= e.is_finite();
                }
            }
            let err = if finite {
                (err_sq / N as f64).sqrt()
            } else {
                f64::INFINITY
            };

            if err <= 1.0 {
                let mut cont = [[0.0; N]; 5];
                for i in 0..N {
                    let ydiff = y_new[i] - y[i];
                    let bspl = h * k1[i] - ydiff;
                    cont[0][i] = y[i];
                    cont[1][i] = ydiff;
                    cont[2][i] = bspl;
                    cont[3][i] = ydiff - h * k7[i] - bspl;
                    cont[4][i] = h
                        * (D1 * k1[i]
                            + D3 * k3[i]
                            + D4 * k4[i]
                            + D5 * k5[i]
                            + D6 * k6[i]
                            + D7 * k7[i]);
                }
                let seg = DenseSeg { s0: s, h, cont };
                let s_new = if last { s_end } else { s + h };
                on_accept(s_new, &y_new, seg)?;

                s = s_new;
                y = y_new;
                k1 = k7; // FSAL
                let fac = if err == 0.0 {
                    FAC_MAX
                } else {
                    (SAFETY * err.powf(-0.2)).clamp(FAC_MIN, if rejected { 1.0 } else { FAC_MAX })
                };
                h *= fac;
                rejected = false;
            } else {
                // Rejected: shrink and retry from the same state.
                let fac = if err.is_finite() {
                    (SAFETY * err.powf(-0.2)).clamp(FAC_MIN, 1.0)
                } else {
                    FAC_MIN
                };
                h *= fac;
                rejected = true;
            }
        }
        Err(Error::MaxStepsExceeded { x: -s })
    }
}

fn add_scaled<const N: usize>(y: &[f64; N], h: f64, terms: &[(f64, &[f64; N])]) -> [f64; N] {
    let mut out = *y;
    for (coef, k) in terms {
        for i in 0..N {
            out[i] += h * coef * k[i];
        }
    }
    out
}
