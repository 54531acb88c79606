//! Composite Gauss-Legendre quadrature on geometrically graded panels.
//!
//! The validation integrands behave like s^q with fractional q near the
//! trailing interface, so panels are halved toward that endpoint and the
//! remaining sliver is handled by a closed-form tail supplied by the caller.

#[allow(clippy::excessive_precision)]
const GL16_X: [f64; 8] = [
    0.09501250983763744,
    0.28160355077925891,
    0.45801677765722739,
    0.61787624440264375,
    0.75540440835500303,
    0.86563120238783174,
    0.94457502307323258,
    0.98940093499164993,
];

#[allow(clippy::excessive_precision)]
const GL16_W: [f64; 8] = [
    0.18945061045506859,
    0.18260341504492360,
    0.16915651939500262,
    0.14959598881657676,
    0.12462897125553403,
    0.09515851168249259,
    0.06225352393864771,
    0.02715245941175404,
];

/// 16-point Gauss-Legendre rule on `[a, b]`.
pub(crate) fn gauss16<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> f64 {
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut acc = 0.0;
    for i in 0..8 {
        acc += GL16_W[i] * (f(mid - half * GL16_X[i]) + f(mid + half * GL16_X[i]));
    }
    acc * half
}

/// Integrates `f` over `(cut, b]` with `levels` panels halving toward zero;
/// returns the sum and the cut point `b * 2^-levels` below which the caller
/// must supply an analytic tail.
pub(crate) fn graded_toward_zero<F: Fn(f64) -> f64>(f: &F, b: f64, levels: usize) -> (f64, f64) {
    let mut total = 0.0;
    let mut hi = b;
    for _ in 0..levels {
        let lo = 0.5 * hi;
        total += gauss16(f, lo, hi);
        hi = lo;
    }
    (total, hi)
}
