//! Self-contained numerical kernel.
//!
//! Everything downstream builds on four primitives:
//!
//! * [`find_root`] — Brent's method on a sign-changing bracket;
//! * [`integrate_ode`] — adaptive Dormand-Prince 5(4) with an embedded error
//!   estimate ([`rk4_fixed`] is kept as an independent cross-check);
//! * [`quad_adaptive`] — adaptive Gauss-Kronrod 15(7) quadrature;
//! * [`Dual2`] — forward-mode first/second derivatives through closed-form
//!   expressions, including the signed power `|x|^{s-1} x` that the
//!   p-Laplacian flux is made of.
//!
//! All operations are pure functions of their inputs.

mod brent;
mod dual;
mod interp;
mod ode;
mod quad;

pub use brent::{find_root, Bracket};
pub use dual::{dual2_eval, Dual2};
pub use interp::MonotoneCubic;
pub use ode::{integrate_ode, rk4_fixed, OdeProblem, Trajectory};
pub use quad::quad_adaptive;

use std::fmt;

/// Errors raised by the numerical kernel.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Root bracket does not satisfy the sign condition f(lo)·f(hi) ≤ 0.
    InvalidBracket { lo: f64, hi: f64, f_lo: f64, f_hi: f64 },
    /// Adaptive step size collapsed below the machine-relative floor.
    StepUnderflow { t: f64, h: f64 },
    /// Step budget of the ODE integrator exhausted.
    MaxStepsExceeded { t: f64 },
    /// Quadrature failed to reach the tolerance within the refinement budget.
    MaxRefinementExceeded { a: f64, b: f64, err: f64 },
    /// Evaluation outside the mathematical domain (log of a non-positive
    /// value, non-finite state, ...).
    Domain(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidBracket { lo, hi, f_lo, f_hi } => write!(
                f,
                "invalid bracket [{lo}, {hi}]: f(lo)={f_lo}, f(hi)={f_hi} do not change sign"
            ),
            Error::StepUnderflow { t, h } => {
                write!(f, "step size underflow at t={t} (h={h})")
            }
            Error::MaxStepsExceeded { t } => write!(f, "maximum number of steps exceeded at t={t}"),
            Error::MaxRefinementExceeded { a, b, err } => write!(
                f,
                "quadrature refinement budget exhausted on [{a}, {b}] (error estimate {err:e})"
            ),
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;

/// Least-squares slope of `y` against `x`.
///
/// Used throughout for fitting growth and decay exponents on log-transformed
/// data; returns `(slope, intercept)`.
pub fn linear_fit(x: &[f64], y: &[f64]) -> (f64, f64) {
    assert_eq!(x.len(), y.len());
    assert!(x.len() >= 2, "need at least two points for a linear fit");
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for (&xi, &yi) in x.iter().zip(y) {
        sxx += (xi - mx) * (xi - mx);
        sxy += (xi - mx) * (yi - my);
    }
    let slope = sxy / sxx;
    (slope, my - slope * mx)
}
