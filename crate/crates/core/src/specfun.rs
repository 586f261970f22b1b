//! The generalized sine function `S_p` and its companions.
//!
//! `S_p` is the solution of the first-order problem
//!
//! ```text
//! |w'|^p + |w|^p/(p-1) = 1,    w(0) = 0,  w'(0) = 1,
//! ```
//!
//! increasing up to its maximum `(p-1)^{1/p}` at `ψ = π_p/2`, extended to all
//! of `R` by even reflection about `π_p/2`, odd reflection on `(π_p, 2π_p]`
//! and `2π_p`-periodicity. For `p = 2` it reduces to the ordinary sine with
//! `π_2 = π`.
//!
//! The quarter branch is represented by numerically inverting the monotone map
//!
//! ```text
//! w ↦ ψ(w) = ∫_0^w dt / (1 - t^p/(p-1))^{1/p},
//! ```
//!
//! after the endpoint desingularization `t = w_max (1 - s^{p/(p-1)})`, which
//! makes the integrand bounded up to the corner. The derivative is always
//! recovered from the first integral rather than by differentiating the
//! interpolation table, so the defining identity holds to rounding everywhere.

use crate::numerics::{self, find_root, quad_adaptive, Bracket, MonotoneCubic};
use std::f64::consts::PI;
use std::fmt;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Argument outside the admissible range (p ≤ 1, ...).
    Domain(String),
    /// Quadrature for the quarter-period table failed or the table is
    /// inconsistent with the closed form of π_p.
    Build(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(m) => write!(f, "domain error: {m}"),
            Error::Build(m) => write!(f, "generalized sine build failed: {m}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;

/// Closed form of the half period:
/// `π_p = 2 (p-1)^{1/p} π / (p sin(π/p))`.
pub fn pi_p(p: f64) -> Result<f64> {
    if !(p > 1.0) {
        return Err(Error::Domain(format!("pi_p requires p > 1 (got {p})")));
    }
    Ok(2.0 * (p - 1.0).powf(1.0 / p) * PI / (p * (PI / p).sin()))
}

/// Integrand of the desingularized quarter-period integral in the variable
/// `s = (1 - w/w_max)^{(p-1)/p}`; bounded on `[0, 1]`.
fn desingularized_integrand(p: f64, w_max: f64, s: f64) -> f64 {
    if s <= 0.0 {
        return w_max * (p / (p - 1.0)) * p.powf(-1.0 / p);
    }
    let sigma = s.powf(p / (p - 1.0));
    // 1 - (1-σ)^p, evaluated stably for small σ
    let core = if sigma < 0.5 {
        -f64::exp_m1(p * f64::ln_1p(-sigma))
    } else {
        1.0 - (1.0 - sigma).powf(p)
    };
    w_max * (p / (p - 1.0)) * s.powf(1.0 / (p - 1.0)) * core.powf(-1.0 / p)
}

/// Half period via adaptive quadrature of the defining integral; the
/// independent counterpart of [`pi_p`].
pub fn pi_p_quadrature(p: f64, tol: f64) -> Result<f64> {
    if !(p > 1.0) {
        return Err(Error::Domain(format!("pi_p requires p > 1 (got {p})")));
    }
    let w_max = (p - 1.0).powf(1.0 / p);
    let half = quad_adaptive(|s| desingularized_integrand(p, w_max, s), 0.0, 1.0, tol)
        .map_err(|e| Error::Build(e.to_string()))?;
    Ok(2.0 * half)
}

/// Tabulated quarter branch of `S_p` plus everything needed to evaluate the
/// function and its derivative on all of `R`.
///
/// Immutable after construction; shared concurrent reads are safe.
#[derive(Debug, Clone)]
pub struct GenSine {
    pub p: f64,
    /// `π_p / 2`.
    pub half_period: f64,
    /// Maximum of `S_p`, equal to `(p-1)^{1/p}`.
    pub w_max: f64,
    /// Strictly increasing map `ψ ↦ S_p(ψ)` on `[0, π_p/2]`.
    forward: MonotoneCubic,
}

/// Builds the quarter-period table of `S_p` with `tol` controlling the
/// node quadrature and the final cross-validation against the closed form.
pub fn build_gensine(p: f64, tol: f64) -> Result<GenSine> {
    if !(p > 1.0) {
        return Err(Error::Domain(format!("generalized sine requires p > 1 (got {p})")));
    }
    let n = 4096usize;
    let w_max = (p - 1.0).powf(1.0 / p);
    let e = (p - 1.0) / p;

    // Nodes w_j = w_max sin²(π j / 2n) cluster quadratically at both corners,
    // which keeps the cubic accurate where S_p is only C^{1,α}.
    let mut w_nodes = Vec::with_capacity(n + 1);
    let mut s_nodes = Vec::with_capacity(n + 1);
    for j in 0..=n {
        let phi = 0.5 * PI * j as f64 / n as f64;
        let (sin_phi, cos_phi) = phi.sin_cos();
        w_nodes.push(w_max * sin_phi * sin_phi);
        // s = (1 - w/w_max)^{(p-1)/p} = cos(φ)^{2(p-1)/p}
        s_nodes.push((cos_phi * cos_phi).powf(e));
    }
    w_nodes[n] = w_max;
    s_nodes[n] = 0.0;

    // ψ_j accumulated over the desingularized variable (s decreases in j).
    let cell_tol = (tol.max(1e-15) / n as f64).max(1e-17);
    let mut psi_nodes = vec![0.0f64; n + 1];
    for j in 0..n {
        let (s_hi, s_lo) = (s_nodes[j], s_nodes[j + 1]);
        let inc = quad_adaptive(|s| desingularized_integrand(p, w_max, s), s_lo, s_hi, cell_tol)
            .map_err(|e| Error::Build(format!("node quadrature: {e}")))?;
        psi_nodes[j + 1] = psi_nodes[j] + inc;
    }
    let half_period_table = psi_nodes[n];
    let half_period = 0.5 * pi_p(p)?;
    let check_tol = tol.max(1e-10) * half_period;
    if (half_period_table - half_period).abs() > check_tol {
        return Err(Error::Build(format!(
            "quarter-period table total {half_period_table} disagrees with closed form {half_period}"
        )));
    }

    // Exact slopes dS_p/dψ = (1 - w^p/(p-1))^{1/p} at the nodes.
    let slopes: Vec<f64> = w_nodes
        .iter()
        .map(|&w| (1.0 - (w / w_max).powf(p)).max(0.0).powf(1.0 / p))
        .collect();
    psi_nodes[n] = half_period; // pin the corner to the closed form
    let forward = MonotoneCubic::with_slopes(psi_nodes, w_nodes, slopes);

    Ok(GenSine { p, half_period, w_max, forward })
}

impl GenSine {
    /// Full period `2π_p`.
    pub fn period(&self) -> f64 {
        4.0 * self.half_period
    }

    /// `π_p`.
    pub fn pi_p(&self) -> f64 {
        2.0 * self.half_period
    }

    /// `S_p(ψ)` and `S_p'(ψ)` for any real `ψ`.
    ///
    /// The value comes from the quarter table plus the reflection rules; the
    /// derivative from the first integral with the sign of the quadrant, so
    /// `|S'|^p + S^p/(p-1) = 1` holds to rounding.
    pub fn eval(&self, psi: f64) -> (f64, f64) {
        let h = self.half_period;
        let mut x = psi.rem_euclid(4.0 * h);
        // quadrant index 0..3
        let quad = (x / h).floor().min(3.0) as usize;
        x -= quad as f64 * h;
        let (s_abs, sign_s, sign_d) = match quad {
            0 => (self.forward.eval(x), 1.0, 1.0),
            1 => (self.forward.eval(h - x), 1.0, -1.0),
            2 => (self.forward.eval(x), -1.0, -1.0),
            _ => (self.forward.eval(h - x), -1.0, 1.0),
        };
        let d = self.derivative_magnitude(s_abs);
        (sign_s * s_abs, sign_d * d)
    }

    /// `|S_p'|` recovered from the first integral given `|S_p|`.
    pub fn derivative_magnitude(&self, s_abs: f64) -> f64 {
        (1.0 - (s_abs / self.w_max).abs().powf(self.p)).max(0.0).powf(1.0 / self.p)
    }

    /// Inverse of the increasing quarter branch: the unique `ψ ∈ [0, π_p/2]`
    /// with `S_p(ψ) = w`.
    pub fn inverse_quarter(&self, w: f64) -> Result<f64> {
        if !(0.0..=self.w_max * (1.0 + 1e-12)).contains(&w) {
            return Err(Error::Domain(format!(
                "inverse argument {w} outside [0, {}]",
                self.w_max
            )));
        }
        let w = w.min(self.w_max);
        if w == 0.0 {
            return Ok(0.0);
        }
        if w == self.w_max {
            return Ok(self.half_period);
        }
        let f = |psi: f64| self.forward.eval(psi) - w;
        let b = Bracket::with_values(0.0, self.half_period, -w, self.w_max - w)
            .map_err(|e| Error::Domain(e.to_string()))?;
        find_root(f, &b, 1e-15).map_err(|e| Error::Domain(e.to_string()))
    }

    /// The diagonal angle `(π/4)_p`: the unique `ψ ∈ (0, π_p/2)` where
    /// `S_p(ψ) = S_p'(ψ) = ((p-1)/p)^{1/p}`.
    pub fn quarter_pi(&self) -> f64 {
        let target = ((self.p - 1.0) / self.p).powf(1.0 / self.p);
        self.inverse_quarter(target).expect("diagonal value is interior")
    }

    /// The complementary angle `(3π/4)_p = π_p - (π/4)_p`, the relevant
    /// stationary angle when `p < N`.
    pub fn three_quarter_pi(&self) -> f64 {
        self.pi_p() - self.quarter_pi()
    }
}

/// Convenience wrapper matching the operation signature `(S, S')`.
pub fn eval_sp(gs: &GenSine, psi: f64) -> (f64, f64) {
    gs.eval(psi)
}

/// Raw quarter-period integrand of the defining integral (no substitution);
/// used by tests that integrate it between explicit cut points.
pub fn quarter_integrand(p: f64) -> impl Fn(f64) -> f64 {
    move |t: f64| (1.0 - t.powf(p) / (p - 1.0)).powf(-1.0 / p)
}

#[allow(dead_code)]
fn _assert_send_sync()
where
    GenSine: Send + Sync,
{
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pi_2_is_pi() {
        assert!((pi_p(2.0).unwrap() - PI).abs() < 1e-14);
    }

    #[test]
    fn pi_p_closed_form_matches_quadrature() {
        for &p in &[1.3, 1.5, 2.0, 3.0, 5.0, 10.0] {
            let closed = pi_p(p).unwrap();
            let quad = pi_p_quadrature(p, 1e-13).unwrap();
            assert!(
                (closed - quad).abs() < 1e-9,
                "p={p}: closed={closed}, quadrature={quad}"
            );
        }
    }

    #[test]
    fn rejects_p_at_most_one() {
        assert!(pi_p(1.0).is_err());
        assert!(build_gensine(0.5, 1e-12).is_err());
    }

    #[test]
    fn p2_reduces_to_sine() {
        let gs = build_gensine(2.0, 1e-13).unwrap();
        let mut max_err = 0.0f64;
        for i in 0..=1000 {
            let psi = i as f64 / 1000.0 * 2.0 * PI;
            let (s, d) = gs.eval(psi);
            max_err = max_err.max((s - psi.sin()).abs()).max((d - psi.cos()).abs());
        }
        assert!(max_err < 1e-9, "max deviation from sine: {max_err:e}");
    }

    #[test]
    fn boundary_values() {
        for &p in &[1.5, 2.0, 3.0, 7.0] {
            let gs = build_gensine(p, 1e-12).unwrap();
            let (s0, d0) = gs.eval(0.0);
            assert!(s0.abs() < 1e-12 && (d0 - 1.0).abs() < 1e-10);
            let (s1, d1) = gs.eval(gs.half_period);
            assert!((s1 - gs.w_max).abs() < 1e-12 && d1.abs() < 1e-10);
            // reflection rules applied by hand: S_p(π_p) = 0, S_p'(π_p) = -1
            let (s2, d2) = gs.eval(gs.pi_p());
            assert!(s2.abs() < 1e-11 && (d2 + 1.0).abs() < 1e-10, "p={p}: {s2} {d2}");
        }
    }

    #[test]
    fn first_integral_identity_on_grid() {
        for &p in &[1.3, 2.0, 3.3] {
            let gs = build_gensine(p, 1e-12).unwrap();
            for i in 0..4000 {
                let psi = i as f64 / 4000.0 * 4.0 * gs.pi_p();
                let (s, d) = gs.eval(psi);
                let res = d.abs().powf(p) + s.abs().powf(p) / (p - 1.0) - 1.0;
                assert!(res.abs() < 1e-12, "p={p}, ψ={psi}: residual {res:e}");
            }
        }
    }

    #[test]
    fn periodicity() {
        let gs = build_gensine(2.6, 1e-12).unwrap();
        for i in 0..200 {
            let psi = i as f64 * 0.11 - 4.0;
            let (a, _) = gs.eval(psi);
            let (b, _) = gs.eval(psi + gs.period());
            assert!((a - b).abs() < 1e-10);
        }
    }

    #[test]
    fn sup_norms() {
        for &p in &[1.4, 2.0, 4.0] {
            let gs = build_gensine(p, 1e-12).unwrap();
            let mut max_s = 0.0f64;
            let mut max_d = 0.0f64;
            for i in 0..20000 {
                let psi = i as f64 / 20000.0 * gs.period();
                let (s, d) = gs.eval(psi);
                max_s = max_s.max(s.abs());
                max_d = max_d.max(d.abs());
            }
            assert!((max_s - gs.w_max).abs() < 1e-8, "p={p}");
            assert!((max_d - 1.0).abs() < 1e-8, "p={p}");
        }
    }

    #[test]
    fn second_derivative_identity_by_finite_differences() {
        // (p-1) S'' = -S^{p-1} |S'|^{2-p} away from ψ = π_p/2
        for &p in &[1.6, 2.0, 3.0] {
            let gs = build_gensine(p, 1e-12).unwrap();
            let h = 1e-5;
            for i in 1..40 {
                let psi = i as f64 / 40.0 * gs.half_period;
                if (psi - gs.half_period).abs() < 0.15 {
                    continue;
                }
                let (s, d) = gs.eval(psi);
                let (_, dp) = gs.eval(psi + h);
                let (_, dm) = gs.eval(psi - h);
                let s2 = (dp - dm) / (2.0 * h);
                let rhs = -s.powf(p - 1.0) * d.abs().powf(2.0 - p) / (p - 1.0);
                assert!(
                    (s2 - rhs).abs() < 1e-4,
                    "p={p}, ψ={psi}: S''={s2}, identity rhs={rhs}"
                );
            }
        }
    }

    #[test]
    fn diagonal_angle() {
        let gs = build_gensine(2.0, 1e-12).unwrap();
        assert!((gs.quarter_pi() - PI / 4.0).abs() < 1e-10);
        for &p in &[1.5, 3.0, 6.0] {
            let gs = build_gensine(p, 1e-12).unwrap();
            let a = gs.quarter_pi();
            let (s, d) = gs.eval(a);
            assert!((s - d).abs() < 1e-9, "p={p}: S={s}, S'={d}");
            let target = ((p - 1.0) / p).powf(1.0 / p);
            assert!((s - target).abs() < 1e-10);
            assert!(a > 0.0 && a < gs.half_period);
            assert!((gs.three_quarter_pi() + a - gs.pi_p()).abs() < 1e-14);
        }
    }

    #[test]
    fn bisection_oracle_for_p3_diagonal() {
        // independent oracle: bisection on the defining property S = S'
        let gs = build_gensine(3.0, 1e-12).unwrap();
        let (mut lo, mut hi) = (1e-9, gs.half_period - 1e-9);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            let (s, d) = gs.eval(mid);
            if s - d < 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let v = 0.5 * (lo + hi);
        let (s, _) = gs.eval(v);
        assert!((s - (2.0f64 / 3.0).powf(1.0 / 3.0)).abs() <= 1e-10);
        assert!((v - gs.quarter_pi()).abs() < 1e-9);
    }

    #[test]
    fn large_p_tent_limit() {
        let gs = build_gensine(200.0, 1e-10).unwrap();
        let (s, _) = gs.eval(1.0);
        assert!((s - 1.0).abs() < 0.05, "S_200(1) = {s}");
    }
}
