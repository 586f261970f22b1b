//! Explicit ODE integration: adaptive Dormand-Prince 5(4) and fixed-step RK4.

use super::{Error, Result};

// Dormand-Prince 5(4) tableau.
const A: [[f64; 6]; 6] = [
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
const C: [f64; 6] = [1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
// Fifth-order weights (FSAL: equal to the last row of A plus a zero).
const B5: [f64; 7] =
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0, 0.0];
// Difference to the embedded fourth-order weights.
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

/// Initial value problem with error tolerances and optional step caps.
pub struct OdeProblem<F> {
    /// Right-hand side `f(t, y, dy)` writing `y'` into `dy`.
    pub rhs: F,
    pub t0: f64,
    pub y0: Vec<f64>,
    pub t_end: f64,
    pub rel_tol: f64,
    pub abs_tol: f64,
    /// Absolute cap on the step size (controls output density).
    pub max_step: Option<f64>,
    /// Cap the step at `frac · max(|t|, 1)`; useful when the dynamics is
    /// logarithmically slow and the horizon spans decades.
    pub max_step_rel: Option<f64>,
    pub max_steps: usize,
}

impl<F: FnMut(f64, &[f64], &mut [f64])> OdeProblem<F> {
    pub fn new(rhs: F, t0: f64, y0: Vec<f64>, t_end: f64) -> Self {
        OdeProblem {
            rhs,
            t0,
            y0,
            t_end,
            rel_tol: 1e-9,
            abs_tol: 1e-12,
            max_step: None,
            max_step_rel: None,
            max_steps: 2_000_000,
        }
    }

    pub fn tol(mut self, rel: f64, abs: f64) -> Self {
        self.rel_tol = rel;
        self.abs_tol = abs;
        self
    }

    pub fn max_step(mut self, h: f64) -> Self {
        self.max_step = Some(h);
        self
    }

    pub fn max_step_rel(mut self, frac: f64) -> Self {
        self.max_step_rel = Some(frac);
        self
    }
}

/// Accepted integration steps `(t_k, y_k)`, including the initial state.
#[derive(Debug, Clone)]
pub struct Trajectory {
    pub ts: Vec<f64>,
    pub ys: Vec<Vec<f64>>,
}

impl Trajectory {
    pub fn last(&self) -> (f64, &[f64]) {
        (*self.ts.last().unwrap(), self.ys.last().unwrap())
    }

    pub fn len(&self) -> usize {
        self.ts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ts.is_empty()
    }
}

/// Integrates the problem with the adaptive 5(4) pair, storing every accepted
/// step.
pub fn integrate_ode<F: FnMut(f64, &[f64], &mut [f64])>(
    prob: OdeProblem<F>,
) -> Result<Trajectory> {
    let OdeProblem {
        mut rhs,
        t0,
        y0,
        t_end,
        rel_tol,
        abs_tol,
        max_step,
        max_step_rel,
        max_steps,
    } = prob;
    assert!(t0 < t_end, "integration requires t0 < t_end");
    assert!(rel_tol > 0.0 && abs_tol > 0.0, "tolerances must be positive");
    let dim = y0.len();
    let mut t = t0;
    let mut y = y0;
    let mut k: Vec<Vec<f64>> = vec![vec![0.0; dim]; 7];
    rhs(t, &y, &mut k[0]);

    let cap = |t: f64, span: f64| -> f64 {
        let mut h = span;
        if let Some(m) = max_step {
            h = h.min(m);
        }
        if let Some(fr) = max_step_rel {
            h = h.min(fr * t.abs().max(1.0));
        }
        h
    };
    let mut h = cap(t, (t_end - t0) / 100.0).min(t_end - t0);

    let mut ts = vec![t];
    let mut ys = vec![y.clone()];
    let mut y_stage = vec![0.0; dim];
    let mut y_new = vec![0.0; dim];

    for _step in 0..max_steps {
        if t >= t_end {
            return Ok(Trajectory { ts, ys });
        }
        h = h.min(t_end - t).min(cap(t, h));
        let h_floor = 16.0 * f64::EPSILON * t.abs().max(1.0);
        if h < h_floor {
            return Err(Error::StepUnderflow { t, h });
        }

        for s in 0..6 {
            for i in 0..dim {
                let mut acc = 0.0;
                for (j, kj) in k.iter().enumerate().take(s + 1) {
                    acc += A[s][j] * kj[i];
                }
                y_stage[i] = y[i] + h * acc;
            }
            rhs(t + C[s] * h, &y_stage, &mut k[s + 1]);
        }
        let mut err = 0.0f64;
        let mut finite = true;
        for i in 0..dim {
            let mut acc = 0.0;
            let mut e = 0.0;
            for (j, kj) in k.iter().enumerate() {
                acc += B5[j] * kj[i];
                e += E[j] * kj[i];
            }
            y_new[i] = y[i] + h * acc;
            if !y_new[i].is_finite() {
                finite = false;
            }
            let scale = abs_tol + rel_tol * y[i].abs().max(y_new[i].abs());
            let r = h * e / scale;
            err += r * r;
        }
        err = (err / dim as f64).sqrt();

        if finite && err <= 1.0 {
            t += h;
            y.copy_from_slice(&y_new);
            // FSAL: stage 7 is the derivative at the accepted point
            let (head, tail) = k.split_at_mut(6);
            head[0].copy_from_slice(&tail[0]);
            ts.push(t);
            ys.push(y.clone());
        } else if !finite {
            h *= 0.25;
            continue;
        }
        let fac = if err > 0.0 { 0.9 * err.powf(-0.2) } else { 5.0 };
        h *= fac.clamp(0.2, 5.0);
    }
    Err(Error::MaxStepsExceeded { t })
}

/// Classic fixed-step fourth-order Runge-Kutta, kept as an independent
/// cross-check for the adaptive integrator.
pub fn rk4_fixed<F: FnMut(f64, &[f64], &mut [f64])>(
    mut rhs: F,
    t0: f64,
    y0: &[f64],
    t_end: f64,
    n_steps: usize,
) -> Vec<(f64, Vec<f64>)> {
    let dim = y0.len();
    let h = (t_end - t0) / n_steps as f64;
    let mut t = t0;
    let mut y = y0.to_vec();
    let mut out = vec![(t, y.clone())];
    let (mut k1, mut k2, mut k3, mut k4) =
        (vec![0.0; dim], vec![0.0; dim], vec![0.0; dim], vec![0.0; dim]);
    let mut tmp = vec![0.0; dim];
    for _ in 0..n_steps {
        rhs(t, &y, &mut k1);
        for i in 0..dim {
            tmp[i] = y[i] + 0.5 * h * k1[i];
        }
        rhs(t + 0.5 * h, &tmp, &mut k2);
        for i in 0..dim {
            tmp[i] = y[i] + 0.5 * h * k2[i];
        }
        rhs(t + 0.5 * h, &tmp, &mut k3);
        for i in 0..dim {
            tmp[i] = y[i] + h * k3[i];
        }
        rhs(t + h, &tmp, &mut k4);
        for i in 0..dim {
            y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        t += h;
        out.push((t, y.clone()));
    }
    out
}
