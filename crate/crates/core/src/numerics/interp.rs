//! Monotone cubic Hermite interpolation.

/// Piecewise cubic Hermite interpolant of strictly monotone data.
///
/// Node slopes may be supplied exactly (when the derivative of the tabulated
/// map is known in closed form) or estimated PCHIP-style; either way they are
/// passed through the Fritsch-Carlson limiter so the interpolant cannot
/// overshoot the data.
#[derive(Debug, Clone)]
pub struct MonotoneCubic {
    xs: Vec<f64>,
    ys: Vec<f64>,
    ds: Vec<f64>,
}

impl MonotoneCubic {
    /// Builds from nodes with known exact slopes.
    pub fn with_slopes(xs: Vec<f64>, ys: Vec<f64>, mut ds: Vec<f64>) -> Self {
        assert!(xs.len() >= 2 && xs.len() == ys.len() && ys.len() == ds.len());
        debug_assert!(xs.windows(2).all(|w| w[0] < w[1]), "nodes must be strictly increasing");
        limit_slopes(&xs, &ys, &mut ds);
        MonotoneCubic { xs, ys, ds }
    }

    /// Builds with PCHIP slope estimates from the data alone.
    pub fn pchip(xs: Vec<f64>, ys: Vec<f64>) -> Self {
        let n = xs.len();
        assert!(n >= 2 && n == ys.len());
        let mut ds = vec![0.0; n];
        let h: Vec<f64> = xs.windows(2).map(|w| w[1] - w[0]).collect();
        let delta: Vec<f64> = (0..n - 1).map(|i| (ys[i + 1] - ys[i]) / h[i]).collect();
        for i in 1..n - 1 {
            if delta[i - 1] * delta[i] <= 0.0 {
                ds[i] = 0.0;
            } else {
                let w1 = 2.0 * h[i] + h[i - 1];
                let w2 = h[i] + 2.0 * h[i - 1];
                ds[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
            }
        }
        ds[0] = end_slope(h[0], h.get(1).copied().unwrap_or(h[0]), delta[0], delta.get(1).copied().unwrap_or(delta[0]));
        let m = n - 1;
        ds[m] = end_slope(
            h[m - 1],
            if m >= 2 { h[m - 2] } else { h[m - 1] },
            delta[m - 1],
            if m >= 2 { delta[m - 2] } else { delta[m - 1] },
        );
        Self::with_slopes(xs, ys, ds)
    }

    pub fn x_min(&self) -> f64 {
        self.xs[0]
    }

    pub fn x_max(&self) -> f64 {
        *self.xs.last().unwrap()
    }

    fn cell(&self, x: f64) -> usize {
        match self.xs.binary_search_by(|v| v.partial_cmp(&x).unwrap()) {
            Ok(i) => i.min(self.xs.len() - 2),
            Err(i) => i.saturating_sub(1).min(self.xs.len() - 2),
        }
    }

    /// Evaluates the interpolant (argument clamped to the node range).
    pub fn eval(&self, x: f64) -> f64 {
        let x = x.clamp(self.x_min(), self.x_max());
        let i = self.cell(x);
        let h = self.xs[i + 1] - self.xs[i];
        let s = (x - self.xs[i]) / h;
        let (h00, h10, h01, h11) = hermite_basis(s);
        h00 * self.ys[i] + h10 * h * self.ds[i] + h01 * self.ys[i + 1] + h11 * h * self.ds[i + 1]
    }

    /// Evaluates value and first derivative.
    pub fn eval_with_deriv(&self, x: f64) -> (f64, f64) {
        let x = x.clamp(self.x_min(), self.x_max());
        let i = self.cell(x);
        let h = self.xs[i + 1] - self.xs[i];
        let s = (x - self.xs[i]) / h;
        let (h00, h10, h01, h11) = hermite_basis(s);
        let v =
            h00 * self.ys[i] + h10 * h * self.ds[i] + h01 * self.ys[i + 1] + h11 * h * self.ds[i + 1];
        let (g00, g10, g01, g11) = hermite_basis_deriv(s);
        let d = (g00 * self.ys[i] + g01 * self.ys[i + 1]) / h + g10 * self.ds[i] + g11 * self.ds[i + 1];
        (v, d)
    }
}

fn hermite_basis(s: f64) -> (f64, f64, f64, f64) {
    let s2 = s * s;
    let s3 = s2 * s;
    (2.0 * s3 - 3.0 * s2 + 1.0, s3 - 2.0 * s2 + s, -2.0 * s3 + 3.0 * s2, s3 - s2)
}

fn hermite_basis_deriv(s: f64) -> (f64, f64, f64, f64) {
    let s2 = s * s;
    (6.0 * s2 - 6.0 * s, 3.0 * s2 - 4.0 * s + 1.0, -6.0 * s2 + 6.0 * s, 3.0 * s2 - 2.0 * s)
}

fn end_slope(h0: f64, h1: f64, d0: f64, d1: f64) -> f64 {
    let d = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
    if d * d0 <= 0.0 {
        0.0
    } else if d0 * d1 <= 0.0 && d.abs() > 3.0 * d0.abs() {
        3.0 * d0
    } else {
        d
    }
}

fn limit_slopes(xs: &[f64], ys: &[f64], ds: &mut [f64]) {
    let n = xs.len();
    for i in 0..n - 1 {
        let delta = (ys[i + 1] - ys[i]) / (xs[i + 1] - xs[i]);
        if delta == 0.0 {
            ds[i] = 0.0;
            ds[i + 1] = 0.0;
            continue;
        }
        let a = ds[i] / delta;
        let b = ds[i + 1] / delta;
        if a < 0.0 {
            ds[i] = 0.0;
        }
        if b < 0.0 {
            ds[i + 1] = 0.0;
        }
        let r = a * a + b * b;
        if r > 9.0 {
            let t = 3.0 / r.sqrt();
            ds[i] = t * a * delta;
            ds[i + 1] = t * b * delta;
        }
    }
}
