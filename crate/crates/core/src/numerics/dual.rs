//! Second-order forward-mode dual numbers.
//!
//! A [`Dual2`] carries `(f, f', f'')` with respect to one scalar seed
//! variable. Arithmetic follows the product/chain rules exactly, so
//! derivatives of closed-form expressions are exact to rounding. The
//! `non_smooth` flag is set (and propagated) when an absolute-power rule is
//! applied at its kink `x = 0` with exponent below 2, where the second
//! derivative is conventionally reported as 0.

use super::{Error, Result};
use std::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dual2 {
    pub value: f64,
    pub d1: f64,
    pub d2: f64,
    pub non_smooth: bool,
}

impl Dual2 {
    /// The seed variable: derivative 1, curvature 0.
    pub fn var(x: f64) -> Self {
        Dual2 { value: x, d1: 1.0, d2: 0.0, non_smooth: false }
    }

    /// A constant.
    pub fn con(c: f64) -> Self {
        Dual2 { value: c, d1: 0.0, d2: 0.0, non_smooth: false }
    }

    /// Composition with a scalar function given by `(f(v), f'(v), f''(v))`.
    fn lift(self, f0: f64, f1: f64, f2: f64) -> Self {
        Dual2 {
            value: f0,
            d1: f1 * self.d1,
            d2: f2 * self.d1 * self.d1 + f1 * self.d2,
            non_smooth: self.non_smooth,
        }
    }

    pub fn ln(self) -> Self {
        let x = self.value;
        if x <= 0.0 {
            // poisoned result; dual2_eval maps this to a domain error
            return self.lift(f64::NAN, f64::NAN, f64::NAN);
        }
        self.lift(x.ln(), 1.0 / x, -1.0 / (x * x))
    }

    pub fn exp(self) -> Self {
        let e = self.value.exp();
        self.lift(e, e, e)
    }

    pub fn recip(self) -> Self {
        let x = self.value;
        self.lift(1.0 / x, -1.0 / (x * x), 2.0 / (x * x * x))
    }

    pub fn powi(self, n: i32) -> Self {
        let x = self.value;
        self.lift(
            x.powi(n),
            f64::from(n) * x.powi(n - 1),
            f64::from(n) * f64::from(n - 1) * x.powi(n - 2),
        )
    }

    /// `x^s` for positive `x`.
    pub fn powf(self, s: f64) -> Self {
        let x = self.value;
        if x <= 0.0 {
            return self.abs_pow(s);
        }
        self.lift(x.powf(s), s * x.powf(s - 1.0), s * (s - 1.0) * x.powf(s - 2.0))
    }

    /// `|x|^s` with the derivative rule `d/dx |x|^s = s·sign(x)·|x|^{s-1}`.
    ///
    /// At `x = 0` with `s < 2` the second derivative does not exist; it is
    /// reported as 0 and the result is flagged non-smooth.
    pub fn abs_pow(self, s: f64) -> Self {
        let x = self.value;
        if x == 0.0 {
            let f0 = if s == 0.0 { 1.0 } else { 0.0 };
            let f1 = if s == 1.0 { 0.0 } else { 0.0 };
            let f2 = if s == 2.0 { 2.0 } else { 0.0 };
            let mut out = self.lift(f0, f1, f2);
            out.non_smooth = out.non_smooth || s < 2.0;
            return out;
        }
        let a = x.abs();
        self.lift(
            a.powf(s),
            s * x.signum() * a.powf(s - 1.0),
            s * (s - 1.0) * a.powf(s - 2.0),
        )
    }

    /// Signed power `sign(x)·|x|^s`, the building block of the p-Laplacian
    /// flux (`u'|u'|^{p-2} = signed_pow(u', p-1)`).
    pub fn signed_pow(self, s: f64) -> Self {
        let x = self.value;
        if x == 0.0 {
            let mut out = self.lift(0.0, 0.0, 0.0);
            out.non_smooth = out.non_smooth || s < 2.0;
            return out;
        }
        let a = x.abs();
        self.lift(
            x.signum() * a.powf(s),
            s * a.powf(s - 1.0),
            s * (s - 1.0) * x.signum() * a.powf(s - 2.0),
        )
    }

    pub fn sqrt(self) -> Self {
        self.powf(0.5)
    }

    pub fn is_finite(&self) -> bool {
        self.value.is_finite() && self.d1.is_finite() && self.d2.is_finite()
    }
}

impl Add for Dual2 {
    type Output = Dual2;
    fn add(self, o: Dual2) -> Dual2 {
        Dual2 {
            value: self.value + o.value,
            d1: self.d1 + o.d1,
            d2: self.d2 + o.d2,
            non_smooth: self.non_smooth || o.non_smooth,
        }
    }
}

impl Sub for Dual2 {
    type Output = Dual2;
    fn sub(self, o: Dual2) -> Dual2 {
        Dual2 {
            value: self.value - o.value,
            d1: self.d1 - o.d1,
            d2: self.d2 - o.d2,
            non_smooth: self.non_smooth || o.non_smooth,
        }
    }
}

impl Mul for Dual2 {
    type Output = Dual2;
    fn mul(self, o: Dual2) -> Dual2 {
        Dual2 {
            value: self.value * o.value,
            d1: self.d1 * o.value + self.value * o.d1,
            d2: self.d2 * o.value + 2.0 * self.d1 * o.d1 + self.value * o.d2,
            non_smooth: self.non_smooth || o.non_smooth,
        }
    }
}

impl Div for Dual2 {
    type Output = Dual2;
    fn div(self, o: Dual2) -> Dual2 {
        self * o.recip()
    }
}

impl Neg for Dual2 {
    type Output = Dual2;
    fn neg(self) -> Dual2 {
        Dual2 { value: -self.value, d1: -self.d1, d2: -self.d2, non_smooth: self.non_smooth }
    }
}

macro_rules! scalar_ops {
    ($($t:ty),*) => {$(
        impl Add<$t> for Dual2 { type Output = Dual2; fn add(self, o: $t) -> Dual2 { self + Dual2::con(o as f64) } }
        impl Sub<$t> for Dual2 { type Output = Dual2; fn sub(self, o: $t) -> Dual2 { self - Dual2::con(o as f64) } }
        impl Mul<$t> for Dual2 { type Output = Dual2; fn mul(self, o: $t) -> Dual2 { self * Dual2::con(o as f64) } }
        impl Div<$t> for Dual2 { type Output = Dual2; fn div(self, o: $t) -> Dual2 { self / Dual2::con(o as f64) } }
        impl Add<Dual2> for $t { type Output = Dual2; fn add(self, o: Dual2) -> Dual2 { Dual2::con(self as f64) + o } }
        impl Sub<Dual2> for $t { type Output = Dual2; fn sub(self, o: Dual2) -> Dual2 { Dual2::con(self as f64) - o } }
        impl Mul<Dual2> for $t { type Output = Dual2; fn mul(self, o: Dual2) -> Dual2 { Dual2::con(self as f64) * o } }
        impl Div<Dual2> for $t { type Output = Dual2; fn div(self, o: Dual2) -> Dual2 { Dual2::con(self as f64) / o } }
    )*};
}
scalar_ops!(f64);

/// Evaluates `f` and its first two derivatives at `x`.
pub fn dual2_eval<F: FnOnce(Dual2) -> Dual2>(f: F, x: f64) -> Result<Dual2> {
    let out = f(Dual2::var(x));
    if out.value.is_nan() || out.d1.is_nan() || out.d2.is_nan() {
        return Err(Error::Domain(format!("dual evaluation produced NaN at x={x}")));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn central_diff<F: Fn(f64) -> f64>(f: F, x: f64, h: f64) -> (f64, f64) {
        let d1 = (f(x + h) - f(x - h)) / (2.0 * h);
        let d2 = (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
        (d1, d2)
    }

    #[test]
    fn cube() {
        let r = dual2_eval(|x| x.powi(3), 2.0).unwrap();
        assert_eq!((r.value, r.d1, r.d2), (8.0, 12.0, 12.0));
    }

    #[test]
    fn log_log() {
        // Symbolic oracle: f = log(log x), f' = 1/(x log x),
        // f'' = -(log x + 1)/(x log x)^2. At x = e²: (log 2, 1/(2e²), -3/(4e⁴)).
        let e2 = std::f64::consts::E * std::f64::consts::E;
        let r = dual2_eval(|x| x.ln().ln(), e2).unwrap();
        assert!((r.value - 2.0_f64.ln()).abs() < 1e-15);
        assert!((r.d1 - 1.0 / (2.0 * e2)).abs() < 1e-16);
        let d2_exact = -3.0 / (4.0 * e2 * e2);
        assert!((r.d2 - d2_exact).abs() < 1e-16, "d2={} exact={}", r.d2, d2_exact);
    }

    #[test]
    fn abs_power_at_negative_point() {
        // Hand differentiation of |x|^{3/2}: f' = (3/2) sign(x) |x|^{1/2},
        // f'' = (3/4) |x|^{-1/2}. At x = -4: (8, -3, 0.375).
        let r = dual2_eval(|x| x.abs_pow(1.5), -4.0).unwrap();
        assert!((r.value - 8.0).abs() < 1e-14);
        assert!((r.d1 + 3.0).abs() < 1e-14);
        assert!((r.d2 - 0.375).abs() < 1e-15);
        assert!(!r.non_smooth);
    }

    #[test]
    fn abs_power_kink_flagged() {
        let r = dual2_eval(|x| x.abs_pow(1.5), 0.0).unwrap();
        assert_eq!(r.d2, 0.0);
        assert!(r.non_smooth);
    }

    #[test]
    fn log_of_nonpositive_is_domain_error() {
        assert!(dual2_eval(|x| x.ln(), -1.0).is_err());
        assert!(dual2_eval(|x| x.ln(), 0.0).is_err());
    }

    #[test]
    fn agrees_with_central_differences() {
        let f = |x: Dual2| (x.powi(2) + 1.0).ln() * x.exp() / (x + 3.0);
        let g = |x: f64| (x * x + 1.0).ln() * x.exp() / (x + 3.0);
        for &x in &[0.5, 1.0, 2.3, -0.7] {
            let r = dual2_eval(f, x).unwrap();
            let (d1, d2) = central_diff(g, x, 1e-5);
            assert!((r.d1 - d1).abs() / d1.abs().max(1.0) < 1e-6);
            assert!((r.d2 - d2).abs() / d2.abs().max(1.0) < 1e-4);
        }
    }

    #[test]
    fn signed_pow_matches_flux_rule() {
        // signed_pow(x, p-1) = x|x|^{p-2}; derivative (p-1)|x|^{p-2}
        let p = 2.7;
        let r = dual2_eval(|x| x.signed_pow(p - 1.0), -1.3).unwrap();
        let x: f64 = -1.3;
        assert!((r.value - x * x.abs().powf(p - 2.0)).abs() < 1e-14);
        assert!((r.d1 - (p - 1.0) * x.abs().powf(p - 2.0)).abs() < 1e-14);
    }
}
