//! Bracketed scalar root finding (Brent's method).

use super::{Error, Result};

/// A sign-changing interval for a continuous scalar function.
#[derive(Debug, Clone, Copy)]
pub struct Bracket {
    pub lo: f64,
    pub hi: f64,
    pub f_lo: f64,
    pub f_hi: f64,
}

impl Bracket {
    /// Evaluates `f` at both ends and validates `lo < hi` and the sign change.
    pub fn new<F: FnMut(f64) -> f64>(lo: f64, hi: f64, f: &mut F) -> Result<Self> {
        let (f_lo, f_hi) = (f(lo), f(hi));
        Self::with_values(lo, hi, f_lo, f_hi)
    }

    /// Builds a bracket from precomputed endpoint values.
    pub fn with_values(lo: f64, hi: f64, f_lo: f64, f_hi: f64) -> Result<Self> {
        if !(lo < hi) || !f_lo.is_finite() || !f_hi.is_finite() || f_lo * f_hi > 0.0 {
            return Err(Error::InvalidBracket { lo, hi, f_lo, f_hi });
        }
        Ok(Bracket { lo, hi, f_lo, f_hi })
    }
}

/// Brent root finder: inverse quadratic interpolation / secant / bisection.
///
/// Converges for any continuous `f` on a valid bracket. Terminates when the
/// bracket width shrinks below `tol` (plus a machine-relative floor) or an
/// exact zero is hit.
pub fn find_root<F: FnMut(f64) -> f64>(mut f: F, bracket: &Bracket, tol: f64) -> Result<f64> {
    let (mut a, mut b) = (bracket.lo, bracket.hi);
    let (mut fa, mut fb) = (bracket.f_lo, bracket.f_hi);
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa * fb > 0.0 {
        return Err(Error::InvalidBracket { lo: a, hi: b, f_lo: fa, f_hi: fb });
    }
    let (mut c, mut fc) = (a, fa);
    let mut d = b - a;
    let mut e = d;

    for _ in 0..200 {
        if fb * fc > 0.0 {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol1 = 2.0 * f64::EPSILON * b.abs() + 0.5 * tol;
        let xm = 0.5 * (c - b);
        if xm.abs() <= tol1 || fb == 0.0 {
            return Ok(b);
        }
        if e.abs() >= tol1 && fa.abs() > fb.abs() {
            // interpolation step
            let s = fb / fa;
            let (mut pp, mut qq);
            if a == c {
                pp = 2.0 * xm * s;
                qq = 1.0 - s;
            } else {
                let q = fa / fc;
                let r = fb / fc;
                pp = s * (2.0 * xm * q * (q - r) - (b - a) * (r - 1.0));
                qq = (q - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if pp > 0.0 {
                qq = -qq;
            }
            pp = pp.abs();
            let min1 = 3.0 * xm * qq - (tol1 * qq).abs();
            let min2 = (e * qq).abs();
            if 2.0 * pp < min1.min(min2) {
                e = d;
                d = pp / qq;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        if d.abs() > tol1 {
            b += d;
        } else {
            b += tol1.copysign(xm);
        }
        fb = f(b);
        if !fb.is_finite() {
            return Err(Error::Domain(format!("root function non-finite at x={b}")));
        }
    }
    Ok(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt_two() {
        let b = Bracket::new(1.0, 2.0, &mut |x: f64| x * x - 2.0).unwrap();
        let r = find_root(|x| x * x - 2.0, &b, 1e-14).unwrap();
        assert!((r - std::f64::consts::SQRT_2).abs() < 1e-13, "r={r}");
    }

    #[test]
    fn identity_through_zero() {
        let b = Bracket::new(-1.0, 1.0, &mut |x: f64| x).unwrap();
        let r = find_root(|x| x, &b, 1e-14).unwrap();
        assert!(r.abs() < 1e-13);
    }

    #[test]
    fn exponent_root_equation_quadratic_case() {
        // -γ|γ|^{p-2}(γ(p-1)+N-p) = μ with p=2, N=3, μ=0 reduces to γ²+γ=0;
        // quadratic-formula oracle gives the roots -1 and 0.
        let g = |x: f64| -x * x.abs().powi(0) * (x + 1.0);
        let b = Bracket::new(-1.5, -0.5, &mut { g }).unwrap();
        let r = find_root(g, &b, 1e-14).unwrap();
        assert!((r + 1.0).abs() < 1e-13, "r={r}");
    }

    #[test]
    fn rejects_bad_bracket() {
        assert!(Bracket::new(0.5, 2.0, &mut |x: f64| x * x + 1.0).is_err());
        assert!(Bracket::new(2.0, 0.5, &mut |x: f64| x).is_err());
    }

    #[test]
    fn result_stays_inside_bracket() {
        let f = |x: f64| (x - 0.3).tanh();
        let b = Bracket::new(-4.0, 5.0, &mut { f }).unwrap();
        let r = find_root(f, &b, 1e-13).unwrap();
        assert!(r >= -4.0 && r <= 5.0);
        assert!(f(r).abs() < 1e-12);
    }
}
