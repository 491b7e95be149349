//! Truncated Taylor-series arithmetic over `f64`.
//!
//! A `Taylor` holds the coefficients `c_0 + c_1 t + ... + c_{N-1} t^{N-1}`
//! of a local expansion. All numeric jets in the crate are produced through
//! this arithmetic: solution jets come from the defining ODE's Taylor
//! recurrence and composite formulas (potentials, W-builders) are evaluated
//! directly in series arithmetic, so no finite differencing happens anywhere.

use std::ops::{Add, Div, Mul, Neg, Sub};

/// Truncation order used throughout the numeric layer: coefficients up to
/// `t^8`, enough for the fifth W-derivative through an argument map with two
/// spare orders for error estimation.
pub const N: usize = 9;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Taylor(pub [f64; N]);

impl Taylor {
    pub fn zero() -> Self {
        Taylor([0.0; N])
    }

    pub fn constant(c: f64) -> Self {
        let mut t = Taylor::zero();
        t.0[0] = c;
        t
    }

    /// The local variable `x0 + t`.
    pub fn var(x0: f64) -> Self {
        let mut t = Taylor::constant(x0);
        t.0[1] = 1.0;
        t
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|c| c.is_finite())
    }

    pub fn scale(&self, s: f64) -> Self {
        let mut out = *self;
        for c in &mut out.0 {
            *c *= s;
        }
        out
    }

    /// Coefficient-wise derivative: `d/dt`.
    pub fn deriv(&self) -> Self {
        let mut out = Taylor::zero();
        for k in 1..N {
            out.0[k - 1] = self.0[k] * k as f64;
        }
        out
    }

    /// `k!` times `c_k`: the `k`-th derivative at the expansion point.
    pub fn derivative(&self, k: usize) -> f64 {
        let mut f = 1.0;
        for i in 1..=k {
            f *= i as f64;
        }
        self.0[k] * f
    }

    /// Evaluate the truncated polynomial at offset `t`.
    pub fn eval(&self, t: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.0.iter().rev() {
            acc = acc * t + c;
        }
        acc
    }

    /// Shift the expansion point by `t`: coefficients of the same
    /// polynomial around `x0 + t` (exact for the truncation).
    pub fn shift(&self, t: f64) -> Self {
        Taylor(horner_shift(&self.0, t))
    }

    pub fn powi(&self, n: u32) -> Self {
        let mut acc = Taylor::constant(1.0);
        for _ in 0..n {
            acc = acc * *self;
        }
        acc
    }

    /// Multiplicative inverse; requires a nonzero constant term.
    pub fn recip(&self) -> Self {
        let a0 = self.0[0];
        assert!(a0 != 0.0, "Taylor reciprocal of series with zero constant");
        let mut out = Taylor::zero();
        out.0[0] = 1.0 / a0;
        for k in 1..N {
            let mut s = 0.0;
            for j in 1..=k {
                s += self.0[j] * out.0[k - j];
            }
            out.0[k] = -s / a0;
        }
        out
    }

    /// Principal square root; requires a positive constant term.
    pub fn sqrt(&self) -> Self {
        let a0 = self.0[0];
        assert!(a0 > 0.0, "Taylor sqrt of series with nonpositive constant");
        let mut out = Taylor::zero();
        out.0[0] = a0.sqrt();
        for k in 1..N {
            let mut s = 0.0;
            for j in 1..k {
                s += out.0[j] * out.0[k - j];
            }
            out.0[k] = (self.0[k] - s) / (2.0 * out.0[0]);
        }
        out
    }

    /// Compose `self` (coefficients in an inner variable `u`) with an inner
    /// series `u(t)` whose constant term must be zero.
    pub fn compose(&self, inner: &Taylor) -> Self {
        assert!(
            inner.0[0] == 0.0,
            "Taylor composition needs a zero-constant inner series"
        );
        let mut acc = Taylor::zero();
        for c in self.0.iter().rev() {
            acc = acc * *inner + Taylor::constant(*c);
        }
        acc
    }
}

fn horner_shift(c: &[f64; N], t: f64) -> [f64; N] {
    // Taylor-shift by synthetic division: out_k = sum_j c_j C(j,k) t^(j-k)
    let mut out = *c;
    for k in 0..N {
        for j in (k..N - 1).rev() {
            out[j] += t * out[j + 1];
        }
        let _ = k;
    }
    out
}

impl Add for Taylor {
    type Output = Taylor;
    fn add(self, rhs: Taylor) -> Taylor {
        let mut out = self;
        for k in 0..N {
            out.0[k] += rhs.0[k];
        }
        out
    }
}

impl Sub for Taylor {
    type Output = Taylor;
    fn sub(self, rhs: Taylor) -> Taylor {
        let mut out = self;
        for k in 0..N {
            out.0[k] -= rhs.0[k];
        }
        out
    }
}

impl Neg for Taylor {
    type Output = Taylor;
    fn neg(self) -> Taylor {
        self.scale(-1.0)
    }
}

impl Mul for Taylor {
    type Output = Taylor;
    fn mul(self, rhs: Taylor) -> Taylor {
        let mut out = Taylor::zero();
        for i in 0..N {
            if self.0[i] == 0.0 {
                continue;
            }
            for j in 0..N - i {
                out.0[i + j] += self.0[i] * rhs.0[j];
            }
        }
        out
    }
}

impl Div for Taylor {
    type Output = Taylor;
    fn div(self, rhs: Taylor) -> Taylor {
        self * rhs.recip()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-12 * (1.0 + a.abs().max(b.abs()))
    }

    #[test]
    fn product_and_reciprocal_invert() {
        let mut a = Taylor::var(2.0);
        a.0[2] = -0.3;
        a.0[3] = 0.7;
        let r = a.recip();
        let p = a * r;
        assert!(close(p.0[0], 1.0));
        for k in 1..N {
            assert!(p.0[k].abs() < 1e-12, "k={k}: {}", p.0[k]);
        }
    }

    #[test]
    fn sqrt_squares_back() {
        let mut a = Taylor::constant(3.0);
        a.0[1] = 1.5;
        a.0[2] = -0.25;
        let s = a.sqrt();
        let sq = s * s;
        for k in 0..N {
            assert!(close(sq.0[k], a.0[k]), "k={k}");
        }
    }

    #[test]
    fn shift_matches_reevaluation() {
        let mut a = Taylor::var(1.0);
        a.0[2] = 0.5;
        a.0[4] = -2.0;
        let b = a.shift(0.3);
        for t in [-0.2, 0.0, 0.1] {
            assert!(close(b.eval(t), a.eval(t + 0.3)));
        }
    }

    #[test]
    fn composition_chain_rule() {
        // f(u) = 1/(1+u), u(t) = t + t^2: f(u(t))' at 0 is -u'(0) = -1
        let f = (Taylor::constant(1.0) + Taylor::var(0.0)).recip();
        let mut u = Taylor::var(0.0);
        u.0[2] = 1.0;
        u.0[0] = 0.0;
        let g = f.compose(&u);
        assert!(close(g.0[0], 1.0));
        assert!(close(g.derivative(1), -1.0));
        // second derivative: d^2/dt^2 [1/(1+t+t^2)] at 0 = 0? expand:
        // 1 - (t+t^2) + (t+t^2)^2 - ... = 1 - t - t^2 + t^2 + O(t^3) = 1 - t + 0 t^2
        assert!(close(g.derivative(2), 0.0));
    }

    #[test]
    fn deriv_drops_degree() {
        let mut a = Taylor::zero();
        a.0[3] = 2.0;
        let d = a.deriv();
        assert!(close(d.0[2], 6.0));
    }
}
