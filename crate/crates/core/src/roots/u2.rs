//! Closed-form reference values for U(2), `lambda = (n, 0)`.
//!
//! These formulas use the parametrization `t -> t * alpha` of `X`, in which the
//! root has squared length 2. The generic pipeline works in coordinates dual to
//! the `L*` basis `{alpha}`, where the pairing is `<alpha, t alpha> = 2t`. The
//! `lattice_*` accessors convert: `tau_L = 2 t`, `A_L = A / 2`, `delta` is unchanged.
//!
//! The published prefactor `a(j) = 2 e^{-t} sqrt(2 sinh^4 t sinh^2 Kt / (...))`
//! equals `2 e^{-t} sinh t / sqrt(A(t))`. Evaluating the general irreducible
//! formula in lattice-normalized form gives `2 e^{-t} sinh t / sqrt(A_L)`, which is
//! `sqrt 2` times larger; exact counts agree with the latter
//! ([`U2Golden::lattice_prefactor`]).

use crate::error::{Error, Result};

const SERIES_CUTOFF: f64 = 1e-3;

/// Reference evaluator for `V_(n,0)` of U(2).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct U2Golden {
    n: u32,
}

pub fn u2_fixture(n: u32) -> Result<U2Golden> {
    U2Golden::new(n)
}

/// `ln sinh x` for `x > 0`, without overflow.
fn ln_sinh(x: f64) -> f64 {
    x + (-(-2.0 * x).exp_m1()).ln() - std::f64::consts::LN_2
}

impl U2Golden {
    pub fn new(n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::Invalid("U2 fixture needs n >= 1".into()));
        }
        Ok(U2Golden { n })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    fn k(&self) -> f64 {
        self.n as f64 + 1.0
    }

    pub fn lambda(&self) -> Vec<i64> {
        vec![self.n as i64, 0]
    }

    /// `nu_j = lambda - j alpha`.
    pub fn nu(&self, j: u32) -> Vec<i64> {
        vec![self.n as i64 - j as i64, j as i64]
    }

    /// Largest admissible `j` (the dominant interior weights are `1 <= j <= n/2`).
    pub fn max_j(&self) -> u32 {
        self.n / 2
    }

    fn check_j(&self, j: u32) -> Result<()> {
        if j == 0 || j > self.max_j() {
            return Err(Error::JOutOfRange { j, max: self.max_j() });
        }
        Ok(())
    }

    /// `h(t) = e^{-n t} sinh((n+1) t) / sinh t`.
    pub fn h(&self, t: f64) -> f64 {
        if t == 0.0 {
            return self.k();
        }
        let a = t.abs();
        (-(self.n as f64) * t + ln_sinh(self.k() * a) - ln_sinh(a)).exp()
    }

    /// `f(t) = h'(t) / (2 h(t))`, written as `(K coth Kt - coth t)/2 - n/2`.
    pub fn f(&self, t: f64) -> f64 {
        let k = self.k();
        let half_n = self.n as f64 / 2.0;
        if t.abs() < SERIES_CUTOFF {
            let (k2, t2) = (k * k, t * t);
            let odd =
                (k2 - 1.0) * t / 6.0 - (k2 * k2 - 1.0) * t * t2 / 90.0 + (k2 * k2 * k2 - 1.0) * t * t2 * t2 / 945.0;
            return odd - half_n;
        }
        (k / (k * t).tanh() - 1.0 / t.tanh()) / 2.0 - half_n
    }

    /// `A(t) = [sinh^2 Kt - K^2 sinh^2 t] / [2 sinh^2 t sinh^2 Kt]`.
    pub fn a_matrix(&self, t: f64) -> f64 {
        let k = self.k();
        let k2 = k * k;
        if t.abs() < SERIES_CUTOFF {
            let t2 = t * t;
            return (k2 - 1.0) / 6.0 - (k2 * k2 - 1.0) * t2 / 30.0 + (k2 * k2 * k2 - 1.0) * t2 * t2 / 189.0;
        }
        let s = t.sinh();
        let sk = (k * t).sinh();
        (sk * sk - k2 * s * s) / (2.0 * s * s * sk * sk)
    }

    /// The unique `t >= 0` with `f(t) = -j`, by bisection.
    pub fn tau(&self, j: u32) -> Result<f64> {
        self.check_j(j)?;
        if 2 * j == self.n {
            return Ok(0.0);
        }
        let target = -(j as f64);
        let mut lo = 0.0f64;
        let mut hi = 1.0f64;
        while self.f(hi) < target {
            lo = hi;
            hi *= 2.0;
        }
        loop {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                return Ok(if (self.f(lo) - target).abs() <= (self.f(hi) - target).abs() {
                    lo
                } else {
                    hi
                });
            }
            if self.f(mid) < target {
                lo = mid;
            } else {
                hi = mid;
            }
        }
    }

    /// `delta(nu_j) = -(n - 2j) t_j + log(sinh(K t_j) / sinh t_j)`.
    pub fn delta(&self, j: u32) -> Result<f64> {
        let t = self.tau(j)?;
        if t == 0.0 {
            return Ok(self.k().ln());
        }
        Ok(-(self.n as f64 - 2.0 * j as f64) * t + ln_sinh(self.k() * t) - ln_sinh(t))
    }

    pub fn a_at(&self, j: u32) -> Result<f64> {
        Ok(self.a_matrix(self.tau(j)?))
    }

    /// The published constant `a_lambda(j)`.
    pub fn a_lambda(&self, j: u32) -> Result<f64> {
        let t = self.tau(j)?;
        Ok(2.0 * (-t).exp() * t.sinh() / self.a_matrix(t).sqrt())
    }

    pub fn lattice_tau(&self, j: u32) -> Result<f64> {
        Ok(2.0 * self.tau(j)?)
    }

    pub fn lattice_hessian(&self, j: u32) -> Result<f64> {
        Ok(self.a_at(j)? / 2.0)
    }

    /// Leading coefficient of `a_N(lambda; N nu_j) (2 pi N)^{1/2} e^{-N delta}` in
    /// lattice normalization: `sqrt(2) a_lambda(j)`.
    pub fn lattice_prefactor(&self, j: u32) -> Result<f64> {
        Ok(std::f64::consts::SQRT_2 * self.a_lambda(j)?)
    }
}
