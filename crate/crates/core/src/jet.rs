//! Second-order forward-mode jets on the parameter plane.
//!
//! A [`Jet2`] carries a value together with its gradient and Hessian with
//! respect to `(u, v)`. Arithmetic propagates all three exactly, which lets
//! the engine differentiate Gauss-map coordinates twice without a second
//! round of finite differences.

use std::ops::{Add, Div, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

/// A point `(u, v)` of the parameter plane. Invariant surfaces use `v = t`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct ParamPoint {
    pub u: f64,
    pub v: f64,
}

impl ParamPoint {
    pub const fn new(u: f64, v: f64) -> Self {
        Self { u, v }
    }

    pub fn offset(self, du: f64, dv: f64) -> Self {
        Self::new(self.u + du, self.v + dv)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Jet2 {
    pub value: f64,
    pub grad: [f64; 2],
    /// Symmetric; `hess[0][1] == hess[1][0]`.
    pub hess: [[f64; 2]; 2],
}

impl Jet2 {
    pub const fn new(value: f64, grad: [f64; 2], hess: [[f64; 2]; 2]) -> Self {
        Self { value, grad, hess }
    }

    pub const fn constant(value: f64) -> Self {
        Self::new(value, [0.0; 2], [[0.0; 2]; 2])
    }

    /// The coordinate function `u` evaluated at `value`.
    pub const fn var_u(value: f64) -> Self {
        Self::new(value, [1.0, 0.0], [[0.0; 2]; 2])
    }

    /// The coordinate function `v` evaluated at `value`.
    pub const fn var_v(value: f64) -> Self {
        Self::new(value, [0.0, 1.0], [[0.0; 2]; 2])
    }

    /// A function of `u` alone given its first two derivatives.
    pub const fn of_u(value: f64, d1: f64, d2: f64) -> Self {
        Self::new(value, [d1, 0.0], [[d2, 0.0], [0.0, 0.0]])
    }

    /// Chain rule: `g(self)` given `g`, `g'` and `g''` at `self.value`.
    pub fn compose(self, g: f64, dg: f64, ddg: f64) -> Self {
        let [a, b] = self.grad;
        let h = self.hess;
        Self::new(
            g,
            [dg * a, dg * b],
            [
                [ddg * a * a + dg * h[0][0], ddg * a * b + dg * h[0][1]],
                [ddg * a * b + dg * h[1][0], ddg * b * b + dg * h[1][1]],
            ],
        )
    }

    pub fn sin(self) -> Self {
        let (s, c) = self.value.sin_cos();
        self.compose(s, c, -s)
    }

    pub fn cos(self) -> Self {
        let (s, c) = self.value.sin_cos();
        self.compose(c, -s, -c)
    }

    pub fn square(self) -> Self {
        self * self
    }

    pub fn recip(self) -> Self {
        let r = 1.0 / self.value;
        self.compose(r, -r * r, 2.0 * r * r * r)
    }

    pub fn scale(self, s: f64) -> Self {
        Self::new(
            s * self.value,
            [s * self.grad[0], s * self.grad[1]],
            [
                [s * self.hess[0][0], s * self.hess[0][1]],
                [s * self.hess[1][0], s * self.hess[1][1]],
            ],
        )
    }

    /// Largest absolute entry among value, gradient and Hessian.
    pub fn max_abs(&self) -> f64 {
        let mut m = self.value.abs();
        for g in self.grad {
            m = m.max(g.abs());
        }
        for row in self.hess {
            for h in row {
                m = m.max(h.abs());
            }
        }
        m
    }

    /// Plane Laplacian `f_uu + f_vv`.
    pub fn flat_laplacian(&self) -> f64 {
        self.hess[0][0] + self.hess[1][1]
    }
}

impl Add for Jet2 {
    type Output = Self;
    fn add(self, r: Self) -> Self {
        Self::new(
            self.value + r.value,
            [self.grad[0] + r.grad[0], self.grad[1] + r.grad[1]],
            [
                [self.hess[0][0] + r.hess[0][0], self.hess[0][1] + r.hess[0][1]],
                [self.hess[1][0] + r.hess[1][0], self.hess[1][1] + r.hess[1][1]],
            ],
        )
    }
}

impl Sub for Jet2 {
    type Output = Self;
    fn sub(self, r: Self) -> Self {
        self + (-r)
    }
}

impl Neg for Jet2 {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale(-1.0)
    }
}

impl Mul for Jet2 {
    type Output = Self;
    fn mul(self, r: Self) -> Self {
        let (f, g) = (self, r);
        let mut hess = [[0.0; 2]; 2];
        for (i, row) in hess.iter_mut().enumerate() {
            for (j, h) in row.iter_mut().enumerate() {
                *h = f.hess[i][j] * g.value
                    + f.grad[i] * g.grad[j]
                    + f.grad[j] * g.grad[i]
                    + f.value * g.hess[i][j];
            }
        }
        Self::new(
            f.value * g.value,
            [
                f.grad[0] * g.value + f.value * g.grad[0],
                f.grad[1] * g.value + f.value * g.grad[1],
            ],
            hess,
        )
    }
}

impl Div for Jet2 {
    type Output = Self;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, r: Self) -> Self {
        self * r.recip()
    }
}

impl Add<f64> for Jet2 {
    type Output = Self;
    fn add(mut self, r: f64) -> Self {
        self.value += r;
        self
    }
}

impl Sub<f64> for Jet2 {
    type Output = Self;
    fn sub(mut self, r: f64) -> Self {
        self.value -= r;
        self
    }
}

impl Mul<f64> for Jet2 {
    type Output = Self;
    fn mul(self, r: f64) -> Self {
        self.scale(r)
    }
}

impl Mul<Jet2> for f64 {
    type Output = Jet2;
    fn mul(self, r: Jet2) -> Jet2 {
        r.scale(self)
    }
}
