//! Bessel functions of orders 0 and 1 (`J`, `Y`, `I`, `K`), their
//! derivatives, and the positive zeros of `J0`.
//!
//! Evaluation regions:
//!
//! | kind  | series        | middle                              | asymptotic |
//! |-------|---------------|-------------------------------------|------------|
//! | J, Y  | `x <= 8`      | Miller recurrence + Neumann series  | `x > 25`   |
//! | I     | `x <= 25`     |                                     | `x > 25`   |
//! | K     | `x <= 2`      | trapezoid rule on the cosh integral | `x > 25`   |
//!
//! The Hankel expansions truncate with error of order `exp(-2x)`, so they
//! only take over where that is below `1e-21`.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const EULER_GAMMA: f64 = 0.5772156649015329;

const SERIES_LIMIT: f64 = 8.0;
const ASYMPTOTIC_LIMIT: f64 = 25.0;
const K_SERIES_LIMIT: f64 = 2.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BesselFamily {
    J,
    Y,
    I,
    K,
}

/// A Bessel function `family_order`; only orders 0 and 1 are representable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BesselKind {
    family: BesselFamily,
    order: u8,
}

impl BesselKind {
    pub const J0: Self = Self { family: BesselFamily::J, order: 0 };
    pub const J1: Self = Self { family: BesselFamily::J, order: 1 };
    pub const Y0: Self = Self { family: BesselFamily::Y, order: 0 };
    pub const Y1: Self = Self { family: BesselFamily::Y, order: 1 };
    pub const I0: Self = Self { family: BesselFamily::I, order: 0 };
    pub const I1: Self = Self { family: BesselFamily::I, order: 1 };
    pub const K0: Self = Self { family: BesselFamily::K, order: 0 };
    pub const K1: Self = Self { family: BesselFamily::K, order: 1 };

    pub fn new(family: BesselFamily, order: u8) -> Result<Self> {
        if order > 1 {
            return Err(Error::InvalidFamilyParams(format!(
                "Bessel order {order} is not supported (0 or 1 only)"
            )));
        }
        Ok(Self { family, order })
    }

    pub fn family(self) -> BesselFamily {
        self.family
    }

    pub fn order(self) -> u8 {
        self.order
    }

    fn name(self) -> &'static str {
        match (self.family, self.order) {
            (BesselFamily::J, 0) => "J0",
            (BesselFamily::J, _) => "J1",
            (BesselFamily::Y, 0) => "Y0",
            (BesselFamily::Y, _) => "Y1",
            (BesselFamily::I, 0) => "I0",
            (BesselFamily::I, _) => "I1",
            (BesselFamily::K, 0) => "K0",
            (BesselFamily::K, _) => "K1",
        }
    }

    fn check_argument(self, x: f64) -> Result<()> {
        if x.is_nan() {
            return Err(Error::Domain { what: self.name(), arg: x });
        }
        match self.family {
            BesselFamily::J | BesselFamily::I if x < 0.0 => {
                Err(Error::Domain { what: self.name(), arg: x })
            }
            BesselFamily::Y | BesselFamily::K if x <= 0.0 => {
                Err(Error::SingularArgument { what: self.name(), arg: x })
            }
            _ => Ok(()),
        }
    }
}

/// Evaluate `kind` at `x`.
pub fn bessel_eval(kind: BesselKind, x: f64) -> Result<f64> {
    kind.check_argument(x)?;
    Ok(eval_unchecked(kind, x))
}

/// Derivative of `kind` at `x`: `J0' = -J1`, `Y0' = -Y1`, `I0' = I1`,
/// `K0' = -K1`; order-1 derivatives follow from the standard recurrences.
pub fn bessel_deriv(kind: BesselKind, x: f64) -> Result<f64> {
    kind.check_argument(x)?;
    use BesselFamily::*;
    let f = kind.family;
    Ok(match kind.order {
        0 => match f {
            J => -j1(x),
            Y => -y1(x),
            I => i1(x),
            K => -k1(x),
        },
        _ => {
            if x == 0.0 {
                // J1'(0) = I1'(0) = 1/2
                return Ok(0.5);
            }
            match f {
                J => j0(x) - j1(x) / x,
                Y => y0(x) - y1(x) / x,
                I => i0(x) - i1(x) / x,
                K => -k0(x) - k1(x) / x,
            }
        }
    })
}

fn eval_unchecked(kind: BesselKind, x: f64) -> f64 {
    use BesselFamily::*;
    match (kind.family, kind.order) {
        (J, 0) => j0(x),
        (J, _) => j1(x),
        (Y, 0) => y0(x),
        (Y, _) => y1(x),
        (I, 0) => i0(x),
        (I, _) => i1(x),
        (K, 0) => k0(x),
        (K, _) => k1(x),
    }
}

// Unchecked evaluators. Callers guarantee the argument is in range.

pub(crate) fn j0(x: f64) -> f64 {
    if x <= SERIES_LIMIT {
        j_series(0, x)
    } else if x <= ASYMPTOTIC_LIMIT {
        MillerTable::new(x).j0
    } else {
        hankel(0, x).0
    }
}

pub(crate) fn j1(x: f64) -> f64 {
    if x <= SERIES_LIMIT {
        j_series(1, x)
    } else if x <= ASYMPTOTIC_LIMIT {
        MillerTable::new(x).j1
    } else {
        hankel(1, x).0
    }
}

pub(crate) fn y0(x: f64) -> f64 {
    if x <= SERIES_LIMIT {
        y_series(0, x)
    } else if x <= ASYMPTOTIC_LIMIT {
        MillerTable::new(x).y0()
    } else {
        hankel(0, x).1
    }
}

pub(crate) fn y1(x: f64) -> f64 {
    if x <= SERIES_LIMIT {
        y_series(1, x)
    } else if x <= ASYMPTOTIC_LIMIT {
        MillerTable::new(x).y1()
    } else {
        hankel(1, x).1
    }
}

pub(crate) fn i0(x: f64) -> f64 {
    if x <= ASYMPTOTIC_LIMIT {
        i_series(0, x)
    } else {
        i_asymptotic(0, x)
    }
}

pub(crate) fn i1(x: f64) -> f64 {
    if x <= ASYMPTOTIC_LIMIT {
        i_series(1, x)
    } else {
        i_asymptotic(1, x)
    }
}

pub(crate) fn k0(x: f64) -> f64 {
    if x <= K_SERIES_LIMIT {
        k_series(0, x)
    } else if x <= ASYMPTOTIC_LIMIT {
        k_integral(0, x)
    } else {
        k_asymptotic(0, x)
    }
}

pub(crate) fn k1(x: f64) -> f64 {
    if x <= K_SERIES_LIMIT {
        k_series(1, x)
    } else if x <= ASYMPTOTIC_LIMIT {
        k_integral(1, x)
    } else {
        k_asymptotic(1, x)
    }
}

/// `sum_k s^k q^k / (k! (k+order)!)` with `q = x^2/4`, times `(x/2)^order`.
fn power_series(order: u8, x: f64, alternating: bool) -> f64 {
    let q = 0.25 * x * x;
    let sign = if alternating { -1.0 } else { 1.0 };
    let nu = f64::from(order);
    let mut term: f64 = 1.0;
    let mut sum = term;
    let mut magnitude = term.abs();
    for k in 1..300 {
        let kf = k as f64;
        term *= sign * q / (kf * (kf + nu));
        sum += term;
        magnitude += term.abs();
        if term.abs() <= 1e-18 * magnitude && kf > 0.5 * x {
            break;
        }
    }
    if order == 1 {
        sum * 0.5 * x
    } else {
        sum
    }
}

fn j_series(order: u8, x: f64) -> f64 {
    power_series(order, x, true)
}

fn i_series(order: u8, x: f64) -> f64 {
    power_series(order, x, false)
}

/// `sum_k (psi(k+1) + psi(k+1+order)) s^k q^k / (k! (k+order)!)`.
fn digamma_weighted_series(order: u8, x: f64, alternating: bool) -> f64 {
    let q = 0.25 * x * x;
    let sign = if alternating { -1.0 } else { 1.0 };
    let nu = f64::from(order);
    // psi(1) = -gamma, psi(2) = 1 - gamma
    let mut psi_a = -EULER_GAMMA;
    let mut psi_b = if order == 1 { 1.0 - EULER_GAMMA } else { -EULER_GAMMA };
    let mut coeff = 1.0;
    let mut sum = coeff * (psi_a + psi_b);
    let mut magnitude = sum.abs();
    for k in 1..300 {
        let kf = k as f64;
        coeff *= sign * q / (kf * (kf + nu));
        psi_a += 1.0 / kf;
        psi_b += 1.0 / (kf + nu);
        let term = coeff * (psi_a + psi_b);
        sum += term;
        magnitude += term.abs();
        if term.abs() <= 1e-18 * magnitude && kf > 0.5 * x {
            break;
        }
    }
    sum
}

fn y_series(order: u8, x: f64) -> f64 {
    let log_half = (0.5 * x).ln();
    let s = digamma_weighted_series(order, x, true);
    if order == 0 {
        (2.0 / PI) * log_half * j_series(0, x) - s / PI
    } else {
        -2.0 / (PI * x) + (2.0 / PI) * log_half * j_series(1, x) - (0.5 * x) * s / PI
    }
}

fn k_series(order: u8, x: f64) -> f64 {
    let log_half = (0.5 * x).ln();
    let s = digamma_weighted_series(order, x, false);
    if order == 0 {
        -log_half * i_series(0, x) + 0.5 * s
    } else {
        1.0 / x + log_half * i_series(1, x) - 0.25 * x * s
    }
}

/// Coefficient `a_k(nu) = prod_{j=1..k} (4 nu^2 - (2j-1)^2) / (k! 8^k)`,
/// generated incrementally.
struct HankelCoefficients {
    mu: f64,
    k: u32,
    value: f64,
}

impl HankelCoefficients {
    fn new(order: u8) -> Self {
        let nu = f64::from(order);
        Self { mu: 4.0 * nu * nu, k: 0, value: 1.0 }
    }
}

impl Iterator for HankelCoefficients {
    type Item = f64;
    fn next(&mut self) -> Option<f64> {
        let current = self.value;
        self.k += 1;
        let k = f64::from(self.k);
        let odd = 2.0 * k - 1.0;
        self.value *= (self.mu - odd * odd) / (8.0 * k);
        Some(current)
    }
}

/// Sum `sum_k sign^k a_k / x^k` until the terms stop decreasing.
fn asymptotic_sum(order: u8, x: f64, alternating: bool) -> f64 {
    let mut sum = 0.0;
    let mut previous = f64::INFINITY;
    let mut power = 1.0;
    for (k, a) in HankelCoefficients::new(order).enumerate().take(60) {
        let sign = if alternating && k % 2 == 1 { -1.0 } else { 1.0 };
        let term = sign * a * power;
        if term.abs() > previous {
            break;
        }
        sum += term;
        if term.abs() < 1e-18 * sum.abs() {
            break;
        }
        previous = term.abs();
        power /= x;
    }
    sum
}

/// Hankel expansion, returning `(J_order(x), Y_order(x))`.
fn hankel(order: u8, x: f64) -> (f64, f64) {
    let mut p = 0.0;
    let mut q = 0.0;
    let mut power = 1.0;
    let mut previous = f64::INFINITY;
    for (k, a) in HankelCoefficients::new(order).enumerate().take(80) {
        let term = a * power;
        if term.abs() > previous {
            break;
        }
        previous = term.abs();
        // P collects even k with sign (-1)^(k/2); Q odd k with (-1)^((k-1)/2)
        let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if k % 2 == 0 {
            p += sign * term;
        } else {
            q += sign * term;
        }
        if term.abs() < 1e-18 {
            break;
        }
        power /= x;
    }
    let chi = x - (f64::from(order) * FRAC_PI_2 + FRAC_PI_4);
    let (s, c) = chi.sin_cos();
    let amp = (2.0 / (PI * x)).sqrt();
    (amp * (p * c - q * s), amp * (p * s + q * c))
}

fn i_asymptotic(order: u8, x: f64) -> f64 {
    x.exp() / (2.0 * PI * x).sqrt() * asymptotic_sum(order, x, true)
}

fn k_asymptotic(order: u8, x: f64) -> f64 {
    (PI / (2.0 * x)).sqrt() * (-x).exp() * asymptotic_sum(order, x, false)
}

/// `K_nu(x) = int_0^inf exp(-x cosh t) cosh(nu t) dt` by the trapezoid rule,
/// which converges geometrically for this even, entire integrand.
fn k_integral(order: u8, x: f64) -> f64 {
    const STEP: f64 = 0.05;
    let nu = f64::from(order);
    let scaled = |t: f64| {
        let sh = (0.5 * t).sinh();
        (-2.0 * x * sh * sh).exp() * (nu * t).cosh()
    };
    let mut sum = 0.5 * scaled(0.0);
    for k in 1..2000 {
        let term = scaled(k as f64 * STEP);
        sum += term;
        if term < 1e-19 * sum {
            break;
        }
    }
    STEP * sum * (-x).exp()
}

/// Values of `J_0 .. J_N` at `x` from Miller's backward recurrence,
/// normalised by `J_0 + 2 sum J_2k = 1`.
struct MillerTable {
    x: f64,
    j: Vec<f64>,
    j0: f64,
    j1: f64,
}

impl MillerTable {
    fn new(x: f64) -> Self {
        let top = 2 * ((x + 50.0) as usize).div_ceil(2);
        let mut j = vec![0.0; top + 2];
        j[top] = 1e-30;
        for k in (1..=top).rev() {
            j[k - 1] = (2.0 * k as f64 / x) * j[k] - j[k + 1];
            if j[k - 1].abs() > 1e250 {
                for v in j.iter_mut().skip(k - 1) {
                    *v *= 1e-250;
                }
            }
        }
        let norm = j[0] + 2.0 * j.iter().skip(2).step_by(2).sum::<f64>();
        for v in &mut j {
            *v /= norm;
        }
        let (j0, j1) = (j[0], j[1]);
        Self { x, j, j0, j1 }
    }

    /// Neumann series `Y0 = (2/pi)(ln(x/2) + gamma) J0 - (4/pi) sum (-1)^k J_2k / k`.
    fn y0(&self) -> f64 {
        let mut tail = 0.0;
        for k in 1..(self.j.len() - 1) / 2 {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            tail += sign * self.j[2 * k] / k as f64;
        }
        (2.0 / PI) * ((0.5 * self.x).ln() + EULER_GAMMA) * self.j0 - (4.0 / PI) * tail
    }

    /// `Y1 = -Y0'`, differentiating the Neumann series term by term.
    fn y1(&self) -> f64 {
        let mut tail = 0.0;
        for k in 1..(self.j.len() - 1) / 2 {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            tail += sign * (self.j[2 * k - 1] - self.j[2 * k + 1]) / k as f64;
        }
        let log_term = (0.5 * self.x).ln() + EULER_GAMMA;
        -(2.0 / PI) * self.j0 / self.x + (2.0 / PI) * log_term * self.j1 + (2.0 / PI) * tail
    }
}

/// First `n` positive zeros of `J0`, increasing. McMahon's expansion seeds
/// a Newton iteration with `J0' = -J1`.
pub fn j0_zeros(n: usize) -> Vec<f64> {
    (1..=n).map(j0_zero).collect()
}

fn j0_zero(index: usize) -> f64 {
    let beta = (index as f64 - 0.25) * PI;
    let b2 = beta * beta;
    let mut x = beta + 1.0 / (8.0 * beta) - 31.0 / (384.0 * beta * b2)
        + 3779.0 / (15360.0 * beta * b2 * b2);
    for _ in 0..50 {
        let step = j0(x) / j1(x);
        x += step;
        if step.abs() <= 1e-16 * x {
            break;
        }
    }
    x
}
