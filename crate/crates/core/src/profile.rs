//! Profile curves `z(u)` generating invariant surfaces.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::bessel::{self, BesselKind};
use crate::fd;
use crate::jet::ParamPoint;
use crate::{Error, Result};

/// `z`, `z'`, `z''`, `z'''` at one point.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ProfileJet {
    pub z: f64,
    pub dz: f64,
    pub d2z: f64,
    pub d3z: f64,
}

impl ProfileJet {
    fn affine(z0: f64, z1: f64, z2: f64, a: [f64; 4], b: [f64; 4]) -> Self {
        Self {
            z: z0 + z1 * a[0] + z2 * b[0],
            dz: z1 * a[1] + z2 * b[1],
            d2z: z1 * a[2] + z2 * b[2],
            d3z: z1 * a[3] + z2 * b[3],
        }
    }
}

/// A profile given only by its values; derivatives are taken numerically.
#[derive(Clone)]
pub struct NumericProfile {
    pub name: String,
    pub f: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    /// Whether the function is only defined for `u > 0`.
    pub positive_only: bool,
}

impl fmt::Debug for NumericProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("NumericProfile").field("name", &self.name).finish_non_exhaustive()
    }
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Profile {
    /// `z0 + z1 u^2 + z2 ln u`, for `u > 0`.
    QuadraticLog { z0: f64, z1: f64, z2: f64 },
    /// `z0 + z1 u + z2 u^2`.
    Quadratic { z0: f64, z1: f64, z2: f64 },
    /// `z0 + z1 J0(√λ u) + z2 Y0(√λ u)` for `λ > 0`, and
    /// `z0 + z1 I0(√-λ u) + z2 K0(√-λ u)` for `λ < 0`; `u > 0`.
    Bessel { z0: f64, z1: f64, z2: f64, lambda: f64 },
    /// `z0 + z1 cos(√Λ u) + z2 sin(√Λ u)` with `Λ > 0`.
    Trig { z0: f64, z1: f64, z2: f64, big_lambda: f64 },
    /// `z0 + z1 cosh(√-Λ u) + z2 sinh(√-Λ u)` with `Λ < 0`.
    Hyper { z0: f64, z1: f64, z2: f64, big_lambda: f64 },
    /// `base + epsilon u^3`, used to break exact solutions on purpose.
    Perturbed { base: Box<Profile>, epsilon: f64 },
    #[serde(skip)]
    Numeric(NumericProfile),
}

impl Profile {
    pub fn quadratic_log(z0: f64, z1: f64, z2: f64) -> Self {
        Self::QuadraticLog { z0, z1, z2 }
    }

    pub fn quadratic(z0: f64, z1: f64, z2: f64) -> Self {
        Self::Quadratic { z0, z1, z2 }
    }

    pub fn constant(z0: f64) -> Self {
        Self::Quadratic { z0, z1: 0.0, z2: 0.0 }
    }

    pub fn bessel(z0: f64, z1: f64, z2: f64, lambda: f64) -> Result<Self> {
        if !(lambda != 0.0 && lambda.is_finite()) {
            return Err(Error::InvalidFamilyParams(format!("Bessel profile needs a finite nonzero λ, got {lambda}")));
        }
        Ok(Self::Bessel { z0, z1, z2, lambda })
    }

    pub fn trig(z0: f64, z1: f64, z2: f64, big_lambda: f64) -> Result<Self> {
        if !(big_lambda > 0.0 && big_lambda.is_finite()) {
            return Err(Error::InvalidFamilyParams(format!("trigonometric profile needs Λ > 0, got {big_lambda}")));
        }
        Ok(Self::Trig { z0, z1, z2, big_lambda })
    }

    pub fn hyper(z0: f64, z1: f64, z2: f64, big_lambda: f64) -> Result<Self> {
        if !(big_lambda < 0.0 && big_lambda.is_finite()) {
            return Err(Error::InvalidFamilyParams(format!("hyperbolic profile needs Λ < 0, got {big_lambda}")));
        }
        Ok(Self::Hyper { z0, z1, z2, big_lambda })
    }

    /// Trigonometric for `Λ > 0`, hyperbolic for `Λ < 0`.
    pub fn oscillatory(z0: f64, z1: f64, z2: f64, big_lambda: f64) -> Result<Self> {
        if big_lambda > 0.0 {
            Self::trig(z0, z1, z2, big_lambda)
        } else {
            Self::hyper(z0, z1, z2, big_lambda)
        }
    }

    pub fn numeric(name: impl Into<String>, positive_only: bool, f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        Self::Numeric(NumericProfile { name: name.into(), f: Arc::new(f), positive_only })
    }

    pub fn perturbed(self, epsilon: f64) -> Self {
        Self::Perturbed { base: Box::new(self), epsilon }
    }

    /// Whether the profile is only defined for `u > 0`.
    pub fn requires_positive_u(&self) -> bool {
        match self {
            Self::QuadraticLog { .. } | Self::Bessel { .. } => true,
            Self::Perturbed { base, .. } => base.requires_positive_u(),
            Self::Numeric(n) => n.positive_only,
            _ => false,
        }
    }

    /// Whether derivatives are exact rather than numerical.
    pub fn is_closed_form(&self) -> bool {
        match self {
            Self::Numeric(_) => false,
            Self::Perturbed { base, .. } => base.is_closed_form(),
            _ => true,
        }
    }

    pub fn name(&self) -> &str {
        match self {
            Self::QuadraticLog { .. } => "quadratic_log",
            Self::Quadratic { .. } => "quadratic",
            Self::Bessel { .. } => "bessel",
            Self::Trig { .. } => "trig",
            Self::Hyper { .. } => "hyper",
            Self::Perturbed { .. } => "perturbed",
            Self::Numeric(n) => &n.name,
        }
    }

    pub fn value(&self, u: f64) -> Result<f64> {
        Ok(self.eval(u)?.z)
    }

    pub fn eval(&self, u: f64) -> Result<ProfileJet> {
        if !u.is_finite() || (self.requires_positive_u() && u <= 0.0) {
            return Err(Error::Domain { what: "profile curve", arg: u });
        }
        Ok(match *self {
            Self::QuadraticLog { z0, z1, z2 } => ProfileJet::affine(
                z0,
                z1,
                z2,
                [u * u, 2.0 * u, 2.0, 0.0],
                [u.ln(), 1.0 / u, -1.0 / (u * u), 2.0 / (u * u * u)],
            ),
            Self::Quadratic { z0, z1, z2 } => {
                ProfileJet::affine(z0, z1, z2, [u, 1.0, 0.0, 0.0], [u * u, 2.0 * u, 2.0, 0.0])
            }
            Self::Bessel { z0, z1, z2, lambda } => {
                let k = lambda.abs().sqrt();
                let x = k * u;
                let (a, b) = if lambda > 0.0 {
                    (oscillating_bessel(BesselKind::J0, x)?, oscillating_bessel(BesselKind::Y0, x)?)
                } else {
                    (modified_i(x)?, modified_k(x)?)
                };
                let scale = |d: [f64; 4]| [d[0], k * d[1], k * k * d[2], k * k * k * d[3]];
                ProfileJet::affine(z0, z1, z2, scale(a), scale(b))
            }
            Self::Trig { z0, z1, z2, big_lambda } => {
                let k = big_lambda.sqrt();
                let (s, c) = (k * u).sin_cos();
                ProfileJet::affine(
                    z0,
                    z1,
                    z2,
                    [c, -k * s, -k * k * c, k * k * k * s],
                    [s, k * c, -k * k * s, -k * k * k * c],
                )
            }
            Self::Hyper { z0, z1, z2, big_lambda } => {
                let k = (-big_lambda).sqrt();
                let (s, c) = ((k * u).sinh(), (k * u).cosh());
                ProfileJet::affine(
                    z0,
                    z1,
                    z2,
                    [c, k * s, k * k * c, k * k * k * s],
                    [s, k * c, k * k * s, k * k * k * c],
                )
            }
            Self::Perturbed { ref base, epsilon } => {
                let b = base.eval(u)?;
                ProfileJet {
                    z: b.z + epsilon * u * u * u,
                    dz: b.dz + 3.0 * epsilon * u * u,
                    d2z: b.d2z + 6.0 * epsilon * u,
                    d3z: b.d3z + 6.0 * epsilon,
                }
            }
            Self::Numeric(ref n) => {
                if n.positive_only && u <= fd::STENCIL_REACH {
                    return Err(Error::StencilOutOfDomain { u, t: 0.0 });
                }
                let f = |p: ParamPoint| [(n.f)(p.u)];
                let p = ParamPoint::new(u, 0.0);
                let h = fd::HIGHER_STEP;
                ProfileJet {
                    z: (n.f)(u),
                    dz: fd::apply(&f, p, fd::D1_CENTRAL, fd::IDENTITY, fd::FIRST_STEP)[0],
                    d2z: fd::apply(&f, p, fd::D2_4, fd::IDENTITY, h)[0],
                    d3z: fd::apply(&f, p, fd::D3_4, fd::IDENTITY, h)[0],
                }
            }
        })
    }
}

/// `[F, F', F'', F''']` for `F = J0` or `Y0`, using `F' = -F_1` and Bessel's
/// equation for the higher derivatives.
fn oscillating_bessel(kind: BesselKind, x: f64) -> Result<[f64; 4]> {
    let c0 = bessel::bessel_eval(kind, x)?;
    let d1 = bessel::bessel_deriv(kind, x)?;
    let c1 = -d1;
    Ok([c0, d1, -c0 + c1 / x, c1 + c0 / x - 2.0 * c1 / (x * x)])
}

fn modified_i(x: f64) -> Result<[f64; 4]> {
    let i0 = bessel::bessel_eval(BesselKind::I0, x)?;
    let i1 = bessel::bessel_deriv(BesselKind::I0, x)?;
    Ok([i0, i1, i0 - i1 / x, i1 - i0 / x + 2.0 * i1 / (x * x)])
}

fn modified_k(x: f64) -> Result<[f64; 4]> {
    let k0 = bessel::bessel_eval(BesselKind::K0, x)?;
    let k1 = -bessel::bessel_deriv(BesselKind::K0, x)?;
    Ok([k0, -k1, k0 + k1 / x, -k1 - k0 / x - 2.0 * k1 / (x * x)])
}
