//! Helicoidal and parabolic revolution surfaces with their closed-form
//! geometry.
//!
//! Helicoidal: `R(u, t) = (u cos t, u sin t, z(u) + c t)`, `u > 0`.
//! Parabolic revolution:
//! `P(u, t) = (a t + u, b t, c t + (a c1 + b c2) t^2 / 2 + c1 u t + z(u))`, `b > 0`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::iso::{IsoPoint, IsoVector, MotionParams};
use crate::jet::{Jet2, ParamPoint};
use crate::profile::{Profile, ProfileJet};
use crate::surface::{
    lift_to_paraboloid, FundamentalForms, GaussMapKind, ParamRect, ParametricSurface, SurfaceJet, NEAR_SINGULAR_DISTANCE,
};
use crate::{Error, Result};

/// A constant-coefficient-in-`t` second-order operator
/// `c_uu ∂uu + c_ut ∂ut + c_tt ∂tt + c_u ∂u + c_t ∂t`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LaplaceOperator {
    pub c_uu: f64,
    pub c_ut: f64,
    pub c_tt: f64,
    pub c_u: f64,
    pub c_t: f64,
}

impl LaplaceOperator {
    pub fn apply(&self, f: &Jet2) -> f64 {
        self.c_uu * f.hess[0][0]
            + self.c_ut * f.hess[0][1]
            + self.c_tt * f.hess[1][1]
            + self.c_u * f.grad[0]
            + self.c_t * f.grad[1]
    }
}

/// Everything the closed forms give at one parameter point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosedFormGeometry {
    pub forms: FundamentalForms,
    pub gaussian_curvature: f64,
    pub mean_curvature: f64,
    pub minimal_normal: IsoVector,
    pub parabolic_gauss_map: IsoVector,
    pub laplacian: LaplaceOperator,
}

fn forms(g: [f64; 3], h: [f64; 3]) -> FundamentalForms {
    let det_g = g[0] * g[2] - g[1] * g[1];
    FundamentalForms {
        g11: g[0],
        g12: g[1],
        g22: g[2],
        h11: h[0],
        h12: h[1],
        h22: h[2],
        det_g,
        inverse_metric: [[g[2] / det_g, -g[1] / det_g], [-g[1] / det_g, g[0] / det_g]],
    }
}

fn check_rect(rect: &ParamRect) -> Result<()> {
    let ok = [rect.u_min, rect.u_max, rect.v_min, rect.v_max].iter().all(|x| x.is_finite())
        && rect.u_min < rect.u_max
        && rect.v_min < rect.v_max;
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidFamilyParams(format!("invalid parameter rectangle {rect:?}")))
    }
}

fn check_finite(name: &str, x: f64) -> Result<()> {
    if x.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidFamilyParams(format!("{name} must be finite, got {x}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HelicoidalSubfamily {
    /// `c = 0`: a surface of revolution about the `z`-axis.
    Revolution,
    Helicoidal,
}

#[derive(Debug, Clone)]
pub struct HelicoidalSurface {
    c: f64,
    profile: Profile,
    domain: ParamRect,
}

impl HelicoidalSurface {
    pub const DEFAULT_DOMAIN: ParamRect = ParamRect::new(0.5, 3.0, 0.0, 4.0 * PI);

    pub fn new(c: f64, profile: Profile) -> Result<Self> {
        Self::with_domain(c, profile, Self::DEFAULT_DOMAIN)
    }

    pub fn with_domain(c: f64, profile: Profile, domain: ParamRect) -> Result<Self> {
        check_finite("c", c)?;
        check_rect(&domain)?;
        if domain.u_min <= 0.0 {
            return Err(Error::InvalidFamilyParams(format!(
                "helicoidal surfaces need u > 0, got u_min = {}",
                domain.u_min
            )));
        }
        Ok(Self { c, profile, domain })
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn profile(&self) -> &Profile {
        &self.profile
    }

    pub fn subfamily(&self) -> HelicoidalSubfamily {
        if self.c == 0.0 {
            HelicoidalSubfamily::Revolution
        } else {
            HelicoidalSubfamily::Helicoidal
        }
    }

    /// The screw motion `ψ_s` with `R(u, t + s) = ψ_s(R(u, t))`.
    pub fn one_parameter_motion(&self, s: f64) -> MotionParams {
        MotionParams { phi: s, c: self.c * s, ..MotionParams::IDENTITY }
    }

    /// `Δ = ∂uu + (1/u) ∂u + (1/u^2) ∂tt`, the same for every profile.
    pub fn laplace_operator(&self, p: ParamPoint) -> LaplaceOperator {
        let u = p.u;
        LaplaceOperator { c_uu: 1.0, c_ut: 0.0, c_tt: 1.0 / (u * u), c_u: 1.0 / u, c_t: 0.0 }
    }

    fn profile_at(&self, p: ParamPoint) -> Result<ProfileJet> {
        if !self.domain.contains(p) {
            return Err(Error::OutsideDomain { u: p.u, t: p.v });
        }
        if p.u < NEAR_SINGULAR_DISTANCE {
            return Err(Error::NearSingular { u: p.u, t: p.v, distance: p.u });
        }
        self.profile.eval(p.u)
    }

    pub fn closed_forms(&self, p: ParamPoint) -> Result<ClosedFormGeometry> {
        let z = self.profile_at(p)?;
        let (u, c) = (p.u, self.c);
        let (s, co) = p.v.sin_cos();
        let n = IsoVector::new((c / u) * s - z.dz * co, -(c / u) * co - z.dz * s, 1.0);
        Ok(ClosedFormGeometry {
            forms: forms([1.0, 0.0, u * u], [z.d2z, -c / u, u * z.dz]),
            gaussian_curvature: z.dz * z.d2z / u - c * c / u.powi(4),
            mean_curvature: (z.dz + u * z.d2z) / (2.0 * u),
            minimal_normal: n,
            parabolic_gauss_map: IsoVector::new(n.x1, n.x2, 0.5 * (1.0 - c * c / (u * u) - z.dz * z.dz)),
            laplacian: self.laplace_operator(p),
        })
    }

    /// Gauss-map coordinates as exact jets in `(u, t)`.
    pub fn gauss_map_jets(&self, kind: GaussMapKind, p: ParamPoint) -> Result<[Jet2; 3]> {
        let z = self.profile_at(p)?;
        let u = Jet2::var_u(p.u);
        let t = Jet2::var_v(p.v);
        let dz = Jet2::of_u(z.dz, z.d2z, z.d3z);
        let c_over_u = u.recip().scale(self.c);
        let n1 = c_over_u * t.sin() - dz * t.cos();
        let n2 = -(c_over_u * t.cos()) - dz * t.sin();
        Ok(match kind {
            GaussMapKind::Minimal => [n1, n2, Jet2::constant(1.0)],
            GaussMapKind::Parabolic => {
                let g3 = (c_over_u.square() + dz.square()).scale(-0.5) + 0.5;
                [n1, n2, g3]
            }
        })
    }

    /// `Δ` of each Gauss-map coordinate via the closed-form operator.
    pub fn gauss_map_laplacian(&self, kind: GaussMapKind, p: ParamPoint) -> Result<IsoVector> {
        let jets = self.gauss_map_jets(kind, p)?;
        let op = self.laplace_operator(p);
        Ok(IsoVector::new(op.apply(&jets[0]), op.apply(&jets[1]), op.apply(&jets[2])))
    }
}

impl ParametricSurface for HelicoidalSurface {
    fn position(&self, p: ParamPoint) -> IsoPoint {
        let (s, co) = p.v.sin_cos();
        let z = self.profile.value(p.u).unwrap_or(f64::NAN);
        IsoPoint::new(p.u * co, p.u * s, z + self.c * p.v)
    }

    fn domain(&self) -> ParamRect {
        self.domain
    }

    fn definition_domain(&self) -> ParamRect {
        ParamRect::new(0.0, f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY)
    }

    fn exact_jet(&self, p: ParamPoint) -> Option<SurfaceJet> {
        if !self.profile.is_closed_form() {
            return None;
        }
        let z = self.profile.eval(p.u).ok()?;
        let (u, c) = (p.u, self.c);
        let (s, co) = p.v.sin_cos();
        Some(SurfaceJet::from_derivatives([
            [u * co, u * s, z.z + c * p.v],
            [co, s, z.dz],
            [-u * s, u * co, c],
            [0.0, 0.0, z.d2z],
            [-s, co, 0.0],
            [-u * co, -u * s, 0.0],
            [0.0, 0.0, z.d3z],
            [0.0; 3],
            [-co, -s, 0.0],
            [u * s, -u * co, 0.0],
        ]))
    }

    fn singular_distance(&self, p: ParamPoint) -> Option<f64> {
        Some(p.u.abs())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ParabolicSubfamily {
    /// `c = c1 = c2 = 0`.
    Translation,
    /// `c = a c1 + b c2 = 0` with `(c1, c2) ≠ 0`.
    WarpedTranslation,
    General,
}

/// Type of the quadric `z - z0 = z2 x^2 + 2α x y + β y^2 + z1 x + γ y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QuadricType {
    EllipticParaboloid,
    ParabolicCylinder,
    HyperbolicParaboloid,
    Plane,
}

/// Coefficients `(α, β, γ)` of the implicit quadric and its type.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadricForm {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub kind: QuadricType,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParabolicParams {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub c1: f64,
    pub c2: f64,
}

#[derive(Debug, Clone)]
pub struct ParabolicRevolutionSurface {
    params: ParabolicParams,
    profile: Profile,
    domain: ParamRect,
}

impl ParabolicRevolutionSurface {
    pub const DEFAULT_DOMAIN: ParamRect = ParamRect::new(0.5, 3.0, -2.0, 2.0);

    pub fn new(params: ParabolicParams, profile: Profile) -> Result<Self> {
        Self::with_domain(params, profile, Self::DEFAULT_DOMAIN)
    }

    pub fn with_domain(params: ParabolicParams, profile: Profile, domain: ParamRect) -> Result<Self> {
        let ParabolicParams { a, b, c, c1, c2 } = params;
        for (name, x) in [("a", a), ("b", b), ("c", c), ("c1", c1), ("c2", c2)] {
            check_finite(name, x)?;
        }
        if b <= 0.0 {
            return Err(Error::InvalidFamilyParams(format!("parabolic revolution surfaces need b > 0, got {b}")));
        }
        check_rect(&domain)?;
        if profile.requires_positive_u() && domain.u_min <= 0.0 {
            return Err(Error::InvalidFamilyParams(format!(
                "profile {} needs u > 0, got u_min = {}",
                profile.name(),
                domain.u_min
            )));
        }
        Ok(Self { params, profile, domain })
    }

    pub fn params(&self) -> ParabolicParams {
        self.params
    }

    pub fn profile(&self) -> &Profile {
        &self.profile
    }

    /// `a c1 + b c2`.
    fn k(&self) -> f64 {
        self.params.a * self.params.c1 + self.params.b * self.params.c2
    }

    /// Exact comparisons: the classes are defined by parameter identities.
    pub fn subfamily(&self) -> ParabolicSubfamily {
        let ParabolicParams { c, c1, c2, .. } = self.params;
        if c == 0.0 && c1 == 0.0 && c2 == 0.0 {
            ParabolicSubfamily::Translation
        } else if c == 0.0 && self.k() == 0.0 {
            ParabolicSubfamily::WarpedTranslation
        } else {
            ParabolicSubfamily::General
        }
    }

    /// The parabolic rotation `ψ_s` with `P(u, t + s) = ψ_s(P(u, t))`.
    pub fn one_parameter_motion(&self, s: f64) -> MotionParams {
        let ParabolicParams { a, b, c, c1, c2 } = self.params;
        MotionParams { phi: 0.0, a: a * s, b: b * s, c: c * s + 0.5 * self.k() * s * s, c1: c1 * s, c2: c2 * s }
    }

    /// `Δ = ((a^2+b^2)/b^2) ∂uu - (2a/b^2) ∂ut + (1/b^2) ∂tt`.
    pub fn laplace_operator(&self) -> LaplaceOperator {
        let ParabolicParams { a, b, .. } = self.params;
        let b2 = b * b;
        LaplaceOperator { c_uu: (a * a + b2) / b2, c_ut: -2.0 * a / b2, c_tt: 1.0 / b2, c_u: 0.0, c_t: 0.0 }
    }

    fn profile_at(&self, p: ParamPoint) -> Result<ProfileJet> {
        if !self.domain.contains(p) {
            return Err(Error::OutsideDomain { u: p.u, t: p.v });
        }
        self.profile.eval(p.u)
    }

    pub fn closed_forms(&self, p: ParamPoint) -> Result<ClosedFormGeometry> {
        let z = self.profile_at(p)?;
        let ParabolicParams { a, b, c, c1, c2 } = self.params;
        let (u, t) = (p.u, p.v);
        let b2 = b * b;
        let k = self.k();
        let n = IsoVector::new(-c1 * t - z.dz, (a * z.dz - c - b * c2 * t - c1 * u) / b, 1.0);
        Ok(ClosedFormGeometry {
            forms: forms([1.0, a, a * a + b2], [z.d2z, c1, k]),
            gaussian_curvature: (k * z.d2z - c1 * c1) / b2,
            mean_curvature: (b * c2 - a * c1) / (2.0 * b2) + (a * a + b2) * z.d2z / (2.0 * b2),
            minimal_normal: n,
            parabolic_gauss_map: lift_to_paraboloid(n),
            laplacian: self.laplace_operator(),
        })
    }

    pub fn gauss_map_jets(&self, kind: GaussMapKind, p: ParamPoint) -> Result<[Jet2; 3]> {
        let z = self.profile_at(p)?;
        let ParabolicParams { a, b, c, c1, c2 } = self.params;
        let u = Jet2::var_u(p.u);
        let t = Jet2::var_v(p.v);
        let dz = Jet2::of_u(z.dz, z.d2z, z.d3z);
        let n1 = -(t.scale(c1) + dz);
        let n2 = (dz.scale(a) - t.scale(b * c2) - u.scale(c1) - c).scale(1.0 / b);
        Ok(match kind {
            GaussMapKind::Minimal => [n1, n2, Jet2::constant(1.0)],
            GaussMapKind::Parabolic => [n1, n2, (n1.square() + n2.square()).scale(-0.5) + 0.5],
        })
    }

    pub fn gauss_map_laplacian(&self, kind: GaussMapKind, p: ParamPoint) -> Result<IsoVector> {
        let jets = self.gauss_map_jets(kind, p)?;
        let op = self.laplace_operator();
        Ok(IsoVector::new(op.apply(&jets[0]), op.apply(&jets[1]), op.apply(&jets[2])))
    }

    /// For a quadratic profile `z0 + z1 u + z2 u^2`, the surface is the
    /// graph `z - z0 = z2 x^2 + 2α x y + β y^2 + z1 x + γ y`.
    pub fn quadric_form(&self) -> Option<QuadricForm> {
        let Profile::Quadratic { z1, z2, .. } = self.profile else {
            return None;
        };
        let ParabolicParams { a, b, c, c1, c2 } = self.params;
        let alpha = (c1 - 2.0 * a * z2) / (2.0 * b);
        let beta = (2.0 * a * a * z2 - a * c1 + b * c2) / (2.0 * b * b);
        let gamma = (c - a * z1) / b;
        let det = z2 * beta - alpha * alpha;
        let scale = z2.abs().max(beta.abs()).max(alpha.abs());
        let kind = if scale == 0.0 {
            QuadricType::Plane
        } else if det.abs() <= 1e-12 * scale * scale {
            QuadricType::ParabolicCylinder
        } else if det > 0.0 {
            QuadricType::EllipticParaboloid
        } else {
            QuadricType::HyperbolicParaboloid
        };
        Some(QuadricForm { alpha, beta, gamma, kind })
    }
}

impl ParametricSurface for ParabolicRevolutionSurface {
    fn position(&self, p: ParamPoint) -> IsoPoint {
        let ParabolicParams { a, b, c, c1, .. } = self.params;
        let (u, t) = (p.u, p.v);
        let z = self.profile.value(u).unwrap_or(f64::NAN);
        IsoPoint::new(a * t + u, b * t, c * t + 0.5 * self.k() * t * t + c1 * u * t + z)
    }

    fn domain(&self) -> ParamRect {
        self.domain
    }

    fn definition_domain(&self) -> ParamRect {
        if self.profile.requires_positive_u() {
            ParamRect::new(0.0, f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY)
        } else {
            ParamRect::PLANE
        }
    }

    fn exact_jet(&self, p: ParamPoint) -> Option<SurfaceJet> {
        if !self.profile.is_closed_form() {
            return None;
        }
        let z = self.profile.eval(p.u).ok()?;
        let ParabolicParams { a, b, c, c1, .. } = self.params;
        let (u, t) = (p.u, p.v);
        let k = self.k();
        Some(SurfaceJet::from_derivatives([
            [a * t + u, b * t, c * t + 0.5 * k * t * t + c1 * u * t + z.z],
            [1.0, 0.0, c1 * t + z.dz],
            [a, b, c + k * t + c1 * u],
            [0.0, 0.0, z.d2z],
            [0.0, 0.0, c1],
            [0.0, 0.0, k],
            [0.0, 0.0, z.d3z],
            [0.0; 3],
            [0.0; 3],
            [0.0; 3],
        ]))
    }
}
