//! Graph surfaces `x(u, v) = (u, v, f(u, v))` in normal form and the
//! harmonicity of their Gauss maps.
//!
//! In normal form the metric is the identity, `N_m = (-f_1, -f_2, 1)`,
//! `H = (f_11 + f_22)/2` and the Laplace-Beltrami operator is the plane
//! Laplacian. The closed forms are
//!
//! ```text
//! ΔN_m = (-2 H_1, -2 H_2, 0)
//! ΔG   = -2 ∇H - tr(S^2) 𝒩,     tr(S^2) = f_11^2 + 2 f_12^2 + f_22^2
//! Δx   = 2 H 𝒩
//! ```
//!
//! with `∇H = H_1 x_1 + H_2 x_2` and `𝒩 = (0, 0, 1)`.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::fd;
use crate::iso::{IsoPoint, IsoVector, ISOTROPIC_AXIS};
use crate::jet::{Jet2, ParamPoint};
use crate::spectral::GridSpec;
use crate::surface::{lift_to_paraboloid, ParamRect, ParametricSurface, SurfaceJet};
use crate::{Error, Result};

/// Tolerance for the agreement between closed-form and direct Laplacians.
pub const IDENTITY_TOL: f64 = 1e-8;

/// `coeff · u^pu · v^pv`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Monomial {
    pub coeff: f64,
    pub pu: u32,
    pub pv: u32,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Polynomial {
    pub terms: Vec<Monomial>,
}

fn falling(n: u32, k: u32) -> f64 {
    if k > n {
        0.0
    } else {
        (n - k + 1..=n).map(f64::from).product()
    }
}

impl Polynomial {
    pub fn new(terms: Vec<Monomial>) -> Self {
        Self { terms }
    }

    /// `a u + b v + c`.
    pub fn affine(a: f64, b: f64, c: f64) -> Self {
        Self::new(vec![
            Monomial { coeff: a, pu: 1, pv: 0 },
            Monomial { coeff: b, pu: 0, pv: 1 },
            Monomial { coeff: c, pu: 0, pv: 0 },
        ])
    }

    pub fn degree(&self) -> u32 {
        self.terms.iter().filter(|m| m.coeff != 0.0).map(|m| m.pu + m.pv).max().unwrap_or(0)
    }

    /// `∂_u^du ∂_v^dv` of the polynomial at `(u, v)`.
    pub fn derivative(&self, u: f64, v: f64, du: u32, dv: u32) -> f64 {
        self.terms
            .iter()
            .filter(|m| m.pu >= du && m.pv >= dv)
            .map(|m| {
                m.coeff * falling(m.pu, du) * falling(m.pv, dv) * u.powi((m.pu - du) as i32) * v.powi((m.pv - dv) as i32)
            })
            .sum()
    }
}

/// Height function of a graph surface.
#[derive(Clone)]
pub enum GraphFunction {
    /// Differentiated exactly.
    Polynomial(Polynomial),
    /// Differentiated by finite differences.
    Numeric { name: String, f: Arc<dyn Fn(f64, f64) -> f64 + Send + Sync> },
}

impl fmt::Debug for GraphFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Polynomial(p) => f.debug_tuple("Polynomial").field(p).finish(),
            Self::Numeric { name, .. } => f.debug_struct("Numeric").field("name", name).finish_non_exhaustive(),
        }
    }
}

/// `f` and its partial derivatives up to order three at a point.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct GraphDerivatives {
    pub f: f64,
    pub f1: f64,
    pub f2: f64,
    pub f11: f64,
    pub f12: f64,
    pub f22: f64,
    pub f111: f64,
    pub f112: f64,
    pub f122: f64,
    pub f222: f64,
}

impl GraphDerivatives {
    fn from_array(d: [f64; 10]) -> Self {
        let [f, f1, f2, f11, f12, f22, f111, f112, f122, f222] = d;
        Self { f, f1, f2, f11, f12, f22, f111, f112, f122, f222 }
    }

    /// `f_1` and `f_2` as jets: their derivatives are third derivatives of `f`.
    fn gradient_jets(&self) -> (Jet2, Jet2) {
        (
            Jet2::new(self.f1, [self.f11, self.f12], [[self.f111, self.f112], [self.f112, self.f122]]),
            Jet2::new(self.f2, [self.f12, self.f22], [[self.f112, self.f122], [self.f122, self.f222]]),
        )
    }

    pub fn max_hessian(&self) -> f64 {
        self.f11.abs().max(self.f12.abs()).max(self.f22.abs())
    }
}

#[derive(Debug, Clone)]
pub struct GraphSurface {
    pub function: GraphFunction,
    pub domain: ParamRect,
}

impl GraphSurface {
    pub const DEFAULT_DOMAIN: ParamRect = ParamRect::new(-1.0, 1.0, -1.0, 1.0);

    pub fn polynomial(p: Polynomial) -> Self {
        Self { function: GraphFunction::Polynomial(p), domain: Self::DEFAULT_DOMAIN }
    }

    pub fn numeric(name: impl Into<String>, f: impl Fn(f64, f64) -> f64 + Send + Sync + 'static) -> Self {
        Self {
            function: GraphFunction::Numeric { name: name.into(), f: Arc::new(f) },
            domain: Self::DEFAULT_DOMAIN,
        }
    }

    pub fn with_domain(mut self, domain: ParamRect) -> Self {
        self.domain = domain;
        self
    }

    pub fn height(&self, p: ParamPoint) -> f64 {
        match &self.function {
            GraphFunction::Polynomial(poly) => poly.derivative(p.u, p.v, 0, 0),
            GraphFunction::Numeric { f, .. } => f(p.u, p.v),
        }
    }

    pub fn derivatives(&self, p: ParamPoint) -> GraphDerivatives {
        match &self.function {
            GraphFunction::Polynomial(poly) => {
                let orders = [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2), (3, 0), (2, 1), (1, 2), (0, 3)];
                GraphDerivatives::from_array(orders.map(|(a, b)| poly.derivative(p.u, p.v, a, b)))
            }
            GraphFunction::Numeric { f, .. } => {
                let d = fd::derivatives_to_third(&|q: ParamPoint| [f(q.u, q.v)], p);
                GraphDerivatives::from_array(d.map(|x| x[0]))
            }
        }
    }
}

impl ParametricSurface for GraphSurface {
    fn position(&self, p: ParamPoint) -> IsoPoint {
        IsoPoint::new(p.u, p.v, self.height(p))
    }

    fn domain(&self) -> ParamRect {
        self.domain
    }

    fn exact_jet(&self, p: ParamPoint) -> Option<SurfaceJet> {
        match self.function {
            GraphFunction::Polynomial(_) => {
                let d = self.derivatives(p);
                let z = |x: f64| [0.0, 0.0, x];
                Some(SurfaceJet::from_derivatives([
                    [p.u, p.v, d.f],
                    [1.0, 0.0, d.f1],
                    [0.0, 1.0, d.f2],
                    z(d.f11),
                    z(d.f12),
                    z(d.f22),
                    z(d.f111),
                    z(d.f112),
                    z(d.f122),
                    z(d.f222),
                ]))
            }
            GraphFunction::Numeric { .. } => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NormalLaplacians {
    pub minimal_normal: IsoVector,
    pub gauss_map: IsoVector,
    pub lap_minimal: IsoVector,
    pub lap_parabolic: IsoVector,
    pub lap_position: IsoVector,
    pub mean_curvature: f64,
    pub gaussian_curvature: f64,
    pub grad_mean_curvature: [f64; 2],
    pub tr_s2: f64,
    /// Largest gap between a closed form and the plane Laplacian computed
    /// directly from the coordinates.
    pub identity_gap: f64,
}

/// Closed-form Laplacians of `N_m`, `G` and `x`, cross-checked against the
/// plane Laplacian of each coordinate.
pub fn normal_laplacians(s: &GraphSurface, p: ParamPoint) -> Result<NormalLaplacians> {
    let d = s.derivatives(p);
    let h = 0.5 * (d.f11 + d.f22);
    let k = d.f11 * d.f22 - d.f12 * d.f12;
    let h1 = 0.5 * (d.f111 + d.f122);
    let h2 = 0.5 * (d.f112 + d.f222);
    let tr_s2 = d.f11 * d.f11 + 2.0 * d.f12 * d.f12 + d.f22 * d.f22;

    let lap_minimal = IsoVector::new(-2.0 * h1, -2.0 * h2, 0.0);
    let grad_h = IsoVector::new(h1, h2, h1 * d.f1 + h2 * d.f2);
    let lap_parabolic = -2.0 * grad_h - tr_s2 * ISOTROPIC_AXIS;
    let lap_position = 2.0 * h * ISOTROPIC_AXIS;

    let (j1, j2) = d.gradient_jets();
    let (n1, n2) = (-j1, -j2);
    let g3 = (n1 * n1 + n2 * n2).scale(-0.5) + 0.5;
    let direct_minimal = IsoVector::new(n1.flat_laplacian(), n2.flat_laplacian(), 0.0);
    let direct_parabolic = IsoVector::new(n1.flat_laplacian(), n2.flat_laplacian(), g3.flat_laplacian());
    let direct_position = IsoVector::new(0.0, 0.0, d.f11 + d.f22);

    let gap = (lap_minimal - direct_minimal)
        .max_abs()
        .max((lap_parabolic - direct_parabolic).max_abs())
        .max((lap_position - direct_position).max_abs());
    let scale = 1.0 + direct_parabolic.max_abs() + direct_position.max_abs();
    if !(gap <= IDENTITY_TOL * scale) {
        return Err(Error::InternalInconsistency(format!(
            "closed-form Laplacians differ from direct ones by {gap:e} at ({}, {})",
            p.u, p.v
        )));
    }

    let minimal_normal = IsoVector::new(-d.f1, -d.f2, 1.0);
    Ok(NormalLaplacians {
        minimal_normal,
        gauss_map: lift_to_paraboloid(minimal_normal),
        lap_minimal,
        lap_parabolic,
        lap_position,
        mean_curvature: h,
        gaussian_curvature: k,
        grad_mean_curvature: [h1, h2],
        tr_s2,
        identity_gap: gap,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HarmonicClass {
    /// `ΔN_m ≡ 0` and `H` is constant.
    MinimalNormalHarmonicCmc,
    /// `ΔG ≡ 0` and the surface is a piece of a plane. Planes also have a
    /// harmonic minimal normal; this class takes precedence.
    ParabolicNormalHarmonicPlane,
    Neither,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HarmonicReport {
    pub class: HarmonicClass,
    pub sup_lap_minimal: f64,
    pub sup_lap_parabolic: f64,
    pub mean_curvature_min: f64,
    pub mean_curvature_max: f64,
    pub sup_hessian: f64,
    pub tol: f64,
}

/// Decides both characterizations on the grid. `ΔN_m ≡ 0` is tested against
/// `tol (1 + sup |H|)` and must agree with `H` being constant to the same
/// scale; `ΔG ≡ 0` is tested against `tol` and must agree with a vanishing
/// Hessian. A disagreement means the tolerance is too tight for the grid.
pub fn classify_harmonic(s: &GraphSurface, grid: &GridSpec, tol: f64) -> Result<HarmonicReport> {
    let mut sup_min: f64 = 0.0;
    let mut sup_par: f64 = 0.0;
    let mut sup_hess: f64 = 0.0;
    let mut h_lo = f64::INFINITY;
    let mut h_hi = f64::NEG_INFINITY;
    for p in grid.points() {
        let l = normal_laplacians(s, p)?;
        sup_min = sup_min.max(l.lap_minimal.max_abs());
        sup_par = sup_par.max(l.lap_parabolic.max_abs());
        sup_hess = sup_hess.max(s.derivatives(p).max_hessian());
        h_lo = h_lo.min(l.mean_curvature);
        h_hi = h_hi.max(l.mean_curvature);
    }
    let scale = 1.0 + h_lo.abs().max(h_hi.abs());
    let minimal_harmonic = sup_min < tol * scale;
    let cmc = h_hi - h_lo < tol * scale;
    if minimal_harmonic != cmc {
        return Err(Error::InternalInconsistency(format!(
            "sup |ΔN_m| = {sup_min:e} but H varies by {:e}; refine the grid or loosen tol",
            h_hi - h_lo
        )));
    }
    let parabolic_harmonic = sup_par < tol;
    let plane = sup_hess < tol;
    if parabolic_harmonic != plane {
        return Err(Error::InternalInconsistency(format!(
            "sup |ΔG| = {sup_par:e} but sup |f_ij| = {sup_hess:e}; refine the grid or loosen tol"
        )));
    }
    let class = if plane {
        HarmonicClass::ParabolicNormalHarmonicPlane
    } else if cmc {
        HarmonicClass::MinimalNormalHarmonicCmc
    } else {
        HarmonicClass::Neither
    };
    Ok(HarmonicReport {
        class,
        sup_lap_minimal: sup_min,
        sup_lap_parabolic: sup_par,
        mean_curvature_min: h_lo,
        mean_curvature_max: h_hi,
        sup_hessian: sup_hess,
        tol,
    })
}
