//! Eigenvalue checks `-ΔG^i = λ_i G^i` for Gauss maps, the classified
//! solution families, and boundary-value spectra.

use serde::{Deserialize, Serialize};

use crate::bessel::j0_zeros;
use crate::invariant::{HelicoidalSurface, ParabolicParams, ParabolicRevolutionSurface};
use crate::iso::{IsoPoint, IsoVector};
use crate::jet::ParamPoint;
use crate::profile::Profile;
use crate::surface::{DerivativeMode, GaussMapKind, ParamRect, ParametricSurface, SurfaceGeometry, SurfaceJet};
use crate::{Error, Result};

/// Coordinates with `sup |G^i|` below this are treated as identically zero.
pub const TRIVIALITY_THRESHOLD: f64 = 1e-10;
/// Points where `|G^i| < RATIO_CUTOFF · sup |G^i|` are left out of the fit.
pub const RATIO_CUTOFF: f64 = 1e-3;
/// Relative spread of `-ΔG/G` below which a coordinate is an eigenfunction.
pub const EIGEN_CONSTANCY_TOL: f64 = 1e-6;
/// Relative spread above which a coordinate is certainly not one.
pub const NON_EIGEN_SPREAD: f64 = 1e-2;
/// Default residual tolerance for closed-form derivatives.
pub const RESIDUAL_TOL: f64 = 1e-8;

/// A Gauss map that can be evaluated together with its Laplacian.
pub trait GaussMapField {
    fn gauss_map_with_laplacian(
        &self,
        kind: GaussMapKind,
        mode: DerivativeMode,
        p: ParamPoint,
    ) -> Result<(IsoVector, IsoVector)>;
}

/// Any parametric surface, through the generic engine.
pub struct EngineField<'a, S: ?Sized>(pub &'a S);

impl<S: ParametricSurface + ?Sized> GaussMapField for EngineField<'_, S> {
    fn gauss_map_with_laplacian(
        &self,
        kind: GaussMapKind,
        mode: DerivativeMode,
        p: ParamPoint,
    ) -> Result<(IsoVector, IsoVector)> {
        SurfaceGeometry::new(self.0, mode).gauss_map_with_laplacian(kind, p)
    }
}

fn from_jets(jets: [crate::jet::Jet2; 3], op: &crate::invariant::LaplaceOperator) -> (IsoVector, IsoVector) {
    (
        IsoVector::new(jets[0].value, jets[1].value, jets[2].value),
        IsoVector::new(op.apply(&jets[0]), op.apply(&jets[1]), op.apply(&jets[2])),
    )
}

impl GaussMapField for HelicoidalSurface {
    fn gauss_map_with_laplacian(
        &self,
        kind: GaussMapKind,
        mode: DerivativeMode,
        p: ParamPoint,
    ) -> Result<(IsoVector, IsoVector)> {
        if mode == DerivativeMode::ClosedForm && self.profile().is_closed_form() {
            Ok(from_jets(self.gauss_map_jets(kind, p)?, &self.laplace_operator(p)))
        } else {
            EngineField(self).gauss_map_with_laplacian(kind, mode, p)
        }
    }
}

impl GaussMapField for ParabolicRevolutionSurface {
    fn gauss_map_with_laplacian(
        &self,
        kind: GaussMapKind,
        mode: DerivativeMode,
        p: ParamPoint,
    ) -> Result<(IsoVector, IsoVector)> {
        if mode == DerivativeMode::ClosedForm && self.profile().is_closed_form() {
            Ok(from_jets(self.gauss_map_jets(kind, p)?, &self.laplace_operator()))
        } else {
            EngineField(self).gauss_map_with_laplacian(kind, mode, p)
        }
    }
}

/// Either invariant family behind one type.
#[derive(Debug, Clone)]
pub enum InvariantSurface {
    Helicoidal(HelicoidalSurface),
    Parabolic(ParabolicRevolutionSurface),
}

impl InvariantSurface {
    pub fn profile(&self) -> &Profile {
        match self {
            Self::Helicoidal(s) => s.profile(),
            Self::Parabolic(s) => s.profile(),
        }
    }

    pub fn closed_forms(&self, p: ParamPoint) -> Result<crate::invariant::ClosedFormGeometry> {
        match self {
            Self::Helicoidal(s) => s.closed_forms(p),
            Self::Parabolic(s) => s.closed_forms(p),
        }
    }
}

impl ParametricSurface for InvariantSurface {
    fn position(&self, p: ParamPoint) -> IsoPoint {
        match self {
            Self::Helicoidal(s) => s.position(p),
            Self::Parabolic(s) => s.position(p),
        }
    }
    fn domain(&self) -> ParamRect {
        match self {
            Self::Helicoidal(s) => ParametricSurface::domain(s),
            Self::Parabolic(s) => ParametricSurface::domain(s),
        }
    }
    fn definition_domain(&self) -> ParamRect {
        match self {
            Self::Helicoidal(s) => s.definition_domain(),
            Self::Parabolic(s) => s.definition_domain(),
        }
    }
    fn exact_jet(&self, p: ParamPoint) -> Option<SurfaceJet> {
        match self {
            Self::Helicoidal(s) => s.exact_jet(p),
            Self::Parabolic(s) => s.exact_jet(p),
        }
    }
    fn singular_distance(&self, p: ParamPoint) -> Option<f64> {
        match self {
            Self::Helicoidal(s) => s.singular_distance(p),
            Self::Parabolic(s) => s.singular_distance(p),
        }
    }
}

impl GaussMapField for InvariantSurface {
    fn gauss_map_with_laplacian(
        &self,
        kind: GaussMapKind,
        mode: DerivativeMode,
        p: ParamPoint,
    ) -> Result<(IsoVector, IsoVector)> {
        match self {
            Self::Helicoidal(s) => s.gauss_map_with_laplacian(kind, mode, p),
            Self::Parabolic(s) => s.gauss_map_with_laplacian(kind, mode, p),
        }
    }
}

/// A rectangular sampling grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub nu: usize,
    pub nv: usize,
    pub rect: ParamRect,
}

impl GridSpec {
    pub const DEFAULT_NU: usize = 41;
    pub const DEFAULT_NV: usize = 17;

    pub fn new(nu: usize, nv: usize, rect: ParamRect) -> Result<Self> {
        if nu < 2 || nv < 2 {
            return Err(Error::InvalidFamilyParams(format!("grid must be at least 2×2, got {nu}×{nv}")));
        }
        Ok(Self { nu, nv, rect })
    }

    /// The default 41×17 grid over `rect`.
    pub fn default_over(rect: ParamRect) -> Self {
        Self { nu: Self::DEFAULT_NU, nv: Self::DEFAULT_NV, rect }
    }

    pub fn points(&self) -> Vec<ParamPoint> {
        self.rect.grid(self.nu, self.nv)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    /// The coordinate vanishes on the grid; every λ fits.
    Trivial,
    Eigenfunction,
    NotEigenfunction,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoordinateReport {
    /// 1-based coordinate index.
    pub index: usize,
    pub declared_lambda: Option<f64>,
    /// `sup |ΔG^i + λ_i G^i|` at the declared λ.
    pub sup_residual: Option<f64>,
    pub sup_value: f64,
    pub fitted_lambda: Option<f64>,
    /// `max |(-ΔG^i/G^i) - fitted|` over the fitted points.
    pub max_deviation: Option<f64>,
    pub verdict: Verdict,
}

impl CoordinateReport {
    pub fn is_trivial(&self) -> bool {
        self.verdict == Verdict::Trivial
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigenResidualReport {
    pub gauss_map_kind: GaussMapKind,
    pub derivative_mode: DerivativeMode,
    pub grid: GridSpec,
    pub coordinates: [CoordinateReport; 3],
}

/// Overall outcome of an eigen check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Pass,
    Fail,
    Inconclusive,
}

impl EigenResidualReport {
    /// Largest residual over coordinates with a declared λ.
    pub fn max_residual(&self) -> f64 {
        self.coordinates.iter().filter_map(|c| c.sup_residual).fold(0.0, f64::max)
    }

    /// Declared coordinates must have residual `<= tol`; undeclared ones are
    /// judged by the constancy of the fitted λ.
    pub fn outcome(&self, tol: f64) -> Outcome {
        let mut inconclusive = false;
        for c in &self.coordinates {
            match c.sup_residual {
                Some(r) => {
                    if !(r <= tol) {
                        return Outcome::Fail;
                    }
                }
                None => match c.verdict {
                    Verdict::NotEigenfunction => return Outcome::Fail,
                    Verdict::Inconclusive => inconclusive = true,
                    Verdict::Trivial | Verdict::Eigenfunction => {}
                },
            }
        }
        if inconclusive {
            Outcome::Inconclusive
        } else {
            Outcome::Pass
        }
    }
}

/// Samples `G` and `ΔG` on the grid and measures how far each coordinate is
/// from `-ΔG^i = λ_i G^i`. The reductions run sequentially in grid order, so
/// reports are reproducible bit for bit.
pub fn eigen_residual(
    field: &dyn GaussMapField,
    kind: GaussMapKind,
    lambdas: [Option<f64>; 3],
    grid: &GridSpec,
    mode: DerivativeMode,
) -> Result<EigenResidualReport> {
    let samples = grid
        .points()
        .into_iter()
        .map(|p| field.gauss_map_with_laplacian(kind, mode, p))
        .collect::<Result<Vec<_>>>()?;
    let coordinates = [0, 1, 2].map(|i| {
        let values: Vec<(f64, f64)> =
            samples.iter().map(|(g, lap)| (g.to_array()[i], lap.to_array()[i])).collect();
        coordinate_report(i + 1, lambdas[i], &values)
    });
    Ok(EigenResidualReport { gauss_map_kind: kind, derivative_mode: mode, grid: *grid, coordinates })
}

fn coordinate_report(index: usize, lambda: Option<f64>, values: &[(f64, f64)]) -> CoordinateReport {
    let sup_value = values.iter().map(|(g, _)| g.abs()).fold(0.0, f64::max);
    let sup_residual = lambda.map(|l| values.iter().map(|(g, lap)| (lap + l * g).abs()).fold(0.0, f64::max));
    if sup_value < TRIVIALITY_THRESHOLD {
        return CoordinateReport {
            index,
            declared_lambda: lambda,
            sup_residual,
            sup_value,
            fitted_lambda: None,
            max_deviation: None,
            verdict: Verdict::Trivial,
        };
    }
    let cutoff = RATIO_CUTOFF * sup_value;
    let ratios: Vec<f64> = values.iter().filter(|(g, _)| g.abs() >= cutoff).map(|(g, lap)| -lap / g).collect();
    // Adding 0.0 turns a -0.0 mean into 0.0.
    let fitted = ratios.iter().sum::<f64>() / ratios.len() as f64 + 0.0;
    let deviation = ratios.iter().map(|r| (r - fitted).abs()).fold(0.0, f64::max);
    let scale = 1.0 + fitted.abs();
    let verdict = if deviation <= EIGEN_CONSTANCY_TOL * scale {
        Verdict::Eigenfunction
    } else if deviation > NON_EIGEN_SPREAD * scale {
        Verdict::NotEigenfunction
    } else {
        Verdict::Inconclusive
    };
    CoordinateReport {
        index,
        declared_lambda: lambda,
        sup_residual,
        sup_value,
        fitted_lambda: Some(fitted),
        max_deviation: Some(deviation),
        verdict,
    }
}

/// A surface from a classification together with the eigenvalues it
/// should satisfy.
#[derive(Debug, Clone)]
pub struct FamilyMember<S> {
    pub surface: S,
    /// Case label within the classification, e.g. `"2b"`.
    pub case: &'static str,
    pub kind: GaussMapKind,
    pub eigenvalues: [Option<f64>; 3],
}

/// Requested eigenvalues and profile coefficients for a helicoidal surface
/// with coordinate finite-type minimal normal.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HelicoidalMinimalSpec {
    pub c: f64,
    pub lambda1: f64,
    pub lambda2: f64,
    pub z0: f64,
    pub z1: f64,
    pub z2: f64,
    pub domain: Option<ParamRect>,
}

fn inconsistent(msg: impl Into<String>) -> Error {
    Error::InconsistentCase(msg.into())
}

pub fn helicoidal_minimal_family(spec: &HelicoidalMinimalSpec) -> Result<FamilyMember<HelicoidalSurface>> {
    let HelicoidalMinimalSpec { c, lambda1, lambda2, z0, z1, z2, .. } = *spec;
    let (case, profile) = if lambda1 == lambda2 && lambda1 == 0.0 {
        (if c != 0.0 { "1" } else { "2a" }, Profile::quadratic_log(z0, z1, z2))
    } else if lambda1 == lambda2 {
        if c != 0.0 {
            return Err(inconsistent(format!("λ = {lambda1} ≠ 0 forces c = 0, got c = {c}")));
        }
        ("2b", Profile::bessel(z0, z1, z2, lambda1)?)
    } else {
        if c != 0.0 {
            return Err(inconsistent(format!("λ1 ≠ λ2 forces c = 0, got c = {c}")));
        }
        if z1 != 0.0 || z2 != 0.0 {
            return Err(inconsistent("λ1 ≠ λ2 forces a constant profile (z1 = z2 = 0)"));
        }
        ("2c", Profile::constant(z0))
    };
    let surface = HelicoidalSurface::with_domain(c, profile, spec.domain.unwrap_or(HelicoidalSurface::DEFAULT_DOMAIN))?;
    Ok(FamilyMember {
        surface,
        case,
        kind: GaussMapKind::Minimal,
        eigenvalues: [Some(lambda1), Some(lambda2), Some(0.0)],
    })
}

/// Requested eigenvalues, motion parameters and profile coefficients for a
/// parabolic revolution surface with coordinate finite-type minimal normal.
/// Coefficients left as `None` are derived where the case determines them.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParabolicMinimalSpec {
    pub params: ParabolicParams,
    pub lambda1: f64,
    pub lambda2: f64,
    pub z0: f64,
    pub z1: Option<f64>,
    pub z2: Option<f64>,
    pub domain: Option<ParamRect>,
}

/// How a non-harmonic member is a cylinder over a plane curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CylinderGenerator {
    Parabola,
    Trigonometric,
}

fn coefficient(name: &str, given: Option<f64>, forced: f64) -> Result<f64> {
    match given {
        Some(v) if v != forced => Err(inconsistent(format!("this case forces {name} = {forced}, got {v}"))),
        _ => Ok(forced),
    }
}

pub fn parabolic_minimal_family(spec: &ParabolicMinimalSpec) -> Result<FamilyMember<ParabolicRevolutionSurface>> {
    let ParabolicParams { a, b, c, c1, c2 } = spec.params;
    let (l1, l2, z0) = (spec.lambda1, spec.lambda2, spec.z0);
    let z1 = spec.z1.unwrap_or(0.0);
    let z2 = spec.z2.unwrap_or(0.0);
    let require = |ok: bool, msg: &str| if ok { Ok(()) } else { Err(inconsistent(msg.to_string())) };
    let (case, profile) = match (l1 == 0.0, l2 == 0.0) {
        (true, true) => {
            require(c1 != 0.0 || z1 != 0.0 || z2 != 0.0, "N^1 vanishes identically: need c1 ≠ 0 or a non-constant profile")?;
            require(2.0 * a * z2 != c1 || a * z1 != c, "N^2 vanishes identically: need 2 a z2 ≠ c1 or a z1 ≠ c")?;
            ("1", Profile::quadratic(z0, z1, z2))
        }
        (true, false) => {
            require(c2 == 0.0, "λ2 ≠ 0 forces c2 = 0")?;
            if a == 0.0 {
                require(c == 0.0 && c1 == 0.0, "λ1 = 0 ≠ λ2 with a = 0 forces c = c1 = 0")?;
                ("2a", Profile::quadratic(z0, z1, z2))
            } else {
                let z1 = coefficient("z1", spec.z1, c / a)?;
                let z2 = coefficient("z2", spec.z2, c1 / (2.0 * a))?;
                ("2b", Profile::quadratic(z0, z1, z2))
            }
        }
        (false, true) => {
            require(c1 == 0.0, "λ1 ≠ 0 forces c1 = 0")?;
            coefficient("z1", spec.z1, 0.0)?;
            coefficient("z2", spec.z2, 0.0)?;
            ("3", Profile::constant(z0))
        }
        (false, false) => {
            require(c1 == 0.0 && c2 == 0.0, "λ1, λ2 ≠ 0 force c1 = c2 = 0")?;
            require(c == 0.0, "λ1, λ2 ≠ 0 force c = 0")?;
            if a == 0.0 {
                ("4a", Profile::oscillatory(z0, z1, z2, l1)?)
            } else {
                require(l1 == l2, "a ≠ 0 with λ1, λ2 ≠ 0 forces λ1 = λ2")?;
                ("4b", Profile::oscillatory(z0, z1, z2, l1 * b * b / (a * a + b * b))?)
            }
        }
    };
    let surface = ParabolicRevolutionSurface::with_domain(
        spec.params,
        profile,
        spec.domain.unwrap_or(ParabolicRevolutionSurface::DEFAULT_DOMAIN),
    )?;
    Ok(FamilyMember { surface, case, kind: GaussMapKind::Minimal, eigenvalues: [Some(l1), Some(l2), Some(0.0)] })
}

impl FamilyMember<ParabolicRevolutionSurface> {
    /// For non-harmonic members, the generating curve of the cylinder.
    pub fn cylinder_generator(&self) -> Option<CylinderGenerator> {
        match self.case {
            "2a" | "2b" | "3" => Some(CylinderGenerator::Parabola),
            "4a" | "4b" => Some(CylinderGenerator::Trigonometric),
            _ => None,
        }
    }

    /// The point `P(u, t)` written as a cylinder: a ruling direction added
    /// to a plane curve, after the case's change of parameters.
    pub fn cylinder_point(&self, p: ParamPoint) -> Option<IsoPoint> {
        let ParabolicParams { a, b, c, c2, .. } = self.surface.params();
        let prof = self.surface.profile();
        let (u, t) = (p.u, p.v);
        match self.case {
            "2a" | "4a" | "4b" => {
                let z = prof.value(u).ok()?;
                Some(IsoPoint::new(u, 0.0, z) + t * IsoVector::new(a, b, 0.0))
            }
            "2b" => {
                let v = u + a * t;
                let z = prof.value(v).ok()?;
                Some(IsoPoint::new(v, 0.0, z) + t * IsoVector::new(0.0, b, 0.0))
            }
            "3" => {
                let z0 = prof.value(0.0).ok()?;
                let beta = IsoPoint::new(a * t, b * t, c * t + 0.5 * b * c2 * t * t + z0);
                Some(beta + u * IsoVector::new(1.0, 0.0, 0.0))
            }
            _ => None,
        }
    }
}

/// `z0 + √(2/λ) sin(√Λ u + φ0)` for `λ > 0` or `z0 + √(-2/λ) sinh(√-Λ u + φ0)`
/// for `λ < 0`, with `Λ = λ b^2 / (a^2 + b^2)` and `c = c1 = c2 = 0`. The
/// parabolic Gauss map then satisfies `-ΔG = (λ G^1, λ G^2, 4λ G^3)`.
pub fn lambda3_family(
    a: f64,
    b: f64,
    lambda: f64,
    phi0: f64,
    z0: f64,
    domain: Option<ParamRect>,
) -> Result<FamilyMember<ParabolicRevolutionSurface>> {
    if lambda == 0.0 || !lambda.is_finite() {
        return Err(Error::InvalidFamilyParams(format!("λ must be finite and nonzero, got {lambda}")));
    }
    let big = lambda * b * b / (a * a + b * b);
    let amp = (2.0 / lambda.abs()).sqrt();
    let profile = if lambda > 0.0 {
        Profile::trig(z0, amp * phi0.sin(), amp * phi0.cos(), big)?
    } else {
        Profile::hyper(z0, amp * phi0.sinh(), amp * phi0.cosh(), big)?
    };
    let params = ParabolicParams { a, b, c: 0.0, c1: 0.0, c2: 0.0 };
    let surface = ParabolicRevolutionSurface::with_domain(
        params,
        profile,
        domain.unwrap_or(ParabolicRevolutionSurface::DEFAULT_DOMAIN),
    )?;
    Ok(FamilyMember {
        surface,
        case: if lambda > 0.0 { "trigonometric" } else { "hyperbolic" },
        kind: GaussMapKind::Parabolic,
        eigenvalues: [Some(lambda), Some(lambda), Some(4.0 * lambda)],
    })
}

/// Parabolic revolution surfaces with `λ1 = λ2 = 0` whose `G^3` is a nonzero
/// eigenfunction: `c1 = c2 = 0`, `z = z0 + z1 u`, and necessarily `λ3 = 0`.
pub fn linear_profile_family(
    a: f64,
    b: f64,
    c: f64,
    z0: f64,
    z1: f64,
    lambda3: f64,
) -> Result<FamilyMember<ParabolicRevolutionSurface>> {
    if lambda3 != 0.0 {
        return Err(inconsistent(format!(
            "with λ1 = λ2 = 0 a nonzero G^3 eigenfunction forces λ3 = 0, got {lambda3}"
        )));
    }
    let surface = ParabolicRevolutionSurface::new(ParabolicParams { a, b, c, c1: 0.0, c2: 0.0 }, Profile::quadratic(z0, z1, 0.0))?;
    Ok(FamilyMember { surface, case: "linear", kind: GaussMapKind::Parabolic, eigenvalues: [Some(0.0); 3] })
}

/// `sup_u |-u g'' - g' - λ3 u g - λ3 c^2/(2u) - 2c^2/u^3|` with
/// `g = (z'^2 - 1)/2`. This is `u (ΔG^3 + λ3 G^3)` for the helicoidal
/// surface with pitch `c`.
pub fn g3_ode_residual(profile: &Profile, c: f64, lambda3: f64, u_grid: &[f64]) -> Result<f64> {
    let mut sup: f64 = 0.0;
    for &u in u_grid {
        if !(u > 0.0) {
            return Err(Error::Domain { what: "g3 ODE grid", arg: u });
        }
        let z = profile.eval(u)?;
        let g = 0.5 * (z.dz * z.dz - 1.0);
        let dg = z.dz * z.d2z;
        let d2g = z.d2z * z.d2z + z.dz * z.d3z;
        let r = -u * d2g - dg - lambda3 * u * g - lambda3 * c * c / (2.0 * u) - 2.0 * c * c / u.powi(3);
        sup = sup.max(r.abs());
    }
    Ok(sup)
}

/// `n` evenly spaced points covering `[lo, hi]`.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    ParamRect::new(lo, hi, 0.0, 0.0).grid(n, 1).into_iter().map(|p| p.u).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpectrumKind {
    /// `z(a) = 0 = z(a + L)`.
    Homogeneous,
    /// `z(a) = z(a + kL)` for all integers `k`.
    Periodic,
    /// Bounded near the axis with `z(L) = 0`, on a surface of revolution.
    MixedBessel,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    pub kind: SpectrumKind,
    pub length: f64,
    pub a_offset: f64,
    /// Motion parameters `(a, b)` of the parabolic revolution surfaces;
    /// unused for `MixedBessel`.
    pub a: f64,
    pub b: f64,
    /// `λ_n`, strictly increasing.
    pub eigenvalues: Vec<f64>,
    /// `Λ_n = λ_n b^2 / (a^2 + b^2)`; equal to `λ_n` for `MixedBessel`.
    pub profile_parameters: Vec<f64>,
}

/// The first `n_max` eigenvalues for the given boundary conditions.
pub fn boundary_spectrum(kind: SpectrumKind, length: f64, a_offset: f64, n_max: usize, a: f64, b: f64) -> Result<Spectrum> {
    if n_max == 0 {
        return Err(Error::InvalidFamilyParams("n_max must be at least 1".into()));
    }
    if !(length > 0.0 && length.is_finite()) {
        return Err(Error::InvalidFamilyParams(format!("L must be positive, got {length}")));
    }
    if !a_offset.is_finite() || !a.is_finite() {
        return Err(Error::InvalidFamilyParams("offset and a must be finite".into()));
    }
    if kind != SpectrumKind::MixedBessel && !(b > 0.0 && b.is_finite()) {
        return Err(Error::InvalidFamilyParams(format!("b must be positive, got {b}")));
    }
    let ratio = if kind == SpectrumKind::MixedBessel { 1.0 } else { (a * a + b * b) / (b * b) };
    let big: Vec<f64> = match kind {
        SpectrumKind::Homogeneous => {
            (1..=n_max).map(|n| (std::f64::consts::PI * n as f64 / length).powi(2)).collect()
        }
        SpectrumKind::Periodic => {
            (1..=n_max).map(|n| (2.0 * std::f64::consts::PI * n as f64 / length).powi(2)).collect()
        }
        SpectrumKind::MixedBessel => j0_zeros(n_max).into_iter().map(|j| (j / length).powi(2)).collect(),
    };
    Ok(Spectrum {
        kind,
        length,
        a_offset,
        a,
        b,
        eigenvalues: big.iter().map(|l| l * ratio).collect(),
        profile_parameters: big,
    })
}

impl Spectrum {
    fn check_index(&self, n: usize) -> Result<f64> {
        if n == 0 || n > self.eigenvalues.len() {
            return Err(Error::InvalidIndex(n));
        }
        Ok(self.profile_parameters[n - 1])
    }

    /// The profile of the `n`-th mode, `n >= 1`.
    pub fn profile(&self, n: usize) -> Result<Profile> {
        let big = self.check_index(n)?;
        match self.kind {
            SpectrumKind::Homogeneous => {
                // sin(k (u - a)) = cos(k a) sin(k u) - sin(k a) cos(k u).
                let ka = big.sqrt() * self.a_offset;
                Profile::trig(0.0, -ka.sin(), ka.cos(), big)
            }
            SpectrumKind::Periodic => Profile::trig(0.0, 1.0, 1.0, big),
            SpectrumKind::MixedBessel => Profile::bessel(0.0, 1.0, 0.0, big),
        }
    }

    /// The surface carrying the `n`-th mode, over one period of the
    /// boundary problem.
    pub fn surface(&self, n: usize) -> Result<InvariantSurface> {
        let profile = self.profile(n)?;
        Ok(match self.kind {
            SpectrumKind::MixedBessel => {
                let domain = ParamRect::new(0.05 * self.length, self.length, 0.0, 2.0 * std::f64::consts::PI);
                InvariantSurface::Helicoidal(HelicoidalSurface::with_domain(0.0, profile, domain)?)
            }
            _ => {
                let domain = ParamRect::new(self.a_offset, self.a_offset + self.length, -1.0, 1.0);
                let params = ParabolicParams { a: self.a, b: self.b, c: 0.0, c1: 0.0, c2: 0.0 };
                InvariantSurface::Parabolic(ParabolicRevolutionSurface::with_domain(params, profile, domain)?)
            }
        })
    }

    /// Eigenvalues for the minimal normal of the `n`-th mode surface.
    pub fn declared_eigenvalues(&self, n: usize) -> Result<[Option<f64>; 3]> {
        self.check_index(n)?;
        let l = self.eigenvalues[n - 1];
        Ok([Some(l), Some(l), Some(0.0)])
    }

    /// How far the `n`-th profile is from its boundary conditions.
    pub fn boundary_residual(&self, n: usize) -> Result<f64> {
        let z = self.profile(n)?;
        let (a, l) = (self.a_offset, self.length);
        Ok(match self.kind {
            SpectrumKind::Homogeneous => z.value(a)?.abs().max(z.value(a + l)?.abs()),
            SpectrumKind::Periodic => {
                let za = z.value(a)?;
                let mut worst: f64 = 0.0;
                for k in [-3.0, -2.0, -1.0, 1.0, 2.0, 3.0] {
                    worst = worst.max((z.value(a + k * l)? - za).abs());
                }
                worst
            }
            SpectrumKind::MixedBessel => z.value(l)?.abs(),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundednessRegime {
    NearAxis,
    AtInfinity,
    Both,
}

/// Sampled size of `z - z0` near the axis and far from it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundednessProbe {
    /// `sup |z - z0|` over `u ∈ [1e-3, 1e-2]`.
    pub near_axis_sup: f64,
    /// `sup |z - z0|` over `u ∈ [50, 100]`.
    pub at_infinity_sup: f64,
    /// `|z1| + |z2|`.
    pub coefficient_scale: f64,
    pub bounded_near_axis: bool,
    pub bounded_at_infinity: bool,
}

/// A helicoidal surface whose minimal normal is coordinate finite-type and
/// whose profile is bounded in the given regime.
pub fn boundedness_family(
    regime: BoundednessRegime,
    lambda: f64,
    c: f64,
    z0: f64,
    z1: f64,
    z2: f64,
) -> Result<FamilyMember<HelicoidalSurface>> {
    if z1 == 0.0 && z2 == 0.0 {
        return Err(inconsistent("the profile is constant, so the surface is a plane"));
    }
    if lambda != 0.0 && c != 0.0 {
        return Err(inconsistent(format!("λ = {lambda} ≠ 0 forces c = 0, got c = {c}")));
    }
    let profile = match (regime, lambda) {
        (BoundednessRegime::NearAxis, 0.0) => {
            if z2 != 0.0 {
                return Err(inconsistent("bounded near the axis excludes the ln u term (z2 = 0)"));
            }
            Profile::quadratic_log(z0, z1, 0.0)
        }
        (BoundednessRegime::NearAxis, l) => {
            if z2 != 0.0 {
                return Err(inconsistent("bounded near the axis excludes Y0 and K0 (z2 = 0)"));
            }
            Profile::bessel(z0, z1, 0.0, l)?
        }
        (BoundednessRegime::AtInfinity, l) if l > 0.0 => Profile::bessel(z0, z1, z2, l)?,
        (BoundednessRegime::AtInfinity, l) if l < 0.0 => {
            if z1 != 0.0 {
                return Err(inconsistent("bounded at infinity with λ < 0 excludes I0 (z1 = 0)"));
            }
            Profile::bessel(z0, 0.0, z2, l)?
        }
        (BoundednessRegime::AtInfinity, _) => {
            return Err(inconsistent("λ = 0 profiles z1 u^2 + z2 ln u are unbounded at infinity"));
        }
        (BoundednessRegime::Both, l) => {
            if !(l > 0.0) {
                return Err(inconsistent(format!("bounded near the axis and at infinity forces λ > 0, got {l}")));
            }
            if z2 != 0.0 {
                return Err(inconsistent("bounded near the axis and at infinity forces a pure J0 profile (z2 = 0)"));
            }
            Profile::bessel(z0, z1, 0.0, l)?
        }
    };
    let surface = HelicoidalSurface::new(c, profile)?;
    let case = match regime {
        BoundednessRegime::NearAxis => "near_axis",
        BoundednessRegime::AtInfinity => "at_infinity",
        BoundednessRegime::Both => "both",
    };
    Ok(FamilyMember { surface, case, kind: GaussMapKind::Minimal, eigenvalues: [Some(lambda), Some(lambda), Some(0.0)] })
}

/// Samples `z - z0` on `[1e-3, 1e-2]` and `[50, 100]`. A profile counts as
/// bounded near the axis if the sample stays within `1.5 (|z1| + |z2|)` and
/// bounded at infinity if it stays within `|z1| + |z2|`: `|J0| <= 1`, while
/// `ln u`, `Y0`, `K0` blow up at the axis and `u^2`, `ln u`, `I0` exceed
/// these bounds far out. Meaningful for `1e-4 <= |λ| <= 100`.
pub fn boundedness_probe(profile: &Profile, z0: f64, coefficient_scale: f64) -> Result<BoundednessProbe> {
    let sup = |lo: f64, hi: f64| -> Result<f64> {
        let mut m: f64 = 0.0;
        for u in linspace(lo, hi, 201) {
            m = m.max((profile.value(u)? - z0).abs());
        }
        Ok(m)
    };
    let near = sup(1e-3, 1e-2)?;
    let far = sup(50.0, 100.0)?;
    Ok(BoundednessProbe {
        near_axis_sup: near,
        at_infinity_sup: far,
        coefficient_scale,
        bounded_near_axis: near <= 1.5 * coefficient_scale,
        bounded_at_infinity: far <= coefficient_scale,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const CF: DerivativeMode = DerivativeMode::ClosedForm;

    fn residual<S: GaussMapField + ParametricSurface>(s: &S, kind: GaussMapKind, l: [Option<f64>; 3]) -> EigenResidualReport {
        eigen_residual(s, kind, l, &GridSpec::default_over(s.domain()), CF).unwrap()
    }

    #[test]
    fn log_helicoid_is_harmonic_in_the_top_view() {
        let s = HelicoidalSurface::new(1.0, Profile::quadratic_log(0.0, 1.0, 0.25)).unwrap();
        let r = residual(&s, GaussMapKind::Minimal, [Some(0.0), Some(0.0), None]);
        assert!(r.coordinates[0].sup_residual.unwrap() <= 1e-9);
        assert!(r.coordinates[1].sup_residual.unwrap() <= 1e-9);
    }

    #[test]
    fn bessel_revolution_surface_has_eigenvalue_one() {
        let s = HelicoidalSurface::new(0.0, Profile::bessel(0.0, 1.0, 0.0, 1.0).unwrap()).unwrap();
        let r = residual(&s, GaussMapKind::Minimal, [Some(1.0), Some(1.0), None]);
        assert!(r.max_residual() <= 1e-8, "{r:?}");
        assert_eq!(r.coordinates[0].verdict, Verdict::Eigenfunction);
        assert!((r.coordinates[0].fitted_lambda.unwrap() - 1.0).abs() < 1e-8);

        let p = residual(&s, GaussMapKind::Parabolic, [None; 3]);
        assert!(p.coordinates[2].max_deviation.unwrap() > 0.1);
        assert_eq!(p.coordinates[2].verdict, Verdict::NotEigenfunction);
    }

    #[test]
    fn trivial_coordinates_are_flagged() {
        let s = HelicoidalSurface::new(0.0, Profile::constant(1.0)).unwrap();
        let r = residual(&s, GaussMapKind::Minimal, [Some(5.0), None, None]);
        assert!(r.coordinates[0].is_trivial() && r.coordinates[1].is_trivial());
        assert_eq!(r.coordinates[0].fitted_lambda, None);
        assert_eq!(r.coordinates[2].verdict, Verdict::Eigenfunction);
        assert_eq!(r.outcome(1e-8), Outcome::Pass);
    }

    #[test]
    fn g3_residual_is_u_times_the_direct_residual() {
        for (c, profile, l3) in [
            (1.0, Profile::quadratic_log(0.0, 1.0, 0.25), 0.0),
            (0.0, Profile::bessel(0.0, 1.0, 0.3, 1.0).unwrap(), 4.0),
            (0.5, Profile::quadratic(0.0, 0.4, 0.2), -1.0),
        ] {
            let s = HelicoidalSurface::new(c, profile.clone()).unwrap();
            for p in s.domain().grid(7, 3) {
                let (g, lap) = s.gauss_map_with_laplacian(GaussMapKind::Parabolic, CF, p).unwrap();
                let direct = p.u * (lap.x3 + l3 * g.x3);
                let ode = g3_ode_residual(&profile, c, l3, &[p.u]).unwrap();
                assert!((ode - direct.abs()).abs() <= 1e-9 * (1.0 + ode), "{ode} vs {direct}");
            }
        }
    }

    #[test]
    fn g3_residual_examples() {
        let grid = linspace(0.5, 3.0, 101);
        assert_eq!(g3_ode_residual(&Profile::constant(2.0), 0.0, 0.0, &grid).unwrap(), 0.0);
        assert!(g3_ode_residual(&Profile::quadratic_log(0.0, 1.0, 0.25), 1.0, 0.0, &grid).unwrap() > 0.0);
        let j0 = Profile::bessel(0.0, 1.0, 0.0, 1.0).unwrap();
        for l3 in [1.0, -1.0, 4.0, -4.0] {
            assert!(g3_ode_residual(&j0, 0.0, l3, &grid).unwrap() > 1e-2);
        }
        assert!(g3_ode_residual(&j0, 0.0, 1.0, &[0.0]).is_err());
    }

    #[test]
    fn helicoidal_cases() {
        let spec = |c, l1, l2, z1, z2| HelicoidalMinimalSpec { c, lambda1: l1, lambda2: l2, z0: 0.0, z1, z2, domain: None };
        assert_eq!(helicoidal_minimal_family(&spec(1.0, 0.0, 0.0, 1.0, 0.25)).unwrap().case, "1");
        assert_eq!(helicoidal_minimal_family(&spec(0.0, 0.0, 0.0, 1.0, 0.25)).unwrap().case, "2a");
        let m = helicoidal_minimal_family(&spec(0.0, -1.0, -1.0, 1.0, 0.5)).unwrap();
        assert_eq!(m.case, "2b");
        assert!(matches!(m.surface.profile(), Profile::Bessel { lambda, .. } if *lambda == -1.0));
        let m = helicoidal_minimal_family(&spec(0.0, 1.0, 2.0, 0.0, 0.0)).unwrap();
        assert_eq!(m.case, "2c");
        assert!(matches!(helicoidal_minimal_family(&spec(1.0, 1.0, 1.0, 1.0, 0.0)), Err(Error::InconsistentCase(_))));
        assert!(matches!(helicoidal_minimal_family(&spec(0.0, 1.0, 2.0, 1.0, 0.0)), Err(Error::InconsistentCase(_))));
    }

    fn pspec(a: f64, b: f64, c: f64, c1: f64, c2: f64, l1: f64, l2: f64, z: [Option<f64>; 2]) -> ParabolicMinimalSpec {
        ParabolicMinimalSpec {
            params: ParabolicParams { a, b, c, c1, c2 },
            lambda1: l1,
            lambda2: l2,
            z0: 0.3,
            z1: z[0],
            z2: z[1],
            domain: None,
        }
    }

    #[test]
    fn parabolic_cases_and_cylinders() {
        let members = [
            pspec(1.0, 1.0, 0.0, 1.0, 0.0, 0.0, 0.0, [Some(0.0), Some(1.0)]),
            pspec(0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 2.0, [Some(0.5), Some(1.0)]),
            pspec(1.5, 0.8, 0.6, -0.4, 0.0, 0.0, 3.0, [None, None]),
            pspec(0.7, 1.2, 0.5, 0.0, 0.9, -2.0, 0.0, [None, None]),
            pspec(0.0, 1.0, 0.0, 0.0, 0.0, 2.0, 5.0, [Some(1.0), Some(0.5)]),
            pspec(1.0, 1.0, 0.0, 0.0, 0.0, 2.0, 2.0, [Some(0.0), Some(1.0)]),
            pspec(1.0, 2.0, 0.0, 0.0, 0.0, -1.0, -1.0, [Some(0.4), Some(0.1)]),
        ];
        let cases = ["1", "2a", "2b", "3", "4a", "4b", "4b"];
        for (spec, case) in members.iter().zip(cases) {
            let m = parabolic_minimal_family(spec).unwrap();
            assert_eq!(m.case, case);
            let r = eigen_residual(&m.surface, m.kind, m.eigenvalues, &GridSpec::default_over(m.surface.domain()), CF).unwrap();
            assert!(r.max_residual() <= 1e-9, "case {case}: {r:?}");
            match case {
                "1" => assert_eq!(m.cylinder_generator(), None),
                "2a" | "2b" | "3" => assert_eq!(m.cylinder_generator(), Some(CylinderGenerator::Parabola)),
                _ => assert_eq!(m.cylinder_generator(), Some(CylinderGenerator::Trigonometric)),
            }
            if case != "1" {
                for p in m.surface.domain().grid(5, 5) {
                    let q = m.cylinder_point(p).unwrap();
                    assert!((q - m.surface.position(p)).max_abs() < 1e-12, "case {case}");
                }
            }
        }
        let r = {
            let m = parabolic_minimal_family(&members[3]).unwrap();
            eigen_residual(&m.surface, m.kind, [None; 3], &GridSpec::default_over(m.surface.domain()), CF).unwrap()
        };
        assert!(r.coordinates[0].is_trivial());
        assert_eq!(r.coordinates[1].fitted_lambda.map(|l| l.abs() < 1e-12), Some(true));
    }

    #[test]
    fn parabolic_case_violations() {
        let bad = [
            pspec(1.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0, [Some(0.0), Some(0.0)]),
            pspec(1.0, 1.0, 0.0, 2.0, 0.0, 0.0, 0.0, [Some(0.0), Some(1.0)]),
            pspec(0.0, 1.0, 0.0, 0.0, 1.0, 0.0, 2.0, [None, None]),
            pspec(1.0, 1.0, 1.0, 0.0, 0.0, 0.0, 2.0, [Some(5.0), None]),
            pspec(1.0, 1.0, 0.0, 1.0, 0.0, 1.0, 0.0, [None, None]),
            pspec(1.0, 1.0, 0.0, 0.0, 0.0, 1.0, 2.0, [Some(1.0), None]),
            pspec(0.0, 1.0, 1.0, 0.0, 0.0, 1.0, 2.0, [Some(1.0), None]),
        ];
        for spec in &bad {
            assert!(matches!(parabolic_minimal_family(spec), Err(Error::InconsistentCase(_))), "{spec:?}");
        }
    }

    #[test]
    fn lambda3_family_satisfies_its_eigenvalues() {
        for (a, b, l, phi) in [(0.0, 1.0, 1.0, 0.0), (1.0, 1.0, 2.0, 0.4), (0.5, 2.0, -1.0, 0.0), (-1.0, 1.5, -0.5, 0.3)] {
            let m = lambda3_family(a, b, l, phi, 0.2, None).unwrap();
            let r = eigen_residual(&m.surface, m.kind, m.eigenvalues, &GridSpec::default_over(m.surface.domain()), CF).unwrap();
            assert!(r.max_residual() <= 1e-8, "{a} {b} {l}: {r:?}");
            let fitted = r.coordinates[2].fitted_lambda.unwrap();
            assert!((fitted / l - 4.0).abs() < 1e-6);
        }
        let m = lambda3_family(0.0, 1.0, 1.0, 0.0, 0.0, None).unwrap();
        match *m.surface.profile() {
            Profile::Trig { z1, z2, .. } => assert!((l_amp(z1, z2) - 2.0).abs() < 1e-15),
            ref p => panic!("{p:?}"),
        }
        assert!(matches!(lambda3_family(0.0, 1.0, 0.0, 0.0, 0.0, None), Err(Error::InvalidFamilyParams(_))));
    }

    fn l_amp(z1: f64, z2: f64) -> f64 {
        z1 * z1 + z2 * z2
    }

    #[test]
    fn linear_profile_family_is_parabolic_harmonic() {
        let m = linear_profile_family(0.7, 1.3, 0.4, 1.0, 0.8, 0.0).unwrap();
        let r = eigen_residual(&m.surface, m.kind, m.eigenvalues, &GridSpec::default_over(m.surface.domain()), CF).unwrap();
        assert_eq!(r.max_residual(), 0.0);
        assert!(matches!(linear_profile_family(0.7, 1.3, 0.4, 1.0, 0.8, 2.0), Err(Error::InconsistentCase(_))));
    }

    #[test]
    fn spectra() {
        let h = boundary_spectrum(SpectrumKind::Homogeneous, std::f64::consts::PI, 0.0, 4, 0.0, 1.0).unwrap();
        for (n, l) in h.eigenvalues.iter().enumerate() {
            assert!((l - ((n + 1) * (n + 1)) as f64).abs() < 1e-12);
        }
        let m = boundary_spectrum(SpectrumKind::MixedBessel, 1.0, 0.0, 3, 0.0, 0.0).unwrap();
        assert!((m.eigenvalues[0] - 5.783_185_96).abs() < 1e-8);
        let p = boundary_spectrum(SpectrumKind::Periodic, 2.0 * std::f64::consts::PI, 0.3, 3, 1.0, 1.0).unwrap();
        assert!((p.profile_parameters[1] - 4.0).abs() < 1e-12);
        assert!((p.eigenvalues[1] - 8.0).abs() < 1e-12);
        for s in [&h, &m, &p] {
            assert!(s.eigenvalues.windows(2).all(|w| w[0] < w[1]) && s.eigenvalues[0] > 0.0);
            for n in 1..=s.eigenvalues.len() {
                assert!(s.boundary_residual(n).unwrap() <= 1e-9, "{:?} n={n}", s.kind);
                let surf = s.surface(n).unwrap();
                let r = eigen_residual(&surf, GaussMapKind::Minimal, s.declared_eigenvalues(n).unwrap(), &GridSpec::default_over(surf.domain()), CF)
                    .unwrap();
                assert!(r.max_residual() <= 1e-8 * (1.0 + s.eigenvalues[n - 1]), "{:?} n={n}: {}", s.kind, r.max_residual());
            }
        }
        assert!(boundary_spectrum(SpectrumKind::Periodic, 1.0, 0.0, 0, 0.0, 1.0).is_err());
        assert!(matches!(h.profile(0), Err(Error::InvalidIndex(0))));
    }

    #[test]
    fn boundedness_examples() {
        let m = boundedness_family(BoundednessRegime::Both, 1.0, 0.0, 0.0, 1.0, 0.0).unwrap();
        assert!(matches!(m.surface.profile(), Profile::Bessel { z2, .. } if *z2 == 0.0));
        let m = boundedness_family(BoundednessRegime::NearAxis, 0.0, 0.5, 0.0, 1.0, 0.0).unwrap();
        assert!(matches!(m.surface.profile(), Profile::QuadraticLog { z2, .. } if *z2 == 0.0));
        let m = boundedness_family(BoundednessRegime::AtInfinity, -1.0, 0.0, 2.0, 0.0, 1.0).unwrap();
        assert!((m.surface.profile().value(100.0).unwrap() - 2.0).abs() < 1e-10);

        let probe = |reg, l, z1, z2| {
            let m = boundedness_family(reg, l, 0.0, 0.0, z1, z2).unwrap();
            boundedness_probe(m.surface.profile(), 0.0, f64::abs(z1) + f64::abs(z2)).unwrap()
        };
        let p = probe(BoundednessRegime::Both, 1.0, 1.0, 0.0);
        assert!(p.bounded_near_axis && p.bounded_at_infinity);
        let p = probe(BoundednessRegime::NearAxis, -1.0, 1.0, 0.0);
        assert!(p.bounded_near_axis && !p.bounded_at_infinity);
        let p = probe(BoundednessRegime::AtInfinity, 1.0, 1.0, 1.0);
        assert!(!p.bounded_near_axis && p.bounded_at_infinity);
        let p = probe(BoundednessRegime::AtInfinity, -1.0, 0.0, 1.0);
        assert!(!p.bounded_near_axis && p.bounded_at_infinity);

        for (reg, l, c, z1, z2) in [
            (BoundednessRegime::NearAxis, 1.0, 0.0, 1.0, 1.0),
            (BoundednessRegime::NearAxis, 0.0, 0.0, 1.0, 1.0),
            (BoundednessRegime::AtInfinity, -1.0, 0.0, 1.0, 1.0),
            (BoundednessRegime::AtInfinity, 0.0, 0.0, 1.0, 0.0),
            (BoundednessRegime::Both, -1.0, 0.0, 1.0, 0.0),
            (BoundednessRegime::Both, 1.0, 1.0, 1.0, 0.0),
            (BoundednessRegime::Both, 1.0, 0.0, 0.0, 0.0),
        ] {
            assert!(matches!(boundedness_family(reg, l, c, 0.0, z1, z2), Err(Error::InconsistentCase(_))), "{reg:?} {l}");
        }
    }
}
