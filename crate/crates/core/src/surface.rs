//! Differential geometry of admissible parametric surfaces.
//!
//! A surface supplies its position map and, optionally, exact partial
//! derivatives up to order three. [`SurfaceGeometry`] turns those into the
//! fundamental forms, the minimal normal and parabolic Gauss map, the shape
//! operator, Christoffel symbols and the Laplace-Beltrami operator.

use serde::{Deserialize, Serialize};

use crate::fd::{self, STENCIL_REACH};
use crate::iso::{apply_motion, IsoPoint, IsoVector, MotionParams};
use crate::jet::{Jet2, ParamPoint};
use crate::{Error, Result};

/// `|X_12|` below this counts as non-admissible.
pub const ADMISSIBILITY_TOL: f64 = 1e-9;
/// Points closer than this to a singular locus are refused.
pub const NEAR_SINGULAR_DISTANCE: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DerivativeMode {
    #[default]
    ClosedForm,
    FiniteDifference,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GaussMapKind {
    /// `N_m = (X_23/X_12, X_31/X_12, 1)`.
    Minimal,
    /// Same top view as `N_m`, lifted onto the paraboloid
    /// `z = 1/2 - (x^2 + y^2)/2`.
    Parabolic,
}

/// A closed rectangle in the parameter plane; bounds may be infinite.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParamRect {
    pub u_min: f64,
    pub u_max: f64,
    pub v_min: f64,
    pub v_max: f64,
}

impl ParamRect {
    pub const PLANE: Self = Self {
        u_min: f64::NEG_INFINITY,
        u_max: f64::INFINITY,
        v_min: f64::NEG_INFINITY,
        v_max: f64::INFINITY,
    };

    pub const fn new(u_min: f64, u_max: f64, v_min: f64, v_max: f64) -> Self {
        Self { u_min, u_max, v_min, v_max }
    }

    /// Membership in the closed rectangle, with a little slack for points
    /// produced by floating-point grid arithmetic.
    pub fn contains(&self, p: ParamPoint) -> bool {
        let slack = |lo: f64, hi: f64| {
            if lo.is_finite() && hi.is_finite() {
                1e-12 * (1.0 + (hi - lo).abs())
            } else {
                1e-12
            }
        };
        let su = slack(self.u_min, self.u_max);
        let sv = slack(self.v_min, self.v_max);
        p.u >= self.u_min - su && p.u <= self.u_max + su && p.v >= self.v_min - sv && p.v <= self.v_max + sv
    }

    /// Whether the open square of half-width `r` around `p` lies strictly
    /// inside the rectangle.
    pub fn contains_ball(&self, p: ParamPoint, r: f64) -> bool {
        p.u - r > self.u_min && p.u + r < self.u_max && p.v - r > self.v_min && p.v + r < self.v_max
    }

    /// `nu × nv` evenly spaced points including the corners, row-major with
    /// `u` as the row index. Requires finite bounds and `nu, nv >= 2`.
    pub fn grid(&self, nu: usize, nv: usize) -> Vec<ParamPoint> {
        let mut out = Vec::with_capacity(nu * nv);
        for i in 0..nu {
            let u = lerp(self.u_min, self.u_max, i, nu);
            for j in 0..nv {
                out.push(ParamPoint::new(u, lerp(self.v_min, self.v_max, j, nv)));
            }
        }
        out
    }
}

fn lerp(lo: f64, hi: f64, i: usize, n: usize) -> f64 {
    if n <= 1 {
        return lo;
    }
    if i + 1 == n {
        return hi;
    }
    lo + (hi - lo) * i as f64 / (n - 1) as f64
}

/// Position and all partial derivatives up to order three at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurfaceJet {
    pub x: IsoPoint,
    pub x1: IsoVector,
    pub x2: IsoVector,
    pub x11: IsoVector,
    pub x12: IsoVector,
    pub x22: IsoVector,
    pub x111: IsoVector,
    pub x112: IsoVector,
    pub x122: IsoVector,
    pub x222: IsoVector,
}

impl SurfaceJet {
    /// Builds a jet from `[x, x_u, x_v, x_uu, x_uv, x_vv, x_uuu, x_uuv, x_uvv, x_vvv]`.
    pub fn from_derivatives(d: [[f64; 3]; 10]) -> Self {
        let v = IsoVector::from_array;
        Self {
            x: IsoPoint::from_array(d[0]),
            x1: v(d[1]),
            x2: v(d[2]),
            x11: v(d[3]),
            x12: v(d[4]),
            x22: v(d[5]),
            x111: v(d[6]),
            x112: v(d[7]),
            x122: v(d[8]),
            x222: v(d[9]),
        }
    }

    /// First partial `x_i`, `i ∈ {0, 1}`.
    pub fn first(&self, i: usize) -> IsoVector {
        [self.x1, self.x2][i]
    }

    /// Second partial `x_ij`, `i, j ∈ {0, 1}`.
    pub fn second(&self, i: usize, j: usize) -> IsoVector {
        match i + j {
            0 => self.x11,
            1 => self.x12,
            _ => self.x22,
        }
    }

    /// Third partial `x_ijk`.
    pub fn third(&self, i: usize, j: usize, k: usize) -> IsoVector {
        match i + j + k {
            0 => self.x111,
            1 => self.x112,
            2 => self.x122,
            _ => self.x222,
        }
    }

    /// Component `c` of `x_i` as a jet in `(u, v)`.
    fn first_partial_jet(&self, i: usize, c: usize) -> Jet2 {
        let comp = |v: IsoVector| v.to_array()[c];
        Jet2::new(
            comp(self.first(i)),
            [comp(self.second(i, 0)), comp(self.second(i, 1))],
            [
                [comp(self.third(i, 0, 0)), comp(self.third(i, 0, 1))],
                [comp(self.third(i, 1, 0)), comp(self.third(i, 1, 1))],
            ],
        )
    }

    /// `X_12 = x_1^1 x_2^2 - x_2^1 x_1^2`.
    pub fn x12_minor(&self) -> f64 {
        self.x1.x1 * self.x2.x2 - self.x2.x1 * self.x1.x2
    }

    /// The same jet seen after an isotropic motion.
    pub fn moved(&self, m: &MotionParams) -> Self {
        let v = |x: IsoVector| m.apply_vector(x);
        Self {
            x: apply_motion(m, self.x),
            x1: v(self.x1),
            x2: v(self.x2),
            x11: v(self.x11),
            x12: v(self.x12),
            x22: v(self.x22),
            x111: v(self.x111),
            x112: v(self.x112),
            x122: v(self.x122),
            x222: v(self.x222),
        }
    }
}

/// A smooth map from a parameter rectangle into isotropic space.
pub trait ParametricSurface {
    fn position(&self, p: ParamPoint) -> IsoPoint;

    /// The rectangle on which the surface is sampled and queried.
    fn domain(&self) -> ParamRect;

    /// The open set on which `position` is smooth. Finite-difference stencils
    /// must stay inside it. Defaults to the whole plane.
    fn definition_domain(&self) -> ParamRect {
        ParamRect::PLANE
    }

    /// Exact derivatives, if the surface knows them.
    fn exact_jet(&self, _p: ParamPoint) -> Option<SurfaceJet> {
        None
    }

    /// Distance from `p` to a singular locus of the parametrization, if any.
    fn singular_distance(&self, _p: ParamPoint) -> Option<f64> {
        None
    }
}

impl<S: ParametricSurface + ?Sized> ParametricSurface for &S {
    fn position(&self, p: ParamPoint) -> IsoPoint {
        (**self).position(p)
    }
    fn domain(&self) -> ParamRect {
        (**self).domain()
    }
    fn definition_domain(&self) -> ParamRect {
        (**self).definition_domain()
    }
    fn exact_jet(&self, p: ParamPoint) -> Option<SurfaceJet> {
        (**self).exact_jet(p)
    }
    fn singular_distance(&self, p: ParamPoint) -> Option<f64> {
        (**self).singular_distance(p)
    }
}

/// `surface` followed by a fixed isotropic motion.
#[derive(Debug, Clone)]
pub struct MovedSurface<S> {
    pub surface: S,
    pub motion: MotionParams,
}

impl<S: ParametricSurface> ParametricSurface for MovedSurface<S> {
    fn position(&self, p: ParamPoint) -> IsoPoint {
        apply_motion(&self.motion, self.surface.position(p))
    }
    fn domain(&self) -> ParamRect {
        self.surface.domain()
    }
    fn definition_domain(&self) -> ParamRect {
        self.surface.definition_domain()
    }
    fn exact_jet(&self, p: ParamPoint) -> Option<SurfaceJet> {
        self.surface.exact_jet(p).map(|j| j.moved(&self.motion))
    }
    fn singular_distance(&self, p: ParamPoint) -> Option<f64> {
        self.surface.singular_distance(p)
    }
}

/// A scalar function on the parameter domain.
pub trait ScalarField {
    fn value(&self, p: ParamPoint) -> f64;

    /// Value with exact first and second derivatives, if known.
    fn exact_jet(&self, _p: ParamPoint) -> Option<Jet2> {
        None
    }
}

impl<F: Fn(ParamPoint) -> f64> ScalarField for F {
    fn value(&self, p: ParamPoint) -> f64 {
        self(p)
    }
}

/// A field given directly by its second-order jet.
pub struct ExactField<F>(pub F);

impl<F: Fn(ParamPoint) -> Jet2> ScalarField for ExactField<F> {
    fn value(&self, p: ParamPoint) -> f64 {
        (self.0)(p).value
    }
    fn exact_jet(&self, p: ParamPoint) -> Option<Jet2> {
        Some((self.0)(p))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FundamentalForms {
    pub g11: f64,
    pub g12: f64,
    pub g22: f64,
    pub h11: f64,
    pub h12: f64,
    pub h22: f64,
    pub det_g: f64,
    pub inverse_metric: [[f64; 2]; 2],
}

impl FundamentalForms {
    pub fn metric(&self) -> [[f64; 2]; 2] {
        [[self.g11, self.g12], [self.g12, self.g22]]
    }

    pub fn second_form(&self) -> [[f64; 2]; 2] {
        [[self.h11, self.h12], [self.h12, self.h22]]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShapeData {
    /// `g^{-1} h`.
    pub shape_operator: [[f64; 2]; 2],
    pub gaussian_curvature: f64,
    pub mean_curvature: f64,
}

/// `Γ[k][i][j] = Γ^k_ij`, zero-based.
pub type Christoffel = [[[f64; 2]; 2]; 2];

/// Geometry of one surface under one derivative mode.
#[derive(Debug, Clone, Copy)]
pub struct SurfaceGeometry<'a, S: ?Sized> {
    surface: &'a S,
    mode: DerivativeMode,
}

impl<'a, S: ParametricSurface + ?Sized> SurfaceGeometry<'a, S> {
    pub fn new(surface: &'a S, mode: DerivativeMode) -> Self {
        Self { surface, mode }
    }

    pub fn surface(&self) -> &'a S {
        self.surface
    }

    pub fn mode(&self) -> DerivativeMode {
        self.mode
    }

    fn check_point(&self, p: ParamPoint) -> Result<()> {
        if !p.u.is_finite() || !p.v.is_finite() || !self.surface.domain().contains(p) {
            return Err(Error::OutsideDomain { u: p.u, t: p.v });
        }
        if let Some(distance) = self.surface.singular_distance(p) {
            if distance < NEAR_SINGULAR_DISTANCE {
                return Err(Error::NearSingular { u: p.u, t: p.v, distance });
            }
        }
        Ok(())
    }

    fn check_stencil(&self, p: ParamPoint, reach: f64) -> Result<()> {
        if self.surface.definition_domain().contains_ball(p, reach) {
            Ok(())
        } else {
            Err(Error::StencilOutOfDomain { u: p.u, t: p.v })
        }
    }

    /// Position and partials up to order three. `ClosedForm` mode falls back
    /// to finite differences for surfaces without exact derivatives.
    pub fn jet(&self, p: ParamPoint) -> Result<SurfaceJet> {
        self.check_point(p)?;
        if self.mode == DerivativeMode::ClosedForm {
            if let Some(jet) = self.surface.exact_jet(p) {
                return Ok(jet);
            }
        }
        self.check_stencil(p, STENCIL_REACH)?;
        let f = |q: ParamPoint| self.surface.position(q).to_array();
        Ok(SurfaceJet::from_derivatives(fd::derivatives_to_third(&f, p)))
    }

    fn admissible_jet(&self, p: ParamPoint) -> Result<SurfaceJet> {
        let jet = self.jet(p)?;
        let x12 = jet.x12_minor();
        if !(x12.abs() > ADMISSIBILITY_TOL) {
            return Err(Error::NonAdmissible { u: p.u, t: p.v, x12 });
        }
        Ok(jet)
    }

    /// The minor `X_ij` of the first partials, `i, j ∈ {1, 2, 3}`.
    pub fn admissibility_minor(&self, i: usize, j: usize, p: ParamPoint) -> Result<f64> {
        let jet = self.jet(p)?;
        crate::iso::minor_of_partials(jet.x1, jet.x2, i, j)
    }

    pub fn is_admissible_at(&self, p: ParamPoint) -> Result<bool> {
        Ok(self.jet(p)?.x12_minor().abs() > ADMISSIBILITY_TOL)
    }

    pub fn fundamental_forms(&self, p: ParamPoint) -> Result<FundamentalForms> {
        let jet = self.admissible_jet(p)?;
        Ok(forms_from_jet(&jet))
    }

    pub fn minimal_normal(&self, p: ParamPoint) -> Result<IsoVector> {
        Ok(minimal_normal_of(&self.admissible_jet(p)?))
    }

    pub fn parabolic_gauss_map(&self, p: ParamPoint) -> Result<IsoVector> {
        Ok(lift_to_paraboloid(self.minimal_normal(p)?))
    }

    pub fn gauss_map(&self, kind: GaussMapKind, p: ParamPoint) -> Result<IsoVector> {
        match kind {
            GaussMapKind::Minimal => self.minimal_normal(p),
            GaussMapKind::Parabolic => self.parabolic_gauss_map(p),
        }
    }

    pub fn shape_and_curvatures(&self, p: ParamPoint) -> Result<ShapeData> {
        Ok(shape_from_forms(&self.fundamental_forms(p)?))
    }

    /// Christoffel symbols from the tangential part of
    /// `x_ij = Γ^k_ij x_k + h_ij e_3`, solved in the top view.
    pub fn christoffel(&self, p: ParamPoint) -> Result<Christoffel> {
        let jet = self.admissible_jet(p)?;
        let mut gamma = [[[0.0; 2]; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                let [g1, g2] = solve_top_view(&jet, jet.second(i, j));
                gamma[0][i][j] = g1;
                gamma[1][i][j] = g2;
            }
        }
        Ok(gamma)
    }

    /// Coefficients `W[i] = [α, β]` with `∂_i N_m = α a_1 + β a_2`, where
    /// `a_k = x_k × e_3`. The matrix is trace-free.
    pub fn weingarten_matrix(&self, p: ParamPoint) -> Result<[[f64; 2]; 2]> {
        let jet = self.admissible_jet(p)?;
        let [n1, n2, _] = gauss_map_jets(&jet, GaussMapKind::Minimal);
        let det = jet.x12_minor();
        // a_1 = (x_1^2, -x_1^1), a_2 = (x_2^2, -x_2^1) in the top view.
        let (a11, a12) = (jet.x1.x2, -jet.x1.x1);
        let (a21, a22) = (jet.x2.x2, -jet.x2.x1);
        let mut w = [[0.0; 2]; 2];
        for (i, row) in w.iter_mut().enumerate() {
            let (r1, r2) = (n1.grad[i], n2.grad[i]);
            // [a11 a21; a12 a22] [α; β] = [r1; r2], determinant X_12.
            let d = a11 * a22 - a21 * a12;
            debug_assert!((d - det).abs() <= 1e-9 * (1.0 + det.abs()));
            row[0] = (r1 * a22 - a21 * r2) / d;
            row[1] = (a11 * r2 - r1 * a12) / d;
        }
        Ok(w)
    }

    /// The Gauss map coordinates as second-order jets in `(u, v)`.
    pub fn gauss_map_jets(&self, kind: GaussMapKind, p: ParamPoint) -> Result<[Jet2; 3]> {
        Ok(gauss_map_jets(&self.admissible_jet(p)?, kind))
    }

    /// Laplace-Beltrami of each Gauss-map coordinate.
    pub fn gauss_map_laplacian(&self, kind: GaussMapKind, p: ParamPoint) -> Result<IsoVector> {
        let jet = self.admissible_jet(p)?;
        let comps = gauss_map_jets(&jet, kind);
        let ops = MetricOperator::new(&jet);
        Ok(IsoVector::new(ops.apply(&comps[0]), ops.apply(&comps[1]), ops.apply(&comps[2])))
    }

    /// The Gauss map and the Laplace-Beltrami of each of its coordinates.
    pub fn gauss_map_with_laplacian(&self, kind: GaussMapKind, p: ParamPoint) -> Result<(IsoVector, IsoVector)> {
        let jet = self.admissible_jet(p)?;
        let c = gauss_map_jets(&jet, kind);
        let ops = MetricOperator::new(&jet);
        Ok((
            IsoVector::new(c[0].value, c[1].value, c[2].value),
            IsoVector::new(ops.apply(&c[0]), ops.apply(&c[1]), ops.apply(&c[2])),
        ))
    }

    /// Laplace-Beltrami of a scalar field, in divergence form.
    pub fn laplace_beltrami(&self, field: &dyn ScalarField, p: ParamPoint) -> Result<f64> {
        let jet = self.admissible_jet(p)?;
        let f = match field.exact_jet(p) {
            Some(j) => j,
            None => {
                self.check_stencil(p, 2.0 * fd::HIGHER_STEP)?;
                numeric_field_jet(field, p)
            }
        };
        Ok(MetricOperator::new(&jet).apply(&f))
    }

    /// Laplace-Beltrami of a field whose jet at `p` is already known.
    pub fn laplacian_of_jet(&self, f: &Jet2, p: ParamPoint) -> Result<f64> {
        let jet = self.admissible_jet(p)?;
        Ok(MetricOperator::new(&jet).apply(f))
    }
}

fn numeric_field_jet(field: &dyn ScalarField, p: ParamPoint) -> Jet2 {
    let f = |q: ParamPoint| [field.value(q)];
    let d = fd::derivatives_to_second(&f, p);
    Jet2::new(d[0][0], [d[1][0], d[2][0]], [[d[3][0], d[4][0]], [d[4][0], d[5][0]]])
}

fn top_dot(a: IsoVector, b: IsoVector) -> f64 {
    a.x1 * b.x1 + a.x2 * b.x2
}

/// Solves `top(w) = c_1 top(x_1) + c_2 top(x_2)`.
fn solve_top_view(jet: &SurfaceJet, w: IsoVector) -> [f64; 2] {
    let det = jet.x12_minor();
    [
        (w.x1 * jet.x2.x2 - jet.x2.x1 * w.x2) / det,
        (jet.x1.x1 * w.x2 - w.x1 * jet.x1.x2) / det,
    ]
}

pub fn minimal_normal_of(jet: &SurfaceJet) -> IsoVector {
    let (a, b) = (jet.x1, jet.x2);
    let x12 = a.x1 * b.x2 - b.x1 * a.x2;
    let x23 = a.x2 * b.x3 - b.x2 * a.x3;
    let x31 = a.x3 * b.x1 - b.x3 * a.x1;
    IsoVector::new(x23 / x12, x31 / x12, 1.0)
}

/// Replaces the third coordinate by `1/2 - (x^2 + y^2)/2`.
pub fn lift_to_paraboloid(n: IsoVector) -> IsoVector {
    IsoVector::new(n.x1, n.x2, 0.5 - 0.5 * (n.x1 * n.x1 + n.x2 * n.x2))
}

pub fn forms_from_jet(jet: &SurfaceJet) -> FundamentalForms {
    let n = minimal_normal_of(jet);
    let g11 = top_dot(jet.x1, jet.x1);
    let g12 = top_dot(jet.x1, jet.x2);
    let g22 = top_dot(jet.x2, jet.x2);
    let det_g = g11 * g22 - g12 * g12;
    FundamentalForms {
        g11,
        g12,
        g22,
        h11: jet.x11.dot(n),
        h12: jet.x12.dot(n),
        h22: jet.x22.dot(n),
        det_g,
        inverse_metric: [[g22 / det_g, -g12 / det_g], [-g12 / det_g, g11 / det_g]],
    }
}

pub fn shape_from_forms(f: &FundamentalForms) -> ShapeData {
    let gi = f.inverse_metric;
    let h = f.second_form();
    let mut s = [[0.0; 2]; 2];
    for (i, row) in s.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            *v = gi[i][0] * h[0][j] + gi[i][1] * h[1][j];
        }
    }
    ShapeData {
        shape_operator: s,
        gaussian_curvature: (f.h11 * f.h22 - f.h12 * f.h12) / f.det_g,
        mean_curvature: 0.5 * (f.g11 * f.h22 - 2.0 * f.g12 * f.h12 + f.g22 * f.h11) / f.det_g,
    }
}

fn gauss_map_jets(jet: &SurfaceJet, kind: GaussMapKind) -> [Jet2; 3] {
    let a = [0, 1, 2].map(|c| jet.first_partial_jet(0, c));
    let b = [0, 1, 2].map(|c| jet.first_partial_jet(1, c));
    let x12 = a[0] * b[1] - b[0] * a[1];
    let x23 = a[1] * b[2] - b[1] * a[2];
    let x31 = a[2] * b[0] - b[2] * a[0];
    let n1 = x23 / x12;
    let n2 = x31 / x12;
    let n3 = match kind {
        GaussMapKind::Minimal => Jet2::constant(1.0),
        GaussMapKind::Parabolic => (n1.square() + n2.square()).scale(-0.5) + 0.5,
    };
    [n1, n2, n3]
}

/// `Δf = g^{ij} f_ij + b^j f_j` with `b^j = (1/√g) ∂_i(√g g^{ij})`.
struct MetricOperator {
    inv: [[f64; 2]; 2],
    drift: [f64; 2],
}

impl MetricOperator {
    fn new(jet: &SurfaceJet) -> Self {
        let forms = forms_from_jet(jet);
        let inv = forms.inverse_metric;
        // dg[k][i][j] = ∂_k g_ij = <x_ik, x_j> + <x_i, x_jk>.
        let mut dg = [[[0.0; 2]; 2]; 2];
        for (k, dgk) in dg.iter_mut().enumerate() {
            for (i, row) in dgk.iter_mut().enumerate() {
                for (j, v) in row.iter_mut().enumerate() {
                    *v = top_dot(jet.second(i, k), jet.first(j)) + top_dot(jet.first(i), jet.second(j, k));
                }
            }
        }
        // ∂_i log √g = ½ g^{ab} ∂_i g_ab.
        let dlog = [0, 1].map(|i| {
            let mut s = 0.0;
            for a in 0..2 {
                for b in 0..2 {
                    s += inv[a][b] * dg[i][a][b];
                }
            }
            0.5 * s
        });
        let mut drift = [0.0; 2];
        for (j, d) in drift.iter_mut().enumerate() {
            for i in 0..2 {
                *d += dlog[i] * inv[i][j];
                // ∂_i g^{ij} = -g^{ia} ∂_i g_ab g^{bj}.
                for a in 0..2 {
                    for b in 0..2 {
                        *d -= inv[i][a] * dg[i][a][b] * inv[b][j];
                    }
                }
            }
        }
        Self { inv, drift }
    }

    fn apply(&self, f: &Jet2) -> f64 {
        let mut s = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                s += self.inv[i][j] * f.hess[i][j];
            }
            s += self.drift[i] * f.grad[i];
        }
        s
    }
}
