use isogeo::harmonic::{classify_harmonic, normal_laplacians, HarmonicReport};
use isogeo::invariant::{ParabolicSubfamily, QuadricForm, QuadricType};
use isogeo::profile::Profile;
use isogeo::spectral::{
    boundary_spectrum, boundedness_probe, eigen_residual, BoundednessProbe, BoundednessRegime, CoordinateReport,
    GridSpec, InvariantSurface, Outcome, SpectrumKind, RESIDUAL_TOL,
};
use isogeo::surface::{DerivativeMode, GaussMapKind, ParamRect};
use serde::Serialize;

use crate::config::{Params, RunConfig};
use crate::error::{CliError, Result};
use crate::family::{build, BuiltFamily, Target};
use crate::output::{fmt_float, json_string, obj_string, sample_mesh, write_file};

pub const DEFAULT_MESH_GRID: [usize; 2] = [40, 160];
pub const FINITE_DIFFERENCE_TOL: f64 = 1e-4;
/// Spectral profiles must meet their boundary conditions to this accuracy.
pub const BOUNDARY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Range {
    pub min: f64,
    pub max: f64,
}

impl Range {
    fn of(values: impl IntoIterator<Item = f64>) -> Option<Self> {
        values.into_iter().fold(None, |acc, x| {
            Some(match acc {
                None => Range { min: x, max: x },
                Some(r) => Range { min: r.min.min(x), max: r.max.max(x) },
            })
        })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct GenerateMetadata {
    pub command: &'static str,
    pub family: String,
    pub case: String,
    pub config: RunConfig,
    pub subfamily: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quadric: Option<QuadricForm>,
    pub domain: ParamRect,
    pub grid: [usize; 2],
    pub vertices: usize,
    pub faces: usize,
    pub clipped_cells: usize,
    pub rejected_vertices: usize,
    pub gaussian_curvature: Option<Range>,
    pub mean_curvature: Option<Range>,
}

fn subfamily(built: &BuiltFamily) -> (String, Option<QuadricForm>) {
    match &built.target {
        Target::Graph(_) => ("graph".into(), None),
        Target::Invariant(InvariantSurface::Helicoidal(h)) => {
            (if h.c() == 0.0 { "surface of revolution" } else { "helicoidal surface" }.into(), None)
        }
        Target::Invariant(InvariantSurface::Parabolic(q)) => {
            if let Some(form) = q.quadric_form() {
                let name = match form.kind {
                    QuadricType::EllipticParaboloid => "elliptic paraboloid",
                    QuadricType::ParabolicCylinder => "parabolic cylinder",
                    QuadricType::HyperbolicParaboloid => "hyperbolic paraboloid",
                    QuadricType::Plane => "plane",
                };
                return (name.into(), Some(form));
            }
            let name = match q.subfamily() {
                ParabolicSubfamily::Translation => "translation surface",
                ParabolicSubfamily::WarpedTranslation => "warped translation surface",
                ParabolicSubfamily::General => "parabolic revolution surface",
            };
            (name.into(), None)
        }
    }
}

/// Writes `<out>` as OBJ and `<out>.json` (extension replaced) as metadata.
pub fn generate(cfg: &RunConfig) -> Result<GenerateMetadata> {
    let out = cfg.out.as_ref().ok_or_else(|| CliError::Invalid("generate needs --out PATH for the mesh".into()))?;
    let built = build(cfg.family()?, &cfg.params)?;
    let [nu, nt] = cfg.grid.unwrap_or(DEFAULT_MESH_GRID);
    let domain = built.target.domain();
    let (mesh, curvatures) = match &built.target {
        Target::Invariant(s) => {
            let mesh = sample_mesh(s, nu, nt)?;
            let cf: Vec<_> = domain.grid(nu, nt).into_iter().filter_map(|p| s.closed_forms(p).ok()).collect();
            (mesh, cf.iter().map(|c| (c.gaussian_curvature, c.mean_curvature)).collect::<Vec<_>>())
        }
        Target::Graph(s) => {
            let mesh = sample_mesh(s, nu, nt)?;
            let mut hk = Vec::new();
            for p in domain.grid(nu, nt) {
                let l = normal_laplacians(s, p)?;
                hk.push((l.gaussian_curvature, l.mean_curvature));
            }
            (mesh, hk)
        }
    };
    let (sub, quadric) = subfamily(&built);
    let meta = GenerateMetadata {
        command: "generate",
        family: built.family.clone(),
        case: built.case.clone(),
        config: cfg.clone(),
        subfamily: sub,
        quadric,
        domain,
        grid: [nu, nt],
        vertices: mesh.vertices.len(),
        faces: mesh.faces.len(),
        clipped_cells: mesh.clipped_cells,
        rejected_vertices: mesh.rejected_vertices,
        gaussian_curvature: Range::of(curvatures.iter().map(|c| c.0)),
        mean_curvature: Range::of(curvatures.iter().map(|c| c.1)),
    };
    write_file(out, &obj_string(&mesh))?;
    write_file(&out.with_extension("json"), &json_string(&meta))?;
    Ok(meta)
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundednessCheck {
    pub regime: BoundednessRegime,
    pub probe: BoundednessProbe,
    pub consistent: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub command: &'static str,
    pub family: String,
    pub case: String,
    pub config: RunConfig,
    pub gauss_map: GaussMapKind,
    pub derivative_mode: DerivativeMode,
    pub grid: GridSpec,
    pub tol: f64,
    /// Residuals are compared against `tol (1 + max |λ_i|)`.
    pub threshold: f64,
    pub declared_eigenvalues: [Option<f64>; 3],
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub coordinates: Vec<CoordinateReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_residual: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda3_over_lambda: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub boundedness: Option<BoundednessCheck>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub harmonic: Option<HarmonicReport>,
    pub outcome: Outcome,
}

fn default_tol(mode: DerivativeMode) -> f64 {
    match mode {
        DerivativeMode::ClosedForm => RESIDUAL_TOL,
        DerivativeMode::FiniteDifference => FINITE_DIFFERENCE_TOL,
    }
}

fn grid_over(cfg: &RunConfig, rect: ParamRect) -> Result<GridSpec> {
    let [nu, nv] = cfg.grid.unwrap_or([GridSpec::DEFAULT_NU, GridSpec::DEFAULT_NV]);
    Ok(GridSpec::new(nu, nv, rect)?)
}

fn scaled(tol: f64, lambdas: &[Option<f64>]) -> f64 {
    tol * (1.0 + lambdas.iter().flatten().fold(0.0_f64, |m, l| m.max(l.abs())))
}

pub fn verify(cfg: &RunConfig) -> Result<VerifyReport> {
    let built = build(cfg.family()?, &cfg.params)?;
    let mode = cfg.mode();
    let tol = cfg.tol.unwrap_or_else(|| default_tol(mode));
    if !(tol > 0.0) {
        return Err(CliError::Invalid(format!("tolerance must be positive, got {tol}")));
    }
    let grid = grid_over(cfg, built.target.domain())?;
    let mut report = VerifyReport {
        command: "verify",
        family: built.family.clone(),
        case: built.case.clone(),
        config: cfg.clone(),
        gauss_map: cfg.gauss_map.unwrap_or(built.kind),
        derivative_mode: mode,
        grid,
        tol,
        threshold: tol,
        declared_eigenvalues: [None; 3],
        coordinates: Vec::new(),
        max_residual: None,
        lambda3_over_lambda: None,
        boundedness: None,
        harmonic: None,
        outcome: Outcome::Pass,
    };
    let surface = match &built.target {
        Target::Graph(g) => {
            report.harmonic = Some(classify_harmonic(g, &grid, tol)?);
            return Ok(report);
        }
        Target::Invariant(s) => s,
    };
    let kind = report.gauss_map;
    let lambdas = built.eigenvalues_for(kind);
    let eigen = eigen_residual(surface, kind, lambdas, &grid, mode)?;
    report.threshold = scaled(tol, &lambdas);
    report.declared_eigenvalues = lambdas;
    report.max_residual = Some(eigen.max_residual());
    report.outcome = eigen.outcome(report.threshold);
    if built.family == "lambda3" && kind == GaussMapKind::Parabolic {
        if let (Some(l3), Some(l)) = (eigen.coordinates[2].fitted_lambda, lambdas[0]) {
            report.lambda3_over_lambda = Some(l3 / l);
        }
    }
    if let (Some(regime), Profile::Bessel { z0, z1, z2, .. } | Profile::QuadraticLog { z0, z1, z2 }) =
        (built.boundedness, surface.profile())
    {
        let probe = boundedness_probe(surface.profile(), *z0, z1.abs() + z2.abs())?;
        let consistent = match regime {
            BoundednessRegime::NearAxis => probe.bounded_near_axis,
            BoundednessRegime::AtInfinity => probe.bounded_at_infinity,
            BoundednessRegime::Both => probe.bounded_near_axis && probe.bounded_at_infinity,
        };
        if !consistent {
            report.outcome = Outcome::Fail;
        }
        report.boundedness = Some(BoundednessCheck { regime, probe, consistent });
    }
    report.coordinates = eigen.coordinates.to_vec();
    Ok(report)
}

#[derive(Debug, Clone, Serialize)]
pub struct SpectrumRow {
    pub n: usize,
    pub eigenvalue: f64,
    pub profile_parameter: f64,
    pub boundary_residual: f64,
    pub eigen_residual: f64,
    pub profile: Profile,
}

#[derive(Debug, Clone, Serialize)]
pub struct SpectrumReport {
    pub command: &'static str,
    pub kind: SpectrumKind,
    pub config: RunConfig,
    pub length: f64,
    pub a_offset: f64,
    pub a: f64,
    pub b: f64,
    pub tol: f64,
    pub boundary_tol: f64,
    pub grid: [usize; 2],
    /// Shifts `k` at which `z(a + kL) = z(a)` is checked.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub period_shifts: Vec<i32>,
    pub rows: Vec<SpectrumRow>,
    pub outcome: Outcome,
}

pub fn spectrum_kind(name: &str) -> Result<SpectrumKind> {
    match name {
        "homogeneous" => Ok(SpectrumKind::Homogeneous),
        "periodic" => Ok(SpectrumKind::Periodic),
        "mixed-bessel" => Ok(SpectrumKind::MixedBessel),
        other => Err(CliError::Invalid(format!(
            "unknown spectrum `{other}`; expected homogeneous, periodic or mixed-bessel"
        ))),
    }
}

pub fn spectrum(cfg: &RunConfig) -> Result<SpectrumReport> {
    let kind = spectrum_kind(cfg.family()?)?;
    let mut p = Params::new(&cfg.params);
    let length = p.get("length", 1.0);
    let a_offset = p.get("a_offset", 0.0);
    let n_max = p.count("n_max", 5)?;
    let (a, b) = (p.get("a", 0.0), p.get("b", 1.0));
    p.finish()?;
    let mode = cfg.mode();
    let tol = cfg.tol.unwrap_or_else(|| default_tol(mode));
    let spec = boundary_spectrum(kind, length, a_offset, n_max, a, b)?;
    let mut rows = Vec::with_capacity(n_max);
    let mut outcome = Outcome::Pass;
    for n in 1..=n_max {
        let surface = spec.surface(n)?;
        let lambdas = spec.declared_eigenvalues(n)?;
        let grid = grid_over(cfg, isogeo::surface::ParametricSurface::domain(&surface))?;
        let eigen = eigen_residual(&surface, GaussMapKind::Minimal, lambdas, &grid, mode)?;
        let row = SpectrumRow {
            n,
            eigenvalue: spec.eigenvalues[n - 1],
            profile_parameter: spec.profile_parameters[n - 1],
            boundary_residual: spec.boundary_residual(n)?,
            eigen_residual: eigen.max_residual(),
            profile: spec.profile(n)?,
        };
        if !(row.boundary_residual <= BOUNDARY_TOL && row.eigen_residual <= scaled(tol, &lambdas)) {
            outcome = Outcome::Fail;
        }
        rows.push(row);
    }
    Ok(SpectrumReport {
        command: "spectrum",
        kind,
        config: cfg.clone(),
        length,
        a_offset,
        a,
        b,
        tol,
        boundary_tol: BOUNDARY_TOL,
        grid: cfg.grid.unwrap_or([GridSpec::DEFAULT_NU, GridSpec::DEFAULT_NV]),
        period_shifts: if kind == SpectrumKind::Periodic { vec![-3, -2, -1, 1, 2, 3] } else { Vec::new() },
        rows,
        outcome,
    })
}

/// RFC 4180 CSV with a header row.
pub fn spectrum_csv(report: &SpectrumReport) -> String {
    let mut out = String::from("n,eigenvalue,boundary_residual\r\n");
    for r in &report.rows {
        out.push_str(&format!("{},{},{}\r\n", r.n, fmt_float(r.eigenvalue), fmt_float(r.boundary_residual)));
    }
    out
}

/// Writes the spectrum CSV to `<out>` and the JSON report next to it, or
/// returns the JSON for stdout when no path is given.
pub fn write_spectrum(cfg: &RunConfig, report: &SpectrumReport) -> Result<Option<String>> {
    match &cfg.out {
        Some(path) => {
            write_file(path, &spectrum_csv(report))?;
            write_file(&path.with_extension("json"), &json_string(report))?;
            Ok(None)
        }
        None => Ok(Some(json_string(report))),
    }
}

pub fn write_verify(cfg: &RunConfig, report: &VerifyReport) -> Result<Option<String>> {
    match &cfg.out {
        Some(path) => write_file(path, &json_string(report)).map(|_| None),
        None => Ok(Some(json_string(report))),
    }
}
