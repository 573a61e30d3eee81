//! Mesh sampling and the OBJ, JSON and CSV writers.

use std::fmt::Write as _;
use std::path::Path;

use isogeo::surface::{DerivativeMode, ParametricSurface, SurfaceGeometry, NEAR_SINGULAR_DISTANCE};
use serde::Serialize;

use crate::error::{CliError, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct Mesh {
    pub nu: usize,
    pub nt: usize,
    pub vertices: Vec<[f64; 3]>,
    /// 1-based vertex indices, counter-clockwise in the parameter plane.
    pub faces: Vec<[usize; 3]>,
    /// Cells left out because a corner is near-singular or not admissible.
    pub clipped_cells: usize,
    pub rejected_vertices: usize,
}

/// Samples the surface on its domain, row-major with `u` outer, and splits
/// each grid cell into two triangles. Cells touching a vertex that fails the
/// admissibility sweep are clipped.
pub fn sample_mesh<S: ParametricSurface + ?Sized>(surface: &S, nu: usize, nt: usize) -> Result<Mesh> {
    if nu < 2 || nt < 2 {
        return Err(CliError::Invalid(format!("mesh grid must be at least 2×2, got {nu}×{nt}")));
    }
    let geo = SurfaceGeometry::new(surface, DerivativeMode::ClosedForm);
    let points = surface.domain().grid(nu, nt);
    let mut vertices = Vec::with_capacity(points.len());
    let mut good = Vec::with_capacity(points.len());
    for p in points {
        let x = surface.position(p).to_array();
        if x.iter().any(|c| !c.is_finite()) {
            return Err(CliError::Invalid(format!("surface position is not finite at ({}, {})", p.u, p.v)));
        }
        let far_from_axis = surface.singular_distance(p).is_none_or(|d| d >= NEAR_SINGULAR_DISTANCE);
        good.push(far_from_axis && geo.is_admissible_at(p).unwrap_or(false));
        vertices.push(x);
    }
    let idx = |i: usize, j: usize| i * nt + j;
    let mut faces = Vec::with_capacity(2 * (nu - 1) * (nt - 1));
    let mut clipped_cells = 0;
    for i in 0..nu - 1 {
        for j in 0..nt - 1 {
            let corners = [idx(i, j), idx(i + 1, j), idx(i + 1, j + 1), idx(i, j + 1)];
            if corners.iter().any(|&k| !good[k]) {
                clipped_cells += 1;
                continue;
            }
            let [a, b, c, d] = corners.map(|k| k + 1);
            faces.push([a, b, c]);
            faces.push([a, c, d]);
        }
    }
    Ok(Mesh { nu, nt, vertices, faces, clipped_cells, rejected_vertices: good.iter().filter(|g| !**g).count() })
}

pub fn obj_string(mesh: &Mesh) -> String {
    let mut out = String::with_capacity(40 * (mesh.vertices.len() + mesh.faces.len()));
    for [x, y, z] in &mesh.vertices {
        let _ = writeln!(out, "v {x} {y} {z}");
    }
    for [a, b, c] in &mesh.faces {
        let _ = writeln!(out, "f {a} {b} {c}");
    }
    out
}

pub fn write_file(path: &Path, contents: &str) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    }
    std::fs::write(path, contents).map_err(|e| CliError::io(path, e))
}

/// Pretty JSON with a trailing newline. Floats use the shortest decimal that
/// round-trips, so identical inputs give byte-identical files.
pub fn json_string<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

/// Shortest round-trip decimal, with an exponent only for very large or
/// small magnitudes.
pub fn fmt_float(x: f64) -> String {
    format!("{x:?}")
}
