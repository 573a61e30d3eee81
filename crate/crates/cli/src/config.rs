use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use isogeo::surface::{DerivativeMode, GaussMapKind};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

/// Everything a run depends on. Config files use the same field names; a
/// command-line flag overrides the matching field.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub family: Option<String>,
    #[serde(default)]
    pub params: BTreeMap<String, f64>,
    /// `[nu, nt]`.
    pub grid: Option<[usize; 2]>,
    pub tol: Option<f64>,
    #[serde(skip_serializing)]
    pub out: Option<PathBuf>,
    pub gauss_map: Option<GaussMapKind>,
    pub derivative_mode: Option<DerivativeMode>,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        serde_json::from_str(&text).map_err(|source| CliError::Config { path: path.to_owned(), source })
    }

    /// Fields set in `over` replace those in `self`; params are merged key by key.
    pub fn merge(mut self, over: RunConfig) -> Self {
        self.family = over.family.or(self.family);
        self.params.extend(over.params);
        self.grid = over.grid.or(self.grid);
        self.tol = over.tol.or(self.tol);
        self.out = over.out.or(self.out);
        self.gauss_map = over.gauss_map.or(self.gauss_map);
        self.derivative_mode = over.derivative_mode.or(self.derivative_mode);
        self
    }

    pub fn family(&self) -> Result<&str> {
        self.family.as_deref().ok_or_else(|| CliError::Invalid("no family given (use --family or the config file)".into()))
    }

    pub fn mode(&self) -> DerivativeMode {
        self.derivative_mode.unwrap_or_default()
    }
}

/// Parses `key=value` with a numeric value.
pub fn parse_param(s: &str) -> std::result::Result<(String, f64), String> {
    let (k, v) = s.split_once('=').ok_or_else(|| format!("expected key=value, got `{s}`"))?;
    let k = k.trim();
    if k.is_empty() {
        return Err(format!("empty key in `{s}`"));
    }
    let v: f64 = v.trim().parse().map_err(|_| format!("`{v}` is not a number"))?;
    Ok((k.to_owned(), v))
}

/// Typed access to a family's parameters. Every key must be consumed, so a
/// misspelt key is reported instead of silently falling back to a default.
pub struct Params<'a> {
    map: &'a BTreeMap<String, f64>,
    used: Vec<&'a str>,
}

impl<'a> Params<'a> {
    pub fn new(map: &'a BTreeMap<String, f64>) -> Self {
        Self { map, used: Vec::new() }
    }

    pub fn opt(&mut self, key: &str) -> Option<f64> {
        let (k, v) = self.map.get_key_value(key)?;
        self.used.push(k);
        Some(*v)
    }

    pub fn get(&mut self, key: &str, default: f64) -> f64 {
        self.opt(key).unwrap_or(default)
    }

    pub fn require(&mut self, key: &str) -> Result<f64> {
        self.opt(key).ok_or_else(|| CliError::Invalid(format!("missing parameter `{key}`")))
    }

    pub fn count(&mut self, key: &str, default: usize) -> Result<usize> {
        match self.opt(key) {
            None => Ok(default),
            Some(v) if v >= 1.0 && v.fract() == 0.0 && v <= 1e6 => Ok(v as usize),
            Some(v) => Err(CliError::Invalid(format!("`{key}` must be a positive integer, got {v}"))),
        }
    }

    /// Keys starting with `prefix`, marked as used.
    pub fn with_prefix(&mut self, prefix: &str) -> Vec<(&'a str, f64)> {
        let found: Vec<(&'a str, f64)> =
            self.map.iter().filter(|(k, _)| k.starts_with(prefix)).map(|(k, v)| (k.as_str(), *v)).collect();
        self.used.extend(found.iter().map(|(k, _)| *k));
        found
    }

    pub fn finish(self) -> Result<()> {
        let unknown: Vec<&str> = self.map.keys().map(String::as_str).filter(|k| !self.used.contains(k)).collect();
        if unknown.is_empty() {
            Ok(())
        } else {
            Err(CliError::Invalid(format!("unknown parameter(s): {}", unknown.join(", "))))
        }
    }
}
