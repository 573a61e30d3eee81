//! Builds surfaces from a family name and a flat parameter map.

use std::collections::BTreeMap;

use isogeo::harmonic::{GraphSurface, Monomial, Polynomial};
use isogeo::invariant::{HelicoidalSurface, ParabolicParams, ParabolicRevolutionSurface};
use isogeo::spectral::{
    boundedness_family, helicoidal_minimal_family, lambda3_family, linear_profile_family, parabolic_minimal_family,
    BoundednessRegime, FamilyMember, HelicoidalMinimalSpec, InvariantSurface, ParabolicMinimalSpec,
};
use isogeo::surface::{GaussMapKind, ParamRect, ParametricSurface};

use crate::config::Params;
use crate::error::{CliError, Result};

pub const FAMILIES: &[&str] = &[
    "helicoidal-minimal",
    "parabolic-minimal",
    "lambda3",
    "linear-profile",
    "boundedness-near-axis",
    "boundedness-at-infinity",
    "boundedness-both",
    "graph",
];

#[derive(Debug, Clone)]
pub enum Target {
    Invariant(InvariantSurface),
    Graph(GraphSurface),
}

impl Target {
    pub fn domain(&self) -> ParamRect {
        match self {
            Self::Invariant(s) => s.domain(),
            Self::Graph(s) => s.domain(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct BuiltFamily {
    pub family: String,
    pub case: String,
    pub target: Target,
    /// The Gauss map the family's eigenvalues refer to.
    pub kind: GaussMapKind,
    pub eigenvalues: [Option<f64>; 3],
    /// Declared `λ3` for checks against the other Gauss map.
    pub lambda3: Option<f64>,
    pub boundedness: Option<BoundednessRegime>,
}

impl BuiltFamily {
    /// Declared eigenvalues for the requested Gauss map. The first two
    /// coordinates coincide for both maps; `N^3 ≡ 1` has eigenvalue 0.
    pub fn eigenvalues_for(&self, kind: GaussMapKind) -> [Option<f64>; 3] {
        let [l1, l2, l3] = self.eigenvalues;
        match (self.kind, kind) {
            (a, b) if a == b => [l1, l2, self.lambda3.or(l3)],
            (_, GaussMapKind::Minimal) => [l1, l2, Some(0.0)],
            (_, GaussMapKind::Parabolic) => [l1, l2, self.lambda3],
        }
    }
}

fn lambdas(p: &mut Params) -> (f64, f64) {
    let both = p.get("lambda", 0.0);
    (p.get("lambda1", both), p.get("lambda2", both))
}

fn parabolic_params(p: &mut Params) -> ParabolicParams {
    ParabolicParams { a: p.get("a", 0.0), b: p.get("b", 1.0), c: p.get("c", 0.0), c1: p.get("c1", 0.0), c2: p.get("c2", 0.0) }
}

fn domain_override(p: &mut Params, default: ParamRect) -> Option<ParamRect> {
    let keys = [p.opt("u_min"), p.opt("u_max"), p.opt("t_min"), p.opt("t_max")];
    if keys.iter().all(Option::is_none) {
        return None;
    }
    Some(ParamRect::new(
        keys[0].unwrap_or(default.u_min),
        keys[1].unwrap_or(default.u_max),
        keys[2].unwrap_or(default.v_min),
        keys[3].unwrap_or(default.v_max),
    ))
}

fn helicoidal(m: FamilyMember<HelicoidalSurface>) -> (String, InvariantSurface, GaussMapKind, [Option<f64>; 3]) {
    (m.case.to_owned(), InvariantSurface::Helicoidal(m.surface), m.kind, m.eigenvalues)
}

fn parabolic(m: FamilyMember<ParabolicRevolutionSurface>) -> (String, InvariantSurface, GaussMapKind, [Option<f64>; 3]) {
    (m.case.to_owned(), InvariantSurface::Parabolic(m.surface), m.kind, m.eigenvalues)
}

/// Rebuilds with a new domain and, for negative controls, a perturbed profile.
fn adjust(s: InvariantSurface, domain: Option<ParamRect>, perturb: Option<f64>) -> Result<InvariantSurface> {
    if domain.is_none() && perturb.is_none() {
        return Ok(s);
    }
    let profile = match perturb {
        Some(eps) => s.profile().clone().perturbed(eps),
        None => s.profile().clone(),
    };
    let rect = domain.unwrap_or(s.domain());
    Ok(match s {
        InvariantSurface::Helicoidal(h) => InvariantSurface::Helicoidal(HelicoidalSurface::with_domain(h.c(), profile, rect)?),
        InvariantSurface::Parabolic(q) => {
            InvariantSurface::Parabolic(ParabolicRevolutionSurface::with_domain(q.params(), profile, rect)?)
        }
    })
}

/// Graph coefficients are given as `c_i_j`, the coefficient of `u^i v^j`.
fn graph(p: &mut Params) -> Result<GraphSurface> {
    let mut terms = Vec::new();
    for (key, coeff) in p.with_prefix("c_") {
        let parsed = key[2..].split_once('_').and_then(|(i, j)| Some((i.parse().ok()?, j.parse().ok()?)));
        let Some((pu, pv)) = parsed else {
            return Err(CliError::Invalid(format!("graph coefficient keys look like c_2_0, got `{key}`")));
        };
        terms.push(Monomial { coeff, pu, pv });
    }
    let mut s = GraphSurface::polynomial(Polynomial::new(terms));
    if let Some(rect) = domain_override(p, GraphSurface::DEFAULT_DOMAIN) {
        s = s.with_domain(rect);
    }
    Ok(s)
}

pub fn build(family: &str, params: &BTreeMap<String, f64>) -> Result<BuiltFamily> {
    let mut p = Params::new(params);
    if family == "graph" {
        let surface = graph(&mut p)?;
        p.finish()?;
        return Ok(BuiltFamily {
            family: family.to_owned(),
            case: "graph".into(),
            target: Target::Graph(surface),
            kind: GaussMapKind::Minimal,
            eigenvalues: [None; 3],
            lambda3: None,
            boundedness: None,
        });
    }
    let mut lambda3 = None;
    let mut boundedness = None;
    let (case, surface, kind, eigenvalues) = match family {
        "helicoidal-minimal" => {
            let (lambda1, lambda2) = lambdas(&mut p);
            lambda3 = p.opt("lambda3");
            helicoidal(helicoidal_minimal_family(&HelicoidalMinimalSpec {
                c: p.get("c", 0.0),
                lambda1,
                lambda2,
                z0: p.get("z0", 0.0),
                z1: p.get("z1", 1.0),
                z2: p.get("z2", 0.0),
                domain: None,
            })?)
        }
        "parabolic-minimal" => {
            let (lambda1, lambda2) = lambdas(&mut p);
            lambda3 = p.opt("lambda3");
            parabolic(parabolic_minimal_family(&ParabolicMinimalSpec {
                params: parabolic_params(&mut p),
                lambda1,
                lambda2,
                z0: p.get("z0", 0.0),
                z1: p.opt("z1"),
                z2: p.opt("z2"),
                domain: None,
            })?)
        }
        "lambda3" => {
            let (a, b) = (p.get("a", 0.0), p.get("b", 1.0));
            let lambda = p.require("lambda")?;
            parabolic(lambda3_family(a, b, lambda, p.get("phi0", 0.0), p.get("z0", 0.0), None)?)
        }
        "linear-profile" => parabolic(linear_profile_family(
            p.get("a", 0.0),
            p.get("b", 1.0),
            p.get("c", 0.0),
            p.get("z0", 0.0),
            p.get("z1", 1.0),
            p.get("lambda3", 0.0),
        )?),
        "boundedness-near-axis" | "boundedness-at-infinity" | "boundedness-both" => {
            let regime = match family {
                "boundedness-near-axis" => BoundednessRegime::NearAxis,
                "boundedness-at-infinity" => BoundednessRegime::AtInfinity,
                _ => BoundednessRegime::Both,
            };
            boundedness = Some(regime);
            helicoidal(boundedness_family(
                regime,
                p.get("lambda", 0.0),
                p.get("c", 0.0),
                p.get("z0", 0.0),
                p.get("z1", 1.0),
                p.get("z2", 0.0),
            )?)
        }
        other => {
            return Err(CliError::Invalid(format!("unknown family `{other}`; expected one of {}", FAMILIES.join(", "))));
        }
    };
    let domain = domain_override(&mut p, surface.domain());
    let perturb = p.opt("perturb");
    p.finish()?;
    Ok(BuiltFamily {
        family: family.to_owned(),
        case,
        target: Target::Invariant(adjust(surface, domain, perturb)?),
        kind,
        eigenvalues,
        lambda3,
        boundedness,
    })
}
