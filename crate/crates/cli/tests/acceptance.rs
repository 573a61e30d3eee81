//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::f64::consts::PI;
use std::process::Command;

use isogeo::bessel::{bessel_deriv, bessel_eval, j0_zeros, BesselKind};
use isogeo::harmonic::{classify_harmonic, normal_laplacians, GraphSurface, HarmonicClass, Monomial, Polynomial};
use isogeo::invariant::{HelicoidalSurface, ParabolicParams, ParabolicRevolutionSurface};
use isogeo::iso::IsoVector;
use isogeo::jet::{Jet2, ParamPoint};
use isogeo::profile::Profile;
use isogeo::spectral::{
    boundary_spectrum, eigen_residual, helicoidal_minimal_family, lambda3_family, linear_profile_family,
    parabolic_minimal_family, EngineField, GaussMapField, GridSpec, HelicoidalMinimalSpec, InvariantSurface,
    ParabolicMinimalSpec, SpectrumKind,
};
use isogeo::surface::{DerivativeMode, GaussMapKind, ParametricSurface, SurfaceGeometry};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const CF: DerivativeMode = DerivativeMode::ClosedForm;
const FD: DerivativeMode = DerivativeMode::FiniteDifference;

/// Outcome of one criterion: `Err` carries the first violated check.
type Check = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn default_grid<S: ParametricSurface>(s: &S) -> GridSpec {
    GridSpec::default_over(s.domain())
}

fn residual<S: GaussMapField + ParametricSurface>(s: &S, kind: GaussMapKind, l: [Option<f64>; 3]) -> f64 {
    eigen_residual(s, kind, l, &default_grid(s), CF).unwrap().max_residual()
}

fn helicoidal_spec(c: f64, l1: f64, l2: f64, z1: f64, z2: f64) -> HelicoidalMinimalSpec {
    HelicoidalMinimalSpec { c, lambda1: l1, lambda2: l2, z0: 0.3, z1, z2, domain: None }
}

fn criterion_1() -> Check {
    let specs = [
        ("1", helicoidal_spec(1.0, 0.0, 0.0, 1.0, 0.25)),
        ("2a", helicoidal_spec(0.0, 0.0, 0.0, 0.7, -0.4)),
        ("2b λ=1", helicoidal_spec(0.0, 1.0, 1.0, 1.0, 0.5)),
        ("2b λ=-1", helicoidal_spec(0.0, -1.0, -1.0, 0.4, 0.6)),
        ("2c", helicoidal_spec(0.0, 1.0, 3.0, 0.0, 0.0)),
    ];
    let mut worst: f64 = 0.0;
    let mut weakest_control = f64::INFINITY;
    for (case, spec) in specs {
        let m = helicoidal_minimal_family(&spec).map_err(|e| format!("{case}: {e}"))?;
        ensure(m.surface.domain().u_min == 0.5 && m.surface.domain().u_max == 3.0, || "domain".into())?;
        let r = residual(&m.surface, m.kind, m.eigenvalues);
        ensure(r <= 1e-8, || format!("case {case}: residual {r:e}"))?;
        worst = worst.max(r);
        let perturbed = HelicoidalSurface::new(m.surface.c(), m.surface.profile().clone().perturbed(0.1)).unwrap();
        let rp = residual(&perturbed, m.kind, m.eigenvalues);
        ensure(rp > 1e-3, || format!("case {case}: perturbed residual only {rp:e}"))?;
        weakest_control = weakest_control.min(rp);
    }
    Ok(format!("max residual {worst:.1e}, smallest perturbed residual {weakest_control:.1e}"))
}

fn criterion_2() -> Check {
    let mut worst: f64 = 0.0;
    for (c, z1, z2) in [(1.0, 1.0, 0.25), (2.0, -0.5, 1.0), (0.5, 3.0, -2.0)] {
        let m = helicoidal_minimal_family(&helicoidal_spec(c, 0.0, 0.0, z1, z2)).unwrap();
        ensure(m.case == "1", || format!("case {}", m.case))?;
        let geo = SurfaceGeometry::new(&m.surface, CF);
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for p in default_grid(&m.surface).points() {
            let h = geo.shape_and_curvatures(p).unwrap().mean_curvature;
            lo = lo.min(h);
            hi = hi.max(h);
            let gap = (h - 2.0 * z1).abs();
            ensure(gap <= 1e-10, || format!("H = {h} but 2 z1 = {}", 2.0 * z1))?;
            worst = worst.max(gap);
        }
        ensure(hi - lo <= 1e-9, || format!("H varies by {:e}", hi - lo))?;
    }
    let sample = HelicoidalSurface::new(1.0, Profile::quadratic_log(0.0, 1.0, 0.25)).unwrap();
    let h = SurfaceGeometry::new(&sample, CF).shape_and_curvatures(ParamPoint::new(1.0, 0.0)).unwrap().mean_curvature;
    ensure((h - 2.0).abs() <= 1e-10, || format!("c = 1, z1 = 1, z2 = 1/4 gives H = {h}"))?;
    Ok(format!("|H - 2 z1| <= {worst:.1e}; c = 1, z1 = 1, z2 = 1/4 gives H = {h}"))
}

fn criterion_3() -> Check {
    let surfaces = [
        ("Bessel λ=1", HelicoidalSurface::new(0.0, Profile::bessel(0.0, 1.0, 0.5, 1.0).unwrap()).unwrap()),
        ("log, z2≠0", HelicoidalSurface::new(0.0, Profile::quadratic_log(0.0, 1.0, 0.5)).unwrap()),
        ("log, c≠0", HelicoidalSurface::new(1.0, Profile::quadratic_log(0.0, 1.0, 0.0)).unwrap()),
    ];
    let mut min_dev = f64::INFINITY;
    for (name, s) in &surfaces {
        for l3 in [0.0, 1.0, -1.0, 2.0, -2.0, 4.0, -4.0] {
            let r = eigen_residual(s, GaussMapKind::Parabolic, [None, None, Some(l3)], &default_grid(s), CF).unwrap();
            let c = &r.coordinates[2];
            let dev = c.max_deviation.unwrap_or(0.0);
            ensure(dev > 1e-2, || format!("{name}: G^3 spread only {dev:e}"))?;
            let res = c.sup_residual.unwrap();
            ensure(res > 1e-2, || format!("{name}: λ3 = {l3} fits with residual {res:e}"))?;
            min_dev = min_dev.min(dev);
        }
    }
    let m = linear_profile_family(0.7, 1.3, 0.4, 1.0, 0.8, 0.0).unwrap();
    let mut sup: f64 = 0.0;
    for p in default_grid(&m.surface).points() {
        let (_, lap) = m.surface.gauss_map_with_laplacian(GaussMapKind::Parabolic, CF, p).unwrap();
        sup = sup.max(lap.max_abs());
    }
    ensure(sup <= 1e-10, || format!("linear profile has |ΔG| = {sup:e}"))?;
    Ok(format!("smallest G^3 spread {min_dev:.3}, linear profile sup |ΔG| = {sup:e}"))
}

fn parabolic_spec(p: [f64; 5], l1: f64, l2: f64, z1: Option<f64>, z2: Option<f64>) -> ParabolicMinimalSpec {
    let [a, b, c, c1, c2] = p;
    ParabolicMinimalSpec { params: ParabolicParams { a, b, c, c1, c2 }, lambda1: l1, lambda2: l2, z0: 0.2, z1, z2, domain: None }
}

fn criterion_4() -> Check {
    let specs = [
        ("1", parabolic_spec([0.5, 1.0, 1.0, 0.3, 2.0], 0.0, 0.0, Some(0.4), Some(1.0))),
        ("2a", parabolic_spec([0.0, 1.2, 0.0, 0.0, 0.0], 0.0, 2.0, Some(-0.3), Some(0.5))),
        ("2b", parabolic_spec([1.5, 0.8, 0.6, -0.4, 0.0], 0.0, 3.0, None, None)),
        ("3", parabolic_spec([0.7, 1.2, 0.5, 0.0, 0.9], -2.0, 0.0, None, None)),
        ("4a", parabolic_spec([0.0, 1.0, 0.0, 0.0, 0.0], 2.0, 5.0, Some(1.0), Some(0.5))),
        ("4b", parabolic_spec([1.0, 2.0, 0.0, 0.0, 0.0], -1.0, -1.0, Some(0.4), Some(0.1))),
    ];
    let mut worst: f64 = 0.0;
    let mut worst_affine: f64 = 0.0;
    for (case, spec) in specs {
        let m = parabolic_minimal_family(&spec).map_err(|e| format!("{case}: {e}"))?;
        ensure(m.case == case, || format!("expected case {case}, got {}", m.case))?;
        let r = residual(&m.surface, m.kind, m.eigenvalues);
        ensure(r <= 1e-8, || format!("case {case}: residual {r:e}"))?;
        worst = worst.max(r);
        let ParabolicParams { a, b, .. } = m.surface.params();
        let pos = |u: f64, t: f64| m.surface.position(ParamPoint::new(u, t));
        for p in m.surface.domain().grid(9, 9) {
            // Position minus the base curve must be a fixed vector times the ruling parameter.
            let (gap, _) = match case {
                "1" => continue,
                "2a" | "4a" | "4b" => (pos(p.u, p.v) - pos(p.u, 0.0) - p.v * IsoVector::new(a, b, 0.0), ()),
                "2b" => {
                    let v = p.u;
                    (pos(v - a * p.v, p.v) - pos(v, 0.0) - p.v * IsoVector::new(0.0, b, 0.0), ())
                }
                _ => (pos(p.u, p.v) - pos(0.0, p.v) - p.u * IsoVector::new(1.0, 0.0, 0.0), ()),
            };
            let g = gap.max_abs();
            ensure(g <= 1e-10, || format!("case {case}: not a cylinder, gap {g:e} at {p:?}"))?;
            worst_affine = worst_affine.max(g);
        }
    }
    Ok(format!("max residual {worst:.1e}, max cylinder gap {worst_affine:.1e}"))
}

fn criterion_5() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut worst: f64 = 0.0;
    for lambda in [1.0, -1.0, 2.0, -2.0] {
        for _ in 0..3 {
            let (a, b, phi0) = (rng.gen_range(-1.5..1.5), rng.gen_range(0.3..2.0), rng.gen_range(-1.0..1.0));
            let m = lambda3_family(a, b, lambda, phi0, 0.0, None).unwrap();
            ensure(m.eigenvalues == [Some(lambda), Some(lambda), Some(4.0 * lambda)], || "declared".into())?;
            let r = residual(&m.surface, GaussMapKind::Parabolic, m.eigenvalues);
            ensure(r <= 1e-8, || format!("λ={lambda}, a={a}, b={b}, φ0={phi0}: residual {r:e}"))?;
            worst = worst.max(r);
        }
    }
    let m = lambda3_family(0.0, 1.0, 1.0, 0.0, 0.0, None).unwrap();
    for p in m.surface.domain().grid(25, 5) {
        let (g, lap) = m.surface.gauss_map_with_laplacian(GaussMapKind::Parabolic, CF, p).unwrap();
        let expected = 2.0 * (2.0 * p.u).cos();
        ensure((lap.x3 - expected).abs() <= 1e-10, || format!("ΔG^3 = {} vs 2cos2u = {expected}", lap.x3))?;
        ensure((-lap.x3 - 4.0 * g.x3).abs() <= 1e-10, || format!("-ΔG^3 ≠ 4 G^3 at {p:?}"))?;
    }
    Ok(format!("max residual {worst:.1e} over 12 random members; ΔG^3 = 2cos2u verified"))
}

/// `J0` by its power series in f64; accurate to about 1e-13 for `x <= 10`.
fn j0_series(x: f64) -> f64 {
    let q = x * x / 4.0;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..60 {
        term *= -q / (k * k) as f64;
        sum += term;
    }
    sum
}

fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let flo = f(lo);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid == lo || mid == hi {
            break;
        }
        if (f(mid) > 0.0) == (flo > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

fn criterion_6() -> Check {
    let mixed = boundary_spectrum(SpectrumKind::MixedBessel, 1.0, 0.0, 3, 0.0, 0.0).unwrap();
    let oracle = bisect(j0_series, 2.0, 3.0).powi(2);
    let l1 = mixed.eigenvalues[0];
    ensure((l1 - 5.783185962946785).abs() <= 1e-8, || format!("λ1 = {l1}"))?;
    ensure((l1 - oracle).abs() <= 1e-8, || format!("λ1 = {l1}, bisection gives {oracle}"))?;

    let homog = boundary_spectrum(SpectrumKind::Homogeneous, PI, 0.0, 10, 0.0, 1.0).unwrap();
    for (i, big) in homog.profile_parameters.iter().enumerate() {
        let n = (i + 1) as f64;
        ensure((big - n * n).abs() <= 1e-12, || format!("Λ_{} = {big}", i + 1))?;
    }
    let spectra = [
        mixed,
        homog,
        boundary_spectrum(SpectrumKind::Homogeneous, 2.5, 0.7, 5, 0.8, 1.3).unwrap(),
        boundary_spectrum(SpectrumKind::Periodic, 2.0 * PI, 0.3, 5, -0.5, 1.0).unwrap(),
    ];
    let (mut bc, mut eq): (f64, f64) = (0.0, 0.0);
    for s in &spectra {
        for n in 1..=s.eigenvalues.len() {
            let b = s.boundary_residual(n).unwrap();
            ensure(b <= 1e-9, || format!("{:?} n={n}: boundary residual {b:e}", s.kind))?;
            let surface: InvariantSurface = s.surface(n).unwrap();
            let r = residual(&surface, GaussMapKind::Minimal, s.declared_eigenvalues(n).unwrap());
            ensure(r <= 1e-8, || format!("{:?} n={n}: eigen residual {r:e}", s.kind))?;
            bc = bc.max(b);
            eq = eq.max(r);
        }
    }
    Ok(format!("λ1 = {l1} (bisection {oracle}); boundary ≤ {bc:.1e}, eigen ≤ {eq:.1e}"))
}

fn random_graph(rng: &mut ChaCha8Rng, i: usize) -> (Polynomial, HarmonicClass) {
    let mut c = || rng.gen_range(-2.0..2.0);
    let mono = |coeff, pu, pv| Monomial { coeff, pu, pv };
    let affine = vec![mono(c(), 1, 0), mono(c(), 0, 1), mono(c(), 0, 0)];
    match i % 4 {
        0 => (Polynomial::new(affine), HarmonicClass::ParabolicNormalHarmonicPlane),
        1 => {
            let mut t = affine;
            t.extend([mono(c(), 2, 0), mono(c(), 1, 1), mono(c(), 0, 2)]);
            (Polynomial::new(t), HarmonicClass::MinimalNormalHarmonicCmc)
        }
        2 => {
            // Quadratic plus harmonic cubic and quartic parts keeps H constant.
            let (p, q, r) = (c(), c(), c());
            let mut t = affine;
            t.extend([mono(c(), 2, 0), mono(c(), 0, 2), mono(p, 3, 0), mono(-3.0 * p, 1, 2)]);
            t.extend([mono(q, 2, 1), mono(-q / 3.0, 0, 3), mono(r, 4, 0), mono(-6.0 * r, 2, 2), mono(r, 0, 4)]);
            (Polynomial::new(t), HarmonicClass::MinimalNormalHarmonicCmc)
        }
        _ => {
            let mut t = affine;
            for d in 2..=4u32 {
                for pu in 0..=d {
                    t.push(mono(c(), pu, d - pu));
                }
            }
            (Polynomial::new(t), HarmonicClass::Neither)
        }
    }
}

fn criterion_7() -> Check {
    let tol = 1e-8;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut disagreements = 0;
    let mut worst_identity: f64 = 0.0;
    for i in 0..20 {
        let (poly, expected) = random_graph(&mut rng, i);
        let s = GraphSurface::polynomial(poly);
        let grid = GridSpec::new(11, 11, s.domain()).unwrap();
        let report = classify_harmonic(&s, &grid, tol).map_err(|e| format!("graph {i}: {e}"))?;
        let geo = SurfaceGeometry::new(&s, CF);
        let (mut h_lo, mut h_hi, mut hess, mut sup_h): (f64, f64, f64, f64) = (f64::INFINITY, f64::NEG_INFINITY, 0.0, 0.0);
        for p in grid.points() {
            let d = s.derivatives(p);
            let h = 0.5 * (d.f11 + d.f22);
            h_lo = h_lo.min(h);
            h_hi = h_hi.max(h);
            sup_h = sup_h.max(h.abs());
            hess = hess.max(d.f11.abs()).max(d.f12.abs()).max(d.f22.abs());

            // Identities against the generic engine.
            let l = normal_laplacians(&s, p).unwrap();
            let (_, lap_g) = geo.gauss_map_with_laplacian(GaussMapKind::Parabolic, p).unwrap();
            let x1 = IsoVector::new(1.0, 0.0, d.f1);
            let x2 = IsoVector::new(0.0, 1.0, d.f2);
            let h1 = 0.5 * (d.f111 + d.f122);
            let h2 = 0.5 * (d.f112 + d.f222);
            let tr_s2 = d.f11 * d.f11 + 2.0 * d.f12 * d.f12 + d.f22 * d.f22;
            let predicted = -2.0 * (h1 * x1 + h2 * x2) - tr_s2 * IsoVector::new(0.0, 0.0, 1.0);
            let f_jet = Jet2::new(d.f, [d.f1, d.f2], [[d.f11, d.f12], [d.f12, d.f22]]);
            let lap_z = geo.laplacian_of_jet(&f_jet, p).unwrap();
            let lap_u = geo.laplacian_of_jet(&Jet2::var_u(p.u), p).unwrap();
            let lap_v = geo.laplacian_of_jet(&Jet2::var_v(p.v), p).unwrap();
            let lap_x = IsoVector::new(lap_u, lap_v, lap_z);
            let scale = 1.0 + predicted.max_abs();
            let gaps = [
                (lap_g - predicted).max_abs() / scale,
                (l.lap_parabolic - predicted).max_abs() / scale,
                (lap_x - 2.0 * h * IsoVector::new(0.0, 0.0, 1.0)).max_abs() / (1.0 + h.abs()),
            ];
            for g in gaps {
                ensure(g <= 1e-8, || format!("graph {i}: identity gap {g:e} at {p:?}"))?;
                worst_identity = worst_identity.max(g);
            }
        }
        let cmc = h_hi - h_lo < tol * (1.0 + sup_h);
        let plane = hess < tol;
        let minimal_harmonic = report.sup_lap_minimal < tol * (1.0 + sup_h);
        let parabolic_harmonic = report.sup_lap_parabolic < tol;
        let class_ok = match report.class {
            HarmonicClass::ParabolicNormalHarmonicPlane => plane && parabolic_harmonic,
            HarmonicClass::MinimalNormalHarmonicCmc => cmc && minimal_harmonic && !plane,
            HarmonicClass::Neither => !cmc && !plane,
        };
        if minimal_harmonic != cmc || parabolic_harmonic != plane || !class_ok || report.class != expected {
            disagreements += 1;
        }
    }
    ensure(disagreements == 0, || format!("{disagreements} disagreements"))?;
    Ok(format!("20 graphs, 0 disagreements, identity gap ≤ {worst_identity:.1e}"))
}

fn criterion_8() -> Check {
    let surfaces = [
        InvariantSurface::Helicoidal(HelicoidalSurface::new(1.0, Profile::quadratic_log(0.0, 1.0, 0.25)).unwrap()),
        InvariantSurface::Helicoidal(HelicoidalSurface::new(0.0, Profile::bessel(0.0, 1.0, 0.5, 1.0).unwrap()).unwrap()),
        InvariantSurface::Helicoidal(HelicoidalSurface::new(0.8, Profile::bessel(0.1, 0.5, 0.2, -1.0).unwrap()).unwrap()),
        InvariantSurface::Parabolic(
            ParabolicRevolutionSurface::new(
                ParabolicParams { a: 0.6, b: 1.1, c: 0.3, c1: -0.5, c2: 0.8 },
                Profile::quadratic(0.1, 0.4, 0.3),
            )
            .unwrap(),
        ),
        InvariantSurface::Parabolic(
            ParabolicRevolutionSurface::new(
                ParabolicParams { a: 1.0, b: 2.0, c: 0.0, c1: 0.0, c2: 0.0 },
                Profile::trig(0.0, 0.3, 0.5, 0.8).unwrap(),
            )
            .unwrap(),
        ),
    ];
    let mut worst = [0.0_f64; 2];
    for s in &surfaces {
        for (slot, mode, tol) in [(0, CF, 1e-8), (1, FD, 1e-4)] {
            let geo = SurfaceGeometry::new(s, mode);
            let engine = EngineField(s);
            for p in s.domain().grid(13, 7) {
                let cf = s.closed_forms(p).unwrap();
                let f = geo.fundamental_forms(p).unwrap();
                let shape = geo.shape_and_curvatures(p).unwrap();
                let mut pairs = vec![
                    (f.g11, cf.forms.g11),
                    (f.g12, cf.forms.g12),
                    (f.g22, cf.forms.g22),
                    (f.h11, cf.forms.h11),
                    (f.h12, cf.forms.h12),
                    (f.h22, cf.forms.h22),
                    (shape.gaussian_curvature, cf.gaussian_curvature),
                    (shape.mean_curvature, cf.mean_curvature),
                ];
                for kind in [GaussMapKind::Minimal, GaussMapKind::Parabolic] {
                    let (g, lap) = engine.gauss_map_with_laplacian(kind, mode, p).unwrap();
                    let (g_cf, lap_cf) = s.gauss_map_with_laplacian(kind, CF, p).unwrap();
                    pairs.extend(g.to_array().into_iter().zip(g_cf.to_array()));
                    pairs.extend(lap.to_array().into_iter().zip(lap_cf.to_array()));
                }
                for (x, y) in pairs {
                    let e = (x - y).abs() / (1.0 + y.abs());
                    ensure(e <= tol, || format!("{mode:?} at {p:?}: {x} vs {y}"))?;
                    worst[slot] = worst[slot].max(e);
                }
            }
        }
    }
    Ok(format!("closed-form mode ≤ {:.1e}, finite differences ≤ {:.1e}", worst[0], worst[1]))
}

fn criterion_9() -> Check {
    let (mut wr, mut ode): (f64, f64) = (0.0, 0.0);
    for i in 0..=395 {
        let x = 0.5 + 0.1 * i as f64;
        let j0 = bessel_eval(BesselKind::J0, x).unwrap();
        let y0 = bessel_eval(BesselKind::Y0, x).unwrap();
        let j1 = bessel_eval(BesselKind::J1, x).unwrap();
        let y1 = bessel_eval(BesselKind::Y1, x).unwrap();
        let w = (j0 * -y1 - y0 * -j1 - 2.0 / (PI * x)).abs();
        ensure(w <= 1e-10, || format!("Wronskian off by {w:e} at x = {x}"))?;
        wr = wr.max(w);
    }
    // Second derivatives by central differences of the derivative, so the
    // ODE is not satisfied by construction.
    let h = 1e-5;
    for kind in [BesselKind::J0, BesselKind::Y0, BesselKind::I0, BesselKind::K0] {
        let sign = if kind == BesselKind::J0 || kind == BesselKind::Y0 { 1.0 } else { -1.0 };
        for i in 0..=60 {
            let x = 0.5 + 0.25 * i as f64;
            let f = bessel_eval(kind, x).unwrap();
            let d1 = bessel_deriv(kind, x).unwrap();
            let d2 = (bessel_deriv(kind, x + h).unwrap() - bessel_deriv(kind, x - h).unwrap()) / (2.0 * h);
            let r = (x * d2 + d1 + sign * x * f).abs() / (1.0 + (x * f).abs() + d1.abs());
            ensure(r <= 1e-8, || format!("{kind:?} ODE residual {r:e} at x = {x}"))?;
            ode = ode.max(r);
        }
    }
    let zeros = j0_zeros(20);
    ensure(zeros.windows(2).all(|w| w[0] < w[1]), || "zeros not increasing".into())?;
    for z in &zeros {
        let v = bessel_eval(BesselKind::J0, *z).unwrap().abs();
        ensure(v <= 1e-9, || format!("|J0({z})| = {v:e}"))?;
    }
    let spacing = (zeros[19] - zeros[18] - PI).abs();
    ensure(spacing < 1e-3, || format!("spacing deviates by {spacing:e}"))?;
    let mut zgap: f64 = 0.0;
    for (k, (lo, hi)) in [(2.0, 3.0), (5.0, 6.0), (8.0, 9.0)].into_iter().enumerate() {
        let oracle = bisect(j0_series, lo, hi);
        let g = (zeros[k] - oracle).abs();
        ensure(g <= 1e-10, || format!("zero {}: {} vs bisection {oracle}", k + 1, zeros[k]))?;
        zgap = zgap.max(g);
    }
    Ok(format!("Wronskian ≤ {wr:.1e}, ODE ≤ {ode:.1e}, zeros vs bisection ≤ {zgap:.1e}"))
}

fn criterion_10() -> Check {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let cfg = dir.path().join("run.json");
    std::fs::write(&cfg, r#"{"family":"helicoidal-minimal","params":{"lambda":-1,"z1":1,"z2":0.5}}"#).unwrap();
    let mut reports = Vec::new();
    for name in ["first.json", "second.json"] {
        let out = dir.path().join(name);
        let status = Command::new(env!("CARGO_BIN_EXE_isogeo"))
            .args(["verify", "--config", cfg.to_str().unwrap(), "--out", out.to_str().unwrap()])
            .status()
            .map_err(|e| e.to_string())?;
        ensure(status.code() == Some(0), || format!("verify exited with {status}"))?;
        reports.push(std::fs::read(&out).map_err(|e| e.to_string())?);
    }
    ensure(reports[0] == reports[1], || "reports differ".into())?;
    Ok(format!("two runs, {} identical bytes", reports[0].len()))
}

fn main() {
    let criteria: [(&str, fn() -> Check); 10] = [
        ("helicoidal classification round-trip", criterion_1),
        ("harmonic minimal normal implies constant H", criterion_2),
        ("no constant λ3 for the parabolic map", criterion_3),
        ("parabolic revolution classification and cylinders", criterion_4),
        ("λ3 = 4λ family", criterion_5),
        ("boundary-value spectra", criterion_6),
        ("harmonic Gauss maps of graph surfaces", criterion_7),
        ("engine agrees with closed forms", criterion_8),
        ("Bessel functions and zeros", criterion_9),
        ("deterministic verify reports", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS  criterion {:>2}: {name} ({detail})", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL  criterion {:>2}: {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
