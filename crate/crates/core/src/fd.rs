//! Finite-difference stencils on the parameter plane.
//!
//! First derivatives use second-order central differences with a small step.
//! Second and third derivatives use fourth-order stencils with a larger step,
//! which keeps round-off in the divided differences near 1e-10.

use crate::jet::ParamPoint;

/// Step for first derivatives.
pub const FIRST_STEP: f64 = 1e-5;
/// Step for second and third derivatives.
pub const HIGHER_STEP: f64 = 1e-3;
/// Largest distance from the base point touched by any stencil here.
pub const STENCIL_REACH: f64 = 3.0 * HIGHER_STEP;

/// A one-dimensional stencil: `(offset in steps, weight)` pairs plus the
/// derivative order, so the result is scaled by `h^-order`.
#[derive(Debug, Clone, Copy)]
pub struct Stencil {
    pub taps: &'static [(i32, f64)],
    pub order: i32,
}

pub const IDENTITY: Stencil = Stencil { taps: &[(0, 1.0)], order: 0 };

pub const D1_CENTRAL: Stencil = Stencil { taps: &[(-1, -0.5), (1, 0.5)], order: 1 };

pub const D1_4: Stencil = Stencil {
    taps: &[(-2, 1.0 / 12.0), (-1, -8.0 / 12.0), (1, 8.0 / 12.0), (2, -1.0 / 12.0)],
    order: 1,
};

pub const D2_4: Stencil = Stencil {
    taps: &[
        (-2, -1.0 / 12.0),
        (-1, 16.0 / 12.0),
        (0, -30.0 / 12.0),
        (1, 16.0 / 12.0),
        (2, -1.0 / 12.0),
    ],
    order: 2,
};

pub const D3_4: Stencil = Stencil {
    taps: &[
        (-3, 1.0 / 8.0),
        (-2, -1.0),
        (-1, 13.0 / 8.0),
        (1, -13.0 / 8.0),
        (2, 1.0),
        (3, -1.0 / 8.0),
    ],
    order: 3,
};

/// Applies the tensor product `su ⊗ sv` with step `h` to a vector-valued `f`.
pub fn apply<const N: usize>(
    f: &impl Fn(ParamPoint) -> [f64; N],
    p: ParamPoint,
    su: Stencil,
    sv: Stencil,
    h: f64,
) -> [f64; N] {
    let mut acc = [0.0; N];
    for &(i, wi) in su.taps {
        for &(j, wj) in sv.taps {
            let value = f(p.offset(i as f64 * h, j as f64 * h));
            for (a, x) in acc.iter_mut().zip(value) {
                *a += wi * wj * x;
            }
        }
    }
    let scale = h.powi(su.order + sv.order);
    acc.map(|a| a / scale)
}

/// Every derivative of `f` up to order three, in the order
/// `[f, f_u, f_v, f_uu, f_uv, f_vv, f_uuu, f_uuv, f_uvv, f_vvv]`.
pub fn derivatives_to_third<const N: usize>(
    f: &impl Fn(ParamPoint) -> [f64; N],
    p: ParamPoint,
) -> [[f64; N]; 10] {
    let h = HIGHER_STEP;
    [
        f(p),
        apply(f, p, D1_CENTRAL, IDENTITY, FIRST_STEP),
        apply(f, p, IDENTITY, D1_CENTRAL, FIRST_STEP),
        apply(f, p, D2_4, IDENTITY, h),
        apply(f, p, D1_4, D1_4, h),
        apply(f, p, IDENTITY, D2_4, h),
        apply(f, p, D3_4, IDENTITY, h),
        apply(f, p, D2_4, D1_4, h),
        apply(f, p, D1_4, D2_4, h),
        apply(f, p, IDENTITY, D3_4, h),
    ]
}

/// Value, first and second derivatives `[f, f_u, f_v, f_uu, f_uv, f_vv]`.
pub fn derivatives_to_second<const N: usize>(
    f: &impl Fn(ParamPoint) -> [f64; N],
    p: ParamPoint,
) -> [[f64; N]; 6] {
    let h = HIGHER_STEP;
    [
        f(p),
        apply(f, p, D1_CENTRAL, IDENTITY, FIRST_STEP),
        apply(f, p, IDENTITY, D1_CENTRAL, FIRST_STEP),
        apply(f, p, D2_4, IDENTITY, h),
        apply(f, p, D1_4, D1_4, h),
        apply(f, p, IDENTITY, D2_4, h),
    ]
}
