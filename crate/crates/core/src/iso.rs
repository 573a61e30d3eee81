//! The ambient model: affine points and vectors of simply isotropic 3-space
//! with the degenerate inner product `x1*y1 + x2*y2`, and the six-parameter
//! group of isotropic motions.
//!
//! The third axis is the isotropic direction. Points and vectors are kept as
//! separate types: motions act on points, their linear part acts on vectors.

use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Free vector of the isotropic model.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct IsoVector {
    pub x1: f64,
    pub x2: f64,
    pub x3: f64,
}

/// Affine point of the isotropic model.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct IsoPoint {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

/// The metric isotropic normal `(0, 0, 1)`.
pub const ISOTROPIC_AXIS: IsoVector = IsoVector::new(0.0, 0.0, 1.0);

impl IsoVector {
    pub const fn new(x1: f64, x2: f64, x3: f64) -> Self {
        Self { x1, x2, x3 }
    }

    pub const fn from_array(a: [f64; 3]) -> Self {
        Self::new(a[0], a[1], a[2])
    }

    pub const fn to_array(self) -> [f64; 3] {
        [self.x1, self.x2, self.x3]
    }

    /// True iff the top view vanishes. Exact test, no tolerance.
    pub fn is_isotropic(self) -> bool {
        self.x1 == 0.0 && self.x2 == 0.0
    }

    /// Projection onto the xy-plane.
    pub fn top_view(self) -> [f64; 2] {
        [self.x1, self.x2]
    }

    /// Euclidean dot product, used by the minimal-normal route to `h_ij`.
    pub fn dot(self, other: Self) -> f64 {
        self.x1 * other.x1 + self.x2 * other.x2 + self.x3 * other.x3
    }

    pub fn cross(self, other: Self) -> Self {
        Self::new(
            self.x2 * other.x3 - self.x3 * other.x2,
            self.x3 * other.x1 - self.x1 * other.x3,
            self.x1 * other.x2 - self.x2 * other.x1,
        )
    }

    pub fn max_abs(self) -> f64 {
        self.x1.abs().max(self.x2.abs()).max(self.x3.abs())
    }
}

impl Add for IsoVector {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.x1 + rhs.x1, self.x2 + rhs.x2, self.x3 + rhs.x3)
    }
}

impl Sub for IsoVector {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.x1 - rhs.x1, self.x2 - rhs.x2, self.x3 - rhs.x3)
    }
}

impl Neg for IsoVector {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.x1, -self.x2, -self.x3)
    }
}

impl Mul<IsoVector> for f64 {
    type Output = IsoVector;
    fn mul(self, rhs: IsoVector) -> IsoVector {
        IsoVector::new(self * rhs.x1, self * rhs.x2, self * rhs.x3)
    }
}

impl IsoPoint {
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub const fn from_array(a: [f64; 3]) -> Self {
        Self::new(a[0], a[1], a[2])
    }

    pub const fn to_array(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn top_view(self) -> [f64; 2] {
        [self.x, self.y]
    }

    /// Two points are parallel when their top views coincide exactly.
    pub fn is_parallel_to(self, other: Self) -> bool {
        self.x == other.x && self.y == other.y
    }
}

impl Sub for IsoPoint {
    type Output = IsoVector;
    fn sub(self, rhs: Self) -> IsoVector {
        IsoVector::new(self.x - rhs.x, self.y - rhs.y, self.z - rhs.z)
    }
}

impl Add<IsoVector> for IsoPoint {
    type Output = IsoPoint;
    fn add(self, rhs: IsoVector) -> IsoPoint {
        IsoPoint::new(self.x + rhs.x1, self.y + rhs.x2, self.z + rhs.x3)
    }
}

/// Isotropic inner product; the third coordinates never contribute.
pub fn iso_inner(a: IsoVector, b: IsoVector) -> f64 {
    a.x1 * b.x1 + a.x2 * b.x2
}

/// Euclidean distance of the top views.
pub fn iso_distance(p: IsoPoint, q: IsoPoint) -> f64 {
    (q.x - p.x).hypot(q.y - p.y)
}

/// Co-distance `|z_q - z_p|`, defined only for parallel points.
pub fn iso_codistance(p: IsoPoint, q: IsoPoint) -> Result<f64> {
    if p.is_parallel_to(q) {
        Ok((q.z - p.z).abs())
    } else {
        Err(Error::Undefined("co-distance of non-parallel points"))
    }
}

/// Parameters of an isotropic motion
/// `(x, y, z) -> (a + x cos phi - y sin phi, b + x sin phi + y cos phi, c + c1 x + c2 y + z)`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct MotionParams {
    pub phi: f64,
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub c1: f64,
    pub c2: f64,
}

impl MotionParams {
    pub const IDENTITY: Self = Self {
        phi: 0.0,
        a: 0.0,
        b: 0.0,
        c: 0.0,
        c1: 0.0,
        c2: 0.0,
    };

    pub fn rotation(phi: f64) -> Self {
        Self { phi, ..Self::IDENTITY }
    }

    /// Linear part applied to a free vector.
    pub fn apply_vector(&self, v: IsoVector) -> IsoVector {
        let (s, c) = self.phi.sin_cos();
        IsoVector::new(
            v.x1 * c - v.x2 * s,
            v.x1 * s + v.x2 * c,
            self.c1 * v.x1 + self.c2 * v.x2 + v.x3,
        )
    }

    /// Parameters of `self ∘ first`, i.e. apply `first`, then `self`.
    pub fn after(&self, first: &MotionParams) -> MotionParams {
        let (s2, c2) = self.phi.sin_cos();
        let (s1, c1) = first.phi.sin_cos();
        // translation of `first` carried through the rotation of `self`
        let a = self.a + c2 * first.a - s2 * first.b;
        let b = self.b + s2 * first.a + c2 * first.b;
        MotionParams {
            phi: self.phi + first.phi,
            a,
            b,
            c: self.c + first.c + self.c1 * first.a + self.c2 * first.b,
            c1: first.c1 + c1 * self.c1 + s1 * self.c2,
            c2: first.c2 - s1 * self.c1 + c1 * self.c2,
        }
    }
}

pub fn apply_motion(m: &MotionParams, p: IsoPoint) -> IsoPoint {
    let (s, c) = m.phi.sin_cos();
    IsoPoint::new(
        m.a + p.x * c - p.y * s,
        m.b + p.x * s + p.y * c,
        m.c + m.c1 * p.x + m.c2 * p.y + p.z,
    )
}

/// The 2x2 minor `X_ij = x_1^i x_2^j - x_2^i x_1^j` of the first partials
/// `x_1 = d/du^1`, `x_2 = d/du^2`; indices are 1-based coordinates.
pub fn minor_of_partials(x_1: IsoVector, x_2: IsoVector, i: usize, j: usize) -> Result<f64> {
    let pick = |v: IsoVector, k: usize| -> Result<f64> {
        match k {
            1 => Ok(v.x1),
            2 => Ok(v.x2),
            3 => Ok(v.x3),
            other => Err(Error::InvalidIndex(other)),
        }
    };
    Ok(pick(x_1, i)? * pick(x_2, j)? - pick(x_2, i)? * pick(x_1, j)?)
}
