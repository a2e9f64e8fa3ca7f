//! Rotation geometry of a uniform linear array.
//!
//! The unrotated array lies along the global x-axis with elements at
//! `[n·d, 0, 0]` and a common boresight along `+y`. A rotation vector
//! `(alpha, beta, gamma)` rotates about x, then y, then z. Signal
//! directions live in the xy-plane as `s(θ) = [-cos θ, sin θ, 0]`.
//!
//! Everything downstream only needs two scalars per direction: the cosine
//! of the angle between the rotated array axis and the signal
//! ([`rotated_aod_cos`]) and the cosine of the angle between the rotated
//! element boresight and the signal ([`element_pattern_cos`]).

use std::f64::consts::TAU;

use nalgebra::{Matrix3, Vector3};

/// Wraps an angle into `[0, 2π)`.
#[inline]
pub fn wrap_angle(x: f64) -> f64 {
    let r = x.rem_euclid(TAU);
    // rem_euclid can round up to exactly TAU for tiny negative inputs.
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// Array rotation vector: rotation angles about the x-, y- and z-axes.
///
/// Angles are wrapped into `[0, 2π)` on construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArrayRotation {
    alpha: f64,
    beta: f64,
    gamma: f64,
}

impl ArrayRotation {
    /// The fixed-orientation (unrotated) array.
    pub const FOA: ArrayRotation = ArrayRotation {
        alpha: 0.0,
        beta: 0.0,
        gamma: 0.0,
    };

    pub fn new(alpha: f64, beta: f64, gamma: f64) -> Self {
        Self {
            alpha: wrap_angle(alpha),
            beta: wrap_angle(beta),
            gamma: wrap_angle(gamma),
        }
    }

    pub fn from_degrees(alpha: f64, beta: f64, gamma: f64) -> Self {
        Self::new(alpha.to_radians(), beta.to_radians(), gamma.to_radians())
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn to_degrees(&self) -> [f64; 3] {
        [
            self.alpha.to_degrees(),
            self.beta.to_degrees(),
            self.gamma.to_degrees(),
        ]
    }
}

impl Default for ArrayRotation {
    fn default() -> Self {
        Self::FOA
    }
}

/// Planar angle of departure in the global frame, wrapped into `[0, 2π)`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Direction(f64);

impl Direction {
    pub fn new(theta: f64) -> Self {
        Self(wrap_angle(theta))
    }

    pub fn from_degrees(deg: f64) -> Self {
        Self::new(deg.to_radians())
    }

    pub fn radians(self) -> f64 {
        self.0
    }

    pub fn degrees(self) -> f64 {
        self.0.to_degrees()
    }

    /// Unit signal vector `[-cos θ, sin θ, 0]`.
    pub fn unit_vector(self) -> Vector3<f64> {
        let (s, c) = self.0.sin_cos();
        Vector3::new(-c, s, 0.0)
    }
}

/// A proper rotation (orthonormal, determinant one) mapping local to global
/// coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RotationMatrix(Matrix3<f64>);

impl RotationMatrix {
    pub fn matrix(&self) -> &Matrix3<f64> {
        &self.0
    }

    pub fn apply(&self, v: &Vector3<f64>) -> Vector3<f64> {
        self.0 * v
    }

    pub fn determinant(&self) -> f64 {
        self.0.determinant()
    }
}

/// `R = Rz(gamma) · Ry(beta) · Rx(alpha)` written out in closed form.
pub fn rotation_matrix(r: ArrayRotation) -> RotationMatrix {
    let (sa, ca) = r.alpha.sin_cos();
    let (sb, cb) = r.beta.sin_cos();
    let (sg, cg) = r.gamma.sin_cos();
    #[rustfmt::skip]
    let m = Matrix3::new(
        cb * cg, sa * sb * cg - ca * sg, ca * sb * cg + sa * sg,
        cb * sg, sa * sb * sg + ca * cg, ca * sb * sg - sa * cg,
        -sb,     sa * cb,                ca * cb,
    );
    RotationMatrix(m)
}

/// Global position of element `n` (in wavelengths) after rotation.
pub fn rotated_position(r: ArrayRotation, n: usize, spacing: f64) -> Vector3<f64> {
    let (sb, cb) = r.beta.sin_cos();
    let (sg, cg) = r.gamma.sin_cos();
    Vector3::new(cb * cg, cb * sg, -sb) * (n as f64 * spacing)
}

/// Element boresight after rotation (image of `[0, 1, 0]`).
pub fn boresight(r: ArrayRotation) -> Vector3<f64> {
    let (sa, ca) = r.alpha.sin_cos();
    let (sb, cb) = r.beta.sin_cos();
    let (sg, cg) = r.gamma.sin_cos();
    Vector3::new(
        -ca * sg + sa * sb * cg,
        ca * cg + sa * sb * sg,
        sa * cb,
    )
}

/// Cosine of the angle between the rotated array axis and the signal
/// direction: `cos φ = -cos β · cos(γ + θ)`. Independent of `alpha`.
#[inline]
pub fn rotated_aod_cos(r: ArrayRotation, theta: Direction) -> f64 {
    -r.beta.cos() * (r.gamma + theta.0).cos()
}

/// Cosine of the angle between the rotated element boresight and the signal
/// direction: `cos ε = cos α · sin(γ + θ) − sin α · sin β · cos(γ + θ)`.
#[inline]
pub fn element_pattern_cos(r: ArrayRotation, theta: Direction) -> f64 {
    let (sa, ca) = r.alpha.sin_cos();
    let (sgt, cgt) = (r.gamma + theta.0).sin_cos();
    ca * sgt - sa * r.beta.sin() * cgt
}
