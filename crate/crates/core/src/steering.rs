//! Element radiation patterns and array steering vectors.

use std::f64::consts::PI;

use nalgebra::DVector;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::geometry::{element_pattern_cos, rotated_aod_cos, ArrayRotation, Direction};

/// Per-element power pattern as a function of the angle `ε` between the
/// element boresight and the signal direction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RadiationPattern {
    /// Unit gain in every direction.
    Isotropic,
    /// `g0 · cos^{2p} ε` on the front hemisphere and zero behind, with
    /// `g0 = 2(2p + 1)` so that the pattern integrates to `4π`.
    Cosine { p: f64 },
}

impl RadiationPattern {
    pub fn cosine(p: f64) -> Result<Self> {
        if p.is_finite() && p > 0.0 {
            Ok(Self::Cosine { p })
        } else {
            Err(Error::InvalidConfig(format!(
                "directivity factor must be positive, got {p}"
            )))
        }
    }

    /// Peak (boresight) gain `g0`.
    pub fn peak_gain(&self) -> f64 {
        match *self {
            Self::Isotropic => 1.0,
            Self::Cosine { p } => 2.0 * (2.0 * p + 1.0),
        }
    }

    pub fn is_isotropic(&self) -> bool {
        matches!(self, Self::Isotropic)
    }

    pub fn gain(&self, cos_eps: f64) -> f64 {
        pattern_gain(*self, cos_eps)
    }
}

/// Power gain of `pattern` at an angle whose cosine is `cos_eps`.
///
/// The boundary `ε = π/2` maps to zero for the cosine model.
pub fn pattern_gain(pattern: RadiationPattern, cos_eps: f64) -> f64 {
    debug_assert!(cos_eps.abs() <= 1.0 + 1e-12, "cos_eps = {cos_eps}");
    match pattern {
        RadiationPattern::Isotropic => 1.0,
        RadiationPattern::Cosine { p } => {
            if cos_eps > 0.0 {
                pattern.peak_gain() * cos_eps.min(1.0).powf(2.0 * p)
            } else {
                0.0
            }
        }
    }
}

/// Uniform linear array: element count, spacing in wavelengths and the
/// shared element pattern.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArrayConfig {
    n_elements: usize,
    spacing: f64,
    pattern: RadiationPattern,
}

impl ArrayConfig {
    pub fn new(n_elements: usize, spacing: f64, pattern: RadiationPattern) -> Result<Self> {
        if n_elements == 0 {
            return Err(Error::InvalidConfig("array needs at least one element".into()));
        }
        if !(spacing.is_finite() && spacing > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "element spacing must be positive, got {spacing}"
            )));
        }
        if let RadiationPattern::Cosine { p } = pattern {
            RadiationPattern::cosine(p)?;
        }
        Ok(Self {
            n_elements,
            spacing,
            pattern,
        })
    }

    /// Half-wavelength element spacing.
    pub fn half_wave(n_elements: usize, pattern: RadiationPattern) -> Result<Self> {
        Self::new(n_elements, 0.5, pattern)
    }

    pub fn n_elements(&self) -> usize {
        self.n_elements
    }

    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    pub fn pattern(&self) -> RadiationPattern {
        self.pattern
    }

    /// `N · g0`, the largest gain any weight vector can produce.
    pub fn full_gain(&self) -> f64 {
        self.n_elements as f64 * self.pattern.peak_gain()
    }

    /// Element pattern gain towards `theta` under rotation `r`.
    pub fn element_gain(&self, r: ArrayRotation, theta: Direction) -> f64 {
        pattern_gain(self.pattern, element_pattern_cos(r, theta))
    }
}

/// Complex per-element response towards one direction.
#[derive(Debug, Clone, PartialEq)]
pub struct SteeringVector(DVector<Complex64>);

impl SteeringVector {
    pub fn from_vector(v: DVector<Complex64>) -> Self {
        Self(v)
    }

    pub fn as_vector(&self) -> &DVector<Complex64> {
        &self.0
    }

    pub fn into_vector(self) -> DVector<Complex64> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn norm_squared(&self) -> f64 {
        self.0.norm_squared()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Complex64> {
        self.0.iter()
    }
}

/// Steering vector for a given AoD cosine, `exp(j·2π·n·d·cos φ)`.
pub(crate) fn steering_from_aod_cos(n_elements: usize, spacing: f64, cos_phi: f64) -> DVector<Complex64> {
    let step = 2.0 * PI * spacing * cos_phi;
    DVector::from_iterator(
        n_elements,
        (0..n_elements).map(|n| Complex64::cis(step * n as f64)),
    )
}

/// Geometric (pattern-free) steering vector towards `theta`.
pub fn geometric_steering(array: &ArrayConfig, r: ArrayRotation, theta: Direction) -> SteeringVector {
    SteeringVector(steering_from_aod_cos(
        array.n_elements,
        array.spacing,
        rotated_aod_cos(r, theta),
    ))
}

/// Geometric steering vector scaled by the square root of the element gain.
pub fn effective_steering(array: &ArrayConfig, r: ArrayRotation, theta: Direction) -> SteeringVector {
    let geo = geometric_steering(array, r, theta);
    match array.pattern {
        RadiationPattern::Isotropic => geo,
        RadiationPattern::Cosine { .. } => {
            let amp = array.element_gain(r, theta).sqrt();
            SteeringVector(geo.0 * Complex64::from(amp))
        }
    }
}

/// Hermitian inner product `aᴴ·b`.
///
/// # Panics
///
/// If the two vectors have different lengths.
pub fn steering_inner_product(a: &SteeringVector, b: &SteeringVector) -> Complex64 {
    assert_eq!(a.len(), b.len(), "steering vectors must have equal length");
    a.0.dotc(&b.0)
}

/// Closed form of `Σ_{n<N} exp(j·2π·n·d·Δ)`, with the main-lobe limit taken
/// when the denominator vanishes.
pub fn dirichlet_kernel(n_elements: usize, spacing: f64, delta: f64) -> Complex64 {
    let n = n_elements as f64;
    let x = PI * spacing * delta;
    let phase = Complex64::cis((n - 1.0) * x);
    let den = x.sin();
    if den.abs() < 1e-12 {
        // x is a multiple of π, so every term of the sum equals one.
        return Complex64::new(n, 0.0);
    }
    phase * ((n * x).sin() / den)
}
