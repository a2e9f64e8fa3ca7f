//! Zero-forcing beamforming and beam-gain evaluation.
//!
//! ZF weights are the desired effective steering vector projected onto the
//! orthogonal complement of the interference steering vectors. The diagonal
//! element-gain factors cancel inside that projector, so it is built from
//! geometric steering vectors only. Interferers that the element pattern
//! already nulls are dropped before the projector is formed.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::geometry::{rotated_aod_cos, ArrayRotation, Direction};
use crate::steering::{effective_steering, steering_from_aod_cos, ArrayConfig};

/// Interferers whose element gain falls below this fraction of `g0` count as
/// nulled by the pattern alone.
pub const PATTERN_NULL_FRACTION: f64 = 1e-12;

/// Largest Gram condition number accepted before reporting a singular system.
pub const MAX_GRAM_CONDITION: f64 = 1e12;

/// Relative projected-norm floor below which the desired direction is
/// considered to lie in the interference subspace.
pub const DEGENERATE_FRACTION: f64 = 1e-12;

/// Desired direction and the directions to be nulled.
#[derive(Debug, Clone, PartialEq)]
pub struct NullSteerProblem {
    desired: Direction,
    interferers: Vec<Direction>,
}

impl NullSteerProblem {
    pub fn new(desired: Direction, interferers: Vec<Direction>) -> Self {
        Self {
            desired,
            interferers,
        }
    }

    pub fn from_degrees(desired: f64, interferers: &[f64]) -> Self {
        Self::new(
            Direction::from_degrees(desired),
            interferers.iter().copied().map(Direction::from_degrees).collect(),
        )
    }

    pub fn desired(&self) -> Direction {
        self.desired
    }

    pub fn interferers(&self) -> &[Direction] {
        &self.interferers
    }

    pub fn k(&self) -> usize {
        self.interferers.len()
    }

    /// Same desired direction with one more interferer appended.
    pub fn with_interferer(&self, theta: Direction) -> Self {
        let mut interferers = self.interferers.clone();
        interferers.push(theta);
        Self::new(self.desired, interferers)
    }
}

/// Unit-norm transmit weights.
#[derive(Debug, Clone, PartialEq)]
pub struct BeamWeights(DVector<Complex64>);

impl BeamWeights {
    /// Normalises `v`; returns `None` for the zero vector.
    pub fn normalized(v: DVector<Complex64>) -> Option<Self> {
        let norm = v.norm();
        (norm > 0.0 && norm.is_finite()).then(|| Self(v.unscale(norm)))
    }

    pub fn as_vector(&self) -> &DVector<Complex64> {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Orthogonal projector onto the complement of a set of columns, applied via
/// an orthonormal basis from their thin SVD.
struct ComplementProjector {
    basis: DMatrix<Complex64>,
}

impl ComplementProjector {
    fn new(columns: DMatrix<Complex64>) -> Result<Self> {
        let svd = columns.svd(true, false);
        let (lo, hi) = svd
            .singular_values
            .iter()
            .fold((f64::INFINITY, 0.0_f64), |(lo, hi), &s| (lo.min(s), hi.max(s)));
        // Gram condition number is the square of the column condition number.
        let condition = if lo > 0.0 { (hi / lo).powi(2) } else { f64::INFINITY };
        if condition > MAX_GRAM_CONDITION {
            return Err(Error::SingularGram { condition });
        }
        Ok(Self {
            basis: svd.u.expect("left singular vectors were requested"),
        })
    }

    /// `v − A (AᴴA)⁻¹ Aᴴ v`, evaluated as `v − U Uᴴ v`.
    fn apply(&self, v: &DVector<Complex64>) -> DVector<Complex64> {
        v - &self.basis * self.basis.ad_mul(v)
    }
}

/// Interferers that still need ZF nulling under rotation `r`.
pub fn retained_interferers(
    array: &ArrayConfig,
    r: ArrayRotation,
    prob: &NullSteerProblem,
) -> Vec<Direction> {
    let floor = PATTERN_NULL_FRACTION * array.pattern().peak_gain();
    prob.interferers
        .iter()
        .copied()
        .filter(|&th| array.pattern().is_isotropic() || array.element_gain(r, th) >= floor)
        .collect()
}

fn geometric_matrix(array: &ArrayConfig, r: ArrayRotation, dirs: &[Direction]) -> DMatrix<Complex64> {
    let n = array.n_elements();
    let mut m = DMatrix::zeros(n, dirs.len());
    for (k, &th) in dirs.iter().enumerate() {
        m.set_column(
            k,
            &steering_from_aod_cos(n, array.spacing(), rotated_aod_cos(r, th)),
        );
    }
    m
}

/// `P⊥ v` for the retained interferers, or `v` itself when none remain.
fn project(
    array: &ArrayConfig,
    r: ArrayRotation,
    prob: &NullSteerProblem,
    v: &DVector<Complex64>,
) -> Result<DVector<Complex64>> {
    let retained = retained_interferers(array, r, prob);
    if retained.is_empty() {
        return Ok(v.clone());
    }
    let projector = ComplementProjector::new(geometric_matrix(array, r, &retained))?;
    Ok(projector.apply(v))
}

fn degenerate_floor(array: &ArrayConfig) -> f64 {
    DEGENERATE_FRACTION * array.full_gain().sqrt()
}

/// ZF weights maximising the desired gain subject to exact nulls on every
/// retained interferer.
pub fn zf_weights(array: &ArrayConfig, r: ArrayRotation, prob: &NullSteerProblem) -> Result<BeamWeights> {
    let desired = effective_steering(array, r, prob.desired).into_vector();
    let w = project(array, r, prob, &desired)?;
    if w.norm() < degenerate_floor(array) {
        return Err(Error::DegenerateDesired);
    }
    BeamWeights::normalized(w).ok_or(Error::DegenerateDesired)
}

/// ZF weights built literally from the effective interference matrix
/// `Ã = A·D`, without pattern filtering or cancelling `D`.
///
/// Only meaningful when every interferer has non-negligible element gain;
/// kept as an independent route for cross-checking [`zf_weights`].
pub fn zf_weights_effective(
    array: &ArrayConfig,
    r: ArrayRotation,
    prob: &NullSteerProblem,
) -> Result<BeamWeights> {
    let n = array.n_elements();
    let desired = effective_steering(array, r, prob.desired).into_vector();
    let w = if prob.interferers.is_empty() {
        desired
    } else {
        let mut eff = DMatrix::zeros(n, prob.k());
        for (k, &th) in prob.interferers.iter().enumerate() {
            eff.set_column(k, effective_steering(array, r, th).as_vector());
        }
        let gram = eff.adjoint() * &eff;
        let rhs = eff.ad_mul(&desired);
        let x = gram
            .cholesky()
            .ok_or(Error::SingularGram {
                condition: f64::INFINITY,
            })?
            .solve(&rhs);
        &desired - &eff * x
    };
    if w.norm() < degenerate_floor(array) {
        return Err(Error::DegenerateDesired);
    }
    BeamWeights::normalized(w).ok_or(Error::DegenerateDesired)
}

/// ZF-induced gain at the desired direction,
/// `g(ε0) · (N − a0ᴴ A (AᴴA)⁻¹ Aᴴ a0)`.
///
/// Returns `0.0` rather than an error when the desired direction is
/// degenerate, so the optimizer sees a total objective.
pub fn zf_gain(array: &ArrayConfig, r: ArrayRotation, prob: &NullSteerProblem) -> Result<f64> {
    let g_desired = array.element_gain(r, prob.desired);
    if g_desired == 0.0 {
        return Ok(0.0);
    }
    let a0 = steering_from_aod_cos(
        array.n_elements(),
        array.spacing(),
        rotated_aod_cos(r, prob.desired),
    );
    let residual = project(array, r, prob, &a0)?.norm_squared();
    let gain = g_desired * residual;
    if gain.sqrt() < degenerate_floor(array) {
        return Ok(0.0);
    }
    Ok(gain)
}

/// `|ã(r, θ)ᴴ w|²`
pub fn beam_gain(array: &ArrayConfig, r: ArrayRotation, w: &BeamWeights, theta: Direction) -> f64 {
    effective_steering(array, r, theta)
        .as_vector()
        .dotc(&w.0)
        .norm_sqr()
}

/// Beam gain sampled over `grid`, preserving order.
pub fn beam_pattern(
    array: &ArrayConfig,
    r: ArrayRotation,
    w: &BeamWeights,
    grid: &[Direction],
) -> Vec<(Direction, f64)> {
    grid.iter()
        .map(|&th| (th, beam_gain(array, r, w, th)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::steering::RadiationPattern;

    fn iso8() -> ArrayConfig {
        ArrayConfig::half_wave(8, RadiationPattern::Isotropic).unwrap()
    }

    fn cos8() -> ArrayConfig {
        ArrayConfig::half_wave(8, RadiationPattern::Cosine { p: 0.5 }).unwrap()
    }

    #[test]
    fn no_interferers_gives_matched_filter() {
        let prob = NullSteerProblem::from_degrees(45.0, &[]);
        let r = ArrayRotation::new(0.4, 1.3, 2.2);
        assert_eq!(zf_gain(&iso8(), r, &prob).unwrap(), 8.0);
        let w = zf_weights(&iso8(), r, &prob).unwrap();
        assert!((beam_gain(&iso8(), r, &w, prob.desired()) - 8.0).abs() < 1e-12);
    }

    #[test]
    fn self_nulling_is_degenerate() {
        let prob = NullSteerProblem::from_degrees(45.0, &[45.0]);
        assert_eq!(
            zf_weights(&iso8(), ArrayRotation::FOA, &prob),
            Err(Error::DegenerateDesired)
        );
        assert_eq!(zf_gain(&iso8(), ArrayRotation::FOA, &prob).unwrap(), 0.0);
    }

    #[test]
    fn foa_single_interferer_gain() {
        // 8 − |D|²/8 with |D| the Dirichlet magnitude at Δ = cos45° − cos30°.
        let prob = NullSteerProblem::from_degrees(45.0, &[30.0]);
        let g = zf_gain(&iso8(), ArrayRotation::FOA, &prob).unwrap();
        assert!((g - 6.301_958_750_838_172).abs() < 1e-9, "{g}");
    }

    #[test]
    fn orthogonal_interferer_keeps_full_gain() {
        // cos φ0 − cos φ1 = 1/(N d) at the FOA: θ0 = 90°, cos θ1 = −1/4.
        let theta1 = Direction::new((-0.25f64).acos());
        let prob = NullSteerProblem::new(Direction::from_degrees(90.0), vec![theta1]);
        let r = ArrayRotation::FOA;
        let w = zf_weights(&iso8(), r, &prob).unwrap();
        let a0 = effective_steering(&iso8(), r, prob.desired());
        let overlap = a0.as_vector().dotc(w.as_vector()).norm() / a0.as_vector().norm();
        assert!((overlap - 1.0).abs() < 1e-12);
        assert!((zf_gain(&iso8(), r, &prob).unwrap() - 8.0).abs() < 1e-9);
    }

    #[test]
    fn pattern_nulled_interferer_is_dropped() {
        // Boresight aligned to 45°, the interferer at 225° sits behind the element.
        let r = ArrayRotation::new(0.0, 0.0, std::f64::consts::FRAC_PI_2 - 45f64.to_radians());
        let prob = NullSteerProblem::from_degrees(45.0, &[225.0]);
        assert!(retained_interferers(&cos8(), r, &prob).is_empty());
        assert!((zf_gain(&cos8(), r, &prob).unwrap() - 32.0).abs() < 1e-9);
    }

    #[test]
    fn coincident_interferers_are_singular() {
        let prob = NullSteerProblem::from_degrees(45.0, &[30.0, 30.0]);
        assert!(matches!(
            zf_gain(&iso8(), ArrayRotation::FOA, &prob),
            Err(Error::SingularGram { .. })
        ));
    }

    #[test]
    fn nulls_are_deep() {
        let prob = NullSteerProblem::from_degrees(45.0, &[-10.0, 30.0, 60.0, 115.0]);
        let r = ArrayRotation::FOA;
        let w = zf_weights(&iso8(), r, &prob).unwrap();
        let pattern = beam_pattern(&iso8(), r, &w, prob.interferers());
        assert_eq!(pattern.len(), 4);
        for (th, g) in pattern {
            assert!(g < 1e-10 * 8.0, "gain {g} at {}", th.degrees());
        }
    }

    #[test]
    fn single_point_pattern() {
        let prob = NullSteerProblem::from_degrees(45.0, &[30.0]);
        let r = ArrayRotation::new(0.1, 0.2, 0.3);
        let w = zf_weights(&iso8(), r, &prob).unwrap();
        let pat = beam_pattern(&iso8(), r, &w, &[prob.desired()]);
        assert_eq!(pat, vec![(prob.desired(), beam_gain(&iso8(), r, &w, prob.desired()))]);
    }
}
