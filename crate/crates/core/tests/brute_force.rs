//! Grid searches over the rotation with an independently written gain,
//! checked against the closed-form feasibility analysis.

use std::f64::consts::{PI, TAU};

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use raa_core::analysis::analyze;
use raa_core::{ArrayConfig, NullSteerProblem, RadiationPattern};

fn steering(n: usize, d: f64, cos_phi: f64) -> DVector<Complex64> {
    DVector::from_fn(n, |i, _| Complex64::from_polar(1.0, TAU * d * i as f64 * cos_phi))
}

/// Isotropic ZF gain `‖a0‖² − a0ᴴA(AᴴA)⁻¹Aᴴa0` via an LU solve; `None` when
/// the Gram condition number exceeds `1e12`.
fn iso_gain(n: usize, d: f64, beta: f64, gamma: f64, t0: f64, ts: &[f64]) -> Option<f64> {
    let cphi = |t: f64| -beta.cos() * (gamma + t).cos();
    let a0 = steering(n, d, cphi(t0));
    let a = DMatrix::from_columns(&ts.iter().map(|&t| steering(n, d, cphi(t))).collect::<Vec<_>>());
    let sv = a.singular_values();
    if (sv.max() / sv.min()).powi(2) > 1e12 {
        return None;
    }
    let rhs = a.ad_mul(&a0);
    let x = (a.adjoint() * &a).lu().solve(&rhs)?;
    Some(n as f64 - a0.dotc(&(&a * x)).re)
}

/// Largest isotropic gain on a `step`-degree grid over `(β, γ)`.
fn grid_max(n: usize, d: f64, t0: f64, ts: &[f64], step_deg: f64) -> f64 {
    let q = (360.0 / step_deg).round() as usize;
    let mut best: f64 = 0.0;
    // Only cos β enters, so β ∈ [0, π] covers the circle.
    for ib in 0..=q / 2 {
        let beta = ib as f64 * TAU / q as f64;
        for ig in 0..q {
            let gamma = ig as f64 * TAU / q as f64;
            if let Some(g) = iso_gain(n, d, beta, gamma, t0, ts) {
                best = best.max(g);
            }
        }
    }
    best
}

#[test]
fn three_interferers_without_a_common_rotation() {
    let arr = ArrayConfig::half_wave(8, RadiationPattern::Isotropic).unwrap();
    let degs = [20.0, 80.0, 160.0];
    let prob = NullSteerProblem::from_degrees(45.0, &degs);
    let rep = analyze(&arr, &prob).unwrap();
    assert!(!rep.feasible);
    let ts: Vec<f64> = degs.iter().map(|d: &f64| d.to_radians()).collect();
    let best = grid_max(8, 0.5, PI / 4.0, &ts, 0.25);
    assert!(best < 0.999 * 8.0, "grid max {best}");
}

#[test]
fn symmetric_pair_is_found_by_the_grid_too() {
    let arr = ArrayConfig::half_wave(8, RadiationPattern::Isotropic).unwrap();
    let degs = [25.0, 65.0];
    let rep = analyze(&arr, &NullSteerProblem::from_degrees(45.0, &degs)).unwrap();
    assert!(rep.feasible);
    let ts: Vec<f64> = degs.iter().map(|d: &f64| d.to_radians()).collect();
    let best = grid_max(8, 0.5, PI / 4.0, &ts, 0.25);
    assert!(best > 0.99 * 8.0, "grid max {best}");
}
