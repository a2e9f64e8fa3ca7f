//! Null steering with rotatable uniform linear arrays.
//!
//! A ULA whose orientation can be rotated in 3D changes the effective
//! spacing seen by each direction and, with directional elements, where the
//! element pattern points. This crate evaluates zero-forcing gains as a
//! function of that rotation, solves the closed-form orthogonality
//! conditions for one or a few interferers, and runs a grid search with
//! Gibbs-sampling exploration for the general case.
//!
//! ```
//! use raa_core::{zf_gain, ArrayConfig, ArrayRotation, NullSteerProblem, RadiationPattern};
//!
//! let array = ArrayConfig::half_wave(8, RadiationPattern::Isotropic).unwrap();
//! let prob = NullSteerProblem::from_degrees(45.0, &[30.0]);
//! let foa = zf_gain(&array, ArrayRotation::FOA, &prob).unwrap();
//! let report = raa_core::analysis::analyze(&array, &prob).unwrap();
//! assert!(foa < 6.31);
//! assert!((report.achieved_gain.unwrap() - 8.0).abs() < 1e-8);
//! ```

pub mod analysis;
pub mod beamform;
pub mod error;
pub mod geometry;
pub mod optimize;
pub mod steering;

pub use analysis::{FeasibilityReport, NullMechanism};
pub use beamform::{beam_gain, beam_pattern, zf_gain, zf_weights, BeamWeights, NullSteerProblem};
pub use error::{Error, Result};
pub use geometry::{ArrayRotation, Direction, RotationMatrix};
pub use optimize::{optimize, Init, OptimizerConfig, OptimizerResult};
pub use steering::{ArrayConfig, RadiationPattern, SteeringVector};
