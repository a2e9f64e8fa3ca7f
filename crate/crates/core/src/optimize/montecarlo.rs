//! Monte-Carlo comparison of the optimized rotation against the FOA
//! baseline over random interference directions.

use std::f64::consts::TAU;

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{optimize, OptimizerConfig};
use crate::beamform::{zf_gain, NullSteerProblem};
use crate::error::{Error, Result};
use crate::geometry::{wrap_angle, ArrayRotation, Direction};
use crate::steering::ArrayConfig;

/// Minimum circular distance between any two drawn directions.
const MIN_SEPARATION: f64 = 1e-6;

/// Redraws allowed per trial before giving up.
const MAX_REDRAWS: usize = 1000;

#[derive(Debug, Clone, PartialEq)]
pub struct TrialOutcome {
    pub interferers: Vec<Direction>,
    pub raa_gain: f64,
    pub foa_gain: f64,
    pub best_arv: ArrayRotation,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MonteCarloRow {
    pub k: usize,
    pub mean_raa: f64,
    pub mean_foa: f64,
    /// Sample standard deviations (zero for a single trial).
    pub std_raa: f64,
    pub std_foa: f64,
    pub trials: usize,
    pub samples: Vec<TrialOutcome>,
}

/// Independent stream for trial `trial` at interferer count `k`.
pub fn trial_rng(base_seed: u64, k: usize, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(base_seed);
    rng.set_stream(((k as u64) << 32) | trial as u64);
    rng
}

fn circular_distance(a: f64, b: f64) -> f64 {
    let d = wrap_angle(a - b);
    d.min(TAU - d)
}

/// `k` directions uniform on `[0, 2π)`, each at least `1e-6` rad from the
/// desired direction and from one another.
pub fn draw_interferers<R: Rng + ?Sized>(rng: &mut R, desired: Direction, k: usize) -> Vec<Direction> {
    let mut out: Vec<Direction> = Vec::with_capacity(k);
    while out.len() < k {
        let th = rng.gen_range(0.0..TAU);
        let clash = circular_distance(th, desired.radians()) < MIN_SEPARATION
            || out
                .iter()
                .any(|o| circular_distance(th, o.radians()) < MIN_SEPARATION);
        if !clash {
            out.push(Direction::new(th));
        }
    }
    out
}

fn run_trial(
    array: &ArrayConfig,
    desired: Direction,
    k: usize,
    trial: usize,
    cfg: &OptimizerConfig,
    base_seed: u64,
) -> Result<TrialOutcome> {
    let mut rng = trial_rng(base_seed, k, trial);
    let mut last_error = None;
    for _ in 0..MAX_REDRAWS {
        let interferers = draw_interferers(&mut rng, desired, k);
        let prob = NullSteerProblem::new(desired, interferers);
        let run_cfg = OptimizerConfig {
            seed: rng.next_u64(),
            ..cfg.clone()
        };
        // Near-coincident draws give a singular Gram matrix; perturb by redrawing.
        let foa_gain = match zf_gain(array, ArrayRotation::FOA, &prob) {
            Ok(g) => g,
            Err(e @ Error::SingularGram { .. }) => {
                last_error = Some(e);
                continue;
            }
            Err(e) => return Err(e),
        };
        match optimize(array, &prob, &run_cfg) {
            Ok(res) => {
                return Ok(TrialOutcome {
                    interferers: prob.interferers().to_vec(),
                    raa_gain: res.best_gain,
                    foa_gain,
                    best_arv: res.best_arv,
                })
            }
            Err(e @ Error::SingularGram { .. }) => last_error = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(last_error.unwrap_or(Error::SingularGram {
        condition: f64::INFINITY,
    }))
}

fn mean_std(xs: impl Iterator<Item = f64> + Clone) -> (f64, f64) {
    let n = xs.clone().count();
    let mean = xs.clone().sum::<f64>() / n as f64;
    let std = if n > 1 {
        (xs.map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1) as f64).sqrt()
    } else {
        0.0
    };
    (mean, std)
}

/// Mean RAA and FOA gains per interferer count.
///
/// Trials run in parallel; each draws from its own seeded stream, so the
/// output depends only on the inputs.
pub fn monte_carlo(
    array: &ArrayConfig,
    desired: Direction,
    k_values: &[usize],
    trials: usize,
    cfg: &OptimizerConfig,
    base_seed: u64,
) -> Result<Vec<MonteCarloRow>> {
    if trials == 0 {
        return Err(Error::InvalidConfig("at least one trial is required".into()));
    }
    cfg.validate()?;
    if array.pattern().is_isotropic() {
        if let Some(&k) = k_values.iter().find(|&&k| k >= array.n_elements()) {
            return Err(Error::InvalidConfig(format!(
                "{k} interferers cannot be nulled by {} isotropic elements",
                array.n_elements()
            )));
        }
    }
    k_values
        .iter()
        .map(|&k| {
            let samples = (0..trials)
                .into_par_iter()
                .map(|t| run_trial(array, desired, k, t, cfg, base_seed))
                .collect::<Result<Vec<_>>>()?;
            let (mean_raa, std_raa) = mean_std(samples.iter().map(|s| s.raa_gain));
            let (mean_foa, std_foa) = mean_std(samples.iter().map(|s| s.foa_gain));
            Ok(MonteCarloRow {
                k,
                mean_raa,
                mean_foa,
                std_raa,
                std_foa,
                trials,
                samples,
            })
        })
        .collect()
}
