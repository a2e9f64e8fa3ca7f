//! Grid search over array rotations: per-coordinate sweeps interleaved with
//! a Gibbs-sampling exploration phase.
//!
//! The objective is the ZF gain at the desired direction. Each round runs
//! one exhaustive sweep of `alpha`, then `beta`, then `gamma` over the `Q`
//! grid values, followed by `T` sampling iterations. The unrotated array is
//! always scored first, so the result never falls below the FOA baseline.

mod gibbs;
mod montecarlo;

pub use gibbs::{adjacent_candidates, gibbs_phase, select_candidate, selection_probabilities};
pub use montecarlo::{draw_interferers, monte_carlo, trial_rng, MonteCarloRow, TrialOutcome};

use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::beamform::{zf_gain, zf_weights, BeamWeights, NullSteerProblem};
use crate::error::{Error, Result};
use crate::geometry::{wrap_angle, ArrayRotation};
use crate::steering::ArrayConfig;

/// Angle of grid index `index` on a `q_grid`-point grid over `[0, 2π)`.
///
/// # Panics
///
/// If `index >= q_grid`.
pub fn grid_angle(index: usize, q_grid: usize) -> f64 {
    assert!(index < q_grid, "grid index {index} out of range for Q = {q_grid}");
    TAU * index as f64 / q_grid as f64
}

/// Rotation expressed as indices into the angular grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct GridPoint {
    pub alpha: usize,
    pub beta: usize,
    pub gamma: usize,
}

impl GridPoint {
    pub const ORIGIN: GridPoint = GridPoint {
        alpha: 0,
        beta: 0,
        gamma: 0,
    };

    pub fn new(alpha: usize, beta: usize, gamma: usize) -> Self {
        Self { alpha, beta, gamma }
    }

    pub fn rotation(&self, q_grid: usize) -> ArrayRotation {
        ArrayRotation::new(
            grid_angle(self.alpha, q_grid),
            grid_angle(self.beta, q_grid),
            grid_angle(self.gamma, q_grid),
        )
    }

    /// Nearest grid point to a continuous rotation.
    pub fn nearest(r: ArrayRotation, q_grid: usize) -> Self {
        let snap = |x: f64| ((wrap_angle(x) / TAU * q_grid as f64).round() as usize) % q_grid;
        Self::new(snap(r.alpha()), snap(r.beta()), snap(r.gamma()))
    }

    pub fn get(&self, axis: usize) -> usize {
        match axis {
            0 => self.alpha,
            1 => self.beta,
            2 => self.gamma,
            _ => panic!("axis {axis} out of range"),
        }
    }

    pub fn with(mut self, axis: usize, index: usize) -> Self {
        match axis {
            0 => self.alpha = index,
            1 => self.beta = index,
            2 => self.gamma = index,
            _ => panic!("axis {axis} out of range"),
        }
        self
    }

    /// Shifts one coordinate by `delta` grid steps, wrapping modulo `q_grid`.
    pub fn shifted(self, axis: usize, delta: i64, q_grid: usize) -> Self {
        let q = q_grid as i64;
        let idx = (self.get(axis) as i64 + delta).rem_euclid(q) as usize;
        self.with(axis, idx)
    }

    fn random<R: Rng + ?Sized>(rng: &mut R, q_grid: usize) -> Self {
        Self::new(
            rng.gen_range(0..q_grid),
            rng.gen_range(0..q_grid),
            rng.gen_range(0..q_grid),
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Init {
    /// Start from the unrotated array.
    Foa,
    /// Start from a uniformly drawn grid point.
    RandomGrid,
    /// Start from the grid point nearest to a given rotation.
    Given(ArrayRotation),
}

#[derive(Debug, Clone, PartialEq)]
pub struct OptimizerConfig {
    /// Grid points per angular dimension.
    pub q_grid: usize,
    /// Sequential-update rounds.
    pub rounds: usize,
    /// Gibbs-sampling iterations after each round.
    pub gs_iters: usize,
    /// Candidates scored per sampling iteration.
    pub candidates: usize,
    /// Largest adjacent shift, in grid steps.
    pub max_shift: usize,
    /// Inverse temperature of the candidate softmax.
    pub mu: f64,
    pub seed: u64,
    pub init: Init,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self {
            q_grid: 360,
            rounds: 5,
            gs_iters: 50,
            candidates: 36,
            max_shift: 3,
            mu: 1.0,
            seed: 1,
            init: Init::Foa,
        }
    }
}

impl OptimizerConfig {
    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::InvalidConfig(msg));
        if self.q_grid < 2 {
            return fail(format!("q_grid must be at least 2, got {}", self.q_grid));
        }
        if self.rounds < 1 {
            return fail("rounds must be at least 1".into());
        }
        if 6 * self.max_shift > self.candidates {
            return fail(format!(
                "6 * max_shift = {} exceeds candidates = {}",
                6 * self.max_shift,
                self.candidates
            ));
        }
        if self.gs_iters > 0 && self.candidates == 0 {
            return fail("sampling iterations need at least one candidate".into());
        }
        if !(self.mu.is_finite() && self.mu > 0.0) {
            return fail(format!("mu must be positive, got {}", self.mu));
        }
        Ok(())
    }

    /// Exact number of objective evaluations performed by [`optimize`]:
    /// two start-up scores (FOA and initial point) plus `L·(3Q + T·S)`.
    pub fn evaluation_budget(&self) -> u64 {
        let per_round = 3 * self.q_grid as u64 + self.gs_iters as u64 * self.candidates as u64;
        2 + self.rounds as u64 * per_round
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Phase {
    SequentialUpdate,
    GibbsSampling,
}

impl Phase {
    pub fn label(&self) -> &'static str {
        match self {
            Phase::SequentialUpdate => "SU",
            Phase::GibbsSampling => "GS",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceRecord {
    /// 1-based round index.
    pub round: usize,
    pub phase: Phase,
    pub gain: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OptimizerResult {
    pub best_arv: ArrayRotation,
    pub best_grid: GridPoint,
    pub best_gain: f64,
    /// ZF gain of the unrotated array.
    pub foa_gain: f64,
    /// `None` only when the best gain is zero and no ZF weights exist.
    pub weights: Option<BeamWeights>,
    pub trace: Vec<TraceRecord>,
    pub evaluations: u64,
}

/// ZF gain on the rotation grid, with evaluation accounting.
///
/// Points where the Gram matrix is singular score zero.
#[derive(Debug)]
pub struct Objective<'a> {
    array: &'a ArrayConfig,
    problem: &'a NullSteerProblem,
    q_grid: usize,
    evaluations: u64,
    successes: u64,
    last_error: Option<Error>,
}

impl<'a> Objective<'a> {
    pub fn new(array: &'a ArrayConfig, problem: &'a NullSteerProblem, q_grid: usize) -> Self {
        Self {
            array,
            problem,
            q_grid,
            evaluations: 0,
            successes: 0,
            last_error: None,
        }
    }

    pub fn q_grid(&self) -> usize {
        self.q_grid
    }

    pub fn evaluate(&mut self, p: GridPoint) -> f64 {
        self.evaluations += 1;
        match zf_gain(self.array, p.rotation(self.q_grid), self.problem) {
            Ok(g) => {
                self.successes += 1;
                g
            }
            Err(e) => {
                self.last_error = Some(e);
                0.0
            }
        }
    }

    pub fn evaluations(&self) -> u64 {
        self.evaluations
    }
}

/// One round of coordinate sweeps in the order alpha, beta, gamma. Ties go
/// to the lowest grid index.
pub fn sequential_update_round(objective: &mut Objective<'_>, start: GridPoint) -> (GridPoint, f64) {
    let q = objective.q_grid;
    let mut current = start;
    let mut best_gain = f64::NEG_INFINITY;
    for axis in 0..3 {
        let mut best_idx = 0;
        best_gain = f64::NEG_INFINITY;
        for idx in 0..q {
            let g = objective.evaluate(current.with(axis, idx));
            if g > best_gain {
                best_gain = g;
                best_idx = idx;
            }
        }
        current = current.with(axis, best_idx);
    }
    (current, best_gain)
}

/// Runs the full search.
pub fn optimize(array: &ArrayConfig, prob: &NullSteerProblem, cfg: &OptimizerConfig) -> Result<OptimizerResult> {
    cfg.validate()?;
    let q = cfg.q_grid;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut objective = Objective::new(array, prob, q);

    let init = match cfg.init {
        Init::Foa => GridPoint::ORIGIN,
        Init::RandomGrid => GridPoint::random(&mut rng, q),
        Init::Given(r) => GridPoint::nearest(r, q),
    };
    let foa_gain = objective.evaluate(GridPoint::ORIGIN);
    let init_gain = objective.evaluate(init);
    let (mut current, mut gain) = if foa_gain > init_gain {
        (GridPoint::ORIGIN, foa_gain)
    } else {
        (init, init_gain)
    };

    let mut trace = Vec::with_capacity(2 * cfg.rounds);
    for round in 1..=cfg.rounds {
        (current, gain) = sequential_update_round(&mut objective, current);
        trace.push(TraceRecord {
            round,
            phase: Phase::SequentialUpdate,
            gain,
        });
        (current, gain) = gibbs_phase(&mut objective, current, gain, cfg, &mut rng);
        trace.push(TraceRecord {
            round,
            phase: Phase::GibbsSampling,
            gain,
        });
    }

    if objective.successes == 0 {
        return Err(objective
            .last_error
            .unwrap_or(Error::SingularGram { condition: f64::INFINITY }));
    }
    let best_arv = current.rotation(q);
    let weights = zf_weights(array, best_arv, prob).ok();
    Ok(OptimizerResult {
        best_arv,
        best_grid: current,
        best_gain: gain,
        foa_gain,
        weights,
        trace,
        evaluations: objective.evaluations,
    })
}
