//! Gibbs-sampling exploration around the current grid point.

use rand::distributions::{Distribution, WeightedIndex};
use rand::Rng;

use super::{GridPoint, Objective, OptimizerConfig};

/// Softmax of `mu · gains`, shifted by the maximum gain before
/// exponentiation.
pub fn selection_probabilities(gains: &[f64], mu: f64) -> Vec<f64> {
    let top = gains.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let weights: Vec<f64> = gains.iter().map(|g| (mu * (g - top)).exp()).collect();
    let total: f64 = weights.iter().sum();
    weights.into_iter().map(|w| w / total).collect()
}

/// Draws one index with probability proportional to `exp(mu · gain)`.
///
/// # Panics
///
/// If `gains` is empty.
pub fn select_candidate<R: Rng + ?Sized>(gains: &[f64], mu: f64, rng: &mut R) -> usize {
    let probs = selection_probabilities(gains, mu);
    WeightedIndex::new(&probs)
        .expect("softmax weights are finite and the maximum has weight one")
        .sample(rng)
}

/// The `6·J` neighbours obtained by shifting exactly one coordinate by
/// `j ∈ {−J, …, −1, 1, …, J}` with wraparound.
pub fn adjacent_candidates(p: GridPoint, max_shift: usize, q_grid: usize) -> Vec<GridPoint> {
    let j = max_shift as i64;
    (0..3)
        .flat_map(|axis| {
            (-j..=j)
                .filter(|&d| d != 0)
                .map(move |d| p.shifted(axis, d, q_grid))
        })
        .collect()
}

/// `T` sampling iterations starting from `start`; returns the best point in
/// the history (the start included, earliest wins ties).
pub fn gibbs_phase<R: Rng + ?Sized>(
    objective: &mut Objective<'_>,
    start: GridPoint,
    start_gain: f64,
    cfg: &OptimizerConfig,
    rng: &mut R,
) -> (GridPoint, f64) {
    let q = objective.q_grid();
    let mut best = (start, start_gain);
    let mut current = start;
    let mut pool = Vec::with_capacity(cfg.candidates);
    let mut gains = Vec::with_capacity(cfg.candidates);
    for _ in 0..cfg.gs_iters {
        pool.clear();
        pool.extend(adjacent_candidates(current, cfg.max_shift, q));
        while pool.len() < cfg.candidates {
            pool.push(GridPoint::random(rng, q));
        }
        gains.clear();
        gains.extend(pool.iter().map(|&p| objective.evaluate(p)));
        let pick = select_candidate(&gains, cfg.mu, rng);
        current = pool[pick];
        if gains[pick] > best.1 {
            best = (current, gains[pick]);
        }
    }
    best
}
