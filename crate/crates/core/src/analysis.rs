//! Closed-form conditions for full-gain null steering.
//!
//! Full gain `N·g0` at the desired direction is reachable exactly when every
//! interferer is either geometrically orthogonal to the desired steering
//! vector or sits in a null of the element pattern, with the element
//! boresight aligned to the desired direction. Geometric orthogonality of
//! two ULA steering vectors holds iff their AoD-cosine difference is
//! `m / (N·d)` for an integer `m` not divisible by `N` (zeros of the
//! Dirichlet kernel).
//!
//! Each solver returns a [`FeasibilityReport`]; when feasible it carries a
//! witness rotation whose ZF gain has been evaluated through
//! [`crate::beamform::zf_gain`].

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use crate::beamform::{zf_gain, NullSteerProblem};
use crate::error::{Error, Result};
use crate::geometry::{wrap_angle, ArrayRotation, Direction};
use crate::steering::{
    geometric_steering, steering_inner_product, ArrayConfig, RadiationPattern,
};

/// Slack applied to closed interval tests and integer checks.
pub const SLACK: f64 = 1e-9;

/// How a single interferer is (or would be) nulled at the witness.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NullMechanism {
    GeometricOrthogonality,
    PatternNull,
    Both,
    None,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FeasibilityReport {
    pub feasible: bool,
    /// One entry per interferer, in input order.
    pub mechanisms: Vec<NullMechanism>,
    /// Admissible orthogonality integers per interferer (empty when the
    /// interferer can only be pattern-nulled or not at all).
    pub integer_sets: Vec<Vec<i64>>,
    /// Integers realised by the witness, `None` for pattern-nulled entries.
    pub witness_m: Vec<Option<i64>>,
    pub witness: Option<ArrayRotation>,
    /// ZF gain at the witness.
    pub achieved_gain: Option<f64>,
}

impl FeasibilityReport {
    fn infeasible(k: usize, integer_sets: Vec<Vec<i64>>, mechanisms: Vec<NullMechanism>) -> Self {
        Self {
            feasible: false,
            mechanisms,
            integer_sets,
            witness_m: vec![None; k],
            witness: None,
            achieved_gain: None,
        }
    }
}

/// Midpoint angles, half-separation sines and the pairwise collinearity
/// coefficients for an integer tuple `(m_1, …, m_K)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CollinearityData {
    pub e: Vec<f64>,
    pub s: Vec<f64>,
    /// `(M_1i, N_1i)` for `i = 2..K`, stored at index `i - 2`.
    pub coefficients: Vec<(f64, f64)>,
    /// Common ratio `M_1i / N_1i` when every non-trivial pair agrees.
    pub eta: Option<f64>,
}

/// Solution set for `β` contributed by one interferer in the directional case.
#[derive(Debug, Clone, PartialEq)]
pub enum BetaSolutionSet {
    /// `cos β` must be one of these values (empty: interferer cannot be nulled).
    DiscreteCosines(Vec<f64>),
    /// Any `β` works (the interferer is pattern-nulled).
    FullCircle,
}

/// Separation `θ0 − θ1` wrapped into `[0, 2π)`.
pub fn angular_separation(theta0: Direction, theta1: Direction) -> f64 {
    wrap_angle(theta0.radians() - theta1.radians())
}

fn in_closed(x: f64, lo: f64, hi: f64) -> bool {
    x >= lo - SLACK && x <= hi + SLACK
}

fn nd(array: &ArrayConfig) -> f64 {
    array.n_elements() as f64 * array.spacing()
}

/// Nonzero integers `m` with `|m| ≤ bound` and `N ∤ m`, ordered by `|m|`
/// with the positive value first.
fn admissible_integers(bound: f64, n_elements: usize) -> Vec<i64> {
    let n = n_elements as i64;
    let top = (bound + SLACK).floor() as i64;
    (1..=top)
        .filter(|m| m % n != 0)
        .flat_map(|m| [m, -m])
        .collect()
}

fn require_multi_element(array: &ArrayConfig) -> Result<()> {
    if array.n_elements() < 2 {
        return Err(Error::Precondition("closed-form analysis needs N > 1".into()));
    }
    Ok(())
}

fn require_isotropic(array: &ArrayConfig) -> Result<()> {
    require_multi_element(array)?;
    if !array.pattern().is_isotropic() {
        return Err(Error::Precondition("expected an isotropic element pattern".into()));
    }
    Ok(())
}

fn require_directional(array: &ArrayConfig) -> Result<()> {
    require_multi_element(array)?;
    if array.pattern().is_isotropic() {
        return Err(Error::Precondition("expected a cosine element pattern".into()));
    }
    Ok(())
}

fn clamp_cos(m: i64, cos_beta: f64) -> Result<f64> {
    if !cos_beta.is_finite() || cos_beta.abs() > 1.0 + SLACK {
        return Err(Error::InfeasibleM { m, cos_beta });
    }
    Ok(cos_beta.clamp(-1.0, 1.0))
}

fn verified(array: &ArrayConfig, witness: ArrayRotation, prob: &NullSteerProblem) -> Option<f64> {
    zf_gain(array, witness, prob).ok()
}

/// Smallest isotropic separation admitting orthogonality, `2·asin(1/(2Nd))`;
/// `None` when the aperture is too small for any separation to work.
pub fn isotropic_threshold(array: &ArrayConfig) -> Option<f64> {
    let x = 1.0 / (2.0 * nd(array));
    (x <= 1.0).then(|| 2.0 * x.asin())
}

/// Smallest directional separation admitting geometric orthogonality with an
/// aligned boresight, `asin(1/(Nd))`.
pub fn directional_threshold(array: &ArrayConfig) -> Option<f64> {
    let x = 1.0 / nd(array);
    (x <= 1.0).then(|| x.asin())
}

/// Single interferer, isotropic elements.
pub fn prop1_feasible(array: &ArrayConfig, theta0: Direction, theta1: Direction) -> Result<FeasibilityReport> {
    require_isotropic(array)?;
    let sep = angular_separation(theta0, theta1);
    let half_sep_sin = ((theta0.radians() - theta1.radians()) / 2.0).sin();
    let integers = admissible_integers(2.0 * nd(array) * half_sep_sin.abs(), array.n_elements());
    let feasible = isotropic_threshold(array).is_some_and(|t| in_closed(sep, t, TAU - t));
    if !feasible {
        return Ok(FeasibilityReport::infeasible(
            1,
            vec![integers],
            vec![NullMechanism::None],
        ));
    }
    let m = integers.first().copied().unwrap_or(1);
    let witness = prop1_solve(array, theta0, theta1, m)?;
    let prob = NullSteerProblem::new(theta0, vec![theta1]);
    Ok(FeasibilityReport {
        feasible: true,
        mechanisms: vec![NullMechanism::GeometricOrthogonality],
        integer_sets: vec![integers],
        witness_m: vec![Some(m)],
        witness: Some(witness),
        achieved_gain: verified(array, witness, &prob),
    })
}

/// Rotation making `a(θ1) ⊥ a(θ0)` with orthogonality integer `m`.
///
/// `γ` is placed where `|sin(γ + (θ0+θ1)/2)| = 1`, which admits the widest
/// range of `m`; the remaining one-parameter family in `γ` is not returned.
pub fn prop1_solve(array: &ArrayConfig, theta0: Direction, theta1: Direction, m: i64) -> Result<ArrayRotation> {
    require_multi_element(array)?;
    let cos_beta = if m == 0 || m % array.n_elements() as i64 == 0 {
        f64::NAN
    } else {
        let half_sep_sin = ((theta0.radians() - theta1.radians()) / 2.0).sin();
        m as f64 / (2.0 * nd(array) * half_sep_sin)
    };
    let cos_beta = clamp_cos(m, cos_beta)?;
    let midpoint = (theta0.radians() + theta1.radians()) / 2.0;
    Ok(ArrayRotation::new(0.0, cos_beta.acos(), FRAC_PI_2 - midpoint))
}

fn pair_coefficients(m1: i64, mi: i64, s1: f64, si: f64, e1: f64, ei: f64) -> (f64, f64) {
    let (m1, mi) = (m1 as f64, mi as f64);
    (
        m1 * si * ei.cos() - mi * s1 * e1.cos(),
        m1 * si * ei.sin() - mi * s1 * e1.sin(),
    )
}

fn is_trivial_pair((m, n): (f64, f64)) -> bool {
    m.abs() < SLACK && n.abs() < SLACK
}

fn same_ratio(a: (f64, f64), b: (f64, f64)) -> bool {
    let cross = a.0 * b.1 - a.1 * b.0;
    cross.abs() <= SLACK * (a.0.hypot(a.1) * b.0.hypot(b.1)).max(1.0)
}

fn midpoints_and_sines(theta0: Direction, interferers: &[Direction]) -> (Vec<f64>, Vec<f64>) {
    interferers
        .iter()
        .map(|th| {
            (
                (theta0.radians() + th.radians()) / 2.0,
                ((theta0.radians() - th.radians()) / 2.0).sin(),
            )
        })
        .unzip()
}

/// Collinearity data for a full integer tuple `ms` (one per interferer).
pub fn collinearity(theta0: Direction, interferers: &[Direction], ms: &[i64]) -> CollinearityData {
    assert_eq!(interferers.len(), ms.len());
    let (e, s) = midpoints_and_sines(theta0, interferers);
    let coefficients: Vec<(f64, f64)> = (1..ms.len())
        .map(|i| pair_coefficients(ms[0], ms[i], s[0], s[i], e[0], e[i]))
        .collect();
    let nontrivial: Vec<(f64, f64)> = coefficients.iter().copied().filter(|c| !is_trivial_pair(*c)).collect();
    let eta = match nontrivial.split_first() {
        Some((first, rest)) if rest.iter().all(|c| same_ratio(*first, *c)) => Some(first.0 / first.1),
        _ => None,
    };
    CollinearityData {
        e,
        s,
        coefficients,
        eta,
    }
}

/// Depth-first enumeration of integer tuples with collinearity pruning.
struct TupleSearch<'a> {
    array: &'a ArrayConfig,
    theta0: Direction,
    interferers: &'a [Direction],
    candidates: &'a [Vec<i64>],
    e: Vec<f64>,
    s: Vec<f64>,
    prob: NullSteerProblem,
}

impl TupleSearch<'_> {
    fn run(&self, tuple: &mut Vec<i64>, line: Option<(f64, f64)>) -> Option<(Vec<i64>, ArrayRotation, f64)> {
        let i = tuple.len();
        if i == self.interferers.len() {
            return self.construct(tuple, line);
        }
        for &m in &self.candidates[i] {
            let mut next_line = line;
            if i > 0 {
                let c = pair_coefficients(tuple[0], m, self.s[0], self.s[i], self.e[0], self.e[i]);
                if !is_trivial_pair(c) {
                    match line {
                        Some(l) if !same_ratio(l, c) => continue,
                        Some(_) => {}
                        None => next_line = Some(c),
                    }
                }
            }
            tuple.push(m);
            let found = self.run(tuple, next_line);
            tuple.pop();
            if found.is_some() {
                return found;
            }
        }
        None
    }

    /// Builds `(β, γ)` for a collinear tuple and checks every orthogonality.
    fn construct(&self, ms: &[i64], line: Option<(f64, f64)>) -> Option<(Vec<i64>, ArrayRotation, f64)> {
        let nd2 = 2.0 * nd(self.array);
        // γ solves M sin γ + N cos γ = 0; without a constraint, align the first pair.
        let base = match line {
            Some((m, n)) => (-n).atan2(m),
            None => FRAC_PI_2 - self.e[0],
        };
        for gamma in [base, base + PI] {
            let sin1 = (gamma + self.e[0]).sin();
            let cos_beta = ms[0] as f64 / (nd2 * sin1 * self.s[0]);
            if !cos_beta.is_finite() || cos_beta.abs() > 1.0 + SLACK {
                continue;
            }
            let bounds_hold = ms.iter().zip(self.e.iter().zip(&self.s)).all(|(&m, (&e, &s))| {
                (gamma + e).sin().abs() + SLACK >= (m as f64 / (nd2 * s)).abs()
            });
            if !bounds_hold {
                continue;
            }
            let witness = ArrayRotation::new(0.0, cos_beta.clamp(-1.0, 1.0).acos(), gamma);
            if !self.orthogonal_at(witness) {
                continue;
            }
            if let Some(gain) = verified(self.array, witness, &self.prob) {
                return Some((ms.to_vec(), witness, gain));
            }
        }
        None
    }

    fn orthogonal_at(&self, r: ArrayRotation) -> bool {
        let a0 = geometric_steering(self.array, r, self.theta0);
        let n = self.array.n_elements() as f64;
        self.interferers.iter().all(|&th| {
            let ak = geometric_steering(self.array, r, th);
            steering_inner_product(&ak, &a0).norm() < 1e-9 * n
        })
    }
}

/// Multiple interferers, isotropic elements: searches integer tuples for a
/// common collinearity ratio and builds a witness rotation from it.
pub fn prop2_solve(array: &ArrayConfig, theta0: Direction, interferers: &[Direction]) -> Result<FeasibilityReport> {
    require_isotropic(array)?;
    if interferers.len() < 2 {
        return Err(Error::Precondition("expected at least two interferers".into()));
    }
    let k = interferers.len();
    let (e, s) = midpoints_and_sines(theta0, interferers);
    let global = 2.0 * nd(array);
    let candidates: Vec<Vec<i64>> = s
        .iter()
        .map(|si| admissible_integers((global * si.abs()).min(global), array.n_elements()))
        .collect();
    if candidates.iter().any(Vec::is_empty) {
        let mechanisms = candidates
            .iter()
            .map(|c| {
                if c.is_empty() {
                    NullMechanism::None
                } else {
                    NullMechanism::GeometricOrthogonality
                }
            })
            .collect();
        return Ok(FeasibilityReport::infeasible(k, candidates, mechanisms));
    }
    let search = TupleSearch {
        array,
        theta0,
        interferers,
        candidates: &candidates,
        e,
        s,
        prob: NullSteerProblem::new(theta0, interferers.to_vec()),
    };
    match search.run(&mut Vec::with_capacity(k), None) {
        Some((ms, witness, gain)) => Ok(FeasibilityReport {
            feasible: true,
            mechanisms: vec![NullMechanism::GeometricOrthogonality; k],
            integer_sets: candidates,
            witness_m: ms.into_iter().map(Some).collect(),
            witness: Some(witness),
            achieved_gain: Some(gain),
        }),
        None => Ok(FeasibilityReport::infeasible(
            k,
            candidates,
            vec![NullMechanism::None; k],
        )),
    }
}

/// `α` maximising `cos ε(θ0) = A sin α + B cos α` with
/// `A = −sin β cos(γ+θ0)` and `B = sin(γ+θ0)`.
pub fn aligned_alpha(beta: f64, gamma: f64, theta0: Direction) -> f64 {
    let (s, c) = (gamma + theta0.radians()).sin_cos();
    let a = -beta.sin() * c;
    a.atan2(s)
}

fn aligned_rotation(beta: f64, theta0: Direction) -> ArrayRotation {
    let gamma = FRAC_PI_2 - theta0.radians();
    ArrayRotation::new(aligned_alpha(beta, gamma, theta0), beta, gamma)
}

fn geometric_available(array: &ArrayConfig, sep: f64) -> bool {
    directional_threshold(array).is_some_and(|a| {
        (in_closed(sep, a, PI - a) || in_closed(sep, PI + a, TAU - a)) && sep.sin().abs() > SLACK
    })
}

fn pattern_null_available(sep: f64) -> bool {
    in_closed(sep, FRAC_PI_2, 1.5 * PI)
}

/// Admissible integers for `cos β = m / (N d sin(θ0 − θk))`.
fn directional_integers(array: &ArrayConfig, theta0: Direction, thetak: Direction) -> Vec<i64> {
    let sin_sep = (theta0.radians() - thetak.radians()).sin();
    admissible_integers(nd(array) * sin_sep.abs(), array.n_elements())
}

fn directional_cos_beta(array: &ArrayConfig, theta0: Direction, thetak: Direction, m: i64) -> f64 {
    m as f64 / (nd(array) * (theta0.radians() - thetak.radians()).sin())
}

/// Single interferer, cosine elements with the boresight aligned to `θ0`.
pub fn prop3_solve(array: &ArrayConfig, theta0: Direction, theta1: Direction) -> Result<FeasibilityReport> {
    require_directional(array)?;
    let sep = angular_separation(theta0, theta1);
    let geometric = geometric_available(array, sep);
    let pattern = pattern_null_available(sep);
    let mechanism = match (geometric, pattern) {
        (true, true) => NullMechanism::Both,
        (true, false) => NullMechanism::GeometricOrthogonality,
        (false, true) => NullMechanism::PatternNull,
        (false, false) => NullMechanism::None,
    };
    let integers = if geometric {
        directional_integers(array, theta0, theta1)
    } else {
        Vec::new()
    };
    if !(geometric || pattern) {
        return Ok(FeasibilityReport::infeasible(1, vec![integers], vec![mechanism]));
    }
    let (beta, m) = match integers.first() {
        Some(&m) => {
            let c = clamp_cos(m, directional_cos_beta(array, theta0, theta1, m))?;
            (c.acos(), Some(m))
        }
        None => (0.0, None),
    };
    let witness = aligned_rotation(beta, theta0);
    let prob = NullSteerProblem::new(theta0, vec![theta1]);
    Ok(FeasibilityReport {
        feasible: true,
        mechanisms: vec![mechanism],
        integer_sets: vec![integers],
        witness_m: vec![m],
        witness: Some(witness),
        achieved_gain: verified(array, witness, &prob),
    })
}

/// `β` solution set contributed by interferer `θk` in the directional case.
pub fn beta_solution_set(array: &ArrayConfig, theta0: Direction, thetak: Direction) -> BetaSolutionSet {
    let sep = angular_separation(theta0, thetak);
    if pattern_null_available(sep) {
        return BetaSolutionSet::FullCircle;
    }
    if !geometric_available(array, sep) {
        return BetaSolutionSet::DiscreteCosines(Vec::new());
    }
    BetaSolutionSet::DiscreteCosines(
        directional_integers(array, theta0, thetak)
            .into_iter()
            .map(|m| directional_cos_beta(array, theta0, thetak, m).clamp(-1.0, 1.0))
            .collect(),
    )
}

/// Multiple interferers, cosine elements: intersects the per-interferer
/// `β` solution sets.
pub fn prop4_intersect(array: &ArrayConfig, theta0: Direction, interferers: &[Direction]) -> Result<FeasibilityReport> {
    require_directional(array)?;
    if interferers.len() < 2 {
        return Err(Error::Precondition("expected at least two interferers".into()));
    }
    let k = interferers.len();
    let sets: Vec<BetaSolutionSet> = interferers
        .iter()
        .map(|&th| beta_solution_set(array, theta0, th))
        .collect();
    let mechanisms: Vec<NullMechanism> = sets
        .iter()
        .map(|s| match s {
            BetaSolutionSet::FullCircle => NullMechanism::PatternNull,
            BetaSolutionSet::DiscreteCosines(v) if v.is_empty() => NullMechanism::None,
            BetaSolutionSet::DiscreteCosines(_) => NullMechanism::GeometricOrthogonality,
        })
        .collect();
    let integer_sets: Vec<Vec<i64>> = sets
        .iter()
        .zip(interferers)
        .map(|(s, &th)| match s {
            BetaSolutionSet::FullCircle => Vec::new(),
            BetaSolutionSet::DiscreteCosines(_) => directional_integers(array, theta0, th),
        })
        .collect();

    // `None` stands for the full circle.
    let mut common: Option<Vec<f64>> = None;
    for set in &sets {
        if let BetaSolutionSet::DiscreteCosines(values) = set {
            common = Some(match common {
                None => values.clone(),
                Some(cur) => cur
                    .into_iter()
                    .filter(|c| values.iter().any(|v| (v - c).abs() <= SLACK))
                    .collect(),
            });
        }
    }
    let cos_beta = match &common {
        None => 1.0,
        Some(v) if v.is_empty() => {
            return Ok(FeasibilityReport::infeasible(k, integer_sets, mechanisms));
        }
        Some(v) => v[0],
    };
    let witness = aligned_rotation(cos_beta.acos(), theta0);
    let witness_m = sets
        .iter()
        .zip(interferers)
        .map(|(s, &th)| match s {
            BetaSolutionSet::FullCircle => None,
            BetaSolutionSet::DiscreteCosines(_) => {
                let sin_sep = (theta0.radians() - th.radians()).sin();
                Some((cos_beta * nd(array) * sin_sep).round() as i64)
            }
        })
        .collect();
    let prob = NullSteerProblem::new(theta0, interferers.to_vec());
    Ok(FeasibilityReport {
        feasible: true,
        mechanisms,
        integer_sets,
        witness_m,
        witness: Some(witness),
        achieved_gain: verified(array, witness, &prob),
    })
}

/// Two interferers at `θ0 ∓ offset`: with `m2 = −m1` both orthogonality
/// conditions share one `β`, and the boresight stays aligned to `θ0`.
pub fn symmetric_pair_solve(array: &ArrayConfig, theta0: Direction, offset: f64, m: i64) -> Result<ArrayRotation> {
    require_multi_element(array)?;
    let cos_beta = if m % array.n_elements() as i64 == 0 {
        f64::NAN
    } else {
        m as f64 / (nd(array) * offset.sin())
    };
    let cos_beta = clamp_cos(m, cos_beta)?;
    Ok(aligned_rotation(cos_beta.acos(), theta0))
}

/// Whether the unrotated array already has `a(θ1) ⊥ a(θ0)`, together with
/// the nearest integer `m0` to `N d (cos θ0 − cos θ1)`.
pub fn foa_orthogonality_check(array: &ArrayConfig, theta0: Direction, theta1: Direction) -> (bool, i64) {
    let x = nd(array) * (theta0.radians().cos() - theta1.radians().cos());
    let m0 = x.round();
    let n = array.n_elements() as i64;
    let m0i = m0 as i64;
    ((x - m0).abs() <= SLACK && m0i % n != 0, m0i)
}

/// Dispatches to the matching closed-form analysis for `(pattern, K)`.
///
/// With no interferers the report is trivially feasible: the FOA for
/// isotropic elements, or the boresight-aligned rotation for cosine ones.
pub fn analyze(array: &ArrayConfig, prob: &NullSteerProblem) -> Result<FeasibilityReport> {
    let theta0 = prob.desired();
    match (array.pattern(), prob.interferers()) {
        (pattern, []) => {
            let witness = match pattern {
                RadiationPattern::Isotropic => ArrayRotation::FOA,
                RadiationPattern::Cosine { .. } => aligned_rotation(0.0, theta0),
            };
            Ok(FeasibilityReport {
                feasible: true,
                mechanisms: Vec::new(),
                integer_sets: Vec::new(),
                witness_m: Vec::new(),
                witness: Some(witness),
                achieved_gain: verified(array, witness, prob),
            })
        }
        (RadiationPattern::Isotropic, [theta1]) => prop1_feasible(array, theta0, *theta1),
        (RadiationPattern::Isotropic, many) => prop2_solve(array, theta0, many),
        (RadiationPattern::Cosine { .. }, [theta1]) => prop3_solve(array, theta0, *theta1),
        (RadiationPattern::Cosine { .. }, many) => prop4_intersect(array, theta0, many),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::element_pattern_cos;

    fn deg(x: f64) -> Direction {
        Direction::from_degrees(x)
    }

    fn iso(n: usize) -> ArrayConfig {
        ArrayConfig::half_wave(n, RadiationPattern::Isotropic).unwrap()
    }

    fn dir(n: usize) -> ArrayConfig {
        ArrayConfig::half_wave(n, RadiationPattern::Cosine { p: 0.5 }).unwrap()
    }

    #[test]
    fn thresholds() {
        assert!((isotropic_threshold(&iso(8)).unwrap().to_degrees() - 14.361_511_562_916_563).abs() < 1e-9);
        assert!((directional_threshold(&dir(8)).unwrap().to_degrees() - 14.477_512_185_929_924).abs() < 1e-9);
        assert!(isotropic_threshold(&ArrayConfig::new(2, 0.2, RadiationPattern::Isotropic).unwrap()).is_none());
    }

    #[test]
    fn prop1_examples() {
        let r = prop1_feasible(&iso(8), deg(45.0), deg(30.0)).unwrap();
        assert!(r.feasible);
        assert_eq!(r.integer_sets, vec![vec![1, -1]]);
        assert!((r.achieved_gain.unwrap() - 8.0).abs() < 8e-9);

        let r = prop1_feasible(&iso(8), deg(45.0), deg(35.0)).unwrap();
        assert!(!r.feasible);
        assert!(r.witness.is_none());

        let r = prop1_feasible(&iso(8), deg(45.0), deg(225.0)).unwrap();
        assert!(r.feasible);
        let mut ms = r.integer_sets[0].clone();
        ms.sort();
        assert_eq!(ms, vec![-7, -6, -5, -4, -3, -2, -1, 1, 2, 3, 4, 5, 6, 7]);
    }

    #[test]
    fn prop1_solve_examples() {
        let r = prop1_solve(&iso(8), deg(45.0), deg(30.0), 1).unwrap();
        assert!((r.gamma().to_degrees() - 52.5).abs() < 1e-12);
        assert!((r.beta().cos() - 0.957_662_196_942_548_6).abs() < 1e-12);
        assert_eq!(r.alpha(), 0.0);

        let r = prop1_solve(&iso(8), deg(45.0), deg(30.0), -1).unwrap();
        assert!((r.beta().cos() + 0.957_662_196_942_548_6).abs() < 1e-12);

        assert!(matches!(
            prop1_solve(&iso(8), deg(45.0), deg(30.0), 2),
            Err(Error::InfeasibleM { m: 2, .. })
        ));
        assert!(matches!(
            prop1_solve(&iso(8), deg(45.0), deg(225.0), 8),
            Err(Error::InfeasibleM { m: 8, .. })
        ));
    }

    #[test]
    fn prop1_rejects_directional() {
        assert!(matches!(
            prop1_feasible(&dir(8), deg(45.0), deg(30.0)),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn prop2_symmetric_pair() {
        let r = prop2_solve(&iso(8), deg(45.0), &[deg(25.0), deg(65.0)]).unwrap();
        assert!(r.feasible);
        let ms: Vec<i64> = r.witness_m.iter().map(|m| m.unwrap()).collect();
        assert_eq!(ms[0], -ms[1]);
        assert!((r.achieved_gain.unwrap() - 8.0).abs() < 8e-9);
        let data = collinearity(deg(45.0), &[deg(25.0), deg(65.0)], &ms);
        assert!((data.e[0] - 35f64.to_radians()).abs() < 1e-12);
        assert!((data.s[1] - (-10f64).to_radians().sin()).abs() < 1e-12);
    }

    #[test]
    fn prop2_needs_two_interferers() {
        assert!(matches!(
            prop2_solve(&iso(8), deg(45.0), &[deg(30.0)]),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn prop3_examples() {
        let r = prop3_solve(&dir(8), deg(45.0), deg(30.0)).unwrap();
        assert!(r.feasible);
        assert_eq!(r.mechanisms, vec![NullMechanism::GeometricOrthogonality]);
        let w = r.witness.unwrap();
        assert!((w.gamma().to_degrees() - 45.0).abs() < 1e-12);
        assert!(w.alpha().abs() < 1e-12 || (w.alpha() - TAU).abs() < 1e-12);
        assert!((w.beta().to_degrees() - 15.0).abs() < 1e-9);
        assert!((r.achieved_gain.unwrap() - 32.0).abs() < 32e-9);
        assert!((element_pattern_cos(w, deg(45.0)) - 1.0).abs() < 1e-12);

        let r = prop3_solve(&dir(8), deg(45.0), deg(225.0)).unwrap();
        assert!(r.feasible);
        assert_eq!(r.mechanisms, vec![NullMechanism::PatternNull]);
        assert!((r.achieved_gain.unwrap() - 32.0).abs() < 32e-9);

        let r = prop3_solve(&dir(8), deg(45.0), deg(35.0)).unwrap();
        assert!(!r.feasible);
    }

    #[test]
    fn prop3_both_mechanisms() {
        // 100° separation: past the pattern null boundary, still below π − asin(1/4).
        let r = prop3_solve(&dir(8), deg(45.0), deg(-55.0)).unwrap();
        assert_eq!(r.mechanisms, vec![NullMechanism::Both]);
        assert!((r.achieved_gain.unwrap() - 32.0).abs() < 32e-9);
    }

    #[test]
    fn prop4_examples() {
        let r = prop4_intersect(&dir(8), deg(45.0), &[deg(25.0), deg(65.0)]).unwrap();
        assert!(r.feasible);
        assert!((r.achieved_gain.unwrap() - 32.0).abs() < 32e-9);
        let ms: Vec<i64> = r.witness_m.iter().map(|m| m.unwrap()).collect();
        assert_eq!(ms[0], -ms[1]);

        let r = prop4_intersect(&dir(8), deg(45.0), &[deg(200.0), deg(250.0), deg(180.0)]).unwrap();
        assert!(r.feasible);
        assert!(r.mechanisms.iter().all(|m| *m == NullMechanism::PatternNull));
        assert!((r.achieved_gain.unwrap() - 32.0).abs() < 32e-9);

        let r = prop4_intersect(&dir(8), deg(45.0), &[deg(40.0), deg(225.0)]).unwrap();
        assert!(!r.feasible);
        assert_eq!(r.mechanisms[0], NullMechanism::None);
    }

    #[test]
    fn symmetric_construction() {
        let w = symmetric_pair_solve(&dir(8), deg(45.0), 20f64.to_radians(), 1).unwrap();
        let prob = NullSteerProblem::new(deg(45.0), vec![deg(25.0), deg(65.0)]);
        assert!((zf_gain(&dir(8), w, &prob).unwrap() - 32.0).abs() < 32e-9);
    }

    #[test]
    fn foa_check_examples() {
        let theta1 = Direction::new((-0.25f64).acos());
        assert_eq!(foa_orthogonality_check(&iso(8), deg(90.0), theta1), (true, 1));
        assert_eq!(foa_orthogonality_check(&iso(8), deg(45.0), deg(45.0)), (false, 0));
        assert_eq!(foa_orthogonality_check(&iso(8), deg(45.0), deg(30.0)), (false, -1));
    }
}
