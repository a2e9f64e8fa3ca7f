use std::fs;
use std::time::Instant;

use anyhow::Context;
use raa_core::analysis::{analyze as analyze_problem, directional_threshold, isotropic_threshold};
use raa_core::optimize::{monte_carlo, MonteCarloRow, OptimizerResult};
use raa_core::{
    beam_gain, beam_pattern, optimize as run_optimizer, zf_weights, ArrayConfig, ArrayRotation,
    BeamWeights, Direction, Error, NullMechanism, NullSteerProblem,
};
use serde::Serialize;

use crate::format::{fmt_g, to_db, Csv, DB_FLOOR};
use crate::spec::RunSpec;
use crate::svg::{ticks, Chart, Series};
use crate::CliError;

#[derive(Serialize)]
struct Record<'a, T: Serialize> {
    command: &'static str,
    version: &'static str,
    seed: u64,
    config: &'a RunSpec,
    files: Vec<String>,
    outputs: T,
    /// Wall-clock time; the only field that varies between identical runs.
    elapsed_seconds: f64,
}

struct Outputs<'a> {
    spec: &'a RunSpec,
    files: Vec<String>,
    started: Instant,
}

impl<'a> Outputs<'a> {
    fn new(spec: &'a RunSpec) -> Result<Self, CliError> {
        fs::create_dir_all(&spec.out)
            .with_context(|| format!("creating {}", spec.out.display()))
            .map_err(CliError::Io)?;
        Ok(Self {
            spec,
            files: Vec::new(),
            started: Instant::now(),
        })
    }

    fn write(&mut self, name: &str, contents: &str) -> Result<(), CliError> {
        let path = self.spec.out_path(name);
        fs::write(&path, contents)
            .with_context(|| format!("writing {}", path.display()))
            .map_err(CliError::Io)?;
        self.files.push(name.to_string());
        Ok(())
    }

    /// Writes `run.cfg` and, if requested, the JSON record.
    fn finish<T: Serialize>(mut self, json_name: &str, outputs: T) -> Result<(), CliError> {
        self.write("run.cfg", &self.spec.to_config_text())?;
        if self.spec.emit.json {
            self.files.push(json_name.to_string());
            let record = Record {
                command: self.spec.command.name(),
                version: env!("CARGO_PKG_VERSION"),
                seed: self.spec.seed,
                config: self.spec,
                files: self.files.clone(),
                outputs,
                elapsed_seconds: self.started.elapsed().as_secs_f64(),
            };
            let mut text = serde_json::to_string_pretty(&record)
                .context("serialising results")
                .map_err(CliError::Io)?;
            text.push('\n');
            self.files.pop();
            self.write(json_name, &text)?;
        }
        Ok(())
    }
}

fn array_of(spec: &RunSpec) -> Result<ArrayConfig, CliError> {
    spec.array().map_err(|e| CliError::core(e, "array configuration"))
}

fn arv_deg(r: ArrayRotation) -> [f64; 3] {
    r.to_degrees()
}

#[derive(Serialize)]
struct InterfererNull {
    theta_deg: f64,
    gain_raa: f64,
    gain_foa: f64,
}

#[derive(Serialize)]
struct PatternOut {
    arv_source: &'static str,
    arv_deg: [f64; 3],
    full_gain: f64,
    gain_raa: f64,
    gain_foa: f64,
    peak_gain_raa: f64,
    nulls: Vec<InterfererNull>,
    points: usize,
}

fn choose_arv(spec: &RunSpec, array: &ArrayConfig, prob: &NullSteerProblem) -> Result<(ArrayRotation, &'static str), CliError> {
    if let Some(r) = spec.arv() {
        return Ok((r, "given"));
    }
    match analyze_problem(array, prob) {
        Ok(rep) if rep.feasible => {
            if let Some(w) = rep.witness {
                return Ok((w, "analysis"));
            }
        }
        Ok(_) | Err(Error::Precondition(_)) => {}
        Err(e) => return Err(CliError::core(e, "feasibility analysis")),
    }
    let res = run_optimizer(array, prob, &spec.optimizer_config())
        .map_err(|e| CliError::core(e, "rotation search"))?;
    Ok((res.best_arv, "optimizer"))
}

/// Uniform directions from `start` to `start + 360` inclusive.
fn sweep_grid(start: f64, step_deg: f64) -> Vec<f64> {
    let count = (360.0 / step_deg + 1e-9).floor() as usize + 1;
    (0..count).map(|i| start + i as f64 * step_deg).collect()
}

fn pattern_csv(samples: &[(f64, f64)]) -> String {
    let mut csv = Csv::new(&["theta_deg", "gain_linear", "gain_db"]);
    for &(t, g) in samples {
        csv.row(&[fmt_g(t), fmt_g(g), fmt_g(to_db(g))]);
    }
    csv.finish()
}

pub fn pattern(spec: &RunSpec) -> Result<(), CliError> {
    let array = array_of(spec)?;
    let prob = spec.problem();
    let (arv, source) = choose_arv(spec, &array, &prob)?;
    let w_raa = zf_weights(&array, arv, &prob).map_err(|e| CliError::core(e, "ZF weights for the rotated array"))?;
    let w_foa = zf_weights(&array, ArrayRotation::FOA, &prob)
        .map_err(|e| CliError::core(e, "ZF weights for the fixed array"))?;

    let grid_deg = sweep_grid(spec.axis.start_deg(), spec.step_deg);
    let grid: Vec<Direction> = grid_deg.iter().map(|&t| Direction::from_degrees(t)).collect();
    let sample = |r: ArrayRotation, w: &BeamWeights| -> Vec<(f64, f64)> {
        beam_pattern(&array, r, w, &grid)
            .into_iter()
            .zip(&grid_deg)
            .map(|((_, g), &t)| (t, g))
            .collect()
    };
    let raa = sample(arv, &w_raa);
    let foa = sample(ArrayRotation::FOA, &w_foa);

    let mut out = Outputs::new(spec)?;
    if spec.emit.csv {
        out.write("pattern_raa.csv", &pattern_csv(&raa))?;
        out.write("pattern_foa.csv", &pattern_csv(&foa))?;
    }
    if spec.emit.svg {
        out.write("pattern.svg", &pattern_svg(spec, &array, &raa, &foa))?;
    }

    let result = PatternOut {
        arv_source: source,
        arv_deg: arv_deg(arv),
        full_gain: array.full_gain(),
        gain_raa: beam_gain(&array, arv, &w_raa, prob.desired()),
        gain_foa: beam_gain(&array, ArrayRotation::FOA, &w_foa, prob.desired()),
        peak_gain_raa: raa.iter().map(|p| p.1).fold(0.0, f64::max),
        nulls: prob
            .interferers()
            .iter()
            .map(|&th| InterfererNull {
                theta_deg: th.degrees(),
                gain_raa: beam_gain(&array, arv, &w_raa, th),
                gain_foa: beam_gain(&array, ArrayRotation::FOA, &w_foa, th),
            })
            .collect(),
        points: grid.len(),
    };
    println!(
        "pattern: gain at theta0 {} (fixed array {}), rotation from {} [{}]",
        fmt_g(result.gain_raa),
        fmt_g(result.gain_foa),
        source,
        result.arv_deg.map(fmt_g).join(", ")
    );
    out.finish("pattern.json", result)
}

fn pattern_svg(spec: &RunSpec, array: &ArrayConfig, raa: &[(f64, f64)], foa: &[(f64, f64)]) -> String {
    let top = (to_db(array.full_gain()) / 10.0).ceil() * 10.0;
    let floor = top - 60.0;
    let db = |s: &[(f64, f64)]| s.iter().map(|&(t, g)| (t, to_db(g).max(DB_FLOOR))).collect();
    let start = spec.axis.start_deg();
    let mut markers = vec![(wrap_deg(spec.theta0_deg, start), "green", "θ0".to_string())];
    for (i, &t) in spec.interferers_deg.iter().enumerate() {
        markers.push((wrap_deg(t, start), "gray", format!("θ{}", i + 1)));
    }
    Chart {
        title: "Beam pattern with ZF nulling",
        x_label: "direction (deg)",
        y_label: "beam gain (dB)",
        x_range: (start, start + 360.0),
        y_range: (floor, top),
        x_ticks: ticks(start, start + 360.0, 45.0),
        y_ticks: ticks(floor, top, 10.0),
        markers,
        series: vec![
            Series {
                label: "rotated array",
                color: "#1f4e9c",
                dashed: false,
                markers: false,
                points: db(raa),
            },
            Series {
                label: "fixed array",
                color: "#c0392b",
                dashed: true,
                markers: false,
                points: db(foa),
            },
        ],
    }
    .render()
}

/// Maps degrees into the plotted window `[start, start + 360)`.
fn wrap_deg(t: f64, start: f64) -> f64 {
    (t - start).rem_euclid(360.0) + start
}

#[derive(Serialize)]
struct AnalyzeOut {
    feasible: bool,
    mechanisms: Vec<&'static str>,
    integer_sets: Vec<Vec<i64>>,
    witness_m: Vec<Option<i64>>,
    witness_arv_deg: Option<[f64; 3]>,
    achieved_gain: Option<f64>,
    full_gain: f64,
    isotropic_threshold_deg: Option<f64>,
    directional_threshold_deg: Option<f64>,
}

fn mechanism_name(m: NullMechanism) -> &'static str {
    match m {
        NullMechanism::GeometricOrthogonality => "geometric",
        NullMechanism::PatternNull => "pattern_null",
        NullMechanism::Both => "both",
        NullMechanism::None => "none",
    }
}

pub fn analyze(spec: &RunSpec) -> Result<(), CliError> {
    let array = array_of(spec)?;
    let rep = analyze_problem(&array, &spec.problem()).map_err(|e| CliError::core(e, "feasibility analysis"))?;
    let result = AnalyzeOut {
        feasible: rep.feasible,
        mechanisms: rep.mechanisms.iter().map(|&m| mechanism_name(m)).collect(),
        integer_sets: rep.integer_sets,
        witness_m: rep.witness_m,
        witness_arv_deg: rep.witness.map(arv_deg),
        achieved_gain: rep.achieved_gain,
        full_gain: array.full_gain(),
        isotropic_threshold_deg: isotropic_threshold(&array).map(f64::to_degrees),
        directional_threshold_deg: directional_threshold(&array).map(f64::to_degrees),
    };
    match (result.witness_arv_deg, result.achieved_gain) {
        (Some(a), Some(g)) => println!(
            "analyze: feasible, gain {} at [{}]",
            fmt_g(g),
            a.map(fmt_g).join(", ")
        ),
        _ => println!("analyze: full gain not attainable"),
    }
    Outputs::new(spec)?.finish("analyze.json", result)
}

#[derive(Serialize)]
struct OptimizeOut {
    best_arv_deg: [f64; 3],
    best_grid: [usize; 3],
    best_gain: f64,
    best_gain_db: f64,
    foa_gain: f64,
    full_gain: f64,
    evaluations: u64,
}

pub fn optimize(spec: &RunSpec) -> Result<(), CliError> {
    let array = array_of(spec)?;
    let res: OptimizerResult = run_optimizer(&array, &spec.problem(), &spec.optimizer_config())
        .map_err(|e| CliError::core(e, "rotation search"))?;
    let mut out = Outputs::new(spec)?;
    if spec.emit.csv {
        let mut csv = Csv::new(&["round", "phase", "gain"]);
        for t in &res.trace {
            csv.row(&[t.round.to_string(), t.phase.label().to_string(), fmt_g(t.gain)]);
        }
        out.write("trace.csv", &csv.finish())?;
    }
    let g = res.best_grid;
    let result = OptimizeOut {
        best_arv_deg: arv_deg(res.best_arv),
        best_grid: [g.alpha, g.beta, g.gamma],
        best_gain: res.best_gain,
        best_gain_db: to_db(res.best_gain),
        foa_gain: res.foa_gain,
        full_gain: array.full_gain(),
        evaluations: res.evaluations,
    };
    println!(
        "optimize: gain {} (fixed array {}) at [{}] after {} evaluations",
        fmt_g(result.best_gain),
        fmt_g(result.foa_gain),
        result.best_arv_deg.map(fmt_g).join(", "),
        result.evaluations
    );
    out.finish("optimize.json", result)
}

#[derive(Serialize)]
struct McRow {
    k: usize,
    mean_gain_raa: f64,
    mean_gain_foa: f64,
    std_raa: f64,
    std_foa: f64,
    trials: usize,
}

#[derive(Serialize)]
struct MonteCarloOut {
    full_gain: f64,
    rows: Vec<McRow>,
}

pub fn montecarlo(spec: &RunSpec) -> Result<(), CliError> {
    let array = array_of(spec)?;
    let ks: Vec<usize> = (spec.k_range[0]..spec.k_range[1]).collect();
    let rows = monte_carlo(
        &array,
        spec.desired(),
        &ks,
        spec.trials,
        &spec.optimizer_config(),
        spec.seed,
    )
    .map_err(|e| CliError::core(e, "Monte-Carlo sweep"))?;

    let mut out = Outputs::new(spec)?;
    if spec.emit.csv {
        let mut csv = Csv::new(&["K", "mean_gain_raa", "mean_gain_foa", "std_raa", "std_foa", "trials"]);
        for r in &rows {
            csv.row(&[
                r.k.to_string(),
                fmt_g(r.mean_raa),
                fmt_g(r.mean_foa),
                fmt_g(r.std_raa),
                fmt_g(r.std_foa),
                r.trials.to_string(),
            ]);
        }
        out.write("montecarlo.csv", &csv.finish())?;
    }
    if spec.emit.svg {
        out.write("montecarlo.svg", &montecarlo_svg(&array, &rows))?;
    }
    for r in &rows {
        println!(
            "montecarlo: K={} mean gain {} (fixed array {})",
            r.k,
            fmt_g(r.mean_raa),
            fmt_g(r.mean_foa)
        );
    }
    let result = MonteCarloOut {
        full_gain: array.full_gain(),
        rows: rows
            .iter()
            .map(|r| McRow {
                k: r.k,
                mean_gain_raa: r.mean_raa,
                mean_gain_foa: r.mean_foa,
                std_raa: r.std_raa,
                std_foa: r.std_foa,
                trials: r.trials,
            })
            .collect(),
    };
    out.finish("montecarlo.json", result)
}

fn montecarlo_svg(array: &ArrayConfig, rows: &[MonteCarloRow]) -> String {
    let kmin = rows.first().map_or(0, |r| r.k) as f64;
    let kmax = rows.last().map_or(1, |r| r.k) as f64;
    let (lo, hi) = if kmax > kmin { (kmin - 0.5, kmax + 0.5) } else { (kmin - 1.0, kmin + 1.0) };
    let top = array.full_gain() * 1.05;
    let y_step = if array.full_gain() > 16.0 { 8.0 } else { 1.0 };
    Chart {
        title: "Mean beam gain versus number of interferers",
        x_label: "K",
        y_label: "mean beam gain (linear)",
        x_range: (lo, hi),
        y_range: (0.0, top),
        x_ticks: ticks(lo, hi, 1.0),
        y_ticks: ticks(0.0, top, y_step),
        markers: Vec::new(),
        series: vec![
            Series {
                label: "rotated array",
                color: "#1f4e9c",
                dashed: false,
                markers: true,
                points: rows.iter().map(|r| (r.k as f64, r.mean_raa)).collect(),
            },
            Series {
                label: "fixed array",
                color: "#c0392b",
                dashed: true,
                markers: true,
                points: rows.iter().map(|r| (r.k as f64, r.mean_foa)).collect(),
            },
        ],
    }
    .render()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sweep_covers_both_ends() {
        let g = sweep_grid(-180.0, 0.25);
        assert_eq!(g.len(), 1441);
        assert_eq!(g[0], -180.0);
        assert_eq!(*g.last().unwrap(), 180.0);
        assert_eq!(g[840], 30.0);
        assert_eq!(sweep_grid(0.0, 1.0).len(), 361);
        assert_eq!(sweep_grid(0.0, 1.0)[360], 360.0);
    }

    #[test]
    fn wraps_into_plot_window() {
        assert_eq!(wrap_deg(350.0, -180.0), -10.0);
        assert_eq!(wrap_deg(-10.0, -180.0), -10.0);
        assert_eq!(wrap_deg(180.0, -180.0), -180.0);
        assert_eq!(wrap_deg(-10.0, 0.0), 350.0);
    }
}
