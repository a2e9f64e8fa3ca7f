//! Resolved run configuration: defaults, then the config file, then flags.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context};
use raa_core::{
    ArrayConfig, ArrayRotation, Direction, Init, NullSteerProblem, OptimizerConfig, RadiationPattern,
};
use serde::Serialize;

use crate::args::{Cli, Command};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PatternKind {
    Iso,
    Cos,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    Signed,
    Positive,
}

impl Axis {
    pub fn start_deg(self) -> f64 {
        match self {
            Axis::Signed => -180.0,
            Axis::Positive => 0.0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Axis::Signed => "signed",
            Axis::Positive => "positive",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Emit {
    pub csv: bool,
    pub json: bool,
    pub svg: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunSpec {
    pub command: Command,
    pub n: usize,
    pub spacing: f64,
    pub pattern: PatternKind,
    pub p: f64,
    pub theta0_deg: f64,
    pub interferers_deg: Vec<f64>,
    pub arv_deg: Option<[f64; 3]>,
    pub q: usize,
    pub rounds: usize,
    pub gs_iters: usize,
    pub candidates: usize,
    pub max_shift: usize,
    pub mu: f64,
    pub seed: u64,
    pub trials: usize,
    pub k_range: [usize; 2],
    pub step_deg: f64,
    pub axis: Axis,
    pub emit: Emit,
    #[serde(skip)]
    pub out: PathBuf,
}

const KEYS: &[&str] = &[
    "n", "spacing", "pattern", "p", "theta0", "interferers", "arv", "q", "rounds", "gs-iters",
    "candidates", "max-shift", "mu", "seed", "trials", "k-range", "step", "axis", "emit", "out",
];

const DEFAULTS: &[(&str, &str)] = &[
    ("n", "8"),
    ("spacing", "0.5"),
    ("pattern", "iso"),
    ("p", "0.5"),
    ("theta0", "45"),
    ("interferers", "-10,30,60,115"),
    ("q", "360"),
    ("rounds", "5"),
    ("gs-iters", "50"),
    ("candidates", "36"),
    ("max-shift", "3"),
    ("mu", "1"),
    ("seed", "1"),
    ("trials", "100"),
    ("k-range", "1:8"),
    ("step", "0.25"),
    ("axis", "signed"),
    ("emit", "csv,json,svg"),
    ("out", "out"),
];

/// Parses a flat `key = value` file. `#` starts a comment; keys may use
/// `-` or `_`.
pub fn parse_config(text: &str) -> anyhow::Result<BTreeMap<String, String>> {
    let mut map = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| anyhow!("line {}: expected key = value", i + 1))?;
        let key = k.trim().replace('_', "-");
        if !KEYS.contains(&key.as_str()) {
            bail!("line {}: unknown key `{}`", i + 1, k.trim());
        }
        map.insert(key, v.trim().to_string());
    }
    Ok(map)
}

fn flag_overrides(cli: &Cli) -> Vec<(&'static str, String)> {
    let mut v = Vec::new();
    let mut put = |k: &'static str, val: Option<String>| {
        if let Some(val) = val {
            v.push((k, val));
        }
    };
    put("n", cli.n.map(|x| x.to_string()));
    put("spacing", cli.spacing.map(|x| x.to_string()));
    put("pattern", cli.pattern.clone());
    put("p", cli.p.map(|x| x.to_string()));
    put("theta0", cli.theta0.map(|x| x.to_string()));
    put("interferers", cli.interferers.clone());
    put("arv", cli.arv.clone());
    put("q", cli.q.map(|x| x.to_string()));
    put("rounds", cli.rounds.map(|x| x.to_string()));
    put("gs-iters", cli.gs_iters.map(|x| x.to_string()));
    put("candidates", cli.candidates.map(|x| x.to_string()));
    put("max-shift", cli.max_shift.map(|x| x.to_string()));
    put("mu", cli.mu.map(|x| x.to_string()));
    put("seed", cli.seed.map(|x| x.to_string()));
    put("trials", cli.trials.map(|x| x.to_string()));
    put("k-range", cli.k_range.clone());
    put("step", cli.step.map(|x| x.to_string()));
    put("axis", cli.axis.clone());
    put("emit", cli.emit.clone());
    put("out", cli.out.as_ref().map(|p| p.display().to_string()));
    v
}

fn num<T: std::str::FromStr>(key: &str, s: &str) -> anyhow::Result<T>
where
    T::Err: std::error::Error + Send + Sync + 'static,
{
    s.trim().parse().with_context(|| format!("invalid value for {key}: `{s}`"))
}

fn finite(key: &str, s: &str) -> anyhow::Result<f64> {
    let x: f64 = num(key, s)?;
    if !x.is_finite() {
        bail!("{key} must be finite, got `{s}`");
    }
    Ok(x)
}

fn angle_list(key: &str, s: &str) -> anyhow::Result<Vec<f64>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(|x| finite(key, x)).collect()
}

fn parse_emit(s: &str) -> anyhow::Result<Emit> {
    let mut e = Emit {
        csv: false,
        json: false,
        svg: false,
    };
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        match part {
            "csv" => e.csv = true,
            "json" => e.json = true,
            "svg" => e.svg = true,
            other => bail!("unknown emit format `{other}`"),
        }
    }
    Ok(e)
}

impl RunSpec {
    pub fn resolve(cli: &Cli) -> anyhow::Result<Self> {
        let mut raw: BTreeMap<String, String> = DEFAULTS
            .iter()
            .map(|(k, v)| (k.to_string(), v.to_string()))
            .collect();
        if let Some(path) = &cli.config {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("reading {}", path.display()))?;
            raw.extend(parse_config(&text).with_context(|| format!("in {}", path.display()))?);
        }
        for (k, v) in flag_overrides(cli) {
            raw.insert(k.to_string(), v);
        }
        Self::from_raw(cli.command, &raw)
    }

    fn from_raw(command: Command, raw: &BTreeMap<String, String>) -> anyhow::Result<Self> {
        let get = |k: &str| raw.get(k).map(String::as_str).unwrap_or("");
        let pattern = match get("pattern") {
            "iso" | "isotropic" => PatternKind::Iso,
            "cos" | "cosine" => PatternKind::Cos,
            other => bail!("pattern must be iso or cos, got `{other}`"),
        };
        let arv_deg = match raw.get("arv").map(|s| s.trim()) {
            None | Some("") | Some("none") => None,
            Some(s) => {
                let v = angle_list("arv", s)?;
                let [a, b, g] = v[..] else {
                    bail!("arv needs three angles, got `{s}`");
                };
                Some([a, b, g])
            }
        };
        let k_range = {
            let s = get("k-range");
            let (a, b) = s
                .split_once(':')
                .ok_or_else(|| anyhow!("k-range must look like a:b, got `{s}`"))?;
            let (a, b) = (num("k-range", a)?, num("k-range", b)?);
            if a >= b {
                bail!("k-range {a}:{b} is empty");
            }
            [a, b]
        };
        let step_deg = finite("step", get("step"))?;
        if !(step_deg > 0.0 && step_deg <= 360.0) {
            bail!("step must lie in (0, 360], got {step_deg}");
        }
        let spec = Self {
            command,
            n: num("n", get("n"))?,
            spacing: finite("spacing", get("spacing"))?,
            pattern,
            p: finite("p", get("p"))?,
            theta0_deg: finite("theta0", get("theta0"))?,
            interferers_deg: angle_list("interferers", get("interferers"))?,
            arv_deg,
            q: num("q", get("q"))?,
            rounds: num("rounds", get("rounds"))?,
            gs_iters: num("gs-iters", get("gs-iters"))?,
            candidates: num("candidates", get("candidates"))?,
            max_shift: num("max-shift", get("max-shift"))?,
            mu: finite("mu", get("mu"))?,
            seed: num("seed", get("seed"))?,
            trials: num("trials", get("trials"))?,
            k_range,
            step_deg,
            axis: match get("axis") {
                "signed" => Axis::Signed,
                "positive" => Axis::Positive,
                other => bail!("axis must be signed or positive, got `{other}`"),
            },
            emit: parse_emit(get("emit"))?,
            out: PathBuf::from(get("out")),
        };
        if spec.trials == 0 {
            bail!("trials must be at least 1");
        }
        spec.array()?;
        spec.optimizer_config().validate()?;
        Ok(spec)
    }

    pub fn array(&self) -> raa_core::Result<ArrayConfig> {
        let pattern = match self.pattern {
            PatternKind::Iso => RadiationPattern::Isotropic,
            PatternKind::Cos => RadiationPattern::cosine(self.p)?,
        };
        ArrayConfig::new(self.n, self.spacing, pattern)
    }

    pub fn desired(&self) -> Direction {
        Direction::from_degrees(self.theta0_deg)
    }

    pub fn problem(&self) -> NullSteerProblem {
        NullSteerProblem::from_degrees(self.theta0_deg, &self.interferers_deg)
    }

    pub fn arv(&self) -> Option<ArrayRotation> {
        self.arv_deg.map(|[a, b, g]| ArrayRotation::from_degrees(a, b, g))
    }

    pub fn optimizer_config(&self) -> OptimizerConfig {
        OptimizerConfig {
            q_grid: self.q,
            rounds: self.rounds,
            gs_iters: self.gs_iters,
            candidates: self.candidates,
            max_shift: self.max_shift,
            mu: self.mu,
            seed: self.seed,
            init: Init::Foa,
        }
    }

    /// Every resolved setting except the output directory, in config-file
    /// syntax. Floats use the shortest exact representation.
    pub fn to_config_text(&self) -> String {
        let list = |v: &[f64]| v.iter().map(f64::to_string).collect::<Vec<_>>().join(",");
        let emit: Vec<&str> = [(self.emit.csv, "csv"), (self.emit.json, "json"), (self.emit.svg, "svg")]
            .iter()
            .filter(|(on, _)| *on)
            .map(|(_, n)| *n)
            .collect();
        let mut s = format!("# raa-nullsteer {}\n", self.command.name());
        let mut kv = |k: &str, v: String| writeln!(s, "{k} = {v}").expect("writing to a String");
        kv("n", self.n.to_string());
        kv("spacing", self.spacing.to_string());
        kv(
            "pattern",
            match self.pattern {
                PatternKind::Iso => "iso".into(),
                PatternKind::Cos => "cos".into(),
            },
        );
        kv("p", self.p.to_string());
        kv("theta0", self.theta0_deg.to_string());
        kv("interferers", list(&self.interferers_deg));
        if let Some(a) = self.arv_deg {
            kv("arv", list(&a));
        }
        kv("q", self.q.to_string());
        kv("rounds", self.rounds.to_string());
        kv("gs-iters", self.gs_iters.to_string());
        kv("candidates", self.candidates.to_string());
        kv("max-shift", self.max_shift.to_string());
        kv("mu", self.mu.to_string());
        kv("seed", self.seed.to_string());
        kv("trials", self.trials.to_string());
        kv("k-range", format!("{}:{}", self.k_range[0], self.k_range[1]));
        kv("step", self.step_deg.to_string());
        kv("axis", self.axis.name().to_string());
        kv("emit", emit.join(","));
        s
    }

    pub fn out_path(&self, name: &str) -> PathBuf {
        Path::new(&self.out).join(name)
    }
}
