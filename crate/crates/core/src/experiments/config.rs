//! Plain-text run configuration: one `key = value` per line, `#` comments,
//! comma-separated lists.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::data::{gaussian_profile, rough_sample, RoughSpec, REVIVAL_LIMIT};
use crate::dynamics::NlsModel;
use crate::error::{Error, Result};
use crate::imethod::{Bridge, IMultiplierSpec};
use crate::spectral::{Field, Grid};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExperimentKind {
    Simulate,
    Sweep,
    Scatter,
    Checks,
}

impl ExperimentKind {
    pub fn name(self) -> &'static str {
        match self {
            ExperimentKind::Simulate => "simulate",
            ExperimentKind::Sweep => "sweep",
            ExperimentKind::Scatter => "scatter",
            ExperimentKind::Checks => "checks",
        }
    }
}

impl FromStr for ExperimentKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "simulate" => Ok(Self::Simulate),
            "sweep" => Ok(Self::Sweep),
            "scatter" => Ok(Self::Scatter),
            "checks" => Ok(Self::Checks),
            other => Err(format!("unknown experiment `{other}`")),
        }
    }
}

/// Initial-data family.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DataKind {
    /// Centered Gaussian of amplitude `amplitude` and width `width`.
    Gaussian,
    /// [`rough_sample`] at regularity `s` under an envelope of width `width`.
    Rough,
}

impl DataKind {
    pub fn name(self) -> &'static str {
        match self {
            DataKind::Gaussian => "gaussian",
            DataKind::Rough => "rough",
        }
    }
}

impl FromStr for DataKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "gaussian" => Ok(Self::Gaussian),
            "rough" => Ok(Self::Rough),
            other => Err(format!("unknown data kind `{other}`")),
        }
    }
}

/// Inequality check suites.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CheckKind {
    Bernstein,
    Sandwich,
    Dispersive,
    Morawetz,
    Commutator,
}

impl CheckKind {
    pub const ALL: [CheckKind; 5] = [
        CheckKind::Bernstein,
        CheckKind::Sandwich,
        CheckKind::Dispersive,
        CheckKind::Morawetz,
        CheckKind::Commutator,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckKind::Bernstein => "bernstein",
            CheckKind::Sandwich => "sandwich",
            CheckKind::Dispersive => "dispersive",
            CheckKind::Morawetz => "morawetz",
            CheckKind::Commutator => "commutator",
        }
    }
}

impl FromStr for CheckKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Self::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| format!("unknown check `{s}`"))
    }
}

/// Everything a run needs. Defaults are listed in [`RunConfig::KEYS`] order
/// by [`RunConfig::to_text`].
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub experiment: ExperimentKind,
    pub dim: usize,
    pub n: usize,
    pub length: f64,
    pub p1: f64,
    pub lambda1: f64,
    pub p2: Option<f64>,
    pub lambda2: f64,
    pub dt: f64,
    pub horizon: f64,
    /// Diagnostics row every this many steps.
    pub record_every: usize,
    pub cutoff: f64,
    pub s: f64,
    pub bridge: Bridge,
    /// Smallness threshold for partitioning a trajectory.
    pub eta: f64,
    pub sweep_n: Vec<f64>,
    pub seed: u64,
    pub data: DataKind,
    pub amplitude: f64,
    pub width: f64,
    pub checks: Vec<CheckKind>,
    /// Rough samples drawn by the sandwich check.
    pub samples: usize,
    pub morawetz_amplitudes: Vec<f64>,
    pub dispersive_times: Vec<f64>,
    /// Number of equal windows in the scattering experiment.
    pub windows: usize,
    /// Boundary-strip mass fraction treated as wrap-around contamination.
    pub revival_limit: f64,
    pub out: Option<PathBuf>,
    pub checkpoint: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            experiment: ExperimentKind::Simulate,
            dim: 2,
            n: 128,
            length: 32.0,
            p1: 4.0,
            lambda1: 1.0,
            p2: None,
            lambda2: 1.0,
            dt: 1e-3,
            horizon: 0.5,
            record_every: 10,
            cutoff: 8.0,
            s: 0.8,
            bridge: Bridge::Smooth,
            eta: 0.1,
            sweep_n: vec![4.0, 8.0, 16.0, 32.0],
            seed: 7,
            data: DataKind::Rough,
            amplitude: 1.0,
            width: 1.0,
            checks: CheckKind::ALL.to_vec(),
            samples: 50,
            morawetz_amplitudes: vec![1.0, 2.0, 4.0],
            dispersive_times: vec![0.1, 0.2, 0.5, 1.0, 2.0],
            windows: 4,
            revival_limit: REVIVAL_LIMIT,
            out: None,
            checkpoint: None,
        }
    }
}

fn parse_value<T: FromStr>(raw: &str, line: usize) -> Result<T>
where
    T::Err: std::fmt::Display,
{
    raw.parse::<T>().map_err(|e| Error::Config {
        line,
        message: format!("cannot parse `{raw}`: {e}"),
    })
}

fn parse_list<T: FromStr>(raw: &str, line: usize) -> Result<Vec<T>>
where
    T::Err: std::fmt::Display,
{
    if raw.is_empty() {
        return Ok(Vec::new());
    }
    raw.split(',').map(|item| parse_value(item.trim(), line)).collect()
}

fn parse_path(raw: &str) -> Option<PathBuf> {
    (raw != "none").then(|| PathBuf::from(raw))
}

fn join<T>(items: &[T], f: impl Fn(&T) -> String) -> String {
    items.iter().map(f).collect::<Vec<_>>().join(", ")
}

impl RunConfig {
    /// The closed key set, in the order [`RunConfig::to_text`] writes it.
    pub const KEYS: [&'static str; 28] = [
        "experiment",
        "dim",
        "n",
        "length",
        "p1",
        "lambda1",
        "p2",
        "lambda2",
        "dt",
        "horizon",
        "record_every",
        "cutoff",
        "s",
        "bridge",
        "eta",
        "sweep_n",
        "seed",
        "data",
        "amplitude",
        "width",
        "checks",
        "samples",
        "morawetz_amplitudes",
        "dispersive_times",
        "windows",
        "revival_limit",
        "out",
        "checkpoint",
    ];

    fn set(&mut self, key: &str, raw: &str, line: usize) -> Result<()> {
        match key {
            "experiment" => self.experiment = parse_value(raw, line)?,
            "dim" => self.dim = parse_value(raw, line)?,
            "n" => self.n = parse_value(raw, line)?,
            "length" => self.length = parse_value(raw, line)?,
            "p1" => self.p1 = parse_value(raw, line)?,
            "lambda1" => self.lambda1 = parse_value(raw, line)?,
            "p2" => self.p2 = if raw == "none" { None } else { Some(parse_value(raw, line)?) },
            "lambda2" => self.lambda2 = parse_value(raw, line)?,
            "dt" => self.dt = parse_value(raw, line)?,
            "horizon" => self.horizon = parse_value(raw, line)?,
            "record_every" => self.record_every = parse_value(raw, line)?,
            "cutoff" => self.cutoff = parse_value(raw, line)?,
            "s" => self.s = parse_value(raw, line)?,
            "bridge" => {
                self.bridge = Bridge::parse(raw).map_err(|e| Error::Config {
                    line,
                    message: e.to_string(),
                })?
            }
            "eta" => self.eta = parse_value(raw, line)?,
            "sweep_n" => self.sweep_n = parse_list(raw, line)?,
            "seed" => self.seed = parse_value(raw, line)?,
            "data" => self.data = parse_value(raw, line)?,
            "amplitude" => self.amplitude = parse_value(raw, line)?,
            "width" => self.width = parse_value(raw, line)?,
            "checks" => self.checks = parse_list(raw, line)?,
            "samples" => self.samples = parse_value(raw, line)?,
            "morawetz_amplitudes" => self.morawetz_amplitudes = parse_list(raw, line)?,
            "dispersive_times" => self.dispersive_times = parse_list(raw, line)?,
            "windows" => self.windows = parse_value(raw, line)?,
            "revival_limit" => self.revival_limit = parse_value(raw, line)?,
            "out" => self.out = parse_path(raw),
            "checkpoint" => self.checkpoint = parse_path(raw),
            other => {
                return Err(Error::UnknownKey {
                    line,
                    key: other.to_string(),
                })
            }
        }
        Ok(())
    }

    /// Parses config text. Missing keys keep their defaults; an empty text
    /// gives [`RunConfig::default`]. Repeated keys are an error.
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = Self::default();
        let mut seen: Vec<&str> = Vec::new();
        for (i, raw_line) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw_line.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let Some((key, value)) = content.split_once('=') else {
                return Err(Error::Config {
                    line,
                    message: format!("expected `key = value`, got `{content}`"),
                });
            };
            let key = key.trim();
            if !Self::KEYS.contains(&key) {
                return Err(Error::UnknownKey {
                    line,
                    key: key.to_string(),
                });
            }
            if seen.contains(&key) {
                return Err(Error::Config {
                    line,
                    message: format!("key `{key}` given twice"),
                });
            }
            seen.push(key);
            cfg.set(key, value.trim(), line)?;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    /// Renders every key; `parse(to_text())` reproduces the config exactly.
    pub fn to_text(&self) -> String {
        let path = |p: &Option<PathBuf>| p.as_ref().map_or("none".to_string(), |p| p.display().to_string());
        let mut out = String::new();
        for key in Self::KEYS {
            let value = match key {
                "experiment" => self.experiment.name().to_string(),
                "dim" => self.dim.to_string(),
                "n" => self.n.to_string(),
                "length" => format!("{:?}", self.length),
                "p1" => format!("{:?}", self.p1),
                "lambda1" => format!("{:?}", self.lambda1),
                "p2" => self.p2.map_or("none".to_string(), |p| format!("{p:?}")),
                "lambda2" => format!("{:?}", self.lambda2),
                "dt" => format!("{:?}", self.dt),
                "horizon" => format!("{:?}", self.horizon),
                "record_every" => self.record_every.to_string(),
                "cutoff" => format!("{:?}", self.cutoff),
                "s" => format!("{:?}", self.s),
                "bridge" => self.bridge.name().to_string(),
                "eta" => format!("{:?}", self.eta),
                "sweep_n" => join(&self.sweep_n, |v| format!("{v:?}")),
                "seed" => self.seed.to_string(),
                "data" => self.data.name().to_string(),
                "amplitude" => format!("{:?}", self.amplitude),
                "width" => format!("{:?}", self.width),
                "checks" => join(&self.checks, |c| c.name().to_string()),
                "samples" => self.samples.to_string(),
                "morawetz_amplitudes" => join(&self.morawetz_amplitudes, |v| format!("{v:?}")),
                "dispersive_times" => join(&self.dispersive_times, |v| format!("{v:?}")),
                "windows" => self.windows.to_string(),
                "revival_limit" => format!("{:?}", self.revival_limit),
                "out" => path(&self.out),
                "checkpoint" => path(&self.checkpoint),
                _ => unreachable!("key list and renderer disagree"),
            };
            let _ = writeln!(out, "{key} = {value}");
        }
        out
    }

    /// Cross-field checks that do not depend on the experiment kind.
    pub fn validate(&self) -> Result<()> {
        self.grid()?;
        self.model()?;
        let bad = |m: String| Err(Error::InvalidParameter(m));
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return bad(format!("dt = {} must be positive", self.dt));
        }
        if !(self.horizon > 0.0 && self.horizon.is_finite()) {
            return bad(format!("horizon = {} must be positive", self.horizon));
        }
        if self.record_every == 0 {
            return bad("record_every must be at least 1".into());
        }
        if !(self.eta > 0.0) {
            return bad(format!("eta = {} must be positive", self.eta));
        }
        IMultiplierSpec::with_bridge(self.cutoff, self.s, self.bridge)?;
        if self.sweep_n.iter().any(|&n| !(n > 1.0)) {
            return bad("sweep_n entries must exceed 1".into());
        }
        if !(self.amplitude > 0.0 && self.width > 0.0) {
            return bad("amplitude and width must be positive".into());
        }
        if self.morawetz_amplitudes.iter().any(|&a| !(a > 0.0)) {
            return bad("morawetz_amplitudes must be positive".into());
        }
        if self.dispersive_times.iter().any(|&t| !(t > 0.0)) {
            return bad("dispersive_times must be positive".into());
        }
        if !(self.revival_limit > 0.0) {
            return bad("revival_limit must be positive".into());
        }
        Ok(())
    }

    pub fn grid(&self) -> Result<Grid> {
        Grid::new(self.dim, self.n, self.length)
    }

    pub fn model(&self) -> Result<NlsModel> {
        NlsModel::new(self.dim, self.p1, self.lambda1, self.p2.map(|p| (p, self.lambda2)))
    }

    pub fn i_spec(&self, cutoff: f64) -> Result<IMultiplierSpec> {
        IMultiplierSpec::with_bridge(cutoff, self.s, self.bridge)
    }

    /// Initial datum scaled by `scale`.
    pub fn initial_data(&self, scale: f64) -> Result<Field> {
        let grid = self.grid()?;
        match self.data {
            DataKind::Gaussian => gaussian_profile(grid, scale * self.amplitude, self.width, [0.0, 0.0]),
            DataKind::Rough => rough_sample(
                grid,
                &RoughSpec::new(self.s, self.seed, scale * self.amplitude, self.width)?,
            ),
        }
    }
}

pub fn parse_config(path: &Path) -> Result<RunConfig> {
    RunConfig::parse(&std::fs::read_to_string(path)?)
}
