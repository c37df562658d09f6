//! Flat `key = value` run configuration. Lines starting with `#` are
//! comments, lists are comma separated, unknown keys are rejected.

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::path::Path;

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::spectral::WaveParams;

/// Example-1 constant: `||f||` over the unit square times `(0, 1/2)`.
pub const EXAMPLE1_NORM_CONST: f64 = 0.3167506677;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Experiment {
    Table1,
    Table2,
    Table3,
    Blowup,
    Figure,
    Bounds,
}

impl Experiment {
    pub fn name(&self) -> &'static str {
        match self {
            Experiment::Table1 => "table1",
            Experiment::Table2 => "table2",
            Experiment::Table3 => "table3",
            Experiment::Blowup => "blowup",
            Experiment::Figure => "figure",
            Experiment::Bounds => "bounds",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "table1" => Experiment::Table1,
            "table2" => Experiment::Table2,
            "table3" => Experiment::Table3,
            "blowup" => Experiment::Blowup,
            "figure" => Experiment::Figure,
            "bounds" => Experiment::Bounds,
            other => return Err(Error::param(format!("unknown experiment '{other}'"))),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NoiseKind {
    /// `g_delta = delta` on the unit square, `f_delta = f (1 + delta / norm_const)`.
    Example1Deterministic,
    /// Seeded uniform perturbation of every mode.
    AdditiveUniform,
    None,
}

impl NoiseKind {
    pub fn name(&self) -> &'static str {
        match self {
            NoiseKind::Example1Deterministic => "example1",
            NoiseKind::AdditiveUniform => "uniform",
            NoiseKind::None => "none",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "example1" => NoiseKind::Example1Deterministic,
            "uniform" => NoiseKind::AdditiveUniform,
            "none" => NoiseKind::None,
            other => return Err(Error::param(format!("unknown noise model '{other}'"))),
        })
    }
}

/// Every parameter a run depends on.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub experiment: Experiment,
    pub k: f64,
    pub d: f64,
    pub m0: f64,
    pub quad_order: usize,
    pub deltas: Vec<f64>,
    pub z0: Vec<f64>,
    /// Grid spacing is `sqrt(1/eps) / spacing_divisor`.
    pub spacing_divisor: f64,
    pub volterra_steps: usize,
    pub noise: NoiseKind,
    pub noise_norm_const: f64,
    pub seed: u64,
    pub blowup_n: Vec<u32>,
    pub blowup_samples: usize,
}

impl ExperimentConfig {
    /// First worked example: `k = 1/3`, `d = 1/2`, `M0 = 1/48`.
    pub fn example1(experiment: Experiment) -> Self {
        ExperimentConfig {
            experiment,
            k: 1.0 / 3.0,
            d: 0.5,
            m0: 1.0 / 48.0,
            quad_order: 5,
            deltas: vec![1e-1, 1e-2, 1e-3, 1e-4],
            z0: vec![0.4, 0.25, 0.1, 0.05],
            spacing_divisor: 30.0,
            volterra_steps: 50,
            noise: NoiseKind::Example1Deterministic,
            noise_norm_const: EXAMPLE1_NORM_CONST,
            seed: 0,
            blowup_n: vec![2, 4, 6, 8, 10],
            blowup_samples: 200,
        }
    }

    /// Second worked example: `d = pi / sqrt 3`, `k = sqrt 5`.
    pub fn example2() -> Self {
        ExperimentConfig {
            k: 5f64.sqrt(),
            d: PI / 3f64.sqrt(),
            deltas: vec![1e-3, 1e-5, 1e-7, 1e-9],
            z0: vec![1.45, 1.08, 0.90, 0.36],
            noise: NoiseKind::None,
            ..ExperimentConfig::example1(Experiment::Table3)
        }
    }

    pub fn default_for(experiment: Experiment) -> Self {
        match experiment {
            Experiment::Table3 => ExperimentConfig::example2(),
            Experiment::Figure => ExperimentConfig {
                deltas: vec![1e-3],
                z0: vec![0.05],
                ..ExperimentConfig::example1(Experiment::Figure)
            },
            e => ExperimentConfig::example1(e),
        }
    }

    pub fn wave_params(&self) -> Result<WaveParams> {
        WaveParams::new(self.k, self.d)
    }

    pub fn validate(&self) -> Result<()> {
        self.wave_params()?;
        if !(self.m0 > 0.0) {
            return Err(Error::param(format!("m0 must be positive, got {}", self.m0)));
        }
        if !(1..=crate::quadrature::MAX_ORDER).contains(&self.quad_order) {
            return Err(Error::param(format!("quad_order {} out of range", self.quad_order)));
        }
        if self.deltas.is_empty() || self.deltas.iter().any(|&x| !(x > 0.0 && x.is_finite())) {
            return Err(Error::param("deltas must be a nonempty list of positive numbers"));
        }
        if self.z0.is_empty() || self.z0.iter().any(|&z| !(z > 0.0 && z <= self.d)) {
            return Err(Error::param(format!("z0 values must lie in (0, {}]", self.d)));
        }
        if !(self.spacing_divisor >= 1.0 && self.spacing_divisor.is_finite()) {
            return Err(Error::param(format!(
                "spacing_divisor must be at least 1, got {}",
                self.spacing_divisor
            )));
        }
        if self.volterra_steps == 0 {
            return Err(Error::param("volterra_steps must be positive"));
        }
        if !(self.noise_norm_const > 0.0) {
            return Err(Error::param("noise_norm_const must be positive"));
        }
        if self.blowup_n.iter().any(|&n| n < 2) {
            return Err(Error::param("blowup_n entries must be at least 2"));
        }
        if self.blowup_samples == 0 {
            return Err(Error::param("blowup_samples must be positive"));
        }
        Ok(())
    }

    /// Applies `key = value` lines on top of `self`.
    pub fn apply_text(&mut self, text: &str) -> Result<()> {
        for (no, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::param(format!("line {}: expected key = value", no + 1)))?;
            self.set(key.trim(), value.trim()).map_err(|e| match e {
                Error::Parameter(m) => Error::param(format!("line {}: {m}", no + 1)),
                other => other,
            })?;
        }
        Ok(())
    }

    /// Parses a full configuration; keys not given keep the defaults of the
    /// named experiment (`experiment` must come first if present).
    pub fn parse(text: &str, fallback: Experiment) -> Result<Self> {
        let experiment = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.starts_with('#'))
            .filter_map(|l| l.split_once('='))
            .find(|(k, _)| k.trim() == "experiment")
            .map(|(_, v)| Experiment::parse(v.trim()))
            .transpose()?
            .unwrap_or(fallback);
        let mut cfg = ExperimentConfig::default_for(experiment);
        cfg.apply_text(text)?;
        Ok(cfg)
    }

    pub fn load(path: &Path, fallback: Experiment) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        ExperimentConfig::parse(&text, fallback)
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        fn num<T: std::str::FromStr>(key: &str, v: &str) -> Result<T> {
            v.parse()
                .map_err(|_| Error::param(format!("{key}: cannot parse '{v}'")))
        }
        fn list<T: std::str::FromStr>(key: &str, v: &str) -> Result<Vec<T>> {
            v.split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(|s| num(key, s))
                .collect()
        }
        match key {
            "experiment" => self.experiment = Experiment::parse(value)?,
            "k" => self.k = num(key, value)?,
            "d" => self.d = num(key, value)?,
            "m0" => self.m0 = num(key, value)?,
            "quad_order" => self.quad_order = num(key, value)?,
            "deltas" => self.deltas = list(key, value)?,
            "z0" => self.z0 = list(key, value)?,
            "spacing_divisor" => self.spacing_divisor = num(key, value)?,
            "volterra_steps" => self.volterra_steps = num(key, value)?,
            "noise" => self.noise = NoiseKind::parse(value)?,
            "noise_norm_const" => self.noise_norm_const = num(key, value)?,
            "seed" => self.seed = num(key, value)?,
            "blowup_n" => self.blowup_n = list(key, value)?,
            "blowup_samples" => self.blowup_samples = num(key, value)?,
            other => return Err(Error::param(format!("unknown key '{other}'"))),
        }
        Ok(())
    }

    /// Canonical text form; parsing it reproduces `self` exactly.
    pub fn echo(&self) -> String {
        fn join<T: ToString>(v: &[T]) -> String {
            v.iter().map(T::to_string).collect::<Vec<_>>().join(", ")
        }
        let mut s = String::new();
        let _ = writeln!(s, "experiment = {}", self.experiment.name());
        let _ = writeln!(s, "k = {}", self.k);
        let _ = writeln!(s, "d = {}", self.d);
        let _ = writeln!(s, "m0 = {}", self.m0);
        let _ = writeln!(s, "quad_order = {}", self.quad_order);
        let _ = writeln!(s, "deltas = {}", join(&self.deltas));
        let _ = writeln!(s, "z0 = {}", join(&self.z0));
        let _ = writeln!(s, "spacing_divisor = {}", self.spacing_divisor);
        let _ = writeln!(s, "volterra_steps = {}", self.volterra_steps);
        let _ = writeln!(s, "noise = {}", self.noise.name());
        let _ = writeln!(s, "noise_norm_const = {}", self.noise_norm_const);
        let _ = writeln!(s, "seed = {}", self.seed);
        let _ = writeln!(s, "blowup_n = {}", join(&self.blowup_n));
        let _ = writeln!(s, "blowup_samples = {}", self.blowup_samples);
        s
    }

    /// SHA-256 of [`echo`](Self::echo), lowercase hex.
    pub fn hash(&self) -> String {
        let digest = Sha256::digest(self.echo().as_bytes());
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }
}
