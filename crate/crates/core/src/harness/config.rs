use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::bayesopt::{AlgorithmVariant, AnnealerConfig, MixerKind, RunConfig};
use crate::error::{Error, Result};
use crate::gpr::KernelConfig;
use crate::problems::{Problem, PROBLEM_IDS};

/// Circuit depth per mixer family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DepthConfig {
    /// Layers for X, XY and GM circuits.
    pub single_mixer: usize,
    /// Layers for TM and uTM circuits.
    pub two_mixer: usize,
}

impl Default for DepthConfig {
    fn default() -> Self {
        Self {
            single_mixer: 3,
            two_mixer: 2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AnnealerSection {
    pub steps: usize,
    pub initial_temperature: f64,
    pub final_temperature: f64,
    pub proposal_stddev: f64,
}

impl Default for AnnealerSection {
    fn default() -> Self {
        Self {
            steps: 20_000,
            initial_temperature: 1.0,
            final_temperature: AnnealerConfig::FINAL_TEMPERATURE,
            proposal_stddev: 0.1,
        }
    }
}

impl AnnealerSection {
    pub fn to_annealer(&self) -> Result<AnnealerConfig> {
        if !(self.final_temperature > 0.0 && self.final_temperature < self.initial_temperature) {
            return Err(Error::Config(format!(
                "annealer final_temperature {} must lie in (0, initial_temperature)",
                self.final_temperature
            )));
        }
        let steps = self.steps.max(1) as f64;
        let cfg = AnnealerConfig {
            steps: self.steps,
            initial_temperature: self.initial_temperature,
            cooling_rate: (self.final_temperature / self.initial_temperature).powf(1.0 / steps),
            proposal_stddev: self.proposal_stddev,
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub problem: String,
    pub variants: Vec<MixerKind>,
    pub iterations: usize,
    pub repetitions: usize,
    pub shots: u64,
    pub n_initial: usize,
    pub alpha: f64,
    pub base_seed: u64,
    pub output_dir: PathBuf,
    pub fit_restarts: usize,
    pub initial_random_layers: usize,
    pub depth: DepthConfig,
    pub annealer: AnnealerSection,
    pub kernel: KernelConfig,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        let run = RunConfig::default();
        Self {
            problem: "maxcut-k6".into(),
            variants: MixerKind::ALL.to_vec(),
            iterations: run.iterations,
            repetitions: 10,
            shots: run.shots,
            n_initial: run.n_initial,
            alpha: run.alpha,
            base_seed: 0,
            output_dir: PathBuf::from("results"),
            fit_restarts: run.fit_restarts,
            initial_random_layers: run.initial_random_layers,
            depth: DepthConfig::default(),
            annealer: AnnealerSection::default(),
            kernel: run.kernel,
        }
    }
}

impl ExperimentConfig {
    /// The bundled experiment shape for a problem id.
    pub fn preset(problem: &str) -> Result<Self> {
        let (repetitions, iterations, n_initial, steps) = match problem {
            "maxcut-k6" => (20, 10, 3, 50),
            "wmaxcut-k5-1" | "wmaxcut-k5-2" | "wmaxcut-k5-3" | "lattice-protein" => {
                (10, 50, 3, 20_000)
            }
            "heh-plus" => (10, 300, 5, 20_000),
            "welded-beam" | "speed-reducer" | "pressure-vessel" => (10, 300, 10, 20_000),
            other => return Err(Error::UnknownProblem(other.to_string())),
        };
        Ok(Self {
            problem: problem.to_string(),
            iterations,
            repetitions,
            n_initial,
            output_dir: PathBuf::from("results").join(problem),
            annealer: AnnealerSection {
                steps,
                ..AnnealerSection::default()
            },
            ..Self::default()
        })
    }

    pub fn from_toml_str(text: &str) -> Result<Self> {
        let cfg: Self = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_toml_str(&text).map_err(|e| match e {
            Error::Config(msg) => Error::Config(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    pub fn to_toml_string(&self) -> String {
        toml::to_string(self).expect("experiment config serializes")
    }

    pub fn variant(&self, kind: MixerKind) -> Result<AlgorithmVariant> {
        let depth = if kind.is_two_mixer() {
            self.depth.two_mixer
        } else {
            self.depth.single_mixer
        };
        AlgorithmVariant::new(kind, depth)
    }

    pub fn algorithm_variants(&self) -> Result<Vec<AlgorithmVariant>> {
        self.variants.iter().map(|&k| self.variant(k)).collect()
    }

    pub fn run_config(&self) -> Result<RunConfig> {
        let cfg = RunConfig {
            iterations: self.iterations,
            shots: self.shots,
            n_initial: self.n_initial,
            alpha: self.alpha,
            annealer: self.annealer.to_annealer()?,
            kernel: self.kernel,
            fit_restarts: self.fit_restarts,
            initial_random_layers: self.initial_random_layers,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn seeds(&self) -> impl Iterator<Item = u64> + '_ {
        (0..self.repetitions as u64).map(|k| self.base_seed.wrapping_add(k))
    }

    /// Checks ranges, the problem id, and that every variant has the same
    /// number of rotation angles.
    pub fn validate(&self) -> Result<()> {
        if self.repetitions == 0 {
            return Err(Error::Config("repetitions must be at least 1".into()));
        }
        if self.variants.is_empty() {
            return Err(Error::Config("at least one variant is required".into()));
        }
        if !PROBLEM_IDS.contains(&self.problem.as_str()) {
            return Err(Error::UnknownProblem(self.problem.clone()));
        }
        let mut seen = Vec::new();
        for &kind in &self.variants {
            if seen.contains(&kind) {
                return Err(Error::Config(format!("variant `{kind}` listed twice")));
            }
            seen.push(kind);
        }
        let variants = self.algorithm_variants()?;
        let budget = variants[0].angle_count();
        if let Some(v) = variants.iter().find(|v| v.angle_count() != budget) {
            return Err(Error::Config(format!(
                "angle budgets differ: {} has {} angles, {} has {budget}",
                v.kind.label(),
                v.angle_count(),
                variants[0].kind.label()
            )));
        }
        self.run_config()?;
        Ok(())
    }

    pub fn resolve_problem(&self) -> Result<Problem> {
        Problem::by_id(&self.problem)
    }
}
