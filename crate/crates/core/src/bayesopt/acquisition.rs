use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Upper confidence bound `ασ − μ` for a minimized quantity.
pub fn ucb(mu: f64, sigma: f64, alpha: f64) -> f64 {
    alpha * sigma - mu
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AnnealerConfig {
    pub steps: usize,
    pub initial_temperature: f64,
    /// Geometric factor applied to the temperature after every step.
    pub cooling_rate: f64,
    /// Initial proposal standard deviation as a fraction of each dimension's
    /// range. The scale shrinks with `sqrt(T / T0)` as the chain cools.
    pub proposal_stddev: f64,
}

impl AnnealerConfig {
    pub const FINAL_TEMPERATURE: f64 = 1e-3;

    /// Starts at `T = 1` and cools geometrically to `1e-3` over `steps`.
    pub fn with_steps(steps: usize) -> Self {
        let steps = steps.max(1);
        Self {
            steps,
            initial_temperature: 1.0,
            cooling_rate: Self::FINAL_TEMPERATURE.powf(1.0 / steps as f64),
            proposal_stddev: 0.1,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.steps == 0 {
            return Err(Error::Config("annealer steps must be at least 1".into()));
        }
        if !(self.initial_temperature > 0.0 && self.initial_temperature.is_finite()) {
            return Err(Error::Config(
                "annealer initial_temperature must be positive".into(),
            ));
        }
        if !(self.cooling_rate > 0.0 && self.cooling_rate < 1.0) {
            return Err(Error::Config(format!(
                "annealer cooling_rate {} outside (0, 1)",
                self.cooling_rate
            )));
        }
        if !(self.proposal_stddev > 0.0 && self.proposal_stddev.is_finite()) {
            return Err(Error::Config(
                "annealer proposal_stddev must be positive".into(),
            ));
        }
        Ok(())
    }
}

impl Default for AnnealerConfig {
    fn default() -> Self {
        Self::with_steps(20_000)
    }
}

/// Rotation angles plus continuous design variables.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchPoint {
    pub angles: Vec<f64>,
    pub x_c: Vec<f64>,
}

/// The box `[0, 2π]^angles × bounds(x_c)`, mapped to the unit cube for the
/// surrogate and the annealer.
#[derive(Debug, Clone, PartialEq)]
pub struct SearchSpace {
    pub n_angles: usize,
    pub continuous_bounds: Vec<(f64, f64)>,
}

impl SearchSpace {
    pub fn new(n_angles: usize, continuous_bounds: Vec<(f64, f64)>) -> Self {
        Self {
            n_angles,
            continuous_bounds,
        }
    }

    pub fn dim(&self) -> usize {
        self.n_angles + self.continuous_bounds.len()
    }

    pub fn to_unit(&self, point: &SearchPoint) -> Vec<f64> {
        point
            .angles
            .iter()
            .map(|a| a / TAU)
            .chain(
                point
                    .x_c
                    .iter()
                    .zip(&self.continuous_bounds)
                    .map(|(x, (lo, hi))| (x - lo) / (hi - lo)),
            )
            .collect()
    }

    pub fn from_unit(&self, u: &[f64]) -> SearchPoint {
        let (a, c) = u.split_at(self.n_angles);
        SearchPoint {
            angles: a.iter().map(|v| v * TAU).collect(),
            x_c: c
                .iter()
                .zip(&self.continuous_bounds)
                .map(|(v, (lo, hi))| lo + v * (hi - lo))
                .collect(),
        }
    }

    pub fn contains(&self, point: &SearchPoint) -> bool {
        point.angles.len() == self.n_angles
            && point.x_c.len() == self.continuous_bounds.len()
            && point.angles.iter().all(|a| (0.0..=TAU).contains(a))
            && point
                .x_c
                .iter()
                .zip(&self.continuous_bounds)
                .all(|(x, (lo, hi))| (*lo..=*hi).contains(x))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AnnealResult {
    /// Best visited point in unit-cube coordinates.
    pub point: Vec<f64>,
    pub value: f64,
    pub feasible: bool,
}

/// Simulated annealing that maximizes `acquisition` over the unit cube.
///
/// Infeasible points score `penalty` (or `-∞` without one). Metropolis
/// acceptance compares differences divided by `scale · T`, so passing the
/// surrogate's target scale keeps the temperature on a standardized footing.
/// Returns the best point visited, starting with `start`; feasible points
/// always rank above infeasible ones.
pub fn maximize_acquisition<A, F>(
    mut acquisition: A,
    mut feasible: F,
    start: &[f64],
    penalty: Option<f64>,
    scale: f64,
    annealer: &AnnealerConfig,
    seed: u64,
) -> Result<AnnealResult>
where
    A: FnMut(&[f64]) -> Result<f64>,
    F: FnMut(&[f64]) -> bool,
{
    annealer.validate()?;
    let scale = if scale > 0.0 && scale.is_finite() {
        scale
    } else {
        1.0
    };
    let penalty = penalty.unwrap_or(f64::NEG_INFINITY);
    let mut score = |u: &[f64]| -> Result<(f64, bool)> {
        if feasible(u) {
            Ok((acquisition(u)?, true))
        } else {
            Ok((penalty, false))
        }
    };

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut current: Vec<f64> = start.iter().map(|v| v.clamp(0.0, 1.0)).collect();
    let (mut current_value, start_feasible) = score(&current)?;
    let mut best = AnnealResult {
        point: current.clone(),
        value: current_value,
        feasible: start_feasible,
    };
    let mut temperature = annealer.initial_temperature;

    for _ in 0..annealer.steps {
        let step = annealer.proposal_stddev * (temperature / annealer.initial_temperature).sqrt();
        let proposal: Vec<f64> = current
            .iter()
            .map(|&v| {
                let z: f64 = StandardNormal.sample(&mut rng);
                (v + step * z).clamp(0.0, 1.0)
            })
            .collect();
        let (value, is_feasible) = score(&proposal)?;
        let u: f64 = rng.random();
        let accept = if value >= current_value {
            true
        } else if value.is_finite() && current_value.is_finite() {
            u < ((value - current_value) / (scale * temperature)).exp()
        } else {
            false
        };
        let improves = if is_feasible == best.feasible {
            value > best.value
        } else {
            is_feasible
        };
        if improves {
            best = AnnealResult {
                point: proposal.clone(),
                value,
                feasible: is_feasible,
            };
        }
        if accept {
            current = proposal;
            current_value = value;
        }
        temperature *= annealer.cooling_rate;
    }
    Ok(best)
}
