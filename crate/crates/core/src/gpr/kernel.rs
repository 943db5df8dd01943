use serde::{Deserialize, Serialize};

use super::KurtosisEstimate;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KernelVariant {
    #[default]
    Matern,
    /// Matérn plus a kurtosis-dependent term on each training sample's own
    /// covariance.
    QuantumMatern,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct KernelConfig {
    /// Smoothness; one of 0.5, 1.5, 2.5.
    pub nu: f64,
    pub length_scale: f64,
    /// Chosen by the caller; not part of serialized configs.
    #[serde(skip)]
    pub variant: KernelVariant,
    /// Scale of the kurtosis term.
    pub omega: f64,
    /// Guard in `(κ + ε)⁻²`.
    pub epsilon: f64,
    pub length_scale_bounds: (f64, f64),
    pub omega_bounds: (f64, f64),
}

impl Default for KernelConfig {
    fn default() -> Self {
        Self {
            nu: 0.5,
            length_scale: 1.0,
            variant: KernelVariant::Matern,
            omega: 1.0,
            epsilon: 1e-6,
            length_scale_bounds: (1e-2, 1e2),
            omega_bounds: (1e-4, 1e4),
        }
    }
}

impl KernelConfig {
    pub fn matern() -> Self {
        Self::default()
    }

    pub fn quantum_matern() -> Self {
        Self {
            variant: KernelVariant::QuantumMatern,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if ![0.5, 1.5, 2.5].contains(&self.nu) {
            return Err(Error::UnsupportedNu(self.nu));
        }
        let positive = |name: &str, v: f64| {
            if v > 0.0 && v.is_finite() {
                Ok(())
            } else {
                Err(Error::KernelConfig(format!(
                    "{name} must be positive, got {v}"
                )))
            }
        };
        positive("length_scale", self.length_scale)?;
        positive("omega", self.omega)?;
        positive("epsilon", self.epsilon)?;
        for (name, (lo, hi)) in [
            ("length_scale_bounds", self.length_scale_bounds),
            ("omega_bounds", self.omega_bounds),
        ] {
            if !(lo > 0.0 && lo < hi && hi.is_finite()) {
                return Err(Error::KernelConfig(format!("{name} ({lo}, {hi}) invalid")));
            }
        }
        Ok(())
    }
}

pub fn euclidean(x: &[f64], y: &[f64]) -> f64 {
    x.iter()
        .zip(y)
        .map(|(a, b)| (a - b) * (a - b))
        .sum::<f64>()
        .sqrt()
}

/// Closed-form Matérn correlation at distance `d`. `nu` must be one of the
/// half-integer values accepted by [`KernelConfig::validate`].
pub fn matern_at_distance(d: f64, nu: f64, length_scale: f64) -> f64 {
    let r = d / length_scale;
    if nu == 0.5 {
        (-r).exp()
    } else if nu == 1.5 {
        let s = 3f64.sqrt() * r;
        (1.0 + s) * (-s).exp()
    } else {
        let s = 5f64.sqrt() * r;
        (1.0 + s + s * s / 3.0) * (-s).exp()
    }
}

pub fn matern(x: &[f64], x_prime: &[f64], config: &KernelConfig) -> Result<f64> {
    if x.len() != x_prime.len() {
        return Err(Error::Dimension {
            expected: x.len(),
            found: x_prime.len(),
        });
    }
    if ![0.5, 1.5, 2.5].contains(&config.nu) {
        return Err(Error::UnsupportedNu(config.nu));
    }
    Ok(matern_at_distance(
        euclidean(x, x_prime),
        config.nu,
        config.length_scale,
    ))
}

/// `ω (κ + ε)⁻²`; zero for a degenerate (point-mass) measurement.
pub fn quantum_term(kappa: &KurtosisEstimate, omega: f64, epsilon: f64) -> f64 {
    if kappa.degenerate {
        0.0
    } else {
        omega / (kappa.kappa + epsilon).powi(2)
    }
}

/// Quantum-Matérn kernel. `same_sample` carries the kurtosis of the training
/// sample when `x` and `x_prime` are that same sample; otherwise `None`.
pub fn qm_kernel(
    x: &[f64],
    x_prime: &[f64],
    same_sample: Option<&KurtosisEstimate>,
    config: &KernelConfig,
) -> Result<f64> {
    let base = matern(x, x_prime, config)?;
    Ok(match same_sample {
        Some(kappa) => base + quantum_term(kappa, config.omega, config.epsilon),
        None => base,
    })
}
