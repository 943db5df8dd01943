use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gpr::KernelVariant;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MixerKind {
    /// Pauli-X mixer.
    X,
    /// XY ring mixer.
    Xy,
    /// Generalized Grover mixer in place of the Pauli-X mixer.
    Gm,
    /// Pauli-X followed by the Grover mixer.
    Tm,
    /// As `Tm`, with the quantum-Matérn surrogate.
    Utm,
}

impl MixerKind {
    pub const ALL: [MixerKind; 5] = [
        MixerKind::X,
        MixerKind::Xy,
        MixerKind::Gm,
        MixerKind::Tm,
        MixerKind::Utm,
    ];

    pub fn angles_per_layer(self) -> usize {
        match self {
            MixerKind::X | MixerKind::Xy | MixerKind::Gm => 2,
            MixerKind::Tm | MixerKind::Utm => 3,
        }
    }

    pub fn is_two_mixer(self) -> bool {
        self.angles_per_layer() == 3
    }

    pub fn kernel_variant(self) -> KernelVariant {
        match self {
            MixerKind::Utm => KernelVariant::QuantumMatern,
            _ => KernelVariant::Matern,
        }
    }

    pub fn id(self) -> &'static str {
        match self {
            MixerKind::X => "x",
            MixerKind::Xy => "xy",
            MixerKind::Gm => "gm",
            MixerKind::Tm => "tm",
            MixerKind::Utm => "utm",
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            MixerKind::X => "X-QABOA",
            MixerKind::Xy => "XY-QABOA",
            MixerKind::Gm => "GM-QABOA",
            MixerKind::Tm => "TM-QABOA",
            MixerKind::Utm => "uTM-QABOA",
        }
    }
}

impl fmt::Display for MixerKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for MixerKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.to_ascii_lowercase();
        let trimmed = lower.strip_suffix("-qaboa").unwrap_or(&lower);
        MixerKind::ALL
            .into_iter()
            .find(|k| k.id() == trimmed)
            .ok_or_else(|| Error::Config(format!("unknown variant `{s}`")))
    }
}

/// Which exploration mixer precedes the Grover mixer in two-mixer circuits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExplorationMixer {
    #[default]
    X,
    Xy,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AlgorithmVariant {
    pub kind: MixerKind,
    pub depth: usize,
    #[serde(default)]
    pub exploration: ExplorationMixer,
}

impl AlgorithmVariant {
    pub fn new(kind: MixerKind, depth: usize) -> Result<Self> {
        if depth == 0 {
            return Err(Error::Config("circuit depth must be at least 1".into()));
        }
        Ok(Self {
            kind,
            depth,
            exploration: ExplorationMixer::X,
        })
    }

    /// Six angles in total: three layers for single-mixer kinds, two for
    /// two-mixer kinds.
    pub fn six_angle(kind: MixerKind) -> Self {
        let depth = if kind.is_two_mixer() { 2 } else { 3 };
        Self {
            kind,
            depth,
            exploration: ExplorationMixer::X,
        }
    }

    pub fn angle_count(&self) -> usize {
        self.depth * self.kind.angles_per_layer()
    }

    pub fn check_angles(&self, angles: &[f64]) -> Result<()> {
        if angles.len() == self.angle_count() {
            Ok(())
        } else {
            Err(Error::AngleCount {
                variant: self.kind.label().to_string(),
                depth: self.depth,
                expected: self.angle_count(),
                found: angles.len(),
            })
        }
    }
}
