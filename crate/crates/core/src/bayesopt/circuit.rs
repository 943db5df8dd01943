use super::variant::{AlgorithmVariant, ExplorationMixer, MixerKind};
use crate::error::Result;
use crate::problems::Sense;
use crate::statevector::{MeasurementHistogram, PhaseHamiltonian, QuantumState};

/// Membership mask of basis states whose objective is strictly better than
/// `f_star`.
pub fn grover_targets(diagonal: &[f64], f_star: f64, sense: Sense) -> Vec<bool> {
    diagonal
        .iter()
        .map(|&v| sense.is_better(v, f_star))
        .collect()
}

/// Final state of the variant's circuit from the uniform superposition.
///
/// The phase operator is applied to the loss (the objective for minimization,
/// its negation for maximization) so that a problem and its negated twin see
/// the same unitary. Angles are laid out layer by layer: `(γ, β)` for X and
/// XY, `(γ, θ)` for GM, `(γ, β, θ)` for TM and uTM.
pub fn prepare_state(
    variant: &AlgorithmVariant,
    angles: &[f64],
    h: &PhaseHamiltonian,
    f_star: f64,
    sense: Sense,
) -> Result<QuantumState> {
    variant.check_angles(angles)?;
    let mut state = QuantumState::uniform(h.n_qubits())?;
    let negated;
    let loss_operator = match sense {
        Sense::Minimize => h,
        Sense::Maximize => {
            negated = h.negated();
            &negated
        }
    };
    let needs_targets = matches!(variant.kind, MixerKind::Gm | MixerKind::Tm | MixerKind::Utm);
    let targets = if needs_targets {
        grover_targets(&h.diagonal(), f_star, sense)
    } else {
        Vec::new()
    };

    for layer in angles.chunks(variant.kind.angles_per_layer()) {
        loss_operator.apply_phase(&mut state, layer[0])?;
        match variant.kind {
            MixerKind::X => state.apply_x_mixer(layer[1]),
            MixerKind::Xy => state.apply_xy_mixer(layer[1])?,
            MixerKind::Gm => state.apply_grover_mixer_mask(&targets, layer[1])?,
            MixerKind::Tm | MixerKind::Utm => {
                match variant.exploration {
                    ExplorationMixer::X => state.apply_x_mixer(layer[1]),
                    ExplorationMixer::Xy => state.apply_xy_mixer(layer[1])?,
                }
                state.apply_grover_mixer_mask(&targets, layer[2])?;
            }
        }
    }
    Ok(state)
}

pub fn build_and_run_circuit(
    variant: &AlgorithmVariant,
    angles: &[f64],
    h: &PhaseHamiltonian,
    f_star: f64,
    sense: Sense,
    shots: u64,
    seed: u64,
) -> Result<MeasurementHistogram> {
    prepare_state(variant, angles, h, f_star, sense)?.sample(shots, seed)
}

/// Most frequent basis state and its diagonal entry `⟨ψ_m|C|ψ_m⟩`.
pub fn objective_from_histogram(hist: &MeasurementHistogram, h: &PhaseHamiltonian) -> (usize, f64) {
    let psi_m = hist.mode();
    let f = match h {
        PhaseHamiltonian::Diagonal(d) => d.values()[psi_m],
        PhaseHamiltonian::Dense(d) => d.matrix()[(psi_m, psi_m)].re,
    };
    (psi_m, f)
}
