use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::acquisition::{maximize_acquisition, ucb, AnnealerConfig, SearchPoint, SearchSpace};
use super::circuit::{build_and_run_circuit, objective_from_histogram};
use super::variant::{AlgorithmVariant, MixerKind};
use crate::error::{Error, Result};
use crate::gpr::{kurtosis, FitOptions, GprModel, KernelConfig, KurtosisEstimate};
use crate::problems::{Problem, Sense};
use crate::statevector::{bits_of, MeasurementHistogram};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct RunConfig {
    pub iterations: usize,
    pub shots: u64,
    pub n_initial: usize,
    /// UCB exploration weight.
    pub alpha: f64,
    pub annealer: AnnealerConfig,
    /// Starting hyperparameters and bounds; the variant picks the kernel form.
    pub kernel: KernelConfig,
    pub fit_restarts: usize,
    /// Leading circuit layers drawn at random in the initial design. Deeper
    /// layers start at zero, so single-mixer circuits with an extra layer share
    /// the same random angles as the two-mixer ones.
    pub initial_random_layers: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            iterations: 50,
            shots: 1024,
            n_initial: 3,
            alpha: 1.0,
            annealer: AnnealerConfig::default(),
            kernel: KernelConfig::default(),
            fit_restarts: 5,
            initial_random_layers: 2,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n_initial == 0 {
            return Err(Error::Config("n_initial must be at least 1".into()));
        }
        if self.shots == 0 {
            return Err(Error::NoShots);
        }
        if !(self.alpha > 0.0 && self.alpha.is_finite()) {
            return Err(Error::Config(format!(
                "alpha must be positive, got {}",
                self.alpha
            )));
        }
        self.annealer.validate()?;
        self.kernel.validate()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IterationRecord {
    pub iteration: usize,
    /// True for the random initial design.
    pub initial: bool,
    pub point: SearchPoint,
    pub histogram: MeasurementHistogram,
    pub psi_m: usize,
    pub bitstring: String,
    pub objective: f64,
    pub kurtosis: KurtosisEstimate,
    pub feasible: bool,
    /// Best feasible objective so far; `None` until a feasible sample appears.
    pub best_so_far: Option<f64>,
    /// Acquisition value that selected the point.
    pub acquisition: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunTrace {
    pub problem: String,
    pub variant: AlgorithmVariant,
    pub seed: u64,
    pub sense: Sense,
    pub records: Vec<IterationRecord>,
}

impl RunTrace {
    pub fn best_curve(&self) -> Vec<Option<f64>> {
        self.records.iter().map(|r| r.best_so_far).collect()
    }

    pub fn final_best(&self) -> Option<f64> {
        self.records.last().and_then(|r| r.best_so_far)
    }
}

const STREAM_INITIAL: u64 = 1;
const STREAM_CIRCUIT: u64 = 2;
const STREAM_FIT: u64 = 3;
const STREAM_ANNEAL: u64 = 4;

/// Independent 64-bit seed for `(stream, index)` under a run seed.
pub fn derive_seed(seed: u64, stream: u64, index: u64) -> u64 {
    let mut z = seed
        ^ stream.wrapping_mul(0x9E37_79B9_7F4A_7C15)
        ^ index.wrapping_mul(0xD1B5_4A32_D192_ED03);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

const FEASIBLE_DRAW_ATTEMPTS: usize = 1000;

/// Initial design for `seed`, identical across variants: per sample,
/// `(γ, β, θ)` for each random layer followed by `x_c`. Continuous draws are
/// resampled (up to a fixed budget) until some assignment is feasible.
pub fn initial_design(
    variant: &AlgorithmVariant,
    problem: &Problem,
    config: &RunConfig,
    seed: u64,
) -> Vec<SearchPoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, STREAM_INITIAL, 0));
    let bounds = problem.continuous_bounds();
    (0..config.n_initial)
        .map(|_| {
            let layers: Vec<[f64; 3]> = (0..config.initial_random_layers)
                .map(|_| std::array::from_fn(|_| rng.random::<f64>() * TAU))
                .collect();
            let mut x_c = Vec::new();
            for _ in 0..FEASIBLE_DRAW_ATTEMPTS {
                x_c = bounds
                    .iter()
                    .map(|(lo, hi)| lo + rng.random::<f64>() * (hi - lo))
                    .collect();
                if problem.continuous_feasible(&x_c) {
                    break;
                }
            }
            let per_layer = variant.kind.angles_per_layer();
            let angles = (0..variant.depth)
                .flat_map(|l| {
                    let layer = layers.get(l).copied().unwrap_or([0.0; 3]);
                    layer.into_iter().take(per_layer)
                })
                .collect();
            SearchPoint { angles, x_c }
        })
        .collect()
}

fn bitstring(z: usize, n: usize) -> String {
    bits_of(z, n).iter().map(|b| char::from(b'0' + b)).collect()
}

/// One Bayesian-optimization run of `variant` on `problem`.
pub fn run(
    variant: &AlgorithmVariant,
    problem: &Problem,
    config: &RunConfig,
    seed: u64,
) -> Result<RunTrace> {
    config.validate()?;
    let sense = problem.sense();
    let n_qubits = problem.n_qubits();
    let space = SearchSpace::new(variant.angle_count(), problem.continuous_bounds());
    let kernel = KernelConfig {
        variant: variant.kind.kernel_variant(),
        ..config.kernel
    };

    let mut records: Vec<IterationRecord> = Vec::new();
    let mut best: Option<(f64, usize)> = None;

    let evaluate = |point: SearchPoint,
                    f_star: f64,
                    initial: bool,
                    acquisition: Option<f64>,
                    records: &mut Vec<IterationRecord>,
                    best: &mut Option<(f64, usize)>|
     -> Result<()> {
        let index = records.len();
        let h = problem.compile(&point.x_c)?;
        let hist = build_and_run_circuit(
            variant,
            &point.angles,
            &h,
            f_star,
            sense,
            config.shots,
            derive_seed(seed, STREAM_CIRCUIT, index as u64),
        )?;
        let (psi_m, f) = objective_from_histogram(&hist, &h);
        let bits = bits_of(psi_m, n_qubits);
        let feasible = problem.is_feasible(&bits, &point.x_c);
        if feasible && best.is_none_or(|(b, _)| sense.is_better(f, b)) {
            *best = Some((f, index));
        }
        let kappa = kurtosis(&hist);
        records.push(IterationRecord {
            iteration: index,
            initial,
            point,
            histogram: hist,
            psi_m,
            bitstring: bitstring(psi_m, n_qubits),
            objective: f,
            kurtosis: kappa,
            feasible,
            best_so_far: best.map(|(b, _)| b),
            acquisition: acquisition.filter(|a| a.is_finite()),
        });
        Ok(())
    };

    for point in initial_design(variant, problem, config, seed) {
        evaluate(point, sense.worst(), true, None, &mut records, &mut best)?;
    }

    for step in 0..config.iterations {
        let iteration = records.len();
        let abort = |source: Error| Error::RunAborted {
            iteration,
            source: Box::new(source),
        };
        let x: Vec<Vec<f64>> = records.iter().map(|r| space.to_unit(&r.point)).collect();
        let y: Vec<f64> = records.iter().map(|r| sense.to_loss(r.objective)).collect();
        let k: Vec<KurtosisEstimate> = records.iter().map(|r| r.kurtosis).collect();
        let options = FitOptions {
            restarts: config.fit_restarts,
            tune: true,
            seed: derive_seed(seed, STREAM_FIT, step as u64),
        };
        let model = GprModel::fit_with(x, y, k, kernel, &options).map_err(abort)?;

        let incumbent = match best {
            Some((_, i)) => i,
            None => (0..records.len())
                .min_by(|&a, &b| {
                    sense
                        .to_loss(records[a].objective)
                        .total_cmp(&sense.to_loss(records[b].objective))
                })
                .unwrap_or(0),
        };
        let start = space.to_unit(&records[incumbent].point);
        let n_angles = space.n_angles;
        let continuous_bounds = &space.continuous_bounds;
        let result = maximize_acquisition(
            |u| {
                model
                    .predict(u)
                    .map(|(mu, sigma)| ucb(mu, sigma, config.alpha))
            },
            |u| {
                let x_c: Vec<f64> = u[n_angles..]
                    .iter()
                    .zip(continuous_bounds)
                    .map(|(v, (lo, hi))| lo + v * (hi - lo))
                    .collect();
                problem.continuous_feasible(&x_c)
            },
            &start,
            problem.penalty_value(),
            model.target_scale(),
            &config.annealer,
            derive_seed(seed, STREAM_ANNEAL, step as u64),
        )
        .map_err(abort)?;

        let f_star = best.map_or(sense.worst(), |(b, _)| b);
        let point = space.from_unit(&result.point);
        evaluate(
            point,
            f_star,
            false,
            Some(result.value),
            &mut records,
            &mut best,
        )
        .map_err(abort)?;
    }

    Ok(RunTrace {
        problem: problem.name().to_string(),
        variant: *variant,
        seed,
        sense,
        records,
    })
}

/// Variants in the conventional reporting order with six angles each.
pub fn six_angle_variants() -> Vec<AlgorithmVariant> {
    MixerKind::ALL
        .into_iter()
        .map(AlgorithmVariant::six_angle)
        .collect()
}
