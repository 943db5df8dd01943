use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::kernel::{euclidean, matern_at_distance, quantum_term, KernelConfig, KernelVariant};
use super::optimize::{minimize_box, BoxOptions};
use super::KurtosisEstimate;
use crate::error::{Error, Result};

const INITIAL_JITTER: f64 = 1e-10;
const MAX_JITTER: f64 = 1e-4;
/// A factorization is rejected when its smallest squared pivot falls below
/// this fraction of the largest diagonal entry.
const MIN_PIVOT_RATIO: f64 = 1e-9;

#[derive(Debug, Clone, Copy)]
pub struct FitOptions {
    /// Extra random starting points for the hyperparameter search, on top of
    /// the configured initial values.
    pub restarts: usize,
    /// When false the configured hyperparameters are used as given.
    pub tune: bool,
    pub seed: u64,
}

impl Default for FitOptions {
    fn default() -> Self {
        Self {
            restarts: 5,
            tune: true,
            seed: 0,
        }
    }
}

/// Zero-mean Gaussian process on standardized targets.
#[derive(Debug, Clone)]
pub struct GprModel {
    x: Vec<Vec<f64>>,
    y: Vec<f64>,
    kappas: Vec<KurtosisEstimate>,
    kernel: KernelConfig,
    y_mean: f64,
    y_scale: f64,
    /// Lower Cholesky factor of `K(X, X) + jitter·I`.
    chol: DMatrix<f64>,
    alpha: Vec<f64>,
    jitter: f64,
    log_marginal_likelihood: f64,
}

struct Factorization {
    chol: DMatrix<f64>,
    alpha: DVector<f64>,
    jitter: f64,
    lml: f64,
}

fn matern_log_length_derivative(d: f64, nu: f64, length_scale: f64) -> f64 {
    let r = d / length_scale;
    if nu == 0.5 {
        r * (-r).exp()
    } else if nu == 1.5 {
        let s = 3f64.sqrt() * r;
        s * s * (-s).exp()
    } else {
        let s = 5f64.sqrt() * r;
        s * s * (1.0 + s) / 3.0 * (-s).exp()
    }
}

fn distances(x: &[Vec<f64>]) -> DMatrix<f64> {
    let n = x.len();
    DMatrix::from_fn(n, n, |i, j| euclidean(&x[i], &x[j]))
}

fn quantum_diagonal(kappas: &[KurtosisEstimate], cfg: &KernelConfig) -> Vec<f64> {
    match cfg.variant {
        KernelVariant::Matern => vec![0.0; kappas.len()],
        KernelVariant::QuantumMatern => kappas
            .iter()
            .map(|k| quantum_term(k, cfg.omega, cfg.epsilon))
            .collect(),
    }
}

fn covariance(
    dist: &DMatrix<f64>,
    kappas: &[KurtosisEstimate],
    cfg: &KernelConfig,
) -> DMatrix<f64> {
    let mut k = dist.map(|d| matern_at_distance(d, cfg.nu, cfg.length_scale));
    for (i, q) in quantum_diagonal(kappas, cfg).into_iter().enumerate() {
        k[(i, i)] += q;
    }
    k
}

fn factorize(k: &DMatrix<f64>, y: &DVector<f64>) -> Result<Factorization> {
    let n = k.nrows();
    let max_diag = k.diagonal().max();
    let mut jitter = INITIAL_JITTER;
    while jitter <= MAX_JITTER {
        let mut m = k.clone();
        for i in 0..n {
            m[(i, i)] += jitter;
        }
        if let Some(chol) = m.cholesky() {
            let l = chol.l();
            let min_pivot = l.diagonal().min();
            if min_pivot * min_pivot >= MIN_PIVOT_RATIO * max_diag {
                let alpha = chol.solve(y);
                let log_det_half: f64 = l.diagonal().iter().map(|v| v.ln()).sum();
                let lml = -0.5 * y.dot(&alpha)
                    - log_det_half
                    - 0.5 * n as f64 * (2.0 * std::f64::consts::PI).ln();
                if lml.is_finite() {
                    return Ok(Factorization {
                        chol: l,
                        alpha,
                        jitter,
                        lml,
                    });
                }
            }
        }
        jitter *= 2.0;
    }
    Err(Error::Cholesky { jitter: MAX_JITTER })
}

/// Negative log marginal likelihood and its gradient in log-hyperparameters
/// `[ln l]` or `[ln l, ln ω]`.
fn negative_lml(
    log_params: &[f64],
    base: &KernelConfig,
    dist: &DMatrix<f64>,
    kappas: &[KurtosisEstimate],
    y: &DVector<f64>,
) -> (f64, Vec<f64>) {
    let mut cfg = *base;
    cfg.length_scale = log_params[0].exp();
    if log_params.len() > 1 {
        cfg.omega = log_params[1].exp();
    }
    let k = covariance(dist, kappas, &cfg);
    let Ok(fact) = factorize(&k, y) else {
        return (f64::INFINITY, vec![0.0; log_params.len()]);
    };
    let n = y.len();
    let k_inv = nalgebra::Cholesky::new(&fact.chol * fact.chol.transpose())
        .map(|c| c.inverse())
        .unwrap_or_else(|| DMatrix::identity(n, n));
    let a = &fact.alpha;
    // ½ tr((ααᵀ − K⁻¹) ∂K)
    let trace_term = |dk: &dyn Fn(usize, usize) -> f64| -> f64 {
        let mut acc = 0.0;
        for i in 0..n {
            for j in 0..n {
                let v = dk(i, j);
                if v != 0.0 {
                    acc += (a[i] * a[j] - k_inv[(i, j)]) * v;
                }
            }
        }
        0.5 * acc
    };
    let mut grad = vec![-trace_term(&|i, j| {
        matern_log_length_derivative(dist[(i, j)], cfg.nu, cfg.length_scale)
    })];
    if log_params.len() > 1 {
        let q = quantum_diagonal(kappas, &cfg);
        grad.push(-trace_term(&|i, j| if i == j { q[i] } else { 0.0 }));
    }
    (-fact.lml, grad)
}

impl GprModel {
    /// Fits with default [`FitOptions`].
    pub fn fit(
        x: Vec<Vec<f64>>,
        y: Vec<f64>,
        kappas: Vec<KurtosisEstimate>,
        config: KernelConfig,
    ) -> Result<Self> {
        Self::fit_with(x, y, kappas, config, &FitOptions::default())
    }

    pub fn fit_with(
        x: Vec<Vec<f64>>,
        y: Vec<f64>,
        kappas: Vec<KurtosisEstimate>,
        config: KernelConfig,
        options: &FitOptions,
    ) -> Result<Self> {
        config.validate()?;
        if x.is_empty() {
            return Err(Error::NoSamples);
        }
        let dim = x[0].len();
        for (found, expected) in [(y.len(), x.len()), (kappas.len(), x.len())] {
            if found != expected {
                return Err(Error::Dimension { expected, found });
            }
        }
        if let Some(bad) = x.iter().find(|p| p.len() != dim) {
            return Err(Error::Dimension {
                expected: dim,
                found: bad.len(),
            });
        }
        if x.iter().flatten().chain(&y).any(|v| !v.is_finite())
            || kappas.iter().any(|k| !k.kappa.is_finite())
        {
            return Err(Error::NonFinite("training data"));
        }

        let n = y.len() as f64;
        let y_mean = y.iter().sum::<f64>() / n;
        let spread = (y.iter().map(|v| (v - y_mean).powi(2)).sum::<f64>() / n).sqrt();
        let y_scale = if spread > 1e-12 { spread } else { 1.0 };
        let y_std = DVector::from_iterator(y.len(), y.iter().map(|v| (v - y_mean) / y_scale));
        let dist = distances(&x);

        let mut kernel = config;
        if options.tune {
            kernel = Self::tune(&config, &dist, &kappas, &y_std, options);
        }
        let fact = factorize(&covariance(&dist, &kappas, &kernel), &y_std)?;
        Ok(Self {
            x,
            y,
            kappas,
            kernel,
            y_mean,
            y_scale,
            chol: fact.chol,
            alpha: fact.alpha.iter().copied().collect(),
            jitter: fact.jitter,
            log_marginal_likelihood: fact.lml,
        })
    }

    fn tune(
        config: &KernelConfig,
        dist: &DMatrix<f64>,
        kappas: &[KurtosisEstimate],
        y: &DVector<f64>,
        options: &FitOptions,
    ) -> KernelConfig {
        let mut bounds = vec![config.length_scale_bounds];
        let mut start = vec![config.length_scale];
        let tunes_omega =
            config.variant == KernelVariant::QuantumMatern && kappas.iter().any(|k| !k.degenerate);
        if tunes_omega {
            bounds.push(config.omega_bounds);
            start.push(config.omega);
        }
        let lower: Vec<f64> = bounds.iter().map(|b| b.0.ln()).collect();
        let upper: Vec<f64> = bounds.iter().map(|b| b.1.ln()).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
        let mut starts = vec![start.iter().map(|v| v.ln()).collect::<Vec<_>>()];
        for _ in 0..options.restarts {
            starts.push(
                lower
                    .iter()
                    .zip(&upper)
                    .map(|(&lo, &hi)| rng.random_range(lo..=hi))
                    .collect(),
            );
        }

        let mut best: Option<(f64, Vec<f64>)> = None;
        for x0 in starts {
            let m = minimize_box(
                |p| negative_lml(p, config, dist, kappas, y),
                &x0,
                &lower,
                &upper,
                &BoxOptions::default(),
            );
            if m.value.is_finite() && best.as_ref().is_none_or(|(v, _)| m.value < *v) {
                best = Some((m.value, m.x));
            }
        }
        let mut tuned = *config;
        if let Some((_, p)) = best {
            tuned.length_scale = p[0].exp();
            if tunes_omega {
                tuned.omega = p[1].exp();
            }
        }
        tuned
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.x[0].len()
    }

    /// Hyperparameters after tuning.
    pub fn kernel(&self) -> &KernelConfig {
        &self.kernel
    }

    pub fn jitter(&self) -> f64 {
        self.jitter
    }

    pub fn log_marginal_likelihood(&self) -> f64 {
        self.log_marginal_likelihood
    }

    pub fn inputs(&self) -> &[Vec<f64>] {
        &self.x
    }

    pub fn targets(&self) -> &[f64] {
        &self.y
    }

    pub fn kappas(&self) -> &[KurtosisEstimate] {
        &self.kappas
    }

    /// Standard deviation used to standardize targets.
    pub fn target_scale(&self) -> f64 {
        self.y_scale
    }

    pub fn standardize(&self, y: f64) -> f64 {
        (y - self.y_mean) / self.y_scale
    }

    pub fn unstandardize(&self, z: f64) -> f64 {
        z * self.y_scale + self.y_mean
    }

    /// Posterior mean and standard deviation at `x_star`. The kurtosis term
    /// only enters training covariances, never the test point's own variance.
    pub fn predict(&self, x_star: &[f64]) -> Result<(f64, f64)> {
        if x_star.len() != self.dim() {
            return Err(Error::Dimension {
                expected: self.dim(),
                found: x_star.len(),
            });
        }
        let n = self.len();
        let cfg = &self.kernel;
        let mut v: Vec<f64> = self
            .x
            .iter()
            .map(|xi| matern_at_distance(euclidean(xi, x_star), cfg.nu, cfg.length_scale))
            .collect();
        let mean: f64 = v.iter().zip(&self.alpha).map(|(k, a)| k * a).sum();
        // forward substitution L v = k*
        for i in 0..n {
            let s = v[i] - (0..i).map(|j| self.chol[(i, j)] * v[j]).sum::<f64>();
            v[i] = s / self.chol[(i, i)];
        }
        let var = (1.0 - v.iter().map(|a| a * a).sum::<f64>()).max(0.0);
        Ok((self.unstandardize(mean), var.sqrt() * self.y_scale))
    }
}
