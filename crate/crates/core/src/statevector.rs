//! Exact statevector simulation of small qubit registers.
//!
//! Basis index `z` maps to the bitstring `q1 q2 … qn` with `q1` the most
//! significant bit, so qubit `i` (1-based) is bit `n - i` of `z`. Pauli strings
//! are read left to right in the same order.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MAX_QUBITS: usize = 10;

const HERMITIAN_TOL: f64 = 1e-10;
const NORM_TOL: f64 = 1e-10;

fn check_qubits(n_qubits: usize) -> Result<()> {
    if (1..=MAX_QUBITS).contains(&n_qubits) {
        Ok(())
    } else {
        Err(Error::QubitCount(n_qubits))
    }
}

fn qubits_for_dim(dim: usize) -> Result<usize> {
    if dim < 2 || !dim.is_power_of_two() {
        return Err(Error::Dimension {
            expected: dim.next_power_of_two().max(2),
            found: dim,
        });
    }
    let n = dim.trailing_zeros() as usize;
    check_qubits(n)?;
    Ok(n)
}

/// Bit values `(q1, …, qn)` of basis index `z`.
pub fn bits_of(z: usize, n_qubits: usize) -> Vec<u8> {
    (0..n_qubits)
        .map(|i| ((z >> (n_qubits - 1 - i)) & 1) as u8)
        .collect()
}

/// Inverse of [`bits_of`].
pub fn index_of(bits: &[u8]) -> usize {
    bits.iter()
        .fold(0, |acc, &b| (acc << 1) | usize::from(b & 1))
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuantumState {
    n_qubits: usize,
    amplitudes: Vec<Complex64>,
}

impl QuantumState {
    /// The uniform superposition `|+⟩^⊗n`.
    pub fn uniform(n_qubits: usize) -> Result<Self> {
        check_qubits(n_qubits)?;
        let dim = 1usize << n_qubits;
        let amp = (dim as f64).sqrt().recip();
        Ok(Self {
            n_qubits,
            amplitudes: vec![Complex64::new(amp, 0.0); dim],
        })
    }

    pub fn basis(n_qubits: usize, index: usize) -> Result<Self> {
        check_qubits(n_qubits)?;
        let dim = 1usize << n_qubits;
        if index >= dim {
            return Err(Error::BasisIndex { index, dim });
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        Ok(Self {
            n_qubits,
            amplitudes,
        })
    }

    /// Wraps an already-normalized amplitude vector.
    pub fn from_amplitudes(amplitudes: Vec<Complex64>) -> Result<Self> {
        let n_qubits = qubits_for_dim(amplitudes.len())?;
        if amplitudes
            .iter()
            .any(|a| !a.re.is_finite() || !a.im.is_finite())
        {
            return Err(Error::NonFinite("amplitudes"));
        }
        let norm_sqr: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if (norm_sqr - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized(norm_sqr));
        }
        Ok(Self {
            n_qubits,
            amplitudes,
        })
    }

    /// Rescales an arbitrary nonzero vector to unit norm.
    pub fn normalized(mut amplitudes: Vec<Complex64>) -> Result<Self> {
        let norm = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if !(norm.is_finite() && norm > 0.0) {
            return Err(Error::NotNormalized(norm * norm));
        }
        amplitudes.iter_mut().for_each(|a| *a /= norm);
        Self::from_amplitudes(amplitudes)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|a| a.norm_sqr()).collect()
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes
            .iter()
            .map(|a| a.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &QuantumState) -> Result<Complex64> {
        self.check_dim(other.dim())?;
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    fn check_dim(&self, found: usize) -> Result<()> {
        if found == self.dim() {
            Ok(())
        } else {
            Err(Error::Dimension {
                expected: self.dim(),
                found,
            })
        }
    }

    /// `e^{-iγC}` for diagonal `C`.
    pub fn apply_phase_diagonal(&mut self, h: &DiagonalHamiltonian, gamma: f64) -> Result<()> {
        self.check_dim(h.values.len())?;
        for (amp, &value) in self.amplitudes.iter_mut().zip(&h.values) {
            *amp *= Complex64::from_polar(1.0, -gamma * value);
        }
        Ok(())
    }

    /// `e^{-iγC}` for dense Hermitian `C`, through its cached eigenbasis.
    pub fn apply_phase_dense(&mut self, h: &DenseHamiltonian, gamma: f64) -> Result<()> {
        self.check_dim(h.dim())?;
        let psi = DVector::from_column_slice(&self.amplitudes);
        let mut coeffs = h.eigenvectors.adjoint() * psi;
        for (c, &lambda) in coeffs.iter_mut().zip(&h.eigenvalues) {
            *c *= Complex64::from_polar(1.0, -gamma * lambda);
        }
        let out = &h.eigenvectors * coeffs;
        self.amplitudes.copy_from_slice(out.as_slice());
        Ok(())
    }

    /// `e^{-iβ Σ X_i}`, applied as an `Rx(2β)` rotation on every qubit.
    pub fn apply_x_mixer(&mut self, beta: f64) {
        let (sin, cos) = beta.sin_cos();
        let c = Complex64::new(cos, 0.0);
        let s = Complex64::new(0.0, -sin);
        for qubit in 0..self.n_qubits {
            let mask = 1usize << qubit;
            for z in 0..self.dim() {
                if z & mask == 0 {
                    let a0 = self.amplitudes[z];
                    let a1 = self.amplitudes[z | mask];
                    self.amplitudes[z] = c * a0 + s * a1;
                    self.amplitudes[z | mask] = s * a0 + c * a1;
                }
            }
        }
    }

    /// `e^{-iβ B_XY}` on the default ring topology.
    pub fn apply_xy_mixer(&mut self, beta: f64) -> Result<()> {
        XyMixer::shared(self.n_qubits, XyTopology::Ring)?.apply(self, beta)
    }

    /// Generalized Grover mixer `U_R · U_S(θ)`.
    ///
    /// `U_S` multiplies every target amplitude by `e^{iθ}`; `U_R = I - 2|s⟩⟨s|`
    /// reflects about the uniform state. Duplicate targets count once.
    pub fn apply_grover_mixer(&mut self, targets: &[usize], theta: f64) -> Result<()> {
        let dim = self.dim();
        let mut mask = vec![false; dim];
        for &index in targets {
            if index >= dim {
                return Err(Error::BasisIndex { index, dim });
            }
            mask[index] = true;
        }
        self.apply_grover_mixer_mask(&mask, theta)
    }

    /// As [`apply_grover_mixer`](Self::apply_grover_mixer) with the target set
    /// given as a membership mask over basis states.
    pub fn apply_grover_mixer_mask(&mut self, mask: &[bool], theta: f64) -> Result<()> {
        self.check_dim(mask.len())?;
        let phase = Complex64::from_polar(1.0, theta);
        for (amp, &marked) in self.amplitudes.iter_mut().zip(mask) {
            if marked {
                *amp *= phase;
            }
        }
        self.reflect_about_uniform();
        Ok(())
    }

    fn reflect_about_uniform(&mut self) {
        let mean: Complex64 =
            self.amplitudes.iter().sum::<Complex64>() / self.amplitudes.len() as f64;
        let shift = mean * 2.0;
        self.amplitudes.iter_mut().for_each(|a| *a -= shift);
    }

    /// Draws `shots` projective measurements in the computational basis.
    pub fn sample(&self, shots: u64, seed: u64) -> Result<MeasurementHistogram> {
        if shots == 0 {
            return Err(Error::NoShots);
        }
        let mut cumulative = Vec::with_capacity(self.dim());
        let mut total = 0.0;
        let mut last_supported = 0;
        for (z, amp) in self.amplitudes.iter().enumerate() {
            let p = amp.norm_sqr();
            if p > 0.0 {
                last_supported = z;
            }
            total += p;
            cumulative.push(total);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut counts = BTreeMap::new();
        for _ in 0..shots {
            let u = rng.random::<f64>() * total;
            let z = cumulative.partition_point(|&c| c <= u).min(last_supported);
            *counts.entry(z).or_insert(0) += 1;
        }
        Ok(MeasurementHistogram { counts, shots })
    }

    pub fn expectation<H: Observable + ?Sized>(&self, h: &H) -> Result<f64> {
        h.expectation(self)
    }
}

/// Operators with a real expectation value on a [`QuantumState`].
pub trait Observable {
    fn dim(&self) -> usize;
    fn expectation(&self, state: &QuantumState) -> Result<f64>;
}

/// Phase-separating operator whose entries are the objective values of the
/// basis states.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiagonalHamiltonian {
    values: Vec<f64>,
}

impl DiagonalHamiltonian {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        qubits_for_dim(values.len())?;
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("diagonal hamiltonian"));
        }
        Ok(Self { values })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn n_qubits(&self) -> usize {
        self.values.len().trailing_zeros() as usize
    }
}

impl Observable for DiagonalHamiltonian {
    fn dim(&self) -> usize {
        self.values.len()
    }

    fn expectation(&self, state: &QuantumState) -> Result<f64> {
        state.check_dim(self.values.len())?;
        Ok(state
            .amplitudes
            .iter()
            .zip(&self.values)
            .map(|(a, v)| a.norm_sqr() * v)
            .sum())
    }
}

/// Hermitian operator with a cached eigendecomposition.
#[derive(Debug, Clone)]
pub struct DenseHamiltonian {
    matrix: DMatrix<Complex64>,
    eigenvalues: Vec<f64>,
    eigenvectors: DMatrix<Complex64>,
}

impl DenseHamiltonian {
    pub fn new(matrix: DMatrix<Complex64>) -> Result<Self> {
        if matrix.nrows() != matrix.ncols() {
            return Err(Error::Dimension {
                expected: matrix.nrows(),
                found: matrix.ncols(),
            });
        }
        qubits_for_dim(matrix.nrows())?;
        if matrix
            .iter()
            .any(|a| !a.re.is_finite() || !a.im.is_finite())
        {
            return Err(Error::NonFinite("dense hamiltonian"));
        }
        let deviation = (&matrix - matrix.adjoint())
            .iter()
            .map(|a| a.norm())
            .fold(0.0, f64::max);
        if deviation >= HERMITIAN_TOL {
            return Err(Error::NotHermitian(deviation));
        }
        let eigen = matrix.clone().symmetric_eigen();
        Ok(Self {
            matrix,
            eigenvalues: eigen.eigenvalues.iter().copied().collect(),
            eigenvectors: eigen.eigenvectors,
        })
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn eigenvectors(&self) -> &DMatrix<Complex64> {
        &self.eigenvectors
    }

    pub fn n_qubits(&self) -> usize {
        self.matrix.nrows().trailing_zeros() as usize
    }

    /// Real parts of the diagonal, i.e. `⟨z|C|z⟩` for every basis state.
    pub fn diagonal(&self) -> Vec<f64> {
        self.matrix.diagonal().iter().map(|a| a.re).collect()
    }

    /// `-C`, reusing the eigenvectors.
    pub fn negated(&self) -> Self {
        Self {
            matrix: -&self.matrix,
            eigenvalues: self.eigenvalues.iter().map(|v| -v).collect(),
            eigenvectors: self.eigenvectors.clone(),
        }
    }
}

impl Observable for DenseHamiltonian {
    fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    fn expectation(&self, state: &QuantumState) -> Result<f64> {
        state.check_dim(self.dim())?;
        let psi = DVector::from_column_slice(&state.amplitudes);
        Ok(psi.dotc(&(&self.matrix * &psi)).re)
    }
}

/// Either flavour of phase-separating operator.
#[derive(Debug, Clone)]
pub enum PhaseHamiltonian {
    Diagonal(DiagonalHamiltonian),
    Dense(DenseHamiltonian),
}

impl PhaseHamiltonian {
    pub fn n_qubits(&self) -> usize {
        match self {
            PhaseHamiltonian::Diagonal(h) => h.n_qubits(),
            PhaseHamiltonian::Dense(h) => h.n_qubits(),
        }
    }

    /// `⟨z|C|z⟩` for every basis state `z`.
    pub fn diagonal(&self) -> Vec<f64> {
        match self {
            PhaseHamiltonian::Diagonal(h) => h.values.clone(),
            PhaseHamiltonian::Dense(h) => h.diagonal(),
        }
    }

    pub fn negated(&self) -> Self {
        match self {
            PhaseHamiltonian::Diagonal(h) => PhaseHamiltonian::Diagonal(DiagonalHamiltonian {
                values: h.values.iter().map(|v| -v).collect(),
            }),
            PhaseHamiltonian::Dense(h) => PhaseHamiltonian::Dense(h.negated()),
        }
    }

    pub fn apply_phase(&self, state: &mut QuantumState, gamma: f64) -> Result<()> {
        match self {
            PhaseHamiltonian::Diagonal(h) => state.apply_phase_diagonal(h, gamma),
            PhaseHamiltonian::Dense(h) => state.apply_phase_dense(h, gamma),
        }
    }
}

impl Observable for PhaseHamiltonian {
    fn dim(&self) -> usize {
        match self {
            PhaseHamiltonian::Diagonal(h) => h.dim(),
            PhaseHamiltonian::Dense(h) => h.dim(),
        }
    }

    fn expectation(&self, state: &QuantumState) -> Result<f64> {
        match self {
            PhaseHamiltonian::Diagonal(h) => h.expectation(state),
            PhaseHamiltonian::Dense(h) => h.expectation(state),
        }
    }
}

/// Coupling graph of the XY mixer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum XyTopology {
    /// Nearest neighbours on a cycle `(1,2), (2,3), …, (n,1)`.
    Ring,
    /// Every pair of qubits.
    Complete,
}

impl XyTopology {
    /// Distinct qubit pairs, 0-based. A two-qubit ring has a single edge.
    pub fn edges(self, n_qubits: usize) -> Vec<(usize, usize)> {
        match self {
            XyTopology::Ring if n_qubits == 2 => vec![(0, 1)],
            XyTopology::Ring => (0..n_qubits).map(|i| (i, (i + 1) % n_qubits)).collect(),
            XyTopology::Complete => (0..n_qubits)
                .flat_map(|i| (i + 1..n_qubits).map(move |j| (i, j)))
                .collect(),
        }
    }
}

/// `e^{-iβ B_XY}` with `B_XY = ½ Σ_(i,j) (X_i X_j + Y_i Y_j)`.
///
/// `B_XY` is real symmetric (it swaps `01 ↔ 10` on each edge), so a real
/// eigendecomposition is computed once and reused for every angle.
#[derive(Debug, Clone)]
pub struct XyMixer {
    n_qubits: usize,
    topology: XyTopology,
    eigenvalues: Vec<f64>,
    eigenvectors: DMatrix<f64>,
}

type XyCache = Mutex<HashMap<(usize, XyTopology), Arc<XyMixer>>>;

impl XyMixer {
    pub fn new(n_qubits: usize, topology: XyTopology) -> Result<Self> {
        check_qubits(n_qubits)?;
        if n_qubits < 2 {
            return Err(Error::QubitCount(n_qubits));
        }
        let eigen = Self::hamiltonian(n_qubits, topology).symmetric_eigen();
        Ok(Self {
            n_qubits,
            topology,
            eigenvalues: eigen.eigenvalues.iter().copied().collect(),
            eigenvectors: eigen.eigenvectors,
        })
    }

    /// Process-wide cached instance.
    pub fn shared(n_qubits: usize, topology: XyTopology) -> Result<Arc<Self>> {
        static CACHE: OnceLock<XyCache> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        if let Some(mixer) = cache.lock().unwrap().get(&(n_qubits, topology)) {
            return Ok(Arc::clone(mixer));
        }
        let mixer = Arc::new(Self::new(n_qubits, topology)?);
        cache
            .lock()
            .unwrap()
            .insert((n_qubits, topology), Arc::clone(&mixer));
        Ok(mixer)
    }

    /// Dense matrix of `B_XY`.
    pub fn hamiltonian(n_qubits: usize, topology: XyTopology) -> DMatrix<f64> {
        let dim = 1usize << n_qubits;
        let mut h = DMatrix::zeros(dim, dim);
        for (i, j) in topology.edges(n_qubits) {
            let mi = 1usize << (n_qubits - 1 - i);
            let mj = 1usize << (n_qubits - 1 - j);
            for z in 0..dim {
                if ((z & mi) == 0) != ((z & mj) == 0) {
                    h[(z ^ mi ^ mj, z)] += 1.0;
                }
            }
        }
        h
    }

    pub fn topology(&self) -> XyTopology {
        self.topology
    }

    pub fn apply(&self, state: &mut QuantumState, beta: f64) -> Result<()> {
        if state.n_qubits != self.n_qubits {
            return Err(Error::Dimension {
                expected: 1 << self.n_qubits,
                found: state.dim(),
            });
        }
        let dim = state.dim();
        let v = &self.eigenvectors;
        let mut coeffs = vec![Complex64::new(0.0, 0.0); dim];
        for (k, c) in coeffs.iter_mut().enumerate() {
            let col = v.column(k);
            let sum: Complex64 = col
                .iter()
                .zip(&state.amplitudes)
                .map(|(&vk, &a)| a * vk)
                .sum();
            *c = sum * Complex64::from_polar(1.0, -beta * self.eigenvalues[k]);
        }
        for (z, amp) in state.amplitudes.iter_mut().enumerate() {
            *amp = coeffs.iter().enumerate().map(|(k, &c)| c * v[(z, k)]).sum();
        }
        Ok(())
    }
}

/// Measurement outcomes: basis index → number of shots.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MeasurementHistogram {
    counts: BTreeMap<usize, u64>,
    shots: u64,
}

impl MeasurementHistogram {
    pub fn new(counts: BTreeMap<usize, u64>) -> Result<Self> {
        let counts: BTreeMap<_, _> = counts.into_iter().filter(|&(_, c)| c > 0).collect();
        let shots = counts.values().sum();
        if shots == 0 {
            return Err(Error::NoShots);
        }
        Ok(Self { counts, shots })
    }

    pub fn counts(&self) -> &BTreeMap<usize, u64> {
        &self.counts
    }

    pub fn shots(&self) -> u64 {
        self.shots
    }

    pub fn count(&self, index: usize) -> u64 {
        self.counts.get(&index).copied().unwrap_or(0)
    }

    /// Most frequent outcome; ties go to the smaller index.
    pub fn mode(&self) -> usize {
        let mut best = (0, 0);
        for (&z, &c) in &self.counts {
            if c > best.1 {
                best = (z, c);
            }
        }
        best.0
    }

    /// Empirical frequencies `(z, count / shots)` in index order.
    pub fn frequencies(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        let total = self.shots as f64;
        self.counts
            .iter()
            .map(move |(&z, &c)| (z, c as f64 / total))
    }
}

#[cfg(test)]
mod tests {
    use std::f64::consts::{FRAC_PI_2, PI};

    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn assert_close(a: Complex64, b: Complex64, tol: f64) {
        assert!((a - b).norm() < tol, "{a} vs {b}");
    }

    #[test]
    fn uniform_amplitudes() {
        let s = QuantumState::uniform(1).unwrap();
        for a in s.amplitudes() {
            assert_close(*a, c(std::f64::consts::FRAC_1_SQRT_2, 0.0), 1e-15);
        }
        let s = QuantumState::uniform(2).unwrap();
        assert!(s.amplitudes().iter().all(|a| *a == c(0.5, 0.0)));
        let s = QuantumState::uniform(6).unwrap();
        assert_eq!(s.dim(), 64);
        assert!(s.amplitudes().iter().all(|a| *a == c(0.125, 0.0)));
    }

    #[test]
    fn qubit_range_enforced() {
        assert!(matches!(
            QuantumState::uniform(0),
            Err(Error::QubitCount(0))
        ));
        assert!(matches!(
            QuantumState::uniform(11),
            Err(Error::QubitCount(11))
        ));
        assert!(QuantumState::uniform(10).is_ok());
    }

    #[test]
    fn bit_order_round_trip() {
        assert_eq!(bits_of(0b100, 3), vec![1, 0, 0]);
        assert_eq!(bits_of(1, 3), vec![0, 0, 1]);
        for z in 0..64 {
            assert_eq!(index_of(&bits_of(z, 6)), z);
        }
    }

    #[test]
    fn diagonal_phase_examples() {
        let mut s = QuantumState::uniform(2).unwrap();
        let h = DiagonalHamiltonian::new(vec![0.0, 1.0, 2.0, 3.0]).unwrap();
        let before = s.clone();
        s.apply_phase_diagonal(&h, 0.0).unwrap();
        assert_eq!(s, before);

        s.apply_phase_diagonal(&h, FRAC_PI_2).unwrap();
        let expected = [c(0.5, 0.0), c(0.0, -0.5), c(-0.5, 0.0), c(0.0, 0.5)];
        for (a, e) in s.amplitudes().iter().zip(expected) {
            assert_close(*a, e, 1e-15);
        }

        let ones = DiagonalHamiltonian::new(vec![1.0; 4]).unwrap();
        let mut t = QuantumState::uniform(2).unwrap();
        t.apply_phase_diagonal(&ones, 0.7).unwrap();
        for a in t.amplitudes() {
            assert_close(*a, Complex64::from_polar(0.5, -0.7), 1e-15);
        }
    }

    #[test]
    fn dimension_mismatch_rejected() {
        let mut s = QuantumState::uniform(3).unwrap();
        let h = DiagonalHamiltonian::new(vec![0.0; 4]).unwrap();
        assert!(matches!(
            s.apply_phase_diagonal(&h, 1.0),
            Err(Error::Dimension { .. })
        ));
        assert!(s.expectation(&h).is_err());
    }

    #[test]
    fn dense_phase_pauli_x() {
        let x =
            DMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]);
        let h = DenseHamiltonian::new(x).unwrap();
        let mut s = QuantumState::basis(1, 0).unwrap();
        s.apply_phase_dense(&h, FRAC_PI_2).unwrap();
        assert_close(s.amplitudes()[0], c(0.0, 0.0), 1e-12);
        assert_close(s.amplitudes()[1], c(0.0, -1.0), 1e-12);
    }

    #[test]
    fn dense_rejects_non_hermitian() {
        let m =
            DMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
        assert!(matches!(
            DenseHamiltonian::new(m),
            Err(Error::NotHermitian(_))
        ));
    }

    #[test]
    fn x_mixer_flips_all_qubits_at_half_pi() {
        for n in 1..=4 {
            let mut s = QuantumState::basis(n, 0).unwrap();
            s.apply_x_mixer(FRAC_PI_2);
            let last = s.dim() - 1;
            assert!((s.probabilities()[last] - 1.0).abs() < 1e-12);
            // (-i)^n
            let expected = (0..n).fold(c(1.0, 0.0), |acc, _| acc * c(0.0, -1.0));
            assert_close(s.amplitudes()[last], expected, 1e-12);
        }
    }

    #[test]
    fn xy_mixer_needs_two_qubits() {
        let mut s = QuantumState::uniform(1).unwrap();
        assert!(s.apply_xy_mixer(0.3).is_err());
    }

    #[test]
    fn xy_mixer_keeps_all_zero_state() {
        let mut s = QuantumState::basis(4, 0).unwrap();
        s.apply_xy_mixer(1.234).unwrap();
        assert!((s.probabilities()[0] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn xy_ring_edges() {
        assert_eq!(XyTopology::Ring.edges(2), vec![(0, 1)]);
        assert_eq!(XyTopology::Ring.edges(3), vec![(0, 1), (1, 2), (2, 0)]);
        assert_eq!(XyTopology::Complete.edges(3).len(), 3);
    }

    #[test]
    fn grover_trivial_cases() {
        let uniform = QuantumState::uniform(3).unwrap();
        let mut s = uniform.clone();
        s.apply_grover_mixer(&[1, 5], 0.0).unwrap();
        for (a, b) in s.amplitudes().iter().zip(uniform.amplitudes()) {
            assert_close(*a, -*b, 1e-15);
        }
        let mut t = uniform.clone();
        t.apply_grover_mixer(&[], 1.1).unwrap();
        assert_eq!(s, t);
    }

    #[test]
    fn grover_single_target_three_qubits() {
        let mut s = QuantumState::uniform(3).unwrap();
        s.apply_grover_mixer(&[6], PI).unwrap();
        assert!((s.probabilities()[6] - 25.0 / 32.0).abs() < 1e-12);
    }

    #[test]
    fn grover_rejects_out_of_range() {
        let mut s = QuantumState::uniform(2).unwrap();
        assert!(matches!(
            s.apply_grover_mixer(&[4], PI),
            Err(Error::BasisIndex { index: 4, dim: 4 })
        ));
    }

    #[test]
    fn sample_basis_state_and_determinism() {
        let s = QuantumState::basis(3, 0).unwrap();
        let h = s.sample(100, 7).unwrap();
        assert_eq!(h.counts().len(), 1);
        assert_eq!(h.count(0), 100);

        let u = QuantumState::uniform(3).unwrap();
        assert_eq!(u.sample(500, 42).unwrap(), u.sample(500, 42).unwrap());
        assert!(matches!(u.sample(0, 1), Err(Error::NoShots)));
    }

    #[test]
    fn sample_uniform_counts_within_three_sigma() {
        let u = QuantumState::uniform(2).unwrap();
        let h = u.sample(40_000, 3).unwrap();
        let sigma = (40_000.0f64 * 0.25 * 0.75).sqrt();
        for z in 0..4 {
            assert!((h.count(z) as f64 - 10_000.0).abs() < 3.0 * sigma);
        }
        assert_eq!(h.shots(), 40_000);
    }

    #[test]
    fn expectation_examples() {
        let h = DiagonalHamiltonian::new(vec![3.0, -1.0, 4.0, 0.5]).unwrap();
        let b = QuantumState::basis(2, 2).unwrap();
        assert_eq!(b.expectation(&h).unwrap(), 4.0);
        let u = QuantumState::uniform(2).unwrap();
        assert!((u.expectation(&h).unwrap() - 6.5 / 4.0).abs() < 1e-15);
    }

    #[test]
    fn histogram_mode_tie_break() {
        let h = MeasurementHistogram::new(BTreeMap::from([(4, 50), (2, 50)])).unwrap();
        assert_eq!(h.mode(), 2);
        let h = MeasurementHistogram::new(BTreeMap::from([(3, 60), (5, 40)])).unwrap();
        assert_eq!(h.mode(), 3);
        assert!(MeasurementHistogram::new(BTreeMap::new()).is_err());
    }

    #[test]
    fn from_amplitudes_validates() {
        assert!(QuantumState::from_amplitudes(vec![c(1.0, 0.0); 3]).is_err());
        assert!(matches!(
            QuantumState::from_amplitudes(vec![c(1.0, 0.0), c(1.0, 0.0)]),
            Err(Error::NotNormalized(_))
        ));
        let s = QuantumState::normalized(vec![c(1.0, 0.0), c(0.0, 1.0)]).unwrap();
        assert!((s.norm() - 1.0).abs() < 1e-15);
    }
}
