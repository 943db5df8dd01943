//! Benchmark objectives and their compilation into phase-separating operators.
//!
//! Classical objectives are pseudo-Boolean in the qubit variables and compile
//! to a diagonal operator by evaluating the objective on every basis state.
//! That diagonal is exactly what the substitution `q_i -> (1 - Z_i) / 2`
//! produces, without expanding products of Pauli-Z operators.

mod design;
mod lattice;
mod maxcut;
mod pauli;

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

pub use design::{
    pressure_vessel, pressure_vessel_cost, selector_expansion, speed_reducer, speed_reducer_weight,
    welded_beam, welded_beam_cost, WELDED_BEAM_MATERIALS,
};
pub use lattice::lattice_protein;
pub use maxcut::{complete_graph, maxcut, random_weighted_k5, WeightedGraph};
pub use pauli::{
    load_pauli_hamiltonian, pauli_matrix, CoefficientGrid, PauliHamiltonianFile, PauliTerm,
};

use crate::error::{Error, Result};
use crate::statevector::{bits_of, DenseHamiltonian, DiagonalHamiltonian, PhaseHamiltonian};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sense {
    Minimize,
    Maximize,
}

impl Sense {
    /// Strict improvement of `candidate` over `incumbent`.
    pub fn is_better(self, candidate: f64, incumbent: f64) -> bool {
        match self {
            Sense::Minimize => candidate < incumbent,
            Sense::Maximize => candidate > incumbent,
        }
    }

    /// Worst representable objective value.
    pub fn worst(self) -> f64 {
        match self {
            Sense::Minimize => f64::INFINITY,
            Sense::Maximize => f64::NEG_INFINITY,
        }
    }

    /// Maps an objective value to a quantity to be minimized.
    pub fn to_loss(self, value: f64) -> f64 {
        match self {
            Sense::Minimize => value,
            Sense::Maximize => -value,
        }
    }

    pub fn flipped(self) -> Sense {
        match self {
            Sense::Minimize => Sense::Maximize,
            Sense::Maximize => Sense::Minimize,
        }
    }
}

impl fmt::Display for Sense {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sense::Minimize => "minimize",
            Sense::Maximize => "maximize",
        })
    }
}

pub type ObjectiveFn = Arc<dyn Fn(&[u8], &[f64]) -> f64 + Send + Sync>;

/// `g(q, x_c) <= 0` means feasible.
#[derive(Clone)]
pub struct Constraint {
    pub name: String,
    eval: ObjectiveFn,
}

impl Constraint {
    pub fn new(
        name: impl Into<String>,
        eval: impl Fn(&[u8], &[f64]) -> f64 + Send + Sync + 'static,
    ) -> Self {
        Self {
            name: name.into(),
            eval: Arc::new(eval),
        }
    }

    pub fn value(&self, bits: &[u8], x_c: &[f64]) -> f64 {
        (self.eval)(bits, x_c)
    }

    pub fn is_violated(&self, bits: &[u8], x_c: &[f64]) -> bool {
        self.value(bits, x_c) > 0.0
    }
}

impl fmt::Debug for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Constraint")
            .field("name", &self.name)
            .finish()
    }
}

/// A mixed binary/continuous objective.
#[derive(Clone)]
pub struct ObjectiveSpec {
    pub name: String,
    pub n_binary: usize,
    pub continuous_bounds: Vec<(f64, f64)>,
    pub sense: Sense,
    pub constraints: Vec<Constraint>,
    /// Acquisition value assigned to points that violate a constraint.
    pub penalty_value: Option<f64>,
    evaluate: ObjectiveFn,
}

impl ObjectiveSpec {
    pub fn new(
        name: impl Into<String>,
        n_binary: usize,
        continuous_bounds: Vec<(f64, f64)>,
        sense: Sense,
        evaluate: impl Fn(&[u8], &[f64]) -> f64 + Send + Sync + 'static,
    ) -> Self {
        debug_assert!(continuous_bounds.iter().all(|(lo, hi)| lo < hi));
        Self {
            name: name.into(),
            n_binary,
            continuous_bounds,
            sense,
            constraints: Vec::new(),
            penalty_value: None,
            evaluate: Arc::new(evaluate),
        }
    }

    pub fn with_constraint(mut self, constraint: Constraint) -> Self {
        self.constraints.push(constraint);
        self
    }

    pub fn with_penalty(mut self, penalty: f64) -> Self {
        self.penalty_value = Some(penalty);
        self
    }

    pub fn evaluate(&self, bits: &[u8], x_c: &[f64]) -> f64 {
        (self.evaluate)(bits, x_c)
    }

    /// The same problem with negated objective and opposite sense.
    pub fn negated(&self) -> Self {
        let inner = Arc::clone(&self.evaluate);
        Self {
            name: format!("neg-{}", self.name),
            sense: self.sense.flipped(),
            evaluate: Arc::new(move |q, x| -inner(q, x)),
            ..self.clone()
        }
    }

    pub fn check_bounds(&self, x_c: &[f64]) -> Result<()> {
        check_bounds(&self.continuous_bounds, x_c)
    }

    pub fn is_feasible(&self, bits: &[u8], x_c: &[f64]) -> bool {
        self.constraints.iter().all(|c| !c.is_violated(bits, x_c))
    }

    /// True when some binary assignment is feasible at `x_c`.
    pub fn continuous_feasible(&self, x_c: &[f64]) -> bool {
        if self.constraints.is_empty() {
            return true;
        }
        (0..1usize << self.n_binary).any(|z| self.is_feasible(&bits_of(z, self.n_binary), x_c))
    }
}

impl fmt::Debug for ObjectiveSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ObjectiveSpec")
            .field("name", &self.name)
            .field("n_binary", &self.n_binary)
            .field("continuous_bounds", &self.continuous_bounds)
            .field("sense", &self.sense)
            .field("constraints", &self.constraints)
            .field("penalty_value", &self.penalty_value)
            .finish()
    }
}

fn check_bounds(bounds: &[(f64, f64)], x_c: &[f64]) -> Result<()> {
    if x_c.len() != bounds.len() {
        return Err(Error::Dimension {
            expected: bounds.len(),
            found: x_c.len(),
        });
    }
    for (index, (&value, &(lower, upper))) in x_c.iter().zip(bounds).enumerate() {
        if !(lower..=upper).contains(&value) {
            return Err(Error::OutOfBounds {
                index,
                value,
                lower,
                upper,
            });
        }
    }
    Ok(())
}

/// Objective value of every basis state at fixed continuous variables.
pub fn compile_diagonal(spec: &ObjectiveSpec, x_c: &[f64]) -> Result<DiagonalHamiltonian> {
    spec.check_bounds(x_c)?;
    let n = spec.n_binary;
    let values = (0..1usize << n)
        .map(|z| spec.evaluate(&bits_of(z, n), x_c))
        .collect();
    DiagonalHamiltonian::new(values)
}

/// Exhaustive optimum over all binary assignments; ties go to the smaller index.
pub fn brute_force_optimum(spec: &ObjectiveSpec, x_c: &[f64]) -> Result<(usize, f64)> {
    let h = compile_diagonal(spec, x_c)?;
    Ok(best_entry(h.values(), spec.sense))
}

pub(crate) fn best_entry(values: &[f64], sense: Sense) -> (usize, f64) {
    let mut best = (0, values[0]);
    for (z, &v) in values.iter().enumerate().skip(1) {
        if sense.is_better(v, best.1) {
            best = (z, v);
        }
    }
    best
}

/// HeH⁺ potential energy: bond length is continuous, the orbital
/// configuration lives on the qubits of a tapered molecular Hamiltonian.
#[derive(Debug, Clone)]
pub struct MolecularProblem {
    pub name: String,
    pub grid: CoefficientGrid,
    pub bond_length_bounds: (f64, f64),
}

impl MolecularProblem {
    pub fn hamiltonian_at(&self, bond_length: f64) -> Result<DenseHamiltonian> {
        self.grid.hamiltonian_at(bond_length)
    }
}

const HEH_PLUS_GRID: &str = include_str!("../../data/heh_plus.txt");

pub fn heh_plus() -> Result<MolecularProblem> {
    Ok(MolecularProblem {
        name: "heh-plus".into(),
        grid: CoefficientGrid::parse(HEH_PLUS_GRID, "heh_plus.txt")?,
        bond_length_bounds: (0.1, 3.0),
    })
}

/// Any of the benchmark problems.
#[derive(Debug, Clone)]
pub enum Problem {
    Classical(ObjectiveSpec),
    Molecular(MolecularProblem),
}

pub const PROBLEM_IDS: [&str; 9] = [
    "maxcut-k6",
    "wmaxcut-k5-1",
    "wmaxcut-k5-2",
    "wmaxcut-k5-3",
    "lattice-protein",
    "heh-plus",
    "welded-beam",
    "speed-reducer",
    "pressure-vessel",
];

/// Seeds of the regenerated weighted K5 instances.
pub const WEIGHTED_K5_SEEDS: [u64; 3] = [1, 2, 3];

impl Problem {
    pub fn by_id(id: &str) -> Result<Self> {
        let spec = match id {
            "maxcut-k6" => maxcut(&complete_graph(6), false),
            "wmaxcut-k5-1" => maxcut(&random_weighted_k5(WEIGHTED_K5_SEEDS[0]), true),
            "wmaxcut-k5-2" => maxcut(&random_weighted_k5(WEIGHTED_K5_SEEDS[1]), true),
            "wmaxcut-k5-3" => maxcut(&random_weighted_k5(WEIGHTED_K5_SEEDS[2]), true),
            "lattice-protein" => lattice_protein(),
            "welded-beam" => welded_beam(),
            "speed-reducer" => speed_reducer(),
            "pressure-vessel" => pressure_vessel(),
            "heh-plus" => return Ok(Problem::Molecular(heh_plus()?)),
            other => return Err(Error::UnknownProblem(other.to_string())),
        };
        Ok(Problem::Classical(ObjectiveSpec {
            name: id.to_string(),
            ..spec
        }))
    }

    pub fn name(&self) -> &str {
        match self {
            Problem::Classical(spec) => &spec.name,
            Problem::Molecular(m) => &m.name,
        }
    }

    pub fn n_qubits(&self) -> usize {
        match self {
            Problem::Classical(spec) => spec.n_binary,
            Problem::Molecular(m) => m.grid.n_qubits,
        }
    }

    pub fn continuous_bounds(&self) -> Vec<(f64, f64)> {
        match self {
            Problem::Classical(spec) => spec.continuous_bounds.clone(),
            Problem::Molecular(m) => vec![m.bond_length_bounds],
        }
    }

    pub fn sense(&self) -> Sense {
        match self {
            Problem::Classical(spec) => spec.sense,
            Problem::Molecular(_) => Sense::Minimize,
        }
    }

    pub fn penalty_value(&self) -> Option<f64> {
        match self {
            Problem::Classical(spec) => spec.penalty_value,
            Problem::Molecular(_) => None,
        }
    }

    pub fn continuous_feasible(&self, x_c: &[f64]) -> bool {
        match self {
            Problem::Classical(spec) => spec.continuous_feasible(x_c),
            Problem::Molecular(_) => true,
        }
    }

    pub fn is_feasible(&self, bits: &[u8], x_c: &[f64]) -> bool {
        match self {
            Problem::Classical(spec) => spec.is_feasible(bits, x_c),
            Problem::Molecular(_) => true,
        }
    }

    /// Phase-separating operator at the given continuous variables.
    pub fn compile(&self, x_c: &[f64]) -> Result<PhaseHamiltonian> {
        match self {
            Problem::Classical(spec) => compile_diagonal(spec, x_c).map(PhaseHamiltonian::Diagonal),
            Problem::Molecular(m) => {
                check_bounds(&[m.bond_length_bounds], x_c)?;
                m.hamiltonian_at(x_c[0]).map(PhaseHamiltonian::Dense)
            }
        }
    }
}
