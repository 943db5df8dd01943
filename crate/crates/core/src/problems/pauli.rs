//! Pauli-string Hamiltonian files.
//!
//! Term file: one `<coefficient> <pauli string>` per line, `#` starts a
//! comment, blank lines are skipped. Grid file: a `n_qubits=<n>` header, then
//! blocks introduced by `L=<bond length>` each followed by term lines.

use std::collections::BTreeMap;
use std::path::Path;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::statevector::{DenseHamiltonian, MAX_QUBITS};

#[derive(Debug, Clone, PartialEq)]
pub struct PauliTerm {
    pub coefficient: f64,
    pub paulis: String,
}

/// 2×2 matrix of `I`, `X`, `Y` or `Z`.
pub fn pauli_matrix(label: char) -> Option<DMatrix<Complex64>> {
    let (o, l, i) = (
        Complex64::new(0.0, 0.0),
        Complex64::new(1.0, 0.0),
        Complex64::new(0.0, 1.0),
    );
    let entries = match label {
        'I' => [l, o, o, l],
        'X' => [o, l, l, o],
        'Y' => [o, -i, i, o],
        'Z' => [l, o, o, -l],
        _ => return None,
    };
    Some(DMatrix::from_row_slice(2, 2, &entries))
}

impl PauliTerm {
    /// Tensor product of the named Pauli matrices, leftmost factor on `q1`.
    pub fn matrix(&self) -> DMatrix<Complex64> {
        self.paulis.chars().fold(
            DMatrix::from_element(1, 1, Complex64::new(self.coefficient, 0.0)),
            |acc, p| acc.kronecker(&pauli_matrix(p).expect("validated pauli label")),
        )
    }
}

fn parse_error(source: &str, line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        path: source.to_string(),
        line,
        message: message.into(),
    }
}

fn strip_comment(line: &str) -> &str {
    line.split('#').next().unwrap_or("").trim()
}

fn parse_term(text: &str, source: &str, line: usize) -> Result<PauliTerm> {
    let mut fields = text.split_whitespace();
    let (Some(coeff), Some(paulis), None) = (fields.next(), fields.next(), fields.next()) else {
        return Err(parse_error(
            source,
            line,
            "expected `<coefficient> <pauli string>`",
        ));
    };
    let coefficient: f64 = match coeff.parse() {
        Ok(c) => c,
        Err(_) if coeff.contains(['j', 'i', 'J']) && !coeff.contains("inf") => {
            return Err(parse_error(
                source,
                line,
                format!("coefficient `{coeff}` is not real"),
            ))
        }
        Err(_) => {
            return Err(parse_error(
                source,
                line,
                format!("cannot parse coefficient `{coeff}`"),
            ))
        }
    };
    if !coefficient.is_finite() {
        return Err(parse_error(source, line, "coefficient is not finite"));
    }
    if let Some(bad) = paulis.chars().find(|c| !matches!(c, 'I' | 'X' | 'Y' | 'Z')) {
        return Err(parse_error(
            source,
            line,
            format!("invalid Pauli label `{bad}`"),
        ));
    }
    if paulis.len() > MAX_QUBITS {
        return Err(parse_error(
            source,
            line,
            format!("Pauli string longer than {MAX_QUBITS} qubits"),
        ));
    }
    Ok(PauliTerm {
        coefficient,
        paulis: paulis.to_string(),
    })
}

fn check_length(term: &PauliTerm, n_qubits: usize, source: &str, line: usize) -> Result<()> {
    if term.paulis.len() == n_qubits {
        Ok(())
    } else {
        Err(parse_error(
            source,
            line,
            format!(
                "Pauli string `{}` has length {}, expected {n_qubits}",
                term.paulis,
                term.paulis.len()
            ),
        ))
    }
}

fn terms_to_hamiltonian(n_qubits: usize, terms: &[PauliTerm]) -> Result<DenseHamiltonian> {
    if terms.is_empty() {
        return Err(Error::EmptyHamiltonian);
    }
    let dim = 1usize << n_qubits;
    let matrix = terms
        .iter()
        .fold(DMatrix::zeros(dim, dim), |acc, t| acc + t.matrix());
    DenseHamiltonian::new(matrix)
}

/// A parsed list of Pauli terms on a fixed number of qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct PauliHamiltonianFile {
    pub n_qubits: usize,
    pub terms: Vec<PauliTerm>,
}

impl PauliHamiltonianFile {
    pub fn parse(text: &str, source: &str) -> Result<Self> {
        let mut terms: Vec<PauliTerm> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = strip_comment(raw);
            if line.is_empty() {
                continue;
            }
            let term = parse_term(line, source, idx + 1)?;
            if let Some(first) = terms.first() {
                check_length(&term, first.paulis.len(), source, idx + 1)?;
            }
            terms.push(term);
        }
        if terms.is_empty() {
            return Err(Error::EmptyHamiltonian);
        }
        Ok(Self {
            n_qubits: terms[0].paulis.len(),
            terms,
        })
    }

    pub fn to_hamiltonian(&self) -> Result<DenseHamiltonian> {
        terms_to_hamiltonian(self.n_qubits, &self.terms)
    }
}

pub fn load_pauli_hamiltonian(path: impl AsRef<Path>) -> Result<DenseHamiltonian> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    PauliHamiltonianFile::parse(&text, &path.display().to_string())?.to_hamiltonian()
}

/// Pauli coefficients tabulated over a bond-length grid, linearly
/// interpolated in between.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientGrid {
    pub n_qubits: usize,
    /// Sorted by bond length; each entry maps Pauli string to coefficient.
    pub points: Vec<(f64, BTreeMap<String, f64>)>,
}

impl CoefficientGrid {
    pub fn parse(text: &str, source: &str) -> Result<Self> {
        let mut n_qubits = None;
        let mut points: Vec<(f64, BTreeMap<String, f64>)> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let lineno = idx + 1;
            let line = strip_comment(raw);
            if line.is_empty() {
                continue;
            }
            if let Some(value) = line.strip_prefix("n_qubits=") {
                let n: usize = value
                    .trim()
                    .parse()
                    .map_err(|_| parse_error(source, lineno, "invalid n_qubits header"))?;
                if !(1..=MAX_QUBITS).contains(&n) {
                    return Err(parse_error(source, lineno, "n_qubits out of range"));
                }
                n_qubits = Some(n);
                continue;
            }
            let Some(n) = n_qubits else {
                return Err(parse_error(source, lineno, "missing `n_qubits=` header"));
            };
            if let Some(value) = line.strip_prefix("L=") {
                let length: f64 = value
                    .trim()
                    .parse()
                    .map_err(|_| parse_error(source, lineno, "invalid bond length"))?;
                if let Some((prev, _)) = points.last() {
                    if length <= *prev {
                        return Err(parse_error(
                            source,
                            lineno,
                            "bond lengths must be strictly increasing",
                        ));
                    }
                }
                points.push((length, BTreeMap::new()));
                continue;
            }
            let Some((_, terms)) = points.last_mut() else {
                return Err(parse_error(source, lineno, "term before first `L=` block"));
            };
            let term = parse_term(line, source, lineno)?;
            check_length(&term, n, source, lineno)?;
            *terms.entry(term.paulis).or_insert(0.0) += term.coefficient;
        }
        let n_qubits = n_qubits.ok_or_else(|| parse_error(source, 0, "empty grid file"))?;
        if points.is_empty() {
            return Err(Error::EmptyHamiltonian);
        }
        if let Some((length, _)) = points.iter().find(|(_, t)| t.is_empty()) {
            return Err(parse_error(
                source,
                0,
                format!("block L={length} has no terms"),
            ));
        }
        Ok(Self { n_qubits, points })
    }

    pub fn range(&self) -> (f64, f64) {
        (self.points[0].0, self.points[self.points.len() - 1].0)
    }

    /// Interpolated terms at `bond_length`, clamped to the grid range.
    pub fn terms_at(&self, bond_length: f64) -> Vec<PauliTerm> {
        let last = self.points.len() - 1;
        let upper = self
            .points
            .partition_point(|(l, _)| *l < bond_length)
            .clamp(1.min(last), last);
        let lower = upper.saturating_sub(1);
        let (l0, t0) = &self.points[lower];
        let (l1, t1) = &self.points[upper];
        let weight = if upper == lower {
            0.0
        } else {
            ((bond_length - l0) / (l1 - l0)).clamp(0.0, 1.0)
        };
        let mut labels: Vec<&String> = t0.keys().chain(t1.keys()).collect();
        labels.sort();
        labels.dedup();
        labels
            .into_iter()
            .map(|label| {
                let a = t0.get(label).copied().unwrap_or(0.0);
                let b = t1.get(label).copied().unwrap_or(0.0);
                PauliTerm {
                    coefficient: a + weight * (b - a),
                    paulis: label.clone(),
                }
            })
            .collect()
    }

    pub fn hamiltonian_at(&self, bond_length: f64) -> Result<DenseHamiltonian> {
        terms_to_hamiltonian(self.n_qubits, &self.terms_at(bond_length))
    }
}
