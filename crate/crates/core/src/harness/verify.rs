use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::problems::{
    best_entry, compile_diagonal, pressure_vessel_cost, speed_reducer_weight, welded_beam_cost,
    Problem, Sense,
};
use crate::statevector::bits_of;

pub const SELECTOR_DRAWS: usize = 100;
pub const SELECTOR_TOLERANCE: f64 = 1e-12;
const SELECTOR_SEED: u64 = 2024;

#[derive(Debug, Clone, PartialEq)]
pub struct SelectorCheck {
    pub patterns: usize,
    pub draws: usize,
    pub max_relative_error: f64,
}

impl SelectorCheck {
    pub fn passed(&self) -> bool {
        self.max_relative_error <= SELECTOR_TOLERANCE
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub problem: String,
    pub n_qubits: usize,
    pub sense: Sense,
    /// Continuous variables the brute force was run at, if any.
    pub x_c: Vec<f64>,
    pub optimum: f64,
    pub optimizers: Vec<String>,
    pub selector: Option<SelectorCheck>,
}

/// Direct (non-selector) objective of an appendix problem for integer
/// pattern `p`.
fn direct_objective(problem: &str, p: usize, x: &[f64]) -> Option<f64> {
    Some(match problem {
        "welded-beam" => {
            let w = (p >> 2) as u8;
            let m = 1 + (p & 0b11);
            welded_beam_cost(w, m, x[0], x[1], x[2], x[3])
        }
        "speed-reducer" => {
            speed_reducer_weight([x[0], x[1], 15.0 + p as f64, x[2], x[3], x[4], x[5]])
        }
        "pressure-vessel" => {
            pressure_vessel_cost(3.0 + (p >> 2) as f64, 3.0 + (p & 0b11) as f64, x[0], x[1])
        }
        _ => return None,
    })
}

/// Compares the selector-expanded objective against the direct formula on
/// every bit pattern at [`SELECTOR_DRAWS`] uniform draws of `x_c`.
pub fn selector_check(problem: &Problem) -> Option<SelectorCheck> {
    let Problem::Classical(spec) = problem else {
        return None;
    };
    direct_objective(&spec.name, 0, &vec![1.0; spec.continuous_bounds.len()])?;
    let mut rng = ChaCha8Rng::seed_from_u64(SELECTOR_SEED);
    let n = spec.n_binary;
    let mut max_relative_error = 0.0f64;
    for _ in 0..SELECTOR_DRAWS {
        let x: Vec<f64> = spec
            .continuous_bounds
            .iter()
            .map(|(lo, hi)| rng.random_range(*lo..=*hi))
            .collect();
        for p in 0..1usize << n {
            let expanded = spec.evaluate(&bits_of(p, n), &x);
            let direct = direct_objective(&spec.name, p, &x)?;
            let err = (expanded - direct).abs() / direct.abs().max(f64::MIN_POSITIVE);
            max_relative_error = max_relative_error.max(err);
        }
    }
    Some(SelectorCheck {
        patterns: 1 << n,
        draws: SELECTOR_DRAWS,
        max_relative_error,
    })
}

fn bitstring(z: usize, n: usize) -> String {
    bits_of(z, n).iter().map(|b| char::from(b'0' + b)).collect()
}

/// Brute-force optimum over all basis states. Problems with continuous
/// variables are evaluated at the center of their bounds; HeH⁺ reports the
/// lowest diagonal entry over its bond-length grid.
pub fn verify(problem_id: &str) -> Result<VerifyReport> {
    let problem = Problem::by_id(problem_id)?;
    let n = problem.n_qubits();
    let sense = problem.sense();
    let (x_c, values) = match &problem {
        Problem::Classical(spec) => {
            let x_c: Vec<f64> = spec
                .continuous_bounds
                .iter()
                .map(|(lo, hi)| 0.5 * (lo + hi))
                .collect();
            let values = compile_diagonal(spec, &x_c)?.values().to_vec();
            (x_c, values)
        }
        Problem::Molecular(m) => {
            let mut best: Option<(f64, Vec<f64>)> = None;
            for (length, _) in &m.grid.points {
                let diag = m.hamiltonian_at(*length)?.diagonal();
                let low = best_entry(&diag, Sense::Minimize).1;
                if best
                    .as_ref()
                    .is_none_or(|(_, d)| low < best_entry(d, Sense::Minimize).1)
                {
                    best = Some((*length, diag));
                }
            }
            let (length, diag) = best.expect("grid is nonempty");
            (vec![length], diag)
        }
    };
    let (_, optimum) = best_entry(&values, sense);
    let optimizers = values
        .iter()
        .enumerate()
        .filter(|(z, &v)| v == optimum && problem.is_feasible(&bits_of(*z, n), &x_c))
        .map(|(z, _)| bitstring(z, n))
        .collect();
    Ok(VerifyReport {
        problem: problem_id.to_string(),
        n_qubits: n,
        sense,
        x_c,
        optimum,
        optimizers,
        selector: selector_check(&problem),
    })
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "problem: {}", self.problem)?;
        writeln!(f, "qubits: {}", self.n_qubits)?;
        writeln!(f, "sense: {}", self.sense)?;
        if !self.x_c.is_empty() {
            let xs: Vec<String> = self.x_c.iter().map(|v| v.to_string()).collect();
            writeln!(f, "x_c: [{}]", xs.join(", "))?;
        }
        writeln!(f, "optimum: {}", self.optimum)?;
        writeln!(f, "optimizers: {}", self.optimizers.join(" "))?;
        if let Some(check) = &self.selector {
            writeln!(
                f,
                "selector equivalence: {} over {} patterns x {} x_c draws (max relative error {:e})",
                if check.passed() { "PASS" } else { "FAIL" },
                check.patterns,
                check.draws,
                check.max_relative_error
            )?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_optima() {
        let k6 = verify("maxcut-k6").unwrap();
        assert_eq!(k6.optimum, 9.0);
        assert_eq!(k6.optimizers.len(), 20);
        assert!(k6.selector.is_none());
        let lattice = verify("lattice-protein").unwrap();
        assert_eq!(lattice.optimum, -6.0);
        assert_eq!(lattice.optimizers, vec!["001011".to_string()]);
    }

    #[test]
    fn selector_checks_pass() {
        for (id, patterns) in [
            ("welded-beam", 8),
            ("speed-reducer", 16),
            ("pressure-vessel", 16),
        ] {
            let report = verify(id).unwrap();
            let check = report.selector.clone().unwrap();
            assert_eq!(check.patterns, patterns);
            assert!(check.passed(), "{id}: {check:?}");
            assert!(report.to_string().contains("selector equivalence: PASS"));
        }
    }

    #[test]
    fn molecular_report() {
        let report = verify("heh-plus").unwrap();
        assert_eq!(report.n_qubits, 2);
        assert!(report.optimum < -2.0);
    }
}
