//! Reference implementations used as test oracles. Nothing here calls into
//! the simulator's fast paths; matrices are built from explicit Kronecker
//! products and exponentials from a truncated Taylor series.
#![allow(dead_code, clippy::approx_constant)]

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use num_complex::Complex64;

pub type CMatrix = DMatrix<Complex64>;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn pauli(label: char) -> CMatrix {
    let o = c(0.0, 0.0);
    let l = c(1.0, 0.0);
    let i = c(0.0, 1.0);
    match label {
        'I' => CMatrix::from_row_slice(2, 2, &[l, o, o, l]),
        'X' => CMatrix::from_row_slice(2, 2, &[o, l, l, o]),
        'Y' => CMatrix::from_row_slice(2, 2, &[o, -i, i, o]),
        'Z' => CMatrix::from_row_slice(2, 2, &[l, o, o, -l]),
        _ => panic!("bad pauli {label}"),
    }
}

/// Pauli operator acting on the given 0-based qubits (qubit 0 leftmost).
pub fn pauli_on(n: usize, ops: &[(usize, char)]) -> CMatrix {
    let mut m = CMatrix::from_element(1, 1, c(1.0, 0.0));
    for q in 0..n {
        let label = ops.iter().find(|(i, _)| *i == q).map_or('I', |(_, l)| *l);
        m = m.kronecker(&pauli(label));
    }
    m
}

pub fn x_sum(n: usize) -> CMatrix {
    let mut m = CMatrix::zeros(1 << n, 1 << n);
    for q in 0..n {
        m += pauli_on(n, &[(q, 'X')]);
    }
    m
}

/// `½ Σ (X_i X_j + Y_i Y_j)` over the given edges.
pub fn xy_sum(n: usize, edges: &[(usize, usize)]) -> CMatrix {
    let mut m = CMatrix::zeros(1 << n, 1 << n);
    for &(a, b) in edges {
        m += pauli_on(n, &[(a, 'X'), (b, 'X')]) * c(0.5, 0.0);
        m += pauli_on(n, &[(a, 'Y'), (b, 'Y')]) * c(0.5, 0.0);
    }
    m
}

pub fn ring(n: usize) -> Vec<(usize, usize)> {
    match n {
        0 | 1 => vec![],
        2 => vec![(0, 1)],
        _ => (0..n).map(|i| (i, (i + 1) % n)).collect(),
    }
}

/// `exp(-i t H)` by scaling and squaring a Taylor series.
pub fn expm_i(h: &CMatrix, t: f64) -> CMatrix {
    let a = h * c(0.0, -t);
    let norm = a.iter().map(|v| v.norm()).sum::<f64>().max(1e-300);
    let squarings = (norm.log2().ceil().max(0.0) as i32) + 4;
    let scaled = &a * c(0.5f64.powi(squarings), 0.0);
    let dim = h.nrows();
    let mut term = CMatrix::identity(dim, dim);
    let mut sum = CMatrix::identity(dim, dim);
    for k in 1..40 {
        term = &term * &scaled * c(1.0 / k as f64, 0.0);
        sum += &term;
    }
    for _ in 0..squarings {
        sum = &sum * &sum;
    }
    sum
}

pub fn apply(m: &CMatrix, psi: &[Complex64]) -> Vec<Complex64> {
    let v = nalgebra::DVector::from_column_slice(psi);
    (m * v).iter().copied().collect()
}

pub fn max_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

pub fn uniform(n: usize) -> Vec<Complex64> {
    let d = 1 << n;
    vec![c((d as f64).sqrt().recip(), 0.0); d]
}

/// `U_R U_S(θ)` as a dense matrix for target set `targets`.
pub fn grover_matrix(n: usize, targets: &[usize], theta: f64) -> CMatrix {
    let d = 1usize << n;
    let mut us = CMatrix::identity(d, d);
    for &t in targets {
        us[(t, t)] = Complex64::from_polar(1.0, theta);
    }
    let s = nalgebra::DVector::from_element(d, c((d as f64).sqrt().recip(), 0.0));
    let ur = CMatrix::identity(d, d) - (&s * s.adjoint()) * c(2.0, 0.0);
    ur * us
}

/// Probability of the marked set after `k` standard Grover iterations from
/// the uniform state: `sin²((2k + 1) θ₀)` with `sin θ₀ = sqrt(M / N)`.
pub fn grover_success(n: usize, marked: usize, k: u32) -> f64 {
    let theta0 = (marked as f64 / (1u64 << n) as f64).sqrt().asin();
    ((2 * k + 1) as f64 * theta0).sin().powi(2)
}

/// A polynomial in binary variables as `(coefficient, 1-based variables)`.
pub type Polynomial = Vec<(f64, Vec<usize>)>;

/// Reads a sum of monomials written like `- q_{1} + 15q_{1}q_{2}`.
pub fn parse_polynomial(text: &str) -> Polynomial {
    let cleaned: String = text
        .chars()
        .filter(|ch| !ch.is_whitespace() && *ch != '\\')
        .collect();
    let mut terms = Vec::new();
    let mut rest = cleaned.as_str();
    while !rest.is_empty() {
        let sign = match rest.as_bytes()[0] {
            b'-' => {
                rest = &rest[1..];
                -1.0
            }
            b'+' => {
                rest = &rest[1..];
                1.0
            }
            _ => 1.0,
        };
        let digits = rest
            .find(|ch: char| !ch.is_ascii_digit())
            .unwrap_or(rest.len());
        let coef = if digits == 0 {
            1.0
        } else {
            rest[..digits].parse::<f64>().unwrap()
        };
        rest = &rest[digits..];
        let mut vars = Vec::new();
        while let Some(tail) = rest.strip_prefix("q_{") {
            let close = tail.find('}').unwrap();
            vars.push(tail[..close].parse().unwrap());
            rest = &tail[close + 1..];
        }
        assert!(!vars.is_empty(), "malformed monomial near `{rest}`");
        terms.push((sign * coef, vars));
    }
    terms
}

/// Symbolic substitution `q_i -> (1 - Z_i) / 2`: coefficients of Pauli-Z
/// products keyed by the set of 0-based qubits they act on.
pub fn z_expansion(poly: &[(f64, Vec<usize>)]) -> BTreeMap<Vec<usize>, f64> {
    let mut out: BTreeMap<Vec<usize>, f64> = BTreeMap::new();
    for (coef, vars) in poly {
        let mut vars: Vec<usize> = vars.iter().map(|v| v - 1).collect();
        vars.sort_unstable();
        vars.dedup();
        let k = vars.len();
        // Π (1 - Z_i)/2 = 2^-k Σ_{U ⊆ vars} (-1)^{|U|} Z_U
        for subset in 0..1usize << k {
            let u: Vec<usize> = (0..k)
                .filter(|b| subset >> b & 1 == 1)
                .map(|b| vars[b])
                .collect();
            let sign = if u.len().is_multiple_of(2) { 1.0 } else { -1.0 };
            *out.entry(u).or_default() += coef * sign / (1u64 << k) as f64;
        }
    }
    out
}

/// Diagonal of `Σ c_U Z_U`, with `Z_i |z⟩ = (1 - 2 q_i) |z⟩` and `q_1` the most
/// significant bit.
pub fn z_diagonal(expansion: &BTreeMap<Vec<usize>, f64>, n: usize) -> Vec<f64> {
    (0..1usize << n)
        .map(|z| {
            expansion
                .iter()
                .map(|(u, coef)| {
                    let parity = u.iter().filter(|&&i| (z >> (n - 1 - i)) & 1 == 1).count();
                    if parity % 2 == 0 {
                        *coef
                    } else {
                        -coef
                    }
                })
                .sum()
        })
        .collect()
}

/// Selector expansion of `base` over `n` bits, in Z form: each pattern `p`
/// contributes `base(p) Π_i (1 ± Z_i)/2`.
pub fn selector_z_diagonal(n: usize, base: impl Fn(usize) -> f64) -> Vec<f64> {
    let mut expansion: BTreeMap<Vec<usize>, f64> = BTreeMap::new();
    for p in 0..1usize << n {
        let value = base(p);
        for subset in 0..1usize << n {
            let u: Vec<usize> = (0..n).filter(|b| subset >> b & 1 == 1).collect();
            // factor for qubit i: q_i -> (1 - Z_i)/2, (1 - q_i) -> (1 + Z_i)/2
            let sign: f64 = u
                .iter()
                .map(|&i| {
                    if (p >> (n - 1 - i)) & 1 == 1 {
                        -1.0
                    } else {
                        1.0
                    }
                })
                .product();
            *expansion.entry(u).or_default() += value * sign / (1u64 << n) as f64;
        }
    }
    z_diagonal(&expansion, n)
}

/// Edge-form MaxCut polynomial: each edge contributes `w (q_i + q_j - 2 q_i q_j)`.
pub fn maxcut_polynomial(edges: &[(usize, usize, f64)]) -> Polynomial {
    edges
        .iter()
        .flat_map(|&(i, j, w)| {
            [
                (w, vec![i + 1]),
                (w, vec![j + 1]),
                (-2.0 * w, vec![i + 1, j + 1]),
            ]
        })
        .collect()
}

pub const LATTICE_POLYNOMIAL: &str = r"
    - q_{1} + 15q_{1}q_{2} + 4q_{2}q_{3} - 6q_{1}q_{2}q_{3} + 4q_{1}q_{4}
    - 15q_{1}q_{2}q_{4} + 15q_{3}q_{4} - 6q_{1}q_{3}q_{4} - 15q_{2}q_{3}q_{4} + 28q_{1}q_{2}q_{3}q_{4} - 4q_{2}q_{5}
    + 2q_{1}q_{2}q_{5} + 2q_{2}q_{3}q_{5} + 4q_{1}q_{2}q_{3}q_{5} + 7q_{4}q_{5} + 7q_{5}q_{6} + 2q_{1}q_{4}q_{5}
    + 4q_{2}q_{4}q_{5} + 9q_{1}q_{2}q_{4}q_{5} - 20q_{3}q_{4}q_{5} + 4q_{1}q_{3}q_{4}q_{5} + 9q_{2}q_{3}q_{4}q_{5}
    - 37q_{1}q_{2}q_{3}q_{4}q_{5} - 4q_{1}q_{6} + 4q_{1}q_{2}q_{6} + 7q_{3}q_{6} + 2q_{1}q_{3}q_{6} + 4q_{2}q_{3}q_{6}
    + 9q_{1}q_{2}q_{3}q_{6} + 4q_{1}q_{4}q_{6} - 18q_{3}q_{4}q_{6} + 9q_{1}q_{3}q_{4}q_{6} - 33q_{1}q_{2}q_{3}q_{4}q_{6}
    + 2q_{1}q_{5}q_{6} + 4q_{2}q_{5}q_{6} - 20q_{3}q_{5}q_{6} + 9q_{1}q_{2}q_{5}q_{6} + 4q_{1}q_{3}q_{5}q_{6}
    + 9q_{2}q_{3}q_{5}q_{6} - 37q_{1}q_{2}q_{3}q_{5}q_{6} - 18q_{4}q_{5}q_{6} + 9q_{1}q_{4}q_{5}q_{6} - 33q_{1}q_{2}q_{4}q_{5}q_{6}
    + 53q_{3}q_{4}q_{5}q_{6} - 37q_{1}q_{3}q_{4}q_{5}q_{6} - 33q_{2}q_{3}q_{4}q_{5}q_{6} + 99q_{1}q_{2}q_{3}q_{4}q_{5}q_{6}
";

/// Welded beam cost written out from the formula, `w ∈ {0, 1}`, `m ∈ 1..=4`.
pub fn welded_beam_reference(w: usize, m: usize, x: &[f64]) -> f64 {
    let c1 = [0.1047, 0.0489, 0.5235, 0.5584][m - 1];
    let c2 = [0.0481, 0.0224, 0.2405, 0.2566][m - 1];
    let (h, l, t, b) = (x[0], x[1], x[2], x[3]);
    (1.0 + c1) * (w as f64 * t + l) * h * h + c2 * t * b * (14.0 + l)
}

pub fn speed_reducer_reference(x: &[f64; 7]) -> f64 {
    let [x1, x2, x3, x4, x5, x6, x7] = *x;
    0.7854 * x1 * x2 * x2 * (3.3333 * x3 * x3 + 14.9334 * x3 - 43.0934)
        - 1.508 * x1 * (x6 * x6 + x7 * x7)
        + 7.4777 * (x6 * x6 * x6 + x7 * x7 * x7)
        + 0.7854 * (x4 * x6 * x6 + x5 * x7 * x7)
}

pub fn pressure_vessel_reference(x1: f64, x2: f64, x3: f64, x4: f64) -> f64 {
    0.6224 * x1 * x3 * x4 + 1.7781 * x2 * x3 * x3 + 3.1661 * x1 * x1 * x4 + 19.84 * x1 * x1 * x3
}

/// Pearson kurtosis of a discrete distribution over indices, computed with
/// exact sums.
pub fn kurtosis_reference(weights: &[(f64, f64)]) -> f64 {
    let total: f64 = weights.iter().map(|(_, w)| w).sum();
    let mean = weights.iter().map(|(x, w)| x * w).sum::<f64>() / total;
    let m2 = weights
        .iter()
        .map(|(x, w)| w * (x - mean).powi(2))
        .sum::<f64>()
        / total;
    let m4 = weights
        .iter()
        .map(|(x, w)| w * (x - mean).powi(4))
        .sum::<f64>()
        / total;
    m4 / (m2 * m2)
}

/// Discrete uniform on `0..n`: `κ = 3(3n² - 7) / (5(n² - 1))`.
pub fn discrete_uniform_kurtosis(n: usize) -> f64 {
    let n2 = (n * n) as f64;
    3.0 * (3.0 * n2 - 7.0) / (5.0 * (n2 - 1.0))
}
