//! Mixed-integer engineering design benchmarks.
//!
//! Integer variables are encoded on qubits through a selector expansion: the
//! objective is `Σ_p Π_i s_i(p) f(decode(p), x_c)` over all bit patterns `p`,
//! with `s_i(p) = q_i` when bit `i` of `p` is set and `1 - q_i` otherwise.

use std::f64::consts::PI;

use super::{Constraint, ObjectiveSpec, Sense};
use crate::statevector::bits_of;

/// Beam length in inches.
const BEAM_LENGTH: f64 = 14.0;

/// `(C1, C2)` cost per cubic inch of weld material and bar stock for
/// steel, cast iron, aluminum, brass (`m = 1..=4`).
#[allow(clippy::approx_constant)]
pub const WELDED_BEAM_MATERIALS: [(f64, f64); 4] = [
    (0.1047, 0.0481),
    (0.0489, 0.0224),
    (0.5235, 0.2405),
    (0.5584, 0.2566),
];

pub const WELDED_BEAM_PENALTY: f64 = -100_000.0;
pub const PRESSURE_VESSEL_PENALTY: f64 = -10_000_000.0;

/// Sum of `base(p)` weighted by the selector polynomial of pattern `p`
/// evaluated at `q`.
pub fn selector_expansion(q: &[u8], mut base: impl FnMut(usize) -> f64) -> f64 {
    let n = q.len();
    (0..1usize << n)
        .map(|pattern| {
            let weight: f64 = bits_of(pattern, n)
                .iter()
                .zip(q)
                .map(|(&p, &qi)| {
                    let qi = f64::from(qi);
                    if p == 1 {
                        qi
                    } else {
                        1.0 - qi
                    }
                })
                .product();
            if weight == 0.0 {
                0.0
            } else {
                weight * base(pattern)
            }
        })
        .sum()
}

/// Welded beam cost for weld type `w ∈ {0, 1}` and material `m ∈ 1..=4`.
pub fn welded_beam_cost(w: u8, m: usize, h: f64, l: f64, t: f64, b: f64) -> f64 {
    let (c1, c2) = WELDED_BEAM_MATERIALS[m - 1];
    (1.0 + c1) * (f64::from(w) * t + l) * h * h + c2 * t * b * (BEAM_LENGTH + l)
}

/// Welded beam: `q1 -> w`, `(q2, q3) -> m = 1 + 2 q2 + q3`;
/// `x_c = (h, l, t, b)` in inches. Buckling constraint `h - b <= 0`.
pub fn welded_beam() -> ObjectiveSpec {
    let bounds = vec![(0.0625, 2.0), (0.1, 10.0), (2.0, 20.0), (0.0625, 2.0)];
    ObjectiveSpec::new("welded-beam", 3, bounds, Sense::Minimize, |q, x| {
        selector_expansion(q, |p| {
            let bits = bits_of(p, 3);
            let m = 1 + 2 * usize::from(bits[1]) + usize::from(bits[2]);
            welded_beam_cost(bits[0], m, x[0], x[1], x[2], x[3])
        })
    })
    .with_constraint(Constraint::new("buckling", |_, x| x[0] - x[3]))
    .with_penalty(WELDED_BEAM_PENALTY)
}

/// Speed reducer weight; `x3` is the number of pinion teeth.
#[allow(clippy::approx_constant)]
pub fn speed_reducer_weight(x: [f64; 7]) -> f64 {
    let [x1, x2, x3, x4, x5, x6, x7] = x;
    0.7854 * x1 * x2 * x2 * (3.3333 * x3 * x3 + 14.9334 * x3 - 43.0934)
        - 1.508 * x1 * (x6 * x6 + x7 * x7)
        + 7.4777 * (x6.powi(3) + x7.powi(3))
        + 0.7854 * (x4 * x6 * x6 + x5 * x7 * x7)
}

/// Speed reducer: `(q1..q4) -> x3 = 15 + pattern`;
/// `x_c = (x1, x2, x4, x5, x6, x7)`. Unconstrained.
pub fn speed_reducer() -> ObjectiveSpec {
    let bounds = vec![
        (2.6, 3.6),
        (0.7, 0.8),
        (7.3, 8.3),
        (7.8, 8.3),
        (2.9, 3.9),
        (5.0, 5.5),
    ];
    ObjectiveSpec::new("speed-reducer", 4, bounds, Sense::Minimize, |q, x| {
        selector_expansion(q, |p| {
            speed_reducer_weight([x[0], x[1], 15.0 + p as f64, x[2], x[3], x[4], x[5]])
        })
    })
}

/// Pressure vessel cost for shell thicknesses `x1, x2` and radius/length
/// `x3, x4`.
pub fn pressure_vessel_cost(x1: f64, x2: f64, x3: f64, x4: f64) -> f64 {
    0.6224 * x1 * x3 * x4 + 1.7781 * x2 * x3 * x3 + 3.1661 * x1 * x1 * x4 + 19.84 * x1 * x1 * x3
}

/// Pressure vessel: `(q1, q2) -> x1 = 3 + 2 q1 + q2`,
/// `(q3, q4) -> x2 = 3 + 2 q3 + q4`; `x_c = (x3, x4)`. Volume constraint
/// `-π x3² x4² - (4/3) x3³ + 1296000 <= 0`.
pub fn pressure_vessel() -> ObjectiveSpec {
    ObjectiveSpec::new(
        "pressure-vessel",
        4,
        vec![(10.0, 150.0), (10.0, 150.0)],
        Sense::Minimize,
        |q, x| {
            selector_expansion(q, |p| {
                let x1 = 3.0 + (p >> 2) as f64;
                let x2 = 3.0 + (p & 0b11) as f64;
                pressure_vessel_cost(x1, x2, x[0], x[1])
            })
        },
    )
    .with_constraint(Constraint::new("volume", |_, x| {
        let (x3, x4) = (x[0], x[1]);
        -PI * x3 * x3 * x4 * x4 - 4.0 / 3.0 * x3.powi(3) + 1_296_000.0
    }))
    .with_penalty(PRESSURE_VESSEL_PENALTY)
}
