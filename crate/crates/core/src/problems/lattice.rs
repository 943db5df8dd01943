use super::{ObjectiveSpec, Sense};

/// Energy polynomial of the PSVKMA chain in the 2D lattice, with the first
/// two bonds fixed. Each entry is `(coefficient, 1-based variable indices)`.
const PSVKMA_TERMS: [(f64, &[usize]); 47] = [
    (-1.0, &[1]),
    (15.0, &[1, 2]),
    (4.0, &[2, 3]),
    (-6.0, &[1, 2, 3]),
    (4.0, &[1, 4]),
    (-15.0, &[1, 2, 4]),
    (15.0, &[3, 4]),
    (-6.0, &[1, 3, 4]),
    (-15.0, &[2, 3, 4]),
    (28.0, &[1, 2, 3, 4]),
    (-4.0, &[2, 5]),
    (2.0, &[1, 2, 5]),
    (2.0, &[2, 3, 5]),
    (4.0, &[1, 2, 3, 5]),
    (7.0, &[4, 5]),
    (7.0, &[5, 6]),
    (2.0, &[1, 4, 5]),
    (4.0, &[2, 4, 5]),
    (9.0, &[1, 2, 4, 5]),
    (-20.0, &[3, 4, 5]),
    (4.0, &[1, 3, 4, 5]),
    (9.0, &[2, 3, 4, 5]),
    (-37.0, &[1, 2, 3, 4, 5]),
    (-4.0, &[1, 6]),
    (4.0, &[1, 2, 6]),
    (7.0, &[3, 6]),
    (2.0, &[1, 3, 6]),
    (4.0, &[2, 3, 6]),
    (9.0, &[1, 2, 3, 6]),
    (4.0, &[1, 4, 6]),
    (-18.0, &[3, 4, 6]),
    (9.0, &[1, 3, 4, 6]),
    (-33.0, &[1, 2, 3, 4, 6]),
    (2.0, &[1, 5, 6]),
    (4.0, &[2, 5, 6]),
    (-20.0, &[3, 5, 6]),
    (9.0, &[1, 2, 5, 6]),
    (4.0, &[1, 3, 5, 6]),
    (9.0, &[2, 3, 5, 6]),
    (-37.0, &[1, 2, 3, 5, 6]),
    (-18.0, &[4, 5, 6]),
    (9.0, &[1, 4, 5, 6]),
    (-33.0, &[1, 2, 4, 5, 6]),
    (53.0, &[3, 4, 5, 6]),
    (-37.0, &[1, 3, 4, 5, 6]),
    (-33.0, &[2, 3, 4, 5, 6]),
    (99.0, &[1, 2, 3, 4, 5, 6]),
];

/// Six-variable lattice protein folding energy, minimized.
pub fn lattice_protein() -> ObjectiveSpec {
    ObjectiveSpec::new("lattice-protein", 6, vec![], Sense::Minimize, |q, _| {
        PSVKMA_TERMS
            .iter()
            .filter(|(_, vars)| vars.iter().all(|&i| q[i - 1] == 1))
            .map(|(c, _)| c)
            .sum()
    })
}
