use serde::{Deserialize, Serialize};

use crate::statevector::MeasurementHistogram;

/// Variance below which the measured distribution counts as a point mass.
pub const DEGENERATE_VARIANCE: f64 = 1e-12;

/// Pearson kurtosis of the measured basis-index distribution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KurtosisEstimate {
    /// `ξ / σ⁴`; set to 0 when `degenerate`.
    pub kappa: f64,
    pub degenerate: bool,
}

/// Sample kurtosis over the integer outcomes `z` of a histogram.
pub fn kurtosis(hist: &MeasurementHistogram) -> KurtosisEstimate {
    let mean: f64 = hist.frequencies().map(|(z, p)| p * z as f64).sum();
    let (var, fourth) = hist.frequencies().fold((0.0, 0.0), |(v, f), (z, p)| {
        let d2 = (z as f64 - mean).powi(2);
        (v + p * d2, f + p * d2 * d2)
    });
    if var < DEGENERATE_VARIANCE {
        KurtosisEstimate {
            kappa: 0.0,
            degenerate: true,
        }
    } else {
        KurtosisEstimate {
            kappa: fourth / (var * var),
            degenerate: false,
        }
    }
}
