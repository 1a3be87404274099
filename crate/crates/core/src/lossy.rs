//! Inefficient on-off detectors, modelled as an ideal detector behind a loss
//! beamsplitter of transmittivity `eta`.
//!
//! The loss channel and the click projector are applied analytically: a
//! Fock state `|k>` produces a click with probability `1 - (1 - eta)^k`, and
//! light-mode coherences do not survive the trace, so the heralded state is a
//! weighted sum over photon numbers `(k1, k2)`.

use crate::error::Result;
use crate::fock::{check_eta, mode_norm_base, LogBinomialTable};
use crate::params::{check_lambda, check_phi};
use crate::state::{condition_with_weights, three_term_success, ConditionalAtomicState, JointAmplitudeTable};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DetectorModel {
    eta: f64,
}

impl DetectorModel {
    pub fn new(eta: f64) -> Result<Self> {
        check_eta(eta)?;
        Ok(Self { eta })
    }

    pub fn ideal() -> Self {
        Self { eta: 1.0 }
    }

    pub fn eta(self) -> f64 {
        self.eta
    }

    /// Probability that `k` incident photons produce a click.
    pub fn click_probability(self, k: usize) -> f64 {
        if k == 0 {
            0.0
        } else {
            1.0 - (1.0 - self.eta).powi(k as i32)
        }
    }

    /// The efficiency bracket `1 - (1-eta)^k1 - (1-eta)^k2 + (1-eta)^(k1+k2)`
    /// weighting the `(k1, k2)` photon-number sector.
    pub fn joint_click_weight(self, k1: usize, k2: usize) -> f64 {
        let miss = 1.0 - self.eta;
        1.0 - miss.powi(k1 as i32) - miss.powi(k2 as i32) + miss.powi((k1 + k2) as i32)
    }
}

/// `sqrt(C(k,s)) nu^s sqrt(1 - nu^2)^(k - s)` with `nu = sqrt(eta)`.
pub fn loss_transform_coeff(k: usize, s: usize, eta: f64) -> Result<f64> {
    LogBinomialTable::new(k).loss_amplitude(k, s, eta)
}

/// Heralded atomic state for two lossy on-off detectors. Unnormalized; the
/// trace is the lossy success probability. At `eta = 1` this coincides with
/// [`crate::state::condition_on_clicks_ideal`].
pub fn condition_on_clicks_lossy(table: &JointAmplitudeTable, det: DetectorModel) -> ConditionalAtomicState {
    condition_with_weights(table, move |k1, k2| det.click_probability(k1) * det.click_probability(k2))
}

/// Closed-form success probability with detector efficiency `eta`.
pub fn success_probability_lossy(lambda: f64, phi: f64, eta: f64) -> Result<f64> {
    check_lambda(lambda)?;
    check_phi(phi)?;
    check_eta(eta)?;
    let t = 1.0 - phi * phi;
    let no_click = phi * phi * (1.0 - eta) + t * t;
    Ok(three_term_success(lambda, mode_norm_base(phi), no_click))
}
