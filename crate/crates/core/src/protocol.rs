//! End-to-end evaluation of one protocol point: squeezed input, beamsplitter,
//! heralding on both detectors, and the entanglement of the heralded state.

use crate::error::Result;
use crate::lossy::{condition_on_clicks_lossy, success_probability_lossy, DetectorModel};
use crate::metrics::{negativity, partial_transpose_blocks, EntanglementReport};
use crate::params::{check_lambda, check_phi};
use crate::state::{apply_effective_beamsplitter, build_tmss, ConditionalAtomicState};

/// Unnormalized heralded atomic state.
pub fn heralded_state(lambda: f64, phi: f64, eta: f64, n_max: usize) -> Result<ConditionalAtomicState> {
    let det = DetectorModel::new(eta)?;
    let table = apply_effective_beamsplitter(&build_tmss(lambda, n_max)?, phi)?;
    Ok(condition_on_clicks_lossy(&table, det))
}

/// Entanglement of the heralded state, or `None` when the heralding event
/// has zero probability.
pub fn heralded_entanglement(lambda: f64, phi: f64, eta: f64, n_max: usize) -> Result<Option<EntanglementReport>> {
    let state = heralded_state(lambda, phi, eta, n_max)?;
    let trace = state.trace();
    if trace <= 0.0 || trace.is_nan() {
        return Ok(None);
    }
    let blocks = partial_transpose_blocks(&state.normalized()?)?;
    negativity(&blocks).map(Some)
}

/// Numerical entanglement of the truncated, renormalized squeezed input.
pub fn tmss_entanglement(lambda: f64, n_max: usize) -> Result<EntanglementReport> {
    let state = build_tmss(lambda, n_max)?.density().normalized()?;
    negativity(&partial_transpose_blocks(&state)?)
}

#[derive(Debug, Clone, PartialEq)]
pub struct PointOutcome {
    /// Closed-form success probability.
    pub success: f64,
    /// Trace of the truncated heralded state.
    pub success_trace: f64,
    /// `None` when `success` is zero.
    pub report: Option<EntanglementReport>,
}

/// Evaluates one point at `n_max`, with the convergence delta taken against
/// `n_max / 2`.
pub fn evaluate_point(lambda: f64, phi: f64, eta: f64, n_max: usize) -> Result<PointOutcome> {
    check_lambda(lambda)?;
    check_phi(phi)?;
    let success = success_probability_lossy(lambda, phi, eta)?;
    let state = heralded_state(lambda, phi, eta, n_max)?;
    let success_trace = state.trace();
    if success == 0.0 || success_trace <= 0.0 || success_trace.is_nan() {
        return Ok(PointOutcome { success, success_trace, report: None });
    }
    let mut report = negativity(&partial_transpose_blocks(&state.normalized()?)?)?;
    if let Some(coarse) = heralded_entanglement(lambda, phi, eta, (n_max / 2).max(1))? {
        report.convergence_delta = Some((report.log_negativity - coarse.log_negativity).abs());
    }
    Ok(PointOutcome { success, success_trace, report: Some(report) })
}
