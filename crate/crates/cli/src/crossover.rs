//! Search for the squeezing level above which heralding no longer increases
//! the log-negativity.

use ensconc_core::{heralded_entanglement, tmss_negativity_closed};
use rayon::prelude::*;
use serde::Serialize;

use crate::Result;

pub const SCAN_MIN: f64 = 0.01;
pub const SCAN_MAX: f64 = 0.99;
pub const SCAN_STEP: f64 = 0.02;
pub const TOLERANCE: f64 = 1e-3;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Crossover {
    pub lambda_star: f64,
    pub lower: f64,
    pub upper: f64,
    /// Gain `E_N_out - E_N_tmss` at `lower` (positive) and `upper` (not positive).
    pub gain_lower: f64,
    pub gain_upper: f64,
}

/// `E_N_out - E_N_tmss`, or `None` if the heralding event is impossible.
pub fn entanglement_gain(lambda: f64, phi: f64, eta: f64, n_max: usize) -> Result<Option<f64>> {
    let tmss = tmss_negativity_closed(lambda)?.1;
    Ok(heralded_entanglement(lambda, phi, eta, n_max)?.map(|r| r.log_negativity - tmss))
}

/// Scans `(0.01, 0.99)` for the first sign change of the gain from positive
/// to non-positive, then bisects it down to `1e-3`.
pub fn find_crossover(phi: f64, eta: f64, n_max: usize) -> Result<Option<Crossover>> {
    crate::config::check_phi(phi)?;
    crate::config::check_eta(eta)?;
    crate::config::check_n_max(n_max)?;
    let steps = ((SCAN_MAX - SCAN_MIN) / SCAN_STEP).round() as usize;
    let grid: Vec<f64> = (0..=steps).map(|i| SCAN_MIN + SCAN_STEP * i as f64).collect();
    let gains = grid
        .par_iter()
        .map(|&l| entanglement_gain(l, phi, eta, n_max))
        .collect::<Result<Vec<_>>>()?;

    let bracket = grid.windows(2).zip(gains.windows(2)).find_map(|(l, g)| match (g[0], g[1]) {
        (Some(a), Some(b)) if a > 0.0 && b <= 0.0 => Some((l[0], a, l[1], b)),
        _ => None,
    });
    let Some((mut lo, mut g_lo, mut hi, mut g_hi)) = bracket else {
        return Ok(None);
    };
    while hi - lo > TOLERANCE {
        let mid = 0.5 * (lo + hi);
        match entanglement_gain(mid, phi, eta, n_max)? {
            Some(g) if g > 0.0 => (lo, g_lo) = (mid, g),
            Some(g) => (hi, g_hi) = (mid, g),
            None => return Ok(None),
        }
    }
    Ok(Some(Crossover { lambda_star: 0.5 * (lo + hi), lower: lo, upper: hi, gain_lower: g_lo, gain_upper: g_hi }))
}
