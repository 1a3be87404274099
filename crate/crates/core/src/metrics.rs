//! Partial transposition and the negativity measures.
//!
//! For states with the coherence pattern `a - b = c - d`, the partial
//! transpose on the second mode only couples `(a, b)` to `(c, d)` when
//! `a + b = c + d`, so it splits into independent blocks labelled by the total
//! excitation number `N`.

use rayon::prelude::*;

use crate::eigen::{symmetric_eigenvalues, SymMatrix};
use crate::error::{domain, integrity, Result};
use crate::params::check_lambda;
use crate::state::ConditionalAtomicState;

/// Eigenvalues smaller than this fraction of their block's spectral radius
/// are treated as zero.
pub const EIGEN_FLOOR: f64 = 1e-12;

/// One block of the partial transpose, on the basis `|a>|N - a>` with
/// `a = first, ..., first + dim - 1`.
#[derive(Debug, Clone)]
pub struct PtBlock {
    pub total: usize,
    pub first: usize,
    pub matrix: SymMatrix,
}

#[derive(Debug, Clone)]
pub struct PtBlockSet {
    n_max: usize,
    normalized: bool,
    blocks: Vec<PtBlock>,
}

impl PtBlockSet {
    pub fn n_max(&self) -> usize {
        self.n_max
    }

    /// Blocks for `N = 0, 1, ..., 2 n_max`. Block `N` has dimension `N + 1`
    /// for `N <= n_max`; above that the truncation removes basis states.
    pub fn blocks(&self) -> &[PtBlock] {
        &self.blocks
    }

    pub fn trace(&self) -> f64 {
        self.blocks.iter().map(|b| b.matrix.trace()).sum()
    }
}

pub fn partial_transpose_blocks(state: &ConditionalAtomicState) -> Result<PtBlockSet> {
    let n_max = state.n_max();
    let blocks = (0..=2 * n_max)
        .into_par_iter()
        .map(|total| {
            let first = total.saturating_sub(n_max);
            let last = total.min(n_max);
            let dim = last - first + 1;
            // <a, N-a| rho^PT |c, N-c> = rho[(a, N-c), (c, N-a)]
            let matrix = SymMatrix::from_fn(dim, |i, j| {
                let (a, c) = (first + i, first + j);
                state.get(a, total - c, c, total - a)
            });
            matrix
                .check_symmetric()
                .map_err(|e| integrity(format!("partial transpose block N = {total}: {e}")))?;
            Ok(PtBlock { total, first, matrix })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PtBlockSet { n_max, normalized: state.is_normalized(), blocks })
}

#[derive(Debug, Clone, PartialEq)]
pub struct EntanglementReport {
    pub negativity: f64,
    pub log_negativity: f64,
    /// Sum of `|negative eigenvalues|` per block, indexed by `N`.
    pub per_block_negative_mass: Vec<f64>,
    pub n_max_used: usize,
    /// `|E_N(n_max) - E_N(n_max / 2)|`, when it was computed.
    pub convergence_delta: Option<f64>,
}

/// Negativity as the summed magnitude of all negative partial-transpose
/// eigenvalues; the log-negativity is `ln(1 + 2 N)`.
pub fn negativity(blocks: &PtBlockSet) -> Result<EntanglementReport> {
    if !blocks.normalized {
        return Err(domain("negativity requires a normalized state"));
    }
    let per_block = blocks
        .blocks
        .par_iter()
        .map(|b| {
            let values = symmetric_eigenvalues(&b.matrix)?;
            let radius = values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
            let floor = EIGEN_FLOOR * radius;
            Ok(values.iter().filter(|&&v| v < -floor).map(|v| -v).sum::<f64>())
        })
        .collect::<Result<Vec<f64>>>()?;
    // Fixed summation order keeps results bit-reproducible.
    let negativity: f64 = per_block.iter().sum();
    Ok(EntanglementReport {
        negativity,
        log_negativity: (2.0 * negativity).ln_1p(),
        per_block_negative_mass: per_block,
        n_max_used: blocks.n_max,
        convergence_delta: None,
    })
}

/// Negativity and log-negativity of the untruncated two-mode squeezed state:
/// `lambda / (1 - lambda)` and `ln(1 + lambda) - ln(1 - lambda)`.
pub fn tmss_negativity_closed(lambda: f64) -> Result<(f64, f64)> {
    check_lambda(lambda)?;
    Ok((lambda / (1.0 - lambda), lambda.ln_1p() - (-lambda).ln_1p()))
}
