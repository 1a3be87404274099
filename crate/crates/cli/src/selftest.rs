//! Cross-checks the analytic heralded states against the dense oracle.

use ensconc_core::oracle::{dense_negativity, oracle_conditional_state};
use ensconc_core::{
    apply_effective_beamsplitter, build_tmss, condition_on_clicks_ideal, condition_on_clicks_lossy, negativity,
    partial_transpose_blocks, ConditionalAtomicState, DetectorModel,
};

use crate::Result;

pub const ORACLE_LAMBDAS: [f64; 3] = [0.2, 0.5, 0.8];
pub const ORACLE_PHIS: [f64; 3] = [0.05, 0.1, 0.3];
pub const ORACLE_ETAS: [f64; 3] = [0.2, 0.5, 1.0];
pub const ORACLE_N_MAX: usize = 4;
pub const ENTRY_ATOL: f64 = 1e-12;
pub const NEGATIVITY_ATOL: f64 = 1e-10;

#[derive(Debug, Clone)]
pub struct Check {
    pub name: String,
    pub worst: f64,
    pub tolerance: f64,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.worst <= self.tolerance
    }
}

pub fn max_entry_gap(x: &ConditionalAtomicState, y: &ConditionalAtomicState) -> f64 {
    x.entries().map(|((a, b, c, d), v)| (v - y.get(a, b, c, d)).abs()).fold(0.0, f64::max)
}

/// One check per grid point: ideal and lossy entrywise agreement, plus block
/// versus dense negativity of the normalized state.
pub fn run_selftest() -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for &lambda in &ORACLE_LAMBDAS {
        for &phi in &ORACLE_PHIS {
            let table = apply_effective_beamsplitter(&build_tmss(lambda, ORACLE_N_MAX)?, phi)?;
            let ideal = condition_on_clicks_ideal(&table);
            for &eta in &ORACLE_ETAS {
                let oracle = oracle_conditional_state(lambda, phi, eta, ORACLE_N_MAX)?;
                let lossy = condition_on_clicks_lossy(&table, DetectorModel::new(eta)?);
                let tag = format!("lambda={lambda} phi={phi} eta={eta}");
                checks.push(Check {
                    name: format!("lossy vs oracle {tag}"),
                    worst: max_entry_gap(&lossy, &oracle),
                    tolerance: ENTRY_ATOL,
                });
                if eta == 1.0 {
                    checks.push(Check {
                        name: format!("ideal vs oracle {tag}"),
                        worst: max_entry_gap(&ideal, &oracle),
                        tolerance: ENTRY_ATOL,
                    });
                }
                let normed = lossy.normalized()?;
                let blocks = negativity(&partial_transpose_blocks(&normed)?)?.negativity;
                checks.push(Check {
                    name: format!("block vs dense negativity {tag}"),
                    worst: (blocks - dense_negativity(&normed)?).abs(),
                    tolerance: NEGATIVITY_ATOL,
                });
            }
        }
    }
    Ok(checks)
}
