use std::fmt::Write as _;
use std::time::Instant;

use ensconc_core::{evaluate_point, tmss_negativity_closed};
use serde::Serialize;

use crate::Result;

pub const CSV_HEADER: &str = "lambda,phi,eta,S,E_N_out,E_N_tmss,negativity,n_max,convergence_delta,wall_time_ms";

/// Convergence deltas above this are reported on stderr.
pub const CONVERGENCE_WARN: f64 = 1e-6;

/// One evaluated protocol point. `None` marks quantities that are undefined,
/// e.g. the output entanglement when the success probability is zero.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub lambda: f64,
    pub phi: f64,
    pub eta: f64,
    #[serde(rename = "S")]
    pub success: f64,
    #[serde(rename = "E_N_out")]
    pub log_negativity_out: Option<f64>,
    #[serde(rename = "E_N_tmss")]
    pub log_negativity_tmss: Option<f64>,
    pub negativity: Option<f64>,
    pub n_max: usize,
    pub convergence_delta: Option<f64>,
    pub wall_time_ms: Option<f64>,
}

pub fn evaluate_row(lambda: f64, phi: f64, eta: f64, n_max: usize, baseline: bool, timing: bool) -> Result<SweepRow> {
    let start = Instant::now();
    let point = evaluate_point(lambda, phi, eta, n_max)?;
    let tmss = if baseline { Some(tmss_negativity_closed(lambda)?.1) } else { None };
    let report = point.report.as_ref();
    let elapsed = start.elapsed().as_secs_f64() * 1e3;
    Ok(SweepRow {
        lambda,
        phi,
        eta,
        success: point.success,
        log_negativity_out: report.map(|r| r.log_negativity),
        log_negativity_tmss: tmss,
        negativity: report.map(|r| r.negativity),
        n_max,
        convergence_delta: report.and_then(|r| r.convergence_delta),
        wall_time_ms: timing.then_some(elapsed),
    })
}

impl SweepRow {
    pub fn is_converged(&self) -> bool {
        self.convergence_delta.is_none_or(|d| d <= CONVERGENCE_WARN)
    }

    pub fn to_csv_line(&self) -> String {
        let mut line = String::new();
        for v in [self.lambda, self.phi, self.eta, self.success] {
            write!(line, "{},", num(v)).unwrap();
        }
        for v in [self.log_negativity_out, self.log_negativity_tmss, self.negativity] {
            write!(line, "{},", opt(v)).unwrap();
        }
        write!(line, "{},{},{}", self.n_max, opt(self.convergence_delta), opt(self.wall_time_ms)).unwrap();
        line
    }
}

fn num(v: f64) -> String {
    format!("{v:.15e}")
}

fn opt(v: Option<f64>) -> String {
    v.map_or_else(|| "null".to_owned(), num)
}
