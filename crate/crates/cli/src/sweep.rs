use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use rayon::prelude::*;

use crate::config::{OutputFormat, SweepSpec};
use crate::row::{evaluate_row, SweepRow, CSV_HEADER};
use crate::Result;

/// Evaluates every `(lambda, phi, eta)` tuple, lambda outermost, then phi,
/// then eta. Rows are computed concurrently and returned in that order.
pub fn sweep_rows(spec: &SweepSpec) -> Result<Vec<SweepRow>> {
    spec.validate()?;
    let tuples: Vec<(f64, f64, f64)> = spec
        .lambda_grid
        .points()
        .into_iter()
        .flat_map(|l| spec.phi_list.iter().flat_map(move |&p| spec.eta_list.iter().map(move |&e| (l, p, e))))
        .collect();
    tuples
        .par_iter()
        .map(|&(l, p, e)| evaluate_row(l, p, e, spec.n_max, spec.include_tmss_baseline, spec.timing))
        .collect()
}

/// Runs the sweep and writes the output file. The file appears only once it
/// is complete.
pub fn run_sweep(spec: &SweepSpec) -> Result<Vec<SweepRow>> {
    let rows = sweep_rows(spec)?;
    write_rows(&rows, spec.format, &spec.output_path)?;
    Ok(rows)
}

pub fn render(rows: &[SweepRow], format: OutputFormat) -> Result<String> {
    Ok(match format {
        OutputFormat::Csv => {
            let mut out = String::with_capacity(rows.len() * 200);
            out.push_str(CSV_HEADER);
            out.push('\n');
            for r in rows {
                out.push_str(&r.to_csv_line());
                out.push('\n');
            }
            out
        }
        OutputFormat::Json => {
            let mut out = serde_json::to_string_pretty(rows).map_err(std::io::Error::from)?;
            out.push('\n');
            out
        }
    })
}

pub fn write_rows(rows: &[SweepRow], format: OutputFormat, path: &Path) -> Result<()> {
    let body = render(rows, format)?;
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let tmp = tempfile::NamedTempFile::new_in(dir)?;
    {
        let mut w = BufWriter::new(File::options().write(true).open(tmp.path())?);
        w.write_all(body.as_bytes())?;
        w.flush()?;
    }
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}
