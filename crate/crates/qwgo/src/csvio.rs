//! CSV emission. All numbers print through Rust's shortest-roundtrip float
//! formatting (scientific notation for the tiny pdf probabilities), so a
//! fixed (config, seed) reproduces files byte for byte.

use std::io::{BufWriter, Write};
use std::path::Path;

use qwgo_core::optimizer::RunTrace;
use qwgo_core::statevector::GridDomain;

use crate::runner::CurveGroup;

pub const TRACE_HEADER: &str =
    "iteration,step_kind,rotations,cum_evals,sample_index,sample_x,sample_f,threshold_c,best_x,best_f,success";
pub const CURVE_HEADER: &str = "algorithm,objective,r0,axis,axis_value,success_prob,stderr,runs";
pub const PDF_HEADER: &str = "iteration,state_index,x,mean_probability";

pub fn write_trace(path: &Path, trace: &RunTrace) -> std::io::Result<()> {
    let mut out = BufWriter::new(std::fs::File::create(path)?);
    writeln!(out, "{TRACE_HEADER}")?;
    for row in &trace.rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{}",
            row.iteration,
            row.step.as_str(),
            row.rotations,
            row.cumulative_evaluations,
            row.sample_index,
            row.sample_x,
            row.sample_f,
            row.threshold,
            row.best_x,
            row.best_f,
            u8::from(row.success),
        )?;
    }
    out.flush()
}

pub fn write_curves(path: &Path, groups: &[CurveGroup]) -> std::io::Result<()> {
    let mut out = BufWriter::new(std::fs::File::create(path)?);
    writeln!(out, "{CURVE_HEADER}")?;
    for group in groups {
        let r0 = group.r0.map(|v| v.to_string()).unwrap_or_default();
        for point in &group.points {
            writeln!(
                out,
                "{},{},{},{},{},{},{},{}",
                group.algorithm,
                group.objective,
                r0,
                group.axis.as_str(),
                point.axis_value,
                point.success_prob,
                point.stderr,
                group.runs,
            )?;
        }
    }
    out.flush()
}

pub fn write_pdf(path: &Path, domain: &GridDomain, mean: &[Vec<f64>]) -> std::io::Result<()> {
    let mut out = BufWriter::new(std::fs::File::create(path)?);
    writeln!(out, "{PDF_HEADER}")?;
    for (iteration, dist) in mean.iter().enumerate() {
        for (state, p) in dist.iter().enumerate() {
            writeln!(out, "{},{},{},{:e}", iteration, state, domain.coord(state), p)?;
        }
    }
    out.flush()
}
