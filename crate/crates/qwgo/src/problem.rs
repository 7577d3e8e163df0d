//! Resolution of CLI flags into a concrete discretized problem: a named
//! benchmark or a tabulated objective loaded from a CSV file.

use qwgo_core::objectives::{grid_values, Objective};
use qwgo_core::optimizer::Problem;
use qwgo_core::statevector::GridDomain;

use crate::cli::{Flags, UsageError};
use crate::DriverError;

pub struct ProblemSetup {
    pub problem: Problem,
    /// Present for named benchmarks; tabulated objectives have none.
    pub objective: Option<Objective>,
    /// Label used in CSV group columns.
    pub label: String,
}

pub fn resolve(flags: &Flags) -> Result<ProblemSetup, DriverError> {
    let qubits = flags.usize_or("qubits", 9)? as u32;
    let spec = flags.str_or("objective", "rastrigin");

    if let Some(objective) = Objective::from_name(spec) {
        let (lo, hi) = flags.domain_opt()?.unwrap_or_else(|| objective.default_domain());
        let domain = GridDomain::new(lo, hi, qubits)
            .map_err(|e| DriverError::Usage(UsageError::new(e.to_string())))?;
        let problem = Problem::from_objective(objective, domain)?;
        return Ok(ProblemSetup { problem, objective: Some(objective), label: objective.name().to_string() });
    }

    if spec.ends_with(".csv") {
        let (lo, hi) = flags
            .domain_opt()?
            .ok_or_else(|| UsageError::new("tabulated objectives need an explicit --domain LO:HI"))?;
        let domain = GridDomain::new(lo, hi, qubits)
            .map_err(|e| DriverError::Usage(UsageError::new(e.to_string())))?;
        let values = load_tabulated(spec, &domain)?;
        let problem = Problem::from_values(domain, values)
            .map_err(|e| DriverError::Usage(UsageError::new(e.to_string())))?;
        let label = std::path::Path::new(spec)
            .file_stem()
            .and_then(|s| s.to_str())
            .unwrap_or("tabulated")
            .to_string();
        return Ok(ProblemSetup { problem, objective: None, label });
    }

    Err(UsageError::new(format!(
        "unknown objective `{spec}` (expected rastrigin|schwefel|ackley or a .csv table)"
    ))
    .into())
}

/// `x,f` rows, one per grid state, in grid order. A leading `x,f` header is
/// allowed; the x column must reproduce the grid coordinates.
fn load_tabulated(path: &str, domain: &GridDomain) -> Result<Vec<f64>, DriverError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| UsageError::new(format!("cannot read objective table `{path}`: {e}")))?;
    let mut values = Vec::with_capacity(domain.len());
    let mut row = 0usize;
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || (lineno == 0 && line == "x,f") {
            continue;
        }
        let (x_str, f_str) = line
            .split_once(',')
            .ok_or_else(|| UsageError::new(format!("{path}:{}: expected `x,f`", lineno + 1)))?;
        let x: f64 = x_str
            .trim()
            .parse()
            .map_err(|_| UsageError::new(format!("{path}:{}: bad x `{x_str}`", lineno + 1)))?;
        let f: f64 = f_str
            .trim()
            .parse()
            .map_err(|_| UsageError::new(format!("{path}:{}: bad f `{f_str}`", lineno + 1)))?;
        if row >= domain.len() {
            return Err(UsageError::new(format!(
                "{path}: more than N = {} rows",
                domain.len()
            ))
            .into());
        }
        let expected = domain.coord(row);
        if (x - expected).abs() > 1e-9 * expected.abs().max(1.0) {
            return Err(UsageError::new(format!(
                "{path}:{}: x = {x} does not match grid coordinate {expected}",
                lineno + 1
            ))
            .into());
        }
        values.push(f);
        row += 1;
    }
    if values.len() != domain.len() {
        return Err(UsageError::new(format!(
            "{path}: {} rows, grid needs exactly N = {}",
            values.len(),
            domain.len()
        ))
        .into());
    }
    Ok(values)
}

/// Write the grid table for a named objective; the inverse of
/// `load_tabulated`, used by tests and for exporting custom setups.
pub fn write_tabulated(
    path: &std::path::Path,
    objective: Objective,
    domain: &GridDomain,
) -> Result<(), DriverError> {
    use std::io::Write;
    let values = grid_values(objective, domain)?;
    let mut out = std::io::BufWriter::new(std::fs::File::create(path)?);
    writeln!(out, "x,f")?;
    for (j, f) in values.iter().enumerate() {
        writeln!(out, "{},{}", domain.coord(j), f)?;
    }
    Ok(())
}
