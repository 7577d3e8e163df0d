//! Flag parsing with an optional flat JSON config file. Every flag takes a
//! value; `--config` is applied first and explicit flags win on conflict.

use std::collections::BTreeMap;
use std::fmt;

pub const USAGE: &str = "\
qwgo - quantum-walk enhanced Grover optimization harness

USAGE:
  qwgo <optimize|experiment|pdf|validate|baseline> [--flag value ...]

COMMON FLAGS:
  --objective NAME|FILE.csv  rastrigin | schwefel | ackley, or a tabulated
                             objective (CSV with columns x,f; exactly N rows
                             matching the grid)          [default: rastrigin]
  --domain LO:HI             search interval             [default: per objective]
  --qubits Q                 register size, N = 2^Q      [default: 9]
  --r0 R[,R...]              rotation threshold(s); -1 disables walks [default: 2]
  --tau T                    walk time step              [default: 0.5]
  --z Z                      walk spread b*tau/delta^2   [default: N/2]
  --walk-start P             current-best | random | center [default: current-best]
  --tolerance T              success distance tolerance  [default: 1e-4]
  --seed S                   base seed; run i uses S + i [default: 42]
  --jobs J                   worker threads              [default: available cores]
  --out PATH                 output CSV path             [default: per command]
  --svg PATH                 also render an SVG plot
  --config PATH              flat JSON {\"flag\": value}; flags win

optimize   one seeded run -> trace.csv
           extra: --algo bbw|bbw-qw [default: bbw-qw], --max-iter N [default: 44],
                  --early-stop true|false [default: false]
experiment multi-run success curves for both algorithms -> curve.csv
           extra: --runs N [default: 200], --algo restricts to one algorithm
pdf        averaged pre-measurement distributions per iteration -> pdf.csv
           extra: --runs N [default: 20], --algo bbw|bbw-qw [default: bbw-qw]
validate   theory checks; exits 2 on any failure
           extra: --check NAME (grover-law, bessel, expm, closed-form,
                  lemmas, efficiency-bound, fixedpoint), --n N [default: 256]
baseline   classical heuristic success curves -> curve.csv
           extra: --method sa|ga, --t0 LIST [default: 100,1000],
                  --pop LIST [default: 5,25,50], --budget N [default: 10000],
                  --runs N [default: 200]

EXIT CODES: 0 success, 1 usage/config error, 2 numerical or validation failure.";

#[derive(Debug)]
pub struct UsageError(String);

impl UsageError {
    pub fn new(msg: impl Into<String>) -> Self {
        UsageError(msg.into())
    }
}

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Parsed `--key value` pairs, config-file values underneath.
#[derive(Debug, Default, Clone)]
pub struct Flags {
    values: BTreeMap<String, String>,
}

const KNOWN_FLAGS: &[&str] = &[
    "objective", "domain", "qubits", "r0", "tau", "z", "walk-start", "tolerance", "seed", "jobs",
    "out", "svg", "config", "algo", "runs", "max-iter", "early-stop", "check", "n", "method",
    "t0", "pop", "budget",
];

impl Flags {
    pub fn parse(args: &[String]) -> Result<Self, UsageError> {
        let mut given = BTreeMap::new();
        let mut iter = args.iter();
        while let Some(arg) = iter.next() {
            let Some(name) = arg.strip_prefix("--") else {
                return Err(UsageError::new(format!("unexpected argument `{arg}`")));
            };
            if !KNOWN_FLAGS.contains(&name) {
                return Err(UsageError::new(format!("unknown flag `--{name}`")));
            }
            let value = iter
                .next()
                .ok_or_else(|| UsageError::new(format!("flag `--{name}` needs a value")))?;
            given.insert(name.to_string(), value.clone());
        }

        let mut values = BTreeMap::new();
        if let Some(path) = given.get("config") {
            let text = std::fs::read_to_string(path)
                .map_err(|e| UsageError::new(format!("cannot read config `{path}`: {e}")))?;
            let doc: serde_json::Value = serde_json::from_str(&text)
                .map_err(|e| UsageError::new(format!("config `{path}` is not valid JSON: {e}")))?;
            let serde_json::Value::Object(map) = doc else {
                return Err(UsageError::new("config must be a flat JSON object"));
            };
            for (key, value) in map {
                if !KNOWN_FLAGS.contains(&key.as_str()) {
                    return Err(UsageError::new(format!("config key `{key}` is not a flag")));
                }
                let rendered = match value {
                    serde_json::Value::String(s) => s,
                    serde_json::Value::Number(n) => n.to_string(),
                    serde_json::Value::Bool(b) => b.to_string(),
                    other => {
                        return Err(UsageError::new(format!(
                            "config key `{key}` must be a scalar, got {other}"
                        )))
                    }
                };
                values.insert(key, rendered);
            }
        }
        values.extend(given);
        Ok(Flags { values })
    }

    pub fn get(&self, name: &str) -> Option<&str> {
        self.values.get(name).map(String::as_str)
    }

    pub fn str_or<'a>(&'a self, name: &str, default: &'a str) -> &'a str {
        self.get(name).unwrap_or(default)
    }

    pub fn u64_or(&self, name: &str, default: u64) -> Result<u64, UsageError> {
        match self.get(name) {
            None => Ok(default),
            Some(v) => v
                .parse()
                .map_err(|_| UsageError::new(format!("flag `--{name}` expects an unsigned integer, got `{v}`"))),
        }
    }

    pub fn usize_or(&self, name: &str, default: usize) -> Result<usize, UsageError> {
        Ok(self.u64_or(name, default as u64)? as usize)
    }

    pub fn i32_or(&self, name: &str, default: i32) -> Result<i32, UsageError> {
        match self.get(name) {
            None => Ok(default),
            Some(v) => v
                .parse()
                .map_err(|_| UsageError::new(format!("flag `--{name}` expects an integer, got `{v}`"))),
        }
    }

    pub fn f64_opt(&self, name: &str) -> Result<Option<f64>, UsageError> {
        match self.get(name) {
            None => Ok(None),
            Some(v) => v
                .parse()
                .map(Some)
                .map_err(|_| UsageError::new(format!("flag `--{name}` expects a number, got `{v}`"))),
        }
    }

    pub fn f64_or(&self, name: &str, default: f64) -> Result<f64, UsageError> {
        Ok(self.f64_opt(name)?.unwrap_or(default))
    }

    pub fn bool_or(&self, name: &str, default: bool) -> Result<bool, UsageError> {
        match self.get(name) {
            None => Ok(default),
            Some("true") => Ok(true),
            Some("false") => Ok(false),
            Some(v) => Err(UsageError::new(format!("flag `--{name}` expects true|false, got `{v}`"))),
        }
    }

    /// `lo:hi` pair.
    pub fn domain_opt(&self) -> Result<Option<(f64, f64)>, UsageError> {
        let Some(v) = self.get("domain") else { return Ok(None) };
        let (lo, hi) = v
            .split_once(':')
            .ok_or_else(|| UsageError::new(format!("flag `--domain` expects LO:HI, got `{v}`")))?;
        let lo: f64 = lo
            .parse()
            .map_err(|_| UsageError::new(format!("bad domain lower bound `{lo}`")))?;
        let hi: f64 = hi
            .parse()
            .map_err(|_| UsageError::new(format!("bad domain upper bound `{hi}`")))?;
        Ok(Some((lo, hi)))
    }

    /// Comma-separated list of integers.
    pub fn i32_list_or(&self, name: &str, default: &[i32]) -> Result<Vec<i32>, UsageError> {
        match self.get(name) {
            None => Ok(default.to_vec()),
            Some(v) => v
                .split(',')
                .map(|part| {
                    part.trim().parse().map_err(|_| {
                        UsageError::new(format!("flag `--{name}` expects integers, got `{part}`"))
                    })
                })
                .collect(),
        }
    }

    pub fn f64_list_or(&self, name: &str, default: &[f64]) -> Result<Vec<f64>, UsageError> {
        match self.get(name) {
            None => Ok(default.to_vec()),
            Some(v) => v
                .split(',')
                .map(|part| {
                    part.trim().parse().map_err(|_| {
                        UsageError::new(format!("flag `--{name}` expects numbers, got `{part}`"))
                    })
                })
                .collect(),
        }
    }

    pub fn jobs(&self) -> Result<usize, UsageError> {
        let default = std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1);
        let jobs = self.usize_or("jobs", default)?;
        if jobs == 0 {
            return Err(UsageError::new("flag `--jobs` must be at least 1"));
        }
        Ok(jobs)
    }
}
