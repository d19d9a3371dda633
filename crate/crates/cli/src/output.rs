// SPDX-License-Identifier: Apache-2.0

//! Deterministic CSV/JSON writers and baseline locking.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::CliError;

pub const SIG_DIGITS: usize = 12;
pub const ANALYTIC_TOLERANCE: f64 = 1e-9;

/// `x` with 12 significant digits, trailing zeros trimmed.
pub fn fmt_sig(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let exp = x.abs().log10().floor() as i32;
    if (-5..SIG_DIGITS as i32).contains(&exp) {
        let decimals = (SIG_DIGITS as i32 - 1 - exp).max(0) as usize;
        let s = format!("{x:.decimals$}");
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        }
    } else {
        format!("{:.*e}", SIG_DIGITS - 1, x)
    }
}

/// Rounds to 12 significant digits so JSON prints the same digits as CSV.
pub fn round_sig(x: f64) -> f64 {
    fmt_sig(x).parse().unwrap_or(x)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

pub fn open_sink(path: Option<&Path>) -> Result<Box<dyn Write>, CliError> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p).map_err(|e| CliError::io(p, e))?)),
        None => Box::new(BufWriter::new(io::stdout())),
    })
}

/// Writes rows as RFC-4180 CSV or as a JSON array with one row per line.
pub fn write_rows<T: Serialize>(rows: &[T], format: Format, path: Option<&Path>) -> Result<(), CliError> {
    let mut sink = open_sink(path)?;
    let io_err = |e: io::Error| CliError::io(path.unwrap_or(Path::new("<stdout>")), e);
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut sink);
            for r in rows {
                w.serialize(r).map_err(|e| CliError::Io(e.to_string()))?;
            }
            w.flush().map_err(io_err)?;
        }
        Format::Json => {
            writeln!(sink, "[").map_err(io_err)?;
            for (i, r) in rows.iter().enumerate() {
                let line = serde_json::to_string(&to_rounded_json(r)?).map_err(|e| CliError::Io(e.to_string()))?;
                let sep = if i + 1 < rows.len() { "," } else { "" };
                writeln!(sink, "{line}{sep}").map_err(io_err)?;
            }
            writeln!(sink, "]").map_err(io_err)?;
        }
    }
    sink.flush().map_err(io_err)
}

/// JSON value of `value` with every float rounded by [`round_sig`].
pub fn to_rounded_json<T: Serialize>(value: &T) -> Result<serde_json::Value, CliError> {
    fn walk(v: &mut serde_json::Value) {
        match v {
            serde_json::Value::Number(n) if n.is_f64() => {
                if let Some(x) = n.as_f64().and_then(|x| serde_json::Number::from_f64(round_sig(x))) {
                    *n = x;
                }
            }
            serde_json::Value::Array(a) => a.iter_mut().for_each(walk),
            serde_json::Value::Object(o) => o.values_mut().for_each(walk),
            _ => {}
        }
    }
    let mut v = serde_json::to_value(value).map_err(|e| CliError::Io(e.to_string()))?;
    walk(&mut v);
    Ok(v)
}

pub fn print_json<T: Serialize>(value: &T) -> Result<(), CliError> {
    let s = serde_json::to_string_pretty(&to_rounded_json(value)?).map_err(|e| CliError::Io(e.to_string()))?;
    writeln!(io::stdout().lock(), "{s}").map_err(|e| CliError::io(Path::new("<stdout>"), e))
}

/// A summary value: combinatorial entries compare exactly, analytic ones to 1e-9.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SummaryValue {
    Exact(String),
    Analytic(f64),
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub command: String,
    pub entries: BTreeMap<String, SummaryValue>,
}

impl Summary {
    pub fn new(command: &str) -> Self {
        Self {
            command: command.into(),
            entries: BTreeMap::new(),
        }
    }

    pub fn exact(&mut self, key: impl Into<String>, v: impl ToString) {
        self.entries.insert(key.into(), SummaryValue::Exact(v.to_string()));
    }

    pub fn analytic(&mut self, key: impl Into<String>, v: f64) {
        self.entries.insert(key.into(), SummaryValue::Analytic(round_sig(v)));
    }

    pub fn print(&self, to_stderr: bool) -> Result<(), CliError> {
        let mut sink: Box<dyn Write> = if to_stderr {
            Box::new(io::stderr().lock())
        } else {
            Box::new(io::stdout().lock())
        };
        for (k, v) in &self.entries {
            let v = match v {
                SummaryValue::Exact(s) => s.clone(),
                SummaryValue::Analytic(x) => fmt_sig(*x),
            };
            writeln!(sink, "{k}\t{v}").map_err(|e| CliError::io(Path::new("<stdout>"), e))?;
        }
        Ok(())
    }

    /// Keys whose values differ from `base`, with both sides.
    pub fn diff(&self, base: &Summary) -> Vec<String> {
        let mut out = Vec::new();
        if self.command != base.command {
            out.push(format!("command: {} vs baseline {}", self.command, base.command));
        }
        let keys: std::collections::BTreeSet<_> = self.entries.keys().chain(base.entries.keys()).collect();
        for k in keys {
            let ok = match (self.entries.get(k), base.entries.get(k)) {
                (Some(SummaryValue::Exact(a)), Some(SummaryValue::Exact(b))) => a == b,
                (Some(SummaryValue::Analytic(a)), Some(SummaryValue::Analytic(b))) => (a - b).abs() <= ANALYTIC_TOLERANCE,
                _ => false,
            };
            if !ok {
                out.push(format!("{k}: {:?} vs baseline {:?}", self.entries.get(k), base.entries.get(k)));
            }
        }
        out
    }
}

pub enum BaselineOutcome {
    Written(PathBuf),
    Matched,
}

/// Compares against the baseline at `path`, writing it when absent.
pub fn lock_baseline(summary: &Summary, path: &Path) -> Result<BaselineOutcome, CliError> {
    if path.exists() {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        let base: Summary = serde_json::from_str(&text)
            .map_err(|e| CliError::Usage(format!("cannot parse baseline {}: {e}", path.display())))?;
        let diff = summary.diff(&base);
        if diff.is_empty() {
            Ok(BaselineOutcome::Matched)
        } else {
            Err(CliError::Failure(format!("baseline mismatch:\n  {}", diff.join("\n  "))))
        }
    } else {
        let text = serde_json::to_string_pretty(summary).map_err(|e| CliError::Io(e.to_string()))?;
        std::fs::write(path, text + "\n").map_err(|e| CliError::io(path, e))?;
        Ok(BaselineOutcome::Written(path.to_path_buf()))
    }
}
