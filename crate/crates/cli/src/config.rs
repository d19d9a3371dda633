// SPDX-License-Identifier: Apache-2.0

use std::path::PathBuf;

use ckit_core::arith::squarefree_sieve;

use crate::output::Format;
use crate::CliError;

#[derive(Debug, Clone)]
pub struct ScanConfig {
    pub range_max: u64,
    /// `(modulus, residues)` pairs; `n` must match every pair.
    pub residues: Vec<(u64, Vec<u64>)>,
    pub threads: Option<usize>,
    pub out: Option<PathBuf>,
    pub format: Format,
    pub baseline: Option<PathBuf>,
}

impl ScanConfig {
    pub fn new(range_max: u64, residues: Vec<(u64, Vec<u64>)>) -> Result<Self, CliError> {
        if range_max < 1 {
            return Err(CliError::Usage("--max must be at least 1".into()));
        }
        let mut reduced = Vec::new();
        for (m, rs) in residues {
            if m == 0 {
                return Err(CliError::Usage("modulus must be positive".into()));
            }
            let mut rs: Vec<u64> = rs.into_iter().map(|r| r % m).collect();
            rs.sort_unstable();
            rs.dedup();
            reduced.push((m, rs));
        }
        Ok(Self {
            range_max,
            residues: reduced,
            threads: None,
            out: None,
            format: Format::Csv,
            baseline: None,
        })
    }

    pub fn admits(&self, n: u64) -> bool {
        self.residues.iter().all(|(m, rs)| rs.contains(&(n % m)))
    }

    /// Square-free `n ≤ range_max` passing the filter, ascending.
    pub fn squarefree_range(&self) -> Vec<u64> {
        let sf = squarefree_sieve(self.range_max as usize);
        (1..=self.range_max).filter(|&n| sf[n as usize] && self.admits(n)).collect()
    }
}

/// Parses `1,2,3` into residues.
pub fn parse_list(s: &str) -> Result<Vec<u64>, CliError> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| CliError::Usage(format!("bad residue '{t}'")))
        })
        .collect()
}

/// Worker count: the flag, then `CKIT_THREADS`, then rayon's default.
pub fn init_threads(flag: Option<usize>) -> Result<(), CliError> {
    let env = match std::env::var("CKIT_THREADS") {
        Ok(v) => Some(
            v.parse::<usize>()
                .map_err(|_| CliError::Usage(format!("CKIT_THREADS='{v}' is not a count")))?,
        ),
        Err(_) => None,
    };
    if let Some(n) = flag.or(env) {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Internal(e.to_string()))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn filter_and_sieve() {
        let c = ScanConfig::new(10, vec![(8, vec![1, 2, 3, 11])]).unwrap();
        assert_eq!(c.residues[0].1, vec![1, 2, 3]);
        assert_eq!(c.squarefree_range(), vec![1, 2, 3, 10]);
        assert!(ScanConfig::new(0, vec![]).is_err());
    }

    #[test]
    fn residue_lists() {
        assert_eq!(parse_list("1, 2,3").unwrap(), vec![1, 2, 3]);
        assert!(parse_list("1,x").is_err());
    }
}
