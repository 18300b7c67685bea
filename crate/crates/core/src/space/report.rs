use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use num_bigint::BigUint;
use rayon::prelude::*;

use super::{
    all_instructions_size, digram_constrained_size, log10, subset_only_size, LevelCounts,
    SpaceModelConfig,
};
use crate::digram::AllowedDigrams;
use crate::error::{Error, Result};
use crate::subset::InstructionSubset;

/// Exact totals with more digits than this are left out of the CSV.
pub const DEFAULT_DIGIT_CAP: usize = 60;

/// Regime names in CSV order.
pub const REGIMES: [&str; 3] = ["all", "subset", "digram"];

#[derive(Debug, Clone, PartialEq)]
pub struct SubsetSpace {
    pub subset_id: usize,
    pub subset_size: usize,
    pub all: LevelCounts,
    pub subset_only: LevelCounts,
    pub digram: LevelCounts,
}

impl SubsetSpace {
    fn regime(&self, idx: usize) -> &LevelCounts {
        match idx {
            0 => &self.all,
            1 => &self.subset_only,
            _ => &self.digram,
        }
    }

    /// `log10(subset-only total / digram total)` up to depth `d`.
    pub fn reduction_log10(&self, d: usize) -> f64 {
        log10(&self.subset_only.total_to(d)) - log10(&self.digram.total_to(d))
    }

    pub fn reduction_factor(&self, d: usize) -> f64 {
        10f64.powf(self.reduction_log10(d))
    }

    /// Extra levels the digram-constrained search can afford within the
    /// node budget that subset-only search spends to reach depth `d`,
    /// looking no further than `depth_max`.
    pub fn depth_gain(&self, d: usize) -> usize {
        let budget = self.subset_only.total_to(d);
        let mut gain = 0;
        for k in 1..=self.digram.depth().saturating_sub(d) {
            if self.digram.total_to(d + k) <= budget {
                gain = k;
            } else {
                break;
            }
        }
        gain
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpaceReport {
    pub depth_max: usize,
    pub vocab_size: u64,
    pub rows: Vec<SubsetSpace>,
}

impl SpaceReport {
    /// Median of the per-subset reduction factors at depth `d`.
    pub fn median_reduction_log10(&self, d: usize) -> Option<f64> {
        let mut v: Vec<f64> = self.rows.iter().map(|r| r.reduction_log10(d)).collect();
        if v.is_empty() {
            return None;
        }
        v.sort_by(f64::total_cmp);
        let n = v.len();
        Some(if n % 2 == 1 {
            v[n / 2]
        } else {
            (v[n / 2 - 1] + v[n / 2]) / 2.0
        })
    }

    /// Fraction of subsets with a depth gain of at least one level at `d`.
    pub fn gain_fraction(&self, d: usize) -> f64 {
        if self.rows.is_empty() {
            return 0.0;
        }
        let n = self.rows.iter().filter(|r| r.depth_gain(d) >= 1).count();
        n as f64 / self.rows.len() as f64
    }

    /// Level-wise `digram ≤ subset ≤ all`. The second comparison is only
    /// meaningful for subsets no larger than the vocabulary.
    pub fn check_dominance(&self) -> std::result::Result<(), String> {
        for r in &self.rows {
            for d in 1..=self.depth_max {
                if r.digram.level(d) > r.subset_only.level(d) {
                    return Err(format!(
                        "subset {}: digram level {d} exceeds subset-only",
                        r.subset_id
                    ));
                }
                if r.subset_size as u64 <= self.vocab_size && r.subset_only.level(d) > r.all.level(d)
                {
                    return Err(format!(
                        "subset {}: subset-only level {d} exceeds all-instructions",
                        r.subset_id
                    ));
                }
            }
        }
        Ok(())
    }
}

/// Computes all three regimes for every subset. `vocab_size` is the size of
/// the full instruction vocabulary.
pub fn compare(
    subsets: &[InstructionSubset],
    allowed: &AllowedDigrams,
    vocab_size: u64,
    config: &SpaceModelConfig,
) -> SpaceReport {
    let all = all_instructions_size(vocab_size, config.depth_max);
    let mut rows: Vec<SubsetSpace> = subsets
        .par_iter()
        .map(|s| SubsetSpace {
            subset_id: s.subset_id,
            subset_size: s.len(),
            all: all.clone(),
            subset_only: subset_only_size(s.len() as u64, config.depth_max),
            digram: digram_constrained_size(s, allowed, config),
        })
        .collect();
    rows.sort_by_key(|r| r.subset_id);
    SpaceReport {
        depth_max: config.depth_max,
        vocab_size,
        rows,
    }
}

fn render(report: &SpaceReport, digit_cap: usize) -> String {
    let mut out = String::from("subset_id,subset_size,depth,regime,total_log10,total_exact\n");
    for row in &report.rows {
        for d in 1..=report.depth_max {
            for (idx, name) in REGIMES.iter().enumerate() {
                let total: BigUint = row.regime(idx).total_to(d);
                let exact = total.to_string();
                let exact = if exact.len() <= digit_cap { exact.as_str() } else { "" };
                let _ = writeln!(
                    out,
                    "{},{},{},{},{:.6},{}",
                    row.subset_id,
                    row.subset_size,
                    d,
                    name,
                    log10(&total),
                    exact
                );
            }
        }
    }
    out
}

/// Writes the report CSV: one row per subset, depth and regime, each
/// holding the cumulative node count up to that depth.
pub fn export_report(report: &SpaceReport, path: &Path, digit_cap: usize) -> Result<()> {
    fs::write(path, render(report, digit_cap)).map_err(|e| Error::io(path, e))
}
