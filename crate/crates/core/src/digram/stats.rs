use super::DigramTable;

/// Count thresholds for the "fraction of digrams occurring at most k times"
/// table.
pub const DEFAULT_QUANTILES: &[u64] = &[1, 10, 100, 1000];

/// Log-scale histogram bucket over occurrence counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bucket {
    pub lo: u64,
    /// Inclusive; `None` for the open-ended last bucket.
    pub hi: Option<u64>,
}

impl Bucket {
    pub const ALL: [Bucket; 5] = [
        Bucket { lo: 1, hi: Some(1) },
        Bucket { lo: 2, hi: Some(10) },
        Bucket { lo: 11, hi: Some(100) },
        Bucket { lo: 101, hi: Some(1000) },
        Bucket { lo: 1001, hi: None },
    ];

    pub fn contains(&self, count: u64) -> bool {
        count >= self.lo && self.hi.is_none_or(|hi| count <= hi)
    }

    pub fn label(&self) -> String {
        match self.hi {
            Some(hi) if hi == self.lo => hi.to_string(),
            Some(hi) => format!("{}-{}", self.lo, hi),
            None => format!(">{}", self.lo - 1),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DigramStats {
    pub vocab_size: u64,
    /// `vocab_size²`.
    pub possible: u128,
    pub distinct: u64,
    pub occurrences: u64,
    pub coverage_fraction: f64,
    pub absent_fraction: f64,
    /// `(k, fraction of distinct digrams with count ≤ k)`.
    pub quantiles: Vec<(u64, f64)>,
    pub histogram: Vec<(Bucket, u64)>,
    /// Set when the vocabulary is empty and the fractions are undefined
    /// (reported as 0).
    pub degenerate: bool,
}

impl DigramStats {
    /// Fraction of distinct digrams with count ≤ `k`, if `k` was requested.
    pub fn fraction_at_most(&self, k: u64) -> Option<f64> {
        self.quantiles.iter().find(|(q, _)| *q == k).map(|&(_, f)| f)
    }
}

pub fn compute_stats(table: &DigramTable) -> DigramStats {
    compute_stats_with(table, DEFAULT_QUANTILES)
}

pub fn compute_stats_with(table: &DigramTable, quantiles: &[u64]) -> DigramStats {
    let n = table.vocabulary().len() as u64;
    let possible = u128::from(n) * u128::from(n);
    let distinct = table.distinct() as u64;
    let degenerate = n == 0;
    let coverage = if degenerate {
        0.0
    } else {
        distinct as f64 / possible as f64
    };
    let absent = if degenerate { 0.0 } else { 1.0 - coverage };

    let mut ks: Vec<u64> = quantiles.to_vec();
    ks.sort_unstable();
    ks.dedup();
    let quantiles = ks
        .into_iter()
        .map(|k| {
            let at_most = table.counts().values().filter(|&&c| c <= k).count() as u64;
            let frac = if distinct == 0 {
                0.0
            } else {
                at_most as f64 / distinct as f64
            };
            (k, frac)
        })
        .collect();

    let histogram = Bucket::ALL
        .iter()
        .map(|b| {
            let n = table.counts().values().filter(|&&c| b.contains(c)).count() as u64;
            (*b, n)
        })
        .collect();

    DigramStats {
        vocab_size: n,
        possible,
        distinct,
        occurrences: table.total_occurrences(),
        coverage_fraction: coverage,
        absent_fraction: absent,
        quantiles,
        histogram,
        degenerate,
    }
}
