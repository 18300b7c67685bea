//! Exact search-space sizes with and without digram constraints.
//!
//! Three regimes are compared, each counted per level of the search tree:
//!
//! * all instructions: `n^d` nodes at depth `d` for a vocabulary of `n`;
//! * subset only: `s^d` for a subset of `s` instructions;
//! * subset + digrams: every member may appear at level 1, and below that a
//!   node labelled `F2` may hang under a node labelled `F1` only when the
//!   digram `(F1, F2)` is allowed and both ends are subset members.
//!
//! Counts are arbitrary-precision integers; `log10` values are only for
//! presentation.

mod oracle;
mod report;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::digram::{AllowedDigrams, InstructionId};
use crate::subset::InstructionSubset;

pub use oracle::{tree_enumeration_oracle, OracleError, DEFAULT_NODE_BUDGET};
pub use report::{compare, export_report, SpaceReport, SubsetSpace, DEFAULT_DIGIT_CAP, REGIMES};

/// How a digram-constrained level is derived from the previous ones.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SpaceModel {
    /// Parent-child gating; level sizes follow a matrix power.
    #[default]
    Tree,
    /// Distinct instructions applicable given everything on earlier levels.
    Reachable,
}

impl SpaceModel {
    pub fn as_str(self) -> &'static str {
        match self {
            SpaceModel::Tree => "tree",
            SpaceModel::Reachable => "reachable",
        }
    }
}

impl std::str::FromStr for SpaceModel {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "tree" => Ok(SpaceModel::Tree),
            "reachable" => Ok(SpaceModel::Reachable),
            other => Err(format!("unknown model {other:?} (expected tree or reachable)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpaceModelConfig {
    pub depth_max: usize,
    pub model: SpaceModel,
    pub threshold: u64,
}

impl Default for SpaceModelConfig {
    fn default() -> Self {
        SpaceModelConfig {
            depth_max: 10,
            model: SpaceModel::Tree,
            threshold: 1,
        }
    }
}

/// Node counts for levels `1..=depth`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LevelCounts {
    levels: Vec<BigUint>,
}

impl LevelCounts {
    pub fn new(levels: Vec<BigUint>) -> Self {
        LevelCounts { levels }
    }

    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    /// Nodes on level `d` (1-based).
    pub fn level(&self, d: usize) -> &BigUint {
        &self.levels[d - 1]
    }

    pub fn levels(&self) -> &[BigUint] {
        &self.levels
    }

    pub fn total(&self) -> BigUint {
        self.levels.iter().sum()
    }

    /// Total over levels `1..=d`.
    pub fn total_to(&self, d: usize) -> BigUint {
        self.levels[..d].iter().sum()
    }

    pub fn total_log10(&self) -> f64 {
        log10(&self.total())
    }
}

/// Decimal logarithm of an arbitrarily large integer; `-inf` for zero.
pub fn log10(x: &BigUint) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().expect("fits in f64").log10();
    }
    let shift = bits - 64;
    let top = (x >> shift).to_f64().expect("64-bit value");
    top.log10() + shift as f64 * std::f64::consts::LOG10_2
}

fn geometric(base: u64, depth: usize) -> LevelCounts {
    let b = BigUint::from(base);
    let mut levels = Vec::with_capacity(depth);
    let mut cur = BigUint::one();
    for _ in 0..depth {
        cur *= &b;
        levels.push(cur.clone());
    }
    LevelCounts::new(levels)
}

pub fn all_instructions_size(vocab_size: u64, depth: usize) -> LevelCounts {
    geometric(vocab_size, depth)
}

pub fn subset_only_size(subset_size: u64, depth: usize) -> LevelCounts {
    geometric(subset_size, depth)
}

/// Predecessor lists over the subset's members, restricted to allowed
/// digrams with both ends in the subset.
fn predecessors(members: &[InstructionId], allowed: &AllowedDigrams) -> Vec<Vec<usize>> {
    let index = |id: &InstructionId| members.binary_search(id).ok();
    let mut preds = vec![Vec::new(); members.len()];
    for d in allowed.iter() {
        if let (Some(i), Some(j)) = (index(&d.first), index(&d.second)) {
            preds[j].push(i);
        }
    }
    preds
}

pub fn digram_constrained_size(
    subset: &InstructionSubset,
    allowed: &AllowedDigrams,
    config: &SpaceModelConfig,
) -> LevelCounts {
    let members: Vec<InstructionId> = subset.members.iter().cloned().collect();
    constrained_levels(&members, allowed, config.depth_max, config.model)
}

pub(crate) fn constrained_levels(
    members: &[InstructionId],
    allowed: &AllowedDigrams,
    depth: usize,
    model: SpaceModel,
) -> LevelCounts {
    let preds = predecessors(members, allowed);
    let n = members.len();
    let mut levels = Vec::with_capacity(depth);
    if depth == 0 {
        return LevelCounts::new(levels);
    }
    match model {
        SpaceModel::Tree => {
            let mut counts = vec![BigUint::one(); n];
            levels.push(BigUint::from(n));
            for _ in 1..depth {
                let next: Vec<BigUint> = preds
                    .iter()
                    .map(|ps| ps.iter().map(|&i| &counts[i]).sum())
                    .collect();
                levels.push(next.iter().sum());
                counts = next;
            }
        }
        SpaceModel::Reachable => {
            let mut seen = vec![true; n];
            levels.push(BigUint::from(n));
            for _ in 1..depth {
                let level: Vec<bool> = preds
                    .iter()
                    .map(|ps| ps.iter().any(|&i| seen[i]))
                    .collect();
                levels.push(BigUint::from(level.iter().filter(|&&b| b).count()));
                for (s, l) in seen.iter_mut().zip(level) {
                    *s |= l;
                }
            }
        }
    }
    LevelCounts::new(levels)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    pub(crate) fn subset(members: &[&str]) -> InstructionSubset {
        InstructionSubset {
            subset_id: 0,
            max_size: members.len().max(1),
            members: members.iter().map(|m| InstructionId::new(m)).collect::<BTreeSet<_>>(),
            oversized: false,
        }
    }

    fn cfg(depth: usize) -> SpaceModelConfig {
        SpaceModelConfig {
            depth_max: depth,
            ..Default::default()
        }
    }

    fn big(s: &str) -> BigUint {
        s.parse().unwrap()
    }

    #[test]
    fn all_instructions_examples() {
        assert_eq!(all_instructions_size(200, 1).total(), BigUint::from(200u32));
        assert_eq!(all_instructions_size(200, 3).total(), BigUint::from(8_040_200u32));
        assert_eq!(
            all_instructions_size(10, 20).total(),
            big("111111111111111111110")
        );
    }

    #[test]
    fn subset_only_examples() {
        assert_eq!(subset_only_size(10, 2).total(), BigUint::from(110u32));
        assert_eq!(subset_only_size(1, 7).total(), BigUint::from(7u32));
        assert_eq!(subset_only_size(20, 5).total(), BigUint::from(3_368_420u32));
    }

    #[test]
    fn single_edge_chain() {
        let lc = digram_constrained_size(
            &subset(&["a", "b"]),
            &AllowedDigrams::from_pairs([("a", "b")]),
            &cfg(3),
        );
        let levels: Vec<u32> = lc.levels().iter().map(|l| l.to_u32().unwrap()).collect();
        assert_eq!(levels, vec![2, 1, 0]);
        assert_eq!(lc.total(), BigUint::from(3u32));
    }

    #[test]
    fn complete_relation_matches_subset_only() {
        let s = subset(&["a", "b", "c"]);
        let mut pairs = Vec::new();
        for x in ["a", "b", "c"] {
            for y in ["a", "b", "c"] {
                pairs.push((x, y));
            }
        }
        let lc = digram_constrained_size(&s, &AllowedDigrams::from_pairs(pairs), &cfg(2));
        assert_eq!(lc.total(), BigUint::from(12u32));
        assert_eq!(lc, subset_only_size(3, 2));
    }

    #[test]
    fn empty_relation_is_level_one_only() {
        let s = subset(&["a", "b", "c", "d"]);
        let lc = digram_constrained_size(&s, &AllowedDigrams::default(), &cfg(6));
        assert_eq!(lc.total(), BigUint::from(4u32));
    }

    #[test]
    fn digrams_outside_subset_ignored() {
        let lc = digram_constrained_size(
            &subset(&["a", "b"]),
            &AllowedDigrams::from_pairs([("a", "z"), ("z", "b"), ("a", "b")]),
            &cfg(3),
        );
        assert_eq!(lc.total(), BigUint::from(3u32));
    }

    #[test]
    fn reachable_variant() {
        let reach = SpaceModelConfig {
            depth_max: 4,
            model: SpaceModel::Reachable,
            threshold: 1,
        };
        let lc = digram_constrained_size(
            &subset(&["a", "b", "c"]),
            &AllowedDigrams::from_pairs([("a", "b"), ("b", "b")]),
            &reach,
        );
        let levels: Vec<u32> = lc.levels().iter().map(|l| l.to_u32().unwrap()).collect();
        assert_eq!(levels, vec![3, 1, 1, 1]);
    }

    #[test]
    fn log10_large_and_small() {
        assert_eq!(log10(&BigUint::from(1000u32)), 3.0);
        let huge = BigUint::from(10u32).pow(400);
        assert!((log10(&huge) - 400.0).abs() < 1e-9);
        assert_eq!(log10(&BigUint::zero()), f64::NEG_INFINITY);
    }

    #[test]
    fn model_parse() {
        assert_eq!("tree".parse::<SpaceModel>(), Ok(SpaceModel::Tree));
        assert_eq!("reachable".parse::<SpaceModel>(), Ok(SpaceModel::Reachable));
        assert!("graph".parse::<SpaceModel>().is_err());
    }
}
