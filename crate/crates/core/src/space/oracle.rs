//! Literal search-tree construction, used to cross-check the level
//! recurrence on small instances.

use std::fmt;

use num_bigint::BigUint;

use super::LevelCounts;
use crate::digram::{AllowedDigrams, InstructionId};
use crate::subset::InstructionSubset;

pub const DEFAULT_NODE_BUDGET: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleError {
    BudgetExceeded { budget: usize },
}

impl fmt::Display for OracleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleError::BudgetExceeded { budget } => {
                write!(f, "tree exceeds the node budget of {budget}")
            }
        }
    }
}

impl std::error::Error for OracleError {}

struct Node {
    #[allow(dead_code)]
    label: InstructionId,
    children: Vec<Node>,
}

struct Builder<'a> {
    members: &'a [InstructionId],
    allowed: &'a AllowedDigrams,
    depth: usize,
    created: usize,
    budget: usize,
}

impl Builder<'_> {
    fn node(&mut self, label: &InstructionId, level: usize) -> Result<Node, OracleError> {
        self.created += 1;
        if self.created > self.budget {
            return Err(OracleError::BudgetExceeded {
                budget: self.budget,
            });
        }
        let mut children = Vec::new();
        if level < self.depth {
            for next in self.members {
                if self.allowed.contains(label, next) {
                    children.push(self.node(next, level + 1)?);
                }
            }
        }
        Ok(Node {
            label: label.clone(),
            children,
        })
    }
}

fn count(node: &Node, level: usize, per_level: &mut [u64]) {
    per_level[level - 1] += 1;
    for c in &node.children {
        count(c, level + 1, per_level);
    }
}

/// Materializes every node of the digram-gated search tree to `depth`
/// levels and counts them. Refuses once more than `budget` nodes exist.
pub fn tree_enumeration_oracle(
    subset: &InstructionSubset,
    allowed: &AllowedDigrams,
    depth: usize,
    budget: usize,
) -> Result<LevelCounts, OracleError> {
    let members: Vec<InstructionId> = subset.members.iter().cloned().collect();
    let mut builder = Builder {
        members: &members,
        allowed,
        depth,
        created: 0,
        budget,
    };
    let mut roots = Vec::new();
    if depth > 0 {
        for m in &members {
            roots.push(builder.node(m, 1)?);
        }
    }
    let mut per_level = vec![0u64; depth];
    for r in &roots {
        count(r, 1, &mut per_level);
    }
    Ok(LevelCounts::new(
        per_level.into_iter().map(BigUint::from).collect(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::tests::subset;
    use crate::space::{digram_constrained_size, SpaceModelConfig};

    fn totals(s: &InstructionSubset, allowed: &AllowedDigrams, depth: usize) -> (BigUint, BigUint) {
        let cfg = SpaceModelConfig {
            depth_max: depth,
            ..Default::default()
        };
        let oracle = tree_enumeration_oracle(s, allowed, depth, DEFAULT_NODE_BUDGET).unwrap();
        (oracle.total(), digram_constrained_size(s, allowed, &cfg).total())
    }

    #[test]
    fn agrees_on_worked_examples() {
        let ab = subset(&["a", "b"]);
        let (o, r) = totals(&ab, &AllowedDigrams::from_pairs([("a", "b")]), 3);
        assert_eq!(o, BigUint::from(3u32));
        assert_eq!(o, r);

        let abc = subset(&["a", "b", "c"]);
        let complete: Vec<(&str, &str)> = ["a", "b", "c"]
            .iter()
            .flat_map(|x| ["a", "b", "c"].map(|y| (*x, y)))
            .collect();
        let (o, r) = totals(&abc, &AllowedDigrams::from_pairs(complete), 2);
        assert_eq!(o, BigUint::from(12u32));
        assert_eq!(o, r);

        let (o, r) = totals(&abc, &AllowedDigrams::default(), 5);
        assert_eq!(o, BigUint::from(3u32));
        assert_eq!(o, r);
    }

    #[test]
    fn self_loop_chain() {
        let lc = tree_enumeration_oracle(
            &subset(&["a"]),
            &AllowedDigrams::from_pairs([("a", "a")]),
            4,
            100,
        )
        .unwrap();
        assert_eq!(lc.levels(), &[1u32, 1, 1, 1].map(BigUint::from));
    }

    #[test]
    fn depth_one_is_subset_size() {
        let s = subset(&["a", "b", "c", "d"]);
        let all: Vec<(&str, &str)> = vec![("a", "b"), ("b", "c"), ("d", "d")];
        let lc = tree_enumeration_oracle(&s, &AllowedDigrams::from_pairs(all), 1, 100).unwrap();
        assert_eq!(lc.total(), BigUint::from(4u32));
    }

    #[test]
    fn budget_refusal() {
        let s = subset(&["a", "b"]);
        let all = AllowedDigrams::from_pairs([("a", "a"), ("a", "b"), ("b", "a"), ("b", "b")]);
        let err = tree_enumeration_oracle(&s, &all, 12, 1000).unwrap_err();
        assert_eq!(err, OracleError::BudgetExceeded { budget: 1000 });
    }
}
