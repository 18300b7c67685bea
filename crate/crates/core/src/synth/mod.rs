//! Enumerative generate-and-test synthesis with a digram gate.
//!
//! Candidates are enumerated bottom-up in order of depth and size. A node
//! labelled `F2` whose argument is rooted at instruction `F1` is only built
//! when `(F1, F2)` is allowed; inputs and constants may appear under any
//! instruction. The first candidate that passes every test is returned.

mod candidate;
mod dsl;
mod enumerate;
mod task;
mod value;

use std::ops::ControlFlow;

pub use candidate::Candidate;
pub use dsl::{catalog, Dsl, Semantics, TypedInstruction, RANGE_LIMIT};
pub use enumerate::{enumerate, enumerate_with, StreamEnd};
pub use task::{load_tasks, parse_tasks, run_regimes, write_results, SynthRow, Task};
pub use value::{DomainError, Type, Value};

use crate::digram::{AllowedDigrams, InstructionId};
use crate::error::{Error, Result};
use crate::subset::InstructionSubset;

/// Which instruction compositions the enumerator may build.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Gate {
    Complete,
    Allowed(AllowedDigrams),
}

impl Gate {
    pub fn permits(&self, child: &InstructionId, parent: &InstructionId) -> bool {
        match self {
            Gate::Complete => true,
            Gate::Allowed(a) => a.contains(child, parent),
        }
    }
}

/// The constant pool used unless configured otherwise.
pub fn default_constants() -> Vec<Value> {
    vec![Value::int(0), Value::int(1), Value::str(""), Value::list(&[])]
}

#[derive(Debug, Clone)]
pub struct SynthConfig {
    pub dsl: Dsl,
    pub gate: Gate,
    pub max_depth: usize,
    /// Candidates evaluated before giving up.
    pub node_budget: u64,
    pub constants: Vec<Value>,
    /// Cap on banked intermediate candidates, a memory guard.
    pub bank_limit: usize,
}

impl SynthConfig {
    pub fn new(dsl: Dsl, gate: Gate) -> SynthConfig {
        SynthConfig {
            dsl,
            gate,
            max_depth: 3,
            node_budget: 1_000_000,
            constants: default_constants(),
            bank_limit: 2_000_000,
        }
    }

    pub fn restricted_to(mut self, subset: &InstructionSubset) -> SynthConfig {
        self.dsl = self.dsl.restrict(subset);
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.node_budget == 0 {
            return Err(Error::Config("node budget must be at least 1".into()));
        }
        if self.bank_limit == 0 {
            return Err(Error::Config("bank limit must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TestCase {
    pub inputs: Vec<Value>,
    pub expected: Value,
}

impl TestCase {
    pub fn new(inputs: Vec<Value>, expected: Value) -> TestCase {
        TestCase { inputs, expected }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SynthOutcome {
    Found {
        candidate: Candidate,
        expansions: u64,
    },
    NotFound {
        expansions: u64,
        budget_limited: bool,
    },
}

impl SynthOutcome {
    pub fn expansions(&self) -> u64 {
        match self {
            SynthOutcome::Found { expansions, .. } | SynthOutcome::NotFound { expansions, .. } => {
                *expansions
            }
        }
    }

    pub fn candidate(&self) -> Option<&Candidate> {
        match self {
            SynthOutcome::Found { candidate, .. } => Some(candidate),
            SynthOutcome::NotFound { .. } => None,
        }
    }

    pub fn is_found(&self) -> bool {
        self.candidate().is_some()
    }
}

/// Input types and output type shared by every test.
pub fn signature(tests: &[TestCase]) -> Result<(Vec<Type>, Type)> {
    let first = tests
        .first()
        .ok_or_else(|| Error::Argument("a task needs at least one test".into()))?;
    let inputs: Vec<Type> = first.inputs.iter().map(Value::ty).collect();
    let output = first.expected.ty();
    for (i, t) in tests.iter().enumerate() {
        if t.inputs.len() != inputs.len() {
            return Err(Error::Argument(format!(
                "test {i} has {} inputs, expected {}",
                t.inputs.len(),
                inputs.len()
            )));
        }
        if t.inputs.iter().map(Value::ty).ne(inputs.iter().copied()) || t.expected.ty() != output {
            return Err(Error::Argument(format!("test {i} has inconsistent value types")));
        }
    }
    Ok((inputs, output))
}

/// True when the candidate reproduces every expected output. Domain errors
/// count as failures.
pub fn check(candidate: &Candidate, tests: &[TestCase]) -> bool {
    tests
        .iter()
        .all(|t| candidate.eval(&t.inputs).is_ok_and(|v| v == t.expected))
}

pub fn synthesize(tests: &[TestCase], config: &SynthConfig) -> Result<SynthOutcome> {
    config.validate()?;
    let (inputs, output) = signature(tests)?;
    let mut found = None;
    let (expansions, end) = enumerate_with(config, &inputs, Some(output), &mut |c| {
        if check(c, tests) {
            found = Some(c.clone());
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    match found {
        Some(candidate) => {
            if !check(&candidate, tests) {
                return Err(Error::Invariant(format!("{candidate} fails its own tests")));
            }
            Ok(SynthOutcome::Found {
                candidate,
                expansions,
            })
        }
        None => Ok(SynthOutcome::NotFound {
            expansions,
            budget_limited: end == StreamEnd::BudgetLimited,
        }),
    }
}

pub fn count_expansions(tests: &[TestCase], config: &SynthConfig) -> Result<u64> {
    synthesize(tests, config).map(|o| o.expansions())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inc_dbl(gate: Gate) -> SynthConfig {
        SynthConfig {
            constants: Vec::new(),
            max_depth: 2,
            ..SynthConfig::new(Dsl::from_names(&["inc", "dbl"]).unwrap(), gate)
        }
    }

    fn allowed(pairs: &[(&'static str, &'static str)]) -> Gate {
        Gate::Allowed(AllowedDigrams::from_pairs(pairs.iter().copied()))
    }

    fn one(i: i64, o: i64) -> Vec<TestCase> {
        vec![TestCase::new(vec![Value::int(i)], Value::int(o))]
    }

    #[test]
    fn finds_dbl_of_inc() {
        let out = synthesize(&one(3, 8), &inc_dbl(allowed(&[("inc", "dbl")]))).unwrap();
        let c = out.candidate().unwrap();
        assert_eq!(c.to_call_string(), "dbl(inc(x0))");
        assert_eq!(c.depth(), 2);
        assert_eq!(out.expansions(), 4);
    }

    #[test]
    fn identity_task() {
        let out = synthesize(&one(3, 3), &inc_dbl(Gate::Complete)).unwrap();
        assert_eq!(out.candidate().unwrap().to_call_string(), "x0");
        assert_eq!(out.expansions(), 1);
    }

    #[test]
    fn wrong_digram_not_found() {
        let out = synthesize(&one(3, 8), &inc_dbl(allowed(&[("dbl", "inc")]))).unwrap();
        assert_eq!(
            out,
            SynthOutcome::NotFound {
                expansions: 4,
                budget_limited: false
            }
        );
    }

    #[test]
    fn expansion_counts() {
        let never = one(3, -100);
        assert_eq!(count_expansions(&never, &inc_dbl(Gate::Complete)).unwrap(), 7);
        assert_eq!(
            count_expansions(&never, &inc_dbl(allowed(&[("inc", "dbl")]))).unwrap(),
            4
        );
        assert_eq!(count_expansions(&never, &inc_dbl(allowed(&[]))).unwrap(), 3);
    }

    #[test]
    fn check_examples() {
        let c = synthesize(&one(3, 8), &inc_dbl(Gate::Complete))
            .unwrap()
            .candidate()
            .cloned()
            .unwrap();
        assert!(check(&c, &one(3, 8)));
        assert!(!check(&c, &one(3, 9)));
    }

    #[test]
    fn division_by_zero_is_rejection() {
        let dsl = Dsl::from_names(&["//"]).unwrap();
        let div = &dsl.instructions()[0];
        let c = Candidate::apply(
            div,
            &[Candidate::constant(Value::int(1)), Candidate::input(0, Type::Int)],
        )
        .unwrap();
        assert!(!check(&c, &one(0, 0)));
        assert!(check(&c, &one(1, 1)));
    }

    #[test]
    fn budget_limited_flag() {
        let cfg = SynthConfig {
            node_budget: 2,
            ..inc_dbl(Gate::Complete)
        };
        let out = synthesize(&one(3, -100), &cfg).unwrap();
        assert_eq!(
            out,
            SynthOutcome::NotFound {
                expansions: 2,
                budget_limited: true
            }
        );
    }

    #[test]
    fn bad_tests_rejected() {
        let cfg = inc_dbl(Gate::Complete);
        assert!(synthesize(&[], &cfg).is_err());
        let mixed = vec![
            TestCase::new(vec![Value::int(1)], Value::int(1)),
            TestCase::new(vec![Value::int(1), Value::int(2)], Value::int(1)),
        ];
        assert!(synthesize(&mixed, &cfg).is_err());
        let typed = vec![
            TestCase::new(vec![Value::int(1)], Value::int(1)),
            TestCase::new(vec![Value::str("a")], Value::int(1)),
        ];
        assert!(synthesize(&typed, &cfg).is_err());
        let zero = SynthConfig {
            node_budget: 0,
            ..cfg
        };
        assert!(synthesize(&one(1, 1), &zero).is_err());
    }

    #[test]
    fn standard_roster_string_task() {
        let cfg = SynthConfig::new(Dsl::standard(), Gate::Complete);
        let tests = vec![
            TestCase::new(vec![Value::str(" ab ")], Value::str("AB")),
            TestCase::new(vec![Value::str("c")], Value::str("C")),
        ];
        let out = synthesize(&tests, &cfg).unwrap();
        assert_eq!(out.candidate().unwrap().to_call_string(), "upper(strip(x0))");
    }

    #[test]
    fn deterministic() {
        let cfg = SynthConfig::new(Dsl::standard(), Gate::Complete);
        let tests = vec![
            TestCase::new(vec![Value::list(&[3, 1, 2])], Value::int(6)),
            TestCase::new(vec![Value::list(&[5])], Value::int(5)),
        ];
        let a = synthesize(&tests, &cfg).unwrap();
        let b = synthesize(&tests, &cfg).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.candidate().unwrap().to_call_string(), "sum(x0)");
    }
}
