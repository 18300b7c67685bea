//! Bottom-up enumeration in `(depth, size, roster position, arguments)`
//! order.
//!
//! Levels below the maximum depth are kept in a bank so later levels can
//! reuse them as arguments. Within a level candidates are produced one size
//! at a time, so a search that stops early never builds the rest of the
//! level.

use std::collections::BTreeMap;
use std::ops::ControlFlow;

use super::candidate::Candidate;
use super::dsl::TypedInstruction;
use super::value::Type;
use super::{Gate, SynthConfig};

/// Why a stream ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StreamEnd {
    /// The visitor asked to stop.
    Stopped,
    /// Every candidate up to the maximum depth was emitted.
    Exhausted,
    /// The node budget or the bank limit was reached first.
    BudgetLimited,
}

/// Argument choices for one instruction on one level.
struct Plan<'a> {
    instr: &'a TypedInstruction,
    positions: Vec<Vec<Candidate>>,
    last_by_size: BTreeMap<usize, Vec<Candidate>>,
}

struct Emitter<'v> {
    emitted: u64,
    budget: u64,
    target: Option<Type>,
    visit: &'v mut dyn FnMut(&Candidate) -> ControlFlow<()>,
}

impl Emitter<'_> {
    fn offer(&mut self, c: &Candidate) -> ControlFlow<StreamEnd> {
        if self.target.is_some_and(|t| t != c.ty()) {
            return ControlFlow::Continue(());
        }
        if self.emitted >= self.budget {
            return ControlFlow::Break(StreamEnd::BudgetLimited);
        }
        self.emitted += 1;
        match (self.visit)(c) {
            ControlFlow::Continue(()) => ControlFlow::Continue(()),
            ControlFlow::Break(()) => ControlFlow::Break(StreamEnd::Stopped),
        }
    }
}

fn gated_pool(pool: &[Candidate], ty: Type, parent: &TypedInstruction, gate: &Gate) -> Vec<Candidate> {
    pool.iter()
        .filter(|c| c.ty() == ty)
        .filter(|c| match c.root() {
            None => true,
            Some(child) => gate.permits(child, &parent.id),
        })
        .cloned()
        .collect()
}

fn plan<'a>(instr: &'a TypedInstruction, pool: &[Candidate], gate: &Gate) -> Plan<'a> {
    let positions: Vec<Vec<Candidate>> = instr
        .arg_types
        .iter()
        .map(|&t| gated_pool(pool, t, instr, gate))
        .collect();
    let mut last_by_size: BTreeMap<usize, Vec<Candidate>> = BTreeMap::new();
    if let Some(last) = positions.last() {
        for c in last {
            last_by_size.entry(c.size()).or_default().push(c.clone());
        }
    }
    Plan {
        instr,
        positions,
        last_by_size,
    }
}

/// Calls `f` on every argument tuple whose sizes sum to `remaining` and
/// which contains at least one argument of depth `deepest`, in
/// lexicographic order of bank position.
fn tuples(
    plan: &Plan<'_>,
    pos: usize,
    remaining: usize,
    deep: bool,
    deepest: usize,
    args: &mut Vec<Candidate>,
    f: &mut dyn FnMut(&[Candidate]) -> ControlFlow<StreamEnd>,
) -> ControlFlow<StreamEnd> {
    let k = plan.positions.len();
    if pos + 1 == k {
        if let Some(group) = plan.last_by_size.get(&remaining) {
            for c in group {
                if !deep && c.depth() != deepest {
                    continue;
                }
                args.push(c.clone());
                let r = f(args);
                args.pop();
                r?;
            }
        }
        return ControlFlow::Continue(());
    }
    let rest = k - pos - 1;
    for c in &plan.positions[pos] {
        if c.size() + rest > remaining {
            continue;
        }
        args.push(c.clone());
        let r = tuples(
            plan,
            pos + 1,
            remaining - c.size(),
            deep || c.depth() == deepest,
            deepest,
            args,
            f,
        );
        args.pop();
        r?;
    }
    ControlFlow::Continue(())
}

/// Leaves in stream order: inputs, then the constant pool.
pub(crate) fn leaves(config: &SynthConfig, inputs: &[Type]) -> Vec<Candidate> {
    let mut out: Vec<Candidate> = inputs
        .iter()
        .enumerate()
        .map(|(i, &t)| Candidate::input(i, t))
        .collect();
    out.extend(config.constants.iter().cloned().map(Candidate::constant));
    out
}

/// Streams candidates to `visit`. Only candidates of type `target` are
/// emitted and counted against the budget; `None` emits every type.
/// Returns the number of emitted candidates and why the stream ended.
pub fn enumerate_with(
    config: &SynthConfig,
    inputs: &[Type],
    target: Option<Type>,
    visit: &mut dyn FnMut(&Candidate) -> ControlFlow<()>,
) -> (u64, StreamEnd) {
    let mut em = Emitter {
        emitted: 0,
        budget: config.node_budget,
        target,
        visit,
    };
    let end = match stream(config, inputs, &mut em) {
        ControlFlow::Continue(()) => StreamEnd::Exhausted,
        ControlFlow::Break(end) => end,
    };
    (em.emitted, end)
}

fn stream(config: &SynthConfig, inputs: &[Type], em: &mut Emitter<'_>) -> ControlFlow<StreamEnd> {
    let mut pool = leaves(config, inputs);
    for c in &pool {
        em.offer(c)?;
    }
    let instructions = config.dsl.instructions();
    let max_arity = instructions.iter().map(|i| i.arity()).max().unwrap_or(0);

    let mut max_size = 1usize;
    for d in 1..=config.max_depth {
        max_size = max_size.saturating_mul(max_arity).saturating_add(1);
        let last = d == config.max_depth;
        let plans: Vec<Plan<'_>> = instructions
            .iter()
            .filter(|i| !last || em.target.is_none_or(|t| t == i.return_type))
            .map(|i| plan(i, &pool, &config.gate))
            .collect();

        let mut level: Vec<Candidate> = Vec::new();
        let mut args = Vec::new();
        for size in (d + 1)..=max_size {
            for p in &plans {
                let mut f = |a: &[Candidate]| {
                    let c = Candidate::apply_unchecked(p.instr, a);
                    if !last {
                        if pool.len() + level.len() >= config.bank_limit {
                            return ControlFlow::Break(StreamEnd::BudgetLimited);
                        }
                        level.push(c.clone());
                    }
                    em.offer(&c)
                };
                tuples(p, 0, size - 1, false, d - 1, &mut args, &mut f)?;
            }
        }
        if level.is_empty() {
            // nothing of depth d means nothing deeper either
            break;
        }
        drop(plans);
        pool.extend(level);
    }
    ControlFlow::Continue(())
}

/// The stream as a vector, truncated at the node budget.
pub fn enumerate(config: &SynthConfig, inputs: &[Type], target: Option<Type>) -> Vec<Candidate> {
    let mut out = Vec::new();
    enumerate_with(config, inputs, target, &mut |c| {
        out.push(c.clone());
        ControlFlow::Continue(())
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digram::AllowedDigrams;
    use crate::synth::dsl::Dsl;

    fn inc_dbl(gate: Gate, depth: usize) -> SynthConfig {
        SynthConfig {
            constants: Vec::new(),
            max_depth: depth,
            ..SynthConfig::new(Dsl::from_names(&["inc", "dbl"]).unwrap(), gate)
        }
    }

    fn names(cs: &[Candidate]) -> Vec<String> {
        cs.iter().map(Candidate::to_call_string).collect()
    }

    #[test]
    fn complete_stream() {
        let s = enumerate(&inc_dbl(Gate::Complete, 2), &[Type::Int], Some(Type::Int));
        assert_eq!(
            names(&s),
            [
                "x0",
                "inc(x0)",
                "dbl(x0)",
                "inc(inc(x0))",
                "inc(dbl(x0))",
                "dbl(inc(x0))",
                "dbl(dbl(x0))"
            ]
        );
    }

    #[test]
    fn gated_stream() {
        let gate = Gate::Allowed(AllowedDigrams::from_pairs([("inc", "dbl")]));
        let s = enumerate(&inc_dbl(gate, 2), &[Type::Int], Some(Type::Int));
        assert_eq!(names(&s), ["x0", "inc(x0)", "dbl(x0)", "dbl(inc(x0))"]);
    }

    #[test]
    fn empty_gate_stops_at_depth_one() {
        let gate = Gate::Allowed(AllowedDigrams::default());
        let s = enumerate(&inc_dbl(gate, 5), &[Type::Int], Some(Type::Int));
        assert_eq!(s.len(), 3);
        assert!(s.iter().all(|c| c.depth() <= 1));
    }

    #[test]
    fn order_is_depth_then_size() {
        let cfg = SynthConfig {
            max_depth: 2,
            ..SynthConfig::new(Dsl::from_names(&["inc", "+", "len", "str"]).unwrap(), Gate::Complete)
        };
        let s = enumerate(&cfg, &[Type::Int], None);
        assert!(s.len() > 50);
        for w in s.windows(2) {
            assert!((w[0].depth(), w[0].size()) <= (w[1].depth(), w[1].size()));
        }
        // every candidate is distinct
        let set: std::collections::BTreeSet<String> = s.iter().map(|c| c.to_string()).collect();
        assert_eq!(set.len(), s.len());
    }

    #[test]
    fn budget_truncates() {
        let mut cfg = inc_dbl(Gate::Complete, 3);
        cfg.node_budget = 4;
        let (n, end) = enumerate_with(&cfg, &[Type::Int], Some(Type::Int), &mut |_| {
            ControlFlow::Continue(())
        });
        assert_eq!(n, 4);
        assert_eq!(end, StreamEnd::BudgetLimited);
    }

    #[test]
    fn bank_limit_truncates() {
        let mut cfg = SynthConfig::new(Dsl::standard(), Gate::Complete);
        cfg.max_depth = 3;
        cfg.bank_limit = 100;
        let (_, end) = enumerate_with(&cfg, &[Type::Int], Some(Type::Int), &mut |_| {
            ControlFlow::Continue(())
        });
        assert_eq!(end, StreamEnd::BudgetLimited);
    }

    #[test]
    fn gated_is_subsequence_of_complete() {
        let dsl = Dsl::from_names(&["inc", "dbl", "+", "len", "str"]).unwrap();
        let complete = SynthConfig {
            max_depth: 2,
            ..SynthConfig::new(dsl.clone(), Gate::Complete)
        };
        let gated = SynthConfig {
            gate: Gate::Allowed(AllowedDigrams::from_pairs([("inc", "+"), ("str", "len")])),
            ..complete.clone()
        };
        let a = names(&enumerate(&complete, &[Type::Int], Some(Type::Int)));
        let b = names(&enumerate(&gated, &[Type::Int], Some(Type::Int)));
        assert!(b.len() < a.len());
        let mut it = a.iter();
        for x in &b {
            assert!(it.any(|y| y == x), "{x} out of order");
        }
    }
}
