//! Task files and result rows.
//!
//! A task file is JSON Lines, one task per line:
//!
//! ```text
//! {"id": "double-plus-two", "tests": [{"inputs": [3], "expected": 8}]}
//! ```
//!
//! Results are CSV with header `task_id,regime,expansions,found,depth`.

use std::fs;
use std::io::Write;
use std::path::Path;

use serde_json::Value as Json;

use super::{synthesize, Dsl, Gate, SynthConfig, SynthOutcome, TestCase, Value};
use crate::digram::AllowedDigrams;
use crate::error::{Error, Result};
use crate::subset::InstructionSubset;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Task {
    pub id: String,
    pub tests: Vec<TestCase>,
}

fn parse_test(v: &Json) -> std::result::Result<TestCase, String> {
    let obj = v.as_object().ok_or("each test must be an object")?;
    let inputs = obj
        .get("inputs")
        .and_then(Json::as_array)
        .ok_or("test is missing an \"inputs\" list")?
        .iter()
        .map(Value::from_json)
        .collect::<std::result::Result<Vec<_>, _>>()?;
    let expected = Value::from_json(obj.get("expected").ok_or("test is missing \"expected\"")?)?;
    Ok(TestCase { inputs, expected })
}

fn parse_task(line: &str) -> std::result::Result<Task, String> {
    let v: Json = serde_json::from_str(line).map_err(|e| e.to_string())?;
    let id = match v.get("id") {
        Some(Json::String(s)) => s.clone(),
        Some(Json::Number(n)) => n.to_string(),
        _ => return Err("task is missing an \"id\"".into()),
    };
    let tests = v
        .get("tests")
        .and_then(Json::as_array)
        .ok_or("task is missing a \"tests\" list")?
        .iter()
        .map(parse_test)
        .collect::<std::result::Result<Vec<_>, _>>()?;
    let task = Task { id, tests };
    super::signature(&task.tests).map_err(|e| e.to_string())?;
    Ok(task)
}

/// Parses JSON Lines; `path` is only used in error messages.
pub fn parse_tasks(text: &str, path: &Path) -> Result<Vec<Task>> {
    let mut tasks = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let task = parse_task(line).map_err(|m| Error::format(path, i + 1, m))?;
        if tasks.iter().any(|t: &Task| t.id == task.id) {
            return Err(Error::format(path, i + 1, format!("duplicate task id {:?}", task.id)));
        }
        tasks.push(task);
    }
    Ok(tasks)
}

pub fn load_tasks(path: &Path) -> Result<Vec<Task>> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_tasks(&text, path)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SynthRow {
    pub task_id: String,
    pub regime: &'static str,
    pub expansions: u64,
    pub found: bool,
    pub depth: Option<usize>,
    pub budget_limited: bool,
    /// Prefix notation of the solution.
    pub program: Option<String>,
}

fn row(task: &Task, regime: &'static str, outcome: &SynthOutcome) -> SynthRow {
    SynthRow {
        task_id: task.id.clone(),
        regime,
        expansions: outcome.expansions(),
        found: outcome.is_found(),
        depth: outcome.candidate().map(|c| c.depth()),
        budget_limited: matches!(
            outcome,
            SynthOutcome::NotFound {
                budget_limited: true,
                ..
            }
        ),
        program: outcome.candidate().map(|c| c.to_string()),
    }
}

/// Tries each subset in turn until one succeeds. The node budget is shared
/// by all subsets, so the regime never evaluates more than `base` allows.
fn over_subsets(task: &Task, base: &SynthConfig, subsets: &[InstructionSubset]) -> Result<SynthOutcome> {
    let mut configs: Vec<SynthConfig> = subsets
        .iter()
        .map(|s| base.clone().restricted_to(s))
        .filter(|c| !c.dsl.is_empty())
        .collect();
    if configs.is_empty() {
        configs.push(SynthConfig {
            dsl: Dsl::new(Vec::new())?,
            ..base.clone()
        });
    }
    let mut spent = 0u64;
    let mut limited = false;
    for mut cfg in configs {
        if spent >= base.node_budget {
            limited = true;
            break;
        }
        cfg.node_budget = base.node_budget - spent;
        match synthesize(&task.tests, &cfg)? {
            SynthOutcome::Found {
                candidate,
                expansions,
            } => {
                return Ok(SynthOutcome::Found {
                    candidate,
                    expansions: spent + expansions,
                })
            }
            SynthOutcome::NotFound {
                expansions,
                budget_limited,
            } => {
                spent += expansions;
                limited |= budget_limited;
            }
        }
    }
    Ok(SynthOutcome::NotFound {
        expansions: spent,
        budget_limited: limited,
    })
}

/// Runs a task under the complete and digram regimes, plus the subset
/// regimes when subsets are given. The gate in `base` is ignored.
pub fn run_regimes(
    task: &Task,
    base: &SynthConfig,
    allowed: &AllowedDigrams,
    subsets: Option<&[InstructionSubset]>,
) -> Result<Vec<SynthRow>> {
    let complete = SynthConfig {
        gate: Gate::Complete,
        ..base.clone()
    };
    let gated = SynthConfig {
        gate: Gate::Allowed(allowed.clone()),
        ..base.clone()
    };
    let mut rows = vec![
        row(task, "complete", &synthesize(&task.tests, &complete)?),
        row(task, "digram", &synthesize(&task.tests, &gated)?),
    ];
    if let Some(subsets) = subsets {
        rows.push(row(task, "subset", &over_subsets(task, &complete, subsets)?));
        rows.push(row(task, "subset+digram", &over_subsets(task, &gated, subsets)?));
    }
    Ok(rows)
}

pub fn write_results(rows: &[SynthRow], out: impl Write) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let err = |e: csv::Error| Error::Io {
        path: "<results>".into(),
        source: std::io::Error::other(e),
    };
    w.write_record(["task_id", "regime", "expansions", "found", "depth"])
        .map_err(err)?;
    for r in rows {
        let depth = r.depth.map(|d| d.to_string()).unwrap_or_default();
        w.write_record([
            r.task_id.as_str(),
            r.regime,
            &r.expansions.to_string(),
            if r.found { "true" } else { "false" },
            &depth,
        ])
        .map_err(err)?;
    }
    w.flush().map_err(|e| Error::Io {
        path: "<results>".into(),
        source: e,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: &str = "tasks.jsonl";

    #[test]
    fn parse_and_reject() {
        let text = "{\"id\": \"t1\", \"tests\": [{\"inputs\": [3], \"expected\": 8}]}\n\n\
                    {\"id\": 2, \"tests\": [{\"inputs\": [\"a\", [1,2]], \"expected\": \"b\"}]}\n";
        let tasks = parse_tasks(text, Path::new(P)).unwrap();
        assert_eq!(tasks.len(), 2);
        assert_eq!(tasks[1].id, "2");
        assert_eq!(tasks[1].tests[0].inputs[1], Value::list(&[1, 2]));

        let bad = "{\"id\": \"t\", \"tests\": []}\n";
        assert!(matches!(
            parse_tasks(bad, Path::new(P)),
            Err(Error::Format { line: 1, .. })
        ));
        let dup = "{\"id\": \"t\", \"tests\": [{\"inputs\": [1], \"expected\": 1}]}\n".repeat(2);
        assert!(matches!(
            parse_tasks(&dup, Path::new(P)),
            Err(Error::Format { line: 2, .. })
        ));
        assert!(parse_tasks("not json\n", Path::new(P)).is_err());
        assert!(parse_tasks("{\"id\": \"t\", \"tests\": [{\"inputs\": [1.5], \"expected\": 1}]}", Path::new(P)).is_err());
    }

    #[test]
    fn regimes_and_csv() {
        let task = Task {
            id: "inc,dbl".into(),
            tests: vec![TestCase::new(vec![Value::int(3)], Value::int(8))],
        };
        let base = SynthConfig {
            constants: Vec::new(),
            max_depth: 2,
            ..SynthConfig::new(Dsl::from_names(&["inc", "dbl"]).unwrap(), Gate::Complete)
        };
        let allowed = AllowedDigrams::from_pairs([("inc", "dbl")]);
        let rows = run_regimes(&task, &base, &allowed, None).unwrap();
        assert_eq!(rows[0].expansions, 6);
        assert_eq!(rows[1].expansions, 4);
        assert_eq!(rows[1].program.as_deref(), Some("(dbl (inc x0))"));

        let mut buf = Vec::new();
        write_results(&rows, &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "task_id,regime,expansions,found,depth\n\"inc,dbl\",complete,6,true,2\n\"inc,dbl\",digram,4,true,2\n"
        );
    }

    #[test]
    fn subset_regimes() {
        let task = Task {
            id: "t".into(),
            tests: vec![TestCase::new(vec![Value::int(3)], Value::int(8))],
        };
        let base = SynthConfig {
            constants: Vec::new(),
            max_depth: 2,
            ..SynthConfig::new(Dsl::standard(), Gate::Complete)
        };
        let s = |id: usize, names: &[&str]| InstructionSubset {
            subset_id: id,
            max_size: 3,
            members: names.iter().map(|n| crate::InstructionId::new(n)).collect(),
            oversized: false,
        };
        let subsets = [s(0, &["upper", "strip"]), s(1, &["sum"]), s(2, &["inc", "dbl"])];
        let rows = run_regimes(
            &task,
            &base,
            &AllowedDigrams::from_pairs([("inc", "dbl")]),
            Some(&subsets),
        )
        .unwrap();
        assert_eq!(rows.len(), 4);
        assert!(rows.iter().all(|r| r.found));
        assert!(rows[2].expansions < rows[0].expansions);
        assert!(rows[3].expansions <= rows[2].expansions);
    }
}
