//! Program units and bounded instruction subsets.
//!
//! A program unit is a top-level function (or a whole file when it defines
//! no functions) reduced to the set of distinct instructions it uses.
//! Subsets are grown from unit sets by greedy agglomeration: the pair of
//! clusters with the highest Jaccard overlap whose union still fits the cap
//! is merged until no such pair remains.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, BinaryHeap};
use std::fs;
use std::path::Path;
use std::rc::Rc;

use crate::digram::{instructions_in, InstructionId};
use crate::error::{Error, Result};
use crate::frontend::{FrontendConfig, ParsedFile};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProgramUnit {
    pub unit_id: String,
    pub instructions: BTreeSet<InstructionId>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstructionSubset {
    pub subset_id: usize,
    pub max_size: usize,
    pub members: BTreeSet<InstructionId>,
    /// A single unit larger than `max_size`, kept so coverage stays total.
    pub oversized: bool,
}

impl InstructionSubset {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, id: &str) -> bool {
        self.members.contains(id)
    }
}

/// Marker for oversized subsets in the subsets file.
const OVERSIZED_MARK: &str = "#oversized ";

/// One unit per top-level function; a file without functions is one unit.
/// Units without any instruction are dropped.
pub fn extract_units(files: &[ParsedFile], cfg: &FrontendConfig) -> Vec<ProgramUnit> {
    let mut units = Vec::new();
    for file in files {
        let labelled: Vec<(usize, BTreeSet<InstructionId>)> = file
            .asts()
            .map(|(frag, ast)| (frag.line, instructions_in(ast, cfg)))
            .collect();
        if file.functions.is_empty() {
            let all: BTreeSet<InstructionId> =
                labelled.into_iter().flat_map(|(_, ids)| ids).collect();
            if !all.is_empty() {
                units.push(ProgramUnit {
                    unit_id: format!("{}::<module>", file.path),
                    instructions: all,
                });
            }
            continue;
        }
        for span in &file.functions {
            let ids: BTreeSet<InstructionId> = labelled
                .iter()
                .filter(|(line, _)| (span.start_line..=span.end_line).contains(line))
                .flat_map(|(_, ids)| ids.iter().cloned())
                .collect();
            if !ids.is_empty() {
                units.push(ProgramUnit {
                    unit_id: format!("{}::{}@{}", file.path, span.name, span.start_line),
                    instructions: ids,
                });
            }
        }
    }
    units
}

type Members = Rc<BTreeSet<InstructionId>>;

/// Merge candidate. Ordered so that the heap maximum is the pair to merge:
/// highest Jaccard overlap, then the lexicographically smallest clusters.
struct Pair {
    inter: usize,
    union: usize,
    lo: Members,
    hi: Members,
    a: usize,
    b: usize,
}

impl Pair {
    fn new(a: usize, ma: &Members, b: usize, mb: &Members) -> Pair {
        let inter = ma.intersection(mb).count();
        let union = ma.len() + mb.len() - inter;
        let (lo, hi) = if ma <= mb {
            (ma.clone(), mb.clone())
        } else {
            (mb.clone(), ma.clone())
        };
        Pair {
            inter,
            union,
            lo,
            hi,
            a,
            b,
        }
    }
}

impl Ord for Pair {
    fn cmp(&self, other: &Self) -> Ordering {
        // inter/union compared exactly by cross-multiplication
        (self.inter * other.union)
            .cmp(&(other.inter * self.union))
            .then_with(|| other.lo.cmp(&self.lo))
            .then_with(|| other.hi.cmp(&self.hi))
    }
}

impl PartialOrd for Pair {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl PartialEq for Pair {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Pair {}

/// Greedy Jaccard agglomeration of unit instruction sets under a size cap.
///
/// Only overlapping clusters are merged. Every unit that fits the cap ends
/// up inside at least one subset; larger units become flagged oversized
/// subsets of their own. Output is sorted by member list and numbered from 0.
pub fn cluster_subsets(units: &[ProgramUnit], max_size: usize) -> Result<Vec<InstructionSubset>> {
    if max_size < 1 {
        return Err(Error::Argument("max_size must be at least 1".into()));
    }
    let mut small: BTreeSet<BTreeSet<InstructionId>> = BTreeSet::new();
    let mut oversized: BTreeSet<BTreeSet<InstructionId>> = BTreeSet::new();
    for u in units {
        if u.instructions.len() > max_size {
            oversized.insert(u.instructions.clone());
        } else if !u.instructions.is_empty() {
            small.insert(u.instructions.clone());
        }
    }

    let mut clusters: Vec<Option<Members>> = small.into_iter().map(|s| Some(Rc::new(s))).collect();
    let mut heap = BinaryHeap::new();
    let push_pair = |heap: &mut BinaryHeap<Pair>, a: usize, ma: &Members, b: usize, mb: &Members| {
        let p = Pair::new(a, ma, b, mb);
        if p.inter > 0 && p.union <= max_size {
            heap.push(p);
        }
    };
    for i in 0..clusters.len() {
        for j in i + 1..clusters.len() {
            let (ci, cj) = (clusters[i].clone().unwrap(), clusters[j].clone().unwrap());
            push_pair(&mut heap, i, &ci, j, &cj);
        }
    }
    while let Some(pair) = heap.pop() {
        if clusters[pair.a].is_none() || clusters[pair.b].is_none() {
            continue;
        }
        let merged: BTreeSet<InstructionId> = pair.lo.union(&pair.hi).cloned().collect();
        clusters[pair.a] = None;
        clusters[pair.b] = None;
        let merged = Rc::new(merged);
        let k = clusters.len();
        clusters.push(Some(merged.clone()));
        for (m, c) in clusters.iter().enumerate().take(k) {
            if let Some(c) = c {
                push_pair(&mut heap, m, c, k, &merged);
            }
        }
    }

    let mut kept: BTreeSet<BTreeSet<InstructionId>> = clusters
        .into_iter()
        .flatten()
        .map(|rc| Rc::try_unwrap(rc).unwrap_or_else(|rc| (*rc).clone()))
        .collect();
    let mut out: Vec<InstructionSubset> = Vec::new();
    for members in std::mem::take(&mut kept) {
        out.push(InstructionSubset {
            subset_id: 0,
            max_size,
            members,
            oversized: false,
        });
    }
    for members in oversized {
        out.push(InstructionSubset {
            subset_id: 0,
            max_size,
            members,
            oversized: true,
        });
    }
    out.sort_by(|a, b| a.members.cmp(&b.members).then(a.oversized.cmp(&b.oversized)));
    for (i, s) in out.iter_mut().enumerate() {
        s.subset_id = i;
    }
    Ok(out)
}

/// True when some subset contains every instruction of `unit`.
pub fn is_covered(subsets: &[InstructionSubset], unit: &ProgramUnit, include_oversized: bool) -> bool {
    subsets
        .iter()
        .filter(|s| include_oversized || !s.oversized)
        .any(|s| unit.instructions.is_subset(&s.members))
}

pub fn save_subsets(subsets: &[InstructionSubset], max_size: usize, path: &Path) -> Result<()> {
    let mut out = format!("max_size={max_size}\n");
    for s in subsets {
        if s.oversized {
            out.push_str(OVERSIZED_MARK);
        }
        let mut first = true;
        for m in &s.members {
            if m.as_str().contains([',', '\n']) {
                return Err(Error::Argument(format!(
                    "instruction name {m:?} cannot be written to a subsets file"
                )));
            }
            if !first {
                out.push(',');
            }
            first = false;
            out.push_str(m.as_str());
        }
        out.push('\n');
    }
    fs::write(path, out).map_err(|e| Error::io(path, e))
}

pub fn load_subsets(path: &Path) -> Result<Vec<InstructionSubset>> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_subsets(&text, path)
}

pub(crate) fn parse_subsets(text: &str, path: &Path) -> Result<Vec<InstructionSubset>> {
    let mut lines = text.lines().enumerate();
    let max_size = match lines.next() {
        Some((_, header)) => header
            .strip_prefix("max_size=")
            .and_then(|v| v.trim().parse::<usize>().ok())
            .filter(|&k| k >= 1)
            .ok_or_else(|| Error::format(path, 1, "expected header max_size=<k> with k >= 1"))?,
        None => return Err(Error::format(path, 1, "empty subsets file")),
    };
    let mut out = Vec::new();
    for (i, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let (oversized, body) = match line.strip_prefix(OVERSIZED_MARK) {
            Some(rest) => (true, rest),
            None => (false, line),
        };
        let mut members = BTreeSet::new();
        for name in body.split(',') {
            if name.is_empty() {
                return Err(Error::format(path, i + 1, "empty instruction name"));
            }
            if !members.insert(InstructionId::new(name)) {
                return Err(Error::format(path, i + 1, format!("duplicate member {name}")));
            }
        }
        if !oversized && members.len() > max_size {
            return Err(Error::format(
                path,
                i + 1,
                format!("subset has {} members, cap is {max_size}", members.len()),
            ));
        }
        out.push(InstructionSubset {
            subset_id: out.len(),
            max_size,
            members,
            oversized,
        });
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct UnitSizeDistribution {
    /// Distinct-instruction count → number of units.
    pub histogram: BTreeMap<usize, u64>,
    pub units: u64,
    pub fraction_le_10: f64,
    pub fraction_le_20: f64,
    pub fraction_gt_20: f64,
    pub degenerate: bool,
}

impl UnitSizeDistribution {
    pub fn fraction_at_most(&self, k: usize) -> f64 {
        if self.units == 0 {
            return 0.0;
        }
        let n: u64 = self.histogram.range(..=k).map(|(_, c)| c).sum();
        n as f64 / self.units as f64
    }
}

pub fn unit_size_distribution(units: &[ProgramUnit]) -> UnitSizeDistribution {
    let mut histogram = BTreeMap::new();
    for u in units {
        *histogram.entry(u.instructions.len()).or_insert(0u64) += 1;
    }
    let mut d = UnitSizeDistribution {
        histogram,
        units: units.len() as u64,
        fraction_le_10: 0.0,
        fraction_le_20: 0.0,
        fraction_gt_20: 0.0,
        degenerate: units.is_empty(),
    };
    if !d.degenerate {
        d.fraction_le_10 = d.fraction_at_most(10);
        d.fraction_le_20 = d.fraction_at_most(20);
        d.fraction_gt_20 = 1.0 - d.fraction_le_20;
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frontend::{parse_file, SourceFile};

    fn unit(id: &str, members: &[&str]) -> ProgramUnit {
        ProgramUnit {
            unit_id: id.to_string(),
            instructions: members.iter().map(|m| InstructionId::new(m)).collect(),
        }
    }

    fn names(s: &InstructionSubset) -> Vec<&str> {
        s.members.iter().map(|m| m.as_str()).collect()
    }

    fn units_of(src: &str) -> Vec<ProgramUnit> {
        let cfg = FrontendConfig::default();
        let parsed = parse_file(&SourceFile::new("r", "m.py", src), &cfg);
        extract_units(&[parsed], &cfg)
    }

    #[test]
    fn units_per_function() {
        let src = "\
def a(xs):
    n = len(xs) + 1
    return len(xs)

def b(xs):
    return max(xs)
";
        let units = units_of(src);
        assert_eq!(units.len(), 2);
        assert_eq!(
            units[0].instructions.iter().map(|i| i.as_str()).collect::<Vec<_>>(),
            vec!["+", "len"]
        );
        assert_eq!(
            units[1].instructions.iter().map(|i| i.as_str()).collect::<Vec<_>>(),
            vec!["max"]
        );
    }

    #[test]
    fn file_level_unit_and_constant_file() {
        let units = units_of("x = sorted(a)\ny = x[0] + 1\n");
        assert_eq!(units.len(), 1);
        assert!(units[0].unit_id.ends_with("::<module>"));
        assert_eq!(units[0].instructions.len(), 2);
        assert!(units_of("A = 1\nB = 2\nNAME = 'x'\n").is_empty());
    }

    #[test]
    fn overlapping_units_merge() {
        let subsets =
            cluster_subsets(&[unit("u1", &["a", "b"]), unit("u2", &["b", "c"])], 3).unwrap();
        assert_eq!(subsets.len(), 1);
        assert_eq!(names(&subsets[0]), vec!["a", "b", "c"]);
        assert!(!subsets[0].oversized);
    }

    #[test]
    fn disjoint_units_stay_apart() {
        let subsets =
            cluster_subsets(&[unit("u1", &["a", "b"]), unit("u2", &["c", "d"])], 2).unwrap();
        assert_eq!(subsets.len(), 2);
    }

    #[test]
    fn oversized_unit_flagged() {
        let subsets = cluster_subsets(&[unit("u", &["a", "b", "c"])], 2).unwrap();
        assert_eq!(subsets.len(), 1);
        assert!(subsets[0].oversized);
        assert_eq!(names(&subsets[0]), vec!["a", "b", "c"]);
    }

    #[test]
    fn highest_overlap_merges_first() {
        // {a,b,c}+{a,b,d} (J=1/2) beats {a,b,c}+{c,e} (J=1/4); after that
        // merge the union {a,b,c,d} cannot take {c,e} under cap 4.
        let subsets = cluster_subsets(
            &[
                unit("1", &["a", "b", "c"]),
                unit("2", &["a", "b", "d"]),
                unit("3", &["c", "e"]),
            ],
            4,
        )
        .unwrap();
        let got: Vec<Vec<&str>> = subsets.iter().map(names).collect();
        assert_eq!(got, vec![vec!["a", "b", "c", "d"], vec!["c", "e"]]);
    }

    #[test]
    fn zero_cap_rejected() {
        assert!(cluster_subsets(&[], 0).is_err());
    }

    #[test]
    fn subsets_file_cap_check() {
        let ten: Vec<String> = (0..10).map(|i| format!("f{i}")).collect();
        let ok = format!("max_size=10\n{}\n", ten.join(","));
        assert_eq!(parse_subsets(&ok, Path::new("s")).unwrap()[0].len(), 10);
        let eleven = format!("max_size=10\n{},f10\n", ten.join(","));
        let err = parse_subsets(&eleven, Path::new("s")).unwrap_err();
        assert!(matches!(err, Error::Format { line: 2, .. }));
        assert!(parse_subsets("size=3\na\n", Path::new("s")).is_err());
        assert!(parse_subsets("max_size=3\na,,b\n", Path::new("s")).is_err());
    }

    #[test]
    fn subsets_round_trip() {
        let subsets = cluster_subsets(
            &[
                unit("1", &["not in", "+"]),
                unit("2", &["+", "len"]),
                unit("3", &["a", "b", "c", "d"]),
            ],
            3,
        )
        .unwrap();
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("s.txt");
        save_subsets(&subsets, 3, &p).unwrap();
        assert_eq!(load_subsets(&p).unwrap(), subsets);
    }

    #[test]
    fn size_distribution() {
        let us = [
            unit("a", &["a", "b", "c"]),
            unit("b", &["a", "b", "c", "d", "e"]),
            unit("c", &["0", "1", "2", "3", "4", "5", "6", "7", "8", "9", "x", "y"]),
        ];
        let d = unit_size_distribution(&us);
        assert_eq!(d.fraction_le_10, 2.0 / 3.0);
        assert_eq!(d.fraction_gt_20, 0.0);
        let ones = [unit("a", &["a"]), unit("b", &["b"])];
        assert_eq!(unit_size_distribution(&ones).fraction_le_10, 1.0);
        assert!(unit_size_distribution(&[]).degenerate);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb_units() -> impl Strategy<Value = Vec<ProgramUnit>> {
            let name = prop::sample::select(vec!["a", "b", "c", "d", "e", "f", "g", "h", "+", "len"]);
            prop::collection::vec(prop::collection::btree_set(name, 1..7), 0..25).prop_map(|sets| {
                sets.into_iter()
                    .enumerate()
                    .map(|(i, s)| ProgramUnit {
                        unit_id: i.to_string(),
                        instructions: s.into_iter().map(InstructionId::new).collect(),
                    })
                    .collect()
            })
        }

        proptest! {
            #[test]
            fn coverage_and_cap(units in arb_units(), cap in 1usize..8) {
                let subsets = cluster_subsets(&units, cap).unwrap();
                for u in &units {
                    if u.instructions.len() <= cap {
                        prop_assert!(is_covered(&subsets, u, false));
                    } else {
                        prop_assert!(is_covered(&subsets, u, true));
                    }
                }
                for s in &subsets {
                    prop_assert!(s.oversized || s.len() <= cap);
                }
            }

            #[test]
            fn deterministic_and_order_independent(units in arb_units(), cap in 1usize..8) {
                let a = cluster_subsets(&units, cap).unwrap();
                let b = cluster_subsets(&units, cap).unwrap();
                prop_assert_eq!(&a, &b);
                let mut rev = units.clone();
                rev.reverse();
                prop_assert_eq!(a, cluster_subsets(&rev, cap).unwrap());
            }

            #[test]
            fn monotone_coverage(units in arb_units(), cap in 1usize..7) {
                let frac = |k: usize| {
                    let s = cluster_subsets(&units, k).unwrap();
                    units.iter().filter(|u| is_covered(&s, u, false)).count()
                };
                prop_assert!(frac(cap + 1) >= frac(cap));
            }
        }
    }
}
