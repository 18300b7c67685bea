//! Digram extraction and aggregation.
//!
//! A digram `(first, second)` is recorded whenever instruction `second` takes
//! the value produced by instruction `first` as a direct operand. The pair is
//! ordered: `f(g(x))` yields `(g, f)` and never `(f, g)`.

mod io;
mod stats;

use std::borrow::Borrow;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::frontend::{
    instruction_label_with, parse_file, scan_corpus, Ast, CorpusSpec, FrontendConfig, ParseStats,
    ParsedFile, SourceFile,
};

pub use io::{load_allowed, load_table, save_table, vocab_path, write_histogram_csv, write_stats_report};
pub use stats::{compute_stats, compute_stats_with, Bucket, DigramStats, DEFAULT_QUANTILES};

/// Canonical instruction name.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct InstructionId(Arc<str>);

impl InstructionId {
    pub fn new(name: &str) -> Self {
        assert!(!name.is_empty(), "instruction names are non-empty");
        InstructionId(Arc::from(name))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Debug for InstructionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &*self.0)
    }
}

impl fmt::Display for InstructionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for InstructionId {
    fn from(s: &str) -> Self {
        InstructionId::new(s)
    }
}

impl Borrow<str> for InstructionId {
    fn borrow(&self) -> &str {
        &self.0
    }
}

/// Ordered instruction pair; `first` produces the value `second` consumes.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Digram {
    pub first: InstructionId,
    pub second: InstructionId,
}

impl Digram {
    pub fn new(first: impl Into<InstructionId>, second: impl Into<InstructionId>) -> Self {
        Digram {
            first: first.into(),
            second: second.into(),
        }
    }
}

impl fmt::Display for Digram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.first, self.second)
    }
}

/// Aggregation level of a table, narrowest first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub enum Scope {
    #[default]
    File,
    Repo,
    Corpus,
}

impl Scope {
    pub fn as_str(self) -> &'static str {
        match self {
            Scope::File => "file",
            Scope::Repo => "repo",
            Scope::Corpus => "corpus",
        }
    }

    pub fn parse(s: &str) -> Option<Scope> {
        match s {
            "file" => Some(Scope::File),
            "repo" => Some(Scope::Repo),
            "corpus" => Some(Scope::Corpus),
            _ => None,
        }
    }
}

pub type DigramCounts = BTreeMap<Digram, u64>;

/// Digram occurrence counts plus the instruction vocabulary they were drawn
/// from.
///
/// Invariants: every count is at least 1 and both ends of every counted
/// digram are in `vocabulary`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DigramTable {
    counts: DigramCounts,
    vocabulary: BTreeSet<InstructionId>,
    scope: Scope,
}

impl DigramTable {
    pub fn new(scope: Scope) -> Self {
        DigramTable {
            scope,
            ..Default::default()
        }
    }

    pub fn from_parts(
        counts: DigramCounts,
        mut vocabulary: BTreeSet<InstructionId>,
        scope: Scope,
    ) -> Result<Self> {
        for (d, &c) in &counts {
            if c == 0 {
                return Err(Error::Argument(format!("digram {d} has count 0")));
            }
            vocabulary.insert(d.first.clone());
            vocabulary.insert(d.second.clone());
        }
        Ok(DigramTable {
            counts,
            vocabulary,
            scope,
        })
    }

    pub fn counts(&self) -> &DigramCounts {
        &self.counts
    }

    pub fn vocabulary(&self) -> &BTreeSet<InstructionId> {
        &self.vocabulary
    }

    pub fn scope(&self) -> Scope {
        self.scope
    }

    pub fn with_scope(mut self, scope: Scope) -> Self {
        self.scope = scope;
        self
    }

    pub fn count(&self, first: &str, second: &str) -> u64 {
        self.counts
            .get(&Digram::new(first, second))
            .copied()
            .unwrap_or(0)
    }

    pub fn distinct(&self) -> usize {
        self.counts.len()
    }

    pub fn total_occurrences(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty() && self.vocabulary.is_empty()
    }

    pub fn add(&mut self, digram: Digram, n: u64) {
        if n == 0 {
            return;
        }
        self.vocabulary.insert(digram.first.clone());
        self.vocabulary.insert(digram.second.clone());
        *self.counts.entry(digram).or_insert(0) += n;
    }

    pub fn observe(&mut self, instruction: InstructionId) {
        self.vocabulary.insert(instruction);
    }

    /// Pointwise addition of counts and union of vocabularies. The result
    /// takes the wider of the two scopes, so the empty file-scope table is
    /// an identity.
    pub fn merge(mut self, other: &DigramTable) -> DigramTable {
        for (d, &c) in &other.counts {
            *self.counts.entry(d.clone()).or_insert(0) += c;
        }
        self.vocabulary.extend(other.vocabulary.iter().cloned());
        self.scope = self.scope.max(other.scope);
        self
    }

    /// Stable 64-bit FNV-1a fingerprint of the table contents.
    pub fn fingerprint(&self) -> u64 {
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        let mut feed = |bytes: &[u8]| {
            for &b in bytes {
                h ^= u64::from(b);
                h = h.wrapping_mul(0x0000_0100_0000_01b3);
            }
        };
        for (d, c) in &self.counts {
            feed(d.first.as_str().as_bytes());
            feed(&[0]);
            feed(d.second.as_str().as_bytes());
            feed(&[0]);
            feed(&c.to_le_bytes());
        }
        feed(&[1]);
        for v in &self.vocabulary {
            feed(v.as_str().as_bytes());
            feed(&[0]);
        }
        feed(self.scope.as_str().as_bytes());
        h
    }
}

pub fn merge(a: &DigramTable, b: &DigramTable) -> DigramTable {
    a.clone().merge(b)
}

/// Every (child instruction, parent instruction) operand pair in `ast`.
pub fn extract_digrams(ast: &Ast) -> DigramCounts {
    extract_digrams_with(ast, &FrontendConfig::default())
}

pub fn extract_digrams_with(ast: &Ast, cfg: &FrontendConfig) -> DigramCounts {
    let mut out = DigramCounts::new();
    ast.walk(&mut |node| {
        if let Some(parent) = instruction_label_with(node, cfg) {
            for child in node.children() {
                if let Some(producer) = instruction_label_with(child, cfg) {
                    *out.entry(Digram {
                        first: producer,
                        second: parent.clone(),
                    })
                    .or_insert(0) += 1;
                }
            }
        }
    });
    out
}

/// Instruction labels occurring anywhere in `ast`.
pub fn instructions_in(ast: &Ast, cfg: &FrontendConfig) -> BTreeSet<InstructionId> {
    let mut out = BTreeSet::new();
    ast.walk(&mut |node| {
        if let Some(id) = instruction_label_with(node, cfg) {
            out.insert(id);
        }
    });
    out
}

/// Digram table of an already parsed file. Only pairable fragments are
/// walked for digrams; every parsed fragment feeds the vocabulary.
pub fn mine_parsed(file: &ParsedFile, cfg: &FrontendConfig) -> DigramTable {
    let mut table = DigramTable::new(Scope::File);
    for frag in &file.fragments {
        let Ok(ast) = &frag.ast else { continue };
        for id in instructions_in(ast, cfg) {
            table.observe(id);
        }
        if frag.pairable {
            for (d, c) in extract_digrams_with(ast, cfg) {
                table.add(d, c);
            }
        }
    }
    table
}

pub fn mine_file(file: &SourceFile) -> DigramTable {
    let cfg = FrontendConfig::default();
    mine_parsed(&parse_file(file, &cfg), &cfg)
}

#[derive(Debug, Clone)]
pub struct ParsedCorpus {
    pub files: Vec<ParsedFile>,
    pub stats: ParseStats,
}

pub fn parse_corpus(spec: &CorpusSpec, cfg: &FrontendConfig) -> Result<ParsedCorpus> {
    let scan = scan_corpus(spec)?;
    let files: Vec<ParsedFile> = scan.files.par_iter().map(|f| parse_file(f, cfg)).collect();
    let mut stats = scan.stats;
    for f in &files {
        stats += f.stats;
    }
    Ok(ParsedCorpus { files, stats })
}

#[derive(Debug, Clone)]
pub struct CorpusMining {
    pub table: DigramTable,
    pub repos: BTreeMap<String, DigramTable>,
    pub stats: ParseStats,
}

/// File tables roll up into repository tables, which roll up into the
/// corpus table.
pub fn mine_parsed_corpus(corpus: &ParsedCorpus, cfg: &FrontendConfig) -> CorpusMining {
    let per_file: Vec<(String, DigramTable)> = corpus
        .files
        .par_iter()
        .map(|f| (f.repo_id.clone(), mine_parsed(f, cfg)))
        .collect();
    let mut repos: BTreeMap<String, DigramTable> = BTreeMap::new();
    for (repo, table) in per_file {
        let entry = repos
            .entry(repo)
            .or_insert_with(|| DigramTable::new(Scope::Repo));
        *entry = std::mem::take(entry).merge(&table);
    }
    let table = repos
        .values()
        .fold(DigramTable::new(Scope::Corpus), |acc, t| acc.merge(t));
    CorpusMining {
        table,
        repos,
        stats: corpus.stats,
    }
}

pub fn mine_corpus(spec: &CorpusSpec, cfg: &FrontendConfig) -> Result<CorpusMining> {
    let corpus = parse_corpus(spec, cfg)?;
    Ok(mine_parsed_corpus(&corpus, cfg))
}

/// Binary gate: the digrams whose count reached a threshold.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AllowedDigrams {
    digrams: BTreeSet<Digram>,
    /// Fingerprint of the table the set was filtered from.
    pub source: u64,
    pub threshold: u64,
}

impl AllowedDigrams {
    pub fn from_digrams(digrams: impl IntoIterator<Item = Digram>) -> Self {
        AllowedDigrams {
            digrams: digrams.into_iter().collect(),
            source: 0,
            threshold: 1,
        }
    }

    pub fn from_pairs<'a>(pairs: impl IntoIterator<Item = (&'a str, &'a str)>) -> Self {
        Self::from_digrams(pairs.into_iter().map(|(a, b)| Digram::new(a, b)))
    }

    pub fn contains(&self, first: &InstructionId, second: &InstructionId) -> bool {
        // BTreeSet lookup needs an owned key
        self.digrams.contains(&Digram {
            first: first.clone(),
            second: second.clone(),
        })
    }

    pub fn len(&self) -> usize {
        self.digrams.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digrams.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Digram> {
        self.digrams.iter()
    }

    pub fn is_subset(&self, other: &AllowedDigrams) -> bool {
        self.digrams.is_subset(&other.digrams)
    }

    pub fn union(&self, other: &AllowedDigrams) -> AllowedDigrams {
        AllowedDigrams {
            digrams: self.digrams.union(&other.digrams).cloned().collect(),
            source: self.source,
            threshold: self.threshold.min(other.threshold),
        }
    }
}

/// Digrams occurring at least `threshold` times.
pub fn filter_threshold(table: &DigramTable, threshold: u64) -> Result<AllowedDigrams> {
    if threshold < 1 {
        return Err(Error::Argument("threshold must be at least 1".into()));
    }
    Ok(AllowedDigrams {
        digrams: table
            .counts
            .iter()
            .filter(|(_, &c)| c >= threshold)
            .map(|(d, _)| d.clone())
            .collect(),
        source: table.fingerprint(),
        threshold,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frontend::parse_expression;

    fn digrams_of(src: &str) -> Vec<(String, String, u64)> {
        extract_digrams(&parse_expression(src).unwrap())
            .into_iter()
            .map(|(d, c)| (d.first.to_string(), d.second.to_string(), c))
            .collect()
    }

    fn d(a: &str, b: &str, c: u64) -> (String, String, u64) {
        (a.to_string(), b.to_string(), c)
    }

    #[test]
    fn nested_call() {
        assert_eq!(digrams_of("f(g(x))"), vec![d("g", "f", 1)]);
    }

    #[test]
    fn both_sides_of_comparison() {
        assert_eq!(digrams_of("len(a) == len(b)"), vec![d("len", "==", 2)]);
    }

    #[test]
    fn lone_variable() {
        assert!(digrams_of("a").is_empty());
    }

    #[test]
    fn order_sensitive() {
        let a = extract_digrams(&parse_expression("f(g(x))").unwrap());
        let b = extract_digrams(&parse_expression("g(f(x))").unwrap());
        assert!(a.keys().all(|k| !b.contains_key(k)));
        assert_eq!(b.keys().next().unwrap(), &Digram::new("f", "g"));
    }

    #[test]
    fn self_digrams_and_method_chains() {
        assert_eq!(digrams_of("a + b + c"), vec![d("+", "+", 1)]);
        assert_eq!(digrams_of("a.lower().strip()"), vec![d("lower", "strip", 1)]);
    }

    #[test]
    fn function_reference_is_not_application() {
        assert!(digrams_of("sorted(xs, key=len)").is_empty());
    }

    #[test]
    fn grouping_blocks_adjacency() {
        // list display sits between f and h
        assert!(digrams_of("h([f(x)])").is_empty());
        assert_eq!(digrams_of("h([f(g(x))])"), vec![d("g", "f", 1)]);
    }

    #[test]
    fn mine_file_single_expression() {
        let t = mine_file(&SourceFile::new("r", "a.py", "y = f(g(x))\n"));
        assert_eq!(t.counts().len(), 1);
        assert_eq!(t.count("g", "f"), 1);
        let vocab: Vec<&str> = t.vocabulary().iter().map(|v| v.as_str()).collect();
        assert_eq!(vocab, vec!["f", "g"]);
        assert_eq!(t.scope(), Scope::File);
    }

    #[test]
    fn mine_file_single_instruction_statements() {
        let t = mine_file(&SourceFile::new("r", "a.py", "a = f(x)\nb = len(y)\n"));
        assert!(t.counts().is_empty());
        let vocab: Vec<&str> = t.vocabulary().iter().map(|v| v.as_str()).collect();
        assert_eq!(vocab, vec!["f", "len"]);
    }

    #[test]
    fn mine_empty_file() {
        assert!(mine_file(&SourceFile::new("r", "a.py", "")).is_empty());
    }

    fn table(rows: &[(&str, &str, u64)]) -> DigramTable {
        let mut t = DigramTable::new(Scope::File);
        for &(a, b, c) in rows {
            t.add(Digram::new(a, b), c);
        }
        t
    }

    #[test]
    fn merge_adds_counts() {
        let a = table(&[("a", "b", 2)]);
        let b = table(&[("a", "b", 3), ("b", "c", 1)]);
        let m = merge(&a, &b);
        assert_eq!(m, table(&[("a", "b", 5), ("b", "c", 1)]));
        assert_eq!(merge(&m, &DigramTable::default()), m);
    }

    #[test]
    fn merge_widens_scope() {
        let a = table(&[("a", "b", 1)]).with_scope(Scope::Repo);
        let b = table(&[("a", "b", 1)]);
        assert_eq!(merge(&b, &a).scope(), Scope::Repo);
    }

    #[test]
    fn threshold_filtering() {
        let t = table(&[("a", "b", 1), ("b", "c", 10), ("c", "a", 100)]);
        assert_eq!(filter_threshold(&t, 1).unwrap().len(), 3);
        let eleven = filter_threshold(&t, 11).unwrap();
        assert_eq!(
            eleven.iter().cloned().collect::<Vec<_>>(),
            vec![Digram::new("c", "a")]
        );
        assert_eq!(eleven.threshold, 11);
        assert_eq!(eleven.source, t.fingerprint());
        assert!(matches!(filter_threshold(&t, 0), Err(Error::Argument(_))));
    }

    #[test]
    fn from_parts_rejects_zero() {
        let mut counts = DigramCounts::new();
        counts.insert(Digram::new("a", "b"), 0);
        assert!(DigramTable::from_parts(counts, BTreeSet::new(), Scope::File).is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb_table() -> impl Strategy<Value = DigramTable> {
            let name = prop::sample::select(vec!["a", "b", "c", "d", "+", "len"]);
            (
                prop::collection::vec((name.clone(), name.clone(), 1u64..50), 0..12),
                prop::collection::vec(name, 0..3),
                prop::sample::select(vec![Scope::File, Scope::Repo, Scope::Corpus]),
            )
                .prop_map(|(rows, extra, scope)| {
                    let mut t = DigramTable::new(scope);
                    for (a, b, c) in rows {
                        t.add(Digram::new(a, b), c);
                    }
                    for v in extra {
                        t.observe(InstructionId::new(v));
                    }
                    t
                })
        }

        proptest! {
            #[test]
            fn threshold_nesting(t in arb_table(), lo in 1u64..30, extra in 0u64..30) {
                let hi = lo + extra;
                let a = filter_threshold(&t, hi).unwrap();
                let b = filter_threshold(&t, lo).unwrap();
                prop_assert!(a.is_subset(&b));
            }

            #[test]
            fn merge_conserves_counts(a in arb_table(), b in arb_table()) {
                let m = merge(&a, &b);
                prop_assert_eq!(m.total_occurrences(), a.total_occurrences() + b.total_occurrences());
                for d in m.counts().keys() {
                    prop_assert!(m.vocabulary().contains(&d.first));
                    prop_assert!(m.vocabulary().contains(&d.second));
                }
            }
        }
    }
}
