//! Corpus walking and the Python expression frontend.
//!
//! The pipeline for one file is [`preprocess`] → [`split_expressions`] →
//! [`parse_expression`]; [`parse_file`] runs all three and keeps the
//! single-instruction fragments around as well, because instruction
//! vocabulary and program units need them even though they can never hold a
//! digram.

mod lexer;
mod parser;
pub mod preprocess;
pub mod split;

use std::ops::AddAssign;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use globset::{Glob, GlobMatcher, GlobSet, GlobSetBuilder};
use walkdir::WalkDir;

use crate::error::{Error, Result};

pub use parser::{
    instruction_label, instruction_label_with, parse_expression, parse_expression_with, Ast,
    GroupKind, LiteralKind, ParseError,
};
pub use preprocess::{preprocess, NormalizedText};
pub use split::{function_spans, split_expressions, Fragment, FunctionSpan};

/// Which files make up a corpus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusSpec {
    pub roots: Vec<PathBuf>,
    /// Matched against the file name.
    pub include_glob: String,
    /// Matched against the path relative to its root.
    pub exclude_globs: Vec<String>,
    pub max_file_bytes: u64,
}

impl CorpusSpec {
    pub const DEFAULT_INCLUDE: &'static str = "*.py";
    pub const DEFAULT_MAX_FILE_BYTES: u64 = 1 << 20;

    pub fn new(root: impl Into<PathBuf>) -> Self {
        CorpusSpec {
            roots: vec![root.into()],
            include_glob: Self::DEFAULT_INCLUDE.to_string(),
            exclude_globs: Vec::new(),
            max_file_bytes: Self::DEFAULT_MAX_FILE_BYTES,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.roots.is_empty() {
            return Err(Error::Config("corpus has no root directories".into()));
        }
        if self.max_file_bytes == 0 {
            return Err(Error::Config("max_file_bytes must be positive".into()));
        }
        for root in &self.roots {
            if !root.is_dir() {
                return Err(Error::Config(format!(
                    "corpus root {} is not a directory",
                    root.display()
                )));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SourceFile {
    pub repo_id: String,
    pub path: Arc<str>,
    pub text: String,
}

impl SourceFile {
    pub fn new(repo_id: &str, path: &str, text: &str) -> Self {
        SourceFile {
            repo_id: repo_id.to_string(),
            path: Arc::from(path),
            text: text.to_string(),
        }
    }
}

/// Counters accumulated while scanning and parsing. Merged by addition.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ParseStats {
    pub files_scanned: u64,
    pub files_skipped: u64,
    /// Fragments that may contain a digram.
    pub fragments_total: u64,
    pub fragments_parsed: u64,
    pub fragments_failed: u64,
    /// Fragments dropped for exceeding the nesting cap (not in the total).
    pub fragments_too_deep: u64,
}

impl ParseStats {
    pub fn is_conserved(&self) -> bool {
        self.fragments_parsed + self.fragments_failed == self.fragments_total
    }
}

impl AddAssign for ParseStats {
    fn add_assign(&mut self, o: Self) {
        self.files_scanned += o.files_scanned;
        self.files_skipped += o.files_skipped;
        self.fragments_total += o.fragments_total;
        self.fragments_parsed += o.fragments_parsed;
        self.fragments_failed += o.fragments_failed;
        self.fragments_too_deep += o.fragments_too_deep;
    }
}

impl std::ops::Add for ParseStats {
    type Output = ParseStats;

    fn add(mut self, o: Self) -> Self {
        self += o;
        self
    }
}

/// Frontend knobs shared by splitting, parsing and labelling.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrontendConfig {
    /// `np.abs` → `abs` when true.
    pub collapse_dotted: bool,
    /// Label subscripts `x[i]` as the pseudo-instruction `getitem`.
    pub subscripts_as_getitem: bool,
    /// Bracket nesting above which a fragment is dropped.
    pub max_nesting: usize,
}

impl Default for FrontendConfig {
    fn default() -> Self {
        FrontendConfig {
            collapse_dotted: true,
            subscripts_as_getitem: false,
            max_nesting: split::DEFAULT_MAX_NESTING,
        }
    }
}

/// Files found under a corpus, in lexicographic path order.
#[derive(Debug, Clone, Default)]
pub struct CorpusScan {
    pub files: Vec<SourceFile>,
    pub stats: ParseStats,
}

/// Collects every matching file below the corpus roots.
///
/// Files larger than `max_file_bytes`, unreadable files and files that are
/// not valid UTF-8 are skipped and counted; only a missing root is an error.
pub fn scan_corpus(spec: &CorpusSpec) -> Result<CorpusScan> {
    spec.validate()?;
    let include = Glob::new(&spec.include_glob)
        .map_err(|e| Error::Config(format!("include glob: {e}")))?
        .compile_matcher();
    let exclude = build_globset(&spec.exclude_globs)?;

    let mut found: Vec<(PathBuf, String, String)> = Vec::new();
    let mut scan = CorpusScan::default();
    for root in &spec.roots {
        let mut here = Vec::new();
        for entry in WalkDir::new(root).follow_links(false) {
            let entry = match entry {
                Ok(e) => e,
                Err(_) => {
                    scan.stats.files_skipped += 1;
                    continue;
                }
            };
            if !entry.file_type().is_file() {
                continue;
            }
            let rel = entry.path().strip_prefix(root).unwrap_or(entry.path());
            let rel_str = rel
                .components()
                .map(|c| c.as_os_str().to_string_lossy())
                .collect::<Vec<_>>()
                .join("/");
            if !matches_name(&include, entry.path()) || exclude.is_match(rel) {
                continue;
            }
            here.push((entry.path().to_path_buf(), rel_str, repo_of(root, rel)));
        }
        here.sort_by(|a, b| a.1.cmp(&b.1));
        found.extend(here);
    }

    for (path, rel, repo_id) in found {
        scan.stats.files_scanned += 1;
        match read_source(&path, spec.max_file_bytes) {
            Some(text) => scan.files.push(SourceFile {
                repo_id,
                path: Arc::from(display_path(&spec.roots, &path, &rel).as_str()),
                text,
            }),
            None => scan.stats.files_skipped += 1,
        }
    }
    Ok(scan)
}

fn build_globset(patterns: &[String]) -> Result<GlobSet> {
    let mut builder = GlobSetBuilder::new();
    for p in patterns {
        builder.add(Glob::new(p).map_err(|e| Error::Config(format!("exclude glob {p}: {e}")))?);
    }
    builder
        .build()
        .map_err(|e| Error::Config(format!("exclude globs: {e}")))
}

fn matches_name(glob: &GlobMatcher, path: &Path) -> bool {
    path.file_name().is_some_and(|n| glob.is_match(n))
}

/// The first directory below the root names the repository; files placed
/// directly in the root belong to a repository named after the root.
fn repo_of(root: &Path, rel: &Path) -> String {
    let mut comps = rel.components();
    match (comps.next(), comps.next()) {
        (Some(first), Some(_)) => first.as_os_str().to_string_lossy().into_owned(),
        _ => root
            .file_name()
            .map(|n| n.to_string_lossy().into_owned())
            .unwrap_or_else(|| ".".to_string()),
    }
}

/// Relative path, prefixed with the root index when several roots are in
/// use so that paths stay unique.
fn display_path(roots: &[PathBuf], path: &Path, rel: &str) -> String {
    if roots.len() == 1 {
        return rel.to_string();
    }
    let idx = roots
        .iter()
        .position(|r| path.starts_with(r))
        .unwrap_or_default();
    format!("{idx}:{rel}")
}

fn read_source(path: &Path, max_bytes: u64) -> Option<String> {
    let meta = std::fs::metadata(path).ok()?;
    if meta.len() > max_bytes {
        return None;
    }
    let bytes = std::fs::read(path).ok()?;
    let text = String::from_utf8(bytes).ok()?;
    Some(match text.strip_prefix('\u{feff}') {
        Some(rest) => rest.to_string(),
        None => text,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ParsedFragment {
    pub fragment: Fragment,
    /// False for fragments with at most one instruction; they are parsed for
    /// vocabulary only and never counted in [`ParseStats`].
    pub pairable: bool,
    pub ast: Result<Ast, ParseError>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ParsedFile {
    pub repo_id: String,
    pub path: Arc<str>,
    pub fragments: Vec<ParsedFragment>,
    pub functions: Vec<FunctionSpan>,
    pub stats: ParseStats,
}

impl ParsedFile {
    /// Successfully parsed ASTs, both pairable and single-instruction.
    pub fn asts(&self) -> impl Iterator<Item = (&Fragment, &Ast)> {
        self.fragments
            .iter()
            .filter_map(|f| f.ast.as_ref().ok().map(|a| (&f.fragment, a)))
    }
}

/// Preprocesses, splits and parses a single file. Never fails: malformed
/// fragments are recorded as errors and counted.
pub fn parse_file(file: &SourceFile, cfg: &FrontendConfig) -> ParsedFile {
    let text = preprocess(&file.text);
    let mut stats = ParseStats::default();
    let mut fragments = Vec::new();
    for raw in split::raw_fragments(&text, cfg.max_nesting) {
        if raw.too_deep {
            if raw.pairable {
                stats.fragments_too_deep += 1;
            }
            continue;
        }
        let ast = parse_expression_with(&raw.text, cfg.max_nesting);
        if raw.pairable {
            stats.fragments_total += 1;
            match ast {
                Ok(_) => stats.fragments_parsed += 1,
                Err(_) => stats.fragments_failed += 1,
            }
        }
        fragments.push(ParsedFragment {
            fragment: Fragment {
                file: file.path.clone(),
                line: raw.line,
                text: raw.text,
            },
            pairable: raw.pairable,
            ast,
        });
    }
    ParsedFile {
        repo_id: file.repo_id.clone(),
        path: file.path.clone(),
        fragments,
        functions: function_spans(&text),
        stats,
    }
}
