//! Instruction digram mining and search-space modelling for inductive
//! programming.
//!
//! An *instruction digram* is an ordered pair `(F1, F2)` of instructions
//! (operators or functions) where `F2` directly consumes the value produced
//! by `F1`. This crate mines digrams from a corpus of Python source, reports
//! how skewed their frequency distribution is, and uses the observed digrams
//! as a binary gate on instruction application:
//!
//! * [`frontend`] walks a corpus, strips comments and string literals, splits
//!   the text into expression fragments and parses them into [`Ast`]s.
//! * [`digram`] extracts digrams from ASTs, aggregates them into
//!   [`DigramTable`]s and computes frequency statistics and thresholds.
//! * [`subset`] groups instructions into bounded [`InstructionSubset`]s by
//!   clustering the instruction sets of program units.
//! * [`space`] computes exact search-space sizes with and without digram
//!   constraints.
//! * [`synth`] is a small enumerative generate-and-test synthesizer that
//!   applies the same digram gate to real candidate programs.

pub mod digram;
pub mod error;
pub mod frontend;
pub mod space;
pub mod subset;
pub mod synth;

pub use digram::{
    compute_stats, extract_digrams, filter_threshold, mine_corpus, mine_file, AllowedDigrams,
    Digram, DigramStats, DigramTable, InstructionId, Scope,
};
pub use error::{Error, Result};
pub use frontend::{
    instruction_label, parse_expression, preprocess, scan_corpus, split_expressions, Ast,
    CorpusSpec, Fragment, FrontendConfig, ParseError, ParseStats, SourceFile,
};
pub use space::{
    all_instructions_size, compare, digram_constrained_size, subset_only_size,
    tree_enumeration_oracle, LevelCounts, SpaceModel, SpaceModelConfig, SpaceReport,
};
pub use subset::{cluster_subsets, extract_units, InstructionSubset, ProgramUnit};
pub use synth::{synthesize, Candidate, SynthConfig, SynthOutcome, Value};
