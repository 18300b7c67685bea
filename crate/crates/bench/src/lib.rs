//! Shared inputs for the benchmarks.

use std::path::Path;

use digramkit::digram::{filter_threshold, mine_parsed_corpus, parse_corpus};
use digramkit::{
    cluster_subsets, extract_units, AllowedDigrams, CorpusSpec, Digram, DigramTable,
    FrontendConfig, InstructionId, InstructionSubset,
};

/// Table, subsets and allowed set mined from the fixture corpus.
pub struct Mined {
    pub table: DigramTable,
    pub subsets: Vec<InstructionSubset>,
    pub allowed: AllowedDigrams,
}

pub fn fixture_corpus() -> std::path::PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures/corpus")
}

pub fn mine_fixture() -> Mined {
    let cfg = FrontendConfig::default();
    let corpus = parse_corpus(&CorpusSpec::new(fixture_corpus()), &cfg).expect("fixture corpus");
    let table = mine_parsed_corpus(&corpus, &cfg).table;
    let subsets = cluster_subsets(&extract_units(&corpus.files, &cfg), 10).expect("subsets");
    let allowed = filter_threshold(&table, 1).expect("threshold");
    Mined {
        table,
        subsets,
        allowed,
    }
}

/// A subset of `n` synthetic instructions where every second pair is allowed.
pub fn striped_instance(n: usize) -> (InstructionSubset, AllowedDigrams) {
    let names: Vec<String> = (0..n).map(|i| format!("f{i}")).collect();
    let mut pairs = Vec::new();
    for (i, a) in names.iter().enumerate() {
        for (j, b) in names.iter().enumerate() {
            if (i + j) % 2 == 0 {
                pairs.push(Digram::new(a.as_str(), b.as_str()));
            }
        }
    }
    let subset = InstructionSubset {
        subset_id: 0,
        max_size: n,
        members: names.iter().map(|s| InstructionId::new(s)).collect(),
        oversized: false,
    };
    (subset, AllowedDigrams::from_digrams(pairs))
}
