use std::collections::BTreeSet;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use digramkit::digram::{
    filter_threshold, load_table, mine_parsed_corpus, parse_corpus, save_table,
    write_histogram_csv, write_stats_report,
};
use digramkit::space::{compare, export_report, tree_enumeration_oracle, DEFAULT_DIGIT_CAP};
use digramkit::subset::{load_subsets, save_subsets, unit_size_distribution};
use digramkit::synth::{self, Dsl, Gate, SynthConfig, SynthRow};
use digramkit::{
    cluster_subsets, compute_stats, digram_constrained_size, extract_units, AllowedDigrams,
    CorpusSpec, Digram, Error, FrontendConfig, InstructionId, InstructionSubset, Result,
    SpaceModelConfig,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::{CheckArgs, MineArgs, ModelArgs, StatsArgs, SubsetsArgs, SynthArgs};

fn create(path: &Path) -> Result<BufWriter<File>> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| Error::io(path, e))
}

fn finish(mut w: impl Write, path: &Path) -> Result<()> {
    w.flush().map_err(|e| Error::io(path, e))
}

fn corpus_spec(root: &Path) -> Result<CorpusSpec> {
    let spec = CorpusSpec::new(root);
    spec.validate()?;
    Ok(spec)
}

pub fn mine(a: &MineArgs) -> Result<()> {
    let spec = corpus_spec(&a.corpus)?;
    let cfg = FrontendConfig::default();
    let corpus = parse_corpus(&spec, &cfg)?;
    if !corpus.stats.is_conserved() {
        return Err(Error::Invariant(format!(
            "fragment counts do not add up: {:?}",
            corpus.stats
        )));
    }
    let mining = mine_parsed_corpus(&corpus, &cfg);
    if mining.stats.files_scanned == 0 {
        eprintln!("warning: no source files under {}", a.corpus.display());
    }
    save_table(&mining.table, &a.out)?;
    let s = mining.stats;
    eprintln!(
        "files: {} scanned, {} skipped; fragments: {} total, {} parsed, {} failed, {} too deep",
        s.files_scanned,
        s.files_skipped,
        s.fragments_total,
        s.fragments_parsed,
        s.fragments_failed,
        s.fragments_too_deep
    );
    eprintln!(
        "digrams: {} distinct, {} occurrences over {} instructions in {} repositories",
        mining.table.distinct(),
        mining.table.total_occurrences(),
        mining.table.vocabulary().len(),
        mining.repos.len()
    );
    Ok(())
}

pub fn stats(a: &StatsArgs) -> Result<()> {
    let table = load_table(&a.table)?;
    let stats = compute_stats(&table);
    match &a.out {
        Some(p) => {
            let mut w = create(p)?;
            write_stats_report(&stats, &mut w).map_err(|e| Error::io(p, e))?;
            finish(w, p)?;
        }
        None => {
            let stdout = io::stdout();
            write_stats_report(&stats, stdout.lock()).map_err(|e| Error::io("<stdout>", e))?;
        }
    }
    if let Some(p) = &a.histogram {
        let mut w = create(p)?;
        write_histogram_csv(&stats, &mut w).map_err(|e| Error::io(p, e))?;
        finish(w, p)?;
    }
    Ok(())
}

pub fn subsets(a: &SubsetsArgs) -> Result<()> {
    if a.max_subset_size == 0 {
        return Err(Error::Argument("--max-subset-size must be at least 1".into()));
    }
    let spec = corpus_spec(&a.corpus)?;
    let cfg = FrontendConfig::default();
    let corpus = parse_corpus(&spec, &cfg)?;
    let units = extract_units(&corpus.files, &cfg);
    let subsets = cluster_subsets(&units, a.max_subset_size)?;
    save_subsets(&subsets, a.max_subset_size, &a.out)?;
    let dist = unit_size_distribution(&units);
    eprintln!(
        "{} units ({:.1}% with at most 10 instructions) -> {} subsets, {} oversized",
        dist.units,
        100.0 * dist.fraction_le_10,
        subsets.len(),
        subsets.iter().filter(|s| s.oversized).count()
    );
    Ok(())
}

pub fn model(a: &ModelArgs) -> Result<()> {
    if a.depth == 0 {
        return Err(Error::Argument("--depth must be at least 1".into()));
    }
    let table = load_table(&a.table)?;
    let allowed = filter_threshold(&table, a.threshold)?;
    let subsets = load_subsets(&a.subsets)?;
    let config = SpaceModelConfig {
        depth_max: a.depth,
        model: a.model,
        threshold: a.threshold,
    };
    let report = compare(&subsets, &allowed, table.vocabulary().len() as u64, &config);
    report.check_dominance().map_err(Error::Invariant)?;
    export_report(&report, &a.out, DEFAULT_DIGIT_CAP)?;
    if let Some(m) = report.median_reduction_log10(a.depth) {
        eprintln!(
            "{} subsets; median reduction at depth {}: 10^{m:.2}",
            report.rows.len(),
            a.depth
        );
    }
    for d in 1..=a.depth {
        let f = report.gain_fraction(d);
        if f > 0.0 {
            eprintln!("depth {d}: {:.0}% of subsets gain at least one level", 100.0 * f);
        }
    }
    Ok(())
}

fn synth_config(a: &SynthArgs) -> Result<SynthConfig> {
    let dsl = match &a.instructions {
        Some(names) => Dsl::from_names(names)?,
        None => Dsl::standard(),
    };
    let mut cfg = SynthConfig::new(dsl, Gate::Complete);
    cfg.max_depth = a.depth;
    cfg.node_budget = a.budget;
    if a.no_constants {
        cfg.constants.clear();
    }
    cfg.validate()?;
    Ok(cfg)
}

pub fn synth(a: &SynthArgs) -> Result<()> {
    let base = synth_config(a)?;
    let tasks = synth::load_tasks(&a.tasks)?;
    let allowed = filter_threshold(&load_table(&a.table)?, a.threshold)?;
    let subsets: Option<Vec<InstructionSubset>> =
        a.subsets.as_deref().map(load_subsets).transpose()?;

    let mut rows: Vec<SynthRow> = Vec::new();
    for task in &tasks {
        let task_rows = synth::run_regimes(task, &base, &allowed, subsets.as_deref())?;
        for r in &task_rows {
            eprintln!(
                "{:<20} {:<14} {:>10} {}",
                r.task_id,
                r.regime,
                r.expansions,
                r.program.as_deref().unwrap_or(if r.budget_limited {
                    "(budget exhausted)"
                } else {
                    "(not found)"
                })
            );
        }
        rows.extend(task_rows);
    }
    match &a.out {
        Some(p) => {
            let mut w = create(p)?;
            synth::write_results(&rows, &mut w)?;
            finish(w, p)
        }
        None => synth::write_results(&rows, io::stdout().lock()),
    }
}

pub fn dsl() -> Result<()> {
    print!("{}", Dsl::standard().manifest());
    Ok(())
}

pub fn check(a: &CheckArgs) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    let names: Vec<String> = (0..6).map(|i| format!("f{i}")).collect();
    for n in 0..a.instances {
        let size = rng.random_range(1..=5);
        let members: BTreeSet<InstructionId> =
            names[..size].iter().map(|s| InstructionId::new(s)).collect();
        let mut pairs = Vec::new();
        for x in &names {
            for y in &names {
                if rng.random_bool(0.35) {
                    pairs.push(Digram::new(x.as_str(), y.as_str()));
                }
            }
        }
        let allowed = AllowedDigrams::from_digrams(pairs);
        let depth = rng.random_range(1..=5);
        let subset = InstructionSubset {
            subset_id: n,
            max_size: size,
            members,
            oversized: false,
        };
        let config = SpaceModelConfig {
            depth_max: depth,
            ..Default::default()
        };
        let fast = digram_constrained_size(&subset, &allowed, &config);
        let slow = tree_enumeration_oracle(&subset, &allowed, depth, 1_000_000)
            .map_err(|e| Error::Invariant(e.to_string()))?;
        if fast != slow {
            return Err(Error::Invariant(format!(
                "instance {n}: recurrence {:?} but explicit tree {:?}",
                fast.levels(),
                slow.levels()
            )));
        }
        let report = compare(&[subset], &allowed, names.len() as u64, &config);
        report.check_dominance().map_err(Error::Invariant)?;
    }
    println!("{} instances agree (seed {})", a.instances, a.seed);
    Ok(())
}
