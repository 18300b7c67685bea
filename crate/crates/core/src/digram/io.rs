//! Digram table files.
//!
//! The table itself is a CSV with header `first,second,count`, rows sorted by
//! descending count and then by `(first, second)`. A sidecar file with the
//! extension `.vocab` holds `#scope=<scope>` followed by one instruction per
//! line.

use std::collections::BTreeSet;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use super::{filter_threshold, AllowedDigrams, DigramCounts, DigramStats, DigramTable, Digram, InstructionId, Scope};
use crate::error::{Error, Result};

const HEADER: [&str; 3] = ["first", "second", "count"];

pub fn vocab_path(table_path: &Path) -> PathBuf {
    table_path.with_extension("vocab")
}

pub fn save_table(table: &DigramTable, path: &Path) -> Result<()> {
    let mut rows: Vec<(&Digram, u64)> = table.counts().iter().map(|(d, &c)| (d, c)).collect();
    rows.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(b.0)));

    let mut w = csv::WriterBuilder::new()
        .quote_style(csv::QuoteStyle::Necessary)
        .from_writer(Vec::new());
    let csv_err = |e: csv::Error| Error::io(path, std::io::Error::other(e));
    w.write_record(HEADER).map_err(csv_err)?;
    for (d, c) in rows {
        w.write_record([d.first.as_str(), d.second.as_str(), &c.to_string()])
            .map_err(csv_err)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| Error::io(path, std::io::Error::other(e.to_string())))?;
    fs::write(path, bytes).map_err(|e| Error::io(path, e))?;

    let mut vocab = format!("#scope={}\n", table.scope().as_str());
    for v in table.vocabulary() {
        vocab.push_str(v.as_str());
        vocab.push('\n');
    }
    let vp = vocab_path(path);
    fs::write(&vp, vocab).map_err(|e| Error::io(&vp, e))
}

/// Loads a table written by [`save_table`]. A missing sidecar yields a
/// corpus-scope table whose vocabulary is the set of digram endpoints.
pub fn load_table(path: &Path) -> Result<DigramTable> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .from_reader(text.as_bytes());

    let mut counts = DigramCounts::new();
    let mut saw_header = false;
    for record in reader.records() {
        let record = record.map_err(|e| {
            let line = e.position().map(|p| p.line() as usize).unwrap_or(0);
            Error::format(path, line, e.to_string())
        })?;
        let line = record.position().map(|p| p.line() as usize).unwrap_or(0);
        if !saw_header {
            if record.iter().ne(HEADER) {
                return Err(Error::format(path, line, "expected header first,second,count"));
            }
            saw_header = true;
            continue;
        }
        if record.len() != 3 {
            return Err(Error::format(
                path,
                line,
                format!("expected 3 fields, found {}", record.len()),
            ));
        }
        let (first, second) = (&record[0], &record[1]);
        if first.is_empty() || second.is_empty() {
            return Err(Error::format(path, line, "empty instruction name"));
        }
        let count: u64 = record[2]
            .parse()
            .map_err(|_| Error::format(path, line, format!("bad count {:?}", &record[2])))?;
        if count == 0 {
            return Err(Error::format(path, line, "count must be at least 1"));
        }
        if counts.insert(Digram::new(first, second), count).is_some() {
            return Err(Error::format(
                path,
                line,
                format!("duplicate digram [{first}, {second}]"),
            ));
        }
    }
    if !saw_header {
        return Err(Error::format(path, 1, "missing header"));
    }

    let vp = vocab_path(path);
    let (vocabulary, scope) = if vp.exists() {
        load_vocab(&vp)?
    } else {
        (BTreeSet::new(), Scope::Corpus)
    };
    if vp.exists() {
        for d in counts.keys() {
            for end in [&d.first, &d.second] {
                if !vocabulary.contains(end) {
                    return Err(Error::format(
                        &vp,
                        0,
                        format!("instruction {end} used in the table is missing"),
                    ));
                }
            }
        }
    }
    DigramTable::from_parts(counts, vocabulary, scope)
}

fn load_vocab(path: &Path) -> Result<(BTreeSet<InstructionId>, Scope)> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let mut vocab = BTreeSet::new();
    let mut scope = Scope::Corpus;
    for (i, line) in text.lines().enumerate() {
        if line.is_empty() {
            continue;
        }
        if let Some(s) = line.strip_prefix("#scope=") {
            if i != 0 {
                return Err(Error::format(path, i + 1, "scope line must come first"));
            }
            scope = Scope::parse(s)
                .ok_or_else(|| Error::format(path, i + 1, format!("unknown scope {s:?}")))?;
            continue;
        }
        if !vocab.insert(InstructionId::new(line)) {
            return Err(Error::format(path, i + 1, format!("duplicate instruction {line}")));
        }
    }
    Ok((vocab, scope))
}

/// Loads a table and thresholds it in one step.
pub fn load_allowed(path: &Path, threshold: u64) -> Result<AllowedDigrams> {
    filter_threshold(&load_table(path)?, threshold)
}

pub fn write_stats_report(stats: &DigramStats, mut out: impl Write) -> std::io::Result<()> {
    writeln!(out, "vocab_size: {}", stats.vocab_size)?;
    writeln!(out, "possible: {}", stats.possible)?;
    writeln!(out, "distinct: {}", stats.distinct)?;
    writeln!(out, "occurrences: {}", stats.occurrences)?;
    writeln!(out, "coverage_fraction: {:.6}", stats.coverage_fraction)?;
    writeln!(out, "absent_fraction: {:.6}", stats.absent_fraction)?;
    for (k, f) in &stats.quantiles {
        writeln!(out, "fraction_count_le_{k}: {f:.6}")?;
    }
    writeln!(out, "degenerate: {}", stats.degenerate)
}

pub fn write_histogram_csv(stats: &DigramStats, mut out: impl Write) -> std::io::Result<()> {
    writeln!(out, "bucket,count")?;
    for (b, n) in &stats.histogram {
        writeln!(out, "{},{}", b.label(), n)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> DigramTable {
        let mut t = DigramTable::new(Scope::Repo);
        t.add(Digram::new("len", "+"), 4);
        t.add(Digram::new("a,b", "strip"), 4);
        t.add(Digram::new("lower", "strip"), 9);
        t.observe(InstructionId::new("print"));
        t
    }

    #[test]
    fn round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("t.csv");
        let t = sample();
        save_table(&t, &p).unwrap();
        assert_eq!(load_table(&p).unwrap(), t);
    }

    #[test]
    fn file_layout() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("t.csv");
        save_table(&sample(), &p).unwrap();
        let body = fs::read_to_string(&p).unwrap();
        assert_eq!(
            body,
            "first,second,count\nlower,strip,9\n\"a,b\",strip,4\nlen,+,4\n"
        );
        let vocab = fs::read_to_string(vocab_path(&p)).unwrap();
        assert_eq!(vocab, "#scope=repo\n+\na,b\nlen\nlower\nprint\nstrip\n");
    }

    fn load_str(body: &str) -> Result<DigramTable> {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("t.csv");
        fs::write(&p, body).unwrap();
        load_table(&p)
    }

    #[test]
    fn duplicate_rows_rejected() {
        let err = load_str("first,second,count\na,b,2\nb,c,1\na,b,1\n").unwrap_err();
        match err {
            Error::Format { line, .. } => assert_eq!(line, 4),
            other => panic!("{other}"),
        }
    }

    #[test]
    fn zero_count_rejected() {
        let err = load_str("first,second,count\na,b,0\n").unwrap_err();
        assert!(matches!(err, Error::Format { line: 2, .. }), "{err}");
    }

    #[test]
    fn malformed_rows_rejected() {
        assert!(load_str("a,b,c\n").is_err());
        assert!(load_str("").is_err());
        assert!(load_str("first,second,count\na,b\n").is_err());
        assert!(load_str("first,second,count\na,b,x\n").is_err());
    }

    #[test]
    fn missing_sidecar_derives_vocabulary() {
        let t = load_str("first,second,count\na,b,2\n").unwrap();
        assert_eq!(t.vocabulary().len(), 2);
        assert_eq!(t.scope(), Scope::Corpus);
    }

    #[test]
    fn stats_report_format() {
        let stats = super::super::compute_stats(&sample());
        let mut buf = Vec::new();
        write_stats_report(&stats, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.contains("vocab_size: 6\n"));
        assert!(text.contains("coverage_fraction: 0.083333\n"));
        let mut hist = Vec::new();
        write_histogram_csv(&stats, &mut hist).unwrap();
        assert_eq!(
            String::from_utf8(hist).unwrap(),
            "bucket,count\n1,0\n2-10,3\n11-100,0\n101-1000,0\n>1000,0\n"
        );
    }
}
