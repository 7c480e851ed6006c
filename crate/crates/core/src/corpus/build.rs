//! Corpus construction: record validation, id interning, and the forward /
//! reverse adjacency build.

use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::io::BufRead;
use std::path::Path;

use super::record::{canonicalize_refs, parse_record, PaperRecord, Reference, YEAR_MAX, YEAR_MIN};
use super::{Corpus, Interner};
use crate::error::{Error, Result};

/// What ingestion dropped, rewrote or failed to resolve.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub dropped_self_loops: u64,
    pub deduplicated_refs: u64,
    pub unresolved_refs: u64,
    pub total_papers: u64,
    pub total_internal_edges: u64,
    pub total_external_refs: u64,
}

impl ValidationReport {
    /// True when every reference resolved and nothing had to be dropped.
    pub fn is_clean(&self) -> bool {
        self.dropped_self_loops == 0 && self.deduplicated_refs == 0 && self.unresolved_refs == 0
    }
}

/// Accumulates records, then builds the immutable [`Corpus`] in one pass.
#[derive(Debug, Default)]
pub struct CorpusBuilder {
    records: Vec<PaperRecord>,
    positions: Vec<usize>,
    id_to_idx: HashMap<String, u32>,
    report: ValidationReport,
}

impl CorpusBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a record, using its ordinal (1-based) as the reported position.
    pub fn push(&mut self, record: PaperRecord) -> Result<()> {
        let pos = self.records.len() + 1;
        self.push_at(record, pos)
    }

    /// Adds a record with an explicit position (a line number when reading
    /// a file). The record is canonicalized: duplicate reference targets
    /// collapse, self-loops are dropped, repeated author ids collapse; all
    /// counted in the validation report.
    pub fn push_at(&mut self, mut record: PaperRecord, pos: usize) -> Result<()> {
        if !(YEAR_MIN..=YEAR_MAX).contains(&record.year) {
            return Err(Error::InvalidRecord {
                id: record.id,
                message: format!("year {} outside [{YEAR_MIN}, {YEAR_MAX}]", record.year),
            });
        }
        record.authors.retain({
            let mut seen: Vec<String> = Vec::new();
            move |a| {
                if seen.contains(a) {
                    false
                } else {
                    seen.push(a.clone());
                    true
                }
            }
        });
        if record.authors.is_empty() {
            return Err(Error::InvalidRecord {
                id: record.id,
                message: "authors list is empty".to_string(),
            });
        }
        let (refs, dedup, self_loops) =
            canonicalize_refs(&record.id, std::mem::take(&mut record.refs));
        record.refs = refs;
        self.report.deduplicated_refs += dedup;
        self.report.dropped_self_loops += self_loops;

        let idx = self.records.len() as u32;
        if let Some(&prev) = self.id_to_idx.get(&record.id) {
            return Err(Error::DuplicateId {
                id: record.id,
                first: self.positions[prev as usize],
                second: pos,
            });
        }
        self.id_to_idx.insert(record.id.clone(), idx);
        self.records.push(record);
        self.positions.push(pos);
        Ok(())
    }

    /// Folds counts of what parsing already dropped into the report.
    fn absorb_parse_counts(&mut self, deduplicated_refs: u64, dropped_self_loops: u64) {
        self.report.deduplicated_refs += deduplicated_refs;
        self.report.dropped_self_loops += dropped_self_loops;
    }

    /// Builds all indexes. Internal references whose target id never
    /// appeared are reclassified unresolved: they keep counting as
    /// citations made but get no edge.
    pub fn finish(mut self) -> Corpus {
        let n = self.records.len();
        let mut authors = Interner::default();
        let mut journals = Interner::default();
        let mut publishers = Interner::default();
        let mut years = Vec::with_capacity(n);
        let mut journal_of = Vec::with_capacity(n);
        let mut publisher_of = Vec::with_capacity(n);
        let mut authors_of = Vec::with_capacity(n);
        let mut by_author: Vec<Vec<u32>> = Vec::new();
        let mut by_journal: Vec<Vec<u32>> = Vec::new();
        let mut by_publisher: Vec<Vec<u32>> = Vec::new();

        for (i, record) in self.records.iter().enumerate() {
            let i = i as u32;
            years.push(record.year);
            let j = journals.intern(&record.journal);
            if j as usize == by_journal.len() {
                by_journal.push(Vec::new());
            }
            by_journal[j as usize].push(i);
            journal_of.push(j);
            let p = publishers.intern(&record.publisher);
            if p as usize == by_publisher.len() {
                by_publisher.push(Vec::new());
            }
            by_publisher[p as usize].push(i);
            publisher_of.push(p);
            let mut paper_authors = Vec::with_capacity(record.authors.len());
            for author in &record.authors {
                let a = authors.intern(author);
                if a as usize == by_author.len() {
                    by_author.push(Vec::new());
                }
                by_author[a as usize].push(i);
                paper_authors.push(a);
            }
            authors_of.push(paper_authors.into_boxed_slice());
        }

        let mut made_internal: Vec<Box<[u32]>> = Vec::with_capacity(n);
        let mut received: Vec<Vec<u32>> = vec![Vec::new(); n];
        for (i, record) in self.records.iter().enumerate() {
            let mut resolved = Vec::new();
            for r in &record.refs {
                match r {
                    Reference::Paper { id } => match self.id_to_idx.get(id) {
                        Some(&target) => {
                            resolved.push(target);
                            received[target as usize].push(i as u32);
                            self.report.total_internal_edges += 1;
                        }
                        None => self.report.unresolved_refs += 1,
                    },
                    Reference::External { .. } => self.report.total_external_refs += 1,
                }
            }
            made_internal.push(resolved.into_boxed_slice());
        }
        self.report.total_papers = n as u64;

        Corpus {
            records: self.records,
            id_to_idx: self.id_to_idx,
            years,
            journal_of,
            publisher_of,
            authors_of,
            authors,
            journals,
            publishers,
            made_internal,
            received: received.into_iter().map(Vec::into_boxed_slice).collect(),
            by_author,
            by_journal,
            by_publisher,
            report: self.report,
        }
    }
}

/// Builds a corpus from a finite record stream. Duplicate paper ids abort
/// with an error naming both occurrences.
pub fn ingest<I>(records: I) -> Result<Corpus>
where
    I: IntoIterator<Item = PaperRecord>,
{
    let mut builder = CorpusBuilder::new();
    for record in records {
        builder.push(record)?;
    }
    Ok(builder.finish())
}

impl Corpus {
    /// Reads the line-delimited corpus format. `#` lines are comments and
    /// blank lines are skipped; errors carry 1-based line numbers.
    pub fn from_reader(reader: impl BufRead) -> Result<Corpus> {
        let mut builder = CorpusBuilder::new();
        for (i, line) in reader.lines().enumerate() {
            let line = line?;
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let line_no = i + 1;
            let parsed = parse_record(trimmed, line_no)?;
            builder.absorb_parse_counts(parsed.deduplicated_refs, parsed.dropped_self_loops);
            builder.push_at(parsed.record, line_no)?;
        }
        Ok(builder.finish())
    }

    pub fn from_path(path: impl AsRef<Path>) -> Result<Corpus> {
        let file = std::fs::File::open(path)?;
        Corpus::from_reader(std::io::BufReader::new(file))
    }
}
