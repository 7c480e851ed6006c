//! Corpus data model: validated records, the citation graph with forward
//! (made) and reverse (received) adjacency, entity indexes and time-snapshot
//! views.

mod build;
mod record;

pub use build::{ingest, CorpusBuilder, ValidationReport};
pub use record::{
    parse_record, record_to_line, ExternalClass, PaperRecord, ParsedRecord, PubType, Reference,
    YEAR_MAX, YEAR_MIN,
};

use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// The kind of publication individual a query is about.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EntityScope {
    Paper,
    Researcher,
    Journal,
    Publisher,
}

impl EntityScope {
    pub const ALL: [EntityScope; 4] = [
        EntityScope::Paper,
        EntityScope::Researcher,
        EntityScope::Journal,
        EntityScope::Publisher,
    ];

    pub fn token(self) -> &'static str {
        match self {
            EntityScope::Paper => "paper",
            EntityScope::Researcher => "researcher",
            EntityScope::Journal => "journal",
            EntityScope::Publisher => "publisher",
        }
    }
}

impl fmt::Display for EntityScope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for EntityScope {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "paper" => Ok(EntityScope::Paper),
            "researcher" => Ok(EntityScope::Researcher),
            "journal" => Ok(EntityScope::Journal),
            "publisher" => Ok(EntityScope::Publisher),
            other => Err(Error::Usage(format!(
                "unknown scope `{other}` (expected paper, researcher, journal or publisher)"
            ))),
        }
    }
}

/// A publication individual: one paper, researcher, journal or publisher.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EntityRef {
    pub scope: EntityScope,
    pub id: String,
}

impl EntityRef {
    pub fn new(scope: EntityScope, id: impl Into<String>) -> Self {
        Self { scope, id: id.into() }
    }

    pub fn paper(id: impl Into<String>) -> Self {
        Self::new(EntityScope::Paper, id)
    }

    pub fn researcher(id: impl Into<String>) -> Self {
        Self::new(EntityScope::Researcher, id)
    }

    pub fn journal(id: impl Into<String>) -> Self {
        Self::new(EntityScope::Journal, id)
    }

    pub fn publisher(id: impl Into<String>) -> Self {
        Self::new(EntityScope::Publisher, id)
    }
}

impl fmt::Display for EntityRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.scope, self.id)
    }
}

impl FromStr for EntityRef {
    type Err = Error;

    /// Parses a `scope:id` selector, e.g. `paper:P1` or `researcher:A7`.
    fn from_str(s: &str) -> Result<Self> {
        let (scope, id) = s.split_once(':').ok_or_else(|| {
            Error::Usage(format!("invalid entity selector `{s}` (expected scope:id)"))
        })?;
        if id.is_empty() {
            return Err(Error::Usage(format!("invalid entity selector `{s}`: empty id")));
        }
        Ok(EntityRef::new(scope.parse()?, id))
    }
}

#[derive(Debug, Default, Clone, PartialEq, Eq)]
struct Interner {
    names: Vec<String>,
    index: HashMap<String, u32>,
}

impl Interner {
    fn intern(&mut self, name: &str) -> u32 {
        if let Some(&i) = self.index.get(name) {
            return i;
        }
        let i = self.names.len() as u32;
        self.names.push(name.to_string());
        self.index.insert(name.to_string(), i);
        i
    }

    fn get(&self, name: &str) -> Option<u32> {
        self.index.get(name).copied()
    }

    fn name(&self, i: u32) -> &str {
        &self.names[i as usize]
    }

    fn len(&self) -> usize {
        self.names.len()
    }
}

/// Validated, indexed citation graph. Immutable once built: ingestion is an
/// exclusive single-writer phase and everything after it is read-only, so
/// any number of threads may query views concurrently.
#[derive(Debug, Clone, PartialEq)]
pub struct Corpus {
    records: Vec<PaperRecord>,
    id_to_idx: HashMap<String, u32>,
    // Dense projections of the record table, kept so the hot metric paths
    // never chase strings.
    years: Vec<i32>,
    journal_of: Vec<u32>,
    publisher_of: Vec<u32>,
    authors_of: Vec<Box<[u32]>>,
    authors: Interner,
    journals: Interner,
    publishers: Interner,
    /// Resolved internal reference targets per paper (the made index).
    made_internal: Vec<Box<[u32]>>,
    /// Exact transpose of `made_internal` (the received index).
    received: Vec<Box<[u32]>>,
    by_author: Vec<Vec<u32>>,
    by_journal: Vec<Vec<u32>>,
    by_publisher: Vec<Vec<u32>>,
    report: ValidationReport,
}

/// Paper indexes belonging to one entity.
pub(crate) enum EntityPapers<'a> {
    Single([u32; 1]),
    Many(&'a [u32]),
}

impl EntityPapers<'_> {
    pub(crate) fn as_slice(&self) -> &[u32] {
        match self {
            EntityPapers::Single(one) => one,
            EntityPapers::Many(many) => many,
        }
    }
}

impl Corpus {
    /// Number of papers.
    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// All records in ingest order. This is the raw domain data; the
    /// brute-force oracle recomputes every metric from this slice alone.
    pub fn records(&self) -> &[PaperRecord] {
        &self.records
    }

    pub fn paper(&self, id: &str) -> Option<&PaperRecord> {
        self.idx_of(id).map(|i| &self.records[i as usize])
    }

    pub fn contains_paper(&self, id: &str) -> bool {
        self.id_to_idx.contains_key(id)
    }

    pub fn report(&self) -> &ValidationReport {
        &self.report
    }

    /// Resolved internal reference targets of a paper, in reference order.
    pub fn internal_refs_of(&self, id: &str) -> Result<Vec<&str>> {
        let idx = self.require_paper(id)?;
        Ok(self.made_internal[idx as usize]
            .iter()
            .map(|&t| self.records[t as usize].id.as_str())
            .collect())
    }

    /// Ids of the papers citing `id`, in ingest order.
    pub fn citers_of(&self, id: &str) -> Result<Vec<&str>> {
        let idx = self.require_paper(id)?;
        Ok(self.received[idx as usize]
            .iter()
            .map(|&c| self.records[c as usize].id.as_str())
            .collect())
    }

    /// Entity ids known to the corpus under one scope, in first-appearance
    /// order.
    pub fn entity_ids(&self, scope: EntityScope) -> impl Iterator<Item = &str> {
        let names: &[String] = match scope {
            EntityScope::Paper => &[],
            EntityScope::Researcher => &self.authors.names,
            EntityScope::Journal => &self.journals.names,
            EntityScope::Publisher => &self.publishers.names,
        };
        let papers = match scope {
            EntityScope::Paper => Some(self.records.iter().map(|r| r.id.as_str())),
            _ => None,
        };
        names
            .iter()
            .map(String::as_str)
            .chain(papers.into_iter().flatten())
    }

    pub fn contains_entity(&self, entity: &EntityRef) -> bool {
        match entity.scope {
            EntityScope::Paper => self.id_to_idx.contains_key(&entity.id),
            EntityScope::Researcher => self.authors.get(&entity.id).is_some(),
            EntityScope::Journal => self.journals.get(&entity.id).is_some(),
            EntityScope::Publisher => self.publishers.get(&entity.id).is_some(),
        }
    }

    /// The full corpus as a view.
    pub fn view(&self) -> CorpusView<'_> {
        CorpusView { corpus: self, as_of: None }
    }

    /// View of the corpus at the end of `year`: papers published in or
    /// before `year`, and only citation events whose citing paper is itself
    /// inside the view.
    pub fn snapshot(&self, year: i32) -> CorpusView<'_> {
        CorpusView { corpus: self, as_of: Some(year) }
    }

    /// Whether a citation from `citing` to `cited` counts as a
    /// self-citation under `scope`: shared author for paper and researcher
    /// scope, same journal for journal scope, same publisher for publisher
    /// scope.
    pub fn is_self_citation(&self, citing: &str, cited: &str, scope: EntityScope) -> Result<bool> {
        let citing = self.require_paper(citing)?;
        let cited = self.require_paper(cited)?;
        Ok(self.self_citation_idx(citing, cited, scope))
    }

    fn require_paper(&self, id: &str) -> Result<u32> {
        self.idx_of(id).ok_or_else(|| Error::UnknownEntity {
            scope: EntityScope::Paper,
            id: id.to_string(),
        })
    }

    pub(crate) fn idx_of(&self, id: &str) -> Option<u32> {
        self.id_to_idx.get(id).copied()
    }

    pub(crate) fn year_of(&self, idx: u32) -> i32 {
        self.years[idx as usize]
    }

    pub(crate) fn journal_idx_of(&self, idx: u32) -> u32 {
        self.journal_of[idx as usize]
    }

    pub(crate) fn record_of(&self, idx: u32) -> &PaperRecord {
        &self.records[idx as usize]
    }

    /// Citations made by one paper: canonical reference-list length, fixed
    /// at publication (internal, unresolved and external targets alike).
    pub(crate) fn made_count(&self, idx: u32) -> u64 {
        self.records[idx as usize].refs.len() as u64
    }

    pub(crate) fn received_idx(&self, idx: u32) -> &[u32] {
        &self.received[idx as usize]
    }

    pub(crate) fn journal_count(&self) -> usize {
        self.journals.len()
    }

    pub(crate) fn journal_name(&self, idx: u32) -> &str {
        self.journals.name(idx)
    }

    pub(crate) fn self_citation_idx(&self, citing: u32, cited: u32, scope: EntityScope) -> bool {
        match scope {
            EntityScope::Paper | EntityScope::Researcher => {
                let a = &self.authors_of[citing as usize];
                let b = &self.authors_of[cited as usize];
                a.iter().any(|x| b.contains(x))
            }
            EntityScope::Journal => {
                self.journal_of[citing as usize] == self.journal_of[cited as usize]
            }
            EntityScope::Publisher => {
                self.publisher_of[citing as usize] == self.publisher_of[cited as usize]
            }
        }
    }

    /// Paper indexes of an entity, or a lookup error when the id is not in
    /// the corresponding index.
    pub(crate) fn entity_paper_idxs(&self, entity: &EntityRef) -> Result<EntityPapers<'_>> {
        let unknown = || Error::UnknownEntity {
            scope: entity.scope,
            id: entity.id.clone(),
        };
        match entity.scope {
            EntityScope::Paper => {
                let idx = self.idx_of(&entity.id).ok_or_else(unknown)?;
                Ok(EntityPapers::Single([idx]))
            }
            EntityScope::Researcher => {
                let a = self.authors.get(&entity.id).ok_or_else(unknown)?;
                Ok(EntityPapers::Many(&self.by_author[a as usize]))
            }
            EntityScope::Journal => {
                let j = self.journals.get(&entity.id).ok_or_else(unknown)?;
                Ok(EntityPapers::Many(&self.by_journal[j as usize]))
            }
            EntityScope::Publisher => {
                let p = self.publishers.get(&entity.id).ok_or_else(unknown)?;
                Ok(EntityPapers::Many(&self.by_publisher[p as usize]))
            }
        }
    }
}

/// A time-scoped, freely copyable window onto an immutable corpus. A view
/// at year `t` exposes only papers published in or before `t` and only
/// citation events whose citing paper lies inside the view; a view with no
/// snapshot year is the whole corpus.
#[derive(Debug, Clone, Copy)]
pub struct CorpusView<'a> {
    corpus: &'a Corpus,
    as_of: Option<i32>,
}

impl<'a> CorpusView<'a> {
    pub fn corpus(&self) -> &'a Corpus {
        self.corpus
    }

    pub fn as_of_year(&self) -> Option<i32> {
        self.as_of
    }

    /// Whether the paper is visible in this view.
    pub fn contains_paper(&self, id: &str) -> bool {
        self.corpus
            .idx_of(id)
            .is_some_and(|idx| self.contains_idx(idx))
    }

    /// Papers visible in this view, in ingest order.
    pub fn papers(&self) -> impl Iterator<Item = &'a PaperRecord> + '_ {
        self.corpus
            .records
            .iter()
            .filter(move |r| self.contains_year(r.year))
    }

    pub(crate) fn contains_idx(&self, idx: u32) -> bool {
        self.contains_year(self.corpus.year_of(idx))
    }

    pub(crate) fn contains_year(&self, year: i32) -> bool {
        self.as_of.is_none_or(|t| year <= t)
    }

    /// Further restricts the view; the tighter of the two snapshot years
    /// wins.
    pub(crate) fn narrowed(&self, as_of: Option<i32>) -> CorpusView<'a> {
        let as_of = match (self.as_of, as_of) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        CorpusView { corpus: self.corpus, as_of }
    }

    pub(crate) fn as_of_or_max(&self) -> i32 {
        self.as_of.unwrap_or(YEAR_MAX)
    }
}
