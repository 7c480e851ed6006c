//! Return-on-citation: citations received divided by citations made, for
//! any publication individual, with optional self-citation exclusion,
//! per-journal citation weights, period scoping and snapshot years.
//!
//! Everything here is a pure function over an immutable [`CorpusView`];
//! parallel invocation needs no coordination.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::str::FromStr;

use crate::corpus::{CorpusView, EntityRef, EntityScope};
use crate::error::{Error, Result};

/// Inclusive calendar-year range.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct YearRange {
    pub start: i32,
    pub end: i32,
}

impl YearRange {
    pub fn new(start: i32, end: i32) -> Result<Self> {
        if start > end {
            return Err(Error::Options(format!(
                "invalid year range {start}:{end} (start after end)"
            )));
        }
        Ok(Self { start, end })
    }

    pub fn contains(&self, year: i32) -> bool {
        (self.start..=self.end).contains(&year)
    }

    pub fn iter(&self) -> impl Iterator<Item = i32> {
        self.start..=self.end
    }
}

impl FromStr for YearRange {
    type Err = Error;

    /// Parses `START:END`, e.g. `2010:2015`.
    fn from_str(s: &str) -> Result<Self> {
        let (a, b) = s
            .split_once(':')
            .ok_or_else(|| Error::Options(format!("invalid year range `{s}` (expected A:B)")))?;
        let parse = |t: &str| {
            t.trim()
                .parse::<i32>()
                .map_err(|_| Error::Options(format!("invalid year `{t}` in range `{s}`")))
        };
        YearRange::new(parse(a)?, parse(b)?)
    }
}

/// Per-journal citation weights, keyed by the citing paper's journal id.
/// Journals absent from the table weigh 1.0; weights must be strictly
/// positive.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct WeightTable {
    weights: BTreeMap<String, f64>,
}

impl WeightTable {
    pub fn new(weights: impl IntoIterator<Item = (String, f64)>) -> Result<Self> {
        let weights: BTreeMap<String, f64> = weights.into_iter().collect();
        for (journal, &w) in &weights {
            if !(w.is_finite() && w > 0.0) {
                return Err(Error::Options(format!(
                    "weight for journal `{journal}` must be strictly positive, got {w}"
                )));
            }
        }
        Ok(Self { weights })
    }

    pub fn weight(&self, journal: &str) -> f64 {
        self.weights.get(journal).copied().unwrap_or(1.0)
    }

    /// Dense weight-by-journal-index table for one corpus.
    fn compile(&self, view: &CorpusView<'_>) -> Vec<f64> {
        let corpus = view.corpus();
        (0..corpus.journal_count() as u32)
            .map(|j| self.weight(corpus.journal_name(j)))
            .collect()
    }
}

/// Options shared by every metric operation.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricOptions {
    /// Skip citation events that are self-citations under the queried
    /// scope. Touches the numerator only; citations made never shrink.
    pub exclude_self_citations: bool,
    /// Weight received citations by the citing paper's journal.
    pub weight_table: Option<WeightTable>,
    /// Restrict the entity to papers published in this range.
    pub period: Option<YearRange>,
    /// Evaluate against a snapshot of the corpus at this year. Composes
    /// with a snapshot view; the tighter year wins.
    pub as_of_year: Option<i32>,
    /// Threshold for the `outstanding` flag (strictly greater wins).
    pub benchmark: f64,
}

impl Default for MetricOptions {
    fn default() -> Self {
        Self {
            exclude_self_citations: false,
            weight_table: None,
            period: None,
            as_of_year: None,
            benchmark: 1.0,
        }
    }
}

/// One ROC computation, with the floor rule and benchmark applied.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RocResult {
    /// Weighted count of citations received.
    pub numerator: f64,
    /// Citations made. Zero triggers the denominator floor.
    pub raw_denominator: u64,
    /// `raw_denominator`, or 0.5 when that is zero.
    pub effective_denominator: f64,
    pub value: f64,
    pub floor_applied: bool,
    /// `value > benchmark` (strict).
    pub outstanding: bool,
}

impl RocResult {
    pub(crate) fn from_counts(numerator: f64, raw_denominator: u64, benchmark: f64) -> Self {
        let floor_applied = raw_denominator == 0;
        let effective_denominator = if floor_applied {
            0.5
        } else {
            raw_denominator as f64
        };
        let value = numerator / effective_denominator;
        RocResult {
            numerator,
            raw_denominator,
            effective_denominator,
            value,
            floor_applied,
            outstanding: value > benchmark,
        }
    }
}

/// The entity's papers visible in the (narrowed) view, then period-filtered.
/// Unknown ids and entities with nothing in the view are lookup errors; an
/// empty period intersection is not.
pub(crate) fn scoped_papers<'a>(
    view: &CorpusView<'a>,
    entity: &EntityRef,
    opts: &MetricOptions,
) -> Result<(CorpusView<'a>, Vec<u32>)> {
    let view = view.narrowed(opts.as_of_year);
    let corpus = view.corpus();
    let all = corpus.entity_paper_idxs(entity)?;
    let mut any_in_view = false;
    let mut scoped = Vec::new();
    for &p in all.as_slice() {
        if !view.contains_idx(p) {
            continue;
        }
        any_in_view = true;
        if opts
            .period
            .is_none_or(|period| period.contains(corpus.year_of(p)))
        {
            scoped.push(p);
        }
    }
    if !any_in_view {
        return Err(Error::NotInView {
            scope: entity.scope,
            id: entity.id.clone(),
            as_of: view.as_of_or_max(),
        });
    }
    Ok((view, scoped))
}

/// Number of the entity's papers the options leave in scope.
pub fn papers_in_scope(
    view: &CorpusView<'_>,
    entity: &EntityRef,
    opts: &MetricOptions,
) -> Result<usize> {
    scoped_papers(view, entity, opts).map(|(_, papers)| papers.len())
}

/// Citations made: the summed reference-list lengths of the entity's
/// in-scope papers. Internal, unresolved and external targets all count,
/// and each paper's count is fixed at publication.
pub fn citations_made(
    view: &CorpusView<'_>,
    entity: &EntityRef,
    opts: &MetricOptions,
) -> Result<u64> {
    let (view, papers) = scoped_papers(view, entity, opts)?;
    Ok(papers
        .iter()
        .map(|&p| view.corpus().made_count(p))
        .sum())
}

/// Citations received: weighted count of citation events landing on the
/// entity's in-scope papers from citing papers inside the view.
pub fn citations_received(
    view: &CorpusView<'_>,
    entity: &EntityRef,
    opts: &MetricOptions,
) -> Result<f64> {
    let (view, papers) = scoped_papers(view, entity, opts)?;
    Ok(received_over(&view, entity.scope, &papers, opts))
}

fn received_over(
    view: &CorpusView<'_>,
    scope: EntityScope,
    papers: &[u32],
    opts: &MetricOptions,
) -> f64 {
    let corpus = view.corpus();
    let weights = opts.weight_table.as_ref().map(|t| t.compile(view));
    let mut count: u64 = 0;
    let mut weighted = 0.0f64;
    for &p in papers {
        for &citing in corpus.received_idx(p) {
            if !view.contains_idx(citing) {
                continue;
            }
            if opts.exclude_self_citations && corpus.self_citation_idx(citing, p, scope) {
                continue;
            }
            match &weights {
                Some(w) => weighted += w[corpus.journal_idx_of(citing) as usize],
                None => count += 1,
            }
        }
    }
    if weights.is_some() {
        weighted
    } else {
        count as f64
    }
}

/// Return on citation for one entity: citations received over citations
/// made, with the 0.5 denominator floor when the entity made none.
pub fn roc(view: &CorpusView<'_>, entity: &EntityRef, opts: &MetricOptions) -> Result<RocResult> {
    let (view, papers) = scoped_papers(view, entity, opts)?;
    let made: u64 = papers.iter().map(|&p| view.corpus().made_count(p)).sum();
    let received = received_over(&view, entity.scope, &papers, opts);
    Ok(RocResult::from_counts(received, made, opts.benchmark))
}

/// Period-scoped ROC: only papers published inside `period` contribute, on
/// both sides of the ratio; the numerator still counts their citations from
/// the whole view. Paper scope is rejected; a single paper has one
/// publication year.
pub fn roc_period(
    view: &CorpusView<'_>,
    entity: &EntityRef,
    period: YearRange,
    opts: &MetricOptions,
) -> Result<RocResult> {
    if entity.scope == EntityScope::Paper {
        return Err(Error::Usage(
            "a period does not apply to paper scope; query the paper directly".to_string(),
        ));
    }
    let opts = MetricOptions {
        period: Some(period),
        ..opts.clone()
    };
    roc(view, entity, &opts)
}
