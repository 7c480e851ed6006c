//! Classic metrics for side-by-side comparison with ROC: raw citation
//! count, h-index, and a two-year impact-factor analogue.
//!
//! The impact-factor analogue keeps the classic asymmetry (citations to
//! letters and commentaries feed the numerator while only research and
//! review items count in the denominator) so reports can contrast it with
//! ROC, which treats every publication type alike.

use serde::Serialize;

use crate::corpus::{CorpusView, EntityRef, EntityScope};
use crate::error::{Error, Result};
use crate::metrics::{self, MetricOptions, RocResult};

/// One entity's metrics side by side. Cells a metric does not apply to are
/// absent, never zero.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonRow {
    pub entity: EntityRef,
    pub roc: RocResult,
    pub citation_count: u64,
    /// Researcher and journal scope only.
    pub h_index: Option<u64>,
    /// Journal scope only, and only when a census year was requested and
    /// the metric is defined there.
    pub if2y: Option<f64>,
}

/// Total citations received by the entity's papers in the view: unweighted,
/// self-citations included.
pub fn citation_count(view: &CorpusView<'_>, entity: &EntityRef) -> Result<u64> {
    let received = metrics::citations_received(view, entity, &MetricOptions::default())?;
    Ok(received as u64)
}

/// Largest `h` such that the entity has at least `h` papers each cited at
/// least `h` times in the view.
pub fn h_index(view: &CorpusView<'_>, entity: &EntityRef) -> Result<u64> {
    if !matches!(
        entity.scope,
        EntityScope::Researcher | EntityScope::Journal
    ) {
        return Err(Error::Usage(format!(
            "h-index applies to researcher or journal scope, not {}",
            entity.scope
        )));
    }
    let (view, papers) = metrics::scoped_papers(view, entity, &MetricOptions::default())?;
    let corpus = view.corpus();
    let mut counts: Vec<u64> = papers
        .iter()
        .map(|&p| {
            corpus
                .received_idx(p)
                .iter()
                .filter(|&&c| view.contains_idx(c))
                .count() as u64
        })
        .collect();
    counts.sort_unstable_by(|a, b| b.cmp(a));
    let mut h = 0u64;
    for (i, &c) in counts.iter().enumerate() {
        if c > i as u64 {
            h = i as u64 + 1;
        } else {
            break;
        }
    }
    Ok(h)
}

/// Two-year impact-factor analogue for a journal at `census_year`:
/// citations received during the census year by everything the journal
/// published in the two preceding years, divided by the count of its
/// research and review items from those years.
pub fn if2y(view: &CorpusView<'_>, journal: &EntityRef, census_year: i32) -> Result<f64> {
    if journal.scope != EntityScope::Journal {
        return Err(Error::Usage(format!(
            "the impact factor applies to journal scope, not {}",
            journal.scope
        )));
    }
    if let Some(as_of) = view.as_of_year() {
        if as_of < census_year {
            return Err(Error::Usage(format!(
                "view at {as_of} does not cover census year {census_year}"
            )));
        }
    }
    let (view, papers) = metrics::scoped_papers(view, journal, &MetricOptions::default())?;
    let corpus = view.corpus();
    let window = (census_year - 2)..=(census_year - 1);
    let mut numerator = 0u64;
    let mut citable_items = 0u64;
    for &p in &papers {
        if !window.contains(&corpus.year_of(p)) {
            continue;
        }
        if corpus.record_of(p).pub_type.is_citable_item() {
            citable_items += 1;
        }
        numerator += corpus
            .received_idx(p)
            .iter()
            .filter(|&&c| corpus.year_of(c) == census_year)
            .count() as u64;
    }
    if citable_items == 0 {
        return Err(Error::UndefinedMetric(format!(
            "journal `{}` has no citable items in {}-{}",
            journal.id,
            census_year - 2,
            census_year - 1
        )));
    }
    Ok(numerator as f64 / citable_items as f64)
}

/// Builds one comparison row per entity. Per-entity failures are returned
/// in place so one bad selector does not abort the batch; an undefined
/// impact factor is reported as an absent cell.
pub fn compare(
    view: &CorpusView<'_>,
    entities: &[EntityRef],
    opts: &MetricOptions,
    census_year: Option<i32>,
) -> Vec<Result<ComparisonRow>> {
    entities
        .iter()
        .map(|entity| compare_one(view, entity, opts, census_year))
        .collect()
}

fn compare_one(
    view: &CorpusView<'_>,
    entity: &EntityRef,
    opts: &MetricOptions,
    census_year: Option<i32>,
) -> Result<ComparisonRow> {
    let roc = metrics::roc(view, entity, opts)?;
    let citation_count = citation_count(view, entity)?;
    let h_index = match entity.scope {
        EntityScope::Researcher | EntityScope::Journal => Some(h_index(view, entity)?),
        _ => None,
    };
    let if2y = match (entity.scope, census_year) {
        (EntityScope::Journal, Some(year)) => match if2y(view, entity, year) {
            Ok(v) => Some(v),
            Err(Error::UndefinedMetric(_)) => None,
            Err(e) => return Err(e),
        },
        _ => None,
    };
    Ok(ComparisonRow {
        entity: entity.clone(),
        roc,
        citation_count,
        h_index,
        if2y,
    })
}
