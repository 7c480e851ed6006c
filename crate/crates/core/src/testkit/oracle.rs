//! Brute-force recomputation of every metric by naive full scans over the
//! raw record table.
//!
//! Nothing here touches the corpus adjacency or entity indexes: entity
//! membership, received citations and snapshot filtering are all re-derived
//! from [`Corpus::records`] alone, so a disagreement with the engine always
//! means one of the two is wrong.

use std::collections::{BTreeMap, HashMap};

use crate::corpus::{Corpus, EntityRef, EntityScope, PaperRecord, Reference};
use crate::error::{Error, Result};
use crate::metrics::{MetricOptions, RocResult};
use crate::portfolio::PortfolioStats;

fn matches_entity(record: &PaperRecord, entity: &EntityRef) -> bool {
    match entity.scope {
        EntityScope::Paper => record.id == entity.id,
        EntityScope::Researcher => record.authors.contains(&entity.id),
        EntityScope::Journal => record.journal == entity.id,
        EntityScope::Publisher => record.publisher == entity.id,
    }
}

fn in_view(record: &PaperRecord, as_of: Option<i32>) -> bool {
    as_of.is_none_or(|t| record.year <= t)
}

fn is_self_citation(citing: &PaperRecord, cited: &PaperRecord, scope: EntityScope) -> bool {
    match scope {
        EntityScope::Paper | EntityScope::Researcher => citing
            .authors
            .iter()
            .any(|a| cited.authors.iter().any(|b| a == b)),
        EntityScope::Journal => citing.journal == cited.journal,
        EntityScope::Publisher => citing.publisher == cited.publisher,
    }
}

/// The entity's records surviving the view and period filters, with the
/// same error contract as the engine.
fn scoped<'c>(
    corpus: &'c Corpus,
    entity: &EntityRef,
    opts: &MetricOptions,
) -> Result<Vec<&'c PaperRecord>> {
    let mut known = false;
    let mut any_in_view = false;
    let mut scoped = Vec::new();
    for record in corpus.records() {
        if !matches_entity(record, entity) {
            continue;
        }
        known = true;
        if !in_view(record, opts.as_of_year) {
            continue;
        }
        any_in_view = true;
        if opts.period.is_none_or(|p| p.contains(record.year)) {
            scoped.push(record);
        }
    }
    if !known {
        return Err(Error::UnknownEntity {
            scope: entity.scope,
            id: entity.id.clone(),
        });
    }
    if !any_in_view {
        return Err(Error::NotInView {
            scope: entity.scope,
            id: entity.id.clone(),
            as_of: opts.as_of_year.unwrap_or(crate::corpus::YEAR_MAX),
        });
    }
    Ok(scoped)
}

pub fn citations_made(corpus: &Corpus, entity: &EntityRef, opts: &MetricOptions) -> Result<u64> {
    Ok(scoped(corpus, entity, opts)?
        .iter()
        .map(|r| r.refs.len() as u64)
        .sum())
}

pub fn citations_received(
    corpus: &Corpus,
    entity: &EntityRef,
    opts: &MetricOptions,
) -> Result<f64> {
    let scoped = scoped(corpus, entity, opts)?;
    Ok(received_over(corpus, entity.scope, &scoped, opts))
}

fn received_over(
    corpus: &Corpus,
    scope: EntityScope,
    scoped: &[&PaperRecord],
    opts: &MetricOptions,
) -> f64 {
    // Scratch lookup over the oracle's own scan output, not a corpus index.
    let scoped_by_id: HashMap<&str, &PaperRecord> =
        scoped.iter().map(|p| (p.id.as_str(), *p)).collect();
    let mut count: u64 = 0;
    let mut weighted = 0.0f64;
    for citing in corpus.records() {
        if !in_view(citing, opts.as_of_year) {
            continue;
        }
        for r in &citing.refs {
            let Reference::Paper { id } = r else { continue };
            let Some(&cited) = scoped_by_id.get(id.as_str()) else {
                continue;
            };
            if opts.exclude_self_citations && is_self_citation(citing, cited, scope) {
                continue;
            }
            match &opts.weight_table {
                Some(table) => weighted += table.weight(&citing.journal),
                None => count += 1,
            }
        }
    }
    if opts.weight_table.is_some() {
        weighted
    } else {
        count as f64
    }
}

pub fn roc(corpus: &Corpus, entity: &EntityRef, opts: &MetricOptions) -> Result<RocResult> {
    let scoped = scoped(corpus, entity, opts)?;
    let made: u64 = scoped.iter().map(|r| r.refs.len() as u64).sum();
    let received = received_over(corpus, entity.scope, &scoped, opts);
    // Deliberately re-stated floor arithmetic; do not share the engine's.
    let floor_applied = made == 0;
    let effective = if made == 0 { 0.5 } else { made as f64 };
    let value = received / effective;
    Ok(RocResult {
        numerator: received,
        raw_denominator: made,
        effective_denominator: effective,
        value,
        floor_applied,
        outstanding: value > opts.benchmark,
    })
}

pub fn roc_period(
    corpus: &Corpus,
    entity: &EntityRef,
    period: crate::metrics::YearRange,
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
    roc(corpus, entity, &opts)
}

/// Per-paper ROC statistics recomputed one paper at a time.
pub fn portfolio(corpus: &Corpus, entity: &EntityRef, opts: &MetricOptions) -> Result<PortfolioStats> {
    let scoped = scoped(corpus, entity, opts)?;
    if scoped.is_empty() {
        return Err(Error::EmptyPortfolio {
            scope: entity.scope,
            id: entity.id.clone(),
        });
    }
    let per_paper_opts = MetricOptions {
        period: None,
        ..opts.clone()
    };
    let mut paper_rocs = BTreeMap::new();
    for record in &scoped {
        let r = roc(corpus, &EntityRef::paper(&record.id), &per_paper_opts)?;
        paper_rocs.insert(record.id.clone(), r.value);
    }
    let roc_max = paper_rocs.values().fold(f64::MIN, |m, &v| m.max(v));
    let high_roc_count = paper_rocs.values().filter(|&&v| v > 1.0).count() as u64;
    let total_papers = paper_rocs.len() as u64;
    Ok(PortfolioStats {
        paper_rocs,
        roc_max,
        high_roc_count,
        high_roc_ratio_percent: 100.0 * high_roc_count as f64 / total_papers as f64,
        total_papers,
    })
}

/// Unweighted, self-citations included, whole life within the view.
pub fn citation_count(corpus: &Corpus, entity: &EntityRef, as_of: Option<i32>) -> Result<u64> {
    let opts = MetricOptions {
        as_of_year: as_of,
        ..Default::default()
    };
    let received = citations_received(corpus, entity, &opts)?;
    Ok(received as u64)
}

/// Largest `h` with at least `h` papers cited at least `h` times, found by
/// scanning every candidate from `n` down to zero.
pub fn h_index(corpus: &Corpus, entity: &EntityRef, as_of: Option<i32>) -> Result<u64> {
    if !matches!(
        entity.scope,
        EntityScope::Researcher | EntityScope::Journal
    ) {
        return Err(Error::Usage(format!(
            "h-index applies to researcher or journal scope, not {}",
            entity.scope
        )));
    }
    let opts = MetricOptions {
        as_of_year: as_of,
        ..Default::default()
    };
    let scoped = scoped(corpus, entity, &opts)?;
    let counts: Vec<u64> = scoped
        .iter()
        .map(|p| received_over(corpus, entity.scope, &[p], &opts) as u64)
        .collect();
    for h in (1..=counts.len() as u64).rev() {
        if counts.iter().filter(|&&c| c >= h).count() as u64 >= h {
            return Ok(h);
        }
    }
    Ok(0)
}

/// Two-year impact-factor analogue, recomputed by scanning all records.
pub fn if2y(corpus: &Corpus, journal: &str, census_year: i32, as_of: Option<i32>) -> Result<f64> {
    let window = [census_year - 2, census_year - 1];
    let mut numerator = 0u64;
    let mut citable_items = 0u64;
    for record in corpus.records() {
        if record.journal == *journal && window.contains(&record.year) {
            if record.pub_type.is_citable_item() {
                citable_items += 1;
            }
            for citing in corpus.records() {
                if citing.year != census_year || !in_view(citing, as_of) {
                    continue;
                }
                for r in &citing.refs {
                    if matches!(r, Reference::Paper { id } if *id == record.id) {
                        numerator += 1;
                    }
                }
            }
        }
    }
    if citable_items == 0 {
        return Err(Error::UndefinedMetric(format!(
            "journal `{journal}` has no citable items in {}-{}",
            window[0], window[1]
        )));
    }
    Ok(numerator as f64 / citable_items as f64)
}
