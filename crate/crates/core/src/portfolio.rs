//! Per-paper ROC distributions for an entity: the maximum individual ROC,
//! the count and share of papers whose ROC exceeds 1, and per-year series
//! over corpus snapshots.

use serde::Serialize;
use std::collections::BTreeMap;

use crate::corpus::{Corpus, CorpusView, EntityRef, EntityScope};
use crate::error::{Error, Result};
use crate::metrics::{self, MetricOptions, RocResult, YearRange};

/// Distribution of per-paper ROC values over an entity's publications.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PortfolioStats {
    /// Paper id → that paper's ROC value, under the caller's options.
    pub paper_rocs: BTreeMap<String, f64>,
    /// Largest per-paper ROC.
    pub roc_max: f64,
    /// Papers with ROC strictly greater than 1.
    pub high_roc_count: u64,
    /// `high_roc_count` as a percentage of `total_papers`.
    pub high_roc_ratio_percent: f64,
    pub total_papers: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SeriesMode {
    WholeLife,
    FixedPeriod,
}

/// One snapshot evaluation in a series.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SeriesPoint {
    pub year: i32,
    #[serde(flatten)]
    pub roc: RocResult,
}

/// ROC of one entity evaluated year by year, each point on the snapshot at
/// that year.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RocSeries {
    pub entity: EntityRef,
    pub mode: SeriesMode,
    pub points: Vec<SeriesPoint>,
}

/// Computes portfolio statistics for an entity. Each paper's ROC inherits
/// the caller's options (exclusion, weights, snapshot); the period, when
/// set, only selects which papers belong to the portfolio.
pub fn stats(
    view: &CorpusView<'_>,
    entity: &EntityRef,
    opts: &MetricOptions,
) -> Result<PortfolioStats> {
    let empty = || Error::EmptyPortfolio {
        scope: entity.scope,
        id: entity.id.clone(),
    };
    let (view, papers) = match metrics::scoped_papers(view, entity, opts) {
        Ok(scoped) => scoped,
        Err(Error::NotInView { .. }) => return Err(empty()),
        Err(e) => return Err(e),
    };
    if papers.is_empty() {
        return Err(empty());
    }
    let per_paper_opts = MetricOptions {
        period: None,
        as_of_year: None,
        ..opts.clone()
    };
    let corpus = view.corpus();
    let mut paper_rocs = BTreeMap::new();
    let mut roc_max = f64::MIN;
    let mut high_roc_count = 0u64;
    for &p in &papers {
        let id = &corpus.records()[p as usize].id;
        let r = metrics::roc(&view, &EntityRef::paper(id), &per_paper_opts)?;
        roc_max = roc_max.max(r.value);
        if r.value > 1.0 {
            high_roc_count += 1;
        }
        paper_rocs.insert(id.clone(), r.value);
    }
    let total_papers = papers.len() as u64;
    Ok(PortfolioStats {
        paper_rocs,
        roc_max,
        high_roc_count,
        high_roc_ratio_percent: 100.0 * high_roc_count as f64 / total_papers as f64,
        total_papers,
    })
}

/// Evaluates the entity's ROC on each yearly snapshot in `years`. Years
/// where the entity has not yet published are skipped; an entity absent
/// from every snapshot is an error. The per-point snapshot overrides any
/// `as_of_year` in the options.
pub fn series(
    corpus: &Corpus,
    entity: &EntityRef,
    years: YearRange,
    opts: &MetricOptions,
) -> Result<RocSeries> {
    if entity.scope == EntityScope::Paper && opts.period.is_some() {
        return Err(Error::Usage(
            "a period does not apply to paper scope; query the paper directly".to_string(),
        ));
    }
    let point_opts = MetricOptions {
        as_of_year: None,
        ..opts.clone()
    };
    let mode = if opts.period.is_some() {
        SeriesMode::FixedPeriod
    } else {
        SeriesMode::WholeLife
    };
    let mut points = Vec::new();
    for year in years.iter() {
        match metrics::roc(&corpus.snapshot(year), entity, &point_opts) {
            Ok(roc) => points.push(SeriesPoint { year, roc }),
            Err(Error::NotInView { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
    if points.is_empty() {
        return Err(Error::NotInView {
            scope: entity.scope,
            id: entity.id.clone(),
            as_of: years.end,
        });
    }
    Ok(RocSeries {
        entity: entity.clone(),
        mode,
        points,
    })
}
