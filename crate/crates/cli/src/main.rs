//! `roc`: citation-corpus metrics from the command line.
//!
//! Exit status: 0 on success, 1 on usage errors (bad flags, bad selectors,
//! invalid options), 2 on data errors (unparseable corpus, unknown
//! entities). Reports go to stdout, diagnostics to stderr, and identical
//! inputs produce byte-identical csv and json-lines output.

mod report;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use report::{merge, num, opt, Format, Report};
use roc_core::corpus::record_to_line;
use roc_core::testkit::{self, RefCountSpec, SynthParams};
use roc_core::{
    baselines, metrics, portfolio, Corpus, CorpusView, EntityRef, EntityScope, Error,
    MetricOptions, Result, WeightTable, YearRange,
};

#[derive(Parser)]
#[command(
    name = "roc",
    version,
    about = "Return-on-citation metrics over citation corpora",
    after_help = "Entities are selected as scope:id, e.g. paper:P1, researcher:A7, \
                  journal:J3 or publisher:PUB0."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct MetricFlags {
    /// Exclude self-citations from the numerator
    #[arg(long)]
    exclude_self: bool,
    /// Weight table file: one {"journal": ID, "weight": W} JSON object per line
    #[arg(long, value_name = "FILE")]
    weights: Option<PathBuf>,
    /// Count only papers published in this inclusive range
    #[arg(long, value_name = "A:B")]
    period: Option<String>,
    /// Evaluate on the corpus snapshot at this year
    #[arg(long, value_name = "YEAR")]
    as_of: Option<i32>,
    /// Threshold for the outstanding flag (strictly greater wins)
    #[arg(long, default_value_t = 1.0, value_name = "X")]
    benchmark: f64,
}

impl MetricFlags {
    fn to_options(&self) -> Result<MetricOptions> {
        let weight_table = self.weights.as_deref().map(load_weights).transpose()?;
        let period = self
            .period
            .as_deref()
            .map(str::parse::<YearRange>)
            .transpose()?;
        Ok(MetricOptions {
            exclude_self_citations: self.exclude_self,
            weight_table,
            period,
            as_of_year: self.as_of,
            benchmark: self.benchmark,
        })
    }
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum RankMetric {
    /// Return on citation
    Roc,
    /// Raw citation count (self-citations included)
    Citations,
    /// Citations made
    Made,
    /// Citations received (honors weights and exclusion)
    Received,
    /// h-index (researcher and journal scope only)
    HIndex,
}

impl RankMetric {
    fn token(self) -> &'static str {
        match self {
            RankMetric::Roc => "roc",
            RankMetric::Citations => "citations",
            RankMetric::Made => "made",
            RankMetric::Received => "received",
            RankMetric::HIndex => "h-index",
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Validate a corpus file and print its validation report
    Ingest {
        /// Corpus file, one JSON record per line
        #[arg(long, value_name = "FILE")]
        corpus: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// ROC for one entity
    Roc {
        /// Corpus file, one JSON record per line
        #[arg(long, value_name = "FILE")]
        corpus: PathBuf,
        /// Entity selector, scope:id
        #[arg(long, value_name = "SCOPE:ID")]
        entity: String,
        #[command(flatten)]
        metric: MetricFlags,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Rank every entity of a scope by a metric
    Rank {
        /// Corpus file, one JSON record per line
        #[arg(long, value_name = "FILE")]
        corpus: PathBuf,
        /// paper, researcher, journal or publisher
        #[arg(long)]
        scope: String,
        #[arg(long, value_enum, default_value_t = RankMetric::Roc)]
        metric: RankMetric,
        /// Keep only the best N rows
        #[arg(long, value_name = "N")]
        top: Option<usize>,
        #[command(flatten)]
        flags: MetricFlags,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// ROC of one entity evaluated on each yearly snapshot
    Series {
        /// Corpus file, one JSON record per line
        #[arg(long, value_name = "FILE")]
        corpus: PathBuf,
        #[arg(long, value_name = "SCOPE:ID")]
        entity: String,
        #[arg(long, value_name = "YEAR")]
        from: i32,
        #[arg(long, value_name = "YEAR")]
        to: i32,
        #[command(flatten)]
        metric: MetricFlags,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Per-paper ROC statistics for an entity
    Stats {
        /// Corpus file, one JSON record per line
        #[arg(long, value_name = "FILE")]
        corpus: PathBuf,
        #[arg(long, value_name = "SCOPE:ID")]
        entity: String,
        #[command(flatten)]
        metric: MetricFlags,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// ROC next to citation count, h-index and 2-year impact factor
    Compare {
        /// Corpus file, one JSON record per line
        #[arg(long, value_name = "FILE")]
        corpus: PathBuf,
        /// Entity selector; repeat for more rows
        #[arg(long = "entity", value_name = "SCOPE:ID", required = true)]
        entities: Vec<String>,
        /// Census year for the journal impact factor
        #[arg(long, value_name = "YEAR")]
        census_year: Option<i32>,
        #[command(flatten)]
        metric: MetricFlags,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Generate a deterministic synthetic corpus file
    Synth {
        /// Number of papers
        #[arg(long)]
        papers: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Publication year range
        #[arg(long, value_name = "A:B", default_value = "2000:2015")]
        years: String,
        #[arg(long, default_value_t = 80)]
        authors: usize,
        #[arg(long, default_value_t = 12)]
        journals: usize,
        #[arg(long, default_value_t = 4)]
        publishers: usize,
        /// References per paper
        #[arg(long, value_name = "MIN:MAX", default_value = "1:8")]
        refs: String,
        /// Extra references for review papers
        #[arg(long, default_value_t = 10)]
        review_extra: u32,
        #[arg(long, default_value_t = 0.15)]
        review_fraction: f64,
        /// Probability of a reference pointing outside the corpus
        #[arg(long, default_value_t = 0.1)]
        external_rate: f64,
        /// Output file (stdout when omitted)
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
}

fn main() {
    std::process::exit(run());
}

fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            if err.is_data_error() {
                2
            } else {
                1
            }
        }
    }
}

fn execute(command: Command) -> Result<i32> {
    let stdout = std::io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    match command {
        Command::Ingest { corpus, format } => {
            let corpus = Corpus::from_path(corpus)?;
            let r = corpus.report();
            let mut report = Report::new(vec![
                "dropped_self_loops",
                "deduplicated_refs",
                "unresolved_refs",
                "total_papers",
                "total_internal_edges",
                "total_external_refs",
            ]);
            report.push(
                vec![
                    r.dropped_self_loops.to_string(),
                    r.deduplicated_refs.to_string(),
                    r.unresolved_refs.to_string(),
                    r.total_papers.to_string(),
                    r.total_internal_edges.to_string(),
                    r.total_external_refs.to_string(),
                ],
                serde_json::to_value(r).expect("report serializes"),
            );
            report.emit(format, &mut out)?;
        }
        Command::Roc {
            corpus,
            entity,
            metric,
            format,
        } => {
            let corpus = Corpus::from_path(corpus)?;
            let entity: EntityRef = entity.parse()?;
            let opts = metric.to_options()?;
            let view = corpus.view();
            let result = match opts.period {
                Some(period) => metrics::roc_period(&view, &entity, period, &opts)?,
                None => metrics::roc(&view, &entity, &opts)?,
            };
            let mut headers = vec![
                "scope",
                "id",
                "numerator",
                "raw_denominator",
                "effective_denominator",
                "value",
                "floor_applied",
                "outstanding",
            ];
            let mut cells = vec![
                entity.scope.to_string(),
                entity.id.clone(),
                num(result.numerator),
                result.raw_denominator.to_string(),
                num(result.effective_denominator),
                num(result.value),
                result.floor_applied.to_string(),
                result.outstanding.to_string(),
            ];
            let mut row = merge(
                json!({"entity": entity}),
                serde_json::to_value(result).expect("roc serializes"),
            );
            if opts.period.is_some() {
                let empty = metrics::papers_in_scope(&view, &entity, &opts)? == 0;
                headers.push("empty_scope");
                cells.push(empty.to_string());
                row = merge(row, json!({"empty_scope": empty}));
            }
            let mut report = Report::new(headers);
            report.push(cells, row);
            report.emit(format, &mut out)?;
        }
        Command::Rank {
            corpus,
            scope,
            metric,
            top,
            flags,
            format,
        } => {
            let corpus = Corpus::from_path(corpus)?;
            let scope: EntityScope = scope.parse()?;
            let opts = flags.to_options()?;
            let report = rank_report(&corpus, scope, metric, top, &opts)?;
            report.emit(format, &mut out)?;
        }
        Command::Series {
            corpus,
            entity,
            from,
            to,
            metric,
            format,
        } => {
            let corpus = Corpus::from_path(corpus)?;
            let entity: EntityRef = entity.parse()?;
            let opts = metric.to_options()?;
            let range = YearRange::new(from, to)?;
            let series = portfolio::series(&corpus, &entity, range, &opts)?;
            let mut report = Report::new(vec![
                "year",
                "numerator",
                "raw_denominator",
                "effective_denominator",
                "value",
                "floor_applied",
                "outstanding",
            ]);
            for point in &series.points {
                report.push(
                    vec![
                        point.year.to_string(),
                        num(point.roc.numerator),
                        point.roc.raw_denominator.to_string(),
                        num(point.roc.effective_denominator),
                        num(point.roc.value),
                        point.roc.floor_applied.to_string(),
                        point.roc.outstanding.to_string(),
                    ],
                    serde_json::to_value(point).expect("series point serializes"),
                );
            }
            report.emit(format, &mut out)?;
        }
        Command::Stats {
            corpus,
            entity,
            metric,
            format,
        } => {
            let corpus = Corpus::from_path(corpus)?;
            let entity: EntityRef = entity.parse()?;
            let opts = metric.to_options()?;
            let stats = portfolio::stats(&corpus.view(), &entity, &opts)?;
            let mut report = Report::new(vec![
                "scope",
                "id",
                "roc_max",
                "high_roc_count",
                "high_roc_ratio_percent",
                "total_papers",
            ]);
            report.push(
                vec![
                    entity.scope.to_string(),
                    entity.id.clone(),
                    num(stats.roc_max),
                    stats.high_roc_count.to_string(),
                    num(stats.high_roc_ratio_percent),
                    stats.total_papers.to_string(),
                ],
                merge(
                    json!({"entity": entity}),
                    serde_json::to_value(&stats).expect("stats serialize"),
                ),
            );
            report.emit(format, &mut out)?;
        }
        Command::Compare {
            corpus,
            entities,
            census_year,
            metric,
            format,
        } => {
            let corpus = Corpus::from_path(corpus)?;
            let entities = entities
                .iter()
                .map(|s| s.parse())
                .collect::<Result<Vec<EntityRef>>>()?;
            let opts = metric.to_options()?;
            let rows = baselines::compare(&corpus.view(), &entities, &opts, census_year);
            let mut report = Report::new(vec![
                "scope",
                "id",
                "roc_value",
                "floor_applied",
                "citation_count",
                "h_index",
                "if2y",
            ]);
            let mut failed = 0usize;
            for (entity, row) in entities.iter().zip(rows) {
                match row {
                    Ok(row) => report.push(
                        vec![
                            row.entity.scope.to_string(),
                            row.entity.id.clone(),
                            num(row.roc.value),
                            row.roc.floor_applied.to_string(),
                            row.citation_count.to_string(),
                            opt(row.h_index),
                            opt(row.if2y.map(num)),
                        ],
                        serde_json::to_value(&row).expect("row serializes"),
                    ),
                    Err(err) => {
                        eprintln!("error: {entity}: {err}");
                        failed += 1;
                    }
                }
            }
            report.emit(format, &mut out)?;
            if failed > 0 {
                out.flush()?;
                return Ok(2);
            }
        }
        Command::Synth {
            papers,
            seed,
            years,
            authors,
            journals,
            publishers,
            refs,
            review_extra,
            review_fraction,
            external_rate,
            out: out_path,
        } => {
            let year_range: YearRange = years.parse()?;
            let refs_range: YearRange = refs.parse().map_err(|_| {
                Error::Options(format!("invalid refs range `{refs}` (expected MIN:MAX)"))
            })?;
            if refs_range.start < 0 {
                return Err(Error::Options("refs range must be non-negative".into()));
            }
            let params = SynthParams {
                n_papers: papers,
                year_range,
                n_authors: authors,
                n_journals: journals,
                n_publishers: publishers,
                refs_per_paper: RefCountSpec {
                    min: refs_range.start as u32,
                    max: refs_range.end as u32,
                    review_extra,
                },
                review_fraction,
                external_ref_rate: external_rate,
                seed,
            };
            let records = testkit::generate_records(&params)?;
            match out_path {
                Some(path) => {
                    let file = std::fs::File::create(&path)?;
                    let mut w = BufWriter::new(file);
                    for record in &records {
                        writeln!(w, "{}", record_to_line(record))?;
                    }
                    w.flush()?;
                    eprintln!("wrote {} records to {}", records.len(), path.display());
                }
                None => {
                    for record in &records {
                        writeln!(out, "{}", record_to_line(record))?;
                    }
                }
            }
        }
    }
    out.flush()?;
    Ok(0)
}

fn rank_report(
    corpus: &Corpus,
    scope: EntityScope,
    metric: RankMetric,
    top: Option<usize>,
    opts: &MetricOptions,
) -> Result<Report> {
    if metric == RankMetric::HIndex
        && !matches!(scope, EntityScope::Researcher | EntityScope::Journal)
    {
        return Err(Error::Usage(format!(
            "h-index applies to researcher or journal scope, not {scope}"
        )));
    }
    let view = corpus.view();
    let mut rows: Vec<(String, f64)> = Vec::new();
    for id in corpus.entity_ids(scope) {
        let entity = EntityRef::new(scope, id);
        let value = match rank_value(&view, &entity, metric, opts) {
            Ok(v) => v,
            // Entities outside the snapshot or with an empty portfolio
            // simply do not rank.
            Err(Error::NotInView { .. }) => continue,
            Err(e) => return Err(e),
        };
        rows.push((id.to_string(), value));
    }
    rows.sort_by(|a, b| b.1.total_cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    if let Some(top) = top {
        rows.truncate(top);
    }
    let integral = !matches!(metric, RankMetric::Roc);
    let mut report = Report::new(vec!["rank", "scope", "id", "metric", "value"]);
    for (i, (id, value)) in rows.iter().enumerate() {
        let rendered = if integral {
            (*value as u64).to_string()
        } else {
            num(*value)
        };
        let json_value = if integral {
            json!(*value as u64)
        } else {
            json!(value)
        };
        report.push(
            vec![
                (i + 1).to_string(),
                scope.to_string(),
                id.clone(),
                metric.token().to_string(),
                rendered,
            ],
            json!({
                "rank": i + 1,
                "entity": EntityRef::new(scope, id.clone()),
                "metric": metric.token(),
                "value": json_value,
            }),
        );
    }
    Ok(report)
}

fn rank_value(
    view: &CorpusView<'_>,
    entity: &EntityRef,
    metric: RankMetric,
    opts: &MetricOptions,
) -> Result<f64> {
    Ok(match metric {
        RankMetric::Roc => metrics::roc(view, entity, opts)?.value,
        RankMetric::Citations => {
            let narrowed = MetricOptions {
                as_of_year: opts.as_of_year,
                ..Default::default()
            };
            metrics::citations_received(view, entity, &narrowed)?
        }
        RankMetric::Made => metrics::citations_made(view, entity, opts)? as f64,
        RankMetric::Received => metrics::citations_received(view, entity, opts)?,
        RankMetric::HIndex => {
            let view = if let Some(year) = opts.as_of_year {
                view.corpus().snapshot(year)
            } else {
                *view
            };
            baselines::h_index(&view, entity)? as f64
        }
    })
}

#[derive(serde::Deserialize)]
struct WeightRow {
    journal: String,
    weight: f64,
}

/// Reads a weight table: one `{"journal": ID, "weight": W}` object per
/// line, `#` comments allowed. Unlisted journals default to 1.0.
fn load_weights(path: &std::path::Path) -> Result<WeightTable> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Options(format!("cannot read weights file {}: {e}", path.display())))?;
    let mut pairs = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let row: WeightRow = serde_json::from_str(line).map_err(|e| {
            Error::Options(format!(
                "weights file {} line {}: {e}",
                path.display(),
                i + 1
            ))
        })?;
        pairs.push((row.journal, row.weight));
    }
    WeightTable::new(pairs)
}
