//! Seeded synthetic corpora and the brute-force oracle used to check the
//! engine against an independent recomputation.

pub mod oracle;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::corpus::{ingest, Corpus, ExternalClass, PaperRecord, PubType, Reference};
use crate::error::{Error, Result};
use crate::metrics::YearRange;

/// Reference-count distribution: ordinary papers draw uniformly from
/// `[min, max]`; review papers draw from the same range shifted up by
/// `review_extra`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RefCountSpec {
    pub min: u32,
    pub max: u32,
    pub review_extra: u32,
}

impl Default for RefCountSpec {
    fn default() -> Self {
        Self {
            min: 1,
            max: 8,
            review_extra: 10,
        }
    }
}

/// Parameters for deterministic corpus generation. The same seed and
/// parameters always produce the same corpus, and references only target
/// papers with strictly earlier years, so generated corpora are temporally
/// acyclic.
#[derive(Debug, Clone, PartialEq)]
pub struct SynthParams {
    pub n_papers: usize,
    pub year_range: YearRange,
    pub n_authors: usize,
    pub n_journals: usize,
    pub n_publishers: usize,
    pub refs_per_paper: RefCountSpec,
    pub review_fraction: f64,
    pub external_ref_rate: f64,
    pub seed: u64,
}

impl Default for SynthParams {
    fn default() -> Self {
        Self {
            n_papers: 200,
            year_range: YearRange {
                start: 2000,
                end: 2015,
            },
            n_authors: 80,
            n_journals: 12,
            n_publishers: 4,
            refs_per_paper: RefCountSpec::default(),
            review_fraction: 0.15,
            external_ref_rate: 0.1,
            seed: 0,
        }
    }
}

impl SynthParams {
    fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::Generation(msg));
        if self.n_papers == 0 {
            return fail("n_papers must be positive".into());
        }
        if self.n_authors == 0 || self.n_journals == 0 || self.n_publishers == 0 {
            return fail("entity pool sizes must be positive".into());
        }
        if self.refs_per_paper.min > self.refs_per_paper.max {
            return fail(format!(
                "refs_per_paper.min {} exceeds max {}",
                self.refs_per_paper.min, self.refs_per_paper.max
            ));
        }
        for (name, v) in [
            ("review_fraction", self.review_fraction),
            ("external_ref_rate", self.external_ref_rate),
        ] {
            if !(0.0..=1.0).contains(&v) {
                return fail(format!("{name} must lie in [0, 1], got {v}"));
            }
        }
        if self.external_ref_rate == 0.0
            && self.refs_per_paper.min as usize > self.n_papers.saturating_sub(1)
        {
            return fail(format!(
                "refs_per_paper.min {} exceeds available earlier papers ({}) and no external \
                 references are allowed",
                self.refs_per_paper.min,
                self.n_papers.saturating_sub(1)
            ));
        }
        Ok(())
    }
}

/// Generates the record stream for [`generate`] without building indexes.
pub fn generate_records(params: &SynthParams) -> Result<Vec<PaperRecord>> {
    params.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let n = params.n_papers;
    let span = i64::from(params.year_range.end) - i64::from(params.year_range.start) + 1;

    // Years are nondecreasing in paper index, so the strictly-earlier
    // candidate pool for paper i is exactly the prefix before its cohort.
    let years: Vec<i32> = (0..n)
        .map(|i| params.year_range.start + ((i as i64 * span) / n as i64) as i32)
        .collect();
    let mut pool_end = vec![0usize; n];
    let mut cohort_start = 0usize;
    for i in 0..n {
        if years[i] != years[cohort_start] {
            cohort_start = i;
        }
        pool_end[i] = cohort_start;
    }

    let mut records = Vec::with_capacity(n);
    let mut external_seq = 0u64;
    let mut internal_targets: Vec<u32> = Vec::new();
    for (i, &year) in years.iter().enumerate() {
        let pub_type = if params.review_fraction > 0.0 && rng.random::<f64>() < params.review_fraction
        {
            PubType::Review
        } else {
            match rng.random::<f64>() {
                x if x < 0.90 => PubType::Research,
                x if x < 0.95 => PubType::Letter,
                x if x < 0.99 => PubType::Commentary,
                _ => PubType::Other,
            }
        };

        let n_authors = rng.random_range(1..=3usize).min(params.n_authors);
        let mut author_idxs: Vec<usize> = Vec::with_capacity(n_authors);
        while author_idxs.len() < n_authors {
            let a = rng.random_range(0..params.n_authors);
            if !author_idxs.contains(&a) {
                author_idxs.push(a);
            }
        }

        let journal = rng.random_range(0..params.n_journals);
        let publisher = journal % params.n_publishers;

        let mut n_refs = rng.random_range(params.refs_per_paper.min..=params.refs_per_paper.max);
        if pub_type == PubType::Review {
            n_refs += params.refs_per_paper.review_extra;
        }
        let pool = pool_end[i];
        internal_targets.clear();
        let mut refs: Vec<Reference> = Vec::with_capacity(n_refs as usize);
        for _ in 0..n_refs {
            let go_external =
                rng.random::<f64>() < params.external_ref_rate || pool == 0;
            if go_external {
                // With no earlier papers and no externals allowed, the
                // reference is simply not producible.
                if params.external_ref_rate == 0.0 {
                    continue;
                }
                let class = match rng.random_range(0..4u8) {
                    0 => ExternalClass::Webpage,
                    1 => ExternalClass::Patent,
                    2 => ExternalClass::Dataset,
                    _ => ExternalClass::Other,
                };
                refs.push(Reference::external(class, format!("x{external_seq}")));
                external_seq += 1;
                continue;
            }
            let mut target = None;
            for _ in 0..8 {
                let t = rng.random_range(0..pool) as u32;
                if !internal_targets.contains(&t) {
                    target = Some(t);
                    break;
                }
            }
            match target {
                Some(t) => {
                    internal_targets.push(t);
                    refs.push(Reference::paper(paper_id(t as usize)));
                }
                // Dense pools can exhaust; drop the reference rather than
                // bias toward a particular target.
                None => continue,
            }
        }

        records.push(PaperRecord {
            id: paper_id(i),
            year,
            pub_type,
            authors: author_idxs.iter().map(|&a| format!("A{a:05}")).collect(),
            journal: format!("J{journal:04}"),
            publisher: format!("PUB{publisher:03}"),
            refs,
        });
    }
    Ok(records)
}

fn paper_id(i: usize) -> String {
    format!("P{i:06}")
}

/// Deterministic synthetic corpus satisfying every corpus invariant.
pub fn generate(params: &SynthParams) -> Result<Corpus> {
    ingest(generate_records(params)?)
}
