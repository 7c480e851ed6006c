//! Citation-graph analytics around the return-on-citation ratio: corpus
//! ingestion and validation, time-snapshot views, the ROC metric for
//! papers, researchers, journals and publishers, per-paper portfolio
//! statistics, and classic baseline metrics for comparison.
//!
//! ```
//! use roc_core::{metrics, Corpus, EntityRef, MetricOptions};
//!
//! let corpus = Corpus::from_reader(
//!     &br#"
//! {"id":"P1","year":2010,"authors":["A1"],"journal":"J1","publisher":"X"}
//! {"id":"P2","year":2011,"authors":["A2"],"journal":"J2","publisher":"X","refs":[{"kind":"paper","id":"P1"}]}
//! "#[..],
//! )?;
//!
//! // P1 is cited once and cites nothing, so the 0.5 denominator floor kicks in.
//! let roc = metrics::roc(&corpus.view(), &EntityRef::paper("P1"), &MetricOptions::default())?;
//! assert_eq!(roc.value, 2.0);
//! assert!(roc.floor_applied);
//!
//! // At a 2010 snapshot the citing paper does not exist yet.
//! let early = metrics::roc(&corpus.snapshot(2010), &EntityRef::paper("P1"), &MetricOptions::default())?;
//! assert_eq!(early.numerator, 0.0);
//! # Ok::<(), roc_core::Error>(())
//! ```

pub mod baselines;
pub mod corpus;
mod error;
pub mod metrics;
pub mod portfolio;
pub mod testkit;

pub use corpus::{Corpus, CorpusView, EntityRef, EntityScope, PaperRecord, ValidationReport};
pub use error::{Error, Result};
pub use metrics::{MetricOptions, RocResult, WeightTable, YearRange};
