//! Publication records and the line-delimited corpus file format.
//!
//! One publication per line, each a flat JSON object:
//!
//! ```text
//! {"id":"P1","year":2010,"type":"research","authors":["A1"],"journal":"J1",
//!  "publisher":"PUB1","refs":[{"kind":"paper","id":"P0"},
//!  {"kind":"external","class":"webpage","label":"https://example.org"}]}
//! ```
//!
//! Lines starting with `#` are comments; blank lines are skipped.

use serde::{Deserialize, Serialize};
use serde_json::Value;
use std::fmt;

use crate::error::{Error, Result};

/// Publication type. Letters, commentaries and the rest take part in every
/// ROC computation; only the impact-factor baseline treats them specially.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PubType {
    Research,
    Review,
    Letter,
    Commentary,
    Other,
}

impl PubType {
    fn from_token(token: &str) -> Option<Self> {
        match token {
            "research" => Some(PubType::Research),
            "review" => Some(PubType::Review),
            "letter" => Some(PubType::Letter),
            "commentary" => Some(PubType::Commentary),
            "other" => Some(PubType::Other),
            _ => None,
        }
    }

    pub fn token(self) -> &'static str {
        match self {
            PubType::Research => "research",
            PubType::Review => "review",
            PubType::Letter => "letter",
            PubType::Commentary => "commentary",
            PubType::Other => "other",
        }
    }

    /// Items counted in the impact-factor denominator.
    pub fn is_citable_item(self) -> bool {
        matches!(self, PubType::Research | PubType::Review)
    }
}

impl fmt::Display for PubType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

/// Class of a reference target that lives outside the corpus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExternalClass {
    Webpage,
    Patent,
    Dataset,
    Other,
}

impl ExternalClass {
    fn from_token(token: &str) -> Option<Self> {
        match token {
            "webpage" => Some(ExternalClass::Webpage),
            "patent" => Some(ExternalClass::Patent),
            "dataset" => Some(ExternalClass::Dataset),
            "other" => Some(ExternalClass::Other),
            _ => None,
        }
    }

    pub fn token(self) -> &'static str {
        match self {
            ExternalClass::Webpage => "webpage",
            ExternalClass::Patent => "patent",
            ExternalClass::Dataset => "dataset",
            ExternalClass::Other => "other",
        }
    }
}

/// One entry of a reference list. Internal references point at papers; the
/// rest (webpages, patents, datasets) count as citations made but can never
/// be cited back.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Reference {
    Paper { id: String },
    External { class: ExternalClass, label: String },
}

impl Reference {
    pub fn paper(id: impl Into<String>) -> Self {
        Reference::Paper { id: id.into() }
    }

    pub fn external(class: ExternalClass, label: impl Into<String>) -> Self {
        Reference::External {
            class,
            label: label.into(),
        }
    }

    pub fn is_internal(&self) -> bool {
        matches!(self, Reference::Paper { .. })
    }
}

/// One publication: identity, venue and the outgoing reference list.
/// Reference lists are canonical after ingest: no duplicate targets and no
/// self-loops.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PaperRecord {
    pub id: String,
    pub year: i32,
    #[serde(rename = "type")]
    pub pub_type: PubType,
    pub authors: Vec<String>,
    pub journal: String,
    pub publisher: String,
    pub refs: Vec<Reference>,
}

/// Calendar years accepted by the data model.
pub const YEAR_MIN: i32 = 1500;
pub const YEAR_MAX: i32 = 3000;

/// A record parsed from one corpus line, together with what canonicalization
/// dropped from it.
#[derive(Debug, Clone)]
pub struct ParsedRecord {
    pub record: PaperRecord,
    pub deduplicated_refs: u64,
    pub dropped_self_loops: u64,
}

/// Splits a record's reference list into its canonical form, dropping
/// duplicate targets (first occurrence wins) and self-loops.
pub(crate) fn canonicalize_refs(
    own_id: &str,
    refs: Vec<Reference>,
) -> (Vec<Reference>, u64, u64) {
    let mut seen: Vec<&Reference> = Vec::with_capacity(refs.len());
    let mut keep = vec![false; refs.len()];
    let mut dedup = 0u64;
    let mut self_loops = 0u64;
    for (i, r) in refs.iter().enumerate() {
        if matches!(r, Reference::Paper { id } if id == own_id) {
            self_loops += 1;
            continue;
        }
        if seen.contains(&r) {
            dedup += 1;
            continue;
        }
        seen.push(r);
        keep[i] = true;
    }
    if dedup == 0 && self_loops == 0 {
        return (refs, 0, 0);
    }
    let canonical = refs
        .into_iter()
        .zip(keep)
        .filter_map(|(r, k)| k.then_some(r))
        .collect();
    (canonical, dedup, self_loops)
}

fn parse_err(line: usize, field: &'static str, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        field,
        message: message.into(),
    }
}

fn required_str(
    obj: &serde_json::Map<String, Value>,
    line: usize,
    field: &'static str,
) -> Result<String> {
    match obj.get(field) {
        None | Some(Value::Null) => Err(parse_err(line, field, "missing required field")),
        Some(Value::String(s)) if !s.is_empty() => Ok(s.clone()),
        Some(Value::String(_)) => Err(parse_err(line, field, "must be a non-empty string")),
        Some(other) => Err(parse_err(line, field, format!("expected a string, got {other}"))),
    }
}

fn parse_reference(value: &Value, line: usize) -> Result<Reference> {
    let obj = value
        .as_object()
        .ok_or_else(|| parse_err(line, "refs", format!("expected an object, got {value}")))?;
    let kind = obj
        .get("kind")
        .and_then(Value::as_str)
        .ok_or_else(|| parse_err(line, "refs", "reference is missing a `kind` string"))?;
    match kind {
        "paper" => {
            let id = obj.get("id").and_then(Value::as_str).unwrap_or("");
            if id.is_empty() {
                return Err(parse_err(line, "refs", "paper reference needs a non-empty `id`"));
            }
            Ok(Reference::paper(id))
        }
        "external" => {
            let class_token = obj
                .get("class")
                .and_then(Value::as_str)
                .ok_or_else(|| parse_err(line, "refs", "external reference needs a `class`"))?;
            let class = ExternalClass::from_token(class_token).ok_or_else(|| {
                parse_err(line, "refs", format!("unknown external class `{class_token}`"))
            })?;
            let label = obj.get("label").and_then(Value::as_str).unwrap_or("").to_string();
            Ok(Reference::External { class, label })
        }
        other => Err(parse_err(line, "refs", format!("unknown reference kind `{other}`"))),
    }
}

/// Parses one corpus line into a canonical record.
///
/// `line_no` is the 1-based line number, used in error messages and to
/// report duplicate ids later. Duplicate reference targets are collapsed
/// and self-loops dropped; both are counted in the returned [`ParsedRecord`].
pub fn parse_record(line: &str, line_no: usize) -> Result<ParsedRecord> {
    let value: Value = serde_json::from_str(line)
        .map_err(|e| parse_err(line_no, "record", format!("invalid JSON: {e}")))?;
    let obj = value
        .as_object()
        .ok_or_else(|| parse_err(line_no, "record", "expected a JSON object"))?;

    let id = required_str(obj, line_no, "id")?;

    let year = match obj.get("year") {
        None | Some(Value::Null) => {
            return Err(parse_err(line_no, "year", "missing required field"))
        }
        Some(Value::Number(n)) => n
            .as_i64()
            .ok_or_else(|| parse_err(line_no, "year", format!("not an integer: {n}")))?,
        Some(other) => {
            return Err(parse_err(line_no, "year", format!("expected an integer, got {other}")))
        }
    };
    if !(i64::from(YEAR_MIN)..=i64::from(YEAR_MAX)).contains(&year) {
        return Err(parse_err(
            line_no,
            "year",
            format!("{year} outside [{YEAR_MIN}, {YEAR_MAX}]"),
        ));
    }

    let pub_type = match obj.get("type") {
        None | Some(Value::Null) => PubType::Research,
        Some(Value::String(token)) => PubType::from_token(token)
            .ok_or_else(|| parse_err(line_no, "type", format!("unknown pub_type token `{token}`")))?,
        Some(other) => {
            return Err(parse_err(line_no, "type", format!("expected a string, got {other}")))
        }
    };

    let authors = match obj.get("authors") {
        None | Some(Value::Null) => {
            return Err(parse_err(line_no, "authors", "missing required field"))
        }
        Some(Value::Array(items)) => {
            let mut authors: Vec<String> = Vec::with_capacity(items.len());
            for item in items {
                let author = item.as_str().ok_or_else(|| {
                    parse_err(line_no, "authors", format!("expected a string, got {item}"))
                })?;
                if author.is_empty() {
                    return Err(parse_err(line_no, "authors", "author id must be non-empty"));
                }
                // Repeated author ids collapse to the first occurrence.
                if !authors.iter().any(|a| a == author) {
                    authors.push(author.to_string());
                }
            }
            if authors.is_empty() {
                return Err(parse_err(line_no, "authors", "must be non-empty"));
            }
            authors
        }
        Some(other) => {
            return Err(parse_err(line_no, "authors", format!("expected an array, got {other}")))
        }
    };

    let journal = required_str(obj, line_no, "journal")?;
    let publisher = required_str(obj, line_no, "publisher")?;

    let raw_refs = match obj.get("refs") {
        None | Some(Value::Null) => Vec::new(),
        Some(Value::Array(items)) => items
            .iter()
            .map(|item| parse_reference(item, line_no))
            .collect::<Result<Vec<_>>>()?,
        Some(other) => {
            return Err(parse_err(line_no, "refs", format!("expected an array, got {other}")))
        }
    };
    let (refs, deduplicated_refs, dropped_self_loops) = canonicalize_refs(&id, raw_refs);

    Ok(ParsedRecord {
        record: PaperRecord {
            id,
            year: year as i32,
            pub_type,
            authors,
            journal,
            publisher,
            refs,
        },
        deduplicated_refs,
        dropped_self_loops,
    })
}

/// Serializes a record as one corpus line (no trailing newline).
pub fn record_to_line(record: &PaperRecord) -> String {
    serde_json::to_string(record).expect("record serialization cannot fail")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dedups_duplicate_refs() {
        let line = r#"{"id":"P1","year":2010,"authors":["A1","A2"],"journal":"J1","publisher":"X",
            "refs":[{"kind":"paper","id":"P2"},{"kind":"paper","id":"P2"},{"kind":"paper","id":"P3"}]}"#
            .replace('\n', "");
        let parsed = parse_record(&line, 1).unwrap();
        assert_eq!(
            parsed.record.refs,
            vec![Reference::paper("P2"), Reference::paper("P3")]
        );
        assert_eq!(parsed.deduplicated_refs, 1);
        assert_eq!(parsed.dropped_self_loops, 0);
    }

    #[test]
    fn drops_self_loops() {
        let line = r#"{"id":"P1","year":2010,"authors":["A1"],"journal":"J1","publisher":"X",
            "refs":[{"kind":"paper","id":"P1"},{"kind":"paper","id":"P2"}]}"#
            .replace('\n', "");
        let parsed = parse_record(&line, 1).unwrap();
        assert_eq!(parsed.record.refs, vec![Reference::paper("P2")]);
        assert_eq!(parsed.dropped_self_loops, 1);
    }

    #[test]
    fn missing_year_names_the_field() {
        let line = r#"{"id":"P1","authors":["A1"],"journal":"J1","publisher":"X"}"#;
        let err = parse_record(line, 7).unwrap_err();
        match err {
            Error::Parse { line, field, .. } => {
                assert_eq!(line, 7);
                assert_eq!(field, "year");
            }
            other => panic!("expected parse error, got {other}"),
        }
    }

    #[test]
    fn non_integer_year_rejected() {
        let line = r#"{"id":"P1","year":2010.5,"authors":["A1"],"journal":"J1","publisher":"X"}"#;
        let err = parse_record(line, 1).unwrap_err();
        assert!(matches!(err, Error::Parse { field: "year", .. }));
    }

    #[test]
    fn year_out_of_range_rejected() {
        let line = r#"{"id":"P1","year":1200,"authors":["A1"],"journal":"J1","publisher":"X"}"#;
        assert!(matches!(
            parse_record(line, 1).unwrap_err(),
            Error::Parse { field: "year", .. }
        ));
    }

    #[test]
    fn each_required_field_is_named_when_missing() {
        let full = serde_json::json!({
            "id": "P1",
            "year": 2010,
            "authors": ["A1"],
            "journal": "J1",
            "publisher": "X"
        });
        for field in ["id", "authors", "journal", "publisher"] {
            let mut partial = full.clone();
            partial.as_object_mut().unwrap().remove(field);
            match parse_record(&partial.to_string(), 2).unwrap_err() {
                Error::Parse { field: got, line, .. } => {
                    assert_eq!(got, field);
                    assert_eq!(line, 2);
                }
                other => panic!("expected parse error for {field}, got {other}"),
            }
        }
    }

    #[test]
    fn empty_authors_rejected() {
        let line = r#"{"id":"P1","year":2010,"authors":[],"journal":"J1","publisher":"X"}"#;
        assert!(matches!(
            parse_record(line, 1).unwrap_err(),
            Error::Parse { field: "authors", .. }
        ));
    }

    #[test]
    fn unknown_reference_kind_rejected() {
        let line = r#"{"id":"P1","year":2010,"authors":["A1"],"journal":"J1","publisher":"X",
            "refs":[{"kind":"carrier-pigeon","id":"P2"}]}"#
            .replace('\n', "");
        let err = parse_record(&line, 1).unwrap_err();
        assert!(err.to_string().contains("unknown reference kind"));
    }

    #[test]
    fn unknown_pub_type_rejected() {
        let line =
            r#"{"id":"P1","year":2010,"type":"poem","authors":["A1"],"journal":"J1","publisher":"X"}"#;
        let err = parse_record(line, 3).unwrap_err();
        assert!(err.to_string().contains("unknown pub_type token"));
    }

    #[test]
    fn type_defaults_to_research() {
        let line = r#"{"id":"P1","year":2010,"authors":["A1"],"journal":"J1","publisher":"X"}"#;
        let parsed = parse_record(line, 1).unwrap();
        assert_eq!(parsed.record.pub_type, PubType::Research);
        assert!(parsed.record.refs.is_empty());
    }

    #[test]
    fn duplicate_authors_collapse() {
        let line =
            r#"{"id":"P1","year":2010,"authors":["A1","A2","A1"],"journal":"J1","publisher":"X"}"#;
        let parsed = parse_record(line, 1).unwrap();
        assert_eq!(parsed.record.authors, vec!["A1", "A2"]);
    }

    #[test]
    fn record_line_round_trips() {
        let line = r#"{"id":"P9","year":2011,"type":"review","authors":["A1"],"journal":"J2","publisher":"X","refs":[{"kind":"external","class":"patent","label":"US-123"}]}"#;
        let parsed = parse_record(line, 1).unwrap();
        let emitted = record_to_line(&parsed.record);
        let reparsed = parse_record(&emitted, 1).unwrap();
        assert_eq!(parsed.record, reparsed.record);
    }
}
