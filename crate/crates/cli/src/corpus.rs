//! The curated default corpus and the JSON corpus-file loader.

use std::path::Path;

use serde::Deserialize;

use crate::spec::{explicit_spec, parse_group_spec, GroupSpec, SpecError};

/// Labels of the builtin corpus, in run order.
pub const BUILTIN_LABELS: &[&str] = &[
    "C1", "C2", "C3", "C4", "C5", "C6", "C7", "C8", "C9", "C10", "C11", "C12", "C2xC2", "C2xC4", "C2xC2xC2",
    "C3xC3", "S3", "S4", "A4", "A5", "D3", "D4", "D5", "D6", "Q8", "Dic3", "C2xS3", "S3xS3", "Q8xC2",
];

pub fn builtin_corpus() -> Vec<GroupSpec> {
    BUILTIN_LABELS
        .iter()
        .map(|l| parse_group_spec(l).expect("builtin labels parse"))
        .collect()
}

#[derive(Debug, thiserror::Error)]
pub enum CorpusError {
    #[error("reading {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("corpus file is not a JSON list of {{label, degree, generators}}: {0}")]
    Json(#[from] serde_json::Error),
    #[error("corpus entry {label:?}: {source}")]
    Spec { label: String, source: SpecError },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Record {
    label: String,
    degree: usize,
    generators: Vec<String>,
}

pub fn parse_corpus_json(text: &str) -> Result<Vec<GroupSpec>, CorpusError> {
    let records: Vec<Record> = serde_json::from_str(text)?;
    records
        .into_iter()
        .map(|r| {
            explicit_spec(&r.label, r.degree, &r.generators).map_err(|source| CorpusError::Spec {
                label: r.label.clone(),
                source,
            })
        })
        .collect()
}

pub fn load_corpus_file(path: &Path) -> Result<Vec<GroupSpec>, CorpusError> {
    let text = std::fs::read_to_string(path).map_err(|source| CorpusError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_corpus_json(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_orders() {
        let corpus = builtin_corpus();
        assert_eq!(corpus.len(), 29);
        assert!(corpus.iter().any(|s| s.label == "A5"));
        for s in &corpus {
            let order = s.realize().unwrap().order_u64().unwrap();
            assert!(order <= 120, "{} has order {order}", s.label);
        }
    }

    #[test]
    fn corpus_file() {
        let text = r#"[{"label": "S3", "degree": 3, "generators": ["(1 2 3)", "(1 2)"]},
                       {"label": "V4", "degree": 4, "generators": ["(1 2)(3 4)", "(1 3)(2 4)"]}]"#;
        let specs = parse_corpus_json(text).unwrap();
        assert_eq!(specs[0].label, "S3");
        assert_eq!(specs[0].realize().unwrap().order_u64(), Some(6));
        assert_eq!(specs[1].realize().unwrap().order_u64(), Some(4));
        assert!(matches!(
            parse_corpus_json(r#"[{"label": "x", "degree": 2, "generators": ["(1 3)"]}]"#),
            Err(CorpusError::Spec { .. })
        ));
        assert!(matches!(parse_corpus_json("{}"), Err(CorpusError::Json(_))));
    }
}
