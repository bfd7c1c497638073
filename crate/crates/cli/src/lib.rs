//! Group-specification parsing, the curated corpus, the parallel report
//! runner and report serialization behind the `amconst` binary.

pub mod corpus;
pub mod format;
pub mod run;
pub mod spec;

pub use corpus::{builtin_corpus, load_corpus_file, parse_corpus_json, BUILTIN_LABELS};
pub use format::{serialize, Format, CSV_COLUMNS};
pub use run::{run, run_one, run_scan, ReportTable, Row, RunOptions, ScanReport};
pub use spec::{parse_group_spec, GroupSource, GroupSpec, SpecError};
