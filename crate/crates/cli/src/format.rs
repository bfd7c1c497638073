//! Serialization of report tables and idempotent scans.

use std::fmt::Write as _;

use amconst_core::amen::to_f64;
use amconst_core::{CheckOutcome, Rational};
use serde::Serialize;

use crate::run::{OracleEntry, ReportTable, Row, RunMeta, ScanReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Markdown,
}

/// CSV header, in the documented column order.
pub const CSV_COLUMNS: &[&str] = &[
    "label",
    "order",
    "degrees",
    "am",
    "am_decimal",
    "deg_g",
    "abelian",
    "min_abelian_index",
    "checks",
    "oracle",
    "error",
];

#[derive(Serialize)]
#[serde(untagged)]
enum JsonInt {
    Small(i64),
    Big(String),
}

impl JsonInt {
    fn new<T: ToString>(v: &T) -> Self
    where
        for<'a> i64: TryFrom<&'a T>,
    {
        i64::try_from(v).map_or_else(|_| JsonInt::Big(v.to_string()), JsonInt::Small)
    }
}

#[derive(Serialize)]
struct JsonRational {
    num: JsonInt,
    den: JsonInt,
}

impl From<&Rational> for JsonRational {
    fn from(r: &Rational) -> Self {
        Self {
            num: JsonInt::new(r.numer()),
            den: JsonInt::new(r.denom()),
        }
    }
}

#[derive(Serialize)]
struct JsonCheck<'a> {
    name: &'a str,
    status: &'static str,
    witness: &'a str,
}

impl<'a> From<&'a CheckOutcome> for JsonCheck<'a> {
    fn from(c: &'a CheckOutcome) -> Self {
        Self {
            name: c.name,
            status: c.status.as_str(),
            witness: &c.witness,
        }
    }
}

#[derive(Serialize, Default)]
struct JsonDegreeOracle<'a> {
    status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    degrees: Option<&'a [u64]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    multiplicities: Option<&'a [usize]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    attempts: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    reason: Option<&'a str>,
}

#[derive(Serialize, Default)]
struct JsonNormOracle<'a> {
    status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    norm: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    target: Option<JsonRational>,
    #[serde(skip_serializing_if = "Option::is_none")]
    gap: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    dimension: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    tolerance: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    reason: Option<&'a str>,
}

#[derive(Serialize)]
struct JsonOracle<'a> {
    #[serde(skip_serializing_if = "Option::is_none")]
    degrees: Option<JsonDegreeOracle<'a>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    norm: Option<JsonNormOracle<'a>>,
}

#[derive(Serialize)]
struct JsonError<'a> {
    kind: &'static str,
    stage: &'a str,
    message: &'a str,
}

#[derive(Serialize)]
struct JsonRow<'a> {
    label: &'a str,
    order: Option<u64>,
    degrees: Option<&'a [u64]>,
    am: Option<JsonRational>,
    am_decimal: Option<f64>,
    deg_g: Option<u64>,
    abelian: Option<bool>,
    min_abelian_index: Option<u64>,
    checks: Vec<JsonCheck<'a>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle: Option<JsonOracle<'a>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<JsonError<'a>>,
}

#[derive(Serialize)]
struct JsonTable<'a> {
    meta: &'a RunMeta,
    rows: Vec<JsonRow<'a>>,
}

fn entry_status<T>(e: &OracleEntry<T>) -> (&'static str, Option<&str>) {
    match e {
        OracleEntry::Done(_) => ("done", None),
        OracleEntry::Skipped { reason, .. } => ("skipped", Some(reason)),
        OracleEntry::Failed(reason) => ("failed", Some(reason)),
    }
}

fn json_oracle(row: &Row) -> Option<JsonOracle<'_>> {
    let section = row.oracle.as_ref()?;
    let degrees = section.degrees.as_ref().map(|e| {
        let (status, reason) = entry_status(e);
        let mut j = JsonDegreeOracle {
            status,
            reason,
            ..Default::default()
        };
        if let OracleEntry::Done(o) = e {
            j.degrees = Some(o.degrees.degrees());
            j.multiplicities = Some(&o.multiplicities);
            j.seed = Some(o.seed);
            j.attempts = Some(o.attempts);
        }
        j
    });
    let norm = section.norm.as_ref().map(|e| {
        let (status, reason) = entry_status(e);
        let mut j = JsonNormOracle {
            status,
            reason,
            ..Default::default()
        };
        if let OracleEntry::Done(r) = e {
            j.norm = Some(r.norm);
            j.target = Some((&r.target).into());
            j.gap = Some(r.gap);
            j.dimension = Some(r.dimension);
            j.tolerance = Some(r.tolerance);
        }
        j
    });
    Some(JsonOracle { degrees, norm })
}

fn json_row(row: &Row) -> JsonRow<'_> {
    let r = row.report.as_ref();
    JsonRow {
        label: &row.label,
        order: r.map(|r| r.order),
        degrees: r.map(|r| r.degrees.degrees()),
        am: r.map(|r| (&r.am).into()),
        am_decimal: r.map(|r| to_f64(&r.am)),
        deg_g: r.map(|r| r.deg_g),
        abelian: r.map(|r| r.abelian),
        min_abelian_index: r.and_then(|r| r.min_abelian_index),
        checks: row.checks.iter().map(JsonCheck::from).collect(),
        oracle: json_oracle(row),
        error: row.error.as_ref().map(|e| JsonError {
            kind: match e.kind {
                crate::run::RowErrorKind::Cap => "cap",
                crate::run::RowErrorKind::Internal => "internal",
            },
            stage: &e.stage,
            message: &e.message,
        }),
    }
}

pub fn to_json(table: &ReportTable) -> String {
    let doc = JsonTable {
        meta: &table.meta,
        rows: table.rows.iter().map(json_row).collect(),
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("report serializes");
    s.push('\n');
    s
}

fn join<T: ToString>(items: impl IntoIterator<Item = T>, sep: &str) -> String {
    items
        .into_iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(sep)
}

fn checks_cell(row: &Row) -> String {
    join(
        row.checks
            .iter()
            .map(|c| format!("{}={}", c.name, c.status.as_str())),
        ";",
    )
}

fn oracle_cell(row: &Row) -> String {
    let Some(section) = &row.oracle else {
        return String::new();
    };
    let mut parts = Vec::new();
    if let Some(e) = &section.degrees {
        parts.push(match e {
            OracleEntry::Done(o) => format!("degrees={}", join(o.degrees.degrees(), " ")),
            other => format!("degrees={}", entry_status(other).0),
        });
    }
    if let Some(e) = &section.norm {
        parts.push(match e {
            OracleEntry::Done(r) => format!("norm={};gap={:e}", r.norm, r.gap),
            other => format!("norm={}", entry_status(other).0),
        });
    }
    parts.join(";")
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

fn csv_record(row: &Row) -> Vec<String> {
    let r = row.report.as_ref();
    vec![
        row.label.clone(),
        opt(r.map(|r| r.order)),
        opt(r.map(|r| join(r.degrees.degrees(), " "))),
        opt(r.map(|r| r.am.to_string())),
        opt(r.map(|r| to_f64(&r.am))),
        opt(r.map(|r| r.deg_g)),
        opt(r.map(|r| r.abelian)),
        opt(r.and_then(|r| r.min_abelian_index)),
        checks_cell(row),
        oracle_cell(row),
        opt(row.error.as_ref().map(|e| e.message.clone())),
    ]
}

pub fn to_csv(table: &ReportTable) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_COLUMNS).expect("in-memory write");
    for row in &table.rows {
        w.write_record(csv_record(row)).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
}

fn md_escape(s: &str) -> String {
    s.replace('|', "\\|")
}

pub fn to_markdown(table: &ReportTable) -> String {
    let mut out = String::new();
    out.push_str(
        "| label | order | degrees | AM | AM (decimal) | deg(G) | abelian | min abelian index | checks |\n",
    );
    out.push_str("|---|---:|---|---|---:|---:|---|---:|---|\n");
    for row in &table.rows {
        let rec = csv_record(row);
        let checks = if let Some(e) = &row.error {
            format!("error: {}", e.message)
        } else {
            let failed: Vec<&str> = row
                .checks
                .iter()
                .filter(|c| !c.passed() && c.status.as_str() == "fail")
                .map(|c| c.name)
                .collect();
            let passed = row.checks.iter().filter(|c| c.passed()).count();
            if failed.is_empty() {
                format!("{passed}/{} pass", row.checks.len())
            } else {
                format!("FAIL: {}", failed.join(", "))
            }
        };
        let decimal = row
            .report
            .as_ref()
            .map(|r| format!("{:.6}", to_f64(&r.am)))
            .unwrap_or_default();
        let _ = writeln!(
            out,
            "| {} | {} | {} | {} | {} | {} | {} | {} | {} |",
            md_escape(&rec[0]),
            rec[1],
            rec[2],
            rec[3],
            decimal,
            rec[5],
            rec[6],
            rec[7],
            md_escape(&checks)
        );
    }
    let oracle_rows: Vec<&Row> = table.rows.iter().filter(|r| r.oracle.is_some()).collect();
    if !oracle_rows.is_empty() {
        out.push_str("\n| label | oracle |\n|---|---|\n");
        for row in oracle_rows {
            let _ = writeln!(
                out,
                "| {} | {} |",
                md_escape(&row.label),
                md_escape(&oracle_cell(row))
            );
        }
    }
    out
}

pub fn serialize(table: &ReportTable, format: Format) -> String {
    match format {
        Format::Json => to_json(table),
        Format::Csv => to_csv(table),
        Format::Markdown => to_markdown(table),
    }
}

#[derive(Serialize)]
struct JsonScanEntry {
    subset: Vec<String>,
    norm: f64,
}

#[derive(Serialize)]
struct JsonScan<'a> {
    label: &'a str,
    order: u64,
    abelian: bool,
    total_subsets: String,
    scanned: usize,
    tolerance: f64,
    saeki_bound: f64,
    min_norm_above_one: Option<f64>,
    check: JsonCheck<'a>,
    entries: Vec<JsonScanEntry>,
}

fn subset_strings(s: &ScanReport, subset: &[usize]) -> Vec<String> {
    subset.iter().map(|&i| s.group.element(i).to_string()).collect()
}

pub fn scan_to_string(s: &ScanReport, format: Format) -> String {
    match format {
        Format::Json => {
            let doc = JsonScan {
                label: &s.label,
                order: s.order,
                abelian: s.abelian,
                total_subsets: s.scan.total_subsets.to_string(),
                scanned: s.scan.entries.len(),
                tolerance: s.scan.tolerance,
                saeki_bound: amconst_core::fourier::saeki_bound(),
                min_norm_above_one: s.scan.min_above_one,
                check: (&s.check).into(),
                entries: s
                    .scan
                    .entries
                    .iter()
                    .map(|e| JsonScanEntry {
                        subset: subset_strings(s, &e.subset),
                        norm: e.norm,
                    })
                    .collect(),
            };
            let mut out = serde_json::to_string_pretty(&doc).expect("scan serializes");
            out.push('\n');
            out
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["subset", "norm"]).expect("in-memory write");
            for e in &s.scan.entries {
                w.write_record([subset_strings(s, &e.subset).join(" "), e.norm.to_string()])
                    .expect("in-memory write");
            }
            String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
        }
        Format::Markdown => {
            let mut out = format!(
                "{} (order {}): {} of {} inverse-closed subsets scanned; {} = {} ({})\n\n| subset | norm |\n|---|---:|\n",
                md_escape(&s.label),
                s.order,
                s.scan.entries.len(),
                s.scan.total_subsets,
                s.check.name,
                s.check.status.as_str(),
                md_escape(&s.check.witness)
            );
            for e in &s.scan.entries {
                let _ = writeln!(
                    out,
                    "| {{{}}} | {:.9} |",
                    subset_strings(s, &e.subset).join(", "),
                    e.norm
                );
            }
            out
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::run::{run, RunOptions};
    use crate::spec::parse_group_spec;

    fn table(labels: &[&str]) -> ReportTable {
        let specs: Vec<_> = labels.iter().map(|l| parse_group_spec(l).unwrap()).collect();
        run(&specs, &RunOptions::default()).unwrap()
    }

    #[test]
    fn a5_json_fields() {
        let json = to_json(&table(&["A5"]));
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        let row = &v["rows"][0];
        assert_eq!(row["am"], serde_json::json!({"num": 61, "den": 15}));
        assert_eq!(row["degrees"], serde_json::json!([1, 3, 3, 4, 5]));
        assert_eq!(row["deg_g"], 5);
        assert_eq!(row["min_abelian_index"], 12);
        assert!(row.get("oracle").is_none());
        let keys: Vec<&str> = [
            "\"label\"",
            "\"order\"",
            "\"degrees\"",
            "\"am\"",
            "\"am_decimal\"",
            "\"deg_g\"",
            "\"abelian\"",
            "\"min_abelian_index\"",
            "\"checks\"",
        ]
        .to_vec();
        let rows_at = json.find("\"rows\"").unwrap();
        let positions: Vec<usize> = keys
            .iter()
            .map(|k| rows_at + json[rows_at..].find(k).unwrap())
            .collect();
        assert!(positions.windows(2).all(|w| w[0] < w[1]), "row keys out of order");
    }

    #[test]
    fn empty_table() {
        let t = table(&[]);
        let v: serde_json::Value = serde_json::from_str(&to_json(&t)).unwrap();
        assert_eq!(v["rows"].as_array().unwrap().len(), 0);
        assert_eq!(to_csv(&t).lines().count(), 1);
        assert_eq!(to_markdown(&t).lines().count(), 2);
    }

    #[test]
    fn csv_round_trip() {
        let t = table(&["A5", "C2xC2", "S3"]);
        let text = to_csv(&t);
        let mut reader = csv::Reader::from_reader(text.as_bytes());
        let header: Vec<String> = reader.headers().unwrap().iter().map(String::from).collect();
        assert_eq!(header, CSV_COLUMNS);
        let records: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
        assert_eq!(records.len(), t.rows.len());
        for (rec, row) in records.iter().zip(&t.rows) {
            let r = row.report.as_ref().unwrap();
            assert_eq!(&rec[0], row.label);
            assert_eq!(rec[1].parse::<u64>().unwrap(), r.order);
            let degrees: Vec<u64> = rec[2].split(' ').map(|d| d.parse().unwrap()).collect();
            assert_eq!(degrees, r.degrees.degrees());
            assert_eq!(rec[3].parse::<Rational>().unwrap(), r.am);
            assert_eq!(rec[4].parse::<f64>().unwrap(), to_f64(&r.am));
            assert_eq!(rec[5].parse::<u64>().unwrap(), r.deg_g);
            assert_eq!(rec[6].parse::<bool>().unwrap(), r.abelian);
            assert_eq!(rec[7].parse::<u64>().ok(), r.min_abelian_index);
            assert_eq!(rec[8].split(';').count(), row.checks.len());
        }
        assert_eq!(&records[0][3], "61/15");
    }

    #[test]
    fn markdown_table() {
        let md = to_markdown(&table(&["A5"]));
        assert!(md.contains("| A5 | 60 | 1 3 3 4 5 | 61/15 | 4.066667 | 5 | false | 12 |"));
    }
}
