//! Corpus runner: one report row per group specification.

use std::collections::HashSet;
use std::sync::Arc;

use amconst_core::amen::{analyze_elements, check_multiplicativity, AnalysisError, AnalysisOptions};
use amconst_core::chardeg::{regular_degree_oracle, ChardegError, DegreeOracle, DEFAULT_ORACLE_CAP};
use amconst_core::fourier::{
    antidiagonal_closure_witness, antidiagonal_norm_against, idempotent_norm_scan, saeki_bound, FourierError,
    IdempotentScan, DEFAULT_NORM_TOLERANCE, DEFAULT_SCAN_MAX_ORDER, SAEKI_CHECK,
};
use amconst_core::perm::{GroupElements, DEFAULT_ELEMENT_CAP, DEFAULT_SUBGROUP_CAP};
use amconst_core::{AmenabilityReport, CheckOutcome, CheckStatus, OracleResult};
use rayon::prelude::*;
use serde::Serialize;

use crate::spec::{GroupSource, GroupSpec};

pub const ANTIDIAGONAL_SUBGROUP_CHECK: &str = "antidiagonal_subgroup_iff_abelian";
pub const DEGREE_ORACLE_CHECK: &str = "degree_oracle_agreement";
pub const NORM_EQUALITY_CHECK: &str = "antidiagonal_norm_equality";
pub const PIPELINE_CHECK: &str = "pipeline";

/// Largest order for which the anti-diagonal closure test runs (`|G|²` products).
pub const ANTIDIAGONAL_MAX_ORDER: u64 = 1000;
/// Largest `|G|` for the anti-diagonal norm oracle; the matrix has side `|G|²`.
pub const DEFAULT_NORM_MAX_ORDER: u64 = 24;
pub const DEFAULT_SEED: u64 = 0;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunOptions {
    pub element_cap: u64,
    pub subgroup_cap: u64,
    pub checks: bool,
    pub degree_oracle: bool,
    pub degree_oracle_cap: u64,
    pub norm_oracle: bool,
    pub norm_max_order: u64,
    pub tolerance: f64,
    pub seed: u64,
    /// Oracles skipped by a cap count as blocked computations.
    pub oracle_caps_fatal: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        Self {
            element_cap: DEFAULT_ELEMENT_CAP,
            subgroup_cap: DEFAULT_SUBGROUP_CAP,
            checks: true,
            degree_oracle: false,
            degree_oracle_cap: DEFAULT_ORACLE_CAP,
            norm_oracle: false,
            norm_max_order: DEFAULT_NORM_MAX_ORDER,
            tolerance: DEFAULT_NORM_TOLERANCE,
            seed: DEFAULT_SEED,
            oracle_caps_fatal: false,
        }
    }
}

impl RunOptions {
    fn analysis(&self) -> AnalysisOptions {
        AnalysisOptions {
            element_cap: self.element_cap,
            subgroup_cap: self.subgroup_cap,
            subgroups: true,
        }
    }
}

/// Reproduction metadata. Deliberately carries no timestamp.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunMeta {
    pub version: &'static str,
    #[serde(flatten)]
    pub options: RunOptions,
}

#[derive(Clone, Debug, PartialEq)]
pub enum OracleEntry<T> {
    Done(T),
    Skipped { reason: String, cap: bool },
    Failed(String),
}

#[derive(Clone, Debug, PartialEq)]
pub struct OracleSection {
    pub degrees: Option<OracleEntry<DegreeOracle>>,
    pub norm: Option<OracleEntry<OracleResult>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RowErrorKind {
    Cap,
    Internal,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowError {
    pub kind: RowErrorKind,
    pub stage: String,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Row {
    pub label: String,
    pub report: Option<AmenabilityReport>,
    pub checks: Vec<CheckOutcome>,
    pub oracle: Option<OracleSection>,
    pub error: Option<RowError>,
    /// Why a requested computation was prevented by a resource cap.
    pub blocked: Option<String>,
}

impl Row {
    pub fn any_failed(&self) -> bool {
        self.checks.iter().any(|c| c.status == CheckStatus::Fail)
    }

    pub fn check(&self, name: &str) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| c.name == name)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ReportTable {
    pub meta: RunMeta,
    pub rows: Vec<Row>,
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAP: i32 = 3;

impl ReportTable {
    pub fn any_failed(&self) -> bool {
        self.rows.iter().any(Row::any_failed)
    }

    pub fn any_blocked(&self) -> bool {
        self.rows.iter().any(|r| r.blocked.is_some())
    }

    /// 1 when any check failed, else 3 when a cap blocked a requested computation, else 0.
    pub fn exit_code(&self) -> i32 {
        if self.any_failed() {
            EXIT_CHECK_FAILED
        } else if self.any_blocked() {
            EXIT_CAP
        } else {
            EXIT_OK
        }
    }

    pub fn row(&self, label: &str) -> Option<&Row> {
        self.rows.iter().find(|r| r.label == label)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RunError {
    #[error("duplicate label {0:?}")]
    DuplicateLabel(String),
}

fn analysis_error(e: AnalysisError) -> RowError {
    RowError {
        kind: if e.is_cap_exceeded() {
            RowErrorKind::Cap
        } else {
            RowErrorKind::Internal
        },
        stage: e.stage().to_string(),
        message: e.to_string(),
    }
}

fn error_row(label: &str, error: RowError) -> Row {
    let (checks, blocked) = match error.kind {
        RowErrorKind::Cap => (Vec::new(), Some(error.message.clone())),
        RowErrorKind::Internal => (
            vec![CheckOutcome::new(PIPELINE_CHECK, false, error.message.clone())],
            None,
        ),
    };
    Row {
        label: label.to_string(),
        report: None,
        checks,
        oracle: None,
        error: Some(error),
        blocked,
    }
}

fn elements_for(source: &GroupSource, options: &RunOptions) -> Result<GroupElements, RowError> {
    let group = source.realize().map_err(|e| RowError {
        kind: RowErrorKind::Internal,
        stage: "realize".into(),
        message: e.to_string(),
    })?;
    GroupElements::new(&group, options.element_cap).map_err(|source| {
        analysis_error(AnalysisError::Perm {
            stage: amconst_core::amen::Stage::Elements,
            source,
        })
    })
}

fn analyze_source(
    label: &str,
    source: &GroupSource,
    options: &RunOptions,
) -> Result<AmenabilityReport, RowError> {
    let elements = elements_for(source, options)?;
    analyze_elements(label, &elements, &options.analysis()).map_err(analysis_error)
}

fn multiplicativity(
    spec: &GroupSpec,
    report: &AmenabilityReport,
    options: &RunOptions,
) -> Option<CheckOutcome> {
    let (l, r) = spec.source.factors()?;
    let factor = |s: &GroupSource| analyze_source(&s.to_string(), s, options);
    Some(match (factor(l), factor(r)) {
        (Ok(g), Ok(h)) => check_multiplicativity(&g, &h, report),
        (Err(e), _) | (_, Err(e)) => CheckOutcome::skipped(
            amconst_core::amen::check_names::MULTIPLICATIVITY,
            format!("factor not analyzed: {}", e.message),
        ),
    })
}

fn antidiagonal_subgroup(elements: &GroupElements, abelian: bool) -> CheckOutcome {
    let n = elements.len() as u64;
    if n > ANTIDIAGONAL_MAX_ORDER {
        return CheckOutcome::skipped(
            ANTIDIAGONAL_SUBGROUP_CHECK,
            format!("order {n} above {ANTIDIAGONAL_MAX_ORDER}"),
        );
    }
    let witness = antidiagonal_closure_witness(elements);
    let closed = witness.is_none();
    let text = match witness {
        None => format!("closed under products, abelian = {abelian}"),
        Some((a, b)) => format!(
            "(x, x^-1)(y, y^-1) leaves the set for x = {}, y = {}; abelian = {abelian}",
            elements.element(a),
            elements.element(b)
        ),
    };
    CheckOutcome::new(ANTIDIAGONAL_SUBGROUP_CHECK, closed == abelian, text)
}

fn degree_oracle(
    elements: &GroupElements,
    report: &AmenabilityReport,
    options: &RunOptions,
) -> (OracleEntry<DegreeOracle>, Option<CheckOutcome>) {
    let classes = elements.conjugacy_classes();
    match regular_degree_oracle(elements, &classes, options.seed, options.degree_oracle_cap) {
        Ok(o) => {
            let ok = o.degrees == report.degrees;
            let witness = format!(
                "oracle {:?} vs exact {:?}",
                o.degrees.degrees(),
                report.degrees.degrees()
            );
            (
                OracleEntry::Done(o),
                Some(CheckOutcome::new(DEGREE_ORACLE_CHECK, ok, witness)),
            )
        }
        Err(e @ ChardegError::OracleCapExceeded { .. }) => (
            OracleEntry::Skipped {
                reason: e.to_string(),
                cap: true,
            },
            Some(CheckOutcome::skipped(DEGREE_ORACLE_CHECK, e.to_string())),
        ),
        Err(e) => (
            OracleEntry::Failed(e.to_string()),
            Some(CheckOutcome::new(DEGREE_ORACLE_CHECK, false, e.to_string())),
        ),
    }
}

fn norm_oracle(
    elements: &GroupElements,
    report: &AmenabilityReport,
    options: &RunOptions,
) -> (OracleEntry<OracleResult>, Vec<CheckOutcome>) {
    let n = elements.len() as u64;
    if n > options.norm_max_order {
        let reason = format!(
            "|G| = {n} above the norm oracle cap of {}; matrix side would be {}",
            options.norm_max_order,
            n * n
        );
        return (OracleEntry::Skipped { reason, cap: true }, Vec::new());
    }
    let cap = options.norm_max_order * options.norm_max_order;
    match antidiagonal_norm_against(elements, report.am.clone(), options.tolerance, cap) {
        Ok(r) => {
            let equality = CheckOutcome::new(
                NORM_EQUALITY_CHECK,
                r.gap <= options.tolerance,
                format!(
                    "|{:.12} - {}| = {:.3e} <= {:e}",
                    r.norm, r.target, r.gap, r.tolerance
                ),
            );
            let checks = vec![r.check(), equality];
            (OracleEntry::Done(r), checks)
        }
        Err(e @ FourierError::CapExceeded { .. }) => (
            OracleEntry::Skipped {
                reason: e.to_string(),
                cap: true,
            },
            Vec::new(),
        ),
        Err(e) => (
            OracleEntry::Failed(e.to_string()),
            vec![CheckOutcome::new(
                amconst_core::fourier::ANTIDIAGONAL_NORM_CHECK,
                false,
                e.to_string(),
            )],
        ),
    }
}

/// Computes one row; errors are captured rather than propagated.
pub fn run_one(spec: &GroupSpec, options: &RunOptions) -> Row {
    let elements = match elements_for(&spec.source, options) {
        Ok(e) => e,
        Err(e) => return error_row(&spec.label, e),
    };
    let mut report = match analyze_elements(&spec.label, &elements, &options.analysis()) {
        Ok(r) => r,
        Err(e) => return error_row(&spec.label, analysis_error(e)),
    };
    let mut checks = std::mem::take(&mut report.checks);
    if options.checks {
        checks.extend(multiplicativity(spec, &report, options));
        checks.push(antidiagonal_subgroup(&elements, report.abelian));
    } else {
        checks.clear();
    }

    let mut blocked = None;
    let oracle = (options.degree_oracle || options.norm_oracle).then(|| {
        let mut section = OracleSection {
            degrees: None,
            norm: None,
        };
        if options.degree_oracle {
            let (entry, check) = degree_oracle(&elements, &report, options);
            if let OracleEntry::Skipped { reason, cap: true } = &entry {
                if options.oracle_caps_fatal {
                    blocked = Some(reason.clone());
                }
            }
            if options.checks {
                checks.extend(check);
            }
            section.degrees = Some(entry);
        }
        if options.norm_oracle {
            let (entry, extra) = norm_oracle(&elements, &report, options);
            if let OracleEntry::Skipped { reason, cap: true } = &entry {
                if options.oracle_caps_fatal {
                    blocked = Some(reason.clone());
                }
            }
            if options.checks {
                checks.extend(extra);
            }
            section.norm = Some(entry);
        }
        section
    });

    Row {
        label: spec.label.clone(),
        report: Some(report),
        checks,
        oracle,
        error: None,
        blocked,
    }
}

/// Runs every spec in parallel; rows keep input order.
pub fn run(specs: &[GroupSpec], options: &RunOptions) -> Result<ReportTable, RunError> {
    let mut seen = HashSet::new();
    for s in specs {
        if !seen.insert(s.label.as_str()) {
            return Err(RunError::DuplicateLabel(s.label.clone()));
        }
    }
    let rows = specs.par_iter().map(|s| run_one(s, options)).collect();
    Ok(ReportTable {
        meta: RunMeta {
            version: env!("CARGO_PKG_VERSION"),
            options: options.clone(),
        },
        rows,
    })
}

/// Result of scanning inverse-closed subset indicators on one group.
#[derive(Clone, Debug)]
pub struct ScanReport {
    pub label: String,
    pub order: u64,
    pub abelian: bool,
    pub group: Arc<GroupElements>,
    pub scan: IdempotentScan,
    pub check: CheckOutcome,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ScanError {
    #[error("{0}")]
    Cap(String),
    #[error("{0}")]
    Other(String),
}

/// Scans all inverse-closed subsets of a group of order at most `max_order`.
///
/// The dichotomy is only asserted for abelian groups; for the others the check
/// is reported as skipped while the norms are still listed.
pub fn run_scan(
    spec: &GroupSpec,
    element_cap: u64,
    max_order: u64,
    max_subsets: usize,
    tolerance: f64,
) -> Result<ScanReport, ScanError> {
    let elements = elements_for(
        &spec.source,
        &RunOptions {
            element_cap,
            ..RunOptions::default()
        },
    )
    .map_err(|e| match e.kind {
        RowErrorKind::Cap => ScanError::Cap(e.message),
        RowErrorKind::Internal => ScanError::Other(e.message),
    })?;
    let abelian = elements.group().is_abelian();
    let group = Arc::new(elements);
    let scan = idempotent_norm_scan(group.clone(), max_subsets, max_order, tolerance).map_err(|e| {
        if e.is_cap_exceeded() {
            ScanError::Cap(e.to_string())
        } else {
            ScanError::Other(e.to_string())
        }
    })?;
    let check = if abelian {
        scan.check()
    } else {
        CheckOutcome::skipped(
            SAEKI_CHECK,
            format!(
                "non-abelian; bound (1+sqrt2)/2 = {:.9} not asserted",
                saeki_bound()
            ),
        )
    };
    Ok(ScanReport {
        label: spec.label.clone(),
        order: group.len() as u64,
        abelian,
        group,
        scan,
        check,
    })
}

pub const DEFAULT_SCAN_ORDER: u64 = DEFAULT_SCAN_MAX_ORDER;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spec::parse_group_spec;
    use amconst_core::amen::rational;

    fn specs(labels: &[&str]) -> Vec<GroupSpec> {
        labels.iter().map(|l| parse_group_spec(l).unwrap()).collect()
    }

    #[test]
    fn trivial_group_row() {
        let t = run(&specs(&["C1"]), &RunOptions::default()).unwrap();
        let r = t.rows[0].report.as_ref().unwrap();
        assert_eq!(r.am, rational(1, 1));
        assert_eq!(t.exit_code(), EXIT_OK);
    }

    #[test]
    fn a5_with_oracles() {
        let options = RunOptions {
            degree_oracle: true,
            norm_oracle: true,
            ..RunOptions::default()
        };
        let t = run(&specs(&["A5"]), &options).unwrap();
        let row = &t.rows[0];
        let oracle = row.oracle.as_ref().unwrap();
        assert!(matches!(oracle.degrees, Some(OracleEntry::Done(_))));
        assert!(matches!(
            oracle.norm,
            Some(OracleEntry::Skipped { cap: true, .. })
        ));
        assert_eq!(row.check(DEGREE_ORACLE_CHECK).unwrap().status, CheckStatus::Pass);
        assert_eq!(t.exit_code(), EXIT_OK);
        let strict = RunOptions {
            oracle_caps_fatal: true,
            ..options
        };
        assert_eq!(run(&specs(&["A5"]), &strict).unwrap().exit_code(), EXIT_CAP);
    }

    #[test]
    fn norm_oracle_on_s3() {
        let options = RunOptions {
            norm_oracle: true,
            oracle_caps_fatal: true,
            ..RunOptions::default()
        };
        let t = run(&specs(&["S3"]), &options).unwrap();
        let row = &t.rows[0];
        let Some(OracleEntry::Done(r)) = &row.oracle.as_ref().unwrap().norm else {
            panic!("norm oracle did not run")
        };
        assert!(r.gap < 1e-9);
        assert_eq!(row.check(NORM_EQUALITY_CHECK).unwrap().status, CheckStatus::Pass);
        assert_eq!(t.exit_code(), EXIT_OK);
    }

    #[test]
    fn negative_tolerance_fails_the_bound() {
        let options = RunOptions {
            norm_oracle: true,
            tolerance: -0.5,
            ..RunOptions::default()
        };
        let t = run(&specs(&["C3"]), &options).unwrap();
        assert!(t.any_failed());
        assert_eq!(t.exit_code(), EXIT_CHECK_FAILED);
    }

    #[test]
    fn cap_exceeded_rows() {
        let options = RunOptions {
            element_cap: 100,
            ..RunOptions::default()
        };
        let t = run(&specs(&["S3", "S6"]), &options).unwrap();
        assert!(t.rows[0].error.is_none());
        let e = t.rows[1].error.as_ref().unwrap();
        assert_eq!(e.kind, RowErrorKind::Cap);
        assert!(t.rows[1].checks.is_empty());
        assert_eq!(t.exit_code(), EXIT_CAP);
    }

    #[test]
    fn products_and_antidiagonal_checks() {
        let t = run(&specs(&["S3xS3", "Q8xC2", "C2xC2"]), &RunOptions::default()).unwrap();
        for row in &t.rows {
            assert_eq!(
                row.check(amconst_core::amen::check_names::MULTIPLICATIVITY)
                    .unwrap()
                    .status,
                CheckStatus::Pass
            );
            assert_eq!(
                row.check(ANTIDIAGONAL_SUBGROUP_CHECK).unwrap().status,
                CheckStatus::Pass
            );
        }
        assert_eq!(t.rows[0].report.as_ref().unwrap().am, rational(25, 9));
        assert_eq!(t.rows[1].report.as_ref().unwrap().am, rational(3, 2));
    }

    #[test]
    fn no_checks() {
        let options = RunOptions {
            checks: false,
            ..RunOptions::default()
        };
        let t = run(&specs(&["S3"]), &options).unwrap();
        assert!(t.rows[0].checks.is_empty());
    }

    #[test]
    fn duplicate_labels_rejected() {
        assert_eq!(
            run(&specs(&["S3", "S3"]), &RunOptions::default()),
            Err(RunError::DuplicateLabel("S3".into()))
        );
    }

    #[test]
    fn order_is_preserved() {
        let labels = ["A5", "C1", "S4", "Q8", "C7"];
        let t = run(&specs(&labels), &RunOptions::default()).unwrap();
        let got: Vec<&str> = t.rows.iter().map(|r| r.label.as_str()).collect();
        assert_eq!(got, labels);
    }

    #[test]
    fn scan_reports() {
        let s = run_scan(
            &parse_group_spec("C5").unwrap(),
            DEFAULT_ELEMENT_CAP,
            12,
            1 << 20,
            1e-6,
        )
        .unwrap();
        assert_eq!(s.scan.total_subsets, 8);
        assert_eq!(s.check.status, CheckStatus::Pass);
        let s = run_scan(
            &parse_group_spec("S3").unwrap(),
            DEFAULT_ELEMENT_CAP,
            12,
            1 << 20,
            1e-6,
        )
        .unwrap();
        assert_eq!(s.check.status, CheckStatus::Skipped);
        assert!(matches!(
            run_scan(
                &parse_group_spec("C13").unwrap(),
                DEFAULT_ELEMENT_CAP,
                12,
                1 << 20,
                1e-6
            ),
            Err(ScanError::Cap(_))
        ));
    }
}
