//! Exact amenability constants from character degrees, and the checks that
//! can be decided for a finite group.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

use crate::chardeg::{character_degrees, ChardegError, DegreeVector};
use crate::perm::{
    minimal_abelian_index, GroupElements, PermError, PermGroup, DEFAULT_ELEMENT_CAP, DEFAULT_SUBGROUP_CAP,
};

/// Exact rational number, always in lowest terms with a positive denominator.
pub type Rational = BigRational;

pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// `Σ d³ / Σ d²`, reduced.
pub fn amenability_constant(dv: &DegreeVector) -> Rational {
    let cubes: BigInt = dv.degrees().iter().map(|&d| BigInt::from(d).pow(3)).sum();
    let squares: BigInt = dv.degrees().iter().map(|&d| BigInt::from(d).pow(2)).sum();
    Rational::new(cubes, squares)
}

/// Largest character degree.
pub fn sup_degree(dv: &DegreeVector) -> u64 {
    dv.max_degree()
}

/// Degrees of `G × H` from the degrees of the factors.
pub fn product_degrees(g: &DegreeVector, h: &DegreeVector) -> DegreeVector {
    g.product(h)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

impl CheckStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "fail",
            CheckStatus::Skipped => "skipped",
        }
    }

    fn from_bool(ok: bool) -> Self {
        if ok {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        }
    }
}

impl fmt::Display for CheckStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Result of one check, with the compared values as a human-readable witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub status: CheckStatus,
    pub witness: String,
}

impl CheckOutcome {
    pub fn new(name: &'static str, ok: bool, witness: impl Into<String>) -> Self {
        Self {
            name,
            status: CheckStatus::from_bool(ok),
            witness: witness.into(),
        }
    }

    pub fn skipped(name: &'static str, reason: impl Into<String>) -> Self {
        Self {
            name,
            status: CheckStatus::Skipped,
            witness: reason.into(),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == CheckStatus::Pass
    }
}

pub mod check_names {
    pub const AT_LEAST_ONE: &str = "am_at_least_one";
    pub const UPPER_BOUND: &str = "upper_bound";
    pub const ABELIAN_IFF_ONE: &str = "abelian_iff_one";
    pub const JOHNSON_GAP: &str = "johnson_gap";
    pub const THOMA: &str = "thoma";
    pub const MULTIPLICATIVITY: &str = "multiplicativity";
}

#[derive(Clone, Debug, PartialEq)]
pub struct AmenabilityReport {
    pub label: String,
    pub order: u64,
    pub degrees: DegreeVector,
    pub am: Rational,
    pub deg_g: u64,
    pub abelian: bool,
    pub min_abelian_index: Option<u64>,
    pub checks: Vec<CheckOutcome>,
}

impl AmenabilityReport {
    pub fn check(&self, name: &str) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn any_failed(&self) -> bool {
        self.checks.iter().any(|c| c.status == CheckStatus::Fail)
    }
}

/// `AM ≥ 1`.
pub fn check_at_least_one(report: &AmenabilityReport) -> CheckOutcome {
    CheckOutcome::new(
        check_names::AT_LEAST_ONE,
        report.am >= Rational::one(),
        format!("{} >= 1", report.am),
    )
}

/// `AM ≤ deg(G)`, exactly.
pub fn check_upper_bound(report: &AmenabilityReport) -> CheckOutcome {
    let bound = Rational::from_integer(BigInt::from(report.deg_g));
    CheckOutcome::new(
        check_names::UPPER_BOUND,
        report.am <= bound,
        format!("{} <= {}", report.am, report.deg_g),
    )
}

/// `AM = 1` exactly when the group is abelian.
pub fn check_abelian_iff_one(report: &AmenabilityReport) -> CheckOutcome {
    let is_one = report.am.is_one();
    CheckOutcome::new(
        check_names::ABELIAN_IFF_ONE,
        is_one == report.abelian,
        format!("am = {}, abelian = {}", report.am, report.abelian),
    )
}

/// Non-abelian groups have `AM ≥ 3/2`.
pub fn check_johnson_gap(report: &AmenabilityReport) -> CheckOutcome {
    if report.abelian {
        return CheckOutcome::new(check_names::JOHNSON_GAP, true, "abelian (vacuous)");
    }
    let gap = rational(3, 2);
    let relation = if report.am == gap { "=" } else { ">=" };
    CheckOutcome::new(
        check_names::JOHNSON_GAP,
        report.am >= gap,
        format!("{} {relation} 3/2", report.am),
    )
}

/// `deg(G) ≤ [G:H]` for the smallest-index abelian subgroup `H`.
pub fn check_thoma(report: &AmenabilityReport) -> CheckOutcome {
    match report.min_abelian_index {
        None => CheckOutcome::skipped(check_names::THOMA, "minimal abelian index not computed"),
        Some(index) => {
            let witness = if report.deg_g < index {
                format!("{} < {index} (strict)", report.deg_g)
            } else {
                format!("{} <= {index} (equality)", report.deg_g)
            };
            CheckOutcome::new(check_names::THOMA, report.deg_g <= index, witness)
        }
    }
}

/// `AM(G × H) = AM(G) · AM(H)`, with the left side computed on the product group.
pub fn check_multiplicativity(
    g: &AmenabilityReport,
    h: &AmenabilityReport,
    gh: &AmenabilityReport,
) -> CheckOutcome {
    let product = &g.am * &h.am;
    CheckOutcome::new(
        check_names::MULTIPLICATIVITY,
        gh.am == product,
        format!("{} = {} * {} (= {product})", gh.am, g.am, h.am),
    )
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AnalysisOptions {
    pub element_cap: u64,
    pub subgroup_cap: u64,
    /// Whether to enumerate subgroups for the minimal abelian index.
    pub subgroups: bool,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        Self {
            element_cap: DEFAULT_ELEMENT_CAP,
            subgroup_cap: DEFAULT_SUBGROUP_CAP,
            subgroups: true,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stage {
    Elements,
    Degrees,
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Stage::Elements => "elements",
            Stage::Degrees => "degrees",
        })
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum AnalysisError {
    #[error("{stage}: {source}")]
    Perm { stage: Stage, source: PermError },
    #[error("{stage}: {source}")]
    Chardeg { stage: Stage, source: ChardegError },
}

impl AnalysisError {
    pub fn stage(&self) -> Stage {
        match self {
            AnalysisError::Perm { stage, .. } | AnalysisError::Chardeg { stage, .. } => *stage,
        }
    }

    pub fn is_cap_exceeded(&self) -> bool {
        match self {
            AnalysisError::Perm { source, .. } => source.is_cap_exceeded(),
            AnalysisError::Chardeg { source, .. } => source.is_cap_exceeded(),
        }
    }
}

/// Full pipeline: elements, classes, degrees, `AM`, `deg(G)`, the minimal
/// abelian index when the subgroup cap allows, and every single-group check.
pub fn analyze(
    label: &str,
    group: &PermGroup,
    options: &AnalysisOptions,
) -> Result<AmenabilityReport, AnalysisError> {
    let elements = GroupElements::new(group, options.element_cap).map_err(|source| AnalysisError::Perm {
        stage: Stage::Elements,
        source,
    })?;
    analyze_elements(label, &elements, options)
}

pub fn analyze_elements(
    label: &str,
    elements: &GroupElements,
    options: &AnalysisOptions,
) -> Result<AmenabilityReport, AnalysisError> {
    let classes = elements.conjugacy_classes();
    let degrees = character_degrees(elements, &classes).map_err(|source| AnalysisError::Chardeg {
        stage: Stage::Degrees,
        source,
    })?;
    let min_abelian_index = if options.subgroups {
        minimal_abelian_index(elements, options.subgroup_cap).ok()
    } else {
        None
    };
    let mut report = AmenabilityReport {
        label: label.to_string(),
        order: elements.len() as u64,
        am: amenability_constant(&degrees),
        deg_g: sup_degree(&degrees),
        degrees,
        abelian: elements.group().is_abelian(),
        min_abelian_index,
        checks: Vec::new(),
    };
    let mut checks = vec![
        check_at_least_one(&report),
        check_upper_bound(&report),
        check_abelian_iff_one(&report),
        check_johnson_gap(&report),
        check_thoma(&report),
    ];
    if report.min_abelian_index.is_none() {
        let reason = if options.subgroups {
            format!(
                "group order {} exceeds subgroup cap {}",
                report.order, options.subgroup_cap
            )
        } else {
            "subgroup enumeration disabled".to_string()
        };
        checks[4] = CheckOutcome::skipped(check_names::THOMA, reason);
    }
    report.checks = checks;
    Ok(report)
}
