//! Fourier-algebra norms of functions on a finite group.
//!
//! For a finite group `H`, `‖f‖_A = (1/|H|) · ‖[f(s t⁻¹)]_{s,t}‖₁`, the trace
//! norm of the group-circulant matrix of `f`. When `f(h⁻¹) = conj(f(h))` the
//! matrix is Hermitian and its trace norm is the sum of absolute eigenvalues;
//! other functions go through the dilation `[[0, M], [M*, 0]]`, whose
//! eigenvalues are `±σᵢ`.

use std::sync::Arc;

pub use num_complex::Complex64;

use crate::amen::{amenability_constant, to_f64, CheckOutcome, Rational};
use crate::chardeg::{character_degrees, ChardegError};
use crate::numlin::{eigenvalues_symmetric, NumLinError, SymMatrix};
use crate::perm::{GroupElements, PermError};

/// Default cap on `|H|` for the norm oracle (`|G| ≤ 24` for `H = G × G`).
pub const DEFAULT_NORM_CAP: u64 = 600;
/// Default cap on `|G|` for the idempotent scan.
pub const DEFAULT_SCAN_MAX_ORDER: u64 = 12;
/// Default tolerance for norm comparisons.
pub const DEFAULT_NORM_TOLERANCE: f64 = 1e-6;
/// Relative off-diagonal tolerance handed to the eigensolver.
pub const EIGEN_TOLERANCE: f64 = 1e-12;

pub const SAEKI_CHECK: &str = "saeki_dichotomy";
pub const ANTIDIAGONAL_NORM_CHECK: &str = "antidiagonal_norm_bound";

/// `(1 + √2) / 2`, the smallest possible norm above one of an idempotent on an abelian group.
pub fn saeki_bound() -> f64 {
    0.5 * (1.0 + std::f64::consts::SQRT_2)
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum FourierError {
    #[error("{what} needs group order {order}, above the cap of {cap}")]
    CapExceeded {
        what: &'static str,
        order: u64,
        cap: u64,
    },
    #[error("expected {expected} values, got {actual}")]
    Length { expected: usize, actual: usize },
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Chardeg(#[from] ChardegError),
    #[error(transparent)]
    NumLin(#[from] NumLinError),
}

impl FourierError {
    pub fn is_cap_exceeded(&self) -> bool {
        match self {
            FourierError::CapExceeded { .. } => true,
            FourierError::Perm(e) => e.is_cap_exceeded(),
            FourierError::Chardeg(e) => e.is_cap_exceeded(),
            _ => false,
        }
    }
}

/// A complex-valued function on an enumerated group, indexed canonically.
#[derive(Clone, Debug)]
pub struct GroupFunction {
    group: Arc<GroupElements>,
    values: Vec<Complex64>,
}

impl GroupFunction {
    pub fn new(group: Arc<GroupElements>, values: Vec<Complex64>) -> Result<Self, FourierError> {
        if values.len() != group.len() {
            return Err(FourierError::Length {
                expected: group.len(),
                actual: values.len(),
            });
        }
        Ok(Self { group, values })
    }

    pub fn from_real(group: Arc<GroupElements>, values: &[f64]) -> Result<Self, FourierError> {
        Self::new(group, values.iter().map(|&v| Complex64::new(v, 0.0)).collect())
    }

    /// Indicator function of a set of element indices.
    pub fn indicator(group: Arc<GroupElements>, members: impl IntoIterator<Item = usize>) -> Self {
        let mut values = vec![Complex64::new(0.0, 0.0); group.len()];
        for i in members {
            values[i] = Complex64::new(1.0, 0.0);
        }
        Self { group, values }
    }

    pub fn delta_identity(group: Arc<GroupElements>) -> Self {
        Self::indicator(group, [0])
    }

    pub fn constant_one(group: Arc<GroupElements>) -> Self {
        let n = group.len();
        Self::indicator(group, 0..n)
    }

    pub fn group(&self) -> &Arc<GroupElements> {
        &self.group
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn sum(&self) -> Complex64 {
        self.values.iter().sum()
    }

    pub fn is_real(&self) -> bool {
        self.values.iter().all(|v| v.im == 0.0)
    }

    /// `f(h⁻¹) = conj(f(h))` for every `h`.
    pub fn is_hermitian(&self) -> bool {
        (0..self.values.len()).all(|h| self.values[self.group.inverse(h)] == self.values[h].conj())
    }

    /// `x ↦ f(t⁻¹ x)`.
    pub fn left_translate(&self, t: usize) -> Self {
        let t_inv = self.group.inverse(t);
        let values = (0..self.values.len())
            .map(|x| self.values[self.group.mul(t_inv, x)])
            .collect();
        Self {
            group: self.group.clone(),
            values,
        }
    }

    /// `x ↦ f(x t)`.
    pub fn right_translate(&self, t: usize) -> Self {
        let values = (0..self.values.len())
            .map(|x| self.values[self.group.mul(x, t)])
            .collect();
        Self {
            group: self.group.clone(),
            values,
        }
    }
}

/// Reusable `s t⁻¹` lookup for computing many norms on one group.
pub struct NormEngine {
    group: Arc<GroupElements>,
    quotient: Vec<u32>,
    tol: f64,
}

impl NormEngine {
    pub fn new(group: Arc<GroupElements>, cap: u64, tol: f64) -> Result<Self, FourierError> {
        let n = group.len();
        if n as u64 > cap {
            return Err(FourierError::CapExceeded {
                what: "Fourier-algebra norm",
                order: n as u64,
                cap,
            });
        }
        let mut quotient = Vec::with_capacity(n * n);
        for s in 0..n {
            for t in 0..n {
                quotient.push(group.mul(s, group.inverse(t)) as u32);
            }
        }
        Ok(Self { group, quotient, tol })
    }

    pub fn group(&self) -> &Arc<GroupElements> {
        &self.group
    }

    fn entry(&self, values: &[Complex64], s: usize, t: usize) -> Complex64 {
        values[self.quotient[s * self.group.len() + t] as usize]
    }

    fn abs_eigen_sum(&self, m: &SymMatrix) -> Result<f64, FourierError> {
        Ok(eigenvalues_symmetric(m, self.tol)?
            .eigenvalues
            .iter()
            .map(|x| x.abs())
            .sum())
    }

    /// `‖f‖_A` and the dimension of the symmetric matrix that was diagonalized.
    pub fn norm_with_dimension(&self, f: &GroupFunction) -> Result<(f64, usize), FourierError> {
        let n = self.group.len();
        let v = f.values();
        if v.len() != n {
            return Err(FourierError::Length {
                expected: n,
                actual: v.len(),
            });
        }
        let hermitian = f.is_hermitian();
        let real = f.is_real();
        // Σ|λ| of the symmetric matrix equals `copies` times the trace norm of M.
        let (m, copies) = match (hermitian, real) {
            (true, true) => (SymMatrix::from_fn(n, |s, t| self.entry(v, s, t).re)?, 1.0),
            (true, false) => {
                // [[A, −B], [B, A]] for M = A + iB
                let m = SymMatrix::from_fn(2 * n, |r, c| {
                    let z = self.entry(v, r % n, c % n);
                    match (r < n, c < n) {
                        (true, true) | (false, false) => z.re,
                        (true, false) => -z.im,
                        (false, true) => z.im,
                    }
                })?;
                (m, 2.0)
            }
            (false, true) => {
                // [[0, M], [Mᵀ, 0]]
                let m = SymMatrix::from_fn(2 * n, |r, c| match (r < n, c < n) {
                    (true, false) => self.entry(v, r, c - n).re,
                    (false, true) => self.entry(v, c, r - n).re,
                    _ => 0.0,
                })?;
                (m, 2.0)
            }
            (false, false) => {
                // Hermitian dilation D = [[0, M], [M*, 0]], then the real embedding of D.
                let dilation = |r: usize, c: usize| -> Complex64 {
                    match (r < n, c < n) {
                        (true, false) => self.entry(v, r, c - n),
                        (false, true) => self.entry(v, c, r - n).conj(),
                        _ => Complex64::new(0.0, 0.0),
                    }
                };
                let m = SymMatrix::from_fn(4 * n, |r, c| {
                    let z = dilation(r % (2 * n), c % (2 * n));
                    match (r < 2 * n, c < 2 * n) {
                        (true, true) | (false, false) => z.re,
                        (true, false) => -z.im,
                        (false, true) => z.im,
                    }
                })?;
                (m, 4.0)
            }
        };
        let dim = m.dim();
        let norm = self.abs_eigen_sum(&m)? / (copies * n as f64);
        Ok((norm, dim))
    }

    pub fn norm(&self, f: &GroupFunction) -> Result<f64, FourierError> {
        Ok(self.norm_with_dimension(f)?.0)
    }
}

/// `‖f‖_{A(H)}` for a function on the group `H` carried by `f`.
pub fn fourier_algebra_norm(f: &GroupFunction, cap: u64, tol: f64) -> Result<f64, FourierError> {
    NormEngine::new(f.group().clone(), cap, tol)?.norm(f)
}

/// Indicator of `{(x, x⁻¹)}` on `G × G`, where the product is realized by
/// [`PermGroup::direct_product`](crate::perm::PermGroup::direct_product).
pub fn anti_diagonal(g: &GroupElements, element_cap: u64) -> Result<GroupFunction, FourierError> {
    let degree = g.group().degree();
    let product = g.group().direct_product(g.group());
    let gg = Arc::new(GroupElements::new(&product, element_cap)?);
    let members: Vec<usize> = gg
        .elements()
        .iter()
        .enumerate()
        .filter(|(_, e)| e.restricted(degree, degree) == e.restricted(0, degree).inverse())
        .map(|(i, _)| i)
        .collect();
    Ok(GroupFunction::indicator(gg, members))
}

/// A pair `(x, y)` for which `(x, x⁻¹)(y, y⁻¹)` leaves the anti-diagonal, if any.
pub fn antidiagonal_closure_witness(g: &GroupElements) -> Option<(usize, usize)> {
    let n = g.len();
    for x in 0..n {
        for y in 0..n {
            let first = g.mul(x, y);
            let second = g.mul(g.inverse(x), g.inverse(y));
            if second != g.inverse(first) {
                return Some((x, y));
            }
        }
    }
    None
}

/// Whether `{(x, x⁻¹)}` is a subgroup of `G × G`. It always contains the
/// identity and is closed under inverses, so only products need checking.
pub fn is_antidiagonal_subgroup(g: &GroupElements) -> bool {
    antidiagonal_closure_witness(g).is_none()
}

/// Comparison of `‖χ_Γ‖_{A(G×G)}` against the exact amenability constant.
#[derive(Clone, Debug, PartialEq)]
pub struct OracleResult {
    pub norm: f64,
    pub target: Rational,
    pub gap: f64,
    pub dimension: usize,
    pub tolerance: f64,
    /// `norm ≤ target + tolerance`.
    pub verdict: bool,
}

impl OracleResult {
    pub fn check(&self) -> CheckOutcome {
        CheckOutcome::new(
            ANTIDIAGONAL_NORM_CHECK,
            self.verdict,
            format!(
                "{:.12} <= {} + {:e} (gap {:.3e})",
                self.norm, self.target, self.tolerance, self.gap
            ),
        )
    }
}

/// Computes `‖χ_Γ‖_{A(G×G)}` and compares it with `AM` from the degree formula.
pub fn antidiagonal_norm_check(
    g: &GroupElements,
    tol: f64,
    norm_cap: u64,
) -> Result<OracleResult, FourierError> {
    let n = g.len() as u64;
    if n * n > norm_cap {
        return Err(FourierError::CapExceeded {
            what: "anti-diagonal norm oracle",
            order: n * n,
            cap: norm_cap,
        });
    }
    let classes = g.conjugacy_classes();
    let target = amenability_constant(&character_degrees(g, &classes)?);
    antidiagonal_norm_against(g, target, tol, norm_cap)
}

/// Same as [`antidiagonal_norm_check`] with a precomputed target.
pub fn antidiagonal_norm_against(
    g: &GroupElements,
    target: Rational,
    tol: f64,
    norm_cap: u64,
) -> Result<OracleResult, FourierError> {
    let chi = anti_diagonal(g, norm_cap)?;
    let engine = NormEngine::new(chi.group().clone(), norm_cap, EIGEN_TOLERANCE)?;
    let (norm, dimension) = engine.norm_with_dimension(&chi)?;
    let target_f = to_f64(&target);
    Ok(OracleResult {
        norm,
        gap: (norm - target_f).abs(),
        verdict: norm <= target_f + tol,
        target,
        dimension,
        tolerance: tol,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScanEntry {
    /// Canonical element indices of the subset.
    pub subset: Vec<usize>,
    pub norm: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct IdempotentScan {
    pub entries: Vec<ScanEntry>,
    /// Smallest norm exceeding `1 + tol`, if any.
    pub min_above_one: Option<f64>,
    /// Number of inverse-closed subsets; more than `entries.len()` when capped.
    pub total_subsets: u128,
    pub tolerance: f64,
}

impl IdempotentScan {
    /// Every norm is either at most `1 + tol` or at least `(1 + √2)/2 − tol`.
    pub fn dichotomy_holds(&self) -> bool {
        let low = 1.0 + self.tolerance;
        let high = saeki_bound() - self.tolerance;
        self.entries.iter().all(|e| e.norm <= low || e.norm >= high)
    }

    pub fn check(&self) -> CheckOutcome {
        let witness = match self.min_above_one {
            Some(m) => format!("min norm above one {m:.9} vs (1+sqrt2)/2 = {:.9}", saeki_bound()),
            None => "no norm above one".to_string(),
        };
        CheckOutcome::new(SAEKI_CHECK, self.dichotomy_holds(), witness)
    }
}

/// Norms of the indicators of all inverse-closed subsets (unions of `{x, x⁻¹}`
/// pairs), in bitmask order over those pairs, up to `max_subsets` of them.
pub fn idempotent_norm_scan(
    g: Arc<GroupElements>,
    max_subsets: usize,
    max_order: u64,
    tol: f64,
) -> Result<IdempotentScan, FourierError> {
    let n = g.len();
    if n as u64 > max_order {
        return Err(FourierError::CapExceeded {
            what: "idempotent scan",
            order: n as u64,
            cap: max_order,
        });
    }
    let mut pairs: Vec<Vec<usize>> = Vec::new();
    let mut seen = vec![false; n];
    for x in 0..n {
        if seen[x] {
            continue;
        }
        let xi = g.inverse(x);
        seen[x] = true;
        seen[xi] = true;
        pairs.push(if xi == x { vec![x] } else { vec![x, xi] });
    }
    let total_subsets = 1u128 << pairs.len();
    let engine = NormEngine::new(g.clone(), max_order, EIGEN_TOLERANCE)?;
    let count = total_subsets.min(max_subsets as u128) as u64;
    let mut entries = Vec::with_capacity(count as usize);
    for mask in 0..count {
        let mut subset: Vec<usize> = pairs
            .iter()
            .enumerate()
            .filter(|(k, _)| mask & (1 << k) != 0)
            .flat_map(|(_, p)| p.iter().copied())
            .collect();
        subset.sort_unstable();
        let f = GroupFunction::indicator(g.clone(), subset.iter().copied());
        let norm = engine.norm(&f)?;
        entries.push(ScanEntry { subset, norm });
    }
    let min_above_one = entries
        .iter()
        .map(|e| e.norm)
        .filter(|&v| v > 1.0 + tol)
        .min_by(f64::total_cmp);
    Ok(IdempotentScan {
        entries,
        min_above_one,
        total_subsets,
        tolerance: tol,
    })
}
