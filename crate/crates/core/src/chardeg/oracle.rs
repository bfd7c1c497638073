//! Floating-point degree oracle: the spectrum of a random Hermitian element of
//! the center of the group algebra, acting in the regular representation.
//!
//! Each irreducible `χ` contributes an eigenvalue of multiplicity `d²` in the
//! regular representation; the real embedding `[[A, -B], [B, A]]` doubles it.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{ChardegError, DegreeVector};
use crate::numlin::{cluster, eigenvalues_symmetric, SymMatrix};
use crate::perm::{ConjugacyClasses, GroupElements};

pub const DEFAULT_ORACLE_CAP: u64 = 60;
pub const CLUSTER_TOLERANCE: f64 = 1e-8;
pub const MAX_ATTEMPTS: u64 = 5;
const EIGEN_TOLERANCE: f64 = 1e-13;

/// Outcome of one oracle run, including the cluster multiplicities observed.
#[derive(Clone, Debug, PartialEq)]
pub struct DegreeOracle {
    pub degrees: DegreeVector,
    pub multiplicities: Vec<usize>,
    /// Seed of the successful attempt.
    pub seed: u64,
    pub attempts: u64,
}

/// Attempt `k` uses seed `seed + k`.
pub fn regular_degree_oracle(
    g: &GroupElements,
    classes: &ConjugacyClasses,
    seed: u64,
    cap: u64,
) -> Result<DegreeOracle, ChardegError> {
    let n = g.len();
    if n as u64 > cap {
        return Err(ChardegError::OracleCapExceeded { order: n as u64, cap });
    }
    let r = classes.len();
    // class of s·t⁻¹ for every (s, t)
    let class_of_quotient: Vec<usize> = (0..n)
        .flat_map(|s| (0..n).map(move |t| (s, t)))
        .map(|(s, t)| classes.class_of(g.mul(s, g.inverse(t))))
        .collect();

    for attempt in 0..MAX_ATTEMPTS {
        let attempt_seed = seed.wrapping_add(attempt);
        let mut rng = ChaCha8Rng::seed_from_u64(attempt_seed);
        let re: Vec<f64> = (0..r).map(|_| rng.random_range(-1.0..1.0)).collect();
        let im: Vec<f64> = (0..r).map(|_| rng.random_range(-1.0..1.0)).collect();
        // Z_i[s][t] = [s t⁻¹ ∈ C_i]; T = Σ re_i (Z_i + Z_i') + i·im_i (Z_i − Z_i').
        let hermitian_part = |s: usize, t: usize| -> (f64, f64) {
            let i = class_of_quotient[s * n + t];
            let i_inv = classes.inverse_class(i);
            let a = re[i] + re[i_inv];
            let b = im[i] - im[i_inv];
            (a, b)
        };
        let m = SymMatrix::from_fn(2 * n, |row, col| {
            let (s, t) = (row % n, col % n);
            let (a, b) = hermitian_part(s, t);
            match (row < n, col < n) {
                (true, true) | (false, false) => a,
                (true, false) => -b,
                (false, true) => b,
            }
        })?;
        let spectrum = eigenvalues_symmetric(&m, EIGEN_TOLERANCE)?;
        let clusters = cluster(&spectrum.eigenvalues, CLUSTER_TOLERANCE);
        let multiplicities: Vec<usize> = clusters.iter().map(|&(_, m)| m).collect();
        let degrees: Option<Vec<u64>> = multiplicities
            .iter()
            .map(|&m| {
                if m % 2 != 0 {
                    return None;
                }
                let sq = (m / 2) as u64;
                let d = sq.isqrt();
                (d * d == sq).then_some(d)
            })
            .collect();
        let Some(degrees) = degrees else { continue };
        if degrees.len() != r {
            continue;
        }
        let Ok(degrees) = DegreeVector::new(degrees, n as u64) else {
            continue;
        };
        let mut multiplicities = multiplicities;
        multiplicities.sort_unstable();
        return Ok(DegreeOracle {
            degrees,
            multiplicities,
            seed: attempt_seed,
            attempts: attempt + 1,
        });
    }
    Err(ChardegError::OracleFailed {
        attempts: MAX_ATTEMPTS,
    })
}
