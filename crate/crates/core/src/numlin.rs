//! Dense real-symmetric eigenvalues by cyclic Jacobi rotations, plus the
//! trace norm and the multiplicity clustering used by the oracles.

/// Default relative off-diagonal tolerance.
pub const DEFAULT_TOLERANCE: f64 = 1e-12;
pub const DEFAULT_MAX_SWEEPS: usize = 100;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum NumLinError {
    #[error("matrix must have dimension at least 1")]
    Empty,
    #[error("expected {expected} entries, got {actual}")]
    Shape { expected: usize, actual: usize },
    #[error("matrix is not symmetric at ({row}, {col})")]
    NotSymmetric { row: usize, col: usize },
    #[error("matrix contains a non-finite entry")]
    NonFinite,
    #[error("tolerance must be positive")]
    BadTolerance,
    #[error("Jacobi did not converge after {sweeps} sweeps (relative residual {residual:e})")]
    NoConvergence { sweeps: usize, residual: f64 },
}

/// Dense symmetric matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct SymMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SymMatrix {
    /// Builds from row-major entries; symmetry must hold exactly.
    pub fn from_row_major(n: usize, data: Vec<f64>) -> Result<Self, NumLinError> {
        if n == 0 {
            return Err(NumLinError::Empty);
        }
        if data.len() != n * n {
            return Err(NumLinError::Shape {
                expected: n * n,
                actual: data.len(),
            });
        }
        if data.iter().any(|x| !x.is_finite()) {
            return Err(NumLinError::NonFinite);
        }
        for row in 0..n {
            for col in row + 1..n {
                if data[row * n + col] != data[col * n + row] {
                    return Err(NumLinError::NotSymmetric { row, col });
                }
            }
        }
        Ok(Self { n, data })
    }

    /// Builds from the upper triangle of `entry(row, col)`, mirroring it below the diagonal.
    pub fn from_fn(n: usize, mut entry: impl FnMut(usize, usize) -> f64) -> Result<Self, NumLinError> {
        if n == 0 {
            return Err(NumLinError::Empty);
        }
        let mut data = vec![0.0; n * n];
        for row in 0..n {
            for col in row..n {
                let v = entry(row, col);
                if !v.is_finite() {
                    return Err(NumLinError::NonFinite);
                }
                data[row * n + col] = v;
                data[col * n + row] = v;
            }
        }
        Ok(Self { n, data })
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |r, c| if r == c { 1.0 } else { 0.0 }).expect("n >= 1")
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.data[row * self.n + col]
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    /// `P M Pᵀ` for the permutation sending index `i` to `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let n = self.n;
        let mut data = vec![0.0; n * n];
        for r in 0..n {
            for c in 0..n {
                data[perm[r] * n + perm[c]] = self.data[r * n + c];
            }
        }
        Self { n, data }
    }
}

/// Eigenvalues in ascending order and the relative off-diagonal residual reached.
#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
    pub residual: f64,
    pub sweeps: usize,
}

impl Spectrum {
    pub fn sum(&self) -> f64 {
        self.eigenvalues.iter().sum()
    }
}

fn off_diagonal_norm(a: &[f64], n: usize) -> f64 {
    let mut s = 0.0;
    for r in 0..n {
        for c in 0..n {
            if r != c {
                s += a[r * n + c] * a[r * n + c];
            }
        }
    }
    s.sqrt()
}

/// All eigenvalues of `m`, converging when `off(A) <= tol * ‖M‖_F`.
pub fn eigenvalues_symmetric(m: &SymMatrix, tol: f64) -> Result<Spectrum, NumLinError> {
    eigenvalues_symmetric_with(m, tol, DEFAULT_MAX_SWEEPS)
}

pub fn eigenvalues_symmetric_with(
    m: &SymMatrix,
    tol: f64,
    max_sweeps: usize,
) -> Result<Spectrum, NumLinError> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(NumLinError::BadTolerance);
    }
    let n = m.n;
    let mut a = m.data.clone();
    let scale = m.frobenius_norm();
    let finish = |a: &[f64], residual: f64, sweeps: usize| {
        let mut eigenvalues: Vec<f64> = (0..n).map(|i| a[i * n + i]).collect();
        eigenvalues.sort_by(f64::total_cmp);
        Spectrum {
            eigenvalues,
            residual,
            sweeps,
        }
    };
    if scale == 0.0 {
        return Ok(finish(&a, 0.0, 0));
    }
    let target = tol * scale;
    // Rotations on entries this small cannot move the residual above target.
    let skip = 0.1 * target / n as f64;

    let mut row_p = vec![0.0; n];
    let mut row_q = vec![0.0; n];
    for sweep in 0..=max_sweeps {
        let off = off_diagonal_norm(&a, n);
        if off <= target {
            return Ok(finish(&a, off / scale, sweep));
        }
        if sweep == max_sweeps {
            return Err(NumLinError::NoConvergence {
                sweeps: max_sweeps,
                residual: off / scale,
            });
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq.abs() <= skip {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;

                row_p.copy_from_slice(&a[p * n..(p + 1) * n]);
                row_q.copy_from_slice(&a[q * n..(q + 1) * n]);
                for r in 0..n {
                    let (xp, xq) = (row_p[r], row_q[r]);
                    let np = c * xp - s * xq;
                    let nq = s * xp + c * xq;
                    a[p * n + r] = np;
                    a[q * n + r] = nq;
                    a[r * n + p] = np;
                    a[r * n + q] = nq;
                }
                a[p * n + p] = app - t * apq;
                a[q * n + q] = aqq + t * apq;
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
            }
        }
    }
    unreachable!("loop returns on its last iteration")
}

/// Sum of absolute eigenvalues.
pub fn trace_norm(m: &SymMatrix, tol: f64) -> Result<f64, NumLinError> {
    Ok(eigenvalues_symmetric(m, tol)?
        .eigenvalues
        .iter()
        .map(|x| x.abs())
        .sum())
}

/// Greedy gap clustering of sorted values: a new cluster starts whenever the
/// gap to the previous value exceeds `rel_tol * (max - min)`. Each cluster is
/// reported as (mean value, multiplicity).
pub fn cluster(values: &[f64], rel_tol: f64) -> Vec<(f64, usize)> {
    let Some((&first, rest)) = values.split_first() else {
        return Vec::new();
    };
    let diameter = values[values.len() - 1] - first;
    let threshold = rel_tol * diameter;
    let mut out = Vec::new();
    let (mut sum, mut count, mut prev) = (first, 1usize, first);
    for &v in rest {
        if v - prev > threshold {
            out.push((sum / count as f64, count));
            sum = 0.0;
            count = 0;
        }
        sum += v;
        count += 1;
        prev = v;
    }
    out.push((sum / count as f64, count));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-10
    }

    #[test]
    fn identity_eigenvalues() {
        let s = eigenvalues_symmetric(&SymMatrix::identity(3), DEFAULT_TOLERANCE).unwrap();
        assert_eq!(s.eigenvalues, vec![1.0, 1.0, 1.0]);
        assert_eq!(s.sweeps, 0);
    }

    #[test]
    fn diagonal_eigenvalues_sorted() {
        let m = SymMatrix::from_row_major(2, vec![2.0, 0.0, 0.0, -1.0]).unwrap();
        let s = eigenvalues_symmetric(&m, DEFAULT_TOLERANCE).unwrap();
        assert_eq!(s.eigenvalues, vec![-1.0, 2.0]);
    }

    #[test]
    fn swap_matrix() {
        let m = SymMatrix::from_row_major(2, vec![0.0, 1.0, 1.0, 0.0]).unwrap();
        let s = eigenvalues_symmetric(&m, DEFAULT_TOLERANCE).unwrap();
        assert!(close(s.eigenvalues[0], -1.0) && close(s.eigenvalues[1], 1.0));
        assert!(close(trace_norm(&m, DEFAULT_TOLERANCE).unwrap(), 2.0));
    }

    #[test]
    fn trace_norms() {
        for n in 1..8 {
            assert!(close(
                trace_norm(&SymMatrix::identity(n), 1e-12).unwrap(),
                n as f64
            ));
            let ones = SymMatrix::from_fn(n, |_, _| 1.0).unwrap();
            assert!(close(trace_norm(&ones, 1e-12).unwrap(), n as f64));
        }
    }

    #[test]
    fn known_tridiagonal_spectrum() {
        // Path-graph Laplacian-like matrix: eigenvalues 2 - 2cos(kπ/(n+1)).
        let n = 12;
        let m = SymMatrix::from_fn(n, |r, c| match c - r {
            0 => 2.0,
            1 => -1.0,
            _ => 0.0,
        })
        .unwrap();
        let s = eigenvalues_symmetric(&m, 1e-14).unwrap();
        for (k, ev) in s.eigenvalues.iter().enumerate() {
            let exact = 2.0 - 2.0 * ((k + 1) as f64 * std::f64::consts::PI / (n + 1) as f64).cos();
            assert!((ev - exact).abs() < 1e-12, "{ev} vs {exact}");
        }
    }

    #[test]
    fn construction_errors() {
        assert_eq!(SymMatrix::from_row_major(0, vec![]), Err(NumLinError::Empty));
        assert!(matches!(
            SymMatrix::from_row_major(2, vec![1.0, 2.0, 3.0, 4.0]),
            Err(NumLinError::NotSymmetric { row: 0, col: 1 })
        ));
        assert!(matches!(
            SymMatrix::from_row_major(2, vec![1.0]),
            Err(NumLinError::Shape { .. })
        ));
        assert_eq!(
            SymMatrix::from_row_major(1, vec![f64::NAN]),
            Err(NumLinError::NonFinite)
        );
        assert_eq!(
            eigenvalues_symmetric(&SymMatrix::identity(2), 0.0),
            Err(NumLinError::BadTolerance)
        );
    }

    #[test]
    fn non_convergence_is_reported() {
        let m = SymMatrix::from_fn(6, |r, c| (r * 7 + c * 3) as f64).unwrap();
        match eigenvalues_symmetric_with(&m, 1e-14, 0) {
            Err(NumLinError::NoConvergence { sweeps: 0, residual }) => assert!(residual > 0.0),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn cluster_examples() {
        assert_eq!(cluster(&[1.0, 1.0, 1.0], 1e-8), vec![(1.0, 3)]);
        let c = cluster(&[0.0, 1e-15, 5.0], 1e-8);
        assert_eq!(c.len(), 2);
        assert_eq!(c[0].1, 2);
        assert!(c[0].0.abs() < 1e-14);
        assert_eq!(c[1], (5.0, 1));
        assert!(cluster(&[], 1e-8).is_empty());
    }

    fn arb_sym(n: usize) -> impl Strategy<Value = SymMatrix> {
        proptest::collection::vec(-5.0f64..5.0, n * n)
            .prop_map(move |v| SymMatrix::from_fn(n, |r, c| v[r * n + c]).unwrap())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn eigenvalue_sum_equals_trace(m in arb_sym(9)) {
            let s = eigenvalues_symmetric(&m, DEFAULT_TOLERANCE).unwrap();
            let scale = m.frobenius_norm().max(1.0);
            prop_assert!((s.sum() - m.trace()).abs() <= 1e-9 * scale);
            prop_assert!(s.residual <= DEFAULT_TOLERANCE);
        }

        #[test]
        fn trace_norm_dominates_trace(m in arb_sym(7)) {
            let tn = trace_norm(&m, DEFAULT_TOLERANCE).unwrap();
            prop_assert!(tn + 1e-9 >= m.trace().abs());
        }

        #[test]
        fn psd_trace_norm_equals_trace(v in proptest::collection::vec(-3.0f64..3.0, 24)) {
            // B Bᵀ with B of shape 6x4
            let gram = SymMatrix::from_fn(6, |r, c| (0..4).map(|k| v[r * 4 + k] * v[c * 4 + k]).sum()).unwrap();
            let tn = trace_norm(&gram, DEFAULT_TOLERANCE).unwrap();
            prop_assert!((tn - gram.trace()).abs() <= 1e-9 * gram.trace().max(1.0));
        }

        #[test]
        fn spectrum_invariant_under_permutation(
            m in arb_sym(8),
            perm in Just((0..8usize).collect::<Vec<_>>()).prop_shuffle(),
        ) {
            let a = eigenvalues_symmetric(&m, DEFAULT_TOLERANCE).unwrap();
            let b = eigenvalues_symmetric(&m.permuted(&perm), DEFAULT_TOLERANCE).unwrap();
            let scale = m.frobenius_norm().max(1.0);
            for (x, y) in a.eigenvalues.iter().zip(&b.eigenvalues) {
                prop_assert!((x - y).abs() <= 1e-9 * scale);
            }
        }
    }
}
