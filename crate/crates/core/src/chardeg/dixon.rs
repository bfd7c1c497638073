//! Central characters over GF(p) by simultaneous eigenvectors of the class
//! multiplication matrices, and degree recovery from them.

use super::gfp::{is_prime, Field};
use super::{ChardegError, ClassAlgebra, DegreeVector};

/// Smallest prime `p > order` with `p ≡ 1 (mod exponent)`.
pub fn choose_prime(exponent: u64, order: u64) -> u64 {
    next_admissible_prime(exponent, order, order)
}

/// Smallest prime `p > max(order, after)` with `p ≡ 1 (mod exponent)`.
pub fn next_admissible_prime(exponent: u64, order: u64, after: u64) -> u64 {
    let floor = order.max(after);
    // first candidate of the form k·exponent + 1 above floor
    let mut p = (floor / exponent) * exponent + 1;
    while p <= floor {
        p += exponent;
    }
    while !is_prime(p) {
        p += exponent;
    }
    p
}

/// Values of every central character on every class sum, reduced mod `prime`.
///
/// Row `χ` is the common eigenvector of all class matrices, normalized so the
/// identity-class entry is 1. Rows are sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralCharacters {
    prime: u64,
    table: Vec<Vec<u64>>,
}

impl CentralCharacters {
    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.table
    }
}

/// `M_j` with `(M_j)[i][k] = a[j][i][k]`, row-major.
fn class_matrix(ca: &ClassAlgebra, j: usize, f: Field) -> Vec<u64> {
    let r = ca.class_count();
    let mut m = vec![0; r * r];
    for i in 0..r {
        for k in 0..r {
            m[i * r + k] = ca.constant(j, i, k) % f.p;
        }
    }
    m
}

/// Splits the subspace spanned by `basis` into eigenspaces of `m`.
fn split(m: &[u64], r: usize, basis: &[Vec<u64>], f: Field) -> Option<Vec<Vec<Vec<u64>>>> {
    let d = basis.len();
    // images of basis vectors under m
    let images: Vec<Vec<u64>> = basis
        .iter()
        .map(|v| {
            (0..r)
                .map(|i| (0..r).fold(0, |acc, k| f.add(acc, f.mul(m[i * r + k], v[k]))))
                .collect()
        })
        .collect();
    let mut pieces = Vec::new();
    let mut found = 0;
    for lambda in 0..f.p {
        // columns: (m - λ) b_t
        let mut mat = vec![0; r * d];
        for (t, (b, mb)) in basis.iter().zip(&images).enumerate() {
            for i in 0..r {
                mat[i * d + t] = f.sub(mb[i], f.mul(lambda, b[i]));
            }
        }
        let null = f.nullspace(&mat, r, d);
        if null.is_empty() {
            continue;
        }
        found += null.len();
        let piece = null
            .iter()
            .map(|c| {
                (0..r)
                    .map(|i| {
                        basis
                            .iter()
                            .zip(c)
                            .fold(0, |acc, (b, &ct)| f.add(acc, f.mul(ct, b[i])))
                    })
                    .collect()
            })
            .collect();
        pieces.push(piece);
        if found == d {
            return Some(pieces);
        }
    }
    None
}

/// Common eigenvectors of the class matrices by iterative subspace splitting.
pub fn central_characters(ca: &ClassAlgebra, prime: u64) -> Result<CentralCharacters, ChardegError> {
    let f = Field::new(prime);
    let r = ca.class_count();
    let identity: Vec<Vec<u64>> = (0..r)
        .map(|i| (0..r).map(|k| u64::from(i == k)).collect())
        .collect();
    let mut spaces = vec![identity];
    for j in 1..r {
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
        let m = class_matrix(ca, j, f);
        let mut next = Vec::new();
        for space in spaces {
            if space.len() == 1 {
                next.push(space);
                continue;
            }
            let pieces =
                split(&m, r, &space, f).ok_or(ChardegError::NotDiagonalizable { class: j, prime })?;
            next.extend(pieces);
        }
        spaces = next;
    }
    if spaces.iter().any(|s| s.len() != 1) {
        return Err(ChardegError::SplittingIncomplete { prime });
    }
    let mut table = Vec::with_capacity(r);
    for space in spaces {
        let v = &space[0];
        if v[0] == 0 {
            return Err(ChardegError::SplittingIncomplete { prime });
        }
        let scale = f.inv(v[0]);
        table.push(v.iter().map(|&x| f.mul(x, scale)).collect::<Vec<u64>>());
    }
    table.sort();
    if table.windows(2).any(|w| w[0] == w[1]) {
        return Err(ChardegError::SplittingIncomplete { prime });
    }
    Ok(CentralCharacters { prime, table })
}

/// Recovers `d²` from each central character as `|G| / Σ_i ω_i ω_{i'} / |C_i|`
/// in GF(p); since `p > |G| ≥ d²` the residue is `d²` itself.
pub fn degrees_from_central_characters(
    cc: &CentralCharacters,
    ca: &ClassAlgebra,
    group_order: u64,
) -> Result<DegreeVector, ChardegError> {
    let f = Field::new(cc.prime);
    let r = ca.class_count();
    let size_inv: Vec<u64> = ca.sizes().iter().map(|&s| f.inv(s)).collect();
    let mut degrees = Vec::with_capacity(r);
    for row in &cc.table {
        let s = (0..r).fold(0, |acc, i| {
            let term = f.mul(f.mul(row[i], row[ca.inverse_class(i)]), size_inv[i]);
            f.add(acc, term)
        });
        if s == 0 {
            return Err(ChardegError::NotASquare { residue: 0 });
        }
        let d2 = f.mul(group_order % f.p, f.inv(s));
        let d = d2.isqrt();
        if d * d != d2 {
            return Err(ChardegError::NotASquare { residue: d2 });
        }
        degrees.push(d);
    }
    DegreeVector::new(degrees, group_order)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_choice() {
        assert_eq!(choose_prime(6, 6), 7);
        assert_eq!(choose_prime(30, 60), 61);
        assert_eq!(choose_prime(1, 1), 2);
        assert_eq!(choose_prime(12, 24), 37);
        assert_eq!(next_admissible_prime(6, 6, 7), 13);
        assert_eq!(next_admissible_prime(30, 60, 61), 151);
    }

    /// Brute force version of the prime rule.
    #[test]
    fn prime_choice_matches_linear_scan() {
        for exponent in 1..40u64 {
            for order in [exponent, 2 * exponent, 5 * exponent] {
                let expected = (order + 1..)
                    .find(|&p| is_prime(p) && p % exponent == 1 % exponent)
                    .unwrap();
                assert_eq!(choose_prime(exponent, order), expected);
            }
        }
    }
}
