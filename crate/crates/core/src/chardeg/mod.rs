//! Irreducible character degrees of a finite group.
//!
//! The exact route works in the class algebra over a prime field (Dixon's
//! method); [`regular_degree_oracle`] recovers the same multiset from a
//! floating-point spectrum and serves as an independent check.

mod class_algebra;
mod degrees;
mod dixon;
pub(crate) mod gfp;
mod oracle;

pub use class_algebra::ClassAlgebra;
pub use degrees::DegreeVector;
pub use dixon::{
    central_characters, choose_prime, degrees_from_central_characters, next_admissible_prime,
    CentralCharacters,
};
pub use oracle::{regular_degree_oracle, DegreeOracle, DEFAULT_ORACLE_CAP};

use crate::numlin::NumLinError;
use crate::perm::{ConjugacyClasses, GroupElements};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ChardegError {
    #[error("invalid degree vector: {0}")]
    InvalidDegrees(String),
    #[error("class matrix {class} is not diagonalizable over GF({prime})")]
    NotDiagonalizable { class: usize, prime: u64 },
    #[error("class matrices did not split into one-dimensional eigenspaces over GF({prime})")]
    SplittingIncomplete { prime: u64 },
    #[error("recovered squared degree {residue} is not a perfect square")]
    NotASquare { residue: u64 },
    #[error("degree oracle needs group order {order}, above the cap of {cap}")]
    OracleCapExceeded { order: u64, cap: u64 },
    #[error("degree oracle failed to separate eigenvalues after {attempts} attempts")]
    OracleFailed { attempts: u64 },
    #[error(transparent)]
    NumLin(#[from] NumLinError),
}

impl ChardegError {
    pub fn is_cap_exceeded(&self) -> bool {
        matches!(self, ChardegError::OracleCapExceeded { .. })
    }
}

/// The prime used for `g`: smallest `p > |G|` with `p ≡ 1 (mod exp(G))`.
pub fn choose_prime_for(g: &GroupElements) -> u64 {
    choose_prime(g.exponent(), g.len() as u64)
}

/// Character degrees by the exact GF(p) route with the given prime.
pub fn character_degrees_with_prime(
    g: &GroupElements,
    classes: &ConjugacyClasses,
    prime: u64,
) -> Result<DegreeVector, ChardegError> {
    let algebra = ClassAlgebra::new(g, classes);
    let cc = central_characters(&algebra, prime)?;
    degrees_from_central_characters(&cc, &algebra, g.len() as u64)
}

/// Character degrees by the exact GF(p) route, validated against the class
/// count and the order of the abelianization.
pub fn character_degrees(
    g: &GroupElements,
    classes: &ConjugacyClasses,
) -> Result<DegreeVector, ChardegError> {
    let dv = character_degrees_with_prime(g, classes, choose_prime_for(g))?;
    let derived = g.group().commutator_subgroup();
    let abelianization = g.len() as u64 / derived.order_u64().expect("subgroup of an enumerable group");
    dv.check_group(classes.len(), abelianization)?;
    Ok(dv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{PermGroup, Permutation, DEFAULT_ELEMENT_CAP};

    fn elems(gens: &[&str], n: usize) -> GroupElements {
        let g = PermGroup::new(gens.iter().map(|s| Permutation::parse(s, n).unwrap()).collect()).unwrap();
        GroupElements::new(&g, DEFAULT_ELEMENT_CAP).unwrap()
    }

    fn q8() -> GroupElements {
        // regular representation of the quaternion group
        elems(&["(1 2 4 7)(3 6 8 5)", "(1 3 4 8)(2 5 7 6)"], 8)
    }

    #[test]
    fn cyclic_two_central_characters() {
        let g = elems(&["(1 2)"], 2);
        let c = g.conjugacy_classes();
        let ca = ClassAlgebra::new(&g, &c);
        let cc = central_characters(&ca, 3).unwrap();
        assert_eq!(cc.rows(), &[vec![1, 1], vec![1, 2]]);
    }

    #[test]
    fn abelian_groups_have_linear_characters() {
        let g = elems(&["(1 2 3 4 5 6)", "(7 8)"], 8);
        let c = g.conjugacy_classes();
        let dv = character_degrees(&g, &c).unwrap();
        assert_eq!(dv.degrees(), &[1; 12]);
        let ca = ClassAlgebra::new(&g, &c);
        let p = choose_prime_for(&g);
        let cc = central_characters(&ca, p).unwrap();
        assert_eq!(cc.rows().len(), 12);
        let f = gfp::Field::new(p);
        for row in cc.rows() {
            for &w in row {
                assert_eq!(f.pow(w, 6), 1, "character values are roots of unity");
            }
        }
    }

    #[test]
    fn s3_degrees() {
        let g = elems(&["(1 2 3)", "(1 2)"], 3);
        let c = g.conjugacy_classes();
        assert_eq!(choose_prime_for(&g), 7);
        let ca = ClassAlgebra::new(&g, &c);
        assert_eq!(central_characters(&ca, 7).unwrap().rows().len(), 3);
        assert_eq!(character_degrees(&g, &c).unwrap().degrees(), &[1, 1, 2]);
    }

    #[test]
    fn a5_degrees() {
        let g = elems(&["(1 2 3 4 5)", "(1 2 3)"], 5);
        let c = g.conjugacy_classes();
        assert_eq!(choose_prime_for(&g), 61);
        assert_eq!(character_degrees(&g, &c).unwrap().degrees(), &[1, 3, 3, 4, 5]);
    }

    #[test]
    fn degrees_do_not_depend_on_prime() {
        for g in [
            elems(&["(1 2 3 4 5)", "(1 2 3)"], 5),
            elems(&["(1 2 3 4)", "(1 2)"], 4),
            q8(),
        ] {
            let c = g.conjugacy_classes();
            let p = choose_prime_for(&g);
            let q = next_admissible_prime(g.exponent(), g.len() as u64, p);
            assert!(q > p);
            assert_eq!(
                character_degrees_with_prime(&g, &c, p).unwrap(),
                character_degrees_with_prime(&g, &c, q).unwrap()
            );
        }
    }

    #[test]
    fn oracle_matches_exact_route() {
        let cases = [
            (elems(&["(1 2 3 4)"], 4), vec![1, 1, 1, 1], vec![2, 2, 2, 2]),
            (elems(&["(1 2 3)", "(1 2)"], 3), vec![1, 1, 2], vec![2, 2, 8]),
            (q8(), vec![1, 1, 1, 1, 2], vec![2, 2, 2, 2, 8]),
        ];
        for (g, degrees, mults) in cases {
            let c = g.conjugacy_classes();
            let oracle = regular_degree_oracle(&g, &c, 7, DEFAULT_ORACLE_CAP).unwrap();
            assert_eq!(oracle.degrees.degrees(), degrees.as_slice());
            assert_eq!(oracle.multiplicities, mults);
            assert_eq!(character_degrees(&g, &c).unwrap(), oracle.degrees);
        }
    }

    #[test]
    fn oracle_a5_multiplicities() {
        let g = elems(&["(1 2 3 4 5)", "(1 2 3)"], 5);
        let c = g.conjugacy_classes();
        let oracle = regular_degree_oracle(&g, &c, 1, DEFAULT_ORACLE_CAP).unwrap();
        assert_eq!(oracle.multiplicities, vec![2, 18, 18, 32, 50]);
        assert_eq!(oracle.degrees.degrees(), &[1, 3, 3, 4, 5]);
    }

    #[test]
    fn oracle_cap() {
        let g = elems(&["(1 2 3 4 5)", "(1 2)"], 5);
        let c = g.conjugacy_classes();
        assert!(regular_degree_oracle(&g, &c, 1, DEFAULT_ORACLE_CAP)
            .unwrap_err()
            .is_cap_exceeded());
    }

    #[test]
    fn trivial_group() {
        let g = elems(&[""], 1);
        let c = g.conjugacy_classes();
        assert_eq!(choose_prime_for(&g), 2);
        assert_eq!(character_degrees(&g, &c).unwrap().degrees(), &[1]);
        let oracle = regular_degree_oracle(&g, &c, 0, DEFAULT_ORACLE_CAP).unwrap();
        assert_eq!(oracle.degrees.degrees(), &[1]);
    }
}
