//! Permutation groups: cycle notation, stabilizer chains, element tables,
//! conjugacy classes and subgroup enumeration.

mod elements;
mod group;
mod permutation;
mod subgroups;

pub use elements::{ConjugacyClasses, GroupElements, DEFAULT_ELEMENT_CAP};
pub use group::PermGroup;
pub use permutation::Permutation;
pub use subgroups::{
    enumerate_subgroups, minimal_abelian_index, ElementSet, SubgroupRecord, DEFAULT_SUBGROUP_CAP,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PermError {
    #[error("permutation degree must be at least 1")]
    ZeroDegree,
    #[error("point {point} is outside 1..={degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("point {0} appears more than once")]
    RepeatedPoint(usize),
    #[error("unbalanced parentheses")]
    Unbalanced,
    #[error("empty cycle")]
    EmptyCycle,
    #[error("unexpected token {0:?}")]
    InvalidToken(String),
    #[error("images do not form a bijection")]
    NotABijection,
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("a group needs at least one generator")]
    NoGenerators,
    #[error("{what} needs group order {order}, above the cap of {cap}")]
    CapExceeded {
        what: &'static str,
        order: String,
        cap: u64,
    },
}

impl PermError {
    pub fn is_cap_exceeded(&self) -> bool {
        matches!(self, PermError::CapExceeded { .. })
    }
}
