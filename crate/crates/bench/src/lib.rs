//! Group fixtures shared by the benchmarks.

use amconst_core::{PermGroup, Permutation};

fn cycle(points: &[usize], degree: usize) -> Permutation {
    Permutation::from_cycles(degree, &[points.to_vec()]).expect("valid cycle")
}

/// `S_n` from an `n`-cycle and a transposition; `n ≥ 2`.
pub fn symmetric(n: usize) -> PermGroup {
    let all: Vec<usize> = (0..n).collect();
    PermGroup::new(vec![cycle(&all, n), cycle(&[0, 1], n)]).expect("generators share a degree")
}

/// `A_n` from the 3-cycles `(1 2 k)`; `n ≥ 3`.
pub fn alternating(n: usize) -> PermGroup {
    PermGroup::new((2..n).map(|k| cycle(&[0, 1, k], n)).collect()).expect("generators share a degree")
}

/// Mathieu group `M11` on 11 points.
pub fn mathieu11() -> PermGroup {
    let a = Permutation::parse("(1 2 3 4 5 6 7 8 9 10 11)", 11).expect("cycle");
    let b = Permutation::parse("(3 7 11 8)(4 10 5 6)", 11).expect("cycle");
    PermGroup::new(vec![a, b]).expect("generators share a degree")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixture_orders() {
        assert_eq!(symmetric(5).order_u64(), Some(120));
        assert_eq!(alternating(5).order_u64(), Some(60));
        assert_eq!(mathieu11().order_u64(), Some(7920));
    }
}
