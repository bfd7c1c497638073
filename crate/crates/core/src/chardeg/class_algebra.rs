use crate::perm::{ConjugacyClasses, GroupElements};

/// Structure constants of the center of the group algebra in the basis of
/// class sums: `C_i · C_j = Σ_k a[i][j][k] · C_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassAlgebra {
    r: usize,
    constants: Vec<u64>,
    sizes: Vec<u64>,
    inverse_class: Vec<usize>,
}

impl ClassAlgebra {
    /// Counts, for each class `k`, the pairs `(x, y)` with `x·y = rep_k`,
    /// bucketed by the classes of `x` and `y`.
    pub fn new(g: &GroupElements, classes: &ConjugacyClasses) -> Self {
        let r = classes.len();
        let mut constants = vec![0u64; r * r * r];
        for (k, &rep) in classes.representatives().iter().enumerate() {
            for x in 0..g.len() {
                let y = g.mul(g.inverse(x), rep);
                let (i, j) = (classes.class_of(x), classes.class_of(y));
                constants[(i * r + j) * r + k] += 1;
            }
        }
        Self {
            r,
            constants,
            sizes: classes.sizes().iter().map(|&s| s as u64).collect(),
            inverse_class: (0..r).map(|i| classes.inverse_class(i)).collect(),
        }
    }

    pub fn class_count(&self) -> usize {
        self.r
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> u64 {
        self.constants[(i * self.r + j) * self.r + k]
    }

    pub fn sizes(&self) -> &[u64] {
        &self.sizes
    }

    pub fn inverse_class(&self, i: usize) -> usize {
        self.inverse_class[i]
    }

    pub fn group_order(&self) -> u64 {
        self.sizes.iter().sum()
    }

    /// Checks the unit, commutativity and class-size identities. Returns a
    /// description of the first violation.
    pub fn verify(&self) -> Result<(), String> {
        let r = self.r;
        for i in 0..r {
            for j in 0..r {
                let lhs: u64 = (0..r).map(|k| self.constant(i, j, k) * self.sizes[k]).sum();
                if lhs != self.sizes[i] * self.sizes[j] {
                    return Err(format!("size identity fails for classes ({i}, {j})"));
                }
                for k in 0..r {
                    if self.constant(i, j, k) != self.constant(j, i, k) {
                        return Err(format!("not commutative at ({i}, {j}, {k})"));
                    }
                    if i == 0 && self.constant(0, j, k) != u64::from(j == k) {
                        return Err(format!("identity class is not the unit at ({j}, {k})"));
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{PermGroup, Permutation, DEFAULT_ELEMENT_CAP};

    fn algebra(gens: &[&str], n: usize) -> (GroupElements, ConjugacyClasses, ClassAlgebra) {
        let g = PermGroup::new(gens.iter().map(|s| Permutation::parse(s, n).unwrap()).collect()).unwrap();
        let e = GroupElements::new(&g, DEFAULT_ELEMENT_CAP).unwrap();
        let c = e.conjugacy_classes();
        let a = ClassAlgebra::new(&e, &c);
        (e, c, a)
    }

    #[test]
    fn trivial_group() {
        let (_, _, a) = algebra(&[""], 1);
        assert_eq!(a.class_count(), 1);
        assert_eq!(a.constant(0, 0, 0), 1);
    }

    #[test]
    fn cyclic_two() {
        let (_, _, a) = algebra(&["(1 2)"], 2);
        assert_eq!(a.constant(1, 1, 0), 1);
        assert_eq!(a.constant(1, 1, 1), 0);
        a.verify().unwrap();
    }

    #[test]
    fn s3_matches_pair_counting() {
        let (e, c, a) = algebra(&["(1 2 3)", "(1 2)"], 3);
        a.verify().unwrap();
        // Brute force: count all pairs (x, y) in C_i × C_j by the class of xy,
        // then divide by |C_k|.
        let r = c.len();
        for i in 0..r {
            for j in 0..r {
                let mut counts = vec![0u64; r];
                for x in c.members(i) {
                    for y in c.members(j) {
                        counts[c.class_of(e.mul(x, y))] += 1;
                    }
                }
                for (k, &count) in counts.iter().enumerate() {
                    assert_eq!(count % c.sizes()[k] as u64, 0);
                    assert_eq!(a.constant(i, j, k), count / c.sizes()[k] as u64);
                }
            }
        }
    }

    #[test]
    fn a5_identities() {
        let (_, _, a) = algebra(&["(1 2 3 4 5)", "(1 2 3)"], 5);
        a.verify().unwrap();
        assert_eq!(a.group_order(), 60);
    }
}
