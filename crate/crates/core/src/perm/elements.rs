use std::collections::HashMap;

use super::{PermError, PermGroup, Permutation};

/// Default cap on the number of enumerated elements.
pub const DEFAULT_ELEMENT_CAP: u64 = 20_000;

/// A group together with its elements in canonical order.
///
/// Element `0` is the identity; the remaining elements follow in
/// lexicographic order of their image lists. Every index-based API in this
/// crate refers to this ordering.
#[derive(Clone, Debug)]
pub struct GroupElements {
    group: PermGroup,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
    inverse: Vec<usize>,
}

impl GroupElements {
    pub fn new(group: &PermGroup, cap: u64) -> Result<Self, PermError> {
        let elements = group.enumerate_elements(cap)?;
        let index: HashMap<Permutation, usize> =
            elements.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
        let inverse = elements.iter().map(|e| index[&e.inverse()]).collect();
        Ok(Self {
            group: group.clone(),
            elements,
            index,
            inverse,
        })
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Permutation {
        &self.elements[i]
    }

    pub fn index_of(&self, g: &Permutation) -> Option<usize> {
        self.index.get(g).copied()
    }

    pub fn inverse(&self, i: usize) -> usize {
        self.inverse[i]
    }

    /// Index of `elements[a] ∘ elements[b]`.
    pub fn mul(&self, a: usize, b: usize) -> usize {
        let product = self.elements[a].compose_unchecked(&self.elements[b]);
        self.index[&product]
    }

    /// Full multiplication table, row-major: `table[a * n + b] = mul(a, b)`.
    pub fn multiplication_table(&self) -> Vec<u32> {
        let n = self.len();
        let mut table = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                table.push(self.mul(a, b) as u32);
            }
        }
        table
    }

    /// Least common multiple of the element orders.
    pub fn exponent(&self) -> u64 {
        use num_integer::Integer;
        self.elements.iter().fold(1, |acc, e| acc.lcm(&e.order()))
    }

    pub fn conjugacy_classes(&self) -> ConjugacyClasses {
        ConjugacyClasses::new(self)
    }
}

/// Conjugacy classes of an enumerated group.
///
/// Class `0` is the class of the identity; the remaining classes are sorted
/// by size and then by representative. Each representative is the smallest
/// element of its class in canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyClasses {
    representatives: Vec<usize>,
    sizes: Vec<usize>,
    class_of: Vec<usize>,
    inverse_class: Vec<usize>,
}

impl ConjugacyClasses {
    fn new(g: &GroupElements) -> Self {
        let n = g.len();
        let gens: Vec<&Permutation> = g
            .group()
            .generators()
            .iter()
            .filter(|s| !s.is_identity())
            .collect();
        let gen_inverses: Vec<Permutation> = gens.iter().map(|s| s.inverse()).collect();

        let mut orbit_of = vec![usize::MAX; n];
        let mut orbits: Vec<Vec<usize>> = Vec::new();
        for start in 0..n {
            if orbit_of[start] != usize::MAX {
                continue;
            }
            let id = orbits.len();
            orbit_of[start] = id;
            let mut orbit = vec![start];
            let mut next = 0;
            while next < orbit.len() {
                let x = g.element(orbit[next]);
                next += 1;
                for (s, s_inv) in gens.iter().zip(&gen_inverses) {
                    let y = s.compose_unchecked(x).compose_unchecked(s_inv);
                    let yi = g.index_of(&y).expect("group closed under conjugation");
                    if orbit_of[yi] == usize::MAX {
                        orbit_of[yi] = id;
                        orbit.push(yi);
                    }
                }
            }
            orbits.push(orbit);
        }

        // Orbits were discovered in order of their smallest element.
        let mut order: Vec<usize> = (0..orbits.len()).collect();
        order.sort_by_key(|&o| (orbits[o].len(), orbits[o].iter().min().copied()));
        let mut relabel = vec![0; orbits.len()];
        for (new, &old) in order.iter().enumerate() {
            relabel[old] = new;
        }
        let class_of: Vec<usize> = orbit_of.iter().map(|&o| relabel[o]).collect();
        let representatives: Vec<usize> = order
            .iter()
            .map(|&o| *orbits[o].iter().min().expect("nonempty orbit"))
            .collect();
        let sizes: Vec<usize> = order.iter().map(|&o| orbits[o].len()).collect();
        let inverse_class = representatives.iter().map(|&r| class_of[g.inverse(r)]).collect();
        Self {
            representatives,
            sizes,
            class_of,
            inverse_class,
        }
    }

    pub fn len(&self) -> usize {
        self.sizes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sizes.is_empty()
    }

    /// Element index of each class representative.
    pub fn representatives(&self) -> &[usize] {
        &self.representatives
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn class_of(&self, element: usize) -> usize {
        self.class_of[element]
    }

    pub fn class_map(&self) -> &[usize] {
        &self.class_of
    }

    /// Index of the class containing the inverses of class `i`.
    pub fn inverse_class(&self, i: usize) -> usize {
        self.inverse_class[i]
    }

    /// Element indices belonging to class `i`, ascending.
    pub fn members(&self, i: usize) -> Vec<usize> {
        self.class_of
            .iter()
            .enumerate()
            .filter(|&(_, &c)| c == i)
            .map(|(e, _)| e)
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn elems(gens: &[&str], n: usize) -> GroupElements {
        let g = PermGroup::new(gens.iter().map(|s| Permutation::parse(s, n).unwrap()).collect()).unwrap();
        GroupElements::new(&g, DEFAULT_ELEMENT_CAP).unwrap()
    }

    /// Conjugacy classes by brute force: {g x g⁻¹ : g ∈ G} for every x.
    fn brute_force_class_sizes(g: &GroupElements) -> Vec<usize> {
        let mut seen = vec![false; g.len()];
        let mut sizes = Vec::new();
        for x in 0..g.len() {
            if seen[x] {
                continue;
            }
            let mut class: Vec<usize> = (0..g.len()).map(|h| g.mul(g.mul(h, x), g.inverse(h))).collect();
            class.sort();
            class.dedup();
            for &c in &class {
                seen[c] = true;
            }
            sizes.push(class.len());
        }
        sizes.sort();
        sizes
    }

    #[test]
    fn s3_classes() {
        let s3 = elems(&["(1 2 3)", "(1 2)"], 3);
        assert_eq!(s3.len(), 6);
        assert!(s3.element(0).is_identity());
        let classes = s3.conjugacy_classes();
        assert_eq!(brute_force_class_sizes(&s3), vec![1, 2, 3]);
        assert_eq!(classes.sizes(), &[1, 2, 3]);
        assert_eq!(classes.representatives()[0], 0);
    }

    #[test]
    fn a5_has_five_classes() {
        let a5 = elems(&["(1 2 3 4 5)", "(1 2 3)"], 5);
        let classes = a5.conjugacy_classes();
        assert_eq!(classes.len(), 5);
        assert_eq!(classes.sizes(), &[1, 12, 12, 15, 20]);
        assert_eq!(brute_force_class_sizes(&a5), vec![1, 12, 12, 15, 20]);
        assert_eq!(a5.exponent(), 30);
    }

    #[test]
    fn abelian_classes_are_singletons() {
        let c6 = elems(&["(1 2 3 4 5 6)"], 6);
        let classes = c6.conjugacy_classes();
        assert_eq!(classes.len(), 6);
        assert!(classes.sizes().iter().all(|&s| s == 1));
    }

    #[test]
    fn class_invariants() {
        let g = elems(&["(1 2 3 4)", "(1 2)"], 4);
        let classes = g.conjugacy_classes();
        assert_eq!(classes.sizes().iter().sum::<usize>(), g.len());
        for i in 0..classes.len() {
            assert_eq!(g.len() % classes.sizes()[i], 0);
            let j = classes.inverse_class(i);
            assert_eq!(classes.inverse_class(j), i);
            assert_eq!(classes.sizes()[j], classes.sizes()[i]);
            let members = classes.members(i);
            assert_eq!(members.len(), classes.sizes()[i]);
            assert_eq!(members[0], classes.representatives()[i]);
        }
    }

    #[test]
    fn multiplication_table_matches_mul() {
        let g = elems(&["(1 2 3)", "(1 2)"], 3);
        let t = g.multiplication_table();
        for a in 0..6 {
            assert_eq!(t[a * 6], a as u32);
            for b in 0..6 {
                assert_eq!(t[a * 6 + b] as usize, g.mul(a, b));
            }
            assert_eq!(g.mul(a, g.inverse(a)), 0);
        }
    }
}
