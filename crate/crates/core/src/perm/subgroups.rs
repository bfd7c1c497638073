use std::collections::{HashSet, VecDeque};

use super::{GroupElements, PermError};

/// Default cap on the group order for exhaustive subgroup enumeration.
pub const DEFAULT_SUBGROUP_CAP: u64 = 120;

/// Fixed-size bitset over canonical element indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElementSet {
    words: Vec<u64>,
    len: usize,
}

impl ElementSet {
    pub fn empty(len: usize) -> Self {
        Self {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    pub fn insert(&mut self, i: usize) -> bool {
        let (w, b) = (i / 64, i % 64);
        let fresh = self.words[w] & (1 << b) == 0;
        self.words[w] |= 1 << b;
        fresh
    }

    pub fn contains(&self, i: usize) -> bool {
        self.words[i / 64] & (1 << (i % 64)) != 0
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.contains(i))
    }
}

/// A subgroup of an enumerated group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupRecord {
    pub elements: ElementSet,
    pub order: u64,
    pub index: u64,
    pub abelian: bool,
}

impl SubgroupRecord {
    /// Direct check that the element set is a subgroup of `g`.
    pub fn is_closed(&self, g: &GroupElements) -> bool {
        if !self.elements.contains(0) {
            return false;
        }
        let members: Vec<usize> = self.elements.iter().collect();
        members.iter().all(|&a| {
            self.elements.contains(g.inverse(a))
                && members.iter().all(|&b| self.elements.contains(g.mul(a, b)))
        })
    }
}

/// Subgroup generated by `gens`, by breadth-first closure over a multiplication table.
fn closure(table: &[u32], n: usize, gens: &[usize]) -> ElementSet {
    let mut set = ElementSet::empty(n);
    set.insert(0);
    let mut queue = VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        for &s in gens {
            let y = table[x * n + s] as usize;
            if set.insert(y) {
                queue.push_back(y);
            }
        }
    }
    set
}

fn is_abelian_set(table: &[u32], n: usize, set: &ElementSet) -> bool {
    let members: Vec<usize> = set.iter().collect();
    members.iter().enumerate().all(|(k, &a)| {
        members[k + 1..]
            .iter()
            .all(|&b| table[a * n + b] == table[b * n + a])
    })
}

/// Every subgroup of `g` (not up to conjugacy).
///
/// Starts from the cyclic subgroups and closes joins breadth-first until no new
/// element set appears. Results are sorted by order, then by element set.
pub fn enumerate_subgroups(g: &GroupElements, cap: u64) -> Result<Vec<SubgroupRecord>, PermError> {
    let n = g.len();
    if n as u64 > cap {
        return Err(PermError::CapExceeded {
            what: "subgroup enumeration",
            order: n.to_string(),
            cap,
        });
    }
    let table = g.multiplication_table();

    // Each subgroup keeps a generator list so joins are cheap to close.
    let mut seen: HashSet<ElementSet> = HashSet::new();
    let mut found: Vec<(ElementSet, Vec<usize>)> = Vec::new();
    let mut cyclic: Vec<(ElementSet, usize)> = Vec::new();
    for x in 0..n {
        let set = closure(&table, n, &[x]);
        if seen.insert(set.clone()) {
            cyclic.push((set.clone(), x));
            found.push((set, vec![x]));
        }
    }

    let mut frontier: Vec<usize> = (0..found.len()).collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for &h in &frontier {
            for (c_set, c_gen) in &cyclic {
                if c_set.is_subset(&found[h].0) {
                    continue;
                }
                let mut gens = found[h].1.clone();
                gens.push(*c_gen);
                let joined = closure(&table, n, &gens);
                if seen.insert(joined.clone()) {
                    next.push(found.len());
                    found.push((joined, gens));
                }
            }
        }
        frontier = next;
    }

    let mut records: Vec<SubgroupRecord> = found
        .into_iter()
        .map(|(set, _)| {
            let order = set.count() as u64;
            SubgroupRecord {
                abelian: is_abelian_set(&table, n, &set),
                index: n as u64 / order,
                order,
                elements: set,
            }
        })
        .collect();
    records.sort_by(|a, b| a.order.cmp(&b.order).then_with(|| a.elements.cmp(&b.elements)));
    Ok(records)
}

/// Smallest index of an abelian subgroup.
pub fn minimal_abelian_index(g: &GroupElements, cap: u64) -> Result<u64, PermError> {
    Ok(enumerate_subgroups(g, cap)?
        .iter()
        .filter(|s| s.abelian)
        .map(|s| s.index)
        .min()
        .expect("the trivial subgroup is abelian"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{PermGroup, Permutation, DEFAULT_ELEMENT_CAP};

    fn elems(gens: &[&str], n: usize) -> GroupElements {
        let g = PermGroup::new(gens.iter().map(|s| Permutation::parse(s, n).unwrap()).collect()).unwrap();
        GroupElements::new(&g, DEFAULT_ELEMENT_CAP).unwrap()
    }

    /// Subgroups by testing every subset for closure. Only for tiny groups.
    fn brute_force_subgroup_orders(g: &GroupElements) -> Vec<u64> {
        let n = g.len();
        let mut orders = Vec::new();
        for mask in 0u64..(1 << n) {
            if mask & 1 == 0 {
                continue;
            }
            let has = |i: usize| mask & (1 << i) != 0;
            let closed = (0..n)
                .filter(|&a| has(a))
                .all(|a| (0..n).filter(|&b| has(b)).all(|b| has(g.mul(a, b))));
            if closed {
                orders.push(mask.count_ones() as u64);
            }
        }
        orders.sort();
        orders
    }

    /// Subgroups as the distinct closures of all pairs ⟨a, b⟩; exhaustive for
    /// groups whose subgroups are all 2-generated.
    fn two_generated_subgroup_count(g: &GroupElements) -> usize {
        let table = g.multiplication_table();
        let n = g.len();
        let mut seen = HashSet::new();
        for a in 0..n {
            for b in a..n {
                seen.insert(closure(&table, n, &[a, b]));
            }
        }
        seen.len()
    }

    fn orders(records: &[SubgroupRecord]) -> Vec<u64> {
        records.iter().map(|r| r.order).collect()
    }

    #[test]
    fn cyclic_six() {
        let c6 = elems(&["(1 2 3 4 5 6)"], 6);
        let subs = enumerate_subgroups(&c6, DEFAULT_SUBGROUP_CAP).unwrap();
        assert_eq!(orders(&subs), vec![1, 2, 3, 6]);
        assert_eq!(minimal_abelian_index(&c6, DEFAULT_SUBGROUP_CAP).unwrap(), 1);
    }

    #[test]
    fn s3_subgroups() {
        let s3 = elems(&["(1 2 3)", "(1 2)"], 3);
        let subs = enumerate_subgroups(&s3, DEFAULT_SUBGROUP_CAP).unwrap();
        assert_eq!(brute_force_subgroup_orders(&s3), vec![1, 2, 2, 2, 3, 6]);
        assert_eq!(orders(&subs), vec![1, 2, 2, 2, 3, 6]);
        assert_eq!(minimal_abelian_index(&s3, DEFAULT_SUBGROUP_CAP).unwrap(), 2);
        for s in &subs {
            assert!(s.is_closed(&s3));
            assert_eq!(s.order * s.index, 6);
        }
    }

    #[test]
    fn d4_subgroups_match_brute_force() {
        let d4 = elems(&["(1 2 3 4)", "(1 3)"], 4);
        let subs = enumerate_subgroups(&d4, DEFAULT_SUBGROUP_CAP).unwrap();
        assert_eq!(orders(&subs), brute_force_subgroup_orders(&d4));
        assert_eq!(subs.len(), 10);
    }

    #[test]
    fn a5_subgroups() {
        let a5 = elems(&["(1 2 3 4 5)", "(1 2 3)"], 5);
        let subs = enumerate_subgroups(&a5, DEFAULT_SUBGROUP_CAP).unwrap();
        assert_eq!(two_generated_subgroup_count(&a5), 59);
        assert_eq!(subs.len(), 59);
        assert!(subs.iter().all(|s| s.is_closed(&a5)));
        assert_eq!(minimal_abelian_index(&a5, DEFAULT_SUBGROUP_CAP).unwrap(), 12);
    }

    #[test]
    fn s4_subgroup_count() {
        let s4 = elems(&["(1 2 3 4)", "(1 2)"], 4);
        let subs = enumerate_subgroups(&s4, DEFAULT_SUBGROUP_CAP).unwrap();
        assert_eq!(two_generated_subgroup_count(&s4), 30);
        assert_eq!(subs.len(), 30);
    }

    #[test]
    fn cap_is_enforced() {
        let a5 = elems(&["(1 2 3 4 5)", "(1 2 3)"], 5);
        assert!(matches!(
            enumerate_subgroups(&a5, 59),
            Err(PermError::CapExceeded { .. })
        ));
    }

    #[test]
    fn element_set_ops() {
        let mut a = ElementSet::empty(130);
        assert!(a.insert(129));
        assert!(!a.insert(129));
        a.insert(3);
        assert_eq!(a.count(), 2);
        assert_eq!(a.iter().collect::<Vec<_>>(), vec![3, 129]);
        let mut b = a.clone();
        b.insert(64);
        assert!(a.is_subset(&b));
        assert!(!b.is_subset(&a));
    }
}
