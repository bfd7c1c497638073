use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use super::{PermError, Permutation};

/// One level of a stabilizer chain.
#[derive(Clone, Debug)]
struct Level {
    base_point: usize,
    /// Strong generators fixing all earlier base points.
    generators: Vec<Permutation>,
    /// Orbit of `base_point` in discovery order.
    orbit: Vec<usize>,
    /// `transversal[x]` maps `base_point` to `x` for every `x` in the orbit.
    transversal: Vec<Option<Permutation>>,
}

impl Level {
    fn new(base_point: usize, degree: usize) -> Self {
        let mut level = Self {
            base_point,
            generators: Vec::new(),
            orbit: Vec::new(),
            transversal: vec![None; degree],
        };
        level.rebuild_orbit(degree);
        level
    }

    fn rebuild_orbit(&mut self, degree: usize) {
        self.transversal = vec![None; degree];
        self.transversal[self.base_point] = Some(Permutation::identity(degree));
        self.orbit = vec![self.base_point];
        let mut next = 0;
        while next < self.orbit.len() {
            let x = self.orbit[next];
            next += 1;
            for s in &self.generators {
                let y = s.apply(x);
                if self.transversal[y].is_none() {
                    let ux = self.transversal[x].as_ref().expect("orbit point");
                    self.transversal[y] = Some(s.compose_unchecked(ux));
                    self.orbit.push(y);
                }
            }
        }
    }

    fn add_generator(&mut self, g: Permutation, degree: usize) {
        self.generators.push(g);
        self.rebuild_orbit(degree);
    }
}

/// A finite permutation group with a base and strong generating set.
///
/// Built with deterministic Schreier–Sims: base points are always the
/// smallest point moved by the element that forces a new level.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    chain: Vec<Level>,
    order: BigUint,
}

impl PermGroup {
    pub fn new(generators: Vec<Permutation>) -> Result<Self, PermError> {
        let first = generators.first().ok_or(PermError::NoGenerators)?;
        let degree = first.degree();
        for g in &generators {
            if g.degree() != degree {
                return Err(PermError::DegreeMismatch(degree, g.degree()));
            }
        }
        let mut group = Self {
            degree,
            generators,
            chain: Vec::new(),
            order: BigUint::one(),
        };
        group.schreier_sims();
        group.order = group.chain.iter().map(|l| BigUint::from(l.orbit.len())).product();
        Ok(group)
    }

    /// The trivial group on `degree` points.
    pub fn trivial(degree: usize) -> Self {
        Self::new(vec![Permutation::identity(degree)]).expect("identity generator")
    }

    fn schreier_sims(&mut self) {
        let degree = self.degree;
        let nontrivial: Vec<Permutation> = self
            .generators
            .iter()
            .filter(|g| !g.is_identity())
            .cloned()
            .collect();

        // Initial base: every nontrivial generator must move some base point.
        let mut base: Vec<usize> = Vec::new();
        loop {
            let next = nontrivial
                .iter()
                .filter(|g| base.iter().all(|&b| g.apply(b) == b))
                .filter_map(|g| g.smallest_moved_point())
                .min();
            match next {
                Some(b) => base.push(b),
                None => break,
            }
        }
        self.chain = base.iter().map(|&b| Level::new(b, degree)).collect();
        for (i, level) in self.chain.iter_mut().enumerate() {
            level.generators = nontrivial
                .iter()
                .filter(|g| base[..i].iter().all(|&b| g.apply(b) == b))
                .cloned()
                .collect();
            level.rebuild_orbit(degree);
        }

        let mut i = self.chain.len();
        while i > 0 {
            let level = i - 1;
            match self.failing_schreier_generator(level) {
                Some((residue, stop)) => {
                    if stop == self.chain.len() {
                        let b = residue
                            .smallest_moved_point()
                            .expect("nontrivial residue moves a point");
                        self.chain.push(Level::new(b, degree));
                    }
                    for l in level + 1..=stop {
                        self.chain[l].add_generator(residue.clone(), degree);
                    }
                    i = stop + 1;
                }
                None => i -= 1,
            }
        }
    }

    /// Finds a Schreier generator of `level` that does not sift through the
    /// levels below it. Returns the residue and the level where sifting stopped.
    fn failing_schreier_generator(&self, level: usize) -> Option<(Permutation, usize)> {
        let lv = &self.chain[level];
        for &b in &lv.orbit {
            let ub = lv.transversal[b].as_ref().expect("orbit point");
            for s in &lv.generators {
                let sb = s.apply(b);
                let usb = lv.transversal[sb].as_ref().expect("orbit closed");
                let schreier = usb.inverse().compose_unchecked(&s.compose_unchecked(ub));
                let (residue, stop) = self.sift(schreier, level + 1);
                if !residue.is_identity() {
                    return Some((residue, stop));
                }
            }
        }
        None
    }

    /// Strips `g` through the chain starting at `from`. Returns the residue and
    /// the first level whose orbit does not contain the image of its base point
    /// (or the chain length when sifting runs to the end).
    fn sift(&self, mut g: Permutation, from: usize) -> (Permutation, usize) {
        for (l, level) in self.chain.iter().enumerate().skip(from) {
            let x = g.apply(level.base_point);
            match &level.transversal[x] {
                Some(u) => g = u.inverse().compose_unchecked(&g),
                None => return (g, l),
            }
        }
        let end = self.chain.len();
        (g, end)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn order(&self) -> &BigUint {
        &self.order
    }

    /// The order as a `u64`, when it fits.
    pub fn order_u64(&self) -> Option<u64> {
        self.order.to_u64()
    }

    pub fn base(&self) -> Vec<usize> {
        self.chain.iter().map(|l| l.base_point).collect()
    }

    /// Orbit sizes along the stabilizer chain.
    pub fn orbit_sizes(&self) -> Vec<usize> {
        self.chain.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn strong_generators(&self) -> Vec<Permutation> {
        let mut out: Vec<Permutation> = Vec::new();
        for level in &self.chain {
            for g in &level.generators {
                if !out.contains(g) {
                    out.push(g.clone());
                }
            }
        }
        out
    }

    /// Membership by sifting through the stabilizer chain.
    pub fn contains(&self, g: &Permutation) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let (residue, stop) = self.sift(g.clone(), 0);
        stop == self.chain.len() && residue.is_identity()
    }

    pub fn is_abelian(&self) -> bool {
        let gens = &self.generators;
        gens.iter().enumerate().all(|(i, a)| {
            gens[i + 1..]
                .iter()
                .all(|b| a.compose_unchecked(b) == b.compose_unchecked(a))
        })
    }

    pub fn is_trivial(&self) -> bool {
        self.chain.is_empty()
    }

    /// All elements, sorted lexicographically by image list, when the order
    /// does not exceed `cap`. The identity is always first.
    pub fn enumerate_elements(&self, cap: u64) -> Result<Vec<Permutation>, PermError> {
        match self.order_u64() {
            Some(n) if n <= cap => {}
            _ => {
                return Err(PermError::CapExceeded {
                    what: "element enumeration",
                    order: self.order.to_string(),
                    cap,
                })
            }
        }
        let mut elements = vec![Permutation::identity(self.degree)];
        // Every element factors uniquely as u_0 u_1 ... u_{k-1}, one coset
        // representative per level.
        for level in self.chain.iter().rev() {
            let mut next = Vec::with_capacity(elements.len() * level.orbit.len());
            for &x in &level.orbit {
                let u = level.transversal[x].as_ref().expect("orbit point");
                next.extend(elements.iter().map(|e| u.compose_unchecked(e)));
            }
            elements = next;
        }
        elements.sort_unstable();
        Ok(elements)
    }

    /// Commutator subgroup: normal closure of the generator commutators.
    pub fn commutator_subgroup(&self) -> PermGroup {
        let mut gens: Vec<Permutation> = Vec::new();
        for a in &self.generators {
            for b in &self.generators {
                let c = a.commutator(b).expect("equal degrees");
                if !c.is_identity() && !gens.contains(&c) {
                    gens.push(c);
                }
            }
        }
        if gens.is_empty() {
            return PermGroup::trivial(self.degree);
        }
        let mut sub = PermGroup::new(gens.clone()).expect("nonempty");
        loop {
            let missing = gens.iter().find_map(|n| {
                self.generators
                    .iter()
                    .map(|g| n.conjugate_by(g).expect("equal degrees"))
                    .find(|c| !sub.contains(c))
            });
            match missing {
                Some(c) => {
                    gens.push(c);
                    sub = PermGroup::new(gens.clone()).expect("nonempty");
                }
                None => return sub,
            }
        }
    }

    /// Direct product acting on the disjoint union of both point sets:
    /// `self` on the first `degree()` points, `other` on the rest.
    pub fn direct_product(&self, other: &PermGroup) -> PermGroup {
        let degree = self.degree + other.degree;
        let mut gens: Vec<Permutation> = self
            .generators
            .iter()
            .filter(|g| !g.is_identity())
            .map(|g| g.shifted(0, degree))
            .collect();
        gens.extend(
            other
                .generators
                .iter()
                .filter(|g| !g.is_identity())
                .map(|g| g.shifted(self.degree, degree)),
        );
        if gens.is_empty() {
            gens.push(Permutation::identity(degree));
        }
        PermGroup::new(gens).expect("nonempty generators of equal degree")
    }
}
