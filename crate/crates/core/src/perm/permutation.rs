use std::fmt;

use num_integer::Integer;

use super::PermError;

/// A permutation of the points `0..n`, stored as its image list.
///
/// Composition is right-to-left: [`Permutation::compose`]`(p, q)` applies `q`
/// first and then `p`, so `p.compose(&q).apply(i) == p.apply(q.apply(i))`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Self {
            images: (0..degree).collect(),
        }
    }

    /// Builds a permutation from its images, checking that they form a bijection.
    pub fn from_images(images: Vec<usize>) -> Result<Self, PermError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(PermError::NotABijection);
            }
            seen[x] = true;
        }
        Ok(Self { images })
    }

    /// Product of disjoint cycles, given with 0-based points.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self, PermError> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut used = vec![false; degree];
        for cycle in cycles {
            if cycle.is_empty() {
                return Err(PermError::EmptyCycle);
            }
            for &p in cycle {
                if p >= degree {
                    return Err(PermError::PointOutOfRange { point: p + 1, degree });
                }
                if used[p] {
                    return Err(PermError::RepeatedPoint(p + 1));
                }
                used[p] = true;
            }
            for (k, &p) in cycle.iter().enumerate() {
                images[p] = cycle[(k + 1) % cycle.len()];
            }
        }
        Ok(Self { images })
    }

    /// Parses cycle notation with 1-based points, e.g. `"(1 2 3)(4 5)"`.
    ///
    /// Commas are accepted as separators inside a cycle. Points not mentioned
    /// are fixed; the empty string and `()` are the identity.
    pub fn parse(text: &str, degree: usize) -> Result<Self, PermError> {
        if degree == 0 {
            return Err(PermError::ZeroDegree);
        }
        let mut cycles = Vec::new();
        let mut current: Option<Vec<usize>> = None;
        let mut chars = text.char_indices().peekable();
        while let Some((pos, c)) = chars.next() {
            match c {
                '(' => {
                    if current.is_some() {
                        return Err(PermError::Unbalanced);
                    }
                    current = Some(Vec::new());
                }
                ')' => match current.take() {
                    Some(cycle) if cycle.is_empty() => {}
                    Some(cycle) => cycles.push(cycle),
                    None => return Err(PermError::Unbalanced),
                },
                c if c.is_whitespace() || c == ',' => {}
                c if c.is_ascii_digit() => {
                    let mut end = pos + c.len_utf8();
                    while let Some(&(p, d)) = chars.peek() {
                        if !d.is_ascii_digit() {
                            break;
                        }
                        end = p + d.len_utf8();
                        chars.next();
                    }
                    let cycle = current.as_mut().ok_or(PermError::Unbalanced)?;
                    let point: usize = text[pos..end]
                        .parse()
                        .map_err(|_| PermError::InvalidToken(text[pos..end].to_string()))?;
                    if point == 0 || point > degree {
                        return Err(PermError::PointOutOfRange { point, degree });
                    }
                    cycle.push(point - 1);
                }
                other => return Err(PermError::InvalidToken(other.to_string())),
            }
        }
        if current.is_some() {
            return Err(PermError::Unbalanced);
        }
        Self::from_cycles(degree, &cycles)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// `self ∘ other`: apply `other` first, then `self`.
    pub fn compose(&self, other: &Self) -> Result<Self, PermError> {
        if self.degree() != other.degree() {
            return Err(PermError::DegreeMismatch(self.degree(), other.degree()));
        }
        Ok(self.compose_unchecked(other))
    }

    /// Same as [`compose`](Self::compose) for callers that already know the degrees agree.
    pub(crate) fn compose_unchecked(&self, other: &Self) -> Self {
        debug_assert_eq!(self.degree(), other.degree());
        Self {
            images: other.images.iter().map(|&x| self.images[x]).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        let mut images = vec![0; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x] = i;
        }
        Self { images }
    }

    /// `self⁻¹ other⁻¹ self other`.
    pub fn commutator(&self, other: &Self) -> Result<Self, PermError> {
        let a = self.inverse().compose(&other.inverse())?;
        Ok(a.compose_unchecked(self).compose_unchecked(other))
    }

    /// `other ∘ self ∘ other⁻¹`.
    pub fn conjugate_by(&self, other: &Self) -> Result<Self, PermError> {
        Ok(other.compose(self)?.compose_unchecked(&other.inverse()))
    }

    pub fn smallest_moved_point(&self) -> Option<usize> {
        self.images.iter().enumerate().position(|(i, &x)| i != x)
    }

    /// Disjoint cycles of length at least two, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.images[start] == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.images[start];
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.images[x];
            }
            out.push(cycle);
        }
        out
    }

    /// Element order: lcm of the cycle lengths.
    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1u64, |acc, c| acc.lcm(&(c.len() as u64)))
    }

    /// Embeds into a larger degree by shifting every point by `offset` and
    /// fixing the remaining points.
    pub fn shifted(&self, offset: usize, degree: usize) -> Self {
        assert!(offset + self.degree() <= degree);
        let mut images: Vec<usize> = (0..degree).collect();
        for (i, &x) in self.images.iter().enumerate() {
            images[i + offset] = x + offset;
        }
        Self { images }
    }

    /// Restriction to the points `offset..offset + len`, which must be invariant.
    pub fn restricted(&self, offset: usize, len: usize) -> Self {
        Self {
            images: self.images[offset..offset + len]
                .iter()
                .map(|&x| x - offset)
                .collect(),
        }
    }
}

/// Cycle notation with 1-based points; the identity is written `()`.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for cycle in cycles {
            f.write_str("(")?;
            for (k, p) in cycle.iter().enumerate() {
                if k > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{}", p + 1)?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({self})")
    }
}
