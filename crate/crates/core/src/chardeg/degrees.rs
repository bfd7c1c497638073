use super::ChardegError;

/// The multiset of irreducible character degrees of a finite group, sorted ascending.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DegreeVector {
    degrees: Vec<u64>,
    group_order: u64,
}

impl DegreeVector {
    /// Validates `Σ d² = |G|` and `d | |G|` for every entry.
    pub fn new(mut degrees: Vec<u64>, group_order: u64) -> Result<Self, ChardegError> {
        if degrees.is_empty() {
            return Err(ChardegError::InvalidDegrees("empty degree list".into()));
        }
        degrees.sort_unstable();
        if degrees[0] == 0 {
            return Err(ChardegError::InvalidDegrees("zero degree".into()));
        }
        let sum_sq: u64 = degrees.iter().map(|d| d * d).sum();
        if sum_sq != group_order {
            return Err(ChardegError::InvalidDegrees(format!(
                "sum of squared degrees is {sum_sq}, group order is {group_order}"
            )));
        }
        if let Some(d) = degrees.iter().find(|&&d| !group_order.is_multiple_of(d)) {
            return Err(ChardegError::InvalidDegrees(format!(
                "degree {d} does not divide {group_order}"
            )));
        }
        Ok(Self { degrees, group_order })
    }

    /// Checks the invariants that need the group: one degree per conjugacy
    /// class, and as many linear characters as the abelianization has elements.
    pub fn check_group(&self, class_count: usize, abelianization_order: u64) -> Result<(), ChardegError> {
        if self.degrees.len() != class_count {
            return Err(ChardegError::InvalidDegrees(format!(
                "{} degrees for {class_count} conjugacy classes",
                self.degrees.len()
            )));
        }
        if self.linear_count() as u64 != abelianization_order {
            return Err(ChardegError::InvalidDegrees(format!(
                "{} linear characters but [G:G'] = {abelianization_order}",
                self.linear_count()
            )));
        }
        Ok(())
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    pub fn group_order(&self) -> u64 {
        self.group_order
    }

    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }

    pub fn max_degree(&self) -> u64 {
        *self.degrees.last().expect("nonempty")
    }

    pub fn linear_count(&self) -> usize {
        self.degrees.iter().take_while(|&&d| d == 1).count()
    }

    /// Degrees of `G × H`: all pairwise products.
    pub fn product(&self, other: &Self) -> Self {
        let degrees = self
            .degrees
            .iter()
            .flat_map(|&a| other.degrees.iter().map(move |&b| a * b))
            .collect();
        Self::new(degrees, self.group_order * other.group_order)
            .expect("products of valid degree vectors are valid")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validates_sum_of_squares() {
        assert!(DegreeVector::new(vec![5, 1, 3, 4, 3], 60).is_ok());
        assert_eq!(
            DegreeVector::new(vec![5, 1, 3, 4, 3], 60).unwrap().degrees(),
            &[1, 3, 3, 4, 5]
        );
        assert!(DegreeVector::new(vec![1, 1, 2], 7).is_err());
        assert!(DegreeVector::new(vec![], 1).is_err());
        assert!(DegreeVector::new(vec![0, 1], 1).is_err());
        // 1 + 1 + 9 = 11 but 3 does not divide 11
        assert!(DegreeVector::new(vec![1, 1, 3], 11).is_err());
    }

    #[test]
    fn group_checks() {
        let s3 = DegreeVector::new(vec![1, 1, 2], 6).unwrap();
        assert!(s3.check_group(3, 2).is_ok());
        assert!(s3.check_group(2, 2).is_err());
        assert!(s3.check_group(3, 1).is_err());
        assert_eq!(s3.max_degree(), 2);
        assert_eq!(s3.linear_count(), 2);
    }

    #[test]
    fn products() {
        let s3 = DegreeVector::new(vec![1, 1, 2], 6).unwrap();
        let triv = DegreeVector::new(vec![1], 1).unwrap();
        assert_eq!(triv.product(&s3), s3);
        assert_eq!(s3.product(&s3).degrees(), &[1, 1, 1, 1, 2, 2, 2, 2, 4]);
        assert_eq!(s3.product(&s3).group_order(), 36);
    }
}
