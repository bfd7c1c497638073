//! Arithmetic and linear algebra over a prime field GF(p), p < 2^32.

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Field {
    pub p: u64,
}

impl Field {
    pub fn new(p: u64) -> Self {
        debug_assert!((2..1 << 32).contains(&p));
        Self { p }
    }

    #[inline]
    pub fn add(self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }

    #[inline]
    pub fn sub(self, a: u64, b: u64) -> u64 {
        (a + self.p - b) % self.p
    }

    #[inline]
    pub fn mul(self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub fn pow(self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.p;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse of a nonzero element.
    pub fn inv(self, a: u64) -> u64 {
        assert!(!a.is_multiple_of(self.p), "zero has no inverse");
        self.pow(a, self.p - 2)
    }

    /// Basis of the nullspace of the `rows x cols` matrix `m` (row-major).
    pub fn nullspace(self, m: &[u64], rows: usize, cols: usize) -> Vec<Vec<u64>> {
        let mut a = m.to_vec();
        let mut pivot_cols = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(pr) = (r..rows).find(|&i| a[i * cols + c] != 0) else {
                continue;
            };
            for k in 0..cols {
                a.swap(pr * cols + k, r * cols + k);
            }
            let inv = self.inv(a[r * cols + c]);
            for k in 0..cols {
                a[r * cols + k] = self.mul(a[r * cols + k], inv);
            }
            for i in 0..rows {
                let f = a[i * cols + c];
                if i != r && f != 0 {
                    for k in 0..cols {
                        let v = self.mul(f, a[r * cols + k]);
                        a[i * cols + k] = self.sub(a[i * cols + k], v);
                    }
                }
            }
            pivot_cols.push(c);
            r += 1;
        }
        let free: Vec<usize> = (0..cols).filter(|c| !pivot_cols.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![0; cols];
                v[f] = 1;
                for (row, &pc) in pivot_cols.iter().enumerate() {
                    v[pc] = self.sub(0, a[row * cols + f]);
                }
                v
            })
            .collect()
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverses() {
        let f = Field::new(61);
        for a in 1..61 {
            assert_eq!(f.mul(a, f.inv(a)), 1);
        }
    }

    #[test]
    fn nullspace_of_rank_one() {
        let f = Field::new(7);
        // [1 2 3; 2 4 6] has rank 1 over any field
        let ns = f.nullspace(&[1, 2, 3, 2, 4, 6], 2, 3);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert_eq!(f.add(f.add(v[0], f.mul(2, v[1])), f.mul(3, v[2])), 0);
        }
    }

    #[test]
    fn primes() {
        let small: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(small, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }
}
