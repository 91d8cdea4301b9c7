use super::{Canonical, Graded};
use std::fmt;

/// Exponent vector `n = (n₁, …, n_d)` of the monomial `Xⁿ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(entries: Vec<u32>) -> Self {
        assert!(!entries.is_empty(), "a multi-index needs at least one entry");
        MultiIndex(entries)
    }

    pub fn zero(dim: usize) -> Self {
        MultiIndex(vec![0; dim])
    }

    /// The unit vector `eⁱ` (1-based `i`).
    pub fn unit_vector(dim: usize, i: usize) -> Self {
        let mut v = vec![0; dim];
        v[i - 1] = 1;
        MultiIndex(v)
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn add(&self, other: &Self) -> Self {
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// All `m ≤ n` componentwise.
    pub fn below(&self) -> Vec<MultiIndex> {
        let mut out = vec![Vec::new()];
        for &n in &self.0 {
            out = out
                .into_iter()
                .flat_map(|prefix: Vec<u32>| {
                    (0..=n).map(move |k| {
                        let mut p = prefix.clone();
                        p.push(k);
                        p
                    })
                })
                .collect();
        }
        out.into_iter().map(MultiIndex).collect()
    }

    pub fn sub(&self, other: &Self) -> Self {
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    /// All multi-indices of dimension `dim` with `|n| = grade`.
    pub fn all_of_grade(dim: usize, grade: usize) -> Vec<MultiIndex> {
        fn rec(dim: usize, left: u32, prefix: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
            if prefix.len() == dim - 1 {
                prefix.push(left);
                out.push(MultiIndex(prefix.clone()));
                prefix.pop();
                return;
            }
            for k in (0..=left).rev() {
                prefix.push(k);
                rec(dim, left - k, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        rec(dim, grade as u32, &mut Vec::new(), &mut out);
        out.sort();
        out
    }
}

impl Graded for MultiIndex {
    fn grade(&self) -> usize {
        self.0.iter().map(|&x| x as usize).sum()
    }
}

impl Canonical for MultiIndex {
    fn canonical(&self, _dim: usize) -> String {
        self.to_string()
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}
