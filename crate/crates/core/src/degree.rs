use serde::{Deserialize, Serialize};
use std::fmt;

/// An element of ℕ^k stored densely.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Degree(pub Vec<u32>);

impl Degree {
    pub fn zero(k: usize) -> Self {
        Degree(vec![0; k])
    }

    /// The generator ε_i, with `i` zero-based.
    pub fn unit(k: usize, i: usize) -> Self {
        let mut d = vec![0; k];
        d[i] = 1;
        Degree(d)
    }

    pub fn ones(k: usize) -> Self {
        Degree(vec![1; k])
    }

    pub fn diagonal(k: usize, n: u32) -> Self {
        Degree(vec![n; k])
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    /// Componentwise order.
    pub fn le(&self, other: &Degree) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn add(&self, other: &Degree) -> Degree {
        Degree(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn checked_sub(&self, other: &Degree) -> Option<Degree> {
        if !other.le(self) {
            return None;
        }
        Some(Degree(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()))
    }

    /// Color sequence (zero-based) of the canonical word of this degree.
    pub fn color_sequence(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(c, &n)| std::iter::repeat_n(c, n as usize))
            .collect()
    }

    /// All degrees n with 0 ≤ n ≤ self, in lexicographic order.
    pub fn below(&self) -> Vec<Degree> {
        let mut out = vec![Vec::new()];
        for &b in &self.0 {
            out = out
                .into_iter()
                .flat_map(|prefix: Vec<u32>| {
                    (0..=b).map(move |x| {
                        let mut p = prefix.clone();
                        p.push(x);
                        p
                    })
                })
                .collect();
        }
        out.into_iter().map(Degree).collect()
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_and_arithmetic() {
        let a = Degree(vec![1, 2]);
        let b = Degree(vec![2, 2]);
        assert!(a.le(&b));
        assert!(!b.le(&a));
        assert_eq!(b.checked_sub(&a), Some(Degree(vec![1, 0])));
        assert_eq!(a.checked_sub(&b), None);
        assert_eq!(a.add(&b), Degree(vec![3, 4]));
        assert_eq!(a.color_sequence(), vec![0, 1, 1]);
        assert_eq!(Degree(vec![1, 1]).below().len(), 4);
        assert_eq!(a.to_string(), "(1,2)");
    }
}
