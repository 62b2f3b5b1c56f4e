//! Target groups for cocycles.

use crate::lazy::Label;
use std::fmt;

/// A group with exact multiplication, inversion and equality.
pub trait Group: Clone + Send + Sync {
    type Elem: Label;

    fn identity(&self) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn kind(&self) -> GroupKind;

    /// Every element, for finite groups.
    fn elements(&self) -> Option<Vec<Self::Elem>> {
        None
    }

    fn product<'a, I: IntoIterator<Item = &'a Self::Elem>>(&self, it: I) -> Self::Elem
    where
        Self::Elem: 'a,
    {
        it.into_iter().fold(self.identity(), |acc, x| self.mul(&acc, x))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupKind {
    FiniteTable { order: usize },
    Free { rank: usize },
    Abelian { moduli: Vec<i64> },
    /// Presented group with an exact equality oracle (normal forms).
    Presented { name: String },
}

/// Multiplication table on 0..n with 0 the identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    table: Vec<Vec<usize>>,
    inverse: Vec<usize>,
}

impl FiniteGroup {
    /// Checks associativity, identity 0 and inverses.
    pub fn from_table(table: Vec<Vec<usize>>) -> Option<Self> {
        let n = table.len();
        if n == 0 || table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return None;
        }
        for a in 0..n {
            if table[0][a] != a || table[a][0] != a {
                return None;
            }
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return None;
                    }
                }
            }
        }
        let mut inverse = vec![0; n];
        for a in 0..n {
            inverse[a] = (0..n).find(|&b| table[a][b] == 0)?;
        }
        Some(FiniteGroup { table, inverse })
    }

    pub fn cyclic(n: usize) -> Self {
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        FiniteGroup::from_table(table).expect("cyclic group")
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }
}

impl Group for FiniteGroup {
    type Elem = usize;

    fn identity(&self) -> usize {
        0
    }

    fn mul(&self, a: &usize, b: &usize) -> usize {
        self.table[*a][*b]
    }

    fn inv(&self, a: &usize) -> usize {
        self.inverse[*a]
    }

    fn kind(&self) -> GroupKind {
        GroupKind::FiniteTable { order: self.order() }
    }

    fn elements(&self) -> Option<Vec<usize>> {
        Some((0..self.order()).collect())
    }
}

/// Reduced word in a free group; letter `+i`/`-i` is t_i^{±1}, i ≥ 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FreeWord(pub Vec<i32>);

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|&x| if x > 0 { format!("t{x}") } else { format!("t{}^-1", -x) })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl FreeWord {
    pub fn generator(i: usize) -> Self {
        FreeWord(vec![i as i32])
    }

    /// Free reduction of an arbitrary letter sequence.
    pub fn reduce(letters: impl IntoIterator<Item = i32>) -> Self {
        let mut out: Vec<i32> = Vec::new();
        for x in letters {
            if out.last() == Some(&-x) {
                out.pop();
            } else {
                out.push(x);
            }
        }
        FreeWord(out)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FreeGroup {
    pub rank: usize,
}

impl Group for FreeGroup {
    type Elem = FreeWord;

    fn identity(&self) -> FreeWord {
        FreeWord::default()
    }

    fn mul(&self, a: &FreeWord, b: &FreeWord) -> FreeWord {
        FreeWord::reduce(a.0.iter().chain(&b.0).copied())
    }

    fn inv(&self, a: &FreeWord) -> FreeWord {
        FreeWord(a.0.iter().rev().map(|x| -x).collect())
    }

    fn kind(&self) -> GroupKind {
        GroupKind::Free { rank: self.rank }
    }
}

/// Element of ℤ/m₁ ⊕ … ⊕ ℤ/m_r, modulus 0 meaning ℤ.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct AbelianElem(pub Vec<i64>);

impl fmt::Display for AbelianElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianGroup {
    pub moduli: Vec<i64>,
}

impl AbelianGroup {
    pub fn free(rank: usize) -> Self {
        AbelianGroup { moduli: vec![0; rank] }
    }

    pub fn reduce(&self, mut v: Vec<i64>) -> AbelianElem {
        for (x, &m) in v.iter_mut().zip(&self.moduli) {
            if m > 0 {
                *x = x.rem_euclid(m);
            }
        }
        AbelianElem(v)
    }

    pub fn element(&self, v: Vec<i64>) -> AbelianElem {
        self.reduce(v)
    }
}

impl Group for AbelianGroup {
    type Elem = AbelianElem;

    fn identity(&self) -> AbelianElem {
        AbelianElem(vec![0; self.moduli.len()])
    }

    fn mul(&self, a: &AbelianElem, b: &AbelianElem) -> AbelianElem {
        self.reduce(a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect())
    }

    fn inv(&self, a: &AbelianElem) -> AbelianElem {
        self.reduce(a.0.iter().map(|x| -x).collect())
    }

    fn kind(&self) -> GroupKind {
        GroupKind::Abelian { moduli: self.moduli.clone() }
    }

    fn elements(&self) -> Option<Vec<AbelianElem>> {
        if self.moduli.contains(&0) {
            return None;
        }
        let mut out = vec![Vec::new()];
        for &m in &self.moduli {
            out = out
                .into_iter()
                .flat_map(|p: Vec<i64>| {
                    (0..m).map(move |x| {
                        let mut q = p.clone();
                        q.push(x);
                        q
                    })
                })
                .collect();
        }
        Some(out.into_iter().map(AbelianElem).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_reduction() {
        let g = FreeGroup { rank: 2 };
        let a = FreeWord(vec![1, 2]);
        assert_eq!(g.mul(&a, &g.inv(&a)), g.identity());
        assert_eq!(FreeWord::reduce([1, -1, 2, 2, -2]).to_string(), "t2");
    }

    #[test]
    fn finite_tables() {
        let z3 = FiniteGroup::cyclic(3);
        assert_eq!(z3.mul(&2, &2), 1);
        assert_eq!(z3.inv(&1), 2);
        assert!(FiniteGroup::from_table(vec![vec![0, 1], vec![1, 1]]).is_none());
    }

    #[test]
    fn abelian_with_torsion() {
        let g = AbelianGroup { moduli: vec![0, 2] };
        let a = g.element(vec![3, 1]);
        assert_eq!(g.mul(&a, &a), AbelianElem(vec![6, 0]));
        assert_eq!(g.inv(&a), AbelianElem(vec![-3, 1]));
        assert_eq!(AbelianGroup { moduli: vec![2, 3] }.elements().unwrap().len(), 6);
    }
}
