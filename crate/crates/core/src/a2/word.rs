//! Words in the generators a_x^{±1}, normal forms and the shape δ.

use super::plane::Triella;
use crate::constructions::group::{Group, GroupKind};
use crate::degree::Degree;
use crate::error::{Error, Result};
use serde::Serialize;
use std::fmt;
use std::sync::Arc;

/// a_x or a_x⁻¹.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Letter {
    pub point: u8,
    pub inverse: bool,
}

impl Letter {
    pub fn pos(x: usize) -> Self {
        Letter { point: x as u8, inverse: false }
    }

    pub fn neg(x: usize) -> Self {
        Letter { point: x as u8, inverse: true }
    }

    pub fn inv(self) -> Self {
        Letter { point: self.point, inverse: !self.inverse }
    }

    fn x(self) -> usize {
        self.point as usize
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inverse {
            write!(f, "a{}^-1", self.point)
        } else {
            write!(f, "a{}", self.point)
        }
    }
}

/// A word g₁⋯g_k; as a group element it is kept in right normal form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize)]
pub struct SignedWord(pub Vec<Letter>);

impl fmt::Display for SignedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl SignedWord {
    /// Tokens `aN` and `aN^-1` separated by whitespace; `1` or nothing is empty.
    pub fn parse(s: &str) -> Result<Self> {
        let mut out = Vec::new();
        for tok in s.split_whitespace() {
            if tok == "1" {
                continue;
            }
            let (body, inverse) = match tok.strip_suffix("^-1") {
                Some(b) => (b, true),
                None => (tok, false),
            };
            let point = body
                .strip_prefix('a')
                .and_then(|d| d.parse::<u8>().ok())
                .ok_or_else(|| Error::MalformedInput(format!("bad letter {tok:?}")))?;
            out.push(Letter { point, inverse });
        }
        Ok(SignedWord(out))
    }

    /// Label without spaces, used as a vertex or edge id.
    pub fn compact(&self) -> String {
        if self.0.is_empty() {
            return "1".into();
        }
        self.0.iter().map(ToString::to_string).collect()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Formal inverse: reversed with signs flipped.
    pub fn formal_inverse(&self) -> Self {
        SignedWord(self.0.iter().rev().map(|l| l.inv()).collect())
    }

    pub fn concat(&self, other: &SignedWord) -> Self {
        SignedWord(self.0.iter().chain(&other.0).copied().collect())
    }

    /// (number of a_x, number of a_x⁻¹).
    pub fn letter_counts(&self) -> (u32, u32) {
        let neg = self.0.iter().filter(|l| l.inverse).count() as u32;
        (self.0.len() as u32 - neg, neg)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Side {
    /// Positive letters first.
    Right,
    /// Inverse letters first.
    Left,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Rule {
    Cancel,
    PositiveContraction,
    NegativeContraction,
    Swap,
}

/// One rewrite at position `pos`, with the (length, inversions) measure before and after.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Rewrite {
    pub rule: Rule,
    pub pos: usize,
    pub before: (usize, usize),
    pub after: (usize, usize),
}

impl Triella {
    /// Right normal form by appending letters one at a time to a normal form.
    pub fn normalize(&self, w: &SignedWord) -> SignedWord {
        self.normalize_letters(&w.0)
    }

    pub fn normalize_letters(&self, w: &[Letter]) -> SignedWord {
        let mut out: Vec<Letter> = Vec::with_capacity(w.len());
        self.extend_normal(&mut out, w);
        SignedWord(out)
    }

    /// Multiply the right normal form `out` by `w` in place.
    pub fn extend_normal(&self, out: &mut Vec<Letter>, w: &[Letter]) {
        let mut pending: Vec<Letter> = Vec::with_capacity(4);
        for &l in w {
            pending.push(l);
            while let Some(x) = pending.pop() {
                self.push_right(out, x, &mut pending);
            }
        }
    }

    fn push_right(&self, out: &mut Vec<Letter>, x: Letter, pending: &mut Vec<Letter>) {
        let Some(&l) = out.last() else {
            out.push(x);
            return;
        };
        match (l.inverse, x.inverse) {
            (true, false) => {
                out.pop();
                if l.point != x.point {
                    let (s, t) = self.right_swap(l.x(), x.x());
                    pending.push(Letter::neg(t));
                    pending.push(Letter::pos(s));
                }
            }
            (false, false) => {
                if self.in_lambda(l.x(), x.x()) {
                    out.pop();
                    pending.push(Letter::neg(self.third(l.x(), x.x()).expect("T1")));
                } else {
                    out.push(x);
                }
            }
            (true, true) => {
                // a_y⁻¹ a_x⁻¹ = a_z for (x, y, z) ∈ T
                if self.in_lambda(x.x(), l.x()) {
                    out.pop();
                    pending.push(Letter::pos(self.third(x.x(), l.x()).expect("T1")));
                } else {
                    out.push(x);
                }
            }
            (false, true) => {
                if l.point == x.point {
                    out.pop();
                } else {
                    out.push(x);
                }
            }
        }
    }

    /// δ(w).
    pub fn shape(&self, w: &SignedWord) -> Degree {
        let (m, n) = self.normalize(w).letter_counts();
        Degree(vec![m, n])
    }

    /// Normal form on either side by explicit leftmost rewriting.
    pub fn normalize_side(&self, w: &SignedWord, side: Side) -> SignedWord {
        match side {
            Side::Right => self.normalize(w),
            Side::Left => self.rewrite(w, Side::Left).0,
        }
    }

    /// Rewrite the leftmost redex until none is left, recording each step.
    pub fn rewrite(&self, w: &SignedWord, side: Side) -> (SignedWord, Vec<Rewrite>) {
        let mut word = w.0.clone();
        let mut trace = Vec::new();
        'outer: loop {
            for i in 0..word.len().saturating_sub(1) {
                if let Some((rule, rep)) = self.redex(word[i], word[i + 1], side) {
                    let before = measure(&word, side);
                    word.splice(i..i + 2, rep);
                    trace.push(Rewrite { rule, pos: i, before, after: measure(&word, side) });
                    continue 'outer;
                }
            }
            return (SignedWord(word), trace);
        }
    }

    fn redex(&self, a: Letter, b: Letter, side: Side) -> Option<(Rule, Vec<Letter>)> {
        if a.point == b.point && a.inverse != b.inverse {
            return Some((Rule::Cancel, vec![]));
        }
        match (a.inverse, b.inverse) {
            (false, false) if self.in_lambda(a.x(), b.x()) => {
                Some((Rule::PositiveContraction, vec![Letter::neg(self.third(a.x(), b.x())?)]))
            }
            (true, true) if self.in_lambda(b.x(), a.x()) => {
                Some((Rule::NegativeContraction, vec![Letter::pos(self.third(b.x(), a.x())?)]))
            }
            (true, false) if side == Side::Right => {
                let (s, t) = self.right_swap(a.x(), b.x());
                Some((Rule::Swap, vec![Letter::pos(s), Letter::neg(t)]))
            }
            (false, true) if side == Side::Left => {
                let (s, t) = self.left_swap(a.x(), b.x());
                Some((Rule::Swap, vec![Letter::neg(s), Letter::pos(t)]))
            }
            _ => None,
        }
    }

    /// Conditions (a)–(c) of the right or left normal form.
    pub fn is_normal(&self, w: &SignedWord, side: Side) -> bool {
        w.0.windows(2).all(|p| self.redex(p[0], p[1], side).is_none())
    }

    pub fn word_from(&self, s: &str) -> Result<SignedWord> {
        let w = SignedWord::parse(s)?;
        if let Some(l) = w.0.iter().find(|l| l.x() >= self.points()) {
            return Err(Error::MalformedInput(format!("letter {l} is not a point of the plane")));
        }
        Ok(w)
    }
}

/// (length, letters out of order): positive after inverse for the right form.
fn measure(w: &[Letter], side: Side) -> (usize, usize) {
    let mut seen_late = 0;
    let mut inversions = 0;
    for l in w {
        let early = match side {
            Side::Right => !l.inverse,
            Side::Left => l.inverse,
        };
        if early {
            inversions += seen_late;
        } else {
            seen_late += 1;
        }
    }
    (w.len(), inversions)
}

/// Γ_T with elements stored in right normal form.
#[derive(Debug, Clone)]
pub struct A2Group {
    pub triella: Arc<Triella>,
}

impl A2Group {
    pub fn new(t: Arc<Triella>) -> Self {
        A2Group { triella: t }
    }

    pub fn elem(&self, s: &str) -> Result<SignedWord> {
        Ok(self.triella.normalize(&self.triella.word_from(s)?))
    }

    pub fn generator(&self, x: usize) -> SignedWord {
        SignedWord(vec![Letter::pos(x)])
    }

    pub fn shape(&self, w: &SignedWord) -> Degree {
        self.triella.shape(w)
    }

    pub fn equal(&self, a: &SignedWord, b: &SignedWord) -> bool {
        self.triella.normalize(a) == self.triella.normalize(b)
    }

    /// Unique h, k with δ(h) = m, δ(k) = n and w = hk, when δ(w) = m + n.
    ///
    /// Letters of h are peeled off the left of w one at a time: a_x when
    /// δ(a_x⁻¹w) drops by (1,0), a_x⁻¹ when δ(a_x w) drops by (0,1).
    pub fn unique_factorize(&self, w: &SignedWord, m: &Degree, n: &Degree) -> Result<(SignedWord, SignedWord)> {
        let t = &self.triella;
        let total = self.shape(w);
        if total != m.add(n) {
            return Err(Error::ShapeMismatch(format!("δ({w}) = {total:?} is not {m:?} + {n:?}")));
        }
        let mut rest = t.normalize(w);
        let mut h = Vec::new();
        let peels = std::iter::repeat_n(false, m.0[0] as usize).chain(std::iter::repeat_n(true, m.0[1] as usize));
        for inverse in peels {
            let cur = self.shape(&rest);
            let target = if inverse { Degree(vec![cur.0[0], cur.0[1] - 1]) } else { Degree(vec![cur.0[0] - 1, cur.0[1]]) };
            let found = (0..t.points()).find_map(|x| {
                let letter = Letter { point: x as u8, inverse };
                let mut word = vec![letter.inv()];
                word.extend(&rest.0);
                let next = t.normalize(&SignedWord(word));
                (self.shape(&next) == target).then_some((letter, next))
            });
            let (letter, next) = found.ok_or_else(|| Error::ShapeMismatch(format!("no letter peels off {rest}")))?;
            h.push(letter);
            rest = next;
        }
        let h = t.normalize(&SignedWord(h));
        if self.shape(&h) != *m || self.shape(&rest) != *n {
            return Err(Error::ShapeMismatch(format!("peeling {w} gave {h} · {rest}")));
        }
        Ok((h, rest))
    }

    /// A random element of shape exactly (m, n): letters drawn one at a time
    /// among those allowed by the normal-form conditions.
    pub fn random_element<R: rand::Rng>(&self, rng: &mut R, m: usize, n: usize) -> SignedWord {
        let t = &self.triella;
        let p = t.points();
        loop {
            let mut pos: Vec<Letter> = Vec::with_capacity(m);
            for _ in 0..m {
                let prev = pos.last().map(|l| l.x());
                let choices: Vec<usize> = (0..p).filter(|&x| prev.is_none_or(|a| !t.in_lambda(a, x))).collect();
                pos.push(Letter::pos(choices[rng.gen_range(0..choices.len())]));
            }
            let mut neg: Vec<Letter> = Vec::with_capacity(n);
            for _ in 0..n {
                let next = neg.last().map(|l| l.x());
                let choices: Vec<usize> = (0..p).filter(|&y| next.is_none_or(|b| !t.in_lambda(b, y))).collect();
                neg.push(Letter::neg(choices[rng.gen_range(0..choices.len())]));
            }
            neg.reverse();
            if let (Some(x), Some(y)) = (pos.last(), neg.first()) {
                if x.point == y.point {
                    continue;
                }
            }
            pos.extend(neg);
            return SignedWord(pos);
        }
    }

    /// a = s(w), b = r(w), c, d with w = bd = ca, δ(a) = δ(b) = 𝟏.
    pub fn unit_maps(&self, w: &SignedWord) -> Result<UnitMaps> {
        let delta = self.shape(w);
        let one = Degree::ones(2);
        let rest = delta.checked_sub(&one).ok_or_else(|| Error::ShapeTooSmall(format!("δ({w}) = {delta:?}")))?;
        let (c_part, s_unit) = self.unique_factorize(w, &rest, &one)?;
        let (r_unit, d_part) = self.unique_factorize(w, &one, &rest)?;
        Ok(UnitMaps { s_unit, r_unit, c_part, d_part })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UnitMaps {
    pub s_unit: SignedWord,
    pub r_unit: SignedWord,
    pub c_part: SignedWord,
    pub d_part: SignedWord,
}

impl Group for A2Group {
    type Elem = SignedWord;

    fn identity(&self) -> SignedWord {
        SignedWord::default()
    }

    fn mul(&self, a: &SignedWord, b: &SignedWord) -> SignedWord {
        self.triella.normalize(&a.concat(b))
    }

    fn inv(&self, a: &SignedWord) -> SignedWord {
        self.triella.normalize(&a.formal_inverse())
    }

    fn kind(&self) -> GroupKind {
        GroupKind::Presented { name: format!("Γ_{}", self.triella.name) }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;
    use crate::a2::plane::Triella;

    fn a1() -> A2Group {
        A2Group::new(Arc::new(Triella::preset("A1").unwrap()))
    }

    fn w(g: &A2Group, s: &str) -> SignedWord {
        g.triella.word_from(s).unwrap()
    }

    #[test]
    fn worked_normal_forms() {
        let g = a1();
        let t = &g.triella;
        assert_eq!(t.normalize(&w(&g, "a0 a4^-1 a6")).to_string(), "a3^-1 a0^-1");
        assert_eq!(t.shape(&w(&g, "a0 a4^-1 a6")), Degree(vec![0, 2]));
        assert_eq!(t.normalize(&w(&g, "a1 a2")).to_string(), "a4^-1");
        assert_eq!(t.shape(&w(&g, "a1 a2")), Degree(vec![0, 1]));
        assert_eq!(t.normalize(&w(&g, "a0^-1 a1")).to_string(), "a2 a5^-1");
    }

    #[test]
    fn swap_agrees_with_brute_force() {
        let g = a1();
        let t = &g.triella;
        for x in 0..7 {
            for y in 0..7 {
                if x == y {
                    continue;
                }
                // a_x a_s = a_y a_t with s ≠ t, checked through contractions only
                let hits: Vec<(usize, usize)> = (0..7)
                    .flat_map(|s| (0..7).map(move |t| (s, t)))
                    .filter(|&(s, tt)| {
                        s != tt && g.equal(&SignedWord(vec![Letter::pos(x), Letter::pos(s)]), &SignedWord(vec![Letter::pos(y), Letter::pos(tt)]))
                    })
                    .collect();
                assert_eq!(hits, vec![t.right_swap(x, y)], "x={x} y={y}");
            }
        }
    }

    #[test]
    fn group_operations() {
        let g = a1();
        assert_eq!(g.mul(&g.generator(0), &g.generator(1)).to_string(), "a3^-1");
        let u = g.elem("a3^-1 a0^-1").unwrap();
        let inv = g.inv(&u);
        assert_eq!(inv.to_string(), "a0 a3");
        assert_eq!(g.shape(&inv), Degree(vec![2, 0]));
        assert_eq!(g.shape(&g.identity()), Degree(vec![0, 0]));
    }

    #[test]
    fn factorizations() {
        let g = a1();
        let d = |a: u32, b: u32| Degree(vec![a, b]);
        let e = |s: &str| g.elem(s).unwrap();
        assert_eq!(g.unique_factorize(&e("a0 a3"), &d(1, 0), &d(1, 0)).unwrap(), (e("a0"), e("a3")));
        let w = e("a0 a3 a5^-1");
        assert_eq!(g.unique_factorize(&w, &d(1, 0), &d(1, 1)).unwrap(), (e("a0"), e("a3 a5^-1")));
        assert_eq!(g.unique_factorize(&w, &d(1, 1), &d(1, 0)).unwrap(), (e("a0 a1^-1"), e("a4")));
        assert!(matches!(g.unique_factorize(&w, &d(1, 1), &d(1, 1)), Err(Error::ShapeMismatch(_))));
        let u = g.unit_maps(&w).unwrap();
        assert_eq!(
            (u.s_unit, u.r_unit, u.c_part, u.d_part),
            (e("a3 a5^-1"), e("a0 a1^-1"), e("a0"), e("a4"))
        );
        let unit = e("a0 a1^-1");
        let u = g.unit_maps(&unit).unwrap();
        assert_eq!((u.s_unit.clone(), u.r_unit.clone()), (unit.clone(), unit));
        assert!(u.c_part.is_empty() && u.d_part.is_empty());
        assert!(matches!(g.unit_maps(&e("a0")), Err(Error::ShapeTooSmall(_))));
    }

    #[test]
    fn left_and_right_forms_share_a_shape() {
        let g = a1();
        for s in ["a0 a4^-1 a6", "a0^-1 a1", "a2^-1 a5 a5 a1^-1", "a3 a6^-1 a2 a0^-1 a4"] {
            let x = w(&g, s);
            let (l, trace) = g.triella.rewrite(&x, Side::Left);
            assert!(g.triella.is_normal(&l, Side::Left));
            assert_eq!(l.letter_counts(), g.triella.normalize(&x).letter_counts(), "{s}");
            assert!(trace.iter().all(|r| r.after < r.before));
        }
    }

    #[test]
    fn three_expressions_of_one_shape_one_two_element() {
        let g = a1();
        let w = g.elem("a0 a2^-1 a6^-1").unwrap();
        assert_eq!(g.shape(&w), Degree(vec![1, 2]));
        for alt in ["a5^-1 a1 a6^-1", "a5^-1 a0^-1 a4"] {
            assert_eq!(g.elem(alt).unwrap(), w, "{alt}");
        }
        let left = g.triella.normalize_side(&w, Side::Left);
        assert_eq!(left.to_string(), "a5^-1 a0^-1 a4");
        // with a5 in place of a6 the word collapses to a positive word
        let other = g.elem("a0 a2^-1 a5^-1").unwrap();
        assert_eq!(other.to_string(), "a0 a3");
    }

    #[test]
    fn random_elements_are_normal_of_the_requested_shape() {
        use rand::SeedableRng;
        let g = a1();
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for _ in 0..200 {
            let (m, n) = (rng.gen_range(0..4), rng.gen_range(0..4));
            let w = g.random_element(&mut rng, m, n);
            assert_eq!(g.triella.normalize(&w), w);
            assert_eq!(g.shape(&w), Degree(vec![m as u32, n as u32]));
        }
    }
}
