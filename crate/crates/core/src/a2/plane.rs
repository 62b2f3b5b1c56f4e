//! Finite projective planes and triellas (triangle presentations).

use crate::error::{Error, Result};
use itertools::Itertools;
use std::collections::BTreeSet;

/// Points 0..N and lines 0..N, N = q² + q + 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjectivePlane {
    pub q: usize,
    /// Sorted points on each line.
    pub lines: Vec<Vec<usize>>,
    incidence: Vec<Vec<bool>>,
}

impl ProjectivePlane {
    /// Build from line contents and check every axiom.
    pub fn new(q: usize, lines: Vec<Vec<usize>>) -> Result<Self> {
        let n = q * q + q + 1;
        if lines.len() != n {
            return Err(Error::PlaneAxiomViolation(format!("{} lines, expected {n}", lines.len())));
        }
        let mut incidence = vec![vec![false; n]; n];
        let mut sorted = Vec::with_capacity(n);
        for (l, pts) in lines.into_iter().enumerate() {
            let set: BTreeSet<usize> = pts.into_iter().collect();
            for &p in &set {
                if p >= n {
                    return Err(Error::PlaneAxiomViolation(format!("line {l} mentions point {p} outside 0..{n}")));
                }
                incidence[p][l] = true;
            }
            sorted.push(set.into_iter().collect());
        }
        let plane = ProjectivePlane { q, lines: sorted, incidence };
        plane.validate()?;
        Ok(plane)
    }

    pub fn size(&self) -> usize {
        self.lines.len()
    }

    pub fn incident(&self, p: usize, l: usize) -> bool {
        self.incidence[p][l]
    }

    /// The unique line through distinct points.
    pub fn line_through(&self, x: usize, y: usize) -> Option<usize> {
        (0..self.size()).find(|&l| self.incidence[x][l] && self.incidence[y][l])
    }

    /// The unique point on distinct lines.
    pub fn meet(&self, l: usize, m: usize) -> Option<usize> {
        (0..self.size()).find(|&p| self.incidence[p][l] && self.incidence[p][m])
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.size();
        let fail = |m: String| Err(Error::PlaneAxiomViolation(m));
        for (x, y) in (0..n).tuple_combinations() {
            let common = (0..n).filter(|&l| self.incidence[x][l] && self.incidence[y][l]).count();
            if common != 1 {
                return fail(format!("points {x} and {y} lie on {common} common lines"));
            }
        }
        for (l, m) in (0..n).tuple_combinations() {
            let common = (0..n).filter(|&p| self.incidence[p][l] && self.incidence[p][m]).count();
            if common != 1 {
                return fail(format!("lines {l} and {m} meet in {common} points"));
            }
        }
        for (l, pts) in self.lines.iter().enumerate() {
            if pts.len() != self.q + 1 {
                return fail(format!("line {l} has {} points, expected {}", pts.len(), self.q + 1));
            }
        }
        for p in 0..n {
            let k = (0..n).filter(|&l| self.incidence[p][l]).count();
            if k != self.q + 1 {
                return fail(format!("point {p} lies on {k} lines, expected {}", self.q + 1));
            }
        }
        let collinear = |a: usize, b: usize, c: usize| (0..n).any(|l| self.incidence[a][l] && self.incidence[b][l] && self.incidence[c][l]);
        let quad = (0..n).combinations(4).any(|s| s.iter().copied().tuple_combinations().all(|(a, b, c)| !collinear(a, b, c)));
        if !quad {
            return fail("no four points in general position".into());
        }
        Ok(())
    }
}

/// PG(2, q) over the prime field 𝔽_q: points and lines are normalized
/// nonzero vectors of 𝔽_q³, incident when orthogonal.
pub fn build_plane(q: usize) -> Result<ProjectivePlane> {
    if !matches!(q, 2 | 3 | 5 | 7) {
        return Err(Error::UnsupportedOrder(q));
    }
    let mut vectors = Vec::new();
    for a in 0..q {
        for b in 0..q {
            for c in 0..q {
                let v = [a, b, c];
                // first nonzero coordinate is 1
                if v.iter().find(|&&x| x != 0) == Some(&1) {
                    vectors.push(v);
                }
            }
        }
    }
    let lines = vectors
        .iter()
        .map(|l| (0..vectors.len()).filter(|&p| (0..3).map(|i| l[i] * vectors[p][i]).sum::<usize>() % q == 0).collect())
        .collect();
    ProjectivePlane::new(q, lines)
}

/// A triella T compatible with λ: P → L.
#[derive(Debug, Clone)]
pub struct Triella {
    pub name: String,
    pub plane: ProjectivePlane,
    /// λ(x) as a line index.
    pub lambda: Vec<usize>,
    pub triples: Vec<[usize; 3]>,
    lambda_inv: Vec<usize>,
    third: Vec<Vec<Option<usize>>>,
    in_lambda: Vec<Vec<bool>>,
    right_swap: Vec<Vec<(usize, usize)>>,
    left_swap: Vec<Vec<(usize, usize)>>,
}

impl Triella {
    pub fn new(name: impl Into<String>, plane: ProjectivePlane, lambda: Vec<usize>, triples: Vec<[usize; 3]>) -> Result<Self> {
        let n = plane.size();
        let violation = |axiom: &str, witness: String| Err(Error::TriellaAxiomViolation { axiom: axiom.into(), witness });
        if lambda.len() != n || lambda.iter().any(|&l| l >= n) {
            return violation("lambda", format!("{} images for {n} points", lambda.len()));
        }
        let mut lambda_inv = vec![usize::MAX; n];
        for (p, &l) in lambda.iter().enumerate() {
            if lambda_inv[l] != usize::MAX {
                return violation("lambda", format!("points {} and {p} share line {l}", lambda_inv[l]));
            }
            lambda_inv[l] = p;
        }
        let mut third = vec![vec![None; n]; n];
        let mut set = BTreeSet::new();
        for t in &triples {
            if t.iter().any(|&x| x >= n) {
                return violation("T1", format!("{t:?} mentions a point outside the plane"));
            }
            set.insert(*t);
            match third[t[0]][t[1]] {
                Some(z) if z != t[2] => return violation("T3", format!("({}, {}) completes to {z} and {}", t[0], t[1], t[2])),
                _ => third[t[0]][t[1]] = Some(t[2]),
            }
        }
        for t in &set {
            if !set.contains(&[t[1], t[2], t[0]]) {
                return violation("T2", format!("{t:?} is in T but ({}, {}, {}) is not", t[1], t[2], t[0]));
            }
        }
        let mut in_lambda = vec![vec![false; n]; n];
        for x in 0..n {
            for y in 0..n {
                in_lambda[x][y] = plane.incident(y, lambda[x]);
                if in_lambda[x][y] != third[x][y].is_some() {
                    let w = if in_lambda[x][y] {
                        format!("{y} ∈ λ({x}) but no triple ({x}, {y}, z)")
                    } else {
                        format!("({x}, {y}, {}) ∈ T but {y} ∉ λ({x})", third[x][y].unwrap_or_default())
                    };
                    return violation("T1", w);
                }
            }
        }
        let mut t = Triella {
            name: name.into(),
            plane,
            lambda,
            triples: set.into_iter().collect(),
            lambda_inv,
            third,
            in_lambda,
            right_swap: vec![vec![(0, 0); n]; n],
            left_swap: vec![vec![(0, 0); n]; n],
        };
        for x in 0..n {
            for y in 0..n {
                if x == y {
                    continue;
                }
                // a_x⁻¹ a_y = a_s a_t⁻¹ via z with x, y ∈ λ(z)
                let line = t.plane.line_through(x, y).expect("validated plane");
                let z = t.lambda_inv[line];
                let (s, tt) = (t.third(z, x).expect("T1"), t.third(z, y).expect("T1"));
                t.right_swap[x][y] = (s, tt);
                // a_x a_y⁻¹ = a_s⁻¹ a_t via z ∈ λ(x) ∩ λ(y)
                let z = t.plane.meet(t.lambda[x], t.lambda[y]).expect("validated plane");
                let (s, tt) = (t.third(x, z).expect("T1"), t.third(y, z).expect("T1"));
                t.left_swap[x][y] = (s, tt);
            }
        }
        Ok(t)
    }

    /// `A1` (or `A.1`): P = ℤ₇, λ(i) = {i+1, i+2, i+4}, T the rotations of (i, i+1, i+3).
    pub fn preset(name: &str) -> Result<Self> {
        match name.to_ascii_uppercase().replace('.', "").as_str() {
            "A1" => {
                let lines: Vec<Vec<usize>> = (0..7).map(|i| vec![(i + 1) % 7, (i + 2) % 7, (i + 4) % 7]).collect();
                let plane = ProjectivePlane::new(2, lines)?;
                let triples = (0..7)
                    .flat_map(|i| {
                        let t = [i, (i + 1) % 7, (i + 3) % 7];
                        [t, [t[1], t[2], t[0]], [t[2], t[0], t[1]]]
                    })
                    .collect();
                Triella::new("A.1", plane, (0..7).collect(), triples)
            }
            _ => Err(Error::UnknownName(name.to_string())),
        }
    }

    pub fn points(&self) -> usize {
        self.plane.size()
    }

    /// y ∈ λ(x).
    pub fn in_lambda(&self, x: usize, y: usize) -> bool {
        self.in_lambda[x][y]
    }

    /// The z with (x, y, z) ∈ T.
    pub fn third(&self, x: usize, y: usize) -> Option<usize> {
        self.third[x][y]
    }

    /// (s, t) with a_x⁻¹ a_y = a_s a_t⁻¹, for x ≠ y.
    pub fn right_swap(&self, x: usize, y: usize) -> (usize, usize) {
        self.right_swap[x][y]
    }

    #[cfg(test)]
    pub(crate) fn corrupt_right_swap(&mut self, x: usize, y: usize, to: (usize, usize)) {
        self.right_swap[x][y] = to;
    }

    /// (s, t) with a_x a_y⁻¹ = a_s⁻¹ a_t, for x ≠ y.
    pub fn left_swap(&self, x: usize, y: usize) -> (usize, usize) {
        self.left_swap[x][y]
    }
}
