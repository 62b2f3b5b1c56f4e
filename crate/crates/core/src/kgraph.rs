//! Indexed k-graphs: validation, canonical forms and path arithmetic.
//!
//! Words are stored range-to-source: in `e f` the source of `e` is the range
//! of `f`. The canonical representative of a morphism has nondecreasing colors.

use crate::degree::Degree;
use crate::error::{Error, Result};
use crate::presentation::Presentation;
use serde::Serialize;
use std::collections::HashMap;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeData {
    pub id: String,
    /// Zero-based color.
    pub color: usize,
    pub src: usize,
    pub rng: usize,
}

/// A validated (or, for windows, partially validated) k-graph.
#[derive(Debug, Clone)]
pub struct KGraph {
    k: usize,
    presentation: Presentation,
    vertex_ids: Vec<String>,
    vertex_index: HashMap<String, usize>,
    edges: Vec<EdgeData>,
    edge_index: HashMap<String, usize>,
    /// (e, f) with color(e) < color(f) ↦ (f', e').
    forward: HashMap<(usize, usize), (usize, usize)>,
    /// (f', e') ↦ (e, f).
    backward: HashMap<(usize, usize), (usize, usize)>,
    /// [vertex][color] → edges with that range, sorted by id.
    by_range: Vec<Vec<Vec<usize>>>,
    /// [vertex][color] → edges with that source, sorted by id.
    by_source: Vec<Vec<Vec<usize>>>,
    complete: bool,
}

/// A morphism in canonical (color-sorted) form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Morphism {
    pub range: usize,
    pub source: usize,
    pub edges: Vec<usize>,
    pub degree: Degree,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ValidationFailure {
    /// A square whose colors or endpoints do not fit its edges.
    BadSquare { square: usize, reason: String },
    /// The square map for a color pair is not a bijection.
    NotBijective { colors: (usize, usize), pair: (String, String), reason: String },
    /// The two ways of sorting a 3-colored path disagree.
    Hexagon { path: Vec<String>, route_a: Vec<String>, route_b: Vec<String> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub ok: bool,
    pub hexagon_paths_checked: usize,
    pub failure: Option<ValidationFailure>,
}

impl ValidationFailure {
    pub fn describe(&self) -> String {
        match self {
            ValidationFailure::BadSquare { square, reason } => format!("square #{square}: {reason}"),
            ValidationFailure::NotBijective { colors, pair, reason } => format!(
                "square map for colors ({}, {}) is not bijective at ({}, {}): {reason}",
                colors.0, colors.1, pair.0, pair.1
            ),
            ValidationFailure::Hexagon { path, route_a, route_b } => format!(
                "hexagon mismatch on {}: {} vs {}",
                path.join("·"),
                route_a.join("·"),
                route_b.join("·")
            ),
        }
    }
}

/// Structural checks, square bijectivity and the hexagon condition.
pub fn validate_presentation(p: &Presentation) -> Result<ValidationReport> {
    let (g, failure) = KGraph::build(p, true)?;
    if let Some(f) = failure {
        return Ok(ValidationReport { ok: false, hexagon_paths_checked: 0, failure: Some(f) });
    }
    let (checked, failure) = g.check_hexagons();
    Ok(ValidationReport { ok: failure.is_none(), hexagon_paths_checked: checked, failure })
}

impl KGraph {
    /// Index and validate a full presentation.
    pub fn new(p: &Presentation) -> Result<Self> {
        let (g, failure) = Self::build(p, true)?;
        if let Some(f) = failure {
            return Err(Error::Invalid(f.describe()));
        }
        if let (_, Some(f)) = g.check_hexagons() {
            return Err(Error::Invalid(f.describe()));
        }
        Ok(g)
    }

    /// Index a window: squares must be well formed and injective, but the
    /// square map may be partial and hexagons are checked only where defined.
    pub fn new_partial(p: &Presentation) -> Result<Self> {
        let (g, failure) = Self::build(p, false)?;
        if let Some(f) = failure {
            return Err(Error::Invalid(f.describe()));
        }
        if let (_, Some(f)) = g.check_hexagons() {
            return Err(Error::Invalid(f.describe()));
        }
        Ok(g)
    }

    fn build(p: &Presentation, complete: bool) -> Result<(Self, Option<ValidationFailure>)> {
        p.check_structure()?;
        let k = p.k;
        let vertex_ids = p.vertices.clone();
        let vertex_index: HashMap<String, usize> =
            vertex_ids.iter().enumerate().map(|(i, v)| (v.clone(), i)).collect();
        let edges: Vec<EdgeData> = p
            .edges
            .iter()
            .map(|e| EdgeData {
                id: e.id.clone(),
                color: e.color - 1,
                src: vertex_index[&e.src],
                rng: vertex_index[&e.rng],
            })
            .collect();
        let edge_index: HashMap<String, usize> =
            edges.iter().enumerate().map(|(i, e)| (e.id.clone(), i)).collect();
        let n = vertex_ids.len();
        let mut by_range = vec![vec![Vec::new(); k]; n];
        let mut by_source = vec![vec![Vec::new(); k]; n];
        let mut order: Vec<usize> = (0..edges.len()).collect();
        order.sort_by(|&a, &b| edges[a].id.cmp(&edges[b].id));
        for &i in &order {
            let e = &edges[i];
            by_range[e.rng][e.color].push(i);
            by_source[e.src][e.color].push(i);
        }
        let mut g = KGraph {
            k,
            presentation: p.clone(),
            vertex_ids,
            vertex_index,
            edges,
            edge_index,
            forward: HashMap::new(),
            backward: HashMap::new(),
            by_range,
            by_source,
            complete,
        };
        let failure = g.load_squares(p);
        Ok((g, failure))
    }

    fn load_squares(&mut self, p: &Presentation) -> Option<ValidationFailure> {
        for (idx, sq) in p.squares.iter().enumerate() {
            let e = self.edge_index[&sq.i_edge];
            let f = self.edge_index[&sq.j_edge];
            let f2 = self.edge_index[&sq.j_prime];
            let e2 = self.edge_index[&sq.i_prime];
            let (ce, cf, cf2, ce2) =
                (self.edges[e].color, self.edges[f].color, self.edges[f2].color, self.edges[e2].color);
            let bad = |reason: &str| Some(ValidationFailure::BadSquare { square: idx, reason: reason.to_string() });
            if ce != ce2 || cf != cf2 {
                return bad("color mismatch between i/j edges and their primes");
            }
            if ce >= cf {
                return bad("i color must be strictly below j color");
            }
            if self.edges[e].src != self.edges[f].rng {
                return bad("i_edge·j_edge is not composable");
            }
            if self.edges[f2].src != self.edges[e2].rng {
                return bad("j_prime·i_prime is not composable");
            }
            if self.edges[e].rng != self.edges[f2].rng || self.edges[f].src != self.edges[e2].src {
                return bad("the two sides of the square have different endpoints");
            }
            if self.forward.insert((e, f), (f2, e2)).is_some() {
                return Some(ValidationFailure::NotBijective {
                    colors: (ce + 1, cf + 1),
                    pair: (sq.i_edge.clone(), sq.j_edge.clone()),
                    reason: "pair has two squares".into(),
                });
            }
            if self.backward.insert((f2, e2), (e, f)).is_some() {
                return Some(ValidationFailure::NotBijective {
                    colors: (ce + 1, cf + 1),
                    pair: (sq.j_prime.clone(), sq.i_prime.clone()),
                    reason: "pair is the image of two squares".into(),
                });
            }
        }
        if !self.complete {
            return None;
        }
        // Every composable i-then-j pair and every j-then-i pair must be covered.
        for i in 0..self.k {
            for j in i + 1..self.k {
                for (e, ed) in self.edges.iter().enumerate().filter(|(_, ed)| ed.color == i) {
                    for &f in &self.by_range[ed.src][j] {
                        if !self.forward.contains_key(&(e, f)) {
                            return Some(ValidationFailure::NotBijective {
                                colors: (i + 1, j + 1),
                                pair: (ed.id.clone(), self.edges[f].id.clone()),
                                reason: "composable pair has no square".into(),
                            });
                        }
                    }
                }
                for (f, fd) in self.edges.iter().enumerate().filter(|(_, fd)| fd.color == j) {
                    for &e in &self.by_range[fd.src][i] {
                        if !self.backward.contains_key(&(f, e)) {
                            return Some(ValidationFailure::NotBijective {
                                colors: (i + 1, j + 1),
                                pair: (fd.id.clone(), self.edges[e].id.clone()),
                                reason: "composable pair is not the image of a square".into(),
                            });
                        }
                    }
                }
            }
        }
        None
    }

    fn check_hexagons(&self) -> (usize, Option<ValidationFailure>) {
        let mut checked = 0;
        for (x, xd) in self.edges.iter().enumerate() {
            for j in xd.color + 1..self.k {
                for &y in &self.by_range[xd.src][j] {
                    for l in j + 1..self.k {
                        for &z in &self.by_range[self.edges[y].src][l] {
                            let a = self.route_a(x, y, z);
                            let b = self.route_b(x, y, z);
                            match (a, b) {
                                (Some(a), Some(b)) => {
                                    checked += 1;
                                    if a != b {
                                        return (
                                            checked,
                                            Some(ValidationFailure::Hexagon {
                                                path: self.ids(&[x, y, z]),
                                                route_a: self.ids(&a),
                                                route_b: self.ids(&b),
                                            }),
                                        );
                                    }
                                }
                                _ if self.complete => unreachable!("complete square set covers all pairs"),
                                _ => {}
                            }
                        }
                    }
                }
            }
        }
        (checked, None)
    }

    /// x y z ↦ z″ y″ x″ moving z left first.
    fn route_a(&self, x: usize, y: usize, z: usize) -> Option<[usize; 3]> {
        let (z1, y1) = *self.forward.get(&(y, z))?;
        let (z2, x1) = *self.forward.get(&(x, z1))?;
        let (y2, x2) = *self.forward.get(&(x1, y1))?;
        Some([z2, y2, x2])
    }

    /// x y z ↦ z″ y″ x″ moving x right first.
    fn route_b(&self, x: usize, y: usize, z: usize) -> Option<[usize; 3]> {
        let (y1, x1) = *self.forward.get(&(x, y))?;
        let (z1, x2) = *self.forward.get(&(x1, z))?;
        let (z2, y2) = *self.forward.get(&(y1, z1))?;
        Some([z2, y2, x2])
    }

    pub fn rank(&self) -> usize {
        self.k
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_ids.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_id(&self, v: usize) -> &str {
        &self.vertex_ids[v]
    }

    pub fn vertex(&self, id: &str) -> Result<usize> {
        self.vertex_index.get(id).copied().ok_or_else(|| Error::UnknownVertex(id.to_string()))
    }

    pub fn edge_by_id(&self, id: &str) -> Result<usize> {
        self.edge_index.get(id).copied().ok_or_else(|| Error::UnknownEdge(id.to_string()))
    }

    pub fn edge(&self, e: usize) -> &EdgeData {
        &self.edges[e]
    }

    pub fn edges(&self) -> &[EdgeData] {
        &self.edges
    }

    pub fn ids(&self, word: &[usize]) -> Vec<String> {
        word.iter().map(|&e| self.edges[e].id.clone()).collect()
    }

    /// Edges of the given zero-based color with range `v`, sorted by id.
    pub fn edges_with_range(&self, v: usize, color: usize) -> &[usize] {
        &self.by_range[v][color]
    }

    /// Edges of the given zero-based color with source `v`, sorted by id.
    pub fn edges_with_source(&self, v: usize, color: usize) -> &[usize] {
        &self.by_source[v][color]
    }

    /// The square through a composable two-colored pair, in either order.
    pub fn swap(&self, x: usize, y: usize) -> Result<(usize, usize)> {
        let (cx, cy) = (self.edges[x].color, self.edges[y].color);
        let hit = if cx < cy {
            self.forward.get(&(x, y))
        } else if cx > cy {
            self.backward.get(&(x, y))
        } else {
            None
        };
        hit.copied().ok_or_else(|| Error::MissingSquare(self.edges[x].id.clone(), self.edges[y].id.clone()))
    }

    /// Number of squares recorded.
    pub fn square_count(&self) -> usize {
        self.forward.len()
    }

    /// Squares ((e, f), (f', e')) in order of (e, f) edge positions.
    pub fn squares(&self) -> impl Iterator<Item = ((usize, usize), (usize, usize))> + '_ {
        let mut all: Vec<_> = self.forward.iter().map(|(&a, &b)| (a, b)).collect();
        all.sort_unstable();
        all.into_iter()
    }

    pub fn degree_of_word(&self, word: &[usize]) -> Degree {
        let mut d = Degree::zero(self.k);
        for &e in word {
            d.0[self.edges[e].color] += 1;
        }
        d
    }

    fn check_composable(&self, word: &[usize]) -> Result<()> {
        for w in word.windows(2) {
            if self.edges[w[0]].src != self.edges[w[1]].rng {
                return Err(Error::NotComposable(format!(
                    "s({}) ≠ r({})",
                    self.edges[w[0]].id,
                    self.edges[w[1]].id
                )));
            }
        }
        Ok(())
    }

    /// Reorder a composable word so that its colors follow `target`, using
    /// adjacent square swaps. `target` must be a permutation of the word's colors.
    pub fn rearrange(&self, word: &[usize], target: &[usize]) -> Result<Vec<usize>> {
        let mut w = word.to_vec();
        for p in 0..target.len() {
            let q = (p..w.len())
                .find(|&q| self.edges[w[q]].color == target[p])
                .ok_or_else(|| Error::DegreeOutOfRange("target colors do not match the word".into()))?;
            for r in (p..q).rev() {
                let (a, b) = self.swap(w[r], w[r + 1])?;
                w[r] = a;
                w[r + 1] = b;
            }
        }
        Ok(w)
    }

    pub fn identity(&self, v: usize) -> Morphism {
        Morphism { range: v, source: v, edges: Vec::new(), degree: Degree::zero(self.k) }
    }

    /// Canonical form of a nonempty composable word.
    pub fn canonical_form(&self, word: &[usize]) -> Result<Morphism> {
        if word.is_empty() {
            return Err(Error::NotComposable("empty word has no vertex; use identity".into()));
        }
        self.check_composable(word)?;
        let degree = self.degree_of_word(word);
        let edges = self.rearrange(word, &degree.color_sequence())?;
        Ok(Morphism {
            range: self.edges[edges[0]].rng,
            source: self.edges[*edges.last().unwrap()].src,
            edges,
            degree,
        })
    }

    /// Canonical form of a word given by edge ids.
    pub fn canonical_form_ids(&self, ids: &[&str]) -> Result<Morphism> {
        let word = ids.iter().map(|id| self.edge_by_id(id)).collect::<Result<Vec<_>>>()?;
        self.canonical_form(&word)
    }

    pub fn compose(&self, mu: &Morphism, nu: &Morphism) -> Result<Morphism> {
        if mu.source != nu.range {
            return Err(Error::NotComposable(format!(
                "s = {} but r = {}",
                self.vertex_ids[mu.source], self.vertex_ids[nu.range]
            )));
        }
        if mu.edges.is_empty() {
            return Ok(nu.clone());
        }
        if nu.edges.is_empty() {
            return Ok(mu.clone());
        }
        let mut w = mu.edges.clone();
        w.extend_from_slice(&nu.edges);
        self.canonical_form(&w)
    }

    /// λ(m, n).
    pub fn segment(&self, lambda: &Morphism, m: &Degree, n: &Degree) -> Result<Morphism> {
        if !(m.le(n) && n.le(&lambda.degree)) {
            return Err(Error::DegreeOutOfRange(format!("need {m} ≤ {n} ≤ {}", lambda.degree)));
        }
        let mid = n.checked_sub(m).expect("m ≤ n");
        let rest = lambda.degree.checked_sub(n).expect("n ≤ d");
        let mut target = m.color_sequence();
        target.extend(mid.color_sequence());
        target.extend(rest.color_sequence());
        let w = self.rearrange(&lambda.edges, &target)?;
        let a = m.total() as usize;
        let b = n.total() as usize;
        if a == b {
            let v = if a == 0 { lambda.range } else { self.edges[w[a - 1]].src };
            return Ok(self.identity(v));
        }
        self.canonical_form(&w[a..b])
    }

    /// All morphisms with range `u` and degree `n`, in deterministic order.
    pub fn morphisms_from(&self, u: usize, n: &Degree) -> Vec<Morphism> {
        let colors = n.color_sequence();
        let mut out = Vec::new();
        let mut word = Vec::with_capacity(colors.len());
        self.extend_paths(u, &colors, &mut word, &mut out, n);
        out
    }

    fn extend_paths(&self, at: usize, colors: &[usize], word: &mut Vec<usize>, out: &mut Vec<Morphism>, n: &Degree) {
        if word.len() == colors.len() {
            let range = word.first().map_or(at, |&e| self.edges[e].rng);
            out.push(Morphism { range, source: at, edges: word.clone(), degree: n.clone() });
            return;
        }
        let c = colors[word.len()];
        for &e in &self.by_range[at][c] {
            word.push(e);
            self.extend_paths(self.edges[e].src, colors, word, out, n);
            word.pop();
        }
    }

    /// uΛ^n v.
    pub fn morphisms(&self, u: usize, v: usize, n: &Degree) -> Vec<Morphism> {
        self.morphisms_from(u, n).into_iter().filter(|m| m.source == v).collect()
    }

    /// (M_i)_{u,v} = |uΛ^{ε_i}v|, indexed by presentation vertex order.
    pub fn adjacency_matrices(&self) -> Vec<Vec<Vec<u64>>> {
        let n = self.vertex_count();
        let mut ms = vec![vec![vec![0u64; n]; n]; self.k];
        for e in &self.edges {
            ms[e.color][e.rng][e.src] += 1;
        }
        ms
    }

    pub fn morphism_ids(&self, m: &Morphism) -> Vec<String> {
        self.ids(&m.edges)
    }

    /// Human readable form: edge ids joined by `·`, or the vertex id.
    pub fn show(&self, m: &Morphism) -> String {
        if m.edges.is_empty() {
            self.vertex_ids[m.range].clone()
        } else {
            self.ids(&m.edges).join("·")
        }
    }
}

pub fn matrix_product(a: &[Vec<u64>], b: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let n = a.len();
    let m = b.first().map_or(0, |r| r.len());
    let mut out = vec![vec![0u64; m]; n];
    for i in 0..n {
        for (l, &x) in a[i].iter().enumerate() {
            if x == 0 {
                continue;
            }
            for j in 0..m {
                out[i][j] += x * b[l][j];
            }
        }
    }
    out
}
