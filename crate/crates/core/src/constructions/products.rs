//! Products, pullbacks, crossed products, action graphs, monoidal and
//! Yang–Baxter 2-graphs.

use crate::degree::Degree;
use crate::error::{Error, Result};
use crate::kgraph::{KGraph, Morphism};
use crate::presentation::{Edge, Presentation, Square};
use std::collections::{BTreeMap, BTreeSet, HashMap};

/// Λ × Γ, colors of Λ first.
pub fn cartesian_product(l: &Presentation, g: &Presentation) -> Result<Presentation> {
    let a = KGraph::new(l)?;
    let b = KGraph::new(g)?;
    let pair = |x: &str, y: &str| format!("({x},{y})");
    let k = a.rank();
    let mut p = Presentation::new(k + b.rank());
    for v in &l.vertices {
        for w in &g.vertices {
            p.vertices.push(pair(v, w));
        }
    }
    for e in &l.edges {
        for w in &g.vertices {
            p.edges.push(Edge::new(pair(&e.id, w), e.color, pair(&e.src, w), pair(&e.rng, w)));
        }
    }
    for v in &l.vertices {
        for f in &g.edges {
            p.edges.push(Edge::new(pair(v, &f.id), f.color + k, pair(v, &f.src), pair(v, &f.rng)));
        }
    }
    for s in &l.squares {
        for w in &g.vertices {
            p.squares.push(Square {
                i_edge: pair(&s.i_edge, w),
                j_edge: pair(&s.j_edge, w),
                j_prime: pair(&s.j_prime, w),
                i_prime: pair(&s.i_prime, w),
            });
        }
    }
    for s in &g.squares {
        for v in &l.vertices {
            p.squares.push(Square {
                i_edge: pair(v, &s.i_edge),
                j_edge: pair(v, &s.j_edge),
                j_prime: pair(v, &s.j_prime),
                i_prime: pair(v, &s.i_prime),
            });
        }
    }
    // (e, r(f))·(s(e), f) = (r(e), f)·(e, s(f)).
    for e in &l.edges {
        for f in &g.edges {
            p.squares.push(Square {
                i_edge: pair(&e.id, &f.rng),
                j_edge: pair(&e.src, &f.id),
                j_prime: pair(&e.rng, &f.id),
                i_prime: pair(&e.id, &f.src),
            });
        }
    }
    KGraph::new(&p)?;
    Ok(p)
}

/// Enumeration cap for constructions that materialize morphism sets.
const MORPHISM_CAP: usize = 200_000;

fn all_of_degree(g: &KGraph, n: &Degree) -> Result<Vec<Morphism>> {
    let mut out = Vec::new();
    for u in 0..g.vertex_count() {
        out.extend(g.morphisms_from(u, n));
        if out.len() > MORPHISM_CAP {
            return Err(Error::WindowTooSmall(format!("more than {MORPHISM_CAP} morphisms of degree {n}")));
        }
    }
    Ok(out)
}

/// f*(Λ) for f(n) = A n + p, where `a` has k rows and ℓ columns.
pub fn affine_pullback(l: &Presentation, a: &[Vec<u32>], p: &Degree) -> Result<Presentation> {
    let g = KGraph::new(l)?;
    let k = g.rank();
    if a.len() != k || p.rank() != k {
        return Err(Error::MalformedInput(format!("matrix needs {k} rows and p needs {k} entries")));
    }
    let ell = a.first().map_or(0, |r| r.len());
    if ell == 0 || a.iter().any(|r| r.len() != ell) {
        return Err(Error::MalformedInput("matrix rows must share a positive length".into()));
    }
    let column = |j: usize| Degree(a.iter().map(|r| r[j]).collect());
    let name = |m: &Morphism| g.show(m);
    let mut out = Presentation::new(ell);
    for m in all_of_degree(&g, p)? {
        out.vertices.push(name(&m));
    }
    let zero = Degree::zero(k);
    let edge_id = |m: &Morphism, j: usize| format!("{}@{}", name(m), j + 1);
    for j in 0..ell {
        let d = column(j).add(p);
        for m in all_of_degree(&g, &d)? {
            let r = g.segment(&m, &zero, p)?;
            let s = g.segment(&m, &d.checked_sub(p).expect("p ≤ d"), &d)?;
            out.edges.push(Edge::new(edge_id(&m, j), j + 1, name(&s), name(&r)));
        }
    }
    for i in 0..ell {
        for j in i + 1..ell {
            let (ai, aj) = (column(i), column(j));
            let d = ai.add(&aj).add(p);
            for m in all_of_degree(&g, &d)? {
                let ie = g.segment(&m, &zero, &ai.add(p))?;
                let je = g.segment(&m, &ai, &d)?;
                let jp = g.segment(&m, &zero, &aj.add(p))?;
                let ip = g.segment(&m, &aj, &d)?;
                out.squares.push(Square {
                    i_edge: edge_id(&ie, i),
                    j_edge: edge_id(&je, j),
                    j_prime: edge_id(&jp, j),
                    i_prime: edge_id(&ip, i),
                });
            }
        }
    }
    KGraph::new(&out)?;
    Ok(out)
}

/// A vertex and edge bijection of a presentation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Automorphism {
    pub vertices: BTreeMap<String, String>,
    pub edges: BTreeMap<String, String>,
}

impl Automorphism {
    pub fn identity(p: &Presentation) -> Self {
        Automorphism {
            vertices: p.vertices.iter().map(|v| (v.clone(), v.clone())).collect(),
            edges: p.edges.iter().map(|e| (e.id.clone(), e.id.clone())).collect(),
        }
    }

    /// Fixes vertices and permutes edges as listed; unlisted edges are fixed.
    pub fn edge_permutation(p: &Presentation, pairs: &[(&str, &str)]) -> Self {
        let mut a = Self::identity(p);
        for (x, y) in pairs {
            a.edges.insert(x.to_string(), y.to_string());
        }
        a
    }

    pub fn check(&self, p: &Presentation) -> Result<()> {
        let bad = |m: String| Err(Error::NotAnAutomorphism(m));
        let vs: BTreeSet<&String> = p.vertices.iter().collect();
        if self.vertices.len() != vs.len()
            || !self.vertices.keys().all(|v| vs.contains(v))
            || self.vertices.values().collect::<BTreeSet<_>>() != vs
        {
            return bad("vertex map is not a bijection of the vertex set".into());
        }
        let es: BTreeSet<&String> = p.edges.iter().map(|e| &e.id).collect();
        if self.edges.len() != es.len()
            || !self.edges.keys().all(|e| es.contains(e))
            || self.edges.values().collect::<BTreeSet<_>>() != es
        {
            return bad("edge map is not a bijection of the edge set".into());
        }
        let by_id: HashMap<&str, &Edge> = p.edges.iter().map(|e| (e.id.as_str(), e)).collect();
        for e in &p.edges {
            let t = by_id[self.edges[&e.id].as_str()];
            if t.color != e.color || t.src != self.vertices[&e.src] || t.rng != self.vertices[&e.rng] {
                return bad(format!("edge {} is not carried to an edge with matching color and endpoints", e.id));
            }
        }
        let squares: BTreeSet<(&str, &str, &str, &str)> = p
            .squares
            .iter()
            .map(|s| (s.i_edge.as_str(), s.j_edge.as_str(), s.j_prime.as_str(), s.i_prime.as_str()))
            .collect();
        for s in &p.squares {
            let img = (
                self.edges[&s.i_edge].as_str(),
                self.edges[&s.j_edge].as_str(),
                self.edges[&s.j_prime].as_str(),
                self.edges[&s.i_prime].as_str(),
            );
            if !squares.contains(&img) {
                return bad(format!("square ({}, {}) is not carried to a square", s.i_edge, s.j_edge));
            }
        }
        Ok(())
    }

    pub fn then(&self, other: &Automorphism) -> Automorphism {
        Automorphism {
            vertices: self.vertices.iter().map(|(k, v)| (k.clone(), other.vertices[v].clone())).collect(),
            edges: self.edges.iter().map(|(k, v)| (k.clone(), other.edges[v].clone())).collect(),
        }
    }

    pub fn inverse(&self) -> Automorphism {
        Automorphism {
            vertices: self.vertices.iter().map(|(k, v)| (v.clone(), k.clone())).collect(),
            edges: self.edges.iter().map(|(k, v)| (v.clone(), k.clone())).collect(),
        }
    }
}

/// Λ ×_α ℕ^ℓ with (λ, m)(μ, n) = (λ α^m(μ), m + n); new colors come last.
pub fn crossed_product(l: &Presentation, alpha: &[Automorphism]) -> Result<Presentation> {
    KGraph::new(l)?;
    for a in alpha {
        a.check(l)?;
    }
    for (i, a) in alpha.iter().enumerate() {
        for b in &alpha[i + 1..] {
            if a.then(b) != b.then(a) {
                return Err(Error::AutomorphismsDontCommute(format!("α{} and another generator", i + 1)));
            }
        }
    }
    let k = l.k;
    let inv: Vec<Automorphism> = alpha.iter().map(|a| a.inverse()).collect();
    let tid = |v: &str, j: usize| format!("({v},t{})", j + 1);
    let mut p = Presentation { k: k + alpha.len(), vertices: l.vertices.clone(), edges: l.edges.clone(), squares: l.squares.clone() };
    for j in 0..alpha.len() {
        for v in &l.vertices {
            p.edges.push(Edge::new(tid(v, j), k + j + 1, inv[j].vertices[v].clone(), v.clone()));
        }
    }
    for e in &l.edges {
        for j in 0..alpha.len() {
            p.squares.push(Square {
                i_edge: e.id.clone(),
                j_edge: tid(&e.src, j),
                j_prime: tid(&e.rng, j),
                i_prime: inv[j].edges[&e.id].clone(),
            });
        }
    }
    for j in 0..alpha.len() {
        for j2 in j + 1..alpha.len() {
            for v in &l.vertices {
                p.squares.push(Square {
                    i_edge: tid(v, j),
                    j_edge: tid(&inv[j].vertices[v], j2),
                    j_prime: tid(v, j2),
                    i_prime: tid(&inv[j2].vertices[v], j),
                });
            }
        }
    }
    KGraph::new(&p)?;
    Ok(p)
}

/// B_n × Λ with degree (|μ|, d(λ)); color 1 carries the B_n edges f1..fn and
/// (μ, α_ν(λ))(ν, ξ) = (μν, λξ).
pub fn action_graph(n: usize, l: &Presentation, alpha: &[Automorphism]) -> Result<Presentation> {
    KGraph::new(l)?;
    if alpha.len() != n {
        return Err(Error::MalformedInput(format!("{n} generators need {n} automorphisms")));
    }
    for a in alpha {
        a.check(l)?;
    }
    let fid = |i: usize, v: &str| format!("(f{},{v})", i + 1);
    let mut p = Presentation::new(l.k + 1);
    p.vertices = l.vertices.clone();
    for (i, a) in alpha.iter().enumerate() {
        for v in &l.vertices {
            p.edges.push(Edge::new(fid(i, v), 1, v.clone(), a.vertices[v].clone()));
        }
    }
    for e in &l.edges {
        p.edges.push(Edge { color: e.color + 1, ..e.clone() });
    }
    p.squares = l.squares.clone();
    for (i, a) in alpha.iter().enumerate() {
        for e in &l.edges {
            p.squares.push(Square {
                i_edge: fid(i, &e.rng),
                j_edge: e.id.clone(),
                j_prime: a.edges[&e.id].clone(),
                i_prime: fid(i, &e.src),
            });
        }
    }
    KGraph::new(&p)?;
    Ok(p)
}

/// 𝔽_θ⁺: e_i f_j = f_j′ e_i′ whenever θ(i, j) = (j′, i′). Indices are 1-based.
pub fn monoidal_2graph(n1: usize, n2: usize, theta: impl Fn(usize, usize) -> (usize, usize)) -> Result<Presentation> {
    let mut p = Presentation::new(2);
    p.vertices.push("u".into());
    for i in 1..=n1 {
        p.edges.push(Edge::new(format!("e{i}"), 1, "u", "u"));
    }
    for j in 1..=n2 {
        p.edges.push(Edge::new(format!("f{j}"), 2, "u", "u"));
    }
    let mut image = BTreeSet::new();
    for i in 1..=n1 {
        for j in 1..=n2 {
            let (j2, i2) = theta(i, j);
            if !(1..=n2).contains(&j2) || !(1..=n1).contains(&i2) || !image.insert((j2, i2)) {
                return Err(Error::NotABijection(format!("θ({i},{j}) = ({j2},{i2})")));
            }
            p.squares.push(Square::new(&format!("e{i}"), &format!("f{j}"), &format!("f{j2}"), &format!("e{i2}")));
        }
    }
    Ok(p)
}

/// A bijection R of X × X for X = {0, …, n−1}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct YangBaxterMap {
    pub n: usize,
    map: Vec<(usize, usize)>,
}

impl YangBaxterMap {
    /// Checks bijectivity and the braid relation on X³.
    pub fn new(n: usize, r: impl Fn(usize, usize) -> (usize, usize)) -> Result<Self> {
        let map: Vec<(usize, usize)> = (0..n * n).map(|i| r(i / n, i % n)).collect();
        let image: BTreeSet<_> = map.iter().copied().collect();
        if image.len() != n * n || map.iter().any(|&(a, b)| a >= n || b >= n) {
            return Err(Error::NotABijection("R is not a bijection of X²".into()));
        }
        let y = YangBaxterMap { n, map };
        if let Some(t) = y.braid_failure() {
            return Err(Error::NotYangBaxter(t));
        }
        Ok(y)
    }

    /// R(e, f) = (σ(f), e).
    pub fn permutation(sigma: &[usize]) -> Result<Self> {
        let s = sigma.to_vec();
        Self::new(s.len(), move |e, f| (s[f], e))
    }

    pub fn apply(&self, e: usize, f: usize) -> (usize, usize) {
        self.map[e * self.n + f]
    }

    /// First triple where (R×1)(1×R)(R×1) and (1×R)(R×1)(1×R) differ.
    pub fn braid_failure(&self) -> Option<(usize, usize, usize)> {
        let r12 = |(a, b, c): (usize, usize, usize)| {
            let (x, y) = self.apply(a, b);
            (x, y, c)
        };
        let r23 = |(a, b, c): (usize, usize, usize)| {
            let (y, z) = self.apply(b, c);
            (a, y, z)
        };
        for a in 0..self.n {
            for b in 0..self.n {
                for c in 0..self.n {
                    let t = (a, b, c);
                    if r12(r23(r12(t))) != r23(r12(r23(t))) {
                        return Some(t);
                    }
                }
            }
        }
        None
    }
}

/// Λ_{k,R}: edges (i, x) and (i,e)(j,f) = (j,f′)(i,e′) when R(e,f) = (f′,e′).
pub fn yang_baxter_graph(k: usize, r: &YangBaxterMap) -> Result<Presentation> {
    if k < 2 {
        return Err(Error::MalformedInput("Yang-Baxter graphs need k ≥ 2".into()));
    }
    let id = |i: usize, x: usize| format!("({i},{})", x + 1);
    let mut p = Presentation::new(k);
    p.vertices.push("u".into());
    for i in 1..=k {
        for x in 0..r.n {
            p.edges.push(Edge::new(id(i, x), i, "u", "u"));
        }
    }
    for i in 1..=k {
        for j in i + 1..=k {
            for e in 0..r.n {
                for f in 0..r.n {
                    let (f2, e2) = r.apply(e, f);
                    p.squares.push(Square::new(&id(i, e), &id(j, f), &id(j, f2), &id(i, e2)));
                }
            }
        }
    }
    KGraph::new(&p)?;
    Ok(p)
}

/// Move color `order[i]` (1-based) to position i+1.
pub fn reorder_colors(p: &Presentation, order: &[usize]) -> Result<Presentation> {
    let mut sorted = order.to_vec();
    sorted.sort_unstable();
    if sorted != (1..=p.k).collect::<Vec<_>>() {
        return Err(Error::MalformedInput("color order must be a permutation".into()));
    }
    let new_color = |c: usize| order.iter().position(|&x| x == c).unwrap() + 1;
    let edges: Vec<Edge> = p.edges.iter().map(|e| Edge { color: new_color(e.color), ..e.clone() }).collect();
    let color: HashMap<&str, usize> = edges.iter().map(|e| (e.id.as_str(), e.color)).collect();
    let squares = p
        .squares
        .iter()
        .map(|s| {
            if color[s.i_edge.as_str()] < color[s.j_edge.as_str()] {
                s.clone()
            } else {
                // Read the square backwards: j_prime·i_prime = i_edge·j_edge.
                Square {
                    i_edge: s.j_prime.clone(),
                    j_edge: s.i_prime.clone(),
                    j_prime: s.i_edge.clone(),
                    i_prime: s.j_edge.clone(),
                }
            }
        })
        .collect();
    Ok(Presentation { k: p.k, vertices: p.vertices.clone(), edges, squares })
}
