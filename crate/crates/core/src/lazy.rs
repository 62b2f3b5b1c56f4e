//! Infinite k-graphs generated on demand, and finite windows cut out of them.

use crate::error::{Error, Result};
use crate::kgraph::KGraph;
use crate::presentation::{Edge, Presentation, Square};
use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt::{Debug, Display};
use std::hash::Hash;

pub trait Label: Clone + Eq + Hash + Ord + Debug + Display + Send + Sync {}
impl<T: Clone + Eq + Hash + Ord + Debug + Display + Send + Sync> Label for T {}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LazyEdge<V, E> {
    pub id: E,
    /// Zero-based color.
    pub color: usize,
    pub src: V,
    pub rng: V,
}

/// A locally finite k-graph answered one query at a time.
///
/// Every query must be deterministic; implementations hold no interior state.
pub trait LazyKGraph: Send + Sync {
    type V: Label;
    type E: Label;

    fn rank(&self) -> usize;

    /// Edges of the given color with range `v`, sorted by id.
    fn edges_with_range(&self, v: &Self::V, color: usize) -> Vec<LazyEdge<Self::V, Self::E>>;

    /// Edges of the given color with source `v`, sorted by id.
    fn edges_with_source(&self, v: &Self::V, color: usize) -> Vec<LazyEdge<Self::V, Self::E>>;

    /// For composable `e·f` with color(e) < color(f), the pair `(f', e')`.
    fn square(&self, e: &LazyEdge<Self::V, Self::E>, f: &LazyEdge<Self::V, Self::E>)
        -> Option<(LazyEdge<Self::V, Self::E>, LazyEdge<Self::V, Self::E>)>;

    /// True when the undirected skeleton is known to be a forest.
    fn is_forest(&self) -> bool {
        false
    }
}

/// A finite piece of a lazy graph, with the id maps used to build it.
#[derive(Debug, Clone)]
pub struct Window<V: Label, E: Label> {
    pub presentation: Presentation,
    pub graph: KGraph,
    pub vertices: Vec<V>,
    pub vertex_of: HashMap<V, usize>,
    pub edges: Vec<LazyEdge<V, E>>,
    /// Undirected distance from the seeds.
    pub distance: Vec<usize>,
    pub radius: usize,
}

/// Vertices within undirected edge-distance `radius` of the seeds, all edges
/// between them, and every square whose four edges lie in the window.
pub fn window<G: LazyKGraph>(g: &G, seeds: &[G::V], radius: usize) -> Result<Window<G::V, G::E>> {
    let mut dist: BTreeMap<G::V, usize> = BTreeMap::new();
    let mut queue = VecDeque::new();
    for s in seeds {
        if !dist.contains_key(s) {
            dist.insert(s.clone(), 0);
            queue.push_back(s.clone());
        }
    }
    let mut order: Vec<G::V> = Vec::new();
    while let Some(v) = queue.pop_front() {
        order.push(v.clone());
        let d = dist[&v];
        if d == radius {
            continue;
        }
        let mut nbrs = Vec::new();
        for c in 0..g.rank() {
            for e in g.edges_with_range(&v, c) {
                nbrs.push(e.src);
            }
            for e in g.edges_with_source(&v, c) {
                nbrs.push(e.rng);
            }
        }
        for w in nbrs {
            if !dist.contains_key(&w) {
                dist.insert(w.clone(), d + 1);
                queue.push_back(w);
            }
        }
    }
    let vertex_of: HashMap<G::V, usize> = order.iter().enumerate().map(|(i, v)| (v.clone(), i)).collect();
    let mut edges: Vec<LazyEdge<G::V, G::E>> = Vec::new();
    for v in &order {
        for c in 0..g.rank() {
            for e in g.edges_with_range(v, c) {
                if vertex_of.contains_key(&e.src) {
                    edges.push(e);
                }
            }
        }
    }
    let mut seen = std::collections::HashSet::new();
    for e in &edges {
        if !seen.insert(e.id.clone()) {
            return Err(Error::MalformedInput(format!("lazy graph produced edge id {} twice", e.id)));
        }
    }
    let present: std::collections::HashSet<G::E> = edges.iter().map(|e| e.id.clone()).collect();
    let mut by_range: HashMap<(G::V, usize), Vec<usize>> = HashMap::new();
    for (i, e) in edges.iter().enumerate() {
        by_range.entry((e.rng.clone(), e.color)).or_default().push(i);
    }
    let mut squares = Vec::new();
    for e in &edges {
        for j in e.color + 1..g.rank() {
            if let Some(fs) = by_range.get(&(e.src.clone(), j)) {
                for &fi in fs {
                    let f = &edges[fi];
                    if let Some((f2, e2)) = g.square(e, f) {
                        if present.contains(&f2.id) && present.contains(&e2.id) {
                            squares.push(Square {
                                i_edge: e.id.to_string(),
                                j_edge: f.id.to_string(),
                                j_prime: f2.id.to_string(),
                                i_prime: e2.id.to_string(),
                            });
                        }
                    }
                }
            }
        }
    }
    let presentation = Presentation {
        k: g.rank(),
        vertices: order.iter().map(|v| v.to_string()).collect(),
        edges: edges
            .iter()
            .map(|e| Edge { id: e.id.to_string(), color: e.color + 1, src: e.src.to_string(), rng: e.rng.to_string() })
            .collect(),
        squares,
    };
    let graph = KGraph::new_partial(&presentation)?;
    let distance = order.iter().map(|v| dist[v]).collect();
    Ok(Window { presentation, graph, vertices: order, vertex_of, edges, distance, radius })
}

/// A finite presentation viewed as a lazy graph with string labels.
pub struct FiniteLazy<'a>(pub &'a KGraph);

impl LazyKGraph for FiniteLazy<'_> {
    type V = String;
    type E = String;

    fn rank(&self) -> usize {
        self.0.rank()
    }

    fn edges_with_range(&self, v: &String, color: usize) -> Vec<LazyEdge<String, String>> {
        match self.0.vertex(v) {
            Ok(vi) => self.0.edges_with_range(vi, color).iter().map(|&e| self.lazy_edge(e)).collect(),
            Err(_) => Vec::new(),
        }
    }

    fn edges_with_source(&self, v: &String, color: usize) -> Vec<LazyEdge<String, String>> {
        match self.0.vertex(v) {
            Ok(vi) => self.0.edges_with_source(vi, color).iter().map(|&e| self.lazy_edge(e)).collect(),
            Err(_) => Vec::new(),
        }
    }

    fn square(
        &self,
        e: &LazyEdge<String, String>,
        f: &LazyEdge<String, String>,
    ) -> Option<(LazyEdge<String, String>, LazyEdge<String, String>)> {
        let ei = self.0.edge_by_id(&e.id).ok()?;
        let fi = self.0.edge_by_id(&f.id).ok()?;
        let (a, b) = self.0.swap(ei, fi).ok()?;
        Some((self.lazy_edge(a), self.lazy_edge(b)))
    }
}

impl FiniteLazy<'_> {
    fn lazy_edge(&self, e: usize) -> LazyEdge<String, String> {
        let d = self.0.edge(e);
        LazyEdge {
            id: d.id.clone(),
            color: d.color,
            src: self.0.vertex_id(d.src).to_string(),
            rng: self.0.vertex_id(d.rng).to_string(),
        }
    }
}

/// Ω_k: vertices ℕ^k and one edge of color i from m+ε_i to m.
#[derive(Debug, Clone, Copy)]
pub struct Omega {
    pub k: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point(pub Vec<i64>);

impl Display for Point {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OmegaEdge {
    pub at: Point,
    pub color: usize,
}

impl Display for OmegaEdge {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}:{}", self.at, self.color + 1)
    }
}

impl Omega {
    fn edge(&self, at: &Point, color: usize) -> LazyEdge<Point, OmegaEdge> {
        let mut src = at.clone();
        src.0[color] += 1;
        LazyEdge { id: OmegaEdge { at: at.clone(), color }, color, src, rng: at.clone() }
    }
}

impl LazyKGraph for Omega {
    type V = Point;
    type E = OmegaEdge;

    fn rank(&self) -> usize {
        self.k
    }

    fn edges_with_range(&self, v: &Point, color: usize) -> Vec<LazyEdge<Point, OmegaEdge>> {
        vec![self.edge(v, color)]
    }

    fn edges_with_source(&self, v: &Point, color: usize) -> Vec<LazyEdge<Point, OmegaEdge>> {
        if v.0[color] == 0 {
            return Vec::new();
        }
        let mut r = v.clone();
        r.0[color] -= 1;
        vec![self.edge(&r, color)]
    }

    fn square(
        &self,
        e: &LazyEdge<Point, OmegaEdge>,
        f: &LazyEdge<Point, OmegaEdge>,
    ) -> Option<(LazyEdge<Point, OmegaEdge>, LazyEdge<Point, OmegaEdge>)> {
        if e.src != f.rng {
            return None;
        }
        let f2 = self.edge(&e.rng, f.color);
        let e2 = self.edge(&f2.src, e.color);
        Some((f2, e2))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn omega_window_is_a_partial_2_graph() {
        let w = window(&Omega { k: 2 }, &[Point(vec![0, 0])], 3).unwrap();
        // Vertices at undirected distance ≤ 3 from the origin in ℕ².
        assert_eq!(w.vertices.len(), 10);
        assert!(w.graph.square_count() > 0);
    }
}
