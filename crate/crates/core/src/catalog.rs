//! The worked examples as fixtures.

use crate::lazy::{LazyEdge, LazyKGraph};
use crate::presentation::{Edge, Presentation, Square};
use rand::Rng;
use std::fmt;

fn loops(p: &mut Presentation, v: &str, color: usize, ids: &[&str]) {
    for id in ids {
        p.edges.push(Edge::new(*id, color, v, v));
    }
}

/// B_n: one vertex `u` and loops `f1..fn`.
pub fn bouquet(n: usize) -> Presentation {
    let mut p = Presentation::new(1);
    p.vertices.push("u".into());
    for i in 1..=n {
        p.edges.push(Edge::new(format!("f{i}"), 1, "u", "u"));
    }
    p
}

/// A random 1-graph on 1..=max_vertices vertices `v0..` with up to
/// `max_edges` edges `e0..`; loops and parallel edges allowed.
pub fn random_one_graph<R: Rng>(rng: &mut R, max_vertices: usize, max_edges: usize) -> Presentation {
    let mut p = Presentation::new(1);
    let n = rng.gen_range(1..=max_vertices.max(1));
    p.vertices = (0..n).map(|i| format!("v{i}")).collect();
    for i in 0..rng.gen_range(0..=max_edges) {
        let (s, r) = (rng.gen_range(0..n), rng.gen_range(0..n));
        p.edges.push(Edge::new(format!("e{i}"), 1, format!("v{s}"), format!("v{r}")));
    }
    p
}

/// One vertex, d,e of color 1 and a,b,c of color 2.
pub fn pqr_7_1() -> Presentation {
    let mut p = Presentation::new(2);
    p.vertices.push("u".into());
    loops(&mut p, "u", 1, &["d", "e"]);
    loops(&mut p, "u", 2, &["a", "b", "c"]);
    // da = ad, db = be, dc = ae, ea = cd, eb = ce, ec = bd
    for (i, j, j2, i2) in [
        ("d", "a", "a", "d"),
        ("d", "b", "b", "e"),
        ("d", "c", "a", "e"),
        ("e", "a", "c", "d"),
        ("e", "b", "c", "e"),
        ("e", "c", "b", "d"),
    ] {
        p.squares.push(Square::new(i, j, j2, i2));
    }
    p
}

/// The monoidal 2-graph on e1..e4, f1..f4 with e_a f_b = f_b e_a for
/// (a,b) ∈ {(1,4),(4,1)} and e_a f_b = f_a e_b otherwise.
pub fn example_3_2() -> Presentation {
    let mut p = Presentation::new(2);
    p.vertices.push("u".into());
    for a in 1..=4 {
        p.edges.push(Edge::new(format!("e{a}"), 1, "u", "u"));
    }
    for b in 1..=4 {
        p.edges.push(Edge::new(format!("f{b}"), 2, "u", "u"));
    }
    for a in 1..=4 {
        for b in 1..=4 {
            let (j2, i2) = if (a, b) == (1, 4) || (a, b) == (4, 1) { (b, a) } else { (a, b) };
            p.squares.push(Square::new(&format!("e{a}"), &format!("f{b}"), &format!("f{j2}"), &format!("e{i2}")));
        }
    }
    p
}

/// The 3-graph with eight vertices whose 2-colored pieces embed but which does not.
/// Blue edges `e*` have color 1, red `f*` color 2, green `g*` color 3.
pub fn example_3_3() -> Presentation {
    let mut p = Presentation::new(3);
    p.vertices = (0..8).map(|i| format!("v{i}")).collect();
    let edges = [
        ("f2", 2, "v1", "v4"),
        ("f2'", 2, "v1", "v4"),
        ("g2", 3, "v1", "v3"),
        ("f1", 2, "v0", "v4"),
        ("f1'", 2, "v0", "v4"),
        ("g1", 3, "v0", "v3"),
        ("f3", 2, "v3", "v2"),
        ("f3'", 2, "v3", "v2"),
        ("g3", 3, "v4", "v2"),
        ("f4", 2, "v7", "v6"),
        ("f4'", 2, "v7", "v6"),
        ("g4", 3, "v7", "v5"),
        ("e2", 1, "v1", "v7"),
        ("e1", 1, "v0", "v7"),
        ("e4", 1, "v3", "v5"),
        ("e3", 1, "v4", "v6"),
    ];
    for (id, c, s, r) in edges {
        p.edges.push(Edge::new(id, c, s, r));
    }
    let squares = [
        ("e3", "f1", "f4", "e1"),
        ("e3", "f2", "f4", "e2"),
        ("e3", "f1'", "f4'", "e1"),
        ("e3", "f2'", "f4'", "e2"),
        ("e4", "g1", "g4", "e1"),
        ("e4", "g2", "g4", "e2"),
        ("f3", "g2", "g3", "f2"),
        ("f3'", "g2", "g3", "f2'"),
        ("f3'", "g1", "g3", "f1"),
        ("f3", "g1", "g3", "f1'"),
    ];
    for (i, j, j2, i2) in squares {
        p.squares.push(Square::new(i, j, j2, i2));
    }
    p
}

/// Cocycle hints for the three 2-colored subgraphs of [`example_3_3`], as
/// (colors, edges sent to 1). All other edges go to 0.
pub fn example_3_3_hints() -> Vec<([usize; 2], Vec<&'static str>)> {
    vec![
        ([1, 2], vec!["f1", "f2", "f3", "f4"]),
        ([2, 3], vec!["f1", "f2'", "f3'", "f4'"]),
        ([1, 3], vec![]),
    ]
}

/// Four vertices, a single undirected cycle and no directed one.
pub fn singly_connected_e() -> Presentation {
    let mut p = Presentation::new(1);
    p.vertices = ["u", "v", "w", "x"].iter().map(|s| s.to_string()).collect();
    for (id, s, r) in [("e", "u", "v"), ("f", "u", "x"), ("g", "w", "x"), ("h", "w", "v")] {
        p.edges.push(Edge::new(id, 1, s, r));
    }
    p
}

/// Two vertices with a0 e = f a1, a1 e = f a0, b f = e b.
pub fn prop_3_21() -> Presentation {
    let mut p = Presentation::new(2);
    p.vertices = vec!["u".into(), "v".into()];
    p.edges.push(Edge::new("a0", 1, "u", "v"));
    p.edges.push(Edge::new("a1", 1, "u", "v"));
    p.edges.push(Edge::new("b", 1, "v", "u"));
    p.edges.push(Edge::new("e", 2, "u", "u"));
    p.edges.push(Edge::new("f", 2, "v", "v"));
    p.squares.push(Square::new("a0", "e", "f", "a1"));
    p.squares.push(Square::new("a1", "e", "f", "a0"));
    p.squares.push(Square::new("b", "f", "e", "b"));
    p
}

/// Vertices of the non-Hausdorff 1-graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum E45Vertex {
    U(i64),
    V(i64),
    W(i64, u64),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum E45Edge {
    E(i64),
    F(i64),
    G(i64),
    H(i64),
    K(i64, u64),
}

impl fmt::Display for E45Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            E45Vertex::U(n) => write!(f, "u_{n}"),
            E45Vertex::V(n) => write!(f, "v_{n}"),
            E45Vertex::W(n, i) => write!(f, "w_{n},{i}"),
        }
    }
}

impl fmt::Display for E45Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            E45Edge::E(n) => write!(f, "e_{n}"),
            E45Edge::F(n) => write!(f, "f_{n}"),
            E45Edge::G(n) => write!(f, "g_{n}"),
            E45Edge::H(n) => write!(f, "h_{n}"),
            E45Edge::K(n, i) => write!(f, "k_{n},{i}"),
        }
    }
}

/// The 1-graph over ℤ-indexed vertices u_n, v_n, w_{n,i} with
/// r(e_n) = s(e_{n-1}) = r(g_n) = u_n, r(f_n) = s(f_{n-1}) = r(h_n) = v_n,
/// s(g_n) = s(h_n) = r(k_{n,0}) = w_{n,0}, s(k_{n,i}) = r(k_{n,i+1}) = w_{n,i+1}.
#[derive(Debug, Clone, Copy, Default)]
pub struct NonHausdorffE;

impl NonHausdorffE {
    pub fn edge(&self, id: E45Edge) -> LazyEdge<E45Vertex, E45Edge> {
        use E45Edge::*;
        use E45Vertex::*;
        let (src, rng) = match id {
            E(n) => (U(n + 1), U(n)),
            F(n) => (V(n + 1), V(n)),
            G(n) => (W(n, 0), U(n)),
            H(n) => (W(n, 0), V(n)),
            K(n, i) => (W(n, i + 1), W(n, i)),
        };
        LazyEdge { id, color: 0, src, rng }
    }
}

impl LazyKGraph for NonHausdorffE {
    type V = E45Vertex;
    type E = E45Edge;

    fn rank(&self) -> usize {
        1
    }

    fn edges_with_range(&self, v: &E45Vertex, color: usize) -> Vec<LazyEdge<E45Vertex, E45Edge>> {
        if color != 0 {
            return Vec::new();
        }
        let ids = match *v {
            E45Vertex::U(n) => vec![E45Edge::E(n), E45Edge::G(n)],
            E45Vertex::V(n) => vec![E45Edge::F(n), E45Edge::H(n)],
            E45Vertex::W(n, i) => vec![E45Edge::K(n, i)],
        };
        ids.into_iter().map(|e| self.edge(e)).collect()
    }

    fn edges_with_source(&self, v: &E45Vertex, color: usize) -> Vec<LazyEdge<E45Vertex, E45Edge>> {
        if color != 0 {
            return Vec::new();
        }
        let ids = match *v {
            E45Vertex::U(n) => vec![E45Edge::E(n - 1)],
            E45Vertex::V(n) => vec![E45Edge::F(n - 1)],
            E45Vertex::W(n, 0) => vec![E45Edge::G(n), E45Edge::H(n)],
            E45Vertex::W(n, i) => vec![E45Edge::K(n, i - 1)],
        };
        ids.into_iter().map(|e| self.edge(e)).collect()
    }

    fn square(
        &self,
        _e: &LazyEdge<E45Vertex, E45Edge>,
        _f: &LazyEdge<E45Vertex, E45Edge>,
    ) -> Option<(LazyEdge<E45Vertex, E45Edge>, LazyEdge<E45Vertex, E45Edge>)> {
        None
    }
}

/// Names of the finite fixtures shipped as JSON files.
pub const FIXTURE_FILES: &[(&str, &str)] = &[
    ("b1", "b1.json"),
    ("b2", "b2.json"),
    ("b3", "b3.json"),
    ("pqr-7.1", "pqr-7.1.json"),
    ("steinberg-3.2", "steinberg-3.2.json"),
    ("three-graph-3.3", "three-graph-3.3.json"),
    ("singly-connected-e", "singly-connected-e.json"),
    ("prop-3.21", "prop-3.21.json"),
];

/// A finite fixture by name. `B<n>`/`b<n>` gives a bouquet.
pub fn finite(name: &str) -> Option<Presentation> {
    let lower = name.to_ascii_lowercase();
    if let Some(n) = lower.strip_prefix('b').and_then(|s| s.parse::<usize>().ok()) {
        return Some(bouquet(n));
    }
    match lower.as_str() {
        "pqr-7.1" => Some(pqr_7_1()),
        "steinberg-3.2" => Some(example_3_2()),
        "three-graph-3.3" => Some(example_3_3()),
        "singly-connected-e" => Some(singly_connected_e()),
        "prop-3.21" => Some(prop_3_21()),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kgraph::validate_presentation;

    #[test]
    fn finite_fixtures_validate() {
        for (name, _) in FIXTURE_FILES {
            let p = finite(name).unwrap();
            let r = validate_presentation(&p).unwrap();
            assert!(r.ok, "{name}: {:?}", r.failure);
        }
    }

    #[test]
    fn bouquet_shape() {
        let p = finite("B3").unwrap();
        assert_eq!(p.vertices.len(), 1);
        assert_eq!(p.edges.len(), 3);
    }

    #[test]
    fn in_edges_of_u0() {
        let g = NonHausdorffE;
        let ids: Vec<String> =
            g.edges_with_range(&E45Vertex::U(0), 0).iter().map(|e| e.id.to_string()).collect();
        assert_eq!(ids, vec!["e_0", "g_0"]);
        let w = g.edges_with_source(&E45Vertex::W(3, 0), 0);
        assert_eq!(w.len(), 2);
    }
}
