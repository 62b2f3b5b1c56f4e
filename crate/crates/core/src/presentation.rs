//! The serialized form of a k-graph: a colored skeleton plus factorization squares.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::Path;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub id: String,
    /// One-based color.
    pub color: usize,
    pub src: String,
    pub rng: String,
}

/// `i_edge · j_edge = j_prime · i_prime`, with the lower color on the `i` side.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Square {
    pub i_edge: String,
    pub j_edge: String,
    pub j_prime: String,
    pub i_prime: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
    pub k: usize,
    pub vertices: Vec<String>,
    pub edges: Vec<Edge>,
    pub squares: Vec<Square>,
}

impl Edge {
    pub fn new(id: impl Into<String>, color: usize, src: impl Into<String>, rng: impl Into<String>) -> Self {
        Edge { id: id.into(), color, src: src.into(), rng: rng.into() }
    }
}

impl Square {
    pub fn new(i_edge: &str, j_edge: &str, j_prime: &str, i_prime: &str) -> Self {
        Square {
            i_edge: i_edge.to_string(),
            j_edge: j_edge.to_string(),
            j_prime: j_prime.to_string(),
            i_prime: i_prime.to_string(),
        }
    }
}

impl Presentation {
    pub fn new(k: usize) -> Self {
        Presentation { k, vertices: Vec::new(), edges: Vec::new(), squares: Vec::new() }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let p: Presentation = serde_json::from_str(text)?;
        p.check_structure()?;
        Ok(p)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_json(&text)
    }

    /// Pretty JSON with a trailing newline; stable for fixed input.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("presentation serializes");
        s.push('\n');
        s
    }

    /// Dangling references, duplicate ids and color range.
    pub fn check_structure(&self) -> Result<()> {
        if self.k == 0 {
            return Err(Error::MalformedInput("rank k must be positive".into()));
        }
        let mut vs = BTreeSet::new();
        for v in &self.vertices {
            if !vs.insert(v.as_str()) {
                return Err(Error::MalformedInput(format!("duplicate vertex id {v}")));
            }
        }
        let mut es = BTreeSet::new();
        for e in &self.edges {
            if !es.insert(e.id.as_str()) {
                return Err(Error::MalformedInput(format!("duplicate edge id {}", e.id)));
            }
            if e.color == 0 || e.color > self.k {
                return Err(Error::ColorOutOfRange { edge: e.id.clone(), color: e.color, k: self.k });
            }
            for end in [&e.src, &e.rng] {
                if !vs.contains(end.as_str()) {
                    return Err(Error::MalformedInput(format!("edge {} references undeclared vertex {end}", e.id)));
                }
            }
        }
        for sq in &self.squares {
            for id in [&sq.i_edge, &sq.j_edge, &sq.j_prime, &sq.i_prime] {
                if !es.contains(id.as_str()) {
                    return Err(Error::MalformedInput(format!("square references undeclared edge {id}")));
                }
            }
        }
        Ok(())
    }

    pub fn edge(&self, id: &str) -> Option<&Edge> {
        self.edges.iter().find(|e| e.id == id)
    }

    /// Keep only the listed colors (one-based), renumbered in increasing order.
    pub fn restrict_colors(&self, colors: &[usize]) -> Presentation {
        let mut cs: Vec<usize> = colors.to_vec();
        cs.sort_unstable();
        cs.dedup();
        let renum = |c: usize| cs.iter().position(|&x| x == c).map(|i| i + 1);
        let edges: Vec<Edge> = self
            .edges
            .iter()
            .filter_map(|e| renum(e.color).map(|c| Edge { color: c, ..e.clone() }))
            .collect();
        let kept: BTreeSet<&str> = edges.iter().map(|e| e.id.as_str()).collect();
        let squares = self
            .squares
            .iter()
            .filter(|s| kept.contains(s.i_edge.as_str()) && kept.contains(s.j_edge.as_str()))
            .cloned()
            .collect();
        Presentation { k: cs.len(), vertices: self.vertices.clone(), edges, squares }
    }

    /// Graphviz rendering of the skeleton; arrows point from source to range.
    pub fn to_dot(&self) -> String {
        const STYLES: [&str; 6] = [
            "color=blue",
            "color=red",
            "color=darkgreen",
            "color=orange,style=dashed",
            "color=purple,style=dotted",
            "color=black,style=bold",
        ];
        let mut out = String::from("digraph kgraph {\n");
        for v in &self.vertices {
            let _ = writeln!(out, "  \"{v}\";");
        }
        for e in &self.edges {
            let style = STYLES[(e.color - 1) % STYLES.len()];
            let _ = writeln!(out, "  \"{}\" -> \"{}\" [label=\"{}\",{style}];", e.src, e.rng, e.id);
        }
        out.push_str("}\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tiny() -> Presentation {
        Presentation {
            k: 1,
            vertices: vec!["u".into(), "v".into()],
            edges: vec![Edge::new("e", 1, "u", "v")],
            squares: vec![],
        }
    }

    #[test]
    fn json_round_trip_is_byte_stable() {
        let p = tiny();
        let s = p.to_json();
        let q = Presentation::from_json(&s).unwrap();
        assert_eq!(q, p);
        assert_eq!(q.to_json(), s);
    }

    #[test]
    fn structural_errors() {
        let mut p = tiny();
        p.edges[0].rng = "w".into();
        assert!(matches!(p.check_structure(), Err(Error::MalformedInput(_))));
        let mut p = tiny();
        p.edges[0].color = 2;
        assert!(matches!(p.check_structure(), Err(Error::ColorOutOfRange { .. })));
        let mut p = tiny();
        p.vertices.push("u".into());
        assert!(p.check_structure().is_err());
    }

    #[test]
    fn dot_mentions_every_edge() {
        let dot = tiny().to_dot();
        assert!(dot.contains("\"u\" -> \"v\" [label=\"e\",color=blue]"));
    }
}
