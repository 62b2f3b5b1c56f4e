//! The 2-graph Λ_T of elements with δ ≥ 𝟏 and its cocycles b, c.

use super::plane::Triella;
use super::word::{A2Group, Letter, SignedWord, UnitMaps};
use crate::constructions::cocycle::Cocycle;
use crate::constructions::group::Group;
use crate::degree::Degree;
use crate::error::{Error, Result};
use crate::kgraph::{matrix_product, KGraph, Morphism};
use crate::presentation::{Edge, Presentation, Square};
use serde::Serialize;
use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::Arc;

/// Every right normal form of shape (m, n), sorted.
pub fn elements_of_shape(t: &Triella, m: usize, n: usize) -> Vec<SignedWord> {
    let p = t.points();
    let mut positives: Vec<Vec<Letter>> = vec![vec![]];
    for _ in 0..m {
        positives = positives
            .into_iter()
            .flat_map(|w| {
                (0..p).filter_map(move |x| {
                    if w.last().is_some_and(|l: &Letter| t.in_lambda(l.point as usize, x)) {
                        return None;
                    }
                    let mut v = w.clone();
                    v.push(Letter::pos(x));
                    Some(v)
                })
            })
            .collect();
    }
    // negatives are built right to left: y_j ∉ λ(y_{j+1})
    let mut negatives: Vec<Vec<Letter>> = vec![vec![]];
    for _ in 0..n {
        negatives = negatives
            .into_iter()
            .flat_map(|w| {
                (0..p).filter_map(move |y| {
                    if w.first().is_some_and(|l: &Letter| t.in_lambda(l.point as usize, y)) {
                        return None;
                    }
                    let mut v = vec![Letter::neg(y)];
                    v.extend(&w);
                    Some(v)
                })
            })
            .collect();
    }
    let mut out = Vec::new();
    for a in &positives {
        for b in &negatives {
            if let (Some(x), Some(y)) = (a.last(), b.first()) {
                if x.point == y.point {
                    continue;
                }
            }
            out.push(SignedWord(a.iter().chain(b).copied().collect()));
        }
    }
    out.sort();
    out
}

#[derive(Debug, Clone)]
pub struct LambdaT {
    pub group: A2Group,
    pub presentation: Presentation,
    pub graph: KGraph,
    /// Vertex elements in graph order (sorted).
    pub vertices: Vec<SignedWord>,
    /// Edge elements in graph order.
    pub edges: Vec<SignedWord>,
    pub b: Cocycle<A2Group>,
    pub c: Cocycle<A2Group>,
    vertex_of: HashMap<SignedWord, usize>,
    edge_of: HashMap<SignedWord, usize>,
}

/// Build Λ_T: vertices of shape 𝟏, edges of shapes (2,1) and (1,2), squares
/// from the two factorizations of each shape-(2,2) element.
pub fn lambda_t(t: Arc<Triella>) -> Result<LambdaT> {
    let group = A2Group::new(t.clone());
    let vertices = elements_of_shape(&t, 1, 1);
    let mut p = Presentation::new(2);
    p.vertices = vertices.iter().map(SignedWord::compact).collect();
    let mut edges = Vec::new();
    let mut maps: Vec<UnitMaps> = Vec::new();
    for (color, (m, n)) in [(1usize, (2usize, 1usize)), (2, (1, 2))] {
        for w in elements_of_shape(&t, m, n) {
            let u = group.unit_maps(&w)?;
            p.edges.push(Edge::new(w.compact(), color, u.s_unit.compact(), u.r_unit.compact()));
            edges.push(w);
            maps.push(u);
        }
    }
    let d = |a: u32, b: u32| Degree(vec![a, b]);
    for w in elements_of_shape(&t, 2, 2) {
        // w = g h k with δ(g) = ε₁, δ(h) = 𝟏, δ(k) = ε₂ gives e = gh, f = hk
        let (g, rest) = group.unique_factorize(&w, &d(1, 0), &d(1, 2))?;
        let (h, k) = group.unique_factorize(&rest, &d(1, 1), &d(0, 1))?;
        let (g2, rest2) = group.unique_factorize(&w, &d(0, 1), &d(2, 1))?;
        let (h2, k2) = group.unique_factorize(&rest2, &d(1, 1), &d(1, 0))?;
        let e = group.mul(&g, &h);
        let f = group.mul(&h, &k);
        let f2 = group.mul(&g2, &h2);
        let e2 = group.mul(&h2, &k2);
        p.squares.push(Square::new(&e.compact(), &f.compact(), &f2.compact(), &e2.compact()));
    }
    let graph = KGraph::new(&p)?;
    let edge_of: HashMap<SignedWord, usize> = edges.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
    // graph edge order follows the presentation
    let mut b_labels = vec![SignedWord::default(); edges.len()];
    let mut c_labels = vec![SignedWord::default(); edges.len()];
    for (i, u) in maps.iter().enumerate() {
        let gi = graph.edge_by_id(&edges[i].compact())?;
        b_labels[gi] = u.d_part.clone();
        c_labels[gi] = u.c_part.clone();
    }
    let b = Cocycle::new(&graph, group.clone(), b_labels)?;
    let c = Cocycle::new(&graph, group.clone(), c_labels)?;
    let vertex_of = vertices.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
    Ok(LambdaT { group, presentation: p, graph, vertices, edges, b, c, vertex_of, edge_of })
}

/// Results of checking morphisms of Λ_T against the group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MorphismCheck {
    pub morphisms: usize,
    pub cap: Degree,
    /// λ ↦ (c(λ), s(λ)) is injective on the checked morphisms.
    pub c_essential: bool,
}

impl LambdaT {
    pub fn vertex_index(&self, w: &SignedWord) -> Option<usize> {
        self.vertex_of.get(w).copied()
    }

    pub fn edge_index(&self, w: &SignedWord) -> Option<usize> {
        self.edge_of.get(w).copied()
    }

    pub fn vertex_element(&self, v: usize) -> &SignedWord {
        &self.vertices[v]
    }

    /// The group element of a morphism: c(λ)·s(λ).
    pub fn element(&self, m: &Morphism) -> SignedWord {
        self.group.mul(&self.c.eval(m), &self.vertices[m.source])
    }

    /// For every morphism of degree ≤ `cap`: c(λ)s(λ) = r(λ)b(λ), δ = d + 𝟏, the
    /// unit maps of the element match the graph, and λ ↦ (c(λ), s(λ)) is injective.
    pub fn check_morphisms(&self, cap: &Degree) -> Result<MorphismCheck> {
        let one = Degree::ones(2);
        let mut seen: HashSet<(SignedWord, usize)> = HashSet::new();
        let mut count = 0;
        let mut essential = true;
        for n in cap.below() {
            for v in 0..self.graph.vertex_count() {
                for m in self.graph.morphisms_from(v, &n) {
                    count += 1;
                    let cl = self.c.eval(&m);
                    let via_c = self.group.mul(&cl, &self.vertices[m.source]);
                    let via_b = self.group.mul(&self.vertices[m.range], &self.b.eval(&m));
                    let show = || self.graph.show(&m);
                    if via_c != via_b {
                        return Err(Error::Invalid(format!("c·s ≠ r·b on {}", show())));
                    }
                    if self.group.shape(&via_c) != n.add(&one) {
                        return Err(Error::Invalid(format!("δ({via_c}) ≠ d + 𝟏 on {}", show())));
                    }
                    if !n.is_zero() {
                        let u = self.group.unit_maps(&via_c)?;
                        if self.vertex_index(&u.s_unit) != Some(m.source) || self.vertex_index(&u.r_unit) != Some(m.range) {
                            return Err(Error::Invalid(format!("unit maps disagree with the graph on {}", show())));
                        }
                        if u.c_part != cl {
                            return Err(Error::Invalid(format!("c({}) is not the c-part of its element", show())));
                        }
                    }
                    essential &= seen.insert((cl, m.source));
                }
            }
        }
        Ok(MorphismCheck { morphisms: count, cap: cap.clone(), c_essential: essential })
    }

    /// M₁, M₂ in vertex order, with whether they commute and M₁M₂ is 0/1.
    pub fn matrices(&self) -> (Vec<Vec<Vec<u64>>>, bool, bool) {
        let m = self.graph.adjacency_matrices();
        let ab = matrix_product(&m[0], &m[1]);
        let ba = matrix_product(&m[1], &m[0]);
        let zero_one = ab.iter().flatten().all(|&x| x <= 1);
        (m, ab == ba, zero_one)
    }

    /// Edge id ↦ (b, c) labels.
    pub fn cocycle_table(&self) -> BTreeMap<String, (String, String)> {
        (0..self.graph.edge_count())
            .map(|e| (self.graph.edge(e).id.clone(), (self.b.label(e).to_string(), self.c.label(e).to_string())))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kgraph::validate_presentation;

    fn a1() -> LambdaT {
        lambda_t(Arc::new(Triella::preset("A1").unwrap())).unwrap()
    }

    #[test]
    fn shape_counts() {
        let t = Triella::preset("A1").unwrap();
        assert_eq!(elements_of_shape(&t, 1, 1).len(), 42);
        assert_eq!(elements_of_shape(&t, 2, 1).len(), 168);
        assert_eq!(elements_of_shape(&t, 2, 2).len(), 672);
        for w in elements_of_shape(&t, 1, 2) {
            assert_eq!(t.normalize(&w), w);
        }
        for w in elements_of_shape(&t, 2, 1) {
            assert_eq!(t.normalize(&w), w);
        }
    }

    #[test]
    fn lambda_a1_counts_and_validation() {
        let l = a1();
        assert_eq!(l.graph.vertex_count(), 42);
        let by_color = |c: usize| l.graph.edges().iter().filter(|e| e.color == c).count();
        assert_eq!((by_color(0), by_color(1)), (168, 168));
        assert!(validate_presentation(&l.presentation).unwrap().ok);
        let (m, commute, zero_one) = l.matrices();
        assert!(commute && zero_one);
        assert!(m[0].iter().all(|row| row.iter().sum::<u64>() == 4));
    }

    #[test]
    fn edge_structure_maps() {
        let l = a1();
        let w = l.group.elem("a0 a3 a5^-1").unwrap();
        let e = l.graph.edge_by_id(&w.compact()).unwrap();
        let d = l.graph.edge(e);
        assert_eq!(l.graph.vertex_id(d.rng), "a0a1^-1");
        assert_eq!(l.graph.vertex_id(d.src), "a3a5^-1");
        assert_eq!(l.c.label(e).to_string(), "a0");
    }

    #[test]
    fn morphisms_match_the_group() {
        let l = a1();
        let r = l.check_morphisms(&Degree(vec![1, 1])).unwrap();
        assert!(r.c_essential);
        assert_eq!(r.morphisms, 42 * (1 + 4 + 4 + 16));
    }
}
