//! The covering 2-graph Σ_T ⊆ Γ_T × Γ_T, realized as Γ_T ×_c Λ_T.

use super::lambda::LambdaT;
use super::word::SignedWord;
use crate::constructions::group::Group;
use crate::constructions::skew::{SkewEdge, SkewProduct, SkewVertex};
use crate::degree::Degree;
use crate::error::Result;
use crate::lazy::{window, LazyEdge, LazyKGraph, Window};
use serde::Serialize;
use std::sync::Arc;

pub type SigmaVertex = SkewVertex<SignedWord>;
pub type SigmaEdge = SkewEdge<SignedWord>;

/// Pairs (x, y) with δ(x⁻¹y) ≥ 𝟏, stored through φ(x, y) = (x, x⁻¹y).
#[derive(Debug, Clone)]
pub struct SigmaT {
    pub lambda: Arc<LambdaT>,
    pub skew: SkewProduct<super::word::A2Group>,
}

impl SigmaT {
    pub fn new(lambda: Arc<LambdaT>) -> Self {
        let skew = SkewProduct::new(lambda.graph.clone(), lambda.c.clone());
        SigmaT { lambda, skew }
    }

    fn group(&self) -> &super::word::A2Group {
        &self.lambda.group
    }

    /// φ(x, y) = (x, x⁻¹y) for a vertex pair.
    pub fn phi_vertex(&self, x: &SignedWord, y: &SignedWord) -> Option<SigmaVertex> {
        let l = self.group().mul(&self.group().inv(x), y);
        self.lambda.vertex_index(&l).map(|_| SkewVertex { g: x.clone(), v: l.compact() })
    }

    /// φ(x, y) for an edge pair.
    pub fn phi_edge(&self, x: &SignedWord, y: &SignedWord) -> Option<SigmaEdge> {
        let l = self.group().mul(&self.group().inv(x), y);
        self.lambda.edge_index(&l).map(|_| SkewEdge { g: x.clone(), e: l.compact() })
    }

    /// φ⁻¹(x, λ) = (x, xλ).
    pub fn pair_of_vertex(&self, v: &SigmaVertex) -> Result<(SignedWord, SignedWord)> {
        let i = self.lambda.graph.vertex(&v.v)?;
        Ok((v.g.clone(), self.group().mul(&v.g, self.lambda.vertex_element(i))))
    }

    pub fn pair_of_edge(&self, e: &SigmaEdge) -> Result<(SignedWord, SignedWord)> {
        let i = self.lambda.graph.edge_by_id(&e.e)?;
        Ok((e.g.clone(), self.group().mul(&e.g, &self.lambda.edges[i])))
    }

    /// r(x, y) = (x, z) and s(x, y) = (w, y), computed in Γ_T directly.
    pub fn ends(&self, x: &SignedWord, y: &SignedWord) -> Result<((SignedWord, SignedWord), (SignedWord, SignedWord))> {
        let g = self.group();
        let l = g.mul(&g.inv(x), y);
        let u = g.unit_maps(&l)?;
        Ok(((x.clone(), g.mul(x, &u.r_unit)), (g.mul(x, &u.c_part), y.clone())))
    }

    /// δ(x⁻¹w) + 𝟏 = δ(x⁻¹y) = δ(z⁻¹y) + 𝟏 for vertices (x, z), (w, y).
    pub fn criterion(&self, from: &(SignedWord, SignedWord), to: &(SignedWord, SignedWord)) -> bool {
        let g = self.group();
        let one = Degree::ones(2);
        let delta = |a: &SignedWord, b: &SignedWord| g.shape(&g.mul(&g.inv(a), b));
        let (x, z) = from;
        let (w, y) = to;
        let total = delta(x, y);
        delta(x, w).add(&one) == total && delta(z, y).add(&one) == total
    }

    /// g·(x, y) = (gx, gy) on a vertex label.
    pub fn act_vertex(&self, g: &SignedWord, v: &SigmaVertex) -> SigmaVertex {
        SkewVertex { g: self.group().mul(g, &v.g), v: v.v.clone() }
    }

    pub fn act_edge(&self, g: &SignedWord, e: &LazyEdge<SigmaVertex, SigmaEdge>) -> LazyEdge<SigmaVertex, SigmaEdge> {
        LazyEdge {
            id: SkewEdge { g: self.group().mul(g, &e.id.g), e: e.id.e.clone() },
            color: e.color,
            src: self.act_vertex(g, &e.src),
            rng: self.act_vertex(g, &e.rng),
        }
    }

    /// Window of lazy radius `radius` around (1, v₀), v₀ the least vertex of Λ_T.
    pub fn window(&self, radius: usize) -> Result<Window<SigmaVertex, SigmaEdge>> {
        let seed = SkewVertex { g: SignedWord::default(), v: self.lambda.graph.vertex_id(0).to_string() };
        window(self, &[seed], radius)
    }
}

impl LazyKGraph for SigmaT {
    type V = SigmaVertex;
    type E = SigmaEdge;

    fn rank(&self) -> usize {
        2
    }

    fn edges_with_range(&self, v: &SigmaVertex, color: usize) -> Vec<LazyEdge<SigmaVertex, SigmaEdge>> {
        self.skew.edges_with_range(v, color)
    }

    fn edges_with_source(&self, v: &SigmaVertex, color: usize) -> Vec<LazyEdge<SigmaVertex, SigmaEdge>> {
        self.skew.edges_with_source(v, color)
    }

    fn square(
        &self,
        e: &LazyEdge<SigmaVertex, SigmaEdge>,
        f: &LazyEdge<SigmaVertex, SigmaEdge>,
    ) -> Option<(LazyEdge<SigmaVertex, SigmaEdge>, LazyEdge<SigmaVertex, SigmaEdge>)> {
        self.skew.square(e, f)
    }
}

/// Exhaustive checks on a window of Σ_T.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SigmaCheck {
    pub radius: usize,
    pub vertices: usize,
    pub edges: usize,
    /// Morphisms between window vertices whose canonical path stays inside.
    pub morphisms: usize,
    /// Vertex pairs joined by two different morphisms.
    pub duplicate_pairs: usize,
    /// Pairs where the shape criterion and connectivity disagree.
    pub criterion_mismatches: usize,
    /// Pairs meeting the criterion whose morphism leaves the window.
    pub connected_outside: usize,
    /// Window vertices and edges whose φ⁻¹ then φ does not return them.
    pub round_trip_failures: usize,
}

impl SigmaCheck {
    pub fn clean(&self) -> bool {
        self.duplicate_pairs == 0 && self.criterion_mismatches == 0 && self.round_trip_failures == 0
    }
}

/// On the lazy window of the given radius: φ round trips on every vertex and
/// edge; every morphism that is a path inside the window, grouped by its end
/// points; and on every ordered vertex pair, the shape criterion against
/// connectivity computed in Γ_T.
pub fn check_window(s: &SigmaT, radius: usize) -> Result<SigmaCheck> {
    let w = s.window(radius)?;
    let g = &w.graph;
    let n = g.vertex_count();
    let pairs: Vec<(SignedWord, SignedWord)> = w.vertices.iter().map(|v| s.pair_of_vertex(v)).collect::<Result<_>>()?;
    let mut round_trip_failures = 0;
    for (v, (x, y)) in w.vertices.iter().zip(&pairs) {
        if s.phi_vertex(x, y).as_ref() != Some(v) {
            round_trip_failures += 1;
        }
    }
    for e in &w.edges {
        let (x, y) = s.pair_of_edge(&e.id)?;
        if s.phi_edge(&x, &y).as_ref() != Some(&e.id) {
            round_trip_failures += 1;
        }
        let (r, src) = s.ends(&x, &y)?;
        if r != pairs[w.vertex_of[&e.rng]] || src != pairs[w.vertex_of[&e.src]] {
            round_trip_failures += 1;
        }
    }
    let mut morphisms = 0;
    let mut duplicate_pairs = 0;
    let mut criterion_mismatches = 0;
    let mut connected_outside = 0;
    for u in 0..n {
        // canonical paths: color-1 edges, then color-2 edges
        let mut count = vec![0usize; n];
        let mut stack = vec![(u, false)];
        while let Some((at, second)) = stack.pop() {
            if !second {
                for &e in g.edges_with_range(at, 0) {
                    count[g.edge(e).src] += 1;
                    stack.push((g.edge(e).src, false));
                }
            }
            for &e in g.edges_with_range(at, 1) {
                count[g.edge(e).src] += 1;
                stack.push((g.edge(e).src, true));
            }
        }
        let (x, _) = &pairs[u];
        for v in 0..n {
            if v == u {
                continue;
            }
            morphisms += count[v];
            if count[v] > 1 {
                duplicate_pairs += 1;
            }
            // (x, y) is a morphism of Σ_T from pairs[v] to pairs[u]
            let (_, y) = &pairs[v];
            let l = s.group().mul(&s.group().inv(x), y);
            let by_group = Degree::ones(2).le(&s.group().shape(&l)) && s.ends(x, y)? == (pairs[u].clone(), pairs[v].clone());
            if s.criterion(&pairs[u], &pairs[v]) != by_group || (count[v] > 0 && !by_group) {
                criterion_mismatches += 1;
            }
            if by_group && count[v] == 0 {
                connected_outside += 1;
            }
        }
    }
    Ok(SigmaCheck {
        radius,
        vertices: n,
        edges: g.edge_count(),
        morphisms,
        duplicate_pairs,
        criterion_mismatches,
        connected_outside,
        round_trip_failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::a2::lambda::lambda_t;
    use crate::a2::plane::Triella;

    fn sigma() -> SigmaT {
        SigmaT::new(Arc::new(lambda_t(Arc::new(Triella::preset("A1").unwrap())).unwrap()))
    }

    #[test]
    fn radius_two_window_is_singly_connected() {
        let s = sigma();
        let r = check_window(&s, 2).unwrap();
        assert!(r.clean(), "{r:?}");
        assert_eq!((r.vertices, r.edges), (155, 256));
        assert!(r.morphisms > r.edges);
    }

    #[test]
    fn phi_round_trips() {
        let s = sigma();
        let w = s.window(2).unwrap();
        for v in &w.vertices {
            let (x, y) = s.pair_of_vertex(v).unwrap();
            assert_eq!(s.phi_vertex(&x, &y).as_ref(), Some(v));
        }
    }

    #[test]
    fn criterion_picks_out_edges() {
        let s = sigma();
        let w = s.window(1).unwrap();
        let e = &w.edges[0];
        let from = s.pair_of_vertex(&e.rng).unwrap();
        let to = s.pair_of_vertex(&e.src).unwrap();
        assert!(s.criterion(&from, &to));
        assert!(!s.criterion(&to, &from));
        assert_eq!(s.pair_of_edge(&e.id).unwrap(), (from.0.clone(), to.1.clone()));
    }

    #[test]
    fn action_preserves_degree_and_ends() {
        let s = sigma();
        let w = s.window(1).unwrap();
        let g = s.group().clone();
        for word in ["a3", "a0 a5^-1", "a6^-1 a2^-1 a1"] {
            let h = g.elem(word).unwrap();
            for e in &w.edges {
                let moved = s.act_edge(&h, e);
                let genuine = s.edges_with_range(&moved.rng, e.color);
                assert!(genuine.contains(&moved), "{word} · {:?}", e.id);
                assert_eq!(moved.src, s.act_vertex(&h, &e.src));
            }
        }
    }

    #[test]
    fn orbit_map_lands_in_lambda() {
        let s = sigma();
        let w = s.window(2).unwrap();
        for e in &w.edges {
            let (x, y) = s.pair_of_edge(&e.id).unwrap();
            let l = s.group().mul(&s.group().inv(&x), &y);
            assert_eq!(l.compact(), e.id.e);
            assert!(s.lambda.edge_index(&l).is_some());
        }
    }
}
