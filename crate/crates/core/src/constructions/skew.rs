//! Skew products G ×_c Λ with r(g, λ) = (g, r(λ)) and s(g, λ) = (g c(λ), s(λ)).

use super::cocycle::{free_cocycle, Cocycle};
use super::group::{FreeGroup, Group};
use crate::error::{Error, Result};
use crate::kgraph::KGraph;
use crate::lazy::{window, LazyEdge, LazyKGraph};
use crate::presentation::{Edge, Presentation, Square};
use std::collections::{BTreeMap, HashMap};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SkewVertex<X> {
    pub g: X,
    pub v: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SkewEdge<X> {
    pub g: X,
    pub e: String,
}

impl<X: fmt::Display> fmt::Display for SkewVertex<X> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}|{})", self.g, self.v)
    }
}

impl<X: fmt::Display> fmt::Display for SkewEdge<X> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}|{})", self.g, self.e)
    }
}

#[derive(Debug, Clone)]
pub struct SkewProduct<G: Group> {
    pub base: KGraph,
    pub cocycle: Cocycle<G>,
    forest: bool,
}

type SEdge<G> = LazyEdge<SkewVertex<<G as Group>::Elem>, SkewEdge<<G as Group>::Elem>>;

impl<G: Group> SkewProduct<G> {
    /// The cocycle was checked functorial when it was built.
    pub fn new(base: KGraph, cocycle: Cocycle<G>) -> Self {
        SkewProduct { base, cocycle, forest: false }
    }

    fn lazy_edge(&self, g: &G::Elem, e: usize) -> SEdge<G> {
        let d = self.base.edge(e);
        let h = self.cocycle.group.mul(g, self.cocycle.label(e));
        LazyEdge {
            id: SkewEdge { g: g.clone(), e: d.id.clone() },
            color: d.color,
            src: SkewVertex { g: h, v: self.base.vertex_id(d.src).to_string() },
            rng: SkewVertex { g: g.clone(), v: self.base.vertex_id(d.rng).to_string() },
        }
    }

    /// Seeds (g, v) for every base vertex v.
    pub fn seeds(&self, g: &G::Elem) -> Vec<SkewVertex<G::Elem>> {
        (0..self.base.vertex_count())
            .map(|v| SkewVertex { g: g.clone(), v: self.base.vertex_id(v).to_string() })
            .collect()
    }

    /// Full presentation when G is finite.
    pub fn finite_presentation(&self) -> Result<Presentation> {
        let elems = self
            .cocycle
            .group
            .elements()
            .ok_or_else(|| Error::WindowTooSmall("group is infinite; use a window".into()))?;
        let seeds: Vec<_> = elems.iter().flat_map(|g| self.seeds(g)).collect();
        let w = window(self, &seeds, 0)?;
        let _ = KGraph::new(&w.presentation)?;
        Ok(w.presentation)
    }
}

impl<G: Group> LazyKGraph for SkewProduct<G> {
    type V = SkewVertex<G::Elem>;
    type E = SkewEdge<G::Elem>;

    fn rank(&self) -> usize {
        self.base.rank()
    }

    fn edges_with_range(&self, v: &Self::V, color: usize) -> Vec<SEdge<G>> {
        let Ok(vi) = self.base.vertex(&v.v) else { return Vec::new() };
        self.base.edges_with_range(vi, color).iter().map(|&e| self.lazy_edge(&v.g, e)).collect()
    }

    fn edges_with_source(&self, v: &Self::V, color: usize) -> Vec<SEdge<G>> {
        let Ok(vi) = self.base.vertex(&v.v) else { return Vec::new() };
        let mut out: Vec<SEdge<G>> = self
            .base
            .edges_with_source(vi, color)
            .iter()
            .map(|&e| {
                let g = self.cocycle.group.mul(&v.g, &self.cocycle.group.inv(self.cocycle.label(e)));
                self.lazy_edge(&g, e)
            })
            .collect();
        out.sort_by(|a, b| a.id.cmp(&b.id));
        out
    }

    fn square(&self, e: &SEdge<G>, f: &SEdge<G>) -> Option<(SEdge<G>, SEdge<G>)> {
        if e.src != f.rng {
            return None;
        }
        let ei = self.base.edge_by_id(&e.id.e).ok()?;
        let fi = self.base.edge_by_id(&f.id.e).ok()?;
        let (f2, e2) = self.base.swap(ei, fi).ok()?;
        let g = &e.id.g;
        let f2e = self.lazy_edge(g, f2);
        let e2e = self.lazy_edge(&f2e.src.g, e2);
        Some((f2e, e2e))
    }

    fn is_forest(&self) -> bool {
        self.forest
    }
}

/// 𝔽_n ×_c E for a 1-graph E with every edge a distinct free generator:
/// its skeleton is a forest of copies of the universal cover.
pub fn free_cover(base: KGraph) -> Result<SkewProduct<FreeGroup>> {
    if base.rank() != 1 {
        return Err(Error::MalformedInput("free covers are built for 1-graphs".into()));
    }
    let c = free_cocycle(&base);
    Ok(SkewProduct { base, cocycle: c, forest: true })
}

/// Collapse the G-orbits of a window of a skew product back to a presentation.
///
/// Orbits are read from the (g|x) labels; consistency of endpoints and squares
/// across each orbit is checked, and the result is validated.
pub fn skew_quotient<G: Group>(sp: &SkewProduct<G>, radius: usize) -> Result<Presentation> {
    let seeds = sp.seeds(&sp.cocycle.group.identity());
    let w = window(sp, &seeds, radius.max(2))?;
    let mut vertices: Vec<String> = Vec::new();
    let mut vseen: BTreeMap<String, ()> = BTreeMap::new();
    for v in &w.vertices {
        if vseen.insert(v.v.clone(), ()).is_none() {
            vertices.push(v.v.clone());
        }
    }
    let mut edges: Vec<Edge> = Vec::new();
    let mut eseen: HashMap<String, (usize, String, String)> = HashMap::new();
    for e in &w.edges {
        let key = e.id.e.clone();
        let val = (e.color, e.src.v.clone(), e.rng.v.clone());
        match eseen.get(&key) {
            Some(prev) if *prev != val => {
                return Err(Error::NotASkewProduct(format!("orbit of edge {key} has inconsistent endpoints")));
            }
            Some(_) => {}
            None => {
                eseen.insert(key.clone(), val.clone());
                edges.push(Edge { id: key, color: val.0 + 1, src: val.1, rng: val.2 });
            }
        }
    }
    let orbit_of_edge: HashMap<String, String> =
        w.edges.iter().map(|e| (e.id.to_string(), e.id.e.clone())).collect();
    let mut squares: Vec<Square> = Vec::new();
    let mut sseen: HashMap<(String, String), (String, String)> = HashMap::new();
    for s in &w.presentation.squares {
        let o = |id: &String| orbit_of_edge[id].clone();
        let key = (o(&s.i_edge), o(&s.j_edge));
        let val = (o(&s.j_prime), o(&s.i_prime));
        match sseen.get(&key) {
            Some(prev) if *prev != val => {
                return Err(Error::NotASkewProduct(format!("orbit squares disagree at ({}, {})", key.0, key.1)));
            }
            Some(_) => {}
            None => {
                sseen.insert(key.clone(), val.clone());
                squares.push(Square { i_edge: key.0, j_edge: key.1, j_prime: val.0, i_prime: val.1 });
            }
        }
    }
    let p = Presentation { k: sp.rank(), vertices, edges, squares };
    KGraph::new(&p)?;
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::constructions::cocycle::degree_cocycle;
    use crate::constructions::group::FiniteGroup;
    use crate::constructions::iso::isomorphic;

    #[test]
    fn trivial_group_gives_base() {
        let g = KGraph::new(&catalog::pqr_7_1()).unwrap();
        let c = Cocycle::trivial(&g, FiniteGroup::cyclic(1));
        let sp = SkewProduct::new(g.clone(), c);
        let p = sp.finite_presentation().unwrap();
        assert!(isomorphic(&p, g.presentation()).is_some());
    }

    #[test]
    fn finite_cover_of_b2() {
        let g = KGraph::new(&catalog::bouquet(2)).unwrap();
        let z3 = FiniteGroup::cyclic(3);
        let c = Cocycle::from_ids(&g, z3.clone(), &[("f1", 1)]).unwrap();
        let p = SkewProduct::new(g, c).finite_presentation().unwrap();
        assert_eq!(p.vertices.len(), 3);
        assert_eq!(p.edges.len(), 6);
    }

    #[test]
    fn quotients_round_trip() {
        let g = KGraph::new(&catalog::pqr_7_1()).unwrap();
        let sp = SkewProduct::new(g.clone(), degree_cocycle(&g));
        let q = skew_quotient(&sp, 2).unwrap();
        assert_eq!(q.vertices.len(), 1);
        assert!(isomorphic(&q, g.presentation()).is_some());

        let b2 = KGraph::new(&catalog::bouquet(2)).unwrap();
        let q = skew_quotient(&free_cover(b2.clone()).unwrap(), 3).unwrap();
        assert!(isomorphic(&q, b2.presentation()).is_some());
    }
}
