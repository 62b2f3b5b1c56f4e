//! Essential cocycles, simple connectivity, grading functions and the
//! combined embeddability verdict.

use super::collapse::{collapse_search_with, CollapseProof, SearchSummary};
use super::pi1::{abelianized_invariants, universal_abelian_cocycle, AbelianInvariants, TreeContraction};
use super::rewrite::{Completion, Limits};
use crate::connectivity::{find_cycle, singly_connected, SinglyConnected};
use crate::constructions::cocycle::{essential_up_to, free_cocycle, Cocycle};
use crate::constructions::group::{AbelianGroup, Group};
use crate::degree::Degree;
use crate::error::Result;
use crate::kgraph::KGraph;
use crate::lazy::{Label, Window};
use serde::Serialize;
use std::collections::{BTreeMap, VecDeque};

/// An abelian cocycle offered to the essential search; it is paired with d.
#[derive(Debug, Clone)]
pub struct CocycleHint {
    pub name: String,
    pub cocycle: Cocycle<AbelianGroup>,
}

impl CocycleHint {
    /// Integer labels by edge id; unlisted edges get 0.
    pub fn integer(g: &KGraph, name: &str, labels: &[(&str, i64)]) -> Result<Self> {
        let z = AbelianGroup::free(1);
        let by_id: Vec<(&str, _)> = labels.iter().map(|(id, x)| (*id, z.element(vec![*x]))).collect();
        Ok(CocycleHint { name: name.to_string(), cocycle: Cocycle::from_ids(g, z, &by_id)? })
    }
}

/// (d, c) into ℤ^k ⊕ target(c).
pub fn pair_with_degree(g: &KGraph, c: &Cocycle<AbelianGroup>) -> Result<Cocycle<AbelianGroup>> {
    let k = g.rank();
    let mut moduli = vec![0; k];
    moduli.extend(&c.group.moduli);
    let group = AbelianGroup { moduli };
    let labels = (0..g.edge_count())
        .map(|e| {
            let mut v = vec![0i64; k];
            v[g.edge(e).color] = 1;
            v.extend(&c.labels[e].0);
            group.element(v)
        })
        .collect();
    Cocycle::new(g, group, labels)
}

#[derive(Debug, Clone, Serialize)]
pub struct EssentialCocycle {
    /// "free", "hint:<name>" or "universal-abelian".
    pub source: String,
    pub target: String,
    pub labels: BTreeMap<String, String>,
    pub degree_bound: Degree,
    pub morphisms_checked: usize,
    /// True when the bounded check covers every morphism of the graph.
    pub exhaustive: bool,
    pub note: String,
}

/// Longest directed path, for graphs without directed cycles.
fn longest_path(g: &KGraph) -> Option<u32> {
    if find_cycle(g).is_some() {
        return None;
    }
    let n = g.vertex_count();
    let mut memo: Vec<Option<u32>> = vec![None; n];
    fn go(g: &KGraph, v: usize, memo: &mut Vec<Option<u32>>) -> u32 {
        if let Some(x) = memo[v] {
            return x;
        }
        let mut best = 0;
        for c in 0..g.rank() {
            for &e in g.edges_with_range(v, c) {
                best = best.max(1 + go(g, g.edge(e).src, memo));
            }
        }
        memo[v] = Some(best);
        best
    }
    Some((0..n).map(|v| go(g, v, &mut memo)).max().unwrap_or(0))
}

fn effective_bound(g: &KGraph, bound: &Degree) -> (Degree, bool) {
    match longest_path(g) {
        Some(l) => {
            let b = Degree(bound.0.iter().map(|&x| x.max(l)).collect());
            (b, true)
        }
        None => (bound.clone(), false),
    }
}

fn labels_of<G: Group>(g: &KGraph, c: &Cocycle<G>) -> BTreeMap<String, String> {
    g.edges().iter().enumerate().map(|(i, e)| (e.id.clone(), c.labels[i].to_string())).collect()
}

/// Candidates in order: the free cocycle (1-graphs), the hints, then the
/// universal abelian cocycle; each paired with d and checked on every
/// uΛ^n v with n ≤ the bound.
pub fn essential_cocycle_search(g: &KGraph, degree_bound: &Degree, hints: &[CocycleHint]) -> Option<EssentialCocycle> {
    let (bound, exhaustive) = effective_bound(g, degree_bound);
    let pairing = "paired with the degree functor, so distinct degrees are separated and the per-degree checks below are exact for n ≤ the bound";
    if g.rank() == 1 {
        let c = free_cocycle(g);
        if let Ok(checked) = essential_up_to(g, &c, &bound) {
            return Some(EssentialCocycle {
                source: "free".into(),
                target: format!("free group of rank {}", g.edge_count()),
                labels: labels_of(g, &c),
                degree_bound: bound,
                morphisms_checked: checked,
                exhaustive: true,
                note: "each edge is a distinct free generator, so distinct paths have distinct reduced words".into(),
            });
        }
    }
    for h in hints {
        let Ok(c) = pair_with_degree(g, &h.cocycle) else { continue };
        if let Ok(checked) = essential_up_to(g, &c, &bound) {
            return Some(EssentialCocycle {
                source: format!("hint:{}", h.name),
                target: format!("{:?}", c.group.moduli),
                labels: labels_of(g, &c),
                degree_bound: bound,
                morphisms_checked: checked,
                exhaustive,
                note: pairing.into(),
            });
        }
    }
    let c = universal_abelian_cocycle(g).ok()?;
    let checked = essential_up_to(g, &c, &bound).ok()?;
    Some(EssentialCocycle {
        source: "universal-abelian".into(),
        target: format!("{:?}", c.group.moduli),
        labels: labels_of(g, &c),
        degree_bound: bound,
        morphisms_checked: checked,
        exhaustive,
        note: pairing.into(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum SimplyConnected {
    Yes,
    /// Every generator based within `core_radius` of the seeds is trivial,
    /// using the relators available in a radius-`radius` window.
    YesWithinWindow { core_radius: usize, radius: usize },
    No { abelian_invariants: AbelianInvariants },
    Inconclusive { depth: usize },
}

/// No if π₁ has nontrivial abelianization; Yes if completion kills every
/// generator within `depth` passes.
pub fn simply_connected_test(g: &KGraph, depth: usize) -> Result<SimplyConnected> {
    let tc = TreeContraction::new(g)?;
    let inv = abelianized_invariants(&tc.group);
    if !inv.is_trivial() {
        return Ok(SimplyConnected::No { abelian_invariants: inv });
    }
    let gens: Vec<i32> = (1..=tc.group.generators.len() as i32).collect();
    if generators_trivial(&tc, &gens, depth) {
        Ok(SimplyConnected::Yes)
    } else {
        Ok(SimplyConnected::Inconclusive { depth })
    }
}

fn generators_trivial(tc: &TreeContraction, gens: &[i32], depth: usize) -> bool {
    let mut kb = Completion::new(tc.group.generators.len(), &tc.group.relators, Limits::default());
    loop {
        if gens.iter().all(|&x| kb.reduce(&[x]).0.is_empty()) {
            return true;
        }
        if kb.passes() >= depth || kb.is_complete() {
            return false;
        }
        kb.pass();
    }
}

/// Windowed version: only generators whose edges lie within `core_radius`
/// of the seeds are tested, since loops near the boundary can lack the
/// squares that fill them in the full graph.
pub fn simply_connected_window<V: Label, E: Label>(w: &Window<V, E>, core_radius: usize, depth: usize) -> Result<SimplyConnected> {
    let g = &w.graph;
    let tc = TreeContraction::new(g)?;
    let gens: Vec<i32> = (0..g.edge_count())
        .filter(|&e| {
            let d = g.edge(e);
            tc.letter[e] != 0 && w.distance[d.src].max(w.distance[d.rng]) <= core_radius
        })
        .map(|e| tc.letter[e])
        .collect();
    if generators_trivial(&tc, &gens, depth) {
        Ok(SimplyConnected::YesWithinWindow { core_radius, radius: w.radius })
    } else {
        Ok(SimplyConnected::Inconclusive { depth })
    }
}

/// f with d(λ) = f(s(λ)) − f(r(λ)), f(base) = 0 on each component.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Grading {
    pub values: Vec<Vec<i64>>,
}

/// A closed walk whose degree sum is nonzero.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GradingFailure {
    pub edge: String,
    /// Tree path to r(edge), the edge, tree path back from s(edge).
    pub cycle: Vec<String>,
}

pub fn grading_function(g: &KGraph) -> std::result::Result<Grading, GradingFailure> {
    for e in g.edges() {
        if e.src == e.rng {
            return Err(GradingFailure { edge: e.id.clone(), cycle: vec![e.id.clone()] });
        }
    }
    let n = g.vertex_count();
    let k = g.rank();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| g.vertex_id(a).cmp(g.vertex_id(b)));
    let mut values: Vec<Option<Vec<i64>>> = vec![None; n];
    let mut parent: Vec<Option<usize>> = vec![None; n];
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, e) in g.edges().iter().enumerate() {
        incident[e.rng].push(i);
        incident[e.src].push(i);
    }
    for &root in &order {
        if values[root].is_some() {
            continue;
        }
        values[root] = Some(vec![0; k]);
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for &e in &incident[v] {
                let d = g.edge(e);
                let fv = values[v].clone().expect("visited");
                // f(s) = f(r) + ε_color
                let (w, fw) = if d.rng == v {
                    let mut x = fv;
                    x[d.color] += 1;
                    (d.src, x)
                } else {
                    let mut x = fv;
                    x[d.color] -= 1;
                    (d.rng, x)
                };
                if values[w].is_none() {
                    values[w] = Some(fw);
                    parent[w] = Some(e);
                    queue.push_back(w);
                }
            }
        }
    }
    let values: Vec<Vec<i64>> = values.into_iter().map(|v| v.expect("all visited")).collect();
    for (i, e) in g.edges().iter().enumerate() {
        let mut expect = values[e.rng].clone();
        expect[e.color] += 1;
        if values[e.src] != expect {
            let path_to = |mut v: usize| {
                let mut out = Vec::new();
                while let Some(p) = parent[v] {
                    out.push(g.edge(p).id.clone());
                    let d = g.edge(p);
                    v = if d.rng == v { d.src } else { d.rng };
                }
                out
            };
            let mut cycle: Vec<String> = path_to(e.rng).into_iter().rev().collect();
            cycle.push(g.edge(i).id.clone());
            cycle.extend(path_to(e.src));
            return Err(GradingFailure { edge: e.id.clone(), cycle });
        }
    }
    Ok(Grading { values })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Embeds,
    NotEmbeds,
    Inconclusive,
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    SinglyConnected,
    EssentialCocycle(EssentialCocycle),
}

#[derive(Debug, Clone, Serialize)]
pub struct EmbeddabilityReport {
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub proof: Option<CollapseProof>,
    pub depth: usize,
    pub search: Option<SearchSummary>,
    pub abelian_invariants: Option<AbelianInvariants>,
    pub notes: Vec<String>,
}

/// Singly connected or an essential cocycle gives Embeds; a collapse gives
/// NotEmbeds; otherwise Inconclusive. For 1-graphs the free cocycle is tried
/// first.
pub fn embeddability_report(g: &KGraph, depth: usize, degree_bound: &Degree, hints: &[CocycleHint]) -> EmbeddabilityReport {
    let abelian_invariants = TreeContraction::spanning_forest(g).ok().map(|tc| abelianized_invariants(&tc.group));
    let mut report = EmbeddabilityReport {
        verdict: Verdict::Inconclusive,
        witness: None,
        proof: None,
        depth,
        search: None,
        abelian_invariants,
        notes: Vec::new(),
    };
    if g.rank() == 1 {
        if let Some(c) = essential_cocycle_search(g, degree_bound, &[]) {
            report.verdict = Verdict::Embeds;
            report.witness = Some(Witness::EssentialCocycle(c));
            return report;
        }
    }
    if singly_connected(g) == SinglyConnected::Yes {
        report.verdict = Verdict::Embeds;
        report.witness = Some(Witness::SinglyConnected);
        return report;
    }
    if let Some(c) = essential_cocycle_search(g, degree_bound, hints) {
        if !c.exhaustive {
            report.notes.push(format!("cocycle injectivity verified on uΛ^n v for n ≤ {}", c.degree_bound));
        }
        report.verdict = Verdict::Embeds;
        report.witness = Some(Witness::EssentialCocycle(c));
        return report;
    }
    match collapse_search_with(g, depth, Limits::default()) {
        Ok((Some(p), s)) => {
            report.verdict = Verdict::NotEmbeds;
            report.proof = Some(p);
            report.search = Some(s);
        }
        Ok((None, s)) => {
            if s.complete {
                report.notes.push("completion terminated: parallel morphisms of degree ≤ (2,…,2) are distinct in the groupoid".into());
            }
            report.search = Some(s);
        }
        Err(e) => report.notes.push(format!("collapse search skipped: {e}")),
    }
    if report.verdict == Verdict::Inconclusive && is_monoid_example(g) {
        report.notes.push(
            "this is the two-vertex example whose vertex monoid uΛu embeds in a group, so the graph embeds; \
             deciding that from the monoid presentation is outside this search"
                .into(),
        );
    }
    report
}

fn is_monoid_example(g: &KGraph) -> bool {
    g.rank() == 2
        && g.vertex_count() == 2
        && KGraph::new(&crate::catalog::prop_3_21()).is_ok_and(|h| crate::constructions::iso::isomorphic_graphs(g, &h).is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::lazy::{window, Omega, Point};

    #[test]
    fn pqr_is_not_embedded() {
        let g = KGraph::new(&catalog::pqr_7_1()).unwrap();
        assert!(essential_cocycle_search(&g, &Degree(vec![2, 2]), &[]).is_none());
        let r = embeddability_report(&g, 10, &Degree(vec![2, 2]), &[]);
        assert_eq!(r.verdict, Verdict::NotEmbeds);
        assert_eq!(r.abelian_invariants, Some(AbelianInvariants { rank: 2, torsion: vec![] }));
    }

    #[test]
    fn three_graph_faces_embed_with_hints() {
        let full = catalog::example_3_3();
        for (colors, ones) in catalog::example_3_3_hints() {
            let p = full.restrict_colors(&colors);
            let g = KGraph::new(&p).unwrap();
            let labels: Vec<(&str, i64)> = ones.iter().map(|&id| (id, 1)).collect();
            let hint = CocycleHint::integer(&g, "paper", &labels).unwrap();
            let c = essential_cocycle_search(&g, &Degree(vec![2, 2]), std::slice::from_ref(&hint)).unwrap();
            assert_eq!(c.source, "hint:paper");
            assert!(c.exhaustive);
            let r = embeddability_report(&g, 20, &Degree(vec![2, 2]), &[hint]);
            assert_eq!(r.verdict, Verdict::Embeds);
        }
        let g = KGraph::new(&full).unwrap();
        let r = embeddability_report(&g, 20, &Degree(vec![2, 2, 2]), &[]);
        assert_eq!(r.verdict, Verdict::NotEmbeds);
    }

    #[test]
    fn one_graphs_embed_by_free_cocycle() {
        for n in 1..4 {
            let g = KGraph::new(&catalog::bouquet(n)).unwrap();
            let r = embeddability_report(&g, 5, &Degree(vec![3]), &[]);
            assert_eq!(r.verdict, Verdict::Embeds);
            assert!(matches!(r.witness, Some(Witness::EssentialCocycle(ref c)) if c.source == "free"));
        }
    }

    #[test]
    fn monoid_example_is_inconclusive_with_a_note() {
        let g = KGraph::new(&catalog::prop_3_21()).unwrap();
        let r = embeddability_report(&g, 10, &Degree(vec![2, 2]), &[]);
        assert_eq!(r.verdict, Verdict::Inconclusive);
        assert!(r.notes.iter().any(|n| n.contains("vertex monoid")), "{:?}", r.notes);
    }

    #[test]
    fn simple_connectivity() {
        let mut tree = crate::presentation::Presentation::new(1);
        tree.vertices = vec!["x".into(), "y".into(), "z".into()];
        tree.edges = vec![crate::Edge::new("p", 1, "y", "x"), crate::Edge::new("q", 1, "z", "x")];
        let g = KGraph::new(&tree).unwrap();
        assert_eq!(simply_connected_test(&g, 3).unwrap(), SimplyConnected::Yes);
        let g = KGraph::new(&catalog::singly_connected_e()).unwrap();
        assert!(matches!(simply_connected_test(&g, 3).unwrap(), SimplyConnected::No { .. }));
    }

    #[test]
    fn degree_cover_of_pqr() {
        use crate::constructions::cocycle::degree_cocycle;
        use crate::constructions::skew::SkewProduct;
        let g = KGraph::new(&catalog::pqr_7_1()).unwrap();
        let sp = SkewProduct::new(g.clone(), degree_cocycle(&g));
        let w = window(&sp, &sp.seeds(&sp.cocycle.group.identity()), 3).unwrap();
        assert_eq!(simply_connected_window(&w, 1, 10).unwrap(), SimplyConnected::YesWithinWindow { core_radius: 1, radius: 3 });
        // f(g, v) = g, normalized at the least vertex id.
        let f = grading_function(&w.graph).unwrap();
        let base = (0..w.vertices.len()).min_by_key(|&i| w.graph.vertex_id(i).to_string()).unwrap();
        for (i, v) in w.vertices.iter().enumerate() {
            let expect: Vec<i64> = v.g.0.iter().zip(&w.vertices[base].g.0).map(|(a, b)| a - b).collect();
            assert_eq!(f.values[i], expect);
        }
    }

    #[test]
    fn grading_on_omega_and_loops() {
        let w = window(&Omega { k: 2 }, &[Point(vec![2, 2])], 3).unwrap();
        let f = grading_function(&w.graph).unwrap();
        for (i, v) in w.vertices.iter().enumerate() {
            let base = &w.vertices[f.values.iter().position(|x| x.iter().all(|&y| y == 0)).unwrap()];
            let diff: Vec<i64> = v.0.iter().zip(&base.0).map(|(a, b)| a - b).collect();
            assert_eq!(f.values[i], diff);
        }
        let g = KGraph::new(&catalog::pqr_7_1()).unwrap();
        let err = grading_function(&g).unwrap_err();
        assert_eq!(err.cycle, vec![err.edge.clone()]);
    }
}
