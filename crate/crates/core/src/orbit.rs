//! Finite-window views of infinite-path spaces: upper bounds, separation of
//! orbits, lower sets of paths and the diagonal 1-graphs.

use crate::catalog::{E45Edge, NonHausdorffE};
use crate::constructions::group::{FreeGroup, FreeWord};
use crate::constructions::skew::{free_cover, SkewProduct, SkewVertex};
use crate::connectivity::singly_connected_window;
use crate::degree::Degree;
use crate::error::{Error, Result};
use crate::groupoid::Grading;
use crate::kgraph::KGraph;
use crate::lazy::{window, LazyEdge, LazyKGraph};
use crate::presentation::{Edge, Presentation};
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::sync::Arc;

/// Stop a reachability search past this many vertices.
pub const SEARCH_CAP: usize = 200_000;

type Step<G> = Vec<LazyEdge<<G as LazyKGraph>::V, <G as LazyKGraph>::E>>;

/// An infinite path x, given by its degree-𝟏 pieces x(n𝟏, (n+1)𝟏).
///
/// Each piece is color-sorted and has range x(n𝟏). Truncations are
/// concatenations of pieces, so later truncations extend earlier ones.
pub struct PathStream<G: LazyKGraph> {
    pub name: String,
    piece: Arc<dyn Fn(&G, usize) -> Step<G> + Send + Sync>,
}

impl<G: LazyKGraph> Clone for PathStream<G> {
    fn clone(&self) -> Self {
        PathStream { name: self.name.clone(), piece: self.piece.clone() }
    }
}

impl<G: LazyKGraph> PathStream<G> {
    pub fn new(name: impl Into<String>, piece: impl Fn(&G, usize) -> Step<G> + Send + Sync + 'static) -> Self {
        PathStream { name: name.into(), piece: Arc::new(piece) }
    }

    /// x(n𝟏, (n+1)𝟏).
    pub fn piece(&self, g: &G, n: usize) -> Step<G> {
        (self.piece)(g, n)
    }

    /// x(n𝟏).
    pub fn vertex(&self, g: &G, n: usize) -> G::V {
        self.piece(g, n)[0].rng.clone()
    }

    /// x(0, n𝟏) as a color-sorted-by-block edge list.
    pub fn truncation(&self, g: &G, n: usize) -> Step<G> {
        (0..n).flat_map(|i| self.piece(g, i)).collect()
    }

    /// σ^p x.
    pub fn shift(&self, p: usize) -> Self
    where
        G: 'static,
    {
        let piece = self.piece.clone();
        PathStream { name: format!("σ^{p}({})", self.name), piece: Arc::new(move |g, n| piece(g, n + p)) }
    }

    /// Follow the `choices[n]`-th degree-𝟏 morphism out of x(n𝟏) (ids order),
    /// then repeat `cycle` forever.
    pub fn eventually_periodic(name: impl Into<String>, start: G::V, prefix: Vec<usize>, cycle: Vec<usize>) -> Self
    where
        G::V: 'static,
    {
        assert!(!cycle.is_empty(), "cycle must be nonempty");
        let choice = move |n: usize| if n < prefix.len() { prefix[n] } else { cycle[(n - prefix.len()) % cycle.len()] };
        PathStream::new(name, move |g: &G, n| {
            let mut at = start.clone();
            let mut out = Vec::new();
            for i in 0..=n {
                let options = unit_morphisms(g, &at);
                assert!(!options.is_empty(), "vertex {at} is a source: the path cannot continue");
                out = options[choice(i) % options.len()].clone();
                at = out.last().expect("nonempty piece").src.clone();
            }
            out
        })
    }

    /// Check the first `n` pieces: edges exist in `g`, colors run 1..k within a
    /// piece, and consecutive edges compose.
    pub fn check(&self, g: &G, n: usize) -> Result<()> {
        let mut prev: Option<G::V> = None;
        for i in 0..n {
            let piece = self.piece(g, i);
            if piece.len() != g.rank() {
                return Err(Error::Invalid(format!("{}: piece {i} has {} edges", self.name, piece.len())));
            }
            for (c, e) in piece.iter().enumerate() {
                if e.color != c {
                    return Err(Error::Invalid(format!("{}: piece {i} is not color-sorted", self.name)));
                }
                if let Some(p) = &prev {
                    if *p != e.rng {
                        return Err(Error::NotComposable(format!("{}: edge {} at step {i}", self.name, e.id)));
                    }
                }
                if !g.edges_with_range(&e.rng, c).contains(e) {
                    return Err(Error::UnknownEdge(e.id.to_string()));
                }
                prev = Some(e.src.clone());
            }
        }
        Ok(())
    }
}

/// Color-sorted paths of degree 𝟏 with range `v`, in id order.
pub fn unit_morphisms<G: LazyKGraph>(g: &G, v: &G::V) -> Vec<Step<G>> {
    let mut out = vec![Vec::new()];
    for c in 0..g.rank() {
        let mut next = Vec::new();
        for path in out {
            let at = path.last().map_or(v.clone(), |e: &LazyEdge<G::V, G::E>| e.src.clone());
            for e in g.edges_with_range(&at, c) {
                let mut p = path.clone();
                p.push(e);
                next.push(p);
            }
        }
        out = next;
    }
    out
}

/// Vertices w with uΓw ≠ ∅ within `radius` edges, with their distances.
/// The flag is true when the search ran out of vertices before the radius.
fn reachable_above<G: LazyKGraph>(g: &G, u: &G::V, radius: usize) -> Result<(BTreeMap<G::V, usize>, bool)> {
    let mut dist = BTreeMap::from([(u.clone(), 0)]);
    let mut queue = VecDeque::from([u.clone()]);
    let mut finished = true;
    while let Some(v) = queue.pop_front() {
        let d = dist[&v];
        for c in 0..g.rank() {
            for e in g.edges_with_range(&v, c) {
                if dist.contains_key(&e.src) {
                    continue;
                }
                if d == radius {
                    finished = false;
                    continue;
                }
                dist.insert(e.src.clone(), d + 1);
                if dist.len() > SEARCH_CAP {
                    return Err(Error::WindowExhausted(radius));
                }
                queue.push_back(e.src);
            }
        }
    }
    Ok((dist, finished))
}

/// One edge of an undirected walk; `upward` means traversed range to source.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WalkStep<V, E> {
    pub edge: LazyEdge<V, E>,
    pub upward: bool,
}

/// Why two vertices have no common upper bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate<V, E> {
    /// Both upward-closed sets, finite and disjoint.
    Exhausted { above_u: Vec<V>, above_v: Vec<V> },
    /// The reduced skeleton path from u to v in a forest. It goes down before
    /// it goes up, so it is not of the form (up)*(down)*.
    TreePath { path: Vec<WalkStep<V, E>> },
}

impl<V: crate::lazy::Label, E: crate::lazy::Label> Certificate<V, E> {
    /// Re-check against the host graph.
    pub fn verify<G: LazyKGraph<V = V, E = E>>(&self, g: &G, u: &V, v: &V) -> Result<()> {
        let bad = |m: &str| Err(Error::Invalid(format!("separation certificate: {m}")));
        match self {
            Certificate::Exhausted { above_u, above_v } => {
                for (set, start) in [(above_u, u), (above_v, v)] {
                    let s: BTreeSet<&V> = set.iter().collect();
                    if !s.contains(start) {
                        return bad("set misses its base vertex");
                    }
                    for w in set {
                        for c in 0..g.rank() {
                            if g.edges_with_range(w, c).iter().any(|e| !s.contains(&e.src)) {
                                return bad("set is not closed upward");
                            }
                        }
                    }
                }
                let a: BTreeSet<&V> = above_u.iter().collect();
                if above_v.iter().any(|w| a.contains(w)) {
                    return bad("sets meet");
                }
                Ok(())
            }
            Certificate::TreePath { path } => {
                if !g.is_forest() {
                    return bad("host is not known to be a forest");
                }
                let mut at = u.clone();
                let mut went_down = false;
                let mut valley = false;
                for (i, s) in path.iter().enumerate() {
                    if i > 0 && path[i - 1].edge == s.edge {
                        return bad("path backtracks");
                    }
                    let e = &s.edge;
                    if s.upward {
                        if e.rng != at || !g.edges_with_range(&at, e.color).contains(e) {
                            return bad("broken upward step");
                        }
                        valley |= went_down;
                        at = e.src.clone();
                    } else {
                        if e.src != at || !g.edges_with_source(&at, e.color).contains(e) {
                            return bad("broken downward step");
                        }
                        went_down = true;
                        at = e.rng.clone();
                    }
                }
                if at != *v {
                    return bad("path does not end at v");
                }
                if !valley {
                    return bad("path has a common upper bound at its peak");
                }
                Ok(())
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct UpperBound<V, E> {
    pub vertex: Option<V>,
    /// True when the answer holds in the whole graph, not just the window.
    pub exhausted: bool,
    pub certificate: Option<Certificate<V, E>>,
}

/// A vertex w with uΓw ≠ ∅ and vΓw ≠ ∅, searched within `radius` edges.
///
/// Among the candidates the one minimising (max distance, total distance,
/// label) is returned. In a forest the unique skeleton path decides the
/// question outright once it is found within `2·radius` edges.
pub fn common_upper_bound<G: LazyKGraph>(g: &G, u: &G::V, v: &G::V, radius: usize) -> Result<UpperBound<G::V, G::E>> {
    let (du, fu) = reachable_above(g, u, radius)?;
    let (dv, fv) = reachable_above(g, v, radius)?;
    let best = du
        .iter()
        .filter_map(|(w, a)| dv.get(w).map(|b| ((*a.max(b), a + b, w.clone()), w)))
        .min_by(|x, y| x.0.cmp(&y.0))
        .map(|(_, w)| w.clone());
    if let Some(w) = best {
        return Ok(UpperBound { vertex: Some(w), exhausted: true, certificate: None });
    }
    if fu && fv {
        let certificate = Certificate::Exhausted { above_u: du.into_keys().collect(), above_v: dv.into_keys().collect() };
        return Ok(UpperBound { vertex: None, exhausted: true, certificate: Some(certificate) });
    }
    if g.is_forest() {
        if let Some(path) = skeleton_path(g, u, v, 2 * radius)? {
            let first_up_after_down = path.iter().skip_while(|s| s.upward).any(|s| s.upward);
            if first_up_after_down {
                return Ok(UpperBound { vertex: None, exhausted: true, certificate: Some(Certificate::TreePath { path }) });
            }
            // (up)*(down)*: the peak is an upper bound beyond the radius.
            let mut at = u.clone();
            for s in path.iter().take_while(|s| s.upward) {
                at = s.edge.src.clone();
            }
            return Ok(UpperBound { vertex: Some(at), exhausted: true, certificate: None });
        }
    }
    Ok(UpperBound { vertex: None, exhausted: false, certificate: None })
}

/// Shortest undirected walk from u to v of at most `limit` edges.
fn skeleton_path<G: LazyKGraph>(g: &G, u: &G::V, v: &G::V, limit: usize) -> Result<Option<Vec<WalkStep<G::V, G::E>>>> {
    let mut parent: HashMap<G::V, Option<(G::V, WalkStep<G::V, G::E>)>> = HashMap::from([(u.clone(), None)]);
    let mut queue = VecDeque::from([(u.clone(), 0usize)]);
    while let Some((x, d)) = queue.pop_front() {
        if x == *v {
            let mut path = Vec::new();
            let mut at = x;
            while let Some(Some((p, s))) = parent.get(&at).cloned() {
                path.push(s);
                at = p;
            }
            path.reverse();
            return Ok(Some(path));
        }
        if d == limit {
            continue;
        }
        for c in 0..g.rank() {
            let up = g.edges_with_range(&x, c).into_iter().map(|e| (e.src.clone(), WalkStep { edge: e, upward: true }));
            let down = g.edges_with_source(&x, c).into_iter().map(|e| (e.rng.clone(), WalkStep { edge: e, upward: false }));
            for (y, s) in up.chain(down) {
                if !parent.contains_key(&y) {
                    parent.insert(y.clone(), Some((x.clone(), s)));
                    if parent.len() > SEARCH_CAP {
                        return Err(Error::WindowExhausted(limit));
                    }
                    queue.push_back((y, d + 1));
                }
            }
        }
    }
    Ok(None)
}

#[derive(Debug, Clone)]
pub enum SeparationVerdict<V, E> {
    /// x(n𝟏) and y(n𝟏) have no common upper bound.
    SeparatedAt { n: usize, certificate: Certificate<V, E> },
    /// Evidence only: every n ≤ n_max had an upper bound, or the search was
    /// inconclusive (`None`).
    NotSeparatedWithin { n_max: usize, witnesses: Vec<Option<V>> },
}

impl<V: std::fmt::Display, E: std::fmt::Display> SeparationVerdict<V, E> {
    pub fn summary(&self) -> SeparationSummary {
        match self {
            SeparationVerdict::SeparatedAt { n, certificate } => SeparationSummary {
                verdict: "separated".into(),
                n: Some(*n),
                certificate: Some(match certificate {
                    Certificate::Exhausted { above_u, above_v } => CertificateSummary::Exhausted {
                        above_x: above_u.iter().map(ToString::to_string).collect(),
                        above_y: above_v.iter().map(ToString::to_string).collect(),
                    },
                    Certificate::TreePath { path } => CertificateSummary::TreePath {
                        path: path.iter().map(|s| format!("{}{}", if s.upward { "↑" } else { "↓" }, s.edge.id)).collect(),
                    },
                }),
                witnesses: Vec::new(),
            },
            SeparationVerdict::NotSeparatedWithin { n_max, witnesses } => SeparationSummary {
                verdict: "not_separated_within".into(),
                n: Some(*n_max),
                certificate: None,
                witnesses: witnesses.iter().map(|w| w.as_ref().map(ToString::to_string)).collect(),
            },
        }
    }
}

/// Label-only form of a verdict for reports.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SeparationSummary {
    pub verdict: String,
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CertificateSummary>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<Option<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CertificateSummary {
    Exhausted { above_x: Vec<String>, above_y: Vec<String> },
    TreePath { path: Vec<String> },
}

/// Search N = n𝟏, n = 0..=n_max, for vertices x(N), y(N) with no common upper bound.
///
/// Fails with `ShiftEquivalentDetected` when x(p𝟏) = y(q𝟏) and the next
/// n_max pieces agree.
pub fn separation_test<G: LazyKGraph>(
    g: &G,
    x: &PathStream<G>,
    y: &PathStream<G>,
    n_max: usize,
    radius: usize,
) -> Result<SeparationVerdict<G::V, G::E>> {
    let xs: Vec<Step<G>> = (0..2 * n_max + 1).map(|n| x.piece(g, n)).collect();
    let ys: Vec<Step<G>> = (0..2 * n_max + 1).map(|n| y.piece(g, n)).collect();
    for p in 0..=n_max {
        for q in 0..=n_max {
            if xs[p][0].rng == ys[q][0].rng && (0..n_max).all(|t| xs[p + t] == ys[q + t]) {
                return Err(Error::ShiftEquivalentDetected { p, q });
            }
        }
    }
    let mut witnesses = Vec::new();
    for n in 0..=n_max {
        let (u, v) = (&xs[n][0].rng, &ys[n][0].rng);
        let ub = common_upper_bound(g, u, v, radius)?;
        match (ub.vertex, ub.exhausted, ub.certificate) {
            (None, true, Some(certificate)) => return Ok(SeparationVerdict::SeparatedAt { n, certificate }),
            (w, _, _) => witnesses.push(w),
        }
    }
    Ok(SeparationVerdict::NotSeparatedWithin { n_max, witnesses })
}

/// The truncation of [x]⁰ = {v : vΓx(n𝟏) ≠ ∅} to a window, with the filter
/// axioms checked on it.
#[derive(Debug, Clone)]
pub struct LowerSet<V> {
    /// Vertices with their distance below the path.
    pub depth: BTreeMap<V, usize>,
    /// (a): sampled pairs have a common upper bound inside the set.
    pub axiom_a: bool,
    /// (b): closed downward, away from the window's edge.
    pub axiom_b: bool,
    pub pairs_checked: usize,
}

impl<V: Ord + Clone> LowerSet<V> {
    pub fn vertices(&self) -> Vec<V> {
        self.depth.keys().cloned().collect()
    }
}

/// Pairs tested for axiom (a) before sampling kicks in.
const PAIR_BUDGET: usize = 2_000;

pub fn path_lower_set<G: LazyKGraph>(g: &G, x: &PathStream<G>, radius: usize) -> Result<LowerSet<G::V>> {
    let w = window(g, &[x.vertex(g, 0)], radius)?;
    if let crate::connectivity::SinglyConnected::No { witness } = singly_connected_window(&w.graph, radius) {
        return Err(Error::NotSinglyConnected(format!("{} and {}", w.graph.show(&witness.0), w.graph.show(&witness.1))));
    }
    let mut depth: BTreeMap<G::V, usize> = BTreeMap::new();
    let mut queue = VecDeque::new();
    for n in 0..=radius {
        let v = x.vertex(g, n);
        if !depth.contains_key(&v) {
            depth.insert(v.clone(), 0);
            queue.push_back(v);
        }
    }
    while let Some(v) = queue.pop_front() {
        let d = depth[&v];
        if d == radius {
            continue;
        }
        for c in 0..g.rank() {
            for e in g.edges_with_source(&v, c) {
                if !depth.contains_key(&e.rng) {
                    depth.insert(e.rng.clone(), d + 1);
                    queue.push_back(e.rng);
                }
                if depth.len() > SEARCH_CAP {
                    return Err(Error::WindowExhausted(radius));
                }
            }
        }
    }
    let axiom_b = depth
        .iter()
        .filter(|(_, &d)| d < radius)
        .all(|(v, _)| (0..g.rank()).all(|c| g.edges_with_source(v, c).iter().all(|e| depth.contains_key(&e.rng))));
    let members: Vec<&G::V> = depth.keys().collect();
    let total = members.len() * (members.len() + 1) / 2;
    let stride = (total / PAIR_BUDGET).max(1);
    let mut pairs_checked = 0;
    let mut axiom_a = true;
    let mut idx = 0usize;
    'outer: for i in 0..members.len() {
        for j in i..members.len() {
            idx += 1;
            if !idx.is_multiple_of(stride) {
                continue;
            }
            pairs_checked += 1;
            if !has_bound_inside(g, members[i], members[j], &depth, 3 * radius + 1) {
                axiom_a = false;
                break 'outer;
            }
        }
    }
    Ok(LowerSet { depth, axiom_a, axiom_b, pairs_checked })
}

fn has_bound_inside<G: LazyKGraph>(g: &G, u: &G::V, v: &G::V, set: &BTreeMap<G::V, usize>, limit: usize) -> bool {
    let up = |s: &G::V| {
        let mut seen = BTreeSet::from([s.clone()]);
        let mut queue = VecDeque::from([(s.clone(), 0)]);
        while let Some((a, d)) = queue.pop_front() {
            if d == limit {
                continue;
            }
            for c in 0..g.rank() {
                for e in g.edges_with_range(&a, c) {
                    if set.contains_key(&e.src) && seen.insert(e.src.clone()) {
                        queue.push_back((e.src, d + 1));
                    }
                }
            }
        }
        seen
    };
    let a = up(u);
    up(v).iter().any(|w| a.contains(w))
}

/// Λ^{ℕ𝟏} as a 1-graph, and the graph E of Lemma-style diagonal vertices.
#[derive(Debug, Clone, Serialize)]
pub struct DiagonalSubgraphs {
    /// Vertices Λ⁰, one edge per morphism of degree 𝟏 (id = its edge word).
    pub diagonal: Presentation,
    /// E⁰ = f⁻¹(ℤ𝟏) and E¹ = E⁰Λ^𝟏.
    pub e_graph: Option<Presentation>,
}

pub fn diagonal_subgraphs(g: &KGraph, f: Option<&Grading>) -> Result<DiagonalSubgraphs> {
    let ones = Degree::ones(g.rank());
    let mut diagonal = Presentation::new(1);
    diagonal.vertices = (0..g.vertex_count()).map(|v| g.vertex_id(v).to_string()).collect();
    let mut unit: Vec<(usize, usize, String)> = Vec::new();
    for u in 0..g.vertex_count() {
        for m in g.morphisms_from(u, &ones) {
            unit.push((m.range, m.source, g.morphism_ids(&m).join("·")));
        }
    }
    diagonal.edges = unit.iter().map(|(r, s, id)| Edge::new(id.clone(), 1, g.vertex_id(*s), g.vertex_id(*r))).collect();
    let e_graph = match f {
        None => None,
        Some(f) => {
            if f.values.len() != g.vertex_count() {
                return Err(Error::NoGrading("grading does not match the graph".into()));
            }
            let on_diagonal = |v: usize| f.values[v].windows(2).all(|w| w[0] == w[1]);
            let mut e = Presentation::new(1);
            e.vertices = (0..g.vertex_count()).filter(|&v| on_diagonal(v)).map(|v| g.vertex_id(v).to_string()).collect();
            for (r, s, id) in &unit {
                if on_diagonal(*r) {
                    debug_assert!(on_diagonal(*s));
                    e.edges.push(Edge::new(id.clone(), 1, g.vertex_id(*s), g.vertex_id(*r)));
                }
            }
            Some(e)
        }
    };
    Ok(DiagonalSubgraphs { diagonal, e_graph })
}

/// Compute the grading first; `NoGrading` when there is none.
pub fn diagonal_subgraphs_graded(g: &KGraph) -> Result<DiagonalSubgraphs> {
    let f = crate::groupoid::grading_function(g)
        .map_err(|e| Error::NoGrading(format!("closed walk {} has nonzero degree", e.cycle.join(" "))))?;
    diagonal_subgraphs(g, Some(&f))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ShiftUniqueness {
    pub holds: bool,
    /// Two truncations with a common tail but different offsets or heads.
    pub witness: Option<(String, String)>,
    pub tails_checked: usize,
    /// Segments the partial window could not rearrange.
    pub skipped: usize,
}

/// On a window: any two diagonal truncations x(0, (p+L)𝟏), y(0, (q+L)𝟏) with
/// equal range and equal tails of degree L𝟏 have p = q and are equal.
pub fn shift_uniqueness_check(g: &KGraph, max_n: u32) -> Result<ShiftUniqueness> {
    if let crate::connectivity::SinglyConnected::No { witness } = singly_connected_window(g, (max_n as usize) * g.rank()) {
        return Err(Error::NotSinglyConnected(format!("{} and {}", g.show(&witness.0), g.show(&witness.1))));
    }
    let k = g.rank();
    let mut tails_checked = 0;
    let mut skipped = 0;
    for u in 0..g.vertex_count() {
        let mut seen: HashMap<Vec<usize>, (u32, Vec<usize>)> = HashMap::new();
        for n in 1..=max_n {
            for m in g.morphisms_from(u, &Degree::diagonal(k, n)) {
                for l in 1..=n {
                    let tail = match g.segment(&m, &Degree::diagonal(k, n - l), &Degree::diagonal(k, n)) {
                        Ok(t) => t,
                        Err(_) => {
                            skipped += 1;
                            continue;
                        }
                    };
                    tails_checked += 1;
                    let key = tail.edges.clone();
                    match seen.get(&key) {
                        Some((p, head)) if *p != n - l || *head != m.edges => {
                            let show = |e: &[usize]| g.ids(e).join("·");
                            return Ok(ShiftUniqueness {
                                holds: false,
                                witness: Some((show(head), show(&m.edges))),
                                tails_checked,
                                skipped,
                            });
                        }
                        Some(_) => {}
                        None => {
                            seen.insert(key, (n - l, m.edges.clone()));
                        }
                    }
                }
            }
        }
    }
    Ok(ShiftUniqueness { holds: true, witness: None, tails_checked, skipped })
}

/// Named streams on the non-Hausdorff 1-graph: `e-ray`, `f-ray`, `z:<n>`
/// (k_{n,0}k_{n,1}⋯) and `approx:<n>` (e₀⋯e_{n−1}g_n z_n).
pub fn example_4_5_stream(spec: &str) -> Result<PathStream<NonHausdorffE>> {
    let one = |e: E45Edge| vec![NonHausdorffE.edge(e)];
    let parse = |s: &str| s.parse::<i64>().map_err(|_| Error::MalformedInput(format!("bad stream spec {spec}")));
    match spec {
        "e-ray" => Ok(PathStream::new(spec, move |_, n| one(E45Edge::E(n as i64)))),
        "f-ray" => Ok(PathStream::new(spec, move |_, n| one(E45Edge::F(n as i64)))),
        _ => {
            if let Some(k) = spec.strip_prefix("z:") {
                let k = parse(k)?;
                Ok(PathStream::new(spec, move |_, n| one(E45Edge::K(k, n as u64))))
            } else if let Some(k) = spec.strip_prefix("approx:") {
                let k = parse(k)?;
                Ok(PathStream::new(spec, move |_, n| {
                    let n = n as i64;
                    one(match n.cmp(&k) {
                        std::cmp::Ordering::Less => E45Edge::E(n),
                        std::cmp::Ordering::Equal => E45Edge::G(k),
                        std::cmp::Ordering::Greater => E45Edge::K(k, (n - k - 1) as u64),
                    })
                }))
            } else {
                Err(Error::UnknownName(spec.to_string()))
            }
        }
    }
}

/// `ray:<digits>` repeats the digits; `ray:<prefix>/<cycle>` is eventually
/// periodic. Digit d picks the d-th degree-𝟏 morphism (1-based, id order).
pub fn ray_stream<G: LazyKGraph>(spec: &str, start: G::V) -> Result<PathStream<G>>
where
    G::V: 'static,
{
    let body = spec.strip_prefix("ray:").ok_or_else(|| Error::UnknownName(spec.to_string()))?;
    let digits = |s: &str| -> Result<Vec<usize>> {
        s.chars()
            .map(|c| match c.to_digit(10) {
                Some(d) if d >= 1 => Ok(d as usize - 1),
                _ => Err(Error::MalformedInput(format!("bad ray digit {c:?} in {spec}"))),
            })
            .collect()
    };
    let (prefix, cycle) = match body.split_once('/') {
        Some((p, c)) => (digits(p)?, digits(c)?),
        None => (Vec::new(), digits(body)?),
    };
    if cycle.is_empty() {
        return Err(Error::MalformedInput(format!("{spec} has an empty cycle")));
    }
    Ok(PathStream::eventually_periodic(spec, start, prefix, cycle))
}

/// 𝔽₂ ×_c B₂ rooted at (1|u).
pub fn tree_fixture() -> Result<(SkewProduct<FreeGroup>, SkewVertex<FreeWord>)> {
    let cover = free_cover(KGraph::new(&crate::catalog::bouquet(2))?)?;
    Ok((cover, SkewVertex { g: FreeWord::default(), v: "u".into() }))
}
