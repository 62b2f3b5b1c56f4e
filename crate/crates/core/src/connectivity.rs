//! Components, strong and single connectivity, rigidity.

use crate::kgraph::{KGraph, Morphism};
use serde::Serialize;
use std::collections::{BTreeMap, HashMap, VecDeque};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SinglyConnected {
    Yes,
    /// No cycles and no duplicate paths among all paths of length ≤ the bound.
    YesWithinWindow { max_length: usize },
    No { witness: (Morphism, Morphism) },
}

impl SinglyConnected {
    pub fn is_no(&self) -> bool {
        matches!(self, SinglyConnected::No { .. })
    }

    pub fn label(&self) -> &'static str {
        match self {
            SinglyConnected::Yes => "yes",
            SinglyConnected::YesWithinWindow { .. } => "yes_within_window",
            SinglyConnected::No { .. } => "no",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConnectivityReport {
    pub components: Vec<Vec<String>>,
    pub strongly_connected: bool,
    pub singly_connected: String,
    pub singly_connected_witness: Option<(String, String)>,
    pub rigid: bool,
}

/// Vertex classes of the equivalence generated by u ~ v when uΛv ≠ ∅.
pub fn components(g: &KGraph) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    let mut comp = vec![usize::MAX; n];
    let mut out = Vec::new();
    for start in 0..n {
        if comp[start] != usize::MAX {
            continue;
        }
        let id = out.len();
        let mut members = vec![start];
        comp[start] = id;
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for c in 0..g.rank() {
                let nbrs = g
                    .edges_with_range(v, c)
                    .iter()
                    .map(|&e| g.edge(e).src)
                    .chain(g.edges_with_source(v, c).iter().map(|&e| g.edge(e).rng));
                for w in nbrs.collect::<Vec<_>>() {
                    if comp[w] == usize::MAX {
                        comp[w] = id;
                        members.push(w);
                        queue.push_back(w);
                    }
                }
            }
        }
        members.sort_unstable();
        out.push(members);
    }
    out
}

fn reachable_down(g: &KGraph, from: usize) -> Vec<bool> {
    let mut seen = vec![false; g.vertex_count()];
    seen[from] = true;
    let mut queue = VecDeque::from([from]);
    while let Some(v) = queue.pop_front() {
        for c in 0..g.rank() {
            for &e in g.edges_with_range(v, c) {
                let s = g.edge(e).src;
                if !seen[s] {
                    seen[s] = true;
                    queue.push_back(s);
                }
            }
        }
    }
    seen
}

pub fn strongly_connected(g: &KGraph) -> bool {
    (0..g.vertex_count()).all(|v| reachable_down(g, v).into_iter().all(|b| b))
}

/// A directed cycle in the skeleton as an edge word, if any.
pub fn find_cycle(g: &KGraph) -> Option<Vec<usize>> {
    // Iterative DFS with colors; edges followed range → source.
    let n = g.vertex_count();
    let mut state = vec![0u8; n];
    let mut parent_edge = vec![usize::MAX; n];
    for root in 0..n {
        if state[root] != 0 {
            continue;
        }
        let mut stack: Vec<(usize, Vec<usize>, usize)> = vec![(root, out_edges(g, root), 0)];
        state[root] = 1;
        while let Some((v, edges, i)) = stack.last_mut() {
            if *i == edges.len() {
                state[*v] = 2;
                stack.pop();
                continue;
            }
            let e = edges[*i];
            *i += 1;
            let w = g.edge(e).src;
            match state[w] {
                0 => {
                    parent_edge[w] = e;
                    state[w] = 1;
                    let ew = out_edges(g, w);
                    stack.push((w, ew, 0));
                }
                1 => {
                    // Cycle w → … → v → w, read as a word from w.
                    let mut word = vec![e];
                    let mut x = *v;
                    while x != w {
                        let pe = parent_edge[x];
                        word.push(pe);
                        x = g.edge(pe).rng;
                    }
                    word.reverse();
                    return Some(word);
                }
                _ => {}
            }
        }
    }
    None
}

fn out_edges(g: &KGraph, v: usize) -> Vec<usize> {
    (0..g.rank()).flat_map(|c| g.edges_with_range(v, c).iter().copied()).collect()
}

/// All canonical (color-sorted) paths with range `u` of total length ≤ `max_len`.
pub fn canonical_paths_from(g: &KGraph, u: usize, max_len: usize) -> Vec<Morphism> {
    let mut out = vec![g.identity(u)];
    let mut stack: Vec<(usize, Vec<usize>)> = vec![(u, Vec::new())];
    while let Some((at, word)) = stack.pop() {
        if word.len() == max_len {
            continue;
        }
        let min_color = word.last().map_or(0, |&e| g.edge(e).color);
        for c in min_color..g.rank() {
            for &e in g.edges_with_range(at, c) {
                let mut w = word.clone();
                w.push(e);
                let degree = g.degree_of_word(&w);
                out.push(Morphism { range: u, source: g.edge(e).src, edges: w.clone(), degree });
                stack.push((g.edge(e).src, w));
            }
        }
    }
    out.sort();
    out
}

/// Exact for finite acyclic graphs; a directed cycle gives `No` at once.
pub fn singly_connected(g: &KGraph) -> SinglyConnected {
    if let Some(w) = parallel_edges(g) {
        return SinglyConnected::No { witness: w };
    }
    if let Some(cycle) = find_cycle(g) {
        let v = g.edge(cycle[0]).rng;
        let m = g.canonical_form(&cycle).expect("cycle is composable");
        return SinglyConnected::No { witness: (g.identity(v), m) };
    }
    match duplicate_paths(g, g.edge_count()) {
        Some(w) => SinglyConnected::No { witness: w },
        None => SinglyConnected::Yes,
    }
}

/// For windows of infinite graphs: paths of length ≤ `max_len` only.
pub fn singly_connected_window(g: &KGraph, max_len: usize) -> SinglyConnected {
    if let Some(w) = parallel_edges(g) {
        return SinglyConnected::No { witness: w };
    }
    if let Some(cycle) = find_cycle(g) {
        let v = g.edge(cycle[0]).rng;
        return match g.canonical_form(&cycle) {
            Ok(m) => SinglyConnected::No { witness: (g.identity(v), m) },
            Err(_) => SinglyConnected::No {
                witness: (
                    g.identity(v),
                    Morphism { range: v, source: v, degree: g.degree_of_word(&cycle), edges: cycle },
                ),
            },
        };
    }
    match duplicate_paths(g, max_len) {
        Some(w) => SinglyConnected::No { witness: w },
        None => SinglyConnected::YesWithinWindow { max_length: max_len },
    }
}

fn parallel_edges(g: &KGraph) -> Option<(Morphism, Morphism)> {
    let mut seen: BTreeMap<(usize, usize, usize), usize> = BTreeMap::new();
    // Lowest color first, then lexicographic ids.
    let mut best: Option<(usize, String, String, usize, usize)> = None;
    for (i, e) in g.edges().iter().enumerate() {
        if let Some(&j) = seen.get(&(e.color, e.rng, e.src)) {
            let (a, b) = if g.edge(j).id < e.id { (j, i) } else { (i, j) };
            let key = (e.color, g.edge(a).id.clone(), g.edge(b).id.clone(), a, b);
            if best.as_ref().is_none_or(|x| (key.0, &key.1, &key.2) < (x.0, &x.1, &x.2)) {
                best = Some(key);
            }
        } else {
            seen.insert((e.color, e.rng, e.src), i);
        }
    }
    best.map(|(_, _, _, a, b)| {
        let m = |e: usize| g.canonical_form(&[e]).expect("edge");
        (m(a), m(b))
    })
}

fn duplicate_paths(g: &KGraph, max_len: usize) -> Option<(Morphism, Morphism)> {
    for u in 0..g.vertex_count() {
        let mut by_source: HashMap<usize, Morphism> = HashMap::new();
        for m in canonical_paths_from(g, u, max_len) {
            if let Some(prev) = by_source.get(&m.source) {
                return Some((prev.clone(), m));
            }
            by_source.insert(m.source, m);
        }
    }
    None
}

/// Unique e′ with e′f = f′e and unique f″ with ef″ = fe″, for edges of different colors.
pub fn rigid(g: &KGraph) -> bool {
    let mut by_jedge_iprime: HashMap<(usize, usize), usize> = HashMap::new();
    let mut by_iedge_jprime: HashMap<(usize, usize), usize> = HashMap::new();
    for ((e, f), (f2, e2)) in g.squares() {
        *by_jedge_iprime.entry((f, e2)).or_default() += 1;
        *by_iedge_jprime.entry((e, f2)).or_default() += 1;
    }
    for (x, xd) in g.edges().iter().enumerate() {
        for (y, yd) in g.edges().iter().enumerate() {
            if xd.color >= yd.color {
                continue;
            }
            if xd.src == yd.src && by_jedge_iprime.get(&(y, x)).copied().unwrap_or(0) != 1 {
                return false;
            }
            if xd.rng == yd.rng && by_iedge_jprime.get(&(x, y)).copied().unwrap_or(0) != 1 {
                return false;
            }
        }
    }
    true
}

pub fn connectivity_report(g: &KGraph) -> ConnectivityReport {
    let sc = singly_connected(g);
    let witness = match &sc {
        SinglyConnected::No { witness: (a, b) } => Some((g.show(a), g.show(b))),
        _ => None,
    };
    ConnectivityReport {
        components: components(g)
            .into_iter()
            .map(|c| c.into_iter().map(|v| g.vertex_id(v).to_string()).collect())
            .collect(),
        strongly_connected: strongly_connected(g),
        singly_connected: sc.label().to_string(),
        singly_connected_witness: witness,
        rigid: rigid(g),
    }
}
