//! Color-preserving isomorphism of presentations, squares included.

use crate::kgraph::KGraph;
use crate::presentation::Presentation;
use std::collections::{BTreeMap, HashMap};

/// Vertex and edge bijections (by position in the presentations).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Isomorphism {
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
}

type Signature = Vec<(usize, usize, usize)>;

fn signature(g: &KGraph, v: usize) -> Signature {
    (0..g.rank())
        .map(|c| {
            let loops = g.edges_with_range(v, c).iter().filter(|&&e| g.edge(e).src == v).count();
            (g.edges_with_range(v, c).len(), g.edges_with_source(v, c).len(), loops)
        })
        .collect()
}

/// Backtracking search for an isomorphism; `None` if the presentations are not
/// isomorphic or either fails validation.
pub fn isomorphic(p: &Presentation, q: &Presentation) -> Option<Isomorphism> {
    let a = KGraph::new(p).ok()?;
    let b = KGraph::new(q).ok()?;
    isomorphic_graphs(&a, &b)
}

pub fn isomorphic_graphs(a: &KGraph, b: &KGraph) -> Option<Isomorphism> {
    if a.rank() != b.rank() || a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count() {
        return None;
    }
    let sa: Vec<Signature> = (0..a.vertex_count()).map(|v| signature(a, v)).collect();
    let sb: Vec<Signature> = (0..b.vertex_count()).map(|v| signature(b, v)).collect();
    let mut ca = sa.clone();
    let mut cb = sb.clone();
    ca.sort();
    cb.sort();
    if ca != cb {
        return None;
    }
    let counts = |g: &KGraph| {
        let mut m: HashMap<(usize, usize, usize), usize> = HashMap::new();
        for e in g.edges() {
            *m.entry((e.color, e.rng, e.src)).or_default() += 1;
        }
        m
    };
    let cnt_a = counts(a);
    let cnt_b = counts(b);
    let order = bfs_order(a);
    let mut map = vec![usize::MAX; a.vertex_count()];
    let mut used = vec![false; b.vertex_count()];
    let mut result = None;
    extend_vertices(a, b, &sa, &sb, &cnt_a, &cnt_b, &order, 0, &mut map, &mut used, &mut result);
    result
}

fn bfs_order(g: &KGraph) -> Vec<usize> {
    let mut seen = vec![false; g.vertex_count()];
    let mut order = Vec::new();
    for root in 0..g.vertex_count() {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for c in 0..g.rank() {
                let nbrs: Vec<usize> = g
                    .edges_with_range(v, c)
                    .iter()
                    .map(|&e| g.edge(e).src)
                    .chain(g.edges_with_source(v, c).iter().map(|&e| g.edge(e).rng))
                    .collect();
                for w in nbrs {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
        }
    }
    order
}

#[allow(clippy::too_many_arguments)]
fn extend_vertices(
    a: &KGraph,
    b: &KGraph,
    sa: &[Signature],
    sb: &[Signature],
    cnt_a: &HashMap<(usize, usize, usize), usize>,
    cnt_b: &HashMap<(usize, usize, usize), usize>,
    order: &[usize],
    depth: usize,
    map: &mut Vec<usize>,
    used: &mut Vec<bool>,
    result: &mut Option<Isomorphism>,
) {
    if result.is_some() {
        return;
    }
    if depth == order.len() {
        if let Some(edges) = edge_bijection(a, b, map) {
            *result = Some(Isomorphism { vertices: map.clone(), edges });
        }
        return;
    }
    let v = order[depth];
    for w in 0..b.vertex_count() {
        if used[w] || sa[v] != sb[w] {
            continue;
        }
        let consistent = order[..depth].iter().chain(std::iter::once(&v)).all(|&x| {
            let y = if x == v { w } else { map[x] };
            (0..a.rank()).all(|c| {
                cnt_a.get(&(c, v, x)).unwrap_or(&0) == cnt_b.get(&(c, w, y)).unwrap_or(&0)
                    && cnt_a.get(&(c, x, v)).unwrap_or(&0) == cnt_b.get(&(c, y, w)).unwrap_or(&0)
            })
        });
        if !consistent {
            continue;
        }
        map[v] = w;
        used[w] = true;
        extend_vertices(a, b, sa, sb, cnt_a, cnt_b, order, depth + 1, map, used, result);
        map[v] = usize::MAX;
        used[w] = false;
        if result.is_some() {
            return;
        }
    }
}

/// Match edges class by class (same color and mapped endpoints) so that
/// squares go to squares.
fn edge_bijection(a: &KGraph, b: &KGraph, vmap: &[usize]) -> Option<Vec<usize>> {
    let mut classes_b: BTreeMap<(usize, usize, usize), Vec<usize>> = BTreeMap::new();
    for (i, e) in b.edges().iter().enumerate() {
        classes_b.entry((e.color, e.rng, e.src)).or_default().push(i);
    }
    let candidates: Vec<Vec<usize>> = a
        .edges()
        .iter()
        .map(|e| classes_b.get(&(e.color, vmap[e.rng], vmap[e.src])).cloned().unwrap_or_default())
        .collect();
    let squares_a: Vec<((usize, usize), (usize, usize))> = a.squares().collect();
    let mut touching: Vec<Vec<usize>> = vec![Vec::new(); a.edge_count()];
    for (i, ((e, f), (f2, e2))) in squares_a.iter().enumerate() {
        for x in [e, f, f2, e2] {
            touching[*x].push(i);
        }
    }
    let mut emap = vec![usize::MAX; a.edge_count()];
    let mut used = vec![false; b.edge_count()];
    // Most constrained edges first.
    let mut order: Vec<usize> = (0..a.edge_count()).collect();
    order.sort_by_key(|&e| (candidates[e].len(), e));
    if assign_edges(a, b, &candidates, &squares_a, &touching, &order, 0, &mut emap, &mut used) {
        Some(emap)
    } else {
        None
    }
}

#[allow(clippy::too_many_arguments)]
fn assign_edges(
    a: &KGraph,
    b: &KGraph,
    candidates: &[Vec<usize>],
    squares_a: &[((usize, usize), (usize, usize))],
    touching: &[Vec<usize>],
    order: &[usize],
    depth: usize,
    emap: &mut Vec<usize>,
    used: &mut Vec<bool>,
) -> bool {
    if depth == order.len() {
        return true;
    }
    let e = order[depth];
    for &t in &candidates[e] {
        if used[t] {
            continue;
        }
        emap[e] = t;
        used[t] = true;
        let ok = touching[e].iter().all(|&si| {
            let ((x, y), (y2, x2)) = squares_a[si];
            let img = [emap[x], emap[y], emap[y2], emap[x2]];
            if img[0] == usize::MAX || img[1] == usize::MAX {
                return true;
            }
            match b.swap(img[0], img[1]) {
                Ok((p, q)) => {
                    (img[2] == usize::MAX || img[2] == p) && (img[3] == usize::MAX || img[3] == q)
                }
                Err(_) => false,
            }
        });
        if ok && assign_edges(a, b, candidates, squares_a, touching, order, depth + 1, emap, used) {
            return true;
        }
        emap[e] = usize::MAX;
        used[t] = false;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn relabelled_copy_is_isomorphic() {
        let p = catalog::example_3_2();
        let mut q = p.clone();
        q.edges.reverse();
        for e in &mut q.edges {
            e.id = format!("x_{}", e.id);
        }
        for s in &mut q.squares {
            for id in [&mut s.i_edge, &mut s.j_edge, &mut s.j_prime, &mut s.i_prime] {
                *id = format!("x_{id}");
            }
        }
        assert!(isomorphic(&p, &q).is_some());
    }

    #[test]
    fn different_squares_are_detected() {
        let p = catalog::example_3_2();
        let mut q = p.clone();
        for s in &mut q.squares {
            s.j_prime = s.j_edge.clone();
            s.i_prime = s.i_edge.clone();
        }
        assert!(isomorphic(&p, &q).is_none());
    }
}
