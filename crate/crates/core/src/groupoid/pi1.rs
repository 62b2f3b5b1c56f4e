//! Vertex groups by spanning-tree contraction, and their abelianization.

use crate::constructions::cocycle::Cocycle;
use crate::constructions::group::{AbelianGroup, FreeWord};
use crate::error::{Error, Result};
use crate::kgraph::{KGraph, Morphism};
use serde::Serialize;
use std::collections::VecDeque;

/// Letters are ±(i+1) for generator i.
pub type Word = Vec<i32>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupPresentation {
    /// Generator names (the edge ids outside the spanning tree).
    pub generators: Vec<String>,
    pub relators: Vec<Word>,
}

impl GroupPresentation {
    pub fn show(&self, w: &[i32]) -> String {
        show_word(&self.generators, w)
    }
}

pub fn show_word(names: &[String], w: &[i32]) -> String {
    if w.is_empty() {
        return "1".into();
    }
    w.iter()
        .map(|&x| {
            let n = &names[x.unsigned_abs() as usize - 1];
            if x > 0 {
                n.clone()
            } else {
                format!("{n}^-1")
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn inverse(w: &[i32]) -> Word {
    w.iter().rev().map(|x| -x).collect()
}

pub fn free_reduce(w: impl IntoIterator<Item = i32>) -> Word {
    FreeWord::reduce(w).0
}

/// Strip matching first/last letters x…x⁻¹.
pub fn cyclically_reduce(w: &[i32]) -> Word {
    let mut w = free_reduce(w.iter().copied());
    while w.len() >= 2 && w[0] == -w[w.len() - 1] {
        w.pop();
        w.remove(0);
    }
    w
}

/// A spanning tree of the undirected skeleton and the induced edge words.
#[derive(Debug, Clone)]
pub struct TreeContraction {
    pub base: usize,
    pub tree: Vec<bool>,
    /// Generator letter of each edge, 0 for tree edges.
    pub letter: Vec<i32>,
    pub group: GroupPresentation,
}

impl TreeContraction {
    /// BFS from the lexicographically least vertex id; incident edges are
    /// visited in edge-id order.
    pub fn new(g: &KGraph) -> Result<Self> {
        Self::build(g, false)
    }

    /// As `new`, but each further component gets its own BFS tree from its
    /// least vertex; the group is then the free product of the vertex groups.
    pub fn spanning_forest(g: &KGraph) -> Result<Self> {
        Self::build(g, true)
    }

    fn build(g: &KGraph, forest: bool) -> Result<Self> {
        let n = g.vertex_count();
        if n == 0 {
            return Err(Error::Disconnected("no vertices".into()));
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| g.vertex_id(a).cmp(g.vertex_id(b)));
        let base = order[0];
        let mut incident: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (i, e) in g.edges().iter().enumerate() {
            incident[e.rng].push(i);
            if e.src != e.rng {
                incident[e.src].push(i);
            }
        }
        for list in &mut incident {
            list.sort_by(|&a, &b| g.edge(a).id.cmp(&g.edge(b).id));
        }
        let mut seen = vec![false; n];
        let mut tree = vec![false; g.edge_count()];
        for &root in &order {
            if seen[root] {
                continue;
            }
            if root != base && !forest {
                return Err(Error::Disconnected(format!(
                    "vertex {} is not reachable from {}",
                    g.vertex_id(root),
                    g.vertex_id(base)
                )));
            }
            seen[root] = true;
            let mut queue = VecDeque::from([root]);
            while let Some(v) = queue.pop_front() {
                for &e in &incident[v] {
                    let d = g.edge(e);
                    let w = if d.rng == v { d.src } else { d.rng };
                    if !seen[w] {
                        seen[w] = true;
                        tree[e] = true;
                        queue.push_back(w);
                    }
                }
            }
        }
        let mut letter = vec![0i32; g.edge_count()];
        let mut generators = Vec::new();
        for e in 0..g.edge_count() {
            if !tree[e] {
                generators.push(g.edge(e).id.clone());
                letter[e] = generators.len() as i32;
            }
        }
        let word = |es: &[usize]| -> Word { es.iter().map(|&e| letter[e]).filter(|&x| x != 0).collect() };
        let mut relators = Vec::new();
        for ((e, f), (f2, e2)) in g.squares() {
            let lhs = word(&[e, f]);
            let rhs = word(&[f2, e2]);
            let r = cyclically_reduce(&lhs.iter().copied().chain(inverse(&rhs)).collect::<Vec<_>>());
            if !r.is_empty() {
                relators.push(r);
            }
        }
        Ok(TreeContraction { base, tree, letter, group: GroupPresentation { generators, relators } })
    }

    /// The contracted word of an edge path; tree edges vanish.
    pub fn word(&self, edges: &[usize]) -> Word {
        free_reduce(edges.iter().map(|&e| self.letter[e]).filter(|&x| x != 0))
    }

    pub fn morphism_word(&self, m: &Morphism) -> Word {
        self.word(&m.edges)
    }
}

/// π₁(Λ, base) for the BFS tree from the least vertex id.
pub fn fundamental_group_presentation(g: &KGraph) -> Result<GroupPresentation> {
    Ok(TreeContraction::new(g)?.group)
}

/// ℤ^rank ⊕ ⊕ ℤ/t_i with t_i | t_{i+1}.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AbelianInvariants {
    pub rank: usize,
    pub torsion: Vec<i64>,
}

impl AbelianInvariants {
    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }
}

impl std::fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if self.rank > 0 {
            parts.push(if self.rank == 1 { "Z".into() } else { format!("Z^{}", self.rank) });
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Diagonal D = U A V of an integer matrix, with V kept.
#[derive(Debug, Clone)]
pub struct SmithForm {
    /// Diagonal entries, nonnegative, each dividing the next nonzero one.
    pub diagonal: Vec<i128>,
    /// Column transform, n × n.
    pub v: Vec<Vec<i128>>,
    pub cols: usize,
}

pub fn smith_normal_form(a: &[Vec<i64>], cols: usize) -> SmithForm {
    let mut m: Vec<Vec<i128>> = a.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let rows = m.len();
    let mut v: Vec<Vec<i128>> = (0..cols).map(|i| (0..cols).map(|j| i128::from(i == j)).collect()).collect();
    let swap_cols = |m: &mut Vec<Vec<i128>>, v: &mut Vec<Vec<i128>>, a: usize, b: usize| {
        for r in m.iter_mut() {
            r.swap(a, b);
        }
        for r in v.iter_mut() {
            r.swap(a, b);
        }
    };
    // col[b] -= q * col[a]
    let sub_col = |m: &mut Vec<Vec<i128>>, v: &mut Vec<Vec<i128>>, a: usize, b: usize, q: i128| {
        for r in m.iter_mut() {
            r[b] -= q * r[a];
        }
        for r in v.iter_mut() {
            r[b] -= q * r[a];
        }
    };
    let mut diagonal = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        let pivot = (t..rows)
            .flat_map(|i| (t..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| m[i][j] != 0)
            .min_by_key(|&(i, j)| (m[i][j].abs(), i, j));
        let Some((pi, pj)) = pivot else { break };
        m.swap(t, pi);
        swap_cols(&mut m, &mut v, t, pj);
        loop {
            let mut done = true;
            for i in t + 1..rows {
                let q = m[i][t].div_euclid(m[t][t]);
                if q != 0 {
                    let row_t = m[t].clone();
                    for (x, y) in m[i].iter_mut().zip(&row_t) {
                        *x -= q * y;
                    }
                }
                if m[i][t] != 0 {
                    done = false;
                }
            }
            for j in t + 1..cols {
                let q = m[t][j].div_euclid(m[t][t]);
                if q != 0 {
                    sub_col(&mut m, &mut v, t, j, q);
                }
                if m[t][j] != 0 {
                    done = false;
                }
            }
            if done {
                // Divisibility of the remaining block.
                let bad = (t + 1..rows).flat_map(|i| (t + 1..cols).map(move |j| (i, j))).find(|&(i, j)| m[i][j] % m[t][t] != 0);
                match bad {
                    None => break,
                    Some((i, _)) => {
                        let row_i = m[i].clone();
                        for (x, y) in m[t].iter_mut().zip(&row_i) {
                            *x += y;
                        }
                        continue;
                    }
                }
            }
            // Move the smallest nonzero entry of row t / column t to the pivot.
            let best = (t..rows)
                .map(|i| (i, t))
                .chain((t..cols).map(|j| (t, j)))
                .filter(|&(i, j)| m[i][j] != 0)
                .min_by_key(|&(i, j)| (m[i][j].abs(), i, j))
                .expect("pivot is nonzero");
            if best.0 != t {
                m.swap(t, best.0);
            } else if best.1 != t {
                swap_cols(&mut m, &mut v, t, best.1);
            }
        }
        if m[t][t] < 0 {
            for r in m.iter_mut() {
                r[t] = -r[t];
            }
            for r in v.iter_mut() {
                r[t] = -r[t];
            }
        }
        diagonal.push(m[t][t]);
        t += 1;
    }
    SmithForm { diagonal, v, cols }
}

fn relation_matrix(gp: &GroupPresentation) -> Vec<Vec<i64>> {
    gp.relators
        .iter()
        .map(|r| {
            let mut row = vec![0i64; gp.generators.len()];
            for &x in r {
                row[x.unsigned_abs() as usize - 1] += x.signum() as i64;
            }
            row
        })
        .collect()
}

pub fn abelianized_invariants(gp: &GroupPresentation) -> AbelianInvariants {
    let snf = smith_normal_form(&relation_matrix(gp), gp.generators.len());
    let nonzero = snf.diagonal.iter().filter(|&&d| d != 0).count();
    AbelianInvariants {
        rank: gp.generators.len() - nonzero,
        torsion: snf.diagonal.iter().filter(|&&d| d > 1).map(|&d| d as i64).collect(),
    }
}

/// The abelianization map of π₁, with coordinates ℤ/t (t > 1) and ℤ.
#[derive(Debug, Clone)]
pub struct Abelianization {
    pub group: AbelianGroup,
    /// Image of each generator.
    pub images: Vec<Vec<i64>>,
}

pub fn abelianization(gp: &GroupPresentation) -> Abelianization {
    let n = gp.generators.len();
    let snf = smith_normal_form(&relation_matrix(gp), n);
    // Coordinate t of a generator is its entry in column t of V.
    let modulus = |t: usize| snf.diagonal.get(t).copied().unwrap_or(0);
    let kept: Vec<usize> = (0..n).filter(|&t| modulus(t) != 1).collect();
    let group = AbelianGroup { moduli: kept.iter().map(|&t| modulus(t) as i64).collect() };
    let images = (0..n)
        .map(|j| {
            let raw: Vec<i64> = kept.iter().map(|&t| snf.v[j][t] as i64).collect();
            group.reduce(raw).0
        })
        .collect();
    Abelianization { group, images }
}

/// Edges into (ℤ^k) ⊕ π₁^ab: the degree paired with the universal abelian
/// cocycle read off the tree contraction.
pub fn universal_abelian_cocycle(g: &KGraph) -> Result<Cocycle<AbelianGroup>> {
    let tc = TreeContraction::spanning_forest(g)?;
    let ab = abelianization(&tc.group);
    let k = g.rank();
    let mut moduli = vec![0; k];
    moduli.extend(&ab.group.moduli);
    let group = AbelianGroup { moduli };
    let labels = (0..g.edge_count())
        .map(|e| {
            let mut v = vec![0i64; k];
            v[g.edge(e).color] = 1;
            let l = tc.letter[e];
            if l == 0 {
                v.extend(std::iter::repeat_n(0, ab.group.moduli.len()));
            } else {
                v.extend(&ab.images[l as usize - 1]);
            }
            group.element(v)
        })
        .collect();
    Cocycle::new(g, group, labels)
}
