//! Functors from a k-graph into a group.

use super::group::{AbelianGroup, FreeGroup, FreeWord, Group};
use crate::degree::Degree;
use crate::error::{Error, Result};
use crate::kgraph::{KGraph, Morphism};
use std::collections::HashMap;

/// Edge labels checked to respect every square.
#[derive(Debug, Clone)]
pub struct Cocycle<G: Group> {
    pub group: G,
    /// Indexed by edge position in the graph.
    pub labels: Vec<G::Elem>,
}

impl<G: Group> Cocycle<G> {
    pub fn new(g: &KGraph, group: G, labels: Vec<G::Elem>) -> Result<Self> {
        if labels.len() != g.edge_count() {
            return Err(Error::MalformedInput(format!(
                "{} labels for {} edges",
                labels.len(),
                g.edge_count()
            )));
        }
        for ((e, f), (f2, e2)) in g.squares() {
            let lhs = group.mul(&labels[e], &labels[f]);
            let rhs = group.mul(&labels[f2], &labels[e2]);
            if lhs != rhs {
                let ids = g.ids(&[e, f, f2, e2]);
                return Err(Error::NonFunctorialCocycle(format!("{}·{} = {}·{}", ids[0], ids[1], ids[2], ids[3])));
            }
        }
        Ok(Cocycle { group, labels })
    }

    /// Labels given by edge id; unlisted edges get the identity.
    pub fn from_ids(g: &KGraph, group: G, by_id: &[(&str, G::Elem)]) -> Result<Self> {
        let mut labels = vec![group.identity(); g.edge_count()];
        for (id, x) in by_id {
            labels[g.edge_by_id(id)?] = x.clone();
        }
        Self::new(g, group, labels)
    }

    pub fn trivial(g: &KGraph, group: G) -> Self {
        let labels = vec![group.identity(); g.edge_count()];
        Cocycle { group, labels }
    }

    pub fn eval_word(&self, word: &[usize]) -> G::Elem {
        self.group.product(word.iter().map(|&e| &self.labels[e]))
    }

    pub fn eval(&self, m: &Morphism) -> G::Elem {
        self.eval_word(&m.edges)
    }

    pub fn label(&self, e: usize) -> &G::Elem {
        &self.labels[e]
    }
}

/// Each edge sent to its own free generator t_{i+1}.
pub fn free_cocycle(g: &KGraph) -> Cocycle<FreeGroup> {
    let group = FreeGroup { rank: g.edge_count() };
    let labels = (0..g.edge_count()).map(|i| FreeWord::generator(i + 1)).collect();
    Cocycle::new(g, group, labels).expect("free labels are functorial on graphs without squares")
}

/// The degree functor into ℤ^k.
pub fn degree_cocycle(g: &KGraph) -> Cocycle<AbelianGroup> {
    let group = AbelianGroup::free(g.rank());
    let labels = g
        .edges()
        .iter()
        .map(|e| group.element(Degree::unit(g.rank(), e.color).0.iter().map(|&x| x as i64).collect()))
        .collect();
    Cocycle { group, labels }
}

/// Two distinct morphisms with the same range, source, degree and label.
pub type Collision = (Morphism, Morphism);

/// Checks injectivity of c on every uΛ^n v with n ≤ `bound`.
/// Distinct degrees are separated by pairing with d.
pub fn essential_up_to<G: Group>(g: &KGraph, c: &Cocycle<G>, bound: &Degree) -> std::result::Result<usize, Collision> {
    let mut checked = 0;
    for u in 0..g.vertex_count() {
        for n in bound.below() {
            let mut seen: HashMap<(usize, G::Elem), Morphism> = HashMap::new();
            for m in g.morphisms_from(u, &n) {
                checked += 1;
                let key = (m.source, c.eval(&m));
                if let Some(prev) = seen.get(&key) {
                    return Err((prev.clone(), m));
                }
                seen.insert(key, m);
            }
        }
    }
    Ok(checked)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn steinberg_index_cocycle_is_functorial_and_separates_edges() {
        let g = KGraph::new(&catalog::example_3_2()).unwrap();
        let z = AbelianGroup::free(1);
        let labels = g
            .edges()
            .iter()
            .map(|e| z.element(vec![e.id[1..].parse::<i64>().unwrap()]))
            .collect();
        let c = Cocycle::new(&g, z, labels).unwrap();
        // Injective on edges once paired with degree.
        assert!(essential_up_to(&g, &c, &Degree(vec![1, 0])).is_ok());
        assert!(essential_up_to(&g, &c, &Degree(vec![0, 1])).is_ok());
        // Not on degree (1,1): f1e4 and f4e1 both get 5.
        let (a, b) = essential_up_to(&g, &c, &Degree(vec![1, 1])).unwrap_err();
        assert_eq!(c.eval(&a), c.eval(&b));
    }

    #[test]
    fn non_functorial_labels_rejected() {
        let g = KGraph::new(&catalog::pqr_7_1()).unwrap();
        let z = AbelianGroup::free(1);
        let r = Cocycle::from_ids(&g, z.clone(), &[("a", z.element(vec![1]))]);
        assert!(matches!(r, Err(Error::NonFunctorialCocycle(_))));
    }
}
