//! Bounded search for distinct parallel morphisms identified in Π(Λ).

use super::pi1::{show_word, TreeContraction, Word};
use super::rewrite::{apply_derivation, expand, invert_derivation, relator_conjugates, verify_lemmas, Completion, Lemma, Limits, Step};
use crate::degree::Degree;
use crate::error::{Error, Result};
use crate::kgraph::{KGraph, Morphism};
use crate::presentation::Presentation;
use serde::Serialize;
use std::collections::{BTreeMap, HashMap};

/// i(λ) = i(μ) for distinct parallel λ, μ of the same degree, as a chain of
/// rewrites of tree-contracted words.
#[derive(Debug, Clone, Serialize)]
pub struct CollapseProof {
    /// Edge ids of λ and μ in canonical order.
    pub lambda: Vec<String>,
    pub mu: Vec<String>,
    pub range: String,
    pub source: String,
    pub degree: Degree,
    pub generators: Vec<String>,
    pub relators: Vec<Word>,
    pub word_lambda: Word,
    pub word_mu: Word,
    /// Lemmas used, each proved from the relators and earlier lemmas.
    pub lemmas: Vec<Lemma>,
    /// Rewrites from word_lambda to word_mu.
    pub steps: Vec<Step>,
    /// Completion pass at which the equality appeared.
    pub found_at_pass: usize,
}

impl CollapseProof {
    pub fn show_lambda(&self) -> String {
        join_ids(&self.lambda, &self.range)
    }

    pub fn show_mu(&self) -> String {
        join_ids(&self.mu, &self.range)
    }

    /// The words visited along the main chain, lemma applications as single moves.
    pub fn chain(&self) -> Vec<String> {
        let conj = relator_conjugates(&self.relators);
        let mut w = self.word_lambda.clone();
        let mut out = vec![show_word(&self.generators, &w)];
        for s in &self.steps {
            match super::rewrite::apply_step(&w, s, &self.lemmas, &conj) {
                Ok(n) => w = n,
                Err(_) => break,
            }
            out.push(show_word(&self.generators, &w));
        }
        out
    }

    /// Number of elementary moves once every lemma is inlined, if ≤ `cap`.
    pub fn elementary_length(&self, cap: usize) -> Option<usize> {
        expand(&self.steps, &self.lemmas, cap).map(|v| v.len())
    }

    /// Re-derive everything from `p`: morphisms, contracted words and each step.
    pub fn replay(&self, p: &Presentation) -> Result<()> {
        let g = KGraph::new(p)?;
        let err = |m: String| Error::Invalid(format!("collapse proof does not replay: {m}"));
        let fail = |m: String| Err(err(m));
        let morphism = |ids: &[String]| -> Result<Morphism> {
            if ids.is_empty() {
                Ok(g.identity(g.vertex(&self.range)?))
            } else {
                let refs: Vec<&str> = ids.iter().map(String::as_str).collect();
                g.canonical_form_ids(&refs)
            }
        };
        let (l, m) = (morphism(&self.lambda)?, morphism(&self.mu)?);
        if l == m {
            return fail("λ and μ are equal".into());
        }
        if l.range != m.range || l.source != m.source || l.degree != m.degree {
            return fail("λ and μ are not parallel of equal degree".into());
        }
        if g.morphism_ids(&l) != self.lambda || g.morphism_ids(&m) != self.mu {
            return fail("morphisms are not in canonical form".into());
        }
        let tc = TreeContraction::spanning_forest(&g)?;
        if tc.group.generators != self.generators || tc.group.relators != self.relators {
            return fail("group presentation differs from the tree contraction".into());
        }
        if tc.morphism_word(&l) != self.word_lambda || tc.morphism_word(&m) != self.word_mu {
            return fail("contracted words differ".into());
        }
        let conj = relator_conjugates(&tc.group.relators);
        verify_lemmas(&self.lemmas, &conj).map_err(err)?;
        let end = apply_derivation(&self.word_lambda, &self.steps, &self.lemmas, &conj).map_err(err)?;
        if end != self.word_mu {
            return fail("chain does not end at μ".into());
        }
        Ok(())
    }
}

fn join_ids(ids: &[String], vertex: &str) -> String {
    if ids.is_empty() {
        vertex.to_string()
    } else {
        ids.join("·")
    }
}

/// Keep only the lemmas the chain needs, renumbered in dependency order.
fn prune(lemmas: &[Lemma], steps: &[Step]) -> (Vec<Lemma>, Vec<Step>) {
    let mut needed = vec![false; lemmas.len()];
    let mut stack: Vec<usize> = steps.iter().filter_map(lemma_index).collect();
    while let Some(i) = stack.pop() {
        if !needed[i] {
            needed[i] = true;
            stack.extend(lemmas[i].proof.iter().filter_map(lemma_index));
        }
    }
    let mut renumber = HashMap::new();
    let mut out = Vec::new();
    for (i, l) in lemmas.iter().enumerate() {
        if needed[i] {
            renumber.insert(i, out.len());
            out.push(l.clone());
        }
    }
    let fix = |s: &Step| match s {
        Step::Lemma { index, pos, forward } => Step::Lemma { index: renumber[index], pos: *pos, forward: *forward },
        other => other.clone(),
    };
    for l in &mut out {
        l.proof = l.proof.iter().map(fix).collect();
    }
    (out, steps.iter().map(fix).collect())
}

fn lemma_index(s: &Step) -> Option<usize> {
    match s {
        Step::Lemma { index, .. } => Some(*index),
        _ => None,
    }
}

/// Morphisms with degree ≤ (2,…,2) to compare, grouped by degree.
///
/// Degrees come by total, then largest component (mixed colors before
/// repeated ones), then lexicographically; within a degree by edge ids.
fn targets(g: &KGraph) -> Vec<(Degree, Vec<Morphism>)> {
    let mut degrees = Degree::diagonal(g.rank(), 2).below();
    degrees.retain(|d| !d.is_zero());
    degrees.sort_by_key(|d| (d.total(), d.0.iter().copied().max(), d.clone()));
    let mut out = Vec::new();
    for d in degrees {
        let mut ms: Vec<Morphism> = (0..g.vertex_count()).flat_map(|u| g.morphisms_from(u, &d)).collect();
        ms.sort_by_key(|m| g.morphism_ids(m));
        out.push((d, ms));
    }
    out
}

/// Progress of a completion run, kept for reports.
#[derive(Debug, Clone, Serialize)]
pub struct SearchSummary {
    pub passes: usize,
    pub rules: usize,
    pub complete: bool,
}

/// Seed a completion and run up to `depth` passes, checking for a collapse
/// after seeding and after every pass.
pub fn collapse_search_with(g: &KGraph, depth: usize, limits: Limits) -> Result<(Option<CollapseProof>, SearchSummary)> {
    let tc = TreeContraction::spanning_forest(g)?;
    let mut kb = Completion::new(tc.group.generators.len(), &tc.group.relators, limits);
    let targets = targets(g);
    loop {
        if let Some(p) = find_collision(g, &tc, &kb, &targets) {
            let s = SearchSummary { passes: kb.passes(), rules: kb.rule_count(), complete: kb.is_complete() };
            return Ok((Some(p), s));
        }
        if kb.passes() >= depth || kb.is_complete() {
            let s = SearchSummary { passes: kb.passes(), rules: kb.rule_count(), complete: kb.is_complete() };
            return Ok((None, s));
        }
        kb.pass();
    }
}

pub fn collapse_search(g: &KGraph, depth: usize) -> Option<CollapseProof> {
    collapse_search_with(g, depth, Limits::default()).ok().and_then(|(p, _)| p)
}

fn find_collision(g: &KGraph, tc: &TreeContraction, kb: &Completion, targets: &[(Degree, Vec<Morphism>)]) -> Option<CollapseProof> {
    for (d, ms) in targets {
        let mut seen: BTreeMap<(usize, usize, Word), (&Morphism, Word, Vec<Step>)> = BTreeMap::new();
        for m in ms {
            let w = tc.morphism_word(m);
            let (nf, steps) = kb.reduce(&w);
            let key = (m.range, m.source, nf);
            if let Some((first, w0, s0)) = seen.get(&key) {
                let mut chain = s0.clone();
                chain.extend(invert_derivation(&steps));
                let (lemmas, steps) = prune(&kb.lemmas, &chain);
                return Some(CollapseProof {
                    lambda: g.morphism_ids(first),
                    mu: g.morphism_ids(m),
                    range: g.vertex_id(m.range).to_string(),
                    source: g.vertex_id(m.source).to_string(),
                    degree: d.clone(),
                    generators: tc.group.generators.clone(),
                    relators: tc.group.relators.clone(),
                    word_lambda: w0.clone(),
                    word_mu: w,
                    lemmas,
                    steps,
                    found_at_pass: kb.passes(),
                });
            }
            seen.insert(key, (m, w, steps));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn pqr_collapses_a_and_b() {
        let p = catalog::pqr_7_1();
        let g = KGraph::new(&p).unwrap();
        let proof = collapse_search(&g, 10).expect("collapse");
        assert_eq!((proof.show_lambda(), proof.show_mu()), ("a".to_string(), "b".to_string()));
        proof.replay(&p).unwrap();
    }

    #[test]
    fn tampered_proofs_fail() {
        let p = catalog::pqr_7_1();
        let g = KGraph::new(&p).unwrap();
        let mut proof = collapse_search(&g, 10).unwrap();
        proof.mu = vec!["c".into()];
        assert!(proof.replay(&p).is_err());
        let mut proof = collapse_search(&g, 10).unwrap();
        proof.steps.pop();
        assert!(proof.replay(&p).is_err());
    }

    #[test]
    fn steinberg_collapses_f1e4_and_f4e1() {
        let p = catalog::example_3_2();
        let g = KGraph::new(&p).unwrap();
        let proof = collapse_search(&g, 10).expect("collapse");
        // Canonical forms put color 1 first: f4e1 = e1·f4 and f1e4 = e4·f1.
        assert_eq!((proof.show_lambda(), proof.show_mu()), ("e1·f4".to_string(), "e4·f1".to_string()));
        proof.replay(&p).unwrap();
    }

    #[test]
    fn three_graph_collapses_f1_and_f1_prime() {
        let p = catalog::example_3_3();
        let g = KGraph::new(&p).unwrap();
        let proof = collapse_search(&g, 20).expect("collapse");
        assert_eq!((proof.show_lambda(), proof.show_mu()), ("f1".to_string(), "f1'".to_string()));
        proof.replay(&p).unwrap();
    }

    #[test]
    fn verdicts_are_monotone_in_depth() {
        let g = KGraph::new(&catalog::example_3_2()).unwrap();
        let first = (0..6).find(|&d| collapse_search(&g, d).is_some()).unwrap();
        for d in first..8 {
            assert_eq!(collapse_search(&g, d).unwrap().found_at_pass, first);
        }
    }

    #[test]
    fn bouquet_has_no_collapse() {
        let g = KGraph::new(&catalog::bouquet(2)).unwrap();
        assert!(collapse_search(&g, 5).is_none());
    }
}
