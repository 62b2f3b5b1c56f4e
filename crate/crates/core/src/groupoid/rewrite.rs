//! Shortlex Knuth–Bendix completion for group presentations, with every rule
//! carrying a derivation that can be replayed from the relators alone.

use super::pi1::{cyclically_reduce, inverse, Word};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap, HashSet};

/// One rewrite of a word in a free group with relators.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "step", rename_all = "snake_case")]
pub enum Step {
    /// Insert x x⁻¹ at `pos`.
    FreeInsert { pos: usize, letter: i32 },
    /// Delete x x⁻¹ at `pos`.
    FreeCancel { pos: usize, letter: i32 },
    /// Insert a cyclic conjugate of a relator (or of its inverse).
    RelatorInsert { pos: usize, word: Word },
    RelatorDelete { pos: usize, word: Word },
    /// Replace the lemma's lhs at `pos` by its rhs, or the reverse.
    Lemma { index: usize, pos: usize, forward: bool },
}

impl Step {
    pub fn inverse(&self) -> Step {
        match self.clone() {
            Step::FreeInsert { pos, letter } => Step::FreeCancel { pos, letter },
            Step::FreeCancel { pos, letter } => Step::FreeInsert { pos, letter },
            Step::RelatorInsert { pos, word } => Step::RelatorDelete { pos, word },
            Step::RelatorDelete { pos, word } => Step::RelatorInsert { pos, word },
            Step::Lemma { index, pos, forward } => Step::Lemma { index, pos, forward: !forward },
        }
    }

    fn shifted(&self, by: usize) -> Step {
        let mut s = self.clone();
        match &mut s {
            Step::FreeInsert { pos, .. }
            | Step::FreeCancel { pos, .. }
            | Step::RelatorInsert { pos, .. }
            | Step::RelatorDelete { pos, .. }
            | Step::Lemma { pos, .. } => *pos += by,
        }
        s
    }
}

pub fn invert_derivation(steps: &[Step]) -> Vec<Step> {
    steps.iter().rev().map(Step::inverse).collect()
}

/// A proved equation lhs = rhs; `proof` rewrites lhs into rhs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lemma {
    pub lhs: Word,
    pub rhs: Word,
    pub proof: Vec<Step>,
}

/// All cyclic conjugates of the relators and their inverses.
pub fn relator_conjugates(relators: &[Word]) -> HashSet<Word> {
    let mut out = HashSet::new();
    for r in relators {
        let r = cyclically_reduce(r);
        for w in [r.clone(), inverse(&r)] {
            for i in 0..w.len().max(1) {
                let mut c = w[i..].to_vec();
                c.extend_from_slice(&w[..i]);
                out.insert(c);
            }
        }
    }
    out
}

fn splice(word: &[i32], pos: usize, remove: usize, insert: &[i32]) -> Word {
    let mut out = word[..pos].to_vec();
    out.extend_from_slice(insert);
    out.extend_from_slice(&word[pos + remove..]);
    out
}

/// Apply one step, checking that it is legal.
pub fn apply_step(word: &[i32], step: &Step, lemmas: &[Lemma], conjugates: &HashSet<Word>) -> Result<Word, String> {
    let at = |pos: usize, pattern: &[i32]| word.len() >= pos + pattern.len() && word[pos..pos + pattern.len()] == *pattern;
    match step {
        Step::FreeInsert { pos, letter } => {
            if *pos > word.len() || *letter == 0 {
                return Err(format!("free insertion at {pos} out of range"));
            }
            Ok(splice(word, *pos, 0, &[*letter, -letter]))
        }
        Step::FreeCancel { pos, letter } => {
            if *letter == 0 || !at(*pos, &[*letter, -letter]) {
                return Err(format!("no cancelling pair {letter} at {pos}"));
            }
            Ok(splice(word, *pos, 2, &[]))
        }
        Step::RelatorInsert { pos, word: r } => {
            if !conjugates.contains(r) {
                return Err("inserted word is not a relator conjugate".into());
            }
            if *pos > word.len() {
                return Err(format!("relator insertion at {pos} out of range"));
            }
            Ok(splice(word, *pos, 0, r))
        }
        Step::RelatorDelete { pos, word: r } => {
            if !conjugates.contains(r) {
                return Err("deleted word is not a relator conjugate".into());
            }
            if !at(*pos, r) {
                return Err(format!("relator not found at {pos}"));
            }
            Ok(splice(word, *pos, r.len(), &[]))
        }
        Step::Lemma { index, pos, forward } => {
            let l = lemmas.get(*index).ok_or_else(|| format!("lemma {index} not available"))?;
            let (from, to) = if *forward { (&l.lhs, &l.rhs) } else { (&l.rhs, &l.lhs) };
            if !at(*pos, from) {
                return Err(format!("lemma {index} does not match at {pos}"));
            }
            Ok(splice(word, *pos, from.len(), to))
        }
    }
}

pub fn apply_derivation(start: &[i32], steps: &[Step], lemmas: &[Lemma], conjugates: &HashSet<Word>) -> Result<Word, String> {
    let mut w = start.to_vec();
    for (i, s) in steps.iter().enumerate() {
        w = apply_step(&w, s, lemmas, conjugates).map_err(|e| format!("step {i}: {e}"))?;
    }
    Ok(w)
}

/// Check each lemma using only the lemmas before it.
pub fn verify_lemmas(lemmas: &[Lemma], conjugates: &HashSet<Word>) -> Result<(), String> {
    for (i, l) in lemmas.iter().enumerate() {
        let end = apply_derivation(&l.lhs, &l.proof, &lemmas[..i], conjugates).map_err(|e| format!("lemma {i}: {e}"))?;
        if end != l.rhs {
            return Err(format!("lemma {i} proves the wrong equation"));
        }
    }
    Ok(())
}

/// Inline every lemma application; `None` past `cap` steps.
pub fn expand(steps: &[Step], lemmas: &[Lemma], cap: usize) -> Option<Vec<Step>> {
    let mut memo: HashMap<usize, Vec<Step>> = HashMap::new();
    let mut out = Vec::new();
    for s in steps {
        expand_step(s, lemmas, cap, &mut memo, &mut out)?;
    }
    Some(out)
}

fn expand_step(s: &Step, lemmas: &[Lemma], cap: usize, memo: &mut HashMap<usize, Vec<Step>>, out: &mut Vec<Step>) -> Option<()> {
    let Step::Lemma { index, pos, forward } = s else {
        out.push(s.clone());
        return (out.len() <= cap).then_some(());
    };
    if !memo.contains_key(index) {
        let mut inner = Vec::new();
        for t in &lemmas[*index].proof {
            expand_step(t, lemmas, cap, memo, &mut inner)?;
        }
        memo.insert(*index, inner);
    }
    let body = &memo[index];
    if out.len() + body.len() > cap {
        return None;
    }
    if *forward {
        out.extend(body.iter().map(|t| t.shifted(*pos)));
    } else {
        out.extend(body.iter().rev().map(|t| t.inverse().shifted(*pos)));
    }
    Some(())
}

fn letter_key(x: i32) -> (u32, bool) {
    (x.unsigned_abs(), x < 0)
}

/// Shortlex with t₁ < t₁⁻¹ < t₂ < t₂⁻¹ < ….
pub fn shortlex(a: &[i32], b: &[i32]) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| {
        for (x, y) in a.iter().zip(b) {
            match letter_key(*x).cmp(&letter_key(*y)) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    })
}

/// Fixed bounds on the completion; they do not depend on the pass count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Limits {
    pub max_rules: usize,
    pub max_word: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_rules: 1000, max_word: 24 }
    }
}

type Equation = (Word, Word, Vec<Step>);

/// A (possibly incomplete) confluent-in-progress rewriting system.
#[derive(Debug, Clone)]
pub struct Completion {
    pub generators: usize,
    pub relators: Vec<Word>,
    pub lemmas: Vec<Lemma>,
    pub limits: Limits,
    active: BTreeSet<usize>,
    by_lhs: HashMap<Word, usize>,
    lhs_lengths: BTreeSet<usize>,
    next: Vec<Equation>,
    passes: usize,
    /// Equations dropped for exceeding the limits.
    pub dropped: usize,
}

impl Completion {
    /// Seeds free cancellation and every split of every relator conjugate.
    pub fn new(generators: usize, relators: &[Word], limits: Limits) -> Self {
        let mut c = Completion {
            generators,
            relators: relators.iter().map(|r| cyclically_reduce(r)).filter(|r| !r.is_empty()).collect(),
            lemmas: Vec::new(),
            limits,
            active: BTreeSet::new(),
            by_lhs: HashMap::new(),
            lhs_lengths: BTreeSet::new(),
            next: Vec::new(),
            passes: 0,
            dropped: 0,
        };
        for i in 1..=generators as i32 {
            for x in [i, -i] {
                c.add_rule(vec![x, -x], Vec::new(), vec![Step::FreeCancel { pos: 0, letter: x }]);
            }
        }
        let mut seeds: Vec<Equation> = Vec::new();
        let mut seen = HashSet::new();
        for r in c.relators.clone() {
            for w in [r.clone(), inverse(&r)] {
                for i in 0..w.len() {
                    let mut conj = w[i..].to_vec();
                    conj.extend_from_slice(&w[..i]);
                    if !seen.insert(conj.clone()) {
                        continue;
                    }
                    let h = conj.len().div_ceil(2);
                    let (p, s) = conj.split_at(h);
                    // p → p s s⁻¹ → s⁻¹
                    let mut proof: Vec<Step> =
                        s.iter().enumerate().map(|(t, &x)| Step::FreeInsert { pos: p.len() + t, letter: x }).collect();
                    proof.push(Step::RelatorDelete { pos: 0, word: conj.clone() });
                    seeds.push((p.to_vec(), inverse(s), proof));
                }
            }
        }
        seeds.sort_by(|a, b| shortlex(&a.0, &b.0).then_with(|| shortlex(&a.1, &b.1)));
        for (u, v, proof) in seeds {
            c.process(u, v, proof);
        }
        c
    }

    pub fn passes(&self) -> usize {
        self.passes
    }

    pub fn rule_count(&self) -> usize {
        self.active.len()
    }

    /// No pending critical pairs and nothing dropped: the system is complete.
    pub fn is_complete(&self) -> bool {
        self.next.is_empty() && self.dropped == 0
    }

    pub fn rules(&self) -> impl Iterator<Item = &Lemma> {
        self.active.iter().map(|&i| &self.lemmas[i])
    }

    /// Leftmost-first reduction, returning the normal form and its derivation.
    pub fn reduce(&self, word: &[i32]) -> (Word, Vec<Step>) {
        let mut w = word.to_vec();
        let mut steps = Vec::new();
        'outer: loop {
            for pos in 0..w.len() {
                for &len in &self.lhs_lengths {
                    if pos + len > w.len() {
                        break;
                    }
                    if let Some(&index) = self.by_lhs.get(&w[pos..pos + len]) {
                        let l = &self.lemmas[index];
                        w = splice(&w, pos, len, &l.rhs);
                        steps.push(Step::Lemma { index, pos, forward: true });
                        continue 'outer;
                    }
                }
            }
            return (w, steps);
        }
    }

    fn add_rule(&mut self, lhs: Word, rhs: Word, proof: Vec<Step>) -> usize {
        let index = self.lemmas.len();
        self.lemmas.push(Lemma { lhs: lhs.clone(), rhs, proof });
        self.active.insert(index);
        self.lhs_lengths.insert(lhs.len());
        self.by_lhs.insert(lhs, index);
        index
    }

    fn deactivate(&mut self, index: usize) {
        self.active.remove(&index);
        let lhs = self.lemmas[index].lhs.clone();
        if self.by_lhs.get(&lhs) == Some(&index) {
            self.by_lhs.remove(&lhs);
        }
        self.lhs_lengths = self.active.iter().map(|&i| self.lemmas[i].lhs.len()).collect();
    }

    /// Orient u = v after reduction and add it as a rule.
    fn process(&mut self, u: Word, v: Word, proof: Vec<Step>) {
        // once the rule budget is spent nothing more can be added
        if self.active.len() >= self.limits.max_rules {
            self.dropped += 1;
            return;
        }
        let (u2, pu) = self.reduce(&u);
        let (v2, pv) = self.reduce(&v);
        if u2 == v2 {
            return;
        }
        if u2.len() > self.limits.max_word || v2.len() > self.limits.max_word {
            self.dropped += 1;
            return;
        }
        let mut full = invert_derivation(&pu);
        full.extend(proof);
        full.extend(pv);
        let (lhs, rhs, full) = if shortlex(&u2, &v2) == Ordering::Greater {
            (u2, v2, full)
        } else {
            (v2, u2, invert_derivation(&full))
        };
        let new = self.add_rule(lhs.clone(), rhs, full);
        // Interreduce.
        let others: Vec<usize> = self.active.iter().copied().filter(|&i| i != new).collect();
        let mut requeue = Vec::new();
        for i in others {
            let l = &self.lemmas[i];
            if contains(&l.lhs, &lhs) {
                requeue.push((l.lhs.clone(), l.rhs.clone(), vec![Step::Lemma { index: i, pos: 0, forward: true }]));
                self.deactivate(i);
            } else if contains(&l.rhs, &lhs) {
                let (r2, pr) = self.reduce(&self.lemmas[i].rhs.clone());
                let mut proof = vec![Step::Lemma { index: i, pos: 0, forward: true }];
                proof.extend(pr);
                let lhs_i = self.lemmas[i].lhs.clone();
                self.deactivate(i);
                self.add_rule(lhs_i, r2, proof);
            }
        }
        // Critical pairs of the new rule with every active rule.
        let actives: Vec<usize> = self.active.iter().copied().collect();
        for j in actives {
            self.overlaps(new, j);
            if j != new {
                self.overlaps(j, new);
            }
        }
        for (u, v, p) in requeue {
            self.process(u, v, p);
        }
    }

    /// Overlaps where a suffix of lhs(a) is a prefix of lhs(b).
    fn overlaps(&mut self, a: usize, b: usize) {
        if self.active.len() >= self.limits.max_rules {
            self.dropped += 1;
            return;
        }
        let (la, lb) = (&self.lemmas[a], &self.lemmas[b]);
        for l in 1..la.lhs.len().min(lb.lhs.len()) {
            if la.lhs[la.lhs.len() - l..] != lb.lhs[..l] {
                continue;
            }
            let cut = la.lhs.len() - l;
            let mut u = la.rhs.clone();
            u.extend_from_slice(&lb.lhs[l..]);
            let mut v = la.lhs[..cut].to_vec();
            v.extend_from_slice(&lb.rhs);
            let proof = vec![Step::Lemma { index: a, pos: 0, forward: false }, Step::Lemma { index: b, pos: cut, forward: true }];
            self.next.push((u, v, proof));
        }
    }

    /// Resolve every critical pair queued by the previous pass.
    pub fn pass(&mut self) {
        let mut queue = std::mem::take(&mut self.next);
        queue.sort_by(|a, b| {
            (a.0.len() + a.1.len()).cmp(&(b.0.len() + b.1.len())).then_with(|| shortlex(&a.0, &b.0)).then_with(|| shortlex(&a.1, &b.1))
        });
        for (u, v, p) in queue {
            self.process(u, v, p);
        }
        self.passes += 1;
    }
}

fn contains(hay: &[i32], needle: &[i32]) -> bool {
    needle.len() <= hay.len() && hay.windows(needle.len()).any(|w| w == needle)
}
