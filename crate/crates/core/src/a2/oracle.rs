//! Brute-force confluence check for the normal-form engine.
//!
//! Elementary moves are the defining relations of Γ_T used directly: insert or
//! delete a_x a_x⁻¹ or a_x⁻¹ a_x, insert or delete a relator a_x a_y a_z or its
//! inverse, and a_x a_y ↔ a_z⁻¹, a_y⁻¹ a_x⁻¹ ↔ a_z for (x, y, z) ∈ T. The swap
//! rules of the normalizer play no part, so agreement here is evidence for
//! them rather than a restatement.

use super::plane::Triella;
use super::word::{Letter, Side, SignedWord};
use serde::Serialize;
use std::collections::HashSet;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub word: String,
    pub neighbor: String,
    pub word_form: String,
    pub neighbor_form: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConfluenceReport {
    pub max_len: usize,
    pub closure_len: usize,
    /// Words of length ≤ `max_len`.
    pub seeds: usize,
    /// Distinct normal forms among the seeds.
    pub fibers: usize,
    /// Moves checked, each between two words of length ≤ `closure_len`.
    pub moves: u64,
    pub violations: usize,
    /// Seeds whose normal form is not fixed by normalize, or is not reduced.
    pub unstable_forms: usize,
    /// The first few violations.
    pub examples: Vec<Violation>,
}

impl ConfluenceReport {
    pub fn clean(&self) -> bool {
        self.violations == 0 && self.unstable_forms == 0
    }
}

/// Every move is symmetric and changes length, so checking the lengthening
/// moves out of every word shorter than `closure_len` covers every move among
/// words of length ≤ `closure_len`. Normalize must agree across each of them.
pub fn confluence_oracle(t: &Triella, max_len: usize, closure_len: usize) -> ConfluenceReport {
    let letters: Vec<Letter> = (0..t.points()).flat_map(|x| [Letter::pos(x), Letter::neg(x)]).collect();
    // a single letter and the words of length 2 equal to it
    let mut expansions: Vec<Vec<[Letter; 2]>> = vec![Vec::new(); 2 * t.points()];
    let mut relators: Vec<[Letter; 3]> = Vec::new();
    for &[x, y, z] in &t.triples {
        expansions[slot(Letter::neg(z))].push([Letter::pos(x), Letter::pos(y)]);
        expansions[slot(Letter::pos(z))].push([Letter::neg(y), Letter::neg(x)]);
        relators.push([Letter::pos(x), Letter::pos(y), Letter::pos(z)]);
        relators.push([Letter::neg(z), Letter::neg(y), Letter::neg(x)]);
    }
    let mut report = ConfluenceReport {
        max_len,
        closure_len,
        seeds: 0,
        fibers: 0,
        moves: 0,
        violations: 0,
        unstable_forms: 0,
        examples: Vec::new(),
    };
    let mut fibers: HashSet<SignedWord> = HashSet::new();
    let mut word: Vec<Letter> = Vec::with_capacity(closure_len);
    let mut next: Vec<Letter> = Vec::with_capacity(closure_len);
    let longest = max_len.max(closure_len.saturating_sub(1));
    let mut counter = vec![0usize; longest];
    let mut prefixes: Vec<Vec<Letter>> = vec![Vec::new()];
    for len in 0..=longest {
        counter.iter_mut().for_each(|c| *c = 0);
        loop {
            word.clear();
            word.extend(counter[..len].iter().map(|&i| letters[i]));
            let form = t.normalize_letters(&word);
            if len <= max_len {
                report.seeds += 1;
                if t.normalize(&form) != form || !t.is_normal(&form, Side::Right) {
                    report.unstable_forms += 1;
                }
                fibers.insert(form.clone());
            }
            // normal forms of every prefix, so a move at i only renormalizes from i
            prefixes.truncate(1);
            for &l in &word {
                let mut p = prefixes.last().expect("nonempty").clone();
                t.extend_normal(&mut p, &[l]);
                prefixes.push(p);
            }
            let mut scratch: Vec<Letter> = Vec::with_capacity(closure_len);
            let mut check = |at: usize, next: &[Letter], report: &mut ConfluenceReport| {
                report.moves += 1;
                scratch.clear();
                scratch.extend_from_slice(&prefixes[at]);
                t.extend_normal(&mut scratch, &next[at..]);
                if scratch != form.0 {
                    let other = SignedWord(scratch.clone());
                    report.violations += 1;
                    if report.examples.len() < 8 {
                        report.examples.push(Violation {
                            word: SignedWord(word.clone()).to_string(),
                            neighbor: SignedWord(next.to_vec()).to_string(),
                            word_form: form.to_string(),
                            neighbor_form: other.to_string(),
                        });
                    }
                }
            };
            for i in 0..=len {
                let (head, tail) = word.split_at(i);
                if len + 2 <= closure_len {
                    for &l in &letters {
                        next.clear();
                        next.extend(head.iter().chain(&[l, l.inv()]).chain(tail));
                        check(i, &next, &mut report);
                    }
                }
                if len + 3 <= closure_len {
                    for r in &relators {
                        next.clear();
                        next.extend(head.iter().chain(r).chain(tail));
                        check(i, &next, &mut report);
                    }
                }
            }
            if len < closure_len {
                for i in 0..len {
                    for pair in &expansions[slot(word[i])] {
                        next.clear();
                        next.extend(word[..i].iter().chain(pair).chain(&word[i + 1..]));
                        check(i, &next, &mut report);
                    }
                }
            }
            if !advance(&mut counter[..len], letters.len()) {
                break;
            }
        }
    }
    report.fibers = fibers.len();
    report
}

fn slot(l: Letter) -> usize {
    2 * l.point as usize + l.inverse as usize
}

/// Odometer step; false once every position has wrapped.
fn advance(counter: &mut [usize], base: usize) -> bool {
    for c in counter.iter_mut().rev() {
        *c += 1;
        if *c < base {
            return true;
        }
        *c = 0;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn short_words_are_confluent() {
        let t = Triella::preset("A1").unwrap();
        let r = confluence_oracle(&t, 3, 5);
        assert!(r.clean(), "{:?}", r.examples);
        assert_eq!(r.seeds, 1 + 14 + 196 + 2744);
        assert!(r.moves > 100_000);
    }

    #[test]
    fn generators_lie_in_distinct_fibers() {
        let t = Triella::preset("A1").unwrap();
        let r = confluence_oracle(&t, 1, 1);
        assert_eq!(r.fibers, 15);
    }

    #[test]
    fn a_corrupted_swap_is_caught() {
        let mut t = Triella::preset("A1").unwrap();
        let (s, u) = t.right_swap(0, 1);
        t.corrupt_right_swap(0, 1, (u, s));
        let r = confluence_oracle(&t, 2, 4);
        assert!(r.violations > 0);
    }
}
