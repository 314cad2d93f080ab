//! Finite monoids, syntactic monoids of regular languages and the variety
//! tests used by the definability report.

mod local;
mod report;

use std::collections::HashMap;

use serde::Serialize;

use crate::alphabet::{Alphabet, Word};
use crate::dfa::Dfa;

pub use local::{fo2suc_definable, LocalSubmonoid, NotIdempotent, SemigroupView};
pub use report::{definability_report, size_warning, DefinabilityReport, Verdicts, DEFAULT_MAX_MONOID};

/// Operations shared by every finite monoid representation.
///
/// Elements are ids `0..size()`.
pub trait Monoid {
    fn size(&self) -> usize;
    fn mul(&self, x: usize, y: usize) -> usize;
    fn identity(&self) -> usize;

    /// The unique idempotent among `x, x², x³, …`.
    fn omega_power(&self, x: usize) -> usize {
        let mut p = x;
        loop {
            if self.mul(p, p) == p {
                return p;
            }
            p = self.mul(p, x);
        }
    }

    fn is_idempotent(&self, x: usize) -> bool {
        self.mul(x, x) == x
    }

    fn idempotents(&self) -> Vec<usize> {
        (0..self.size()).filter(|&x| self.is_idempotent(x)).collect()
    }

    /// `x ≤_J y`: `x = s·y·t` for some `s, t`.
    fn j_leq(&self, x: usize, y: usize) -> bool {
        let n = self.size();
        let mut left = vec![false; n];
        for s in 0..n {
            left[self.mul(s, y)] = true;
        }
        (0..n)
            .filter(|&sy| left[sy])
            .any(|sy| (0..n).any(|t| self.mul(sy, t) == x))
    }

    /// `x · x^ω = x^ω` for every `x`.
    fn is_aperiodic(&self) -> bool {
        (0..self.size()).all(|x| {
            let w = self.omega_power(x);
            self.mul(w, x) == w
        })
    }

    /// `(xy)^ω · x · (xy)^ω = (xy)^ω` for all `x, y`.
    fn is_in_da(&self) -> bool {
        let n = self.size();
        let omega: Vec<usize> = (0..n).map(|x| self.omega_power(x)).collect();
        (0..n).all(|x| {
            (0..n).all(|y| {
                let e = omega[self.mul(x, y)];
                self.mul(self.mul(e, x), e) == e
            })
        })
    }

    /// Exhaustive associativity check over all triples.
    fn is_associative(&self) -> bool {
        let n = self.size();
        (0..n).all(|x| {
            (0..n).all(|y| {
                let xy = self.mul(x, y);
                (0..n).all(|z| self.mul(xy, z) == self.mul(x, self.mul(y, z)))
            })
        })
    }
}

/// A monoid given by an explicit table, used for the local monoids `eMe`
/// and `eSe` whose identity is an idempotent of a larger monoid.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableMonoid {
    /// Element ids of the enclosing monoid, in local id order.
    pub parent_ids: Vec<usize>,
    pub table: Vec<Vec<usize>>,
    pub identity: usize,
}

impl TableMonoid {
    /// Restricts `parent` to `elements` (which must be closed under `mul`).
    pub(crate) fn restrict(parent: &impl Monoid, elements: Vec<usize>, unit: usize) -> TableMonoid {
        let local: HashMap<usize, usize> =
            elements.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let table = elements
            .iter()
            .map(|&x| {
                elements
                    .iter()
                    .map(|&y| local[&parent.mul(x, y)])
                    .collect()
            })
            .collect();
        TableMonoid {
            identity: local[&unit],
            parent_ids: elements,
            table,
        }
    }
}

impl Monoid for TableMonoid {
    fn size(&self) -> usize {
        self.table.len()
    }

    fn mul(&self, x: usize, y: usize) -> usize {
        self.table[x][y]
    }

    fn identity(&self) -> usize {
        self.identity
    }
}

/// Transition monoid of a complete DFA. For a minimal DFA this is the
/// syntactic monoid of its language.
///
/// Element `0` is the identity; elements are numbered in shortlex order of
/// their least representative word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteMonoid {
    alphabet: Alphabet,
    table: Vec<u32>,
    size: usize,
    letter_map: Vec<usize>,
    element_repr: Vec<Vec<usize>>,
    words: Vec<Word>,
    accepting: Vec<bool>,
}

impl FiniteMonoid {
    pub fn syntactic(d: &Dfa) -> FiniteMonoid {
        let n = d.states();
        let k = d.alphabet().len();
        let id: Vec<usize> = (0..n).collect();
        let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(id.clone(), 0)]);
        let mut element_repr = vec![id];
        let mut words = vec![Word::empty()];
        let mut right: Vec<Vec<usize>> = Vec::new();
        let mut i = 0;
        while i < element_repr.len() {
            let mut row = Vec::with_capacity(k);
            for a in 0..k {
                let next: Vec<usize> = element_repr[i].iter().map(|&q| d.step(q, a)).collect();
                let fresh = element_repr.len();
                let j = *index.entry(next.clone()).or_insert(fresh);
                if j == fresh {
                    element_repr.push(next);
                    let mut w = words[i].0.clone();
                    w.push(a);
                    words.push(Word(w));
                }
                row.push(j);
            }
            right.push(row);
            i += 1;
        }
        let size = element_repr.len();
        // x·y: follow y's representative word from x along the right Cayley graph.
        let mut table = vec![0u32; size * size];
        for x in 0..size {
            for y in 0..size {
                let p = words[y].iter().fold(x, |p, &a| right[p][a]);
                table[x * size + y] = p as u32;
            }
        }
        let letter_map = (0..k).map(|a| right[0][a]).collect();
        let accepting = element_repr
            .iter()
            .map(|t| d.is_accepting(t[d.initial()]))
            .collect();
        FiniteMonoid {
            alphabet: d.alphabet().clone(),
            table,
            size,
            letter_map,
            element_repr,
            words,
            accepting,
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    /// Image of each letter.
    pub fn letter_map(&self) -> &[usize] {
        &self.letter_map
    }

    /// State transformation realised by element `x`.
    pub fn element_repr(&self, x: usize) -> &[usize] {
        &self.element_repr[x]
    }

    /// Shortlex-least word mapping to `x`.
    pub fn representative(&self, x: usize) -> &Word {
        &self.words[x]
    }

    /// Human-readable name: the representative word, or `1`.
    pub fn element_name(&self, x: usize) -> String {
        if self.words[x].is_empty() {
            "1".to_string()
        } else {
            self.alphabet.format_word(&self.words[x])
        }
    }

    pub fn element_of_word(&self, w: &[usize]) -> usize {
        w.iter()
            .fold(0, |p, &a| self.mul(p, self.letter_map[a]))
    }

    /// Whether the images of words in the recognised language contain `x`.
    pub fn is_accepting(&self, x: usize) -> bool {
        self.accepting[x]
    }

    pub fn table(&self) -> Vec<Vec<usize>> {
        (0..self.size)
            .map(|x| (0..self.size).map(|y| self.mul(x, y)).collect())
            .collect()
    }

    /// Serializable summary with the full multiplication table.
    pub fn to_json(&self) -> MonoidJson {
        MonoidJson {
            alphabet: self.alphabet.clone(),
            size: self.size,
            identity: 0,
            letter_map: self
                .alphabet
                .letters()
                .iter()
                .cloned()
                .zip(self.letter_map.iter().copied())
                .collect(),
            elements: (0..self.size)
                .map(|x| ElementJson {
                    id: x,
                    word: self.element_name(x),
                    transformation: self.element_repr[x].clone(),
                    idempotent: self.is_idempotent(x),
                })
                .collect(),
            table: self.table(),
        }
    }
}

impl Monoid for FiniteMonoid {
    fn size(&self) -> usize {
        self.size
    }

    fn mul(&self, x: usize, y: usize) -> usize {
        self.table[x * self.size + y] as usize
    }

    fn identity(&self) -> usize {
        0
    }

    fn j_leq(&self, x: usize, y: usize) -> bool {
        let n = self.size;
        let mut left = vec![false; n];
        for s in 0..n {
            left[self.mul(s, y)] = true;
        }
        (0..n)
            .filter(|&sy| left[sy])
            .any(|sy| self.table[sy * n..(sy + 1) * n].iter().any(|&p| p as usize == x))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct MonoidJson {
    pub alphabet: Alphabet,
    pub size: usize,
    pub identity: usize,
    pub letter_map: std::collections::BTreeMap<String, usize>,
    pub elements: Vec<ElementJson>,
    pub table: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ElementJson {
    pub id: usize,
    pub word: String,
    pub transformation: Vec<usize>,
    pub idempotent: bool,
}
