//! Complete deterministic automata: construction from regular expressions,
//! minimization and membership.
//!
//! Minimal automata are numbered canonically (breadth-first from the initial
//! state, letters in alphabet order), so two minimal automata for the same
//! language over the same alphabet compare equal with `==`.

use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::alphabet::{Alphabet, Word};
use crate::regex::Regex;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DfaError {
    #[error("automaton must have at least one state")]
    NoStates,
    #[error("state {0} out of range")]
    StateOutOfRange(usize),
    #[error("transition row {row} has {found} entries, expected {expected}")]
    RowLength {
        row: usize,
        found: usize,
        expected: usize,
    },
    #[error("expected {expected} transition rows, found {found}")]
    RowCount { expected: usize, found: usize },
    #[error("alphabet mismatch: automaton is over {expected}, word is over {found}")]
    AlphabetMismatch { expected: String, found: String },
    #[error("letter index {0} not in the automaton's alphabet")]
    BadLetter(usize),
}

/// A complete DFA. `delta[q][a]` is the successor of state `q` on letter `a`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "DfaJson", into = "DfaJson")]
pub struct Dfa {
    alphabet: Alphabet,
    initial: usize,
    accepting: Vec<bool>,
    delta: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct DfaJson {
    alphabet: Alphabet,
    states: usize,
    initial: usize,
    accepting: Vec<usize>,
    delta: Vec<Vec<usize>>,
}

impl TryFrom<DfaJson> for Dfa {
    type Error = DfaError;

    fn try_from(j: DfaJson) -> Result<Self, DfaError> {
        if j.delta.len() != j.states {
            return Err(DfaError::RowCount {
                expected: j.states,
                found: j.delta.len(),
            });
        }
        Dfa::new(j.alphabet, j.initial, &j.accepting, j.delta)
    }
}

impl From<Dfa> for DfaJson {
    fn from(d: Dfa) -> Self {
        DfaJson {
            states: d.states(),
            accepting: d.accepting_states(),
            alphabet: d.alphabet,
            initial: d.initial,
            delta: d.delta,
        }
    }
}

impl Dfa {
    pub fn new(
        alphabet: Alphabet,
        initial: usize,
        accepting: &[usize],
        delta: Vec<Vec<usize>>,
    ) -> Result<Self, DfaError> {
        let n = delta.len();
        if n == 0 {
            return Err(DfaError::NoStates);
        }
        if initial >= n {
            return Err(DfaError::StateOutOfRange(initial));
        }
        for (row, succ) in delta.iter().enumerate() {
            if succ.len() != alphabet.len() {
                return Err(DfaError::RowLength {
                    row,
                    found: succ.len(),
                    expected: alphabet.len(),
                });
            }
            if let Some(&q) = succ.iter().find(|&&q| q >= n) {
                return Err(DfaError::StateOutOfRange(q));
            }
        }
        let mut acc = vec![false; n];
        for &q in accepting {
            *acc.get_mut(q).ok_or(DfaError::StateOutOfRange(q))? = true;
        }
        Ok(Dfa {
            alphabet,
            initial,
            accepting: acc,
            delta,
        })
    }

    /// Minimal complete DFA for the language of `regex`.
    pub fn from_regex(regex: &Regex, alphabet: &Alphabet) -> Dfa {
        let nfa = Nfa::thompson(regex, alphabet.len());
        nfa.determinize(alphabet.clone()).minimize()
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn states(&self) -> usize {
        self.delta.len()
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn is_accepting(&self, q: usize) -> bool {
        self.accepting[q]
    }

    pub fn accepting_states(&self) -> Vec<usize> {
        (0..self.states()).filter(|&q| self.accepting[q]).collect()
    }

    pub fn step(&self, q: usize, letter: usize) -> usize {
        self.delta[q][letter]
    }

    pub fn delta(&self) -> &[Vec<usize>] {
        &self.delta
    }

    pub fn run(&self, from: usize, letters: &[usize]) -> usize {
        letters.iter().fold(from, |q, &a| self.delta[q][a])
    }

    /// Membership for a word over this automaton's alphabet.
    ///
    /// # Panics
    /// If a letter index is out of range; see [`Dfa::accepts_word`].
    pub fn accepts(&self, w: &[usize]) -> bool {
        self.accepting[self.run(self.initial, w)]
    }

    /// Membership with validation of the word's alphabet.
    pub fn accepts_word(&self, alphabet: &Alphabet, w: &Word) -> Result<bool, DfaError> {
        if alphabet != &self.alphabet {
            return Err(DfaError::AlphabetMismatch {
                expected: self.alphabet.to_string(),
                found: alphabet.to_string(),
            });
        }
        if let Some(&l) = w.iter().find(|&&l| l >= self.alphabet.len()) {
            return Err(DfaError::BadLetter(l));
        }
        Ok(self.accepts(w))
    }

    fn reachable(&self) -> Vec<usize> {
        let mut seen = vec![false; self.states()];
        let mut order = vec![self.initial];
        seen[self.initial] = true;
        let mut i = 0;
        while i < order.len() {
            for &r in &self.delta[order[i]] {
                if !seen[r] {
                    seen[r] = true;
                    order.push(r);
                }
            }
            i += 1;
        }
        order
    }

    /// Removes unreachable states, merges equivalent states (Moore partition
    /// refinement) and renumbers canonically.
    pub fn minimize(&self) -> Dfa {
        let states = self.reachable();
        let mut class: HashMap<usize, usize> = states
            .iter()
            .map(|&q| (q, usize::from(self.accepting[q])))
            .collect();
        let mut count = class.values().copied().max().map_or(0, |m| m + 1);
        loop {
            let mut ids: HashMap<Vec<usize>, usize> = HashMap::new();
            let mut next = HashMap::with_capacity(states.len());
            for &q in &states {
                let mut sig = Vec::with_capacity(self.alphabet.len() + 1);
                sig.push(class[&q]);
                sig.extend(self.delta[q].iter().map(|r| class[r]));
                let fresh = ids.len();
                next.insert(q, *ids.entry(sig).or_insert(fresh));
            }
            let new_count = ids.len();
            class = next;
            if new_count == count {
                break;
            }
            count = new_count;
        }
        // Representative per class, then canonical BFS numbering.
        let mut rep: HashMap<usize, usize> = HashMap::new();
        for &q in &states {
            rep.entry(class[&q]).or_insert(q);
        }
        let mut number: HashMap<usize, usize> = HashMap::new();
        let mut queue = VecDeque::from([class[&self.initial]]);
        number.insert(class[&self.initial], 0);
        let mut delta = Vec::new();
        let mut accepting = Vec::new();
        while let Some(c) = queue.pop_front() {
            let q = rep[&c];
            let row = self.delta[q]
                .iter()
                .map(|r| {
                    let rc = class[r];
                    let fresh = number.len();
                    *number.entry(rc).or_insert_with(|| {
                        queue.push_back(rc);
                        fresh
                    })
                })
                .collect();
            delta.push(row);
            accepting.push(self.accepting[q]);
        }
        Dfa {
            alphabet: self.alphabet.clone(),
            initial: 0,
            accepting,
            delta,
        }
    }

    /// A regular expression for the language, by state elimination.
    pub fn to_regex(&self) -> Regex {
        let n = self.states();
        // Generalized automaton: states 0..n, plus start n and final n+1.
        let (start, fin) = (n, n + 1);
        let mut edge: Vec<Vec<Option<Regex>>> = vec![vec![None; n + 2]; n + 2];
        let add = |e: &mut Option<Regex>, r: Regex| {
            *e = Some(match e.take() {
                None => r,
                Some(old) => old.union(r),
            });
        };
        add(&mut edge[start][self.initial], Regex::Epsilon);
        for q in 0..n {
            for (a, &r) in self.delta[q].iter().enumerate() {
                add(&mut edge[q][r], Regex::Letter(a));
            }
            if self.accepting[q] {
                add(&mut edge[q][fin], Regex::Epsilon);
            }
        }
        for q in 0..n {
            let lp = edge[q][q].take().map(Regex::star);
            let ins: Vec<(usize, Regex)> = (0..n + 2)
                .filter(|&p| p != q)
                .filter_map(|p| edge[p][q].take().map(|r| (p, r)))
                .collect();
            let outs: Vec<(usize, Regex)> = (0..n + 2)
                .filter(|&r| r != q)
                .filter_map(|r| edge[q][r].take().map(|x| (r, x)))
                .collect();
            for (p, rin) in &ins {
                for (r, rout) in &outs {
                    let mut path = rin.clone();
                    if let Some(l) = &lp {
                        path = concat_simplified(path, l.clone());
                    }
                    path = concat_simplified(path, rout.clone());
                    add(&mut edge[*p][*r], path);
                }
            }
        }
        edge[start][fin].take().unwrap_or(Regex::Empty)
    }
}

fn concat_simplified(a: Regex, b: Regex) -> Regex {
    match (a, b) {
        (Regex::Epsilon, x) | (x, Regex::Epsilon) => x,
        (x, y) => x.concat(y),
    }
}

/// Thompson automaton: every state has either up to two epsilon moves or a
/// single letter move.
struct Nfa {
    eps: Vec<Vec<usize>>,
    letter: Vec<Option<(usize, usize)>>,
    start: usize,
    accept: usize,
    letters: usize,
}

impl Nfa {
    fn thompson(r: &Regex, letters: usize) -> Nfa {
        let mut nfa = Nfa {
            eps: Vec::new(),
            letter: Vec::new(),
            start: 0,
            accept: 0,
            letters,
        };
        let (s, a) = nfa.build(r);
        nfa.start = s;
        nfa.accept = a;
        nfa
    }

    fn fresh(&mut self) -> usize {
        self.eps.push(Vec::new());
        self.letter.push(None);
        self.eps.len() - 1
    }

    fn build(&mut self, r: &Regex) -> (usize, usize) {
        let s = self.fresh();
        let e = self.fresh();
        match r {
            Regex::Empty => {}
            Regex::Epsilon => self.eps[s].push(e),
            Regex::Letter(l) => self.letter[s] = Some((*l, e)),
            Regex::Union(x, y) => {
                for sub in [x, y] {
                    let (xs, xe) = self.build(sub);
                    self.eps[s].push(xs);
                    self.eps[xe].push(e);
                }
            }
            Regex::Concat(x, y) => {
                let (xs, xe) = self.build(x);
                let (ys, ye) = self.build(y);
                self.eps[s].push(xs);
                self.eps[xe].push(ys);
                self.eps[ye].push(e);
            }
            Regex::Star(x) | Regex::Plus(x) => {
                let (xs, xe) = self.build(x);
                self.eps[s].push(xs);
                self.eps[xe].push(xs);
                self.eps[xe].push(e);
                if matches!(r, Regex::Star(_)) {
                    self.eps[s].push(e);
                }
            }
        }
        (s, e)
    }

    fn closure(&self, set: &mut Vec<usize>) {
        let mut seen = vec![false; self.eps.len()];
        for &q in set.iter() {
            seen[q] = true;
        }
        let mut stack = set.clone();
        while let Some(q) = stack.pop() {
            for &r in &self.eps[q] {
                if !seen[r] {
                    seen[r] = true;
                    set.push(r);
                    stack.push(r);
                }
            }
        }
        set.sort_unstable();
    }

    fn determinize(&self, alphabet: Alphabet) -> Dfa {
        let mut init = vec![self.start];
        self.closure(&mut init);
        let mut ids: HashMap<Vec<usize>, usize> = HashMap::from([(init.clone(), 0)]);
        let mut sets = vec![init];
        let mut delta = Vec::new();
        let mut i = 0;
        while i < sets.len() {
            let mut row = Vec::with_capacity(self.letters);
            for a in 0..self.letters {
                let mut next: Vec<usize> = sets[i]
                    .iter()
                    .filter_map(|&q| match self.letter[q] {
                        Some((l, r)) if l == a => Some(r),
                        _ => None,
                    })
                    .collect();
                self.closure(&mut next);
                next.dedup();
                let fresh = sets.len();
                let id = *ids.entry(next.clone()).or_insert(fresh);
                if id == fresh {
                    sets.push(next);
                }
                row.push(id);
            }
            delta.push(row);
            i += 1;
        }
        let accepting = sets.iter().map(|s| s.contains(&self.accept)).collect();
        Dfa {
            alphabet,
            initial: 0,
            accepting,
            delta,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Alphabet {
        Alphabet::from_chars("ab").unwrap()
    }

    fn dfa(text: &str) -> Dfa {
        let a = ab();
        Dfa::from_regex(&Regex::parse(text, &a).unwrap(), &a)
    }

    #[test]
    fn golden_sizes() {
        let d = dfa("(ab)*");
        assert_eq!(d.states(), 3);
        assert!(d.accepts(&[0, 1, 0, 1]));
        assert!(!d.accepts(&[0, 1, 1, 0]));
        assert!(d.accepts(&[]));
        assert_eq!(dfa("(a(ab)*b)*").states(), 4);
        let empty = dfa("%0");
        assert_eq!(empty.states(), 1);
        assert!(empty.accepting_states().is_empty());
        assert_eq!(dfa("(a+b)*").states(), 1);
    }

    #[test]
    fn canonical_numbering_identifies_equal_languages() {
        assert_eq!(dfa("(ab)*"), dfa("%e+a(ba)*b"));
        assert_eq!(dfa("(a+b)*"), dfa("(a*b*)*"));
        assert_ne!(dfa("(ab)*"), dfa("(ab)^+"));
    }

    #[test]
    fn json_shape() {
        let d = dfa("(ab)*");
        let v = serde_json::to_value(&d).unwrap();
        assert_eq!(v["states"], 3);
        assert_eq!(v["initial"], 0);
        assert_eq!(v["alphabet"], serde_json::json!(["a", "b"]));
        assert_eq!(v["accepting"], serde_json::json!([0]));
        let back: Dfa = serde_json::from_value(v).unwrap();
        assert_eq!(back, d);
        let bad = serde_json::json!({"alphabet":["a"],"states":1,"initial":0,"accepting":[],"delta":[[1]]});
        assert!(serde_json::from_value::<Dfa>(bad).is_err());
    }

    #[test]
    fn alphabet_mismatch_is_reported() {
        let d = dfa("(ab)*");
        let abc = Alphabet::from_chars("abc").unwrap();
        assert!(matches!(
            d.accepts_word(&abc, &Word(vec![0])),
            Err(DfaError::AlphabetMismatch { .. })
        ));
        assert!(matches!(
            d.accepts_word(&ab(), &Word(vec![2])),
            Err(DfaError::BadLetter(2))
        ));
        assert_eq!(d.accepts_word(&ab(), &Word(vec![0, 1])), Ok(true));
    }

    #[test]
    fn state_elimination_round_trip() {
        let a = ab();
        for text in ["(ab)*", "(a(ab)*b)*", "%0", "%e", "(a+b)*bab^+ab(a+b)*", "a*b"] {
            let d = dfa(text);
            assert_eq!(Dfa::from_regex(&d.to_regex(), &a), d, "{text}");
        }
    }
}
