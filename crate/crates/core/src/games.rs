//! Ehrenfeucht–Fraïssé games for two-variable logic with between and
//! threshold predicates.
//!
//! In each round Player 1 moves the pebble in one word to a different
//! position; Player 2 answers in the other word in the same direction, onto
//! the same letter, jumping over the same number of each letter `a` up to
//! the threshold `θ(a)`. With `θ ≡ 1` this is the game for the plain
//! between predicate.
//!
//! Two engines decide the game. [`solve_marked_game`] is a memoized minimax
//! over `(i1, i2, rounds left)`, costing `O(k·n1·n2·(n1+n2)·max(n1,n2)·|A|)`.
//! The equivalence queries use rank-`k` types: the type of a position
//! records its letter and the set of (direction, thresholded jump profile,
//! type one rank lower) reachable in one move. Two marked words are
//! equivalent for `k` rounds exactly when their rank-`k` types agree, which
//! costs `O(k·n²·|A|)` per word.

use std::collections::{BTreeSet, HashMap};

use crate::alphabet::Word;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GameError {
    #[error("threshold for letter {0} must be at least 1")]
    ZeroThreshold(usize),
    #[error("position {pos} is outside 1..={len}")]
    BadPosition { pos: usize, len: usize },
    #[error("letter {letter} has no threshold (alphabet of size {size})")]
    UnknownLetter { letter: usize, size: usize },
}

/// Number of rounds and per-letter thresholds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GameConfig {
    pub rounds: usize,
    pub theta: Vec<u64>,
}

impl GameConfig {
    /// The between game: `θ(a) = 1` for every letter.
    pub fn plain(rounds: usize, alphabet_len: usize) -> Self {
        GameConfig {
            rounds,
            theta: vec![1; alphabet_len],
        }
    }

    pub fn with_theta(rounds: usize, theta: Vec<u64>) -> Result<Self, GameError> {
        if let Some(a) = theta.iter().position(|&t| t == 0) {
            return Err(GameError::ZeroThreshold(a));
        }
        Ok(GameConfig { rounds, theta })
    }

    fn check_word(&self, w: &[usize]) -> Result<(), GameError> {
        match w.iter().find(|&&l| l >= self.theta.len()) {
            Some(&letter) => Err(GameError::UnknownLetter {
                letter,
                size: self.theta.len(),
            }),
            None => Ok(()),
        }
    }
}

/// Two marked words with 1-based pebble positions.
#[derive(Debug, Clone, Copy)]
pub struct GamePosition<'a> {
    pub w1: &'a [usize],
    pub i1: usize,
    pub w2: &'a [usize],
    pub i2: usize,
    pub remaining: usize,
}

struct Prefix {
    counts: Vec<Vec<u64>>,
}

impl Prefix {
    fn new(w: &[usize], letters: usize) -> Prefix {
        let mut counts = vec![vec![0u64; w.len() + 1]; letters];
        for (p, &l) in w.iter().enumerate() {
            for (a, row) in counts.iter_mut().enumerate() {
                row[p + 1] = row[p] + u64::from(a == l);
            }
        }
        Prefix { counts }
    }

    /// Letter `a` strictly between 0-based positions `p` and `q`.
    fn between(&self, a: usize, p: usize, q: usize) -> u64 {
        let (lo, hi) = if p < q { (p, q) } else { (q, p) };
        self.counts[a][hi] - self.counts[a][lo + 1]
    }
}

fn profiles_match(theta: &[u64], x: &Prefix, p: usize, q: usize, y: &Prefix, r: usize, s: usize) -> bool {
    theta.iter().enumerate().all(|(a, &t)| {
        let m1 = x.between(a, p, q);
        let m2 = y.between(a, r, s);
        m1 == m2 || (m1 >= t && m2 >= t)
    })
}

/// Whether Player 2 wins the game from the given marked words. Letters at
/// the pebbles must agree at every stage, including the start.
pub fn solve_marked_game(pos: &GamePosition<'_>, cfg: &GameConfig) -> Result<bool, GameError> {
    let (w1, w2) = (pos.w1, pos.w2);
    for (w, i) in [(w1, pos.i1), (w2, pos.i2)] {
        if i == 0 || i > w.len() {
            return Err(GameError::BadPosition { pos: i, len: w.len() });
        }
        cfg.check_word(w)?;
    }
    let k = cfg.theta.len();
    let solver = Minimax {
        w1,
        w2,
        p1: Prefix::new(w1, k),
        p2: Prefix::new(w2, k),
        theta: &cfg.theta,
        memo: HashMap::new(),
    };
    let mut solver = solver;
    Ok(solver.wins(pos.i1 - 1, pos.i2 - 1, pos.remaining))
}

struct Minimax<'a> {
    w1: &'a [usize],
    w2: &'a [usize],
    p1: Prefix,
    p2: Prefix,
    theta: &'a [u64],
    memo: HashMap<(usize, usize, usize), bool>,
}

impl Minimax<'_> {
    fn wins(&mut self, i1: usize, i2: usize, rem: usize) -> bool {
        if self.w1[i1] != self.w2[i2] {
            return false;
        }
        if rem == 0 {
            return true;
        }
        if let Some(&v) = self.memo.get(&(i1, i2, rem)) {
            return v;
        }
        let mut result = true;
        // Player 1 in w1, Player 2 answers in w2.
        'outer: for j1 in (0..self.w1.len()).filter(|&j| j != i1) {
            if !self.has_answer(true, i1, j1, i2, rem) {
                result = false;
                break 'outer;
            }
        }
        if result {
            for j2 in (0..self.w2.len()).filter(|&j| j != i2) {
                if !self.has_answer(false, i2, j2, i1, rem) {
                    result = false;
                    break;
                }
            }
        }
        self.memo.insert((i1, i2, rem), result);
        result
    }

    /// Player 1 moved `from → to` in one word; can Player 2 answer from
    /// `other` in the other word?
    fn has_answer(&mut self, in_first: bool, from: usize, to: usize, other: usize, rem: usize) -> bool {
        let (ws, wo) = if in_first { (self.w1, self.w2) } else { (self.w2, self.w1) };
        let right = to > from;
        for answer in 0..wo.len() {
            if answer == other || (answer > other) != right || wo[answer] != ws[to] {
                continue;
            }
            let (ps, po) = if in_first { (&self.p1, &self.p2) } else { (&self.p2, &self.p1) };
            if !profiles_match(self.theta, ps, from, to, po, other, answer) {
                continue;
            }
            let ok = if in_first {
                self.wins(to, answer, rem - 1)
            } else {
                self.wins(answer, to, rem - 1)
            };
            if ok {
                return true;
            }
        }
        false
    }
}

type TypeKey = (usize, Vec<(bool, u32, u32)>);

/// Interns rank-`r` position types so that ids can be compared across
/// words.
pub struct TypeInterner {
    theta: Vec<u64>,
    types: HashMap<TypeKey, u32>,
    profiles: HashMap<Vec<u64>, u32>,
}

/// A word prepared for type computation.
struct Prepared {
    letters: Vec<usize>,
    /// Profile id for every ordered pair `(p, q)`, `p != q`.
    profile: Vec<u32>,
    types: Vec<u32>,
}

impl TypeInterner {
    pub fn new(theta: &[u64]) -> Self {
        TypeInterner {
            theta: theta.to_vec(),
            types: HashMap::new(),
            profiles: HashMap::new(),
        }
    }

    fn intern_type(&mut self, key: TypeKey) -> u32 {
        let fresh = self.types.len() as u32;
        *self.types.entry(key).or_insert(fresh)
    }

    fn prepare(&mut self, w: &[usize]) -> Prepared {
        let n = w.len();
        let prefix = Prefix::new(w, self.theta.len());
        let mut profile = vec![0u32; n * n];
        for p in 0..n {
            for q in 0..n {
                if p == q {
                    continue;
                }
                let capped: Vec<u64> = self
                    .theta
                    .iter()
                    .enumerate()
                    .map(|(a, &t)| prefix.between(a, p, q).min(t))
                    .collect();
                let fresh = self.profiles.len() as u32;
                profile[p * n + q] = *self.profiles.entry(capped).or_insert(fresh);
            }
        }
        let types = w
            .iter()
            .map(|&l| self.intern_type((l, Vec::new())))
            .collect();
        Prepared {
            letters: w.to_vec(),
            profile,
            types,
        }
    }

    /// Raises every position's type by one rank.
    fn step(&mut self, w: &mut Prepared) {
        let n = w.letters.len();
        let next: Vec<u32> = (0..n)
            .map(|p| {
                let moves: BTreeSet<(bool, u32, u32)> = (0..n)
                    .filter(|&q| q != p)
                    .map(|q| (q > p, w.profile[p * n + q], w.types[q]))
                    .collect();
                self.intern_type((w.letters[p], moves.into_iter().collect()))
            })
            .collect();
        w.types = next;
    }

    /// Rank-`r` types of all positions of `w`.
    pub fn types(&mut self, w: &[usize], rank: usize) -> Vec<u32> {
        let mut p = self.prepare(w);
        for _ in 0..rank {
            self.step(&mut p);
        }
        p.types
    }

    /// Class id of `w` under `≡_k` (unmarked): the set of rank-`(k-1)` types.
    fn word_signature(&mut self, w: &[usize], k: usize) -> Vec<u32> {
        if k == 0 {
            return Vec::new();
        }
        let mut t = self.types(w, k - 1);
        t.sort_unstable();
        t.dedup();
        t
    }
}

/// `(w1, i1) ≡_k^θ (w2, i2)` for 1-based positions, via types.
pub fn marked_equiv(
    w1: &[usize],
    i1: usize,
    w2: &[usize],
    i2: usize,
    cfg: &GameConfig,
) -> Result<bool, GameError> {
    for (w, i) in [(w1, i1), (w2, i2)] {
        if i == 0 || i > w.len() {
            return Err(GameError::BadPosition { pos: i, len: w.len() });
        }
        cfg.check_word(w)?;
    }
    let mut interner = TypeInterner::new(&cfg.theta);
    let t1 = interner.types(w1, cfg.rounds);
    let t2 = interner.types(w2, cfg.rounds);
    Ok(t1[i1 - 1] == t2[i2 - 1])
}

/// `w1 ≡_k^θ w2` for unmarked words: Player 1 first places a pebble on
/// either word, Player 2 answers on the same letter, and the marked game
/// continues for `k - 1` rounds. With `k = 0` every pair is equivalent.
///
/// # Panics
/// If a word uses a letter without a threshold.
pub fn equiv_k(w1: &[usize], w2: &[usize], cfg: &GameConfig) -> bool {
    cfg.check_word(w1).expect("word letters must have thresholds");
    cfg.check_word(w2).expect("word letters must have thresholds");
    let mut interner = TypeInterner::new(&cfg.theta);
    interner.word_signature(w1, cfg.rounds) == interner.word_signature(w2, cfg.rounds)
}

/// Smallest `k <= max_k` with `w1 ≢_k w2`, if any.
pub fn distinguishing_depth(w1: &[usize], w2: &[usize], max_k: usize, theta: &[u64]) -> Option<usize> {
    let mut interner = TypeInterner::new(theta);
    if max_k == 0 {
        return None;
    }
    let mut p1 = interner.prepare(w1);
    let mut p2 = interner.prepare(w2);
    let set = |p: &Prepared| p.types.iter().copied().collect::<BTreeSet<u32>>();
    for k in 1..=max_k {
        if set(&p1) != set(&p2) {
            return Some(k);
        }
        if k < max_k {
            interner.step(&mut p1);
            interner.step(&mut p2);
        }
    }
    None
}

/// Partitions `words` into `≡_k^θ` classes; returns one class id per word,
/// numbered by first occurrence.
pub fn word_classes(words: &[Word], theta: &[u64], k: usize) -> Vec<usize> {
    let mut interner = TypeInterner::new(theta);
    let mut ids: HashMap<Vec<u32>, usize> = HashMap::new();
    words
        .iter()
        .map(|w| {
            let sig = interner.word_signature(w, k);
            let fresh = ids.len();
            *ids.entry(sig).or_insert(fresh)
        })
        .collect()
}
