use std::collections::BTreeSet;

use super::{Guard, Tl};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TlError {
    #[error("formulas are evaluated at a position; the empty word has none")]
    EmptyWord,
    #[error("position {pos} outside 1..={len}")]
    OutOfRange { pos: usize, len: usize },
    #[error("interval ({i},{j}) is not increasing")]
    BadInterval { i: usize, j: usize },
}

/// Prefix counts per letter; `prefix[a][p]` counts `a` among the first `p`
/// letters.
struct Counts {
    prefix: Vec<Vec<u64>>,
}

impl Counts {
    fn new(w: &[usize]) -> Counts {
        let k = w.iter().copied().max().map_or(0, |m| m + 1);
        let mut prefix = vec![vec![0u64; w.len() + 1]; k];
        for (p, &l) in w.iter().enumerate() {
            for (a, row) in prefix.iter_mut().enumerate() {
                row[p + 1] = row[p] + u64::from(a == l);
            }
        }
        Counts { prefix }
    }

    /// Letters of `set` strictly between 0-based positions `p < q`.
    fn interior(&self, set: &BTreeSet<usize>, p: usize, q: usize) -> u64 {
        set.iter()
            .filter_map(|&a| self.prefix.get(a))
            .map(|row| row[q] - row[p + 1])
            .sum()
    }
}

impl Guard {
    /// Whether `(w, i, j)` satisfies the guard; positions are 1-based with
    /// `i < j`.
    pub fn sat(&self, w: &[usize], i: usize, j: usize) -> Result<bool, TlError> {
        if i >= j {
            return Err(TlError::BadInterval { i, j });
        }
        if i == 0 || j > w.len() {
            return Err(TlError::OutOfRange {
                pos: if i == 0 { i } else { j },
                len: w.len(),
            });
        }
        let counts = Counts::new(w);
        Ok(self.sat_counts(&counts, i - 1, j - 1))
    }

    fn sat_counts(&self, counts: &Counts, p: usize, q: usize) -> bool {
        self.eval_with(&mut |set| counts.interior(set, p, q))
    }
}

impl Tl {
    /// Truth value at every position (index `i` is position `i + 1`).
    pub fn eval_all(&self, w: &[usize]) -> Vec<bool> {
        let counts = Counts::new(w);
        self.eval_vec(w, &counts)
    }

    fn eval_vec(&self, w: &[usize], counts: &Counts) -> Vec<bool> {
        let n = w.len();
        match self {
            Tl::True => vec![true; n],
            Tl::False => vec![false; n],
            Tl::Letter(a) => w.iter().map(|l| l == a).collect(),
            Tl::Not(x) => x.eval_vec(w, counts).into_iter().map(|b| !b).collect(),
            Tl::And(v) | Tl::Or(v) => {
                let is_and = matches!(self, Tl::And(_));
                let mut acc = vec![is_and; n];
                for c in v {
                    for (d, b) in acc.iter_mut().zip(c.eval_vec(w, counts)) {
                        if is_and {
                            *d &= b;
                        } else {
                            *d |= b;
                        }
                    }
                }
                acc
            }
            Tl::Future(g, x) => {
                let body = x.eval_vec(w, counts);
                (0..n)
                    .map(|p| (p + 1..n).any(|q| body[q] && g.sat_counts(counts, p, q)))
                    .collect()
            }
            Tl::Past(g, x) => {
                let body = x.eval_vec(w, counts);
                (0..n)
                    .map(|p| (0..p).any(|q| body[q] && g.sat_counts(counts, q, p)))
                    .collect()
            }
        }
    }

    /// `(w, i) ⊨ f` with `1 <= i <= |w|`.
    pub fn eval(&self, w: &[usize], i: usize) -> Result<bool, TlError> {
        if w.is_empty() {
            return Err(TlError::EmptyWord);
        }
        if i == 0 || i > w.len() {
            return Err(TlError::OutOfRange { pos: i, len: w.len() });
        }
        Ok(self.eval_all(w)[i - 1])
    }

    /// Language membership: `(w, 1) ⊨ f`; false on the empty word.
    pub fn accepts(&self, w: &[usize]) -> bool {
        !w.is_empty() && self.eval_all(w)[0]
    }
}
