//! Bottom-up evaluation. Every subformula is evaluated once into a table
//! indexed by the positions of its free variables, so a formula of size `s`
//! costs `O(s · n²)` on a word of length `n`.

use super::{Fo2, Var};
use crate::alphabet::{Alphabet, Word};

/// Values for the free variables, as 1-based positions.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Assignment {
    pub x: Option<usize>,
    pub y: Option<usize>,
}

impl Assignment {
    pub fn empty() -> Self {
        Assignment::default()
    }

    pub fn x(x: usize) -> Self {
        Assignment {
            x: Some(x),
            y: None,
        }
    }

    pub fn xy(x: usize, y: usize) -> Self {
        Assignment {
            x: Some(x),
            y: Some(y),
        }
    }

    pub fn get(&self, v: Var) -> Option<usize> {
        match v {
            Var::X => self.x,
            Var::Y => self.y,
        }
    }

    pub fn set(&mut self, v: Var, pos: usize) {
        match v {
            Var::X => self.x = Some(pos),
            Var::Y => self.y = Some(pos),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EvalError {
    #[error("free variable {0} is not assigned")]
    Unbound(Var),
    #[error("position {pos} for {var} is outside 1..={len}")]
    OutOfRange { var: Var, pos: usize, len: usize },
    #[error("formula has free variables; a sentence is required")]
    NotSentence,
}

/// Truth values of a subformula for every assignment of its free variables.
struct Table {
    mask: u8,
    data: Vec<bool>,
}

fn table_len(mask: u8, n: usize) -> usize {
    match mask {
        0 => 1,
        1 | 2 => n,
        _ => n * n,
    }
}

fn index(mask: u8, n: usize, x: usize, y: usize) -> usize {
    match mask {
        0 => 0,
        1 => x,
        2 => y,
        _ => x * n + y,
    }
}

impl Table {
    fn get(&self, n: usize, x: usize, y: usize) -> bool {
        self.data[index(self.mask, n, x, y)]
    }

    /// Values over a larger mask.
    fn widen(&self, mask: u8, n: usize) -> Vec<bool> {
        if mask == self.mask {
            return self.data.clone();
        }
        let mut out = Vec::with_capacity(table_len(mask, n));
        for_each(mask, n, |x, y| out.push(self.get(n, x, y)));
        out
    }
}

/// Visits assignments of `mask` in table order.
fn for_each(mask: u8, n: usize, mut f: impl FnMut(usize, usize)) {
    match mask {
        0 => f(0, 0),
        1 => (0..n).for_each(|x| f(x, 0)),
        2 => (0..n).for_each(|y| f(0, y)),
        _ => {
            for x in 0..n {
                for y in 0..n {
                    f(x, y)
                }
            }
        }
    }
}

struct Ctx<'w> {
    word: &'w [usize],
    counts: Vec<Option<Vec<u32>>>,
}

impl Ctx<'_> {
    fn n(&self) -> usize {
        self.word.len()
    }

    fn prefix(&mut self, letter: usize) -> &[u32] {
        if letter >= self.counts.len() {
            self.counts.resize(letter + 1, None);
        }
        let word = self.word;
        self.counts[letter].get_or_insert_with(|| {
            let mut c = Vec::with_capacity(word.len() + 1);
            c.push(0);
            let mut acc = 0;
            for &l in word {
                acc += u32::from(l == letter);
                c.push(acc);
            }
            c
        })
    }

    fn binary(&self, u: Var, v: Var, same: bool, rel: impl Fn(usize, usize) -> bool) -> Table {
        let n = self.n();
        if u == v {
            return Table {
                mask: u.bit(),
                data: vec![same; n],
            };
        }
        let mut data = Vec::with_capacity(n * n);
        for_each(3, n, |x, y| {
            let (pu, pv) = if u == Var::X { (x, y) } else { (y, x) };
            data.push(rel(pu, pv));
        });
        Table { mask: 3, data }
    }

    fn eval(&mut self, f: &Fo2) -> Table {
        let n = self.n();
        match f {
            Fo2::True | Fo2::False => Table {
                mask: 0,
                data: vec![matches!(f, Fo2::True)],
            },
            Fo2::Letter(a, v) => Table {
                mask: v.bit(),
                data: self.word.iter().map(|l| l == a).collect(),
            },
            Fo2::Between {
                letter,
                at_least,
                from,
                to,
            } => {
                let counts = self.prefix(*letter).to_vec();
                let k = *at_least;
                self.binary(*from, *to, false, |pu, pv| {
                    pu < pv && u64::from(counts[pv] - counts[pu + 1]) >= k
                })
            }
            Fo2::Less(u, v) => self.binary(*u, *v, false, |a, b| a < b),
            Fo2::LessEq(u, v) => self.binary(*u, *v, true, |a, b| a <= b),
            Fo2::Equal(u, v) => self.binary(*u, *v, true, |a, b| a == b),
            Fo2::Succ(u, v) => self.binary(*u, *v, false, |a, b| a + 1 == b),
            Fo2::Not(b) => {
                let mut t = self.eval(b);
                t.data.iter_mut().for_each(|v| *v = !*v);
                t
            }
            Fo2::And(items) | Fo2::Or(items) => {
                let is_and = matches!(f, Fo2::And(_));
                let tables: Vec<Table> = items.iter().map(|c| self.eval(c)).collect();
                let mask = tables.iter().fold(0, |m, t| m | t.mask);
                let mut data = vec![is_and; table_len(mask, n)];
                for t in &tables {
                    for (d, v) in data.iter_mut().zip(t.widen(mask, n)) {
                        if is_and {
                            *d &= v;
                        } else {
                            *d |= v;
                        }
                    }
                }
                Table { mask, data }
            }
            Fo2::Implies(a, b) | Fo2::Iff(a, b) => {
                let ta = self.eval(a);
                let tb = self.eval(b);
                let mask = ta.mask | tb.mask;
                let is_imp = matches!(f, Fo2::Implies(..));
                let data = ta
                    .widen(mask, n)
                    .into_iter()
                    .zip(tb.widen(mask, n))
                    .map(|(p, q)| if is_imp { !p || q } else { p == q })
                    .collect();
                Table { mask, data }
            }
            Fo2::Exists(v, b) | Fo2::Forall(v, b) => {
                let is_exists = matches!(f, Fo2::Exists(..));
                let t = self.eval(b);
                let mask = t.mask & !v.bit();
                let mut data = Vec::with_capacity(table_len(mask, n));
                for_each(mask, n, |x, y| {
                    let mut hit = (0..n).map(|p| match v {
                        Var::X => t.get(n, p, y),
                        Var::Y => t.get(n, x, p),
                    });
                    data.push(if is_exists {
                        hit.any(|b| b)
                    } else {
                        hit.all(|b| b)
                    });
                });
                Table { mask, data }
            }
        }
    }
}

impl Fo2 {
    /// Evaluates under `asg`; positions are 1-based. Variables that are not
    /// free in the formula may be left unassigned.
    pub fn eval(&self, w: &[usize], asg: Assignment) -> Result<bool, EvalError> {
        let n = w.len();
        let mask = self.free_mask();
        let mut pos = [0usize; 2];
        for (i, v) in [Var::X, Var::Y].into_iter().enumerate() {
            if mask & v.bit() != 0 {
                let p = asg.get(v).ok_or(EvalError::Unbound(v))?;
                if p == 0 || p > n {
                    return Err(EvalError::OutOfRange {
                        var: v,
                        pos: p,
                        len: n,
                    });
                }
                pos[i] = p - 1;
            }
        }
        let mut ctx = Ctx {
            word: w,
            counts: Vec::new(),
        };
        let t = ctx.eval(self);
        Ok(t.get(n, pos[0], pos[1]))
    }

    /// Truth of a sentence on `w`.
    pub fn holds(&self, w: &[usize]) -> Result<bool, EvalError> {
        if !self.is_sentence() {
            return Err(EvalError::NotSentence);
        }
        self.eval(w, Assignment::empty())
    }

    /// Truth at every position for a formula whose only free variable is `v`
    /// (or a sentence). Entry `i` is position `i + 1`.
    pub fn eval_positions(&self, w: &[usize], v: Var) -> Result<Vec<bool>, EvalError> {
        let mask = self.free_mask();
        if mask & !v.bit() != 0 {
            return Err(EvalError::Unbound(v.other()));
        }
        let mut ctx = Ctx {
            word: w,
            counts: Vec::new(),
        };
        let t = ctx.eval(self);
        let n = w.len();
        Ok((0..n).map(|p| t.get(n, p, p)).collect())
    }
}

/// All words of length `<= max_len` satisfying the sentence `f`.
pub fn defined_language(
    f: &Fo2,
    alphabet: &Alphabet,
    max_len: usize,
) -> Result<Vec<Word>, EvalError> {
    if !f.is_sentence() {
        return Err(EvalError::NotSentence);
    }
    let mut out = Vec::new();
    for w in alphabet.words(max_len) {
        if f.holds(&w)? {
            out.push(w);
        }
    }
    Ok(out)
}
