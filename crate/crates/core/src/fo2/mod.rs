//! Two-variable first-order logic over words with order, successor and
//! threshold "between" atoms.
//!
//! `bet(a,k,x,y)` holds when `x < y` and at least `k` positions strictly
//! between `x` and `y` carry the letter `a`. With `k = 1` throughout this is
//! the plain between predicate; larger `k` gives the threshold logic.

mod counter;
mod eval;
mod parse;
mod print;

use std::fmt;

use crate::alphabet::Alphabet;

pub use counter::{CounterError, CounterSyntax};
pub use eval::{defined_language, Assignment, EvalError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    X,
    Y,
}

impl Var {
    pub fn other(self) -> Var {
        match self {
            Var::X => Var::Y,
            Var::Y => Var::X,
        }
    }

    pub(crate) fn bit(self) -> u8 {
        match self {
            Var::X => 1,
            Var::Y => 2,
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Var::X => "x",
            Var::Y => "y",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Fo2 {
    True,
    False,
    Letter(usize, Var),
    Between {
        letter: usize,
        at_least: u64,
        from: Var,
        to: Var,
    },
    Less(Var, Var),
    LessEq(Var, Var),
    Equal(Var, Var),
    Succ(Var, Var),
    Not(Box<Fo2>),
    And(Vec<Fo2>),
    Or(Vec<Fo2>),
    Implies(Box<Fo2>, Box<Fo2>),
    Iff(Box<Fo2>, Box<Fo2>),
    Exists(Var, Box<Fo2>),
    Forall(Var, Box<Fo2>),
}

impl Fo2 {
    pub fn letter(a: usize, v: Var) -> Fo2 {
        Fo2::Letter(a, v)
    }

    pub fn bet(letter: usize, at_least: u64, from: Var, to: Var) -> Fo2 {
        Fo2::Between {
            letter,
            at_least,
            from,
            to,
        }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Fo2) -> Fo2 {
        Fo2::Not(Box::new(f))
    }

    /// Conjunction; collapses the empty and singleton cases.
    pub fn and(items: impl IntoIterator<Item = Fo2>) -> Fo2 {
        let mut v: Vec<Fo2> = items.into_iter().collect();
        match v.len() {
            0 => Fo2::True,
            1 => v.pop().unwrap(),
            _ => Fo2::And(v),
        }
    }

    /// Disjunction; collapses the empty and singleton cases.
    pub fn or(items: impl IntoIterator<Item = Fo2>) -> Fo2 {
        let mut v: Vec<Fo2> = items.into_iter().collect();
        match v.len() {
            0 => Fo2::False,
            1 => v.pop().unwrap(),
            _ => Fo2::Or(v),
        }
    }

    pub fn implies(a: Fo2, b: Fo2) -> Fo2 {
        Fo2::Implies(Box::new(a), Box::new(b))
    }

    pub fn iff(a: Fo2, b: Fo2) -> Fo2 {
        Fo2::Iff(Box::new(a), Box::new(b))
    }

    pub fn exists(v: Var, body: Fo2) -> Fo2 {
        Fo2::Exists(v, Box::new(body))
    }

    pub fn forall(v: Var, body: Fo2) -> Fo2 {
        Fo2::Forall(v, Box::new(body))
    }

    /// Some letter of `letters` at `v`.
    pub fn letter_in(letters: &[usize], v: Var) -> Fo2 {
        Fo2::or(letters.iter().map(|&a| Fo2::Letter(a, v)))
    }

    /// Successor spelled with between atoms: `u < v` and nothing in between.
    pub fn succ_definable(u: Var, v: Var, alphabet_len: usize) -> Fo2 {
        Fo2::and(
            std::iter::once(Fo2::Less(u, v))
                .chain((0..alphabet_len).map(|a| Fo2::not(Fo2::bet(a, 1, u, v)))),
        )
    }

    pub fn children(&self) -> Vec<&Fo2> {
        match self {
            Fo2::Not(a) | Fo2::Exists(_, a) | Fo2::Forall(_, a) => vec![a],
            Fo2::And(v) | Fo2::Or(v) => v.iter().collect(),
            Fo2::Implies(a, b) | Fo2::Iff(a, b) => vec![a, b],
            _ => Vec::new(),
        }
    }

    /// Bitmask of free variables (`1` for x, `2` for y).
    pub fn free_mask(&self) -> u8 {
        match self {
            Fo2::True | Fo2::False => 0,
            Fo2::Letter(_, v) => v.bit(),
            Fo2::Between { from, to, .. } => from.bit() | to.bit(),
            Fo2::Less(u, v) | Fo2::LessEq(u, v) | Fo2::Equal(u, v) | Fo2::Succ(u, v) => {
                u.bit() | v.bit()
            }
            Fo2::Exists(v, b) | Fo2::Forall(v, b) => b.free_mask() & !v.bit(),
            _ => self.children().iter().fold(0, |m, c| m | c.free_mask()),
        }
    }

    pub fn free_vars(&self) -> Vec<Var> {
        let m = self.free_mask();
        [Var::X, Var::Y]
            .into_iter()
            .filter(|v| m & v.bit() != 0)
            .collect()
    }

    pub fn is_sentence(&self) -> bool {
        self.free_mask() == 0
    }

    pub fn quantifier_depth(&self) -> usize {
        match self {
            Fo2::Exists(_, b) | Fo2::Forall(_, b) => 1 + b.quantifier_depth(),
            _ => self
                .children()
                .iter()
                .map(|c| c.quantifier_depth())
                .max()
                .unwrap_or(0),
        }
    }

    /// Number of AST nodes.
    pub fn size(&self) -> usize {
        1 + self.children().iter().map(|c| c.size()).sum::<usize>()
    }

    /// Largest threshold among between atoms (0 when there are none).
    pub fn max_threshold(&self) -> u64 {
        match self {
            Fo2::Between { at_least, .. } => *at_least,
            _ => self
                .children()
                .iter()
                .map(|c| c.max_threshold())
                .max()
                .unwrap_or(0),
        }
    }

    pub fn max_letter(&self) -> Option<usize> {
        match self {
            Fo2::Letter(a, _) | Fo2::Between { letter: a, .. } => Some(*a),
            _ => self.children().iter().filter_map(|c| c.max_letter()).max(),
        }
    }

    /// Applies `f` bottom-up to every node.
    pub fn map(&self, f: &mut impl FnMut(Fo2) -> Fo2) -> Fo2 {
        let rebuilt = match self {
            Fo2::Not(a) => Fo2::Not(Box::new(a.map(f))),
            Fo2::And(v) => Fo2::And(v.iter().map(|c| c.map(f)).collect()),
            Fo2::Or(v) => Fo2::Or(v.iter().map(|c| c.map(f)).collect()),
            Fo2::Implies(a, b) => Fo2::Implies(Box::new(a.map(f)), Box::new(b.map(f))),
            Fo2::Iff(a, b) => Fo2::Iff(Box::new(a.map(f)), Box::new(b.map(f))),
            Fo2::Exists(v, b) => Fo2::Exists(*v, Box::new(b.map(f))),
            Fo2::Forall(v, b) => Fo2::Forall(*v, Box::new(b.map(f))),
            leaf => leaf.clone(),
        };
        f(rebuilt)
    }

    /// Renames x to y and y to x everywhere.
    pub fn swap_vars(&self) -> Fo2 {
        let s = Var::other;
        self.map(&mut |node| match node {
            Fo2::Letter(a, v) => Fo2::Letter(a, s(v)),
            Fo2::Between {
                letter,
                at_least,
                from,
                to,
            } => Fo2::bet(letter, at_least, s(from), s(to)),
            Fo2::Less(u, v) => Fo2::Less(s(u), s(v)),
            Fo2::LessEq(u, v) => Fo2::LessEq(s(u), s(v)),
            Fo2::Equal(u, v) => Fo2::Equal(s(u), s(v)),
            Fo2::Succ(u, v) => Fo2::Succ(s(u), s(v)),
            Fo2::Exists(v, b) => Fo2::Exists(s(v), b),
            Fo2::Forall(v, b) => Fo2::Forall(s(v), b),
            other => other,
        })
    }

    /// Replaces every `succ(u,v)` by its between-definable form.
    pub fn desugar_succ(&self, alphabet_len: usize) -> Fo2 {
        self.map(&mut |node| match node {
            Fo2::Succ(u, v) => Fo2::succ_definable(u, v, alphabet_len),
            other => other,
        })
    }

    /// Renumbers letters through `f`.
    pub fn map_letters(&self, f: &impl Fn(usize) -> usize) -> Fo2 {
        self.map(&mut |node| match node {
            Fo2::Letter(a, v) => Fo2::Letter(f(a), v),
            Fo2::Between {
                letter,
                at_least,
                from,
                to,
            } => Fo2::bet(f(letter), at_least, from, to),
            other => other,
        })
    }

    pub fn parse(text: &str, alphabet: &Alphabet) -> Result<Fo2, crate::ParseError> {
        parse::parse(text, alphabet)
    }

    /// Parses with an alphabet inferred from the letters mentioned.
    pub fn parse_infer(text: &str) -> Result<(Fo2, Alphabet), crate::ParseError> {
        parse::parse_infer(text)
    }

    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> print::Fo2Display<'a> {
        print::Fo2Display {
            formula: self,
            alphabet,
        }
    }

    pub fn to_text(&self, alphabet: &Alphabet) -> String {
        self.display(alphabet).to_string()
    }
}

/// A sentence defining `(ab)*`: the first letter is `a`, the last letter is
/// `b`, and no two adjacent positions carry the same letter. Adjacency uses
/// the between-definable successor. Holds on the empty word.
pub fn ab_star_sentence(a: usize, b: usize, alphabet_len: usize) -> Fo2 {
    use Var::{X, Y};
    let first = Fo2::forall(
        X,
        Fo2::implies(Fo2::forall(Y, Fo2::LessEq(X, Y)), Fo2::Letter(a, X)),
    );
    let last = Fo2::forall(
        X,
        Fo2::implies(Fo2::forall(Y, Fo2::LessEq(Y, X)), Fo2::Letter(b, X)),
    );
    let no_repeat = |c: usize| {
        Fo2::not(Fo2::exists(
            X,
            Fo2::exists(
                Y,
                Fo2::and([
                    Fo2::succ_definable(X, Y, alphabet_len),
                    Fo2::Letter(c, X),
                    Fo2::Letter(c, Y),
                ]),
            ),
        ))
    };
    Fo2::and([first, last, no_repeat(a), no_repeat(b)])
}

/// `∃x∃y (x<y ∧ (a,k)(x,y) ∧ ¬(b,1)(x,y))`: two positions with at least
/// `k` letters `a` and no `b` strictly between them.
pub fn stair_sentence(a: usize, b: usize, k: u64) -> Fo2 {
    use Var::{X, Y};
    Fo2::exists(
        X,
        Fo2::exists(
            Y,
            Fo2::and([
                Fo2::Less(X, Y),
                Fo2::bet(a, k, X, Y),
                Fo2::not(Fo2::bet(b, 1, X, Y)),
            ]),
        ),
    )
}
