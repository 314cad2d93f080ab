//! Temporal logic on marked words with guarded future and past operators.
//!
//! `F[g] φ` holds at `i` when some `j > i` satisfies `φ` and the interval
//! strictly between `i` and `j` satisfies the guard `g`, a boolean
//! combination of threshold constraints `#B ~ c`. `P[g] φ` is the mirror
//! image. Plain `F`, `P` and `X` are sugar for the guards `#{}=0` and
//! `#A=0`.

mod eval;
mod parse;
mod print;
mod translate;

use std::collections::BTreeSet;
use std::fmt;

use crate::alphabet::Alphabet;

pub use eval::TlError;
pub use translate::{btlinv_to_utlinv, tl_to_fo2, tl_to_fo2_sentence, TranslateError, MAX_REQUIRED_LETTERS};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Relation {
    Lt,
    Le,
    Gt,
    Ge,
    Eq,
}

impl Relation {
    pub fn holds(self, count: u64, bound: u64) -> bool {
        match self {
            Relation::Lt => count < bound,
            Relation::Le => count <= bound,
            Relation::Gt => count > bound,
            Relation::Ge => count >= bound,
            Relation::Eq => count == bound,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Lt => "<",
            Relation::Le => "<=",
            Relation::Gt => ">",
            Relation::Ge => ">=",
            Relation::Eq => "=",
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// `#B ~ c`: the number of positions strictly inside the interval whose
/// letter is in `B`, compared with `c`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ThresholdConstraint {
    pub letters: BTreeSet<usize>,
    pub relation: Relation,
    pub bound: u64,
}

impl ThresholdConstraint {
    pub fn new(letters: impl IntoIterator<Item = usize>, relation: Relation, bound: u64) -> Self {
        ThresholdConstraint {
            letters: letters.into_iter().collect(),
            relation,
            bound,
        }
    }

    /// `#B = 0`.
    pub fn zero(letters: impl IntoIterator<Item = usize>) -> Self {
        ThresholdConstraint::new(letters, Relation::Eq, 0)
    }

    pub fn holds(&self, count: u64) -> bool {
        self.relation.holds(count, self.bound)
    }

    /// Equivalent guard for the negation.
    pub fn negate(&self) -> Guard {
        let with = |relation, bound| {
            Guard::Atom(ThresholdConstraint {
                letters: self.letters.clone(),
                relation,
                bound,
            })
        };
        let c = self.bound;
        match self.relation {
            Relation::Lt => with(Relation::Ge, c),
            Relation::Le => with(Relation::Gt, c),
            Relation::Gt => with(Relation::Le, c),
            Relation::Ge => with(Relation::Lt, c),
            Relation::Eq => Guard::Or(vec![with(Relation::Lt, c), with(Relation::Gt, c)]),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Guard {
    Atom(ThresholdConstraint),
    Not(Box<Guard>),
    And(Vec<Guard>),
    Or(Vec<Guard>),
}

impl Guard {
    /// The guard `#{}=0`, true on every interval.
    pub fn always() -> Guard {
        Guard::Atom(ThresholdConstraint::zero([]))
    }

    /// `#A=0`, true exactly on intervals with empty interior.
    pub fn adjacent(alphabet_len: usize) -> Guard {
        Guard::Atom(ThresholdConstraint::zero(0..alphabet_len))
    }

    /// Disjunctive normal form over atomic constraints, with negations
    /// pushed into the constraints.
    pub fn dnf(&self) -> Vec<Vec<ThresholdConstraint>> {
        fn go(g: &Guard, negated: bool) -> Vec<Vec<ThresholdConstraint>> {
            match (g, negated) {
                (Guard::Atom(c), false) => vec![vec![c.clone()]],
                (Guard::Atom(c), true) => go(&c.negate(), false),
                (Guard::Not(inner), n) => go(inner, !n),
                (Guard::And(items), false) | (Guard::Or(items), true) => {
                    let mut acc: Vec<Vec<ThresholdConstraint>> = vec![Vec::new()];
                    for item in items {
                        let d = go(item, negated);
                        acc = acc
                            .iter()
                            .flat_map(|left| {
                                d.iter().map(move |right| {
                                    let mut t = left.clone();
                                    t.extend(right.iter().cloned());
                                    t
                                })
                            })
                            .collect();
                    }
                    acc
                }
                (Guard::Or(items), false) | (Guard::And(items), true) => {
                    items.iter().flat_map(|i| go(i, negated)).collect()
                }
            }
        }
        go(self, false)
    }

    pub fn from_dnf(terms: &[Vec<ThresholdConstraint>]) -> Guard {
        Guard::Or(
            terms
                .iter()
                .map(|t| Guard::And(t.iter().cloned().map(Guard::Atom).collect()))
                .collect(),
        )
    }

    pub fn atoms(&self) -> Vec<&ThresholdConstraint> {
        match self {
            Guard::Atom(c) => vec![c],
            Guard::Not(g) => g.atoms(),
            Guard::And(v) | Guard::Or(v) => v.iter().flat_map(|g| g.atoms()).collect(),
        }
    }

    /// Evaluates with `count(B)` giving the interior count of each set.
    pub fn eval_with(&self, count: &mut impl FnMut(&BTreeSet<usize>) -> u64) -> bool {
        match self {
            Guard::Atom(c) => c.holds(count(&c.letters)),
            Guard::Not(g) => !g.eval_with(count),
            Guard::And(v) => v.iter().all(|g| g.eval_with(count)),
            Guard::Or(v) => v.iter().any(|g| g.eval_with(count)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Tl {
    True,
    False,
    Letter(usize),
    Not(Box<Tl>),
    And(Vec<Tl>),
    Or(Vec<Tl>),
    Future(Guard, Box<Tl>),
    Past(Guard, Box<Tl>),
}

impl Tl {
    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Tl) -> Tl {
        Tl::Not(Box::new(f))
    }

    pub fn and(items: impl IntoIterator<Item = Tl>) -> Tl {
        let mut v: Vec<Tl> = items.into_iter().collect();
        match v.len() {
            0 => Tl::True,
            1 => v.pop().unwrap(),
            _ => Tl::And(v),
        }
    }

    pub fn or(items: impl IntoIterator<Item = Tl>) -> Tl {
        let mut v: Vec<Tl> = items.into_iter().collect();
        match v.len() {
            0 => Tl::False,
            1 => v.pop().unwrap(),
            _ => Tl::Or(v),
        }
    }

    pub fn future(g: Guard, f: Tl) -> Tl {
        Tl::Future(g, Box::new(f))
    }

    pub fn past(g: Guard, f: Tl) -> Tl {
        Tl::Past(g, Box::new(f))
    }

    /// Unguarded eventually: `F[#{}=0]`.
    pub fn eventually(f: Tl) -> Tl {
        Tl::future(Guard::always(), f)
    }

    /// Next position: `F[#A=0]`.
    pub fn next(f: Tl, alphabet_len: usize) -> Tl {
        Tl::future(Guard::adjacent(alphabet_len), f)
    }

    pub fn children(&self) -> Vec<&Tl> {
        match self {
            Tl::Not(a) | Tl::Future(_, a) | Tl::Past(_, a) => vec![a],
            Tl::And(v) | Tl::Or(v) => v.iter().collect(),
            _ => Vec::new(),
        }
    }

    /// Nesting depth of temporal operators.
    pub fn modal_depth(&self) -> usize {
        let inner = self.children().iter().map(|c| c.modal_depth()).max().unwrap_or(0);
        match self {
            Tl::Future(..) | Tl::Past(..) => inner + 1,
            _ => inner,
        }
    }

    pub fn size(&self) -> usize {
        1 + self.children().iter().map(|c| c.size()).sum::<usize>()
    }

    pub fn guards(&self) -> Vec<&Guard> {
        let mut out = Vec::new();
        if let Tl::Future(g, _) | Tl::Past(g, _) = self {
            out.push(g);
        }
        for c in self.children() {
            out.extend(c.guards());
        }
        out
    }

    pub fn parse(text: &str, alphabet: &Alphabet) -> Result<Tl, crate::ParseError> {
        parse::parse(text, alphabet)
    }

    pub fn parse_infer(text: &str) -> Result<(Tl, Alphabet), crate::ParseError> {
        parse::parse_infer(text)
    }

    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> print::TlDisplay<'a> {
        print::TlDisplay {
            formula: self,
            alphabet,
        }
    }

    pub fn to_text(&self, alphabet: &Alphabet) -> String {
        self.display(alphabet).to_string()
    }
}

/// The `(ab)^+` formula: starts with `ab`, no `aa` or `bb` later, and the
/// last letter is `b`.
pub fn ab_plus_formula(a: usize, b: usize, alphabet_len: usize) -> Tl {
    let x = |f| Tl::next(f, alphabet_len);
    let no_double = |c: usize| {
        Tl::not(Tl::eventually(Tl::and([Tl::Letter(c), x(Tl::Letter(c))])))
    };
    Tl::and([
        Tl::Letter(a),
        x(Tl::Letter(b)),
        no_double(a),
        no_double(b),
        Tl::eventually(Tl::and([
            Tl::Letter(b),
            Tl::not(x(Tl::or([Tl::Letter(a), Tl::Letter(b)]))),
        ])),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(letters: &[usize], r: Relation, b: u64) -> ThresholdConstraint {
        ThresholdConstraint::new(letters.iter().copied(), r, b)
    }

    #[test]
    fn negation_pushing() {
        let g = Guard::Not(Box::new(Guard::And(vec![
            Guard::Atom(c(&[0], Relation::Eq, 0)),
            Guard::Atom(c(&[1], Relation::Ge, 2)),
        ])));
        let d = g.dnf();
        assert_eq!(
            d,
            vec![
                vec![c(&[0], Relation::Lt, 0)],
                vec![c(&[0], Relation::Gt, 0)],
                vec![c(&[1], Relation::Lt, 2)],
            ]
        );
    }

    #[test]
    fn dnf_distributes() {
        let g = Guard::And(vec![
            Guard::Or(vec![
                Guard::Atom(c(&[0], Relation::Eq, 0)),
                Guard::Atom(c(&[1], Relation::Eq, 0)),
            ]),
            Guard::Atom(c(&[2], Relation::Gt, 0)),
        ]);
        assert_eq!(g.dnf().len(), 2);
        assert!(g.dnf().iter().all(|t| t.len() == 2));
    }

    #[test]
    fn depth() {
        let f = ab_plus_formula(0, 1, 2);
        assert_eq!(f.modal_depth(), 2);
    }
}
