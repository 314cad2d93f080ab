//! Translations out of the guarded temporal logic: boolean invariant guards
//! into single invariant guards, and temporal formulas into two-variable
//! first-order formulas with threshold atoms.

use std::collections::BTreeSet;

use super::{Guard, Relation, ThresholdConstraint, Tl};
use crate::fo2::{Fo2, Var};

/// Upper bound on the letters a single guard term may require to occur.
pub const MAX_REQUIRED_LETTERS: usize = 6;

/// Upper bound on the disjuncts produced for one multi-letter threshold.
const MAX_COMPOSITIONS: u128 = 4096;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TranslateError {
    #[error("guard constraint {0} is not an invariant constraint (#B=0 or #B>0)")]
    NonInvariant(String),
    #[error("a guard term requires {0} distinct letters; at most {MAX_REQUIRED_LETTERS} are supported")]
    TooManyRequired(usize),
    #[error("threshold #B>={bound} over {letters} letters expands to too many disjuncts")]
    TooLarge { letters: usize, bound: u64 },
}

fn describe(c: &ThresholdConstraint) -> String {
    let letters: Vec<String> = c.letters.iter().map(|l| l.to_string()).collect();
    format!("#{{{}}}{}{}", letters.join(","), c.relation, c.bound)
}

enum Norm {
    True,
    False,
    Zero(BTreeSet<usize>),
    Positive(BTreeSet<usize>),
}

fn normalize(c: &ThresholdConstraint) -> Result<Norm, TranslateError> {
    if c.letters.is_empty() {
        return Ok(if c.holds(0) { Norm::True } else { Norm::False });
    }
    use Relation::*;
    match (c.relation, c.bound) {
        (Eq, 0) | (Le, 0) | (Lt, 1) => Ok(Norm::Zero(c.letters.clone())),
        (Gt, 0) | (Ge, 1) => Ok(Norm::Positive(c.letters.clone())),
        (Ge, 0) => Ok(Norm::True),
        (Lt, 0) => Ok(Norm::False),
        _ => Err(TranslateError::NonInvariant(describe(c))),
    }
}

/// A conjunction: no letter of `zero` occurs; every letter of `required`
/// occurs.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct Term {
    zero: BTreeSet<usize>,
    required: BTreeSet<usize>,
}

fn terms_of(g: &Guard) -> Result<Vec<Term>, TranslateError> {
    let mut out: BTreeSet<Term> = BTreeSet::new();
    for conj in g.dnf() {
        // Each positive constraint on a set picks one witness letter.
        let mut partial = vec![Term {
            zero: BTreeSet::new(),
            required: BTreeSet::new(),
        }];
        for c in &conj {
            match normalize(c)? {
                Norm::True => {}
                Norm::False => partial.clear(),
                Norm::Zero(b) => partial.iter_mut().for_each(|t| t.zero.extend(&b)),
                Norm::Positive(b) => {
                    partial = partial
                        .iter()
                        .flat_map(|t| {
                            b.iter().map(move |&l| {
                                let mut t = t.clone();
                                t.required.insert(l);
                                t
                            })
                        })
                        .collect();
                }
            }
        }
        for t in partial {
            if t.zero.is_disjoint(&t.required) {
                if t.required.len() > MAX_REQUIRED_LETTERS {
                    return Err(TranslateError::TooManyRequired(t.required.len()));
                }
                out.insert(t);
            }
        }
    }
    Ok(out.into_iter().collect())
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for (i, &first) in items.iter().enumerate() {
        let mut rest = items.to_vec();
        rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, first);
            out.push(p);
        }
    }
    out
}

fn single_invariant(g: &Guard) -> bool {
    matches!(g, Guard::Atom(c) if c.relation == Relation::Eq && c.bound == 0)
}

/// Rewrites every guard that is a boolean combination of invariant
/// constraints into nested operators guarded by single constraints `#B=0`.
///
/// For a conjunction forbidding `Z` and requiring the letters `P`, one
/// disjunct is produced per order in which the first occurrences of `P`
/// appear, each step forbidding the letters not yet seen.
pub fn btlinv_to_utlinv(f: &Tl) -> Result<Tl, TranslateError> {
    Ok(match f {
        Tl::True | Tl::False | Tl::Letter(_) => f.clone(),
        Tl::Not(x) => Tl::not(btlinv_to_utlinv(x)?),
        Tl::And(v) => Tl::And(v.iter().map(btlinv_to_utlinv).collect::<Result<_, _>>()?),
        Tl::Or(v) => Tl::Or(v.iter().map(btlinv_to_utlinv).collect::<Result<_, _>>()?),
        Tl::Future(g, x) | Tl::Past(g, x) => {
            let future = matches!(f, Tl::Future(..));
            let body = btlinv_to_utlinv(x)?;
            let op = |g: Guard, b: Tl| if future { Tl::future(g, b) } else { Tl::past(g, b) };
            if single_invariant(g) {
                return Ok(op(g.clone(), body));
            }
            let mut disjuncts = Vec::new();
            for term in terms_of(g)? {
                let required: Vec<usize> = term.required.iter().copied().collect();
                for order in permutations(&required) {
                    // Innermost step first: only Z is forbidden before the target.
                    let mut acc = op(Guard::Atom(ThresholdConstraint::zero(term.zero.iter().copied())), body.clone());
                    for (i, &p) in order.iter().enumerate().rev() {
                        let forbidden = term.zero.iter().copied().chain(order[i..].iter().copied());
                        acc = op(
                            Guard::Atom(ThresholdConstraint::zero(forbidden)),
                            Tl::and([Tl::Letter(p), acc]),
                        );
                    }
                    disjuncts.push(acc);
                }
            }
            Tl::or(disjuncts)
        }
    })
}

fn fnot(f: Fo2) -> Fo2 {
    match f {
        Fo2::True => Fo2::False,
        Fo2::False => Fo2::True,
        Fo2::Not(inner) => *inner,
        other => Fo2::not(other),
    }
}

fn fand(items: impl IntoIterator<Item = Fo2>) -> Fo2 {
    let mut out = Vec::new();
    for f in items {
        match f {
            Fo2::True => {}
            Fo2::False => return Fo2::False,
            other => out.push(other),
        }
    }
    Fo2::and(out)
}

fn binomial(n: u128, k: u128) -> u128 {
    (0..k).fold(1u128, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// At least `k` letters of `set` strictly between `u < v`.
fn at_least(set: &BTreeSet<usize>, k: u64, u: Var, v: Var) -> Result<Fo2, TranslateError> {
    if k == 0 {
        return Ok(Fo2::True);
    }
    let letters: Vec<usize> = set.iter().copied().collect();
    match letters.len() {
        0 => Ok(Fo2::False),
        1 => Ok(Fo2::bet(letters[0], k, u, v)),
        m => {
            let count = binomial(u128::from(k) + m as u128 - 1, m as u128 - 1);
            if count > MAX_COMPOSITIONS {
                return Err(TranslateError::TooLarge { letters: m, bound: k });
            }
            // One disjunct per way of writing k as a sum over the letters.
            let mut disjuncts = Vec::new();
            let mut parts = vec![0u64; m];
            fn rec(
                i: usize,
                left: u64,
                parts: &mut Vec<u64>,
                letters: &[usize],
                u: Var,
                v: Var,
                out: &mut Vec<Fo2>,
            ) {
                if i + 1 == letters.len() {
                    parts[i] = left;
                    out.push(Fo2::and(
                        letters
                            .iter()
                            .zip(parts.iter())
                            .filter(|(_, &c)| c > 0)
                            .map(|(&l, &c)| Fo2::bet(l, c, u, v)),
                    ));
                    return;
                }
                for c in 0..=left {
                    parts[i] = c;
                    rec(i + 1, left - c, parts, letters, u, v, out);
                }
            }
            rec(0, k, &mut parts, &letters, u, v, &mut disjuncts);
            Ok(Fo2::or(disjuncts))
        }
    }
}

fn constraint_fo2(c: &ThresholdConstraint, u: Var, v: Var) -> Result<Fo2, TranslateError> {
    let b = c.bound;
    let ge = |k: u64| at_least(&c.letters, k, u, v);
    Ok(match c.relation {
        Relation::Ge => ge(b)?,
        Relation::Gt => ge(b + 1)?,
        Relation::Lt => fnot(ge(b)?),
        Relation::Le => fnot(ge(b + 1)?),
        Relation::Eq => fand([ge(b)?, fnot(ge(b + 1)?)]),
    })
}

fn guard_fo2(g: &Guard, u: Var, v: Var) -> Result<Fo2, TranslateError> {
    Ok(match g {
        Guard::Atom(c) => constraint_fo2(c, u, v)?,
        Guard::Not(x) => fnot(guard_fo2(x, u, v)?),
        Guard::And(items) => fand(
            items
                .iter()
                .map(|x| guard_fo2(x, u, v))
                .collect::<Result<Vec<_>, _>>()?,
        ),
        Guard::Or(items) => Fo2::or(
            items
                .iter()
                .map(|x| guard_fo2(x, u, v))
                .collect::<Result<Vec<_>, _>>()?,
        ),
    })
}

fn translate(f: &Tl, v: Var) -> Result<Fo2, TranslateError> {
    Ok(match f {
        Tl::True => Fo2::True,
        Tl::False => Fo2::False,
        Tl::Letter(a) => Fo2::Letter(*a, v),
        Tl::Not(x) => Fo2::not(translate(x, v)?),
        Tl::And(items) => Fo2::And(
            items
                .iter()
                .map(|x| translate(x, v))
                .collect::<Result<_, _>>()?,
        ),
        Tl::Or(items) => Fo2::Or(
            items
                .iter()
                .map(|x| translate(x, v))
                .collect::<Result<_, _>>()?,
        ),
        Tl::Future(g, x) => {
            let w = v.other();
            Fo2::exists(
                w,
                fand([Fo2::Less(v, w), guard_fo2(g, v, w)?, translate(x, w)?]),
            )
        }
        Tl::Past(g, x) => {
            let w = v.other();
            Fo2::exists(
                w,
                fand([Fo2::Less(w, v), guard_fo2(g, w, v)?, translate(x, w)?]),
            )
        }
    })
}

/// Formula with the single free variable `x` that holds at `x = i` exactly
/// when `f` holds at position `i`.
pub fn tl_to_fo2(f: &Tl) -> Result<Fo2, TranslateError> {
    translate(f, Var::X)
}

/// Sentence for the language of `f`: `∃x (∀y x≤y ∧ φ(x))`.
pub fn tl_to_fo2_sentence(f: &Tl) -> Result<Fo2, TranslateError> {
    Ok(Fo2::exists(
        Var::X,
        Fo2::and([
            Fo2::forall(Var::Y, Fo2::LessEq(Var::X, Var::Y)),
            tl_to_fo2(f)?,
        ]),
    ))
}
