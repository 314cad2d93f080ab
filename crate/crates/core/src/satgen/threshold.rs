//! Equisatisfiable reduction from threshold atoms `bet(a,k,x,y)`, `k >= 2`,
//! to plain between atoms.
//!
//! Every letter `a` used with a threshold gets a global counter: at each
//! position it holds the number of `a`s strictly to the left, modulo `2^r`
//! where `2^r > k` for every threshold `k` on `a`, plus a colour that
//! advances red → green → blue each time the counter wraps. Bits and colour
//! are monadic, so they are folded into a product alphabet. Two colour
//! checks tell whether the counter wrapped zero times or once between `x`
//! and `y`; then `bet(a,k,x,y)` is an arithmetic comparison of the two
//! counter values, and any larger number of wraps implies it outright.

use std::collections::BTreeMap;

use crate::alphabet::Alphabet;
use crate::fo2::{Fo2, Var};

use Var::{X, Y};

const COLOUR_TAGS: [char; 3] = ['r', 'g', 'b'];

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ReductionError {
    #[error("the formula has free variables")]
    NotSentence,
    #[error("formula uses letter {0} outside the alphabet")]
    UnknownLetter(usize),
    #[error("product alphabet would have {0} letters")]
    TooLarge(u128),
}

/// Counter attached to one source letter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GlobalCounter {
    pub letter: usize,
    pub width: usize,
}

impl GlobalCounter {
    fn modulus(&self) -> usize {
        1 << self.width
    }

    /// Number of per-position states: value and colour.
    fn states(&self) -> usize {
        3 * self.modulus()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ThReduction {
    pub alphabet: Alphabet,
    pub formula: Fo2,
    pub counters: Vec<GlobalCounter>,
    base_len: usize,
}

/// Letters are `base + base_len * Σ digit_g * stride_g`, with
/// `digit_g = value + 2^r * colour`.
impl ThReduction {
    fn strides(&self) -> Vec<usize> {
        let mut s = Vec::with_capacity(self.counters.len());
        let mut acc = self.base_len;
        for c in &self.counters {
            s.push(acc);
            acc *= c.states();
        }
        s
    }

    fn decode(&self, letter: usize) -> (usize, Vec<(usize, usize)>) {
        let base = letter % self.base_len;
        let mut rest = letter / self.base_len;
        let digits = self
            .counters
            .iter()
            .map(|c| {
                let d = rest % c.states();
                rest /= c.states();
                (d % c.modulus(), d / c.modulus())
            })
            .collect();
        (base, digits)
    }

    fn letters_where(&self, pred: impl Fn(usize, &[(usize, usize)]) -> bool) -> Vec<usize> {
        (0..self.alphabet.len())
            .filter(|&l| {
                let (b, d) = self.decode(l);
                pred(b, &d)
            })
            .collect()
    }

    /// Drops the counter components.
    pub fn project(&self, w: &[usize]) -> Vec<usize> {
        w.iter().map(|&l| l % self.base_len).collect()
    }

    /// The unique extension of a source word with correct counters.
    pub fn lift(&self, w: &[usize]) -> Vec<usize> {
        let strides = self.strides();
        let mut seen = vec![0usize; self.counters.len()];
        w.iter()
            .map(|&b| {
                let mut letter = b;
                for (g, c) in self.counters.iter().enumerate() {
                    let value = seen[g] % c.modulus();
                    let colour = (seen[g] / c.modulus()) % 3;
                    letter += strides[g] * (value + c.modulus() * colour);
                    if b == c.letter {
                        seen[g] += 1;
                    }
                }
                letter
            })
            .collect()
    }
}

fn and2(a: Fo2, b: Fo2) -> Fo2 {
    match (a, b) {
        (Fo2::False, _) | (_, Fo2::False) => Fo2::False,
        (Fo2::True, x) | (x, Fo2::True) => x,
        (x, y) => Fo2::and([x, y]),
    }
}

fn or2(a: Fo2, b: Fo2) -> Fo2 {
    match (a, b) {
        (Fo2::True, _) | (_, Fo2::True) => Fo2::True,
        (Fo2::False, x) | (x, Fo2::False) => x,
        (x, y) => Fo2::or([x, y]),
    }
}

fn not1(a: Fo2) -> Fo2 {
    match a {
        Fo2::True => Fo2::False,
        Fo2::False => Fo2::True,
        Fo2::Not(x) => *x,
        x => Fo2::not(x),
    }
}

fn xor2(a: Fo2, b: Fo2) -> Fo2 {
    match (a, b) {
        (Fo2::False, x) | (x, Fo2::False) => x,
        (Fo2::True, x) | (x, Fo2::True) => not1(x),
        (x, y) => Fo2::not(Fo2::iff(x, y)),
    }
}

fn iff2(a: Fo2, b: Fo2) -> Fo2 {
    not1(xor2(a, b))
}

/// Bits of `x + c` (least significant first), one longer than `x`; the
/// sum must fit.
fn add_const(x: &[Fo2], c: u64) -> Vec<Fo2> {
    let mut out = Vec::with_capacity(x.len() + 1);
    let mut carry = Fo2::False;
    for i in 0..=x.len() {
        let xi = x.get(i).cloned().unwrap_or(Fo2::False);
        let ci = if (c >> i) & 1 == 1 { Fo2::True } else { Fo2::False };
        out.push(xor2(xor2(xi.clone(), ci.clone()), carry.clone()));
        let both = and2(xi.clone(), ci.clone());
        let either = or2(xi, ci);
        carry = or2(both, and2(either, carry));
    }
    out
}

/// `lhs >= rhs` as unsigned numbers of equal length.
fn geq(lhs: &[Fo2], rhs: &[Fo2]) -> Fo2 {
    let mut acc = Fo2::True;
    for (l, r) in lhs.iter().zip(rhs) {
        // moving towards the most significant bit
        let greater = and2(l.clone(), not1(r.clone()));
        acc = or2(greater, and2(iff2(l.clone(), r.clone()), acc));
    }
    acc
}

struct Ctx<'a> {
    red: &'a ThReduction,
    by_letter: BTreeMap<usize, usize>,
}

impl Ctx<'_> {
    fn base(&self, a: usize, v: Var) -> Fo2 {
        Fo2::letter_in(&self.red.letters_where(|b, _| b == a), v)
    }

    fn bit(&self, g: usize, i: usize, v: Var) -> Fo2 {
        Fo2::letter_in(&self.red.letters_where(|_, d| (d[g].0 >> i) & 1 == 1), v)
    }

    fn bits(&self, g: usize, v: Var) -> Vec<Fo2> {
        (0..self.red.counters[g].width).map(|i| self.bit(g, i, v)).collect()
    }

    fn colour(&self, g: usize, c: usize, v: Var) -> Fo2 {
        Fo2::letter_in(&self.red.letters_where(|_, d| d[g].1 == c), v)
    }

    fn colour_between(&self, g: usize, c: usize, u: Var, v: Var) -> Fo2 {
        Fo2::or(
            self.red
                .letters_where(|_, d| d[g].1 == c)
                .into_iter()
                .map(|l| Fo2::bet(l, 1, u, v)),
        )
    }

    fn value_is(&self, g: usize, v: Var, value: usize) -> Fo2 {
        Fo2::and(
            self.bits(g, v)
                .into_iter()
                .enumerate()
                .map(|(i, b)| if (value >> i) & 1 == 1 { b } else { not1(b) }),
        )
    }

    /// Counter bookkeeping for counter `g`.
    fn global(&self, g: usize) -> Fo2 {
        let a = self.red.counters[g].letter;
        let x = self.bits(g, X);
        let y = self.bits(g, Y);
        let inc = add_const(&x, 1);
        let wraps = inc.last().expect("carry bit").clone();
        let same = Fo2::and(x.iter().zip(&y).map(|(p, q)| iff2(p.clone(), q.clone())));
        let stepped = Fo2::and(inc.iter().zip(&y).map(|(p, q)| iff2(p.clone(), q.clone())));
        let colour_to = |shift: usize| {
            Fo2::and((0..3).map(|c| Fo2::implies(self.colour(g, c, X), self.colour(g, (c + shift) % 3, Y))))
        };
        let step = Fo2::forall(
            X,
            Fo2::forall(
                Y,
                Fo2::implies(
                    Fo2::Succ(X, Y),
                    Fo2::and([
                        Fo2::implies(
                            self.base(a, X),
                            Fo2::and([
                                stepped,
                                Fo2::implies(wraps.clone(), colour_to(1)),
                                Fo2::implies(not1(wraps), colour_to(0)),
                            ]),
                        ),
                        Fo2::implies(not1(self.base(a, X)), Fo2::and([same, colour_to(0)])),
                    ]),
                ),
            ),
        );
        let first = Fo2::not(Fo2::exists(Y, Fo2::Less(Y, X)));
        let init = Fo2::forall(
            X,
            Fo2::implies(first, Fo2::and([self.value_is(g, X, 0), self.colour(g, 0, X)])),
        );
        Fo2::and([init, step])
    }

    /// `bet(a,k,u,v)` for a counted letter with `2^r > k`.
    fn threshold(&self, g: usize, k: u64, u: Var, v: Var) -> Fo2 {
        let a = self.red.counters[g].letter;
        let cu = self.bits(g, u);
        let cv = self.bits(g, v);
        let wrapped = |shift: usize| {
            Fo2::or((0..3).map(|c| {
                Fo2::and([
                    self.colour(g, c, u),
                    self.colour(g, (c + shift) % 3, v),
                    Fo2::not(self.colour_between(g, (c + shift + 1) % 3, u, v)),
                ])
            }))
        };
        // interior count = value(v) + wraps * 2^r - value(u) - [a(u)]
        let compare = |high: bool| {
            let mut lhs = cv.clone();
            lhs.push(if high { Fo2::True } else { Fo2::False });
            Fo2::or([false, true].map(|at_u| {
                let rhs = add_const(&cu, k + u64::from(at_u));
                let here = if at_u { self.base(a, u) } else { not1(self.base(a, u)) };
                and2(here, geq(&lhs, &rhs))
            }))
        };
        let zero = wrapped(0);
        let one = wrapped(1);
        Fo2::and([
            Fo2::Less(u, v),
            Fo2::or([
                Fo2::and([zero.clone(), compare(false)]),
                Fo2::and([one.clone(), compare(true)]),
                Fo2::and([Fo2::not(zero), Fo2::not(one)]),
            ]),
        ])
    }

    fn rewrite(&self, f: &Fo2) -> Fo2 {
        match f {
            Fo2::Letter(a, v) => self.base(*a, *v),
            Fo2::Between {
                letter,
                at_least,
                from,
                to,
            } => {
                if from == to {
                    Fo2::False
                } else if *at_least <= 1 {
                    Fo2::or(
                        self.red
                            .letters_where(|b, _| b == *letter)
                            .into_iter()
                            .map(|l| Fo2::bet(l, *at_least, *from, *to)),
                    )
                } else {
                    self.threshold(self.by_letter[letter], *at_least, *from, *to)
                }
            }
            Fo2::Not(a) => Fo2::not(self.rewrite(a)),
            Fo2::And(v) => Fo2::And(v.iter().map(|c| self.rewrite(c)).collect()),
            Fo2::Or(v) => Fo2::Or(v.iter().map(|c| self.rewrite(c)).collect()),
            Fo2::Implies(a, b) => Fo2::implies(self.rewrite(a), self.rewrite(b)),
            Fo2::Iff(a, b) => Fo2::iff(self.rewrite(a), self.rewrite(b)),
            Fo2::Exists(v, b) => Fo2::exists(*v, self.rewrite(b)),
            Fo2::Forall(v, b) => Fo2::forall(*v, self.rewrite(b)),
            leaf => leaf.clone(),
        }
    }
}

fn collect_thresholds(f: &Fo2, out: &mut BTreeMap<usize, u64>) {
    if let Fo2::Between {
        letter, at_least, ..
    } = f
    {
        if *at_least >= 2 {
            let e = out.entry(*letter).or_insert(0);
            *e = (*e).max(*at_least);
        }
    }
    for c in f.children() {
        collect_thresholds(c, out);
    }
}

/// Replaces every threshold atom by plain between atoms over a product
/// alphabet. The result is satisfiable iff `f` is; models correspond
/// through [`ThReduction::lift`] and [`ThReduction::project`].
pub fn reduce_th_to_bet(f: &Fo2, alphabet: &Alphabet) -> Result<ThReduction, ReductionError> {
    if !f.is_sentence() {
        return Err(ReductionError::NotSentence);
    }
    if let Some(l) = f.max_letter().filter(|&l| l >= alphabet.len()) {
        return Err(ReductionError::UnknownLetter(l));
    }
    let mut thresholds = BTreeMap::new();
    collect_thresholds(f, &mut thresholds);
    let counters: Vec<GlobalCounter> = thresholds
        .iter()
        .map(|(&letter, &k)| GlobalCounter {
            letter,
            // smallest r with 2^r > k
            width: (64 - k.leading_zeros()) as usize,
        })
        .collect();
    let size = counters
        .iter()
        .fold(alphabet.len() as u128, |acc, c| acc.saturating_mul(c.states() as u128));
    if size > 1 << 16 {
        return Err(ReductionError::TooLarge(size));
    }
    let mut red = ThReduction {
        alphabet: alphabet.clone(),
        formula: Fo2::True,
        counters,
        base_len: alphabet.len(),
    };
    let names: Vec<String> = (0..size as usize)
        .map(|l| {
            let (b, digits) = red.decode(l);
            let mut name = alphabet.name(b).to_string();
            for ((value, colour), c) in digits.iter().zip(&red.counters) {
                name.push('.');
                name.extend((0..c.width).map(|i| if (value >> i) & 1 == 1 { '1' } else { '0' }));
                name.push(COLOUR_TAGS[*colour]);
            }
            name
        })
        .collect();
    red.alphabet = Alphabet::new(names).expect("product names are distinct");
    let by_letter = red
        .counters
        .iter()
        .enumerate()
        .map(|(g, c)| (c.letter, g))
        .collect();
    let ctx = Ctx {
        red: &red,
        by_letter,
    };
    let body = ctx.rewrite(f);
    let formula = if red.counters.is_empty() {
        body
    } else {
        Fo2::and((0..red.counters.len()).map(|g| ctx.global(g)).chain([body]))
    };
    red.formula = formula;
    Ok(red)
}
