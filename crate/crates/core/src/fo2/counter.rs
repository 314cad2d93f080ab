//! Binary counters written into words: a marker position followed by `r`
//! bit positions, least significant bit first. The formulas compare or
//! increment the counters that follow two marker positions.

use super::{Fo2, Var};
use crate::alphabet::Alphabet;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CounterError {
    #[error("counter width must be at least 1")]
    ZeroWidth,
}

/// Which letters play the roles of marker, `0` and `1`, and the width `r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CounterSyntax {
    pub mark: Vec<usize>,
    pub zero: usize,
    pub one: usize,
    pub width: usize,
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

impl CounterSyntax {
    pub fn new(mark: Vec<usize>, zero: usize, one: usize, width: usize) -> Result<Self, CounterError> {
        if width == 0 {
            return Err(CounterError::ZeroWidth);
        }
        Ok(CounterSyntax {
            mark,
            zero,
            one,
            width,
        })
    }

    /// Over the alphabet `{m, 0, 1}` returned by [`CounterSyntax::alphabet`].
    pub fn standard(width: usize) -> Result<Self, CounterError> {
        CounterSyntax::new(vec![0], 1, 2, width)
    }

    pub fn alphabet() -> Alphabet {
        Alphabet::new(["m", "0", "1"]).expect("static alphabet")
    }

    pub fn mark_at(&self, v: Var) -> Fo2 {
        Fo2::letter_in(&self.mark, v)
    }

    /// `suc^i(v) ∈ letters`: the `i`-th position after `v` exists and carries
    /// one of `letters`. Alternates the two variables.
    pub fn suc_is(&self, i: usize, v: Var, letters: &[usize]) -> Fo2 {
        if i == 0 {
            return Fo2::letter_in(letters, v);
        }
        let w = v.other();
        Fo2::exists(
            w,
            Fo2::and([Fo2::Succ(v, w), self.suc_is(i - 1, w, letters)]),
        )
    }

    /// `suc^{|bits|}(v) = b_1 … b_k`: the letters right after `v` spell `bits`.
    pub fn suc_chain(&self, v: Var, bits: &[usize]) -> Fo2 {
        match bits.split_first() {
            None => Fo2::True,
            Some((&b, rest)) => {
                let w = v.other();
                let mut parts = vec![Fo2::Succ(v, w), Fo2::Letter(b, w)];
                if !rest.is_empty() {
                    parts.push(self.suc_chain(w, rest));
                }
                Fo2::exists(w, Fo2::and(parts))
            }
        }
    }

    /// Bit `i` (1-based, least significant first) of the counter after `v`.
    pub fn bit(&self, i: usize, v: Var, value: bool) -> Fo2 {
        self.suc_is(i, v, &[if value { self.one } else { self.zero }])
    }

    fn eq_bit(&self, i: usize, u: Var, v: Var) -> Fo2 {
        Fo2::or([true, false].map(|b| Fo2::and([self.bit(i, u, b), self.bit(i, v, b)])))
    }

    /// The counter after `v` has the given value (mod `2^r`).
    pub fn value_is(&self, v: Var, value: u64) -> Fo2 {
        Fo2::and(
            std::iter::once(self.mark_at(v))
                .chain((1..=self.width).map(|i| self.bit(i, v, (value >> (i - 1)) & 1 == 1))),
        )
    }

    /// The sequence `m b_1 … b_r` starting at `v`.
    pub fn counter_at(&self, v: Var, value: u64) -> Fo2 {
        let bits: Vec<usize> = (0..self.width)
            .map(|i| if (value >> i) & 1 == 1 { self.one } else { self.zero })
            .collect();
        Fo2::and([self.mark_at(v), self.suc_chain(v, &bits)])
    }

    /// Equal counters after `u` and `v`.
    pub fn eq(&self, u: Var, v: Var) -> Fo2 {
        Fo2::and(
            [self.mark_at(u), self.mark_at(v)]
                .into_iter()
                .chain((1..=self.width).map(|i| self.eq_bit(i, u, v))),
        )
    }

    /// `value(v) = value(u) + 1 mod 2^r`.
    pub fn inc1(&self, u: Var, v: Var) -> Fo2 {
        let r = self.width;
        let flip = |i: usize| Fo2::and([self.bit(i, u, true), self.bit(i, v, false)]);
        let mut cases: Vec<Fo2> = (1..=r)
            .map(|j| {
                Fo2::and(
                    (1..j)
                        .map(flip)
                        .chain([self.bit(j, u, false), self.bit(j, v, true)])
                        .chain((j + 1..=r).map(|i| self.eq_bit(i, u, v))),
                )
            })
            .collect();
        cases.push(Fo2::and((1..=r).map(flip)));
        Fo2::and([self.mark_at(u), self.mark_at(v), Fo2::or(cases)])
    }

    /// `value(v) = value(u) + c mod 2^r`, via a ripple-carry adder.
    pub fn inc(&self, u: Var, v: Var, c: u64) -> Fo2 {
        let mut parts = vec![self.mark_at(u), self.mark_at(v)];
        let mut carry = Fo2::False;
        for i in 1..=self.width {
            let ci = i <= 64 && (c >> (i - 1)) & 1 == 1;
            let xi = self.bit(i, u, true);
            let yi = self.bit(i, v, true);
            // y_i = x_i xor c_i xor carry_i
            let sum = match &carry {
                Fo2::False => {
                    if ci {
                        Fo2::not(xi.clone())
                    } else {
                        xi.clone()
                    }
                }
                _ => {
                    let same = Fo2::iff(xi.clone(), carry.clone());
                    if ci {
                        same
                    } else {
                        Fo2::not(same)
                    }
                }
            };
            parts.push(Fo2::iff(yi, sum));
            carry = if ci { or2(xi, carry) } else { and2(xi, carry) };
        }
        Fo2::and(parts)
    }

    /// `value(u) < value(v)`.
    pub fn lt(&self, u: Var, v: Var) -> Fo2 {
        let r = self.width;
        let cases = (1..=r).map(|j| {
            Fo2::and(
                [self.bit(j, u, false), self.bit(j, v, true)]
                    .into_iter()
                    .chain((j + 1..=r).map(|i| self.eq_bit(i, u, v))),
            )
        });
        Fo2::and([self.mark_at(u), self.mark_at(v), Fo2::or(cases)])
    }

    /// `value(u) > value(v)`.
    pub fn gt(&self, u: Var, v: Var) -> Fo2 {
        self.lt(v, u)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fo2::Assignment;
    use Var::{X, Y};

    fn word(s: &str) -> Vec<usize> {
        CounterSyntax::alphabet().parse_word(s).unwrap().0
    }

    #[test]
    fn width_two_examples() {
        let c = CounterSyntax::standard(2).unwrap();
        let at = Assignment::xy(1, 4);
        assert!(c.eq(X, Y).eval(&word("m10m10"), at).unwrap());
        assert!(!c.eq(X, Y).eval(&word("m10m01"), at).unwrap());
        assert!(c.inc1(X, Y).eval(&word("m10m01"), at).unwrap());
        assert!(c.inc1(X, Y).eval(&word("m11m00"), at).unwrap());
        assert!(!c.inc1(X, Y).eval(&word("m10m10"), at).unwrap());
        assert!(c.inc(X, Y, 1).eval(&word("m11m00"), at).unwrap());
        assert!(c.inc(X, Y, 3).eval(&word("m10m00"), at).unwrap());
        assert!(c.lt(X, Y).eval(&word("m10m01"), at).unwrap());
        assert!(c.gt(Y, X).eval(&word("m10m01"), at).unwrap());
    }

    #[test]
    fn chain_and_constant() {
        let c = CounterSyntax::standard(3).unwrap();
        let w = word("m011");
        assert!(c.counter_at(X, 6).eval(&w, Assignment::x(1)).unwrap());
        assert!(c.value_is(X, 6).eval(&w, Assignment::x(1)).unwrap());
        assert!(!c.value_is(X, 3).eval(&w, Assignment::x(1)).unwrap());
        // the chain must fit inside the word
        assert!(!c.counter_at(X, 6).eval(&word("m01"), Assignment::x(1)).unwrap());
    }

    #[test]
    fn zero_width_rejected() {
        assert_eq!(CounterSyntax::standard(0), Err(CounterError::ZeroWidth));
    }

    #[test]
    fn inc1_size_is_cubic() {
        let sizes: Vec<usize> = (1..=6)
            .map(|r| CounterSyntax::standard(r).unwrap().inc1(X, Y).size())
            .collect();
        for (r, s) in sizes.iter().enumerate() {
            let r = (r + 1) as f64;
            assert!((*s as f64) < 40.0 * r * r * r, "{sizes:?}");
        }
    }
}
