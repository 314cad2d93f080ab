use std::fmt;

use super::parse::RESERVED;
use super::{Guard, Relation, ThresholdConstraint, Tl};
use crate::alphabet::Alphabet;
use crate::syntax::letter_token;

pub struct TlDisplay<'a> {
    pub(super) formula: &'a Tl,
    pub(super) alphabet: &'a Alphabet,
}

impl fmt::Display for TlDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tl(f, self.formula, self.alphabet, 0)
    }
}

fn is_zero_over(g: &Guard, count: usize) -> bool {
    matches!(g, Guard::Atom(ThresholdConstraint { letters, relation: Relation::Eq, bound: 0 })
        if letters.len() == count && letters.iter().enumerate().all(|(i, &l)| i == l))
}

fn level(t: &Tl) -> u8 {
    match t {
        Tl::Or(v) if v.len() > 1 => 0,
        Tl::And(v) if v.len() > 1 => 1,
        _ => 2,
    }
}

fn write_tl(out: &mut fmt::Formatter<'_>, t: &Tl, a: &Alphabet, ctx: u8) -> fmt::Result {
    let paren = level(t) < ctx;
    if paren {
        out.write_str("(")?;
    }
    match t {
        Tl::True => out.write_str("true")?,
        Tl::False => out.write_str("false")?,
        Tl::Letter(l) => out.write_str(&letter_token(a.name(*l), RESERVED))?,
        Tl::Not(x) => {
            out.write_str("!")?;
            write_tl(out, x, a, 2)?;
        }
        Tl::And(v) | Tl::Or(v) if v.is_empty() => {
            out.write_str(if matches!(t, Tl::And(_)) { "true" } else { "false" })?
        }
        Tl::And(v) | Tl::Or(v) if v.len() == 1 => write_tl(out, &v[0], a, ctx)?,
        Tl::And(v) | Tl::Or(v) => {
            let (sep, sub) = if matches!(t, Tl::And(_)) {
                (" & ", 2)
            } else {
                (" | ", 1)
            };
            for (i, c) in v.iter().enumerate() {
                if i > 0 {
                    out.write_str(sep)?;
                }
                write_tl(out, c, a, sub)?;
            }
        }
        Tl::Future(g, x) | Tl::Past(g, x) => {
            let future = matches!(t, Tl::Future(..));
            let op = if future { "F" } else { "P" };
            if is_zero_over(g, 0) {
                write!(out, "{op} ")?;
            } else if future && is_zero_over(g, a.len()) {
                out.write_str("X ")?;
            } else {
                write!(out, "{op}[{}] ", GuardDisplay { guard: g, alphabet: a })?;
            }
            write_tl(out, x, a, 2)?;
        }
    }
    if paren {
        out.write_str(")")?;
    }
    Ok(())
}

pub struct GuardDisplay<'a> {
    pub guard: &'a Guard,
    pub alphabet: &'a Alphabet,
}

impl fmt::Display for GuardDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_guard(f, self.guard, self.alphabet, 0)
    }
}

fn write_guard(out: &mut fmt::Formatter<'_>, g: &Guard, a: &Alphabet, ctx: u8) -> fmt::Result {
    let own = match g {
        Guard::Or(v) if v.len() > 1 => 0,
        Guard::And(v) if v.len() > 1 => 1,
        _ => 2,
    };
    let paren = own < ctx;
    if paren {
        out.write_str("(")?;
    }
    match g {
        Guard::Atom(c) => {
            let names: Vec<String> = c
                .letters
                .iter()
                .map(|&l| letter_token(a.name(l), RESERVED))
                .collect();
            write!(out, "#{{{}}}{}{}", names.join(","), c.relation, c.bound)?;
        }
        Guard::Not(x) => {
            out.write_str("!")?;
            write_guard(out, x, a, 2)?;
        }
        Guard::And(v) | Guard::Or(v) if v.len() == 1 => write_guard(out, &v[0], a, ctx)?,
        Guard::And(v) | Guard::Or(v) if v.is_empty() => {
            // #{}=0 is always true, #{}>0 never.
            out.write_str(if matches!(g, Guard::And(_)) { "#{}=0" } else { "#{}>0" })?
        }
        Guard::And(v) | Guard::Or(v) => {
            let (sep, sub) = if matches!(g, Guard::And(_)) {
                (" & ", 2)
            } else {
                (" | ", 1)
            };
            for (i, c) in v.iter().enumerate() {
                if i > 0 {
                    out.write_str(sep)?;
                }
                write_guard(out, c, a, sub)?;
            }
        }
    }
    if paren {
        out.write_str(")")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let a = Alphabet::new(["a", "b", "c", "X"]).unwrap();
        for text in [
            "F[#{a}>=2] b",
            "X b & !F (a & X a)",
            "P[#{a,b}=0 | !(#{c}<3 & #{}>=0)] (a | 'X')",
            "F F[#{a,b,c,'X'}=0] true",
            "!!false | P a",
            "(a | b) & c",
        ] {
            let f = Tl::parse(text, &a).unwrap();
            let printed = f.to_text(&a);
            assert_eq!(Tl::parse(&printed, &a).unwrap(), f, "{text} => {printed}");
        }
    }

    #[test]
    fn sugar_is_used() {
        let a = Alphabet::from_chars("ab").unwrap();
        let f = Tl::parse("F[#{}=0] X[#{a,b}=0] a", &a);
        assert!(f.is_err());
        let f = Tl::parse("F[#{}=0] F[#{a,b}=0] a", &a).unwrap();
        assert_eq!(f.to_text(&a), "F X a");
        let p = Tl::parse("P[#{a,b}=0] a", &a).unwrap();
        assert_eq!(p.to_text(&a), "P[#{a,b}=0] a");
    }
}
