use std::fmt;

use super::parse::RESERVED;
use super::Fo2;
use crate::alphabet::Alphabet;
use crate::syntax::letter_token;

pub struct Fo2Display<'a> {
    pub(super) formula: &'a Fo2,
    pub(super) alphabet: &'a Alphabet,
}

impl fmt::Display for Fo2Display<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_fo2(f, self.formula, self.alphabet, 0)
    }
}

// Levels: 0 quantifier, 1 <->, 2 ->, 3 |, 4 &, 5 !, 6 atom.
fn level(f: &Fo2) -> u8 {
    match f {
        Fo2::Exists(..) | Fo2::Forall(..) => 0,
        Fo2::Iff(..) => 1,
        Fo2::Implies(..) => 2,
        Fo2::Or(v) if v.len() > 1 => 3,
        Fo2::And(v) if v.len() > 1 => 4,
        Fo2::Not(_) => 5,
        _ => 6,
    }
}

fn write_fo2(out: &mut fmt::Formatter<'_>, f: &Fo2, a: &Alphabet, ctx: u8) -> fmt::Result {
    let paren = level(f) < ctx;
    if paren {
        out.write_str("(")?;
    }
    let letter = |l: usize| letter_token(a.name(l), RESERVED);
    match f {
        Fo2::True => out.write_str("T")?,
        Fo2::False => out.write_str("F")?,
        Fo2::Letter(l, v) => write!(out, "{}({v})", letter(*l))?,
        Fo2::Between {
            letter: l,
            at_least,
            from,
            to,
        } => write!(out, "bet({},{at_least},{from},{to})", letter(*l))?,
        Fo2::Less(u, v) => write!(out, "{u}<{v}")?,
        Fo2::LessEq(u, v) => write!(out, "{u}<={v}")?,
        Fo2::Equal(u, v) => write!(out, "{u}={v}")?,
        Fo2::Succ(u, v) => write!(out, "succ({u},{v})")?,
        Fo2::Not(b) => {
            out.write_str("!")?;
            write_fo2(out, b, a, 5)?;
        }
        Fo2::And(v) | Fo2::Or(v) if v.is_empty() => {
            out.write_str(if matches!(f, Fo2::And(_)) { "T" } else { "F" })?
        }
        Fo2::And(v) | Fo2::Or(v) if v.len() == 1 => write_fo2(out, &v[0], a, ctx)?,
        Fo2::And(v) | Fo2::Or(v) => {
            let (sep, sub) = if matches!(f, Fo2::And(_)) {
                (" & ", 5)
            } else {
                (" | ", 4)
            };
            for (i, c) in v.iter().enumerate() {
                if i > 0 {
                    out.write_str(sep)?;
                }
                write_fo2(out, c, a, sub)?;
            }
        }
        Fo2::Implies(l, r) => {
            write_fo2(out, l, a, 3)?;
            out.write_str(" -> ")?;
            write_fo2(out, r, a, 2)?;
        }
        Fo2::Iff(l, r) => {
            write_fo2(out, l, a, 1)?;
            out.write_str(" <-> ")?;
            write_fo2(out, r, a, 2)?;
        }
        Fo2::Exists(v, b) | Fo2::Forall(v, b) => {
            let q = if matches!(f, Fo2::Exists(..)) { 'E' } else { 'A' };
            write!(out, "{q}{v}. ")?;
            write_fo2(out, b, a, 0)?;
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
    use crate::fo2::Var::{X, Y};

    #[test]
    fn prints_and_reparses() {
        let a = Alphabet::new(["a", "b", "T", "g_1"]).unwrap();
        let texts = [
            "Ex. Ey. x<y & bet(a,1,x,y)",
            "Ax. (Ay. x<=y) -> a(x)",
            "(Ex. a(x)) & (Ey. b(y))",
            "!(Ex. 'T'(x)) | g_1(y) <-> T",
            "a(x) -> (b(x) -> a(y)) -> F",
            "(a(x) <-> b(x)) <-> (a(y) <-> b(y))",
            "!!succ(x,y) & (x=y | y<x)",
        ];
        for t in texts {
            let f = Fo2::parse(t, &a).unwrap();
            let printed = f.to_text(&a);
            assert_eq!(Fo2::parse(&printed, &a).unwrap(), f, "{t} => {printed}");
        }
    }

    #[test]
    fn quantifier_under_operator_is_parenthesized() {
        let a = Alphabet::from_chars("ab").unwrap();
        let f = Fo2::and([Fo2::exists(X, Fo2::Letter(0, X)), Fo2::Letter(1, Y)]);
        assert_eq!(f.to_text(&a), "(Ex. a(x)) & b(y)");
        let g = Fo2::exists(X, Fo2::and([Fo2::Letter(0, X), Fo2::Letter(1, X)]));
        assert_eq!(g.to_text(&a), "Ex. a(x) & b(x)");
    }
}
