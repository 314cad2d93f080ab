//! Text syntax:
//!
//! ```text
//! formula := imp ('<->' imp)*
//! imp     := or ('->' imp)?
//! or      := and ('|' and)*
//! and     := unary ('&' unary)*
//! unary   := '!' unary | Q v '.' formula | atom
//! atom    := 'T' | 'F' | '(' formula ')' | letter '(' v ')'
//!          | 'bet' '(' letter ',' k ',' v ',' v ')' | 'succ' '(' v ',' v ')'
//!          | v ('<' | '<=' | '=' | '>' | '>=') v
//! ```
//!
//! `Q` is `E` or `A` glued to the variable (`Ex.`, `Ay.`). A quantifier body
//! extends as far to the right as possible.

use super::{Fo2, Var};
use crate::alphabet::Alphabet;
use crate::syntax::{Letters, ParseError, Tok, Tokens};

pub(crate) const RESERVED: &[&str] = &["T", "F", "bet", "succ"];

pub(super) fn parse(text: &str, alphabet: &Alphabet) -> Result<Fo2, ParseError> {
    let mut p = Parser {
        toks: Tokens::new(text)?,
        letters: Letters::Fixed(alphabet),
    };
    let f = p.formula()?;
    p.toks.expect_end()?;
    Ok(f)
}

pub(super) fn parse_infer(text: &str) -> Result<(Fo2, Alphabet), ParseError> {
    let mut p = Parser {
        toks: Tokens::new(text)?,
        letters: Letters::Infer(Vec::new()),
    };
    let f = p.formula()?;
    p.toks.expect_end()?;
    let (alphabet, remap) = p
        .letters
        .finish(&[])
        .ok_or_else(|| ParseError::new(0, "cannot infer an alphabet: no letters occur"))?;
    Ok((f.map_letters(&|l| remap[l]), alphabet))
}

struct Parser<'a> {
    toks: Tokens,
    letters: Letters<'a>,
}

fn quantifier(name: &str) -> Option<(bool, &str)> {
    let mut chars = name.chars();
    let q = chars.next()?;
    let rest = chars.as_str();
    match q {
        'E' if !rest.is_empty() => Some((true, rest)),
        'A' if !rest.is_empty() => Some((false, rest)),
        _ => None,
    }
}

fn var_of(name: &str, offset: usize) -> Result<Var, ParseError> {
    match name {
        "x" => Ok(Var::X),
        "y" => Ok(Var::Y),
        other => Err(ParseError::new(
            offset,
            format!("third variable `{other}`: only x and y are allowed"),
        )),
    }
}

impl Parser<'_> {
    fn formula(&mut self) -> Result<Fo2, ParseError> {
        let mut f = self.imp()?;
        while self.toks.eat_sym("<->") {
            f = Fo2::iff(f, self.imp()?);
        }
        Ok(f)
    }

    fn imp(&mut self) -> Result<Fo2, ParseError> {
        let f = self.or()?;
        if self.toks.eat_sym("->") {
            Ok(Fo2::implies(f, self.imp()?))
        } else {
            Ok(f)
        }
    }

    fn or(&mut self) -> Result<Fo2, ParseError> {
        let mut items = vec![self.and()?];
        while self.toks.eat_sym("|") {
            items.push(self.and()?);
        }
        Ok(if items.len() == 1 {
            items.pop().unwrap()
        } else {
            Fo2::Or(items)
        })
    }

    fn and(&mut self) -> Result<Fo2, ParseError> {
        let mut items = vec![self.unary()?];
        while self.toks.eat_sym("&") {
            items.push(self.unary()?);
        }
        Ok(if items.len() == 1 {
            items.pop().unwrap()
        } else {
            Fo2::And(items)
        })
    }

    fn unary(&mut self) -> Result<Fo2, ParseError> {
        if self.toks.eat_sym("!") {
            return Ok(Fo2::not(self.unary()?));
        }
        if let Tok::Ident(name) = self.toks.peek().clone() {
            if matches!(self.toks.peek_at(1), Tok::Sym(".")) {
                if let Some((exists, v)) = quantifier(&name) {
                    let offset = self.toks.offset() + 1;
                    let var = var_of(v, offset)?;
                    self.toks.next();
                    self.toks.next();
                    let body = self.formula()?;
                    return Ok(if exists {
                        Fo2::exists(var, body)
                    } else {
                        Fo2::forall(var, body)
                    });
                }
            }
        }
        self.atom()
    }

    fn var(&mut self) -> Result<Var, ParseError> {
        let offset = self.toks.offset();
        match self.toks.next() {
            Tok::Ident(name) => var_of(&name, offset),
            other => Err(ParseError::new(
                offset,
                format!("expected a variable, found {}", other.describe()),
            )),
        }
    }

    fn letter(&mut self) -> Result<usize, ParseError> {
        let offset = self.toks.offset();
        match self.toks.next() {
            Tok::Ident(name) | Tok::Quoted(name) => self.letters.resolve(&name, offset),
            other => Err(ParseError::new(
                offset,
                format!("expected a letter, found {}", other.describe()),
            )),
        }
    }

    fn atom(&mut self) -> Result<Fo2, ParseError> {
        let offset = self.toks.offset();
        let open_follows = matches!(self.toks.peek_at(1), Tok::Sym("("));
        match self.toks.peek().clone() {
            Tok::Sym("(") => {
                self.toks.next();
                let f = self.formula()?;
                self.toks.expect_sym(")")?;
                Ok(f)
            }
            Tok::Ident(name) if name == "T" && !open_follows => {
                self.toks.next();
                Ok(Fo2::True)
            }
            Tok::Ident(name) if name == "F" && !open_follows => {
                self.toks.next();
                Ok(Fo2::False)
            }
            Tok::Ident(name) if name == "bet" && open_follows => {
                self.toks.next();
                self.toks.next();
                let letter = self.letter()?;
                self.toks.expect_sym(",")?;
                let k_offset = self.toks.offset();
                let k = self.toks.number()?;
                if k == 0 {
                    return Err(ParseError::new(
                        k_offset,
                        "between threshold must be at least 1",
                    ));
                }
                self.toks.expect_sym(",")?;
                let from = self.var()?;
                self.toks.expect_sym(",")?;
                let to = self.var()?;
                self.toks.expect_sym(")")?;
                Ok(Fo2::bet(letter, k, from, to))
            }
            Tok::Ident(name) if name == "succ" && open_follows => {
                self.toks.next();
                self.toks.next();
                let u = self.var()?;
                self.toks.expect_sym(",")?;
                let v = self.var()?;
                self.toks.expect_sym(")")?;
                Ok(Fo2::Succ(u, v))
            }
            Tok::Ident(_) | Tok::Quoted(_) if open_follows => {
                let letter = self.letter()?;
                self.toks.next();
                let v = self.var()?;
                self.toks.expect_sym(")")?;
                Ok(Fo2::Letter(letter, v))
            }
            Tok::Ident(_) => {
                let u = self.var()?;
                let op_offset = self.toks.offset();
                let op = match self.toks.next() {
                    Tok::Sym(s @ ("<" | "<=" | "=" | ">" | ">=")) => s,
                    other => {
                        return Err(ParseError::new(
                            op_offset,
                            format!("expected a comparison, found {}", other.describe()),
                        ))
                    }
                };
                let v = self.var()?;
                Ok(match op {
                    "<" => Fo2::Less(u, v),
                    "<=" => Fo2::LessEq(u, v),
                    "=" => Fo2::Equal(u, v),
                    ">" => Fo2::Less(v, u),
                    _ => Fo2::LessEq(v, u),
                })
            }
            _ => Err(ParseError::new(
                offset,
                format!("expected a formula, found {}", self.toks.peek().describe()),
            )),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Var::{X, Y};

    fn ab() -> Alphabet {
        Alphabet::from_chars("ab").unwrap()
    }

    #[test]
    fn parses_between_sentence() {
        let f = parse("Ex. Ey. (x<y & bet(a,1,x,y))", &ab()).unwrap();
        assert_eq!(
            f,
            Fo2::exists(
                X,
                Fo2::exists(Y, Fo2::And(vec![Fo2::Less(X, Y), Fo2::bet(0, 1, X, Y)]))
            )
        );
    }

    #[test]
    fn rejects_third_variable() {
        let err = parse("Ex. Ey. Ez. a(z)", &ab()).unwrap_err();
        assert!(err.message.contains("third variable"), "{err}");
        assert!(parse("Ex. a(z)", &ab()).is_err());
    }

    #[test]
    fn quantifier_body_is_maximal() {
        let f = parse("Ax. (Ay. (x<=y)) -> a(x)", &ab()).unwrap();
        assert_eq!(
            f,
            Fo2::forall(
                X,
                Fo2::implies(Fo2::forall(Y, Fo2::LessEq(X, Y)), Fo2::Letter(0, X))
            )
        );
    }

    #[test]
    fn precedence_and_associativity() {
        let a = ab();
        let f = parse("a(x) | b(x) & T -> F -> a(y) <-> T", &a).unwrap();
        let lhs = Fo2::implies(
            Fo2::Or(vec![
                Fo2::Letter(0, X),
                Fo2::And(vec![Fo2::Letter(1, X), Fo2::True]),
            ]),
            Fo2::implies(Fo2::False, Fo2::Letter(0, Y)),
        );
        assert_eq!(f, Fo2::iff(lhs, Fo2::True));
        assert_eq!(parse("x > y", &a).unwrap(), Fo2::Less(Y, X));
        assert_eq!(parse("!!x>=y", &a).unwrap(), Fo2::not(Fo2::not(Fo2::LessEq(Y, X))));
    }

    #[test]
    fn errors() {
        let a = ab();
        assert!(parse("bet(a,0,x,y)", &a).is_err());
        assert!(parse("c(x)", &a).unwrap_err().message.contains("unknown letter"));
        assert!(parse("a(x) &", &a).is_err());
        assert!(parse("(a(x)", &a).is_err());
        assert!(parse("x", &a).is_err());
    }

    #[test]
    fn infers_alphabet_and_quoted_letters() {
        let (f, alpha) = parse_infer("Ex. ('g1'(x) & bet(b,2,x,y))").unwrap();
        assert_eq!(alpha.letters(), ["b", "g1"]);
        assert_eq!(f.max_letter(), Some(1));
    }
}
