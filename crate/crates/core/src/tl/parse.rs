//! Text syntax:
//!
//! ```text
//! formula := and ('|' and)*
//! and     := unary ('&' unary)*
//! unary   := '!' unary | ('F' | 'P') '[' guard ']' unary
//!          | 'F' unary | 'P' unary | 'X' unary | atom
//! atom    := 'true' | 'false' | letter | '(' formula ')'
//! guard   := gand ('|' gand)*
//! gand    := gunary ('&' gunary)*
//! gunary  := '!' gunary | '(' guard ')' | '#' set rel number
//! set     := letter | '{' [letter (',' letter)*] '}'
//! rel     := '<' | '<=' | '>' | '>=' | '='
//! ```
//!
//! Bounds may be decimal or `0b` binary and must not exceed 2^63.

use std::collections::BTreeSet;

use super::{Guard, Relation, ThresholdConstraint, Tl};
use crate::alphabet::Alphabet;
use crate::syntax::{Letters, ParseError, Tok, Tokens};

pub(crate) const RESERVED: &[&str] = &["F", "P", "X", "true", "false"];

const MAX_BOUND: u64 = 1 << 63;

// Stands for "every letter" until the alphabet is known.
const ALL: usize = usize::MAX;

pub(super) fn parse(text: &str, alphabet: &Alphabet) -> Result<Tl, ParseError> {
    let mut p = Parser {
        toks: Tokens::new(text)?,
        letters: Letters::Fixed(alphabet),
    };
    let f = p.formula()?;
    p.toks.expect_end()?;
    Ok(relabel(&f, &|l| l, alphabet.len()))
}

pub(super) fn parse_infer(text: &str) -> Result<(Tl, Alphabet), ParseError> {
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
    let f = relabel(&f, &|l| remap[l], alphabet.len());
    Ok((f, alphabet))
}

fn relabel_guard(g: &Guard, f: &impl Fn(usize) -> usize, n: usize) -> Guard {
    match g {
        Guard::Atom(c) => {
            let letters: BTreeSet<usize> = if c.letters.contains(&ALL) {
                (0..n).collect()
            } else {
                c.letters.iter().map(|&l| f(l)).collect()
            };
            Guard::Atom(ThresholdConstraint { letters, ..c.clone() })
        }
        Guard::Not(x) => Guard::Not(Box::new(relabel_guard(x, f, n))),
        Guard::And(v) => Guard::And(v.iter().map(|x| relabel_guard(x, f, n)).collect()),
        Guard::Or(v) => Guard::Or(v.iter().map(|x| relabel_guard(x, f, n)).collect()),
    }
}

/// Renumbers letters and expands the `X` placeholder to the full alphabet.
fn relabel(t: &Tl, f: &impl Fn(usize) -> usize, n: usize) -> Tl {
    match t {
        Tl::True | Tl::False => t.clone(),
        Tl::Letter(l) => Tl::Letter(f(*l)),
        Tl::Not(x) => Tl::not(relabel(x, f, n)),
        Tl::And(v) => Tl::And(v.iter().map(|x| relabel(x, f, n)).collect()),
        Tl::Or(v) => Tl::Or(v.iter().map(|x| relabel(x, f, n)).collect()),
        Tl::Future(g, x) => Tl::future(relabel_guard(g, f, n), relabel(x, f, n)),
        Tl::Past(g, x) => Tl::past(relabel_guard(g, f, n), relabel(x, f, n)),
    }
}

struct Parser<'a> {
    toks: Tokens,
    letters: Letters<'a>,
}

impl Parser<'_> {
    fn formula(&mut self) -> Result<Tl, ParseError> {
        let mut items = vec![self.and()?];
        while self.toks.eat_sym("|") {
            items.push(self.and()?);
        }
        Ok(if items.len() == 1 {
            items.pop().unwrap()
        } else {
            Tl::Or(items)
        })
    }

    fn and(&mut self) -> Result<Tl, ParseError> {
        let mut items = vec![self.unary()?];
        while self.toks.eat_sym("&") {
            items.push(self.unary()?);
        }
        Ok(if items.len() == 1 {
            items.pop().unwrap()
        } else {
            Tl::And(items)
        })
    }

    fn unary(&mut self) -> Result<Tl, ParseError> {
        if self.toks.eat_sym("!") {
            return Ok(Tl::not(self.unary()?));
        }
        if let Tok::Ident(name) = self.toks.peek().clone() {
            match name.as_str() {
                "F" | "P" => {
                    self.toks.next();
                    let guard = if self.toks.eat_sym("[") {
                        let g = self.guard()?;
                        self.toks.expect_sym("]")?;
                        g
                    } else {
                        Guard::always()
                    };
                    let body = self.unary()?;
                    return Ok(if name == "F" {
                        Tl::future(guard, body)
                    } else {
                        Tl::past(guard, body)
                    });
                }
                "X" => {
                    self.toks.next();
                    let body = self.unary()?;
                    return Ok(Tl::future(Guard::Atom(ThresholdConstraint::zero([ALL])), body));
                }
                _ => {}
            }
        }
        self.atom()
    }

    fn letter(&mut self) -> Result<usize, ParseError> {
        let offset = self.toks.offset();
        match self.toks.next() {
            Tok::Ident(name) if RESERVED.contains(&name.as_str()) => Err(ParseError::new(
                offset,
                format!("`{name}` is reserved; quote it to use it as a letter"),
            )),
            Tok::Ident(name) | Tok::Quoted(name) => self.letters.resolve(&name, offset),
            other => Err(ParseError::new(
                offset,
                format!("expected a letter, found {}", other.describe()),
            )),
        }
    }

    fn atom(&mut self) -> Result<Tl, ParseError> {
        match self.toks.peek().clone() {
            Tok::Sym("(") => {
                self.toks.next();
                let f = self.formula()?;
                self.toks.expect_sym(")")?;
                Ok(f)
            }
            Tok::Ident(name) if name == "true" => {
                self.toks.next();
                Ok(Tl::True)
            }
            Tok::Ident(name) if name == "false" => {
                self.toks.next();
                Ok(Tl::False)
            }
            Tok::Ident(_) | Tok::Quoted(_) => Ok(Tl::Letter(self.letter()?)),
            _ => Err(self.toks.unexpected("a formula")),
        }
    }

    fn guard(&mut self) -> Result<Guard, ParseError> {
        let mut items = vec![self.guard_and()?];
        while self.toks.eat_sym("|") {
            items.push(self.guard_and()?);
        }
        Ok(if items.len() == 1 {
            items.pop().unwrap()
        } else {
            Guard::Or(items)
        })
    }

    fn guard_and(&mut self) -> Result<Guard, ParseError> {
        let mut items = vec![self.guard_unary()?];
        while self.toks.eat_sym("&") {
            items.push(self.guard_unary()?);
        }
        Ok(if items.len() == 1 {
            items.pop().unwrap()
        } else {
            Guard::And(items)
        })
    }

    fn guard_unary(&mut self) -> Result<Guard, ParseError> {
        if self.toks.eat_sym("!") {
            return Ok(Guard::Not(Box::new(self.guard_unary()?)));
        }
        if self.toks.eat_sym("(") {
            let g = self.guard()?;
            self.toks.expect_sym(")")?;
            return Ok(g);
        }
        self.toks.expect_sym("#")?;
        let mut letters = BTreeSet::new();
        if self.toks.eat_sym("{") {
            if !self.toks.eat_sym("}") {
                loop {
                    letters.insert(self.letter()?);
                    if self.toks.eat_sym("}") {
                        break;
                    }
                    self.toks.expect_sym(",")?;
                }
            }
        } else {
            letters.insert(self.letter()?);
        }
        let offset = self.toks.offset();
        let relation = match self.toks.next() {
            Tok::Sym("<") => Relation::Lt,
            Tok::Sym("<=") => Relation::Le,
            Tok::Sym(">") => Relation::Gt,
            Tok::Sym(">=") => Relation::Ge,
            Tok::Sym("=") => Relation::Eq,
            other => {
                return Err(ParseError::new(
                    offset,
                    format!("expected a comparison, found {}", other.describe()),
                ))
            }
        };
        let offset = self.toks.offset();
        let bound = self.toks.number()?;
        if bound > MAX_BOUND {
            return Err(ParseError::new(offset, "threshold bound exceeds 2^63"));
        }
        Ok(Guard::Atom(ThresholdConstraint {
            letters,
            relation,
            bound,
        }))
    }
}
