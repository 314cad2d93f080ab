//! Regular expressions in the notation used for the examples throughout:
//! `+` for union, juxtaposition for concatenation, postfix `*` and `^+`,
//! `%e` for the empty word and `%0` for the empty language. Single-character
//! letters are written bare; longer letter names are single-quoted.

use std::fmt;

use crate::alphabet::Alphabet;
use crate::syntax::{is_ident_char, Letters, ParseError};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Regex {
    Empty,
    Epsilon,
    Letter(usize),
    Union(Box<Regex>, Box<Regex>),
    Concat(Box<Regex>, Box<Regex>),
    Star(Box<Regex>),
    Plus(Box<Regex>),
}

impl Regex {
    pub fn letter(l: usize) -> Self {
        Regex::Letter(l)
    }

    pub fn union(self, other: Regex) -> Self {
        Regex::Union(Box::new(self), Box::new(other))
    }

    pub fn concat(self, other: Regex) -> Self {
        Regex::Concat(Box::new(self), Box::new(other))
    }

    pub fn star(self) -> Self {
        Regex::Star(Box::new(self))
    }

    pub fn plus(self) -> Self {
        Regex::Plus(Box::new(self))
    }

    /// Left-nested union of the items; `%0` when empty.
    pub fn union_all(items: impl IntoIterator<Item = Regex>) -> Self {
        items
            .into_iter()
            .reduce(Regex::union)
            .unwrap_or(Regex::Empty)
    }

    /// Left-nested concatenation of the items; `%e` when empty.
    pub fn concat_all(items: impl IntoIterator<Item = Regex>) -> Self {
        items
            .into_iter()
            .reduce(Regex::concat)
            .unwrap_or(Regex::Epsilon)
    }

    /// `(a1 + a2 + ... + an)` over every letter of an alphabet of size `n`.
    pub fn any_letter(alphabet_len: usize) -> Self {
        Regex::union_all((0..alphabet_len).map(Regex::Letter))
    }

    pub fn parse(text: &str, alphabet: &Alphabet) -> Result<Regex, ParseError> {
        Parser::new(text, Letters::Fixed(alphabet)).run()
    }

    /// Parses with an alphabet inferred from the letters that occur in the
    /// text (sorted by name).
    pub fn parse_infer(text: &str) -> Result<(Regex, Alphabet), ParseError> {
        let mut p = Parser::new(text, Letters::Infer(Vec::new()));
        let r = p.parse_all()?;
        let (alphabet, remap) = p
            .letters
            .finish(&[])
            .ok_or_else(|| ParseError::new(0, "cannot infer an alphabet: no letters occur"))?;
        Ok((r.map_letters(&|l| remap[l]), alphabet))
    }

    pub fn map_letters(&self, f: &impl Fn(usize) -> usize) -> Regex {
        match self {
            Regex::Empty => Regex::Empty,
            Regex::Epsilon => Regex::Epsilon,
            Regex::Letter(l) => Regex::Letter(f(*l)),
            Regex::Union(a, b) => a.map_letters(f).union(b.map_letters(f)),
            Regex::Concat(a, b) => a.map_letters(f).concat(b.map_letters(f)),
            Regex::Star(a) => a.map_letters(f).star(),
            Regex::Plus(a) => a.map_letters(f).plus(),
        }
    }

    pub fn max_letter(&self) -> Option<usize> {
        match self {
            Regex::Empty | Regex::Epsilon => None,
            Regex::Letter(l) => Some(*l),
            Regex::Union(a, b) | Regex::Concat(a, b) => a.max_letter().max(b.max_letter()),
            Regex::Star(a) | Regex::Plus(a) => a.max_letter(),
        }
    }

    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> RegexDisplay<'a> {
        RegexDisplay {
            regex: self,
            alphabet,
        }
    }

    pub fn to_text(&self, alphabet: &Alphabet) -> String {
        self.display(alphabet).to_string()
    }
}

pub struct RegexDisplay<'a> {
    regex: &'a Regex,
    alphabet: &'a Alphabet,
}

impl fmt::Display for RegexDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_regex(f, self.regex, self.alphabet, 0)
    }
}

// Precedence: 0 union, 1 concatenation, 2 postfix/atom.
fn write_regex(f: &mut fmt::Formatter<'_>, r: &Regex, a: &Alphabet, ctx: u8) -> fmt::Result {
    let own = match r {
        Regex::Union(..) => 0,
        Regex::Concat(..) => 1,
        _ => 2,
    };
    if own < ctx {
        f.write_str("(")?;
    }
    match r {
        Regex::Empty => f.write_str("%0")?,
        Regex::Epsilon => f.write_str("%e")?,
        Regex::Letter(l) => {
            let name = a.name(*l);
            let mut chars = name.chars();
            match (chars.next(), chars.next()) {
                (Some(c), None) if is_ident_char(c) => f.write_str(name)?,
                _ => write!(f, "'{name}'")?,
            }
        }
        Regex::Union(x, y) => {
            write_regex(f, x, a, 0)?;
            f.write_str("+")?;
            write_regex(f, y, a, 1)?;
        }
        Regex::Concat(x, y) => {
            write_regex(f, x, a, 1)?;
            write_regex(f, y, a, 2)?;
        }
        Regex::Star(x) => {
            write_regex(f, x, a, 2)?;
            f.write_str("*")?;
        }
        Regex::Plus(x) => {
            write_regex(f, x, a, 2)?;
            f.write_str("^+")?;
        }
    }
    if own < ctx {
        f.write_str(")")?;
    }
    Ok(())
}

struct Parser<'t, 'a> {
    text: &'t str,
    pos: usize,
    letters: Letters<'a>,
}

impl<'t, 'a> Parser<'t, 'a> {
    fn new(text: &'t str, letters: Letters<'a>) -> Self {
        Parser {
            text,
            pos: 0,
            letters,
        }
    }

    fn run(mut self) -> Result<Regex, ParseError> {
        self.parse_all()
    }

    fn parse_all(&mut self) -> Result<Regex, ParseError> {
        let r = self.union()?;
        self.skip_ws();
        if self.pos < self.text.len() {
            return Err(ParseError::new(
                self.pos,
                format!("unexpected `{}`", self.peek().unwrap()),
            ));
        }
        Ok(r)
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn union(&mut self) -> Result<Regex, ParseError> {
        let mut r = self.concat()?;
        loop {
            self.skip_ws();
            if self.peek() == Some('+') {
                self.pos += 1;
                r = r.union(self.concat()?);
            } else {
                return Ok(r);
            }
        }
    }

    fn starts_atom(&mut self) -> bool {
        self.skip_ws();
        matches!(self.peek(), Some(c) if c == '(' || c == '%' || c == '\'' || is_ident_char(c))
    }

    fn concat(&mut self) -> Result<Regex, ParseError> {
        if !self.starts_atom() {
            return Err(self.expected("an expression"));
        }
        let mut r = self.postfix()?;
        while self.starts_atom() {
            r = r.concat(self.postfix()?);
        }
        Ok(r)
    }

    fn postfix(&mut self) -> Result<Regex, ParseError> {
        let mut r = self.atom()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    r = r.star();
                }
                Some('^') => {
                    if self.text[self.pos..].starts_with("^+") {
                        self.pos += 2;
                        r = r.plus();
                    } else {
                        return Err(ParseError::new(self.pos, "expected `^+`"));
                    }
                }
                _ => return Ok(r),
            }
        }
    }

    fn atom(&mut self) -> Result<Regex, ParseError> {
        self.skip_ws();
        let start = self.pos;
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let r = self.union()?;
                self.skip_ws();
                if self.peek() == Some(')') {
                    self.pos += 1;
                    Ok(r)
                } else {
                    Err(self.expected("`)`"))
                }
            }
            Some('%') => {
                let rest = &self.text[self.pos + 1..];
                if rest.starts_with('e') {
                    self.pos += 2;
                    Ok(Regex::Epsilon)
                } else if rest.starts_with('0') {
                    self.pos += 2;
                    Ok(Regex::Empty)
                } else {
                    Err(ParseError::new(start, "expected `%e` or `%0`"))
                }
            }
            Some('\'') => {
                let rest = &self.text[self.pos + 1..];
                let close = rest
                    .find('\'')
                    .ok_or_else(|| ParseError::new(start, "unterminated quoted letter"))?;
                let name = rest[..close].to_string();
                if name.is_empty() {
                    return Err(ParseError::new(start, "empty quoted letter"));
                }
                self.pos += close + 2;
                Ok(Regex::Letter(self.letters.resolve(&name, start)?))
            }
            Some(c) if is_ident_char(c) => {
                self.pos += 1;
                Ok(Regex::Letter(self.letters.resolve(&c.to_string(), start)?))
            }
            _ => Err(self.expected("an expression")),
        }
    }

    fn expected(&self, what: &str) -> ParseError {
        let found = match self.peek() {
            Some(c) => format!("`{c}`"),
            None => "end of input".to_string(),
        };
        ParseError::new(self.pos, format!("expected {what}, found {found}"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Alphabet {
        Alphabet::from_chars("ab").unwrap()
    }

    #[test]
    fn parses_star_of_concat() {
        let r = Regex::parse("(ab)*", &ab()).unwrap();
        assert_eq!(r, Regex::Letter(0).concat(Regex::Letter(1)).star());
    }

    #[test]
    fn plus_binds_to_single_atom() {
        let a = ab();
        let r = Regex::parse("(a+b)*bab^+ab(a+b)*", &a).unwrap();
        let any = Regex::Letter(0).union(Regex::Letter(1)).star();
        let expected = Regex::concat_all([
            any.clone(),
            Regex::Letter(1),
            Regex::Letter(0),
            Regex::Letter(1).plus(),
            Regex::Letter(0),
            Regex::Letter(1),
            any,
        ]);
        assert_eq!(r, expected);
        assert_eq!(r.to_text(&a), "(a+b)*bab^+ab(a+b)*");
    }

    #[test]
    fn unbalanced_paren_reports_offset() {
        let err = Regex::parse("(ab", &ab()).unwrap_err();
        assert_eq!(err.offset, 3);
    }

    #[test]
    fn unknown_letter_rejected() {
        let err = Regex::parse("a+c", &ab()).unwrap_err();
        assert_eq!(err.offset, 2);
        assert!(err.message.contains("unknown letter"));
    }

    #[test]
    fn special_atoms_and_quotes() {
        let a = Alphabet::new(["0", "1", "g1"]).unwrap();
        let r = Regex::parse("'g1'(0+1)^+ + %e + %0", &a).unwrap();
        assert_eq!(r.to_text(&a), "'g1'(0+1)^++%e+%0");
        assert_eq!(Regex::parse(&r.to_text(&a), &a).unwrap(), r);
        assert!(Regex::parse("a^", &ab()).is_err());
        assert!(Regex::parse("", &ab()).is_err());
        assert!(Regex::parse("a+", &ab()).is_err());
    }

    #[test]
    fn infers_sorted_alphabet() {
        let (r, a) = Regex::parse_infer("(b+a)*c").unwrap();
        assert_eq!(a.letters(), ["a", "b", "c"]);
        assert_eq!(r.to_text(&a), "(b+a)*c");
    }

    #[test]
    fn printer_keeps_associativity() {
        let a = ab();
        let right = Regex::Letter(0).union(Regex::Letter(1).union(Regex::Letter(0)));
        assert_eq!(right.to_text(&a), "a+(b+a)");
        assert_eq!(Regex::parse(&right.to_text(&a), &a).unwrap(), right);
        let nested = Regex::Letter(0).concat(Regex::Letter(1).concat(Regex::Letter(0)));
        assert_eq!(Regex::parse(&nested.to_text(&a), &a).unwrap(), nested);
    }
}
