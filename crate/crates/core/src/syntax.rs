//! Shared lexing helpers for the formula grammars.

use crate::alphabet::Alphabet;

/// A syntax error, located by byte offset into the input text.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{message} at offset {offset}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

impl ParseError {
    pub(crate) fn new(offset: usize, message: impl Into<String>) -> Self {
        ParseError {
            offset,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Tok {
    Ident(String),
    Quoted(String),
    Sym(&'static str),
    End,
}

impl Tok {
    pub(crate) fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Quoted(s) => format!("`'{s}'`"),
            Tok::Sym(s) => format!("`{s}`"),
            Tok::End => "end of input".to_string(),
        }
    }
}

// Longest symbols first so that `<->` wins over `<` and `<=`.
const SYMBOLS: &[&str] = &[
    "<->", "->", "<=", ">=", "(", ")", "[", "]", "{", "}", ",", ".", "!", "&", "|", "<", ">", "=",
    "#",
];

pub(crate) fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

pub(crate) fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let mut out = Vec::new();
    let mut i = 0;
    let bytes = text.as_bytes();
    while i < text.len() {
        let c = text[i..].chars().next().unwrap();
        if c.is_whitespace() {
            i += c.len_utf8();
            continue;
        }
        if is_ident_char(c) {
            let start = i;
            while i < text.len() && is_ident_char(bytes[i] as char) {
                i += 1;
            }
            out.push((Tok::Ident(text[start..i].to_string()), start));
            continue;
        }
        if c == '\'' {
            let start = i;
            let rest = &text[i + 1..];
            let close = rest
                .find('\'')
                .ok_or_else(|| ParseError::new(start, "unterminated quoted letter"))?;
            let name = &rest[..close];
            if name.is_empty() {
                return Err(ParseError::new(start, "empty quoted letter"));
            }
            out.push((Tok::Quoted(name.to_string()), start));
            i += close + 2;
            continue;
        }
        match SYMBOLS.iter().find(|s| text[i..].starts_with(**s)) {
            Some(sym) => {
                out.push((Tok::Sym(sym), i));
                i += sym.len();
            }
            None => return Err(ParseError::new(i, format!("unexpected character `{c}`"))),
        }
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

/// Cursor over a token stream.
pub(crate) struct Tokens {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl Tokens {
    pub(crate) fn new(text: &str) -> Result<Self, ParseError> {
        Ok(Tokens {
            toks: tokenize(text)?,
            pos: 0,
        })
    }

    pub(crate) fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    pub(crate) fn peek_at(&self, ahead: usize) -> &Tok {
        let idx = (self.pos + ahead).min(self.toks.len() - 1);
        &self.toks[idx].0
    }

    pub(crate) fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    pub(crate) fn next(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    pub(crate) fn is_sym(&self, sym: &str) -> bool {
        matches!(self.peek(), Tok::Sym(s) if *s == sym)
    }

    pub(crate) fn eat_sym(&mut self, sym: &str) -> bool {
        if self.is_sym(sym) {
            self.next();
            true
        } else {
            false
        }
    }

    pub(crate) fn expect_sym(&mut self, sym: &str) -> Result<(), ParseError> {
        if self.eat_sym(sym) {
            Ok(())
        } else {
            Err(self.unexpected(&format!("`{sym}`")))
        }
    }

    pub(crate) fn expect_end(&self) -> Result<(), ParseError> {
        if *self.peek() == Tok::End {
            Ok(())
        } else {
            Err(self.unexpected("end of input"))
        }
    }

    pub(crate) fn unexpected(&self, wanted: &str) -> ParseError {
        ParseError::new(
            self.offset(),
            format!("expected {wanted}, found {}", self.peek().describe()),
        )
    }

    /// Parses an unsigned integer literal, decimal or `0b`-prefixed binary.
    pub(crate) fn number(&mut self) -> Result<u64, ParseError> {
        let offset = self.offset();
        match self.next() {
            Tok::Ident(s) => parse_number(&s).ok_or_else(|| {
                ParseError::new(offset, format!("`{s}` is not a non-negative integer"))
            }),
            other => Err(ParseError::new(
                offset,
                format!("expected a number, found {}", other.describe()),
            )),
        }
    }
}

pub(crate) fn parse_number(s: &str) -> Option<u64> {
    if let Some(bin) = s.strip_prefix("0b") {
        if bin.is_empty() {
            return None;
        }
        u64::from_str_radix(bin, 2).ok()
    } else if s.bytes().all(|b| b.is_ascii_digit()) {
        s.parse().ok()
    } else {
        None
    }
}

/// Resolves letter names while parsing: either against a fixed alphabet, or
/// by collecting every name seen so the alphabet can be inferred afterwards.
pub(crate) enum Letters<'a> {
    Fixed(&'a Alphabet),
    Infer(Vec<String>),
}

impl Letters<'_> {
    pub(crate) fn resolve(&mut self, name: &str, offset: usize) -> Result<usize, ParseError> {
        match self {
            Letters::Fixed(alphabet) => alphabet
                .index_of(name)
                .ok_or_else(|| ParseError::new(offset, format!("unknown letter `{name}`"))),
            Letters::Infer(seen) => Ok(match seen.iter().position(|s| s == name) {
                Some(i) => i,
                None => {
                    seen.push(name.to_string());
                    seen.len() - 1
                }
            }),
        }
    }

    /// For inferred alphabets: the sorted alphabet plus the remapping from
    /// first-seen indices to sorted indices.
    pub(crate) fn finish(self, extra: &[&str]) -> Option<(Alphabet, Vec<usize>)> {
        match self {
            Letters::Fixed(_) => None,
            Letters::Infer(seen) => {
                let mut names: Vec<String> = seen.clone();
                for e in extra {
                    if !names.iter().any(|n| n == e) {
                        names.push(e.to_string());
                    }
                }
                names.sort();
                let remap = seen
                    .iter()
                    .map(|s| names.iter().position(|n| n == s).unwrap())
                    .collect();
                // An empty inference yields no alphabet; callers reject that case.
                Alphabet::new(names).ok().map(|a| (a, remap))
            }
        }
    }
}

/// Renders a letter name so that it re-lexes as a single token.
pub(crate) fn letter_token(name: &str, reserved: &[&str]) -> String {
    if name.chars().all(is_ident_char) && !reserved.contains(&name) {
        name.to_string()
    } else {
        format!("'{name}'")
    }
}
