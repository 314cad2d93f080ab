//! Alphabets and finite words.
//!
//! Letters are identified by their index in an [`Alphabet`]; a [`Word`] is a
//! sequence of such indices. Positions exposed to users are 1-based, matching
//! marked words `(w, i)` with `1 <= i <= |w|`.

use std::fmt;
use std::ops::Deref;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlphabetError {
    #[error("alphabet must contain at least one letter")]
    Empty,
    #[error("duplicate letter `{0}`")]
    Duplicate(String),
    #[error("invalid letter name `{0}`")]
    InvalidName(String),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WordError {
    #[error("unknown letter `{0}`")]
    UnknownLetter(String),
    #[error("unterminated quoted letter")]
    Unterminated,
    #[error("letter index {index} out of range for an alphabet of size {size}")]
    OutOfRange { index: usize, size: usize },
}

/// An ordered, duplicate-free, nonempty list of letter names.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<String>", into = "Vec<String>")]
pub struct Alphabet {
    letters: Vec<String>,
}

impl TryFrom<Vec<String>> for Alphabet {
    type Error = AlphabetError;

    fn try_from(letters: Vec<String>) -> Result<Self, Self::Error> {
        Alphabet::new(letters)
    }
}

impl From<Alphabet> for Vec<String> {
    fn from(a: Alphabet) -> Self {
        a.letters
    }
}

impl Alphabet {
    pub fn new<I, S>(letters: I) -> Result<Self, AlphabetError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let letters: Vec<String> = letters.into_iter().map(Into::into).collect();
        if letters.is_empty() {
            return Err(AlphabetError::Empty);
        }
        for (i, l) in letters.iter().enumerate() {
            if l.is_empty() || l.contains('\'') || l.chars().any(char::is_whitespace) {
                return Err(AlphabetError::InvalidName(l.clone()));
            }
            if letters[..i].contains(l) {
                return Err(AlphabetError::Duplicate(l.clone()));
            }
        }
        Ok(Alphabet { letters })
    }

    /// Alphabet of single-character letters, e.g. `Alphabet::from_chars("ab")`.
    pub fn from_chars(chars: &str) -> Result<Self, AlphabetError> {
        Alphabet::new(chars.chars().map(String::from))
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[String] {
        &self.letters
    }

    pub fn name(&self, letter: usize) -> &str {
        &self.letters[letter]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.letters.iter().position(|l| l == name)
    }

    fn single_char(&self) -> bool {
        self.letters.iter().all(|l| l.chars().count() == 1)
    }

    /// Parses a word written either as a bare string of single-character
    /// letters (`abab`) or as whitespace-separated letter names, optionally
    /// single-quoted (`g2 g1 0 'g1' 1`).
    pub fn parse_word(&self, text: &str) -> Result<Word, WordError> {
        let mut letters = Vec::new();
        let mut rest = text.trim_start();
        while !rest.is_empty() {
            if let Some(q) = rest.strip_prefix('\'') {
                let close = q.find('\'').ok_or(WordError::Unterminated)?;
                let name = &q[..close];
                letters.push(
                    self.index_of(name)
                        .ok_or_else(|| WordError::UnknownLetter(name.to_string()))?,
                );
                rest = q[close + 1..].trim_start();
                continue;
            }
            let end = rest
                .find(|c: char| c.is_whitespace() || c == '\'')
                .unwrap_or(rest.len());
            let token = &rest[..end];
            if let Some(i) = self.index_of(token) {
                letters.push(i);
            } else {
                for c in token.chars() {
                    let mut buf = [0u8; 4];
                    let name: &str = c.encode_utf8(&mut buf);
                    letters.push(
                        self.index_of(name)
                            .ok_or_else(|| WordError::UnknownLetter(token.to_string()))?,
                    );
                }
            }
            rest = rest[end..].trim_start();
        }
        Ok(Word(letters))
    }

    /// Inverse of [`Alphabet::parse_word`].
    pub fn format_word(&self, word: &Word) -> String {
        if self.single_char() {
            word.iter().map(|&l| self.name(l)).collect()
        } else {
            word.iter()
                .map(|&l| self.name(l))
                .collect::<Vec<_>>()
                .join(" ")
        }
    }

    /// All words of length `0..=max_len`, by length and then lexicographically
    /// by letter index.
    pub fn words(&self, max_len: usize) -> WordIter {
        WordIter::new(self.len(), max_len)
    }

    /// Checks that every letter of `word` is valid for this alphabet.
    pub fn check(&self, word: &Word) -> Result<(), WordError> {
        match word.iter().find(|&&l| l >= self.len()) {
            Some(&index) => Err(WordError::OutOfRange {
                index,
                size: self.len(),
            }),
            None => Ok(()),
        }
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.letters.join(","))
    }
}

/// A finite word: a sequence of letter indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(pub Vec<usize>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    /// Letter at 1-based position `pos`.
    pub fn at(&self, pos: usize) -> usize {
        self.0[pos - 1]
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn repeat(&self, times: usize) -> Word {
        Word(self.0.repeat(times))
    }

    /// `counts[a][p]` is the number of occurrences of letter `a` among the
    /// first `p` letters (0-based prefix of length `p`).
    pub fn prefix_counts(&self, alphabet_len: usize) -> Vec<Vec<u32>> {
        let mut counts = vec![vec![0u32; self.len() + 1]; alphabet_len];
        for (p, &l) in self.0.iter().enumerate() {
            for (a, row) in counts.iter_mut().enumerate() {
                row[p + 1] = row[p] + u32::from(a == l);
            }
        }
        counts
    }
}

impl Deref for Word {
    type Target = [usize];

    fn deref(&self) -> &[usize] {
        &self.0
    }
}

impl From<Vec<usize>> for Word {
    fn from(v: Vec<usize>) -> Self {
        Word(v)
    }
}

impl FromIterator<usize> for Word {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        Word(iter.into_iter().collect())
    }
}

/// Length-lexicographic enumeration of all words up to a length bound.
#[derive(Debug, Clone)]
pub struct WordIter {
    k: usize,
    max_len: usize,
    current: Option<Vec<usize>>,
}

impl WordIter {
    fn new(k: usize, max_len: usize) -> Self {
        WordIter {
            k,
            max_len,
            current: Some(Vec::new()),
        }
    }
}

impl Iterator for WordIter {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        let out = self.current.take()?;
        let mut next = out.clone();
        // Odometer increment; on overflow move to the next length.
        let mut i = next.len();
        loop {
            if i == 0 {
                if next.len() < self.max_len && self.k > 0 {
                    self.current = Some(vec![0; next.len() + 1]);
                }
                break;
            }
            i -= 1;
            next[i] += 1;
            if next[i] < self.k {
                self.current = Some(next);
                break;
            }
            next[i] = 0;
        }
        Some(Word(out))
    }
}
