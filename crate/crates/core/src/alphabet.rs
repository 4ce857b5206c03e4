//! Alphabets, symbols and words.
//!
//! A [`Symbol`] is a dense index into an [`Alphabet`]; the order of the letters
//! in the alphabet is the order used for lexicographic comparison of words.

use std::fmt;

use crate::error::{Error, Result};

/// Index of a letter inside its alphabet.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol(pub u32);

impl Symbol {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A word is a sequence of symbols of one alphabet. The empty word is ε.
pub type Word = Vec<Symbol>;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    letters: Vec<String>,
}

impl Alphabet {
    /// Builds an alphabet from distinct, whitespace-free, non-empty letters.
    ///
    /// An empty letter list is accepted: subalphabets of blind agents are empty.
    /// Callers that need a non-empty alphabet check [`Alphabet::is_empty`].
    pub fn new<I, S>(letters: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let letters: Vec<String> = letters.into_iter().map(Into::into).collect();
        for (i, letter) in letters.iter().enumerate() {
            if letter.is_empty() || letter.chars().any(char::is_whitespace) {
                return Err(Error::InvalidAlphabet(format!("bad letter {letter:?}")));
            }
            if letter == "eps" || letter.contains('#') {
                return Err(Error::InvalidAlphabet(format!(
                    "reserved letter {letter:?}"
                )));
            }
            if letters[..i].contains(letter) {
                return Err(Error::InvalidAlphabet(format!(
                    "duplicate letter {letter:?}"
                )));
            }
        }
        Ok(Alphabet { letters })
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

    pub fn symbols(&self) -> impl Iterator<Item = Symbol> + Clone {
        (0..self.letters.len() as u32).map(Symbol)
    }

    pub fn letter(&self, symbol: Symbol) -> &str {
        &self.letters[symbol.index()]
    }

    pub fn symbol(&self, letter: &str) -> Option<Symbol> {
        self.letters
            .iter()
            .position(|l| l == letter)
            .map(|i| Symbol(i as u32))
    }

    pub fn contains(&self, symbol: Symbol) -> bool {
        symbol.index() < self.letters.len()
    }

    /// True when every letter is a single character, so words can be
    /// written without separators.
    pub fn is_compact(&self) -> bool {
        self.letters.iter().all(|l| l.chars().count() == 1)
    }

    /// Parses a word. Compact alphabets accept both `abb` and `a b b`;
    /// other alphabets need whitespace-separated letters. The empty string is ε.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let mut word = Vec::new();
        for token in text.split_whitespace() {
            if let Some(s) = self.symbol(token) {
                word.push(s);
            } else if self.is_compact() {
                for c in token.chars() {
                    let mut buf = [0u8; 4];
                    let letter = c.encode_utf8(&mut buf);
                    word.push(
                        self.symbol(letter)
                            .ok_or_else(|| Error::UnknownLetter(letter.to_string()))?,
                    );
                }
            } else {
                return Err(Error::UnknownLetter(token.to_string()));
            }
        }
        Ok(word)
    }

    /// Renders a word; ε is the empty string.
    pub fn format_word(&self, word: &[Symbol]) -> String {
        let sep = if self.is_compact() { "" } else { " " };
        word.iter()
            .map(|&s| self.letter(s))
            .collect::<Vec<_>>()
            .join(sep)
    }

    /// Like [`Alphabet::format_word`] but renders ε visibly.
    pub fn display_word(&self, word: &[Symbol]) -> String {
        if word.is_empty() {
            "ε".to_string()
        } else {
            self.format_word(word)
        }
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.letters.join(","))
    }
}
