//! Finite alphabets with two designated letters.
//!
//! The first letter plays the role of `a` and the second the role of `b` in
//! the word-mode canonical set (see [`crate::rewrite::in_ct`]). Tree mode is
//! happy with a single letter.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// Characters that can never be alphabet letters because the text format
/// reserves them: variables are `x<digits>`, the context hole is `y`, the
/// neutral element is `_`, and `(`, `)`, `.` carry tree structure.
const RESERVED: &[char] = &['x', 'y', '_', '(', ')', '.'];

/// An ordered finite set of distinct letters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    letters: Vec<char>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AlphabetError {
    Empty,
    Duplicate(char),
    Reserved(char),
    NotALetter(char),
}

impl fmt::Display for AlphabetError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlphabetError::Empty => write!(f, "alphabet must contain at least one letter"),
            AlphabetError::Duplicate(c) => write!(f, "duplicate letter '{c}'"),
            AlphabetError::Reserved(c) => {
                write!(f, "'{c}' is reserved by the text format and cannot be a letter")
            }
            AlphabetError::NotALetter(c) => {
                write!(f, "'{c}' is not a lowercase ascii letter")
            }
        }
    }
}

impl core::error::Error for AlphabetError {}

impl Alphabet {
    pub fn new(letters: impl IntoIterator<Item = char>) -> Result<Self, AlphabetError> {
        let letters: Vec<char> = letters.into_iter().collect();
        if letters.is_empty() {
            return Err(AlphabetError::Empty);
        }
        for (i, &c) in letters.iter().enumerate() {
            if !c.is_ascii_lowercase() {
                return Err(AlphabetError::NotALetter(c));
            }
            if RESERVED.contains(&c) {
                return Err(AlphabetError::Reserved(c));
            }
            if letters[..i].contains(&c) {
                return Err(AlphabetError::Duplicate(c));
            }
        }
        Ok(Alphabet { letters })
    }

    /// Parse from a plain string of letters, e.g. `"ab"` or `"abcd"`.
    pub fn parse(s: &str) -> Result<Self, AlphabetError> {
        Self::new(s.chars())
    }

    pub fn letters(&self) -> &[char] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        false // by construction
    }

    pub fn contains(&self, c: char) -> bool {
        self.letters.contains(&c)
    }

    /// The designated letter `a` (always present).
    pub fn first(&self) -> char {
        self.letters[0]
    }

    /// The designated letter `b`, distinct from `a` when the alphabet has two
    /// or more letters.
    pub fn second(&self) -> Option<char> {
        self.letters.get(1).copied()
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.letters.iter().collect();
        write!(f, "{s}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn designated_letters() {
        let sigma = Alphabet::parse("ab").unwrap();
        assert_eq!(sigma.first(), 'a');
        assert_eq!(sigma.second(), Some('b'));
        let one = Alphabet::parse("a").unwrap();
        assert_eq!(one.second(), None);
    }

    #[test]
    fn rejects_bad_letters() {
        assert_eq!(Alphabet::parse(""), Err(AlphabetError::Empty));
        assert_eq!(Alphabet::parse("aa"), Err(AlphabetError::Duplicate('a')));
        assert_eq!(Alphabet::parse("ax"), Err(AlphabetError::Reserved('x')));
        assert_eq!(Alphabet::parse("ay"), Err(AlphabetError::Reserved('y')));
        assert_eq!(Alphabet::parse("aB"), Err(AlphabetError::NotALetter('B')));
    }
}
