//! Letters, sub-alphabets and finite words.
//!
//! Letters are drawn from the ordered alphabet `a < b < … < h`. Words
//! serialize as plain contiguous strings; the empty word prints as `""`.

use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest supported alphabet.
pub const MAX_LETTERS: usize = 8;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter(u8);

impl Letter {
    pub fn new(index: usize) -> Result<Self> {
        if index < MAX_LETTERS {
            Ok(Letter(index as u8))
        } else {
            Err(Error::InvalidLetter((b'a' + index.min(25) as u8) as char))
        }
    }

    pub fn from_char(c: char) -> Result<Self> {
        match c {
            'a'..='h' => Ok(Letter(c as u8 - b'a')),
            _ => Err(Error::InvalidLetter(c)),
        }
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn to_char(self) -> char {
        (b'a' + self.0) as char
    }

    /// All letters of the maximal alphabet, in order.
    pub fn all() -> impl Iterator<Item = Letter> + Clone {
        (0..MAX_LETTERS as u8).map(Letter)
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_char())
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_char())
    }
}

impl FromStr for Letter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut chars = s.trim().chars();
        match (chars.next(), chars.next()) {
            (Some(c), None) => Letter::from_char(c),
            _ => Err(Error::Parse(format!("expected a single letter, got {s:?}"))),
        }
    }
}

/// A sub-alphabet, stored as a bit set.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct LetterSet(u8);

impl LetterSet {
    pub const EMPTY: LetterSet = LetterSet(0);

    /// The first `n` letters `a, b, …`.
    pub fn first_n(n: usize) -> Result<Self> {
        if n > MAX_LETTERS {
            return Err(Error::AlphabetTooLarge(n));
        }
        Ok(LetterSet(((1u16 << n) - 1) as u8))
    }

    pub fn singleton(l: Letter) -> Self {
        LetterSet(1 << l.0)
    }

    pub fn from_bits(bits: u8) -> Self {
        LetterSet(bits)
    }

    pub fn bits(self) -> u8 {
        self.0
    }

    pub fn contains(self, l: Letter) -> bool {
        self.0 & (1 << l.0) != 0
    }

    pub fn insert(&mut self, l: Letter) {
        self.0 |= 1 << l.0;
    }

    pub fn with(mut self, l: Letter) -> Self {
        self.insert(l);
        self
    }

    pub fn union(self, other: LetterSet) -> Self {
        LetterSet(self.0 | other.0)
    }

    pub fn is_subset(self, other: LetterSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = Letter> + Clone {
        Letter::all().filter(move |&l| self.contains(l))
    }

    /// True when the set is `{a, b, …}` for some prefix of the alphabet.
    pub fn is_initial_segment(self) -> bool {
        self.0 & self.0.wrapping_add(1) == 0
    }

    pub fn min(self) -> Option<Letter> {
        self.iter().next()
    }
}

impl FromIterator<Letter> for LetterSet {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        let mut s = LetterSet::EMPTY;
        for l in iter {
            s.insert(l);
        }
        s
    }
}

impl fmt::Debug for LetterSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Set form `{a,b,c}`.
impl fmt::Display for LetterSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, l) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{l}")?;
        }
        f.write_str("}")
    }
}

/// Accepts both `{a,b}` and the compact `ab`.
impl FromStr for LetterSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let inner = s
            .strip_prefix('{')
            .and_then(|r| r.strip_suffix('}'))
            .unwrap_or(s);
        inner
            .chars()
            .filter(|c| !c.is_whitespace() && *c != ',')
            .map(Letter::from_char)
            .collect()
    }
}

/// An immutable finite word.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn first(&self) -> Option<Letter> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<Letter> {
        self.0.last().copied()
    }

    pub fn alph(&self) -> LetterSet {
        self.0.iter().copied().collect()
    }

    pub fn prefix(&self, n: usize) -> Word {
        Word(self.0[..n.min(self.len())].to_vec())
    }

    pub fn slice(&self, start: usize, end: usize) -> Word {
        Word(self.0[start..end].to_vec())
    }

    pub fn concat(&self, other: &[Letter]) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(other);
        Word(v)
    }

    pub fn push(mut self, l: Letter) -> Word {
        self.0.push(l);
        self
    }

    pub fn is_prefix_of(&self, other: &[Letter]) -> bool {
        other.starts_with(&self.0)
    }

    /// All words over `alphabet` of length exactly `n`, in lexicographic order.
    pub fn all_of_length(alphabet: LetterSet, n: usize) -> impl Iterator<Item = Word> {
        let letters: Vec<Letter> = alphabet.iter().collect();
        let k = letters.len();
        let total = if k == 0 {
            usize::from(n == 0)
        } else {
            k.checked_pow(n as u32).expect("word enumeration overflows")
        };
        (0..total).map(move |mut code| {
            let mut v = vec![letters.first().copied().unwrap_or(Letter(0)); n];
            for slot in v.iter_mut().rev() {
                *slot = letters[code % k];
                code /= k;
            }
            Word(v)
        })
    }

    /// All words over `alphabet` of length `0..=max_len`.
    pub fn all_up_to(alphabet: LetterSet, max_len: usize) -> impl Iterator<Item = Word> {
        (0..=max_len).flat_map(move |n| Word::all_of_length(alphabet, n))
    }
}

impl Deref for Word {
    type Target = [Letter];

    fn deref(&self) -> &[Letter] {
        &self.0
    }
}

impl From<&[Letter]> for Word {
    fn from(s: &[Letter]) -> Self {
        Word(s.to_vec())
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            f.write_str("ε")
        } else {
            write!(f, "\"{self}\"")
        }
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars().map(Letter::from_char).collect::<Result<Vec<_>>>().map(Word)
    }
}

/// Shorthand used throughout the tests: panics on invalid input.
pub fn w(s: &str) -> Word {
    s.parse().expect("invalid word literal")
}

/// Shorthand for a letter literal.
pub fn l(c: char) -> Letter {
    Letter::from_char(c).expect("invalid letter literal")
}
