//! Farey words and the little bit of free-group arithmetic needed to test them.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::slope::{is_neighbor, Slope, SlopeError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("1/0 has no Farey word")]
    FormalVertex,
    #[error(transparent)]
    Slope(#[from] SlopeError),
    #[error("prefix of W({0}) does not cyclically reduce to a single letter")]
    ReductionFailed(Slope),
    #[error("invalid letter {0:?}; expected one of x, X, y, Y")]
    BadLetter(char),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Generator {
    X,
    Y,
}

/// `X`, `Y` or an inverse; `inverse == true` prints lowercase.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Letter {
    pub generator: Generator,
    pub inverse: bool,
}

impl Letter {
    pub const X: Letter = Letter {
        generator: Generator::X,
        inverse: false,
    };
    pub const Y: Letter = Letter {
        generator: Generator::Y,
        inverse: false,
    };
    pub const X_INV: Letter = Letter {
        generator: Generator::X,
        inverse: true,
    };
    pub const Y_INV: Letter = Letter {
        generator: Generator::Y,
        inverse: true,
    };

    pub fn exponent(self) -> i8 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    pub fn inv(self) -> Letter {
        Letter {
            inverse: !self.inverse,
            ..self
        }
    }

    pub fn as_char(self) -> char {
        match (self.generator, self.inverse) {
            (Generator::X, false) => 'X',
            (Generator::X, true) => 'x',
            (Generator::Y, false) => 'Y',
            (Generator::Y, true) => 'y',
        }
    }

    pub fn from_char(c: char) -> Result<Letter, WordError> {
        match c {
            'X' => Ok(Letter::X),
            'x' => Ok(Letter::X_INV),
            'Y' => Ok(Letter::Y),
            'y' => Ok(Letter::Y_INV),
            _ => Err(WordError::BadLetter(c)),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Self { letters }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word { letters }
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|l| l.inv()).collect(),
        }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.letters
            .iter()
            .try_for_each(|l| write!(f, "{}", l.as_char()))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

impl FromStr for Word {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.trim()
            .chars()
            .map(Letter::from_char)
            .collect::<Result<_, _>>()
            .map(Word::new)
    }
}

/// `W_{p/q}`: letter `i` is `Y^±` for odd `i` and `X^±` for even `i`, with a
/// positive exponent iff `⌊ip/q⌋ + 1 + i` is odd.
pub fn farey_word(s: Slope) -> Result<Word, WordError> {
    if s.is_infinity() {
        return Err(WordError::FormalVertex);
    }
    let (p, q) = (u128::from(s.p()), u128::from(s.q()));
    let letters = (1..=2 * q)
        .map(|i| {
            let generator = if i % 2 == 1 {
                Generator::Y
            } else {
                Generator::X
            };
            let positive = ((i * p) / q + 1 + i) % 2 == 1;
            Letter {
                generator,
                inverse: !positive,
            }
        })
        .collect();
    Ok(Word { letters })
}

/// `W_a W_b` with the exponent of letter `q_a + q_b` negated; this is
/// `W_{a ⊕ b}` for neighbours `a < b`.
pub fn concat_flip(a: Slope, b: Slope) -> Result<Word, WordError> {
    if a.is_infinity() || b.is_infinity() {
        return Err(WordError::FormalVertex);
    }
    if !is_neighbor(a, b) {
        return Err(SlopeError::NotNeighbours(a, b).into());
    }
    let mut w = farey_word(a)?.concat(&farey_word(b)?);
    let k = (a.q() + b.q()) as usize - 1;
    w.letters[k] = w.letters[k].inv();
    Ok(w)
}

/// Cancels adjacent inverse pairs.
pub fn free_reduce(w: &Word) -> Word {
    let mut out: Vec<Letter> = Vec::with_capacity(w.len());
    for &l in &w.letters {
        if out.last() == Some(&l.inv()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    Word { letters: out }
}

/// Free reduction followed by cancellation of inverse first/last pairs.
pub fn cyclic_reduce(w: &Word) -> Word {
    let reduced = free_reduce(w);
    let letters = reduced.letters;
    let (mut lo, mut hi) = (0, letters.len());
    while hi - lo >= 2 && letters[lo] == letters[hi - 1].inv() {
        lo += 1;
        hi -= 1;
    }
    Word {
        letters: letters[lo..hi].to_vec(),
    }
}

/// The single letter that the first `2q − 1` letters of `W_s` are conjugate to.
pub fn prefix_conjugacy(s: Slope) -> Result<Letter, WordError> {
    let w = farey_word(s)?;
    let prefix = Word::new(w.letters[..w.len() - 1].to_vec());
    match cyclic_reduce(&prefix).letters.as_slice() {
        [l] => Ok(*l),
        _ => Err(WordError::ReductionFailed(s)),
    }
}
