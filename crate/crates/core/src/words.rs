//! Braid words in σ₁, σ₂ and their inverses.
//!
//! Letters are stored as signed generator indices: `1` is σ₁, `-2` is σ₂⁻¹.
//! Two text syntaxes are accepted. Compact syntax uses `a A b B D d`
//! (`D` = `aba`, `d` = `ABA`); numeric syntax is whitespace separated
//! integers. Output is always compact, and the empty word prints as `1`.

pub mod burau;

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

pub use burau::{burau_image, burau_trace_at_minus_one, words_equal, BurauMatrix, LaurentPoly};

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BraidWord {
    letters: Vec<i8>,
}

impl BraidWord {
    pub fn new() -> Self {
        Self::default()
    }

    /// Panics if a letter is not one of ±1, ±2.
    pub fn from_letters(letters: Vec<i8>) -> Self {
        assert!(letters.iter().all(|l| matches!(l, 1 | -1 | 2 | -2)), "braid letters must be ±1 or ±2");
        BraidWord { letters }
    }

    pub fn letters(&self) -> &[i8] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn delta() -> Self {
        BraidWord { letters: vec![1, 2, 1] }
    }

    pub fn pow(&self, n: usize) -> Self {
        BraidWord { letters: self.letters.repeat(n) }
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        for &l in &self.letters {
            let c = match l {
                1 => 'a',
                -1 => 'A',
                2 => 'b',
                _ => 'B',
            };
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl FromStr for BraidWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_word(s)
    }
}

fn is_compact_char(c: char) -> bool {
    matches!(c, 'a' | 'A' | 'b' | 'B' | 'D' | 'd')
}

fn is_numeric_char(c: char) -> bool {
    c.is_ascii_digit() || matches!(c, '-' | '+' | '−')
}

/// Parses compact or numeric syntax, picking the syntax from the first
/// non-blank character.
pub fn parse_word(text: &str) -> Result<BraidWord> {
    let first = text.chars().find(|c| !c.is_whitespace());
    match first {
        None => Ok(BraidWord::new()),
        Some(c) if is_numeric_char(c) => parse_numeric(text),
        Some(_) => parse_compact(text),
    }
}

fn parse_compact(text: &str) -> Result<BraidWord> {
    let mut letters = Vec::with_capacity(text.len());
    for (pos, c) in text.chars().enumerate() {
        match c {
            'a' => letters.push(1),
            'A' => letters.push(-1),
            'b' => letters.push(2),
            'B' => letters.push(-2),
            'D' => letters.extend_from_slice(&[1, 2, 1]),
            'd' => letters.extend_from_slice(&[-1, -2, -1]),
            c if c.is_whitespace() => {}
            c if is_numeric_char(c) => {
                let token: String = text.chars().skip(pos).take_while(|c| !c.is_whitespace()).collect();
                return Err(Error::MixedSyntax { token });
            }
            ch => return Err(Error::UnknownCharacter { ch, pos }),
        }
    }
    Ok(BraidWord { letters })
}

fn parse_numeric(text: &str) -> Result<BraidWord> {
    if let Some((pos, ch)) = text.chars().enumerate().find(|&(_, c)| !c.is_whitespace() && !is_numeric_char(c)) {
        if is_compact_char(ch) {
            let token = text.split_whitespace().find(|t| t.contains(ch)).unwrap_or_default();
            return Err(Error::MixedSyntax { token: token.to_string() });
        }
        return Err(Error::UnknownCharacter { ch, pos });
    }
    let mut letters = Vec::new();
    for token in text.split_whitespace() {
        let value: i64 = token.replace('−', "-").parse().map_err(|_| Error::GeneratorOutOfRange { token: token.to_string() })?;
        match value {
            1 | -1 | 2 | -2 => letters.push(value as i8),
            _ => return Err(Error::GeneratorOutOfRange { token: token.to_string() }),
        }
    }
    Ok(BraidWord { letters })
}

/// Deletes adjacent inverse pairs until none remain.
pub fn free_reduce(w: &BraidWord) -> BraidWord {
    let mut out: Vec<i8> = Vec::with_capacity(w.len());
    for &l in &w.letters {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    BraidWord { letters: out }
}

pub fn invert(w: &BraidWord) -> BraidWord {
    BraidWord { letters: w.letters.iter().rev().map(|l| -l).collect() }
}

pub fn concat(w1: &BraidWord, w2: &BraidWord) -> BraidWord {
    let mut letters = Vec::with_capacity(w1.len() + w2.len());
    letters.extend_from_slice(&w1.letters);
    letters.extend_from_slice(&w2.letters);
    BraidWord { letters }
}

/// g⁻¹ w g.
pub fn conjugate(w: &BraidWord, g: &BraidWord) -> BraidWord {
    concat(&concat(&invert(g), w), g)
}

pub fn exponent_sum(w: &BraidWord) -> i64 {
    w.letters.iter().map(|&l| l.signum() as i64).sum()
}

/// The automorphism ε sending σᵢ to σᵢ⁻¹.
pub fn mirror_epsilon(w: &BraidWord) -> BraidWord {
    BraidWord { letters: w.letters.iter().map(|l| -l).collect() }
}
