//! Words in a free group and their images under integer weight classes.
//!
//! Generators are indexed from zero. A [`Word`] is always freely reduced: no
//! two adjacent syllables share a generator and no syllable has exponent zero.
//! Relations of a presentation are never applied to words.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("generator index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("rank mismatch: word uses generator {index} but the weight vector has rank {rank}")]
    RankMismatch { index: usize, rank: usize },
}

/// A syllable `g^k` with `k != 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Letter {
    pub generator: usize,
    pub exponent: i64,
}

impl Letter {
    pub fn new(generator: usize, exponent: i64) -> Self {
        Letter {
            generator,
            exponent,
        }
    }
}

/// A freely reduced word. The empty word is the identity.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word {
    letters: Vec<Letter>,
}

fn push_reduced(stack: &mut Vec<Letter>, letter: Letter) {
    if letter.exponent == 0 {
        return;
    }
    match stack.last_mut() {
        Some(top) if top.generator == letter.generator => {
            top.exponent += letter.exponent;
            if top.exponent == 0 {
                stack.pop();
            }
        }
        _ => stack.push(letter),
    }
}

impl Word {
    pub fn identity() -> Self {
        Word::default()
    }

    /// The single-letter word `g^exponent`.
    pub fn generator(generator: usize, exponent: i64) -> Self {
        Word::free_reduce([(generator, exponent)])
    }

    /// Freely reduces `raw`, checking every index against `rank`.
    pub fn reduce<I>(raw: I, rank: usize) -> Result<Self, WordError>
    where
        I: IntoIterator<Item = (usize, i64)>,
    {
        let mut stack = Vec::new();
        for (generator, exponent) in raw {
            if generator >= rank {
                return Err(WordError::IndexOutOfRange {
                    index: generator,
                    rank,
                });
            }
            push_reduced(&mut stack, Letter::new(generator, exponent));
        }
        Ok(Word { letters: stack })
    }

    /// Freely reduces `raw` without any rank check.
    pub fn free_reduce<I>(raw: I) -> Self
    where
        I: IntoIterator<Item = (usize, i64)>,
    {
        let mut stack = Vec::new();
        for (generator, exponent) in raw {
            push_reduced(&mut stack, Letter::new(generator, exponent));
        }
        Word { letters: stack }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    /// Number of syllables.
    pub fn syllable_len(&self) -> usize {
        self.letters.len()
    }

    /// Length in the generators `g^{±1}`.
    pub fn len(&self) -> usize {
        self.letters
            .iter()
            .map(|l| l.exponent.unsigned_abs() as usize)
            .sum()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Largest generator index occurring in the word.
    pub fn max_generator(&self) -> Option<usize> {
        self.letters.iter().map(|l| l.generator).max()
    }

    pub fn multiply(&self, other: &Word) -> Word {
        let mut stack = self.letters.clone();
        stack.reserve(other.letters.len());
        for &letter in &other.letters {
            push_reduced(&mut stack, letter);
        }
        Word { letters: stack }
    }

    pub fn invert(&self) -> Word {
        Word {
            letters: self
                .letters
                .iter()
                .rev()
                .map(|l| Letter::new(l.generator, -l.exponent))
                .collect(),
        }
    }

    /// Iterates the word one generator step at a time: `a^2 b^-1` yields
    /// `(a, +1), (a, +1), (b, -1)`.
    pub fn unit_steps(&self) -> impl Iterator<Item = (usize, bool)> + '_ {
        self.letters.iter().flat_map(|l| {
            std::iter::repeat_n(
                (l.generator, l.exponent > 0),
                l.exponent.unsigned_abs() as usize,
            )
        })
    }

    /// Image of the word under the homomorphism `g_i -> u_i` to the integers.
    pub fn u_weight(&self, u: &WeightVector) -> Result<i64, WordError> {
        let mut total = 0i64;
        for l in &self.letters {
            let w = u.get(l.generator).ok_or(WordError::RankMismatch {
                index: l.generator,
                rank: u.rank(),
            })?;
            total += l.exponent * w;
        }
        Ok(total)
    }

    /// Exponent-sum vector of length `rank`.
    pub fn abelianize(&self, rank: usize) -> Result<Vec<i64>, WordError> {
        let mut sums = vec![0i64; rank];
        for l in &self.letters {
            let slot = sums
                .get_mut(l.generator)
                .ok_or(WordError::IndexOutOfRange {
                    index: l.generator,
                    rank,
                })?;
            *slot += l.exponent;
        }
        Ok(sums)
    }

    /// Renders the word with the given generator names, `1` for the identity.
    pub fn display_with<'a>(&'a self, names: &'a [String]) -> WordDisplay<'a> {
        WordDisplay { word: self, names }
    }
}

// Shortlex: fewer syllables first, then lexicographic on syllables.
impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.letters
            .len()
            .cmp(&other.letters.len())
            .then_with(|| self.letters.cmp(&other.letters))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub struct WordDisplay<'a> {
    word: &'a Word,
    names: &'a [String],
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_identity() {
            return f.write_str("1");
        }
        for (k, l) in self.word.letters.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            match self.names.get(l.generator) {
                Some(name) => f.write_str(name)?,
                None => write!(f, "g{}", l.generator + 1)?,
            }
            if l.exponent != 1 {
                write!(f, "^{}", l.exponent)?;
            }
        }
        Ok(())
    }
}

/// Integer values `u(g_i)` of a class on the generators.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WeightVector(Vec<i64>);

impl WeightVector {
    pub fn new(weights: Vec<i64>) -> Self {
        WeightVector(weights)
    }

    pub fn zero(rank: usize) -> Self {
        WeightVector(vec![0; rank])
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn get(&self, index: usize) -> Option<i64> {
        self.0.get(index).copied()
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    /// The all-zero class.
    pub fn is_trivial(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    /// `u . v`; panics if the lengths differ.
    pub fn level(&self, exponents: &[i64]) -> i64 {
        assert_eq!(
            self.0.len(),
            exponents.len(),
            "weight/exponent arity mismatch"
        );
        self.0.iter().zip(exponents).map(|(a, b)| a * b).sum()
    }
}

impl From<Vec<i64>> for WeightVector {
    fn from(v: Vec<i64>) -> Self {
        WeightVector(v)
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}
