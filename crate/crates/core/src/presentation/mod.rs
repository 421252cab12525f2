//! Finite group presentations `<g_1, ..., g_p | r_1, ..., r_q>`.

mod parse;

use std::collections::HashSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::words::{WeightVector, Word, WordError};

pub use parse::parse_word;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error("syntax error at position {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("duplicate generator `{0}`")]
    DuplicateGenerator(String),
    #[error("invalid generator name `{0}`")]
    InvalidName(String),
    #[error("unknown generator `{name}` at position {pos}")]
    UnknownGenerator { name: String, pos: usize },
    #[error("relator {index} reduces to the identity")]
    IdentityRelator { index: usize },
    #[error("genus must be at least 1, got {0}")]
    InvalidGenus(usize),
    #[error("weight vector has rank {got}, presentation has {expected} generators")]
    RankMismatch { expected: usize, got: usize },
    #[error("invalid JSON presentation: {0}")]
    Json(String),
    #[error(transparent)]
    Word(#[from] WordError),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Presentation {
    generators: Vec<String>,
    relators: Vec<Word>,
}

fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Outcome of checking that a weight vector vanishes on every relator.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeightValidity {
    /// `(relator index, weight)` for each relator with nonzero weight.
    pub failing: Vec<(usize, i64)>,
    pub trivial_class: bool,
}

impl WeightValidity {
    pub fn is_valid(&self) -> bool {
        self.failing.is_empty()
    }
}

#[derive(Serialize, Deserialize)]
struct PresentationJson {
    generators: Vec<String>,
    relators: Vec<Vec<(String, i64)>>,
}

impl Presentation {
    /// Validates names and relators. Relators are freely reduced here.
    pub fn new(generators: Vec<String>, relators: Vec<Word>) -> Result<Self, PresentationError> {
        let mut seen = HashSet::new();
        for name in &generators {
            if !valid_name(name) {
                return Err(PresentationError::InvalidName(name.clone()));
            }
            if !seen.insert(name.as_str()) {
                return Err(PresentationError::DuplicateGenerator(name.clone()));
            }
        }
        let rank = generators.len();
        let mut reduced = Vec::with_capacity(relators.len());
        for (index, r) in relators.into_iter().enumerate() {
            let r = Word::reduce(r.letters().iter().map(|l| (l.generator, l.exponent)), rank)?;
            if r.is_identity() {
                return Err(PresentationError::IdentityRelator { index });
            }
            reduced.push(r);
        }
        Ok(Presentation {
            generators,
            relators: reduced,
        })
    }

    pub fn parse(text: &str) -> Result<Self, PresentationError> {
        let (generators, raw) = parse::parse_presentation(text)?;
        let relators = raw.into_iter().map(Word::free_reduce).collect();
        Presentation::new(generators, relators)
    }

    pub fn from_json(text: &str) -> Result<Self, PresentationError> {
        let json: PresentationJson =
            serde_json::from_str(text).map_err(|e| PresentationError::Json(e.to_string()))?;
        Presentation::from_json_value(json)
    }

    fn from_json_value(json: PresentationJson) -> Result<Self, PresentationError> {
        let index = |name: &str| {
            json.generators
                .iter()
                .position(|g| g == name)
                .ok_or_else(|| PresentationError::UnknownGenerator {
                    name: name.to_string(),
                    pos: 0,
                })
        };
        let mut relators = Vec::new();
        for r in &json.relators {
            let mut raw = Vec::new();
            for (name, exponent) in r {
                raw.push((index(name)?, *exponent));
            }
            relators.push(Word::free_reduce(raw));
        }
        Presentation::new(json.generators.clone(), relators)
    }

    pub fn to_json(&self) -> String {
        let json = PresentationJson {
            generators: self.generators.clone(),
            relators: self
                .relators
                .iter()
                .map(|r| {
                    r.letters()
                        .iter()
                        .map(|l| (self.generators[l.generator].clone(), l.exponent))
                        .collect()
                })
                .collect(),
        };
        serde_json::to_string(&json).expect("presentation serializes")
    }

    /// The free group on the given generator names.
    pub fn free(generators: &[&str]) -> Result<Self, PresentationError> {
        Presentation::new(
            generators.iter().map(|s| s.to_string()).collect(),
            Vec::new(),
        )
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    /// Number of generators, `p`.
    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    /// Number of relators, `q`.
    pub fn relator_count(&self) -> usize {
        self.relators.len()
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == name)
    }

    /// `p - q`.
    pub fn deficiency(&self) -> i64 {
        self.rank() as i64 - self.relator_count() as i64
    }

    /// Presentation of `G_1 * G_2`. Names present in both factors get a
    /// `_1` / `_2` suffix.
    pub fn free_product(&self, other: &Presentation) -> Presentation {
        let (left, right) = disjoint_names(&self.generators, &other.generators);
        let shift = self.rank();
        let mut relators = self.relators.clone();
        relators.extend(other.relators.iter().map(|r| shifted(r, shift)));
        let mut generators = left;
        generators.extend(right);
        Presentation {
            generators,
            relators,
        }
    }

    /// Presentation of `G_1 x G_2`: the free product plus every commutator
    /// `[g, h]` with `g` from the first factor and `h` from the second.
    pub fn direct_product(&self, other: &Presentation) -> Presentation {
        let mut product = self.free_product(other);
        let shift = self.rank();
        for i in 0..self.rank() {
            for j in 0..other.rank() {
                product.relators.push(commutator(
                    &Word::generator(i, 1),
                    &Word::generator(shift + j, 1),
                ));
            }
        }
        product
    }

    /// Standard one-relator presentation of the closed surface of genus `genus`.
    pub fn surface(genus: usize, orientable: bool) -> Result<Self, PresentationError> {
        if genus < 1 {
            return Err(PresentationError::InvalidGenus(genus));
        }
        if orientable {
            let mut generators = Vec::with_capacity(2 * genus);
            let mut relator = Word::identity();
            for k in 1..=genus {
                generators.push(format!("a{k}"));
                generators.push(format!("b{k}"));
                let (a, b) = (Word::generator(2 * k - 2, 1), Word::generator(2 * k - 1, 1));
                relator = relator.multiply(&commutator(&a, &b));
            }
            Presentation::new(generators, vec![relator])
        } else {
            let generators = (1..=genus).map(|k| format!("a{k}")).collect();
            let relator = Word::free_reduce((0..genus).map(|i| (i, 2)));
            Presentation::new(generators, vec![relator])
        }
    }

    pub fn validate_weight(&self, u: &WeightVector) -> Result<WeightValidity, PresentationError> {
        if u.rank() != self.rank() {
            return Err(PresentationError::RankMismatch {
                expected: self.rank(),
                got: u.rank(),
            });
        }
        let mut failing = Vec::new();
        for (j, r) in self.relators.iter().enumerate() {
            let w = r.u_weight(u)?;
            if w != 0 {
                failing.push((j, w));
            }
        }
        Ok(WeightValidity {
            failing,
            trivial_class: u.is_trivial(),
        })
    }

    /// Rank of `H_1 (x) Q`, i.e. `p` minus the rational rank of the relator
    /// exponent-sum matrix.
    pub fn abelianization_rank(&self) -> usize {
        let rows: Vec<Vec<i64>> = self
            .relators
            .iter()
            .map(|r| {
                r.abelianize(self.rank())
                    .expect("relators use declared generators")
            })
            .collect();
        self.rank() - integer_rank(&rows, self.rank())
    }

    pub fn render(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{} | ", self.generators.join(", "))?;
        for (j, r) in self.relators.iter().enumerate() {
            if j > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}", r.display_with(&self.generators))?;
        }
        f.write_str(">")
    }
}

impl std::str::FromStr for Presentation {
    type Err = PresentationError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Presentation::parse(s)
    }
}

pub fn commutator(x: &Word, y: &Word) -> Word {
    x.multiply(y).multiply(&x.invert()).multiply(&y.invert())
}

fn shifted(w: &Word, shift: usize) -> Word {
    Word::free_reduce(
        w.letters()
            .iter()
            .map(|l| (l.generator + shift, l.exponent)),
    )
}

fn disjoint_names(left: &[String], right: &[String]) -> (Vec<String>, Vec<String>) {
    let clash: HashSet<&String> = left.iter().filter(|n| right.contains(n)).collect();
    let mut taken: HashSet<String> = left.iter().chain(right).cloned().collect();
    let mut rename = |names: &[String], suffix: &str| -> Vec<String> {
        names
            .iter()
            .map(|n| {
                if !clash.contains(n) {
                    return n.clone();
                }
                let mut candidate = format!("{n}{suffix}");
                while taken.contains(&candidate) {
                    candidate.push_str(suffix);
                }
                taken.insert(candidate.clone());
                candidate
            })
            .collect()
    };
    let l = rename(left, "_1");
    let r = rename(right, "_2");
    (l, r)
}

/// Rank over the rationals of an integer matrix, by fraction-free elimination.
pub(crate) fn integer_rank(rows: &[Vec<i64>], cols: usize) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let mut rank = 0;
    let mut prev = BigInt::from(1);
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        for i in rank + 1..m.len() {
            for j in c + 1..cols {
                let v = &m[rank][c] * &m[i][j] - &m[i][c] * &m[rank][j];
                m[i][j] = v / &prev;
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[rank][c].clone();
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}
