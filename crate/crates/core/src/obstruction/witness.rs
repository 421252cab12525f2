use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::ObstructionError;
use crate::presentation::Presentation;
use crate::words::Word;

/// A permutation of `{0, .., m-1}` stored as its image list.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation((0..degree).collect())
    }

    /// From 1-based one-line notation, e.g. `[2, 3, 1]` for the 3-cycle.
    pub fn from_one_line(images: &[usize]) -> Result<Self, ObstructionError> {
        let m = images.len();
        let mut seen = vec![false; m];
        let mut out = Vec::with_capacity(m);
        for &i in images {
            if i == 0 || i > m || seen[i - 1] {
                return Err(ObstructionError::MalformedPermutation(format!(
                    "{images:?}"
                )));
            }
            seen[i - 1] = true;
            out.push(i - 1);
        }
        Ok(Permutation(out))
    }

    pub fn one_line(&self) -> Vec<usize> {
        self.0.iter().map(|i| i + 1).collect()
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j] = i;
        }
        Permutation(inv)
    }

    /// `(self . other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation(other.0.iter().map(|&i| self.0[i]).collect())
    }
}

/// A homomorphism to a finite symmetric group, given by generator images.
/// It proves the group nontrivial when it kills every relator and moves
/// some generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NontrivialityWitness {
    pub degree: usize,
    pub images: Vec<Permutation>,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum ImagesJson {
    Named(BTreeMap<String, Vec<usize>>),
    Ordered(Vec<Vec<usize>>),
}

#[derive(Serialize, Deserialize)]
struct WitnessJson {
    degree: usize,
    images: ImagesJson,
}

impl NontrivialityWitness {
    pub fn new(degree: usize, images: Vec<Permutation>) -> Result<Self, ObstructionError> {
        if let Some(p) = images.iter().find(|p| p.degree() != degree) {
            return Err(ObstructionError::MalformedPermutation(format!(
                "{:?} has degree {}, expected {degree}",
                p.one_line(),
                p.degree()
            )));
        }
        Ok(NontrivialityWitness { degree, images })
    }

    /// From 1-based image lists in generator order.
    pub fn from_one_line(degree: usize, images: &[&[usize]]) -> Result<Self, ObstructionError> {
        let perms = images
            .iter()
            .map(|i| Permutation::from_one_line(i))
            .collect::<Result<Vec<_>, _>>()?;
        NontrivialityWitness::new(degree, perms)
    }

    /// Reads `{"degree": m, "images": {"a": [2, 1]}}`, or with `images` as a
    /// list in generator order. Images are 1-based one-line notation.
    pub fn from_json(text: &str, presentation: &Presentation) -> Result<Self, ObstructionError> {
        let json: WitnessJson =
            serde_json::from_str(text).map_err(|e| ObstructionError::Json(e.to_string()))?;
        let lists: Vec<Vec<usize>> = match json.images {
            ImagesJson::Ordered(v) => v,
            ImagesJson::Named(map) => {
                if let Some(name) = map
                    .keys()
                    .find(|n| presentation.generator_index(n).is_none())
                {
                    return Err(ObstructionError::UnknownGenerator(name.clone()));
                }
                let mut lists = Vec::with_capacity(presentation.rank());
                for g in presentation.generators() {
                    let images = map
                        .get(g)
                        .cloned()
                        .ok_or_else(|| ObstructionError::MissingImage(g.clone()))?;
                    lists.push(images);
                }
                lists
            }
        };
        let refs: Vec<&[usize]> = lists.iter().map(Vec::as_slice).collect();
        NontrivialityWitness::from_one_line(json.degree, &refs)
    }

    /// Images keyed by generator name, 1-based.
    pub fn named_images(&self, presentation: &Presentation) -> BTreeMap<String, Vec<usize>> {
        presentation
            .generators()
            .iter()
            .zip(&self.images)
            .map(|(g, p)| (g.clone(), p.one_line()))
            .collect()
    }

    /// Image of a word, multiplying left to right.
    pub fn evaluate(&self, word: &Word) -> Permutation {
        let mut acc = Permutation::identity(self.degree);
        for l in word.letters() {
            let base = &self.images[l.generator];
            let step = if l.exponent > 0 {
                base.clone()
            } else {
                base.inverse()
            };
            for _ in 0..l.exponent.unsigned_abs() {
                acc = acc.compose(&step);
            }
        }
        acc
    }
}

/// True iff every relator maps to the identity and some generator does not.
pub fn verify_witness(
    presentation: &Presentation,
    witness: &NontrivialityWitness,
) -> Result<bool, ObstructionError> {
    if witness.images.len() != presentation.rank() {
        return Err(ObstructionError::WitnessArity {
            expected: presentation.rank(),
            got: witness.images.len(),
        });
    }
    let relators_hold = presentation
        .relators()
        .iter()
        .all(|r| witness.evaluate(r).is_identity());
    let moves_something = witness.images.iter().any(|p| !p.is_identity());
    Ok(relators_hold && moves_something)
}
