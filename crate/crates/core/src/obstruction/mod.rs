//! Obstruction certificates against exact Lagrangian embeddings
//! `L -> T*M`, where `M` is closed and fibered over the circle.
//!
//! Each rule inspects invariants of `L` (a presentation of its fundamental
//! group, its Euler characteristic, a free-product decomposition) and, when
//! it fires, emits a [`Certificate`] carrying the rule, the data that make
//! it fire and the theorem it rests on. The rules only ever prove
//! non-embeddability; an empty report means nothing was found.
//!
//! The weight scan is reported separately as evidence. It inspects finitely
//! many classes, while the relevant class (pulled back from the fibration)
//! is unknown, so it never changes the verdict.

mod witness;

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::complexes::{ComplexError, PresentationFamily};
use crate::presentation::Presentation;
use crate::words::WeightVector;

pub use witness::{verify_witness, NontrivialityWitness, Permutation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ObstructionError {
    #[error("malformed permutation: {0}")]
    MalformedPermutation(String),
    #[error("witness has {got} generator images, presentation has {expected} generators")]
    WitnessArity { expected: usize, got: usize },
    #[error("witness names unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("witness has no image for generator `{0}`")]
    MissingImage(String),
    #[error("scan bound must be at least 1")]
    InvalidBound,
    #[error("invalid witness JSON: {0}")]
    Json(String),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

const FIBERED_SCOPE: &str =
    "no exact Lagrangian L with this fundamental group embeds in T*M, M closed, fibered over the circle, dim M >= 3";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    Deficiency,
    FreeProduct,
    Euler,
    Rank,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FactorWitness {
    pub presentation: String,
    pub degree: usize,
    pub images: BTreeMap<String, Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Witness {
    Deficiency {
        generators: usize,
        relators: usize,
        deficiency: i64,
    },
    FreeProduct {
        left: FactorWitness,
        right: FactorWitness,
    },
    Euler {
        chi: i64,
    },
    Rank {
        generators: usize,
        relators: usize,
        abelianization_rank: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub rule: Rule,
    pub citation: String,
    pub witness: Witness,
    pub scope: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub caveat: Option<String>,
}

/// Fires when `p - q >= 2`.
pub fn check_deficiency(p: &Presentation) -> Option<Certificate> {
    let deficiency = p.deficiency();
    (deficiency >= 2).then(|| Certificate {
        rule: Rule::Deficiency,
        citation: "Thm 1.1a".into(),
        witness: Witness::Deficiency {
            generators: p.rank(),
            relators: p.relator_count(),
            deficiency,
        },
        scope: FIBERED_SCOPE.into(),
        caveat: None,
    })
}

/// Fires when both factors are certified nontrivial by their witnesses; the
/// candidate fundamental group is then `G_1 * G_2`.
pub fn check_free_product(
    left: &Presentation,
    left_witness: &NontrivialityWitness,
    right: &Presentation,
    right_witness: &NontrivialityWitness,
) -> Result<Option<Certificate>, ObstructionError> {
    if !verify_witness(left, left_witness)? || !verify_witness(right, right_witness)? {
        return Ok(None);
    }
    let factor = |p: &Presentation, w: &NontrivialityWitness| FactorWitness {
        presentation: p.render(),
        degree: w.degree,
        images: w.named_images(p),
    };
    Ok(Some(Certificate {
        rule: Rule::FreeProduct,
        citation: "Thm 1.1b".into(),
        witness: Witness::FreeProduct {
            left: factor(left, left_witness),
            right: factor(right, right_witness),
        },
        scope: format!(
            "{FIBERED_SCOPE}; fundamental group {}",
            left.free_product(right).render()
        ),
        caveat: Some(
            "a connected sum L1 # L2 of dimension >= 4 has this fundamental group; \
             the exception where one summand is a Z/2-homology sphere is not analyzed here"
                .into(),
        ),
    }))
}

/// Fires when `chi(L) != 0`.
pub fn check_euler(chi: i64) -> Option<Certificate> {
    (chi != 0).then(|| Certificate {
        rule: Rule::Euler,
        citation: "Cor 1.2a".into(),
        witness: Witness::Euler { chi },
        scope: "no exact Lagrangian embedding of L x P into T*(Q x S^1), for P closed with finite fundamental group"
            .into(),
        caveat: None,
    })
}

/// Fires when `H_1(L; Q) = 0`: then no nonzero class can be pulled back
/// from the circle, but a fibered target forces one.
pub fn check_rank(p: &Presentation) -> Option<Certificate> {
    let rank = p.abelianization_rank();
    (rank == 0).then(|| Certificate {
        rule: Rule::Rank,
        citation: "Thm 1.2".into(),
        witness: Witness::Rank {
            generators: p.rank(),
            relators: p.relator_count(),
            abelianization_rank: rank,
        },
        scope: FIBERED_SCOPE.into(),
        caveat: None,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanEntry {
    pub weight: Vec<i64>,
    pub betti: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanReport {
    pub kind: &'static str,
    pub citation: &'static str,
    pub bound: i64,
    pub degree: usize,
    pub entries: Vec<ScanEntry>,
    /// Set when at least one class was scanned and none had `b_degree = 0`.
    pub nonvanishing_for_all: bool,
}

/// Every nonzero valid `u` with entries in `[-bound, bound]`, in
/// lexicographic order.
pub fn valid_weights(p: &Presentation, bound: i64) -> Vec<WeightVector> {
    let rank = p.rank();
    if rank == 0 || bound < 1 {
        return Vec::new();
    }
    let side = (2 * bound + 1) as u64;
    let total = side.pow(rank as u32);
    (0..total)
        .into_par_iter()
        .filter_map(|mut n| {
            let mut w = vec![0i64; rank];
            for slot in w.iter_mut().rev() {
                *slot = (n % side) as i64 - bound;
                n /= side;
            }
            let u = WeightVector::new(w);
            let valid =
                !u.is_trivial() && p.validate_weight(&u).map(|v| v.is_valid()).unwrap_or(false);
            valid.then_some(u)
        })
        .collect()
}

/// Betti number `b_degree` of the presentation complex for every nonzero
/// valid class in the box.
pub fn vanishing_scan(
    p: &Presentation,
    bound: i64,
    degree: usize,
) -> Result<ScanReport, ObstructionError> {
    if bound < 1 {
        return Err(ObstructionError::InvalidBound);
    }
    let family = PresentationFamily::new(p);
    let entries = valid_weights(p, bound)
        .into_par_iter()
        .map(|u| {
            let betti = family.at(&u)?.betti()?;
            Ok(ScanEntry {
                betti: betti.get(degree),
                weight: u.as_slice().to_vec(),
            })
        })
        .collect::<Result<Vec<_>, ComplexError>>()?;
    let nonvanishing_for_all = !entries.is_empty() && entries.iter().all(|e| e.betti > 0);
    Ok(ScanReport {
        kind: "heuristic evidence",
        citation: "Thm 1.2",
        bound,
        degree,
        entries,
        nonvanishing_for_all,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "OBSTRUCTED")]
    Obstructed,
    #[serde(rename = "NO-OBSTRUCTION-FOUND")]
    NoObstructionFound,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Obstructed => "OBSTRUCTED",
            Verdict::NoObstructionFound => "NO-OBSTRUCTION-FOUND",
        })
    }
}

/// A free-product decomposition with a nontriviality witness per factor.
#[derive(Debug, Clone)]
pub struct FreeProductInput {
    pub left: Presentation,
    pub left_witness: NontrivialityWitness,
    pub right: Presentation,
    pub right_witness: NontrivialityWitness,
}

#[derive(Debug, Clone, Default)]
pub struct ReportInput {
    pub presentation: Option<Presentation>,
    pub chi: Option<i64>,
    pub free_product: Option<FreeProductInput>,
    /// `(bound, degree)` for the weight scan.
    pub scan: Option<(i64, usize)>,
}

impl ReportInput {
    /// The presentation the group-level rules run on: the explicit one, or
    /// else the free product of the two factors.
    pub fn candidate(&self) -> Option<Presentation> {
        self.presentation.clone().or_else(|| {
            self.free_product
                .as_ref()
                .map(|f| f.left.free_product(&f.right))
        })
    }

    fn describe(&self) -> InputDescriptor {
        InputDescriptor {
            presentation: self.candidate().map(|p| p.render()),
            chi: self.chi,
            free_product: self
                .free_product
                .as_ref()
                .map(|f| [f.left.render(), f.right.render()]),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InputDescriptor {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub presentation: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chi: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub free_product: Option<[String; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ObstructionReport {
    pub verdict: Verdict,
    pub certificates: Vec<Certificate>,
    pub input: InputDescriptor,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub evidence: Option<ScanReport>,
}

impl ObstructionReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Runs every applicable rule. Certificates come out in the order
/// deficiency, free product, Euler, rank.
pub fn report(input: &ReportInput) -> Result<ObstructionReport, ObstructionError> {
    let candidate = input.candidate();
    let mut certificates = Vec::new();
    if let Some(p) = &candidate {
        certificates.extend(check_deficiency(p));
    }
    if let Some(f) = &input.free_product {
        certificates.extend(check_free_product(
            &f.left,
            &f.left_witness,
            &f.right,
            &f.right_witness,
        )?);
    }
    if let Some(chi) = input.chi {
        certificates.extend(check_euler(chi));
    }
    if let Some(p) = &candidate {
        certificates.extend(check_rank(p));
    }
    let evidence = match (&candidate, input.scan) {
        (Some(p), Some((bound, degree))) => Some(vanishing_scan(p, bound, degree)?),
        _ => None,
    };
    let verdict = if certificates.is_empty() {
        Verdict::NoObstructionFound
    } else {
        Verdict::Obstructed
    };
    Ok(ObstructionReport {
        verdict,
        certificates,
        input: input.describe(),
        evidence,
    })
}
