//! Exact arithmetic over `Z/2`: Laurent polynomials, truncated Novikov
//! series, and matrix rank over `Z/2(t)`.

mod laurent;
mod rank;
mod series;

use thiserror::Error;

use crate::words::WordError;

pub use laurent::{specialize, specialize_abelian, LaurentMatrix, LaurentPoly};
pub use rank::rank_over_fraction_field;
pub use series::NovikovSeries;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("variable count mismatch: expected {expected}, got {got}")]
    VariableMismatch { expected: usize, got: usize },
    #[error("series have different weight vectors")]
    WeightMismatch,
    #[error("cannot invert the zero series")]
    ZeroInverse,
    #[error("not a unit: {terms} terms at the lowest level {level}, expected a single monomial")]
    NonUnitLeadingPart { terms: usize, level: i64 },
    #[error("shape error: {0}")]
    Shape(String),
    #[error("cannot parse polynomial: {0}")]
    Parse(String),
    #[error(transparent)]
    Word(#[from] WordError),
}
