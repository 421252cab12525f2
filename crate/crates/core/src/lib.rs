//! Novikov homology over `Z/2` for group presentations and equivariant
//! cellular chain complexes, and certificates ruling out exact Lagrangian
//! embeddings into cotangent bundles of manifolds fibered over the circle.
//!
//! The pipeline runs bottom-up:
//!
//! * [`words`]: free-group words and integer weight classes.
//! * [`presentation`]: parsing and combining finite presentations.
//! * [`fox`]: Fox derivatives, which give the second boundary map.
//! * [`algebra`]: Laurent polynomials, Novikov series, rank over `Z/2(t)`.
//! * [`complexes`]: chain complexes, Betti numbers, Künneth products.
//! * [`obstruction`]: the certificate rules and their aggregated report.
//! * [`cli`]: the `novikov` command-line front end.

pub mod algebra;
pub mod cli;
pub mod complexes;
pub mod fox;
pub mod obstruction;
pub mod presentation;
pub mod words;

pub use algebra::{LaurentMatrix, LaurentPoly, NovikovSeries};
pub use complexes::{BettiVector, ChainComplex, PlainComplex};
pub use fox::{fox_derivative, fox_matrix, GroupRingElement};
pub use obstruction::{Certificate, ObstructionReport, Verdict};
pub use presentation::Presentation;
pub use words::{WeightVector, Word};
