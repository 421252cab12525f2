//! Novikov chain complexes over `Z/2[t, t^-1]` and their Betti numbers.
//!
//! Boundary matrices act on column vectors: `boundary(k)` is `d_k`, of shape
//! `n_{k-1} x n_k`. Betti numbers are dimensions over the Novikov field
//! `Z/2((t))`, computed as ranks over the subfield `Z/2(t)`.
//!
//! A complex built from a presentation is the chain complex of the
//! presentation 2-complex (one 0-cell, `p` 1-cells, `q` 2-cells). Its `H_0`
//! and `H_1` agree with those of any space with that fundamental group; its
//! `H_2` is that of the 2-complex, which is the space itself only for closed
//! surfaces with their standard presentation.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{
    rank_over_fraction_field, specialize, AlgebraError, LaurentMatrix, LaurentPoly,
};
use crate::fox::{fox_matrix, FoxMatrix};
use crate::presentation::{Presentation, PresentationError};
use crate::words::WeightVector;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("weight {weight} does not vanish on relators {failing:?} (relator index, weight)")]
    InvalidWeight {
        weight: WeightVector,
        failing: Vec<(usize, i64)>,
    },
    #[error("d_{degree} has shape {got:?}, expected {expected:?}")]
    Shape {
        degree: usize,
        expected: (usize, usize),
        got: (usize, usize),
    },
    #[error("{0} boundary matrices for {1} chain groups")]
    BoundaryCount(usize, usize),
    #[error("d_{degree} d_{next} is not zero", next = .degree + 1)]
    NotAComplex { degree: usize },
    #[error("boundary of a plain complex has a non-constant entry in d_{degree}")]
    NotConstant { degree: usize },
    #[error("internal rank error: negative Betti number in degree {degree}")]
    NegativeBetti { degree: usize },
    #[error(
        "internal error: Euler characteristic {cells} differs from Betti alternating sum {betti}"
    )]
    EulerMismatch { cells: i64, betti: i64 },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
}

impl ComplexError {
    /// Whether the error signals a broken internal invariant rather than
    /// bad input.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            ComplexError::NegativeBetti { .. } | ComplexError::EulerMismatch { .. }
        )
    }
}

/// Chain complex of free `Z/2[t, t^-1]`-modules in degrees `0..=top`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainComplex {
    dims: Vec<usize>,
    boundaries: Vec<LaurentMatrix>,
    weight: WeightVector,
    source: String,
}

fn check_shapes(dims: &[usize], shapes: &[(usize, usize)]) -> Result<(), ComplexError> {
    if dims.is_empty() || shapes.len() + 1 != dims.len() {
        return Err(ComplexError::BoundaryCount(shapes.len(), dims.len()));
    }
    for (k, &got) in shapes.iter().enumerate() {
        let expected = (dims[k], dims[k + 1]);
        if got != expected {
            return Err(ComplexError::Shape {
                degree: k + 1,
                expected,
                got,
            });
        }
    }
    Ok(())
}

impl ChainComplex {
    /// Validates shapes and `d_k d_{k+1} = 0`. `boundaries[k]` is `d_{k+1}`.
    pub fn new(dims: Vec<usize>, boundaries: Vec<LaurentMatrix>) -> Result<Self, ComplexError> {
        let shapes: Vec<_> = boundaries.iter().map(|b| (b.rows(), b.cols())).collect();
        check_shapes(&dims, &shapes)?;
        for b in &boundaries {
            if b.vars() != 1 {
                return Err(AlgebraError::VariableMismatch {
                    expected: 1,
                    got: b.vars(),
                }
                .into());
            }
        }
        for k in 1..boundaries.len() {
            if !boundaries[k - 1].mul(&boundaries[k])?.is_zero() {
                return Err(ComplexError::NotAComplex { degree: k });
            }
        }
        Ok(ChainComplex {
            dims,
            boundaries,
            weight: WeightVector::default(),
            source: String::new(),
        })
    }

    fn described(mut self, weight: WeightVector, source: impl Into<String>) -> Self {
        self.weight = weight;
        self.source = source.into();
        self
    }

    /// The Novikov complex of the presentation 2-complex for the class `u`:
    /// `d_1 = [1 + t^{u(g_i)}]` and `d_2` the transposed, specialized Fox
    /// matrix.
    pub fn from_presentation(p: &Presentation, u: &WeightVector) -> Result<Self, ComplexError> {
        PresentationFamily::new(p).at(u)
    }

    /// Specializes an equivariant complex of a `Z^n`-cover along `u`,
    /// `x^v -> t^{u.v}`. The input must already satisfy `d^2 = 0` over the
    /// `n`-variable ring.
    pub fn from_cw(cw: &CwInput, u: &WeightVector) -> Result<Self, ComplexError> {
        if u.rank() != cw.variables {
            return Err(AlgebraError::VariableMismatch {
                expected: cw.variables,
                got: u.rank(),
            }
            .into());
        }
        let multi = cw.matrices()?;
        for k in 1..multi.len() {
            if !multi[k - 1].mul(&multi[k])?.is_zero() {
                return Err(ComplexError::NotAComplex { degree: k });
            }
        }
        let boundaries = multi
            .iter()
            .map(|m| m.specialize_weights(u))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(ChainComplex::new(cw.dims.clone(), boundaries)?.described(u.clone(), "cw"))
    }

    pub fn top_degree(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// `d_k` for `1 <= k <= top_degree`.
    pub fn boundary(&self, k: usize) -> &LaurentMatrix {
        &self.boundaries[k - 1]
    }

    pub fn weight(&self) -> &WeightVector {
        &self.weight
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    /// Ranks of `d_1, ..., d_top` over `Z/2(t)`.
    pub fn boundary_ranks(&self) -> Vec<usize> {
        self.boundaries
            .iter()
            .map(|b| rank_over_fraction_field(b).expect("one-variable boundaries"))
            .collect()
    }

    /// `b_k = n_k - rank d_k - rank d_{k+1}`.
    pub fn betti(&self) -> Result<BettiVector, ComplexError> {
        let ranks = self.boundary_ranks();
        let betti = betti_from_ranks(&self.dims, &ranks)?;
        Ok(BettiVector {
            betti,
            weight: self.weight.clone(),
            source: self.source.clone(),
        })
    }

    /// `sum (-1)^k n_k`.
    pub fn euler_characteristic(&self) -> i64 {
        alternating_sum(&self.dims)
    }

    /// Computes the Euler characteristic and checks it against the
    /// alternating sum of the Betti numbers.
    pub fn checked_euler_characteristic(&self) -> Result<(i64, BettiVector), ComplexError> {
        let betti = self.betti()?;
        let chi = self.euler_characteristic();
        if chi != betti.euler() {
            return Err(ComplexError::EulerMismatch {
                cells: chi,
                betti: betti.euler(),
            });
        }
        Ok((chi, betti))
    }

    /// `C (x) D` over `Z/2`, with `d(x (x) y) = dx (x) y + x (x) dy`.
    pub fn tensor_product(&self, other: &PlainComplex) -> ChainComplex {
        let top = self.top_degree() + other.top_degree();
        // offsets[m][(i, j)] = start of block C_i (x) D_j inside degree m
        let mut dims = vec![0usize; top + 1];
        let mut offset = vec![vec![0usize; other.dims.len()]; self.dims.len()];
        for (i, &ci) in self.dims.iter().enumerate() {
            for (j, &dj) in other.dims.iter().enumerate() {
                offset[i][j] = dims[i + j];
                dims[i + j] += ci * dj;
            }
        }
        let mut boundaries: Vec<LaurentMatrix> = (1..=top)
            .map(|m| LaurentMatrix::zeros(dims[m - 1], dims[m], 1))
            .collect();
        for (i, &ci) in self.dims.iter().enumerate() {
            for (j, &dj) in other.dims.iter().enumerate() {
                if i + j == 0 {
                    continue;
                }
                let target = &mut boundaries[i + j - 1];
                for a in 0..ci {
                    for b in 0..dj {
                        let col = offset[i][j] + a * dj + b;
                        if i > 0 {
                            let dc = self.boundary(i);
                            for a2 in 0..self.dims[i - 1] {
                                let e = dc.get(a2, a);
                                if !e.is_zero() {
                                    let row = offset[i - 1][j] + a2 * dj + b;
                                    target.set(row, col, e.clone());
                                }
                            }
                        }
                        if j > 0 {
                            let dd = &other.boundaries[j - 1];
                            let nprev = other.dims[j - 1];
                            for b2 in 0..nprev {
                                if dd.get(b2, b) {
                                    let row = offset[i][j - 1] + a * nprev + b2;
                                    let e = target
                                        .get(row, col)
                                        .add(&LaurentPoly::one(1))
                                        .expect("one variable");
                                    target.set(row, col, e);
                                }
                            }
                        }
                    }
                }
            }
        }
        let source = format!("({}) x plain", self.source);
        ChainComplex::new(dims, boundaries)
            .expect("tensor product of complexes is a complex")
            .described(self.weight.clone(), source)
    }
}

fn alternating_sum(values: &[usize]) -> i64 {
    values
        .iter()
        .enumerate()
        .map(|(k, &v)| if k % 2 == 0 { v as i64 } else { -(v as i64) })
        .sum()
}

fn betti_from_ranks(dims: &[usize], ranks: &[usize]) -> Result<Vec<usize>, ComplexError> {
    let rank = |k: usize| {
        if k == 0 || k > ranks.len() {
            0
        } else {
            ranks[k - 1]
        }
    };
    dims.iter()
        .enumerate()
        .map(|(k, &n)| {
            let b = n as i64 - rank(k) as i64 - rank(k + 1) as i64;
            usize::try_from(b).map_err(|_| ComplexError::NegativeBetti { degree: k })
        })
        .collect()
}

/// Presentation complexes of one presentation for many classes. The Fox
/// matrix is computed once and specialized per class.
#[derive(Debug, Clone)]
pub struct PresentationFamily<'a> {
    presentation: &'a Presentation,
    fox: FoxMatrix,
}

impl<'a> PresentationFamily<'a> {
    pub fn new(presentation: &'a Presentation) -> Self {
        PresentationFamily {
            presentation,
            fox: fox_matrix(presentation),
        }
    }

    pub fn presentation(&self) -> &Presentation {
        self.presentation
    }

    /// The complex for `u`; see [`ChainComplex::from_presentation`].
    pub fn at(&self, u: &WeightVector) -> Result<ChainComplex, ComplexError> {
        let p = self.presentation;
        let validity = p.validate_weight(u)?;
        if !validity.is_valid() {
            return Err(ComplexError::InvalidWeight {
                weight: u.clone(),
                failing: validity.failing,
            });
        }
        let (np, nq) = (p.rank(), p.relator_count());
        let mut d1 = LaurentMatrix::zeros(1, np, 1);
        for i in 0..np {
            let w = u.get(i).expect("rank checked");
            d1.set(0, i, LaurentPoly::from_exponents([0, w]));
        }
        let mut d2 = LaurentMatrix::zeros(np, nq, 1);
        for j in 0..nq {
            for i in 0..np {
                d2.set(i, j, specialize(self.fox.get(j, i), u)?);
            }
        }
        Ok(ChainComplex::new(vec![1, np, nq], vec![d1, d2])?.described(u.clone(), p.render()))
    }
}

/// Novikov Betti numbers with the class and a description of the source.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BettiVector {
    pub betti: Vec<usize>,
    pub weight: WeightVector,
    pub source: String,
}

impl BettiVector {
    pub fn euler(&self) -> i64 {
        alternating_sum(&self.betti)
    }

    pub fn vanishes(&self) -> bool {
        self.betti.iter().all(|&b| b == 0)
    }

    pub fn get(&self, degree: usize) -> usize {
        self.betti.get(degree).copied().unwrap_or(0)
    }

    pub fn to_output(&self) -> BettiOutput {
        BettiOutput {
            betti: self.betti.clone(),
            euler: self.euler(),
            weight: self.weight.as_slice().to_vec(),
        }
    }
}

/// JSON shape `{"betti": [...], "euler": e, "weight": [...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiOutput {
    pub betti: Vec<usize>,
    pub euler: i64,
    pub weight: Vec<i64>,
}

/// Convolution of Betti vectors, `(a * b)_m = sum_{i+j=m} a_i b_j`.
pub fn convolve(a: &[usize], b: &[usize]) -> Vec<usize> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Dense matrix over `Z/2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gf2Matrix {
    rows: usize,
    cols: usize,
    bits: Vec<bool>,
}

impl Gf2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Gf2Matrix {
            rows,
            cols,
            bits: vec![false; rows * cols],
        }
    }

    pub fn from_rows(rows: &[&[u8]]) -> Self {
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut m = Gf2Matrix::zeros(rows.len(), ncols);
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), ncols, "ragged matrix");
            for (c, &v) in row.iter().enumerate() {
                m.set(r, c, v % 2 == 1);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.bits[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: bool) {
        self.bits[r * self.cols + c] = v;
    }

    pub fn mul(&self, other: &Gf2Matrix) -> Gf2Matrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Gf2Matrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                if self.get(r, k) {
                    for c in 0..other.cols {
                        if other.get(k, c) {
                            let v = out.get(r, c);
                            out.set(r, c, !v);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.bits.iter().all(|b| !b)
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut rank = 0;
        for c in 0..m.cols {
            let Some(p) = (rank..m.rows).find(|&r| m.get(r, c)) else {
                continue;
            };
            for k in 0..m.cols {
                let (a, b) = (m.get(rank, k), m.get(p, k));
                m.set(rank, k, b);
                m.set(p, k, a);
            }
            for r in rank + 1..m.rows {
                if m.get(r, c) {
                    for k in c..m.cols {
                        let v = m.get(r, k) ^ m.get(rank, k);
                        m.set(r, k, v);
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    fn to_laurent(&self) -> LaurentMatrix {
        let mut m = LaurentMatrix::zeros(self.rows, self.cols, 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                if self.get(r, c) {
                    m.set(r, c, LaurentPoly::one(1));
                }
            }
        }
        m
    }
}

/// Chain complex of finite-dimensional `Z/2` vector spaces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlainComplex {
    dims: Vec<usize>,
    boundaries: Vec<Gf2Matrix>,
}

impl PlainComplex {
    pub fn new(dims: Vec<usize>, boundaries: Vec<Gf2Matrix>) -> Result<Self, ComplexError> {
        let shapes: Vec<_> = boundaries.iter().map(|b| (b.rows, b.cols)).collect();
        check_shapes(&dims, &shapes)?;
        for k in 1..boundaries.len() {
            if !boundaries[k - 1].mul(&boundaries[k]).is_zero() {
                return Err(ComplexError::NotAComplex { degree: k });
            }
        }
        Ok(PlainComplex { dims, boundaries })
    }

    /// A single point.
    pub fn point() -> Self {
        PlainComplex {
            dims: vec![1],
            boundaries: Vec::new(),
        }
    }

    /// One 0-cell and one 1-cell with zero boundary.
    pub fn circle() -> Self {
        PlainComplex {
            dims: vec![1, 1],
            boundaries: vec![Gf2Matrix::zeros(1, 1)],
        }
    }

    /// Reads CW JSON whose entries are all constants.
    pub fn from_cw(cw: &CwInput) -> Result<Self, ComplexError> {
        let mut boundaries = Vec::new();
        for (k, m) in cw.matrices()?.iter().enumerate() {
            let mut g = Gf2Matrix::zeros(m.rows(), m.cols());
            for r in 0..m.rows() {
                for c in 0..m.cols() {
                    let e = m.get(r, c);
                    if !e.is_constant() {
                        return Err(ComplexError::NotConstant { degree: k + 1 });
                    }
                    g.set(r, c, !e.is_zero());
                }
            }
            boundaries.push(g);
        }
        PlainComplex::new(cw.dims.clone(), boundaries)
    }

    pub fn top_degree(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn boundary(&self, k: usize) -> &Gf2Matrix {
        &self.boundaries[k - 1]
    }

    /// Ordinary `Z/2` Betti numbers.
    pub fn betti(&self) -> Vec<usize> {
        let ranks: Vec<usize> = self.boundaries.iter().map(Gf2Matrix::rank).collect();
        betti_from_ranks(&self.dims, &ranks).expect("GF(2) ranks are consistent")
    }

    /// The same complex with constant one-variable Laurent entries.
    pub fn to_chain_complex(&self) -> ChainComplex {
        ChainComplex::new(
            self.dims.clone(),
            self.boundaries.iter().map(Gf2Matrix::to_laurent).collect(),
        )
        .expect("plain complex is a complex")
        .described(WeightVector::new(vec![0]), "plain")
    }
}

/// Equivariant cellular chain complex of a `Z^n`-cover, as read from JSON:
/// `{"variables": n, "dims": [n_0, ...], "boundaries": [d_1, ...]}`.
/// Each `d_k` is a list of `n_{k-1}` rows of `n_k` entries; an entry is a
/// list of exponent vectors summed mod 2.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CwInput {
    pub variables: usize,
    pub dims: Vec<usize>,
    pub boundaries: Vec<Vec<Vec<Vec<Vec<i64>>>>>,
}

impl CwInput {
    pub fn from_json(text: &str) -> Result<Self, ComplexError> {
        serde_json::from_str(text).map_err(|e| AlgebraError::Parse(format!("CW JSON: {e}")).into())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("CW input serializes")
    }

    /// Describes an existing complex in CW JSON form.
    pub fn from_complex(c: &ChainComplex) -> Self {
        CwInput {
            variables: 1,
            dims: c.dims.clone(),
            boundaries: c
                .boundaries
                .iter()
                .map(LaurentMatrix::to_term_lists)
                .collect(),
        }
    }

    /// Boundary matrices over the `n`-variable ring, shape-checked.
    pub fn matrices(&self) -> Result<Vec<LaurentMatrix>, ComplexError> {
        if self.dims.is_empty() || self.boundaries.len() + 1 != self.dims.len() {
            return Err(ComplexError::BoundaryCount(
                self.boundaries.len(),
                self.dims.len(),
            ));
        }
        let mut out = Vec::with_capacity(self.boundaries.len());
        for (k, rows) in self.boundaries.iter().enumerate() {
            let expected = (self.dims[k], self.dims[k + 1]);
            let got = (rows.len(), rows.first().map_or(expected.1, Vec::len));
            if got != expected || rows.iter().any(|r| r.len() != expected.1) {
                return Err(ComplexError::Shape {
                    degree: k + 1,
                    expected,
                    got,
                });
            }
            let mut m = LaurentMatrix::zeros(expected.0, expected.1, self.variables);
            for (r, row) in rows.iter().enumerate() {
                for (c, entry) in row.iter().enumerate() {
                    m.set(
                        r,
                        c,
                        LaurentPoly::from_terms(self.variables, entry.iter().cloned())?,
                    );
                }
            }
            out.push(m);
        }
        Ok(out)
    }
}
