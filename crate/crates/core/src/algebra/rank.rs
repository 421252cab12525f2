//! Matrix rank over the rational function field `Z/2(t)`.
//!
//! Rows are first multiplied by powers of `t` so every entry is a genuine
//! polynomial, then fraction-free (Bareiss) elimination runs over
//! `Z/2[t]`. Every intermediate entry is a minor of the cleared matrix, so
//! the divisions by the previous pivot are exact.

use super::{AlgebraError, LaurentMatrix};

/// Polynomial over `Z/2`, bit `k` of the packed limbs is the coefficient of
/// `t^k`. Always trimmed: no trailing zero limbs.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub(crate) struct Poly2 {
    limbs: Vec<u64>,
}

impl Poly2 {
    fn trim(mut self) -> Self {
        while self.limbs.last() == Some(&0) {
            self.limbs.pop();
        }
        self
    }

    pub(crate) fn from_exponents<I: IntoIterator<Item = usize>>(exps: I) -> Self {
        let mut limbs: Vec<u64> = Vec::new();
        for e in exps {
            let (w, b) = (e / 64, e % 64);
            if limbs.len() <= w {
                limbs.resize(w + 1, 0);
            }
            limbs[w] ^= 1 << b;
        }
        Poly2 { limbs }.trim()
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.limbs.is_empty()
    }

    pub(crate) fn degree(&self) -> Option<usize> {
        let top = *self.limbs.last()?;
        Some((self.limbs.len() - 1) * 64 + 63 - top.leading_zeros() as usize)
    }

    fn add_assign(&mut self, other: &Poly2) {
        if self.limbs.len() < other.limbs.len() {
            self.limbs.resize(other.limbs.len(), 0);
        }
        for (a, b) in self.limbs.iter_mut().zip(&other.limbs) {
            *a ^= b;
        }
        while self.limbs.last() == Some(&0) {
            self.limbs.pop();
        }
    }

    pub(crate) fn add(&self, other: &Poly2) -> Poly2 {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    fn shl(&self, k: usize) -> Poly2 {
        if self.is_zero() {
            return Poly2::default();
        }
        let (words, bits) = (k / 64, k % 64);
        let mut limbs = vec![0u64; self.limbs.len() + words + 1];
        for (i, &l) in self.limbs.iter().enumerate() {
            limbs[i + words] ^= l << bits;
            if bits > 0 {
                limbs[i + words + 1] ^= l >> (64 - bits);
            }
        }
        Poly2 { limbs }.trim()
    }

    pub(crate) fn mul(&self, other: &Poly2) -> Poly2 {
        if self.is_zero() || other.is_zero() {
            return Poly2::default();
        }
        let mut limbs = vec![0u64; self.limbs.len() + other.limbs.len()];
        for (i, &a) in self.limbs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for bit in 0..64 {
                if a >> bit & 1 == 0 {
                    continue;
                }
                for (j, &b) in other.limbs.iter().enumerate() {
                    limbs[i + j] ^= b << bit;
                    if bit > 0 {
                        limbs[i + j + 1] ^= b >> (64 - bit);
                    }
                }
            }
        }
        Poly2 { limbs }.trim()
    }

    /// Quotient and remainder of long division. Panics on a zero divisor.
    pub(crate) fn div_rem(&self, divisor: &Poly2) -> (Poly2, Poly2) {
        let dd = divisor.degree().expect("division by zero polynomial");
        let mut rem = self.clone();
        let mut quot = Poly2::default();
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let shift = rd - dd;
            rem.add_assign(&divisor.shl(shift));
            quot.add_assign(&Poly2::from_exponents([shift]));
        }
        (quot, rem)
    }
}

/// Rank of a one-variable Laurent matrix over `Z/2(t)`.
///
/// Pivots are chosen column by column, taking the lowest remaining row index
/// with a nonzero entry.
pub fn rank_over_fraction_field(m: &LaurentMatrix) -> Result<usize, AlgebraError> {
    if m.vars() != 1 {
        return Err(AlgebraError::VariableMismatch {
            expected: 1,
            got: m.vars(),
        });
    }
    let mut rows: Vec<Vec<Poly2>> = Vec::with_capacity(m.rows());
    for r in 0..m.rows() {
        let row = m.row(r);
        let low = row.iter().flat_map(|e| e.exponents()).min().unwrap_or(0);
        rows.push(
            row.iter()
                .map(|e| Poly2::from_exponents(e.exponents().map(|k| (k - low) as usize)))
                .collect(),
        );
    }
    Ok(bareiss_rank(rows, m.cols()))
}

pub(crate) fn bareiss_rank(mut a: Vec<Vec<Poly2>>, cols: usize) -> usize {
    let nrows = a.len();
    let mut rank = 0;
    let mut prev = Poly2::from_exponents([0]);
    for c in 0..cols {
        if rank == nrows {
            break;
        }
        let Some(p) = (rank..nrows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        let (head, tail) = a.split_at_mut(rank + 1);
        let pivot_row = &head[rank];
        for row in tail.iter_mut() {
            let factor = std::mem::take(&mut row[c]);
            for j in c + 1..cols {
                // char 2: a_kk a_ij - a_ic a_kj = a_kk a_ij + a_ic a_kj
                let num = pivot_row[c].mul(&row[j]).add(&factor.mul(&pivot_row[j]));
                let (q, r) = num.div_rem(&prev);
                debug_assert!(r.is_zero(), "inexact Bareiss division");
                row[j] = q;
            }
        }
        prev = a[rank][c].clone();
        rank += 1;
    }
    rank
}
