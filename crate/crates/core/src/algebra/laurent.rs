use std::collections::BTreeSet;
use std::fmt;

use super::AlgebraError;
use crate::fox::GroupRingElement;
use crate::words::WeightVector;

/// Laurent polynomial over `Z/2` in `vars` variables. Each term is an
/// exponent vector; coefficients are implicitly one.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    vars: usize,
    terms: BTreeSet<Vec<i64>>,
}

impl LaurentPoly {
    pub fn zero(vars: usize) -> Self {
        LaurentPoly {
            vars,
            terms: BTreeSet::new(),
        }
    }

    pub fn one(vars: usize) -> Self {
        LaurentPoly::monomial(vec![0; vars])
    }

    pub fn monomial(exponents: Vec<i64>) -> Self {
        let vars = exponents.len();
        let mut terms = BTreeSet::new();
        terms.insert(exponents);
        LaurentPoly { vars, terms }
    }

    /// `t^k` in one variable.
    pub fn t_pow(k: i64) -> Self {
        LaurentPoly::monomial(vec![k])
    }

    /// Sums the given monomials mod 2.
    pub fn from_terms<I>(vars: usize, terms: I) -> Result<Self, AlgebraError>
    where
        I: IntoIterator<Item = Vec<i64>>,
    {
        let mut p = LaurentPoly::zero(vars);
        for t in terms {
            if t.len() != vars {
                return Err(AlgebraError::VariableMismatch {
                    expected: vars,
                    got: t.len(),
                });
            }
            p.toggle(t);
        }
        Ok(p)
    }

    /// One-variable polynomial from a list of exponents, summed mod 2.
    pub fn from_exponents<I: IntoIterator<Item = i64>>(exponents: I) -> Self {
        let mut p = LaurentPoly::zero(1);
        for e in exponents {
            p.toggle(vec![e]);
        }
        p
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn terms(&self) -> &BTreeSet<Vec<i64>> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|t| t.iter().all(|&e| e == 0))
    }

    pub fn toggle(&mut self, exponents: Vec<i64>) {
        debug_assert_eq!(exponents.len(), self.vars);
        if !self.terms.remove(&exponents) {
            self.terms.insert(exponents);
        }
    }

    fn check(&self, other: &LaurentPoly) -> Result<(), AlgebraError> {
        if self.vars != other.vars {
            return Err(AlgebraError::VariableMismatch {
                expected: self.vars,
                got: other.vars,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &LaurentPoly) -> Result<LaurentPoly, AlgebraError> {
        self.check(other)?;
        Ok(LaurentPoly {
            vars: self.vars,
            terms: self
                .terms
                .symmetric_difference(&other.terms)
                .cloned()
                .collect(),
        })
    }

    pub fn mul(&self, other: &LaurentPoly) -> Result<LaurentPoly, AlgebraError> {
        self.check(other)?;
        let mut out = LaurentPoly::zero(self.vars);
        for x in &self.terms {
            for y in &other.terms {
                out.toggle(x.iter().zip(y).map(|(a, b)| a + b).collect());
            }
        }
        Ok(out)
    }

    /// Multiplies by the monomial with the given exponent vector.
    pub fn shift(&self, by: &[i64]) -> LaurentPoly {
        LaurentPoly {
            vars: self.vars,
            terms: self
                .terms
                .iter()
                .map(|t| t.iter().zip(by).map(|(a, b)| a + b).collect())
                .collect(),
        }
    }

    /// Substitutes `x^v -> t^{u.v}`, giving a one-variable polynomial.
    pub fn specialize_weights(&self, u: &WeightVector) -> Result<LaurentPoly, AlgebraError> {
        if u.rank() != self.vars {
            return Err(AlgebraError::VariableMismatch {
                expected: self.vars,
                got: u.rank(),
            });
        }
        Ok(LaurentPoly::from_exponents(
            self.terms.iter().map(|t| u.level(t)),
        ))
    }

    /// Exponents of a one-variable polynomial, ascending.
    pub fn exponents(&self) -> impl Iterator<Item = i64> + '_ {
        debug_assert_eq!(self.vars, 1);
        self.terms.iter().map(|t| t[0])
    }

    /// Parses `1 + t + t^-2` (one variable) or `x1^2 x2^-1 + 1`.
    /// `t` is accepted as a synonym for `x1`.
    pub fn parse(text: &str, vars: usize) -> Result<LaurentPoly, AlgebraError> {
        let err = |m: String| AlgebraError::Parse(m);
        let mut p = LaurentPoly::zero(vars);
        if text.trim() == "0" {
            return Ok(p);
        }
        for mono in text.split('+') {
            let mono = mono.trim();
            if mono.is_empty() {
                return Err(err(format!("empty monomial in `{text}`")));
            }
            let mut exps = vec![0i64; vars];
            for factor in mono
                .split(|c: char| c.is_whitespace() || c == '*')
                .filter(|f| !f.is_empty())
            {
                if factor == "1" {
                    continue;
                }
                let (base, power) = match factor.split_once('^') {
                    Some((b, e)) => {
                        let e: i64 = e
                            .parse()
                            .map_err(|_| err(format!("bad exponent in `{factor}`")))?;
                        (b, e)
                    }
                    None => (factor, 1),
                };
                let index = if base == "t" {
                    0
                } else if let Some(n) = base.strip_prefix('x') {
                    let n: usize = n
                        .parse()
                        .map_err(|_| err(format!("bad variable `{base}`")))?;
                    if n == 0 {
                        return Err(err(format!("variables are numbered from 1, got `{base}`")));
                    }
                    n - 1
                } else {
                    return Err(err(format!("unknown variable `{base}`")));
                };
                if index >= vars {
                    return Err(err(format!("variable `{base}` exceeds {vars} variable(s)")));
                }
                exps[index] += power;
            }
            p.toggle(exps);
        }
        Ok(p)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, t) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            write_monomial(f, t)?;
        }
        Ok(())
    }
}

pub(crate) fn write_monomial(f: &mut impl fmt::Write, exps: &[i64]) -> fmt::Result {
    let mut wrote = false;
    for (i, &e) in exps.iter().enumerate() {
        if e == 0 {
            continue;
        }
        if wrote {
            f.write_str(" ")?;
        }
        if exps.len() == 1 {
            f.write_str("t")?;
        } else {
            write!(f, "x{}", i + 1)?;
        }
        if e != 1 {
            write!(f, "^{e}")?;
        }
        wrote = true;
    }
    if !wrote {
        f.write_str("1")?;
    }
    Ok(())
}

/// Dense matrix of Laurent polynomials, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentMatrix {
    rows: usize,
    cols: usize,
    vars: usize,
    entries: Vec<LaurentPoly>,
}

impl LaurentMatrix {
    pub fn zeros(rows: usize, cols: usize, vars: usize) -> Self {
        LaurentMatrix {
            rows,
            cols,
            vars,
            entries: vec![LaurentPoly::zero(vars); rows * cols],
        }
    }

    pub fn from_rows(vars: usize, rows: Vec<Vec<LaurentPoly>>) -> Result<Self, AlgebraError> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(nrows * ncols);
        for row in rows {
            if row.len() != ncols {
                return Err(AlgebraError::Shape(format!(
                    "ragged matrix: row of length {} where {ncols} expected",
                    row.len()
                )));
            }
            for e in row {
                if e.vars != vars {
                    return Err(AlgebraError::VariableMismatch {
                        expected: vars,
                        got: e.vars,
                    });
                }
                entries.push(e);
            }
        }
        Ok(LaurentMatrix {
            rows: nrows,
            cols: ncols,
            vars,
            entries,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn get(&self, r: usize, c: usize) -> &LaurentPoly {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: LaurentPoly) {
        debug_assert_eq!(value.vars, self.vars);
        self.entries[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[LaurentPoly] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(LaurentPoly::is_zero)
    }

    pub fn transpose(&self) -> LaurentMatrix {
        let mut t = LaurentMatrix::zeros(self.cols, self.rows, self.vars);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &LaurentMatrix) -> Result<LaurentMatrix, AlgebraError> {
        if self.cols != other.rows {
            return Err(AlgebraError::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        if self.vars != other.vars {
            return Err(AlgebraError::VariableMismatch {
                expected: self.vars,
                got: other.vars,
            });
        }
        let mut out = LaurentMatrix::zeros(self.rows, other.cols, self.vars);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut acc = LaurentPoly::zero(self.vars);
                for k in 0..self.cols {
                    let (a, b) = (self.get(r, k), other.get(k, c));
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc.add(&a.mul(b)?)?;
                    }
                }
                out.set(r, c, acc);
            }
        }
        Ok(out)
    }

    pub fn specialize_weights(&self, u: &WeightVector) -> Result<LaurentMatrix, AlgebraError> {
        let entries = self
            .entries
            .iter()
            .map(|e| e.specialize_weights(u))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(LaurentMatrix {
            rows: self.rows,
            cols: self.cols,
            vars: 1,
            entries,
        })
    }

    /// Rows of exponent-vector lists, the form used in CW JSON files.
    pub fn to_term_lists(&self) -> Vec<Vec<Vec<Vec<i64>>>> {
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .map(|e| e.terms.iter().cloned().collect())
                    .collect()
            })
            .collect()
    }
}

/// `x -> sum of t^{u(w)}` over the support of `x`.
pub fn specialize(x: &GroupRingElement, u: &WeightVector) -> Result<LaurentPoly, AlgebraError> {
    let mut out = LaurentPoly::zero(1);
    for w in x.support() {
        out.toggle(vec![w.u_weight(u)?]);
    }
    Ok(out)
}

/// `x -> sum of x^{abelianize(w)}` in `rank` variables.
pub fn specialize_abelian(x: &GroupRingElement, rank: usize) -> Result<LaurentPoly, AlgebraError> {
    let mut out = LaurentPoly::zero(rank);
    for w in x.support() {
        out.toggle(w.abelianize(rank)?);
    }
    Ok(out)
}
