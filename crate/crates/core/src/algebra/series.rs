//! Truncated elements of the Novikov completion `Lambda_u` of `Z/2[Z^n]`.
//!
//! A monomial `x^v` sits at level `u.v`. A [`NovikovSeries`] stores every
//! term up to its truncation level `N` exactly; nothing is known above `N`.
//! Products and inverses track how far that knowledge propagates: if `x` is
//! exact to `N_x` with lowest level `l_x`, then `x * y` is exact to
//! `min(N_x + l_y, N_y + l_x)`, and the inverse of a unit with leading level
//! `l` is exact to `N - 2l`.

use std::collections::BTreeSet;
use std::fmt;

use super::{laurent::write_monomial, AlgebraError, LaurentPoly};
use crate::words::WeightVector;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NovikovSeries {
    weight: WeightVector,
    truncation: i64,
    terms: BTreeSet<Vec<i64>>,
}

impl NovikovSeries {
    pub fn zero(weight: WeightVector, truncation: i64) -> Self {
        NovikovSeries {
            weight,
            truncation,
            terms: BTreeSet::new(),
        }
    }

    pub fn one(weight: WeightVector, truncation: i64) -> Self {
        let n = weight.rank();
        let mut s = NovikovSeries::zero(weight, truncation);
        if truncation >= 0 {
            s.terms.insert(vec![0; n]);
        }
        s
    }

    /// Embeds a Laurent polynomial, keeping terms at level `<= truncation`.
    /// The flag reports whether any term was dropped.
    pub fn from_laurent(
        x: &LaurentPoly,
        weight: &WeightVector,
        truncation: i64,
    ) -> Result<(NovikovSeries, bool), AlgebraError> {
        if x.vars() != weight.rank() {
            return Err(AlgebraError::VariableMismatch {
                expected: weight.rank(),
                got: x.vars(),
            });
        }
        let mut s = NovikovSeries::zero(weight.clone(), truncation);
        let mut truncated = false;
        for t in x.terms() {
            if weight.level(t) <= truncation {
                s.terms.insert(t.clone());
            } else {
                truncated = true;
            }
        }
        Ok((s, truncated))
    }

    pub fn weight(&self) -> &WeightVector {
        &self.weight
    }

    pub fn truncation(&self) -> i64 {
        self.truncation
    }

    pub fn terms(&self) -> &BTreeSet<Vec<i64>> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn level(&self, exponents: &[i64]) -> i64 {
        self.weight.level(exponents)
    }

    /// Lowest level carrying a term, `None` for the zero series.
    pub fn min_level(&self) -> Option<i64> {
        self.terms.iter().map(|t| self.weight.level(t)).min()
    }

    /// Stored terms as a Laurent polynomial.
    pub fn to_laurent(&self) -> LaurentPoly {
        LaurentPoly::from_terms(self.weight.rank(), self.terms.iter().cloned())
            .expect("terms match the weight arity")
    }

    /// Terms sorted by level, then exponent vector.
    pub fn sorted_terms(&self) -> Vec<&Vec<i64>> {
        let mut v: Vec<&Vec<i64>> = self.terms.iter().collect();
        v.sort_by_key(|t| (self.weight.level(t), (*t).clone()));
        v
    }

    // Lowest level the true element can have: the stored minimum, or just
    // past the truncation when nothing is stored.
    fn valuation_bound(&self) -> i64 {
        self.min_level().unwrap_or(self.truncation + 1)
    }

    fn check(&self, other: &NovikovSeries) -> Result<(), AlgebraError> {
        if self.weight != other.weight {
            return Err(AlgebraError::WeightMismatch);
        }
        Ok(())
    }

    fn toggle_below(&mut self, term: Vec<i64>) {
        if self.weight.level(&term) <= self.truncation && !self.terms.remove(&term) {
            self.terms.insert(term);
        }
    }

    pub fn add(&self, other: &NovikovSeries) -> Result<NovikovSeries, AlgebraError> {
        self.check(other)?;
        let mut out =
            NovikovSeries::zero(self.weight.clone(), self.truncation.min(other.truncation));
        for t in self.terms.iter().chain(&other.terms) {
            out.toggle_below(t.clone());
        }
        Ok(out)
    }

    pub fn mul(&self, other: &NovikovSeries) -> Result<NovikovSeries, AlgebraError> {
        self.check(other)?;
        let truncation = (self.truncation + other.valuation_bound())
            .min(other.truncation + self.valuation_bound());
        Ok(self.mul_to(other, truncation))
    }

    fn mul_to(&self, other: &NovikovSeries, truncation: i64) -> NovikovSeries {
        let mut out = NovikovSeries::zero(self.weight.clone(), truncation);
        for x in &self.terms {
            let lx = self.weight.level(x);
            for y in &other.terms {
                if lx + self.weight.level(y) <= truncation {
                    out.toggle_below(x.iter().zip(y).map(|(a, b)| a + b).collect());
                }
            }
        }
        out
    }

    /// Inverts a unit `m (1 + l0)` where `m` is the unique lowest-level
    /// monomial and every term of `l0` has positive level:
    /// `x^-1 = m^-1 (1 + l0 + l0^2 + ...)`.
    pub fn invert(&self) -> Result<NovikovSeries, AlgebraError> {
        let lowest = self.min_level().ok_or(AlgebraError::ZeroInverse)?;
        let leading: Vec<&Vec<i64>> = self
            .terms
            .iter()
            .filter(|t| self.weight.level(t) == lowest)
            .collect();
        if leading.len() != 1 {
            return Err(AlgebraError::NonUnitLeadingPart {
                terms: leading.len(),
                level: lowest,
            });
        }
        let m_inv: Vec<i64> = leading[0].iter().map(|e| -e).collect();

        // 1 + l0 = m^-1 x, exact to N - lowest
        let precision = self.truncation - lowest;
        let mut lambda = NovikovSeries::zero(self.weight.clone(), precision);
        for t in &self.terms {
            let shifted: Vec<i64> = t.iter().zip(&m_inv).map(|(a, b)| a + b).collect();
            if shifted.iter().any(|&e| e != 0) {
                lambda.toggle_below(shifted);
            }
        }

        let mut sum = NovikovSeries::one(self.weight.clone(), precision);
        let mut power = sum.clone();
        loop {
            power = power.mul_to(&lambda, precision);
            if power.is_zero() {
                break;
            }
            sum = sum.add(&power)?;
        }

        let mut out = NovikovSeries::zero(self.weight.clone(), self.truncation - 2 * lowest);
        for t in &sum.terms {
            out.toggle_below(t.iter().zip(&m_inv).map(|(a, b)| a + b).collect());
        }
        Ok(out)
    }

    /// Inverse of an exact Laurent polynomial, correct through `level`.
    /// The polynomial is embedded deep enough to absorb the precision lost
    /// to a positive leading level.
    pub fn invert_polynomial(
        x: &LaurentPoly,
        weight: &WeightVector,
        level: i64,
    ) -> Result<NovikovSeries, AlgebraError> {
        if x.vars() != weight.rank() {
            return Err(AlgebraError::VariableMismatch {
                expected: weight.rank(),
                got: x.vars(),
            });
        }
        let lowest = x
            .terms()
            .iter()
            .map(|t| weight.level(t))
            .min()
            .ok_or(AlgebraError::ZeroInverse)?;
        let (series, _) = NovikovSeries::from_laurent(x, weight, level + 2 * lowest.max(0))?;
        series.invert()
    }

    /// True when every level `<= level` agrees with the constant `1`.
    pub fn is_one_up_to(&self, level: i64) -> bool {
        let n = self.weight.rank();
        let one = vec![0; n];
        let mut expected_one = 0 <= level;
        for t in &self.terms {
            if self.weight.level(t) > level {
                continue;
            }
            if *t == one {
                expected_one = false;
            } else {
                return false;
            }
        }
        !expected_one
    }
}

impl fmt::Display for NovikovSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, t) in self.sorted_terms().into_iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            write_monomial(f, t)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn u1() -> WeightVector {
        WeightVector::new(vec![1])
    }

    fn series(exps: &[i64], weight: &WeightVector, n: i64) -> NovikovSeries {
        let vars = weight.rank();
        let terms = exps.iter().map(|&e| {
            let mut v = vec![0; vars];
            v[0] = e;
            v
        });
        let x = LaurentPoly::from_terms(vars, terms).unwrap();
        NovikovSeries::from_laurent(&x, weight, n).unwrap().0
    }

    #[test]
    fn embedding_examples() {
        let (s, flag) =
            NovikovSeries::from_laurent(&LaurentPoly::from_exponents([0, 1]), &u1(), 10).unwrap();
        assert_eq!(s.to_laurent(), LaurentPoly::from_exponents([0, 1]));
        assert!(!flag);
        let (s, flag) = NovikovSeries::from_laurent(&LaurentPoly::t_pow(-3), &u1(), 0).unwrap();
        assert_eq!(s.to_laurent(), LaurentPoly::t_pow(-3));
        assert!(!flag);
        let (s, flag) =
            NovikovSeries::from_laurent(&LaurentPoly::from_exponents([0, 5]), &u1(), 3).unwrap();
        assert_eq!(s.to_laurent(), LaurentPoly::one(1));
        assert!(flag);
    }

    #[test]
    fn arithmetic_examples() {
        let x = series(&[0, 1], &u1(), 8);
        assert!(x.add(&x).unwrap().is_zero());
        assert_eq!(
            x.mul(&x).unwrap().to_laurent(),
            LaurentPoly::from_exponents([0, 2])
        );
        let n = 7;
        let geometric = series(&(0..=n).collect::<Vec<_>>(), &u1(), n);
        let prod = geometric.mul(&series(&[0, 1], &u1(), n)).unwrap();
        assert_eq!(prod.truncation(), n);
        assert!(prod.is_one_up_to(n));
        assert_eq!(prod.to_laurent(), LaurentPoly::one(1));
        assert_eq!(
            x.add(&NovikovSeries::zero(WeightVector::new(vec![2]), 8)),
            Err(AlgebraError::WeightMismatch)
        );
    }

    #[test]
    fn invert_geometric_series() {
        let inv = series(&[0, 1], &u1(), 4).invert().unwrap();
        assert_eq!(inv.to_string(), "1 + t + t^2 + t^3 + t^4");
        assert_eq!(inv.truncation(), 4);
    }

    #[test]
    fn invert_monomial() {
        let inv = series(&[1], &u1(), 6).invert().unwrap();
        assert_eq!(inv.to_laurent(), LaurentPoly::t_pow(-1));
        assert_eq!(inv.truncation(), 4);
    }

    #[test]
    fn invert_shifted_unit() {
        // t^2 (1 + t) known through level 4
        let inv = series(&[2, 3], &u1(), 4).invert().unwrap();
        assert_eq!(inv.to_laurent(), LaurentPoly::from_exponents([-2, -1, 0]));
        assert_eq!(inv.truncation(), 0);
        // at N = 2 the t^3 term is lost on embedding and only t^-2 survives
        let (x, flag) =
            NovikovSeries::from_laurent(&LaurentPoly::from_exponents([2, 3]), &u1(), 2).unwrap();
        assert!(flag);
        let inv = x.invert().unwrap();
        assert_eq!(
            (inv.to_laurent(), inv.truncation()),
            (LaurentPoly::t_pow(-2), -2)
        );
    }

    #[test]
    fn invert_polynomial_keeps_requested_precision() {
        let x = LaurentPoly::from_exponents([2, 3]);
        let inv = NovikovSeries::invert_polynomial(&x, &u1(), 4).unwrap();
        assert_eq!(inv.truncation(), 4);
        assert_eq!(inv.to_laurent(), LaurentPoly::from_exponents(-2..=4));
        assert_eq!(
            NovikovSeries::invert_polynomial(&LaurentPoly::zero(1), &u1(), 4),
            Err(AlgebraError::ZeroInverse)
        );
    }

    #[test]
    fn invert_errors() {
        assert_eq!(
            NovikovSeries::zero(u1(), 3).invert(),
            Err(AlgebraError::ZeroInverse)
        );
        let u = WeightVector::new(vec![1, 0, 0]);
        let x = LaurentPoly::from_terms(3, [vec![0, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]).unwrap();
        let (s, _) = NovikovSeries::from_laurent(&x, &u, 5).unwrap();
        assert!(matches!(
            s.invert(),
            Err(AlgebraError::NonUnitLeadingPart { terms: 3, level: 0 })
        ));
    }

    #[test]
    fn negative_weight_branch() {
        // u(g) = -1: 1 + g = g (1 + g^-1), inverse g^-1 (1 + g^-1 + g^-2 + ...)
        let u = WeightVector::new(vec![-1]);
        let n = 6;
        let x = series(&[0, 1], &u, n);
        let inv = x.invert().unwrap();
        let expected: Vec<i64> = (1..=n + 2).map(|k| -k).collect();
        assert_eq!(inv.truncation(), n + 2);
        assert_eq!(inv.to_laurent(), LaurentPoly::from_exponents(expected));
        let prod = x.mul(&inv).unwrap();
        assert!(prod.truncation() >= n);
        assert!(prod.is_one_up_to(prod.truncation()));
    }

    fn unit() -> impl Strategy<Value = (WeightVector, LaurentPoly)> {
        (
            prop::collection::vec(-3i64..=3, 2),
            prop::collection::vec(prop::collection::vec(-4i64..=4, 2), 0..6),
            prop::collection::vec(-4i64..=4, 2),
        )
            .prop_filter_map("nonzero weight", |(u, extra, lead)| {
                let u = WeightVector::new(u);
                if u.is_trivial() {
                    return None;
                }
                let l = u.level(&lead);
                let mut x = LaurentPoly::monomial(lead);
                for t in extra {
                    if u.level(&t) > l {
                        x.toggle(t);
                    }
                }
                Some((u, x))
            })
    }

    proptest! {
        #[test]
        fn invert_round_trip((u, x) in unit(), n in 0i64..12) {
            let (s, _) = NovikovSeries::from_laurent(&x, &u, n).unwrap();
            prop_assume!(!s.is_zero());
            let inv = s.invert().unwrap();
            let prod = s.mul(&inv).unwrap();
            let lowest = s.min_level().unwrap();
            prop_assert_eq!(prod.truncation(), n - lowest);
            prop_assert!(prod.is_one_up_to(prod.truncation()));
            prop_assert!(inv.mul(&s).unwrap().is_one_up_to(n - lowest));
        }

        #[test]
        fn invert_polynomial_round_trip((u, x) in unit(), n in 0i64..12) {
            let inv = NovikovSeries::invert_polynomial(&x, &u, n).unwrap();
            prop_assert!(inv.truncation() >= n);
            let (s, _) = NovikovSeries::from_laurent(&x, &u, inv.truncation() + 64).unwrap();
            let prod = s.mul(&inv).unwrap();
            prop_assert!(prod.truncation() >= n);
            prop_assert!(prod.is_one_up_to(n));
        }
    }
}
