//! Fox free differential calculus with coefficients in `Z/2[F_p]`.
//!
//! Signs disappear mod 2, so the rules become
//! `d(g_i)/d(g_i) = 1`, `d(g_i^-1)/d(g_i) = g_i^-1` and
//! `d(uv) = d(u) + u d(v)`.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::presentation::Presentation;
use crate::words::Word;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FoxError {
    #[error("generator index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },
}

/// Element of the group ring `Z/2[F_p]`: a finite set of words, each with
/// coefficient one.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct GroupRingElement {
    support: BTreeSet<Word>,
}

impl GroupRingElement {
    pub fn zero() -> Self {
        GroupRingElement::default()
    }

    pub fn one() -> Self {
        GroupRingElement::from_word(Word::identity())
    }

    pub fn from_word(word: Word) -> Self {
        let mut support = BTreeSet::new();
        support.insert(word);
        GroupRingElement { support }
    }

    /// Sums the words mod 2: a word listed twice cancels.
    pub fn from_words<I: IntoIterator<Item = Word>>(words: I) -> Self {
        let mut x = GroupRingElement::zero();
        for w in words {
            x.toggle(w);
        }
        x
    }

    pub fn support(&self) -> &BTreeSet<Word> {
        &self.support
    }

    pub fn is_zero(&self) -> bool {
        self.support.is_empty()
    }

    /// Adds a single word.
    pub fn toggle(&mut self, word: Word) {
        if !self.support.remove(&word) {
            self.support.insert(word);
        }
    }

    pub fn add(&self, other: &GroupRingElement) -> GroupRingElement {
        GroupRingElement {
            support: self
                .support
                .symmetric_difference(&other.support)
                .cloned()
                .collect(),
        }
    }

    pub fn mul(&self, other: &GroupRingElement) -> GroupRingElement {
        let mut out = GroupRingElement::zero();
        for x in &self.support {
            for y in &other.support {
                out.toggle(x.multiply(y));
            }
        }
        out
    }

    /// Left multiplication by a single word.
    pub fn left_mul_word(&self, w: &Word) -> GroupRingElement {
        GroupRingElement {
            support: self.support.iter().map(|x| w.multiply(x)).collect(),
        }
    }

    pub fn display_with<'a>(&'a self, names: &'a [String]) -> GroupRingDisplay<'a> {
        GroupRingDisplay {
            element: self,
            names,
        }
    }
}

pub struct GroupRingDisplay<'a> {
    element: &'a GroupRingElement,
    names: &'a [String],
}

impl fmt::Display for GroupRingDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.element.is_zero() {
            return f.write_str("0");
        }
        for (k, w) in self.element.support.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{}", w.display_with(self.names))?;
        }
        Ok(())
    }
}

/// `d(word)/d(g_generator)` reduced mod 2.
pub fn fox_derivative(
    word: &Word,
    generator: usize,
    rank: usize,
) -> Result<GroupRingElement, FoxError> {
    if generator >= rank {
        return Err(FoxError::IndexOutOfRange {
            index: generator,
            rank,
        });
    }
    let mut out = GroupRingElement::zero();
    let mut prefix = Word::identity();
    for (g, positive) in word.unit_steps() {
        let step = Word::generator(g, if positive { 1 } else { -1 });
        if positive {
            if g == generator {
                out.toggle(prefix.clone());
            }
            prefix = prefix.multiply(&step);
        } else {
            prefix = prefix.multiply(&step);
            if g == generator {
                out.toggle(prefix.clone());
            }
        }
    }
    Ok(out)
}

/// The `q x p` matrix of Fox derivatives, entry `(j, i) = d(r_j)/d(g_i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FoxMatrix {
    pub rows: usize,
    pub cols: usize,
    entries: Vec<GroupRingElement>,
}

impl FoxMatrix {
    pub fn get(&self, row: usize, col: usize) -> &GroupRingElement {
        &self.entries[row * self.cols + col]
    }

    pub fn row(&self, row: usize) -> &[GroupRingElement] {
        &self.entries[row * self.cols..(row + 1) * self.cols]
    }
}

pub fn fox_matrix(presentation: &Presentation) -> FoxMatrix {
    let (rows, cols) = (presentation.relator_count(), presentation.rank());
    let mut entries = Vec::with_capacity(rows * cols);
    for r in presentation.relators() {
        for i in 0..cols {
            entries.push(fox_derivative(r, i, cols).expect("index within rank"));
        }
    }
    FoxMatrix {
        rows,
        cols,
        entries,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(raw: &[(usize, i64)]) -> Word {
        Word::free_reduce(raw.iter().copied())
    }

    fn comm() -> Word {
        w(&[(0, 1), (1, 1), (0, -1), (1, -1)])
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(
            fox_derivative(&w(&[(0, 1)]), 0, 2).unwrap(),
            GroupRingElement::one()
        );
        assert_eq!(
            fox_derivative(&comm(), 0, 2).unwrap(),
            GroupRingElement::from_words([Word::identity(), w(&[(0, 1), (1, 1), (0, -1)])])
        );
        assert_eq!(
            fox_derivative(&comm(), 1, 2).unwrap(),
            GroupRingElement::from_words([w(&[(0, 1)]), comm()])
        );
        assert!(fox_derivative(&w(&[(1, 1)]), 0, 2).unwrap().is_zero());
        assert!(fox_derivative(&Word::identity(), 0, 1).unwrap().is_zero());
        assert_eq!(
            fox_derivative(&w(&[(0, 1)]), 2, 2),
            Err(FoxError::IndexOutOfRange { index: 2, rank: 2 })
        );
        // d(a^-1)/da = -a^-1 = a^-1 mod 2
        assert_eq!(
            fox_derivative(&w(&[(0, -1)]), 0, 1).unwrap(),
            GroupRingElement::from_word(w(&[(0, -1)]))
        );
    }

    #[test]
    fn matrix_examples() {
        let names = vec!["a".to_string(), "b".to_string()];
        let torus = Presentation::parse("<a,b|[a,b]>").unwrap();
        let m = fox_matrix(&torus);
        assert_eq!((m.rows, m.cols), (1, 2));
        assert_eq!(m.get(0, 0).display_with(&names).to_string(), "1 + a b a^-1");
        assert_eq!(
            m.get(0, 1).display_with(&names).to_string(),
            "a + a b a^-1 b^-1"
        );

        let f2 = fox_matrix(&Presentation::parse("<a,b|>").unwrap());
        assert_eq!((f2.rows, f2.cols), (0, 2));

        let c2 = fox_matrix(&Presentation::parse("<a|a^2>").unwrap());
        assert_eq!(
            c2.row(0),
            &[GroupRingElement::from_words([
                Word::identity(),
                w(&[(0, 1)])
            ])]
        );
    }

    #[test]
    fn ring_examples() {
        let x = GroupRingElement::from_words([Word::identity(), w(&[(0, 1)])]);
        assert!(x.add(&x).is_zero());
        assert_eq!(
            x.mul(&x),
            GroupRingElement::from_words([Word::identity(), w(&[(0, 2)])])
        );
        let a = GroupRingElement::from_word(w(&[(0, 1)]));
        let b = GroupRingElement::from_word(w(&[(1, 1)]));
        assert_eq!(a.mul(&b), GroupRingElement::from_word(w(&[(0, 1), (1, 1)])));
        assert_eq!(GroupRingElement::zero().display_with(&[]).to_string(), "0");
    }

    fn word() -> impl Strategy<Value = Word> {
        prop::collection::vec((0usize..3, -2i64..=2), 0..12).prop_map(Word::free_reduce)
    }

    proptest! {
        #[test]
        fn fundamental_identity(r in word()) {
            let mut lhs = GroupRingElement::zero();
            for i in 0..3 {
                let one_plus_g = GroupRingElement::from_words([Word::identity(), Word::generator(i, 1)]);
                lhs = lhs.add(&fox_derivative(&r, i, 3).unwrap().mul(&one_plus_g));
            }
            let rhs = GroupRingElement::from_words([Word::identity(), r.clone()]);
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn inverse_rule(r in word(), i in 0usize..3) {
            prop_assert_eq!(
                fox_derivative(&r.invert(), i, 3).unwrap(),
                fox_derivative(&r, i, 3).unwrap().left_mul_word(&r.invert())
            );
        }

        #[test]
        fn product_rule(r in word(), s in word(), i in 0usize..3) {
            let lhs = fox_derivative(&r.multiply(&s), i, 3).unwrap();
            let rhs = fox_derivative(&r, i, 3).unwrap()
                .add(&fox_derivative(&s, i, 3).unwrap().left_mul_word(&r));
            prop_assert_eq!(lhs, rhs);
        }
    }
}
