//! Freely reduced words over a finite ranked alphabet.
//!
//! Words are stored as syllables `(letter, exponent)` with adjacent letters
//! distinct and no zero exponents. This is the free-reduction normal form, so
//! two words over the same alphabet are equal in the free group iff their
//! syllable lists are equal.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("letter index {index} is out of range for {alphabet} ({size} letters)")]
    Malformed {
        index: usize,
        alphabet: Alphabet,
        size: usize,
    },
    #[error("alphabet mismatch: {left} vs {right}")]
    AlphabetMismatch { left: Alphabet, right: Alphabet },
    #[error("operation requires alphabet {expected}, got {found}")]
    WrongAlphabet { expected: Alphabet, found: Alphabet },
}

/// The generating alphabets used throughout the crate.
///
/// The payload is the rank `k` for free groups and the strand count `n` for
/// braid alphabets. Equality is structural.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Alphabet {
    /// `x_1, ..., x_k`.
    Free(usize),
    /// `σ_1, ..., σ_{n-1}`.
    Sigma(usize),
    /// `A_{i,j}` for `1 <= i < j <= n`, lexicographic order.
    Pure(usize),
}

impl Alphabet {
    pub fn size(&self) -> usize {
        match *self {
            Alphabet::Free(k) => k,
            Alphabet::Sigma(n) => n.saturating_sub(1),
            Alphabet::Pure(n) => n * n.saturating_sub(1) / 2,
        }
    }

    pub fn letter_name(&self, index: usize) -> String {
        match *self {
            Alphabet::Free(2) => ["x", "y"][index].to_string(),
            Alphabet::Free(_) => format!("x{}", index + 1),
            Alphabet::Sigma(_) => format!("s{}", index + 1),
            Alphabet::Pure(n) => {
                let (i, j) = pure_pair(index, n);
                format!("A[{i},{j}]")
            }
        }
    }

    pub fn letters(&self) -> Vec<String> {
        (0..self.size()).map(|i| self.letter_name(i)).collect()
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Alphabet::Free(k) => write!(f, "free:{k}"),
            Alphabet::Sigma(n) => write!(f, "sigma:{n}"),
            Alphabet::Pure(n) => write!(f, "pure:{n}"),
        }
    }
}

/// Index of `A_{i,j}` (1-based, `i < j <= n`) in the lexicographic order.
pub fn pure_index(i: usize, j: usize, n: usize) -> usize {
    debug_assert!(1 <= i && i < j && j <= n);
    // pairs (a, _) with a < i come first; there are n - a of them for each a
    let before: usize = (1..i).map(|a| n - a).sum();
    before + (j - i - 1)
}

/// Inverse of [`pure_index`].
pub fn pure_pair(index: usize, n: usize) -> (usize, usize) {
    let mut rest = index;
    for i in 1..n {
        let row = n - i;
        if rest < row {
            return (i, i + 1 + rest);
        }
        rest -= row;
    }
    panic!("pure generator index {index} out of range for n = {n}");
}

/// A single generator or its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Letter {
    pub index: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(index: usize) -> Self {
        Letter {
            index,
            inverse: false,
        }
    }

    pub fn inv(index: usize) -> Self {
        Letter {
            index,
            inverse: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Syllable {
    pub letter: usize,
    pub exp: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ReducedWord {
    alphabet: Alphabet,
    syllables: Vec<Syllable>,
}

impl ReducedWord {
    pub fn identity(alphabet: Alphabet) -> Self {
        ReducedWord {
            alphabet,
            syllables: Vec::new(),
        }
    }

    pub fn generator(alphabet: Alphabet, index: usize) -> Result<Self, WordError> {
        Self::from_syllables(alphabet, [(index, BigInt::one())])
    }

    /// Freely reduces a list of signed letters.
    pub fn reduce(alphabet: Alphabet, letters: &[Letter]) -> Result<Self, WordError> {
        Self::from_syllables(
            alphabet,
            letters.iter().map(|l| {
                let e = if l.inverse { -1 } else { 1 };
                (l.index, BigInt::from(e))
            }),
        )
    }

    /// Freely reduces a sequence of `(letter, exponent)` pairs.
    pub fn from_syllables<E, I>(alphabet: Alphabet, raw: I) -> Result<Self, WordError>
    where
        E: Into<BigInt>,
        I: IntoIterator<Item = (usize, E)>,
    {
        let size = alphabet.size();
        let mut w = ReducedWord::identity(alphabet);
        for (index, exp) in raw {
            if index >= size {
                return Err(WordError::Malformed {
                    index,
                    alphabet,
                    size,
                });
            }
            w.push(index, exp.into());
        }
        Ok(w)
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    /// Number of letters, i.e. the sum of absolute exponents. Saturates.
    pub fn len(&self) -> usize {
        self.syllables.iter().fold(0usize, |acc, s| {
            acc.saturating_add(s.exp.abs().to_usize().unwrap_or(usize::MAX))
        })
    }

    pub fn is_empty(&self) -> bool {
        self.syllables.is_empty()
    }

    /// Expands into single letters. Panics if the word is astronomically long.
    pub fn letters(&self) -> Vec<Letter> {
        let mut out = Vec::with_capacity(self.len());
        for s in &self.syllables {
            let count = s.exp.abs().to_usize().expect("exponent too large to expand");
            let l = Letter {
                index: s.letter,
                inverse: s.exp.is_negative(),
            };
            out.extend(std::iter::repeat_n(l, count));
        }
        out
    }

    /// Appends `letter^exp` and reduces at the seam.
    pub(crate) fn push(&mut self, letter: usize, exp: BigInt) {
        if exp.is_zero() {
            return;
        }
        if let Some(last) = self.syllables.last_mut() {
            if last.letter == letter {
                last.exp += exp;
                if last.exp.is_zero() {
                    self.syllables.pop();
                }
                return;
            }
        }
        self.syllables.push(Syllable { letter, exp });
    }

    /// Appends `other` (or its inverse) in place, assuming matching alphabets.
    pub(crate) fn push_word(&mut self, other: &ReducedWord, inverse: bool) {
        if inverse {
            for s in other.syllables.iter().rev() {
                self.push(s.letter, -s.exp.clone());
            }
        } else {
            for s in &other.syllables {
                self.push(s.letter, s.exp.clone());
            }
        }
    }

    fn check_same(&self, other: &ReducedWord) -> Result<(), WordError> {
        if self.alphabet != other.alphabet {
            return Err(WordError::AlphabetMismatch {
                left: self.alphabet,
                right: other.alphabet,
            });
        }
        Ok(())
    }

    pub fn multiply(&self, other: &ReducedWord) -> Result<ReducedWord, WordError> {
        self.check_same(other)?;
        let mut out = self.clone();
        out.push_word(other, false);
        Ok(out)
    }

    pub fn invert(&self) -> ReducedWord {
        let mut out = ReducedWord::identity(self.alphabet);
        out.push_word(self, true);
        out
    }

    /// `u v u⁻¹ v⁻¹`.
    pub fn commutator(&self, other: &ReducedWord) -> Result<ReducedWord, WordError> {
        self.check_same(other)?;
        let mut out = self.clone();
        out.push_word(other, false);
        out.push_word(self, true);
        out.push_word(other, true);
        Ok(out)
    }

    /// `self^e` for any integer `e`.
    pub fn pow(&self, e: &BigInt) -> ReducedWord {
        let mut out = ReducedWord::identity(self.alphabet);
        if self.is_identity() || e.is_zero() {
            return out;
        }
        // a single syllable scales directly
        if self.syllables.len() == 1 {
            let s = &self.syllables[0];
            out.push(s.letter, &s.exp * e);
            return out;
        }
        let count = e.abs().to_usize().expect("power too large");
        for _ in 0..count {
            out.push_word(self, e.is_negative());
        }
        out
    }

    pub fn exponent_vector(&self) -> ExponentVector {
        let mut entries = vec![BigInt::zero(); self.alphabet.size()];
        for s in &self.syllables {
            entries[s.letter] += &s.exp;
        }
        ExponentVector {
            alphabet: self.alphabet,
            entries,
        }
    }

    /// Substitutes `images[letter]` for every letter and reduces in `target`.
    ///
    /// The caller guarantees `images.len() == self.alphabet().size()` and that
    /// every image lives over `target`.
    pub(crate) fn substitute(&self, images: &[ReducedWord], target: Alphabet) -> ReducedWord {
        let mut out = ReducedWord::identity(target);
        for s in &self.syllables {
            let image = &images[s.letter];
            if image.syllables.len() == 1 {
                let only = &image.syllables[0];
                out.push(only.letter, &only.exp * &s.exp);
                continue;
            }
            let count = s.exp.abs().to_usize().expect("exponent too large");
            for _ in 0..count {
                out.push_word(image, s.exp.is_negative());
            }
        }
        out
    }
}

impl fmt::Display for ReducedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.syllables.is_empty() {
            return write!(f, "1");
        }
        for (k, s) in self.syllables.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", self.alphabet.letter_name(s.letter))?;
            if !s.exp.is_one() {
                write!(f, "^{}", s.exp)?;
            }
        }
        Ok(())
    }
}

/// Signed exponent sums, indexed by alphabet letters.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExponentVector {
    alphabet: Alphabet,
    entries: Vec<BigInt>,
}

impl ExponentVector {
    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }
}

impl std::ops::Add for &ExponentVector {
    type Output = ExponentVector;

    fn add(self, rhs: &ExponentVector) -> ExponentVector {
        assert_eq!(self.alphabet, rhs.alphabet, "exponent vectors over different alphabets");
        ExponentVector {
            alphabet: self.alphabet,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

/// Whether the classes of `u` and `v` form a basis of `H_1(F_2; Z)`.
pub fn is_basis_pair(u: &ReducedWord, v: &ReducedWord) -> Result<bool, WordError> {
    for w in [u, v] {
        if w.alphabet() != Alphabet::Free(2) {
            return Err(WordError::WrongAlphabet {
                expected: Alphabet::Free(2),
                found: w.alphabet(),
            });
        }
    }
    let a = u.exponent_vector();
    let b = v.exponent_vector();
    let det = &a.entries[0] * &b.entries[1] - &a.entries[1] * &b.entries[0];
    Ok(det.abs().is_one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const F2: Alphabet = Alphabet::Free(2);

    fn w(letters: &[(usize, i64)]) -> ReducedWord {
        ReducedWord::from_syllables(F2, letters.iter().copied()).unwrap()
    }

    /// Rescans the whole letter list until no adjacent inverse pair remains.
    fn naive_reduce(mut letters: Vec<Letter>) -> Vec<Letter> {
        loop {
            let pos = letters
                .windows(2)
                .position(|p| p[0].index == p[1].index && p[0].inverse != p[1].inverse);
            match pos {
                Some(p) => {
                    letters.drain(p..p + 2);
                }
                None => return letters,
            }
        }
    }

    fn letters_strategy(k: usize, max_len: usize) -> impl Strategy<Value = Vec<Letter>> {
        prop::collection::vec((0..k, any::<bool>()), 0..=max_len).prop_map(|v| {
            v.into_iter()
                .map(|(index, inverse)| Letter { index, inverse })
                .collect()
        })
    }

    #[test]
    fn cancellation() {
        let x = Letter::new(0);
        let y = Letter::new(1);
        assert!(ReducedWord::reduce(F2, &[x, Letter::inv(0)]).unwrap().is_identity());
        let r = ReducedWord::reduce(F2, &[x, y, Letter::inv(1), x]).unwrap();
        assert_eq!(r, w(&[(0, 2)]));
    }

    #[test]
    fn malformed_letter() {
        let err = ReducedWord::reduce(F2, &[Letter::new(2)]).unwrap_err();
        assert!(matches!(err, WordError::Malformed { index: 2, .. }));
    }

    #[test]
    fn multiply_examples() {
        let x = w(&[(0, 1)]);
        let e = ReducedWord::identity(F2);
        assert_eq!(e.multiply(&x).unwrap(), x);
        assert!(x.multiply(&x.invert()).unwrap().is_identity());
        let xy = w(&[(0, 1), (1, 1)]);
        let yinv_x = w(&[(1, -1), (0, 1)]);
        assert_eq!(xy.multiply(&yinv_x).unwrap(), w(&[(0, 2)]));
        let other = ReducedWord::identity(Alphabet::Free(3));
        assert!(matches!(
            x.multiply(&other),
            Err(WordError::AlphabetMismatch { .. })
        ));
    }

    #[test]
    fn invert_examples() {
        assert!(ReducedWord::identity(F2).invert().is_identity());
        assert_eq!(w(&[(0, 1), (1, -1)]).invert(), w(&[(1, 1), (0, -1)]));
    }

    #[test]
    fn commutator_examples() {
        let x = w(&[(0, 1)]);
        let y = w(&[(1, 1)]);
        let e = ReducedWord::identity(F2);
        assert!(x.commutator(&x).unwrap().is_identity());
        assert_eq!(
            x.commutator(&y).unwrap(),
            w(&[(0, 1), (1, 1), (0, -1), (1, -1)])
        );
        assert!(e.commutator(&y).unwrap().is_identity());
    }

    #[test]
    fn exponent_vector_examples() {
        let x = w(&[(0, 1)]);
        let y = w(&[(1, 1)]);
        assert!(x.commutator(&y).unwrap().exponent_vector().is_zero());
        let v = w(&[(0, 2), (1, -1)]).exponent_vector();
        assert_eq!(v.entries(), &[BigInt::from(2), BigInt::from(-1)]);
    }

    #[test]
    fn basis_pairs() {
        let x = w(&[(0, 1)]);
        let y = w(&[(1, 1)]);
        assert!(is_basis_pair(&x, &y).unwrap());
        assert!(!is_basis_pair(&x, &x).unwrap());
        assert!(is_basis_pair(&x, &w(&[(1, -1), (0, -1)])).unwrap());
        let z = ReducedWord::identity(Alphabet::Free(3));
        assert!(is_basis_pair(&z, &z).is_err());
    }

    #[test]
    fn display() {
        assert_eq!(w(&[(0, 2), (1, -1)]).to_string(), "x^2 y^-1");
        assert_eq!(ReducedWord::identity(F2).to_string(), "1");
        let p = ReducedWord::generator(Alphabet::Pure(4), pure_index(2, 4, 4)).unwrap();
        assert_eq!(p.to_string(), "A[2,4]");
    }

    #[test]
    fn pure_indexing_is_lexicographic() {
        for n in 2..8 {
            let mut k = 0;
            for i in 1..=n {
                for j in i + 1..=n {
                    assert_eq!(pure_index(i, j, n), k);
                    assert_eq!(pure_pair(k, n), (i, j));
                    k += 1;
                }
            }
            assert_eq!(k, Alphabet::Pure(n).size());
        }
    }

    proptest! {
        #[test]
        fn reduction_matches_naive_oracle(letters in letters_strategy(3, 60)) {
            let alphabet = Alphabet::Free(3);
            let r = ReducedWord::reduce(alphabet, &letters).unwrap();
            prop_assert_eq!(r.letters(), naive_reduce(letters.clone()));
            // idempotent
            prop_assert_eq!(ReducedWord::reduce(alphabet, &r.letters()).unwrap(), r);
        }

        #[test]
        fn group_axioms(a in letters_strategy(2, 20), b in letters_strategy(2, 20), c in letters_strategy(2, 20)) {
            let (a, b, c) = (
                ReducedWord::reduce(F2, &a).unwrap(),
                ReducedWord::reduce(F2, &b).unwrap(),
                ReducedWord::reduce(F2, &c).unwrap(),
            );
            let ab_c = a.multiply(&b).unwrap().multiply(&c).unwrap();
            let a_bc = a.multiply(&b.multiply(&c).unwrap()).unwrap();
            prop_assert_eq!(ab_c, a_bc);
            prop_assert_eq!(a.invert().invert(), a.clone());
            prop_assert!(a.multiply(&a.invert()).unwrap().is_identity());
            let e = ReducedWord::identity(F2);
            prop_assert_eq!(e.multiply(&a).unwrap(), a.clone());
            prop_assert_eq!(a.multiply(&e).unwrap(), a.clone());
            // multiply agrees with concatenate-then-reduce
            let mut cat = a.letters();
            cat.extend(b.letters());
            prop_assert_eq!(ReducedWord::reduce(F2, &cat).unwrap(), a.multiply(&b).unwrap());
        }

        #[test]
        fn exponent_vector_is_additive(a in letters_strategy(3, 30), b in letters_strategy(3, 30)) {
            let alphabet = Alphabet::Free(3);
            let a = ReducedWord::reduce(alphabet, &a).unwrap();
            let b = ReducedWord::reduce(alphabet, &b).unwrap();
            let sum = &a.exponent_vector() + &b.exponent_vector();
            prop_assert_eq!(a.multiply(&b).unwrap().exponent_vector(), sum);
        }
    }
}
