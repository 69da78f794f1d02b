//! Braid words, the Artin representation and pure braid combing.
//!
//! Composition convention, used everywhere in the crate: braid words are read
//! left to right and the Artin action of a product is obtained by substituting
//! the images of the left factor into the images of the right factor,
//!
//! ```text
//! artin(uv)(x_m) = artin(u)(artin(v)(x_m))
//! ```
//!
//! and `permutation(uv) = permutation(u) ∘ permutation(v)`. Endomorphism
//! products (`compose_endos`, the `β` composites) follow the matching right
//! action: the left factor is applied first.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use thiserror::Error;

use crate::word::{pure_index, pure_pair, Alphabet, ReducedWord, WordError};

/// Default cap on the letter length of inputs and Artin images.
pub const DEFAULT_LENGTH_CAP: usize = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BraidError {
    #[error(transparent)]
    Word(#[from] WordError),
    #[error("invalid generator index ({i}, {j}) for {n} strands")]
    Index { i: usize, j: usize, n: usize },
    #[error("strand {k} out of range for {n} strands")]
    Strand { k: usize, n: usize },
    #[error("braid is not pure")]
    NotPure,
    #[error("word length {len} exceeds the cap of {cap} letters")]
    TooLong { len: usize, cap: usize },
    #[error("strand count mismatch: {0} vs {1}")]
    StrandMismatch(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: usize,
    word: ReducedWord,
}

impl BraidWord {
    pub fn new(strands: usize, word: ReducedWord) -> Result<Self, BraidError> {
        expect_alphabet(&word, Alphabet::Sigma(strands))?;
        Ok(BraidWord { strands, word })
    }

    pub fn identity(strands: usize) -> Self {
        BraidWord {
            strands,
            word: ReducedWord::identity(Alphabet::Sigma(strands)),
        }
    }

    /// `σ_i^exp` with 1-based `i`.
    pub fn sigma(strands: usize, i: usize, exp: i64) -> Result<Self, BraidError> {
        if i == 0 || i >= strands {
            return Err(BraidError::Index { i, j: i + 1, n: strands });
        }
        let word = ReducedWord::from_syllables(Alphabet::Sigma(strands), [(i - 1, exp)])?;
        Ok(BraidWord { strands, word })
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn word(&self) -> &ReducedWord {
        &self.word
    }

    pub fn multiply(&self, other: &BraidWord) -> Result<BraidWord, BraidError> {
        Ok(BraidWord {
            strands: self.strands,
            word: self.word.multiply(&other.word)?,
        })
    }

    pub fn invert(&self) -> BraidWord {
        BraidWord {
            strands: self.strands,
            word: self.word.invert(),
        }
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.word.fmt(f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PureBraidWord {
    strands: usize,
    word: ReducedWord,
}

impl PureBraidWord {
    pub fn new(strands: usize, word: ReducedWord) -> Result<Self, BraidError> {
        expect_alphabet(&word, Alphabet::Pure(strands))?;
        Ok(PureBraidWord { strands, word })
    }

    pub fn identity(strands: usize) -> Self {
        PureBraidWord {
            strands,
            word: ReducedWord::identity(Alphabet::Pure(strands)),
        }
    }

    /// `A_{i,j}` with `1 <= i < j <= n`.
    pub fn generator(strands: usize, i: usize, j: usize) -> Result<Self, BraidError> {
        check_pair(i, j, strands)?;
        let word = ReducedWord::generator(Alphabet::Pure(strands), pure_index(i, j, strands))?;
        Ok(PureBraidWord { strands, word })
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn word(&self) -> &ReducedWord {
        &self.word
    }

    pub fn into_word(self) -> ReducedWord {
        self.word
    }

    pub fn multiply(&self, other: &PureBraidWord) -> Result<PureBraidWord, BraidError> {
        Ok(PureBraidWord {
            strands: self.strands,
            word: self.word.multiply(&other.word)?,
        })
    }

    pub fn invert(&self) -> PureBraidWord {
        PureBraidWord {
            strands: self.strands,
            word: self.word.invert(),
        }
    }

    pub fn commutator(&self, other: &PureBraidWord) -> Result<PureBraidWord, BraidError> {
        Ok(PureBraidWord {
            strands: self.strands,
            word: self.word.commutator(&other.word)?,
        })
    }

    pub fn pow(&self, e: i64) -> PureBraidWord {
        PureBraidWord {
            strands: self.strands,
            word: self.word.pow(&BigInt::from(e)),
        }
    }
}

impl fmt::Display for PureBraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.word.fmt(f)
    }
}

fn expect_alphabet(word: &ReducedWord, expected: Alphabet) -> Result<(), BraidError> {
    if word.alphabet() != expected {
        return Err(WordError::WrongAlphabet {
            expected,
            found: word.alphabet(),
        }
        .into());
    }
    Ok(())
}

fn check_pair(i: usize, j: usize, n: usize) -> Result<(), BraidError> {
    if i == 0 || i >= j || j > n {
        return Err(BraidError::Index { i, j, n });
    }
    Ok(())
}

fn check_cap(word: &ReducedWord, cap: usize) -> Result<(), BraidError> {
    let len = word.len();
    if len > cap {
        return Err(BraidError::TooLong { len, cap });
    }
    Ok(())
}

/// An endomorphism of the free group `F_rank`, given by generator images.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FreeEndo {
    rank: usize,
    images: Vec<ReducedWord>,
}

impl FreeEndo {
    pub fn identity(rank: usize) -> Self {
        let alphabet = Alphabet::Free(rank);
        FreeEndo {
            rank,
            images: (0..rank)
                .map(|m| ReducedWord::generator(alphabet, m).expect("index in range"))
                .collect(),
        }
    }

    pub fn from_images(rank: usize, images: Vec<ReducedWord>) -> Result<Self, BraidError> {
        if images.len() != rank {
            return Err(BraidError::StrandMismatch(images.len(), rank));
        }
        for w in &images {
            expect_alphabet(w, Alphabet::Free(rank))?;
        }
        Ok(FreeEndo { rank, images })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn images(&self) -> &[ReducedWord] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(m, w)| {
            let s = w.syllables();
            s.len() == 1 && s[0].letter == m && s[0].exp == BigInt::from(1)
        })
    }

    /// Applies the endomorphism to a word of `F_rank`.
    pub fn apply(&self, w: &ReducedWord) -> Result<ReducedWord, BraidError> {
        expect_alphabet(w, Alphabet::Free(self.rank))?;
        Ok(w.substitute(&self.images, Alphabet::Free(self.rank)))
    }

    /// The endomorphism `self ∘ inner` (apply `inner`, then `self`).
    pub fn after(&self, inner: &FreeEndo) -> Result<FreeEndo, BraidError> {
        if self.rank != inner.rank {
            return Err(BraidError::StrandMismatch(self.rank, inner.rank));
        }
        let images = inner
            .images
            .iter()
            .map(|w| w.substitute(&self.images, Alphabet::Free(self.rank)))
            .collect();
        Ok(FreeEndo {
            rank: self.rank,
            images,
        })
    }
}

/// A permutation of `{1..n}`, stored 0-based. `a.compose(b)` is `a ∘ b`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Option<Self> {
        let mut seen = vec![false; images.len()];
        for &m in &images {
            if m >= images.len() || std::mem::replace(&mut seen[m], true) {
                return None;
            }
        }
        Some(Permutation { images })
    }

    /// The transposition of the 1-based points `a` and `b`.
    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        let mut p = Self::identity(n);
        p.images.swap(a - 1, b - 1);
        p
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of the 1-based point `m`.
    pub fn apply(&self, m: usize) -> usize {
        self.images[m - 1] + 1
    }

    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: other.images.iter().map(|&m| self.images[m]).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(k, &m)| k == m)
    }

    /// Coxeter length: the number of inversions of the one-line notation.
    pub fn length(&self) -> usize {
        let n = self.images.len();
        (0..n)
            .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
            .filter(|&(a, b)| self.images[a] > self.images[b])
            .count()
    }

    /// `self ∘ (i i+1)`, i.e. the one-line notation with positions `i`, `i+1` swapped.
    fn times_simple(&self, i: usize) -> Permutation {
        let mut p = self.clone();
        p.images.swap(i - 1, i);
        p
    }

    /// Whether `self ∘ (i i+1)` is longer than `self`.
    fn ascends_at(&self, i: usize) -> bool {
        self.images[i - 1] < self.images[i]
    }

    /// A reduced word `[a_1, ..., a_r]` with `self = s_{a_1} ∘ ... ∘ s_{a_r}`.
    fn reduced_word(&self) -> Vec<usize> {
        let mut word = Vec::new();
        let mut p = self.clone();
        while let Some(i) = (1..p.degree()).find(|&i| !p.ascends_at(i)) {
            word.push(i);
            p = p.times_simple(i);
        }
        word.reverse();
        word
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut seen = vec![false; self.images.len()];
        let mut any = false;
        for start in 0..self.images.len() {
            if seen[start] || self.images[start] == start {
                continue;
            }
            any = true;
            write!(f, "(")?;
            let mut m = start;
            let mut first = true;
            while !seen[m] {
                seen[m] = true;
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{}", m + 1)?;
                first = false;
                m = self.images[m];
            }
            write!(f, ")")?;
        }
        if !any {
            write!(f, "()")?;
        }
        Ok(())
    }
}

/// `A_{i,j} = σ_{j-1} ⋯ σ_{i+1} σ_i² σ_{i+1}⁻¹ ⋯ σ_{j-1}⁻¹`.
pub fn pure_generator_sigma(i: usize, j: usize, n: usize) -> Result<BraidWord, BraidError> {
    check_pair(i, j, n)?;
    let mut raw: Vec<(usize, i64)> = Vec::new();
    raw.extend((i + 1..j).rev().map(|k| (k - 1, 1)));
    raw.push((i - 1, 2));
    raw.extend((i + 1..j).map(|k| (k - 1, -1)));
    let word = ReducedWord::from_syllables(Alphabet::Sigma(n), raw)?;
    Ok(BraidWord { strands: n, word })
}

/// The alternative expression `σ_i⁻¹ ⋯ σ_{j-2}⁻¹ σ_{j-1}² σ_{j-2} ⋯ σ_i`.
pub fn pure_generator_sigma_alt(i: usize, j: usize, n: usize) -> Result<BraidWord, BraidError> {
    check_pair(i, j, n)?;
    let mut raw: Vec<(usize, i64)> = Vec::new();
    raw.extend((i..j - 1).map(|k| (k - 1, -1)));
    raw.push((j - 2, 2));
    raw.extend((i..j - 1).rev().map(|k| (k - 1, 1)));
    let word = ReducedWord::from_syllables(Alphabet::Sigma(n), raw)?;
    Ok(BraidWord { strands: n, word })
}

pub fn artin_action(b: &BraidWord) -> Result<FreeEndo, BraidError> {
    artin_action_with_cap(b, DEFAULT_LENGTH_CAP)
}

/// Artin action of `b` on `F_n`, with `σ_i: x_i ↦ x_i x_{i+1} x_i⁻¹, x_{i+1} ↦ x_i`.
///
/// Errors if the input or any intermediate image exceeds `cap` letters.
pub fn artin_action_with_cap(b: &BraidWord, cap: usize) -> Result<FreeEndo, BraidError> {
    check_cap(&b.word, cap)?;
    let mut endo = FreeEndo::identity(b.strands);
    for s in b.word.syllables() {
        let i = s.letter;
        let count = s.exp.abs().to_usize().ok_or(BraidError::TooLong {
            len: usize::MAX,
            cap,
        })?;
        for _ in 0..count {
            let im = &mut endo.images;
            if s.exp.is_positive() {
                // x_i ↦ x_i x_{i+1} x_i⁻¹, x_{i+1} ↦ x_i
                let mut left = im[i].clone();
                left.push_word(&im[i + 1], false);
                left.push_word(&im[i], true);
                let right = std::mem::replace(&mut im[i], left);
                im[i + 1] = right;
            } else {
                // x_i ↦ x_{i+1}, x_{i+1} ↦ x_{i+1}⁻¹ x_i x_{i+1}
                let mut right = im[i + 1].invert();
                right.push_word(&im[i], false);
                right.push_word(&im[i + 1], false);
                let left = std::mem::replace(&mut im[i + 1], right);
                im[i] = left;
            }
            check_cap(&im[i], cap)?;
            check_cap(&im[i + 1], cap)?;
        }
    }
    Ok(endo)
}

/// Equality oracle for `B_n`: `b` is trivial iff its Artin action is.
pub fn is_identity(b: &BraidWord) -> Result<bool, BraidError> {
    Ok(artin_action(b)?.is_identity())
}

pub fn braids_equal(u: &BraidWord, v: &BraidWord) -> Result<bool, BraidError> {
    is_identity(&u.multiply(&v.invert())?)
}

pub fn is_identity_pure(p: &PureBraidWord) -> Result<bool, BraidError> {
    is_identity(&expand_to_sigma(p)?)
}

pub fn pure_equal(u: &PureBraidWord, v: &PureBraidWord) -> Result<bool, BraidError> {
    if u.strands != v.strands {
        return Err(BraidError::StrandMismatch(u.strands, v.strands));
    }
    is_identity_pure(&u.multiply(&v.invert())?)
}

pub fn permutation(b: &BraidWord) -> Permutation {
    let mut p = Permutation::identity(b.strands);
    for s in b.word.syllables() {
        if s.exp.bit(0) {
            p = p.times_simple(s.letter + 1);
        }
    }
    p
}

pub fn is_pure(b: &BraidWord) -> bool {
    permutation(b).is_identity()
}

/// Substitutes the σ-expression of every `A_{i,j}`.
pub fn expand_to_sigma(p: &PureBraidWord) -> Result<BraidWord, BraidError> {
    let n = p.strands;
    let images = (0..Alphabet::Pure(n).size())
        .map(|k| {
            let (i, j) = pure_pair(k, n);
            pure_generator_sigma(i, j, n).map(|b| b.word)
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(BraidWord {
        strands: n,
        word: p.word.substitute(&images, Alphabet::Sigma(n)),
    })
}

/// Forgets strand `k`: `A_{i,j} ↦ 1` if `k ∈ {i, j}`, else the reindexed generator.
pub fn delete_strand(p: &PureBraidWord, k: usize) -> Result<PureBraidWord, BraidError> {
    let n = p.strands;
    if k == 0 || k > n {
        return Err(BraidError::Strand { k, n });
    }
    let target = Alphabet::Pure(n - 1);
    let shift = |m: usize| if m > k { m - 1 } else { m };
    let images: Vec<ReducedWord> = (0..Alphabet::Pure(n).size())
        .map(|g| {
            let (i, j) = pure_pair(g, n);
            if i == k || j == k {
                ReducedWord::identity(target)
            } else {
                ReducedWord::generator(target, pure_index(shift(i), shift(j), n - 1))
                    .expect("index in range")
            }
        })
        .collect();
    Ok(PureBraidWord {
        strands: n - 1,
        word: p.word.substitute(&images, target),
    })
}

/// Nontrivial, and trivial after deleting any single strand.
pub fn brunnian_check(p: &PureBraidWord) -> Result<bool, BraidError> {
    if is_identity_pure(p)? {
        return Ok(false);
    }
    for k in 1..=p.strands {
        if !is_identity_pure(&delete_strand(p, k)?)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `Z_n = (A_{1,2})(A_{1,3} A_{2,3}) ⋯ (A_{1,n} ⋯ A_{n-1,n})`.
pub fn center_element(n: usize) -> PureBraidWord {
    let raw = (2..=n).flat_map(|j| (1..j).map(move |i| (pure_index(i, j, n), 1)));
    PureBraidWord {
        strands: n,
        word: ReducedWord::from_syllables(Alphabet::Pure(n), raw).expect("indices in range"),
    }
}

fn gen_word(n: usize, i: usize, j: usize) -> ReducedWord {
    ReducedWord::generator(Alphabet::Pure(n), pure_index(i, j, n)).expect("index in range")
}

/// `σ_k⁻¹ A_{i,j} σ_k` as an A-word, for `1 <= k <= n-1`.
pub fn sigma_conjugate(k: usize, i: usize, j: usize, n: usize) -> Result<PureBraidWord, BraidError> {
    check_pair(i, j, n)?;
    if k == 0 || k >= n {
        return Err(BraidError::Strand { k, n });
    }
    let word = if k + 1 == i {
        gen_word(n, i - 1, j)
    } else if k == i && i + 1 < j {
        let a = gen_word(n, i, i + 1);
        let mut w = a.invert();
        w.push_word(&gen_word(n, i + 1, j), false);
        w.push_word(&a, false);
        w
    } else if k + 1 == j && k > i {
        gen_word(n, i, j - 1)
    } else if k == j {
        let a = gen_word(n, j, j + 1);
        let mut w = a.invert();
        w.push_word(&gen_word(n, i, j + 1), false);
        w.push_word(&a, false);
        w
    } else {
        gen_word(n, i, j)
    };
    Ok(PureBraidWord { strands: n, word })
}

/// `σ_k A_{i,j} σ_k⁻¹ = A_{k,k+1} (σ_k⁻¹ A_{i,j} σ_k) A_{k,k+1}⁻¹`.
pub fn sigma_conjugate_inverse(
    k: usize,
    i: usize,
    j: usize,
    n: usize,
) -> Result<PureBraidWord, BraidError> {
    let inner = sigma_conjugate(k, i, j, n)?;
    let a = gen_word(n, k, k + 1);
    let mut w = a.clone();
    w.push_word(&inner.word, false);
    w.push_word(&a, true);
    Ok(PureBraidWord { strands: n, word: w })
}

/// Generator images of `X ↦ σ_k^{±1} X σ_k^{∓1}` (`inverse = false` gives `σ_k⁻¹ X σ_k`).
pub(crate) fn sigma_conjugation_images(k: usize, n: usize, inverse: bool) -> Vec<ReducedWord> {
    (0..Alphabet::Pure(n).size())
        .map(|g| {
            let (i, j) = pure_pair(g, n);
            let p = if inverse {
                sigma_conjugate_inverse(k, i, j, n)
            } else {
                sigma_conjugate(k, i, j, n)
            };
            p.expect("indices in range").word
        })
        .collect()
}

/// Rewrites a pure σ-word as an A-word with the same Artin action.
///
/// The word is scanned left to right while keeping the prefix in the form
/// `P · t_π`, where `P` is an A-word and `t_π` the positive permutation braid
/// of the current permutation. A letter that shortens `t_π` produces a
/// `σ_i²` which is conjugated into `P`.
pub fn comb(b: &BraidWord) -> Result<PureBraidWord, BraidError> {
    if !is_pure(b) {
        return Err(BraidError::NotPure);
    }
    check_cap(&b.word, DEFAULT_LENGTH_CAP)?;
    let n = b.strands;
    let alphabet = Alphabet::Pure(n);
    let conj_up: Vec<Vec<ReducedWord>> = (1..n).map(|k| sigma_conjugation_images(k, n, true)).collect();
    let mut memo: HashMap<(Permutation, usize), ReducedWord> = HashMap::new();
    // t A_{i,i+1} t⁻¹ for the positive permutation braid t of `perm`
    let mut conjugated = |perm: &Permutation, i: usize| -> ReducedWord {
        memo.entry((perm.clone(), i))
            .or_insert_with(|| {
                let mut w = gen_word(n, i, i + 1);
                // t = σ_{a_1} ⋯ σ_{a_r}: innermost conjugation first
                for &a in perm.reduced_word().iter().rev() {
                    w = w.substitute(&conj_up[a - 1], alphabet);
                }
                w
            })
            .clone()
    };

    let mut acc = ReducedWord::identity(alphabet);
    let mut perm = Permutation::identity(n);
    for s in b.word.syllables() {
        let i = s.letter + 1;
        let count = s.exp.abs().to_usize().expect("checked by cap");
        for _ in 0..count {
            // t_π σ_i
            if perm.ascends_at(i) {
                perm = perm.times_simple(i);
            } else {
                perm = perm.times_simple(i);
                let c = conjugated(&perm, i);
                acc.push_word(&c, false);
            }
            if s.exp.is_negative() {
                // σ_i⁻¹ = σ_i A_{i,i+1}⁻¹, and t_π A⁻¹ = (t_π A t_π⁻¹)⁻¹ t_π
                let c = conjugated(&perm, i);
                acc.push_word(&c, true);
            }
        }
    }
    debug_assert!(perm.is_identity());
    Ok(PureBraidWord {
        strands: n,
        word: acc,
    })
}
