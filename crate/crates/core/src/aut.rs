//! Endomorphisms of `P_n` given by images of the `A_{i,j}`.
//!
//! Products follow the crate-wide right action: `compose_endos(e1, e2)` applies
//! `e1` first, so `β_a β_b` (written left to right) is conjugation by `σ_a σ_b`.

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::braid::{self, center_element, sigma_conjugation_images, BraidError, PureBraidWord};
use crate::hom::{pn_presentation, GeneratorMap, HomError};
use crate::word::{pure_index, pure_pair, Alphabet, ReducedWord, WordError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AutError {
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Braid(#[from] BraidError),
    #[error(transparent)]
    Hom(#[from] HomError),
    #[error("invalid index {what} for n = {n}")]
    Index { what: String, n: usize },
    #[error("strand count mismatch: {0} vs {1}")]
    StrandMismatch(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PnEndo {
    strands: usize,
    images: Vec<ReducedWord>,
    inverse: Option<Vec<ReducedWord>>,
    verified: bool,
}

impl PnEndo {
    pub fn new(strands: usize, images: Vec<ReducedWord>) -> Result<Self, AutError> {
        let alphabet = Alphabet::Pure(strands);
        if images.len() != alphabet.size() {
            return Err(AutError::Index {
                what: format!("{} images", images.len()),
                n: strands,
            });
        }
        for w in &images {
            if w.alphabet() != alphabet {
                return Err(WordError::WrongAlphabet {
                    expected: alphabet,
                    found: w.alphabet(),
                }
                .into());
            }
        }
        Ok(PnEndo {
            strands,
            images,
            inverse: None,
            verified: false,
        })
    }

    /// Attaches inverse images; checked by [`PnEndo::check_inverse`], not here.
    pub fn with_inverse(mut self, inverse: Vec<ReducedWord>) -> Result<Self, AutError> {
        let inv = PnEndo::new(self.strands, inverse)?;
        self.inverse = Some(inv.images);
        Ok(self)
    }

    pub fn identity(n: usize) -> Self {
        let alphabet = Alphabet::Pure(n);
        let images: Vec<_> = (0..alphabet.size())
            .map(|g| ReducedWord::generator(alphabet, g).unwrap())
            .collect();
        PnEndo {
            strands: n,
            inverse: Some(images.clone()),
            images,
            verified: false,
        }
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn images(&self) -> &[ReducedWord] {
        &self.images
    }

    pub fn image(&self, i: usize, j: usize) -> PureBraidWord {
        let w = self.images[pure_index(i, j, self.strands)].clone();
        PureBraidWord::new(self.strands, w).unwrap()
    }

    pub fn inverse(&self) -> Option<PnEndo> {
        self.inverse.as_ref().map(|inv| PnEndo {
            strands: self.strands,
            images: inv.clone(),
            inverse: Some(self.images.clone()),
            verified: false,
        })
    }

    pub fn is_verified(&self) -> bool {
        self.verified
    }

    /// Checks that every relator of `P_n` maps to the identity; sets the verified flag.
    pub fn verify_endo(&mut self) -> Result<bool, AutError> {
        self.verified = false;
        for r in pn_presentation(self.strands).relators() {
            let image = PureBraidWord::new(self.strands, self.substitute(r))?;
            if !braid::is_identity_pure(&image)? {
                return Ok(false);
            }
        }
        self.verified = true;
        Ok(true)
    }

    /// `Some(true)` if both composites with the supplied inverse are trivial
    /// generator-wise, `None` when no inverse is attached.
    pub fn check_inverse(&self) -> Result<Option<bool>, AutError> {
        let Some(inv) = self.inverse() else {
            return Ok(None);
        };
        let id = PnEndo::identity(self.strands);
        let forward = equal_generatorwise(&compose_endos(self, &inv)?, &id)?;
        let backward = equal_generatorwise(&compose_endos(&inv, self)?, &id)?;
        Ok(Some(forward && backward))
    }

    fn substitute(&self, w: &ReducedWord) -> ReducedWord {
        w.substitute(&self.images, Alphabet::Pure(self.strands))
    }
}

fn gen(n: usize, i: usize, j: usize) -> ReducedWord {
    ReducedWord::generator(Alphabet::Pure(n), pure_index(i, j, n)).unwrap()
}

fn product(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> ReducedWord {
    let mut w = ReducedWord::identity(Alphabet::Pure(n));
    for (i, j) in pairs {
        w.push_word(&gen(n, i, j), false);
    }
    w
}

fn z_power(n: usize, e: i64) -> ReducedWord {
    center_element(n).word().pow(&BigInt::from(e))
}

fn generator_images(n: usize, f: impl Fn(usize, usize) -> ReducedWord) -> Vec<ReducedWord> {
    (0..Alphabet::Pure(n).size())
        .map(|g| {
            let (i, j) = pure_pair(g, n);
            f(i, j)
        })
        .collect()
}

fn check_strands(n: usize) -> Result<(), AutError> {
    if n < 2 {
        return Err(AutError::Index {
            what: "strand count".into(),
            n,
        });
    }
    Ok(())
}

/// `ξ: A_{i,j} ↦ W⁻¹ A_{i,j}⁻¹ W` with `W = A_{i+1,j} ⋯ A_{j-1,j}`.
pub fn xi(n: usize) -> Result<PnEndo, AutError> {
    check_strands(n)?;
    let images = generator_images(n, |i, j| {
        let w = product(n, (i + 1..j).map(|m| (m, j)));
        let mut out = w.invert();
        out.push_word(&gen(n, i, j), true);
        out.push_word(&w, false);
        out
    });
    let e = PnEndo::new(n, images)?;
    // ξ is an involution
    let inv = e.images.clone();
    e.with_inverse(inv)
}

/// `β_k` for `1 <= k <= n`; `k < n` is conjugation by `σ_k`.
pub fn beta(k: usize, n: usize) -> Result<PnEndo, AutError> {
    check_strands(n)?;
    if k == 0 || k > n {
        return Err(AutError::Index {
            what: format!("k = {k}"),
            n,
        });
    }
    if k == n {
        return beta_n(n);
    }
    let images = sigma_conjugation_images(k, n, false);
    let inverse = sigma_conjugation_images(k, n, true);
    PnEndo::new(n, images)?.with_inverse(inverse)
}

/// `β_n: A_{i,n} ↦ (A_{i,n} A_{1,i} ⋯ A_{i-1,i} A_{i,i+1} ⋯ A_{i,n-1})⁻¹`, other generators fixed.
///
/// No inverse is attached.
pub fn beta_n(n: usize) -> Result<PnEndo, AutError> {
    check_strands(n)?;
    let images = generator_images(n, |i, j| {
        if j != n {
            return gen(n, i, j);
        }
        let pairs = std::iter::once((i, n))
            .chain((1..i).map(|m| (m, i)))
            .chain((i + 1..n).map(|m| (i, m)));
        product(n, pairs).invert()
    });
    PnEndo::new(n, images)
}

/// `ψ: A_{1,2} ↦ A_{1,2} Z_n⁻²`, an involution.
pub fn psi(n: usize) -> Result<PnEndo, AutError> {
    check_strands(n)?;
    let images = generator_images(n, |i, j| {
        if (i, j) == (1, 2) {
            let mut w = gen(n, 1, 2);
            w.push_word(&z_power(n, -2), false);
            w
        } else {
            gen(n, i, j)
        }
    });
    let inv = images.clone();
    PnEndo::new(n, images)?.with_inverse(inv)
}

/// `φ_{p,q}: A_{1,2} ↦ A_{1,2} Z_n`, `A_{p,q} ↦ A_{p,q} Z_n⁻¹`.
pub fn phi(p: usize, q: usize, n: usize) -> Result<PnEndo, AutError> {
    check_strands(n)?;
    if p == 0 || p >= q || q > n || (p, q) == (1, 2) {
        return Err(AutError::Index {
            what: format!("(p, q) = ({p}, {q})"),
            n,
        });
    }
    let build = |sign: i64| {
        generator_images(n, |i, j| {
            let mut w = gen(n, i, j);
            if (i, j) == (1, 2) {
                w.push_word(&z_power(n, sign), false);
            } else if (i, j) == (p, q) {
                w.push_word(&z_power(n, -sign), false);
            }
            w
        })
    };
    PnEndo::new(n, build(1))?.with_inverse(build(-1))
}

/// `α_I = (β_{i_1-1} ⋯ β_1)(β_{i_2-1} ⋯ β_2) ⋯ (β_{i_q-1} ⋯ β_q)`, left factor applied first.
pub fn alpha(subset: &[usize], n: usize) -> Result<PnEndo, AutError> {
    check_strands(n)?;
    let valid = subset.len() >= 2
        && subset[0] >= 1
        && subset.windows(2).all(|w| w[0] < w[1])
        && *subset.last().unwrap() <= n;
    if !valid {
        return Err(AutError::Index {
            what: format!("I = {subset:?}"),
            n,
        });
    }
    let mut acc = PnEndo::identity(n);
    for (pos, &ik) in subset.iter().enumerate() {
        let k = pos + 1;
        for m in (k..ik).rev() {
            acc = compose_endos(&acc, &beta(m, n)?)?;
        }
    }
    Ok(acc)
}

pub fn apply_endo(e: &PnEndo, w: &PureBraidWord) -> Result<PureBraidWord, AutError> {
    if w.strands() != e.strands {
        return Err(AutError::StrandMismatch(e.strands, w.strands()));
    }
    Ok(PureBraidWord::new(e.strands, e.substitute(w.word()))?)
}

/// `e1` followed by `e2`: `A ↦ e2(e1(A))`.
pub fn compose_endos(e1: &PnEndo, e2: &PnEndo) -> Result<PnEndo, AutError> {
    if e1.strands != e2.strands {
        return Err(AutError::StrandMismatch(e1.strands, e2.strands));
    }
    let images = e1.images.iter().map(|w| e2.substitute(w)).collect();
    let inverse = match (&e1.inverse, &e2.inverse) {
        (Some(i1), Some(i2)) => {
            let a = Alphabet::Pure(e1.strands);
            Some(i2.iter().map(|w| w.substitute(i1, a)).collect())
        }
        _ => None,
    };
    Ok(PnEndo {
        strands: e1.strands,
        images,
        inverse,
        verified: e1.verified && e2.verified,
    })
}

/// Generator-wise equality in `P_n`, decided by the Artin oracle.
pub fn equal_generatorwise(e1: &PnEndo, e2: &PnEndo) -> Result<bool, AutError> {
    if e1.strands != e2.strands {
        return Err(AutError::StrandMismatch(e1.strands, e2.strands));
    }
    for (a, b) in e1.images.iter().zip(&e2.images) {
        if a == b {
            continue;
        }
        let d = PureBraidWord::new(e1.strands, a.multiply(&b.invert())?)?;
        if !braid::is_identity_pure(&d)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `f ∘ e` for a map `f` out of `P_n`.
pub fn precompose(f: &GeneratorMap, e: &PnEndo) -> Result<GeneratorMap, AutError> {
    let images = e
        .images
        .iter()
        .map(|w| f.apply(w))
        .collect::<Result<_, _>>()?;
    Ok(GeneratorMap::new(pn_presentation(e.strands), f.target(), images)?)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransvectionReport {
    pub is_transvection: bool,
    /// `t_{i,j}` in generator order, when `is_transvection`.
    pub exponents: Option<Vec<BigInt>>,
    pub exponent_sum: Option<BigInt>,
}

impl TransvectionReport {
    /// Whether the exponent sum is `0` or `-2`, i.e. `Z_n ↦ Z_n^{±1}`.
    pub fn is_automorphism(&self) -> bool {
        self.exponent_sum
            .as_ref()
            .is_some_and(|s| s.is_zero() || *s == BigInt::from(-2))
    }

    fn negative() -> Self {
        TransvectionReport {
            is_transvection: false,
            exponents: None,
            exponent_sum: None,
        }
    }
}

/// Decides whether `e(A_{i,j}) = A_{i,j} Z_n^{t_{i,j}}` for every generator.
///
/// `Z_n` abelianizes to the all-ones vector, so `t_{i,j}` is read off the
/// exponent sums of `A_{i,j}⁻¹ e(A_{i,j})` and then confirmed by the Artin oracle.
pub fn is_transvection(e: &PnEndo) -> Result<TransvectionReport, AutError> {
    let n = e.strands;
    let z = center_element(n);
    let mut exponents = Vec::with_capacity(e.images.len());
    for (g, image) in e.images.iter().enumerate() {
        let mut d = ReducedWord::generator(Alphabet::Pure(n), g)?.invert();
        d.push_word(image, false);
        let v = d.exponent_vector();
        let t = v.entries().first().cloned().unwrap_or_default();
        if v.entries().iter().any(|c| *c != t) {
            return Ok(TransvectionReport::negative());
        }
        let mut check = d;
        check.push_word(&z.word().pow(&t), true);
        if !braid::is_identity_pure(&PureBraidWord::new(n, check)?)? {
            return Ok(TransvectionReport::negative());
        }
        exponents.push(t);
    }
    let sum = exponents.iter().sum();
    Ok(TransvectionReport {
        is_transvection: true,
        exponents: Some(exponents),
        exponent_sum: Some(sum),
    })
}
