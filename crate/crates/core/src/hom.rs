//! Finitely presented groups and homomorphisms given by generator images.

use std::fmt;

use thiserror::Error;

use crate::braid::{self, BraidError, BraidWord, FreeEndo, PureBraidWord};
use crate::word::{is_basis_pair, pure_index, pure_pair, Alphabet, ReducedWord, WordError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomError {
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Braid(#[from] BraidError),
    #[error("expected {expected} generator images, got {found}")]
    ImageCount { expected: usize, found: usize },
    #[error("invalid subset {subset:?} for n = {n}: need 3 or 4 sorted indices in 1..={n}")]
    Subset { subset: Vec<usize>, n: usize },
    #[error("maps do not compose: target {target} vs domain {domain}")]
    Incompatible { target: Alphabet, domain: Alphabet },
    #[error("not an automorphism of F_2: {0}")]
    NotAutomorphism(String),
    #[error("map is not into F_2")]
    NotIntoF2,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    alphabet: Alphabet,
    relators: Vec<ReducedWord>,
}

impl Presentation {
    pub fn new(alphabet: Alphabet, relators: Vec<ReducedWord>) -> Result<Self, HomError> {
        for r in &relators {
            if r.alphabet() != alphabet {
                return Err(WordError::WrongAlphabet {
                    expected: alphabet,
                    found: r.alphabet(),
                }
                .into());
            }
        }
        Ok(Presentation { alphabet, relators })
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn relators(&self) -> &[ReducedWord] {
        &self.relators
    }

    pub fn generator_count(&self) -> usize {
        self.alphabet.size()
    }
}

/// Which of the relation cases of the pure braid presentation a tuple falls in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RelationCase {
    /// `i < r < s < j`: commute.
    Nested,
    /// `r < s < i < j`: commute.
    Disjoint,
    /// `r < s = i < j`.
    Adjacent,
    /// `r = i < s < j`.
    SharedStart,
    /// `r < i < s < j`.
    Crossing,
}

pub fn classify(r: usize, s: usize, i: usize, j: usize) -> Option<RelationCase> {
    if !(r < s && i < j && s < j) {
        return None;
    }
    Some(if i < r {
        RelationCase::Nested
    } else if s < i {
        RelationCase::Disjoint
    } else if s == i {
        RelationCase::Adjacent
    } else if r == i {
        RelationCase::SharedStart
    } else {
        RelationCase::Crossing
    })
}

/// Relators `A_{r,s}⁻¹ A_{i,j} A_{r,s} · (RHS)⁻¹` of `P_n`, one per admissible tuple.
pub fn pn_presentation(n: usize) -> Presentation {
    let alphabet = Alphabet::Pure(n);
    let g = |a: usize, b: usize| {
        ReducedWord::generator(alphabet, pure_index(a, b, n)).expect("index in range")
    };
    let conj = |c: &ReducedWord, x: &ReducedWord| {
        let mut w = c.clone();
        w.push_word(x, false);
        w.push_word(c, true);
        w
    };
    let mut relators = Vec::new();
    for s in 2..=n {
        for r in 1..s {
            for j in 2..=n {
                for i in 1..j {
                    let Some(case) = classify(r, s, i, j) else {
                        continue;
                    };
                    let aij = g(i, j);
                    let rhs = match case {
                        RelationCase::Nested | RelationCase::Disjoint => aij.clone(),
                        RelationCase::Adjacent => conj(&g(r, j), &aij),
                        RelationCase::SharedStart => {
                            let c = g(r, j).multiply(&g(s, j)).expect("same alphabet");
                            conj(&c, &aij)
                        }
                        RelationCase::Crossing => {
                            let c = g(r, j).commutator(&g(s, j)).expect("same alphabet");
                            conj(&c, &aij)
                        }
                    };
                    let ars = g(r, s);
                    let mut w = ars.invert();
                    w.push_word(&aij, false);
                    w.push_word(&ars, false);
                    w.push_word(&rhs, true);
                    relators.push(w);
                }
            }
        }
    }
    Presentation { alphabet, relators }
}

/// Artin's presentation of `B_n`.
pub fn bn_presentation(n: usize) -> Presentation {
    let alphabet = Alphabet::Sigma(n);
    let mut relators = Vec::new();
    for i in 1..n.saturating_sub(1) {
        // σ_i σ_{i+1} σ_i (σ_{i+1} σ_i σ_{i+1})⁻¹
        let raw = [(i - 1, 1), (i, 1), (i - 1, 1), (i, -1), (i - 1, -1), (i, -1)];
        relators.push(ReducedWord::from_syllables(alphabet, raw).expect("index in range"));
    }
    for i in 1..n {
        for j in i + 2..n {
            let raw = [(j - 1, 1), (i - 1, 1), (j - 1, -1), (i - 1, -1)];
            relators.push(ReducedWord::from_syllables(alphabet, raw).expect("index in range"));
        }
    }
    Presentation { alphabet, relators }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TargetKind {
    Free(usize),
    Braid(usize),
    PureBraid(usize),
}

impl TargetKind {
    pub fn alphabet(&self) -> Alphabet {
        match *self {
            TargetKind::Free(k) => Alphabet::Free(k),
            TargetKind::Braid(n) => Alphabet::Sigma(n),
            TargetKind::PureBraid(n) => Alphabet::Pure(n),
        }
    }

    /// Triviality in the target: free reduction for free groups, the Artin
    /// oracle for braid groups.
    pub fn is_trivial(&self, w: &ReducedWord) -> Result<bool, HomError> {
        Ok(match *self {
            TargetKind::Free(_) => w.is_identity(),
            TargetKind::Braid(n) => braid::is_identity(&BraidWord::new(n, w.clone())?)?,
            TargetKind::PureBraid(n) => {
                braid::is_identity_pure(&PureBraidWord::new(n, w.clone())?)?
            }
        })
    }
}

impl fmt::Display for TargetKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.alphabet().fmt(f)
    }
}

/// A homomorphism from a presented group, given by one image per generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorMap {
    domain: Presentation,
    target: TargetKind,
    images: Vec<ReducedWord>,
    verified: bool,
}

impl GeneratorMap {
    pub fn new(
        domain: Presentation,
        target: TargetKind,
        images: Vec<ReducedWord>,
    ) -> Result<Self, HomError> {
        if images.len() != domain.generator_count() {
            return Err(HomError::ImageCount {
                expected: domain.generator_count(),
                found: images.len(),
            });
        }
        let alphabet = target.alphabet();
        for w in &images {
            if w.alphabet() != alphabet {
                return Err(WordError::WrongAlphabet {
                    expected: alphabet,
                    found: w.alphabet(),
                }
                .into());
            }
        }
        Ok(GeneratorMap {
            domain,
            target,
            images,
            verified: false,
        })
    }

    pub fn identity(domain: Presentation) -> Result<Self, HomError> {
        let alphabet = domain.alphabet();
        let target = match alphabet {
            Alphabet::Free(k) => TargetKind::Free(k),
            Alphabet::Sigma(n) => TargetKind::Braid(n),
            Alphabet::Pure(n) => TargetKind::PureBraid(n),
        };
        let images = (0..alphabet.size())
            .map(|g| ReducedWord::generator(alphabet, g))
            .collect::<Result<_, _>>()?;
        Self::new(domain, target, images)
    }

    pub fn domain(&self) -> &Presentation {
        &self.domain
    }

    pub fn target(&self) -> TargetKind {
        self.target
    }

    pub fn images(&self) -> &[ReducedWord] {
        &self.images
    }

    pub fn is_verified(&self) -> bool {
        self.verified
    }

    /// Substitutes generator images into `w` and reduces in the target.
    pub fn apply(&self, w: &ReducedWord) -> Result<ReducedWord, HomError> {
        if w.alphabet() != self.domain.alphabet {
            return Err(WordError::AlphabetMismatch {
                left: w.alphabet(),
                right: self.domain.alphabet,
            }
            .into());
        }
        Ok(w.substitute(&self.images, self.target.alphabet()))
    }

    /// Checks that every relator maps to the identity; sets the verified flag on success.
    pub fn verify_hom(&mut self) -> Result<bool, HomError> {
        for r in &self.domain.relators {
            let image = self.apply(r)?;
            if !self.target.is_trivial(&image)? {
                self.verified = false;
                return Ok(false);
            }
        }
        self.verified = true;
        Ok(true)
    }

    /// The first relator whose image is nontrivial, if any.
    pub fn failing_relator(&self) -> Result<Option<ReducedWord>, HomError> {
        for r in &self.domain.relators {
            if !self.target.is_trivial(&self.apply(r)?)? {
                return Ok(Some(r.clone()));
            }
        }
        Ok(None)
    }

    /// `outer ∘ self`.
    pub fn then(&self, outer: &GeneratorMap) -> Result<GeneratorMap, HomError> {
        if self.target.alphabet() != outer.domain.alphabet {
            return Err(HomError::Incompatible {
                target: self.target.alphabet(),
                domain: outer.domain.alphabet,
            });
        }
        let images = self
            .images
            .iter()
            .map(|w| outer.apply(w))
            .collect::<Result<_, _>>()?;
        Ok(GeneratorMap {
            domain: self.domain.clone(),
            target: outer.target,
            images,
            verified: self.verified && outer.verified,
        })
    }

    /// Generator-wise comparison of two maps with the same domain.
    pub fn agrees_with(&self, other: &GeneratorMap) -> Result<bool, HomError> {
        if self.domain.alphabet != other.domain.alphabet || self.target != other.target {
            return Ok(false);
        }
        if let TargetKind::Free(_) = self.target {
            return Ok(self.images == other.images);
        }
        for (a, b) in self.images.iter().zip(&other.images) {
            let d = a.multiply(&b.invert())?;
            if !self.target.is_trivial(&d)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn validate_subset(n: usize, subset: &[usize]) -> Result<(), HomError> {
    let ok = matches!(subset.len(), 3 | 4)
        && subset[0] >= 1
        && subset.windows(2).all(|w| w[0] < w[1])
        && *subset.last().unwrap() <= n;
    if !ok {
        return Err(HomError::Subset {
            subset: subset.to_vec(),
            n,
        });
    }
    Ok(())
}

/// The epimorphism `f_I: P_n → F_2 = ⟨x, y⟩` for `|I| ∈ {3, 4}`.
pub fn f_subset(n: usize, subset: &[usize]) -> Result<GeneratorMap, HomError> {
    validate_subset(n, subset)?;
    let f2 = Alphabet::Free(2);
    let word = |raw: &[(usize, i64)]| ReducedWord::from_syllables(f2, raw.iter().copied()).unwrap();
    let x = word(&[(0, 1)]);
    let y = word(&[(1, 1)]);
    let yx_inv = word(&[(1, -1), (0, -1)]);
    let xyx_inv = word(&[(0, 1), (1, 1), (0, -1)]);
    let one = ReducedWord::identity(f2);

    let pos = |m: usize| subset.iter().position(|&v| v == m);
    let images = (0..Alphabet::Pure(n).size())
        .map(|g| {
            let (r, s) = pure_pair(g, n);
            match (pos(r), pos(s), subset.len()) {
                (Some(0), Some(1), _) => x.clone(),
                (Some(0), Some(2), _) => y.clone(),
                (Some(1), Some(2), _) => yx_inv.clone(),
                (Some(0), Some(3), 4) => yx_inv.clone(),
                (Some(1), Some(3), 4) => xyx_inv.clone(),
                (Some(2), Some(3), 4) => x.clone(),
                _ => one.clone(),
            }
        })
        .collect();
    GeneratorMap::new(pn_presentation(n), TargetKind::Free(2), images)
}

/// An automorphism of `F_2` certified by an explicit inverse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct F2Automorphism {
    forward: FreeEndo,
    inverse: FreeEndo,
}

impl F2Automorphism {
    pub fn new(forward: FreeEndo, inverse: FreeEndo) -> Result<Self, HomError> {
        if forward.rank() != 2 || inverse.rank() != 2 {
            return Err(HomError::NotAutomorphism("rank is not 2".into()));
        }
        let [u, v] = forward.images() else {
            unreachable!()
        };
        if !is_basis_pair(u, v)? {
            return Err(HomError::NotAutomorphism(format!(
                "images {u}, {v} are not a homology basis"
            )));
        }
        if !forward.after(&inverse)?.is_identity() || !inverse.after(&forward)?.is_identity() {
            return Err(HomError::NotAutomorphism(
                "supplied inverse does not invert the map".into(),
            ));
        }
        Ok(F2Automorphism { forward, inverse })
    }

    /// From images `x ↦ a`, `y ↦ b` and `x ↦ c`, `y ↦ d` of the inverse, in `x`/`y` syntax
    /// as syllable lists.
    fn from_raw(forward: [&[(usize, i64)]; 2], inverse: [&[(usize, i64)]; 2]) -> Self {
        let build = |imgs: [&[(usize, i64)]; 2]| {
            let images = imgs
                .iter()
                .map(|raw| ReducedWord::from_syllables(Alphabet::Free(2), raw.iter().copied()).unwrap())
                .collect();
            FreeEndo::from_images(2, images).unwrap()
        };
        Self::new(build(forward), build(inverse)).expect("valid automorphism")
    }

    pub fn forward(&self) -> &FreeEndo {
        &self.forward
    }

    pub fn inverse(&self) -> &FreeEndo {
        &self.inverse
    }

    pub fn identity() -> Self {
        Self::from_raw([&[(0, 1)], &[(1, 1)]], [&[(0, 1)], &[(1, 1)]])
    }

    /// `x ↦ x⁻¹`, `y ↦ x y⁻¹ x⁻¹` (the twist accompanying `ξ`).
    pub fn lambda_xi() -> Self {
        // an involution
        let f: [&[(usize, i64)]; 2] = [&[(0, -1)], &[(0, 1), (1, -1), (0, -1)]];
        Self::from_raw(f, f)
    }

    /// `λ₁: x ↦ x`, `y ↦ x⁻¹ y⁻¹`.
    pub fn lambda1() -> Self {
        Self::from_raw(
            [&[(0, 1)], &[(0, -1), (1, -1)]],
            [&[(0, 1)], &[(1, -1), (0, -1)]],
        )
    }

    /// `λ₂: x ↦ x y x⁻¹`, `y ↦ x`.
    pub fn lambda2() -> Self {
        Self::from_raw(
            [&[(0, 1), (1, 1), (0, -1)], &[(0, 1)]],
            [&[(1, 1)], &[(1, -1), (0, 1), (1, 1)]],
        )
    }

    pub fn inverted(&self) -> Self {
        F2Automorphism {
            forward: self.inverse.clone(),
            inverse: self.forward.clone(),
        }
    }
}

/// `λ ∘ m` for a map `m` into `F_2`.
pub fn compose_with_f2_auto(
    m: &GeneratorMap,
    lambda: &F2Automorphism,
) -> Result<GeneratorMap, HomError> {
    if m.target != TargetKind::Free(2) {
        return Err(HomError::NotIntoF2);
    }
    let images = m
        .images
        .iter()
        .map(|w| lambda.forward.apply(w))
        .collect::<Result<_, _>>()?;
    Ok(GeneratorMap {
        domain: m.domain.clone(),
        target: m.target,
        images,
        verified: m.verified,
    })
}

/// `B_4 → B_3`, `σ_1 ↦ σ_1`, `σ_2 ↦ σ_2`, `σ_3 ↦ σ_1`.
pub fn b4_to_b3() -> GeneratorMap {
    let s3 = Alphabet::Sigma(3);
    let images = [0usize, 1, 0]
        .iter()
        .map(|&g| ReducedWord::generator(s3, g).unwrap())
        .collect();
    GeneratorMap::new(bn_presentation(4), TargetKind::Braid(3), images).expect("three images")
}

/// The restriction `P_4 → P_3` of [`b4_to_b3`], obtained by combing the
/// image of each σ-expanded generator.
pub fn g_star() -> Result<GeneratorMap, HomError> {
    let g = b4_to_b3();
    let n = 4;
    let images = (0..Alphabet::Pure(n).size())
        .map(|k| {
            let (i, j) = pure_pair(k, n);
            let sigma = braid::pure_generator_sigma(i, j, n)?;
            let image = BraidWord::new(3, g.apply(sigma.word())?)?;
            Ok(braid::comb(&image)?.into_word())
        })
        .collect::<Result<_, HomError>>()?;
    GeneratorMap::new(pn_presentation(4), TargetKind::PureBraid(3), images)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2(raw: &[(usize, i64)]) -> ReducedWord {
        ReducedWord::from_syllables(Alphabet::Free(2), raw.iter().copied()).unwrap()
    }

    fn gen(n: usize, i: usize, j: usize) -> ReducedWord {
        ReducedWord::generator(Alphabet::Pure(n), pure_index(i, j, n)).unwrap()
    }

    /// Σ_j (j - 1) · C(j - 1, 2): pick `j`, then `i < j` and a pair `r < s < j`.
    fn relator_count_oracle(n: usize) -> usize {
        (1..=n).map(|j| (j - 1) * (j - 1) * (j.saturating_sub(2)) / 2).sum()
    }

    #[test]
    fn presentation_sizes() {
        let p2 = pn_presentation(2);
        assert_eq!(p2.generator_count(), 1);
        assert!(p2.relators().is_empty());
        let p3 = pn_presentation(3);
        assert_eq!(p3.generator_count(), 3);
        assert_eq!(p3.relators().len(), 2);
        for n in 2..=7 {
            assert_eq!(pn_presentation(n).relators().len(), relator_count_oracle(n));
        }
    }

    #[test]
    fn presentation_relators_are_trivial_braids() {
        for n in 2..=5 {
            for r in pn_presentation(n).relators() {
                let p = PureBraidWord::new(n, r.clone()).unwrap();
                assert!(braid::is_identity_pure(&p).unwrap(), "{r}");
            }
        }
        for n in 2..=6 {
            for r in bn_presentation(n).relators() {
                assert!(braid::is_identity(&BraidWord::new(n, r.clone()).unwrap()).unwrap());
            }
        }
    }

    #[test]
    fn f_subset_images() {
        let f = f_subset(3, &[1, 2, 3]).unwrap();
        assert_eq!(f.apply(&gen(3, 1, 2)).unwrap(), f2(&[(0, 1)]));
        assert_eq!(f.apply(&gen(3, 1, 3)).unwrap(), f2(&[(1, 1)]));
        assert_eq!(f.apply(&gen(3, 2, 3)).unwrap(), f2(&[(1, -1), (0, -1)]));
        let f = f_subset(4, &[1, 2, 3, 4]).unwrap();
        assert_eq!(f.apply(&gen(4, 2, 4)).unwrap(), f2(&[(0, 1), (1, 1), (0, -1)]));
        assert_eq!(f.apply(&gen(4, 3, 4)).unwrap(), f2(&[(0, 1)]));
        let f = f_subset(4, &[1, 2, 4]).unwrap();
        assert!(f.apply(&gen(4, 1, 3)).unwrap().is_identity());
        for bad in [&[1, 2][..], &[1, 2, 3, 4, 5], &[2, 1, 3], &[1, 2, 6], &[0, 1, 2]] {
            assert!(matches!(f_subset(5, bad), Err(HomError::Subset { .. })));
        }
    }

    #[test]
    fn apply_examples() {
        let f = f_subset(3, &[1, 2, 3]).unwrap();
        let z3 = braid::center_element(3);
        assert!(f.apply(z3.word()).unwrap().is_identity());
        assert!(f.apply(&ReducedWord::identity(Alphabet::Pure(3))).unwrap().is_identity());
        assert!(f.apply(&ReducedWord::identity(Alphabet::Pure(4))).is_err());
    }

    #[test]
    fn verify_hom_examples() {
        for n in 3..=5 {
            for subset in crate::subsets::subsets_34(n) {
                let mut f = f_subset(n, &subset).unwrap();
                assert!(!f.is_verified());
                assert!(f.verify_hom().unwrap(), "{subset:?}");
                assert!(f.is_verified());
            }
        }
        let images = vec![f2(&[(0, 1)]), f2(&[(1, 1)]), ReducedWord::identity(Alphabet::Free(2))];
        let mut bad = GeneratorMap::new(pn_presentation(3), TargetKind::Free(2), images).unwrap();
        assert!(!bad.verify_hom().unwrap());
        assert!(bad.failing_relator().unwrap().is_some());
        let mut id = GeneratorMap::identity(pn_presentation(4)).unwrap();
        assert!(id.verify_hom().unwrap());
    }

    #[test]
    fn f2_automorphisms() {
        let l1 = F2Automorphism::lambda1();
        assert_eq!(l1.forward().images()[1], f2(&[(0, -1), (1, -1)]));
        let l2 = F2Automorphism::lambda2();
        assert_eq!(l2.forward().images()[0], f2(&[(0, 1), (1, 1), (0, -1)]));
        F2Automorphism::lambda_xi();
        // x ↦ x², y ↦ y is not invertible
        let sq = FreeEndo::from_images(2, vec![f2(&[(0, 2)]), f2(&[(1, 1)])]).unwrap();
        assert!(F2Automorphism::new(sq.clone(), sq).is_err());
        // right basis, wrong inverse
        let l1f = l1.forward().clone();
        assert!(F2Automorphism::new(l1f.clone(), l1f).is_err());
    }

    #[test]
    fn normalizing_automorphism_recovers_f() {
        // f = λ₁ ∘ f_[3]; with u = f(A12), v = f(A13) the map u ↦ x, v ↦ y is λ₁⁻¹
        let f3 = f_subset(3, &[1, 2, 3]).unwrap();
        let f = compose_with_f2_auto(&f3, &F2Automorphism::lambda1()).unwrap();
        let u = f.apply(&gen(3, 1, 2)).unwrap();
        let v = f.apply(&gen(3, 1, 3)).unwrap();
        let lambda = F2Automorphism::lambda1().inverted();
        assert_eq!(lambda.forward().apply(&u).unwrap(), f2(&[(0, 1)]));
        assert_eq!(lambda.forward().apply(&v).unwrap(), f2(&[(1, 1)]));
        let back = compose_with_f2_auto(&f, &lambda).unwrap();
        assert!(back.agrees_with(&f3).unwrap());
        let same = compose_with_f2_auto(&f3, &F2Automorphism::identity()).unwrap();
        assert!(same.agrees_with(&f3).unwrap());
    }

    #[test]
    fn b4_to_b3_is_a_homomorphism() {
        let mut g = b4_to_b3();
        assert!(g.verify_hom().unwrap());
    }

    #[test]
    fn g_star_matches_f4() {
        let mut gs = g_star().unwrap();
        assert!(gs.verify_hom().unwrap());
        let mut f3 = f_subset(3, &[1, 2, 3]).unwrap();
        f3.verify_hom().unwrap();
        let composite = gs.then(&f3).unwrap();
        let f4 = f_subset(4, &[1, 2, 3, 4]).unwrap();
        assert!(composite.agrees_with(&f4).unwrap(), "{:?}", composite.images());
        assert_eq!(composite.apply(&gen(4, 1, 4)).unwrap(), f2(&[(1, -1), (0, -1)]));
    }
}
