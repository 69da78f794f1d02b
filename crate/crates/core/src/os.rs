//! The Orlik–Solomon algebra of the braid arrangement in degrees 0, 1, 2.
//!
//! `A¹` has basis `a_{i,j}` in lexicographic order. `A²` is the quotient of
//! `Λ²(A¹)` by the span of the triple relations
//! `a_{i,j} a_{i,k} − a_{i,j} a_{j,k} + a_{i,k} a_{j,k}`. Its coordinates are
//! the lexicographically first products that stay independent modulo the
//! relations, found by eliminating with pivots taken from the right.

use num_traits::{One, Zero};
use thiserror::Error;

use crate::hom::{GeneratorMap, TargetKind};
use crate::linalg::{is_zero, rank, rat, rref_with_order, unit_vector, zero_vector, Rat, RatVector, Subspace};
use crate::word::{pure_index, Alphabet};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OsError {
    #[error("expected a vector of length {expected}, got {found}")]
    Dimension { expected: usize, found: usize },
    #[error("invalid subset {subset:?} for n = {n}: need 3 or 4 sorted indices in 1..={n}")]
    Subset { subset: Vec<usize>, n: usize },
    #[error("homomorphism has not been verified")]
    Unverified,
    #[error("pullback needs a map P_n -> F_2, got {domain} -> {target}")]
    WrongMap { domain: Alphabet, target: TargetKind },
}

#[derive(Debug, Clone)]
pub struct OsAlgebra2 {
    n: usize,
    dim1: usize,
    /// `Λ²` basis: index pairs `g < h` of degree-one generators.
    wedge_basis: Vec<(usize, usize)>,
    /// Coordinates in `A²` of each `Λ²` basis element.
    reduction: Vec<RatVector>,
    /// Positions in `wedge_basis` of the products used as `A²` coordinates.
    quotient_basis: Vec<usize>,
    relation_rank: usize,
}

impl OsAlgebra2 {
    pub fn build(n: usize) -> OsAlgebra2 {
        let dim1 = Alphabet::Pure(n).size();
        let wedge_basis: Vec<(usize, usize)> = (0..dim1)
            .flat_map(|g| (g + 1..dim1).map(move |h| (g, h)))
            .collect();
        let wedge_pos = |g: usize, h: usize| -> usize {
            debug_assert!(g < h);
            // position of (g, h) in the lexicographic list of pairs
            g * dim1 - g * (g + 1) / 2 + (h - g - 1)
        };
        let dim_wedge = wedge_basis.len();

        let mut relations = Vec::new();
        for i in 1..=n {
            for j in i + 1..=n {
                for k in j + 1..=n {
                    let (ij, ik, jk) = (pure_index(i, j, n), pure_index(i, k, n), pure_index(j, k, n));
                    let mut row = zero_vector(dim_wedge);
                    row[wedge_pos(ij, ik)] += rat(1);
                    row[wedge_pos(ij, jk)] -= rat(1);
                    row[wedge_pos(ik, jk)] += rat(1);
                    relations.push(row);
                }
            }
        }

        let order: Vec<usize> = (0..dim_wedge).rev().collect();
        let pivots = rref_with_order(&mut relations, &order);
        let relation_rank = pivots.len();
        let quotient_basis: Vec<usize> = (0..dim_wedge).filter(|c| !pivots.contains(c)).collect();
        let coord_of: Vec<Option<usize>> = {
            let mut v = vec![None; dim_wedge];
            for (k, &c) in quotient_basis.iter().enumerate() {
                v[c] = Some(k);
            }
            v
        };
        let dim2 = quotient_basis.len();
        let mut reduction = vec![zero_vector(dim2); dim_wedge];
        for (c, slot) in reduction.iter_mut().enumerate() {
            if let Some(k) = coord_of[c] {
                slot[k] = Rat::one();
            }
        }
        // m_p = −Σ_c row[c] m_c over the free columns of the pivot row
        for (row, &p) in relations.iter().zip(&pivots) {
            for (c, x) in row.iter().enumerate() {
                if let (Some(k), false) = (coord_of[c], x.is_zero()) {
                    reduction[p][k] = -x.clone();
                }
            }
        }

        OsAlgebra2 {
            n,
            dim1,
            wedge_basis,
            reduction,
            quotient_basis,
            relation_rank,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim1(&self) -> usize {
        self.dim1
    }

    pub fn dim2(&self) -> usize {
        self.quotient_basis.len()
    }

    pub fn relation_rank(&self) -> usize {
        self.relation_rank
    }

    /// Products `a_g a_h` (as index pairs) whose classes are the `A²` coordinates.
    pub fn quotient_basis(&self) -> Vec<(usize, usize)> {
        self.quotient_basis.iter().map(|&c| self.wedge_basis[c]).collect()
    }

    fn check_len(&self, v: &[Rat]) -> Result<(), OsError> {
        if v.len() != self.dim1 {
            return Err(OsError::Dimension {
                expected: self.dim1,
                found: v.len(),
            });
        }
        Ok(())
    }

    /// The class in `A²` of an element of `Λ²(A¹)` given in the wedge basis.
    pub fn class_of_wedge(&self, w: &[Rat]) -> RatVector {
        let mut out = zero_vector(self.dim2());
        for (x, coords) in w.iter().zip(&self.reduction) {
            if x.is_zero() {
                continue;
            }
            for (o, c) in out.iter_mut().zip(coords) {
                if !c.is_zero() {
                    *o += x * c;
                }
            }
        }
        out
    }

    /// `μ(a ⊗ b) = ab` in `A²`.
    pub fn mu(&self, a: &[Rat], b: &[Rat]) -> Result<RatVector, OsError> {
        self.check_len(a)?;
        self.check_len(b)?;
        let wedge: RatVector = self
            .wedge_basis
            .iter()
            .map(|&(g, h)| &a[g] * &b[h] - &a[h] * &b[g])
            .collect();
        Ok(self.class_of_wedge(&wedge))
    }

    /// The triple relation for `i < j < k`, as a class in `A²` (always zero).
    pub fn triple_relation_class(&self, i: usize, j: usize, k: usize) -> RatVector {
        let n = self.n;
        let e = |a: usize, b: usize| unit_vector(self.dim1, pure_index(a, b, n));
        let terms = [
            self.mu(&e(i, j), &e(i, k)).unwrap(),
            self.mu(&e(i, j), &e(j, k)).unwrap(),
            self.mu(&e(i, k), &e(j, k)).unwrap(),
        ];
        terms[0]
            .iter()
            .zip(&terms[1])
            .zip(&terms[2])
            .map(|((x, y), z)| x - y + z)
            .collect()
    }

    pub fn generator(&self, i: usize, j: usize) -> RatVector {
        unit_vector(self.dim1, pure_index(i, j, self.n))
    }

    /// Dimension of `ker(δ_a: A¹ → A²)`, `δ_a(x) = ax`.
    pub fn kernel_dim(&self, a: &[Rat]) -> Result<usize, OsError> {
        self.check_len(a)?;
        let columns: Vec<RatVector> = (0..self.dim1)
            .map(|g| self.mu(a, &unit_vector(self.dim1, g)))
            .collect::<Result<_, _>>()?;
        // rank of the map equals the rank of its column list
        Ok(self.dim1 - rank(&columns))
    }

    /// Membership in the first resonance variety.
    ///
    /// For `a ≠ 0` the image of `δ_a: A⁰ → A¹` is the line through `a`, so
    /// `H¹ ≠ 0` iff `dim ker δ_a ≥ 2`. For `a = 0` the differential vanishes and
    /// `H¹ = A¹`, which is nonzero whenever `n ≥ 2`.
    pub fn in_r1(&self, a: &[Rat]) -> Result<bool, OsError> {
        self.check_len(a)?;
        if is_zero(a) {
            return Ok(self.dim1 > 0);
        }
        Ok(self.kernel_dim(a)? >= 2)
    }

    pub fn is_isotropic(&self, s: &Subspace) -> Result<bool, OsError> {
        if s.ambient() != self.dim1 {
            return Err(OsError::Dimension {
                expected: self.dim1,
                found: s.ambient(),
            });
        }
        let basis = s.basis();
        for (k, u) in basis.iter().enumerate() {
            for v in &basis[k + 1..] {
                if !is_zero(&self.mu(u, v)?) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// `V_I` for `|I| ∈ {3, 4}`.
    pub fn v_subspace(&self, subset: &[usize]) -> Result<Subspace, OsError> {
        validate(self.n, subset)?;
        let e = |a: usize, b: usize| self.generator(a, b);
        let combo = |terms: &[(i64, RatVector)]| -> RatVector {
            let mut out = zero_vector(self.dim1);
            for (c, v) in terms {
                for (o, x) in out.iter_mut().zip(v) {
                    *o += rat(*c) * x;
                }
            }
            out
        };
        let vectors = match *subset {
            [i, j, k] => vec![
                combo(&[(1, e(i, j)), (-1, e(j, k))]),
                combo(&[(1, e(i, k)), (-1, e(j, k))]),
            ],
            [i, j, k, l] => vec![
                combo(&[(1, e(i, j)), (1, e(k, l)), (-1, e(j, k)), (-1, e(i, l))]),
                combo(&[(1, e(i, k)), (1, e(j, l)), (-1, e(j, k)), (-1, e(i, l))]),
            ],
            _ => unreachable!("validated"),
        };
        Ok(Subspace::span(self.dim1, vectors))
    }

    /// `f^*(H¹(F_2; Q))`: the row space of the abelianized images of the `A_{i,j}`.
    pub fn pullback_image(&self, m: &GeneratorMap) -> Result<Subspace, OsError> {
        if m.domain().alphabet() != Alphabet::Pure(self.n) || m.target() != TargetKind::Free(2) {
            return Err(OsError::WrongMap {
                domain: m.domain().alphabet(),
                target: m.target(),
            });
        }
        if !m.is_verified() {
            return Err(OsError::Unverified);
        }
        let mut rows = vec![zero_vector(self.dim1), zero_vector(self.dim1)];
        for (col, image) in m.images().iter().enumerate() {
            let v = image.exponent_vector();
            for (row, e) in rows.iter_mut().zip(v.entries()) {
                row[col] = Rat::from_integer(e.clone());
            }
        }
        Ok(Subspace::span(self.dim1, rows))
    }

    /// For every coordinate vector `e ∉ V_I`, checks that `span(V_I ∪ {e})` is
    /// not isotropic. Returns the offending generators (empty means the probe
    /// passed). This is evidence about maximality, not a proof.
    pub fn max_isotropic_extension_probe(&self, subset: &[usize]) -> Result<Vec<(usize, usize)>, OsError> {
        let v = self.v_subspace(subset)?;
        let mut extendable = Vec::new();
        for g in 0..self.dim1 {
            let e = unit_vector(self.dim1, g);
            if v.contains(&e) {
                continue;
            }
            if self.is_isotropic(&v.extended(e))? {
                extendable.push(crate::word::pure_pair(g, self.n));
            }
        }
        Ok(extendable)
    }
}

fn validate(n: usize, subset: &[usize]) -> Result<(), OsError> {
    let ok = matches!(subset.len(), 3 | 4)
        && subset[0] >= 1
        && subset.windows(2).all(|w| w[0] < w[1])
        && *subset.last().unwrap() <= n;
    if !ok {
        return Err(OsError::Subset {
            subset: subset.to_vec(),
            n,
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hom::{compose_with_f2_auto, f_subset, F2Automorphism};
    use crate::subsets::subsets_34;
    use proptest::prelude::*;

    fn combo(os: &OsAlgebra2, terms: &[(i64, (usize, usize))]) -> RatVector {
        let mut out = zero_vector(os.dim1());
        for &(c, (i, j)) in terms {
            out[pure_index(i, j, os.n())] += rat(c);
        }
        out
    }

    /// Rank of the triple relations computed from scratch, without the
    /// right-pivot elimination used by `build`.
    fn quotient_dim_oracle(n: usize) -> usize {
        let dim1 = n * (n - 1) / 2;
        let pairs: Vec<(usize, usize)> = (0..dim1).flat_map(|g| (g + 1..dim1).map(move |h| (g, h))).collect();
        let pos = |g: usize, h: usize| pairs.iter().position(|&p| p == (g, h)).unwrap();
        let mut rows = Vec::new();
        for i in 1..=n {
            for j in i + 1..=n {
                for k in j + 1..=n {
                    let mut row = zero_vector(pairs.len());
                    row[pos(pure_index(i, j, n), pure_index(i, k, n))] = rat(1);
                    row[pos(pure_index(i, j, n), pure_index(j, k, n))] = rat(-1);
                    row[pos(pure_index(i, k, n), pure_index(j, k, n))] = rat(1);
                    rows.push(row);
                }
            }
        }
        pairs.len() - rank(&rows)
    }

    #[test]
    fn dimensions() {
        let os = OsAlgebra2::build(2);
        assert_eq!((os.dim1(), os.dim2()), (1, 0));
        let os = OsAlgebra2::build(3);
        assert_eq!((os.dim1(), os.dim2()), (3, 2));
        let os = OsAlgebra2::build(4);
        assert_eq!((os.dim1(), os.dim2()), (6, 11));
        for n in 2..=6 {
            assert_eq!(OsAlgebra2::build(n).dim2(), quotient_dim_oracle(n));
        }
    }

    #[test]
    fn quotient_basis_is_lex_first() {
        // n = 3: the single relation a12a13 − a12a23 + a13a23 eliminates the last product
        let os = OsAlgebra2::build(3);
        assert_eq!(os.quotient_basis(), vec![(0, 1), (0, 2)]);
    }

    #[test]
    fn mu_examples() {
        let os = OsAlgebra2::build(3);
        let a = combo(&os, &[(1, (1, 2)), (-1, (2, 3))]);
        let b = combo(&os, &[(1, (1, 3)), (-1, (2, 3))]);
        assert!(is_zero(&os.mu(&a, &b).unwrap()));
        assert!(is_zero(&os.mu(&a, &a).unwrap()));
        assert!(!is_zero(&os.mu(&os.generator(1, 2), &os.generator(1, 3)).unwrap()));
        assert!(os.mu(&a, &[rat(1)]).is_err());
    }

    #[test]
    fn triple_relations_vanish() {
        for n in 3..=6 {
            let os = OsAlgebra2::build(n);
            for i in 1..=n {
                for j in i + 1..=n {
                    for k in j + 1..=n {
                        assert!(is_zero(&os.triple_relation_class(i, j, k)));
                    }
                }
            }
        }
    }

    #[test]
    fn v_subspaces() {
        let os = OsAlgebra2::build(3);
        let v = os.v_subspace(&[1, 2, 3]).unwrap();
        let expected = Subspace::span(
            3,
            vec![combo(&os, &[(1, (1, 2)), (-1, (2, 3))]), combo(&os, &[(1, (1, 3)), (-1, (2, 3))])],
        );
        assert_eq!(v, expected);
        let os = OsAlgebra2::build(4);
        let v = os.v_subspace(&[1, 2, 3, 4]).unwrap();
        let expected = Subspace::span(
            6,
            vec![
                combo(&os, &[(1, (1, 2)), (1, (3, 4)), (-1, (2, 3)), (-1, (1, 4))]),
                combo(&os, &[(1, (1, 3)), (1, (2, 4)), (-1, (2, 3)), (-1, (1, 4))]),
            ],
        );
        assert_eq!(v, expected);
        for n in 3..=6 {
            let os = OsAlgebra2::build(n);
            for subset in subsets_34(n) {
                let v = os.v_subspace(&subset).unwrap();
                assert_eq!(v.dim(), 2);
                assert!(os.is_isotropic(&v).unwrap(), "{subset:?}");
            }
        }
        assert!(os.v_subspace(&[1, 2]).is_err());
    }

    #[test]
    fn isotropy_examples() {
        let os = OsAlgebra2::build(3);
        let s = Subspace::span(3, vec![os.generator(1, 2), os.generator(1, 3)]);
        assert!(!os.is_isotropic(&s).unwrap());
        let line = Subspace::span(3, vec![combo(&os, &[(2, (1, 2)), (5, (1, 3)), (-1, (2, 3))])]);
        assert!(os.is_isotropic(&line).unwrap());
    }

    #[test]
    fn resonance_examples() {
        let os = OsAlgebra2::build(3);
        assert!(os.in_r1(&combo(&os, &[(1, (1, 2)), (-1, (2, 3))])).unwrap());
        let os4 = OsAlgebra2::build(4);
        assert!(!os4.in_r1(&os4.generator(1, 2)).unwrap());
        assert!(os4.in_r1(&zero_vector(6)).unwrap());
    }

    #[test]
    fn pullbacks_match_v_subspaces() {
        for (n, subset) in [(3, vec![1, 2, 3]), (4, vec![1, 2, 3, 4]), (5, vec![1, 3, 5])] {
            let os = OsAlgebra2::build(n);
            let mut f = f_subset(n, &subset).unwrap();
            assert_eq!(os.pullback_image(&f), Err(OsError::Unverified));
            assert!(f.verify_hom().unwrap());
            assert_eq!(os.pullback_image(&f).unwrap(), os.v_subspace(&subset).unwrap());
            // invariant under automorphisms of the target
            for lambda in [F2Automorphism::lambda1(), F2Automorphism::lambda2(), F2Automorphism::lambda_xi()] {
                let g = compose_with_f2_auto(&f, &lambda).unwrap();
                assert_eq!(os.pullback_image(&g).unwrap(), os.v_subspace(&subset).unwrap());
            }
        }
    }

    #[test]
    fn probe_examples() {
        let os = OsAlgebra2::build(4);
        assert!(os.max_isotropic_extension_probe(&[1, 2, 3]).unwrap().is_empty());
        assert!(os.max_isotropic_extension_probe(&[1, 2, 3, 4]).unwrap().is_empty());
        let os = OsAlgebra2::build(5);
        for subset in subsets_34(5) {
            assert!(os.max_isotropic_extension_probe(&subset).unwrap().is_empty());
        }
    }

    fn small_vec(len: usize) -> impl Strategy<Value = RatVector> {
        prop::collection::vec(-4i64..=4, len).prop_map(|v| v.into_iter().map(rat).collect())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn mu_is_bilinear_and_alternating(a in small_vec(6), b in small_vec(6), c in small_vec(6), s in -3i64..=3) {
            let os = OsAlgebra2::build(4);
            prop_assert!(is_zero(&os.mu(&a, &a).unwrap()));
            let ab = os.mu(&a, &b).unwrap();
            let ba = os.mu(&b, &a).unwrap();
            prop_assert!(ab.iter().zip(&ba).all(|(x, y)| x == &-y.clone()));
            let lin: RatVector = a.iter().zip(&c).map(|(x, y)| x * rat(s) + y).collect();
            let lhs = os.mu(&lin, &b).unwrap();
            let cb = os.mu(&c, &b).unwrap();
            let rhs: RatVector = ab.iter().zip(&cb).map(|(x, y)| x * rat(s) + y).collect();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn nonzero_vectors_have_nontrivial_kernel(a in small_vec(10)) {
            prop_assume!(!is_zero(&a));
            let os = OsAlgebra2::build(5);
            prop_assert!(os.kernel_dim(&a).unwrap() >= 1);
        }

        #[test]
        fn elements_of_components_resonate(c1 in -5i64..=5, c2 in -5i64..=5, pick in 0usize..15) {
            prop_assume!(c1 != 0 || c2 != 0);
            let os = OsAlgebra2::build(5);
            let subsets = subsets_34(5);
            let v = os.v_subspace(&subsets[pick % subsets.len()]).unwrap();
            let a: RatVector = v.basis()[0].iter().zip(&v.basis()[1]).map(|(x, y)| x * rat(c1) + y * rat(c2)).collect();
            prop_assert!(os.in_r1(&a).unwrap());
        }
    }
}
