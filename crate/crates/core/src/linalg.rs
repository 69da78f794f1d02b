//! Exact linear algebra over `Q`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Rat = BigRational;
pub type RatVector = Vec<Rat>;

pub fn rat(v: i64) -> Rat {
    Rat::from_integer(BigInt::from(v))
}

pub fn zero_vector(len: usize) -> RatVector {
    vec![Rat::zero(); len]
}

pub fn unit_vector(len: usize, k: usize) -> RatVector {
    let mut v = zero_vector(len);
    v[k] = Rat::one();
    v
}

pub fn is_zero(v: &[Rat]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// Reduces `rows` in place to reduced row echelon form, visiting columns in
/// `order`. Zero rows are dropped. Returns the pivot column of each row.
pub fn rref_with_order(rows: &mut Vec<RatVector>, order: &[usize]) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for &c in order {
        let Some(p) = (r..rows.len()).find(|&k| !rows[k][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (k, row) in rows.iter_mut().enumerate() {
            if k == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x -= &factor * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

pub fn rref(rows: &mut Vec<RatVector>) -> Vec<usize> {
    let width = rows.first().map_or(0, Vec::len);
    let order: Vec<usize> = (0..width).collect();
    rref_with_order(rows, &order)
}

pub fn rank(rows: &[RatVector]) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m).len()
}

/// A subspace of `Q^ambient`, stored as its reduced row echelon basis so that
/// equal subspaces have equal representations.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<RatVector>,
}

impl Subspace {
    /// The span of `vectors`. Panics if a vector has the wrong length.
    pub fn span(ambient: usize, vectors: Vec<RatVector>) -> Self {
        assert!(vectors.iter().all(|v| v.len() == ambient), "vector length mismatch");
        let mut basis = vectors;
        rref(&mut basis);
        Subspace { ambient, basis }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[RatVector] {
        &self.basis
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        let mut rows = self.basis.clone();
        rows.push(v.to_vec());
        rank(&rows) == self.dim()
    }

    /// `span(self ∪ {v})`.
    pub fn extended(&self, v: RatVector) -> Subspace {
        let mut rows = self.basis.clone();
        rows.push(v);
        Subspace::span(self.ambient, rows)
    }
}
