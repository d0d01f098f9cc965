//! Exact sparse linear algebra over a field.

use std::collections::BTreeMap;
use std::fmt::Debug;

use num_rational::BigRational;
use num_traits::{One, Zero};

/// Field operations used by elimination. Constants are not required: elimination
/// only needs to test for zero and divide by pivots.
pub trait Field: Clone + PartialEq + Debug + Send + Sync {
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Panics on zero.
    fn inv(&self) -> Self;
}

impl Field for BigRational {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Self {
        assert!(!Zero::is_zero(self), "division by zero");
        BigRational::one() / self
    }
}

/// Sorted `(index, value)` pairs without zeros.
pub type SparseVec<F> = Vec<(usize, F)>;

/// `v + c·w`.
pub fn axpy<F: Field>(v: &[(usize, F)], c: &F, w: &[(usize, F)]) -> SparseVec<F> {
    let mut out = Vec::with_capacity(v.len() + w.len());
    let (mut i, mut j) = (0, 0);
    while i < v.len() || j < w.len() {
        let take_v = j == w.len() || (i < v.len() && v[i].0 < w[j].0);
        let take_w = i == v.len() || (j < w.len() && w[j].0 < v[i].0);
        if take_v {
            out.push(v[i].clone());
            i += 1;
        } else if take_w {
            out.push((w[j].0, c.mul(&w[j].1)));
            j += 1;
        } else {
            let s = v[i].1.add(&c.mul(&w[j].1));
            if !s.is_zero() {
                out.push((v[i].0, s));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn scale<F: Field>(v: &[(usize, F)], c: &F) -> SparseVec<F> {
    v.iter().map(|(i, x)| (*i, c.mul(x))).filter(|(_, x)| !x.is_zero()).collect()
}

/// Builds a sparse vector from unsorted entries, summing duplicates.
pub fn collect_sparse<F: Field>(entries: impl IntoIterator<Item = (usize, F)>) -> SparseVec<F> {
    let mut acc: BTreeMap<usize, F> = BTreeMap::new();
    for (i, x) in entries {
        match acc.get_mut(&i) {
            Some(y) => *y = y.add(&x),
            None => {
                acc.insert(i, x);
            }
        }
    }
    acc.into_iter().filter(|(_, x)| !x.is_zero()).collect()
}

/// Row echelon form kept as pivot rows with leading coefficient one. Pivoting is
/// deterministic: a vector's pivot is its first nonzero column after reduction.
#[derive(Clone, Debug)]
pub struct Echelon<F: Field> {
    pivots: BTreeMap<usize, SparseVec<F>>,
}

impl<F: Field> Default for Echelon<F> {
    fn default() -> Self {
        Echelon { pivots: BTreeMap::new() }
    }
}

impl<F: Field> Echelon<F> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivots.keys().copied()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivots.contains_key(&col)
    }

    /// Eliminates every pivot column from `v`; the result represents `v` modulo the
    /// row space in the non-pivot coordinates.
    pub fn reduce(&self, v: &[(usize, F)]) -> SparseVec<F> {
        let mut v = v.to_vec();
        let mut k = 0;
        while k < v.len() {
            let (col, ref c) = v[k];
            match self.pivots.get(&col) {
                Some(row) => {
                    let c = c.neg();
                    v = axpy(&v, &c, row);
                }
                None => k += 1,
            }
        }
        v
    }

    /// Adds `v` to the row space; returns whether the rank grew.
    pub fn insert(&mut self, v: &[(usize, F)]) -> bool {
        let r = self.reduce(v);
        let Some((lead, c)) = r.first().cloned() else {
            return false;
        };
        let row = scale(&r, &c.inv());
        self.pivots.insert(lead, row);
        true
    }

    /// Whether `v` lies in the row space.
    pub fn contains(&self, v: &[(usize, F)]) -> bool {
        self.reduce(v).is_empty()
    }

    /// Pivot rows, reduced against each other (reduced row echelon form), ordered by
    /// pivot column.
    pub fn reduced_rows(&self) -> Vec<(usize, SparseVec<F>)> {
        let mut out = Vec::with_capacity(self.pivots.len());
        for (&col, row) in &self.pivots {
            let (head, tail) = row.split_at(1);
            let mut reduced = head.to_vec();
            reduced.extend(self.reduce(tail));
            out.push((col, reduced));
        }
        out
    }
}

/// Rank of a family of sparse vectors.
pub fn rank<F: Field>(rows: &[SparseVec<F>]) -> usize {
    let mut e = Echelon::new();
    for r in rows {
        e.insert(r);
    }
    e.rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn dense_rank(mut m: Vec<Vec<BigRational>>) -> usize {
        let rows = m.len();
        let cols = if rows == 0 { 0 } else { m[0].len() };
        let mut r = 0;
        for c in 0..cols {
            let Some(p) = (r..rows).find(|&i| !Zero::is_zero(&m[i][c])) else {
                continue;
            };
            m.swap(r, p);
            for i in 0..rows {
                if i != r && !Zero::is_zero(&m[i][c]) {
                    let f = &m[i][c] / &m[r][c];
                    for k in 0..cols {
                        let t = &f * &m[r][k];
                        m[i][k] -= t;
                    }
                }
            }
            r += 1;
        }
        r
    }

    #[test]
    fn sparse_rank_matches_dense_elimination() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..200 {
            let rows = rng.gen_range(1..8);
            let cols = rng.gen_range(1..8);
            let dense: Vec<Vec<BigRational>> = (0..rows)
                .map(|_| (0..cols).map(|_| if rng.gen_bool(0.5) { q(0) } else { q(rng.gen_range(-3..4)) }).collect())
                .collect();
            let sparse: Vec<SparseVec<BigRational>> = dense
                .iter()
                .map(|r| r.iter().enumerate().filter(|(_, x)| !Zero::is_zero(*x)).map(|(i, x)| (i, x.clone())).collect())
                .collect();
            assert_eq!(rank(&sparse), dense_rank(dense));
        }
    }

    #[test]
    fn reduce_kills_pivot_columns() {
        let mut e = Echelon::new();
        assert!(e.insert(&[(0, q(1)), (2, q(1))]));
        assert!(e.insert(&[(1, q(2)), (2, q(4))]));
        assert!(!e.insert(&[(0, q(1)), (1, q(1)), (2, q(3))]));
        let r = e.reduce(&[(0, q(1)), (1, q(1))]);
        assert_eq!(r, vec![(2, q(-3))]);
        assert!(e.contains(&[(0, q(2)), (2, q(2))]));
        let rows = e.reduced_rows();
        assert_eq!(rows[0].1, vec![(0, q(1)), (2, q(1))]);
    }

    #[test]
    fn collect_sums_duplicates() {
        let v = collect_sparse(vec![(3, q(1)), (1, q(2)), (3, q(-1))]);
        assert_eq!(v, vec![(1, q(2))]);
    }
}
