//! Degreewise exact linear algebra: `A_m = (A_{m−1} ⊗ V) / image(A_{m−2} ⊗ R)`.
//!
//! Each `A_m` is carried as a chosen basis (the non-pivot columns of the
//! elimination) together with the reduction of every product `b·x_g`, `b` a basis
//! element of `A_{m−1}`, so the ideal slice is never materialised on all `G^m`
//! words.

use num_rational::BigRational;

use crate::linalg::{axpy, Echelon, SparseVec};

use super::{GradedDims, QuadraticPresentation};

struct Level {
    /// For every column `b·G + g` of `A_{m−1} ⊗ V`: its class in `A_m`, in basis
    /// coordinates of `A_m`.
    reduced: Vec<SparseVec<BigRational>>,
    dim: usize,
}

fn quotient(cols: usize, echelon: &Echelon<BigRational>) -> Level {
    let mut basis_of = vec![usize::MAX; cols];
    let mut dim = 0;
    for (c, slot) in basis_of.iter_mut().enumerate() {
        if !echelon.is_pivot(c) {
            *slot = dim;
            dim += 1;
        }
    }
    let one = BigRational::from_integer(1.into());
    let reduced = (0..cols)
        .map(|c| {
            echelon
                .reduce(&[(c, one.clone())])
                .into_iter()
                .map(|(k, v)| (basis_of[k], v))
                .collect()
        })
        .collect();
    Level { reduced, dim }
}

pub fn linear_graded_dims(p: &QuadraticPresentation, d_max: usize, budget: u64) -> GradedDims {
    let g = p.num_generators();
    let mut dims = vec![1];
    if d_max == 0 {
        return GradedDims { dims, vanishes_at: None, truncated: false };
    }
    dims.push(g);
    if g == 0 {
        return GradedDims { dims, vanishes_at: Some(1), truncated: false };
    }
    // a basis of the relation span, with terms (x_a, x_b, c)
    let mut span = Echelon::new();
    for v in p.relation_vectors() {
        span.insert(&v);
    }
    let rels: Vec<Vec<(usize, usize, BigRational)>> = span
        .reduced_rows()
        .into_iter()
        .map(|(_, row)| row.into_iter().map(|(w, c)| (w / g, w % g, c)).collect())
        .collect();

    // A_0 → A_1: the column (0, g) is the basis vector g
    let one = BigRational::from_integer(1.into());
    let mut dim_before = 1;
    let mut prev = Level { reduced: (0..g).map(|k| vec![(k, one.clone())]).collect(), dim: g };
    let mut work = 0u64;
    for _m in 2..=d_max {
        let cols = prev.dim * g;
        work += (dim_before * rels.len()) as u64 * cols.max(1) as u64 / 8 + cols as u64;
        if work > budget {
            return GradedDims { dims, vanishes_at: None, truncated: true };
        }
        let mut e = Echelon::new();
        for b in 0..dim_before {
            for rel in &rels {
                // b · x_a · x_h ↦ (reduce(b x_a) in A_{m−1}) ⊗ x_h
                let mut v: SparseVec<BigRational> = Vec::new();
                for (a, h, c) in rel {
                    let shifted: SparseVec<BigRational> =
                        prev.reduced[b * g + a].iter().map(|(k, x)| (k * g + h, x.clone())).collect();
                    v = axpy(&v, c, &shifted);
                }
                e.insert(&v);
            }
        }
        let next = quotient(cols, &e);
        dims.push(next.dim);
        if next.dim == 0 {
            let top = dims.len() - 1;
            return GradedDims { dims, vanishes_at: Some(top), truncated: false };
        }
        dim_before = prev.dim;
        prev = next;
    }
    GradedDims { dims, vanishes_at: None, truncated: false }
}
