//! Braided vector spaces, quantum symmetrizers and graded Nichols-algebra dimensions.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{Echelon, Field, SparseVec};
use crate::signed_weyl::SignedPermutation;

use super::cyclotomic::CycScalar;

pub const DEFAULT_WORD_BUDGET: u64 = 5_000_000;

pub type Word = Vec<u16>;
pub type LinComb = BTreeMap<Word, CycScalar>;

/// `V` with an invertible `C: V⊗V → V⊗V`. Columns of `C` are indexed by `x·D + y`
/// for the basis tensor `e_x ⊗ e_y`.
#[derive(Clone, Debug)]
pub struct BraidedVectorSpace {
    dim: usize,
    modulus: u32,
    c: Vec<SparseVec<CycScalar>>,
    c_inv: Vec<SparseVec<CycScalar>>,
    degrees: Option<Vec<SignedPermutation>>,
}

fn add_into(lc: &mut LinComb, w: Word, c: CycScalar) {
    match lc.get_mut(&w) {
        Some(x) => {
            *x = x.add(&c);
            if x.is_zero() {
                lc.remove(&w);
            }
        }
        None => {
            if !c.is_zero() {
                lc.insert(w, c);
            }
        }
    }
}

impl BraidedVectorSpace {
    /// Checks that `c_inv` inverts `c`.
    pub fn new(
        dim: usize,
        modulus: u32,
        c: Vec<SparseVec<CycScalar>>,
        c_inv: Vec<SparseVec<CycScalar>>,
        degrees: Option<Vec<SignedPermutation>>,
    ) -> Result<Self> {
        if dim == 0 || dim > u16::MAX as usize {
            return Err(Error::Precondition(format!("dimension {dim} out of range")));
        }
        if c.len() != dim * dim || c_inv.len() != dim * dim {
            return Err(Error::Precondition("braiding must act on V⊗V".into()));
        }
        if degrees.as_ref().is_some_and(|d| d.len() != dim) {
            return Err(Error::Precondition("one degree per basis vector required".into()));
        }
        let v = BraidedVectorSpace { dim, modulus, c, c_inv, degrees };
        for p in 0..dim * dim {
            let mut acc: BTreeMap<usize, CycScalar> = BTreeMap::new();
            for (q, a) in &v.c_inv[p] {
                for (r, b) in &v.c[*q] {
                    let e = acc.entry(*r).or_insert_with(|| CycScalar::zero(modulus));
                    *e = e.add(&a.mul(b));
                }
            }
            acc.retain(|_, x| !x.is_zero());
            if acc.len() != 1 || acc.get(&p).map(|x| !x.is_one()).unwrap_or(true) {
                return Err(Error::Precondition("supplied inverse does not invert the braiding".into()));
            }
        }
        Ok(v)
    }

    /// `C(e_i ⊗ e_j) = q_ij e_j ⊗ e_i`.
    pub fn diagonal(q: &[Vec<CycScalar>]) -> Result<Self> {
        let d = q.len();
        let modulus = q.first().and_then(|r| r.first()).map(|x| x.modulus()).unwrap_or(1);
        let mut c = vec![Vec::new(); d * d];
        let mut c_inv = vec![Vec::new(); d * d];
        for i in 0..d {
            if q[i].len() != d {
                return Err(Error::Precondition("braiding matrix must be square".into()));
            }
            for j in 0..d {
                if q[i][j].is_zero() {
                    return Err(Error::Precondition("diagonal braiding needs nonzero scalars".into()));
                }
                c[i * d + j] = vec![(j * d + i, q[i][j].clone())];
                c_inv[j * d + i] = vec![(i * d + j, q[i][j].inv())];
            }
        }
        Self::new(d, modulus, c, c_inv, None)
    }

    /// The trivial braiding `C(x ⊗ y) = y ⊗ x`.
    pub fn flip(d: usize) -> Result<Self> {
        Self::diagonal(&vec![vec![CycScalar::one(1); d]; d])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn degrees(&self) -> Option<&[SignedPermutation]> {
        self.degrees.as_deref()
    }

    /// Column of `C` at `e_x ⊗ e_y`, indexed by `a·D + b`.
    pub fn braid_column(&self, x: usize, y: usize) -> &SparseVec<CycScalar> {
        &self.c[x * self.dim + y]
    }

    pub fn braid_inv_column(&self, x: usize, y: usize) -> &SparseVec<CycScalar> {
        &self.c_inv[x * self.dim + y]
    }

    fn apply_at(&self, table: &[SparseVec<CycScalar>], lc: &LinComb, pos: usize) -> LinComb {
        let d = self.dim;
        let mut out = LinComb::new();
        for (w, c) in lc {
            let col = w[pos] as usize * d + w[pos + 1] as usize;
            for (p, v) in &table[col] {
                let mut w2 = w.clone();
                w2[pos] = (p / d) as u16;
                w2[pos + 1] = (p % d) as u16;
                add_into(&mut out, w2, c.mul(v));
            }
        }
        out
    }

    /// `C` acting on legs `pos, pos+1`.
    pub fn apply_braiding(&self, lc: &LinComb, pos: usize) -> LinComb {
        self.apply_at(&self.c, lc, pos)
    }

    pub fn apply_inverse_braiding(&self, lc: &LinComb, pos: usize) -> LinComb {
        self.apply_at(&self.c_inv, lc, pos)
    }

    /// Checks `(C⊗id)(id⊗C)(C⊗id) = (id⊗C)(C⊗id)(id⊗C)` on every basis word of
    /// length three; returns the first failing word.
    pub fn check_braid_equation(&self) -> std::result::Result<(), Word> {
        let d = self.dim as u16;
        for a in 0..d {
            for b in 0..d {
                for c in 0..d {
                    let w = vec![a, b, c];
                    let start = LinComb::from([(w.clone(), CycScalar::one(self.modulus))]);
                    let lhs = self.apply_braiding(&self.apply_braiding(&self.apply_braiding(&start, 0), 1), 0);
                    let rhs = self.apply_braiding(&self.apply_braiding(&self.apply_braiding(&start, 1), 0), 1);
                    if lhs != rhs {
                        return Err(w);
                    }
                }
            }
        }
        Ok(())
    }

    /// With group degrees attached, checks that `C` sends degree `(s, t)` into degree
    /// `(s▷t, s)`. Returns the first offending basis pair.
    pub fn check_coaction(&self) -> std::result::Result<(), (usize, usize)> {
        let Some(deg) = &self.degrees else {
            return Ok(());
        };
        let d = self.dim;
        for x in 0..d {
            for y in 0..d {
                let want = (deg[x].conj(&deg[y]), deg[x]);
                for (p, _) in &self.c[x * d + y] {
                    if (deg[p / d], deg[p % d]) != want {
                        return Err((x, y));
                    }
                }
            }
        }
        Ok(())
    }

    /// `S_{1,j}` on a single word of length `j+1`, via
    /// `id + C₁₂⁻¹(id + C₂₃⁻¹(id + ⋯))`.
    pub fn s1j(&self, w: &[u16]) -> LinComb {
        let one = CycScalar::one(self.modulus);
        let base = LinComb::from([(w.to_vec(), one.clone())]);
        let mut acc = base.clone();
        for pos in (0..w.len().saturating_sub(1)).rev() {
            acc = self.apply_inverse_braiding(&acc, pos);
            add_into(&mut acc, w.to_vec(), one.clone());
        }
        acc
    }

    /// `S_{1,j}` on the last `j+1` legs of every word in `lc`.
    fn s1j_on_suffix(&self, lc: &LinComb, start: usize) -> LinComb {
        let mut out = LinComb::new();
        for (w, c) in lc {
            for (u, v) in self.s1j(&w[start..]) {
                let mut w2 = w[..start].to_vec();
                w2.extend(u);
                add_into(&mut out, w2, c.mul(&v));
            }
        }
        out
    }

    /// `S_m` on one word as the product `∏_{j=1}^{m-1} (id^{⊗(m-j-1)} ⊗ S_{1,j})`,
    /// rightmost factor first.
    pub fn symmetrize_by_product(&self, w: &[u16]) -> LinComb {
        let m = w.len();
        let mut lc = LinComb::from([(w.to_vec(), CycScalar::one(self.modulus))]);
        for j in (1..m).rev() {
            lc = self.s1j_on_suffix(&lc, m - j - 1);
        }
        lc
    }
}

/// Evaluates `S_m = (id ⊗ S_{m-1}) S_{1,m-1}` with memoized suffixes.
pub struct Symmetrizer<'a> {
    space: &'a BraidedVectorSpace,
    memo: HashMap<Word, LinComb>,
}

impl<'a> Symmetrizer<'a> {
    pub fn new(space: &'a BraidedVectorSpace) -> Self {
        Symmetrizer { space, memo: HashMap::new() }
    }

    pub fn apply(&mut self, w: &[u16]) -> LinComb {
        if w.len() <= 1 {
            return LinComb::from([(w.to_vec(), CycScalar::one(self.space.modulus))]);
        }
        if let Some(v) = self.memo.get(w) {
            return v.clone();
        }
        let mut out = LinComb::new();
        for (u, c) in self.space.s1j(w) {
            let tail = self.apply(&u[1..]);
            for (r, c2) in tail {
                let mut w2 = Vec::with_capacity(w.len());
                w2.push(u[0]);
                w2.extend(r);
                add_into(&mut out, w2, c.mul(&c2));
            }
        }
        self.memo.insert(w.to_vec(), out.clone());
        out
    }
}

fn words(d: usize, m: usize) -> impl Iterator<Item = Word> {
    let total = (d as u64).pow(m as u32);
    (0..total).map(move |mut code| {
        let mut w = vec![0u16; m];
        for k in (0..m).rev() {
            w[k] = (code % d as u64) as u16;
            code /= d as u64;
        }
        w
    })
}

fn word_index(d: usize, w: &[u16]) -> usize {
    w.iter().fold(0usize, |acc, &x| acc * d + x as usize)
}

fn check_budget(d: usize, m: usize, budget: u64) -> Result<()> {
    match (d as u64).checked_pow(m as u32) {
        Some(t) if t <= budget => Ok(()),
        _ => Err(Error::Budget(format!("{d}^{m} words exceed the budget {budget}"))),
    }
}

/// Columns of `S_m` indexed by basis words (base-`D` encoding, first letter most
/// significant).
pub fn symmetrizer(space: &BraidedVectorSpace, m: usize, budget: u64) -> Result<Vec<SparseVec<CycScalar>>> {
    if m == 0 {
        return Err(Error::Precondition("symmetrizer degree must be at least 1".into()));
    }
    check_budget(space.dim, m, budget)?;
    let mut s = Symmetrizer::new(space);
    Ok(words(space.dim, m)
        .map(|w| {
            let lc = s.apply(&w);
            lc.into_iter().map(|(u, c)| (word_index(space.dim, &u), c)).collect::<BTreeMap<_, _>>().into_iter().collect()
        })
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NicholsDims {
    /// Degree 0 first.
    pub dims: Vec<usize>,
    /// First degree with dimension 0, when reached within the degree bound.
    pub vanishes_at: Option<usize>,
}

impl NicholsDims {
    pub fn total(&self) -> usize {
        self.dims.iter().sum()
    }
}

/// Ranks of `S_m` for `m ≤ max_degree`, stopping at the first zero. With group
/// degrees attached, ranks are taken block by block on the product degree
/// `t_{w_1}⋯t_{w_m}`, which `S_m` preserves.
pub fn nichols_graded_dims(space: &BraidedVectorSpace, max_degree: usize, budget: u64) -> Result<NicholsDims> {
    let d = space.dim;
    let mut dims = vec![1];
    if max_degree >= 1 {
        dims.push(d);
    }
    let mut sym = Symmetrizer::new(space);
    for m in 2..=max_degree {
        check_budget(d, m, budget)?;
        let mut blocks: HashMap<Option<SignedPermutation>, Echelon<CycScalar>> = HashMap::new();
        for w in words(d, m) {
            let key = space.degrees.as_ref().map(|deg| {
                w.iter().skip(1).fold(deg[w[0] as usize], |acc, &x| acc.mul(&deg[x as usize]))
            });
            let col: SparseVec<CycScalar> = sym
                .apply(&w)
                .into_iter()
                .map(|(u, c)| (word_index(d, &u), c))
                .collect::<BTreeMap<_, _>>()
                .into_iter()
                .collect();
            blocks.entry(key).or_default().insert(&col);
        }
        let r: usize = blocks.values().map(|e| e.rank()).sum();
        dims.push(r);
        if r == 0 {
            return Ok(NicholsDims { dims, vanishes_at: Some(m) });
        }
        // suffixes of length m-1 are no longer needed
        sym.memo.retain(|k, _| k.len() >= m);
    }
    Ok(NicholsDims { dims, vanishes_at: None })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binom(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn one_dimensional_diagonal_symmetrizer() {
        for m in [2u32, 3, 4, 6] {
            for k in 0..m as i64 {
                let q = CycScalar::root(m, k);
                let v = BraidedVectorSpace::diagonal(&[vec![q.clone()]]).unwrap();
                let s2 = symmetrizer(&v, 2, 100).unwrap();
                let minus_one = q.root_order() == Some(2);
                assert_eq!(s2[0].is_empty(), minus_one, "q={q}");
            }
        }
        let v = BraidedVectorSpace::diagonal(&[vec![CycScalar::from_int(2, -1)]]).unwrap();
        let dims = nichols_graded_dims(&v, 6, 100).unwrap();
        assert_eq!(dims.dims, vec![1, 1, 0]);
        assert_eq!(dims.total(), 2);
        assert_eq!(dims.vanishes_at, Some(2));
    }

    #[test]
    fn primitive_cube_root_gives_truncated_polynomial_algebra() {
        let q = CycScalar::root(3, 1);
        let v = BraidedVectorSpace::diagonal(&[vec![q]]).unwrap();
        assert_eq!(nichols_graded_dims(&v, 5, 100).unwrap().dims, vec![1, 1, 1, 0]);
    }

    #[test]
    fn flip_gives_symmetric_algebra() {
        for d in 1..=3 {
            let v = BraidedVectorSpace::flip(d).unwrap();
            let dims = nichols_graded_dims(&v, 4, 10_000).unwrap();
            for m in 0..=4 {
                assert_eq!(dims.dims[m], binom(d + m - 1, m), "d={d} m={m}");
            }
            assert_eq!(dims.vanishes_at, None);
        }
    }

    #[test]
    fn product_formula_matches_recursion() {
        let m = 6;
        let q = vec![
            vec![CycScalar::from_int(m, -1), CycScalar::root(m, 1)],
            vec![CycScalar::root(m, 2), CycScalar::root(m, 3)],
        ];
        let v = BraidedVectorSpace::diagonal(&q).unwrap();
        let mut s = Symmetrizer::new(&v);
        for len in 1..=4 {
            for w in words(2, len) {
                assert_eq!(s.apply(&w), v.symmetrize_by_product(&w), "word {w:?}");
            }
        }
        assert!(v.check_braid_equation().is_ok());
    }

    #[test]
    fn budget_is_enforced() {
        let v = BraidedVectorSpace::flip(3).unwrap();
        assert!(matches!(symmetrizer(&v, 5, 100), Err(Error::Budget(_))));
        assert!(matches!(nichols_graded_dims(&v, 5, 100), Err(Error::Budget(_))));
    }

    #[test]
    fn bad_inverse_is_rejected() {
        let one = CycScalar::one(1);
        let c = vec![vec![(0, one.clone())]];
        let c_inv = vec![vec![(0, CycScalar::from_int(1, 2))]];
        assert!(BraidedVectorSpace::new(1, 1, c, c_inv, None).is_err());
    }

    #[test]
    fn non_braid_matrix_is_detected() {
        // C = flip on V⊗V except one column twisted by a non-solution
        let d = 2;
        let one = CycScalar::one(1);
        let mut c = vec![Vec::new(); 4];
        let mut c_inv = vec![Vec::new(); 4];
        for i in 0..d {
            for j in 0..d {
                c[i * d + j] = vec![(j * d + i, one.clone())];
                c_inv[j * d + i] = vec![(i * d + j, one.clone())];
            }
        }
        // swap the images of e0⊗e0 and e0⊗e1
        c.swap(0, 1);
        for (q, col) in c.iter().enumerate() {
            c_inv[col[0].0] = vec![(q, one.clone())];
        }
        let v = BraidedVectorSpace::new(2, 1, c, c_inv, None).unwrap();
        assert!(v.check_braid_equation().is_err());
    }
}
