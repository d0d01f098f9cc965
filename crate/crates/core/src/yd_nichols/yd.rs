//! Yetter–Drinfeld modules `M(O_s, ρ)` and their braidings.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use crate::conj_classes::{juxtapose, split, ConjugacyClass};
use crate::error::{Error, Result};
use crate::linalg::{collect_sparse, rank, Field, SparseVec};
use crate::signed_weyl::SignedPermutation;

use super::braided::BraidedVectorSpace;
use super::cyclotomic::CycScalar;
use super::rep::{CentralizerRep, Mat};

/// `M(O_s, ρ)` with basis `g_i v_k`, index `i·d + k`.
#[derive(Clone, Debug)]
pub struct YdModule {
    pub class: ConjugacyClass,
    pub rep: CentralizerRep,
    pub braided: BraidedVectorSpace,
}

/// `ν_j(h) = g_{j'}⁻¹ h g_j` where `h ▷ t_j = t_{j'}`; returns `(j', ν)`.
pub fn nu(class: &ConjugacyClass, h: &SignedPermutation, j: usize) -> Result<(usize, SignedPermutation)> {
    let target = h.conj(&class.element(j));
    let jp = class
        .index_of(&target)
        .ok_or_else(|| Error::Precondition(format!("{h} does not normalize the class")))?;
    let v = class.section()[jp].inv().mul(h).mul(&class.section()[j]);
    Ok((jp, v))
}

fn rho<'a>(rep: &'a CentralizerRep, h: &SignedPermutation) -> Result<&'a Mat> {
    rep.image(h)
        .ok_or_else(|| Error::Representation(format!("{h} is not in the centralizer the representation was built on")))
}

pub fn build_yd_module(class: &ConjugacyClass, rep: &CentralizerRep) -> Result<YdModule> {
    let s = class.rep();
    if let Some(g) = rep.generators().iter().find(|g| g.mul(&s) != s.mul(g)) {
        return Err(Error::Representation(format!("generator {g} does not centralize {s}")));
    }
    let big_m = class.len();
    let d = rep.dim();
    let dim = big_m * d;
    let modulus = rep.modulus();
    let mut c = vec![Vec::new(); dim * dim];
    let mut c_inv = vec![Vec::new(); dim * dim];
    for i in 0..big_m {
        let ti = class.element(i);
        for j in 0..big_m {
            // C(g_i v_k ⊗ g_j v_l) = g_{j'} ρ(ν_j(t_i)) v_l ⊗ g_i v_k
            let (jp, v) = nu(class, &ti, j)?;
            let r = rho(rep, &v)?;
            // C⁻¹(g_{j'} v_x ⊗ g_i v_y) = g_i v_y ⊗ g_j ρ(ν_j(t_i))⁻¹ v_x
            let rinv = rho(rep, &v.inv())?;
            for k in 0..d {
                for l in 0..d {
                    let col = (i * d + k) * dim + (j * d + l);
                    c[col] = collect_sparse(
                        (0..d)
                            .filter(|&row| !r.entry(row, l).is_zero())
                            .map(|row| (((jp * d + row) * dim) + i * d + k, r.entry(row, l).clone())),
                    );
                    let col_inv = (jp * d + l) * dim + (i * d + k);
                    c_inv[col_inv] = collect_sparse(
                        (0..d)
                            .filter(|&row| !rinv.entry(row, l).is_zero())
                            .map(|row| ((i * d + k) * dim + j * d + row, rinv.entry(row, l).clone())),
                    );
                }
            }
        }
    }
    let degrees = (0..dim).map(|x| class.element(x / d)).collect();
    let braided = BraidedVectorSpace::new(dim, modulus, c, c_inv, Some(degrees))?;
    Ok(YdModule { class: class.clone(), rep: rep.clone(), braided })
}

/// The same class with a shuffled numeration (keeping `t_1 = s`) and each section
/// entry `g_i` replaced by `g_i c_i` for random centralizer elements `c_i`.
pub fn reshuffled_class<R: Rng>(
    class: &ConjugacyClass,
    centralizer_elements: &[SignedPermutation],
    rng: &mut R,
) -> Result<ConjugacyClass> {
    let mut order: Vec<usize> = (1..class.len()).collect();
    order.shuffle(rng);
    order.insert(0, 0);
    let elements = order.iter().map(|&i| class.element(i)).collect();
    let section = order
        .iter()
        .map(|&i| {
            let c = centralizer_elements.choose(rng).copied().unwrap_or_else(|| SignedPermutation::identity(class.rep().rank()));
            class.section()[i].mul(&c)
        })
        .collect();
    ConjugacyClass::from_parts(class.group, elements, section)
}

#[derive(Clone, Debug, Serialize)]
pub struct PsiReport {
    pub source_dim: usize,
    pub image_rank: usize,
    pub pairs_checked: usize,
    pub intertwines: bool,
}

/// Index of `(t_i # s_j)` tensor basis vector `v_k ⊗ w_l` in the target module.
fn target_index(i: usize, j: usize, k: usize, l: usize, right_len: usize, d1: usize, d2: usize) -> usize {
    ((i * right_len + j) * d1 + k) * d2 + l
}

/// Checks that `g_i v ↦ (g_i # h_1) v ⊗ w0` intertwines the braiding of `left` with
/// the braiding of `M(O_x # O_y, ρ₁ ⊗ ρ₂)` over `W_n # W_m`. The target braiding is
/// computed from products in `W_{n+m}`, splitting `ν` back into its blocks.
pub fn psi_embedding(
    left: &YdModule,
    right_class: &ConjugacyClass,
    right_rep: &CentralizerRep,
    w0: &[CycScalar],
) -> Result<PsiReport> {
    let n = left.class.rep().rank();
    let y = right_class.rep();
    let modulus = left.rep.modulus();
    if right_rep.modulus() != modulus {
        return Err(Error::Precondition("both representations must use the same field".into()));
    }
    let (d1, d2) = (left.rep.dim(), right_rep.dim());
    if w0.len() != d2 || w0.iter().all(|x| x.is_zero()) {
        return Err(Error::Precondition("w0 must be a nonzero vector of the right representation".into()));
    }
    let q = rho(right_rep, &y)?
        .as_scalar()
        .ok_or_else(|| Error::Precondition("right representation is not scalar on its class representative".into()))?;
    if !q.is_one() {
        return Err(Error::Precondition(format!("q on the right block is {q}, the embedding needs 1")));
    }
    let h1 = right_class.section()[0];
    let s1 = right_class.element(0);
    let big_m = left.class.len();
    let right_len = right_class.len();
    let psi = |i: usize, k: usize| -> Vec<(usize, CycScalar)> {
        (0..d2)
            .filter(|&l| !w0[l].is_zero())
            .map(|l| (target_index(i, 0, k, l, right_len, d1, d2), w0[l].clone()))
            .collect()
    };

    let source_dim = big_m * d1;
    let images: Vec<SparseVec<CycScalar>> = (0..big_m).flat_map(|i| (0..d1).map(move |k| (i, k))).map(|(i, k)| psi(i, k)).collect();
    let image_rank = rank(&images);

    let mut ok = true;
    let mut pairs = 0;
    for i in 0..big_m {
        let ti = juxtapose(&left.class.element(i), &s1)?;
        for j in 0..big_m {
            let tj = juxtapose(&left.class.element(j), &s1)?;
            let target = ti.conj(&tj);
            let (a, b) = split(&target, n).ok_or_else(|| Error::Precondition("blocks do not split".into()))?;
            let ip = left.class.index_of(&a).ok_or_else(|| Error::Precondition("left block left its class".into()))?;
            let jr = right_class.index_of(&b).ok_or_else(|| Error::Precondition("right block left its class".into()))?;
            let g_target = juxtapose(&left.class.section()[ip], &right_class.section()[jr])?;
            let g_j = juxtapose(&left.class.section()[j], &h1)?;
            let nu_full = g_target.inv().mul(&ti).mul(&g_j);
            let (nu1, nu2) = split(&nu_full, n)
                .ok_or_else(|| Error::Precondition(format!("{nu_full} does not lie in the juxtaposed subgroup")))?;
            let r1 = rho(&left.rep, &nu1)?;
            let r2 = rho(right_rep, &nu2)?;
            for k in 0..d1 {
                for kk in 0..d1 {
                    pairs += 1;
                    // C on ψ(g_i v_k) ⊗ ψ(g_j v_kk) in the target
                    let mut lhs: BTreeMap<(usize, usize), CycScalar> = BTreeMap::new();
                    for (p, cp) in psi(i, k) {
                        for l in 0..d2 {
                            if w0[l].is_zero() {
                                continue;
                            }
                            for row1 in 0..d1 {
                                for row2 in 0..d2 {
                                    let coeff = r1.entry(row1, kk).mul(r2.entry(row2, l));
                                    if coeff.is_zero() {
                                        continue;
                                    }
                                    let first = target_index(ip, jr, row1, row2, right_len, d1, d2);
                                    let e = lhs.entry((first, p)).or_insert_with(|| CycScalar::zero(modulus));
                                    *e = e.add(&coeff.mul(&w0[l]).mul(&cp));
                                }
                            }
                        }
                    }
                    lhs.retain(|_, x| !x.is_zero());
                    // (ψ⊗ψ) C(g_i v_k ⊗ g_j v_kk)
                    let mut rhs: BTreeMap<(usize, usize), CycScalar> = BTreeMap::new();
                    let dim = left.braided.dim();
                    for (pq, c) in left.braided.braid_column(i * d1 + k, j * d1 + kk) {
                        let (x, z) = (pq / dim, pq % dim);
                        for (px, cx) in psi(x / d1, x % d1) {
                            for (pz, cz) in psi(z / d1, z % d1) {
                                let e = rhs.entry((px, pz)).or_insert_with(|| CycScalar::zero(modulus));
                                *e = e.add(&c.mul(&cx).mul(&cz));
                            }
                        }
                    }
                    rhs.retain(|_, x| !x.is_zero());
                    if lhs != rhs {
                        ok = false;
                    }
                }
            }
        }
    }
    Ok(PsiReport { source_dim, image_rank, pairs_checked: pairs, intertwines: ok })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conj_classes::{centralizer_of_class, enumerate_class};
    use crate::signed_weyl::Group;
    use crate::yd_nichols::braided::nichols_graded_dims;
    use crate::yd_nichols::rep::linear_characters;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn sign_char(class: &ConjugacyClass) -> CentralizerRep {
        let cent = centralizer_of_class(class);
        let values: Vec<CycScalar> = cent
            .generators
            .iter()
            .map(|g| CycScalar::from_int(2, if g.perm_part().cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 0 { 1 } else { -1 }))
            .collect();
        CentralizerRep::character(&cent, &values).unwrap()
    }

    #[test]
    fn trivial_rep_gives_rack_braiding() {
        let class = enumerate_class(Group::b(3), "100:(1 2)".parse().unwrap()).unwrap();
        let cent = centralizer_of_class(&class);
        let rep = CentralizerRep::trivial(&cent, 1).unwrap();
        let m = build_yd_module(&class, &rep).unwrap();
        let d = class.len();
        for i in 0..d {
            for j in 0..d {
                let jp = class.index_of(&class.element(i).conj(&class.element(j))).unwrap();
                assert_eq!(m.braided.braid_column(i, j), &vec![(jp * d + i, CycScalar::one(1))]);
            }
        }
        assert!(m.braided.check_braid_equation().is_ok());
        assert!(m.braided.check_coaction().is_ok());
    }

    #[test]
    fn s3_transpositions_with_sign() {
        let class = enumerate_class(Group::s(3), "000:(1 2)".parse().unwrap()).unwrap();
        let rep = sign_char(&class);
        let m = build_yd_module(&class, &rep).unwrap();
        assert_eq!(m.braided.dim(), 3);
        for i in 0..3 {
            for j in 0..3 {
                let col = m.braided.braid_column(i, j);
                assert_eq!(col.len(), 1);
                let v = col[0].1.as_rational().unwrap().clone();
                assert!(v == num_rational::BigRational::from_integer(1.into()) || v == num_rational::BigRational::from_integer((-1).into()));
            }
            // t_i acts on its own vector by ρ(t_1) = -1
            assert_eq!(m.braided.braid_column(i, i)[0].1, CycScalar::from_int(2, -1));
        }
        assert!(m.braided.check_braid_equation().is_ok());
        let dims = nichols_graded_dims(&m.braided, 6, 1_000_000).unwrap();
        assert_eq!(dims.dims, vec![1, 3, 4, 3, 1, 0]);
        assert_eq!(dims.total(), 12);
    }

    #[test]
    fn ranks_do_not_depend_on_numeration_or_section() {
        let class = enumerate_class(Group::s(3), "000:(1 2)".parse().unwrap()).unwrap();
        let rep = sign_char(&class);
        let base = nichols_graded_dims(&build_yd_module(&class, &rep).unwrap().braided, 5, 1_000_000).unwrap();
        let cent = centralizer_of_class(&class);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..4 {
            let c2 = reshuffled_class(&class, cent.elements(), &mut rng).unwrap();
            let m2 = build_yd_module(&c2, &rep).unwrap();
            assert!(m2.braided.check_braid_equation().is_ok());
            assert_eq!(nichols_graded_dims(&m2.braided, 5, 1_000_000).unwrap(), base);
        }
    }

    #[test]
    fn b2_classes_satisfy_braid_equation_for_all_characters() {
        let g = Group::b(2);
        for class in crate::conj_classes::all_classes(g).unwrap() {
            let cent = centralizer_of_class(&class);
            for rep in linear_characters(&cent, 2, 1000).unwrap() {
                let m = build_yd_module(&class, &rep).unwrap();
                assert!(m.braided.check_braid_equation().is_ok());
                assert!(m.braided.check_coaction().is_ok());
            }
        }
    }

    #[test]
    fn central_element_gives_diagonal_braiding() {
        let class = enumerate_class(Group::b(2), "11:()".parse().unwrap()).unwrap();
        assert_eq!(class.len(), 1);
        let cent = centralizer_of_class(&class);
        let values = vec![CycScalar::from_int(2, -1); cent.generators.len()];
        let rep = CentralizerRep::character(&cent, &values).unwrap();
        let m = build_yd_module(&class, &rep).unwrap();
        let q = rep.image(&class.rep()).unwrap().as_scalar().unwrap();
        assert_eq!(m.braided.braid_column(0, 0), &vec![(0, q)]);
    }

    #[test]
    fn representation_from_wrong_group_is_rejected() {
        let class = enumerate_class(Group::s(3), "000:(1 2)".parse().unwrap()).unwrap();
        let other = enumerate_class(Group::s(3), "000:(1 2 3)".parse().unwrap()).unwrap();
        let rep = CentralizerRep::trivial(&centralizer_of_class(&other), 1).unwrap();
        assert!(matches!(build_yd_module(&class, &rep), Err(Error::Representation(_))));
    }

    fn scalar_rep(class: &ConjugacyClass, m: u32, q: i64) -> CentralizerRep {
        // the character that is q on the class representative and trivial on its complement, found by search
        let cent = centralizer_of_class(class);
        let want = CycScalar::from_int(m, q);
        linear_characters(&cent, 2, 1 << 16)
            .unwrap()
            .into_iter()
            .map(|r| r.lift(m).unwrap())
            .find(|r| r.image(&class.rep()).unwrap().as_scalar() == Some(want.clone()))
            .expect("a character with the requested value exists")
    }

    #[test]
    fn psi_intertwines_for_transposition_and_three_cycle_blocks() {
        let left = enumerate_class(Group::b(2), "00:(1 2)".parse().unwrap()).unwrap();
        let right = enumerate_class(Group::b(3), "000:(1 2 3)".parse().unwrap()).unwrap();
        let left_rep = scalar_rep(&left, 2, -1);
        let right_rep = scalar_rep(&right, 2, 1);
        let lm = build_yd_module(&left, &left_rep).unwrap();
        let report = psi_embedding(&lm, &right, &right_rep, &[CycScalar::one(2)]).unwrap();
        assert!(report.intertwines);
        assert_eq!(report.image_rank, report.source_dim);
        assert_eq!(report.pairs_checked, left.len() * left.len());
    }

    #[test]
    fn psi_with_trivial_right_block() {
        let left = enumerate_class(Group::b(3), "100:(1 2 3)".parse().unwrap()).unwrap();
        let right = enumerate_class(Group::b(1), "0:()".parse().unwrap()).unwrap();
        let lrep = CentralizerRep::trivial(&centralizer_of_class(&left), 1).unwrap();
        let rrep = CentralizerRep::trivial(&centralizer_of_class(&right), 1).unwrap();
        let lm = build_yd_module(&left, &lrep).unwrap();
        let r = psi_embedding(&lm, &right, &rrep, &[CycScalar::one(1)]).unwrap();
        assert!(r.intertwines);
        assert_eq!(r.image_rank, left.len());
    }

    #[test]
    fn psi_rejects_nontrivial_right_scalar() {
        let left = enumerate_class(Group::b(2), "00:(1 2)".parse().unwrap()).unwrap();
        let right = enumerate_class(Group::b(2), "00:(1 2)".parse().unwrap()).unwrap();
        let lm = build_yd_module(&left, &scalar_rep(&left, 2, -1)).unwrap();
        let err = psi_embedding(&lm, &right, &scalar_rep(&right, 2, -1), &[CycScalar::one(2)]);
        assert!(matches!(err, Err(Error::Precondition(_))));
    }
}
