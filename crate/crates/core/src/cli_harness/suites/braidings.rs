use num_integer::Integer;
use num_rational::Ratio;
use rand_chacha::ChaCha8Rng;

use crate::conj_classes::{all_classes, centralizer_of_class, enumerate_class, ConjugacyClass};
use crate::error::Result;
use crate::fk_quadratic::{fk_presentation, graded_dims, Engine, DEFAULT_FK_BUDGET};
use crate::signed_weyl::{Group, SignedPermutation};
use crate::typed_classifier::ClassifyOptions;
use crate::yd_nichols::{
    build_yd_module, case_table_screen, linear_characters, nichols_graded_dims, psi_embedding, q_screen,
    reshuffled_class, classification_screen, BraidedVectorSpace, CentralizerRep, TableCase, TableInput, CycScalar,
    Symmetrizer,
};

use super::super::report::Check;

fn sp(s: &str) -> SignedPermutation {
    s.parse().expect("well-formed literal")
}

/// The character `h ↦ sgn(π_h)` on the centralizer generators.
fn sign_character(class: &ConjugacyClass) -> Result<CentralizerRep> {
    let cent = centralizer_of_class(class);
    let values: Vec<CycScalar> = cent
        .generators
        .iter()
        .map(|g| {
            let odd = g.perm_part().cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 1;
            CycScalar::from_int(2, if odd { -1 } else { 1 })
        })
        .collect();
    CentralizerRep::character(&cent, &values)
}

/// A character with `ρ(rep) = q`, searched among the `±1`-valued ones.
fn character_with_value(class: &ConjugacyClass, q: i64) -> Result<Option<CentralizerRep>> {
    let want = CycScalar::from_int(2, q);
    Ok(linear_characters(&centralizer_of_class(class), 2, 1 << 16)?
        .into_iter()
        .find(|r| r.image(&class.rep()).and_then(|m| m.as_scalar()) == Some(want.clone())))
}

/// Angle `k/m` reduced into `[0, 1)`.
fn angle(k: i64, m: i64) -> Ratio<i64> {
    Ratio::new(k.rem_euclid(m), m)
}

/// Expected screen outcome (`true` = infinite dimension) for `q_left = ζ_{m_l}^{k_l}`,
/// `q_right = ζ_{m_r}^{k_r}`, evaluated on angles: the product must be `−1`, and
/// when `ord(right) ≤ 2` with `q_left ≠ 1`, or the orders are coprime with
/// `ord(right)` odd, the pair must be `(q_right, q_left) = (1, −1)`.
pub fn q_screen_oracle(left: (i64, i64), right: (i64, i64), ord_left: u64, ord_right: u64) -> bool {
    let (a, b) = (angle(left.0, left.1), angle(right.0, right.1));
    let half = Ratio::new(1, 2);
    let zero = Ratio::from_integer(0);
    let sum = a + b;
    let sum = sum - Ratio::from_integer(sum.to_integer());
    if sum != half {
        return true;
    }
    let forced = b == zero && a == half;
    if ord_right <= 2 && a != zero && !forced {
        return true;
    }
    ord_left.gcd(&ord_right) == 1 && ord_right % 2 == 1 && !forced
}

fn primitive_roots(max_order: i64) -> Vec<(i64, i64)> {
    (1..=max_order).flat_map(|m| (0..m).filter(move |k| k.gcd(&m) == 1).map(move |k| (k, m))).collect()
}

pub(super) fn q_checks() -> Result<Vec<Check>> {
    let field = 60;
    let mut arith = Check::new("screens.q_order_arithmetic");
    let roots = primitive_roots(6);
    for &(kl, ml) in &roots {
        for &(kr, mr) in &roots {
            let ql = CycScalar::root(ml as u32, kl).lift(field)?;
            let qr = CycScalar::root(mr as u32, kr).lift(field)?;
            // element orders compatible with the scalars: ord(q) | ord(x)
            for ord_l in (1..=6u64).filter(|o| o % ml as u64 == 0) {
                for ord_r in (1..=6u64).filter(|o| o % mr as u64 == 0) {
                    let got = q_screen(&ql, &qr, ord_l, ord_r).is_infinite();
                    let want = q_screen_oracle((kl, ml), (kr, mr), ord_l, ord_r);
                    arith.record(got == want, || {
                        format!("q_left = ζ{ml}^{kl}, q_right = ζ{mr}^{kr}, orders ({ord_l}, {ord_r}): got {got}")
                    });
                }
            }
        }
    }

    // case shapes and forced (ρ₁(cτ), ρ₂(dξ)) pairs
    let both: &[(i64, i64)] = &[(1, -1), (-1, 1)];
    let table: [(TableCase, &str, &str, &[(i64, i64)]); 10] = [
        (TableCase::I, "00:(1 2)", "00:()", both),
        (TableCase::Ii, "00:(1 2)", "111:()", both),
        (TableCase::Iii, "11:(1 2)", "000:()", &[(-1, 1)]),
        (TableCase::Iv, "000:(1 2 3)", "11:()", &[(1, -1)]),
        (TableCase::V, "111:(1 2 3)", "00:()", &[(-1, 1)]),
        (TableCase::Vi, "0000:(1 2)(3 4)", "11:()", &[(1, -1)]),
        (TableCase::Vii, "1010:(1 2)(3 4)", "11:()", both),
        (TableCase::Viii, "1010:(1 2)(3 4)", "00:()", &[(-1, 1)]),
        (TableCase::Ix, "1000:(1 2)(3 4)", "11:()", both),
        (TableCase::X, "1000:(1 2)(3 4)", "00:()", &[(-1, 1)]),
    ];
    let mut cases = Check::new("screens.case_table");
    let mut side = Check::new("screens.case_table_side_conditions");
    let mut shape = Check::new("screens.case_shape_gate");
    let pm = |v: i64| CycScalar::from_int(2, v);
    for (case, c, d, forced) in table {
        for r1 in [1, -1] {
            for r2 in [1, -1] {
                let input = TableInput { c_tau: sp(c), d_xi: sp(d), rho1: pm(r1), rho2: pm(r2), chi1_c: None, mu1_tau: None };
                let want_infinite = !forced.contains(&(r1, r2));
                let got = case_table_screen(case, &input).map(|v| v.is_infinite());
                cases.record(got.as_ref().ok() == Some(&want_infinite), || {
                    format!("case ({}) with ({r1}, {r2}): {got:?}", case.label())
                });
            }
        }
        // χ₁(c), μ₁(τ) side conditions of (ii), (iv), (v)
        let (r1, r2) = forced[0];
        let required: Option<(i64, i64)> = match case {
            TableCase::Ii => Some((1, r1)),
            TableCase::Iv => Some((1, 1)),
            TableCase::V => Some((-1, 1)),
            _ => None,
        };
        if let Some((chi, mu)) = required {
            for (x, y) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                let input = TableInput {
                    c_tau: sp(c),
                    d_xi: sp(d),
                    rho1: pm(r1),
                    rho2: pm(r2),
                    chi1_c: Some(pm(x)),
                    mu1_tau: Some(pm(y)),
                };
                let want_infinite = (x, y) != (chi, mu);
                let got = case_table_screen(case, &input).map(|v| v.is_infinite());
                side.record(got.as_ref().ok() == Some(&want_infinite), || {
                    format!("case ({}) with χ₁(c) = {x}, μ₁(τ) = {y}: {got:?}", case.label())
                });
            }
        }
        // a non-constant d, or a moving ξ, fits no case
        for bad in ["10:()", "00:(1 2)"] {
            let input = TableInput { c_tau: sp(c), d_xi: sp(bad), rho1: pm(-1), rho2: pm(1), chi1_c: None, mu1_tau: None };
            shape.record(case_table_screen(case, &input).is_err(), || format!("case ({}) accepted d = {bad}", case.label()));
        }
    }

    let mut classification = Check::new("screens.classification_screen");
    let opts = ClassifyOptions::default();
    for (g, x, want_infinite, want_reason) in [
        (Group::b(6), "000000:(1 2 3)(4 5 6)", true, None),
        (Group::b(5), "00000:(1 2)(3 4 5)", false, Some("exception (i)")),
        (Group::b(6), "000001:(1 2)", true, None),
        (Group::b(6), "000000:(1 2)", false, Some("exception (iii)")),
    ] {
        let v = classification_screen(g, &sp(x), &opts);
        let reason_ok = match (&v, want_reason) {
            (crate::yd_nichols::ScreenVerdict::Inconclusive { reason }, Some(r)) => reason == r,
            (_, None) => true,
            _ => false,
        };
        classification.record(v.is_infinite() == want_infinite && reason_ok, || format!("{x} in {g}: {v:?}"));
    }
    Ok(vec![arith, cases, side, shape, classification])
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

pub(super) fn yd_braidings(budget: u64, rng: &mut ChaCha8Rng) -> Result<Vec<Check>> {
    let mut braid = Check::new("yd.braid_equation");
    let mut coaction = Check::new("yd.coaction_compatibility");
    let mut spaces: Vec<(String, BraidedVectorSpace)> = Vec::new();
    for (g, m) in [(Group::s(3), 2), (Group::s(4), 2), (Group::b(2), 4), (Group::b(3), 2)] {
        for class in all_classes(g)? {
            let cent = centralizer_of_class(&class);
            for rep in linear_characters(&cent, m, 1 << 16)? {
                if class.len() * rep.dim() > 24 {
                    continue;
                }
                let module = build_yd_module(&class, &rep)?;
                spaces.push((format!("class of {} in {g}", class.rep()), module.braided));
            }
        }
    }
    for (label, v) in &spaces {
        let b = v.check_braid_equation();
        braid.record(b.is_ok(), || format!("{label}: fails on {:?}", b.unwrap_err()));
        coaction.record(v.check_coaction().is_ok(), || label.clone());
    }

    let s3 = enumerate_class(Group::s(3), sp("000:(1 2)"))?;
    let s3_sign = build_yd_module(&s3, &sign_character(&s3)?)?.braided;
    let b2 = enumerate_class(Group::b(2), sp("10:()"))?;
    let b2_char = character_with_value(&b2, -1)?.expect("a character with value -1");
    let b2_space = build_yd_module(&b2, &b2_char)?.braided;
    let mut factor = Check::new("yd.symmetrizer_factorization");
    for v in [&s3_sign, &b2_space, &BraidedVectorSpace::flip(2)?] {
        let mut s = Symmetrizer::new(v);
        for m in 1..=4usize {
            let total = (v.dim() as u64).pow(m as u32);
            for code in 0..total {
                let mut c = code;
                let w: Vec<u16> = (0..m)
                    .map(|_| {
                        let x = (c % v.dim() as u64) as u16;
                        c /= v.dim() as u64;
                        x
                    })
                    .collect();
                factor.record(s.apply(&w) == v.symmetrize_by_product(&w), || format!("word {w:?}"));
            }
        }
    }

    let mut s3_dims = Check::new("yd.nichols_s3_transpositions_sign");
    match nichols_graded_dims(&s3_sign, 6, budget) {
        Ok(d) => s3_dims.record(d.dims == [1, 3, 4, 3, 1, 0] && d.total() == 12, || format!("{:?}", d.dims)),
        Err(e) => s3_dims.record_error(&e, || "S_3 transpositions".into()),
    }

    let mut scalar = Check::new("yd.nichols_scalar_minus_one");
    let line = BraidedVectorSpace::diagonal(&[vec![CycScalar::from_int(2, -1)]])?;
    let d = nichols_graded_dims(&line, 4, budget)?;
    scalar.record(d.dims == [1, 1, 0] && d.total() == 2, || format!("{:?}", d.dims));

    let mut flip = Check::new("yd.nichols_flip_symmetric_algebra");
    for dim in 1..=3 {
        let v = BraidedVectorSpace::flip(dim)?;
        match nichols_graded_dims(&v, 5, budget) {
            Ok(d) => {
                let want: Vec<usize> = (0..=5).map(|m| binomial(dim + m - 1, m)).collect();
                flip.record(d.dims == want, || format!("D = {dim}: {:?}", d.dims));
            }
            Err(e) => flip.record_error(&e, || format!("flip D = {dim}")),
        }
    }

    // S_4 transpositions with the sign character against the quadratic algebra
    let mut s4 = Check::new("yd.nichols_s4_transpositions_vs_quadratic");
    let s4_class = enumerate_class(Group::s(4), sp("0000:(1 2)"))?;
    let s4_space = build_yd_module(&s4_class, &sign_character(&s4_class)?)?.braided;
    let quad = graded_dims(&fk_presentation(4)?, 5, Engine::Linear, DEFAULT_FK_BUDGET);
    match nichols_graded_dims(&s4_space, 5, budget) {
        Ok(d) => s4.record(d.dims == quad.dims, || format!("{:?} vs {:?}", d.dims, quad.dims)),
        Err(e) => s4.record_error(&e, || "S_4 transpositions".into()),
    }

    let mut shuffle = Check::new("yd.numeration_invariance");
    let cent = centralizer_of_class(&s3);
    let rep = sign_character(&s3)?;
    let base = nichols_graded_dims(&s3_sign, 5, budget)?;
    for _ in 0..4 {
        let c2 = reshuffled_class(&s3, cent.elements(), rng)?;
        let d2 = nichols_graded_dims(&build_yd_module(&c2, &rep)?.braided, 5, budget)?;
        shuffle.record(d2 == base, || format!("{:?}", d2.dims));
    }

    let mut psi = Check::new("yd.psi_intertwines");
    let left = enumerate_class(Group::b(2), sp("00:(1 2)"))?;
    let right = enumerate_class(Group::b(3), sp("000:(1 2 3)"))?;
    if let (Some(lr), Some(rr)) = (character_with_value(&left, -1)?, character_with_value(&right, 1)?) {
        let lm = build_yd_module(&left, &lr)?;
        let r = psi_embedding(&lm, &right, &rr, &[CycScalar::one(2)])?;
        psi.record(r.intertwines && r.image_rank == r.source_dim, || format!("{r:?}"));
        let bad = psi_embedding(&lm, &left, &lr, &[CycScalar::one(2)]);
        psi.record(bad.is_err(), || "q = -1 on the right block was accepted".into());
    } else {
        psi.record(false, || "no character with the required value".into());
    }

    Ok(vec![braid, coaction, factor, s3_dims, scalar, flip, s4, shuffle, psi])
}
