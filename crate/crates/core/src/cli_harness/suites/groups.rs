use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::conj_classes::{all_classes, verify_juxtaposition_identities};
use crate::error::Result;
use crate::rack_core::{
    rack_from_class, sq, sq_formula_commuting, sq_general_formula, square_commutativity_sides,
    square_commutes, Rack,
};
use crate::signed_weyl::{Group, SignedPermutation};

use super::super::report::Check;

/// Signed permutation matrix: column `i` carries `(−1)^{a_{π(i)}}` in row `π(i)`.
type Matrix = Vec<Vec<i8>>;

fn matrix(x: &SignedPermutation) -> Matrix {
    let n = x.rank();
    let mut m = vec![vec![0i8; n]; n];
    for i in 0..n {
        let j = x.image(i);
        m[j][i] = if x.bit(j) == 1 { -1 } else { 1 };
    }
    m
}

fn from_matrix(m: &Matrix) -> Option<SignedPermutation> {
    let n = m.len();
    let mut images = vec![0; n];
    let mut bits = 0u64;
    for i in 0..n {
        let rows: Vec<usize> = (0..n).filter(|&j| m[j][i] != 0).collect();
        let [j] = rows[..] else { return None };
        images[i] = j;
        match m[j][i] {
            1 => {}
            -1 => bits |= 1 << j,
            _ => return None,
        }
    }
    SignedPermutation::new(bits, &images).ok()
}

fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect())
        .collect()
}

fn transpose(a: &Matrix) -> Matrix {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| a[j][i]).collect()).collect()
}

fn sp(s: &str) -> SignedPermutation {
    s.parse().expect("well-formed literal")
}

fn random_b(rng: &mut ChaCha8Rng, max_rank: usize) -> (Group, usize) {
    let n = rng.gen_range(1..=max_rank);
    (Group::b(n), n)
}

pub(super) fn group_laws(samples: u64, max_rank: usize, rng: &mut ChaCha8Rng) -> Result<Vec<Check>> {
    let mut product = Check::new("group.product_vs_matrices");
    let mut inverse = Check::new("group.inverse_formula");
    let mut conj = Check::new("group.conjugation_formula");
    let mut assoc = Check::new("group.associativity");
    let mut invariant = Check::new("group.signed_cycle_type_invariance");
    let mut identity = Check::new("group.identity_and_involution");
    for _ in 0..samples {
        let (g, n) = random_b(rng, max_rank);
        let (x, y, z) = (g.random_element(rng), g.random_element(rng), g.random_element(rng));
        let (mx, my) = (matrix(&x), matrix(&y));
        let xy = x.multiply(&y)?;
        product.record(from_matrix(&mat_mul(&mx, &my)) == Some(xy), || format!("{x} · {y}"));
        let xi = x.inverse();
        inverse.record(
            from_matrix(&transpose(&mx)) == Some(xi) && x.multiply(&xi)?.is_identity(),
            || format!("{x}⁻¹"),
        );
        let c = y.conjugate_by(&x)?;
        let direct = x.multiply(&y)?.multiply(&xi)?;
        conj.record(
            from_matrix(&mat_mul(&mat_mul(&mx, &my), &transpose(&mx))) == Some(c) && direct == c,
            || format!("{x} ▷ {y}"),
        );
        assoc.record(xy.multiply(&z)? == x.multiply(&y.multiply(&z)?)?, || format!("({x} {y}) {z}"));
        invariant.record(c.signed_cycle_type() == y.signed_cycle_type(), || format!("{x} ▷ {y}"));
        let id = SignedPermutation::identity(n);
        identity.record(x.multiply(&id)? == x && xi.inverse() == x, || x.to_string());
    }
    let mut worked = Check::new("group.worked_examples");
    let cases: [(&str, SignedPermutation, SignedPermutation); 5] = [
        ("(00,(1 2))²", sp("00:(1 2)").multiply(&sp("00:(1 2)"))?, sp("00:()")),
        ("(10,(1 2))(01,(1 2))", sp("10:(1 2)").multiply(&sp("01:(1 2)"))?, sp("00:()")),
        ("(00,id)⁻¹", sp("00:()").inverse(), sp("00:()")),
        ("(10,(1 2))⁻¹", sp("10:(1 2)").inverse(), sp("01:(1 2)")),
        ("(10,id) ▷ (00,(1 2))", sp("00:(1 2)").conjugate_by(&sp("10:()"))?, sp("11:(1 2)")),
    ];
    for (label, got, want) in cases {
        worked.record(got == want, || format!("{label} = {got}, expected {want}"));
    }
    Ok(vec![product, inverse, conj, assoc, invariant, identity, worked])
}

/// A pair with commuting permutation parts: `τ = τ_A`, `μ = τ_A^k ρ_B` for a random
/// split `A ⊔ B` of the points, a permutation `τ_A` of `A` and `ρ_B` of `B`.
fn commuting_pair(rng: &mut ChaCha8Rng, max_rank: usize) -> (SignedPermutation, SignedPermutation) {
    let n = rng.gen_range(1..=max_rank);
    let in_a: Vec<bool> = (0..n).map(|_| rng.gen_bool(0.6)).collect();
    let shuffle_part = |rng: &mut ChaCha8Rng, part: bool| -> Vec<usize> {
        let pts: Vec<usize> = (0..n).filter(|&i| in_a[i] == part).collect();
        let mut img = pts.clone();
        for i in (1..img.len()).rev() {
            img.swap(i, rng.gen_range(0..=i));
        }
        let mut images: Vec<usize> = (0..n).collect();
        for (p, q) in pts.iter().zip(img) {
            images[*p] = q;
        }
        images
    };
    let tau = SignedPermutation::new(0, &shuffle_part(rng, true)).expect("permutation");
    let rho = SignedPermutation::new(0, &shuffle_part(rng, false)).expect("permutation");
    let k = rng.gen_range(0..6);
    let mu = tau.pow(k).multiply(&rho).expect("same rank");
    let mask = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let (a, b) = (rng.gen::<u64>() & mask, rng.gen::<u64>() & mask);
    let (x, y) = (tau.with_bits(a), mu.with_bits(b));
    if rng.gen_bool(0.5) {
        (x, y)
    } else {
        (y, x)
    }
}

pub(super) fn rack_axioms(samples: u64, max_rank: usize, rng: &mut ChaCha8Rng) -> Result<Vec<Check>> {
    let mut general = Check::new("sq.general_formula");
    for _ in 0..samples {
        let (g, _) = random_b(rng, max_rank);
        let (x, y) = (g.random_element(rng), g.random_element(rng));
        general.record(sq_general_formula(&x, &y)? == sq(&x, &y)?, || format!("sq({x}, {y})"));
    }
    let mut commuting = Check::new("sq.commuting_formula");
    let mut balance = Check::new("sq.commuting_balance_criterion");
    for _ in 0..samples {
        let (x, y) = commuting_pair(rng, max_rank);
        let direct = sq(&x, &y)?;
        commuting.record(sq_formula_commuting(&x, &y)? == direct, || format!("sq({x}, {y})"));
        let (l, r) = square_commutativity_sides(&x, &y);
        balance.record((l == r) == (direct == y), || format!("sq({x}, {y})"));
    }

    // τ = (1 2)(3 4) against τ and (1 3)(2 4), every pair of sign vectors
    let mut two_two = Check::new("sq.square_commutativity_2_2");
    let tau = sp("0000:(1 2)(3 4)");
    for mu in [tau, sp("0000:(1 3)(2 4)")] {
        for a in 0..16u64 {
            for b in 0..16u64 {
                let (x, y) = (tau.with_bits(a), mu.with_bits(b));
                let parity = a.count_ones() % 2 == b.count_ones() % 2;
                let expect = mu == tau || parity;
                let (l, r) = square_commutativity_sides(&x, &y);
                two_two.record(square_commutes(&x, &y)? == expect && (l == r) == expect, || {
                    format!("{x}, {y}")
                });
            }
        }
    }
    let mut three_three = Check::new("sq.type_3_3_example");
    let (x, y) = (sp("111111:(1 2 3)(4 5 6)"), sp("100100:(1 3 2)(4 5 6)"));
    three_three.record(!square_commutes(&x, &y)?, || format!("sq({x}, {y}) = {y}"));

    let mut axioms = Check::new("rack.axioms_class_racks");
    let mut table_sq = Check::new("rack.table_sq_matches_group");
    for n in 1..=5 {
        for g in [Group::b(n), Group::d(n)] {
            for class in all_classes(g)? {
                if class.len() <= 200 {
                    let rack = rack_from_class(&class)?;
                    axioms.record(rack.verify_axioms().is_ok(), || format!("class of {} in {g}", class.rep()));
                    let mut ok = true;
                    for x in 0..rack.len() {
                        for y in 0..rack.len() {
                            let t = rack.op(x, rack.op(y, rack.op(x, y)));
                            ok &= class.element(t) == sq(&class.element(x), &class.element(y))?;
                        }
                    }
                    table_sq.record(ok, || format!("class of {} in {g}", class.rep()));
                } else {
                    // sampled triples on the class itself
                    let mut ok = true;
                    for _ in 0..10_000 {
                        let pick = |rng: &mut ChaCha8Rng| class.element(rng.gen_range(0..class.len()));
                        let (x, y, z) = (pick(rng), pick(rng), pick(rng));
                        ok &= z.conjugate_by(&z)? == z;
                        let left = z.conjugate_by(&y)?.conjugate_by(&x)?;
                        let right = z.conjugate_by(&x)?.conjugate_by(&y.conjugate_by(&x)?)?;
                        ok &= left == right && class.contains(&left);
                    }
                    axioms.record(ok, || format!("class of {} in {g} (sampled)", class.rep()));
                }
            }
        }
    }
    Ok(vec![general, commuting, balance, two_two, three_three, axioms, table_sq])
}

pub(super) fn juxtaposition(samples: u64, max_rank: usize, rng: &mut ChaCha8Rng) -> Result<Vec<Check>> {
    let report = verify_juxtaposition_identities(max_rank, 1_000_000, samples, rng)?;
    Ok(report
        .checks
        .into_iter()
        .map(|c| {
            let mut check = Check::new(c.identity);
            check.cases = c.cases;
            check.failures = c.failures;
            check.examples = c.counterexamples.into_iter().take(8).collect();
            if check.tag == "juxtaposition.class_product" {
                check = check.with_note("literal set equality O(x#y) = O(x)#O(y)");
            }
            check
        })
        .collect())
}
