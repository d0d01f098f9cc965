use std::collections::HashMap;

use rayon::prelude::*;

use crate::conj_classes::{all_classes, enumerate_class, ConjugacyClass};
use crate::error::Result;
use crate::rack_core::TypeDWitness;
use crate::signed_weyl::{partitions, Group, GroupKind, SignedCycleType, SignedPermutation};
use crate::typed_classifier::{
    classify_all, lift_from_sym, propagate_juxtaposition, sym_witness, witness_223, witness_33,
    witness_fixed_points, witness_odd_cycle, ClassifyOptions, FixedPointCase, LemmaWitness, VerdictStatus,
};

use super::super::report::Check;

fn sp(s: &str) -> SignedPermutation {
    s.parse().expect("well-formed literal")
}

/// Enumerated classes of `W(B_n)` keyed by signed cycle type, built once per type.
fn classes_for(elements: &[SignedPermutation]) -> Result<HashMap<SignedCycleType, ConjugacyClass>> {
    let mut reps: HashMap<SignedCycleType, SignedPermutation> = HashMap::new();
    for x in elements {
        reps.entry(x.signed_cycle_type()).or_insert(*x);
    }
    let mut keyed: Vec<(SignedCycleType, SignedPermutation)> = reps.into_iter().collect();
    keyed.sort();
    keyed
        .into_par_iter()
        .map(|(t, x)| Ok((t, enumerate_class(Group::b(x.rank()), x)?)))
        .collect()
}

/// Runs `recipe` on every element and re-validates the witness against the
/// enumerated class with the table-free decomposition checker.
fn witness_check<F>(tag: &str, elements: Vec<SignedPermutation>, recipe: F) -> Result<Check>
where
    F: Fn(&SignedPermutation) -> Result<TypeDWitness> + Sync,
{
    let start = std::time::Instant::now();
    let classes = classes_for(&elements)?;
    log::debug!("{tag}: classes in {:?}", start.elapsed());
    let outcomes: Vec<std::result::Result<(), String>> = elements
        .par_iter()
        .map(|x| {
            let w = recipe(x).map_err(|e| e.to_string())?;
            let class = &classes[&x.signed_cycle_type()];
            w.validate(class).map_err(|v| v.to_string())
        })
        .collect();
    log::debug!("{tag}: witnesses in {:?}", start.elapsed());
    let mut check = Check::new(tag);
    for (x, o) in elements.iter().zip(outcomes) {
        check.record(o.is_ok(), || format!("{x}: {}", o.unwrap_err()));
    }
    Ok(check)
}

fn all_signs(tau: &SignedPermutation) -> Vec<SignedPermutation> {
    (0..1u64 << tau.rank()).map(|a| tau.with_bits(a)).collect()
}

/// Sign vectors that are not constant on the fixed points of `τ`.
fn mixed_on_fixed_points(tau: &SignedPermutation) -> Vec<SignedPermutation> {
    let fixed: Vec<usize> = (0..tau.rank()).filter(|&i| tau.image(i) == i).collect();
    all_signs(tau)
        .into_iter()
        .filter(|x| fixed.iter().any(|&i| x.bit(i) != x.bit(fixed[0])))
        .collect()
}

fn plain(r: Result<LemmaWitness>) -> Result<TypeDWitness> {
    r.map(|w| w.witness)
}

pub(super) fn type_d_lemmas(budget: u64) -> Result<Vec<Check>> {
    let b = |n| Group::b(n);
    let mut checks = Vec::new();
    for (tag, tau) in [("lemma.odd_cycle.p5", "00000:(1 2 3 4 5)"), ("lemma.odd_cycle.p7", "0000000:(1 2 3 4 5 6 7)")] {
        let tau = sp(tau);
        checks.push(witness_check(tag, all_signs(&tau), |x| plain(witness_odd_cycle(b(x.rank()), x)))?);
    }
    checks.push(witness_check("lemma.type_3_3", all_signs(&sp("000000:(1 2 3)(4 5 6)")), |x| {
        plain(witness_33(b(6), x))
    })?);
    checks.push(witness_check("lemma.type_2_2_3", all_signs(&sp("0000000:(1 2)(3 4)(5 6 7)")), |x| {
        plain(witness_223(b(7), x))
    })?);

    let fixed_cases: [(&str, FixedPointCase, &[&str]); 3] = [
        ("lemma.fixed_point.transposition", FixedPointCase::Transposition, &["00000:(1 2)", "000000:(1 2)"]),
        ("lemma.fixed_point.three_cycle", FixedPointCase::ThreeCycle, &["000000:(1 2 3)", "0000000:(1 2 3)"]),
        (
            "lemma.fixed_point.general",
            FixedPointCase::General,
            &["000000:(1 2 3 4)", "0000000:(1 2)(3 4)", "0000000:(1 2 3)(4 5)"],
        ),
    ];
    for (tag, case, taus) in fixed_cases {
        let elements: Vec<SignedPermutation> = taus.iter().flat_map(|t| mixed_on_fixed_points(&sp(t))).collect();
        checks.push(witness_check(tag, elements, |x| plain(witness_fixed_points(b(x.rank()), x, case)))?);
    }
    // (1², 2²): every conjugate of τ fixing both fixed points commutes with τ
    let mut refused = Check::new("lemma.fixed_point.refuses_1_1_2_2");
    for x in mixed_on_fixed_points(&sp("000000:(1 2)(3 4)")) {
        let r = witness_fixed_points(b(6), &x, FixedPointCase::General);
        refused.record(r.is_err(), || format!("{x}: unexpected witness"));
    }
    checks.push(refused);

    // every S_n class (n = 5, 6) with a type-D witness, every sign vector
    let mut lifted = Vec::new();
    for n in 5..=6 {
        for p in partitions(n) {
            if p.iter().all(|&l| l == 1) {
                continue;
            }
            if sym_witness(&p, budget)?.is_some() {
                let tau = SignedCycleType { positive: p.clone(), negative: vec![] }.representative();
                lifted.extend(all_signs(&tau));
            }
        }
    }
    checks.push(witness_check("lemma.sym_lifting", lifted, |x| {
        let sym = sym_witness(&x.cycle_type(), budget)?.expect("checked above");
        plain(lift_from_sym(b(x.rank()), x, &sym))
    })?);

    // witnesses for the 5-cycle classes carried along x ↦ x # y
    let five = all_signs(&sp("00000:(1 2 3 4 5)"));
    let mut right: Vec<SignedPermutation> = Vec::new();
    for m in 1..=2 {
        right.extend(Group::b(m).elements());
    }
    let mut pairs = Vec::new();
    for x in &five {
        for y in &right {
            pairs.push(crate::conj_classes::juxtapose(x, y)?);
        }
    }
    checks.push(witness_check("lemma.juxtaposition_propagation", pairs, |z| {
        let (x, y) = crate::conj_classes::split(z, 5).expect("juxtaposed");
        let w = witness_odd_cycle(b(5), &x)?;
        propagate_juxtaposition(&w.witness, Some(&y))
    })?);
    Ok(checks)
}

/// The exception list of the classification restated on cycle types: `(2,3)`,
/// `(2³)`, `(2⁴)`, `(1,2²)`, `(1²,3)`, `(1²,2²)`, and `(1^{n−2},2)`,
/// `(1^{n−3},3)` (`n > 5`) with equal signs on all fixed points.
pub fn in_listed_exceptions(sigma: &SignedPermutation) -> bool {
    let n = sigma.rank();
    let mut t = sigma.cycle_type();
    t.sort_unstable_by(|a, b| b.cmp(a));
    let listed: [&[usize]; 6] = [&[3, 2], &[2, 2, 2], &[2, 2, 2, 2], &[2, 2, 1], &[3, 1, 1], &[2, 2, 1, 1]];
    if listed.iter().any(|l| *l == t.as_slice()) {
        return true;
    }
    let ones = t.iter().filter(|&&l| l == 1).count();
    let shape = (t[0] == 2 && ones == n - 2) || (t[0] == 3 && ones == n - 3 && n > 5);
    let fixed: Vec<u8> = (0..n).filter(|&i| sigma.image(i) == i).map(|i| sigma.bit(i)).collect();
    shape && fixed.windows(2).all(|w| w[0] == w[1])
}

pub(super) fn classification(budget: u64) -> Result<Vec<Check>> {
    let opts = ClassifyOptions { budget, ..ClassifyOptions::default() };
    let mut checks = Vec::new();
    for g in [Group::b(5), Group::b(6), Group::d(5), Group::d(6)] {
        let label = format!("{}{}", if g.kind == GroupKind::B { "B" } else { "D" }, g.n);
        let verdicts: Vec<_> =
            classify_all(g, &opts).into_iter().filter(|v| !v.rep.perm_is_identity()).collect();
        let mut decided = Check::new(format!("classification.no_undetermined.{label}"));
        let mut listed = Check::new(format!("classification.exception_list_exact.{label}"));
        let mut valid = Check::new(format!("classification.witnesses_revalidate.{label}"));
        let classes: HashMap<SignedPermutation, ConjugacyClass> =
            all_classes(g)?.into_iter().map(|c| (c.rep(), c)).collect();
        for v in &verdicts {
            decided.record(v.status != VerdictStatus::Undetermined, || {
                format!("{}: {}", v.rep, v.detail.clone().unwrap_or_default())
            });
            let expected = in_listed_exceptions(&v.rep);
            listed.record((v.status == VerdictStatus::InExceptionList) == expected, || {
                format!("{}: status {}, listed {expected}", v.rep, v.status)
            });
            if let (VerdictStatus::ProvenTypeD, Some(w)) = (v.status, &v.witness) {
                let class = classes.values().find(|c| c.contains(&v.rep)).expect("every element has a class");
                let r = w.validate(class);
                valid.record(r.is_ok(), || format!("{}: {}", v.rep, r.unwrap_err()));
            }
        }
        checks.extend([decided, listed, valid]);
    }
    Ok(checks)
}
