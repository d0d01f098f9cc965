//! Constructive type-D witnesses for classes of `W(B_n)` and `W(D_n)`.
//!
//! Each recipe returns a [`LemmaWitness`]: a decomposition `R ∪ S` of a subrack of
//! the class, a pair `a ∈ R`, `b ∈ S` with `sq(a, b) ≠ b`, and the conjugator that
//! moved the given element into the recipe's normal form (`normalizer ▷ σ = a`).
//! Normalizers used inside a juxtaposition block lie in `W(B_n)`; membership in the
//! actual class is always re-checked on the finished witness.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::{Mutex, OnceLock};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::conj_classes::{
    class_representatives, enumerate_class, enumerate_class_with_budget, juxtapose, split, splits_in_d,
};
use crate::error::{Error, Result};
use crate::rack_core::{search_type_d_in_class, TypeDWitness};
use crate::signed_weyl::{Group, GroupKind, SignedCycleType, SignedPermutation};

pub const DEFAULT_SEARCH_BUDGET: u64 = 2_000_000;
pub const DEFAULT_CLASS_CAP: usize = 400_000;

/// Membership in one conjugacy class. Non-split classes are recognised by signed
/// cycle type; a split `W(D_n)` class is enumerated.
pub struct ClassMembership {
    group: Group,
    signature: SignedCycleType,
    split_class: Option<HashSet<SignedPermutation>>,
}

impl ClassMembership {
    pub fn new(group: Group, rep: &SignedPermutation) -> Result<Self> {
        group.check(rep)?;
        let split_class = if group.kind == GroupKind::D && splits_in_d(rep) {
            Some(enumerate_class(group, *rep)?.elements().iter().copied().collect())
        } else {
            None
        };
        Ok(ClassMembership { group, signature: rep.signed_cycle_type(), split_class })
    }

    pub fn contains(&self, x: &SignedPermutation) -> bool {
        if !self.group.contains(x) {
            return false;
        }
        match &self.split_class {
            Some(set) => set.contains(x),
            None => match self.group.kind {
                GroupKind::S => x.cycle_type() == self.signature.positive,
                _ => x.signed_cycle_type() == self.signature,
            },
        }
    }
}

fn perm(images: &[usize]) -> SignedPermutation {
    SignedPermutation::new(0, images).expect("valid permutation")
}

fn transposition(n: usize, i: usize, j: usize) -> SignedPermutation {
    let mut images: Vec<usize> = (0..n).collect();
    images.swap(i, j);
    perm(&images)
}

fn nontrivial_cycles(x: &SignedPermutation) -> Vec<Vec<usize>> {
    x.cycles().into_iter().filter(|c| c.len() > 1).collect()
}

fn fixed_points(x: &SignedPermutation) -> Vec<usize> {
    (0..x.rank()).filter(|&i| x.image(i) == i).collect()
}

/// A permutation `ω` with `ω ▷ π(from) = π(to)` (sign parts ignored): cycles are
/// matched by length in order, `pinned` points (fixed by both) are kept, other fixed
/// points are matched in order.
pub fn aligning_conjugator(
    from: &SignedPermutation,
    to: &SignedPermutation,
    pinned: &[usize],
) -> Option<SignedPermutation> {
    let n = from.rank();
    if to.rank() != n || from.cycle_type() != to.cycle_type() {
        return None;
    }
    if pinned.iter().any(|&p| from.image(p) != p || to.image(p) != p) {
        return None;
    }
    let mut images = vec![usize::MAX; n];
    for &p in pinned {
        images[p] = p;
    }
    let mut targets: HashMap<usize, VecDeque<Vec<usize>>> = HashMap::new();
    for c in to.cycles() {
        if c.len() == 1 && pinned.contains(&c[0]) {
            continue;
        }
        targets.entry(c.len()).or_default().push_back(c);
    }
    for c in from.cycles() {
        if c.len() == 1 && pinned.contains(&c[0]) {
            continue;
        }
        let t = targets.get_mut(&c.len())?.pop_front()?;
        for (x, y) in c.iter().zip(&t) {
            images[*x] = *y;
        }
    }
    Some(perm(&images))
}

/// A sign flip `d` (as the element `(d, id)`) with `(d, id) ▷ σ = (target, π)`.
/// Exists when `target` has the same parity as `σ`'s signs on every cycle; in
/// `W(D_n)` the flip must be even, which is arranged by adding a full odd cycle.
pub fn sign_normalizer(group: Group, x: &SignedPermutation, target: u64) -> Option<SignedPermutation> {
    let e = x.bits() ^ target;
    let cycles = x.cycles();
    let mut d = 0u64;
    for c in &cycles {
        if c.iter().fold(0, |s, &i| s ^ (e >> i & 1)) != 0 {
            return None;
        }
        let mut prev = 0u64;
        for &j in &c[1..] {
            let v = (e >> j & 1) ^ prev;
            d |= v << j;
            prev = v;
        }
    }
    if group.kind == GroupKind::D && d.count_ones() % 2 == 1 {
        let odd = cycles.iter().find(|c| c.len() % 2 == 1)?;
        for &i in odd {
            d ^= 1 << i;
        }
    }
    if group.kind == GroupKind::S && d != 0 {
        return None;
    }
    Some(SignedPermutation::identity(x.rank()).with_bits(d))
}

/// All elements `(c, π)` of the class over a fixed permutation part.
fn fiber(member: &ClassMembership, p: &SignedPermutation) -> Vec<SignedPermutation> {
    (0..1u64 << p.rank()).map(|c| p.with_bits(c)).filter(|x| member.contains(x)).collect()
}

/// Witness produced by one recipe.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaWitness {
    pub witness: TypeDWitness,
    pub normalizer: SignedPermutation,
    pub tag: String,
    pub detail: Option<String>,
}

fn finish(
    member: &ClassMembership,
    witness: TypeDWitness,
    normalizer: SignedPermutation,
    tag: &str,
    detail: Option<String>,
) -> Result<LemmaWitness> {
    witness
        .validate_with(|x| member.contains(x))
        .map_err(|v| Error::InvalidWitness(format!("{tag}: {v}")))?;
    Ok(LemmaWitness { witness, normalizer, tag: tag.to_string(), detail })
}

fn cycle_on(n: usize, points: &[usize]) -> Vec<usize> {
    let mut images: Vec<usize> = (0..n).collect();
    for k in 0..points.len() {
        images[points[k]] = points[(k + 1) % points.len()];
    }
    images
}

/// `τ` a single cycle of odd length `p ≥ 5`, other points fixed. After normalising,
/// `R`/`S` are the class elements over `τ`/`τ²`; the signs on the cycle become all
/// ones (negative cycle) or zero (positive cycle) and the second point is
/// `(1,0,…,0)` resp. `(1,0,0,1,0)` (`p = 5`) or `(1,1,0,…,0)` (`p > 5`), tail kept.
pub fn witness_odd_cycle(group: Group, sigma: &SignedPermutation) -> Result<LemmaWitness> {
    let cycles = nontrivial_cycles(sigma);
    let p = match cycles.as_slice() {
        [c] if c.len() >= 5 && c.len() % 2 == 1 => c.len(),
        _ => {
            return Err(Error::Precondition(format!(
                "{sigma} is not a single odd cycle of length at least 5"
            )))
        }
    };
    let n = sigma.rank();
    let member = ClassMembership::new(group, sigma)?;
    let tau0 = perm(&cycle_on(n, &(0..p).collect::<Vec<_>>()));
    let omega = aligning_conjugator(sigma, &tau0, &[]).expect("same cycle type");
    let s1 = omega.conj(sigma);
    let cyc_mask = (1u64 << p) - 1;
    let negative = (s1.bits() & cyc_mask).count_ones() % 2 == 1;
    let tail = s1.bits() & !cyc_mask;
    let target = if negative { cyc_mask | tail } else { tail };
    let d = sign_normalizer(group, &s1, target)
        .ok_or_else(|| Error::Precondition(format!("no sign normalizer for {s1} in {group}")))?;
    let a = d.conj(&s1);
    let tau2 = tau0.mul(&tau0);
    let head = if negative {
        0b1
    } else if p == 5 {
        0b01001
    } else {
        0b11
    };
    let b = tau2.with_bits(head | tail);
    let w = TypeDWitness { r: fiber(&member, &tau0), s: fiber(&member, &tau2), a, b };
    let detail = format!("{} {p}-cycle", if negative { "negative" } else { "positive" });
    finish(&member, w, d.mul(&omega), "odd_cycle", Some(detail))
}

/// `σ` of type `(3²)` in rank 6: normal form `τ = (1 2 3)(4 5 6)`, `μ = (1 3 2)(4 5 6)`,
/// with the pair chosen from the four sign cases.
pub fn witness_33(group: Group, sigma: &SignedPermutation) -> Result<LemmaWitness> {
    if sigma.rank() != 6 || sigma.cycle_type() != [3, 3] {
        return Err(Error::Precondition(format!("{sigma} is not of type (3²) in rank 6")));
    }
    let member = ClassMembership::new(group, sigma)?;
    let tau0 = perm(&[1, 2, 0, 4, 5, 3]);
    let mu0 = perm(&[2, 0, 1, 4, 5, 3]);
    let omega = aligning_conjugator(sigma, &tau0, &[]).expect("same cycle type");
    let s1 = omega.conj(sigma);
    let neg1 = (s1.bits() & 0b000111).count_ones() % 2 == 1;
    let neg2 = (s1.bits() & 0b111000).count_ones() % 2 == 1;
    // bit k is position k+1
    let (case, a_bits, b_bits) = match (neg1, neg2) {
        (true, true) => ("i", 0b111111, 0b001001),
        (false, false) => ("ii", 0b000000, 0b011000),
        (true, false) => ("iii", 0b000001, 0b011001),
        (false, true) => ("iv", 0b001000, 0b010000),
    };
    let d = sign_normalizer(group, &s1, a_bits)
        .ok_or_else(|| Error::Precondition(format!("no sign normalizer for {s1} in {group}")))?;
    let a = d.conj(&s1);
    let w = TypeDWitness { r: fiber(&member, &tau0), s: fiber(&member, &mu0), a, b: mu0.with_bits(b_bits) };
    finish(&member, w, d.mul(&omega), "type_33", Some(format!("case {case}")))
}

/// `σ` of type `(2², 3)` in rank 7: normal form `τ = (5 6 7)(1 2)(3 4)`,
/// `μ = (5 6 7)(1 3)(2 4)`; signs on the 3-cycle become `000` or `111` and the second
/// point carries `(s₁, s₂, 0, 0, 1, 1, 0)` resp. `(s₁, s₂, 0, 0, 1, 0, 0)` with
/// `s₁ = a₁ + a₂`, `s₂ = a₃ + a₄`.
pub fn witness_223(group: Group, sigma: &SignedPermutation) -> Result<LemmaWitness> {
    if sigma.rank() != 7 || sigma.cycle_type() != [3, 2, 2] {
        return Err(Error::Precondition(format!("{sigma} is not of type (2², 3) in rank 7")));
    }
    let member = ClassMembership::new(group, sigma)?;
    let tau0 = perm(&[1, 0, 3, 2, 5, 6, 4]);
    let mu0 = perm(&[2, 3, 0, 1, 5, 6, 4]);
    let omega = aligning_conjugator(sigma, &tau0, &[]).expect("same cycle type");
    let s1 = omega.conj(sigma);
    let low = s1.bits() & 0b1111;
    let negative = (s1.bits() >> 4).count_ones() % 2 == 1;
    let target = low | if negative { 0b111 << 4 } else { 0 };
    let d = sign_normalizer(group, &s1, target)
        .ok_or_else(|| Error::Precondition(format!("no sign normalizer for {s1} in {group}")))?;
    let a = d.conj(&s1);
    let s_1 = (low ^ low >> 1) & 1;
    let s_2 = (low >> 2 ^ low >> 3) & 1;
    let tail = if negative { 0b001 } else { 0b011 };
    let b = mu0.with_bits(s_1 | s_2 << 1 | tail << 4);
    let w = TypeDWitness { r: fiber(&member, &tau0), s: fiber(&member, &mu0), a, b };
    let detail = format!("3-cycle signs {}", if negative { "111" } else { "000" });
    finish(&member, w, d.mul(&omega), "type_223", Some(detail))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FixedPointCase {
    /// Type `(1^{n−2}, 2)`, `n > 4`.
    Transposition,
    /// Type `(1^{n−3}, 3)`, `n > 5`.
    ThreeCycle,
    /// Any type, with a conjugate `μ` found by search.
    General,
}

/// Core recipe: `τ, μ` conjugate in `S_n` with `sq(τ, μ) ≠ μ`, both fixing `i` and
/// `f`, and `a_i ≠ a_f`. `R`/`S` collect the class elements `dξ` with `ξ(f) = f` and
/// `d_f = a_f` resp. `d_f ≠ a_f`; the pair is `(σ, (i f)ξ ▷ σ)` where `ξ` fixes `i`,
/// `f` and carries `τ` to `μ`.
pub fn witness_fixed_points_with(
    group: Group,
    sigma: &SignedPermutation,
    mu: &SignedPermutation,
    i: usize,
    f: usize,
) -> Result<LemmaWitness> {
    let n = sigma.rank();
    let tau = sigma.perm_part();
    let mu = mu.perm_part();
    if i == f || sigma.bit(i) == sigma.bit(f) {
        return Err(Error::Precondition(format!("signs at {} and {} must differ", i + 1, f + 1)));
    }
    if tau.conj(&mu.conj(&tau.conj(&mu))) == mu {
        return Err(Error::Precondition(format!("sq({tau}, {mu}) = {mu}")));
    }
    let xi = aligning_conjugator(&tau, &mu, &[i, f]).ok_or_else(|| {
        Error::Precondition(format!("no conjugator fixing {} and {} carries {tau} to {mu}", i + 1, f + 1))
    })?;
    let member = ClassMembership::new(group, sigma)?;
    let z = transposition(n, i, f).mul(&xi);
    let b = z.conj(sigma);
    debug_assert_eq!(b.perm_part(), mu);
    let sym = enumerate_class(Group::s(n), tau)?;
    let af = sigma.bit(f);
    let (mut r, mut s) = (Vec::new(), Vec::new());
    for p in sym.elements().iter().filter(|p| p.image(f) == f) {
        for x in fiber(&member, p) {
            if x.bit(f) == af {
                r.push(x);
            } else {
                s.push(x);
            }
        }
    }
    let w = TypeDWitness { r, s, a: *sigma, b };
    let detail = format!("pivot {} with {}, μ = {}", f + 1, i + 1, mu.cycle_string());
    finish(&member, w, SignedPermutation::identity(n), "fixed_point_general", Some(detail))
}

/// Picks the pivot `f` (last fixed point) and the first fixed point `i` with
/// `a_i ≠ a_f`.
fn pivots(sigma: &SignedPermutation) -> Option<(Vec<usize>, usize)> {
    let fixed = fixed_points(sigma);
    let f = *fixed.last()?;
    let others: Vec<usize> = fixed.iter().copied().filter(|&i| sigma.bit(i) != sigma.bit(f)).collect();
    if others.is_empty() {
        None
    } else {
        Some((others, f))
    }
}

pub fn witness_fixed_points(group: Group, sigma: &SignedPermutation, case: FixedPointCase) -> Result<LemmaWitness> {
    let n = sigma.rank();
    let (candidates, f) = pivots(sigma).ok_or_else(|| {
        Error::Precondition(format!("{sigma} is constant on its fixed points"))
    })?;
    let i = candidates[0];
    let spare = |avoid: &[usize]| fixed_points(sigma).into_iter().find(|p| !avoid.contains(p));
    let (tag, mu) = match case {
        FixedPointCase::Transposition => {
            if n <= 4 || sigma.cycle_type()[0] != 2 || nontrivial_cycles(sigma).len() != 1 {
                return Err(Error::Precondition(format!("{sigma} is not of type (1^(n-2), 2) with n > 4")));
            }
            let c = &nontrivial_cycles(sigma)[0];
            let r = spare(&[i, f]).ok_or_else(|| Error::Precondition("not enough fixed points".into()))?;
            ("fixed_point_transposition", perm(&cycle_on(n, &[c[1], r])))
        }
        FixedPointCase::ThreeCycle => {
            if n <= 5 || sigma.cycle_type()[0] != 3 || nontrivial_cycles(sigma).len() != 1 {
                return Err(Error::Precondition(format!("{sigma} is not of type (1^(n-3), 3) with n > 5")));
            }
            let c = &nontrivial_cycles(sigma)[0];
            let s = spare(&[i, f]).ok_or_else(|| Error::Precondition("not enough fixed points".into()))?;
            ("fixed_point_three_cycle", perm(&cycle_on(n, &[c[1], s, c[2]])))
        }
        FixedPointCase::General => {
            let sym = enumerate_class(Group::s(n), sigma.perm_part())?;
            let tau = sigma.perm_part();
            for &i in &candidates {
                for mu in sym.elements() {
                    if mu.image(i) == i
                        && mu.image(f) == f
                        && tau.conj(&mu.conj(&tau.conj(mu))) != *mu
                    {
                        return witness_fixed_points_with(group, sigma, mu, i, f);
                    }
                }
            }
            return Err(Error::NoMatchingCase(format!(
                "no conjugate of {tau} fixes the pivots with sq(τ, μ) ≠ μ"
            )));
        }
    };
    let mut w = witness_fixed_points_with(group, sigma, &mu, i, f)?;
    w.tag = tag.to_string();
    Ok(w)
}

/// `⟨S_n·a⟩ ⊆ Z_2^n`, by closing the orbit under adjacent transpositions and
/// taking the span.
pub fn sym_orbit_span(a: u64, n: usize) -> Vec<u64> {
    let swaps: Vec<SignedPermutation> = (0..n.saturating_sub(1)).map(|i| transposition(n, i, i + 1)).collect();
    let mut orbit = HashSet::from([a]);
    let mut queue = VecDeque::from([a]);
    while let Some(v) = queue.pop_front() {
        for t in &swaps {
            let w = t.act_on_bits(v);
            if orbit.insert(w) {
                queue.push_back(w);
            }
        }
    }
    let mut basis: Vec<u64> = Vec::new();
    for mut v in orbit {
        for b in &basis {
            v = v.min(v ^ b);
        }
        if v != 0 {
            basis.push(v);
            basis.sort_unstable_by(|x, y| y.cmp(x));
        }
    }
    let mut span = vec![0u64];
    for b in basis {
        let more: Vec<u64> = span.iter().map(|v| v ^ b).collect();
        span.extend(more);
    }
    span.sort_unstable();
    span
}

/// Lifts a type-D witness of `O_τ^{S_n}` to `O_σ`, `σ = (a, τ)`:
/// `R = (⟨S_n·a⟩, S) ∩ O`, `S' = (⟨S_n·a⟩, T) ∩ O`, pair `(h▷σ, g▷σ)` with
/// `h▷τ = s`, `g▷τ = t`.
pub fn lift_from_sym(group: Group, sigma: &SignedPermutation, sym: &TypeDWitness) -> Result<LemmaWitness> {
    let n = sigma.rank();
    let tau = sigma.perm_part();
    let tau_type = tau.cycle_type();
    sym.validate_with(|x| x.rank() == n && x.bits() == 0 && x.cycle_type() == tau_type)
        .map_err(|v| Error::InvalidWitness(format!("symmetric-group witness: {v}")))?;
    let member = ClassMembership::new(group, sigma)?;
    let h = aligning_conjugator(&tau, &sym.a, &[]).expect("validated class");
    let g = aligning_conjugator(&tau, &sym.b, &[]).expect("validated class");
    let span = sym_orbit_span(sigma.bits(), n);
    let lift = |part: &[SignedPermutation]| -> Vec<SignedPermutation> {
        part.iter()
            .flat_map(|p| span.iter().map(move |&c| p.with_bits(c)))
            .filter(|x| member.contains(x))
            .collect()
    };
    let w = TypeDWitness { r: lift(&sym.r), s: lift(&sym.s), a: h.conj(sigma), b: g.conj(sigma) };
    let detail = format!("span of size {}", span.len());
    finish(&member, w, h, "sym_lifting", Some(detail))
}

type SymKey = (Vec<usize>, u64);

fn sym_cache() -> &'static Mutex<HashMap<SymKey, Option<TypeDWitness>>> {
    static CACHE: OnceLock<Mutex<HashMap<SymKey, Option<TypeDWitness>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Brute-force type-D witness for the `S_n`-class of the given cycle type, memoised.
pub fn sym_witness(cycle_type: &[usize], budget: u64) -> Result<Option<TypeDWitness>> {
    let key = (cycle_type.to_vec(), budget);
    if let Some(w) = sym_cache().lock().expect("cache lock").get(&key) {
        return Ok(w.clone());
    }
    let rep = SignedCycleType { positive: cycle_type.to_vec(), negative: vec![] }.representative();
    let class = enumerate_class(Group::s(rep.rank()), rep)?;
    let (w, _) = search_type_d_in_class(&class, budget);
    sym_cache().lock().expect("cache lock").insert(key, w.clone());
    Ok(w)
}

/// `R#y ∪ S#y` with pair `(a#y, b#y)`.
pub fn propagate_juxtaposition(w: &TypeDWitness, y: Option<&SignedPermutation>) -> Result<TypeDWitness> {
    let Some(y) = y else {
        return Ok(w.clone());
    };
    let map = |v: &[SignedPermutation]| v.iter().map(|x| juxtapose(x, y)).collect::<Result<Vec<_>>>();
    Ok(TypeDWitness { r: map(&w.r)?, s: map(&w.s)?, a: juxtapose(&w.a, y)?, b: juxtapose(&w.b, y)? })
}

/// Moves the points of `block` (in the listed order) to `1..k` and the remaining
/// points, in increasing order, after them. Returns `ω` with `ω ▷ σ = x # y`.
pub fn block_split(
    sigma: &SignedPermutation,
    block: &[usize],
) -> (SignedPermutation, SignedPermutation, Option<SignedPermutation>) {
    let n = sigma.rank();
    let mut images = vec![0; n];
    let mut next = 0;
    for &p in block {
        images[p] = next;
        next += 1;
    }
    for p in (0..n).filter(|p| !block.contains(p)) {
        images[p] = next;
        next += 1;
    }
    let omega = perm(&images);
    let z = omega.conj(sigma);
    match split(&z, block.len()) {
        Some((x, y)) => (omega, x, Some(y)),
        None => (omega, z, None),
    }
}

/// Runs `recipe` on the juxtaposition block formed by `cycles` (in `W(B_k)`) and
/// propagates to the whole class.
fn via_block<F>(group: Group, sigma: &SignedPermutation, cycles: &[&Vec<usize>], recipe: F) -> Result<LemmaWitness>
where
    F: Fn(Group, &SignedPermutation) -> Result<LemmaWitness>,
{
    let block: Vec<usize> = cycles.iter().flat_map(|c| c.iter().copied()).collect();
    let (omega, x, y) = block_split(sigma, &block);
    let Some(y) = y else {
        return recipe(group, sigma);
    };
    let inner = recipe(Group::b(x.rank()), &x)?;
    let witness = propagate_juxtaposition(&inner.witness, Some(&y))?;
    let normalizer = juxtapose(&inner.normalizer, &SignedPermutation::identity(y.rank()))?.mul(&omega);
    debug_assert_eq!(normalizer.conj(sigma), witness.a);
    let member = ClassMembership::new(group, sigma)?;
    let block_cycles: Vec<String> = cycles
        .iter()
        .map(|c| format!("({})", c.iter().map(|p| (p + 1).to_string()).collect::<Vec<_>>().join(" ")))
        .collect();
    let detail = match inner.detail {
        Some(d) => format!("block {}; {d}", block_cycles.join("")),
        None => format!("block {}", block_cycles.join("")),
    };
    finish(&member, witness, normalizer, &format!("{}+juxtaposition", inner.tag), Some(detail))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ExceptionCase {
    /// `(2, 3)`, `(2³)`.
    #[serde(rename = "i")]
    I,
    /// `(2⁴)`, `(1, 2²)`, `(1², 3)`, `(1², 2²)`.
    #[serde(rename = "ii")]
    Ii,
    /// `(1^{n−2}, 2)` or `(1^{n−3}, 3)` (`n > 5`) with constant signs on the fixed
    /// points.
    #[serde(rename = "iii")]
    Iii,
}

impl fmt::Display for ExceptionCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ExceptionCase::I => "i",
            ExceptionCase::Ii => "ii",
            ExceptionCase::Iii => "iii",
        })
    }
}

/// Which item (i)–(iii) of the exception list the element's type falls under.
pub fn exception_case(sigma: &SignedPermutation) -> Option<ExceptionCase> {
    let n = sigma.rank();
    let t = sigma.cycle_type();
    match t.as_slice() {
        [3, 2] | [2, 2, 2] => return Some(ExceptionCase::I),
        [2, 2, 2, 2] | [2, 2, 1] | [3, 1, 1] | [2, 2, 1, 1] => return Some(ExceptionCase::Ii),
        _ => {}
    }
    let constant = || {
        let fixed = fixed_points(sigma);
        fixed.iter().all(|&i| sigma.bit(i) == sigma.bit(fixed[0]))
    };
    let ones = t.iter().filter(|&&l| l == 1).count();
    let single = |len: usize| t[0] == len && ones == n - len;
    if ((single(2) && n > 4) || (single(3) && n > 5)) && constant() {
        return Some(ExceptionCase::Iii);
    }
    None
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VerdictStatus {
    ProvenTypeD,
    InExceptionList,
    Undetermined,
}

impl fmt::Display for VerdictStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VerdictStatus::ProvenTypeD => "proven_type_d",
            VerdictStatus::InExceptionList => "in_exception_list",
            VerdictStatus::Undetermined => "undetermined",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeDVerdict {
    pub group: Group,
    pub rep: SignedPermutation,
    pub status: VerdictStatus,
    pub lemma_tag: Option<String>,
    pub exception_case: Option<ExceptionCase>,
    pub witness: Option<TypeDWitness>,
    pub normalizer: Option<SignedPermutation>,
    pub detail: Option<String>,
}

impl TypeDVerdict {
    fn proven(group: Group, rep: SignedPermutation, w: LemmaWitness) -> Self {
        TypeDVerdict {
            group,
            rep,
            status: VerdictStatus::ProvenTypeD,
            lemma_tag: Some(w.tag),
            exception_case: None,
            witness: Some(w.witness),
            normalizer: Some(w.normalizer),
            detail: w.detail,
        }
    }

    fn other(group: Group, rep: SignedPermutation, status: VerdictStatus, detail: String) -> Self {
        TypeDVerdict {
            group,
            rep,
            status,
            lemma_tag: None,
            exception_case: None,
            witness: None,
            normalizer: None,
            detail: Some(detail),
        }
    }

    /// Re-checks a `ProvenTypeD` verdict from its witness alone.
    pub fn revalidate(&self) -> Result<()> {
        match (&self.status, &self.witness) {
            (VerdictStatus::ProvenTypeD, Some(w)) => {
                let member = ClassMembership::new(self.group, &self.rep)?;
                w.validate_with(|x| member.contains(x)).map_err(|v| Error::InvalidWitness(v.to_string()))
            }
            (VerdictStatus::ProvenTypeD, None) => Err(Error::InvalidWitness("missing witness".into())),
            _ => Ok(()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClassifyOptions {
    /// Candidate pairs examined by each pair search.
    pub budget: u64,
    /// Largest class enumerated by the brute-force fallback.
    pub class_cap: usize,
    pub brute_force: bool,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions { budget: DEFAULT_SEARCH_BUDGET, class_cap: DEFAULT_CLASS_CAP, brute_force: true }
    }
}

fn sub_multisets(cycles: &[Vec<usize>]) -> Vec<Vec<usize>> {
    // indices of proper nonempty sub-multisets, one per distinct multiset of lengths
    let k = cycles.len();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for mask in 1u32..(1u32 << k) - 1 {
        let idx: Vec<usize> = (0..k).filter(|i| mask >> i & 1 == 1).collect();
        let mut lens: Vec<usize> = idx.iter().map(|&i| cycles[i].len()).collect();
        lens.sort_unstable();
        if seen.insert(lens) {
            out.push(idx);
        }
    }
    out.sort_by_key(|idx| (std::cmp::Reverse(idx.iter().map(|&i| cycles[i].len()).sum::<usize>()), idx.clone()));
    out
}

/// Decision procedure: per-block recipes first (odd cycles, `(3²)`, `(2², 3)`), then
/// the fixed-point recipes, lifting from `S_n`, lifting on juxtaposition blocks, the
/// exception list, and finally a pair search on the class itself.
pub fn classify(group: Group, sigma: &SignedPermutation, opts: &ClassifyOptions) -> TypeDVerdict {
    let n = sigma.rank();
    if let Err(e) = group.check(sigma) {
        return TypeDVerdict::other(group, *sigma, VerdictStatus::Undetermined, e.to_string());
    }
    if group.kind == GroupKind::S || n <= 4 || sigma.perm_is_identity() {
        return TypeDVerdict::other(group, *sigma, VerdictStatus::Undetermined, "outside theorem hypotheses".into());
    }
    let cycles = nontrivial_cycles(sigma);
    let mut attempts: Vec<Box<dyn Fn() -> Result<LemmaWitness> + '_>> = Vec::new();

    let single = cycles.len() == 1;
    if let Some(c) = cycles.iter().find(|c| c.len() >= 5 && c.len() % 2 == 1) {
        attempts.push(Box::new(move || {
            if single {
                witness_odd_cycle(group, sigma)
            } else {
                via_block(group, sigma, &[c], witness_odd_cycle)
            }
        }));
    }
    let threes: Vec<&Vec<usize>> = cycles.iter().filter(|c| c.len() == 3).collect();
    let twos: Vec<&Vec<usize>> = cycles.iter().filter(|c| c.len() == 2).collect();
    if threes.len() >= 2 {
        let block = vec![threes[0], threes[1]];
        attempts.push(Box::new(move || via_block(group, sigma, &block, witness_33)));
    }
    if !threes.is_empty() && twos.len() >= 2 {
        let block = vec![twos[0], twos[1], threes[0]];
        attempts.push(Box::new(move || via_block(group, sigma, &block, witness_223)));
    }
    if pivots(sigma).is_some() {
        let t = sigma.cycle_type();
        if cycles.len() == 1 && t[0] == 2 && n > 4 {
            attempts.push(Box::new(move || witness_fixed_points(group, sigma, FixedPointCase::Transposition)));
        }
        if cycles.len() == 1 && t[0] == 3 && n > 5 {
            attempts.push(Box::new(move || witness_fixed_points(group, sigma, FixedPointCase::ThreeCycle)));
        }
        attempts.push(Box::new(move || witness_fixed_points(group, sigma, FixedPointCase::General)));
    }
    attempts.push(Box::new(move || {
        let sym = sym_witness(&sigma.cycle_type(), opts.budget)?
            .ok_or_else(|| Error::NoMatchingCase("symmetric-group class not shown to be of type D".into()))?;
        lift_from_sym(group, sigma, &sym)
    }));
    let all_cycles = sigma.cycles();
    for idx in sub_multisets(&all_cycles) {
        let block: Vec<Vec<usize>> = idx.iter().map(|&i| all_cycles[i].clone()).collect();
        if block.iter().all(|c| c.len() == 1) {
            continue;
        }
        attempts.push(Box::new(move || {
            let refs: Vec<&Vec<usize>> = block.iter().collect();
            via_block(group, sigma, &refs, |g, x| {
                let sym = sym_witness(&x.cycle_type(), opts.budget)?
                    .ok_or_else(|| Error::NoMatchingCase("block class not of type D".into()))?;
                let mut w = lift_from_sym(g, x, &sym)?;
                w.tag = "block_sym_lifting".into();
                Ok(w)
            })
        }));
    }

    for attempt in &attempts {
        if let Ok(w) = attempt() {
            return TypeDVerdict::proven(group, *sigma, w);
        }
    }

    if let Some(case) = exception_case(sigma) {
        let mut v = TypeDVerdict::other(group, *sigma, VerdictStatus::InExceptionList, format!("type {:?}", sigma.cycle_type()));
        v.exception_case = Some(case);
        return v;
    }
    if !opts.brute_force {
        return TypeDVerdict::other(group, *sigma, VerdictStatus::Undetermined, "no recipe applies".into());
    }
    match brute_force_in_class(group, sigma, opts) {
        Ok(Some(w)) => TypeDVerdict::proven(group, *sigma, w),
        Ok(None) => TypeDVerdict::other(
            group,
            *sigma,
            VerdictStatus::Undetermined,
            format!("pair search exhausted within budget {}", opts.budget),
        ),
        Err(e) => TypeDVerdict::other(group, *sigma, VerdictStatus::Undetermined, e.to_string()),
    }
}

/// Pair search on the class itself.
pub fn brute_force_in_class(
    group: Group,
    sigma: &SignedPermutation,
    opts: &ClassifyOptions,
) -> Result<Option<LemmaWitness>> {
    let class = enumerate_class_with_budget(group, *sigma, opts.class_cap)?;
    let (w, examined) = search_type_d_in_class(&class, opts.budget);
    let Some(w) = w else {
        return Ok(None);
    };
    let member = ClassMembership::new(group, sigma)?;
    let normalizer = class.section()[class.index_of(&w.a).expect("member")];
    finish(&member, w, normalizer, "brute_force", Some(format!("{examined} pairs examined"))).map(Some)
}

/// Classifies every class of the group in parallel; the output follows
/// [`class_representatives`].
pub fn classify_all(group: Group, opts: &ClassifyOptions) -> Vec<TypeDVerdict> {
    class_representatives(group).par_iter().map(|rep| classify(group, rep, opts)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rack_core::sq;

    fn sp(s: &str) -> SignedPermutation {
        s.parse().unwrap()
    }

    fn valid(group: Group, sigma: &SignedPermutation, w: &LemmaWitness) {
        let member = ClassMembership::new(group, sigma).unwrap();
        w.witness.validate_with(|x| member.contains(x)).unwrap();
        assert_eq!(w.normalizer.conj(sigma), w.witness.a, "normalizer must carry σ to a");
    }

    #[test]
    fn membership_matches_enumeration() {
        for g in [Group::b(4), Group::d(4), Group::d(6)] {
            for rep in class_representatives(g) {
                let m = ClassMembership::new(g, &rep).unwrap();
                let class = enumerate_class(g, rep).unwrap();
                if g.n <= 4 {
                    for x in g.elements() {
                        assert_eq!(m.contains(&x), class.contains(&x), "{g} {rep} {x}");
                    }
                } else {
                    assert!(class.elements().iter().all(|x| m.contains(x)));
                }
            }
        }
    }

    #[test]
    fn aligning_conjugator_carries_and_pins() {
        let a = sp("000000:(1 2 3)(4 5)");
        let b = sp("000000:(2 6 4)(1 3)");
        let w = aligning_conjugator(&a, &b, &[]).unwrap();
        assert_eq!(w.conj(&a), b);
        let t = sp("00000:(1 2)");
        let m = sp("00000:(2 3)");
        let xi = aligning_conjugator(&t, &m, &[3, 4]).unwrap();
        assert_eq!(xi.conj(&t), m);
        assert_eq!((xi.image(3), xi.image(4)), (3, 4));
        assert!(aligning_conjugator(&t, &sp("00000:(3 4)"), &[3]).is_none());
    }

    #[test]
    fn sign_normalizer_reaches_targets() {
        let x = sp("10110:(1 2 3)(4 5)");
        let d = sign_normalizer(Group::b(5), &x, 0b01000).unwrap();
        assert_eq!(d.conj(&x).bits(), 0b01000);
        assert!(sign_normalizer(Group::b(5), &x, 0).is_none());
        let y = sp("110000:(1 2 3)");
        let d = sign_normalizer(Group::d(6), &y, 0b000101).unwrap();
        assert_eq!(d.conj(&y).bits(), 0b000101);
        assert!(d.is_even_signed());
    }

    #[test]
    fn odd_cycle_pairs() {
        // negative 5-cycle: a all ones on the cycle, b = (1,0,0,0,0)
        let w = witness_odd_cycle(Group::b(5), &sp("10000:(1 2 3 4 5)")).unwrap();
        assert_eq!(w.witness.a, sp("11111:(1 2 3 4 5)"));
        assert_eq!(w.witness.b, sp("10000:(1 3 5 2 4)"));
        valid(Group::b(5), &sp("10000:(1 2 3 4 5)"), &w);
        // positive 5-cycle: a = 0, b = (1,0,0,1,0)
        let w = witness_odd_cycle(Group::b(5), &sp("11000:(1 3 2 4 5)")).unwrap();
        assert_eq!(w.witness.a.bits(), 0);
        assert_eq!(w.witness.b.bits(), 0b01001);
        // positive 7-cycle: b = (1,1,0,…)
        let w = witness_odd_cycle(Group::b(7), &sp("0000000:(1 2 3 4 5 6 7)")).unwrap();
        assert_eq!(w.witness.b.bits(), 0b11);
        assert!(witness_odd_cycle(Group::b(5), &sp("00000:(1 2 3)")).is_err());
    }

    #[test]
    fn odd_cycle_with_fixed_tail_in_both_groups() {
        for bits in 0..1u64 << 7 {
            let s = sp("0000000:(1 2 3 4 5)").with_bits(bits);
            let w = witness_odd_cycle(Group::b(7), &s).unwrap();
            valid(Group::b(7), &s, &w);
            if s.is_even_signed() {
                let w = witness_odd_cycle(Group::d(7), &s).unwrap();
                valid(Group::d(7), &s, &w);
            }
        }
    }

    #[test]
    fn type_33_all_signs() {
        for bits in 0..1u64 << 6 {
            let s = sp("000000:(1 2 3)(4 5 6)").with_bits(bits);
            let w = witness_33(Group::b(6), &s).unwrap();
            valid(Group::b(6), &s, &w);
        }
        let w = witness_33(Group::b(6), &sp("000000:(1 4 2)(3 6 5)")).unwrap();
        assert_eq!(w.detail.as_deref(), Some("case ii"));
    }

    #[test]
    fn type_33_pairs_break_square_commutativity() {
        let tau = sp("000000:(1 2 3)(4 5 6)");
        let mu = sp("000000:(1 3 2)(4 5 6)");
        for (a, b) in [(0b111111, 0b001001), (0, 0b011000), (0b000001, 0b011001), (0b001000, 0b010000)] {
            let (x, y) = (tau.with_bits(a), mu.with_bits(b));
            assert_ne!(sq(&x, &y).unwrap(), y);
        }
    }

    #[test]
    fn type_223_all_signs() {
        for bits in 0..1u64 << 7 {
            let s = sp("0000000:(1 2)(3 4)(5 6 7)").with_bits(bits);
            let w = witness_223(Group::b(7), &s).unwrap();
            valid(Group::b(7), &s, &w);
        }
    }

    #[test]
    fn fixed_point_recipes() {
        let s = sp("00100:(1 2)");
        let w = witness_fixed_points(Group::b(5), &s, FixedPointCase::Transposition).unwrap();
        valid(Group::b(5), &s, &w);
        let s = sp("000100:(1 2 3)");
        let w = witness_fixed_points(Group::b(6), &s, FixedPointCase::ThreeCycle).unwrap();
        valid(Group::b(6), &s, &w);
        assert!(witness_fixed_points(Group::b(6), &sp("000111:(1 2 3)"), FixedPointCase::ThreeCycle).is_err());
        assert!(witness_fixed_points(Group::b(5), &sp("11000:(1 2)"), FixedPointCase::Transposition).is_err());
    }

    #[test]
    fn sym_orbit_spans() {
        assert_eq!(sym_orbit_span(0, 5), vec![0]);
        assert_eq!(sym_orbit_span(0b11111, 5), vec![0, 0b11111]);
        assert_eq!(sym_orbit_span(0b00011, 5).len(), 16);
        assert_eq!(sym_orbit_span(0b00111, 5).len(), 32);
    }

    #[test]
    fn lifting_from_symmetric_group() {
        let sym = sym_witness(&[5], DEFAULT_SEARCH_BUDGET).unwrap().expect("5-cycles of S_5");
        for bits in 0..1u64 << 5 {
            let s = sp("00000:(1 2 3 4 5)").with_bits(bits);
            let w = lift_from_sym(Group::b(5), &s, &sym).unwrap();
            valid(Group::b(5), &s, &w);
        }
        let mut bad = sym.clone();
        bad.b = bad.a;
        assert!(lift_from_sym(Group::b(5), &sp("00000:(1 2 3 4 5)"), &bad).is_err());
    }

    #[test]
    fn propagation_through_juxtaposition() {
        let x = sp("00000:(1 2 3 4 5)");
        let w = witness_odd_cycle(Group::b(5), &x).unwrap();
        let y = sp("10:(1 2)");
        let z = juxtapose(&w.witness.a, &y).unwrap();
        let p = propagate_juxtaposition(&w.witness, Some(&y)).unwrap();
        let member = ClassMembership::new(Group::b(7), &z).unwrap();
        p.validate_with(|v| member.contains(v)).unwrap();
        assert_eq!(propagate_juxtaposition(&w.witness, None).unwrap(), w.witness);
    }

    #[test]
    fn exception_list_tags() {
        assert_eq!(exception_case(&sp("00000:(1 2)(3 4 5)")), Some(ExceptionCase::I));
        assert_eq!(exception_case(&sp("000000:(1 2)(3 4)(5 6)")), Some(ExceptionCase::I));
        assert_eq!(exception_case(&sp("00000:(1 2)(3 4)")), Some(ExceptionCase::Ii));
        assert_eq!(exception_case(&sp("00000:(1 2 3)")), Some(ExceptionCase::Ii));
        assert_eq!(exception_case(&sp("000000:(1 2)")), Some(ExceptionCase::Iii));
        assert_eq!(exception_case(&sp("001000:(1 2)")), None);
        assert_eq!(exception_case(&sp("000000:(1 2 3)")), Some(ExceptionCase::Iii));
        assert_eq!(exception_case(&sp("000000:(1 2 3 4)")), None);
    }

    #[test]
    fn classify_examples() {
        let opts = ClassifyOptions::default();
        let v = classify(Group::b(6), &sp("101010:(1 2 3)(4 5 6)"), &opts);
        assert_eq!(v.status, VerdictStatus::ProvenTypeD);
        assert_eq!(v.lemma_tag.as_deref(), Some("type_33"));
        v.revalidate().unwrap();
        let v = classify(Group::b(6), &sp("111100:(5 6)"), &opts);
        assert_eq!(v.status, VerdictStatus::InExceptionList);
        assert_eq!(v.exception_case, Some(ExceptionCase::Iii));
        let v = classify(Group::b(5), &sp("01000:(1 2)(3 4 5)"), &opts);
        assert_eq!(v.exception_case, Some(ExceptionCase::I));
        let v = classify(Group::b(4), &sp("0000:(1 2 3)"), &opts);
        assert_eq!(v.status, VerdictStatus::Undetermined);
        assert_eq!(v.detail.as_deref(), Some("outside theorem hypotheses"));
    }

    #[test]
    fn verdict_json_roundtrip() {
        let v = classify(Group::b(5), &sp("00000:(1 2 3 4 5)"), &ClassifyOptions::default());
        let json = serde_json::to_string(&v).unwrap();
        assert!(json.contains("\"status\":\"proven_type_d\""));
        let back: TypeDVerdict = serde_json::from_str(&json).unwrap();
        back.revalidate().unwrap();
    }
}
