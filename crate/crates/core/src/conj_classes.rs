//! Conjugacy classes, centralizers and juxtaposition.
//!
//! Classes are enumerated breadth-first from the representative over the group's
//! fixed generator list, so the numeration `t_1 = s, t_2, …` and the section
//! `g_i ▷ s = t_i` are deterministic.

use std::collections::{HashMap, HashSet, VecDeque};

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::signed_weyl::{Group, GroupKind, SignedCycleType, SignedPermutation, MAX_RANK};

pub const DEFAULT_CLASS_BUDGET: usize = 1 << 22;

/// An enumerated conjugacy class with numeration `t_i` and section `g_i`.
#[derive(Clone, Debug)]
pub struct ConjugacyClass {
    pub group: Group,
    elements: Vec<SignedPermutation>,
    section: Vec<SignedPermutation>,
    index: HashMap<SignedPermutation, usize>,
}

impl ConjugacyClass {
    /// Builds a class from an explicit numeration and section, checking
    /// `g_i ▷ t_1 == t_i` and distinctness.
    pub fn from_parts(
        group: Group,
        elements: Vec<SignedPermutation>,
        section: Vec<SignedPermutation>,
    ) -> Result<Self> {
        if elements.is_empty() || elements.len() != section.len() {
            return Err(Error::Precondition(
                "numeration and section must be nonempty and of equal length".into(),
            ));
        }
        let rep = elements[0];
        let mut index = HashMap::with_capacity(elements.len());
        for (i, (t, g)) in elements.iter().zip(&section).enumerate() {
            group.check(t)?;
            group.check(g)?;
            if g.conj(&rep) != *t {
                return Err(Error::Precondition(format!("section entry {g} does not carry {rep} to {t}")));
            }
            if index.insert(*t, i).is_some() {
                return Err(Error::Precondition(format!("{t} listed twice")));
            }
        }
        let class = ConjugacyClass { group, elements, section, index };
        for t in &class.elements {
            for x in group.generators() {
                if !class.contains(&x.conj(t)) {
                    return Err(Error::Precondition("numeration is not a full conjugacy class".into()));
                }
            }
        }
        Ok(class)
    }

    pub fn rep(&self) -> SignedPermutation {
        self.elements[0]
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[SignedPermutation] {
        &self.elements
    }

    pub fn section(&self) -> &[SignedPermutation] {
        &self.section
    }

    pub fn element(&self, i: usize) -> SignedPermutation {
        self.elements[i]
    }

    pub fn index_of(&self, x: &SignedPermutation) -> Option<usize> {
        self.index.get(x).copied()
    }

    pub fn contains(&self, x: &SignedPermutation) -> bool {
        self.index.contains_key(x)
    }

    pub fn centralizer_order(&self) -> u128 {
        self.group.order() / self.len() as u128
    }
}

pub fn enumerate_class(group: Group, rep: SignedPermutation) -> Result<ConjugacyClass> {
    enumerate_class_with_budget(group, rep, DEFAULT_CLASS_BUDGET)
}

pub fn enumerate_class_with_budget(
    group: Group,
    rep: SignedPermutation,
    budget: usize,
) -> Result<ConjugacyClass> {
    group.check(&rep)?;
    let gens = group.generators();
    let mut elements = vec![rep];
    let mut section = vec![group.identity()];
    let mut index = HashMap::new();
    index.insert(rep, 0usize);
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        let (t, g) = (elements[i], section[i]);
        for x in &gens {
            let y = x.conj(&t);
            if index.contains_key(&y) {
                continue;
            }
            if elements.len() >= budget {
                return Err(Error::Budget(format!("class of {rep} exceeds {budget} elements")));
            }
            index.insert(y, elements.len());
            queue.push_back(elements.len());
            elements.push(y);
            section.push(x.mul(&g));
        }
    }
    Ok(ConjugacyClass { group, elements, section, index })
}

/// Every conjugacy class of the group, sorted by (signed cycle type, representative).
///
/// `W(B_n)` classes come from signed cycle types. A `W(D_n)` class is found by
/// enumerating the `D`-orbit of each even `B`-representative; when that orbit is
/// smaller than the `B`-class, the class has split and the second half is the orbit
/// of the representative conjugated by an odd sign flip.
pub fn all_classes(group: Group) -> Result<Vec<ConjugacyClass>> {
    let n = group.n;
    let mut out = Vec::new();
    match group.kind {
        GroupKind::B => {
            for t in SignedCycleType::all(n) {
                out.push(enumerate_class(group, t.representative())?);
            }
        }
        GroupKind::D => {
            let b = Group::b(n);
            for t in SignedCycleType::all(n) {
                let rep = t.representative();
                if !rep.is_even_signed() {
                    continue;
                }
                let b_size = enumerate_class(b, rep)?.len();
                let first = enumerate_class(group, rep)?;
                if first.len() < b_size {
                    let flip = SignedPermutation::new(1, &(0..n).collect::<Vec<_>>())?;
                    let other = flip.conj(&rep);
                    out.push(first);
                    out.push(enumerate_class(group, other)?);
                } else {
                    out.push(first);
                }
            }
        }
        GroupKind::S => {
            for p in crate::signed_weyl::partitions(n) {
                let t = SignedCycleType { positive: p, negative: vec![] };
                out.push(enumerate_class(group, t.representative())?);
            }
        }
    }
    Ok(out)
}

/// Whether the `W(B_n)`-class of an even element splits into two `W(D_n)`-classes:
/// exactly when every cycle has even length and positive sign.
pub fn splits_in_d(rep: &SignedPermutation) -> bool {
    let t = rep.signed_cycle_type();
    t.negative.is_empty() && t.positive.iter().all(|l| l % 2 == 0)
}

/// One representative per class, without enumerating the classes. Order matches
/// [`all_classes`].
pub fn class_representatives(group: Group) -> Vec<SignedPermutation> {
    let n = group.n;
    match group.kind {
        GroupKind::B => SignedCycleType::all(n).iter().map(|t| t.representative()).collect(),
        GroupKind::D => {
            let flip = SignedPermutation::new(1, &(0..n).collect::<Vec<_>>()).expect("sign flip");
            let mut out = Vec::new();
            for t in SignedCycleType::all(n) {
                let rep = t.representative();
                if !rep.is_even_signed() {
                    continue;
                }
                out.push(rep);
                if splits_in_d(&rep) {
                    out.push(flip.conj(&rep));
                }
            }
            out
        }
        GroupKind::S => crate::signed_weyl::partitions(n)
            .into_iter()
            .map(|p| SignedCycleType { positive: p, negative: vec![] }.representative())
            .collect(),
    }
}

/// Brute-force partition of the whole group into conjugacy classes (desk scale only).
pub fn brute_force_classes(group: Group) -> Vec<Vec<SignedPermutation>> {
    let all = group.elements();
    let mut seen: HashSet<SignedPermutation> = HashSet::new();
    let mut out = Vec::new();
    for x in &all {
        if seen.contains(x) {
            continue;
        }
        let mut orbit: Vec<SignedPermutation> = Vec::new();
        let mut orbit_set = HashSet::new();
        for g in &all {
            let y = g.conj(x);
            if orbit_set.insert(y) {
                orbit.push(y);
            }
        }
        seen.extend(orbit.iter().copied());
        out.push(orbit);
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct Centralizer {
    pub generators: Vec<SignedPermutation>,
    pub order: u128,
    #[serde(skip)]
    elements: Vec<SignedPermutation>,
}

impl Centralizer {
    pub fn elements(&self) -> &[SignedPermutation] {
        &self.elements
    }

    pub fn contains(&self, x: &SignedPermutation) -> bool {
        self.elements.contains(x)
    }
}

fn closure(gens: &[SignedPermutation], n: usize) -> (Vec<SignedPermutation>, HashSet<SignedPermutation>) {
    let id = SignedPermutation::identity(n);
    let mut elems = vec![id];
    let mut set = HashSet::from([id]);
    let mut i = 0;
    while i < elems.len() {
        let x = elems[i];
        for g in gens {
            let y = x.mul(g);
            if set.insert(y) {
                elems.push(y);
            }
        }
        i += 1;
    }
    (elems, set)
}

/// Centralizer of the class representative via sifted Schreier generators
/// `g_j⁻¹ x g_i` (where `x ▷ t_i = t_j`).
pub fn centralizer_of_class(class: &ConjugacyClass) -> Centralizer {
    let group = class.group;
    let target = class.centralizer_order();
    let mut gens: Vec<SignedPermutation> = Vec::new();
    let (mut elems, mut set) = closure(&gens, group.n);
    'outer: for i in 0..class.len() {
        for x in group.generators() {
            if elems.len() as u128 == target {
                break 'outer;
            }
            let j = class.index_of(&x.conj(&class.element(i))).expect("class is closed");
            let s = class.section()[j].inv().mul(&x).mul(&class.section()[i]);
            if !set.contains(&s) {
                gens.push(s);
                (elems, set) = closure(&gens, group.n);
            }
        }
    }
    Centralizer {
        generators: gens,
        order: elems.len() as u128,
        elements: elems,
    }
}

pub fn centralizer(group: Group, rep: SignedPermutation) -> Result<Centralizer> {
    Ok(centralizer_of_class(&enumerate_class(group, rep)?))
}

/// `x # y`: signs concatenated, `π` on `1..n` and `τ` shifted onto `n+1..n+m`.
pub fn juxtapose(x: &SignedPermutation, y: &SignedPermutation) -> Result<SignedPermutation> {
    let (n, m) = (x.rank(), y.rank());
    if n + m > MAX_RANK {
        return Err(Error::BadRank(n + m));
    }
    let images: Vec<usize> = (0..n)
        .map(|i| x.image(i))
        .chain((0..m).map(|i| y.image(i) + n))
        .collect();
    SignedPermutation::new(x.bits() | y.bits() << n, &images)
}

/// `ν→(x) = x # 1_m`.
pub fn embed_left(x: &SignedPermutation, m: usize) -> Result<SignedPermutation> {
    juxtapose(x, &SignedPermutation::identity(m))
}

/// `ν←(y) = 1_n # y`.
pub fn embed_right(n: usize, y: &SignedPermutation) -> Result<SignedPermutation> {
    juxtapose(&SignedPermutation::identity(n), y)
}

/// Splits `z` into `x # y` with `x` of rank `n`, when `z` preserves `1..n`.
pub fn split(z: &SignedPermutation, n: usize) -> Option<(SignedPermutation, SignedPermutation)> {
    let total = z.rank();
    if n == 0 || n >= total || (0..n).any(|i| z.image(i) >= n) {
        return None;
    }
    let left: Vec<usize> = (0..n).map(|i| z.image(i)).collect();
    let right: Vec<usize> = (n..total).map(|i| z.image(i) - n).collect();
    let lb = z.bits() & ((1u64 << n) - 1);
    let rb = z.bits() >> n;
    Some((
        SignedPermutation::new(lb, &left).ok()?,
        SignedPermutation::new(rb, &right).ok()?,
    ))
}

/// The permutation parts share no cycle length (fixed points count as 1-cycles).
pub fn is_orthogonal(x: &SignedPermutation, y: &SignedPermutation) -> bool {
    let lx: HashSet<usize> = x.cycle_type().into_iter().collect();
    y.cycle_type().iter().all(|l| !lx.contains(l))
}

fn binomial(n: usize, k: usize) -> u128 {
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityCheck {
    pub identity: String,
    pub cases: u64,
    pub failures: u64,
    /// The first few failing cases.
    pub counterexamples: Vec<String>,
}

impl IdentityCheck {
    fn new(identity: &str) -> Self {
        IdentityCheck { identity: identity.to_string(), cases: 0, failures: 0, counterexamples: Vec::new() }
    }

    fn record(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.counterexamples.len() < 16 {
                self.counterexamples.push(detail());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct JuxtapositionReport {
    pub max_total_rank: usize,
    pub checks: Vec<IdentityCheck>,
}

impl JuxtapositionReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(IdentityCheck::passed)
    }
}

/// Verifies the juxtaposition identities in `W(B_{n+m})` for all `n, m ≥ 1` with
/// `n + m ≤ max_total`.
///
/// Element-level identities (product, factorisation through the two embeddings,
/// distributivity of `▷`) run over all pairs of pairs when that is at most
/// `exhaustive_cap` cases and over `samples` random cases otherwise. Class-level
/// identities (centralizer product, direct-product splitting, class product) run
/// over every pair of class representatives with orthogonal permutation parts.
///
/// `juxtaposition.class_product` tests the literal set equality
/// `O(x # y) = O(x) # O(y)`. It does not hold once both ranks are positive: the
/// left side also contains every relabelling that moves the two blocks, and
/// `|O(x # y)| = C(n+m, n)·|O(x)|·|O(y)|`. `juxtaposition.class_product_inclusion`
/// checks the inclusion of the block product together with that size.
pub fn verify_juxtaposition_identities<R: Rng>(
    max_total: usize,
    exhaustive_cap: u64,
    samples: u64,
    rng: &mut R,
) -> Result<JuxtapositionReport> {
    let mut product = IdentityCheck::new("juxtaposition.product");
    let mut factor = IdentityCheck::new("juxtaposition.embedding_factorisation");
    let mut distrib = IdentityCheck::new("juxtaposition.conjugation_distributes");
    let mut centr = IdentityCheck::new("juxtaposition.centralizer_product");
    let mut direct = IdentityCheck::new("juxtaposition.direct_product_irreps");
    let mut classes = IdentityCheck::new("juxtaposition.class_product");
    let mut inclusion = IdentityCheck::new("juxtaposition.class_product_inclusion");

    for total in 2..=max_total {
        for n in 1..total {
            let m = total - n;
            let (gn, gm) = (Group::b(n), Group::b(m));
            let (en, em) = (gn.elements(), gm.elements());

            for x in &en {
                for y in &em {
                    let z = juxtapose(x, y)?;
                    let l = embed_left(x, m)?;
                    let r = embed_right(n, y)?;
                    factor.record(z == l.mul(&r) && z == r.mul(&l), || format!("{x} # {y}"));
                }
            }

            let quad = (en.len() as u64).pow(2) * (em.len() as u64).pow(2);
            let mut check_quad = |x: &SignedPermutation,
                                  x2: &SignedPermutation,
                                  y: &SignedPermutation,
                                  y2: &SignedPermutation|
             -> Result<()> {
                let (z, z2) = (juxtapose(x, y)?, juxtapose(x2, y2)?);
                let prod = juxtapose(&x.mul(x2), &y.mul(y2))?;
                product.record(z.mul(&z2) == prod, || format!("({x}#{y})({x2}#{y2})"));
                let conj = juxtapose(&x.conj(x2), &y.conj(y2))?;
                distrib.record(z.conj(&z2) == conj, || format!("({x}#{y})▷({x2}#{y2})"));
                Ok(())
            };
            if quad <= exhaustive_cap {
                for x in &en {
                    for x2 in &en {
                        for y in &em {
                            for y2 in &em {
                                check_quad(x, x2, y, y2)?;
                            }
                        }
                    }
                }
            } else {
                for _ in 0..samples {
                    let x = gn.random_element(rng);
                    let x2 = gn.random_element(rng);
                    let y = gm.random_element(rng);
                    let y2 = gm.random_element(rng);
                    check_quad(&x, &x2, &y, &y2)?;
                }
            }

            let total_group = Group::b(total);
            let left_classes = all_classes(gn)?;
            let right_classes = all_classes(gm)?;
            for cx in &left_classes {
                for cy in &right_classes {
                    let (x, y) = (cx.rep(), cy.rep());
                    if !is_orthogonal(&x, &y) {
                        continue;
                    }
                    let z = juxtapose(&x, &y)?;
                    let cz = enumerate_class(total_group, z)?;

                    let zx = centralizer_of_class(cx);
                    let zy = centralizer_of_class(cy);
                    let mut embedded = Vec::new();
                    for g in &zx.generators {
                        embedded.push(embed_left(g, m)?);
                    }
                    for h in &zy.generators {
                        embedded.push(embed_right(n, h)?);
                    }
                    let commute = embedded.iter().all(|g| g.conj(&z) == z);
                    centr.record(
                        commute && cz.centralizer_order() == zx.order * zy.order,
                        || format!("centralizer of {z}"),
                    );

                    let factors_commute = zx.generators.iter().all(|g| {
                        zy.generators.iter().all(|h| {
                            let (g, h) = (embed_left(g, m).unwrap(), embed_right(n, h).unwrap());
                            g.mul(&h) == h.mul(&g)
                        })
                    });
                    direct.record(
                        factors_commute && cz.centralizer_order() == zx.order * zy.order,
                        || format!("centralizer of {z} is not the direct product"),
                    );

                    let mut prod: HashSet<SignedPermutation> = HashSet::new();
                    for a in cx.elements() {
                        for b in cy.elements() {
                            prod.insert(juxtapose(a, b)?);
                        }
                    }
                    let same = prod.len() == cz.len() && cz.elements().iter().all(|e| prod.contains(e));
                    classes.record(same, || {
                        format!("class of {z}: {} elements, block product has {}", cz.len(), prod.len())
                    });
                    let binom = binomial(total, n);
                    let included = prod.iter().all(|e| cz.contains(e))
                        && cz.len() as u128 == binom * (cx.len() * cy.len()) as u128;
                    inclusion.record(included, || format!("class of {z}"));
                }
            }
        }
    }
    Ok(JuxtapositionReport {
        max_total_rank: max_total,
        checks: vec![product, factor, distrib, centr, direct, classes, inclusion],
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn representatives_agree_with_enumerated_classes() {
        for n in 1..=6 {
            for g in [Group::b(n), Group::d(n), Group::s(n)] {
                let classes = all_classes(g).unwrap();
                let reps = class_representatives(g);
                assert_eq!(classes.len(), reps.len(), "{g}");
                for (c, r) in classes.iter().zip(&reps) {
                    assert!(c.contains(r), "{g} {r}");
                }
            }
        }
    }
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn sp(s: &str) -> SignedPermutation {
        s.parse().unwrap()
    }

    #[test]
    fn weight_one_class_has_size_n() {
        let c = enumerate_class(Group::b(4), sp("1000:()")).unwrap();
        assert_eq!(c.len(), 4);
        assert!(c.elements().iter().all(|t| t.perm_is_identity() && t.sign_weight() == 1));
    }

    #[test]
    fn five_cycle_class_and_centralizer() {
        let c = enumerate_class(Group::b(5), sp("00000:(1 2 3 4 5)")).unwrap();
        assert_eq!(c.len(), 384);
        let z = centralizer_of_class(&c);
        assert_eq!(z.order, 10);
        let rep = c.rep();
        assert!(z.generators.iter().all(|g| g.conj(&rep) == rep));
    }

    #[test]
    fn section_carries_rep() {
        let c = enumerate_class(Group::d(5), sp("11000:(1 2)(3 4 5)")).unwrap();
        assert_eq!(c.section()[0], SignedPermutation::identity(5));
        for (t, g) in c.elements().iter().zip(c.section()) {
            assert_eq!(g.conj(&c.rep()), *t);
        }
    }

    #[test]
    fn identity_centralizer_is_whole_group() {
        let z = centralizer(Group::b(3), SignedPermutation::identity(3)).unwrap();
        assert_eq!(z.order, 48);
    }

    #[test]
    fn budget_is_enforced() {
        let r = enumerate_class_with_budget(Group::b(5), sp("00000:(1 2 3 4 5)"), 100);
        assert!(matches!(r, Err(Error::Budget(_))));
    }

    #[test]
    fn class_counts_match_bipartitions() {
        for (n, want) in [(2, 5), (3, 10), (4, 20)] {
            assert_eq!(all_classes(Group::b(n)).unwrap().len(), want);
            assert_eq!(brute_force_classes(Group::b(n)).len(), want);
        }
    }

    #[test]
    fn d_classes_partition_the_group() {
        for n in 2..=5 {
            let g = Group::d(n);
            let classes = all_classes(g).unwrap();
            let total: usize = classes.iter().map(ConjugacyClass::len).sum();
            assert_eq!(total as u128, g.order());
            assert_eq!(classes.len(), brute_force_classes(g).len());
        }
    }

    #[test]
    fn juxtaposition_examples() {
        let id = juxtapose(&SignedPermutation::identity(2), &SignedPermutation::identity(3)).unwrap();
        assert!(id.is_identity() && id.rank() == 5);
        let z = juxtapose(&sp("10:(1 2)"), &sp("011:(1 2 3)")).unwrap();
        assert_eq!(z.to_string(), "10011:(1 2)(3 4 5)");
        assert_eq!(split(&z, 2), Some((sp("10:(1 2)"), sp("011:(1 2 3)"))));
    }

    #[test]
    fn orthogonality_examples() {
        assert!(is_orthogonal(&sp("00:(1 2)"), &sp("000:(1 2 3)")));
        assert!(!is_orthogonal(&sp("00:(1 2)"), &sp("00000:(1 2)(3 4 5)")));
        assert!(!is_orthogonal(&sp("000:(1 2)"), &sp("0:()")));
    }

    #[test]
    fn coprime_orders_without_fixed_points_are_orthogonal() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut hits = 0;
        for _ in 0..20_000 {
            let n = rng.gen_range(1..=6);
            let m = rng.gen_range(1..=6);
            let x = Group::s(n).random_element(&mut rng);
            let y = Group::s(m).random_element(&mut rng);
            let no_fixed = |p: &SignedPermutation| !p.cycle_type().contains(&1);
            if num_integer::gcd(x.order(), y.order()) == 1 && (no_fixed(&x) || no_fixed(&y)) {
                hits += 1;
                assert!(is_orthogonal(&x, &y), "{x} {y}");
            }
        }
        assert!(hits > 100);
    }

    #[test]
    fn juxtaposition_identities_small() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let report = verify_juxtaposition_identities(4, 1 << 20, 1000, &mut rng).unwrap();
        for c in &report.checks {
            if c.identity == "juxtaposition.class_product" {
                assert!(!c.passed());
                continue;
            }
            assert!(c.passed(), "{}: {:?}", c.identity, c.counterexamples);
            assert!(c.cases > 0, "{}", c.identity);
        }
    }
}
