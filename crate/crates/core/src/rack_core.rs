//! Finite racks, `sq`, subrack decompositions and type-D search.
//!
//! A decomposition `R ∪ S` of a (sub)rack requires both parts nonempty, each part
//! closed under `▷`, and the cross rules `x▷y ∈ S`, `y▷x ∈ R` for `x ∈ R`, `y ∈ S`.
//! A type-D witness adds `a ∈ R`, `b ∈ S` with `sq(a, b) = a▷(b▷(a▷b)) ≠ b`.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::conj_classes::ConjugacyClass;
use crate::error::{Error, Result};
use crate::signed_weyl::SignedPermutation;

pub const DEFAULT_TABLE_CAP: usize = 20_000;
pub const EXHAUSTIVE_CAP: usize = 14;

/// Anything with a binary operation on `0..len`.
pub trait Rack {
    fn len(&self) -> usize;
    fn op(&self, x: usize, y: usize) -> usize;

    fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn sq(&self, x: usize, y: usize) -> usize {
        self.op(x, self.op(y, self.op(x, y)))
    }

    /// Human-readable label for reports.
    fn label(&self, x: usize) -> String {
        format!("#{x}")
    }
}

/// Dense operation table; `elements` carries back-references when the rack comes
/// from a conjugacy class.
#[derive(Clone, Debug)]
pub struct FiniteRack {
    size: usize,
    table: Vec<u32>,
    elements: Vec<SignedPermutation>,
}

impl Rack for FiniteRack {
    fn len(&self) -> usize {
        self.size
    }

    #[inline]
    fn op(&self, x: usize, y: usize) -> usize {
        self.table[x * self.size + y] as usize
    }

    fn label(&self, x: usize) -> String {
        match self.elements.get(x) {
            Some(e) => e.to_string(),
            None => format!("#{x}"),
        }
    }
}

impl FiniteRack {
    /// Rack from a row-major table `table[x][y] = x ▷ y`. Axioms are not checked here.
    pub fn from_table(rows: &[Vec<usize>]) -> Result<Self> {
        let size = rows.len();
        let mut table = Vec::with_capacity(size * size);
        for row in rows {
            if row.len() != size || row.iter().any(|&v| v >= size) {
                return Err(Error::Precondition("table must be square with entries in range".into()));
            }
            table.extend(row.iter().map(|&v| v as u32));
        }
        Ok(FiniteRack { size, table, elements: Vec::new() })
    }

    pub fn elements(&self) -> &[SignedPermutation] {
        &self.elements
    }

    pub fn has_back_references(&self) -> bool {
        self.elements.len() == self.size
    }

    pub fn index_of(&self, x: &SignedPermutation) -> Option<usize> {
        self.elements.iter().position(|e| e == x)
    }

    /// Checks idempotence, self-distributivity and bijectivity of every `φ_x`,
    /// exhaustively.
    pub fn verify_axioms(&self) -> std::result::Result<(), Violation> {
        let n = self.size;
        for x in 0..n {
            if self.op(x, x) != x {
                return Err(Violation::Axiom(format!("{} ▷ itself is not itself", self.label(x))));
            }
            let mut seen = vec![false; n];
            for y in 0..n {
                let v = self.op(x, y);
                if seen[v] {
                    return Err(Violation::Axiom(format!("φ_{} is not injective", self.label(x))));
                }
                seen[v] = true;
            }
        }
        for x in 0..n {
            for y in 0..n {
                let xy = self.op(x, y);
                for z in 0..n {
                    if self.op(x, self.op(y, z)) != self.op(xy, self.op(x, z)) {
                        return Err(Violation::Axiom(format!(
                            "self-distributivity fails at ({}, {}, {})",
                            self.label(x),
                            self.label(y),
                            self.label(z)
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Builds the conjugation rack `x ▷ y = x y x⁻¹` on an enumerated class.
pub fn rack_from_class(class: &ConjugacyClass) -> Result<FiniteRack> {
    rack_from_class_with_cap(class, DEFAULT_TABLE_CAP)
}

pub fn rack_from_class_with_cap(class: &ConjugacyClass, cap: usize) -> Result<FiniteRack> {
    let size = class.len();
    if size > cap {
        return Err(Error::Budget(format!("class of size {size} exceeds the table cap {cap}")));
    }
    let mut table = Vec::with_capacity(size * size);
    for x in class.elements() {
        for y in class.elements() {
            let v = class.index_of(&x.conj(y)).expect("classes are closed under conjugation");
            table.push(v as u32);
        }
    }
    Ok(FiniteRack { size, table, elements: class.elements().to_vec() })
}

/// A conjugacy class viewed as a rack without materialising the table.
pub struct ClassRack<'a> {
    pub class: &'a ConjugacyClass,
}

impl Rack for ClassRack<'_> {
    fn len(&self) -> usize {
        self.class.len()
    }

    fn op(&self, x: usize, y: usize) -> usize {
        let (x, y) = (self.class.element(x), self.class.element(y));
        self.class.index_of(&x.conj(&y)).expect("classes are closed under conjugation")
    }

    fn label(&self, x: usize) -> String {
        self.class.element(x).to_string()
    }
}

/// `x ▷ (y ▷ (x ▷ y))` in the group.
pub fn sq(x: &SignedPermutation, y: &SignedPermutation) -> Result<SignedPermutation> {
    if x.rank() != y.rank() {
        return Err(Error::RankMismatch(x.rank(), y.rank()));
    }
    Ok(x.conj(&y.conj(&x.conj(y))))
}

/// `sq(x, y) == y`.
pub fn square_commutes(x: &SignedPermutation, y: &SignedPermutation) -> Result<bool> {
    Ok(sq(x, y)? == *y)
}

/// `sq(x, y) == y` and `sq(y, x) == x`.
pub fn square_commutes_symmetric(x: &SignedPermutation, y: &SignedPermutation) -> Result<bool> {
    Ok(square_commutes(x, y)? && square_commutes(y, x)?)
}

/// `sq((a,τ),(b,μ))` assembled from sign-vector actions without multiplying group
/// elements:
/// `c = a + τ·[b + μ·(a + τ·b + (τ▷μ)·a) + (μ▷(τ▷μ))·b] + (τ▷(μ▷(τ▷μ)))·a`.
pub fn sq_general_formula(
    x: &SignedPermutation,
    y: &SignedPermutation,
) -> Result<SignedPermutation> {
    if x.rank() != y.rank() {
        return Err(Error::RankMismatch(x.rank(), y.rank()));
    }
    let (a, b) = (x.bits(), y.bits());
    let (tau, mu) = (x.perm_part(), y.perm_part());
    let tm = tau.conj(&mu);
    let mtm = mu.conj(&tm);
    let tmtm = tau.conj(&mtm);
    let inner = a ^ tau.act_on_bits(b) ^ tm.act_on_bits(a);
    let mid = b ^ mu.act_on_bits(inner) ^ mtm.act_on_bits(b);
    let c = a ^ tau.act_on_bits(mid) ^ tmtm.act_on_bits(a);
    Ok(tmtm.with_bits(c))
}

/// Closed form for commuting permutation parts:
/// `c = a + τμ·a + τμ²·a + μ·a + τ·b + τ²μ·b + τμ·b`, permutation part `μ`.
pub fn sq_formula_commuting(
    x: &SignedPermutation,
    y: &SignedPermutation,
) -> Result<SignedPermutation> {
    if x.rank() != y.rank() {
        return Err(Error::RankMismatch(x.rank(), y.rank()));
    }
    let (tau, mu) = (x.perm_part(), y.perm_part());
    if tau.mul(&mu) != mu.mul(&tau) {
        return Err(Error::Precondition(format!(
            "permutation parts of {x} and {y} do not commute; use the general formula"
        )));
    }
    let (a, b) = (x.bits(), y.bits());
    let tm = tau.mul(&mu);
    let tmm = tm.mul(&mu);
    let ttm = tau.mul(&tm);
    let c = a
        ^ tm.act_on_bits(a)
        ^ tmm.act_on_bits(a)
        ^ mu.act_on_bits(a)
        ^ tau.act_on_bits(b)
        ^ ttm.act_on_bits(b)
        ^ tm.act_on_bits(b);
    Ok(mu.with_bits(c))
}

/// The two sides `(a + τμ·a + τμ²·a + μ·a, b + τ·b + τ²μ·b + τμ·b)` whose equality
/// characterises `sq(x, y) == y` when the permutation parts commute.
pub fn square_commutativity_sides(x: &SignedPermutation, y: &SignedPermutation) -> (u64, u64) {
    let (tau, mu) = (x.perm_part(), y.perm_part());
    let (a, b) = (x.bits(), y.bits());
    let tm = tau.mul(&mu);
    let lhs = a ^ tm.act_on_bits(a) ^ tm.mul(&mu).act_on_bits(a) ^ mu.act_on_bits(a);
    let rhs = b ^ tau.act_on_bits(b) ^ tau.mul(&tm).act_on_bits(b) ^ tm.act_on_bits(b);
    (lhs, rhs)
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("rack axiom fails: {0}")]
    Axiom(String),
    #[error("part {0} is empty")]
    EmptyPart(&'static str),
    #[error("{0} is in neither part")]
    NotCovered(String),
    #[error("{0} lies in both parts")]
    Overlap(String),
    #[error("{0} is not in the conjugacy class")]
    NotInClass(String),
    #[error("part {part} not closed: {x} ▷ {y} = {result}")]
    NotClosed { part: &'static str, x: String, y: String, result: String },
    #[error("cross rule {rule} fails: {x} ▷ {y} = {result}")]
    Cross { rule: &'static str, x: String, y: String, result: String },
    #[error("witness element {0} is not in its part")]
    WitnessPlacement(String),
    #[error("sq({a}, {b}) = {b}, so the pair does not witness type D")]
    SquareCommutes { a: String, b: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Side {
    Out,
    R,
    S,
}

fn check_parts<K: Rack + ?Sized>(
    rack: &K,
    r: &[usize],
    s: &[usize],
    require_cover: bool,
) -> std::result::Result<(), Violation> {
    if r.is_empty() {
        return Err(Violation::EmptyPart("R"));
    }
    if s.is_empty() {
        return Err(Violation::EmptyPart("S"));
    }
    let mut side = vec![Side::Out; rack.len()];
    for &x in r {
        side[x] = Side::R;
    }
    for &y in s {
        if side[y] == Side::R {
            return Err(Violation::Overlap(rack.label(y)));
        }
        side[y] = Side::S;
    }
    if require_cover {
        if let Some(x) = side.iter().position(|&p| p == Side::Out) {
            return Err(Violation::NotCovered(rack.label(x)));
        }
    }
    let members: Vec<usize> = r.iter().chain(s).copied().collect();
    for &x in &members {
        for &y in &members {
            let v = rack.op(x, y);
            let want = side[y];
            if side[v] == want {
                continue;
            }
            let same = side[x] == want;
            let (x, y, result) = (rack.label(x), rack.label(y), rack.label(v));
            return Err(if same {
                Violation::NotClosed { part: if want == Side::R { "R" } else { "S" }, x, y, result }
            } else if want == Side::S {
                Violation::Cross { rule: "R ▷ S ⊆ S", x, y, result }
            } else {
                Violation::Cross { rule: "S ▷ R ⊆ R", x, y, result }
            });
        }
    }
    Ok(())
}

/// `R ∪ S` must be the whole rack.
pub fn check_decomposition<K: Rack + ?Sized>(
    rack: &K,
    r: &[usize],
    s: &[usize],
) -> std::result::Result<(), Violation> {
    check_parts(rack, r, s, true)
}

/// `R ∪ S` is a decomposition of the subrack it spans (closure is checked).
pub fn check_sub_decomposition<K: Rack + ?Sized>(
    rack: &K,
    r: &[usize],
    s: &[usize],
) -> std::result::Result<(), Violation> {
    check_parts(rack, r, s, false)
}

/// Witness in index form over a particular rack.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexWitness {
    pub r: Vec<usize>,
    pub s: Vec<usize>,
    pub a: usize,
    pub b: usize,
    pub method: SearchMethod,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchMethod {
    Exhaustive,
    FiberInduced,
    PairGenerated,
}

impl fmt::Display for SearchMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SearchMethod::Exhaustive => "exhaustive",
            SearchMethod::FiberInduced => "fiber_induced",
            SearchMethod::PairGenerated => "pair_generated",
        })
    }
}

impl IndexWitness {
    pub fn validate<K: Rack + ?Sized>(&self, rack: &K) -> std::result::Result<(), Violation> {
        check_sub_decomposition(rack, &self.r, &self.s)?;
        if !self.r.contains(&self.a) {
            return Err(Violation::WitnessPlacement(rack.label(self.a)));
        }
        if !self.s.contains(&self.b) {
            return Err(Violation::WitnessPlacement(rack.label(self.b)));
        }
        if rack.sq(self.a, self.b) == self.b {
            return Err(Violation::SquareCommutes { a: rack.label(self.a), b: rack.label(self.b) });
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(IndexWitness),
    /// Nothing found after examining this many candidates.
    Undetermined { examined: u64, exhausted: bool },
}

fn first_noncommuting_pair<K: Rack + ?Sized>(rack: &K, r: &[usize], s: &[usize]) -> Option<(usize, usize)> {
    r.iter()
        .flat_map(|&a| s.iter().map(move |&b| (a, b)))
        .find(|&(a, b)| rack.sq(a, b) != b)
}

fn exhaustive_search<K: Rack + ?Sized>(rack: &K) -> Option<IndexWitness> {
    let n = rack.len();
    if n < 2 {
        return None;
    }
    for mask in 1u32..(1u32 << n) - 1 {
        let r: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        let s: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 0).collect();
        if check_decomposition(rack, &r, &s).is_err() {
            continue;
        }
        if let Some((a, b)) = first_noncommuting_pair(rack, &r, &s) {
            return Some(IndexWitness { r, s, a, b, method: SearchMethod::Exhaustive });
        }
    }
    None
}

/// Orbit of `start` under the maps `φ_a`, `φ_b`.
fn orbit_under<K: Rack + ?Sized>(rack: &K, start: usize, a: usize, b: usize) -> Vec<usize> {
    let mut seen = HashSet::from([start]);
    let mut order = vec![start];
    let mut queue = VecDeque::from([start]);
    while let Some(x) = queue.pop_front() {
        for g in [a, b] {
            let y = rack.op(g, x);
            if seen.insert(y) {
                order.push(y);
                queue.push_back(y);
            }
        }
    }
    order.sort_unstable();
    order
}

/// Tries pairs `(a, b)` with `sq(a, b) ≠ b`. The subrack generated by `a, b` splits
/// into the `⟨φ_a, φ_b⟩`-orbits of `a` and of `b`; when these differ they form a
/// decomposition. A rack is of type D exactly when some pair passes, so with an
/// unlimited budget this search is complete.
pub fn pair_generated_search<K: Rack + ?Sized>(
    rack: &K,
    anchors: &[usize],
    budget: u64,
    examined: &mut u64,
) -> Option<IndexWitness> {
    for &a in anchors {
        for b in 0..rack.len() {
            if b == a || rack.sq(a, b) == b {
                continue;
            }
            if *examined >= budget {
                return None;
            }
            *examined += 1;
            let r = orbit_under(rack, a, a, b);
            if r.binary_search(&b).is_ok() {
                continue;
            }
            let s = orbit_under(rack, b, a, b);
            return Some(IndexWitness { r, s, a, b, method: SearchMethod::PairGenerated });
        }
    }
    None
}

/// Decompositions pulled back from the permutation parts: for permutation parts
/// `π₁, π₂` of the class, `R`/`S` are the elements whose permutation part lies in
/// the `⟨π₁, π₂⟩`-orbit of `π₁`/`π₂`.
fn fiber_induced_search(rack: &FiniteRack, budget: u64, examined: &mut u64) -> Option<IndexWitness> {
    if !rack.has_back_references() || rack.len() < 2 {
        return None;
    }
    let mut by_perm: HashMap<SignedPermutation, Vec<usize>> = HashMap::new();
    let mut perms: Vec<SignedPermutation> = Vec::new();
    for (i, e) in rack.elements().iter().enumerate() {
        let p = e.perm_part();
        by_perm
            .entry(p)
            .or_insert_with(|| {
                perms.push(p);
                Vec::new()
            })
            .push(i);
    }
    let p1 = perms[0];
    for &p2 in &perms[1..] {
        if *examined >= budget {
            return None;
        }
        *examined += 1;
        let orbit = |start: SignedPermutation| {
            let mut seen = HashSet::from([start]);
            let mut queue = VecDeque::from([start]);
            while let Some(x) = queue.pop_front() {
                for g in [p1, p2] {
                    let y = g.conj(&x);
                    if seen.insert(y) {
                        queue.push_back(y);
                    }
                }
            }
            seen
        };
        let o1 = orbit(p1);
        if o1.contains(&p2) {
            continue;
        }
        let o2 = orbit(p2);
        let collect = |o: &HashSet<SignedPermutation>| {
            let mut v: Vec<usize> = o.iter().flat_map(|p| by_perm[p].iter().copied()).collect();
            v.sort_unstable();
            v
        };
        let (r, s) = (collect(&o1), collect(&o2));
        if let Some((a, b)) = first_noncommuting_pair(rack, &r, &s) {
            return Some(IndexWitness { r, s, a, b, method: SearchMethod::FiberInduced });
        }
    }
    None
}

/// Searches a finite rack for a type-D witness: exhaustive bipartitions when
/// `|X| ≤ 14`, then fiber-induced candidates (class racks), then pair-generated
/// subracks. The first witness in this fixed order is returned.
pub fn brute_force_type_d(rack: &FiniteRack, budget: u64) -> SearchOutcome {
    let mut examined = 0u64;
    if rack.len() <= EXHAUSTIVE_CAP {
        if let Some(w) = exhaustive_search(rack) {
            return SearchOutcome::Found(w);
        }
    }
    if let Some(w) = fiber_induced_search(rack, budget, &mut examined) {
        return SearchOutcome::Found(w);
    }
    let anchors: Vec<usize> = (0..rack.len()).collect();
    match pair_generated_search(rack, &anchors, budget, &mut examined) {
        Some(w) => SearchOutcome::Found(w),
        None => SearchOutcome::Undetermined { examined, exhausted: examined < budget },
    }
}

/// A type-D witness inside a conjugacy class, in group terms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeDWitness {
    #[serde(rename = "R")]
    pub r: Vec<SignedPermutation>,
    #[serde(rename = "S")]
    pub s: Vec<SignedPermutation>,
    pub a: SignedPermutation,
    pub b: SignedPermutation,
}

impl TypeDWitness {
    pub fn from_index(w: &IndexWitness, elements: &[SignedPermutation]) -> Self {
        TypeDWitness {
            r: w.r.iter().map(|&i| elements[i]).collect(),
            s: w.s.iter().map(|&i| elements[i]).collect(),
            a: elements[w.a],
            b: elements[w.b],
        }
    }

    /// Re-validates from scratch: membership in the class, the decomposition rules
    /// on the subrack `R ∪ S`, placement of `a`, `b`, and `sq(a, b) ≠ b`.
    pub fn validate(&self, class: &ConjugacyClass) -> std::result::Result<(), Violation> {
        let mut idx = Vec::with_capacity(self.r.len() + self.s.len());
        for x in self.r.iter().chain(&self.s) {
            match class.index_of(x) {
                Some(i) => idx.push(i),
                None => return Err(Violation::NotInClass(x.to_string())),
            }
        }
        let (r, s) = idx.split_at(self.r.len());
        let a = class.index_of(&self.a).ok_or_else(|| Violation::NotInClass(self.a.to_string()))?;
        let b = class.index_of(&self.b).ok_or_else(|| Violation::NotInClass(self.b.to_string()))?;
        let w = IndexWitness { r: r.to_vec(), s: s.to_vec(), a, b, method: SearchMethod::PairGenerated };
        w.validate(&ClassRack { class })
    }

    /// Same checks as [`TypeDWitness::validate`] with class membership supplied as a
    /// predicate, so the class itself need not be enumerated.
    pub fn validate_with<F: Fn(&SignedPermutation) -> bool>(
        &self,
        member: F,
    ) -> std::result::Result<(), Violation> {
        if self.r.is_empty() {
            return Err(Violation::EmptyPart("R"));
        }
        if self.s.is_empty() {
            return Err(Violation::EmptyPart("S"));
        }
        let mut side: HashMap<SignedPermutation, Side> = HashMap::with_capacity(self.size());
        for x in &self.r {
            side.insert(*x, Side::R);
        }
        for y in &self.s {
            if side.insert(*y, Side::S) == Some(Side::R) {
                return Err(Violation::Overlap(y.to_string()));
            }
        }
        for x in side.keys() {
            if !member(x) {
                return Err(Violation::NotInClass(x.to_string()));
            }
        }
        for (x, &sx) in &side {
            for (y, &sy) in &side {
                let v = x.conj(y);
                if side.get(&v) == Some(&sy) {
                    continue;
                }
                let (xs, ys, result) = (x.to_string(), y.to_string(), v.to_string());
                return Err(if sx == sy {
                    Violation::NotClosed { part: if sy == Side::R { "R" } else { "S" }, x: xs, y: ys, result }
                } else if sy == Side::S {
                    Violation::Cross { rule: "R ▷ S ⊆ S", x: xs, y: ys, result }
                } else {
                    Violation::Cross { rule: "S ▷ R ⊆ R", x: xs, y: ys, result }
                });
            }
        }
        if side.get(&self.a) != Some(&Side::R) {
            return Err(Violation::WitnessPlacement(self.a.to_string()));
        }
        if side.get(&self.b) != Some(&Side::S) {
            return Err(Violation::WitnessPlacement(self.b.to_string()));
        }
        if self.a.conj(&self.b.conj(&self.a.conj(&self.b))) == self.b {
            return Err(Violation::SquareCommutes { a: self.a.to_string(), b: self.b.to_string() });
        }
        Ok(())
    }

    /// Exchanges the roles of the two parts; the decomposition rules are symmetric.
    pub fn swapped(&self) -> Self {
        TypeDWitness { r: self.s.clone(), s: self.r.clone(), a: self.b, b: self.a }
    }

    pub fn size(&self) -> usize {
        self.r.len() + self.s.len()
    }
}

/// Pair-generated search directly on a class (no table), anchored at the
/// representative; conjugation by the group acts transitively on the class by rack
/// automorphisms, so one anchor suffices.
pub fn search_type_d_in_class(class: &ConjugacyClass, budget: u64) -> (Option<TypeDWitness>, u64) {
    let rack = ClassRack { class };
    let mut examined = 0;
    let w = pair_generated_search(&rack, &[0], budget, &mut examined);
    (w.map(|w| TypeDWitness::from_index(&w, class.elements())), examined)
}
