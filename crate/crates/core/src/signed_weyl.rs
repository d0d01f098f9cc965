//! Signed permutations: the hyperoctahedral group `W(B_n) = Z_2^n ⋊ S_n`, its
//! index-two subgroup `W(D_n)` (even sign vectors) and the sign-free copy of `S_n`.
//!
//! An element is a pair `(a, π)` with `a ∈ Z_2^n` stored as a packed word and `π`
//! stored in one-line image form (`π(i)` for `i = 0..n`, zero-based). The symmetric
//! group acts on sign vectors by moving coordinates, `(π·a)_{π(i)} = a_i`, and the
//! product is `(a, π)(b, τ) = (a + π·b, πτ)` with `(πτ)(i) = π(τ(i))`. Everything
//! is mod 2, so the minus signs of the additive formulas disappear.
//!
//! The text form used at every boundary is `BITS:CYCLES`, e.g. `101:(1 2 3)`, with
//! one-based points and `()` for the identity permutation.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MAX_RANK: usize = 64;

/// An element `(a, π)` of `Z_2^n ⋊ S_n`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedPermutation {
    n: u8,
    bits: u64,
    img: [u8; MAX_RANK],
}

#[inline]
fn mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

impl SignedPermutation {
    pub fn identity(n: usize) -> Self {
        assert!((1..=MAX_RANK).contains(&n), "rank {n} outside 1..=64");
        let mut img = [0u8; MAX_RANK];
        for (i, slot) in img.iter_mut().enumerate().take(n) {
            *slot = i as u8;
        }
        SignedPermutation { n: n as u8, bits: 0, img }
    }

    /// Builds `(a, π)` from a packed sign vector (bit `i` is `a_{i+1}`) and zero-based
    /// images `π(0), …, π(n-1)`.
    pub fn new(bits: u64, images: &[usize]) -> Result<Self> {
        let n = images.len();
        if !(1..=MAX_RANK).contains(&n) {
            return Err(Error::BadRank(n));
        }
        if bits & !mask(n) != 0 {
            return Err(Error::Precondition(format!(
                "sign vector has bits beyond rank {n}"
            )));
        }
        let mut seen = 0u64;
        let mut img = [0u8; MAX_RANK];
        for (i, &p) in images.iter().enumerate() {
            if p >= n || seen >> p & 1 == 1 {
                return Err(Error::Precondition(format!(
                    "images {images:?} do not form a permutation"
                )));
            }
            seen |= 1 << p;
            img[i] = p as u8;
        }
        Ok(SignedPermutation { n: n as u8, bits, img })
    }

    /// Builds an element from a bit slice and a list of one-based cycles.
    pub fn from_cycles(signs: &[u8], cycles: &[&[usize]]) -> Result<Self> {
        let n = signs.len();
        if !(1..=MAX_RANK).contains(&n) {
            return Err(Error::BadRank(n));
        }
        let mut bits = 0u64;
        for (i, &s) in signs.iter().enumerate() {
            match s {
                0 => {}
                1 => bits |= 1 << i,
                _ => {
                    return Err(Error::Precondition(format!("sign entry {s} is not 0 or 1")))
                }
            }
        }
        let mut images: Vec<usize> = (0..n).collect();
        let mut used = vec![false; n];
        for cyc in cycles {
            for (k, &p) in cyc.iter().enumerate() {
                if p == 0 || p > n || used[p - 1] {
                    return Err(Error::Precondition(format!("bad cycle {cyc:?} for rank {n}")));
                }
                used[p - 1] = true;
                images[p - 1] = cyc[(k + 1) % cyc.len()] - 1;
            }
        }
        SignedPermutation::new(bits, &images)
    }

    #[inline]
    pub fn rank(&self) -> usize {
        self.n as usize
    }

    /// Packed sign vector; bit `i` holds `a_{i+1}`.
    #[inline]
    pub fn bits(&self) -> u64 {
        self.bits
    }

    #[inline]
    pub fn bit(&self, i: usize) -> u8 {
        (self.bits >> i & 1) as u8
    }

    /// Zero-based image `π(i)`.
    #[inline]
    pub fn image(&self, i: usize) -> usize {
        self.img[i] as usize
    }

    pub fn images(&self) -> &[u8] {
        &self.img[..self.rank()]
    }

    pub fn sign_weight(&self) -> u32 {
        self.bits.count_ones()
    }

    pub fn with_bits(&self, bits: u64) -> Self {
        debug_assert_eq!(bits & !mask(self.rank()), 0);
        SignedPermutation { bits, ..*self }
    }

    /// The sign-free element `(0, π)`.
    pub fn perm_part(&self) -> Self {
        self.with_bits(0)
    }

    pub fn is_identity(&self) -> bool {
        self.bits == 0 && self.perm_is_identity()
    }

    pub fn perm_is_identity(&self) -> bool {
        self.images().iter().enumerate().all(|(i, &p)| i == p as usize)
    }

    /// `π·b` for this element's permutation `π`.
    #[inline]
    pub fn act_on_bits(&self, b: u64) -> u64 {
        let mut out = 0u64;
        let mut rest = b;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            out |= 1 << self.img[i];
        }
        out
    }

    #[inline]
    pub(crate) fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.n, other.n);
        let n = self.rank();
        let mut img = [0u8; MAX_RANK];
        for (i, slot) in img.iter_mut().enumerate().take(n) {
            *slot = self.img[other.img[i] as usize];
        }
        SignedPermutation {
            n: self.n,
            bits: self.bits ^ self.act_on_bits(other.bits),
            img,
        }
    }

    #[inline]
    pub(crate) fn inv(&self) -> Self {
        let n = self.rank();
        let mut img = [0u8; MAX_RANK];
        for i in 0..n {
            img[self.img[i] as usize] = i as u8;
        }
        let inv = SignedPermutation { n: self.n, bits: 0, img };
        SignedPermutation {
            bits: inv.act_on_bits(self.bits),
            ..inv
        }
    }

    /// `self ▷ x = self · x · self⁻¹`, via the closed formula
    /// `(b, τ)▷(a, σ) = (b + τ·a + (τστ⁻¹)·b, τστ⁻¹)`.
    #[inline]
    pub(crate) fn conj(&self, x: &Self) -> Self {
        debug_assert_eq!(self.n, x.n);
        let n = self.rank();
        let mut img = [0u8; MAX_RANK];
        for i in 0..n {
            img[self.img[i] as usize] = self.img[x.img[i] as usize];
        }
        let perm = SignedPermutation { n: self.n, bits: 0, img };
        let bits = self.bits ^ self.act_on_bits(x.bits) ^ perm.act_on_bits(self.bits);
        SignedPermutation { bits, ..perm }
    }

    pub fn multiply(&self, other: &Self) -> Result<Self> {
        check_ranks(self, other)?;
        Ok(self.mul(other))
    }

    pub fn inverse(&self) -> Self {
        self.inv()
    }

    /// `by ▷ self`.
    pub fn conjugate_by(&self, by: &Self) -> Result<Self> {
        check_ranks(self, by)?;
        Ok(by.conj(self))
    }

    pub fn pow(&self, k: u64) -> Self {
        let mut acc = SignedPermutation::identity(self.rank());
        let mut base = *self;
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Cycles of the permutation part, zero-based, each starting at its minimum and
    /// sorted by minimum. Fixed points appear as singleton cycles.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.rank();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cyc = vec![start];
            seen[start] = true;
            let mut j = self.image(start);
            while j != start {
                seen[j] = true;
                cyc.push(j);
                j = self.image(j);
            }
            out.push(cyc);
        }
        out
    }

    /// Cycle lengths of `π` (fixed points included), sorted descending.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        t.sort_unstable_by(|a, b| b.cmp(a));
        t
    }

    pub fn signed_cycle_type(&self) -> SignedCycleType {
        let mut positive = Vec::new();
        let mut negative = Vec::new();
        for cyc in self.cycles() {
            let sign = cyc.iter().fold(0u8, |s, &i| s ^ self.bit(i));
            if sign == 0 {
                positive.push(cyc.len());
            } else {
                negative.push(cyc.len());
            }
        }
        positive.sort_unstable_by(|a, b| b.cmp(a));
        negative.sort_unstable_by(|a, b| b.cmp(a));
        SignedCycleType { positive, negative }
    }

    /// Order of the element in the group.
    pub fn order(&self) -> u64 {
        let sct = self.signed_cycle_type();
        let lens = sct
            .positive
            .iter()
            .copied()
            .chain(sct.negative.iter().map(|&l| 2 * l));
        lens.fold(1u64, |acc, l| num_integer::lcm(acc, l as u64))
    }

    pub fn is_even_signed(&self) -> bool {
        self.bits.count_ones() % 2 == 0
    }

    /// Parses `BITS:CYCLES` and requires the bit string to have length `n`.
    pub fn parse_with_rank(text: &str, n: usize) -> Result<Self> {
        let x: SignedPermutation = text.parse()?;
        if x.rank() != n {
            return Err(Error::Parse {
                text: text.to_string(),
                reason: format!("bit length {} differs from rank {n}", x.rank()),
            });
        }
        Ok(x)
    }

    pub fn sign_string(&self) -> String {
        (0..self.rank())
            .map(|i| if self.bit(i) == 1 { '1' } else { '0' })
            .collect()
    }

    pub fn cycle_string(&self) -> String {
        let cycles: Vec<String> = self
            .cycles()
            .into_iter()
            .filter(|c| c.len() > 1)
            .map(|c| {
                let pts: Vec<String> = c.iter().map(|p| (p + 1).to_string()).collect();
                format!("({})", pts.join(" "))
            })
            .collect();
        if cycles.is_empty() {
            "()".to_string()
        } else {
            cycles.concat()
        }
    }
}

fn check_ranks(x: &SignedPermutation, y: &SignedPermutation) -> Result<()> {
    if x.rank() != y.rank() {
        return Err(Error::RankMismatch(x.rank(), y.rank()));
    }
    Ok(())
}

pub fn multiply(x: &SignedPermutation, y: &SignedPermutation) -> Result<SignedPermutation> {
    x.multiply(y)
}

pub fn inverse(x: &SignedPermutation) -> SignedPermutation {
    x.inverse()
}

/// `by ▷ x`.
pub fn conjugate(by: &SignedPermutation, x: &SignedPermutation) -> Result<SignedPermutation> {
    x.conjugate_by(by)
}

impl fmt::Display for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.sign_string(), self.cycle_string())
    }
}

impl fmt::Debug for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for SignedPermutation {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let bad = |reason: &str| Error::Parse {
            text: text.to_string(),
            reason: reason.to_string(),
        };
        let (sign_part, cycle_part) = text
            .trim()
            .split_once(':')
            .ok_or_else(|| bad("missing ':' separator"))?;
        let signs: Vec<u8> = sign_part
            .trim()
            .chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                _ => Err(bad("sign vector must consist of 0 and 1")),
            })
            .collect::<Result<_>>()?;
        let n = signs.len();
        if n == 0 {
            return Err(bad("empty sign vector"));
        }
        if n > MAX_RANK {
            return Err(bad("rank exceeds 64"));
        }

        let mut cycles: Vec<Vec<usize>> = Vec::new();
        let mut rest = cycle_part.trim();
        if rest.is_empty() {
            return Err(bad("missing cycle part (use \"()\" for the identity)"));
        }
        while !rest.is_empty() {
            let body_end = rest
                .strip_prefix('(')
                .and_then(|r| r.find(')'))
                .ok_or_else(|| bad("cycles must be parenthesised"))?;
            let body = &rest[1..=body_end];
            let mut cyc = Vec::new();
            for tok in body.split(|c: char| c.is_whitespace() || c == ',') {
                if tok.is_empty() {
                    continue;
                }
                let p: usize = tok.parse().map_err(|_| bad("non-numeric point"))?;
                if p == 0 || p > n {
                    return Err(bad("point outside 1..=n"));
                }
                cyc.push(p);
            }
            if !cyc.is_empty() {
                cycles.push(cyc);
            }
            rest = rest[body_end + 2..].trim_start();
        }
        let refs: Vec<&[usize]> = cycles.iter().map(Vec::as_slice).collect();
        SignedPermutation::from_cycles(&signs, &refs).map_err(|e| match e {
            Error::Precondition(reason) => Error::Parse {
                text: text.to_string(),
                reason,
            },
            other => other,
        })
    }
}

impl Serialize for SignedPermutation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for SignedPermutation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Cycle lengths of `π` split by cycle sign (parity of the signs over the cycle's
/// support). Both lists are sorted in decreasing order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SignedCycleType {
    pub positive: Vec<usize>,
    pub negative: Vec<usize>,
}

impl SignedCycleType {
    pub fn rank(&self) -> usize {
        self.positive.iter().sum::<usize>() + self.negative.iter().sum::<usize>()
    }

    /// Canonical representative: cycles laid out on consecutive points in decreasing
    /// length (positive before negative on ties), a negative cycle carrying its sign on
    /// its first point.
    pub fn representative(&self) -> SignedPermutation {
        let mut blocks: Vec<(usize, bool)> = self
            .positive
            .iter()
            .map(|&l| (l, false))
            .chain(self.negative.iter().map(|&l| (l, true)))
            .collect();
        blocks.sort_by(|x, y| y.0.cmp(&x.0).then(x.1.cmp(&y.1)));
        let n = self.rank();
        let mut images: Vec<usize> = (0..n).collect();
        let mut bits = 0u64;
        let mut start = 0;
        for (len, negative) in blocks {
            for k in 0..len {
                images[start + k] = start + (k + 1) % len;
            }
            if negative {
                bits |= 1 << start;
            }
            start += len;
        }
        SignedPermutation::new(bits, &images).expect("valid layout")
    }

    /// All signed cycle types of rank `n`, i.e. pairs of partitions of total size `n`.
    pub fn all(n: usize) -> Vec<SignedCycleType> {
        let mut out = Vec::new();
        for k in 0..=n {
            for pos in partitions(k) {
                for neg in partitions(n - k) {
                    out.push(SignedCycleType {
                        positive: pos.clone(),
                        negative: neg,
                    });
                }
            }
        }
        out
    }
}

impl fmt::Display for SignedCycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "+{:?} -{:?}", self.positive, self.negative)
    }
}

/// Partitions of `n` as decreasing sequences, in reverse lexicographic order.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(rem: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rem == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=rem.min(max)).rev() {
            cur.push(part);
            go(rem - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// All permutations of `0..n` in one-line form, lexicographic order.
pub fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut cur: Vec<usize> = (0..n).collect();
    let mut out = vec![cur.clone()];
    loop {
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
            return out;
        };
        let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).expect("successor exists");
        cur.swap(i, j);
        cur[i + 1..].reverse();
        out.push(cur.clone());
    }
}

/// Which classical Weyl group (or sign-free symmetric group) an element lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GroupKind {
    /// `Z_2^n ⋊ S_n`
    B,
    /// `K_n ⋊ S_n` with `K_n` the even-weight sign vectors.
    D,
    /// Sign-free `S_n` embedded as `(0, π)`.
    S,
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            GroupKind::B => "B",
            GroupKind::D => "D",
            GroupKind::S => "S",
        };
        f.write_str(s)
    }
}

impl FromStr for GroupKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "B" | "b" => Ok(GroupKind::B),
            "D" | "d" => Ok(GroupKind::D),
            "S" | "s" => Ok(GroupKind::S),
            _ => Err(Error::Parse {
                text: s.to_string(),
                reason: "group must be B, D or S".into(),
            }),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Group {
    pub kind: GroupKind,
    pub n: usize,
}

impl Group {
    pub fn new(kind: GroupKind, n: usize) -> Result<Self> {
        if !(1..=MAX_RANK).contains(&n) {
            return Err(Error::BadRank(n));
        }
        Ok(Group { kind, n })
    }

    pub fn b(n: usize) -> Self {
        Group::new(GroupKind::B, n).expect("rank in range")
    }

    pub fn d(n: usize) -> Self {
        Group::new(GroupKind::D, n).expect("rank in range")
    }

    pub fn s(n: usize) -> Self {
        Group::new(GroupKind::S, n).expect("rank in range")
    }

    pub fn order(&self) -> u128 {
        let fact: u128 = (1..=self.n as u128).product();
        match self.kind {
            GroupKind::B => fact << self.n,
            GroupKind::D => fact << (self.n - 1),
            GroupKind::S => fact,
        }
    }

    pub fn contains(&self, x: &SignedPermutation) -> bool {
        x.rank() == self.n
            && match self.kind {
                GroupKind::B => true,
                GroupKind::D => x.is_even_signed(),
                GroupKind::S => x.bits() == 0,
            }
    }

    pub fn check(&self, x: &SignedPermutation) -> Result<()> {
        if x.rank() != self.n {
            return Err(Error::RankMismatch(self.n, x.rank()));
        }
        if !self.contains(x) {
            return Err(Error::NotInGroup(x.to_string()));
        }
        Ok(())
    }

    pub fn identity(&self) -> SignedPermutation {
        SignedPermutation::identity(self.n)
    }

    /// Fixed generating set: adjacent transpositions, plus `((1,0,…),id)` for `B` or
    /// `((1,1,0,…),id)` for `D`.
    pub fn generators(&self) -> Vec<SignedPermutation> {
        let n = self.n;
        let mut gens = Vec::new();
        for i in 0..n.saturating_sub(1) {
            let mut images: Vec<usize> = (0..n).collect();
            images.swap(i, i + 1);
            gens.push(SignedPermutation::new(0, &images).expect("transposition"));
        }
        let id: Vec<usize> = (0..n).collect();
        match self.kind {
            GroupKind::B => gens.push(SignedPermutation::new(1, &id).expect("sign flip")),
            GroupKind::D if n >= 2 => {
                gens.push(SignedPermutation::new(0b11, &id).expect("double flip"))
            }
            _ => {}
        }
        gens
    }

    /// Every element, permutation-major. Only sensible at desk scale.
    pub fn elements(&self) -> Vec<SignedPermutation> {
        let perms = all_permutations(self.n);
        let sign_vectors: Vec<u64> = match self.kind {
            GroupKind::S => vec![0],
            GroupKind::B => (0..1u64 << self.n).collect(),
            GroupKind::D => (0..1u64 << self.n).filter(|b| b.count_ones() % 2 == 0).collect(),
        };
        let mut out = Vec::with_capacity(perms.len() * sign_vectors.len());
        for p in &perms {
            for &b in &sign_vectors {
                out.push(SignedPermutation::new(b, p).expect("valid"));
            }
        }
        out
    }

    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> SignedPermutation {
        let mut images: Vec<usize> = (0..self.n).collect();
        images.shuffle(rng);
        let mut bits = match self.kind {
            GroupKind::S => 0,
            _ => rng.gen::<u64>() & mask(self.n),
        };
        if self.kind == GroupKind::D && bits.count_ones() % 2 == 1 {
            bits ^= 1;
        }
        SignedPermutation::new(bits, &images).expect("valid")
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "W({}_{})", self.kind, self.n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn sp(s: &str) -> SignedPermutation {
        s.parse().unwrap()
    }

    #[test]
    fn transposition_squares_to_identity() {
        let t = sp("00:(1 2)");
        assert_eq!(t.multiply(&t).unwrap(), sp("00:()"));
    }

    #[test]
    fn product_adds_moved_signs() {
        assert_eq!(sp("10:(1 2)").multiply(&sp("01:(1 2)")).unwrap(), sp("00:()"));
    }

    #[test]
    fn rank_mismatch_is_an_error() {
        assert_eq!(
            sp("00:()").multiply(&sp("000:()")),
            Err(Error::RankMismatch(2, 3))
        );
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(sp("00:()").inverse(), sp("00:()"));
        let x = sp("10:(1 2)");
        assert_eq!(x.inverse(), sp("01:(1 2)"));
        assert!(x.multiply(&x.inverse()).unwrap().is_identity());
    }

    #[test]
    fn conjugation_example() {
        let by = sp("10:()");
        let x = sp("00:(1 2)");
        let c = conjugate(&by, &x).unwrap();
        assert_eq!(c, sp("11:(1 2)"));
        let triple = by.mul(&x).mul(&by.inv());
        assert_eq!(c, triple);
        assert_eq!(conjugate(&x, &x).unwrap(), x);
    }

    #[test]
    fn signed_cycle_type_examples() {
        let t = sp("00000:()").signed_cycle_type();
        assert_eq!(t.positive, vec![1; 5]);
        assert!(t.negative.is_empty());
        let t = sp("1000:()").signed_cycle_type();
        assert_eq!(t.positive, vec![1, 1, 1]);
        assert_eq!(t.negative, vec![1]);
        let t = sp("11100:(1 2 3)").signed_cycle_type();
        assert_eq!(t.positive, vec![1, 1]);
        assert_eq!(t.negative, vec![3]);
    }

    #[test]
    fn parse_and_format() {
        let x = sp("101:(1 2 3)");
        assert_eq!(x.bits(), 0b101);
        assert_eq!((x.image(0), x.image(1), x.image(2)), (1, 2, 0));
        assert_eq!(x.to_string(), "101:(1 2 3)");
        assert_eq!(sp("00:()"), SignedPermutation::identity(2));
        assert_eq!(sp("0000:(3 1)(4)").to_string(), "0000:(1 3)");
        assert_eq!(sp("00000:(5 4)(2 3 1)").to_string(), "00000:(1 2 3)(4 5)");
        assert_eq!(sp(" 01 : (2,1) ").to_string(), "01:(1 2)");
    }

    #[test]
    fn parse_errors() {
        for bad in ["", "01", "012:()", "01:(1 3)", "01:(1 1)", "01:1 2", "01:(a)", ":()", "01:"] {
            assert!(bad.parse::<SignedPermutation>().is_err(), "{bad:?} should fail");
        }
        assert!(SignedPermutation::parse_with_rank("01:()", 3).is_err());
        assert!(SignedPermutation::parse_with_rank("011:()", 3).is_ok());
    }

    #[test]
    fn order_of_negative_cycle_doubles() {
        assert_eq!(sp("100:(1 2 3)").order(), 6);
        assert_eq!(sp("000:(1 2 3)").order(), 3);
        assert_eq!(sp("10:()").order(), 2);
    }

    #[test]
    fn group_orders_and_generation() {
        for n in 1..=4 {
            for g in [Group::b(n), Group::d(n), Group::s(n)] {
                assert_eq!(g.elements().len() as u128, g.order(), "{g}");
            }
        }
        // generators really generate: closure from identity reaches the whole group
        for g in [Group::b(4), Group::d(4), Group::s(4)] {
            let gens = g.generators();
            let mut seen = std::collections::HashSet::new();
            let mut stack = vec![g.identity()];
            seen.insert(g.identity());
            while let Some(x) = stack.pop() {
                for s in &gens {
                    let y = x.mul(s);
                    if seen.insert(y) {
                        stack.push(y);
                    }
                }
            }
            assert_eq!(seen.len() as u128, g.order(), "{g}");
        }
    }

    #[test]
    fn representative_realises_signed_cycle_type() {
        for n in 1..=6 {
            let all = SignedCycleType::all(n);
            for t in all {
                assert_eq!(t.representative().signed_cycle_type(), t);
            }
        }
        assert_eq!(SignedCycleType::all(5).len(), 36);
    }

    #[test]
    fn d_membership_is_closed() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let d = Group::d(7);
        for _ in 0..10_000 {
            let x = d.random_element(&mut rng);
            let y = d.random_element(&mut rng);
            assert!(d.contains(&x.mul(&y)));
            assert!(d.contains(&x.inv()));
            assert!(d.contains(&x.conj(&y)));
        }
    }
}
