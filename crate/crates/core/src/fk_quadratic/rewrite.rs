//! Homogeneous completion of a quadratic presentation, one degree at a time.
//!
//! Words are compared degree-lexicographically on generator indices. At degree `m`
//! every overlap `u·o·v` of two rules with total length `m` is rewritten both ways
//! with the rules of lower degree; the differences are put in reduced echelon form
//! and their leading words become the rules of degree `m`.

use std::collections::{BTreeMap, HashMap};

use num_rational::BigRational;
use num_traits::Zero;

use crate::linalg::Echelon;

use super::{GradedDims, QuadraticPresentation};

pub type Word = Vec<u8>;
type Poly = BTreeMap<Word, BigRational>;

#[derive(Clone, Debug)]
pub struct Rule {
    pub lhs: Word,
    /// Smaller words with coefficients; `lhs` rewrites to this sum.
    pub rhs: Vec<(Word, BigRational)>,
}

#[derive(Clone, Debug)]
pub struct RewriteSystem {
    pub generators: usize,
    /// Rules grouped by degree.
    pub rules: Vec<Rule>,
    /// Number of irreducible words per degree, degree 0 first.
    pub normal_counts: Vec<usize>,
    /// Highest degree up to which every overlap was resolved.
    pub completed_degree: usize,
    pub truncated: bool,
    index: HashMap<Word, usize>,
    lengths: Vec<usize>,
}

fn add_term(p: &mut Poly, w: Word, c: BigRational) {
    if c.is_zero() {
        return;
    }
    match p.get_mut(&w) {
        Some(x) => {
            *x += c;
            if x.is_zero() {
                p.remove(&w);
            }
        }
        None => {
            p.insert(w, c);
        }
    }
}

impl RewriteSystem {
    fn new(generators: usize) -> Self {
        RewriteSystem {
            generators,
            rules: Vec::new(),
            normal_counts: vec![1, generators],
            completed_degree: 1,
            truncated: false,
            index: HashMap::new(),
            lengths: Vec::new(),
        }
    }

    fn add_rule(&mut self, rule: Rule) {
        let len = rule.lhs.len();
        if !self.lengths.contains(&len) {
            self.lengths.push(len);
        }
        self.index.insert(rule.lhs.clone(), self.rules.len());
        self.rules.push(rule);
    }

    /// First rule occurrence in `w`: `(start, rule index)`.
    fn find_redex(&self, w: &[u8]) -> Option<(usize, usize)> {
        for start in 0..w.len() {
            for &len in &self.lengths {
                if start + len <= w.len() {
                    if let Some(&r) = self.index.get(&w[start..start + len]) {
                        return Some((start, r));
                    }
                }
            }
        }
        None
    }

    pub fn is_normal(&self, w: &[u8]) -> bool {
        self.find_redex(w).is_none()
    }

    /// Normal form of a homogeneous polynomial; `steps` counts rewrites.
    pub fn reduce(&self, mut p: Poly, steps: &mut u64) -> Poly {
        let mut out = Poly::new();
        while let Some((w, c)) = p.pop_last() {
            match self.find_redex(&w) {
                None => {
                    out.insert(w, c);
                }
                Some((start, r)) => {
                    *steps += 1;
                    let rule = &self.rules[r];
                    let (pre, post) = (&w[..start], &w[start + rule.lhs.len()..]);
                    for (u, k) in &rule.rhs {
                        let mut w2 = Vec::with_capacity(w.len());
                        w2.extend_from_slice(pre);
                        w2.extend_from_slice(u);
                        w2.extend_from_slice(post);
                        add_term(&mut p, w2, &c * k);
                    }
                }
            }
        }
        out
    }

    pub fn graded_dims(&self) -> GradedDims {
        let vanishes_at = self.normal_counts.iter().position(|&c| c == 0);
        GradedDims { dims: self.normal_counts.clone(), vanishes_at, truncated: self.truncated }
    }

    /// Rules whose left side has the given degree.
    pub fn rules_of_degree(&self, m: usize) -> impl Iterator<Item = &Rule> {
        self.rules.iter().filter(move |r| r.lhs.len() == m)
    }

    /// Checks that every overlap of total length at most `d` resolves to zero, using
    /// all rules.
    pub fn is_locally_confluent_to(&self, d: usize) -> bool {
        let mut steps = 0;
        self.ambiguities(|len| len <= d)
            .into_iter()
            .all(|(_, a, b)| self.reduce(self.sub(a, b), &mut steps).is_empty())
    }

    fn sub(&self, mut a: Poly, b: Poly) -> Poly {
        for (w, c) in b {
            add_term(&mut a, w, -c);
        }
        a
    }

    /// Overlaps `u·o·v` (`l1 = u·o`, `l2 = o·v`) whose length passes `keep`, each with
    /// its two one-step rewrites.
    fn ambiguities(&self, keep: impl Fn(usize) -> bool) -> Vec<(Word, Poly, Poly)> {
        let mut by_prefix: HashMap<&[u8], Vec<usize>> = HashMap::new();
        for (k, r) in self.rules.iter().enumerate() {
            for o in 1..r.lhs.len() {
                by_prefix.entry(&r.lhs[..o]).or_default().push(k);
            }
        }
        let mut out = Vec::new();
        for r1 in &self.rules {
            let a = r1.lhs.len();
            for o in 1..a {
                let Some(cands) = by_prefix.get(&r1.lhs[a - o..]) else { continue };
                for &k2 in cands {
                    let r2 = &self.rules[k2];
                    let total = a + r2.lhs.len() - o;
                    if !keep(total) {
                        continue;
                    }
                    let mut w = r1.lhs.clone();
                    w.extend_from_slice(&r2.lhs[o..]);
                    let u = &r1.lhs[..a - o];
                    let v = &r2.lhs[o..];
                    let mut left = Poly::new();
                    for (x, c) in &r1.rhs {
                        let mut w2 = x.clone();
                        w2.extend_from_slice(v);
                        add_term(&mut left, w2, c.clone());
                    }
                    let mut right = Poly::new();
                    for (x, c) in &r2.rhs {
                        let mut w2 = u.to_vec();
                        w2.extend_from_slice(x);
                        add_term(&mut right, w2, c.clone());
                    }
                    out.push((w, left, right));
                }
            }
        }
        out
    }
}

/// Turns reduced polynomials of one degree into rules, leading word = largest word.
fn rules_from(polys: Vec<Poly>) -> Vec<Rule> {
    let mut col_of: BTreeMap<Word, usize> = BTreeMap::new();
    for p in &polys {
        for w in p.keys() {
            col_of.insert(w.clone(), 0);
        }
    }
    // larger words get smaller columns so they become pivots
    let total = col_of.len();
    for (k, v) in col_of.values_mut().enumerate() {
        *v = total - 1 - k;
    }
    let word_of: HashMap<usize, Word> = col_of.iter().map(|(w, c)| (*c, w.clone())).collect();
    let mut e: Echelon<BigRational> = Echelon::new();
    for p in &polys {
        let mut v: Vec<(usize, BigRational)> = p.iter().map(|(w, c)| (col_of[w], c.clone())).collect();
        v.sort_by_key(|t| t.0);
        e.insert(&v);
    }
    e.reduced_rows()
        .into_iter()
        .map(|(lead, row)| Rule {
            lhs: word_of[&lead].clone(),
            rhs: row[1..].iter().map(|(c, x)| (word_of[c].clone(), -x.clone())).collect(),
        })
        .collect()
}

/// Completes the presentation degree by degree up to `d` (or until no normal words
/// remain). The budget bounds the number of rewrite steps.
pub fn complete_to_degree(p: &QuadraticPresentation, d: usize, budget: u64) -> RewriteSystem {
    let g = p.num_generators();
    let mut sys = RewriteSystem::new(g);
    if d == 0 {
        sys.normal_counts.truncate(1);
        sys.completed_degree = 0;
        return sys;
    }
    if g == 0 {
        return sys;
    }
    let mut normal: Vec<Word> = (0..g as u8).map(|x| vec![x]).collect();
    let mut steps = 0u64;
    for m in 2..=d {
        let polys: Vec<Poly> = if m == 2 {
            p.relations
                .iter()
                .map(|r| {
                    let mut poly = Poly::new();
                    for &(a, b, c) in &r.terms {
                        add_term(&mut poly, vec![a as u8, b as u8], BigRational::from_integer(c.into()));
                    }
                    poly
                })
                .filter(|p| !p.is_empty())
                .collect()
        } else {
            let mut out = Vec::new();
            for (_, a, b) in sys.ambiguities(|len| len == m) {
                let f = sys.reduce(sys.sub(a, b), &mut steps);
                if !f.is_empty() {
                    out.push(f);
                }
                if steps > budget {
                    sys.truncated = true;
                    return sys;
                }
            }
            out
        };
        for rule in rules_from(polys) {
            sys.add_rule(rule);
        }
        let mut next = Vec::new();
        for w in &normal {
            for x in 0..g as u8 {
                let mut w2 = w.clone();
                w2.push(x);
                // only suffixes can be new redexes
                let fresh = (2..=w2.len()).all(|len| !sys.index.contains_key(&w2[w2.len() - len..]));
                if fresh {
                    next.push(w2);
                }
            }
        }
        normal = next;
        sys.normal_counts.push(normal.len());
        sys.completed_degree = m;
        if normal.is_empty() {
            break;
        }
    }
    sys
}
