//! The quadratic algebras `ℰ_n` and their sign-twisted family `A(α, β, γ, λ)`:
//! presentations, degree-bounded completion and Hilbert series.

pub mod linear;
pub mod rewrite;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{Echelon, SparseVec};

pub use linear::linear_graded_dims;
pub use rewrite::{complete_to_degree, RewriteSystem};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Form {
    /// Generators `x_ij` with `i < j` only.
    Ordered,
    /// Generators `x_ij`, `i ≠ j`, identified through `x_ij = γ_ij x_ji`.
    Antisymmetric,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Square,
    Triple,
    Commutation,
}

/// `Σ c · x_g x_h` over generator indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Relation {
    pub family: Family,
    /// 1-based point indices the relation was instantiated from.
    pub indices: Vec<usize>,
    pub terms: Vec<(usize, usize, i64)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ForcedConstraint {
    pub kind: String,
    pub indices: Vec<usize>,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct QuadraticPresentation {
    pub n: usize,
    pub form: Form,
    /// `(i, j)` with `i < j`, 1-based; index in this list is the generator index.
    pub generators: Vec<(usize, usize)>,
    pub relations: Vec<Relation>,
    pub constraints: Vec<ForcedConstraint>,
}

fn sign_key(idx: &[usize]) -> String {
    idx.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",")
}

/// Sign tables keyed by comma-separated 1-based index tuples; missing entries take
/// the values of `ℰ_n`: `α = β = 1`, `γ = −1`, `λ = 1`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Signs {
    #[serde(default)]
    pub alpha: BTreeMap<String, i8>,
    #[serde(default)]
    pub beta: BTreeMap<String, i8>,
    #[serde(default)]
    pub gamma: BTreeMap<String, i8>,
    #[serde(default)]
    pub lambda: BTreeMap<String, i8>,
}

fn tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in 1..=n {
            if !cur.contains(&i) {
                cur.push(i);
                go(n, k, cur, out);
                cur.pop();
            }
        }
    }
    go(n, k, &mut cur, &mut out);
    out
}

impl Signs {
    pub fn alpha(&self, i: usize, j: usize, k: usize) -> i64 {
        self.alpha.get(&sign_key(&[i, j, k])).copied().unwrap_or(1) as i64
    }
    pub fn beta(&self, i: usize, j: usize, k: usize) -> i64 {
        self.beta.get(&sign_key(&[i, j, k])).copied().unwrap_or(1) as i64
    }
    pub fn gamma(&self, i: usize, j: usize) -> i64 {
        self.gamma.get(&sign_key(&[i, j])).copied().unwrap_or(-1) as i64
    }
    pub fn lambda(&self, i: usize, j: usize, k: usize, l: usize) -> i64 {
        self.lambda.get(&sign_key(&[i, j, k, l])).copied().unwrap_or(1) as i64
    }

    /// Every entry drawn uniformly from `{1, −1}`.
    pub fn random<R: Rng>(n: usize, rng: &mut R) -> Self {
        let mut pick = |k: usize| -> BTreeMap<String, i8> {
            tuples(n, k).into_iter().map(|t| (sign_key(&t), if rng.gen_bool(0.5) { 1 } else { -1 })).collect()
        };
        let alpha = pick(3);
        let beta = pick(3);
        let gamma = pick(2);
        let lambda = pick(4);
        Signs { alpha, beta, gamma, lambda }
    }

    /// The tables transported along a permutation `σ` of the points (0-based images).
    pub fn relabel(&self, sigma: &[usize]) -> Result<Self> {
        let map = |t: &BTreeMap<String, i8>| -> Result<BTreeMap<String, i8>> {
            t.iter()
                .map(|(k, v)| {
                    let idx = parse_key(k)?;
                    let moved: Vec<usize> = idx
                        .iter()
                        .map(|&i| sigma.get(i - 1).map(|s| s + 1).ok_or_else(|| Error::Precondition(format!("index {i} out of range"))))
                        .collect::<Result<_>>()?;
                    Ok((sign_key(&moved), *v))
                })
                .collect()
        };
        Ok(Signs { alpha: map(&self.alpha)?, beta: map(&self.beta)?, gamma: map(&self.gamma)?, lambda: map(&self.lambda)? })
    }

    /// Checks keys and values against `n`.
    pub fn validate(&self, n: usize) -> Result<()> {
        for (name, table, arity) in [("alpha", &self.alpha, 3), ("beta", &self.beta, 3), ("gamma", &self.gamma, 2), ("lambda", &self.lambda, 4)] {
            for (k, v) in table {
                let idx = parse_key(k)?;
                let distinct = idx.iter().enumerate().all(|(a, x)| idx[..a].iter().all(|y| y != x));
                if idx.len() != arity || !distinct || idx.iter().any(|&i| i == 0 || i > n) {
                    return Err(Error::Parse { text: k.clone(), reason: format!("{name} needs {arity} distinct indices in 1..={n}") });
                }
                if *v != 1 && *v != -1 {
                    return Err(Error::Parse { text: v.to_string(), reason: format!("{name} values must be 1 or -1") });
                }
            }
        }
        Ok(())
    }
}

fn parse_key(k: &str) -> Result<Vec<usize>> {
    k.split(',')
        .map(|p| p.trim().parse::<usize>().map_err(|_| Error::Parse { text: k.to_string(), reason: "index tuple expected".into() }))
        .collect()
}

fn pair_generators(n: usize) -> Vec<(usize, usize)> {
    (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))).collect()
}

impl QuadraticPresentation {
    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn generator_index(&self, i: usize, j: usize) -> Option<usize> {
        self.generators.iter().position(|&g| g == (i, j))
    }

    /// Relation vectors over the degree-two words `g·G + h`, with coefficients in `Q`.
    pub fn relation_vectors(&self) -> Vec<SparseVec<BigRational>> {
        let g = self.num_generators();
        self.relations
            .iter()
            .map(|r| {
                crate::linalg::collect_sparse(
                    r.terms.iter().map(|&(a, b, c)| (a * g + b, BigRational::from_integer(BigInt::from(c)))),
                )
            })
            .filter(|v: &SparseVec<BigRational>| !v.is_empty())
            .collect()
    }

    /// Dimension of the span of the relations in degree two.
    pub fn relation_rank(&self) -> usize {
        crate::linalg::rank(&self.relation_vectors())
    }

    /// Keeps only the listed relation families.
    pub fn restricted_to(&self, families: &[Family]) -> Self {
        let mut out = self.clone();
        out.relations.retain(|r| families.contains(&r.family));
        out
    }

    /// Same algebra after the substitution `x_g ↦ ε_g x_g`.
    pub fn rescaled(&self, eps: &[i64]) -> Self {
        let mut out = self.clone();
        for r in &mut out.relations {
            for t in &mut r.terms {
                t.2 *= eps[t.0] * eps[t.1];
            }
        }
        out
    }
}

/// `ℰ_n` in the form indexed by `i < j`.
pub fn fk_presentation(n: usize) -> Result<QuadraticPresentation> {
    if n < 2 {
        return Err(Error::Precondition("n must be at least 2".into()));
    }
    let generators = pair_generators(n);
    let gi = |i: usize, j: usize| generators.iter().position(|&g| g == (i, j)).expect("i < j");
    let mut relations = Vec::new();
    for &(i, j) in &generators {
        let g = gi(i, j);
        relations.push(Relation { family: Family::Square, indices: vec![i, j], terms: vec![(g, g, 1)] });
    }
    for i in 1..=n {
        for j in i + 1..=n {
            for k in j + 1..=n {
                let (ij, jk, ik) = (gi(i, j), gi(j, k), gi(i, k));
                // x_ij x_jk = x_jk x_ik + x_ik x_ij
                relations.push(Relation {
                    family: Family::Triple,
                    indices: vec![i, j, k],
                    terms: vec![(ij, jk, 1), (jk, ik, -1), (ik, ij, -1)],
                });
                // x_jk x_ij = x_ik x_jk + x_ij x_ik
                relations.push(Relation {
                    family: Family::Triple,
                    indices: vec![i, j, k],
                    terms: vec![(jk, ij, 1), (ik, jk, -1), (ij, ik, -1)],
                });
            }
        }
    }
    for &(i, j) in &generators {
        for &(k, l) in &generators {
            if (i, j) != (k, l) && i != k && i != l && j != k && j != l {
                let (a, b) = (gi(i, j), gi(k, l));
                relations.push(Relation {
                    family: Family::Commutation,
                    indices: vec![i, j, k, l],
                    terms: vec![(a, b, 1), (b, a, -1)],
                });
            }
        }
    }
    Ok(QuadraticPresentation { n, form: Form::Ordered, generators, relations, constraints: Vec::new() })
}

/// `A(α, β, γ, λ)` in the antisymmetric form. Generators `x_ij` and `x_ji` share
/// the index of `(min, max)`; a pair with `γ_ij ≠ γ_ji` forces `x_ij = 0` and is
/// dropped, and λ-relations that force a product to vanish are reported.
pub fn general_presentation(n: usize, signs: &Signs) -> Result<QuadraticPresentation> {
    if n < 2 {
        return Err(Error::Precondition("n must be at least 2".into()));
    }
    signs.validate(n)?;
    let mut constraints = Vec::new();
    let mut generators = Vec::new();
    for (i, j) in pair_generators(n) {
        if signs.gamma(i, j) != signs.gamma(j, i) {
            constraints.push(ForcedConstraint {
                kind: "gamma".into(),
                indices: vec![i, j],
                detail: format!("gamma_{i}{j} != gamma_{j}{i} forces x_{i}{j} = 0"),
            });
        } else {
            generators.push((i, j));
        }
    }
    // x_pq as (generator, sign)
    let canon = |p: usize, q: usize| -> Option<(usize, i64)> {
        let (a, b, s) = if p < q { (p, q, 1) } else { (q, p, signs.gamma(p, q)) };
        generators.iter().position(|&g| g == (a, b)).map(|g| (g, s))
    };
    let mut relations = Vec::new();
    for &(i, j) in &generators {
        let (g, _) = canon(i, j).expect("kept generator");
        relations.push(Relation { family: Family::Square, indices: vec![i, j], terms: vec![(g, g, 1)] });
    }
    let product = |terms: &mut Vec<(usize, usize, i64)>, c: i64, a: (usize, usize), b: (usize, usize)| {
        if let (Some((x, sx)), Some((y, sy))) = (canon(a.0, a.1), canon(b.0, b.1)) {
            terms.push((x, y, c * sx * sy));
        }
    };
    for t in tuples(n, 3) {
        let (i, j, k) = (t[0], t[1], t[2]);
        let mut terms = Vec::new();
        product(&mut terms, 1, (i, j), (j, k));
        product(&mut terms, signs.alpha(i, j, k), (j, k), (k, i));
        product(&mut terms, signs.beta(i, j, k), (k, i), (i, j));
        relations.push(Relation { family: Family::Triple, indices: t, terms });
    }
    for t in tuples(n, 4) {
        let (i, j, k, l) = (t[0], t[1], t[2], t[3]);
        let mut terms = Vec::new();
        product(&mut terms, 1, (i, j), (k, l));
        product(&mut terms, -signs.lambda(i, j, k, l), (k, l), (i, j));
        relations.push(Relation { family: Family::Commutation, indices: t, terms });
    }
    let mut p = QuadraticPresentation { n, form: Form::Antisymmetric, generators, relations, constraints };
    p.constraints.extend(lambda_constraints(&p));
    Ok(p)
}

/// `ℰ_n` as the instance `(α, β, γ, λ) = (1, 1, −1, 1)` of the general family.
pub fn fk_antisymmetric(n: usize) -> Result<QuadraticPresentation> {
    general_presentation(n, &Signs::default())
}

/// Pairs of disjoint generators whose commutation relations force both products
/// `x_g x_h` and `x_h x_g` to vanish.
fn lambda_constraints(p: &QuadraticPresentation) -> Vec<ForcedConstraint> {
    let g = p.num_generators();
    let mut by_pair: BTreeMap<(usize, usize), Echelon<BigRational>> = BTreeMap::new();
    for r in p.relations.iter().filter(|r| r.family == Family::Commutation) {
        let Some(&(a, b, _)) = r.terms.first() else { continue };
        let key = (a.min(b), a.max(b));
        let v = crate::linalg::collect_sparse(
            r.terms.iter().map(|&(x, y, c)| (x * g + y, BigRational::from_integer(BigInt::from(c)))),
        );
        by_pair.entry(key).or_default().insert(&v);
    }
    by_pair
        .into_iter()
        .filter(|(_, e)| e.rank() == 2)
        .map(|((a, b), _)| {
            let (i, j) = p.generators[a];
            let (k, l) = p.generators[b];
            ForcedConstraint {
                kind: "lambda".into(),
                indices: vec![i, j, k, l],
                detail: format!("commutation signs force x_{i}{j} x_{k}{l} = x_{k}{l} x_{i}{j} = 0"),
            }
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Engine {
    Linear,
    Rewrite,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradedDims {
    /// Degree 0 first.
    pub dims: Vec<usize>,
    pub vanishes_at: Option<usize>,
    /// Set when the work budget ran out; `dims` then holds the degrees finished.
    pub truncated: bool,
}

impl GradedDims {
    pub fn total(&self) -> usize {
        self.dims.iter().sum()
    }
}

pub const DEFAULT_FK_BUDGET: u64 = 50_000_000;

pub fn graded_dims(p: &QuadraticPresentation, d_max: usize, engine: Engine, budget: u64) -> GradedDims {
    match engine {
        Engine::Linear => linear_graded_dims(p, d_max, budget),
        Engine::Rewrite => complete_to_degree(p, d_max, budget).graded_dims(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "probe", rename_all = "snake_case")]
pub enum Probe {
    VanishesAtDegree { degree: usize, dims: Vec<usize> },
    StillGrowing { dims: Vec<usize>, truncated: bool },
}

/// Runs the rewrite engine; a zero degree means every longer word is reducible, so
/// the algebra is finite dimensional with the reported dimensions.
pub fn finiteness_probe(p: &QuadraticPresentation, d_max: usize, budget: u64) -> Probe {
    let g = graded_dims(p, d_max, Engine::Rewrite, budget);
    match g.vanishes_at {
        Some(degree) => Probe::VanishesAtDegree { degree, dims: g.dims },
        None => Probe::StillGrowing { dims: g.dims, truncated: g.truncated },
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ExplorationRow {
    pub seed: u64,
    pub killed_generators: usize,
    pub forced_constraints: usize,
    pub probe: Probe,
}

/// Probe outcomes for random sign instances, one per seed.
pub fn explore_random_instances(n: usize, seeds: std::ops::Range<u64>, d_max: usize, budget: u64) -> Result<Vec<ExplorationRow>> {
    use rand::SeedableRng;
    seeds
        .map(|seed| {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let signs = Signs::random(n, &mut rng);
            let p = general_presentation(n, &signs)?;
            Ok(ExplorationRow {
                seed,
                killed_generators: p.constraints.iter().filter(|c| c.kind == "gamma").count(),
                forced_constraints: p.constraints.iter().filter(|c| c.kind == "lambda").count(),
                probe: finiteness_probe(&p, d_max, budget),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn count(p: &QuadraticPresentation, f: Family) -> usize {
        p.relations.iter().filter(|r| r.family == f).count()
    }

    #[test]
    fn relation_counts() {
        let p2 = fk_presentation(2).unwrap();
        assert_eq!(p2.num_generators(), 1);
        assert_eq!(p2.relations.len(), 1);
        let p3 = fk_presentation(3).unwrap();
        assert_eq!((p3.num_generators(), count(&p3, Family::Square), count(&p3, Family::Triple)), (3, 3, 2));
        let a3 = fk_antisymmetric(3).unwrap();
        assert_eq!((a3.num_generators(), count(&a3, Family::Square), count(&a3, Family::Triple)), (3, 3, 6));
        assert_eq!(count(&a3, Family::Commutation), 0);
        // both forms span the same degree-two relations
        for n in 2..=5 {
            let a = fk_presentation(n).unwrap();
            let b = fk_antisymmetric(n).unwrap();
            let mut e = Echelon::new();
            for v in a.relation_vectors() {
                e.insert(&v);
            }
            let r = e.rank();
            for v in b.relation_vectors() {
                assert!(e.contains(&v), "n={n}");
            }
            assert_eq!(b.relation_rank(), r);
        }
        assert_eq!(fk_antisymmetric(4).unwrap().relation_rank(), 17);
    }

    #[test]
    fn gamma_conflicts_kill_generators() {
        let mut s = Signs::default();
        s.gamma.insert("1,2".into(), 1);
        let p = general_presentation(3, &s).unwrap();
        assert_eq!(p.num_generators(), 2);
        assert_eq!(p.constraints[0].kind, "gamma");
        assert_eq!(p.constraints[0].indices, vec![1, 2]);
    }

    #[test]
    fn lambda_conflicts_are_reported() {
        let mut s = Signs::default();
        s.lambda.insert("1,2,3,4".into(), -1);
        let p = general_presentation(4, &s).unwrap();
        let l: Vec<_> = p.constraints.iter().filter(|c| c.kind == "lambda").collect();
        assert_eq!(l.len(), 1);
        assert_eq!(l[0].indices, vec![1, 2, 3, 4]);
        assert!(fk_antisymmetric(4).unwrap().constraints.is_empty());
    }

    #[test]
    fn sign_files_roundtrip_and_validate() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let s = Signs::random(4, &mut rng);
        let text = serde_json::to_string(&s).unwrap();
        let back: Signs = serde_json::from_str(&text).unwrap();
        assert_eq!(back, s);
        let bad: Signs = serde_json::from_str(r#"{"alpha": {"1,1,2": 1}}"#).unwrap();
        assert!(bad.validate(3).is_err());
        let bad: Signs = serde_json::from_str(r#"{"gamma": {"1,2": 2}}"#).unwrap();
        assert!(general_presentation(3, &bad).is_err());
    }

    /// Full ideal slice `Σ V^a R V^b` in degree `m`, ranked over all `G^m` words.
    fn naive_dims(p: &QuadraticPresentation, d: usize) -> Vec<usize> {
        let g = p.num_generators();
        let rels = p.relation_vectors();
        let mut dims = vec![1, g];
        for m in 2..=d {
            let total = g.pow(m as u32);
            let mut e = Echelon::new();
            for a in 0..=m - 2 {
                let b = m - 2 - a;
                for pre in 0..g.pow(a as u32) {
                    for post in 0..g.pow(b as u32) {
                        for r in &rels {
                            let v: SparseVec<BigRational> = crate::linalg::collect_sparse(
                                r.iter().map(|(w, c)| ((pre * g * g + w) * g.pow(b as u32) + post, c.clone())),
                            );
                            e.insert(&v);
                        }
                    }
                }
            }
            dims.push(total - e.rank());
        }
        dims
    }

    #[test]
    fn small_fk_algebras() {
        let e2 = fk_presentation(2).unwrap();
        for engine in [Engine::Linear, Engine::Rewrite] {
            let d = graded_dims(&e2, 6, engine, DEFAULT_FK_BUDGET);
            assert_eq!(d.dims, vec![1, 1, 0]);
            assert_eq!(d.total(), 2);
        }
        let e3 = fk_presentation(3).unwrap();
        for engine in [Engine::Linear, Engine::Rewrite] {
            let d = graded_dims(&e3, 8, engine, DEFAULT_FK_BUDGET);
            assert_eq!(d.dims, vec![1, 3, 4, 3, 1, 0], "{engine:?}");
            assert_eq!(d.vanishes_at, Some(5));
        }
        assert_eq!(&naive_dims(&e3, 5)[..], &[1, 3, 4, 3, 1, 0]);
        assert_eq!(finiteness_probe(&e2, 4, DEFAULT_FK_BUDGET), Probe::VanishesAtDegree { degree: 2, dims: vec![1, 1, 0] });
    }

    #[test]
    fn engines_agree_with_naive_slices() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let mut cases = vec![fk_presentation(4).unwrap(), fk_antisymmetric(3).unwrap()];
        for _ in 0..6 {
            cases.push(general_presentation(3, &Signs::random(3, &mut rng)).unwrap());
        }
        cases.push(general_presentation(4, &Signs::random(4, &mut rng)).unwrap());
        for p in &cases {
            let d = if p.num_generators() > 3 { 4 } else { 6 };
            let naive = naive_dims(p, d);
            let lin = graded_dims(p, d, Engine::Linear, DEFAULT_FK_BUDGET);
            let rw = graded_dims(p, d, Engine::Rewrite, DEFAULT_FK_BUDGET);
            assert_eq!(&naive[..lin.dims.len()], &lin.dims[..]);
            assert_eq!(lin.dims, rw.dims);
        }
    }

    #[test]
    fn dims_invariant_under_relabeling_and_rescaling() {
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        for _ in 0..5 {
            let s = Signs::random(3, &mut rng);
            let base = graded_dims(&general_presentation(3, &s).unwrap(), 7, Engine::Linear, DEFAULT_FK_BUDGET);
            for sigma in [[1usize, 0, 2], [2, 0, 1]] {
                let moved = general_presentation(3, &s.relabel(&sigma).unwrap()).unwrap();
                assert_eq!(graded_dims(&moved, 7, Engine::Linear, DEFAULT_FK_BUDGET), base);
            }
        }
        let e4 = fk_presentation(4).unwrap();
        let base = graded_dims(&e4, 6, Engine::Linear, DEFAULT_FK_BUDGET);
        let eps: Vec<i64> = (0..6).map(|k| if k % 2 == 0 { 1 } else { -1 }).collect();
        assert_eq!(graded_dims(&e4.rescaled(&eps), 6, Engine::Linear, DEFAULT_FK_BUDGET), base);
    }

    #[test]
    fn commutation_only_instance_needs_no_new_rules() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let mut s = Signs::random(4, &mut rng);
        // keep λ consistent so no product is forced to vanish
        let keys: Vec<String> = s.lambda.keys().cloned().collect();
        for k in keys {
            let t = parse_key(&k).unwrap();
            let swapped = sign_key(&[t[2], t[3], t[0], t[1]]);
            let v = s.lambda[&k];
            s.lambda.insert(swapped, v);
        }
        s.gamma.clear();
        let p = general_presentation(4, &s).unwrap().restricted_to(&[Family::Square, Family::Commutation]);
        let sys = complete_to_degree(&p, 5, DEFAULT_FK_BUDGET);
        assert!(sys.rules.iter().all(|r| r.lhs.len() == 2));
        assert!(sys.is_locally_confluent_to(5));
    }

    #[test]
    fn completion_is_confluent() {
        let sys = complete_to_degree(&fk_presentation(3).unwrap(), 6, DEFAULT_FK_BUDGET);
        assert!(sys.is_locally_confluent_to(6));
        assert_eq!(complete_to_degree(&fk_presentation(2).unwrap(), 4, DEFAULT_FK_BUDGET).rules.len(), 1);
    }

    #[test]
    fn budget_truncates() {
        let p = fk_presentation(4).unwrap();
        assert!(graded_dims(&p, 12, Engine::Linear, 10).truncated);
        assert!(graded_dims(&p, 12, Engine::Rewrite, 10).truncated);
    }
}
