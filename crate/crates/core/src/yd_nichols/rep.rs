//! Matrices over `Q(ζ_m)` and representations of centralizers given on generators.

use std::collections::{HashMap, VecDeque};

use crate::conj_classes::Centralizer;
use crate::error::{Error, Result};
use crate::linalg::Field;
use crate::signed_weyl::SignedPermutation;

use super::cyclotomic::CycScalar;

/// Dense square matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat {
    rows: Vec<Vec<CycScalar>>,
}

impl Mat {
    pub fn from_rows(rows: Vec<Vec<CycScalar>>) -> Result<Self> {
        let d = rows.len();
        if d == 0 || rows.iter().any(|r| r.len() != d) {
            return Err(Error::Representation("matrix must be square and nonempty".into()));
        }
        let m = rows[0][0].modulus();
        if rows.iter().flatten().any(|x| x.modulus() != m) {
            return Err(Error::Representation("matrix entries live in different fields".into()));
        }
        Ok(Mat { rows })
    }

    pub fn scalar(d: usize, q: CycScalar) -> Self {
        let m = q.modulus();
        let rows = (0..d)
            .map(|i| (0..d).map(|j| if i == j { q.clone() } else { CycScalar::zero(m) }).collect())
            .collect();
        Mat { rows }
    }

    pub fn identity(d: usize, m: u32) -> Self {
        Self::scalar(d, CycScalar::one(m))
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn modulus(&self) -> u32 {
        self.rows[0][0].modulus()
    }

    pub fn entry(&self, i: usize, j: usize) -> &CycScalar {
        &self.rows[i][j]
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        let d = self.dim();
        let m = self.modulus();
        let rows = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| {
                        (0..d).fold(CycScalar::zero(m), |acc, k| {
                            if self.rows[i][k].is_zero() {
                                acc
                            } else {
                                acc.add(&self.rows[i][k].mul(&other.rows[k][j]))
                            }
                        })
                    })
                    .collect()
            })
            .collect();
        Mat { rows }
    }

    pub fn apply(&self, v: &[CycScalar]) -> Vec<CycScalar> {
        let m = self.modulus();
        self.rows
            .iter()
            .map(|r| r.iter().zip(v).fold(CycScalar::zero(m), |acc, (a, b)| acc.add(&a.mul(b))))
            .collect()
    }

    /// The scalar `q` if the matrix is `q·I`.
    pub fn as_scalar(&self) -> Option<CycScalar> {
        let q = self.rows[0][0].clone();
        let ok = self.rows.iter().enumerate().all(|(i, r)| {
            r.iter().enumerate().all(|(j, x)| if i == j { *x == q } else { x.is_zero() })
        });
        ok.then_some(q)
    }

    pub fn lift(&self, m2: u32) -> Result<Mat> {
        let rows = self
            .rows
            .iter()
            .map(|r| r.iter().map(|x| x.lift(m2)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(Mat { rows })
    }
}

/// A representation of a centralizer, determined by generator images and checked on
/// the whole group by a multiplication-table walk.
#[derive(Clone, Debug)]
pub struct CentralizerRep {
    dim: usize,
    modulus: u32,
    generators: Vec<SignedPermutation>,
    images: Vec<Mat>,
    table: HashMap<SignedPermutation, Mat>,
}

impl CentralizerRep {
    /// Fails with `Error::Representation` when the images do not respect the group's
    /// relations, i.e. when two words for the same element get different matrices.
    pub fn new(centralizer: &Centralizer, images: Vec<Mat>) -> Result<Self> {
        let generators = centralizer.generators.clone();
        if images.len() != generators.len() {
            return Err(Error::Representation(format!(
                "{} images supplied for {} generators",
                images.len(),
                generators.len()
            )));
        }
        let n = centralizer.elements().first().map(|x| x.rank()).unwrap_or(1);
        let (dim, modulus) = match images.first() {
            Some(m) => (m.dim(), m.modulus()),
            None => (1, 1),
        };
        Self::build(n, generators, images, dim, modulus, centralizer.order)
    }

    fn build(
        n: usize,
        generators: Vec<SignedPermutation>,
        images: Vec<Mat>,
        dim: usize,
        modulus: u32,
        order: u128,
    ) -> Result<Self> {
        if images.iter().any(|m| m.dim() != dim || m.modulus() != modulus) {
            return Err(Error::Representation("generator images differ in size or field".into()));
        }
        let id = SignedPermutation::identity(n);
        let mut table = HashMap::from([(id, Mat::identity(dim, modulus))]);
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            let rx = table[&x].clone();
            for (g, rg) in generators.iter().zip(&images) {
                let y = g.mul(&x);
                let ry = rg.mul(&rx);
                match table.get(&y) {
                    Some(prev) if *prev != ry => {
                        return Err(Error::Representation(format!(
                            "images disagree on {y}: relations of the centralizer are not respected"
                        )));
                    }
                    Some(_) => {}
                    None => {
                        table.insert(y, ry);
                        queue.push_back(y);
                    }
                }
            }
        }
        if table.len() as u128 != order {
            return Err(Error::Representation(format!(
                "generators reach {} elements, centralizer has {order}",
                table.len()
            )));
        }
        Ok(CentralizerRep { dim, modulus, generators, images, table })
    }

    pub fn trivial(centralizer: &Centralizer, modulus: u32) -> Result<Self> {
        let images = vec![Mat::identity(1, modulus); centralizer.generators.len()];
        let n = centralizer.elements()[0].rank();
        Self::build(n, centralizer.generators.clone(), images, 1, modulus, centralizer.order)
    }

    /// One-dimensional representation with the given values on the generators.
    pub fn character(centralizer: &Centralizer, values: &[CycScalar]) -> Result<Self> {
        let n = centralizer.elements()[0].rank();
        let modulus = values.first().map(|v| v.modulus()).unwrap_or(1);
        let images = values.iter().map(|v| Mat::scalar(1, v.clone())).collect();
        if values.len() != centralizer.generators.len() {
            return Err(Error::Representation(format!(
                "{} values supplied for {} generators",
                values.len(),
                centralizer.generators.len()
            )));
        }
        Self::build(n, centralizer.generators.clone(), images, 1, modulus, centralizer.order)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn generators(&self) -> &[SignedPermutation] {
        &self.generators
    }

    pub fn images(&self) -> &[Mat] {
        &self.images
    }

    pub fn image(&self, h: &SignedPermutation) -> Option<&Mat> {
        self.table.get(h)
    }

    /// Re-expresses the representation over `Q(ζ_m2)`.
    pub fn lift(&self, m2: u32) -> Result<Self> {
        let table = self.table.iter().map(|(k, v)| Ok((*k, v.lift(m2)?))).collect::<Result<HashMap<_, _>>>()?;
        let images = self.images.iter().map(|m| m.lift(m2)).collect::<Result<Vec<_>>>()?;
        Ok(CentralizerRep { dim: self.dim, modulus: m2, generators: self.generators.clone(), images, table })
    }
}

/// All characters of the centralizer with values in the m-th roots of unity, by
/// trying every assignment on the generators.
pub fn linear_characters(centralizer: &Centralizer, m: u32, max_trials: u64) -> Result<Vec<CentralizerRep>> {
    let k = centralizer.generators.len() as u32;
    let trials = (m as u64).checked_pow(k).unwrap_or(u64::MAX);
    if trials > max_trials {
        return Err(Error::Budget(format!("{trials} assignments exceed the limit {max_trials}")));
    }
    let mut out = Vec::new();
    for code in 0..trials {
        let mut c = code;
        let values: Vec<CycScalar> = (0..k)
            .map(|_| {
                let e = (c % m as u64) as i64;
                c /= m as u64;
                CycScalar::root(m, e)
            })
            .collect();
        if let Ok(rep) = CentralizerRep::character(centralizer, &values) {
            out.push(rep);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conj_classes::centralizer;
    use crate::signed_weyl::Group;

    #[test]
    fn matrix_products() {
        let z = CycScalar::root(4, 1);
        let a = Mat::from_rows(vec![
            vec![CycScalar::zero(4), CycScalar::one(4)],
            vec![CycScalar::one(4), CycScalar::zero(4)],
        ])
        .unwrap();
        assert_eq!(a.mul(&a), Mat::identity(2, 4));
        assert_eq!(Mat::scalar(2, z.clone()).as_scalar(), Some(z));
        assert_eq!(a.as_scalar(), None);
    }

    #[test]
    fn characters_of_a_small_centralizer() {
        // centralizer of a transposition in S_3 has order 2: two characters
        let c = centralizer(Group::s(3), "000:(1 2)".parse().unwrap()).unwrap();
        assert_eq!(c.order, 2);
        let chars = linear_characters(&c, 2, 1000).unwrap();
        assert_eq!(chars.len(), 2);
        // centralizer of the identity in B_2 is B_2, with 4 characters (abelianization Z_2^2)
        let c = centralizer(Group::b(2), SignedPermutation::identity(2)).unwrap();
        assert_eq!(linear_characters(&c, 2, 1000).unwrap().len(), 4);
        assert_eq!(linear_characters(&c, 4, 100000).unwrap().len(), 4);
    }

    #[test]
    fn inconsistent_images_are_rejected() {
        let c = centralizer(Group::s(3), "000:(1 2)".parse().unwrap()).unwrap();
        let bad = vec![CycScalar::root(3, 1); c.generators.len()];
        assert!(matches!(CentralizerRep::character(&c, &bad), Err(Error::Representation(_))));
    }
}
