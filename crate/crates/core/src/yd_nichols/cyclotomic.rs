//! Exact arithmetic in the cyclotomic field `Q(ζ_m)`, elements stored as residues
//! modulo the m-th cyclotomic polynomial.

use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;
use std::rc::Rc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::Field;

type Poly = Vec<BigRational>;

thread_local! {
    static CYCLOTOMIC: RefCell<HashMap<u32, Rc<Poly>>> = RefCell::new(HashMap::new());
}

fn trim(p: &mut Poly) {
    while p.last().is_some_and(|c| Zero::is_zero(c)) {
        p.pop();
    }
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if Zero::is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Poly {
    let mut out: Poly = (0..a.len().max(b.len()))
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(BigRational::zero);
            let y = b.get(i).cloned().unwrap_or_else(BigRational::zero);
            x - y
        })
        .collect();
    trim(&mut out);
    out
}

/// Quotient and remainder; `b` must be nonzero.
fn poly_divmod(a: &[BigRational], b: &[BigRational]) -> (Poly, Poly) {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let lead = b[db].clone();
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut q = vec![BigRational::zero(); r.len() - db];
    while r.len() > db && !r.is_empty() {
        let k = r.len() - 1 - db;
        let c = &r[r.len() - 1] / &lead;
        for (i, x) in b.iter().enumerate() {
            r[k + i] -= &c * x;
        }
        q[k] = c;
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

/// Coefficients of `Φ_m`, lowest degree first.
fn cyclotomic_poly(m: u32) -> Rc<Poly> {
    if let Some(p) = CYCLOTOMIC.with(|c| c.borrow().get(&m).cloned()) {
        return p;
    }
    let mut num: Poly = vec![BigRational::zero(); m as usize + 1];
    num[0] = -BigRational::one();
    num[m as usize] = BigRational::one();
    for d in 1..m {
        if m % d == 0 {
            let (q, r) = poly_divmod(&num, &cyclotomic_poly(d));
            debug_assert!(r.is_empty());
            num = q;
        }
    }
    let p = Rc::new(num);
    CYCLOTOMIC.with(|c| c.borrow_mut().insert(m, p.clone()));
    p
}

pub fn euler_phi(m: u32) -> usize {
    let mut n = m;
    let mut out = m;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            out -= out / p;
        }
        p += 1;
    }
    if n > 1 {
        out -= out / n;
    }
    out as usize
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: u32, b: u32) -> u32 {
    a / gcd(a, b) * b
}

/// An element of `Q(ζ_m)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycScalar {
    m: u32,
    coeffs: Vec<BigRational>,
}

impl CycScalar {
    fn from_poly(m: u32, p: &[BigRational]) -> Self {
        let phi = cyclotomic_poly(m);
        let (_, mut r) = poly_divmod(p, &phi);
        r.resize(euler_phi(m), BigRational::zero());
        CycScalar { m, coeffs: r }
    }

    pub fn from_rational(m: u32, q: BigRational) -> Self {
        assert!(m >= 1, "modulus must be positive");
        let mut coeffs = vec![BigRational::zero(); euler_phi(m)];
        coeffs[0] = q;
        CycScalar { m, coeffs }
    }

    pub fn from_int(m: u32, k: i64) -> Self {
        Self::from_rational(m, BigRational::from_integer(BigInt::from(k)))
    }

    pub fn zero(m: u32) -> Self {
        Self::from_int(m, 0)
    }

    pub fn one(m: u32) -> Self {
        Self::from_int(m, 1)
    }

    /// `ζ_m^k`.
    pub fn root(m: u32, k: i64) -> Self {
        let e = k.rem_euclid(m as i64) as usize;
        let mut p = vec![BigRational::zero(); e + 1];
        p[e] = BigRational::one();
        Self::from_poly(m, &p)
    }

    pub fn modulus(&self) -> u32 {
        self.m
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| Zero::is_zero(c))
    }

    /// Rational value, if the element lies in `Q`.
    pub fn as_rational(&self) -> Option<&BigRational> {
        self.coeffs[1..].iter().all(|c| Zero::is_zero(c)).then(|| &self.coeffs[0])
    }

    /// Re-expresses the element in `Q(ζ_m')` for a multiple `m'` of `m`.
    pub fn lift(&self, m2: u32) -> Result<Self> {
        if m2 % self.m != 0 {
            return Err(Error::Precondition(format!("cannot embed Q(z{}) into Q(z{m2})", self.m)));
        }
        let step = (m2 / self.m) as usize;
        let mut p = vec![BigRational::zero(); (self.coeffs.len().max(1) - 1) * step + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            p[i * step] = c.clone();
        }
        Ok(Self::from_poly(m2, &p))
    }

    /// Multiplicative order if the element is a root of unity.
    pub fn root_order(&self) -> Option<u32> {
        let bound = lcm(2, self.m);
        let one = Self::one(self.m);
        let mut x = self.clone();
        for k in 1..=bound {
            if x == one {
                return Some(k);
            }
            x = x.mul(self);
        }
        None
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    fn check_modulus(&self, other: &Self) {
        assert_eq!(self.m, other.m, "cyclotomic moduli differ");
    }

    /// Parses `1`, `-1`, an integer or `k/m` (meaning `ζ_m^k`), then lifts to `Q(ζ_modulus)`.
    pub fn parse_root(text: &str, modulus: u32) -> Result<Self> {
        let bad = |reason: &str| Error::Parse { text: text.to_string(), reason: reason.to_string() };
        let t = text.trim();
        if let Some((k, m)) = t.split_once('/') {
            let k: i64 = k.trim().parse().map_err(|_| bad("exponent is not an integer"))?;
            let m: u32 = m.trim().parse().map_err(|_| bad("order is not a positive integer"))?;
            if m == 0 {
                return Err(bad("order must be positive"));
            }
            return Self::root(m, k).lift(modulus).map_err(|_| bad("order does not divide the field modulus"));
        }
        let v: i64 = t.parse().map_err(|_| bad("expected an integer or k/m"))?;
        Ok(Self::from_int(modulus, v))
    }

    /// Order `m` needed to hold the root written as `k/m` (1 for integers).
    pub fn parse_order(text: &str) -> u32 {
        match text.trim().split_once('/') {
            Some((_, m)) => m.trim().parse().unwrap_or(1),
            None => match text.trim() {
                "-1" => 2,
                _ => 1,
            },
        }
    }
}

impl Field for CycScalar {
    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| Zero::is_zero(c))
    }

    fn add(&self, other: &Self) -> Self {
        self.check_modulus(other);
        CycScalar {
            m: self.m,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        }
    }

    fn sub(&self, other: &Self) -> Self {
        self.check_modulus(other);
        CycScalar {
            m: self.m,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
        }
    }

    fn mul(&self, other: &Self) -> Self {
        self.check_modulus(other);
        if self.coeffs.len() == 1 {
            return CycScalar { m: self.m, coeffs: vec![&self.coeffs[0] * &other.coeffs[0]] };
        }
        Self::from_poly(self.m, &poly_mul(&self.coeffs, &other.coeffs))
    }

    fn neg(&self) -> Self {
        CycScalar { m: self.m, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    fn inv(&self) -> Self {
        assert!(!self.is_zero(), "division by zero");
        let phi = cyclotomic_poly(self.m);
        // extended Euclid: keep s with s·self ≡ r (mod Φ_m)
        let mut r0: Poly = phi.to_vec();
        let mut r1: Poly = self.coeffs.clone();
        trim(&mut r1);
        let mut s0: Poly = Vec::new();
        let mut s1: Poly = vec![BigRational::one()];
        while r1.len() > 1 {
            let (q, r) = poly_divmod(&r0, &r1);
            let s = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        let c = r1[0].clone();
        let scaled: Poly = s1.iter().map(|x| x / &c).collect();
        Self::from_poly(self.m, &scaled)
    }
}

impl fmt::Display for CycScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if Zero::is_zero(c) {
                continue;
            }
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            let body = match (i, mag.is_one()) {
                (0, _) => mag.to_string(),
                (1, true) => format!("z{}", self.m),
                (1, false) => format!("{mag}*z{}", self.m),
                (_, true) => format!("z{}^{i}", self.m),
                (_, false) => format!("{mag}*z{}^{i}", self.m),
            };
            terms.push((sign, body));
        }
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (sign, body)) in terms.iter().enumerate() {
            match (k, *sign) {
                (0, "-") => write!(f, "-{body}")?,
                (0, _) => write!(f, "{body}")?,
                (_, s) => write!(f, " {s} {body}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CycScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_polynomials() {
        let ints = |m| cyclotomic_poly(m).iter().map(|c| c.to_integer().to_string()).collect::<Vec<_>>().join(",");
        assert_eq!(ints(1), "-1,1");
        assert_eq!(ints(2), "1,1");
        assert_eq!(ints(3), "1,1,1");
        assert_eq!(ints(4), "1,0,1");
        assert_eq!(ints(6), "1,-1,1");
        assert_eq!(ints(12), "1,0,-1,0,1");
        for m in 1..=30 {
            assert_eq!(cyclotomic_poly(m).len() - 1, euler_phi(m));
        }
    }

    #[test]
    fn roots_have_the_right_order() {
        for m in 1..=12 {
            assert!(CycScalar::root(m, m as i64).is_one());
            for k in 0..m {
                let expect = m / gcd(m, k);
                assert_eq!(CycScalar::root(m, k as i64).root_order(), Some(expect), "m={m} k={k}");
            }
        }
        assert_eq!(CycScalar::root(2, 1), CycScalar::from_int(2, -1));
        assert_eq!(CycScalar::from_int(5, 2).root_order(), None);
    }

    #[test]
    fn field_axioms_on_samples() {
        for m in [3u32, 5, 8, 12] {
            let xs: Vec<CycScalar> = (0..m as i64)
                .map(|k| CycScalar::root(m, k).add(&CycScalar::from_int(m, k - 1)))
                .filter(|x| !Field::is_zero(x))
                .collect();
            let one = CycScalar::one(m);
            for a in &xs {
                assert_eq!(a.mul(&a.inv()), one, "inverse of {a} in Q(z{m})");
                for b in &xs {
                    assert_eq!(a.mul(b), b.mul(a));
                    for c in xs.iter().take(3) {
                        assert_eq!(a.mul(&b.add(c)), a.mul(b).add(&a.mul(c)));
                        assert_eq!(a.mul(b).mul(c), a.mul(&b.mul(c)));
                    }
                }
            }
        }
    }

    #[test]
    fn lifting_preserves_products() {
        let a = CycScalar::root(3, 1);
        let b = CycScalar::root(3, 2);
        let la = a.lift(6).unwrap();
        let lb = b.lift(6).unwrap();
        assert_eq!(la.mul(&lb), CycScalar::one(6));
        assert_eq!(la, CycScalar::root(6, 2));
        assert!(a.lift(4).is_err());
    }

    #[test]
    fn parsing_values() {
        assert_eq!(CycScalar::parse_root("-1", 6).unwrap(), CycScalar::root(6, 3));
        assert_eq!(CycScalar::parse_root("1/3", 6).unwrap(), CycScalar::root(6, 2));
        assert!(CycScalar::parse_root("1/4", 6).is_err());
        assert!(CycScalar::parse_root("x", 6).is_err());
        assert_eq!(CycScalar::parse_order("2/5"), 5);
        assert_eq!(CycScalar::root(4, 1).to_string(), "z4");
        assert_eq!(CycScalar::root(3, 2).to_string(), "-1 - z3");
    }
}
