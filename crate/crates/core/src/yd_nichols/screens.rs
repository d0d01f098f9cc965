//! Necessary conditions for a finite-dimensional Nichols algebra, stated on scalar
//! data of juxtaposed blocks and on the type-D classification.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::signed_weyl::{Group, SignedPermutation};
use crate::typed_classifier::{classify, ClassifyOptions, ExceptionCase, VerdictStatus};

use super::cyclotomic::CycScalar;
use crate::linalg::Field;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum ScreenVerdict {
    InfiniteDim { reason: String },
    Inconclusive { reason: String },
}

impl ScreenVerdict {
    pub fn is_infinite(&self) -> bool {
        matches!(self, ScreenVerdict::InfiniteDim { .. })
    }
}

fn infinite(reason: impl Into<String>) -> ScreenVerdict {
    ScreenVerdict::InfiniteDim { reason: reason.into() }
}

fn inconclusive(reason: impl Into<String>) -> ScreenVerdict {
    ScreenVerdict::Inconclusive { reason: reason.into() }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Screens the scalars `q_left = ρ₁(aπ)`, `q_right = ρ₂(bτ)` of a juxtaposition
/// `aπ # bτ`, given the element orders `ord(aπ)`, `ord(bτ)`.
pub fn q_screen(q_left: &CycScalar, q_right: &CycScalar, ord_left: u64, ord_right: u64) -> ScreenVerdict {
    let m = q_left.modulus();
    let minus_one = CycScalar::from_int(m, -1);
    if q_left.mul(q_right) != minus_one {
        return infinite("q_left * q_right != -1");
    }
    let forced = q_right.is_one() && *q_left == minus_one;
    if ord_right <= 2 && !q_left.is_one() && !forced {
        return infinite("ord(right) <= 2 and q_left != 1 force (q_right, q_left) = (1, -1)");
    }
    if gcd(ord_left, ord_right) == 1 && ord_right % 2 == 1 && !forced {
        return infinite("coprime orders with ord(right) odd force (q_right, q_left) = (1, -1)");
    }
    if forced {
        return inconclusive("necessary conditions met with (q_right, q_left) = (1, -1)");
    }
    inconclusive("necessary conditions met")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TableCase {
    I,
    Ii,
    Iii,
    Iv,
    V,
    Vi,
    Vii,
    Viii,
    Ix,
    X,
}

impl TableCase {
    pub const ALL: [TableCase; 10] = [
        TableCase::I,
        TableCase::Ii,
        TableCase::Iii,
        TableCase::Iv,
        TableCase::V,
        TableCase::Vi,
        TableCase::Vii,
        TableCase::Viii,
        TableCase::Ix,
        TableCase::X,
    ];

    pub fn label(&self) -> &'static str {
        match self {
            TableCase::I => "i",
            TableCase::Ii => "ii",
            TableCase::Iii => "iii",
            TableCase::Iv => "iv",
            TableCase::V => "v",
            TableCase::Vi => "vi",
            TableCase::Vii => "vii",
            TableCase::Viii => "viii",
            TableCase::Ix => "ix",
            TableCase::X => "x",
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        TableCase::ALL
            .into_iter()
            .find(|c| c.label() == text.trim().to_lowercase())
            .ok_or_else(|| Error::NoMatchingCase(format!("unknown case label {text:?}")))
    }

    /// `(τ images, c bits, d pattern)` for the specific cases; `d` is `Some(true)` for
    /// all ones, `Some(false)` for zero, together with a required length when fixed.
    fn pattern(&self) -> Option<(&'static [usize], u64, bool, Option<usize>)> {
        const T12: &[usize] = &[1, 0];
        const T123: &[usize] = &[1, 2, 0];
        const T1234: &[usize] = &[1, 0, 3, 2];
        // c bits: bit k is position k+1
        match self {
            TableCase::I => None,
            TableCase::Ii => Some((T12, 0b00, true, None)),
            TableCase::Iii => Some((T12, 0b11, false, None)),
            TableCase::Iv => Some((T123, 0b000, true, None)),
            TableCase::V => Some((T123, 0b111, false, None)),
            TableCase::Vi => Some((T1234, 0b0000, true, Some(2))),
            TableCase::Vii => Some((T1234, 0b0101, true, Some(2))),
            TableCase::Viii => Some((T1234, 0b0101, false, None)),
            TableCase::Ix => Some((T1234, 0b0001, true, Some(2))),
            TableCase::X => Some((T1234, 0b0001, false, Some(2))),
        }
    }

    /// Allowed `(ρ₁(cτ), ρ₂(dξ))` sign pairs.
    fn forced_pairs(&self) -> &'static [(i64, i64)] {
        match self {
            TableCase::I | TableCase::Ii | TableCase::Vii | TableCase::Ix => &[(1, -1), (-1, 1)],
            TableCase::Iii | TableCase::V | TableCase::Viii | TableCase::X => &[(-1, 1)],
            TableCase::Iv | TableCase::Vi => &[(1, -1)],
        }
    }
}

/// Scalar data of `aμ = cτ # dξ` entering the case table.
#[derive(Clone, Debug)]
pub struct TableInput {
    pub c_tau: SignedPermutation,
    pub d_xi: SignedPermutation,
    pub rho1: CycScalar,
    pub rho2: CycScalar,
    pub chi1_c: Option<CycScalar>,
    pub mu1_tau: Option<CycScalar>,
}

fn sign_of(x: &CycScalar) -> Option<i64> {
    let m = x.modulus();
    if x.is_one() {
        Some(1)
    } else if *x == CycScalar::from_int(m, -1) {
        Some(-1)
    } else {
        None
    }
}

fn constant_bits(x: &SignedPermutation) -> Option<bool> {
    let full = if x.rank() == 64 { u64::MAX } else { (1u64 << x.rank()) - 1 };
    match x.bits() {
        0 => Some(false),
        b if b == full => Some(true),
        _ => None,
    }
}

/// Whether the input has the shape of `case`.
pub fn case_matches(case: TableCase, input: &TableInput) -> bool {
    if !input.d_xi.perm_is_identity() {
        return false;
    }
    let Some(d_ones) = constant_bits(&input.d_xi) else {
        return false;
    };
    let Some((tau, c, d_pattern, d_len)) = case.pattern() else {
        return true;
    };
    input.c_tau.rank() == tau.len()
        && (0..tau.len()).all(|i| input.c_tau.image(i) == tau[i])
        && input.c_tau.bits() == c
        && d_ones == d_pattern
        && d_len.map_or(true, |l| input.d_xi.rank() == l)
}

/// All cases whose shape fits the input; case (i) fits whenever `ξ = id` and `d` is
/// constant.
pub fn matching_cases(input: &TableInput) -> Vec<TableCase> {
    TableCase::ALL.into_iter().filter(|c| case_matches(*c, input)).collect()
}

pub fn case_table_screen(case: TableCase, input: &TableInput) -> Result<ScreenVerdict> {
    if !case_matches(case, input) {
        return Err(Error::NoMatchingCase(format!(
            "{} # {} does not have the shape of case ({})",
            input.c_tau,
            input.d_xi,
            case.label()
        )));
    }
    let label = case.label();
    let (Some(r1), Some(r2)) = (sign_of(&input.rho1), sign_of(&input.rho2)) else {
        return Ok(infinite(format!("case ({label}): scalars must be +-1")));
    };
    if !case.forced_pairs().contains(&(r1, r2)) {
        return Ok(infinite(format!("case ({label}): pair ({r1}, {r2}) is not among the forced values")));
    }
    let want_chi = match case {
        TableCase::Ii | TableCase::Iv => Some(1),
        TableCase::V => Some(-1),
        _ => None,
    };
    let want_mu = match case {
        TableCase::Ii => Some(r1),
        TableCase::Iv | TableCase::V => Some(1),
        _ => None,
    };
    if let (Some(w), Some(chi)) = (want_chi, &input.chi1_c) {
        if sign_of(chi) != Some(w) {
            return Ok(infinite(format!("case ({label}): chi1(c) must be {w}")));
        }
    }
    if let (Some(w), Some(mu)) = (want_mu, &input.mu1_tau) {
        if sign_of(mu) != Some(w) {
            return Ok(infinite(format!("case ({label}): mu1(tau) must be {w}")));
        }
    }
    Ok(inconclusive(format!("case ({label}): forced values met")))
}

fn exception_label(e: ExceptionCase) -> &'static str {
    match e {
        ExceptionCase::I => "i",
        ExceptionCase::Ii => "ii",
        ExceptionCase::Iii => "iii",
    }
}

/// Infinite dimension for every `ρ` whenever the class is proven of type D.
pub fn classification_screen(group: Group, sigma: &SignedPermutation, opts: &ClassifyOptions) -> ScreenVerdict {
    let v = classify(group, sigma, opts);
    match v.status {
        VerdictStatus::ProvenTypeD => {
            infinite(format!("type D via {}", v.lemma_tag.unwrap_or_default()))
        }
        VerdictStatus::InExceptionList => inconclusive(format!(
            "exception ({})",
            v.exception_case.map(exception_label).unwrap_or("?")
        )),
        VerdictStatus::Undetermined => inconclusive(v.detail.unwrap_or_else(|| "undetermined".into())),
    }
}
