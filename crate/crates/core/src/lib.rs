//! Exact rack-theoretic computations on the classical Weyl groups `W(B_n)` and
//! `W(D_n)`: conjugacy classes, type-D subrack decompositions with checkable
//! witnesses, juxtaposition, Yetter–Drinfeld braidings with Nichols-algebra
//! dimensions, and the Fomin–Kirillov style quadratic algebras.

pub mod cli_harness;
pub mod error;
pub mod fk_quadratic;
pub mod linalg;
pub mod conj_classes;
pub mod rack_core;
pub mod signed_weyl;
pub mod typed_classifier;
pub mod yd_nichols;

pub use error::{Error, Result};
pub use signed_weyl::{Group, GroupKind, SignedCycleType, SignedPermutation};
