//! Yetter–Drinfeld modules over finite groups, their braidings, quantum
//! symmetrizers and graded Nichols-algebra dimensions, plus the scalar screens for
//! juxtaposed classes.

pub mod braided;
pub mod cyclotomic;
pub mod rep;
pub mod screens;
pub mod yd;

pub use braided::{nichols_graded_dims, symmetrizer, BraidedVectorSpace, NicholsDims, Symmetrizer, DEFAULT_WORD_BUDGET};
pub use cyclotomic::CycScalar;
pub use rep::{linear_characters, CentralizerRep, Mat};
pub use screens::{case_table_screen, q_screen, classification_screen, TableCase, TableInput, ScreenVerdict};
pub use yd::{build_yd_module, psi_embedding, reshuffled_class, PsiReport, YdModule};
