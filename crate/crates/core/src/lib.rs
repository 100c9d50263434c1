//! Embeddings of unitriangular groups `UT_n(F_p)` into larger unitriangular
//! groups in which every element acquires a `p^s`-th root, together with the
//! wreath-product embedding `UT_n(F_p) wr C_q -> UT_m(F_p)` and nilpotency
//! class computations that show `m = (n-1)q + 1` cannot be lowered.

pub mod cli;
pub mod embeddings;
pub mod error;
pub mod field;
pub mod nilpotency;
pub mod report;
pub mod roots;
pub mod text;
pub mod unitriangular;
pub mod wreath;

pub use error::{Error, Result};
pub use field::{FpElement, Prime};
pub use unitriangular::UTMatrix;
