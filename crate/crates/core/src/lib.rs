//! Quadrics over finite fields and order-2 projective Reed–Muller codes.
//!
//! The crate covers exact GF(q) arithmetic, rational points of P^N,
//! classification and canonical forms of quadratic forms, the code
//! PRM_q(2, N) with three minimality testers, and exhaustive counting of
//! minimal codewords.

pub mod bitset;
pub mod census;
pub mod error;
pub mod expr;
pub mod gf;
pub mod linalg;
pub mod par;
pub mod prm;
pub mod projspace;
pub mod quadric;

pub use error::{Error, Result};
pub use par::Exec;
