//! Exact computations around generalized binomial integers, partition
//! indexed polynomials, alpha-content moments of Young diagrams and the
//! transition / co-transition measures they define.
//!
//! All arithmetic is exact over [`arith::Rational`]. The [`verify`] module
//! turns each identity into a named, parameterized check.

pub mod arith;
pub mod coefficients;
pub mod error;
pub mod growth;
pub mod jack;
pub mod partitions;
pub mod shifted;
pub mod symfun;
pub mod verify;

pub use arith::{int, rat, Rational};
pub use error::{Error, Result};
pub use partitions::Partition;
