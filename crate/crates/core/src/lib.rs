//! Classical reciprocity laws over Q, Q(i) and Q(ω), computed exactly.
//!
//! * [`characters`]: the quadratic characters `λ_p`, `λ_4`, `λ_8`.
//! * [`hilbert`]: Hilbert symbols at every place of Q and the product formula.
//! * [`padic`]: truncated p-adic numbers, Hensel square roots and a brute
//!   force solvability oracle for `ax² + by² = 1`.
//! * [`residue`]: Gaussian and Eisenstein integers with cubic and quartic
//!   residue symbols.
//! * [`verify`]: exhaustive verification suites shared by the CLI.

pub mod arith;
pub mod characters;
pub mod cli;
pub mod error;
pub mod hilbert;
pub mod padic;
pub mod residue;
pub mod verify;

pub use arith::{Factorization, Place, Rational};
pub use characters::Sign;
pub use error::{Error, Result};
