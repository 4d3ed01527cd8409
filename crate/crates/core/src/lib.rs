//! Exact power GCD and power LCM matrices on sets of positive integers.
//!
//! * [`exact`]: big-integer/rational scalars, determinants, inverses.
//! * [`arith`], [`structure`]: divisors, Möbius, gcd-closure, greatest-type
//!   divisors and condition G.
//! * [`smith`]: power matrices, the alpha/beta/c coefficient tables,
//!   product formulas for determinants and the structural inverses.
//! * [`divisibility`]: quotient certificates for `A | B` in `M_n(Z)` and the
//!   supporting divisibility predicates.
//! * [`lab`]: the `{1, u, v, uvw}` family, fixed LCM examples and the
//!   exhaustive search over gcd-closed sets.
//! * [`cli`]: the command-line front end.

pub mod arith;
pub mod cli;
pub mod divisibility;
pub mod error;
pub mod exact;
pub mod lab;
pub mod smith;
pub mod structure;

pub use error::{Error, Result};
