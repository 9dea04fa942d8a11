//! Pascal's triangle and Pascal's pyramid modulo a prime.
//!
//! The crate computes the integers whose base-`p` digits are rows of
//! Pascal's triangle mod `p`, the Nim-sum step map `m ⊕_p pm` that generates
//! them, the sets and permutations that map induces, the automata and
//! linear representations recognising them, and the trinomial analogue
//! built by a three-dimensional substitution.
//!
//! Most quantities are exposed twice: once through a closed form and once
//! through a direct computation, and the test suites check that both agree.
//!
//! Modules:
//! - [`basep`]: digit words, evaluation, Nim-sum, digit statistics, `μ_{a,b}`.
//! - [`pascal`]: Lucas' theorem, rows mod `p`, `t_{p,n}` and its variants.
//! - [`poly`]: the polynomials `P_n`, `Q_n` and their difference `κ_{p,n}`.
//! - [`nim`]: the step map `N_p`, its inverse, evil/odious numbers, Gray codes.
//! - [`automata`]: synchronized-relation DFAs, minimization, Cobham morphism,
//!   and the exact linear representation of `N`.
//! - [`summatory`]: summatory functions of evil numbers and of `N`.
//! - [`pyramid`]: trinomial coefficients mod `p` and the cube substitution.

pub mod automata;
pub mod basep;
mod error;
pub mod nim;
pub mod pascal;
pub mod poly;
pub mod pyramid;
pub mod report;
pub mod summatory;

pub use basep::{DigitWord, Prime};
pub use error::{Error, Result};
pub use report::Report;

pub use num_bigint::{BigInt, BigUint};
