//! qcongr: an exact-arithmetic verification engine for q-supercongruences.
//!
//! The crate checks congruences between truncated basic hypergeometric sums
//! and their closed forms modulo products of cyclotomic polynomials, entirely
//! in exact arithmetic, together with the classical (q -> 1) p-adic
//! supercongruences they specialize to. The pieces:
//!
//! - [`poly`] / [`ratfunc`] / [`factored`]: the arithmetic kernel — dense
//!   univariate polynomials over `Q` or `Q(a)`, reduced rational functions,
//!   and factored-denominator fractions for large truncated sums.
//! - [`qseries`]: builders for q-integers, q-shifted factorials, the summands
//!   and closed forms of every built-in claim.
//! - [`congruence`]: moduli and the congruence decision procedure.
//! - [`padic`]: exact rational sums, p-adic valuations, the Morita p-adic
//!   Gamma function, and the classical supercongruence checks.
//! - [`claims`]: the registry of named, parameterized claims and the
//!   verification entry point.
//! - [`dsl`]: a small claim-specification language (`.qcl` files).


pub mod claims;
pub mod congruence;

pub mod dsl;
pub mod factored;
pub mod field;
pub mod modeval;

pub mod padic;
pub mod poly;
pub mod qseries;
pub mod ratfunc;

pub use field::{Field, ParamField};
pub use poly::Poly;
pub use ratfunc::RatFunc;

/// Convenience alias: the rationals.
pub type Rational = num_rational::BigRational;
