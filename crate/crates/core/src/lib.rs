//! Exact solution machinery for the Diophantine equation
//!
//! ```text
//! (X + 1/x)(Y + 1/y) = n
//! ```
//!
//! in positive integers with x, y ≥ 2, or equivalently for the congruence
//! a·x + b·y ≡ 1 (mod x·y) with ab = n. The crate enumerates all solutions
//! of a given n in exact integer arithmetic, cross-checks the enumerator
//! against two independent oracles, evaluates the proven upper and lower
//! bounds on the solution count f(n), and scales the whole apparatus to
//! multi-million ranges with a checkpointed parallel scanner.
//!
//! Organization:
//!
//! - [`solver`] — the [`solver::Solution`] quadruple, exhaustive
//!   enumeration, the congruence/quadruple oracles, and the elementary
//!   transformations that pump or reduce a solution along its k-chain.
//! - [`bounds`] — windowed divisor sums, the ρ/ρ′ count bounds, the g and
//!   h envelopes with the divisor-ratio champion search, and the
//!   exceedance predicate with exact-arithmetic fallback.
//! - [`families`] — closed forms for low-k counts and the constructive
//!   solution families (witness divisors, many-solution certificates, the
//!   two-squares family).
//! - [`scan`] — deterministic chunked range scans, checkpoint/resume, and
//!   the named verification suites.
//! - [`arith`] — factorization, segmented divisor-count sieve, modular
//!   inverse, primality.
//! - [`exact`] — directed-rounding rational intervals for decisions too
//!   close to call in f64.
//!
//! Bound formulas are generic over the scalar via [`Real`], so the same
//! expression evaluates in fast f64 (see [`DefaultReal`]) and in exact
//! interval arithmetic (see [`ExactReal`]).

pub mod arith;
pub mod bounds;
mod error;
pub mod exact;
pub mod families;
mod real;
pub mod scan;
pub mod solver;

pub use error::{Error, Result};
pub use real::Real;

/// The fast scalar used by default throughout the f64 bound evaluations.
pub type DefaultReal = f64;

/// The exact scalar used when an f64 comparison is borderline: a rational
/// interval with 192 fractional bits of directed rounding.
pub type ExactReal = exact::RatInterval<192>;
