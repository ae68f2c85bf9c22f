//! A laboratory for the divisibility theory of the naturals and of
//! commutative cancellative monoids where it breaks down.
//!
//! * [`monoid`]: the naturals, congruence monoids and the nonnegative
//!   `a + b√d` semiring, with exact arithmetic and bounded enumeration.
//! * [`euclid`]: the subtractive Euclidean algorithm, its loop invariants,
//!   Bézout certificates, the porism and Euclid's lemma.
//! * [`proportion`]: Pythagorean proportion versus fraction equality, and
//!   executable checks of alternando, composition, least pairs and the
//!   gcd repair of transitivity.
//! * [`factorization`]: irreducibles, factorizations, algebraic gcds and
//!   property surveys.
//! * [`dsl`] and [`report`]: the monoid specification language, element
//!   literals and the JSON report format used by the CLI.

pub mod cli;
pub mod dsl;
pub mod error;
pub mod euclid;
pub mod factorization;
pub mod monoid;
pub mod proportion;
pub mod report;
mod universe;

pub use error::{Error, Result};
pub use monoid::{Element, Limits, MonoidDescriptor, Norm, RawElement};
