//! Exact computation in the multimode Weyl algebra with involution.
//!
//! The crate is organized in layers:
//!
//! * [`scalar`]: the coefficient field Q(i, sqrt2) and its ordered real
//!   subfield Q(sqrt2), all arithmetic exact over big rationals.
//! * [`poly`]: dense univariate polynomials over an exact field, with
//!   Euclidean division, gcd, Yun squarefree splitting and Sturm chains.
//! * [`weyl`]: elements of the Weyl algebra in normal form, products via a
//!   closed per-mode convolution, adjoints, degree, the number operator.
//! * [`symbol`]: top-order symbols and an exact nonvanishing check on the
//!   unit circle (single mode) or a sampled check on spheres (several modes).
//! * [`localized`]: the auxiliary algebra obtained by inverting the shifted
//!   number operator, with exact rational coefficient functions.
//! * [`relations`]: the catalogue of identities the localized generators
//!   satisfy, each one verified by expanding both sides.
//! * [`xgen`]: words in the bounded generators and a constructive membership
//!   test for the two-sided ideal generated by the resolvent.
//! * [`factor`]: factorization of resolvent-compressed monomial words into
//!   products of bounded generators.
//! * [`fock`]: the standard representation on occupation-number states,
//!   exact or floating point, with compressions and minimal eigenvalues.
//! * [`certs`]: polynomials in the number operator, membership in the cone
//!   of weighted falling-factorial squares, and search plus independent
//!   verification of positivity certificates.
//! * [`expr`]: a small expression language used by the command line tools.

pub mod certs;
pub mod expr;
pub mod factor;
pub mod fock;
pub mod localized;
pub mod poly;
pub mod relations;
pub mod scalar;
pub mod symbol;
pub mod weyl;
pub mod xgen;

pub use scalar::{Real2, Scalar};
pub use weyl::WeylElement;
