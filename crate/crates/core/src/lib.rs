//! Exact dimensions of cohomology groups of pluricanonical and
//! anti-pluricanonical bundles on Hirzebruch surfaces and on blow-ups of
//! projective space at finitely many points.
//!
//! Every dimension is an exact integer: ranks are computed over the
//! rationals with fraction-free elimination on arbitrary-precision integers.

pub mod blowup;
pub mod error;
pub mod exact_linalg;
pub mod family;
pub mod hirzebruch;
pub mod selfcheck;
pub mod surface_invariants;

pub use error::{Error, Result};
pub use exact_linalg::{binomial, rank, vandermonde_det, BigRat, RatMatrix};
