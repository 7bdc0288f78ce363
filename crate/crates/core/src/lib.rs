#![no_std]
#![forbid(unsafe_code)]

//! Exact computer algebra over the two-element field.
//!
//! The crate is organized bottom-up:
//!
//! - [`f2`]: dense bit-packed linear algebra and canonical subspaces.
//! - [`quadratic`]: quadratic data `(V, R)`, the quadratic algebra and
//!   coalgebra degree by degree, the quadratic dual and degree-one quotients.
//! - [`homology`]: the reduced bar complex, bigraded `Tor` tables and bounded
//!   Koszulity certificates.
//! - [`hopf`]: the tensor coalgebra with the shuffle product, divided power
//!   algebras, primitives and the truncated-polynomial presentation of
//!   divided powers on a line.
//! - [`milnor`]: mod-2 Milnor K-theory presentations of finite fields and of
//!   explicit square-class data.
//! - [`tatecheck`]: validators for bigraded hom tables.
//! - [`weight`]: weight-graded comodules, weight filtrations and the fiber
//!   functor.
//!
//! Everything is pure and allocation-only; no IO happens here. File formats
//! and the command-line front end live in the `koszulctl` crate.

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod error;
pub mod f2;
pub mod homology;
pub mod hopf;
pub mod milnor;
pub mod quadratic;
pub mod tatecheck;
pub mod weight;

pub use crate::error::{Error, Result};
pub use crate::f2::{BitMatrix, BitVec, Subspace};
pub use crate::homology::{koszul_certificate, tor_table, KoszulVerdict, TorTable};
pub use crate::hopf::Coalgebra;
pub use crate::quadratic::{GradedDims, Limits, QuadraticPresentation};
