//! Exact computer algebra for quantized enveloping algebras of symmetrizable
//! Kac-Moody algebras and their quantum symmetric pair coideal subalgebras.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]
extern crate alloc;

pub mod algebra;
pub mod cartan;
pub mod classical;
pub mod error;
pub mod linalg;
pub mod maps;
pub mod param;
pub mod qsp;
pub mod scalar;
pub mod weyl;

pub use error::{Error, Result};
pub use param::{Coefficient, ParamPoly, Var};
pub use scalar::{GaussRat, Poly, Scalar};
