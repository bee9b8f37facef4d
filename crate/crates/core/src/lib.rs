//! Computational tools for ray class fields of imaginary quadratic fields.
//!
//! The exact layer ([`cmfield`], [`quadforms`], [`ideals`]) handles field
//! invariants, form class groups and ideals of `O_K`. The analytic layer
//! ([`modfun`]) evaluates modular functions, Siegel and Fricke functions and
//! the Weber x-coordinates by q-series in MPFR arithmetic. [`classfield`]
//! and [`bounds`] combine both into class polynomials, Galois conjugates,
//! generator bounds and numerical certificates.

mod arith;
pub mod bounds;
pub mod classfield;
pub mod cmfield;
pub mod error;
pub mod ideals;
pub mod modfun;
pub mod quadforms;

pub use error::{Error, Result};
