//! Exact computation of Betti numbers of smooth models of quiver moduli.
//!
//! The crate provides four independent engines for the Poincaré polynomial of
//! the moduli space of stable framed representations (a recursion, an explicit
//! summation, a twisted generating-function inversion, and — for trivial
//! stability — a weighted multipartition count), together with the explicit
//! cell decomposition of Hilbert schemes of path algebras and the bijection
//! between cells and multipartitions. All arithmetic is exact: big-integer
//! polynomial coefficients and reduced rational functions, no floating point.

pub mod betti;
pub mod cells;
pub mod error;
pub mod hilbert;
pub mod parse;
pub mod qpoly;
pub mod quiver;
pub mod selftest;

pub use error::{Error, Result};
pub use qpoly::{PolyQ, RationalFunctionQ};
pub use quiver::{DimVector, Quiver, Stability};
