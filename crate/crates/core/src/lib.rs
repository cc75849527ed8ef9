//! Exact computations for weights, Hecke operators, flag-variety geometry,
//! branching laws and p-adic Eisenstein q-expansions attached to `GSp(4)`
//! and its subgroup `H = GL(2) x_{GL(1)} GL(2)`.
//!
//! Everything here is exact: scalars are arbitrary-precision rationals,
//! linear polynomials in a fixed set of formal symbols, or elements of
//! cyclotomic rings. The crate is `no_std` and only needs `alloc`.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

mod error;

pub mod exactnum;
pub mod flaggeo;
pub mod hecke;
pub mod qexp;
pub mod repbranch;
pub mod rootdata;

pub use error::{Error, Result};
pub use exactnum::{CyclotomicInt, DirichletChar, LinPoly, Rational, Symbol, Valuation};
pub use rootdata::{WeylElt, Weight};
