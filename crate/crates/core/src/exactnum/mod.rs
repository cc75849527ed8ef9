//! Exact scalar substrate.
//!
//! Rationals with p-adic valuations, linear forms over a fixed set of
//! formal symbols, cyclotomic integers and Dirichlet characters, plus the
//! small amount of generic ring and linear-algebra machinery the other
//! modules share.

mod cyclotomic;
mod dirichlet;
mod laurent;
mod linalg;
mod linpoly;
mod rational;
mod ring;
mod series;

pub use cyclotomic::{cyclotomic_polynomial, euler_phi, CyclotomicInt};
pub use dirichlet::{gauss_sum, DirichletChar, DirichletGroup};
pub use laurent::{LaurentPoly, LaurentVar};
pub use linalg::{nullspace, Matrix};
pub use linpoly::{linpoly_eval, Assignment, LinPoly, Symbol};
pub use rational::{
    format_rational, int, is_prime, parse_rational, pow_int, rat, vp, vp_int, Rational,
    Valuation,
};
pub use ring::{pow, Module, Ring};
pub use series::Truncated;
