use alloc::vec::Vec;

use super::rational::Rational;
use super::ring::{Module, Ring};

/// Power series `sum_{k <= N} a_k eps^k` over `R`, truncated at `eps^{N+1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct Truncated<R, const N: usize> {
    coeffs: Vec<R>,
}

impl<R: Ring, const N: usize> Truncated<R, N> {
    pub fn from_coeffs(mut coeffs: Vec<R>) -> Self {
        coeffs.resize(N + 1, R::zero());
        coeffs.truncate(N + 1);
        Truncated { coeffs }
    }

    pub fn constant(c: R) -> Self {
        Self::from_coeffs(alloc::vec![c])
    }

    /// The formal variable `eps`.
    pub fn eps() -> Self {
        Self::from_coeffs(alloc::vec![R::zero(), R::one()])
    }

    pub fn coeff(&self, k: usize) -> &R {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }
}

impl<R: Ring, const N: usize> Module for Truncated<R, N> {
    fn zero() -> Self {
        Self::from_coeffs(Vec::new())
    }
    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(R::is_zero)
    }
    fn add(&self, other: &Self) -> Self {
        Truncated { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.add(b)).collect() }
    }
    fn scale(&self, k: &Rational) -> Self {
        Truncated { coeffs: self.coeffs.iter().map(|a| a.scale(k)).collect() }
    }
}

impl<R: Ring, const N: usize> Ring for Truncated<R, N> {
    fn one() -> Self {
        Self::constant(R::one())
    }
    fn mul(&self, other: &Self) -> Self {
        let mut out = alloc::vec![R::zero(); N + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(N + 1 - i) {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Truncated { coeffs: out }
    }
    fn from_rational(x: Rational) -> Self {
        Self::constant(R::from_rational(x))
    }
    /// `a0^{-1} sum_k (-u)^k` with `u = a0^{-1} f - 1`, which has no constant term.
    fn inverse(&self) -> Option<Self> {
        let inv0 = self.coeffs[0].inverse()?;
        let u = self.scale_ring(&inv0).sub(&Self::one());
        let mut acc = Self::one();
        let mut term = Self::one();
        for _ in 0..N {
            term = term.mul(&u.neg());
            acc = acc.add(&term);
        }
        Some(acc.scale_ring(&inv0))
    }
    fn is_nilpotent(&self) -> bool {
        self.coeffs[0].is_nilpotent()
    }
}

impl<R: Ring, const N: usize> Truncated<R, N> {
    fn scale_ring(&self, k: &R) -> Self {
        Truncated { coeffs: self.coeffs.iter().map(|a| a.mul(k)).collect() }
    }
}
