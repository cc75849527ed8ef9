use core::fmt::Debug;

use num_traits::{One, Zero};

use super::rational::Rational;

/// A module over the rationals. Enough structure for linear substitutions
/// such as conjugating a torus element by a constant matrix.
pub trait Module: Clone + PartialEq + Debug {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn scale(&self, k: &Rational) -> Self;

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-<Rational as One>::one()))
    }

    fn neg(&self) -> Self {
        self.scale(&-<Rational as One>::one())
    }
}

/// A commutative ring containing the rationals.
pub trait Ring: Module {
    fn one() -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn from_rational(x: Rational) -> Self;
    /// Inverse of a unit, `None` if the element is not (recognisably) a unit.
    fn inverse(&self) -> Option<Self>;
    /// Whether the element is nilpotent; formal substitutions into
    /// truncated power series need their constant term to be.
    fn is_nilpotent(&self) -> bool {
        self.is_zero()
    }
}

/// `x^e` for integer `e`; negative exponents need `x` to be a unit.
pub fn pow<R: Ring>(x: &R, e: i64) -> Option<R> {
    let base = if e < 0 { x.inverse()? } else { x.clone() };
    let mut n = e.unsigned_abs();
    let mut acc = R::one();
    let mut sq = base;
    while n > 0 {
        if n & 1 == 1 {
            acc = acc.mul(&sq);
        }
        n >>= 1;
        if n > 0 {
            sq = sq.mul(&sq);
        }
    }
    Some(acc)
}

impl Module for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn scale(&self, k: &Rational) -> Self {
        self * k
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn neg(&self) -> Self {
        -self
    }
}

impl Ring for Rational {
    fn one() -> Self {
        One::one()
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn from_rational(x: Rational) -> Self {
        x
    }
    fn inverse(&self) -> Option<Self> {
        (!Zero::is_zero(self)).then(|| self.recip())
    }
}

impl Module for super::LinPoly {
    fn zero() -> Self {
        super::LinPoly::zero()
    }
    fn is_zero(&self) -> bool {
        super::LinPoly::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn scale(&self, k: &Rational) -> Self {
        super::LinPoly::scale(self, k)
    }
}
