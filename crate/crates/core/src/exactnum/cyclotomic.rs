use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer;

use super::rational::{format_rational, Rational};
use super::ring::{Module, Ring};

pub fn euler_phi(n: u64) -> u64 {
    let mut result = n;
    let mut m = n;
    let mut d = 2;
    while d * d <= m {
        if m % d == 0 {
            while m % d == 0 {
                m /= d;
            }
            result -= result / d;
        }
        d += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

fn mobius(n: u64) -> i8 {
    let mut m = n;
    let mut sign = 1i8;
    let mut d = 2;
    while d * d <= m {
        if m % d == 0 {
            m /= d;
            if m % d == 0 {
                return 0;
            }
            sign = -sign;
        }
        d += 1;
    }
    if m > 1 {
        sign = -sign;
    }
    sign
}

/// Coefficients (constant term first) of the n-th cyclotomic polynomial,
/// via `prod_{d | n} (x^d - 1)^{mu(n/d)}`.
pub fn cyclotomic_polynomial(n: u64) -> Vec<i64> {
    assert!(n >= 1, "cyclotomic polynomial of order 0");
    let divisors: Vec<u64> = (1..=n).filter(|d| n % d == 0).collect();
    let mut poly: Vec<i128> = vec![1];
    for &d in &divisors {
        if mobius(n / d) == 1 {
            // multiply by x^d - 1
            let mut next = vec![0i128; poly.len() + d as usize];
            for (i, c) in poly.iter().enumerate() {
                next[i + d as usize] += c;
                next[i] -= c;
            }
            poly = next;
        }
    }
    for &d in &divisors {
        if mobius(n / d) == -1 {
            // exact division by x^d - 1: q_i = q_{i-d} - a_i, read from the top
            let d = d as usize;
            let deg = poly.len() - 1;
            let mut q = vec![0i128; deg - d + 1];
            let mut rem = poly.clone();
            for i in (0..q.len()).rev() {
                let c = rem[i + d];
                q[i] = c;
                rem[i + d] -= c;
                rem[i] += c;
            }
            debug_assert!(rem.iter().all(|c| *c == 0));
            poly = q;
        }
    }
    poly.into_iter().map(|c| c as i64).collect()
}

/// Element of `Q(zeta_N)` in the power basis `1, zeta, ..., zeta^{phi(N)-1}`,
/// reduced modulo the N-th cyclotomic polynomial.
#[derive(Debug, Clone)]
pub struct CyclotomicInt {
    order: u64,
    coords: Vec<Rational>,
}

fn small(xs: &[Rational]) -> Option<Vec<i128>> {
    xs.iter().map(|x| if x.is_integer() { i64::try_from(x.numer()).ok().map(i128::from) } else { None }).collect()
}

// Integral fast path. `None` on overflow.
fn reduce_small(mut poly: Vec<i128>, phi: &[i64]) -> Option<Vec<Rational>> {
    let deg = phi.len() - 1;
    for i in (deg..poly.len()).rev() {
        let lead = core::mem::take(&mut poly[i]);
        if lead == 0 {
            continue;
        }
        for (j, c) in phi[..deg].iter().enumerate() {
            if *c != 0 {
                let t = lead.checked_mul(i128::from(*c))?;
                poly[i - deg + j] = poly[i - deg + j].checked_sub(t)?;
            }
        }
    }
    poly.resize(deg, 0);
    Some(poly.into_iter().map(|c| Rational::from_integer(c.into())).collect())
}

fn reduce(mut poly: Vec<Rational>, phi: &[i64]) -> Vec<Rational> {
    if let Some(ints) = small(&poly) {
        if let Some(out) = reduce_small(ints, phi) {
            return out;
        }
    }
    let deg = phi.len() - 1;
    for i in (deg..poly.len()).rev() {
        let lead = core::mem::take(&mut poly[i]);
        if lead.is_zero() {
            continue;
        }
        for (j, c) in phi[..deg].iter().enumerate() {
            if *c != 0 {
                poly[i - deg + j] -= &lead * Rational::from_integer((*c).into());
            }
        }
    }
    poly.truncate(deg);
    poly.resize(deg, Rational::zero());
    poly
}

fn mul_small(x: &[i128], y: &[i128]) -> Option<Vec<i128>> {
    let mut prod = vec![0i128; x.len() + y.len() - 1];
    for (i, a) in x.iter().enumerate().filter(|(_, a)| **a != 0) {
        for (j, b) in y.iter().enumerate().filter(|(_, b)| **b != 0) {
            prod[i + j] = prod[i + j].checked_add(a.checked_mul(*b)?)?;
        }
    }
    Some(prod)
}

impl CyclotomicInt {
    pub fn zero(order: u64) -> Self {
        CyclotomicInt { order, coords: vec![Rational::zero(); euler_phi(order) as usize] }
    }

    pub fn from_rational(order: u64, x: Rational) -> Self {
        let mut out = Self::zero(order);
        out.coords[0] = x;
        out
    }

    pub fn one(order: u64) -> Self {
        Self::from_rational(order, Rational::one())
    }

    /// `zeta_order^k`.
    pub fn zeta_pow(order: u64, k: i64) -> Self {
        let mut sums = vec![Rational::zero(); order as usize];
        sums[k.rem_euclid(order as i64) as usize] = Rational::one();
        Self::from_power_sums(order, sums)
    }

    /// `sum_k sums[k] * zeta^k` for `k < order`.
    pub fn from_power_sums(order: u64, sums: Vec<Rational>) -> Self {
        assert_eq!(sums.len() as u64, order);
        let phi = cyclotomic_polynomial(order);
        CyclotomicInt { order, coords: reduce(sums, &phi) }
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Module::is_zero)
    }

    /// The rational value, if the element lies in `Q`.
    pub fn as_rational(&self) -> Option<&Rational> {
        self.coords[1..].iter().all(Module::is_zero).then(|| &self.coords[0])
    }

    /// Image under `zeta_N -> zeta_M^{M/N}` for `N | M`.
    pub fn embed(&self, order: u64) -> Self {
        assert!(order % self.order == 0, "{} does not divide {}", self.order, order);
        if order == self.order {
            return self.clone();
        }
        let step = (order / self.order) as usize;
        let mut sums = vec![Rational::zero(); order as usize];
        for (i, c) in self.coords.iter().enumerate() {
            sums[i * step] += c;
        }
        Self::from_power_sums(order, sums)
    }

    fn common(&self, other: &Self) -> (Self, Self) {
        let l = self.order.lcm(&other.order);
        (self.embed(l), other.embed(l))
    }

    pub fn add(&self, other: &Self) -> Self {
        let (a, b) = self.common(other);
        let coords = a.coords.iter().zip(&b.coords).map(|(x, y)| x + y).collect();
        CyclotomicInt { order: a.order, coords }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        CyclotomicInt { order: self.order, coords: self.coords.iter().map(|c| -c).collect() }
    }

    pub fn scale(&self, k: &Rational) -> Self {
        CyclotomicInt { order: self.order, coords: self.coords.iter().map(|c| c * k).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = self.common(other);
        let phi = cyclotomic_polynomial(a.order);
        if let (Some(x), Some(y)) = (small(&a.coords), small(&b.coords)) {
            if let Some(coords) = mul_small(&x, &y).and_then(|p| reduce_small(p, &phi)) {
                return CyclotomicInt { order: a.order, coords };
            }
        }
        let n = a.coords.len();
        let mut prod = vec![Rational::zero(); 2 * n - 1];
        for (i, x) in a.coords.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coords.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        CyclotomicInt { order: a.order, coords: reduce(prod, &phi) }
    }

    /// Complex conjugation `zeta -> zeta^{-1}`.
    pub fn conj(&self) -> Self {
        let n = self.order as usize;
        let mut sums = vec![Rational::zero(); n];
        for (i, c) in self.coords.iter().enumerate() {
            sums[(n - i % n) % n] += c;
        }
        Self::from_power_sums(self.order, sums)
    }

    /// Equality after embedding both sides into a common cyclotomic ring.
    pub fn equals(&self, other: &Self) -> bool {
        let (a, b) = self.common(other);
        a.coords == b.coords
    }
}

impl PartialEq for CyclotomicInt {
    fn eq(&self, other: &Self) -> bool {
        self.equals(other)
    }
}

impl Eq for CyclotomicInt {}

impl fmt::Display for CyclotomicInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match i {
                0 => f.write_str(&format_rational(c))?,
                1 => write!(f, "({})*z{}", format_rational(c), self.order)?,
                _ => write!(f, "({})*z{}^{}", format_rational(c), self.order, i)?,
            }
        }
        if first {
            f.write_str("0/1")?;
        }
        Ok(())
    }
}

impl Module for CyclotomicInt {
    fn zero() -> Self {
        CyclotomicInt::zero(1)
    }
    fn is_zero(&self) -> bool {
        CyclotomicInt::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        CyclotomicInt::add(self, other)
    }
    fn scale(&self, k: &Rational) -> Self {
        CyclotomicInt::scale(self, k)
    }
}

impl Ring for CyclotomicInt {
    fn one() -> Self {
        CyclotomicInt::one(1)
    }
    fn mul(&self, other: &Self) -> Self {
        CyclotomicInt::mul(self, other)
    }
    fn from_rational(x: Rational) -> Self {
        CyclotomicInt::from_rational(1, x)
    }
    /// Only rational units and roots of unity are recognised.
    fn inverse(&self) -> Option<Self> {
        if let Some(r) = self.as_rational() {
            return (!r.is_zero()).then(|| CyclotomicInt::from_rational(self.order, r.recip()));
        }
        let n = self.order as i64;
        (0..n)
            .find(|&k| *self == CyclotomicInt::zeta_pow(self.order, k))
            .map(|k| CyclotomicInt::zeta_pow(self.order, -k))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, rat};
    use proptest::prelude::*;

    #[test]
    fn known_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), [-1, 1]);
        assert_eq!(cyclotomic_polynomial(2), [1, 1]);
        assert_eq!(cyclotomic_polynomial(4), [1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), [1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(12), [1, 0, -1, 0, 1]);
        // first order with a coefficient of absolute value 2
        let phi105 = cyclotomic_polynomial(105);
        assert_eq!(phi105.len(), 49);
        assert_eq!(phi105[7], -2);
        for n in 1..120 {
            assert_eq!(cyclotomic_polynomial(n).len() as u64, euler_phi(n) + 1);
        }
    }

    #[test]
    fn big_integer_coordinates_fall_back() {
        // 2^80 does not fit the integral fast path
        let big = Rational::from_integer(num_bigint::BigInt::from(1u8) << 80u32);
        let x = CyclotomicInt::zeta_pow(5, 1).scale(&big);
        let sq = x.mul(&x);
        assert!(sq.equals(&CyclotomicInt::zeta_pow(5, 2).scale(&(&big * &big))));
        let half = CyclotomicInt::zeta_pow(5, 1).scale(&rat(1, 2));
        assert!(half.mul(&half).equals(&CyclotomicInt::zeta_pow(5, 2).scale(&rat(1, 4))));
    }

    #[test]
    fn roots_of_unity() {
        for n in [1u64, 2, 3, 4, 5, 8, 12, 15, 42] {
            let z = CyclotomicInt::zeta_pow(n, 1);
            let mut acc = CyclotomicInt::one(n);
            for _ in 0..n {
                acc = acc.mul(&z);
            }
            assert_eq!(acc, CyclotomicInt::one(n), "zeta_{n}^{n}");
            assert_eq!(z.conj().mul(&z), CyclotomicInt::one(n));
        }
        // 1 + zeta_3 + zeta_3^2 = 0
        let s = (0..3).fold(CyclotomicInt::zero(3), |a, k| a.add(&CyclotomicInt::zeta_pow(3, k)));
        assert!(s.is_zero());
        // zeta_4 embeds as zeta_12^3
        assert_eq!(CyclotomicInt::zeta_pow(4, 1).embed(12), CyclotomicInt::zeta_pow(12, 3));
        assert_eq!(CyclotomicInt::from_rational(5, rat(1, 2)).as_rational(), Some(&rat(1, 2)));
        assert_eq!(CyclotomicInt::zeta_pow(7, 3).inverse(), Some(CyclotomicInt::zeta_pow(7, 4)));
        assert_eq!(Ring::inverse(&CyclotomicInt::from_rational(3, int(4))), Some(CyclotomicInt::from_rational(3, rat(1, 4))));
    }

    fn element(order: u64) -> impl Strategy<Value = CyclotomicInt> {
        prop::collection::vec((-20i64..20, 1i64..5), order as usize).prop_map(move |v| {
            CyclotomicInt::from_power_sums(order, v.into_iter().map(|(n, d)| rat(n, d)).collect())
        })
    }

    fn triple() -> impl Strategy<Value = (CyclotomicInt, CyclotomicInt, CyclotomicInt)> {
        prop::sample::select(&[3u64, 5, 8, 12, 15][..])
            .prop_flat_map(|n| (element(n), element(n), element(n)))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(10_000))]

        #[test]
        fn ring_axioms((a, b, c) in triple()) {
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            prop_assert!(a.sub(&a).is_zero());
        }

        #[test]
        fn conjugation_is_involutive_automorphism((a, b, _c) in triple()) {
            prop_assert_eq!(a.conj().conj(), a.clone());
            prop_assert_eq!(a.mul(&b).conj(), a.conj().mul(&b.conj()));
            prop_assert_eq!(a.add(&b).conj(), a.conj().add(&b.conj()));
        }
    }
}
