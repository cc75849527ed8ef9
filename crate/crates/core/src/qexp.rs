//! Truncated q-expansions over cyclotomic fields: the two-parameter
//! Eisenstein family attached to a pair of Dirichlet characters, `U_p`,
//! and powers of `theta = q d/dq`, including negative ones on p-depleted
//! forms.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::exactnum::{
    euler_phi, int, is_prime, pow_int, vp, CyclotomicInt, DirichletChar, DirichletGroup, Rational,
    Valuation,
};
use crate::{Error, Result};

/// `sum_{n=0}^{N_q} a_n q^n` with `a_0` kept separately.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QExp {
    prime: u64,
    constant: CyclotomicInt,
    /// `coeffs[n - 1] = a_n` for `1 <= n <= N_q`.
    coeffs: Vec<CyclotomicInt>,
    depleted: bool,
    /// Weight label carried along for reporting, if known.
    pub weight: Option<i64>,
}

fn check_denominators(p: u64, x: &CyclotomicInt) -> Result<()> {
    for c in x.coords() {
        if let Valuation::Finite(v) = vp(&Rational::from_integer(c.denom().clone()), p) {
            if v > 0 {
                return Err(Error::NonIntegralEntry(format!("{x} has a denominator divisible by {p}")));
            }
        }
    }
    Ok(())
}

impl QExp {
    /// Builds a q-expansion; `coeffs[n - 1]` is `a_n`. The depletion flag is
    /// read off the data.
    pub fn new(prime: u64, constant: CyclotomicInt, coeffs: Vec<CyclotomicInt>) -> Result<Self> {
        if !is_prime(prime) {
            return Err(Error::NotPrime(prime));
        }
        check_denominators(prime, &constant)?;
        for c in &coeffs {
            check_denominators(prime, c)?;
        }
        let depleted = constant.is_zero()
            && coeffs.iter().enumerate().all(|(i, c)| (i as u64 + 1) % prime != 0 || c.is_zero());
        Ok(QExp { prime, constant, coeffs, depleted, weight: None })
    }

    pub fn from_rationals(prime: u64, constant: Rational, coeffs: &[Rational]) -> Result<Self> {
        let lift = |x: &Rational| CyclotomicInt::from_rational(1, x.clone());
        Self::new(prime, lift(&constant), coeffs.iter().map(lift).collect())
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn precision(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_depleted(&self) -> bool {
        self.depleted
    }

    pub fn constant_term(&self) -> &CyclotomicInt {
        &self.constant
    }

    /// `a_n`; `n = 0` is the constant term. Panics beyond the precision.
    pub fn coeff(&self, n: usize) -> &CyclotomicInt {
        if n == 0 {
            &self.constant
        } else {
            &self.coeffs[n - 1]
        }
    }

    pub fn coeffs(&self) -> &[CyclotomicInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.constant.is_zero() && self.coeffs.iter().all(CyclotomicInt::is_zero)
    }

    /// Sum truncated to the smaller precision.
    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.prime != other.prime {
            return Err(Error::Incompatible(format!("primes {} and {}", self.prime, other.prime)));
        }
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.add(b)).collect();
        Self::new(self.prime, self.constant.add(&other.constant), coeffs)
    }

    pub fn scale(&self, k: &CyclotomicInt) -> Result<Self> {
        let mut out = Self::new(self.prime, self.constant.mul(k), self.coeffs.iter().map(|c| c.mul(k)).collect())?;
        out.weight = self.weight;
        Ok(out)
    }

    /// First index `n` (from 0) where the two expansions differ, within the
    /// common precision.
    pub fn first_difference(&self, other: &Self) -> Option<usize> {
        let n = self.precision().min(other.precision());
        (0..=n).find(|&i| self.coeff(i) != other.coeff(i))
    }

    /// Coordinates of each `a_n` in the power basis of `Z_(p)[zeta]`,
    /// reduced to `[0, p^np)`.
    pub fn reduce_mod_p_power(&self, np: u32) -> Result<Vec<Vec<BigInt>>> {
        let modulus = BigInt::from(self.prime).pow(np);
        let reduce = |c: &Rational| -> Result<BigInt> {
            let den = c.denom().mod_floor(&modulus);
            let g = den.extended_gcd(&modulus);
            if !g.gcd.abs().is_one() {
                return Err(Error::NonIntegralEntry(format!("{c} mod {}^{np}", self.prime)));
            }
            Ok((c.numer() * g.x).mod_floor(&modulus))
        };
        (0..=self.precision())
            .map(|n| self.coeff(n).coords().iter().map(reduce).collect())
            .collect()
    }
}

/// Data of the Eisenstein family `E(kappa1, kappa2; chi1, chi2)` at `p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EisensteinSpec {
    pub kappa1: i64,
    pub kappa2: i64,
    pub chi1: DirichletChar,
    pub chi2: DirichletChar,
    pub p: u64,
    pub n_q: usize,
}

impl EisensteinSpec {
    pub fn trivial(kappa1: i64, kappa2: i64, p: u64, n_q: usize) -> Self {
        EisensteinSpec { kappa1, kappa2, chi1: DirichletChar::trivial(1), chi2: DirichletChar::trivial(1), p, n_q }
    }

    /// `kappa1(-1) kappa2(-1) = -chi(-1)` with `chi = chi1 chi2`; outside this
    /// parity the family is identically zero in the normalisation it comes
    /// from, although the divisor sum below is not.
    pub fn parity_condition(&self) -> bool {
        let sign = if (self.kappa1 + self.kappa2).rem_euclid(2) == 0 { 1 } else { -1 };
        sign == -(self.chi1.parity() * self.chi2.parity())
    }

    pub fn weight(&self) -> i64 {
        self.kappa1 + self.kappa2 + 1
    }
}

/// `a_n = sum_{de = n, p !| d, p !| e} chi1(d) chi2(e) d^kappa1 e^kappa2`, `a_0 = 0`.
pub fn eisenstein(spec: &EisensteinSpec) -> Result<QExp> {
    let p = spec.p;
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    for chi in [&spec.chi1, &spec.chi2] {
        if chi.modulus() % p == 0 {
            return Err(Error::ModulusDivisibleByP { modulus: chi.modulus(), p });
        }
    }
    if spec.n_q == 0 {
        return Err(Error::InsufficientPrecision { needed: 1, have: 0 });
    }
    let (o1, o2) = (spec.chi1.order(), spec.chi2.order());
    let l = o1.lcm(&o2);
    let n = spec.n_q;
    let mut sums = vec![vec![Rational::zero(); l as usize]; n];
    let powers = |k: i64| -> Vec<Rational> { (0..=n as i64).map(|m| if m == 0 { int(0) } else { pow_int(&int(m), k) }).collect() };
    let (pd, pe) = (powers(spec.kappa1), powers(spec.kappa2));
    for d in (1..=n).filter(|d| *d as u64 % p != 0) {
        let Some(x) = spec.chi1.exponent(d as i64) else { continue };
        for e in (1..=n / d).filter(|e| *e as u64 % p != 0) {
            let Some(y) = spec.chi2.exponent(e as i64) else { continue };
            let k = ((x * (l / o1) + y * (l / o2)) % l) as usize;
            sums[d * e - 1][k] += &pd[d] * &pe[e];
        }
    }
    let coeffs = sums.into_iter().map(|s| CyclotomicInt::from_power_sums(l, s)).collect();
    let mut f = QExp::new(p, CyclotomicInt::zero(l), coeffs)?;
    f.weight = Some(spec.weight());
    Ok(f)
}

/// `a_n -> a_{np}`.
pub fn u_p(f: &QExp) -> Result<QExp> {
    let p = f.prime as usize;
    if f.precision() < p {
        return Err(Error::InsufficientPrecision { needed: p, have: f.precision() });
    }
    let m = f.precision() / p;
    let coeffs = (1..=m).map(|n| f.coeff(n * p).clone()).collect();
    let mut out = QExp::new(f.prime, f.constant.clone(), coeffs)?;
    out.weight = f.weight;
    Ok(out)
}

/// `theta^k`: `a_n -> n^k a_n`.
pub fn theta(f: &QExp, k: i64) -> Result<QExp> {
    if k < 0 && !f.depleted {
        return Err(Error::NotDepleted);
    }
    let constant = if k == 0 { f.constant.clone() } else { CyclotomicInt::zero(f.constant.order()) };
    let coeffs = f
        .coeffs
        .iter()
        .enumerate()
        .map(|(i, c)| if c.is_zero() { c.clone() } else { c.scale(&pow_int(&int(i as i64 + 1), k)) })
        .collect();
    let mut out = QExp::new(f.prime, constant, coeffs)?;
    out.weight = f.weight.map(|w| w + 2 * k);
    Ok(out)
}

/// Outcome of [`theta_identity_check`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThetaCheck {
    pub holds: bool,
    pub first_discrepancy: Option<usize>,
}

/// `theta^{-(1+t)} E(t+1, 0) = E(0, -1-t)` up to `q^{n_q}`.
pub fn theta_identity_check(t: i64, chi1: &DirichletChar, chi2: &DirichletChar, p: u64, n_q: usize) -> Result<ThetaCheck> {
    if t < 0 {
        return Err(Error::Precondition(format!("t = {t} must be >= 0")));
    }
    let spec = |k1, k2| EisensteinSpec { kappa1: k1, kappa2: k2, chi1: chi1.clone(), chi2: chi2.clone(), p, n_q };
    let lhs = theta(&eisenstein(&spec(t + 1, 0))?, -(1 + t))?;
    let rhs = eisenstein(&spec(0, -1 - t))?;
    let first = lhs.first_difference(&rhs);
    Ok(ThetaCheck { holds: first.is_none(), first_discrepancy: first })
}

/// Character orthogonality applied to the family with `chi2` trivial:
/// `sum_chi conj(chi)(a) a_n(E(k1, k2; chi, 1)) = phi(N) sum_{de = n, d = a mod N, p !| de} d^k1 e^k2`
/// for every `n <= n_q`, with the right side computed directly.
pub fn orthogonality_check(modulus: u64, a: i64, kappa1: i64, kappa2: i64, p: u64, n_q: usize) -> Result<bool> {
    let group = DirichletGroup::new(modulus);
    let mut total: Option<QExp> = None;
    for chi in group.characters() {
        let spec = EisensteinSpec { kappa1, kappa2, chi1: chi.clone(), chi2: DirichletChar::trivial(1), p, n_q };
        let term = eisenstein(&spec)?.scale(&chi.conj().value(a))?;
        total = Some(match total {
            None => term,
            Some(acc) => acc.add(&term)?,
        });
    }
    let total = total.ok_or_else(|| Error::Precondition(format!("no characters modulo {modulus}")))?;
    let phi = int(euler_phi(modulus) as i64);
    for n in 1..=n_q {
        let mut direct = int(0);
        for d in (1..=n).filter(|d| n % d == 0) {
            let e = n / d;
            if (d as u64) % p != 0 && (e as u64) % p != 0 && (d as i64 - a).rem_euclid(modulus as i64) == 0 {
                direct += pow_int(&int(d as i64), kappa1) * pow_int(&int(e as i64), kappa2);
            }
        }
        if *total.coeff(n) != CyclotomicInt::from_rational(1, direct * &phi) {
            return Ok(false);
        }
    }
    Ok(true)
}
