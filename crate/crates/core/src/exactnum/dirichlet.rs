use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;
use num_traits::Zero;

use super::cyclotomic::{euler_phi, CyclotomicInt};
use super::rational::Rational;
use crate::{Error, Result};

/// One cyclic factor of `(Z/N)^*`, seen through the prime power `q | N`
/// it lives on: `log[a mod q]` is the exponent of `a` along this factor.
#[derive(Debug, Clone)]
struct CyclicFactor {
    q: u64,
    order: u64,
    log: Vec<Option<u64>>,
}

/// The group of Dirichlet characters modulo `N`, with a fixed basis of
/// `(Z/N)^*` obtained from the prime-power decomposition.
#[derive(Debug, Clone)]
pub struct DirichletGroup {
    modulus: u64,
    factors: Vec<CyclicFactor>,
}

fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        let mut e = 0;
        while n % d == 0 {
            n /= d;
            e += 1;
        }
        if e > 0 {
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn cyclic_log(q: u64, g: u64, order: u64) -> Vec<Option<u64>> {
    let mut log = vec![None; q as usize];
    let mut x = 1 % q;
    for k in 0..order {
        log[x as usize] = Some(k);
        x = mul_mod(x, g, q);
    }
    log
}

fn primitive_root(q: u64) -> u64 {
    let phi = euler_phi(q);
    (2..q)
        .find(|&g| {
            if g.gcd(&q) != 1 {
                return false;
            }
            let mut x = g;
            for k in 1..phi {
                if x == 1 {
                    return k == phi;
                }
                x = mul_mod(x, g, q);
            }
            x == 1
        })
        .unwrap_or(1)
}

impl DirichletGroup {
    pub fn new(modulus: u64) -> Self {
        assert!(modulus >= 1, "modulus must be positive");
        let mut factors = Vec::new();
        for (prime, e) in factorize(modulus) {
            let q = prime.pow(e);
            if prime == 2 {
                if e == 2 {
                    factors.push(CyclicFactor { q, order: 2, log: cyclic_log(q, 3, 2) });
                } else if e >= 3 {
                    // a = (-1)^s 5^k mod 2^e
                    let order5 = q / 4;
                    let mut sign_log = vec![None; q as usize];
                    let mut five_log = vec![None; q as usize];
                    let mut x = 1;
                    for k in 0..order5 {
                        sign_log[x as usize] = Some(0);
                        five_log[x as usize] = Some(k);
                        sign_log[(q - x) as usize] = Some(1);
                        five_log[(q - x) as usize] = Some(k);
                        x = mul_mod(x, 5, q);
                    }
                    factors.push(CyclicFactor { q, order: 2, log: sign_log });
                    factors.push(CyclicFactor { q, order: order5, log: five_log });
                }
            } else {
                let order = euler_phi(q);
                let g = primitive_root(q);
                factors.push(CyclicFactor { q, order, log: cyclic_log(q, g, order) });
            }
        }
        DirichletGroup { modulus, factors }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Orders of the cyclic factors of `(Z/N)^*` in basis order.
    pub fn factor_orders(&self) -> Vec<u64> {
        self.factors.iter().map(|f| f.order).collect()
    }

    pub fn len(&self) -> usize {
        self.factors.iter().map(|f| f.order as usize).product()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// The character with the given exponents on the basis generators.
    pub fn character(&self, exponents: &[u64]) -> DirichletChar {
        assert_eq!(exponents.len(), self.factors.len());
        let exponent = self.factors.iter().fold(1u64, |acc, f| acc.lcm(&f.order));
        let n = self.modulus;
        let values = (0..n)
            .map(|a| {
                if a.gcd(&n) != 1 && n != 1 {
                    return None;
                }
                let mut e = 0u64;
                for (f, x) in self.factors.iter().zip(exponents) {
                    let l = f.log[(a % f.q) as usize].expect("unit has a logarithm");
                    e += (x % f.order) * l % f.order * (exponent / f.order);
                }
                Some(e % exponent)
            })
            .collect();
        DirichletChar::from_exponents(n, exponent, values)
    }

    /// Character with index `j` in mixed radix, first factor fastest.
    pub fn character_by_index(&self, mut j: usize) -> Option<DirichletChar> {
        if j >= self.len() {
            return None;
        }
        let mut exps = Vec::with_capacity(self.factors.len());
        for f in &self.factors {
            exps.push((j % f.order as usize) as u64);
            j /= f.order as usize;
        }
        Some(self.character(&exps))
    }

    pub fn characters(&self) -> impl Iterator<Item = DirichletChar> + '_ {
        (0..self.len()).filter_map(|j| self.character_by_index(j))
    }
}

/// A Dirichlet character modulo `N` with values in `mu_order`:
/// `chi(a) = zeta_order^{exps[a]}`, or zero when `gcd(a, N) > 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DirichletChar {
    modulus: u64,
    order: u64,
    exps: Vec<Option<u64>>,
}

impl DirichletChar {
    /// Builds a character from exponent data, reducing to its exact order.
    pub fn from_exponents(modulus: u64, order: u64, exps: Vec<Option<u64>>) -> Self {
        assert_eq!(exps.len() as u64, modulus);
        let g = exps.iter().flatten().fold(order, |g, e| g.gcd(e));
        let g = if g == 0 { order } else { g };
        DirichletChar {
            modulus,
            order: order / g,
            exps: exps.into_iter().map(|e| e.map(|e| e / g)).collect(),
        }
    }

    pub fn trivial(modulus: u64) -> Self {
        let exps = (0..modulus)
            .map(|a| (a.gcd(&modulus) == 1 || modulus == 1).then_some(0))
            .collect();
        DirichletChar { modulus, order: 1, exps }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Order of the character (its values lie in `mu_order`).
    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn exponent(&self, a: i64) -> Option<u64> {
        self.exps[a.rem_euclid(self.modulus as i64) as usize]
    }

    pub fn value(&self, a: i64) -> CyclotomicInt {
        match self.exponent(a) {
            Some(e) => CyclotomicInt::zeta_pow(self.order, e as i64),
            None => CyclotomicInt::zero(self.order),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    /// `chi(-1)`, which is always `+1` or `-1`.
    pub fn parity(&self) -> i64 {
        match self.exponent(-1) {
            Some(0) => 1,
            Some(_) => -1,
            None => unreachable!("-1 is a unit"),
        }
    }

    pub fn conj(&self) -> Self {
        let o = self.order;
        DirichletChar {
            modulus: self.modulus,
            order: o,
            exps: self.exps.iter().map(|e| e.map(|e| (o - e) % o)).collect(),
        }
    }

    /// The smallest `d | N` such that `chi` is trivial on units `= 1 mod d`.
    pub fn conductor(&self) -> u64 {
        let n = self.modulus;
        (1..=n)
            .filter(|d| n % d == 0)
            .find(|&d| {
                (0..n)
                    .filter(|a| a % d == 1 % d)
                    .all(|a| matches!(self.exps[a as usize], Some(0) | None))
            })
            .unwrap_or(n)
    }

    pub fn is_primitive(&self) -> bool {
        self.conductor() == self.modulus
    }

    /// Product character modulo `lcm` of the two moduli.
    pub fn mul(&self, other: &Self) -> Self {
        let n = self.modulus.lcm(&other.modulus);
        let o = self.order.lcm(&other.order);
        let exps = (0..n as i64)
            .map(|a| match (self.exponent(a), other.exponent(a)) {
                (Some(x), Some(y)) => Some((x * (o / self.order) + y * (o / other.order)) % o),
                _ => None,
            })
            .collect();
        DirichletChar::from_exponents(n, o, exps)
    }

    /// The character viewed modulo a multiple `m` of its modulus.
    pub fn lift(&self, m: u64) -> Result<Self> {
        if m % self.modulus != 0 {
            return Err(Error::Precondition(alloc::format!(
                "{m} is not a multiple of {}",
                self.modulus
            )));
        }
        let exps = (0..m)
            .map(|a| if a.gcd(&m) == 1 || m == 1 { self.exps[(a % self.modulus) as usize] } else { None })
            .collect();
        Ok(DirichletChar::from_exponents(m, self.order, exps))
    }
}

/// A Gauss sum together with whether the character was primitive; the
/// norm identity `G(chi) G(conj chi) = chi(-1) N` only holds when it is.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaussSum {
    pub value: CyclotomicInt,
    pub primitive: bool,
}

/// `G(chi) = sum_{a mod N} chi(a) exp(2 pi i a / N)` computed in the
/// cyclotomic ring of order `lcm(N, order(chi))`.
pub fn gauss_sum(chi: &DirichletChar) -> GaussSum {
    let n = chi.modulus;
    let l = n.lcm(&chi.order);
    let mut sums = vec![Rational::zero(); l as usize];
    for a in 0..n {
        if let Some(e) = chi.exps[a as usize] {
            let k = (e * (l / chi.order) + a * (l / n)) % l;
            sums[k as usize] += Rational::from_integer(1.into());
        }
    }
    GaussSum { value: CyclotomicInt::from_power_sums(l, sums), primitive: chi.is_primitive() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::int;

    fn quadratic(modulus: u64) -> DirichletChar {
        DirichletGroup::new(modulus)
            .characters()
            .find(|c| c.order() == 2 && c.is_primitive())
            .expect("a primitive quadratic character")
    }

    #[test]
    fn group_orders() {
        for n in 1..=60u64 {
            let g = DirichletGroup::new(n);
            assert_eq!(g.len() as u64, euler_phi(n), "|(Z/{n})^*|");
            // all characters distinct
            let chars: Vec<_> = g.characters().collect();
            for i in 0..chars.len() {
                for j in 0..i {
                    assert_ne!(chars[i], chars[j]);
                }
            }
        }
    }

    #[test]
    fn character_axioms() {
        for n in [1u64, 5, 8, 12, 16, 21, 45] {
            for chi in DirichletGroup::new(n).characters() {
                assert_eq!(chi.exponent(1), Some(0));
                for a in 0..n as i64 {
                    assert_eq!(chi.exponent(a).is_none(), (a as u64).gcd(&n) != 1 && n != 1);
                    for b in 0..n as i64 {
                        if let (Some(x), Some(y)) = (chi.exponent(a), chi.exponent(b)) {
                            assert_eq!(chi.exponent(a * b), Some((x + y) % chi.order()));
                        }
                    }
                }
                assert!(chi.parity() == 1 || chi.parity() == -1);
            }
        }
    }

    #[test]
    fn trivial_mod_one() {
        let g = gauss_sum(&DirichletChar::trivial(1));
        assert_eq!(g.value.as_rational(), Some(&int(1)));
        assert!(g.primitive);
    }

    #[test]
    fn quadratic_mod_3() {
        // G = zeta_3 - zeta_3^2, G^2 = -3
        let chi = quadratic(3);
        let g = gauss_sum(&chi).value;
        let expected = CyclotomicInt::zeta_pow(3, 1).sub(&CyclotomicInt::zeta_pow(3, 2));
        assert_eq!(g, expected);
        assert_eq!(g.mul(&g).as_rational(), Some(&int(-3)));
    }

    #[test]
    fn quadratic_mod_5() {
        let chi = quadratic(5);
        assert_eq!(chi.parity(), 1);
        let g = gauss_sum(&chi).value;
        assert_eq!(g.mul(&g).as_rational(), Some(&int(5)));
    }

    #[test]
    fn gauss_norm_for_primitive_characters() {
        for n in 1..=50u64 {
            for chi in DirichletGroup::new(n).characters().filter(DirichletChar::is_primitive) {
                let g = gauss_sum(&chi).value.mul(&gauss_sum(&chi.conj()).value);
                assert_eq!(g.as_rational(), Some(&int(chi.parity() * n as i64)), "N = {n}");
            }
        }
    }

    #[test]
    fn conductors() {
        assert_eq!(DirichletChar::trivial(12).conductor(), 1);
        assert_eq!(quadratic(4).lift(12).unwrap().conductor(), 4);
        assert!(!gauss_sum(&quadratic(3).lift(6).unwrap()).primitive);
        // no primitive characters modulo 2 mod 4
        assert!(DirichletGroup::new(6).characters().all(|c| !c.is_primitive()));
    }

    #[test]
    fn product_and_conjugate() {
        let g = DirichletGroup::new(7);
        let chi = g.character_by_index(1).unwrap();
        assert_eq!(chi.order(), 6);
        assert!(chi.mul(&chi.conj()).is_trivial());
        let psi = quadratic(4);
        let prod = chi.mul(&psi);
        assert_eq!(prod.modulus(), 28);
        for a in 0..28 {
            assert_eq!(prod.value(a), chi.value(a).mul(&psi.value(a)));
        }
    }
}
