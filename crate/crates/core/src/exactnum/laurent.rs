use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;


use super::rational::{format_rational, Rational};
use super::ring::{Module, Ring};

/// Variables of the Laurent ring `Q[x^{+-1}, y^{+-1}, nu^{+-1}]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum LaurentVar {
    X,
    Y,
    Nu,
}

impl LaurentVar {
    fn index(self) -> usize {
        match self {
            LaurentVar::X => 0,
            LaurentVar::Y => 1,
            LaurentVar::Nu => 2,
        }
    }
}

/// Laurent polynomial in `x`, `y`, `nu`, keyed by exponent vectors.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<[i32; 3], Rational>,
}

impl LaurentPoly {
    pub fn monomial(coeff: Rational, exps: [i32; 3]) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exps, coeff);
        }
        LaurentPoly { terms }
    }

    pub fn var(v: LaurentVar) -> Self {
        let mut e = [0; 3];
        e[v.index()] = 1;
        Self::monomial(Rational::one(), e)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[i32; 3], &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: [i32; 3]) -> Rational {
        self.terms.get(&exps).cloned().unwrap_or_else(Rational::zero)
    }

    /// The single term, if this is a monomial.
    pub fn as_monomial(&self) -> Option<(&Rational, [i32; 3])> {
        if self.terms.len() != 1 {
            return None;
        }
        self.terms.iter().next().map(|(e, c)| (c, *e))
    }

    fn insert_add(&mut self, exps: [i32; 3], c: Rational) {
        let entry = self.terms.entry(exps).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&exps);
        }
    }
}

impl Module for LaurentPoly {
    fn zero() -> Self {
        LaurentPoly::default()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert_add(*e, c.clone());
        }
        out
    }
    fn scale(&self, k: &Rational) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        LaurentPoly { terms: self.terms.iter().map(|(e, c)| (*e, c * k)).collect() }
    }
}

impl Ring for LaurentPoly {
    fn one() -> Self {
        Self::monomial(Rational::one(), [0; 3])
    }
    fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.insert_add([e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2]], c1 * c2);
            }
        }
        out
    }
    fn from_rational(x: Rational) -> Self {
        Self::monomial(x, [0; 3])
    }
    fn inverse(&self) -> Option<Self> {
        let (c, e) = self.as_monomial()?;
        Some(Self::monomial(c.recip(), [-e[0], -e[1], -e[2]]))
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let names = ["x", "y", "nu"];
        let parts: Vec<_> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut s = format_rational(c);
                for (n, k) in names.iter().zip(e) {
                    if *k != 0 {
                        s += &alloc::format!("*{n}^{k}");
                    }
                }
                s
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}
