use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::rational::{format_rational, int, parse_rational, Rational};
use crate::{Error, Result};

/// The closed set of formal symbols that may appear in a [`LinPoly`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Symbol {
    R1,
    R2,
    T1,
    T2,
    C,
    Lambda,
}

impl Symbol {
    pub const ALL: [Symbol; 6] = [
        Symbol::R1,
        Symbol::R2,
        Symbol::T1,
        Symbol::T2,
        Symbol::C,
        Symbol::Lambda,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Symbol::R1 => "r1",
            Symbol::R2 => "r2",
            Symbol::T1 => "t1",
            Symbol::T2 => "t2",
            Symbol::C => "c",
            Symbol::Lambda => "lambda",
        }
    }

    pub fn from_name(s: &str) -> Option<Symbol> {
        match s {
            "r1" => Some(Symbol::R1),
            "r2" => Some(Symbol::R2),
            "t1" => Some(Symbol::T1),
            "t2" => Some(Symbol::T2),
            "c" => Some(Symbol::C),
            "lambda" | "λ" => Some(Symbol::Lambda),
            _ => None,
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A polynomial of degree at most one in the formal symbols, with rational
/// coefficients. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct LinPoly {
    constant: Rational,
    terms: BTreeMap<Symbol, Rational>,
}

pub type Assignment = BTreeMap<Symbol, Rational>;

impl LinPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        LinPoly { constant: c, terms: BTreeMap::new() }
    }

    pub fn int(n: i64) -> Self {
        Self::constant(int(n))
    }

    pub fn symbol(s: Symbol) -> Self {
        Self::term(s, Rational::one())
    }

    pub fn term(s: Symbol, coeff: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(s, coeff);
        }
        LinPoly { constant: Rational::zero(), terms }
    }

    pub fn constant_term(&self) -> &Rational {
        &self.constant
    }

    pub fn coeff(&self, s: Symbol) -> Rational {
        self.terms.get(&s).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (Symbol, &Rational)> {
        self.terms.iter().map(|(s, c)| (*s, c))
    }

    pub fn is_zero(&self) -> bool {
        self.constant.is_zero() && self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn as_constant(&self) -> Option<&Rational> {
        self.is_constant().then_some(&self.constant)
    }

    pub fn to_constant(&self) -> Result<Rational> {
        self.as_constant()
            .cloned()
            .ok_or_else(|| Error::NotConstant(format!("{self}")))
    }

    /// The value as an `i64`, failing for symbolic or fractional values.
    pub fn to_integer(&self) -> Result<i64> {
        super::rational::as_integer(&self.to_constant()?)
    }

    pub fn scale(&self, k: &Rational) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        LinPoly {
            constant: &self.constant * k,
            terms: self.terms.iter().map(|(s, c)| (*s, c * k)).collect(),
        }
    }

    /// Substitutes every symbol present in `assignment`, leaving the others.
    pub fn substitute(&self, assignment: &Assignment) -> Self {
        let mut out = LinPoly::constant(self.constant.clone());
        for (s, c) in &self.terms {
            match assignment.get(s) {
                Some(v) => out.constant += c * v,
                None => out = out + LinPoly::term(*s, c.clone()),
            }
        }
        out
    }

    /// Replaces each symbol by a linear polynomial.
    pub fn compose(&self, map: &BTreeMap<Symbol, LinPoly>) -> Self {
        let mut out = LinPoly::constant(self.constant.clone());
        for (s, c) in &self.terms {
            let image = map.get(s).cloned().unwrap_or_else(|| LinPoly::symbol(*s));
            out = out + image.scale(c);
        }
        out
    }

    fn combine(mut self, other: &LinPoly, sign: i8) -> Self {
        if sign > 0 {
            self.constant += &other.constant;
        } else {
            self.constant -= &other.constant;
        }
        for (s, c) in &other.terms {
            let entry = self.terms.entry(*s).or_insert_with(Rational::zero);
            if sign > 0 {
                *entry += c;
            } else {
                *entry -= c;
            }
            if entry.is_zero() {
                self.terms.remove(s);
            }
        }
        self
    }

    /// Parses expressions such as `r1 - r2 - 2`, `3/2*r1 + 1`, `-lambda`.
    pub fn parse(input: &str) -> Result<Self> {
        let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse(String::from("empty expression")));
        }
        let mut out = LinPoly::zero();
        let mut chunks: alloc::vec::Vec<(i8, String)> = alloc::vec::Vec::new();
        let mut current = String::new();
        let mut sign = 1i8;
        for (i, ch) in s.chars().enumerate() {
            // A sign directly after '/' or '*' belongs to the number.
            let prev = current.chars().last();
            if (ch == '+' || ch == '-') && !(i > 0 && matches!(prev, Some('/') | Some('*'))) {
                if !current.is_empty() {
                    chunks.push((sign, core::mem::take(&mut current)));
                } else if i != 0 {
                    return Err(Error::Parse(format!("dangling operator in `{input}`")));
                }
                sign = if ch == '-' { -1 } else { 1 };
            } else {
                current.push(ch);
            }
        }
        if current.is_empty() {
            return Err(Error::Parse(format!("trailing operator in `{input}`")));
        }
        chunks.push((sign, current));
        for (sign, chunk) in chunks {
            let sign = int(sign as i64);
            let term = match chunk.rsplit_once('*') {
                Some((coeff, sym)) => {
                    let sym = Symbol::from_name(sym)
                        .ok_or_else(|| Error::Parse(format!("unknown symbol `{sym}`")))?;
                    LinPoly::term(sym, parse_rational(coeff)?)
                }
                None => match Symbol::from_name(&chunk) {
                    Some(sym) => LinPoly::symbol(sym),
                    None => LinPoly::constant(parse_rational(&chunk)?),
                },
            };
            out = out + term.scale(&sign);
        }
        Ok(out)
    }
}

/// Exact substitution; every symbol of `f` must be assigned.
pub fn linpoly_eval(f: &LinPoly, assignment: &Assignment) -> Result<Rational> {
    let mut acc = f.constant.clone();
    for (s, c) in &f.terms {
        let v = assignment.get(s).ok_or(Error::MissingSymbol(*s))?;
        acc += c * v;
    }
    Ok(acc)
}

impl From<Rational> for LinPoly {
    fn from(c: Rational) -> Self {
        LinPoly::constant(c)
    }
}

impl From<i64> for LinPoly {
    fn from(n: i64) -> Self {
        LinPoly::int(n)
    }
}

impl From<Symbol> for LinPoly {
    fn from(s: Symbol) -> Self {
        LinPoly::symbol(s)
    }
}

impl Add for LinPoly {
    type Output = LinPoly;
    fn add(self, rhs: LinPoly) -> LinPoly {
        self.combine(&rhs, 1)
    }
}

impl<'a> Add<&'a LinPoly> for &'a LinPoly {
    type Output = LinPoly;
    fn add(self, rhs: &LinPoly) -> LinPoly {
        self.clone().combine(rhs, 1)
    }
}

impl Sub for LinPoly {
    type Output = LinPoly;
    fn sub(self, rhs: LinPoly) -> LinPoly {
        self.combine(&rhs, -1)
    }
}

impl<'a> Sub<&'a LinPoly> for &'a LinPoly {
    type Output = LinPoly;
    fn sub(self, rhs: &LinPoly) -> LinPoly {
        self.clone().combine(rhs, -1)
    }
}

impl Neg for LinPoly {
    type Output = LinPoly;
    fn neg(self) -> LinPoly {
        self.scale(&int(-1))
    }
}

impl Neg for &LinPoly {
    type Output = LinPoly;
    fn neg(self) -> LinPoly {
        self.scale(&int(-1))
    }
}

impl Mul<&Rational> for &LinPoly {
    type Output = LinPoly;
    fn mul(self, k: &Rational) -> LinPoly {
        self.scale(k)
    }
}

fn write_coeff(f: &mut fmt::Formatter<'_>, c: &Rational) -> fmt::Result {
    if c.is_integer() {
        write!(f, "{}", c.numer())
    } else {
        f.write_str(&format_rational(c))
    }
}

impl fmt::Display for LinPoly {
    /// Canonical form: symbols in fixed order, constant last, e.g.
    /// `r1 - r2 - 2` or `3/2*r1 + 1/2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (s, c) in &self.terms {
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            if !mag.is_one() {
                write_coeff(f, &mag)?;
                f.write_str("*")?;
            }
            write!(f, "{s}")?;
            first = false;
        }
        if first {
            return write_coeff(f, &self.constant);
        }
        if !self.constant.is_zero() {
            f.write_str(if self.constant.is_negative() { " - " } else { " + " })?;
            write_coeff(f, &self.constant.abs())?;
        }
        Ok(())
    }
}
