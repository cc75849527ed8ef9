use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Neg, Sub};

use super::weyl::WeylElt;
use crate::exactnum::{int, rat, LinPoly, Rational, Symbol};
use crate::{Error, Result};

/// A character `(a, b; c)` of the diagonal torus, sending
/// `diag(s t1, s t2, s/t2, s/t1)` to `t1^a t2^b s^c`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Weight {
    pub a: LinPoly,
    pub b: LinPoly,
    pub c: LinPoly,
}

impl Weight {
    /// Builds a weight, checking `a + b = c mod 2` whenever all three
    /// entries are integers.
    pub fn new(a: impl Into<LinPoly>, b: impl Into<LinPoly>, c: impl Into<LinPoly>) -> Result<Self> {
        let w = Self::unchecked(a, b, c);
        w.check_parity()?;
        Ok(w)
    }

    /// No parity check. Needed for `rho` and for shifts such as `kappa + rho`.
    pub fn unchecked(a: impl Into<LinPoly>, b: impl Into<LinPoly>, c: impl Into<LinPoly>) -> Self {
        Weight { a: a.into(), b: b.into(), c: c.into() }
    }

    pub fn ints(a: i64, b: i64, c: i64) -> Result<Self> {
        Self::new(a, b, c)
    }

    /// The generic weight `(r1, r2; r1 + r2)`.
    pub fn generic() -> Self {
        let (r1, r2) = (LinPoly::symbol(Symbol::R1), LinPoly::symbol(Symbol::R2));
        Weight { c: &r1 + &r2, a: r1, b: r2 }
    }

    pub fn zero() -> Self {
        Self::unchecked(0, 0, 0)
    }

    fn check_parity(&self) -> Result<()> {
        if let (Ok(a), Ok(b), Ok(c)) = (self.a.to_integer(), self.b.to_integer(), self.c.to_integer()) {
            if (a + b - c).rem_euclid(2) != 0 {
                return Err(Error::Parity { a: a.to_string(), b: b.to_string(), c: c.to_string() });
            }
        }
        Ok(())
    }

    /// The entries as integers, if they are.
    pub fn as_ints(&self) -> Result<[i64; 3]> {
        Ok([self.a.to_integer()?, self.b.to_integer()?, self.c.to_integer()?])
    }

    pub fn is_constant(&self) -> bool {
        self.a.is_constant() && self.b.is_constant() && self.c.is_constant()
    }

    pub fn substitute(&self, assignment: &crate::exactnum::Assignment) -> Self {
        Weight {
            a: self.a.substitute(assignment),
            b: self.b.substitute(assignment),
            c: self.c.substitute(assignment),
        }
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Weight { a: self.a.scale(k), b: self.b.scale(k), c: self.c.scale(k) }
    }

    /// `rho_G = (2, 1; 0)`
    pub fn rho() -> Self {
        Self::unchecked(2, 1, 0)
    }

    /// `rho_{G,nc} = (3/2, 3/2; 0)`
    pub fn rho_nc() -> Self {
        Self::unchecked(rat(3, 2), rat(3, 2), 0)
    }

    /// `rho_{M_G} = (1/2, -1/2; 0)`
    pub fn rho_m() -> Self {
        Self::unchecked(rat(1, 2), rat(-1, 2), 0)
    }

    /// `rho_H = (1, 1; 0)`
    pub fn rho_h() -> Self {
        Self::unchecked(1, 1, 0)
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, o: &Weight) -> Weight {
        Weight { a: &self.a + &o.a, b: &self.b + &o.b, c: &self.c + &o.c }
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, o: &Weight) -> Weight {
        Weight { a: &self.a - &o.a, b: &self.b - &o.b, c: &self.c - &o.c }
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight { a: -&self.a, b: -&self.b, c: -&self.c }
    }
}

impl Add for Weight {
    type Output = Weight;
    fn add(self, o: Weight) -> Weight {
        &self + &o
    }
}

impl Sub for Weight {
    type Output = Weight;
    fn sub(self, o: Weight) -> Weight {
        &self - &o
    }
}

impl Neg for Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        -&self
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}; {})", self.a, self.b, self.c)
    }
}

impl WeylElt {
    /// The (undotted) left action on weights.
    pub fn act(self, w: &Weight) -> Weight {
        let m = self.matrix();
        let comb = |r: [i8; 2]| &w.a.scale(&int(r[0] as i64)) + &w.b.scale(&int(r[1] as i64));
        Weight { a: comb(m[0]), b: comb(m[1]), c: w.c.clone() }
    }
}

/// `w(lambda + rho) - rho`
pub fn dot(w: WeylElt, lambda: &Weight) -> Weight {
    &w.act(&(lambda + &Weight::rho())) - &Weight::rho()
}

/// `kappa_i(nu) = w_i . nu` for the four Kostant representatives.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KappaQuadruple(pub [Weight; 4]);

impl KappaQuadruple {
    pub fn get(&self, i: usize) -> &Weight {
        &self.0[i]
    }
}

pub fn bgg_weights(nu: &Weight) -> KappaQuadruple {
    KappaQuadruple(WeylElt::KOSTANT.map(|w| dot(w, nu)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Group {
    G,
    MG,
    H,
}

/// Dominance for `G` (`a >= b >= 0`), `M_G` (`a >= b`) or `H` (`a, b >= 0`).
pub fn dominance(lambda: &Weight, group: Group) -> Result<bool> {
    let a = lambda.a.to_constant()?;
    let b = lambda.b.to_constant()?;
    let zero = int(0);
    Ok(match group {
        Group::G => a >= b && b >= zero,
        Group::MG => a >= b,
        Group::H => a >= zero && b >= zero,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohomologySets {
    /// The weight with `nu + rho` dominant whose infinitesimal character
    /// matches `kappa`. Its `c` entry is `-c(kappa)`.
    pub nu: Weight,
    pub plus: Vec<WeylElt>,
    pub minus: Vec<WeylElt>,
}

/// `C(kappa)^+ = {w : kappa = -wMmax w (nu + rho) - rho}` and
/// `C(kappa)^- = {w : kappa = -w wGmax (nu + rho) - rho}`, `w` Kostant.
pub fn cohomology_sets(kappa: &Weight) -> Result<CohomologySets> {
    let [a, b, c] = kappa.as_ints()?;
    if a < b {
        return Err(Error::Precondition(format!("{kappa} is not M_G-dominant")));
    }
    // the unique dominant point of the orbit of kappa + rho
    let (x, y) = ((a + 2).abs(), (b + 1).abs());
    let mu = [x.max(y), x.min(y)];
    let nu = Weight::new(mu[0] - 2, mu[1] - 1, -c)?;
    let shifted = &nu + &Weight::rho();
    let rho = Weight::rho();
    let (mut plus, mut minus) = (Vec::new(), Vec::new());
    for w in WeylElt::KOSTANT {
        let kp = &(-&(WeylElt::WM_MAX * w).act(&shifted)) - &rho;
        if &kp == kappa {
            plus.push(w);
        }
        let km = &(-&(w * WeylElt::WG_MAX).act(&shifted)) - &rho;
        if &km == kappa {
            minus.push(w);
        }
    }
    if plus.is_empty() && minus.is_empty() {
        return Err(Error::NoOrbit);
    }
    Ok(CohomologySets { nu, plus, minus })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Duals {
    pub linear: Weight,
    pub serre: Weight,
}

/// `(-wMmax kappa, -wMmax (kappa + 2 rho_nc))`
pub fn duals(kappa: &Weight) -> Duals {
    let two_rho_nc = Weight::rho_nc().scale(&int(2));
    Duals {
        linear: -WeylElt::WM_MAX.act(kappa),
        serre: -WeylElt::WM_MAX.act(&(kappa + &two_rho_nc)),
    }
}

/// `kappa_A = (nu2 - 1, -3 - nu1; -omega)` for `nu = (nu1, nu2; omega)`.
pub fn kappa_dictionary(nu: &Weight) -> Weight {
    Weight::unchecked(&nu.b - &LinPoly::int(1), &LinPoly::int(-3) - &nu.a, -&nu.c)
}

/// The weight `lambda = nu1 - tau1` attached to a compatible pair, or the
/// first violated condition.
pub fn lambda_of(nu: &Weight, tau: &Weight) -> Result<LinPoly> {
    if nu.c != &nu.a + &nu.b {
        return Err(Error::Incompatible(format!("c(nu) = {} is not nu1 + nu2", nu.c)));
    }
    if tau.c != nu.c {
        return Err(Error::Incompatible(format!("c(tau) = {} differs from c(nu) = {}", tau.c, nu.c)));
    }
    let target = &(&nu.a - &nu.b) - &LinPoly::int(2);
    if &tau.a + &tau.b != target {
        return Err(Error::Incompatible(format!(
            "tau1 + tau2 = {} but nu1 - nu2 - 2 = {target}",
            &tau.a + &tau.b
        )));
    }
    let lambda = &nu.a - &tau.a;
    debug_assert_eq!(lambda, &(&nu.b + &tau.b) + &LinPoly::int(2));
    Ok(lambda)
}

pub fn compatible(nu: &Weight, tau: &Weight) -> bool {
    lambda_of(nu, tau).is_ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::Assignment;
    use proptest::prelude::*;

    fn sym(s: Symbol) -> LinPoly {
        LinPoly::symbol(s)
    }

    fn w(a: &str, b: &str, c: &str) -> Weight {
        Weight::unchecked(LinPoly::parse(a).unwrap(), LinPoly::parse(b).unwrap(), LinPoly::parse(c).unwrap())
    }

    fn wi(a: i64, b: i64, c: i64) -> Weight {
        Weight::ints(a, b, c).unwrap()
    }

    #[test]
    fn parity() {
        assert!(Weight::ints(3, 1, 4).is_ok());
        assert!(matches!(Weight::ints(3, 1, 3), Err(Error::Parity { .. })));
        // half-integral and symbolic weights skip the check
        assert!(Weight::new(rat(3, 2), rat(3, 2), 0).is_ok());
        assert!(Weight::new(sym(Symbol::R1), 0, 1).is_ok());
    }

    #[test]
    fn simple_reflections() {
        let nu = w("r1", "r2", "c");
        assert_eq!(WeylElt::S1.act(&nu), w("r1", "-r2", "c"));
        assert_eq!(WeylElt::S2.act(&nu), w("r2", "r1", "c"));
        assert_eq!(WeylElt::WG_MAX.act(&nu), w("-r1", "-r2", "c"));
        assert_eq!(WeylElt::W3.act(&nu), w("-r2", "-r1", "c"));
    }

    #[test]
    fn rho_decomposition() {
        assert_eq!(&Weight::rho_nc() + &Weight::rho_m(), Weight::rho());
    }

    #[test]
    fn printed_bgg_weights() {
        let k = bgg_weights(&w("r1", "r2", "c"));
        assert_eq!(k.get(0), &w("r1", "r2", "c"));
        assert_eq!(k.get(1), &w("r1", "-r2 - 2", "c"));
        assert_eq!(k.get(2), &w("r2 - 1", "-r1 - 3", "c"));
        assert_eq!(k.get(3), &w("-r2 - 3", "-r1 - 3", "c"));
        let z = bgg_weights(&Weight::zero());
        assert_eq!(z.0, [wi(0, 0, 0), wi(0, -2, 0), wi(-1, -3, 0), wi(-3, -3, 0)]);
        assert_eq!(z.get(3), &-&Weight::rho_nc().scale(&int(2)));
    }

    #[test]
    fn dominance_examples() {
        assert!(dominance(&wi(2, 1, 3), Group::G).unwrap());
        assert!(!dominance(&wi(1, 2, 3), Group::MG).unwrap());
        assert!(dominance(&wi(0, 0, 0), Group::H).unwrap());
        assert!(dominance(&Weight::generic(), Group::G).is_err());
    }

    #[test]
    fn cohomology_sets_of_bgg_weights() {
        let nu = wi(3, 1, 4);
        let s = cohomology_sets(&dot(WeylElt::W1, &nu)).unwrap();
        assert_eq!(s.minus, [WeylElt::W1]);
        assert_eq!(s.plus, [WeylElt::W2]);
        assert_eq!(s.nu, wi(3, 1, -4));
        let s = cohomology_sets(&wi(2, 2, 4)).unwrap();
        assert_eq!(s.minus, [WeylElt::ID]);
        for nu in [wi(3, 1, 4), wi(5, 2, 1), wi(0, 0, 0), wi(7, 7, 2)] {
            for (i, k) in bgg_weights(&nu).0.iter().enumerate() {
                let s = cohomology_sets(k).unwrap();
                assert_eq!(s.minus, [WeylElt::KOSTANT[i]]);
                assert_eq!(s.plus, [WeylElt::KOSTANT[3 - i]]);
            }
        }
        assert!(cohomology_sets(&wi(1, 3, 0)).is_err());
    }

    #[test]
    fn serre_dual_examples() {
        let nu = w("r1", "r2", "c");
        let ka = kappa_dictionary(&nu);
        assert_eq!(ka, w("r2 - 1", "-3 - r1", "-c"));
        assert_eq!(duals(&ka).serre, dot(WeylElt::W1, &nu));
        assert_eq!(duals(&Weight::zero()).linear, Weight::zero());
        let twisted = &(-&WeylElt::WM_MAX.act(&dot(WeylElt::W1, &nu))) - &Weight::rho_nc().scale(&int(2));
        assert_eq!(ka, twisted);
    }

    #[test]
    fn compatibility() {
        let nu = Weight::generic();
        let t1 = sym(Symbol::T1);
        let t2 = &(&(&sym(Symbol::R1) - &sym(Symbol::R2)) - &LinPoly::int(2)) - &t1;
        let tau = Weight::unchecked(t1, t2, nu.c.clone());
        assert_eq!(lambda_of(&nu, &tau).unwrap(), LinPoly::parse("r1 - t1").unwrap());
        assert_eq!(lambda_of(&wi(4, 1, 5), &wi(1, 0, 5)).unwrap(), LinPoly::int(3));
        assert!(matches!(lambda_of(&wi(4, 1, 5), &Weight::unchecked(1, 1, 5)), Err(Error::Incompatible(_))));
        assert!(!compatible(&wi(4, 1, 5), &wi(1, 0, 3)));
    }

    fn weight_strategy() -> impl Strategy<Value = Weight> {
        (-20i64..20, -20i64..20, -20i64..20).prop_map(|(a, b, c)| Weight::unchecked(a, b, c))
    }

    fn weyl_strategy() -> impl Strategy<Value = WeylElt> {
        (0usize..8).prop_map(|i| WeylElt::all()[i])
    }

    proptest! {
        #[test]
        fn act_is_an_action(x in weyl_strategy(), y in weyl_strategy(), l in weight_strategy()) {
            prop_assert_eq!((x * y).act(&l), x.act(&y.act(&l)));
            prop_assert_eq!(WeylElt::ID.act(&l), l.clone());
            prop_assert_eq!(dot(x * y, &l), dot(x, &dot(y, &l)));
        }

        #[test]
        fn bgg_matches_printed_formulas(r1 in 0i64..200, d in 0i64..200, c in -50i64..50) {
            let r2 = r1 - d.min(r1);
            let c = 2 * c + (r1 + r2) % 2;
            let nu = wi(r1, r2, c);
            let mut a = Assignment::new();
            a.insert(Symbol::R1, int(r1));
            a.insert(Symbol::R2, int(r2));
            a.insert(Symbol::C, int(c));
            let symbolic = bgg_weights(&w("r1", "r2", "c"));
            let concrete = bgg_weights(&nu);
            for i in 0..4 {
                prop_assert_eq!(symbolic.get(i).substitute(&a), concrete.get(i).clone());
            }
            let distinct = (0..4).all(|i| (0..i).all(|j| concrete.get(i) != concrete.get(j)));
            prop_assert!(distinct || r1 == r2 || r2 == 0);
        }

        #[test]
        fn serre_duality_swaps_signs(a in -30i64..30, d in 0i64..30, c in -30i64..30) {
            let kappa = wi(a, a - d, 2 * c + d % 2);
            if let Ok(s) = cohomology_sets(&kappa) {
                let dual = cohomology_sets(&duals(&kappa).serre).unwrap();
                prop_assert_eq!(dual.plus, s.minus);
                prop_assert_eq!(dual.minus, s.plus);
            }
        }

        #[test]
        fn regular_weights_have_singleton_sets(a in -30i64..30, d in 0i64..30, c in -30i64..30) {
            let kappa = wi(a, a - d, 2 * c + d % 2);
            let s = cohomology_sets(&kappa).unwrap();
            let [x, y] = [s.nu.a.to_integer().unwrap() + 2, s.nu.b.to_integer().unwrap() + 1];
            if x > y && y > 0 {
                prop_assert_eq!(s.plus.len(), 1);
                prop_assert_eq!(s.minus.len(), 1);
                prop_assert_eq!(s.plus[0], WeylElt::WM_MAX * s.minus[0] * WeylElt::WG_MAX);
            }
        }
    }
}
