use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::exactnum::{int, pow, LaurentPoly, LaurentVar, LinPoly, Module, Rational, Ring, Truncated};
use crate::flaggeo::gamma_conjugate;
use crate::rootdata::Weight;
use crate::{Error, Result};

/// The Levi character `kappa_A = (rho1, rho2; omega)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelWeight {
    pub rho1: LinPoly,
    pub rho2: LinPoly,
    pub omega: LinPoly,
}

/// Integer exponents `(rho1 - rho2, rho2, (omega - rho1 - rho2) / 2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Exponents {
    pub d: i64,
    pub rho1: i64,
    pub rho2: i64,
    pub nu: i64,
}

impl ModelWeight {
    pub fn new(rho1: impl Into<LinPoly>, rho2: impl Into<LinPoly>, omega: impl Into<LinPoly>) -> Self {
        ModelWeight { rho1: rho1.into(), rho2: rho2.into(), omega: omega.into() }
    }

    pub fn from_weight(w: &Weight) -> Self {
        ModelWeight { rho1: w.a.clone(), rho2: w.b.clone(), omega: w.c.clone() }
    }

    pub(crate) fn exponents(&self) -> Result<Exponents> {
        let int_of = |x: LinPoly, what: &str| {
            x.to_integer()
                .map_err(|_| Error::NonIntegralExponent(format!("{what} = {x} is not an integer")))
        };
        let rho1 = int_of(self.rho1.clone(), "rho1")?;
        let rho2 = int_of(self.rho2.clone(), "rho2")?;
        let omega = int_of(self.omega.clone(), "omega")?;
        if (omega - rho1 - rho2) % 2 != 0 {
            return Err(Error::NonIntegralExponent(format!(
                "(omega - rho1 - rho2)/2 = ({omega} - {rho1} - {rho2})/2"
            )));
        }
        Ok(Exponents { d: rho1 - rho2, rho1, rho2, nu: (omega - rho1 - rho2) / 2 })
    }
}

/// `(A, nu)` in `M_G = GL(2) x GL(1)`, `A = [[a, b], [c, d]]`.
#[derive(Debug, Clone, PartialEq)]
pub struct LeviElement<R> {
    pub a: R,
    pub b: R,
    pub c: R,
    pub d: R,
    pub nu: R,
}

impl<R: Ring> LeviElement<R> {
    pub fn identity() -> Self {
        LeviElement { a: R::one(), b: R::zero(), c: R::zero(), d: R::one(), nu: R::one() }
    }

    /// `gamma^{-1} (diag(x, y), nu) gamma`.
    pub fn conjugated_torus(x: &R, y: &R, nu: &R) -> Self {
        let ([[a, b], [c, d]], nu) = gamma_conjugate(x, y, nu);
        LeviElement { a, b, c, d, nu }
    }

    pub fn det(&self) -> R {
        self.a.mul(&self.d).sub(&self.b.mul(&self.c))
    }

    pub fn mul(&self, o: &Self) -> Self {
        LeviElement {
            a: self.a.mul(&o.a).add(&self.b.mul(&o.c)),
            b: self.a.mul(&o.b).add(&self.b.mul(&o.d)),
            c: self.c.mul(&o.a).add(&self.d.mul(&o.c)),
            d: self.c.mul(&o.b).add(&self.d.mul(&o.d)),
            nu: self.nu.mul(&o.nu),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelMode {
    /// Polynomials of degree at most `rho1 - rho2`.
    Polynomial,
    /// Power series known modulo terms of total degree above `order`
    /// (degree in `z` plus any nilpotent degree of the coefficients).
    PowerSeries { order: usize },
}

/// `f(z) = sum_k coeffs[k] z^k` in the model attached to `weight`.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyModel<R> {
    pub weight: ModelWeight,
    pub coeffs: Vec<R>,
    pub mode: ModelMode,
}

impl<R: Ring> PolyModel<R> {
    pub fn new(weight: ModelWeight, coeffs: Vec<R>, mode: ModelMode) -> Result<Self> {
        let e = weight.exponents()?;
        let mut coeffs = coeffs;
        match mode {
            ModelMode::Polynomial => {
                while coeffs.len() > 1 && coeffs.last().is_some_and(R::is_zero) {
                    coeffs.pop();
                }
                if e.d < 0 || coeffs.len() as i64 > e.d + 1 {
                    return Err(Error::Precondition(format!(
                        "degree {} exceeds rho1 - rho2 = {}",
                        coeffs.len() - 1,
                        e.d
                    )));
                }
            }
            ModelMode::PowerSeries { order } => coeffs.truncate(order + 1),
        }
        coeffs.resize(Self::len_for(mode, e.d), R::zero());
        Ok(PolyModel { weight, coeffs, mode })
    }

    fn len_for(mode: ModelMode, d: i64) -> usize {
        match mode {
            ModelMode::Polynomial => (d + 1) as usize,
            ModelMode::PowerSeries { order } => order + 1,
        }
    }

    pub fn coeff(&self, k: usize) -> R {
        self.coeffs.get(k).cloned().unwrap_or_else(R::zero)
    }

    pub fn scale_by(&self, s: &R) -> Self {
        PolyModel { weight: self.weight.clone(), coeffs: self.coeffs.iter().map(|c| c.mul(s)).collect(), mode: self.mode }
    }

    /// Sum of two models; a power series keeps the smaller of the two orders.
    pub fn add(&self, o: &Self) -> Result<Self> {
        if self.weight != o.weight {
            return Err(Error::Incompatible(String::from("models of different weights")));
        }
        let mode = match (self.mode, o.mode) {
            (ModelMode::Polynomial, ModelMode::Polynomial) => ModelMode::Polynomial,
            (ModelMode::PowerSeries { order: a }, ModelMode::PowerSeries { order: b }) => {
                ModelMode::PowerSeries { order: a.min(b) }
            }
            _ => return Err(Error::Incompatible(String::from("polynomial and power-series models"))),
        };
        let n = self.coeffs.len().max(o.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k).add(&o.coeff(k))).collect();
        PolyModel::new(self.weight.clone(), coeffs, mode)
    }
}

fn poly_mul<R: Ring>(a: &[R], b: &[R], cap: usize) -> Vec<R> {
    let n = (a.len() + b.len()).saturating_sub(1).min(cap);
    let mut out = vec![R::zero(); n];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if i + j < n {
                out[i + j] = out[i + j].add(&x.mul(y));
            }
        }
    }
    out
}

fn poly_pow<R: Ring>(a: &[R], e: usize, cap: usize) -> Vec<R> {
    let mut acc = vec![R::one()];
    for _ in 0..e {
        acc = poly_mul(&acc, a, cap);
    }
    acc
}

fn invertible<R: Ring>(x: &R, what: &str) -> Result<R> {
    x.inverse().ok_or_else(|| Error::NotInvertible(format!("{what} = {x:?}")))
}

fn ring_pow<R: Ring>(x: &R, e: i64, what: &str) -> Result<R> {
    pow(x, e).ok_or_else(|| Error::NotInvertible(format!("{what} = {x:?} raised to {e}")))
}

/// `(g f)(z) = f((a z - c)/(-b z + d)) (-b z + d)^{rho1 - rho2} (ad - bc)^{rho2} nu^{(omega - rho1 - rho2)/2}`.
pub fn act_model<R: Ring>(g: &LeviElement<R>, f: &PolyModel<R>) -> Result<PolyModel<R>> {
    let e = f.weight.exponents()?;
    let scalar = ring_pow(&g.det(), e.rho2, "ad - bc")?.mul(&ring_pow(&g.nu, e.nu, "nu")?);
    let num = [g.c.neg(), g.a.clone()];
    let den = [g.d.clone(), g.b.neg()];
    let coeffs = match f.mode {
        ModelMode::Polynomial => {
            let d = e.d as usize;
            let cap = d + 1;
            let mut out = vec![R::zero(); cap];
            for (k, fk) in f.coeffs.iter().enumerate() {
                if fk.is_zero() {
                    continue;
                }
                let term = poly_mul(&poly_pow(&num, k, cap), &poly_pow(&den, d - k, cap), cap);
                for (i, t) in term.iter().enumerate() {
                    out[i] = out[i].add(&t.mul(fk));
                }
            }
            out
        }
        ModelMode::PowerSeries { order } => {
            let cap = order + 1;
            if !g.c.is_nilpotent() {
                return Err(Error::Precondition(format!(
                    "power-series action needs c nilpotent, got {:?}",
                    g.c
                )));
            }
            let dinv = invertible(&g.d, "d")?;
            // 1/(d - b z) = d^{-1} sum_j (b z / d)^j
            let ratio = g.b.mul(&dinv);
            let mut inv_den = vec![R::zero(); cap];
            let mut term = dinv.clone();
            for slot in inv_den.iter_mut() {
                *slot = term.clone();
                term = term.mul(&ratio);
            }
            let u = poly_mul(&num, &inv_den, cap);
            // Horner: f(u) = f0 + u (f1 + u (f2 + ...))
            let mut acc = vec![R::zero(); 1];
            for fk in f.coeffs.iter().rev() {
                acc = poly_mul(&acc, &u, cap);
                if acc.is_empty() {
                    acc.push(R::zero());
                }
                acc[0] = acc[0].add(fk);
            }
            let power = if e.d >= 0 {
                poly_pow(&den, e.d as usize, cap)
            } else {
                poly_pow(&inv_den, e.d.unsigned_abs() as usize, cap)
            };
            poly_mul(&acc, &power, cap)
        }
    };
    let coeffs = coeffs.into_iter().map(|c| c.mul(&scalar)).collect();
    PolyModel::new(f.weight.clone(), coeffs, f.mode)
}

fn binomial(lambda: i64, k: usize) -> Rational {
    let mut acc = int(1);
    for i in 0..k as i64 {
        acc = acc * int(lambda - i) / int(i + 1);
    }
    acc
}

/// The kraken `(1 + z)^lambda`.
pub fn kraken<R: Ring>(lambda: i64, weight: &ModelWeight, mode: ModelMode) -> Result<PolyModel<R>> {
    let e = weight.exponents()?;
    let len = match mode {
        ModelMode::Polynomial => {
            if lambda < 0 || lambda > e.d {
                return Err(Error::LambdaOutOfRange { lambda, max: e.d });
            }
            lambda as usize + 1
        }
        ModelMode::PowerSeries { order } => order + 1,
    };
    let coeffs = (0..len).map(|k| R::from_rational(binomial(lambda, k))).collect();
    PolyModel::new(weight.clone(), coeffs, mode)
}

fn first_mismatch<R: Ring>(lhs: &[R], rhs: &[R]) -> Option<usize> {
    (0..lhs.len().max(rhs.len())).find(|&k| {
        let l = lhs.get(k).cloned().unwrap_or_else(R::zero);
        let r = rhs.get(k).cloned().unwrap_or_else(R::zero);
        l != r
    })
}

/// Checks symbolically in `x, y, nu` that `gamma^{-1} (diag(x, y), nu) gamma`
/// scales the kraken by `x^{rho2 + lambda} y^{rho1 - lambda} nu^{(omega - rho1 - rho2)/2}`
/// and returns that eigencharacter `(rho2 + lambda, rho1 - lambda; omega)`.
pub fn kraken_eigen_check(weight: &ModelWeight, lambda: i64) -> Result<Weight> {
    let e = weight.exponents()?;
    let k: PolyModel<LaurentPoly> = kraken(lambda, weight, ModelMode::Polynomial)?;
    let (x, y, nu) = (LaurentPoly::var(LaurentVar::X), LaurentPoly::var(LaurentVar::Y), LaurentPoly::var(LaurentVar::Nu));
    let g = LeviElement::conjugated_torus(&x, &y, &nu);
    let lhs = act_model(&g, &k)?;
    let eigen = LaurentPoly::monomial(int(1), [(e.rho2 + lambda) as i32, (e.rho1 - lambda) as i32, e.nu as i32]);
    let rhs = k.scale_by(&eigen);
    if let Some(i) = first_mismatch(&lhs.coeffs, &rhs.coeffs) {
        return Err(Error::VerificationFailed {
            index: i,
            detail: format!("z^{i}: {} vs {}", lhs.coeff(i), rhs.coeff(i)),
        });
    }
    Weight::new(&weight.rho2 + &LinPoly::int(lambda), &weight.rho1 - &LinPoly::int(lambda), weight.omega.clone())
}

/// Precision of the family check, in total degree.
const FAMILY_ORDER: usize = 6;
type Family = Truncated<LaurentPoly, FAMILY_ORDER>;

/// The eigenvector identity in power-series mode along the family
/// `x = y (1 + eps)`, for any integer `lambda` and any integral weight,
/// compared up to total degree `FAMILY_ORDER` in `z` and `eps`.
pub fn kraken_family_check(weight: &ModelWeight, lambda: i64) -> Result<Weight> {
    let e = weight.exponents()?;
    let mode = ModelMode::PowerSeries { order: FAMILY_ORDER };
    let k: PolyModel<Family> = kraken(lambda, weight, mode)?;
    let lift = |v: LaurentVar| Family::constant(LaurentPoly::var(v));
    let y = lift(LaurentVar::Y);
    let nu = lift(LaurentVar::Nu);
    let x = y.mul(&Family::one().add(&Family::eps()));
    let g = LeviElement::conjugated_torus(&x, &y, &nu);
    let lhs = act_model(&g, &k)?;
    let eigen = ring_pow(&x, e.rho2 + lambda, "x")?
        .mul(&ring_pow(&y, e.rho1 - lambda, "y")?)
        .mul(&ring_pow(&nu, e.nu, "nu")?);
    let rhs = k.scale_by(&eigen);
    // drop terms z^i eps^j with i + j above the precision
    let clip = |c: &Family, i: usize| -> Vec<LaurentPoly> {
        c.coeffs().iter().enumerate().map(|(j, v)| if i + j <= FAMILY_ORDER { v.clone() } else { LaurentPoly::zero() }).collect()
    };
    for i in 0..=FAMILY_ORDER {
        if clip(&lhs.coeff(i), i) != clip(&rhs.coeff(i), i) {
            return Err(Error::VerificationFailed { index: i, detail: format!("z^{i} in the eps-family") });
        }
    }
    Weight::new(&weight.rho2 + &LinPoly::int(lambda), &weight.rho1 - &LinPoly::int(lambda), weight.omega.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;
    use proptest::prelude::*;

    fn mw(r1: i64, r2: i64, w: i64) -> ModelWeight {
        ModelWeight::new(r1, r2, w)
    }

    #[test]
    fn kraken_examples() {
        let w = mw(3, 1, 4);
        let k: PolyModel<Rational> = kraken(0, &w, ModelMode::Polynomial).unwrap();
        assert_eq!(k.coeffs, [int(1), int(0), int(0)]);
        let k: PolyModel<Rational> = kraken(2, &w, ModelMode::Polynomial).unwrap();
        assert_eq!(k.coeffs, [int(1), int(2), int(1)]);
        let k: PolyModel<Rational> = kraken(-1, &w, ModelMode::PowerSeries { order: 4 }).unwrap();
        assert_eq!(k.coeffs, [int(1), int(-1), int(1), int(-1), int(1)]);
        assert!(matches!(
            kraken::<Rational>(3, &w, ModelMode::Polynomial),
            Err(Error::LambdaOutOfRange { lambda: 3, max: 2 })
        ));
    }

    #[test]
    fn identity_and_diagonal_action() {
        let w = mw(5, 1, 8);
        let f = PolyModel::new(w.clone(), vec![int(1), int(2), int(0), int(-3)], ModelMode::Polynomial).unwrap();
        assert_eq!(act_model(&LeviElement::identity(), &f).unwrap(), f);
        // z^k under (diag(t1, t2), nu)
        let (t1, t2, nu) = (int(2), int(3), int(5));
        let g = LeviElement { a: t1.clone(), b: int(0), c: int(0), d: t2.clone(), nu: nu.clone() };
        for k in 0..=4usize {
            let mut c = vec![int(0); k + 1];
            c[k] = int(1);
            let zk = PolyModel::new(w.clone(), c, ModelMode::Polynomial).unwrap();
            let out = act_model(&g, &zk).unwrap();
            let expected = pow(&t1, 1 + k as i64).unwrap() * pow(&t2, 5 - k as i64).unwrap() * pow(&nu, 1).unwrap();
            assert_eq!(out.coeff(k), expected);
            assert!((0..=4).filter(|&i| i != k).all(|i| out.coeff(i) == int(0)));
        }
    }

    #[test]
    fn odd_central_exponent_is_rejected() {
        let f = PolyModel::new(mw(3, 1, 4), vec![int(1)], ModelMode::Polynomial).unwrap();
        let bad = PolyModel { weight: mw(3, 1, 3), ..f };
        assert!(matches!(act_model(&LeviElement::identity(), &bad), Err(Error::NonIntegralExponent(_))));
    }

    #[test]
    fn eigen_check_examples() {
        let w = mw(3, 1, 4);
        assert_eq!(kraken_eigen_check(&w, 0).unwrap(), Weight::ints(1, 3, 4).unwrap());
        // kappa_A for (r1, r2) = (3, 1)
        let ka = mw(3, -3, -4);
        for lambda in 0..=6 {
            assert_eq!(kraken_eigen_check(&ka, lambda).unwrap(), Weight::ints(-3 + lambda, 3 - lambda, -4).unwrap());
        }
        // numeric instance at (x, y, nu) = (2, 3, 6)
        let k: PolyModel<Rational> = kraken(1, &w, ModelMode::Polynomial).unwrap();
        let g = LeviElement::conjugated_torus(&int(2), &int(3), &int(6));
        let lhs = act_model(&g, &k).unwrap();
        let scale = pow(&int(2), 2).unwrap() * pow(&int(3), 2).unwrap() * pow(&int(6), 0).unwrap();
        assert_eq!(lhs, k.scale_by(&scale));
    }

    #[test]
    fn eigen_check_on_the_whole_desk_range() {
        for r1 in 0..=6i64 {
            for r2 in 0..=r1 {
                let ka = mw(r2 + 2, -r1, -r1 - r2);
                for lambda in 0..=r1 + r2 + 2 {
                    kraken_eigen_check(&ka, lambda).unwrap();
                }
            }
        }
    }

    #[test]
    fn family_check_for_negative_lambda() {
        for lambda in [-3, -1, 0, 2, 7] {
            for w in [mw(3, -3, -4), mw(1, 4, 1), mw(0, 0, 2)] {
                kraken_family_check(&w, lambda).unwrap();
            }
        }
    }

    #[test]
    fn power_series_needs_nilpotent_c() {
        let w = mw(3, 1, 4);
        let k: PolyModel<Rational> = kraken(-2, &w, ModelMode::PowerSeries { order: 5 }).unwrap();
        let g = LeviElement::conjugated_torus(&int(2), &int(3), &int(1));
        assert!(matches!(act_model(&g, &k), Err(Error::Precondition(_))));
        let upper = LeviElement { a: int(2), b: int(1), c: int(0), d: int(3), nu: int(1) };
        assert!(act_model(&upper, &k).is_ok());
        let singular = LeviElement { a: int(2), b: int(1), c: int(0), d: int(0), nu: int(1) };
        assert!(matches!(act_model(&singular, &k), Err(Error::NotInvertible(_))));
    }

    #[test]
    fn orders_combine_by_minimum() {
        let w = mw(3, 1, 4);
        let a: PolyModel<Rational> = kraken(-1, &w, ModelMode::PowerSeries { order: 4 }).unwrap();
        let b: PolyModel<Rational> = kraken(-1, &w, ModelMode::PowerSeries { order: 7 }).unwrap();
        assert_eq!(a.add(&b).unwrap().mode, ModelMode::PowerSeries { order: 4 });
        let g = LeviElement { a: int(2), b: int(1), c: int(0), d: int(3), nu: int(1) };
        assert_eq!(act_model(&g, &b).unwrap().mode, ModelMode::PowerSeries { order: 7 });
    }

    fn q() -> impl Strategy<Value = Rational> {
        (-9i64..10, 1i64..5).prop_map(|(n, d)| rat(n, d))
    }

    fn levi() -> impl Strategy<Value = LeviElement<Rational>> {
        (q(), q(), q(), q(), 1i64..6).prop_filter_map("invertible", |(a, b, c, d, nu)| {
            let g = LeviElement { a, b, c, d, nu: int(nu) };
            (g.det() != int(0)).then_some(g)
        })
    }

    fn upper_levi() -> impl Strategy<Value = LeviElement<Rational>> {
        (q(), q(), q(), 1i64..6).prop_filter_map("unit diagonal", |(a, b, d, nu)| {
            (a != int(0) && d != int(0)).then(|| LeviElement { a, b, c: int(0), d, nu: int(nu) })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]
        #[test]
        fn polynomial_model_is_a_left_action(g in levi(), h in levi(),
                                             f in proptest::collection::vec(q(), 1..6)) {
            let w = mw(4, -1, 1);
            let f = PolyModel::new(w, f, ModelMode::Polynomial).unwrap();
            let lhs = act_model(&g.mul(&h), &f).unwrap();
            let rhs = act_model(&g, &act_model(&h, &f).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn power_series_model_is_a_left_action(g in upper_levi(), h in upper_levi(),
                                               f in proptest::collection::vec(q(), 1..8),
                                               d in -3i64..4) {
            let w = mw(d, 0, d);
            let f = PolyModel::new(w, f, ModelMode::PowerSeries { order: 6 }).unwrap();
            let lhs = act_model(&g.mul(&h), &f).unwrap();
            let rhs = act_model(&g, &act_model(&h, &f).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
