//! Iwahori-level Hecke operators: normalisations, slopes of BGG weights,
//! the small-slope conditions, `p`-stabilisations of a spherical
//! representation and the degree 8 Euler factor at `p`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::exactnum::{format_rational, int, is_prime, pow_int, rat, vp, LinPoly, Rational, Symbol, Valuation};
use crate::rootdata::{Weight, WeylElt};
use crate::{Error, Result};

/// Hecke operators at `p`, each given by a torus element and a power of `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HeckeOp {
    USieg,
    USiegPrime,
    UKl,
    UKlPrime,
    UB,
    UBPrime,
    Diamond,
}

impl HeckeOp {
    pub const ALL: [HeckeOp; 7] = [
        HeckeOp::USieg,
        HeckeOp::USiegPrime,
        HeckeOp::UKl,
        HeckeOp::UKlPrime,
        HeckeOp::UB,
        HeckeOp::UBPrime,
        HeckeOp::Diamond,
    ];

    /// Exponents `e_i` of the torus element `diag(p^e1, p^e2, p^e3, p^e4)`.
    pub fn torus(self) -> [i64; 4] {
        match self {
            HeckeOp::USieg => [1, 1, 0, 0],
            HeckeOp::USiegPrime => [0, 0, 1, 1],
            HeckeOp::UKl => [2, 1, 1, 0],
            HeckeOp::UKlPrime => [0, 1, 1, 2],
            HeckeOp::UB => [3, 2, 1, 0],
            HeckeOp::UBPrime => [0, 1, 2, 3],
            HeckeOp::Diamond => [1, 1, 1, 1],
        }
    }

    /// The exponent `e` in the normalising factor `p^e`.
    pub fn normalization(self) -> LinPoly {
        let r2 = LinPoly::symbol(Symbol::R2);
        match self {
            HeckeOp::USieg | HeckeOp::USiegPrime => LinPoly::zero(),
            HeckeOp::UKl | HeckeOp::UKlPrime | HeckeOp::UB | HeckeOp::UBPrime => -r2,
            HeckeOp::Diamond => -(LinPoly::symbol(Symbol::R1) + r2),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            HeckeOp::USieg => "USieg",
            HeckeOp::USiegPrime => "USieg'",
            HeckeOp::UKl => "UKl",
            HeckeOp::UKlPrime => "UKl'",
            HeckeOp::UB => "UB",
            HeckeOp::UBPrime => "UB'",
            HeckeOp::Diamond => "<p>",
        }
    }

    pub fn from_name(s: &str) -> Option<HeckeOp> {
        Self::ALL.into_iter().find(|op| op.name() == s)
    }
}

/// Which character of the torus is paired with the operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SlopeVariant {
    /// `w^{-1}(kappa + rho) - rho`
    Conjectural,
    /// `w^{-1} kappa`
    Proven,
}

/// Valuation of `(a, b; c)` at `diag(p^e1, ..., p^e4)`, i.e. the
/// pairing with the cocharacter `s = p^{(e1+e4)/2}`, `t_i = p^{e_i} / s`.
fn pair_with_torus(w: &Weight, e: [i64; 4]) -> LinPoly {
    let vs = rat(e[0] + e[3], 2);
    let vt1 = &int(e[0]) - &vs;
    let vt2 = &int(e[1]) - &vs;
    &(&w.a.scale(&vt1) + &w.b.scale(&vt2)) + &w.c.scale(&vs)
}

/// Slope of `op` on the `w`-part of the cohomology of `kappa`, normalised
/// as the operator is.
pub fn slope_pairing(kappa: &Weight, w: WeylElt, op: HeckeOp, variant: SlopeVariant) -> LinPoly {
    let winv = w.inverse();
    let chi = match variant {
        SlopeVariant::Conjectural => &winv.act(&(kappa + &Weight::rho())) - &Weight::rho(),
        SlopeVariant::Proven => winv.act(kappa),
    };
    &pair_with_torus(&chi, op.torus()) + &op.normalization()
}

/// Columns of the slope tables: `id, w1, w2, w3, wMmax w1`.
pub fn slope_table_columns() -> [WeylElt; 5] {
    [WeylElt::ID, WeylElt::W1, WeylElt::W2, WeylElt::W3, WeylElt::WM_MAX * WeylElt::W1]
}

/// Rows `UKl'` and `USieg'` of the slope table of `kappa_1(r1, r2; r1 + r2)`.
pub fn slope_table(variant: SlopeVariant) -> [(HeckeOp, [LinPoly; 5]); 2] {
    let kappa1 = crate::rootdata::dot(WeylElt::W1, &Weight::generic());
    [HeckeOp::UKlPrime, HeckeOp::USiegPrime]
        .map(|op| (op, slope_table_columns().map(|w| slope_pairing(&kappa1, w, op, variant))))
}

/// `lambda(USieg') < 1 + r2` and `lambda(UKl') < 1 + r1 - r2`; the strict
/// version asks `lambda(UKl') < r1 - r2 - 2` instead of the second bound.
pub fn small_slope(r1: i64, r2: i64, slope_sieg: &Rational, slope_kl: &Rational, strict: bool) -> bool {
    let sieg_ok = *slope_sieg < int(1 + r2);
    if strict {
        sieg_ok && *slope_kl < int(r1 - r2 - 2)
    } else {
        sieg_ok && *slope_kl < int(1 + r1 - r2)
    }
}

/// An ordering `(x1, x2, x3, x4)` of the Hecke parameters with
/// `x1 x4 = x2 x3`, and the `U'` eigenvalues of the matching stabilisation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stabilisation {
    pub ordering: [Rational; 4],
    pub u_sieg: Rational,
    pub u_kl: Rational,
    pub ordinary: bool,
    pub p_regular: bool,
}

/// The orbit of an ordering under the Weyl group, which acts on positions
/// through the generators `(1 2)(3 4)` and `(2 3)`.
pub fn weyl_orbit(x: &[Rational; 4]) -> Vec<[Rational; 4]> {
    let mut orbit = alloc::vec![x.clone()];
    let mut i = 0;
    while i < orbit.len() {
        let y = orbit[i].clone();
        for image in [
            [y[1].clone(), y[0].clone(), y[3].clone(), y[2].clone()],
            [y[0].clone(), y[2].clone(), y[1].clone(), y[3].clone()],
        ] {
            if !orbit.contains(&image) {
                orbit.push(image);
            }
        }
        i += 1;
    }
    orbit
}

fn permutations4() -> Vec<[usize; 4]> {
    let mut out = Vec::new();
    for a in 0..4 {
        for b in (0..4).filter(|&b| b != a) {
            for c in (0..4).filter(|&c| c != a && c != b) {
                out.push([a, b, c, 6 - a - b - c]);
            }
        }
    }
    out
}

/// All orderings of `params` with `x1 x4 = x2 x3 = p^{r1+r2+3} chi(p)`,
/// with `USieg'` acting by `x1` and `UKl'` by `x1 x2 / p^{r2+1}`.
pub fn p_stabilisations(
    params: &[Rational; 4],
    p: u64,
    r1: i64,
    r2: i64,
    chi_p: &Rational,
) -> Result<Vec<Stabilisation>> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let pr = int(p as i64);
    let product = pow_int(&pr, r1 + r2 + 3) * chi_p;
    let mut seen: Vec<[Rational; 4]> = Vec::new();
    let mut out = Vec::new();
    for perm in permutations4() {
        let x = perm.map(|i| params[i].clone());
        if &x[0] * &x[3] != product || &x[1] * &x[2] != product || seen.contains(&x) {
            continue;
        }
        seen.push(x.clone());
        let u_sieg = x[0].clone();
        let u_kl = &(&x[0] * &x[1]) / &pow_int(&pr, r2 + 1);
        let unit = |y: &Rational| vp(y, p) == Valuation::Finite(0);
        out.push(Stabilisation {
            ordinary: unit(&u_sieg) && unit(&u_kl),
            p_regular: weyl_orbit(&x).len() == 8,
            ordering: x,
            u_sieg,
            u_kl,
        });
    }
    if out.is_empty() {
        let given: Vec<String> = params.iter().map(format_rational).collect();
        return Err(Error::NoValidOrdering(format!("{} (given {})", format_rational(&product), given.join(", "))));
    }
    Ok(out)
}

/// Hecke parameters of `pi` at `p`, ordered so that `alpha delta = beta gamma
/// = p^{r1+r2+3} chi(p)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeckeParams {
    pub p: u64,
    pub r1: i64,
    pub r2: i64,
    pub chi_p: Rational,
    pub alpha: Rational,
    pub beta: Rational,
    pub gamma: Rational,
    pub delta: Rational,
}

impl HeckeParams {
    pub fn new(p: u64, r1: i64, r2: i64, chi_p: Rational, x: [Rational; 4]) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let [alpha, beta, gamma, delta] = x;
        let product = pow_int(&int(p as i64), r1 + r2 + 3) * &chi_p;
        if &alpha * &delta != product || &beta * &gamma != product {
            return Err(Error::Precondition(format!(
                "alpha delta and beta gamma must both equal p^(r1+r2+3) chi(p) = {product}"
            )));
        }
        Ok(HeckeParams { p, r1, r2, chi_p, alpha, beta, gamma, delta })
    }
}

/// Parameters `a, b` of a `GL(2)` form at `p` with `a b = p^{t2+1} chi2(p)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GL2Params {
    pub p: u64,
    pub t2: i64,
    pub chi2_p: Rational,
    pub a_frak: Rational,
    pub b_frak: Rational,
}

impl GL2Params {
    pub fn new(p: u64, t2: i64, chi2_p: Rational, a_frak: Rational, b_frak: Rational) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let product = pow_int(&int(p as i64), t2 + 1) * &chi2_p;
        if &a_frak * &b_frak != product {
            return Err(Error::Precondition(format!("a b must equal p^(t2+1) chi2(p) = {product}")));
        }
        Ok(GL2Params { p, t2, chi2_p, a_frak, b_frak })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EulerFactor {
    pub value: Rational,
    pub factors: Vec<Rational>,
    /// `v_p(factor - 1) > 0`, so the factor is a `p`-adic unit.
    pub unit_flags: Vec<bool>,
}

impl EulerFactor {
    /// Every factor is a unit by valuation or exactly nonzero.
    pub fn nonvanishing_certified(&self) -> bool {
        self.factors.iter().zip(&self.unit_flags).all(|(f, &u)| u || !f.is_zero())
    }
}

/// The degree 8 Euler factor: `1 - p^{r1+1}/(x y)` for `x` in `{alpha, beta}`
/// and `1 - x y / p^{r1+2}` for `x` in `{gamma, delta}`, `y` in `{a, b}`.
pub fn euler_factor(g: &HeckeParams, s: &GL2Params) -> Result<EulerFactor> {
    if g.p != s.p {
        return Err(Error::Precondition(format!("primes differ: {} and {}", g.p, s.p)));
    }
    let pr = int(g.p as i64);
    let ys = [&s.a_frak, &s.b_frak];
    let mut args = Vec::with_capacity(8);
    for x in [&g.alpha, &g.beta] {
        for y in ys {
            let xy = x * y;
            if xy.is_zero() {
                return Err(Error::DivisionByZero(String::from("zero Hecke parameter")));
            }
            args.push(pow_int(&pr, g.r1 + 1) / xy);
        }
    }
    for x in [&g.gamma, &g.delta] {
        for y in ys {
            args.push(x * y / pow_int(&pr, g.r1 + 2));
        }
    }
    let unit_flags = args.iter().map(|a| vp(a, g.p) > Valuation::Finite(0)).collect();
    let factors: Vec<Rational> = args.iter().map(|a| Rational::one() - a).collect();
    let value = factors.iter().fold(Rational::one(), |acc, f| acc * f);
    Ok(EulerFactor { value, factors, unit_flags })
}
