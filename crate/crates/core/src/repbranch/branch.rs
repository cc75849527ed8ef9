use alloc::format;
use alloc::vec::Vec;

use super::model::{act_model, kraken, LeviElement, ModelMode, ModelWeight, PolyModel};
use crate::exactnum::{int, nullspace, pow, LaurentPoly, LaurentVar, LinPoly, Matrix, Module, Rational, Ring};
use crate::rootdata::{lambda_of, Weight, WeylElt};
use crate::{Error, Result};

/// Outcome of [`branching_dim`].
#[derive(Debug, Clone, PartialEq)]
pub struct Branching {
    /// Dimension of the `tau^{-1}` eigenspace in the dual model.
    pub dim: usize,
    /// Eigenvector normalised by `f(id) = 1` (empty when `dim != 1`).
    pub functional: Vec<Rational>,
    pub lambda: i64,
    /// `-w_{0,M} kappa1`.
    pub kappa_a: Weight,
}

fn int_of(x: &LinPoly, what: &str) -> Result<i64> {
    x.to_integer().map_err(|_| Error::Precondition(format!("{what} = {x} must be an integer")))
}

// x^a y^b nu^{(c - a - b)/2}
fn character_value(chi: [i64; 3], x: &Rational, y: &Rational, nu: &Rational) -> Rational {
    let [a, b, c] = chi;
    pow(x, a).unwrap() * pow(y, b).unwrap() * pow(nu, (c - a - b) / 2).unwrap()
}

fn action_matrix(weight: &ModelWeight, dim: usize, g: &LeviElement<Rational>) -> Result<Matrix> {
    let mut m = Matrix::zeros(dim, dim);
    for k in 0..dim {
        let mut basis = alloc::vec![int(0); dim];
        basis[k] = int(1);
        let image = act_model(g, &PolyModel::new(weight.clone(), basis, ModelMode::Polynomial)?)?;
        for i in 0..dim {
            m[(i, k)] = image.coeff(i);
        }
    }
    Ok(m)
}

/// Dimension of the space of `tau^{-1}`-eigenvectors for the conjugated torus
/// `gamma^{-1} T gamma` acting on the polynomial model of `V_{-w_{0,M} kappa1}`,
/// with `kappa1 = (r1, -r2 - 2; r1 + r2)`.
pub fn branching_dim(kappa1: &Weight, tau: &Weight) -> Result<Branching> {
    let r1 = int_of(&kappa1.a, "r1")?;
    let r2 = -int_of(&kappa1.b, "-r2 - 2")? - 2;
    if int_of(&kappa1.c, "r1 + r2")? != r1 + r2 {
        return Err(Error::Precondition(format!("kappa1 = {kappa1} is not of the form (r1, -r2-2; r1+r2)")));
    }
    if !(r1 >= r2 && r2 >= -1) {
        return Err(Error::Precondition(format!("need r1 >= r2 >= -1, got r1={r1}, r2={r2}")));
    }
    let (t1, t2) = (int_of(&tau.a, "t1")?, int_of(&tau.b, "t2")?);
    if t1 < -1 || t2 < -1 {
        return Err(Error::Incompatible(format!("t1 = {t1}, t2 = {t2} must both be >= -1")));
    }
    let nu = Weight::ints(r1, r2, r1 + r2)?;
    let lambda = lambda_of(&nu, tau)?.to_integer()?;

    let kappa_a = -WeylElt::WM_MAX.act(kappa1);
    let weight = ModelWeight::from_weight(&kappa_a);
    let dim = (r1 + r2 + 3) as usize;
    let chi = [-t1, -t2, -r1 - r2];

    let mut stacked = Vec::new();
    for (x, y, n) in [(2, 3, 1), (5, 7, 1)] {
        let (x, y, n) = (int(x), int(y), int(n));
        let g = LeviElement::conjugated_torus(&x, &y, &n);
        let a = action_matrix(&weight, dim, &g)?;
        let ev = character_value(chi, &x, &y, &n);
        for i in 0..dim {
            stacked.push((0..dim).map(|j| if i == j { &a[(i, j)] - &ev } else { a[(i, j)].clone() }).collect());
        }
    }
    let kernel = nullspace(&Matrix::from_rows(stacked));
    let mut out = Branching { dim: kernel.len(), functional: Vec::new(), lambda, kappa_a };
    if kernel.len() != 1 {
        return Ok(out);
    }
    let v = &kernel[0];
    if Module::is_zero(&v[0]) {
        return Err(Error::VerificationFailed { index: 0, detail: format!("eigenvector vanishes at the identity") });
    }
    let functional: Vec<Rational> = v.iter().map(|c| c / &v[0]).collect();

    // symbolic certificate for the candidate
    let sym = PolyModel::new(
        weight.clone(),
        functional.iter().cloned().map(LaurentPoly::from_rational).collect(),
        ModelMode::Polynomial,
    )?;
    let (x, y, n) = (LaurentPoly::var(LaurentVar::X), LaurentPoly::var(LaurentVar::Y), LaurentPoly::var(LaurentVar::Nu));
    let image = act_model(&LeviElement::conjugated_torus(&x, &y, &n), &sym)?;
    let eigen = LaurentPoly::monomial(int(1), [chi[0] as i32, chi[1] as i32, ((chi[2] - chi[0] - chi[1]) / 2) as i32]);
    let expected = sym.scale_by(&eigen);
    if let Some(i) = (0..dim).find(|&i| image.coeff(i) != expected.coeff(i)) {
        return Err(Error::VerificationFailed { index: i, detail: format!("symbolic eigen-equation at z^{i}") });
    }
    let k: PolyModel<Rational> = kraken(lambda, &weight, ModelMode::Polynomial)?;
    if let Some(i) = (0..dim).find(|&i| functional[i] != k.coeff(i)) {
        return Err(Error::VerificationFailed {
            index: i,
            detail: format!("eigenvector {} differs from kraken coefficient {}", functional[i], k.coeff(i)),
        });
    }
    out.functional = functional;
    Ok(out)
}
