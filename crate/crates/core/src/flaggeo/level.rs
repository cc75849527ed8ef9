use alloc::format;

use super::matrix::{GSpMatrix, HMatrix};
use crate::exactnum::{int, vp, Module, Rational, Valuation};
use crate::{Error, Result};

/// Depth-`t` level groups at `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LevelGroup {
    /// `g` in `G(Z_p)`, upper triangular mod `p^t`.
    IwG { t: u32 },
    /// `h` in `H(Z_p)`, both factors upper triangular mod `p^t`.
    IwH { t: u32 },
    /// `h = ((x, y; 0, z), (x, -y; 0, z)) mod p^t`.
    DiamondH { t: u32 },
}

/// The element being tested: `G` groups take a `GSpMatrix`, `H` groups an `HMatrix`.
#[derive(Debug, Clone, Copy)]
pub enum LevelElement<'a> {
    G(&'a GSpMatrix),
    H(&'a HMatrix),
}

fn integral(x: &Rational, p: u64) -> Result<()> {
    if vp(x, p) < Valuation::Finite(0) {
        return Err(Error::NonIntegralEntry(format!("{x} is not {p}-integral")));
    }
    Ok(())
}

fn depth(x: &Rational, p: u64, t: u32) -> bool {
    vp(x, p) >= Valuation::Finite(t as i64)
}

fn is_unit(x: &Rational, p: u64) -> bool {
    vp(x, p) == Valuation::Finite(0)
}

fn in_iwh(h: &HMatrix, p: u64, t: u32) -> Result<bool> {
    for x in h.h1.iter().chain(h.h2.iter()).flatten() {
        integral(x, p)?;
    }
    Ok(is_unit(&h.det(), p) && depth(&h.h1[1][0], p, t) && depth(&h.h2[1][0], p, t))
}

pub fn level_membership(elt: LevelElement<'_>, group: LevelGroup, p: u64) -> Result<bool> {
    match (elt, group) {
        (LevelElement::G(g), LevelGroup::IwG { t }) => {
            for x in g.matrix().iter().flatten() {
                integral(x, p)?;
            }
            let below = (0..4).all(|i| (0..i).all(|j| depth(g.entry(i, j), p, t)));
            Ok(is_unit(g.multiplier(), p) && below)
        }
        (LevelElement::H(h), LevelGroup::IwH { t }) => in_iwh(h, p, t),
        (LevelElement::H(h), LevelGroup::DiamondH { t }) => {
            if !in_iwh(h, p, t)? {
                return Ok(false);
            }
            let (a, b) = (&h.h1, &h.h2);
            Ok(depth(&(&a[0][0] - &b[0][0]), p, t)
                && depth(&(&a[1][1] - &b[1][1]), p, t)
                && depth(&(&a[0][1] + &b[0][1]), p, t))
        }
        _ => Err(Error::Incompatible(format!("{group:?} does not contain elements of this shape"))),
    }
}

/// `gamma^{-1} (diag(t1, t2), nu) gamma = ((t1, 0; t2 - t1, t2), nu)` on
/// the Levi `GL(2) x GL(1)`, where `gamma` has `GL(2)` part `(1, 0; 1, 1)`.
pub fn gamma_conjugate<M: Module>(t1: &M, t2: &M, nu: &M) -> ([[M; 2]; 2], M) {
    let g: [[i64; 2]; 2] = [[1, 0], [1, 1]];
    let ginv: [[i64; 2]; 2] = [[1, 0], [-1, 1]];
    let tau = [[t1.clone(), M::zero()], [M::zero(), t2.clone()]];
    let lin = |coeffs: [(i64, &M); 2]| coeffs[0].1.scale(&int(coeffs[0].0)).add(&coeffs[1].1.scale(&int(coeffs[1].0)));
    let left: [[M; 2]; 2] = core::array::from_fn(|i| {
        core::array::from_fn(|j| lin([(ginv[i][0], &tau[0][j]), (ginv[i][1], &tau[1][j])]))
    });
    let out = core::array::from_fn(|i| {
        core::array::from_fn(|j| lin([(g[0][j], &left[i][0]), (g[1][j], &left[i][1])]))
    });
    (out, nu.clone())
}
