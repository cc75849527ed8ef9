use alloc::format;
use alloc::vec::Vec;
use core::ops::Mul;

use num_traits::{One, Zero};

use crate::exactnum::{int, pow_int, Rational};
use crate::rootdata::WeylElt;
use crate::{Error, Result};

pub type Mat4 = [[Rational; 4]; 4];
pub type Mat2 = [[Rational; 2]; 2];

fn zeros4() -> Mat4 {
    core::array::from_fn(|_| core::array::from_fn(|_| Rational::zero()))
}

fn from_ints4(rows: [[i64; 4]; 4]) -> Mat4 {
    rows.map(|r| r.map(int))
}

pub(crate) fn mul4(a: &Mat4, b: &Mat4) -> Mat4 {
    let mut out = zeros4();
    for i in 0..4 {
        for k in 0..4 {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..4 {
                out[i][j] += &a[i][k] * &b[k][j];
            }
        }
    }
    out
}

fn transpose4(a: &Mat4) -> Mat4 {
    core::array::from_fn(|i| core::array::from_fn(|j| a[j][i].clone()))
}

fn j_matrix() -> Mat4 {
    from_ints4([[0, 0, 0, 1], [0, 0, 1, 0], [0, -1, 0, 0], [-1, 0, 0, 0]])
}

/// The unique `nu` with `g J g^T = nu J`.
pub fn multiplier(g: &Mat4) -> Result<Rational> {
    let j = j_matrix();
    let gjgt = mul4(&mul4(g, &j), &transpose4(g));
    let nu = gjgt[0][3].clone();
    let expected: Mat4 = j.map(|r| r.map(|x| x * &nu));
    if gjgt != expected || nu.is_zero() {
        return Err(Error::NotSymplectic);
    }
    Ok(nu)
}

/// An element of `GSp(4, Q)` with its multiplier.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GSpMatrix {
    m: Mat4,
    nu: Rational,
}

impl GSpMatrix {
    pub fn new(m: Mat4) -> Result<Self> {
        let nu = multiplier(&m)?;
        Ok(GSpMatrix { m, nu })
    }

    pub fn from_ints(rows: [[i64; 4]; 4]) -> Result<Self> {
        Self::new(from_ints4(rows))
    }

    pub fn identity() -> Self {
        Self::from_ints([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]).expect("identity")
    }

    pub fn j() -> Self {
        GSpMatrix { m: j_matrix(), nu: Rational::one() }
    }

    pub fn s1() -> Self {
        Self::from_ints([[1, 0, 0, 0], [0, 0, 1, 0], [0, -1, 0, 0], [0, 0, 0, 1]]).expect("s1")
    }

    pub fn s2() -> Self {
        Self::from_ints([[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]]).expect("s2")
    }

    pub fn gamma() -> Self {
        Self::from_ints([[1, 0, 0, 0], [1, 1, 0, 0], [0, 0, 1, 0], [0, 0, -1, 1]]).expect("gamma")
    }

    /// `gamma_hat = gamma w1`
    pub fn gamma_hat() -> Self {
        Self::gamma() * Self::s1()
    }

    /// `delta = diag(p^3, p^2, p, 1)`
    pub fn delta(p: u64) -> Self {
        Self::torus([3, 2, 1, 0].map(|e| pow_int(&int(p as i64), e))).expect("delta")
    }

    pub fn torus(d: [Rational; 4]) -> Result<Self> {
        let mut m = zeros4();
        for (i, x) in d.into_iter().enumerate() {
            m[i][i] = x;
        }
        Self::new(m)
    }

    pub fn matrix(&self) -> &Mat4 {
        &self.m
    }

    pub fn entry(&self, i: usize, j: usize) -> &Rational {
        &self.m[i][j]
    }

    pub fn multiplier(&self) -> &Rational {
        &self.nu
    }

    /// `g^{-1} = -J g^T J / nu`, using `J^2 = -1`.
    pub fn inverse(&self) -> Self {
        let j = j_matrix();
        let inv = mul4(&mul4(&j, &transpose4(&self.m)), &j);
        let s = -self.nu.recip();
        GSpMatrix { m: inv.map(|r| r.map(|x| x * &s)), nu: self.nu.recip() }
    }

    /// 2x2 blocks `[[A, B], [C, D]]`.
    pub fn blocks(&self) -> [Mat2; 4] {
        let blk = |r: usize, c: usize| -> Mat2 {
            core::array::from_fn(|i| core::array::from_fn(|j| self.m[r + i][c + j].clone()))
        };
        [blk(0, 0), blk(0, 2), blk(2, 0), blk(2, 2)]
    }

    pub fn is_upper_triangular(&self) -> bool {
        (0..4).all(|i| (0..i).all(|j| self.m[i][j].is_zero()))
    }
}

impl Mul for &GSpMatrix {
    type Output = GSpMatrix;
    fn mul(self, rhs: &GSpMatrix) -> GSpMatrix {
        GSpMatrix { m: mul4(&self.m, &rhs.m), nu: &self.nu * &rhs.nu }
    }
}

impl Mul for GSpMatrix {
    type Output = GSpMatrix;
    fn mul(self, rhs: GSpMatrix) -> GSpMatrix {
        &self * &rhs
    }
}

pub(crate) fn det2(m: &Mat2) -> Rational {
    &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0]
}

pub(crate) fn mul2(a: &Mat2, b: &Mat2) -> Mat2 {
    core::array::from_fn(|i| core::array::from_fn(|j| &a[i][0] * &b[0][j] + &a[i][1] * &b[1][j]))
}

pub(crate) fn inv2(m: &Mat2) -> Option<Mat2> {
    let d = det2(m);
    if d.is_zero() {
        return None;
    }
    Some([
        [&m[1][1] / &d, -&m[0][1] / &d],
        [-&m[1][0] / &d, &m[0][0] / &d],
    ])
}

/// An element `(h1, h2)` of `H = GL(2) x_{GL(1)} GL(2)`: `det h1 = det h2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HMatrix {
    pub h1: Mat2,
    pub h2: Mat2,
}

impl HMatrix {
    pub fn new(h1: Mat2, h2: Mat2) -> Result<Self> {
        let (d1, d2) = (det2(&h1), det2(&h2));
        if d1 != d2 || d1.is_zero() {
            return Err(Error::Precondition(format!("determinants {d1} and {d2} must agree and be nonzero")));
        }
        Ok(HMatrix { h1, h2 })
    }

    pub fn from_ints(h1: [[i64; 2]; 2], h2: [[i64; 2]; 2]) -> Result<Self> {
        Self::new(h1.map(|r| r.map(int)), h2.map(|r| r.map(int)))
    }

    pub fn identity() -> Self {
        Self::from_ints([[1, 0], [0, 1]], [[1, 0], [0, 1]]).expect("identity")
    }

    /// Lower unipotent pair `((1, 0; z1, 1), (1, 0; z2, 1))`.
    pub fn lower_unipotent(z1: Rational, z2: Rational) -> Self {
        let u = |z: Rational| [[Rational::one(), Rational::zero()], [z, Rational::one()]];
        HMatrix { h1: u(z1), h2: u(z2) }
    }

    pub fn det(&self) -> Rational {
        det2(&self.h1)
    }

    pub fn mul(&self, other: &HMatrix) -> HMatrix {
        HMatrix { h1: mul2(&self.h1, &other.h1), h2: mul2(&self.h2, &other.h2) }
    }

    /// `iota(h1, h2)`: `h1` on coordinates 1, 4 and `h2` on 2, 3.
    pub fn iota(&self) -> GSpMatrix {
        let (a, b) = (&self.h1, &self.h2);
        let z = Rational::zero;
        let m = [
            [a[0][0].clone(), z(), z(), a[0][1].clone()],
            [z(), b[0][0].clone(), b[0][1].clone(), z()],
            [z(), b[1][0].clone(), b[1][1].clone(), z()],
            [a[1][0].clone(), z(), z(), a[1][1].clone()],
        ];
        GSpMatrix { m, nu: self.det() }
    }
}

/// A matrix representative of `w`, built from the matrices `s1`, `s2`
/// along a reduced word.
pub fn weyl_matrix(w: WeylElt) -> GSpMatrix {
    let mut frontier: Vec<(WeylElt, GSpMatrix)> = alloc::vec![(WeylElt::ID, GSpMatrix::identity())];
    for _ in 0..=4 {
        if let Some((_, m)) = frontier.iter().find(|(x, _)| *x == w) {
            return m.clone();
        }
        frontier = frontier
            .iter()
            .flat_map(|(x, m)| {
                [(*x * WeylElt::S1, m * &GSpMatrix::s1()), (*x * WeylElt::S2, m * &GSpMatrix::s2())]
            })
            .collect();
    }
    unreachable!("every element has length at most 4")
}

/// The Weyl element of a monomial matrix, read off from its permutation
/// of the torus coordinates.
pub fn weyl_of_matrix(g: &GSpMatrix) -> Option<WeylElt> {
    let mut sigma = [0usize; 4];
    for (i, row) in g.m.iter().enumerate() {
        let nonzero: Vec<usize> = (0..4).filter(|&j| !row[j].is_zero()).collect();
        if nonzero.len() != 1 {
            return None;
        }
        sigma[i] = nonzero[0] + 1;
    }
    WeylElt::all().into_iter().find(|w| w.to_s4() == sigma)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_constants_are_symplectic() {
        assert_eq!(GSpMatrix::j().multiplier(), &int(1));
        assert_eq!(multiplier(GSpMatrix::j().matrix()).unwrap(), int(1));
        assert_eq!(GSpMatrix::identity().multiplier(), &int(1));
        assert_eq!(GSpMatrix::delta(5).multiplier(), &int(125));
        for g in [GSpMatrix::s1(), GSpMatrix::s2(), GSpMatrix::gamma(), GSpMatrix::gamma_hat()] {
            assert_eq!(g.multiplier(), &int(1));
        }
        let gh = GSpMatrix::from_ints([[1, 0, 0, 0], [1, 0, 1, 0], [0, -1, 0, 0], [0, 1, 0, 1]]).unwrap();
        assert_eq!(GSpMatrix::gamma_hat(), gh);
        for w in WeylElt::KOSTANT {
            assert!(multiplier(weyl_matrix(w).matrix()).is_ok());
        }
        let bad = from_ints4([[1, 1, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]);
        assert!(matches!(GSpMatrix::new(bad), Err(Error::NotSymplectic)));
    }

    #[test]
    fn inverse() {
        let g = &(&GSpMatrix::gamma_hat() * &GSpMatrix::delta(3)) * &GSpMatrix::s2();
        assert_eq!(&g * &g.inverse(), GSpMatrix::identity());
    }

    #[test]
    fn weyl_matrices_form_the_weyl_group() {
        let mut group = alloc::vec![GSpMatrix::identity()];
        let mut i = 0;
        while i < group.len() {
            for s in [GSpMatrix::s1(), GSpMatrix::s2()] {
                let g = &group[i] * &s;
                if !group.contains(&g) {
                    group.push(g);
                }
            }
            i += 1;
        }
        // s1^2 = diag(1, -1, -1, 1) and s2^2 = -1: the matrices cover the
        // Weyl group with kernel the diagonal sign matrices in GSp(4)
        assert_eq!(group.len(), 32);
        for g in &group {
            let is_diag = (0..4).all(|i| (0..4).all(|j| i == j || g.entry(i, j).is_zero()));
            assert_eq!(weyl_of_matrix(g) == Some(WeylElt::ID), is_diag);
        }
        let mut images: Vec<WeylElt> = group.iter().map(|g| weyl_of_matrix(g).unwrap()).collect();
        images.sort();
        images.dedup();
        assert_eq!(images.len(), 8);
        for x in WeylElt::all() {
            assert_eq!(weyl_of_matrix(&weyl_matrix(x)), Some(x));
            for y in WeylElt::all() {
                let prod = &weyl_matrix(x) * &weyl_matrix(y);
                assert_eq!(weyl_of_matrix(&prod), Some(x * y));
            }
        }
    }

    #[test]
    fn iota_is_a_homomorphism() {
        let h = HMatrix::from_ints([[2, 1], [1, 1]], [[1, 3], [0, 1]]).unwrap();
        let k = HMatrix::from_ints([[1, 0], [4, 1]], [[3, 1], [2, 1]]).unwrap();
        assert_eq!(h.mul(&k).iota(), &h.iota() * &k.iota());
        assert!(multiplier(h.iota().matrix()).is_ok());
        assert!(HMatrix::from_ints([[2, 0], [0, 1]], [[1, 0], [0, 1]]).is_err());
    }
}
