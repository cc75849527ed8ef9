use num_traits::{One, Zero};

use super::matrix::{inv2, mul2, mul4, GSpMatrix, HMatrix, Mat2, Mat4};
use super::weyl_matrix;
use crate::exactnum::Rational;
use crate::rootdata::WeylElt;
use crate::{Error, Result};

/// A plane in `Q^4` given by two spanning rows; points of `P_G \ G`
/// are the Lagrangian ones, `P_G g` being the span of the last two rows of `g`.
pub type Plane = [[Rational; 4]; 2];

fn rank2(m: &[[Rational; 2]; 2]) -> usize {
    let det = &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0];
    if !det.is_zero() {
        2
    } else if m.iter().flatten().all(Zero::is_zero) {
        0
    } else {
        1
    }
}

/// Cell of a plane from the span of its first two columns: zero gives
/// `id`, a span `(0, *)` gives `w1`, another line gives `w2`, all gives `w3`.
pub fn plane_cell(plane: &Plane) -> WeylElt {
    let block = [
        [plane[0][0].clone(), plane[0][1].clone()],
        [plane[1][0].clone(), plane[1][1].clone()],
    ];
    match rank2(&block) {
        0 => WeylElt::ID,
        1 if block[0][0].is_zero() && block[1][0].is_zero() => WeylElt::W1,
        1 => WeylElt::W2,
        _ => WeylElt::W3,
    }
}

pub fn bruhat_cell(g: &GSpMatrix) -> WeylElt {
    let m = g.matrix();
    plane_cell(&[m[2].clone(), m[3].clone()])
}

fn plane_times(plane: &Plane, g: &Mat4) -> Plane {
    let rows: Mat4 = [plane[0].clone(), plane[1].clone(), zero_row(), zero_row()];
    let prod = mul4(&rows, g);
    [prod[0].clone(), prod[1].clone()]
}

fn zero_row() -> [Rational; 4] {
    core::array::from_fn(|_| Rational::zero())
}

/// Coordinates `Z = [[x, y], [z, x]]` on the chart `[Z | 1] w`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BigCellCoord<R = Rational> {
    pub x: R,
    pub y: R,
    pub z: R,
}

impl BigCellCoord {
    pub fn new(x: Rational, y: Rational, z: Rational) -> Self {
        BigCellCoord { x, y, z }
    }

    pub fn zero() -> Self {
        Self::new(Rational::zero(), Rational::zero(), Rational::zero())
    }

    pub fn matrix(&self) -> Mat2 {
        [[self.x.clone(), self.y.clone()], [self.z.clone(), self.x.clone()]]
    }

    fn from_matrix(z: Mat2) -> Self {
        assert_eq!(z[0][0], z[1][1], "chart coordinates must stay off-symmetric");
        let [[x, y], [zz, _]] = z;
        BigCellCoord { x, y, z: zz }
    }

    /// The plane `[Z | 1] w`.
    pub fn plane(&self, w: WeylElt) -> Plane {
        let z = self.matrix();
        let o = Rational::one;
        let n = Rational::zero;
        let rows = [
            [z[0][0].clone(), z[0][1].clone(), o(), n()],
            [z[1][0].clone(), z[1][1].clone(), n(), o()],
        ];
        plane_times(&rows, weyl_matrix(w).matrix())
    }
}

/// Coordinates of a plane on the chart at `w`, if it lies there.
pub fn chart(w: WeylElt, plane: &Plane) -> Option<BigCellCoord> {
    let q = plane_times(plane, weyl_matrix(w).inverse().matrix());
    let left: Mat2 = [[q[0][0].clone(), q[0][1].clone()], [q[1][0].clone(), q[1][1].clone()]];
    let right: Mat2 = [[q[0][2].clone(), q[0][3].clone()], [q[1][2].clone(), q[1][3].clone()]];
    let z = mul2(&inv2(&right)?, &left);
    Some(BigCellCoord::from_matrix(z))
}

fn conjugated_blocks(w: WeylElt, g: &GSpMatrix) -> [Mat2; 4] {
    let wm = weyl_matrix(w);
    (&(&wm * g) * &wm.inverse()).blocks()
}

/// `Z . g = (Z B + D)^{-1} (Z A + C)` where `w g w^{-1} = [[A, B], [C, D]]`.
/// This is a right action: `Z . (g h) = (Z . g) . h`.
pub fn act_bigcell(w: WeylElt, z: &BigCellCoord, g: &GSpMatrix) -> Result<BigCellCoord> {
    let [a, b, c, d] = conjugated_blocks(w, g);
    let zm = z.matrix();
    let add = |x: Mat2, y: &Mat2| -> Mat2 { core::array::from_fn(|i| core::array::from_fn(|j| &x[i][j] + &y[i][j])) };
    let denom = add(mul2(&zm, &b), &d);
    let inv = inv2(&denom).ok_or(Error::LeftBigCell)?;
    Ok(BigCellCoord::from_matrix(mul2(&inv, &add(mul2(&zm, &a), &c))))
}

/// The same action for coordinates in any module over `Q` (for instance
/// symbolic ones), available when `B = 0` so nothing needs inverting.
pub fn act_bigcell_parabolic<M>(w: WeylElt, z: &BigCellCoord<M>, g: &GSpMatrix) -> Result<BigCellCoord<M>>
where
    M: crate::exactnum::Module + From<Rational>,
{
    let [a, b, c, d] = conjugated_blocks(w, g);
    if b.iter().flatten().any(|x| !Zero::is_zero(x)) {
        return Err(Error::Unsupported(alloc::string::String::from(
            "symbolic big-cell action needs w g w^-1 block upper-triangular",
        )));
    }
    let dinv = inv2(&d).ok_or(Error::Singular)?;
    let zm = [[z.x.clone(), z.y.clone()], [z.z.clone(), z.x.clone()]];
    // Z A + C
    let za: [[M; 2]; 2] = core::array::from_fn(|i| {
        core::array::from_fn(|j| {
            zm[i][0].scale(&a[0][j]).add(&zm[i][1].scale(&a[1][j])).add(&M::from(c[i][j].clone()))
        })
    });
    let out: [[M; 2]; 2] = core::array::from_fn(|i| {
        core::array::from_fn(|j| za[0][j].scale(&dinv[i][0]).add(&za[1][j].scale(&dinv[i][1])))
    });
    assert_eq!(out[0][0], out[1][1], "chart coordinates must stay off-symmetric");
    let [[x, y], [zz, _]] = out;
    Ok(BigCellCoord { x, y, z: zz })
}

/// A point of `B_H \ H = P^1 x P^1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HPoint {
    /// `((x : y), (X : Y))`
    Projective { x: Rational, y: Rational, xx: Rational, yy: Rational },
    /// The coset of `((1, 0; z1, 1), (1, 0; z2, 1))`.
    Affine { z1: Rational, z2: Rational },
}

impl HPoint {
    pub fn affine(z1: Rational, z2: Rational) -> Self {
        HPoint::Affine { z1, z2 }
    }

    pub fn projective(x: Rational, y: Rational, xx: Rational, yy: Rational) -> Result<Self> {
        if (x.is_zero() && y.is_zero()) || (xx.is_zero() && yy.is_zero()) {
            return Err(Error::Precondition(alloc::string::String::from("zero projective coordinate")));
        }
        Ok(HPoint::Projective { x, y, xx, yy })
    }

    /// A coset `B_H h` with bottom row `(c, d)` is the point `(c : -d)`,
    /// so the affine point `(z1, z2)` is `((-z1 : 1), (-z2 : 1))`.
    pub fn to_projective(&self) -> [Rational; 4] {
        match self {
            HPoint::Projective { x, y, xx, yy } => [x.clone(), y.clone(), xx.clone(), yy.clone()],
            HPoint::Affine { z1, z2 } => [-z1.clone(), Rational::one(), -z2.clone(), Rational::one()],
        }
    }

    /// Affine coordinates, if the point lies in the big cell.
    pub fn to_affine(&self) -> Option<(Rational, Rational)> {
        match self {
            HPoint::Affine { z1, z2 } => Some((z1.clone(), z2.clone())),
            HPoint::Projective { x, y, xx, yy } => {
                if y.is_zero() || yy.is_zero() {
                    None
                } else {
                    Some((-(x / y), -(xx / yy)))
                }
            }
        }
    }

    /// An element of `H` whose coset is this point.
    pub fn representative(&self) -> HMatrix {
        let [x, y, xx, yy] = self.to_projective();
        let lift = |c: Rational, d: Rational| -> Mat2 {
            if !d.is_zero() {
                [[d.recip(), Rational::zero()], [c, d]]
            } else {
                [[Rational::zero(), -c.recip()], [c, d]]
            }
        };
        HMatrix::new(lift(x, -y), lift(xx, -yy)).expect("both factors have determinant one")
    }

    /// `(z1, z2) . h`, acting on each factor by `z -> (z b + d)^{-1} (z a + c)`.
    pub fn act(&self, h: &HMatrix) -> Option<HPoint> {
        let (z1, z2) = self.to_affine()?;
        let one = |z: Rational, m: &Mat2| -> Option<Rational> {
            let den = &z * &m[0][1] + &m[1][1];
            (!den.is_zero()).then(|| (&z * &m[0][0] + &m[1][0]) / den)
        };
        Some(HPoint::affine(one(z1, &h.h1)?, one(z2, &h.h2)?))
    }
}

/// `iota_hat(z1, z2) = [[z2, z2], [z1 + z2, z2]]` in the chart at `w1`.
pub fn iota_hat(z1: &Rational, z2: &Rational) -> BigCellCoord {
    BigCellCoord::new(z2.clone(), z2.clone(), z1 + z2)
}

/// The plane spanned by `(x, -y, 0, -y)` and `(X, Y, X, 0)`.
pub fn iota_hat_plane(pt: &HPoint) -> Plane {
    let [x, y, xx, yy] = pt.to_projective();
    let z = Rational::zero;
    [[x, -y.clone(), z(), -y], [xx.clone(), yy, xx, z()]]
}

/// `P_G iota(h) gamma_hat` for a representative `h` of the point.
pub fn iota_hat_matrix(pt: &HPoint) -> GSpMatrix {
    &pt.representative().iota() * &GSpMatrix::gamma_hat()
}

pub fn embedded_cell(pt: &HPoint) -> WeylElt {
    plane_cell(&iota_hat_plane(pt))
}

/// Whether two spanning sets give the same plane.
#[cfg(test)]
pub(crate) fn same_plane(p: &Plane, q: &Plane) -> bool {
    let m = crate::exactnum::Matrix::from_rows(
        p.iter().chain(q.iter()).map(|r| r.to_vec()).collect(),
    );
    m.rank() == 2
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, rat};
    use proptest::prelude::*;

    fn r(n: i64) -> Rational {
        int(n)
    }

    #[test]
    fn cells_of_named_matrices() {
        assert_eq!(bruhat_cell(&GSpMatrix::identity()), WeylElt::ID);
        assert_eq!(bruhat_cell(&GSpMatrix::s1()), WeylElt::W1);
        assert_eq!(bruhat_cell(&GSpMatrix::j()), WeylElt::W3);
        for w in WeylElt::KOSTANT {
            assert_eq!(bruhat_cell(&weyl_matrix(w)), w);
        }
        assert_eq!(bruhat_cell(&GSpMatrix::gamma_hat()), WeylElt::W1);
    }

    #[test]
    fn delta_scaling() {
        let p = 5;
        let z = BigCellCoord::new(r(2), r(3), r(7));
        let out = act_bigcell(WeylElt::W1, &z, &GSpMatrix::delta(p)).unwrap();
        assert_eq!(out, BigCellCoord::new(r(10), rat(3, 5), r(875)));
        assert_eq!(act_bigcell(WeylElt::W1, &z, &GSpMatrix::identity()).unwrap(), z);
        // symbolically: (x, y, z) -> (p x, y / p, p^3 z)
        use crate::exactnum::{LinPoly, Symbol};
        let s = BigCellCoord {
            x: LinPoly::symbol(Symbol::T1),
            y: LinPoly::symbol(Symbol::T2),
            z: LinPoly::symbol(Symbol::C),
        };
        let out = act_bigcell_parabolic(WeylElt::W1, &s, &GSpMatrix::delta(p)).unwrap();
        assert_eq!(out.x, LinPoly::term(Symbol::T1, r(5)));
        assert_eq!(out.y, LinPoly::term(Symbol::T2, rat(1, 5)));
        assert_eq!(out.z, LinPoly::term(Symbol::C, r(125)));
    }

    #[test]
    fn chart_round_trip() {
        let z = BigCellCoord::new(r(1), rat(2, 3), r(-4));
        for w in WeylElt::all() {
            assert_eq!(chart(w, &z.plane(w)), Some(z.clone()));
        }
        // leaving the chart
        let g = weyl_matrix(WeylElt::W1).inverse();
        assert!(matches!(act_bigcell(WeylElt::W1, &BigCellCoord::zero(), &g), Err(Error::LeftBigCell)));
    }

    #[test]
    fn iota_hat_examples() {
        let origin = HPoint::affine(r(0), r(0));
        assert_eq!(iota_hat(&r(0), &r(0)), BigCellCoord::zero());
        assert_eq!(bruhat_cell(&iota_hat_matrix(&origin)), WeylElt::W1);
        assert_eq!(iota_hat(&r(1), &r(2)).matrix(), [[r(2), r(2)], [r(3), r(2)]]);
        let pt = HPoint::projective(r(1), r(2), r(3), r(4)).unwrap();
        assert_eq!(iota_hat_plane(&pt), [[r(1), r(-2), r(0), r(-2)], [r(3), r(4), r(3), r(0)]]);
    }

    #[test]
    fn embedded_cells() {
        let inf = |a: i64, b: i64, c: i64, d: i64| HPoint::projective(r(a), r(b), r(c), r(d)).unwrap();
        assert_eq!(embedded_cell(&inf(0, 1, 0, 1)), WeylElt::W1);
        // full-rank block needs x Y + y X != 0, which fails here
        assert_eq!(embedded_cell(&inf(1, 0, 1, 0)), WeylElt::W2);
        assert_eq!(embedded_cell(&inf(1, 0, 0, 1)), WeylElt::W3);
        assert_eq!(embedded_cell(&inf(0, 1, 1, 0)), WeylElt::W3);
        assert_eq!(embedded_cell(&inf(1, 1, 1, 1)), WeylElt::W3);
        assert_eq!(embedded_cell(&inf(1, 1, 1, -1)), WeylElt::W2);
    }

    fn q() -> impl Strategy<Value = Rational> {
        (-50i64..50, 1i64..20).prop_map(|(n, d)| rat(n, d))
    }

    fn hpoint() -> impl Strategy<Value = HPoint> {
        prop_oneof![
            (q(), q()).prop_map(|(a, b)| HPoint::affine(a, b)),
            (q(), q(), q(), q())
                .prop_filter_map("nonzero", |(a, b, c, d)| HPoint::projective(a, b, c, d).ok()),
        ]
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn embedded_cell_is_never_id(pt in hpoint()) {
            let cell = embedded_cell(&pt);
            prop_assert_ne!(cell, WeylElt::ID);
            let [x, y, xx, yy] = pt.to_projective();
            prop_assert_eq!(cell == WeylElt::W1, x.is_zero() && xx.is_zero());
            prop_assert_eq!(cell == WeylElt::W3, !(&x * &yy + &y * &xx).is_zero());
        }

        #[test]
        fn iota_hat_routes_agree(pt in hpoint()) {
            let plane = iota_hat_plane(&pt);
            let m = iota_hat_matrix(&pt);
            let mm = m.matrix();
            prop_assert!(same_plane(&plane, &[mm[2].clone(), mm[3].clone()]));
            prop_assert_eq!(bruhat_cell(&m), embedded_cell(&pt));
            if let HPoint::Affine { z1, z2 } = &pt {
                prop_assert_eq!(chart(WeylElt::W1, &plane), Some(iota_hat(z1, z2)));
            }
        }
    }
}
