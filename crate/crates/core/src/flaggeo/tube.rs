use alloc::format;

use super::cells::{chart, iota_hat_plane, HPoint, Plane};
use crate::exactnum::{vp, Rational, Valuation};
use crate::rootdata::WeylElt;
use crate::{Error, Result};

/// Regions of `FL_G` and `FL_H` around the `w1` cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Region {
    /// `U_n^G`
    UG,
    /// `I_{m,n}^G`
    I,
    /// `Z_m^H = {z_i in Bbar°_m}`
    ZH,
    /// `{z_i in Bbar°_m + p^t Z_p}`, for any `m >= 0`
    ZHExtended,
    /// `U_n^H = iota_hat^{-1}(U_n^G)`
    UH,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TubePoint {
    G(Plane),
    H(HPoint),
}

fn v(x: &Rational, p: u64) -> Valuation {
    vp(x, p)
}

fn modp(x: &Rational, p: u64) -> u64 {
    let pp = num_bigint::BigInt::from(p);
    let n = (x.numer() % &pp + &pp) % &pp;
    let d = (x.denom() % &pp + &pp) % &pp;
    let n: u64 = n.try_into().expect("reduced");
    let d: u64 = d.try_into().expect("reduced");
    n * pow_mod(d, p - 2, p) % p
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = ((acc as u128 * b as u128) % m as u128) as u64;
        }
        b = ((b as u128 * b as u128) % m as u128) as u64;
        e >>= 1;
    }
    acc
}

fn scale_row(row: &[Rational; 4], k: &Rational) -> [Rational; 4] {
    core::array::from_fn(|i| &row[i] * k)
}

fn min_val(rows: &[&[Rational; 4]], p: u64) -> Option<(usize, usize, i64)> {
    let mut best: Option<(usize, usize, i64)> = None;
    for (i, row) in rows.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            if let Valuation::Finite(k) = v(x, p) {
                if best.is_none_or(|(_, _, b)| k < b) {
                    best = Some((i, j, k));
                }
            }
        }
    }
    best
}

/// A `Z_(p)`-basis of the saturated lattice `plane ∩ Z_(p)^4`, reduced mod `p`.
pub fn reduce_plane_mod_p(plane: &Plane, p: u64) -> Result<[[u64; 4]; 2]> {
    let pr = Rational::from_integer((p as i64).into());
    let (i, j, k) = min_val(&[&plane[0], &plane[1]], p).ok_or(Error::Singular)?;
    let first = scale_row(&plane[i], &crate::exactnum::pow_int(&pr, -k));
    let other = &plane[1 - i];
    let factor = &other[j] / &first[j];
    let second: [Rational; 4] = core::array::from_fn(|c| &other[c] - &(&factor * &first[c]));
    let (_, _, k2) = min_val(&[&second], p).ok_or(Error::Singular)?;
    let second = scale_row(&second, &crate::exactnum::pow_int(&pr, -k2));
    Ok([first.map(|x| modp(&x, p)), second.map(|x| modp(&x, p))])
}

fn cell_mod_p(rows: &[[u64; 4]; 2], p: u64) -> WeylElt {
    let [a, b] = [rows[0][0], rows[0][1]];
    let [c, d] = [rows[1][0], rows[1][1]];
    let det = (a * d % p + p - b * c % p) % p;
    if det != 0 {
        WeylElt::W3
    } else if a == 0 && b == 0 && c == 0 && d == 0 {
        WeylElt::ID
    } else if a == 0 && c == 0 {
        WeylElt::W1
    } else {
        WeylElt::W2
    }
}

fn check_params(region: Region, m: i64, n: i64, t: i64) -> Result<()> {
    let ok = match region {
        // 0 <= n <= m < t, with m > n unless n = 0
        Region::I => 0 <= n && n <= m && m < t && (n == 0 || m > n),
        Region::UG | Region::UH => 0 <= n && n < t,
        Region::ZH => 0 <= m && m < t,
        Region::ZHExtended => 0 <= m && t >= 1,
    };
    if ok {
        Ok(())
    } else {
        Err(Error::TubeParameters { m, n, t })
    }
}

fn in_ug(plane: &Plane, n: i64, p: u64) -> Result<bool> {
    if n == 0 {
        let rows = reduce_plane_mod_p(plane, p)?;
        return Ok(cell_mod_p(&rows, p) != WeylElt::ID);
    }
    Ok(match chart(WeylElt::W1, plane) {
        Some(z) => {
            v(&z.x, p) > Valuation::Finite(n) && v(&z.z, p) > Valuation::Finite(n) && v(&z.y, p) >= Valuation::Finite(0)
        }
        None => false,
    })
}

/// Membership of a rank-1 point. On such points the closed and open discs
/// of each radius coincide, so every condition is a valuation inequality:
/// `x in Bbar°_m` iff `v(x) > m`, and `y in B_n + Z_p` iff `v(y) >= 0`.
pub fn tube_membership(point: &TubePoint, region: Region, m: i64, n: i64, t: i64, p: u64) -> Result<bool> {
    check_params(region, m, n, t)?;
    match (point, region) {
        (TubePoint::G(plane), Region::UG) => in_ug(plane, n, p),
        (TubePoint::G(plane), Region::I) => Ok(match chart(WeylElt::W1, plane) {
            Some(z) => {
                v(&z.x, p) > Valuation::Finite(m)
                    && v(&z.z, p) > Valuation::Finite(m)
                    && v(&z.y, p) >= Valuation::Finite(0)
            }
            None => false,
        }),
        (TubePoint::H(pt), Region::ZH | Region::ZHExtended) => {
            let bound = |x: &Rational| {
                if region == Region::ZHExtended && m >= t {
                    v(x, p) >= Valuation::Finite(t)
                } else {
                    v(x, p) > Valuation::Finite(m)
                }
            };
            Ok(pt.to_affine().is_some_and(|(z1, z2)| bound(&z1) && bound(&z2)))
        }
        (TubePoint::H(pt), Region::UH) => {
            if n == 0 {
                return Ok(true);
            }
            in_ug(&iota_hat_plane(pt), n, p)
        }
        _ => Err(Error::Incompatible(format!("{region:?} is not a region for this kind of point"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, rat};
    use crate::flaggeo::sample;
    use crate::flaggeo::{iota_hat, BigCellCoord};
    use proptest::prelude::*;

    fn gpoint(x: Rational, y: Rational, z: Rational) -> TubePoint {
        TubePoint::G(BigCellCoord::new(x, y, z).plane(WeylElt::W1))
    }

    #[test]
    fn examples() {
        let p = 5;
        let pt = gpoint(int(5), int(0), int(5));
        assert!(tube_membership(&pt, Region::I, 0, 0, 1, p).unwrap());
        let pt = gpoint(int(1), int(0), int(5));
        for m in 0..4 {
            assert!(!tube_membership(&pt, Region::I, m, 0, m + 1, p).unwrap());
        }
        assert!(matches!(
            tube_membership(&pt, Region::I, 1, 1, 3, p),
            Err(Error::TubeParameters { .. })
        ));
        assert!(tube_membership(&pt, Region::I, 2, 0, 2, p).is_err());
        let h = TubePoint::H(HPoint::affine(int(0), int(0)));
        assert!(tube_membership(&h, Region::UH, 0, 2, 3, p).unwrap());
        assert!(tube_membership(&h, Region::I, 0, 0, 1, p).is_err());
        // the extended version keeps working past m = t
        let h = TubePoint::H(HPoint::affine(int(25), int(125)));
        assert!(tube_membership(&h, Region::ZHExtended, 5, 0, 2, p).unwrap());
        assert!(!tube_membership(&h, Region::ZHExtended, 5, 0, 3, p).unwrap());
        assert!(tube_membership(&h, Region::ZH, 1, 0, 2, p).unwrap());
    }

    #[test]
    fn u0_contains_points_off_the_chart() {
        // x and z may run off to infinity in U_0 but not in I_{0,0}
        let p = 3;
        let pt = gpoint(rat(1, 3), int(0), int(0));
        assert!(tube_membership(&pt, Region::UG, 0, 0, 1, p).unwrap());
        assert!(!tube_membership(&pt, Region::I, 0, 0, 1, p).unwrap());
        // the id cell reduces to id mod p
        let id = TubePoint::G([[int(0), int(0), int(1), int(0)], [int(0), int(0), int(0), int(3)]]);
        assert!(!tube_membership(&id, Region::UG, 0, 0, 1, p).unwrap());
        let near_id = TubePoint::G(BigCellCoord::new(int(3), int(6), int(-3)).plane(WeylElt::ID));
        assert!(!tube_membership(&near_id, Region::UG, 0, 0, 1, p).unwrap());
    }

    fn valid_mnt() -> impl Strategy<Value = (i64, i64, i64)> {
        (0i64..4, 0i64..4, 1i64..3).prop_filter_map("0 <= n <= m < t", |(m, n, dt)| {
            let t = m + dt;
            (n <= m && (n == 0 || m > n)).then_some((m, n, t))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(500))]
        #[test]
        fn pullback_of_i_is_z(pt in sample::hpoint(3), (m, n, t) in valid_mnt()) {
            let p = 3;
            let z = tube_membership(&TubePoint::H(pt.clone()), Region::ZH, m, n, t, p).unwrap();
            let i = tube_membership(&TubePoint::G(iota_hat_plane(&pt)), Region::I, m, n, t, p).unwrap();
            prop_assert_eq!(z, i);
            if let Some((z1, z2)) = pt.to_affine() {
                let g = TubePoint::G(iota_hat(&z1, &z2).plane(WeylElt::W1));
                prop_assert_eq!(tube_membership(&g, Region::I, m, n, t, p).unwrap(), z);
            }
        }

        #[test]
        fn i_sits_inside_u(x in sample::small_rational(3), y in sample::small_rational(3),
                           z in sample::small_rational(3), (m, n, t) in valid_mnt()) {
            let p = 3;
            let pt = gpoint(x, y, z);
            if tube_membership(&pt, Region::I, m, n, t, p).unwrap() {
                prop_assert!(tube_membership(&pt, Region::UG, m, n, t, p).unwrap());
            }
            if n > 0 {
                let lhs = tube_membership(&pt, Region::I, m, n, t, p).unwrap();
                let rhs = tube_membership(&pt, Region::I, m, 0, t, p).unwrap()
                    && tube_membership(&pt, Region::UG, m, n, t, p).unwrap();
                prop_assert_eq!(lhs, rhs);
            }
        }

        #[test]
        fn tubes_are_iwahori_stable(x in sample::small_rational(3), y in sample::small_rational(3),
                                    z in sample::small_rational(3), k in sample::iwahori_g(3, 2),
                                    (m, n, t) in valid_mnt()) {
            let p = 3;
            if t > 2 { return Ok(()); }
            let plane = BigCellCoord::new(x, y, z).plane(WeylElt::W1);
            let moved = sample::plane_times(&plane, &k);
            for region in [Region::I, Region::UG] {
                let before = tube_membership(&TubePoint::G(plane.clone()), region, m, n, t, p).unwrap();
                let after = tube_membership(&TubePoint::G(moved.clone()), region, m, n, t, p).unwrap();
                prop_assert_eq!(before, after, "{:?}", region);
            }
        }
    }
}
