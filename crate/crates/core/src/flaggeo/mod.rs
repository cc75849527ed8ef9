//! The flag variety `P_G \ GSp(4)` and its subvariety `B_H \ H`: Bruhat
//! cells, big-cell coordinates at `w1`, the twisted embedding `iota_hat`,
//! Iwahori-type level groups and tubes around the `w1` cell, all on
//! rank-1 points with rational coordinates.

mod cells;
mod level;
mod matrix;
mod tube;

pub use cells::{
    act_bigcell, act_bigcell_parabolic, bruhat_cell, chart, embedded_cell, iota_hat,
    iota_hat_matrix, iota_hat_plane, plane_cell, BigCellCoord, HPoint, Plane,
};
pub use level::{gamma_conjugate, level_membership, LevelGroup};
pub use matrix::{multiplier, weyl_matrix, weyl_of_matrix, GSpMatrix, HMatrix, Mat2, Mat4};
pub use tube::{reduce_plane_mod_p, tube_membership, Region, TubePoint};


#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, rat};
    use crate::rootdata::WeylElt;
    use proptest::prelude::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]
        #[test]
        fn big_cell_action_is_a_right_action(
            x in sample::small_rational(3), y in sample::small_rational(3), z in sample::small_rational(3),
            g in sample::gsp(3), h in sample::gsp(3), w in 0usize..4
        ) {
            let w = WeylElt::KOSTANT[w];
            let pt = BigCellCoord::new(x, y, z);
            if let (Ok(a), Ok(gh)) = (act_bigcell(w, &pt, &g), act_bigcell(w, &pt, &(&g * &h))) {
                if let Ok(b) = act_bigcell(w, &a, &h) {
                    prop_assert_eq!(b, gh);
                }
            }
            // the chart action is the action on planes
            if let Ok(a) = act_bigcell(w, &pt, &g) {
                let moved = sample::plane_times(&pt.plane(w), &g);
                prop_assert_eq!(chart(w, &moved), Some(a));
            }
        }

        #[test]
        fn iota_hat_intertwines_the_actions(z1 in sample::small_rational(3), z2 in sample::small_rational(3),
                                            h in sample::integral_h(3, 1)) {
            let pt = HPoint::affine(z1.clone(), z2.clone());
            let gh = GSpMatrix::gamma_hat();
            let conj = &(&gh.inverse() * &h.iota()) * &gh;
            match (pt.act(&h), act_bigcell(WeylElt::W1, &iota_hat(&z1, &z2), &conj)) {
                (Some(moved), Ok(image)) => {
                    let (a, b) = moved.to_affine().unwrap();
                    prop_assert_eq!(iota_hat(&a, &b), image);
                }
                (None, Err(_)) => {}
                (l, r) => prop_assert!(false, "{:?} vs {:?}", l, r),
            }
        }

        #[test]
        fn cells_are_parabolic_and_borel_stable(g in sample::gsp(5), k in sample::iwahori_g(5, 1),
                                                u in sample::small_rational(5), which in 0usize..4,
                                                a in 1i64..9, b in 1i64..9) {
            let cell = bruhat_cell(&g);
            // left by the Siegel parabolic: torus, s2, and upper unipotents
            let left = [
                GSpMatrix::s2(),
                GSpMatrix::torus([int(a), int(b), rat(1, b), rat(1, a)]).unwrap(),
                { let us = sample::upper_unipotents(u.clone()); us[which % us.len()].clone() },
            ];
            for l in &left {
                prop_assert_eq!(bruhat_cell(&(l * &g)), cell);
            }
            // right by upper-triangular elements of the Iwahori
            if k.is_upper_triangular() {
                prop_assert_eq!(bruhat_cell(&(&g * &k)), cell);
            }
            let us = sample::upper_unipotents(u);
            let upper = &us[which % us.len()] * &GSpMatrix::torus(
                [a * b, a, b, 1].map(int)).unwrap();
            prop_assert_eq!(bruhat_cell(&(&g * &upper)), cell);
        }
    }
}
