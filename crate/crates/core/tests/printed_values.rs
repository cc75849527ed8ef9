//! Printed formulas and worked examples, through the public API only.

use gsp4_core::exactnum::{gauss_sum, int, DirichletChar, DirichletGroup};
use gsp4_core::hecke::{slope_table, SlopeVariant};
use gsp4_core::qexp::{eisenstein, theta_identity_check, u_p, EisensteinSpec};
use gsp4_core::repbranch::branching_dim;
use gsp4_core::rootdata::bgg_weights;
use gsp4_core::{LinPoly, Rational, Weight};

fn show(w: &Weight) -> String {
    format!("({}, {}; {})", w.a, w.b, w.c)
}

#[test]
fn bgg_weight_formulas() {
    let lp = |s| LinPoly::parse(s).unwrap();
    let k = bgg_weights(&Weight::new(lp("r1"), lp("r2"), lp("c")).unwrap());
    let got: Vec<String> = (0..4).map(|i| show(k.get(i))).collect();
    assert_eq!(got, ["(r1, r2; c)", "(r1, -r2 - 2; c)", "(r2 - 1, -r1 - 3; c)", "(-r2 - 3, -r1 - 3; c)"]);
}

#[test]
fn slope_tables() {
    let rows = |v| slope_table(v).map(|(_, row)| row.map(|x| x.to_string()));
    assert_eq!(
        rows(SlopeVariant::Conjectural),
        [
            ["0", "0", "r1 - r2 + 1", "r1 - r2 + 1", "r1 + r2 + 3"],
            ["r2 + 1", "0", "0", "r1 + 2", "r1 + r2 + 3"],
        ]
    );
    assert_eq!(
        rows(SlopeVariant::Proven),
        [
            ["0", "0", "r1 - r2 - 2", "r1 - r2 - 2", "r1 + r2 + 2"],
            ["r2 + 1", "-1", "-1", "r1 - 1", "r1 + r2 + 1"],
        ]
    );
}

#[test]
fn theta_examples() {
    let one = DirichletChar::trivial(1);
    assert!(theta_identity_check(0, &one, &one, 5, 200).unwrap().holds);
    assert!(theta_identity_check(3, &one, &one, 7, 500).unwrap().holds);
}

#[test]
fn eisenstein_against_divisor_sums() {
    let (p, n_q) = (5u64, 60usize);
    let f = eisenstein(&EisensteinSpec::trivial(3, 1, p, n_q)).unwrap();
    for n in 1..=n_q as u64 {
        let mut want = 0i64;
        for d in (1..=n).filter(|d| n % d == 0) {
            let e = n / d;
            if d % p != 0 && e % p != 0 {
                want += (d * d * d * e) as i64;
            }
        }
        assert_eq!(f.coeff(n as usize).as_rational(), Some(&int(want)), "a_{n}");
    }
    assert!(u_p(&f).unwrap().is_zero());
}

#[test]
fn branching_example() {
    // kappa_1 for (r1, r2) = (2, 0); the functional is binom(2, k)
    let kappa1 = Weight::new(2, -2, 2).unwrap();
    let tau = Weight::new(0, 0, 2).unwrap();
    let b = branching_dim(&kappa1, &tau).unwrap();
    assert_eq!(b.dim, 1);
    let want: Vec<Rational> = [1, 2, 1, 0, 0].map(int).to_vec();
    assert_eq!(b.functional, want);
}

#[test]
fn quadratic_gauss_sum_mod_5() {
    let chi = DirichletGroup::new(5).characters().find(|c| c.order() == 2).unwrap();
    let g = gauss_sum(&chi).value;
    assert_eq!(g.mul(&g).as_rational(), Some(&int(5)));
}
