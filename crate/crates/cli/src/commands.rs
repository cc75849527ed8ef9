//! One function per subcommand. Each returns an [`Output`] or an error;
//! argument problems are reported as [`UsageError`]s naming the flag.

use anyhow::Result;
use gsp4_core::exactnum::{parse_rational, DirichletChar, DirichletGroup, LinPoly, Rational};
use gsp4_core::flaggeo::{
    bruhat_cell, embedded_cell, iota_hat, iota_hat_plane, plane_cell, tube_membership, BigCellCoord,
    GSpMatrix, HPoint, Region, TubePoint,
};
use gsp4_core::hecke::{
    euler_factor, p_stabilisations, slope_table, slope_table_columns, GL2Params, HeckeParams, SlopeVariant,
};
use gsp4_core::qexp::{eisenstein, theta_identity_check, EisensteinSpec};
use gsp4_core::repbranch::{branching_dim, kraken_eigen_check, kraken_family_check, ModelWeight};
use gsp4_core::rootdata::{bgg_weights, cohomology_sets, Group};
use gsp4_core::{Error, Weight, WeylElt};
use serde_json::{json, Value};

use crate::config::RunConfig;
use crate::output::{cyclotomic, cyclotomic_json, linpoly, rational, weight_json, weight_str, Output, Table};
use crate::verify;
use crate::UsageError;

fn usage(flag: &str, msg: impl std::fmt::Display) -> anyhow::Error {
    UsageError(format!("{flag}: {msg}")).into()
}

/// Comma-separated rationals, e.g. `1,-2/3,5`.
pub fn parse_rationals(flag: &str, s: &str, len: Option<usize>) -> Result<Vec<Rational>> {
    let v: Vec<Rational> =
        s.split(',').map(|t| parse_rational(t).map_err(|e| usage(flag, e))).collect::<Result<_>>()?;
    if let Some(n) = len {
        if v.len() != n {
            return Err(usage(flag, format!("expected {n} comma-separated values, got {}", v.len())));
        }
    }
    Ok(v)
}

pub fn parse_rational_arg(flag: &str, s: &str) -> Result<Rational> {
    parse_rational(s).map_err(|e| usage(flag, e))
}

/// `(a, b; c)`, with parentheses optional and linear expressions allowed.
pub fn parse_weight(flag: &str, s: &str) -> Result<Weight> {
    let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
    let (ab, c) = inner.split_once(';').ok_or_else(|| usage(flag, "expected `(a, b; c)`"))?;
    let (a, b) = ab.split_once(',').ok_or_else(|| usage(flag, "expected `(a, b; c)`"))?;
    let parse = |t: &str| LinPoly::parse(t).map_err(|e| usage(flag, e));
    Weight::new(parse(a)?, parse(b)?, parse(c)?).map_err(|e| usage(flag, e))
}

/// `N:j` is the `j`-th character modulo `N`; `1` or `N` alone is trivial.
pub fn parse_character(flag: &str, s: &str) -> Result<DirichletChar> {
    let (n, j) = match s.split_once(':') {
        Some((n, j)) => (n, j),
        None => (s, "0"),
    };
    let n: u64 = n.trim().parse().map_err(|_| usage(flag, format!("bad modulus in `{s}`")))?;
    let j: usize = j.trim().parse().map_err(|_| usage(flag, format!("bad index in `{s}`")))?;
    if n == 0 {
        return Err(usage(flag, "modulus must be positive"));
    }
    let g = DirichletGroup::new(n);
    g.character_by_index(j).ok_or_else(|| usage(flag, format!("there are only {} characters modulo {n}", g.len())))
}

fn character_label(c: &DirichletChar) -> String {
    format!("mod {} order {}", c.modulus(), c.order())
}

pub fn weights(nu: &Weight) -> Result<Output> {
    let k = bgg_weights(nu);
    let mut t = Table::new(["i", "w", "a", "b", "c"]);
    let mut entries = Vec::new();
    for (i, w) in WeylElt::KOSTANT.iter().enumerate() {
        let kappa = k.get(i);
        t.push([i.to_string(), w.name().into(), linpoly(&kappa.a), linpoly(&kappa.b), linpoly(&kappa.c)]);
        let mut e = json!({ "index": i, "w": w.name(), "kappa": weight_json(kappa) });
        if let Ok(sets) = cohomology_sets(kappa) {
            let names = |v: &[WeylElt]| v.iter().map(|w| w.name()).collect::<Vec<_>>();
            e["C_plus"] = json!(names(&sets.plus));
            e["C_minus"] = json!(names(&sets.minus));
        }
        entries.push(e);
    }
    let mut j = json!({ "nu": weight_json(nu), "kappa": entries });
    if nu.is_constant() {
        j["dominant"] = json!(gsp4_core::rootdata::dominance(nu, Group::G)?);
    }
    Ok(Output::new(j, t))
}

pub fn slopes(variant: SlopeVariant) -> Result<Output> {
    let names: Vec<String> = slope_table_columns()
        .iter()
        .enumerate()
        .map(|(i, w)| if i == 4 { "wMmax*w1".to_string() } else { w.name().to_string() })
        .collect();
    let mut t = Table::new(std::iter::once("op".to_string()).chain(names.iter().cloned()));
    let mut rows = Vec::new();
    for (op, row) in slope_table(variant) {
        t.push(std::iter::once(op.name().to_string()).chain(row.iter().map(linpoly)));
        let cells: serde_json::Map<String, Value> =
            names.iter().zip(row.iter()).map(|(n, v)| (n.clone(), json!(linpoly(v)))).collect();
        rows.push(json!({ "op": op.name(), "slopes": cells }));
    }
    let variant = match variant {
        SlopeVariant::Conjectural => "conjectural",
        SlopeVariant::Proven => "proven",
    };
    Ok(Output::new(json!({ "variant": variant, "kappa": "kappa_1", "rows": rows }), t))
}

pub fn bruhat_matrix(entries: &[Rational]) -> Result<Output> {
    let m: [[Rational; 4]; 4] = std::array::from_fn(|i| std::array::from_fn(|j| entries[4 * i + j].clone()));
    let g = GSpMatrix::new(m).map_err(|e| usage("--matrix", e))?;
    let cell = bruhat_cell(&g);
    let mut t = Table::new(["cell", "multiplier"]);
    t.push([cell.name().to_string(), rational(g.multiplier())]);
    Ok(Output::new(json!({ "cell": cell.name(), "multiplier": rational(g.multiplier()) }), t))
}

pub fn bruhat_point(chart: WeylElt, xyz: &[Rational]) -> Result<Output> {
    let z = BigCellCoord::new(xyz[0].clone(), xyz[1].clone(), xyz[2].clone());
    let cell = plane_cell(&z.plane(chart));
    let mut t = Table::new(["chart", "cell"]);
    t.push([chart.name(), cell.name()]);
    Ok(Output::new(json!({ "chart": chart.name(), "point": xyz.iter().map(rational).collect::<Vec<_>>(), "cell": cell.name() }), t))
}

pub fn embed(pt: &HPoint) -> Result<Output> {
    let cell = embedded_cell(pt);
    let plane = iota_hat_plane(pt);
    let rows: Vec<Vec<String>> = plane.iter().map(|r| r.iter().map(rational).collect()).collect();
    let mut j = json!({
        "point": pt.to_projective().iter().map(rational).collect::<Vec<_>>(),
        "plane": rows,
        "cell": cell.name(),
    });
    let mut t = Table::new(["cell", "x", "y", "z"]);
    match pt.to_affine() {
        Some((z1, z2)) => {
            let z = iota_hat(&z1, &z2);
            j["w1_chart"] = json!({ "x": rational(&z.x), "y": rational(&z.y), "z": rational(&z.z) });
            t.push([cell.name().to_string(), rational(&z.x), rational(&z.y), rational(&z.z)]);
        }
        None => t.push([cell.name(), "", "", ""]),
    }
    Ok(Output::new(j, t))
}

pub fn tube(point: &TubePoint, region: Region, m: i64, n: i64, t: i64, p: u64) -> Result<Output> {
    let member = tube_membership(point, region, m, n, t, p).map_err(|e| match e {
        Error::TubeParameters { .. } => usage("--m/--n/--t", e),
        Error::Incompatible(_) => usage("--region", e),
        e => e.into(),
    })?;
    let mut tab = Table::new(["region", "m", "n", "t", "p", "member"]);
    tab.push([format!("{region:?}"), m.to_string(), n.to_string(), t.to_string(), p.to_string(), member.to_string()]);
    Ok(Output::new(json!({ "region": format!("{region:?}"), "m": m, "n": n, "t": t, "p": p, "member": member }), tab))
}

/// `kappa_A = (r2 + 2, -r1; -r1 - r2)`, every `lambda` in `[0, r1 + r2 + 2]`
/// unless one is given. `family` runs the truncated power-series variant.
pub fn kraken_check(r1: i64, r2: i64, lambda: Option<i64>, family: bool) -> Result<Output> {
    let ka = ModelWeight::new(r2 + 2, -r1, -r1 - r2);
    let lambdas: Vec<i64> = match lambda {
        Some(l) => vec![l],
        None => (0..=r1 + r2 + 2).collect(),
    };
    let mut t = Table::new(["lambda", "status", "eigencharacter"]);
    let mut results = Vec::new();
    let mut verified = true;
    for l in lambdas {
        let res = if family { kraken_family_check(&ka, l) } else { kraken_eigen_check(&ka, l) };
        match res {
            Ok(chi) => {
                t.push([l.to_string(), "ok".into(), weight_str(&chi)]);
                results.push(json!({ "lambda": l, "ok": true, "eigencharacter": weight_json(&chi) }));
            }
            Err(Error::VerificationFailed { index, detail }) => {
                verified = false;
                t.push([l.to_string(), format!("failed at z^{index}"), detail.clone()]);
                results.push(json!({ "lambda": l, "ok": false, "index": index, "detail": detail }));
            }
            Err(Error::LambdaOutOfRange { lambda, max }) => {
                return Err(usage("--lambda", format!("{lambda} outside [0, {max}]")));
            }
            Err(e) => return Err(e.into()),
        }
    }
    let kappa_a = Weight::unchecked(ka.rho1.clone(), ka.rho2.clone(), ka.omega.clone());
    let mut out = Output::new(json!({ "kappa_A": weight_json(&kappa_a), "family": family, "results": results }), t);
    out.verified = verified;
    Ok(out)
}

pub fn branch_dim(r1: i64, r2: i64, t1: i64, t2: i64) -> Result<Output> {
    let kappa1 = Weight::ints(r1, -r2 - 2, r1 + r2).map_err(|e| usage("--r1/--r2", e))?;
    let tau = Weight::unchecked(t1, t2, r1 + r2);
    let b = branching_dim(&kappa1, &tau).map_err(|e| match e {
        Error::Incompatible(_) | Error::Precondition(_) => usage("--t1/--t2", e),
        e => e.into(),
    })?;
    let functional: Vec<String> = b.functional.iter().map(rational).collect();
    let mut t = Table::new(["dim", "lambda", "functional"]);
    t.push([b.dim.to_string(), b.lambda.to_string(), functional.join(" ")]);
    let mut out = Output::new(
        json!({
            "kappa1": weight_json(&kappa1),
            "tau": weight_json(&tau),
            "kappa_A": weight_json(&b.kappa_a),
            "dim": b.dim,
            "lambda": b.lambda,
            "functional": functional,
        }),
        t,
    );
    out.verified = b.dim == 1;
    Ok(out)
}

pub fn stabilise(params: &[Rational], p: u64, r1: i64, r2: i64, chi: &Rational) -> Result<Output> {
    let x: [Rational; 4] = std::array::from_fn(|i| params[i].clone());
    let stabs = p_stabilisations(&x, p, r1, r2, chi).map_err(|e| match e {
        Error::NoValidOrdering(_) => usage("--params", e),
        e => e.into(),
    })?;
    let mut t = Table::new(["ordering", "USieg'", "UKl'", "ordinary", "p_regular"]);
    let mut list = Vec::new();
    for s in &stabs {
        let ord: Vec<String> = s.ordering.iter().map(rational).collect();
        t.push([ord.join(" "), rational(&s.u_sieg), rational(&s.u_kl), s.ordinary.to_string(), s.p_regular.to_string()]);
        list.push(json!({
            "ordering": ord,
            "USieg'": rational(&s.u_sieg),
            "UKl'": rational(&s.u_kl),
            "ordinary": s.ordinary,
            "p_regular": s.p_regular,
        }));
    }
    Ok(Output::new(json!({ "p": p, "count": stabs.len(), "stabilisations": list }), t))
}

pub struct EulerArgs {
    pub p: u64,
    pub r1: i64,
    pub r2: i64,
    pub t2: i64,
    pub chi: Rational,
    pub chi2: Rational,
    pub params: Vec<Rational>,
    pub gl2: Vec<Rational>,
}

pub fn euler(a: &EulerArgs) -> Result<Output> {
    let x: [Rational; 4] = std::array::from_fn(|i| a.params[i].clone());
    let g = HeckeParams::new(a.p, a.r1, a.r2, a.chi.clone(), x).map_err(|e| usage("--params", e))?;
    let s = GL2Params::new(a.p, a.t2, a.chi2.clone(), a.gl2[0].clone(), a.gl2[1].clone())
        .map_err(|e| usage("--gl2", e))?;
    let e = euler_factor(&g, &s)?;
    let labels = ["alpha,a", "alpha,b", "beta,a", "beta,b", "gamma,a", "gamma,b", "delta,a", "delta,b"];
    let mut t = Table::new(["pair", "factor", "unit"]);
    let mut factors = Vec::new();
    for ((l, f), u) in labels.iter().zip(&e.factors).zip(&e.unit_flags) {
        t.push([l.to_string(), rational(f), u.to_string()]);
        factors.push(json!({ "pair": l, "factor": rational(f), "unit": u }));
    }
    t.push(["product".to_string(), rational(&e.value), String::new()]);
    Ok(Output::new(
        json!({
            "value": rational(&e.value),
            "factors": factors,
            "nonvanishing_certified": e.nonvanishing_certified(),
        }),
        t,
    ))
}

pub fn eisenstein_cmd(spec: &EisensteinSpec, reduce: Option<u32>) -> Result<Output> {
    let f = eisenstein(spec).map_err(|e| match e {
        Error::ModulusDivisibleByP { .. } => usage("--chi1/--chi2", e),
        e => e.into(),
    })?;
    let mut coeffs = serde_json::Map::new();
    let mut t = Table::new(["n", "a_n"]);
    for n in 1..=f.precision() {
        coeffs.insert(n.to_string(), cyclotomic_json(f.coeff(n)));
        t.push([n.to_string(), cyclotomic(f.coeff(n))]);
    }
    let mut j = json!({
        "kappa1": spec.kappa1,
        "kappa2": spec.kappa2,
        "chi1": character_label(&spec.chi1),
        "chi2": character_label(&spec.chi2),
        "p": spec.p,
        "Nq": spec.n_q,
        "weight": f.weight,
        "depleted": f.is_depleted(),
        "parity_condition": spec.parity_condition(),
        "constant_term": cyclotomic_json(f.constant_term()),
        "coefficients": coeffs,
    });
    if let Some(np) = reduce {
        let red = f.reduce_mod_p_power(np)?;
        let m: serde_json::Map<String, Value> = red
            .iter()
            .enumerate()
            .skip(1)
            .map(|(n, c)| (n.to_string(), json!(c.iter().map(|x| x.to_string()).collect::<Vec<_>>())))
            .collect();
        j["reduction"] = json!({ "modulus": format!("{}^{np}", spec.p), "coefficients": m });
    }
    Ok(Output::new(j, t))
}

pub fn theta_check(t: i64, chi1: &DirichletChar, chi2: &DirichletChar, p: u64, n_q: usize) -> Result<Output> {
    let r = theta_identity_check(t, chi1, chi2, p, n_q).map_err(|e| match e {
        Error::Precondition(_) => usage("--t", e),
        Error::ModulusDivisibleByP { .. } => usage("--chi1/--chi2", e),
        e => e.into(),
    })?;
    let mut tab = Table::new(["t", "p", "Nq", "holds", "first_discrepancy"]);
    let first = r.first_discrepancy.map(|n| n.to_string()).unwrap_or_default();
    tab.push([t.to_string(), p.to_string(), n_q.to_string(), r.holds.to_string(), first]);
    let mut out = Output::new(
        json!({ "t": t, "p": p, "Nq": n_q, "holds": r.holds, "first_discrepancy": r.first_discrepancy }),
        tab,
    );
    out.verified = r.holds;
    Ok(out)
}

pub fn verify_all(cfg: &RunConfig) -> Result<Output> {
    let outcomes = verify::run_all(cfg);
    let mut t = Table::new(["id", "criterion", "status", "seconds", "bound", "detail"]);
    let mut list = Vec::new();
    for o in &outcomes {
        let status = if o.passed() { "PASS" } else { "FAIL" };
        let secs = format!("{:.3}", o.elapsed.as_secs_f64());
        t.push([o.id.to_string(), o.name.to_string(), status.to_string(), secs.clone(), o.bound.as_secs().to_string(), o.detail.clone()]);
        list.push(json!({
            "id": o.id,
            "criterion": o.name,
            "passed": o.passed(),
            "seconds": secs,
            "bound_seconds": o.bound.as_secs(),
            "detail": o.detail,
        }));
    }
    let all = outcomes.iter().all(verify::Outcome::passed);
    let mut out = Output::new(json!({ "seed": cfg.seed, "all_passed": all, "criteria": list }), t);
    out.verified = all;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use gsp4_core::exactnum::int;

    #[test]
    fn parsers() {
        assert_eq!(parse_weight("--nu", "(3, 1; 4)").unwrap(), Weight::ints(3, 1, 4).unwrap());
        assert_eq!(parse_weight("--nu", "r1, r2; r1 + r2").unwrap(), Weight::generic());
        let err = parse_weight("--nu", "3, 1, 4").unwrap_err();
        assert!(err.to_string().contains("--nu"));
        assert!(parse_weight("--nu", "(3, 1; 3)").is_err());
        assert_eq!(parse_rationals("--params", "1,-2/3", Some(2)).unwrap().len(), 2);
        assert!(parse_rationals("--params", "1,2", Some(3)).is_err());
        assert!(parse_character("--chi1", "4:1").unwrap().parity() == -1);
        assert!(parse_character("--chi1", "1").unwrap().is_trivial());
        assert!(parse_character("--chi1", "4:7").is_err());
    }

    #[test]
    fn symbolic_weights() {
        let out = weights(&Weight::generic()).unwrap();
        assert_eq!(out.table.rows[3][2..], ["-r2 - 3", "-r1 - 3", "r1 + r2"]);
    }

    #[test]
    fn conjectural_slopes_as_rows() {
        let out = slopes(SlopeVariant::Conjectural).unwrap();
        assert_eq!(out.table.headers, ["op", "id", "w1", "w2", "w3", "wMmax*w1"]);
        assert_eq!(out.table.rows[1], ["USieg'", "r2 + 1", "0", "0", "r1 + 2", "r1 + r2 + 3"]);
    }

    #[test]
    fn branch_and_kraken() {
        let out = branch_dim(2, 0, 0, 0).unwrap();
        assert!(out.verified);
        assert_eq!(out.json["functional"], json!(["1/1", "2/1", "1/1", "0/1", "0/1"]));
        assert!(branch_dim(3, 1, 1, 1).is_err());
        let out = kraken_check(3, 1, None, false).unwrap();
        assert_eq!(out.table.rows.len(), 7);
        assert!(kraken_check(3, 1, Some(-2), true).unwrap().verified);
        assert!(kraken_check(3, 1, Some(9), false).is_err());
    }

    #[test]
    fn embedding_and_cells() {
        let out = embed(&HPoint::affine(int(1), int(2))).unwrap();
        assert_eq!(out.json["w1_chart"], json!({"x": "2/1", "y": "2/1", "z": "3/1"}));
        // (-1 : 1), (-2 : 1) has x Y + y X != 0
        assert_eq!(out.json["cell"], json!("w3"));
        assert_eq!(embed(&HPoint::affine(int(0), int(0))).unwrap().json["cell"], json!("w1"));
        let id: Vec<Rational> = (0..16).map(|i| int(i64::from(i % 5 == 0))).collect();
        assert_eq!(bruhat_matrix(&id).unwrap().json["cell"], json!("id"));
    }
}
