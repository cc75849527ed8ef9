use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Parser, Subcommand, ValueEnum};
use gsp4_cli::commands::{self, parse_character, parse_rational_arg, parse_rationals, parse_weight, EulerArgs};
use gsp4_cli::config::{Format, Overrides, RunConfig};
use gsp4_cli::UsageError;
use gsp4_core::flaggeo::{BigCellCoord, HPoint, Region, TubePoint};
use gsp4_core::hecke::SlopeVariant;
use gsp4_core::qexp::EisensteinSpec;
use gsp4_core::{Error, WeylElt};

#[derive(Parser)]
#[command(name = "gsp4", version, about = "Exact computations for GSp(4) weights, cells, branching and q-expansions")]
struct Cli {
    /// The prime p.
    #[arg(long = "p", global = true)]
    p: Option<u64>,
    /// q-expansion precision.
    #[arg(long = "Nq", global = true)]
    nq: Option<usize>,
    /// Precision of reductions mod p^Np.
    #[arg(long = "Np", global = true)]
    np: Option<u32>,
    /// Largest r1 in weight sweeps.
    #[arg(long = "r-max", global = true)]
    r_max: Option<i64>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// File of `key = value` lines; flags take precedence.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Variant {
    Conjectural,
    Proven,
}

#[derive(Clone, Copy, ValueEnum)]
enum RegionArg {
    /// U_n^G
    Ug,
    /// I_{m,n}^G
    I,
    /// Z_m^H
    Zh,
    /// Z_m^H widened by p^t Z_p
    ZhExt,
    /// U_n^H
    Uh,
}

#[derive(Subcommand)]
enum Cmd {
    /// The four BGG weights w_i . nu.
    Weights {
        #[arg(long, default_value = "(r1, r2; c)", allow_hyphen_values = true)]
        nu: String,
    },
    /// Slope table of kappa_1 for UKl' and USieg'.
    Slopes {
        #[arg(long, value_enum, default_value = "conjectural")]
        variant: Variant,
    },
    /// Bruhat cell of a GSp(4) matrix or of a point of a big-cell chart.
    Bruhat {
        /// 16 comma-separated entries, row by row.
        #[arg(long, allow_hyphen_values = true, conflicts_with = "point")]
        matrix: Option<String>,
        /// x,y,z in the chart at --chart.
        #[arg(long, allow_hyphen_values = true)]
        point: Option<String>,
        #[arg(long, default_value = "w1")]
        chart: String,
    },
    /// Image of a point of the H flag variety and its cell.
    Embed {
        /// Affine point z1,z2.
        #[arg(long, allow_hyphen_values = true, conflicts_with = "projective")]
        affine: Option<String>,
        /// Projective point x,y,X,Y.
        #[arg(long, allow_hyphen_values = true)]
        projective: Option<String>,
    },
    /// Membership of a point in a tube.
    Tube {
        /// x,y,z in the w1 chart of the G flag variety.
        #[arg(long = "g-point", allow_hyphen_values = true)]
        g_point: Option<String>,
        /// z1,z2 (affine) or x,y,X,Y (projective) on the H side.
        #[arg(long = "h-point", allow_hyphen_values = true)]
        h_point: Option<String>,
        #[arg(long, value_enum)]
        region: RegionArg,
        #[arg(long)]
        m: i64,
        #[arg(long, default_value_t = 0)]
        n: i64,
        #[arg(long)]
        t: i64,
    },
    /// Eigenvector check of the kraken for kappa_A = (r2+2, -r1; -r1-r2).
    KrakenCheck {
        #[arg(long)]
        r1: i64,
        #[arg(long)]
        r2: i64,
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<i64>,
        /// Truncated power-series check along x = y(1 + eps).
        #[arg(long)]
        family: bool,
    },
    /// Dimension of the tau^{-1} eigenspace.
    BranchDim {
        #[arg(long, allow_hyphen_values = true)]
        r1: i64,
        #[arg(long, allow_hyphen_values = true)]
        r2: i64,
        #[arg(long, allow_hyphen_values = true)]
        t1: i64,
        #[arg(long, allow_hyphen_values = true)]
        t2: i64,
    },
    /// p-stabilisations of four Hecke parameters.
    Stabilise {
        #[arg(long)]
        r1: i64,
        #[arg(long)]
        r2: i64,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        chi: String,
        /// Four comma-separated parameters.
        #[arg(long, allow_hyphen_values = true)]
        params: String,
    },
    /// The degree 8 Euler factor at p.
    Euler {
        #[arg(long)]
        r1: i64,
        #[arg(long)]
        r2: i64,
        #[arg(long)]
        t2: i64,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        chi: String,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        chi2: String,
        /// alpha,beta,gamma,delta
        #[arg(long, allow_hyphen_values = true)]
        params: String,
        /// a,b of the GL(2) form.
        #[arg(long, allow_hyphen_values = true)]
        gl2: String,
    },
    /// q-expansion of the Eisenstein family E(k1, k2; chi1, chi2).
    Eisenstein {
        #[arg(long, allow_hyphen_values = true)]
        k1: i64,
        #[arg(long, allow_hyphen_values = true)]
        k2: i64,
        /// N:j, the j-th character modulo N.
        #[arg(long, default_value = "1")]
        chi1: String,
        #[arg(long, default_value = "1")]
        chi2: String,
        /// Also report coefficients mod p^Np.
        #[arg(long)]
        reduce: bool,
    },
    /// theta^{-(1+t)} E(t+1, 0) = E(0, -1-t) up to q^Nq.
    ThetaCheck {
        #[arg(long)]
        t: i64,
        #[arg(long, default_value = "1")]
        chi1: String,
        #[arg(long, default_value = "1")]
        chi2: String,
    },
    /// Run every acceptance check.
    VerifyAll,
}

fn h_point(flag: &str, s: &str) -> Result<HPoint> {
    let v = parse_rationals(flag, s, None)?;
    match v.len() {
        2 => Ok(HPoint::affine(v[0].clone(), v[1].clone())),
        4 => HPoint::projective(v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone())
            .map_err(|e| UsageError(format!("{flag}: {e}")).into()),
        n => Err(UsageError(format!("{flag}: expected 2 or 4 values, got {n}")).into()),
    }
}

fn run(cli: Cli) -> Result<(String, bool)> {
    let base = match &cli.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    let cfg = base.apply(&Overrides {
        p: cli.p,
        n_q: cli.nq,
        n_p: cli.np,
        r_max: cli.r_max,
        format: cli.format,
        seed: cli.seed,
    })?;
    let out = match cli.cmd {
        Cmd::Weights { nu } => commands::weights(&parse_weight("--nu", &nu)?)?,
        Cmd::Slopes { variant } => commands::slopes(match variant {
            Variant::Conjectural => SlopeVariant::Conjectural,
            Variant::Proven => SlopeVariant::Proven,
        })?,
        Cmd::Bruhat { matrix, point, chart } => match (matrix, point) {
            (Some(m), _) => commands::bruhat_matrix(&parse_rationals("--matrix", &m, Some(16))?)?,
            (None, Some(pt)) => {
                let w = WeylElt::from_name(&chart)
                    .ok_or_else(|| UsageError(format!("--chart: unknown Weyl element `{chart}`")))?;
                commands::bruhat_point(w, &parse_rationals("--point", &pt, Some(3))?)?
            }
            (None, None) => return Err(UsageError("--matrix or --point is required".into()).into()),
        },
        Cmd::Embed { affine, projective } => match (affine, projective) {
            (Some(a), _) => commands::embed(&h_point("--affine", &a)?)?,
            (None, Some(p)) => {
                let v = parse_rationals("--projective", &p, Some(4))?;
                let pt = HPoint::projective(v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone())
                    .map_err(|e| UsageError(format!("--projective: {e}")))?;
                commands::embed(&pt)?
            }
            (None, None) => return Err(UsageError("--affine or --projective is required".into()).into()),
        },
        Cmd::Tube { g_point, h_point: hp, region, m, n, t } => {
            let point = match (g_point, hp) {
                (Some(g), None) => {
                    let v = parse_rationals("--g-point", &g, Some(3))?;
                    TubePoint::G(BigCellCoord::new(v[0].clone(), v[1].clone(), v[2].clone()).plane(WeylElt::W1))
                }
                (None, Some(h)) => TubePoint::H(h_point("--h-point", &h)?),
                _ => return Err(UsageError("exactly one of --g-point and --h-point is required".into()).into()),
            };
            let region = match region {
                RegionArg::Ug => Region::UG,
                RegionArg::I => Region::I,
                RegionArg::Zh => Region::ZH,
                RegionArg::ZhExt => Region::ZHExtended,
                RegionArg::Uh => Region::UH,
            };
            commands::tube(&point, region, m, n, t, cfg.p)?
        }
        Cmd::KrakenCheck { r1, r2, lambda, family } => commands::kraken_check(r1, r2, lambda, family)?,
        Cmd::BranchDim { r1, r2, t1, t2 } => commands::branch_dim(r1, r2, t1, t2)?,
        Cmd::Stabilise { r1, r2, chi, params } => commands::stabilise(
            &parse_rationals("--params", &params, Some(4))?,
            cfg.p,
            r1,
            r2,
            &parse_rational_arg("--chi", &chi)?,
        )?,
        Cmd::Euler { r1, r2, t2, chi, chi2, params, gl2 } => commands::euler(&EulerArgs {
            p: cfg.p,
            r1,
            r2,
            t2,
            chi: parse_rational_arg("--chi", &chi)?,
            chi2: parse_rational_arg("--chi2", &chi2)?,
            params: parse_rationals("--params", &params, Some(4))?,
            gl2: parse_rationals("--gl2", &gl2, Some(2))?,
        })?,
        Cmd::Eisenstein { k1, k2, chi1, chi2, reduce } => {
            let spec = EisensteinSpec {
                kappa1: k1,
                kappa2: k2,
                chi1: parse_character("--chi1", &chi1)?,
                chi2: parse_character("--chi2", &chi2)?,
                p: cfg.p,
                n_q: cfg.n_q,
            };
            commands::eisenstein_cmd(&spec, reduce.then_some(cfg.n_p))?
        }
        Cmd::ThetaCheck { t, chi1, chi2 } => commands::theta_check(
            t,
            &parse_character("--chi1", &chi1)?,
            &parse_character("--chi2", &chi2)?,
            cfg.p,
            cfg.n_q,
        )?,
        Cmd::VerifyAll => commands::verify_all(&cfg)?,
    };
    Ok((out.render(cfg.format), out.verified))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((text, verified)) => {
            print!("{text}");
            if verified {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            // everything but a failed verification is a bad invocation
            if matches!(e.downcast_ref::<Error>(), Some(Error::VerificationFailed { .. })) {
                ExitCode::from(1)
            } else {
                ExitCode::from(2)
            }
        }
    }
}
