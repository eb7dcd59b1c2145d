//! Command-line surface. Every command yields an [`Outcome`]; `main` prints it
//! and writes the JSON report.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use heegaard_core::ktheory::{bass_class_report, lens_k_groups, AbelianGroup};
use heegaard_core::lens::basis_window_check;
use heegaard_core::principal::{
    associated_idempotent, printed_idempotent, strong_connection_algebraic, ConnectionVariant,
};
use heegaard_core::qalgebras::degree_support;
use heegaard_core::report::{Check, Status};
use heegaard_core::scalars::{qpoly_q, qpoly_qpair, Var};
use heegaard_core::suites::{run_suite, SuiteOptions, DEFAULT_SEED};
use heegaard_core::units::{classify, deg_extreme, verify_inverse, Extreme, Side, UnitClass};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value as Json};

use crate::eval::{adjoint, evaluate, multiply, Context, Dialect, Value};
use crate::CliError;

#[derive(Debug, Parser)]
#[command(name = "heegaard", version, about = "Exact arithmetic and identity checks on quantum spheres and lens spaces")]
pub struct Cli {
    /// Seed for every randomized check.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,

    /// Also write a JSON report here.
    #[arg(long, global = true, value_name = "PATH")]
    pub json: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct AlgebraArgs {
    /// disc, sphere, lens, prolong, tensor or coaction.
    #[arg(long, default_value = "sphere")]
    pub dialect: String,

    /// Order of the cyclic group (lens and coaction dialects).
    #[arg(long = "N", value_name = "N")]
    pub n: Option<u32>,

    /// Evaluate at p = q = 0.
    #[arg(long)]
    pub iso: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the normal form of an expression.
    Nf {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[command(flatten)]
        algebra: AlgebraArgs,
    },
    /// Multiply two expressions.
    Mul {
        #[arg(allow_hyphen_values = true)]
        left: String,
        #[arg(allow_hyphen_values = true)]
        right: String,
        #[command(flatten)]
        algebra: AlgebraArgs,
    },
    /// Apply the involution.
    Star {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[command(flatten)]
        algebra: AlgebraArgs,
    },
    /// Degree support of a sphere element.
    Deg {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[arg(long)]
        iso: bool,
    },
    /// The polynomial Q_MU (or Q_{MU;NU}) in Y.
    Qpoly {
        #[arg(allow_hyphen_values = true)]
        mu: i64,
        #[arg(long, allow_hyphen_values = true)]
        nu: Option<i64>,
        #[arg(long, default_value = "p")]
        var: String,
    },
    /// Run a named suite (or `all`).
    Relcheck {
        suite: String,
        #[arg(long = "N", value_name = "N")]
        n: Option<u32>,
        #[arg(long)]
        window: Option<i64>,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long)]
        max: Option<u32>,
        #[arg(long)]
        variant: Option<String>,
    },
    /// Basis certificate for the lens algebra on a window.
    IsoCheck {
        #[arg(long = "N", value_name = "N", default_value_t = 3)]
        n: u32,
        #[arg(long, default_value_t = 3)]
        window: i64,
        #[arg(long, default_value_t = 500)]
        samples: usize,
    },
    /// Decide whether a sphere element is a unit.
    UnitCheck {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Strong connection values and axioms.
    Sconn {
        #[arg(long = "N", value_name = "N", default_value_t = 3)]
        n: u32,
        #[arg(long, default_value = "corrected")]
        variant: String,
    },
    /// Associated idempotents.
    Idem {
        #[arg(long = "N", value_name = "N", default_value_t = 3)]
        n: u32,
        #[arg(long, default_value = "corrected")]
        variant: String,
    },
    /// K-groups of the lens spaces.
    Ktheory {
        #[arg(long = "N", value_name = "N", conflicts_with = "max")]
        n: Option<u32>,
        #[arg(long)]
        max: Option<u32>,
    },
    /// Bass idempotent and the order of its class.
    Bass {
        #[arg(long = "N", value_name = "N", default_value_t = 3)]
        n: u32,
    },
    /// Prolongation isomorphism checks.
    ProlongCheck {
        #[arg(long = "N", value_name = "N")]
        n: Option<u32>,
        #[arg(long)]
        samples: Option<usize>,
    },
}

/// What a command produced, before printing.
#[derive(Debug, Default)]
pub struct Outcome {
    pub lines: Vec<String>,
    pub result: Json,
    pub checks: Vec<Check>,
}

fn context(a: &AlgebraArgs) -> Result<(Dialect, Context), CliError> {
    Ok((a.dialect.parse()?, Context { n: a.n, isometric: a.iso }))
}

fn variant(s: &str) -> Result<ConnectionVariant, CliError> {
    s.parse().map_err(|_| CliError::Usage(format!("unknown variant `{s}`")))
}

fn positive(n: u32) -> Result<u32, CliError> {
    if n == 0 {
        return Err(CliError::Usage("N must be positive".into()));
    }
    Ok(n)
}

fn group_json(g: &AbelianGroup) -> Json {
    let torsion: Vec<Json> =
        g.torsion().iter().map(|t| u64::try_from(t).map_or_else(|_| json!(t.to_string()), |v| json!(v))).collect();
    json!({ "torsion": torsion, "rank": g.free_rank() })
}

fn element_outcome(dialect: Dialect, input: &[&str], v: &Value) -> Outcome {
    let nf = v.to_string();
    Outcome { lines: vec![nf.clone()], result: json!({ "dialect": dialect.name(), "input": input, "normal_form": nf }), checks: vec![] }
}

fn suite_outcome(name: &str, opts: &SuiteOptions) -> Result<Outcome, CliError> {
    let checks = run_suite(name, opts)?;
    Ok(Outcome { lines: vec![], result: json!({ "suite": name }), checks })
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let seed = cli.seed;
    let base = SuiteOptions { seed, ..SuiteOptions::default() };
    match &cli.command {
        Command::Nf { expr, algebra } => {
            let (d, ctx) = context(algebra)?;
            Ok(element_outcome(d, &[expr], &evaluate(expr, d, &ctx)?))
        }
        Command::Mul { left, right, algebra } => {
            let (d, ctx) = context(algebra)?;
            let v = multiply(&evaluate(left, d, &ctx)?, &evaluate(right, d, &ctx)?, &ctx)?;
            Ok(element_outcome(d, &[left, right], &v))
        }
        Command::Star { expr, algebra } => {
            let (d, ctx) = context(algebra)?;
            Ok(element_outcome(d, &[expr], &adjoint(&evaluate(expr, d, &ctx)?, &ctx)?))
        }
        Command::Deg { expr, iso } => {
            let Value::Sphere(r) = evaluate(expr, Dialect::Sphere, &Context { n: None, isometric: *iso })? else {
                unreachable!("sphere dialect")
            };
            let degrees: Vec<i64> = degree_support(&r).into_iter().collect();
            Ok(Outcome {
                lines: vec![r.to_string(), format!("degrees: {degrees:?}")],
                result: json!({ "normal_form": r.to_string(), "degrees": degrees }),
                checks: vec![],
            })
        }
        Command::Qpoly { mu, nu, var } => {
            let v = match var.as_str() {
                "p" => Var::P,
                "q" => Var::Q,
                _ => return Err(CliError::Usage(format!("--var must be p or q, not `{var}`"))),
            };
            let (label, poly) = match nu {
                None => (format!("Q_{mu}"), qpoly_q(*mu, v)),
                Some(nu) => (format!("Q_{{{mu};{nu}}}"), qpoly_qpair(*mu, *nu, v)),
            };
            let text = poly.fmt_in("Y");
            Ok(Outcome {
                lines: vec![format!("{label}(Y) = {text}")],
                result: json!({ "mu": mu, "nu": nu, "var": var, "poly": text }),
                checks: vec![],
            })
        }
        Command::Relcheck { suite, n, window, samples, max, variant: v } => {
            let opts = SuiteOptions {
                n: *n,
                window: *window,
                samples: *samples,
                max_n: *max,
                variant: v.as_deref().map(variant).transpose()?,
                ..base
            };
            suite_outcome(suite, &opts)
        }
        Command::IsoCheck { n, window, samples } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let checks = basis_window_check(positive(*n)?, *window, *samples, &mut rng);
            Ok(Outcome { lines: vec![], result: json!({ "N": n, "window": window, "samples": samples }), checks })
        }
        Command::UnitCheck { expr } => unit_check(expr),
        Command::Sconn { n, variant: v } => {
            let (n, v) = (positive(*n)?, variant(v)?);
            let sc = strong_connection_algebraic(n, v)?;
            let mut lines = Vec::new();
            let mut values = Vec::new();
            for (k, val) in sc.values.iter().enumerate() {
                lines.push(format!("l(ut^{k}) = {val}"));
                values.push(json!({ "power": k, "value": val.to_string() }));
            }
            let checks = run_suite("sconn", &SuiteOptions { n: Some(n), variant: Some(v), ..base })?;
            let axioms: serde_json::Map<String, Json> =
                checks.iter().map(|c| (c.id.clone(), json!(c.residual))).collect();
            Ok(Outcome { lines, result: json!({ "N": n, "variant": v.name(), "values": values, "axioms": axioms }), checks })
        }
        Command::Idem { n, variant: v } => {
            let (n, v) = (positive(*n)?, variant(v)?);
            let sc = strong_connection_algebraic(n, v)?;
            let e = associated_idempotent(&sc, 1)?;
            let mut lines = vec![format!("e = {e}")];
            let mut result = json!({ "N": n, "variant": v.name(), "idempotent": e.to_string() });
            if v == ConnectionVariant::Printed {
                lines.push(format!("displayed = {}", printed_idempotent()));
                result["displayed"] = json!(printed_idempotent().to_string());
            }
            let checks = run_suite("idem", &SuiteOptions { n: Some(n), variant: Some(v), ..base })?;
            Ok(Outcome { lines, result, checks })
        }
        Command::Ktheory { n, max } => {
            let ns: Vec<u32> = match n {
                Some(n) => vec![positive(*n)?],
                None => (1..=max.unwrap_or(50)).collect(),
            };
            let mut lines = Vec::new();
            let mut groups = Vec::new();
            for &k in &ns {
                let (k0, k1) = lens_k_groups(k)?;
                lines.push(format!("N={k}: K0 = {k0}, K1 = {k1}"));
                groups.push(json!({ "N": k, "K0": group_json(&k0), "K1": group_json(&k1) }));
            }
            let result = if n.is_some() { groups.pop().expect("one group") } else { json!({ "groups": groups }) };
            let checks = run_suite("ktheory", &SuiteOptions { n: *n, max_n: *max, ..base })?;
            Ok(Outcome { lines, result, checks })
        }
        Command::Bass { n } => {
            let r = bass_class_report(positive(*n)?)?;
            Ok(Outcome {
                lines: vec![
                    format!("p_U = {}", r.idempotent),
                    format!("K0 = {}, K1 = {}", r.k0, r.k1),
                    format!("order of the class: {}", r.class_order),
                ],
                result: json!({
                    "N": r.n,
                    "idempotent": r.idempotent.to_string(),
                    "K0": group_json(&r.k0),
                    "K1": group_json(&r.k1),
                    "class_order": r.class_order.to_string(),
                }),
                checks: r.checks,
            })
        }
        Command::ProlongCheck { n, samples } => {
            suite_outcome("prolong", &SuiteOptions { n: n.map(positive).transpose()?, samples: *samples, ..base })
        }
    }
}

fn unit_check(expr: &str) -> Result<Outcome, CliError> {
    let Value::Sphere(r) = evaluate(expr, Dialect::Sphere, &Context::default())? else {
        unreachable!("sphere dialect")
    };
    let mut lines = vec![r.to_string()];
    let mut checks = Vec::new();
    let (class, inverse) = match classify(&r) {
        UnitClass::Unit(inv) => {
            let s = heegaard_core::qalgebras::SphereElement::scalar(inv.clone());
            checks.push(Check::new("unit.inverse", Status::from_bool(verify_inverse(&r, &s)), "0", inv.to_string()));
            ("unit", Some(inv.to_string()))
        }
        UnitClass::ScalarNonUnit(_) => ("scalar-non-unit", None),
        UnitClass::NonUnit => ("non-unit", None),
    };
    lines.push(match &inverse {
        Some(inv) => format!("unit, inverse {inv}"),
        None => class.replace('-', " "),
    });
    let mut extremes = serde_json::Map::new();
    for (side, name) in [(Side::A, "A"), (Side::B, "B")] {
        let pair = |which| deg_extreme(&r, side, which).ok().map(|(m, n)| json!([m, n]));
        let (max, min) = (pair(Extreme::Max), pair(Extreme::Min));
        if let (Some(x), Some(y)) = (&max, &min) {
            lines.push(format!("{name}-side extremes: max {x}, min {y}"));
        }
        extremes.insert(name.to_string(), json!({ "max": max, "min": min }));
    }
    Ok(Outcome {
        lines,
        result: json!({ "normal_form": r.to_string(), "class": class, "inverse": inverse, "extremes": extremes }),
        checks,
    })
}
