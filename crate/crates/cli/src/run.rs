use rough_hopf::ck::{enumerate_cuts, phi, phi_hat, psi, ConnesKreimer, GrossmanLarson};
use rough_hopf::hopf::{
    antipode, check_axioms, coproduct, mul, mul_truncated, AxiomReport, ConcatDeshuffle, HopfAlgebra, LawResult, Poly,
    ShuffleDeconcat,
};
use rough_hopf::linalg::{pair, LinComb, TensorComb};
use rough_hopf::model_rde::{picard_solve, PicardOptions, ScalarFn, VectorField};
use rough_hopf::roughpath::{
    branched_to_geo, check_rough_axioms, geo_to_branched, level_for_gamma, q_gamma, BranchedLift, Lift,
    PiecewiseLinearPath, RoughError, RoughReport, Signature,
};
use rough_hopf::scalar::{format_float, to_f64, Scalar};
use rough_hopf::series::{bch, exp, homog_norm, log, Truncated};
use rough_hopf::symbols::{Canonical, Forest, Graded, Kind, Word, MAX_DIM};
use serde_json::{json, Value};
use std::path::Path;

use crate::input::{infer_dim, parse_as, parse_time, read_path, FromAny};
use crate::{AlgebraArg, Cli, CliError, Command, Direction, FlavorArg, FormatArg, OutArg, Via};

const DEFAULT_TRUNCATION: usize = 4;
const DEFAULT_LEVEL: usize = 3;

type Out = Result<String, CliError>;

fn usage<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Usage(e.to_string())
}

fn json_text(v: Value) -> String {
    serde_json::to_string_pretty(&v).expect("JSON values always serialise")
}

fn show<B: Ord + Clone + Canonical>(cli: &Cli, x: &LinComb<B>, dim: usize) -> String {
    match cli.format {
        FormatArg::Text => x.render(dim, cli.float),
        FormatArg::Json => json_text(x.to_json(dim, cli.float)),
    }
}

fn show_tensor<A: Ord + Clone + Canonical + Graded, B: Ord + Clone + Canonical>(
    cli: &Cli,
    x: &TensorComb<A, B>,
    dim: usize,
) -> String {
    match cli.format {
        FormatArg::Text => x.render(dim, cli.float),
        FormatArg::Json => json_text(x.to_json(dim, cli.float)),
    }
}

fn show_scalar(cli: &Cli, c: &Scalar) -> String {
    let text = if cli.float { format_float(to_f64(c)) } else { c.to_string() };
    match cli.format {
        FormatArg::Text => text,
        FormatArg::Json => json_text(Value::String(text)),
    }
}

fn show_float(cli: &Cli, x: f64) -> String {
    match cli.format {
        FormatArg::Text => format_float(x),
        FormatArg::Json => json_text(json!(x)),
    }
}

fn laws_json(laws: &[LawResult]) -> Value {
    Value::Array(
        laws.iter()
            .map(|l| json!({ "law": l.law, "checked": l.checked, "violation": l.violation }))
            .collect(),
    )
}

fn resolve_dim(cli: &Cli, texts: &[&str], kind: Kind, fallback: usize) -> Result<usize, CliError> {
    let dim = match cli.dim {
        Some(d) => d,
        None if texts.is_empty() => fallback,
        None => infer_dim(texts, kind)?,
    };
    if dim == 0 || dim > MAX_DIM {
        return Err(CliError::Usage(format!("--dim must lie in [1, {}]", MAX_DIM)));
    }
    Ok(dim)
}

fn gamma(cli: &Cli) -> Result<f64, CliError> {
    let g = cli.gamma.ok_or_else(|| CliError::Usage("--gamma is required".into()))?;
    if !(g > 0.0 && g < 1.0) {
        return Err(CliError::Usage(format!("--gamma must lie in (0, 1), got {}", g)));
    }
    Ok(g)
}

fn level(cli: &Cli, explicit: Option<usize>) -> Result<usize, CliError> {
    let n = match (explicit, cli.gamma) {
        (Some(n), _) => n,
        (None, Some(_)) => level_for_gamma(gamma(cli)?),
        (None, None) => DEFAULT_LEVEL,
    };
    if n == 0 {
        return Err(CliError::Usage("the level must be at least 1".into()));
    }
    Ok(n)
}

pub fn run(cli: &Cli) -> Out {
    match &cli.command {
        Command::Product { .. }
        | Command::Coproduct { .. }
        | Command::Antipode { .. }
        | Command::Pair { .. }
        | Command::Exp { .. }
        | Command::Log { .. }
        | Command::Bch { .. }
        | Command::Norm { .. }
        | Command::CheckAxioms { path: None, .. } => algebra_command(cli),
        Command::CheckAxioms { path: Some(path), grid, flavor, .. } => check_rough(cli, path, *grid, None, *flavor),
        Command::CheckRough { grid, level, flavor, path } => check_rough(cli, path, *grid, *level, *flavor),
        Command::Cuts { forest } => cuts(cli, forest),
        Command::Convert { via, x } => convert(cli, *via, x),
        Command::Signature { level: n, from, to, path } => {
            let p = read_path(path)?;
            let lift = Signature::new(p.clone(), level(cli, *n)?).map_err(usage)?;
            eval_lift(cli, &lift, &p, from, to)
        }
        Command::BranchedLift { level: n, from, to, path } => {
            let p = read_path(path)?;
            let lift = BranchedLift::new(p.clone(), level(cli, *n)?).map_err(usage)?;
            eval_lift(cli, &lift, &p, from, to)
        }
        Command::Qgamma { forest } => {
            let dim = resolve_dim(cli, &[forest.as_str()], Kind::Forest, 1)?;
            let x: LinComb<Forest> = parse_as(forest, dim)?;
            let g = gamma(cli)?;
            let mut total = 0.0;
            for (z, c) in x.iter() {
                total += to_f64(c) * q_gamma(z, g).map_err(usage)?;
            }
            Ok(show_float(cli, total))
        }
        Command::ConvertLift { direction, level: n, from, to, path } => {
            let p = read_path(path)?;
            let n = level(cli, *n)?;
            match direction {
                Direction::G2b => {
                    let lift = geo_to_branched(Signature::new(p.clone(), n).map_err(usage)?);
                    eval_lift(cli, &lift, &p, from, to)
                }
                Direction::B2g => {
                    let (s, t) = endpoints(&p, from, to)?;
                    let mut times = p.times().to_vec();
                    times.extend([s, t]);
                    let inner = BranchedLift::new(p.clone(), n).map_err(usage)?;
                    match branched_to_geo(inner, &times) {
                        Ok(lift) => eval_lift(cli, &lift, &p, from, to),
                        Err(e @ RoughError::KernelViolation { .. }) => Err(CliError::CheckFailed(e.to_string())),
                        Err(e) => Err(usage(e)),
                    }
                }
            }
        }
        Command::Rde { f, y0, level: n, step, flavor, out, path } => rde(cli, f, *y0, *n, step, *flavor, *out, path),
    }
}

fn algebra_command(cli: &Cli) -> Out {
    let texts: Vec<&str> = match &cli.command {
        Command::Product { a, b } | Command::Pair { a, b } | Command::Bch { x: a, y: b } => vec![a, b],
        Command::Coproduct { x } | Command::Antipode { x } | Command::Exp { x } => vec![x],
        Command::Log { g } | Command::Norm { g } => vec![g],
        _ => vec![],
    };
    let kind = match cli.algebra {
        AlgebraArg::Poly => Kind::MultiIndex,
        AlgebraArg::Shuffle | AlgebraArg::Concat => Kind::Word,
        AlgebraArg::Ck | AlgebraArg::Gl => Kind::Forest,
    };
    let dim = resolve_dim(cli, &texts, kind, 2)?;
    match cli.algebra {
        AlgebraArg::Poly => algebra_op(cli, &Poly::new(dim)),
        AlgebraArg::Shuffle => algebra_op(cli, &ShuffleDeconcat::new(dim)),
        AlgebraArg::Concat => algebra_op(cli, &ConcatDeshuffle::new(dim)),
        AlgebraArg::Ck => algebra_op(cli, &ConnesKreimer::new(dim)),
        AlgebraArg::Gl => algebra_op(cli, &GrossmanLarson::new(dim)),
    }
}

fn algebra_op<H: HopfAlgebra>(cli: &Cli, h: &H) -> Out
where
    H::Basis: FromAny,
{
    let d = h.dim();
    let read = |text: &str| parse_as::<H::Basis>(text, d);
    let n = cli.truncation.unwrap_or(DEFAULT_TRUNCATION);
    let series = |text: &str| Truncated::new(h, read(text)?, n).map_err(usage);
    match &cli.command {
        Command::Product { a, b } => {
            let (a, b) = (read(a)?, read(b)?);
            let p = match cli.truncation {
                Some(n) => mul_truncated(h, &a, &b, n),
                None => mul(h, &a, &b),
            };
            Ok(show(cli, &p, d))
        }
        Command::Coproduct { x } => Ok(show_tensor(cli, &coproduct(h, &read(x)?), d)),
        Command::Antipode { x } => Ok(show(cli, &antipode(h, &read(x)?), d)),
        Command::Pair { a, b } => Ok(show_scalar(cli, &pair(&read(a)?, &read(b)?))),
        Command::Exp { x } => Ok(show(cli, exp(h, &series(x)?).map_err(usage)?.value(), d)),
        Command::Log { g } => Ok(show(cli, log(h, &series(g)?).map_err(usage)?.value(), d)),
        Command::Bch { x, y } => Ok(show(cli, bch(h, &series(x)?, &series(y)?).map_err(usage)?.value(), d)),
        Command::Norm { g } => Ok(show_float(cli, homog_norm(h, &series(g)?).map_err(usage)?)),
        Command::CheckAxioms { samples, verbose, .. } => {
            let report = check_axioms(h, cli.max_grade, *samples, cli.seed);
            axiom_output(cli, &report, *verbose)
        }
        _ => unreachable!("dispatched by run"),
    }
}

fn axiom_output(cli: &Cli, report: &AxiomReport, verbose: bool) -> Out {
    let text = match cli.format {
        FormatArg::Json => json_text(json!({
            "instance": report.instance,
            "max_grade": report.max_grade,
            "passed": report.passed(),
            "laws": laws_json(&report.laws),
        })),
        FormatArg::Text if verbose || !report.passed() => report.to_string(),
        FormatArg::Text => "OK".to_string(),
    };
    if report.passed() {
        Ok(text)
    } else {
        Err(CliError::CheckFailed(text))
    }
}

fn cuts(cli: &Cli, text: &str) -> Out {
    let dim = resolve_dim(cli, &[text], Kind::Forest, 1)?;
    let x: LinComb<Forest> = parse_as(text, dim)?;
    let (z, c) = x.first_term().ok_or_else(|| CliError::Usage("expected a single forest".into()))?;
    if x.len() != 1 || *c != Scalar::from_integer(1.into()) {
        return Err(CliError::Usage("expected a single forest".into()));
    }
    let list = enumerate_cuts(z);
    Ok(match cli.format {
        FormatArg::Text => list
            .iter()
            .map(|k| format!("{}*{} (x) {}", k.multiplicity, k.crown.canonical(dim), k.trunk.canonical(dim)))
            .collect::<Vec<_>>()
            .join("\n"),
        FormatArg::Json => json_text(Value::Array(
            list.iter()
                .map(|k| {
                    json!({ "crown": k.crown.canonical(dim), "trunk": k.trunk.canonical(dim), "multiplicity": k.multiplicity })
                })
                .collect(),
        )),
    })
}

fn convert(cli: &Cli, via: Via, text: &str) -> Out {
    match via {
        Via::Phi | Via::Psi => {
            let dim = resolve_dim(cli, &[text], Kind::Forest, 1)?;
            let x: LinComb<Forest> = parse_as(text, dim)?;
            Ok(if via == Via::Phi { show(cli, &phi(&x), dim) } else { show(cli, &psi(&x), dim) })
        }
        Via::Phihat => {
            let dim = resolve_dim(cli, &[text], Kind::Word, 1)?;
            let x: LinComb<Word> = parse_as(text, dim)?;
            Ok(show(cli, &x.map_basis(phi_hat), dim))
        }
    }
}

fn endpoints(p: &PiecewiseLinearPath, from: &Option<String>, to: &Option<String>) -> Result<(Scalar, Scalar), CliError> {
    let s = from.as_deref().map(parse_time).transpose()?.unwrap_or_else(|| p.start().clone());
    let t = to.as_deref().map(parse_time).transpose()?.unwrap_or_else(|| p.end().clone());
    Ok((s, t))
}

fn eval_lift<L: Lift>(cli: &Cli, lift: &L, p: &PiecewiseLinearPath, from: &Option<String>, to: &Option<String>) -> Out {
    let (s, t) = endpoints(p, from, to)?;
    Ok(show(cli, &lift.eval(&s, &t), p.dim()))
}

fn check_rough(cli: &Cli, path: &Path, grid: usize, n: Option<usize>, flavor: FlavorArg) -> Out {
    let p = read_path(path)?;
    let g = gamma(cli)?;
    let n = level(cli, n)?;
    if grid < 2 {
        return Err(CliError::Usage("--grid needs at least 2 points".into()));
    }
    let times = p.uniform_grid(grid);
    let report = match flavor {
        FlavorArg::Geometric => check_rough_axioms(&Signature::new(p, n).map_err(usage)?, &times, g),
        FlavorArg::Branched => check_rough_axioms(&BranchedLift::new(p, n).map_err(usage)?, &times, g),
    };
    rough_output(cli, &report)
}

fn rough_output(cli: &Cli, report: &RoughReport) -> Out {
    let text = match cli.format {
        FormatArg::Text => report.to_string(),
        FormatArg::Json => json_text(json!({
            "passed": report.passed(),
            "laws": laws_json(&report.laws),
            "holder": report.holder.iter().map(|(b, r)| json!({ "basis": b, "ratio": r })).collect::<Vec<_>>(),
            "holder_norm": report.norm_ratio,
        })),
    };
    if report.passed() {
        Ok(text)
    } else {
        Err(CliError::CheckFailed(text))
    }
}

#[allow(clippy::too_many_arguments)]
fn rde(cli: &Cli, f: &str, y0: f64, n: Option<usize>, step: &str, flavor: FlavorArg, out: OutArg, path: &Path) -> Out {
    let p = read_path(path)?;
    let g = gamma(cli)?;
    let n = level(cli, n)?;
    let field = VectorField::uniform(ScalarFn::parse(f).map_err(usage)?, p.dim());
    let opts = PicardOptions { y0, gamma: g, level: n, step: parse_time(step)? };
    let solution = match flavor {
        FlavorArg::Branched => {
            picard_solve(&BranchedLift::new(p.clone(), n).map_err(usage)?, p.start(), p.end(), &field, &opts)
        }
        FlavorArg::Geometric => {
            let lift = geo_to_branched(Signature::new(p.clone(), n).map_err(usage)?);
            picard_solve(&lift, p.start(), p.end(), &field, &opts)
        }
    }
    .map_err(usage)?;
    Ok(match out {
        OutArg::Csv => {
            let mut lines = vec!["t,y".to_string()];
            lines.extend(solution.samples.iter().map(|(t, y)| format!("{},{}", format_float(to_f64(t)), format_float(*y))));
            lines.join("\n")
        }
        OutArg::Json => json_text(json!({
            "max_sweeps": solution.max_sweeps,
            "samples": solution.samples.iter().map(|(t, y)| json!([to_f64(t), y])).collect::<Vec<_>>(),
        })),
    })
}
