//! Command dispatch: flag handling, oracle settings resolution, expression
//! evaluation and the verification sweeps.
//!
//! Exit codes: 0 for overall pass, 1 for a verification failure, 2 for
//! usage, expression or file syntax errors, 3 for violated preconditions
//! (bad subsets, invalid networks, degenerate inputs).

use std::io::Write;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use itertools::Itertools;
use num::{BigInt, BigRational, One, Zero};
use rayon::prelude::*;
use thiserror::Error;

use swapping_algebra::bracket::{
    bracket_det_boundary, bracket_fraction, bracket_poly, BoundarySide, BracketParams,
};
use swapping_algebra::circle::{pair_poly, PairGen, Point, PointSet};
use swapping_algebra::fraction::{cross_fraction, det_ratio, frac_equal, Fraction, FractionError};
use swapping_algebra::grassmannian::{CellMap, SchubertIndex};
use swapping_algebra::network::PlanarNetwork;
use swapping_algebra::rank::{
    determinant, evaluate_config, is_zero_rank_n, minor_generators, random_config, reduce,
    trial_seed, OracleParams, RankContext,
};
use swapping_algebra::ring::Polynomial;
use swapping_algebra::Verdict;

use crate::parser::{parse_expr, Expr, ParseError};
use crate::report::{Item, Report};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_VERIFICATION_FAILED: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_PRECONDITION: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Expr(#[from] ParseError),
    #[error("{0}")]
    Precondition(String),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Expr(_) => EXIT_PARSE,
            CliError::Precondition(_) => EXIT_PRECONDITION,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "swapalg", disable_help_subcommand = true)]
#[command(about = "Exact and randomized verification in the rank n swapping algebra")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Output format for reports.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Oracle prime (defaults: flag, then SWAPALG_PRIME, config file, builtin).
    #[arg(long, global = true)]
    prime: Option<u64>,
    /// Oracle trial count.
    #[arg(long, global = true)]
    trials: Option<u32>,
    /// Base random seed.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// TOML file with default oracle settings (prime, trials, seed).
    #[arg(long, global = true)]
    config: Option<String>,
    /// Attach wall-clock timings to the report (off keeps JSON reports
    /// byte-identical across runs).
    #[arg(long, global = true)]
    timings: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Args)]
struct ExprArgs {
    /// Number of circle points.
    #[arg(long)]
    points: usize,
    /// Rank of the quotient.
    #[arg(long)]
    rank: Option<usize>,
    /// Expression to operate on.
    #[arg(long)]
    expr: String,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// Bracket of two expressions.
    Bracket {
        #[command(flatten)]
        common: ExprArgs,
        /// Second expression.
        #[arg(long)]
        expr2: String,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        beta: String,
    },
    /// Normal form of a polynomial expression modulo the minor ideal.
    Reduce {
        #[command(flatten)]
        common: ExprArgs,
    },
    /// Zero certificate of an expression in the quotient.
    Iszero {
        #[command(flatten)]
        common: ExprArgs,
    },
    /// Verification sweeps.
    Verify {
        #[command(subcommand)]
        what: VerifyCmd,
    },
}

#[derive(Debug, Subcommand)]
enum VerifyCmd {
    /// Jacobi identity for all generator triples.
    Jacobi {
        #[arg(long)]
        points: usize,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        beta: String,
    },
    /// Brackets of generators with minor-ideal generators vanish in the
    /// quotient.
    PoissonIdeal {
        #[arg(long)]
        points: usize,
        #[arg(long)]
        rank: usize,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        beta: String,
    },
    /// The two boundary sums agree with the direct bracket of an edge with
    /// a determinant.
    BoundaryLemma {
        #[arg(long)]
        points: usize,
        #[arg(long)]
        rank: usize,
    },
    /// Determinant ratios do not depend on the right tuple.
    DetRatioIndependence {
        #[arg(long)]
        points: usize,
        #[arg(long)]
        rank: usize,
        #[arg(long, default_value_t = 50)]
        samples: u32,
    },
    /// The logarithmic identity for the (0,1) weights on cell coordinates.
    Lemma01 {
        #[arg(long)]
        points: usize,
        #[arg(long)]
        rank: usize,
        /// Pivot columns, comma separated, strictly increasing, 1-based.
        #[arg(long)]
        subset: String,
    },
    /// The embedding of cell coordinates is Poisson.
    MainTheorem {
        #[arg(long)]
        points: usize,
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        subset: String,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        beta: String,
    },
    /// A network's induced bracket reproduces the coordinate bracket.
    Network {
        /// Network file in the structured text format.
        #[arg(long, conflicts_with = "fixture")]
        file: Option<String>,
        /// Built-in fixture: "line" or "fork-merge".
        #[arg(long)]
        fixture: Option<String>,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        beta: String,
    },
}

/// Runs the CLI on explicit arguments, writing the report to `out`.
pub fn run<I, S>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // help/version requests are not errors
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_PASS };
            let _ = write!(out, "{e}");
            return code;
        }
    };
    let started = Instant::now();
    let timings = cli.timings;
    let format = cli.format;
    match dispatch(cli) {
        Ok(mut report) => {
            if timings {
                report.elapsed_ms = Some(started.elapsed().as_millis());
            } else {
                report.elapsed_ms = None;
                for item in &mut report.items {
                    item.elapsed_ms = None;
                }
            }
            match format {
                Format::Json => {
                    let _ = writeln!(out, "{}", report.to_json());
                }
                Format::Text => {
                    let _ = write!(out, "{}", report.to_text());
                }
            }
            if report.overall_pass {
                EXIT_PASS
            } else {
                EXIT_VERIFICATION_FAILED
            }
        }
        Err(e) => {
            let _ = writeln!(out, "error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(cli: Cli) -> Result<Report, CliError> {
    let oracle = resolve_oracle(&cli)?;
    match cli.cmd {
        Cmd::Bracket { common, expr2, alpha, beta } => {
            cmd_bracket(common, expr2, alpha, beta, oracle)
        }
        Cmd::Reduce { common } => cmd_reduce(common, oracle),
        Cmd::Iszero { common } => cmd_iszero(common, oracle),
        Cmd::Verify { what } => match what {
            VerifyCmd::Jacobi { points, alpha, beta } => cmd_jacobi(points, alpha, beta),
            VerifyCmd::PoissonIdeal { points, rank, alpha, beta } => {
                cmd_poisson_ideal(points, rank, alpha, beta, oracle)
            }
            VerifyCmd::BoundaryLemma { points, rank } => cmd_boundary(points, rank, oracle),
            VerifyCmd::DetRatioIndependence { points, rank, samples } => {
                cmd_det_ratio(points, rank, samples, oracle)
            }
            VerifyCmd::Lemma01 { points, rank, subset } => {
                cmd_lemma01(points, rank, subset, oracle)
            }
            VerifyCmd::MainTheorem { points, rank, subset, alpha, beta } => {
                cmd_main_theorem(points, rank, subset, alpha, beta, oracle)
            }
            VerifyCmd::Network { file, fixture, alpha, beta } => {
                cmd_network(file, fixture, alpha, beta)
            }
        },
    }
}

// -------------------------------------------------------------------------
// settings

#[derive(serde::Deserialize, Default)]
struct ConfigFile {
    prime: Option<u64>,
    trials: Option<u32>,
    seed: Option<u64>,
}

fn resolve_oracle(cli: &Cli) -> Result<OracleParams, CliError> {
    let file = match &cli.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Usage(format!("cannot read config {path}: {e}")))?;
            toml::from_str::<ConfigFile>(&text)
                .map_err(|e| CliError::Usage(format!("bad config {path}: {e}")))?
        }
        None => ConfigFile::default(),
    };
    let env_u64 = |name: &str| -> Result<Option<u64>, CliError> {
        match std::env::var(name) {
            Ok(v) => v
                .parse()
                .map(Some)
                .map_err(|_| CliError::Usage(format!("{name} must be an integer"))),
            Err(_) => Ok(None),
        }
    };
    let defaults = OracleParams::default();
    let prime = cli
        .prime
        .or(env_u64("SWAPALG_PRIME")?)
        .or(file.prime)
        .unwrap_or(defaults.prime);
    let trials = cli
        .trials
        .or(env_u64("SWAPALG_TRIALS")?.map(|v| v as u32))
        .or(file.trials)
        .unwrap_or(defaults.trials);
    let seed = cli
        .seed
        .or(env_u64("SWAPALG_SEED")?)
        .or(file.seed)
        .unwrap_or(defaults.seed);
    Ok(OracleParams { prime, trials, seed })
}

fn parse_rational(text: &str, flag: &str) -> Result<BigRational, CliError> {
    let parts: Vec<&str> = text.split('/').collect();
    let bad = || CliError::Usage(format!("--{flag} must be an integer or p/q fraction, got '{text}'"));
    match parts.as_slice() {
        [n] => n.parse::<BigInt>().map(BigRational::from).map_err(|_| bad()),
        [n, d] => {
            let num = n.parse::<BigInt>().map_err(|_| bad())?;
            let den = d.parse::<BigInt>().map_err(|_| bad())?;
            if den.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(num, den))
        }
        _ => Err(bad()),
    }
}

fn parse_subset(text: &str, r: usize) -> Result<Vec<usize>, CliError> {
    let parts: Result<Vec<usize>, _> = text.split(',').map(|w| w.trim().parse()).collect();
    let subset = parts
        .map_err(|_| CliError::Precondition(format!("--subset must be comma-separated indices, got '{text}'")))?;
    if subset.is_empty() || subset.windows(2).any(|w| w[0] >= w[1]) {
        return Err(CliError::Precondition(
            "--subset must be strictly increasing".into(),
        ));
    }
    if subset[0] < 1 || *subset.last().unwrap() > r {
        return Err(CliError::Precondition(format!(
            "--subset entries must lie in 1..={r}"
        )));
    }
    Ok(subset)
}

fn make_context(n: usize, r: usize, oracle: OracleParams) -> Result<RankContext, CliError> {
    RankContext::new(n, PointSet::circle(r), oracle)
        .map_err(|e| CliError::Precondition(e.to_string()))
}

fn weights(alpha: &str, beta: &str) -> Result<BracketParams, CliError> {
    Ok(BracketParams::new(
        parse_rational(alpha, "alpha")?,
        parse_rational(beta, "beta")?,
    ))
}

// -------------------------------------------------------------------------
// expression evaluation

struct Evaluator {
    points: PointSet,
    ctx: Option<RankContext>,
}

impl Evaluator {
    fn new(r: usize, rank: Option<usize>, oracle: OracleParams) -> Result<Evaluator, CliError> {
        let points = PointSet::circle(r);
        let ctx = match rank {
            Some(n) => Some(make_context(n, r, oracle)?),
            None => None,
        };
        Ok(Evaluator { points, ctx })
    }

    fn eval(&mut self, e: &Expr) -> Result<Fraction, CliError> {
        let precondition = |e: FractionError| CliError::Precondition(e.to_string());
        match e {
            Expr::Number(q) => Ok(Fraction::constant(q.clone())),
            Expr::Pair(a, b) => Ok(Fraction::from_poly(pair_poly(*a, *b))),
            Expr::Det(xs, ys) => {
                let d = determinant(xs, ys).map_err(|e| CliError::Precondition(e.to_string()))?;
                Ok(Fraction::from_poly(d))
            }
            Expr::Ratio { left, t, y } => {
                let ctx = self.ctx.as_ref().ok_or_else(|| {
                    CliError::Precondition("determinant ratios E(...) need --rank".into())
                })?;
                let (ratio, enlarged) = det_ratio(left, *t, *y, ctx, None).map_err(precondition)?;
                self.ctx = Some(enlarged);
                Ok(ratio.realized)
            }
            Expr::Cross(x, y, z, t) => cross_fraction(*x, *y, *z, *t).map_err(precondition),
            Expr::Neg(inner) => Ok(self.eval(inner)?.neg()),
            Expr::Add(a, b) => Ok(self.eval(a)?.add(&self.eval(b)?)),
            Expr::Sub(a, b) => Ok(self.eval(a)?.sub(&self.eval(b)?)),
            Expr::Mul(a, b) => Ok(self.eval(a)?.mul(&self.eval(b)?)),
            Expr::Div(a, b) => {
                let num = self.eval(a)?;
                let den = self.eval(b)?;
                let inverse = match &self.ctx {
                    Some(ctx) => den.invert(ctx).map_err(precondition)?,
                    None => {
                        if den.is_structural_zero() {
                            return Err(CliError::Precondition(
                                "division by a zero expression".into(),
                            ));
                        }
                        Fraction::from_parts_unchecked(den.den().clone(), den.num().clone())
                    }
                };
                Ok(num.mul(&inverse))
            }
            Expr::Pow(a, e) => Ok(self.eval(a)?.pow(*e)),
        }
    }
}

/// Renders a fraction, folding a constant denominator into the numerator.
fn render_value(f: &Fraction) -> String {
    if let Some(c) = f.den().constant_value() {
        if !c.is_zero() {
            return f.num().scalar_mul(&(BigRational::one() / c)).to_string();
        }
    }
    format!("({}) / ({})", f.num(), f.den())
}

// -------------------------------------------------------------------------
// expression commands

fn cmd_bracket(
    common: ExprArgs,
    expr2: String,
    alpha: String,
    beta: String,
    oracle: OracleParams,
) -> Result<Report, CliError> {
    let p = weights(&alpha, &beta)?;
    let mut eval = Evaluator::new(common.points, common.rank, oracle)?;
    let lhs = eval.eval(&parse_expr(&common.expr, &eval.points.clone())?)?;
    let rhs = eval.eval(&parse_expr(&expr2, &eval.points.clone())?)?;
    let result = bracket_fraction(&lhs, &rhs, &p);
    let mut report = Report::new("bracket");
    report.param("points", common.points);
    report.param("alpha", alpha);
    report.param("beta", beta);
    if let Some(n) = common.rank {
        report.param("rank", n);
    }
    report.push(Item::new("bracket", true).with_detail(render_value(&result)));
    Ok(report)
}

fn cmd_reduce(common: ExprArgs, oracle: OracleParams) -> Result<Report, CliError> {
    let n = common
        .rank
        .ok_or_else(|| CliError::Usage("reduce needs --rank".into()))?;
    let mut eval = Evaluator::new(common.points, Some(n), oracle)?;
    let value = eval.eval(&parse_expr(&common.expr, &eval.points.clone())?)?;
    let den = value
        .den()
        .constant_value()
        .filter(|c| !c.is_zero())
        .ok_or_else(|| {
            CliError::Precondition("reduce needs a polynomial expression".into())
        })?;
    let poly = value.num().scalar_mul(&(BigRational::one() / den));
    let ctx = eval.ctx.expect("rank given");
    let normal = reduce(&poly, &ctx);
    let mut report = Report::new("reduce");
    report.param("points", common.points);
    report.param("rank", n);
    report.push(Item::new("normal-form", true).with_detail(normal.to_string()));
    Ok(report)
}

fn cmd_iszero(common: ExprArgs, oracle: OracleParams) -> Result<Report, CliError> {
    let n = common
        .rank
        .ok_or_else(|| CliError::Usage("iszero needs --rank".into()))?;
    let mut eval = Evaluator::new(common.points, Some(n), oracle)?;
    let value = eval.eval(&parse_expr(&common.expr, &eval.points.clone())?)?;
    let ctx = eval.ctx.clone().expect("rank given");
    let cert = is_zero_rank_n(value.num(), &ctx);
    let mut report = Report::new("iszero");
    report.param("points", common.points);
    report.param("rank", n);
    report.param("prime", ctx.oracle().prime);
    report.param("trials", ctx.oracle().trials);
    report.param("seed", ctx.oracle().seed);
    let pass = cert.is_zero();
    report.push(Item::new(common.expr.clone(), pass).with_certificate(&cert));
    Ok(report)
}

// -------------------------------------------------------------------------
// verification sweeps

fn all_generators(points: &PointSet) -> Vec<PairGen> {
    let pts: Vec<Point> = points.iter().collect();
    let mut out = Vec::new();
    for &a in &pts {
        for &b in &pts {
            if a != b {
                out.push(PairGen { left: a, right: b });
            }
        }
    }
    out
}

fn cmd_jacobi(points: usize, alpha: String, beta: String) -> Result<Report, CliError> {
    let p = weights(&alpha, &beta)?;
    let set = PointSet::circle(points);
    let gens = all_generators(&set);
    let triples: Vec<(PairGen, PairGen, PairGen)> = gens
        .iter()
        .cartesian_product(&gens)
        .cartesian_product(&gens)
        .map(|((a, b), c)| (*a, *b, *c))
        .collect();
    let failures: Vec<String> = triples
        .par_iter()
        .filter_map(|(a, b, c)| {
            let (fa, fb, fc) = (
                Polynomial::var(*a),
                Polynomial::var(*b),
                Polynomial::var(*c),
            );
            let mut acc = bracket_poly(&bracket_poly(&fa, &fb, &p), &fc, &p);
            acc = &acc + &bracket_poly(&bracket_poly(&fb, &fc, &p), &fa, &p);
            acc = &acc + &bracket_poly(&bracket_poly(&fc, &fa, &p), &fb, &p);
            if acc.is_zero() {
                None
            } else {
                Some(format!("{a}, {b}, {c}"))
            }
        })
        .collect();
    let mut report = Report::new("verify jacobi");
    report.param("points", points);
    report.param("alpha", alpha);
    report.param("beta", beta);
    let mut failures = failures;
    failures.sort();
    report.push(
        Item::new("all-triples", failures.is_empty())
            .with_detail(format!("{} triples checked exactly", triples.len())),
    );
    for f in failures {
        report.push(Item::new(format!("triple {f}"), false));
    }
    Ok(report)
}

fn cmd_poisson_ideal(
    points: usize,
    rank: usize,
    alpha: String,
    beta: String,
    oracle: OracleParams,
) -> Result<Report, CliError> {
    let p = weights(&alpha, &beta)?;
    let ctx = make_context(rank, points, oracle)?;
    let gens = all_generators(ctx.points());
    let minors = minor_generators(&ctx);
    let mut report = Report::new("verify poisson-ideal");
    report.param("points", points);
    report.param("rank", rank);
    report.param("alpha", alpha);
    report.param("beta", beta);
    report.param("prime", ctx.oracle().prime);
    report.param("trials", ctx.oracle().trials);
    report.param("seed", ctx.oracle().seed);
    report.param("minors", minors.len());
    let rows: Vec<Item> = gens
        .par_iter()
        .map(|g| {
            let gp = Polynomial::var(*g);
            let mut proved = 0usize;
            let mut probable = 0usize;
            let mut failed = Vec::new();
            for (k, m) in minors.iter().enumerate() {
                let br = bracket_poly(&gp, m, &p);
                let cert = is_zero_rank_n(&br, &ctx);
                match cert.verdict {
                    Verdict::ProvedZero => proved += 1,
                    Verdict::ProbablyZero => probable += 1,
                    Verdict::NonZero => failed.push(k),
                }
            }
            let pass = failed.is_empty();
            let detail = if pass {
                format!("{} minors: {proved} proved, {probable} probable", minors.len())
            } else {
                format!("nonzero brackets at minor indices {failed:?}")
            };
            Item::new(format!("generator {g}"), pass).with_detail(detail)
        })
        .collect();
    for item in rows {
        report.push(item);
    }
    Ok(report)
}

/// Anticlockwise-ordered tuples of length `m`: all rotations of every
/// m-subset.
fn anticlockwise_tuples(points: &PointSet, m: usize) -> Vec<Vec<Point>> {
    let pts: Vec<Point> = points.iter().collect();
    let mut out = Vec::new();
    for subset in pts.iter().copied().combinations(m) {
        for rot in 0..m {
            let mut tuple = Vec::with_capacity(m);
            tuple.extend_from_slice(&subset[rot..]);
            tuple.extend_from_slice(&subset[..rot]);
            out.push(tuple);
        }
    }
    out
}

fn cmd_boundary(points: usize, rank: usize, oracle: OracleParams) -> Result<Report, CliError> {
    let ctx = make_context(rank, points, oracle)?;
    let set = ctx.points().clone();
    let m = rank;
    let tuples = anticlockwise_tuples(&set, m);
    let configs: Vec<_> = (0..ctx.oracle().trials)
        .map(|t| random_config(&ctx, trial_seed(&ctx, t)))
        .collect();
    let edges: Vec<(Point, Point)> = set
        .iter()
        .cartesian_product(set.iter().collect::<Vec<_>>())
        .filter(|(a, b)| a != b)
        .collect();
    let mut report = Report::new("verify boundary-lemma");
    report.param("points", points);
    report.param("rank", rank);
    report.param("prime", ctx.oracle().prime);
    report.param("trials", ctx.oracle().trials);
    report.param("seed", ctx.oracle().seed);
    let rows: Vec<Item> = edges
        .par_iter()
        .map(|&(a, b)| {
            let edge = pair_poly(a, b);
            let mut exact = 0usize;
            let mut oracle_equal = 0usize;
            let mut total = 0usize;
            let mut failures = Vec::new();
            for xs in &tuples {
                for ys in &tuples {
                    total += 1;
                    let direct = bracket_poly(&edge, &determinant(xs, ys).unwrap(), &BracketParams::from_ints(1, 0));
                    let right = bracket_det_boundary(a, b, xs, ys, BoundarySide::Right).unwrap();
                    let left = bracket_det_boundary(a, b, xs, ys, BoundarySide::Left).unwrap();
                    if direct == right && direct == left {
                        exact += 1;
                    }
                    let mut all_equal = true;
                    for cfg in &configs {
                        let d = evaluate_config(&direct, cfg).unwrap();
                        let r = evaluate_config(&right, cfg).unwrap();
                        let l = evaluate_config(&left, cfg).unwrap();
                        if d != r || d != l {
                            all_equal = false;
                            break;
                        }
                    }
                    if all_equal {
                        oracle_equal += 1;
                    } else {
                        failures.push(format!("rows {xs:?} cols {ys:?}"));
                    }
                }
            }
            let pass = failures.is_empty();
            let detail = if pass {
                format!("{total} instances, exact: {exact}, oracle-equal: {oracle_equal}")
            } else {
                format!("oracle mismatch at {failures:?}")
            };
            Item::new(format!("edge {a}.{b}"), pass).with_detail(detail)
        })
        .collect();
    for item in rows {
        report.push(item);
    }
    Ok(report)
}

fn cmd_det_ratio(
    points: usize,
    rank: usize,
    samples: u32,
    oracle: OracleParams,
) -> Result<Report, CliError> {
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    let ctx = make_context(rank, points, oracle)?;
    if points < 2 * rank {
        return Err(CliError::Precondition(format!(
            "need at least {} points for disjoint tuples at rank {rank}",
            2 * rank
        )));
    }
    let pts: Vec<Point> = ctx.points().iter().collect();
    let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(ctx.oracle().seed);
    let mut report = Report::new("verify det-ratio-independence");
    report.param("points", points);
    report.param("rank", rank);
    report.param("samples", samples);
    report.param("prime", ctx.oracle().prime);
    report.param("trials", ctx.oracle().trials);
    report.param("seed", ctx.oracle().seed);
    let mut produced = 0u32;
    while produced < samples {
        let mut shuffled = pts.clone();
        shuffled.shuffle(&mut rng);
        let left: Vec<Point> = shuffled[..rank - 1].to_vec();
        let y = shuffled[rank - 1];
        let t = shuffled[rank % shuffled.len()];
        let mut right_a = pts.clone();
        right_a.shuffle(&mut rng);
        let right_a: Vec<Point> = right_a[..rank].to_vec();
        let mut right_b = pts.clone();
        right_b.shuffle(&mut rng);
        let right_b: Vec<Point> = right_b[..rank].to_vec();
        if right_a == right_b {
            continue;
        }
        let first = det_ratio(&left, t, y, &ctx, Some(right_a.clone()));
        let second = det_ratio(&left, t, y, &ctx, Some(right_b.clone()));
        let (first, second) = match (first, second) {
            (Ok((a, _)), Ok((b, _))) => (a, b),
            // degenerate realization: denominator vanished, try new tuples
            _ => continue,
        };
        produced += 1;
        let cert = frac_equal(&first.realized, &second.realized, &ctx);
        let key = format!(
            "sample {produced}: E([{}]; {t}, {y})",
            left.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(",")
        );
        report.push(Item::new(key, cert.is_zero()).with_certificate(&cert));
    }
    Ok(report)
}

fn cell_map(points: usize, rank: usize, subset: &str) -> Result<CellMap, CliError> {
    let pivots = parse_subset(subset, points)?;
    if pivots.len() != rank {
        return Err(CliError::Precondition(format!(
            "--subset must have exactly {rank} entries"
        )));
    }
    let index = SchubertIndex::new(points, pivots)
        .map_err(|e| CliError::Precondition(e.to_string()))?;
    Ok(CellMap::new(index))
}

fn cmd_lemma01(
    points: usize,
    rank: usize,
    subset: String,
    oracle: OracleParams,
) -> Result<Report, CliError> {
    let map = cell_map(points, rank, &subset)?;
    let ctx = make_context(rank, points, oracle)?;
    let outcomes = map
        .verify_sweep_01(&ctx)
        .map_err(|e| CliError::Precondition(e.to_string()))?;
    let mut report = Report::new("verify lemma01");
    report.param("points", points);
    report.param("rank", rank);
    report.param("subset", subset);
    report.param("prime", ctx.oracle().prime);
    report.param("trials", ctx.oracle().trials);
    report.param("seed", ctx.oracle().seed);
    for o in outcomes {
        report.push(
            Item::new(format!("{} vs {}", o.c, o.cp), o.certificate.is_zero())
                .with_certificate(&o.certificate),
        );
    }
    Ok(report)
}

fn cmd_main_theorem(
    points: usize,
    rank: usize,
    subset: String,
    alpha: String,
    beta: String,
    oracle: OracleParams,
) -> Result<Report, CliError> {
    let p = weights(&alpha, &beta)?;
    let map = cell_map(points, rank, &subset)?;
    let ctx = make_context(rank, points, oracle)?;
    let outcomes = map
        .verify_sweep(&p, &ctx)
        .map_err(|e| CliError::Precondition(e.to_string()))?;
    let mut report = Report::new("verify main-theorem");
    report.param("points", points);
    report.param("rank", rank);
    report.param("subset", subset);
    report.param("alpha", alpha);
    report.param("beta", beta);
    report.param("prime", ctx.oracle().prime);
    report.param("trials", ctx.oracle().trials);
    report.param("seed", ctx.oracle().seed);
    for o in outcomes {
        report.push(
            Item::new(format!("{} vs {}", o.c, o.cp), o.certificate.is_zero())
                .with_certificate(&o.certificate),
        );
    }
    Ok(report)
}

fn cmd_network(
    file: Option<String>,
    fixture: Option<String>,
    alpha: String,
    beta: String,
) -> Result<Report, CliError> {
    let p = weights(&alpha, &beta)?;
    let network = match (file, fixture) {
        (Some(path), None) => {
            let text = std::fs::read_to_string(&path)
                .map_err(|e| CliError::Usage(format!("cannot read {path}: {e}")))?;
            PlanarNetwork::parse(&text).map_err(|e| CliError::Usage(e.to_string()))?
        }
        (None, Some(name)) => match name.as_str() {
            "line" => swapping_algebra::network::fixture_line(),
            "fork-merge" => swapping_algebra::network::fixture_fork_merge(),
            other => {
                return Err(CliError::Usage(format!(
                    "unknown fixture '{other}', expected 'line' or 'fork-merge'"
                )))
            }
        },
        _ => return Err(CliError::Usage("network needs --file or --fixture".into())),
    };
    network
        .validate()
        .map_err(|issues| CliError::Precondition(issues.join("; ")))?;
    let checks = network
        .verify_vs_coordinate_formula(&p)
        .map_err(|e| CliError::Precondition(e.to_string()))?;
    let mut report = Report::new("verify network");
    report.param("alpha", alpha);
    report.param("beta", beta);
    report.param("boundary", network.boundary_size());
    report.param(
        "sources",
        serde_json::Value::from(network.sources().to_vec()),
    );
    for check in checks {
        let item = Item::new(format!("{} vs {}", check.c, check.cp), check.pass);
        let item = if check.pass {
            item
        } else {
            item.with_detail(format!("bracket {} != formula {}", check.lhs, check.rhs))
        };
        report.push(item);
    }
    Ok(report)
}
