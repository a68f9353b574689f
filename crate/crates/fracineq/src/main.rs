use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand};
use fracineq::config::{SweepConfig, XPoints};
use fracineq::report::{self, Format};
use fracineq::sweep::{run_sweep, RunOptions};
use fracineq_core::bounds::{self, Hypotheses, ReductionGrid, REDUCTION_TOL};
use fracineq_core::funcatalog::{self, builtin_catalog, CertifyConfig};
use fracineq_core::identity::{self, IDENTITY_TOL};
use fracineq_core::{Error, FracParams, InequalityReport, QuadratureConfig, Rule, TheoremId, Tolerances, Verdict};

/// Numerical verification of fractional Ostrowski-type inequalities.
#[derive(Parser, Debug)]
#[command(name = "fracineq", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the fractional Ostrowski identity and its two halves.
    CheckIdentity(IdentityArgs),
    /// Evaluate one inequality at one parameter point.
    Verify(VerifyArgs),
    /// Run a parameter sweep from a config file and flag overrides.
    Sweep(SweepArgs),
    /// Compare a fractional bound at alpha = 1 with its classical form.
    Reduce(ReduceArgs),
    /// List the built-in functions and their certified hypotheses.
    Catalog(CatalogArgs),
}

#[derive(Args, Debug)]
struct Interval {
    /// Left end of [a, b]
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    a: f64,
    /// Right end of [a, b]
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    b: f64,
}

#[derive(Args, Debug)]
struct IdentityArgs {
    #[arg(long)]
    function: String,
    /// Orders to check (comma separated)
    #[arg(long, value_delimiter = ',', default_value = "1")]
    alpha: Vec<f64>,
    /// Evaluation points (comma separated)
    #[arg(long, value_delimiter = ',', required = true)]
    x: Vec<f64>,
    #[command(flatten)]
    interval: Interval,
    #[arg(long, value_enum, default_value = "transformed-adaptive")]
    rule: RuleArg,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Theorem identifier: E6, E7, E8proof, E8printed, E9, e1, e13, e14, t5_146, t6_147
    #[arg(long)]
    theorem: String,
    #[arg(long)]
    function: String,
    #[arg(long, default_value_t = 1.0)]
    alpha: f64,
    #[arg(long, default_value_t = 1.0)]
    s: f64,
    #[arg(long)]
    x: f64,
    #[arg(long)]
    p: Option<f64>,
    #[arg(long)]
    q: Option<f64>,
    /// Derivative bound; defaults to the catalog's analytic or sampled one
    #[arg(long)]
    m: Option<f64>,
    #[command(flatten)]
    interval: Interval,
    #[arg(long, value_enum, default_value = "transformed-adaptive")]
    rule: RuleArg,
    /// Print the reports as JSON
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct SweepArgs {
    /// TOML config file; flags below override its keys
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, value_delimiter = ',')]
    functions: Option<Vec<String>>,
    #[arg(long, value_delimiter = ',')]
    alphas: Option<Vec<f64>>,
    #[arg(long, value_delimiter = ',')]
    s_values: Option<Vec<f64>>,
    #[arg(long, value_delimiter = ',')]
    theorems: Option<Vec<String>>,
    /// Number of uniformly spaced x points
    #[arg(long, conflicts_with = "x")]
    x_points: Option<usize>,
    /// Explicit x points (comma separated)
    #[arg(long, value_delimiter = ',')]
    x: Option<Vec<f64>>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    random_x: Option<usize>,
    /// Write the CSV report here
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Write the JSON report here
    #[arg(long)]
    json: Option<PathBuf>,
    /// Evaluate grid points one at a time
    #[arg(long)]
    serial: bool,
    /// Worker threads (overrides FRACINEQ_THREADS)
    #[arg(long)]
    threads: Option<usize>,
    /// Record a timestamp in the JSON provenance
    #[arg(long)]
    stamp: bool,
}

#[derive(Args, Debug)]
struct ReduceArgs {
    /// E6, E7, E8proof, E9 or all
    #[arg(long, default_value = "all")]
    theorem: String,
    /// Function used by the s-concave bound
    #[arg(long, default_value = "three_halves")]
    function: String,
}

#[derive(Args, Debug)]
struct CatalogArgs {
    /// Re-run the certifier on every registered claim
    #[arg(long)]
    certify: bool,
}

#[derive(clap::ValueEnum, Clone, Copy, Debug)]
enum RuleArg {
    TransformedAdaptive,
    GaussJacobi,
    OracleMidpoint,
}

impl From<RuleArg> for Rule {
    fn from(r: RuleArg) -> Rule {
        match r {
            RuleArg::TransformedAdaptive => Rule::TransformedAdaptive,
            RuleArg::GaussJacobi => Rule::GaussJacobi,
            RuleArg::OracleMidpoint => Rule::OracleMidpoint,
        }
    }
}

enum Failure {
    /// Bad arguments or configuration: exit 2.
    Usage(anyhow::Error),
    /// A check ran and failed, or evaluation broke down: exit 1.
    Check(anyhow::Error),
}

type Outcome = Result<bool, Failure>;

fn usage<E: Into<anyhow::Error>>(e: E) -> Failure {
    Failure::Usage(e.into())
}

fn check<E: Into<anyhow::Error>>(e: E) -> Failure {
    Failure::Check(e.into())
}

/// Parameter problems are the caller's; everything else is a failed check.
fn classify(e: Error) -> Failure {
    match e {
        Error::InvalidParams(_) | Error::MissingParam(_) | Error::OutOfDomain { .. } | Error::EmptyInterval { .. } => {
            usage(e)
        }
        _ => check(e),
    }
}

fn lookup(name: &str) -> Result<funcatalog::CatalogEntry, Failure> {
    funcatalog::find(name).ok_or_else(|| {
        let names: Vec<String> = builtin_catalog().iter().map(|e| e.name().to_string()).collect();
        usage(anyhow!("unknown function `{name}`; available: {}", names.join(", ")))
    })
}

fn check_identity(args: IdentityArgs) -> Outcome {
    let f = lookup(&args.function)?.function;
    let cfg = QuadratureConfig::default().with_rule(args.rule.into());
    let (a, b) = (args.interval.a, args.interval.b);
    let mut ok = true;
    println!("function  alpha  x  lhs  rhs  rel_residual  budget  verdict");
    for &alpha in &args.alpha {
        for &x in &args.x {
            let prm = FracParams::new(a, b, x, alpha, 1.0);
            let r = identity::check_e1(&f, &prm, &cfg).map_err(classify)?;
            let pass = r.passes(IDENTITY_TOL);
            ok &= pass;
            println!(
                "{}  {alpha}  {x}  {:.15e}  {:.15e}  {:.3e}  {:.3e}  {}",
                f.name(),
                r.lhs,
                r.rhs,
                r.rel_residual,
                r.quad_error_budget,
                if pass { "PASS" } else { "FAIL" }
            );
            if x > a && x < b {
                let (l, rr) = identity::check_e4_e5(&f, &prm, &cfg).map_err(classify)?;
                let halves = l.passes(IDENTITY_TOL) && rr.passes(IDENTITY_TOL);
                ok &= halves;
                println!(
                    "  halves: left {:.3e}  right {:.3e}  {}",
                    l.rel_residual,
                    rr.rel_residual,
                    if halves { "PASS" } else { "FAIL" }
                );
            }
            if alpha == 1.0 {
                let c = identity::check_classical_lemma(&f, a, b, x, &cfg).map_err(classify)?;
                let pass = c.passes(IDENTITY_TOL);
                ok &= pass;
                println!(
                    "  classical: rel_residual {:.3e}  deviation {:.3e}  {}",
                    c.residual.rel_residual,
                    c.deviation,
                    if pass { "PASS" } else { "FAIL" }
                );
            }
        }
    }
    Ok(ok)
}

fn print_report(r: &InequalityReport) {
    let opt = |v: Option<f64>| v.map(|v| v.to_string()).unwrap_or_else(|| "-".into());
    println!(
        "{} {}: alpha={} s={} p={} q={} x={} M={}",
        r.theorem_id,
        r.function,
        r.prm.alpha,
        r.prm.s,
        opt(r.prm.p),
        opt(r.prm.q),
        r.prm.x,
        opt(r.prm.m)
    );
    println!("  lhs    = {:.15e}", r.lhs);
    println!("  rhs    = {:.15e}", r.rhs);
    println!("  margin = {:.15e}  (budget {:.3e})", r.margin, r.quad_error_budget);
    match &r.verdict {
        Verdict::Asserted => println!("  {}", if r.holds { "HOLDS" } else { "VIOLATED" }),
        Verdict::Skipped(reason) => println!("  skipped: {reason}"),
    }
}

fn verify(args: VerifyArgs) -> Outcome {
    let theorems = TheoremId::parse_group(&args.theorem).map_err(usage)?;
    let f = lookup(&args.function)?.function;
    let (a, b) = (args.interval.a, args.interval.b);
    let mut prm = FracParams::new(a, b, args.x, args.alpha, args.s);
    prm.p = args.p;
    prm.q = args.q;
    prm.m = args.m;
    let cfg = QuadratureConfig::default().with_rule(args.rule.into());
    let q_values: Vec<f64> = args.q.into_iter().collect();
    let hyp = Hypotheses::establish(&f, a, b, &[args.s], &q_values, &CertifyConfig::default()).map_err(classify)?;
    let tol = Tolerances::default();

    let mut reports = Vec::new();
    for t in theorems {
        reports.push(bounds::evaluate(t, &f, &prm, &hyp, &cfg, &tol).map_err(classify)?);
    }
    if args.json {
        println!("{}", serde_json::to_string_pretty(&reports).map_err(check)?);
    } else {
        reports.iter().for_each(print_report);
    }
    Ok(!reports.iter().any(InequalityReport::violated))
}

fn sweep(args: SweepArgs) -> Outcome {
    let mut cfg = match &args.config {
        Some(path) => SweepConfig::load(path).map_err(usage)?,
        None => SweepConfig::default(),
    };
    if let Some(v) = args.functions {
        cfg.functions = v;
    }
    if let Some(v) = args.alphas {
        cfg.alphas = v;
    }
    if let Some(v) = args.s_values {
        cfg.s_values = v;
    }
    if let Some(v) = args.theorems {
        cfg.theorems = v;
    }
    if let Some(n) = args.x_points {
        cfg.x_points = XPoints::Count(n);
    }
    if let Some(v) = args.x {
        cfg.x_points = XPoints::List(v);
    }
    if let Some(v) = args.seed {
        cfg.seed = v;
    }
    if let Some(v) = args.random_x {
        cfg.random_x = v;
    }
    let opts = RunOptions {
        parallel: !args.serial,
        threads: args.threads,
        stamp: args.stamp,
    };
    let res = run_sweep(&cfg, &opts).map_err(usage)?;

    for (path, format) in [(&args.csv, Format::Csv), (&args.json, Format::Json)] {
        if let Some(path) = path {
            report::emit_report(&res, format, path)
                .with_context(|| format!("writing {}", path.display()))
                .map_err(check)?;
        }
    }

    let s = &res.summary;
    println!(
        "reports: {} total, {} passed, {} failed, {} skipped ({} errors)",
        s.total, s.passed, s.failed, s.skipped, s.errors
    );
    println!("identity: {} checks, {} failed", s.identity_checks, s.identity_failed);
    if let Some(m) = s.worst_margin {
        println!("worst asserted margin: {m:.6e}");
    }
    if let Some(r) = s.worst_residual {
        println!("worst identity residual: {r:.6e}");
    }
    for r in res.reports.iter().filter(|r| r.violated()) {
        println!("VIOLATED {} {} alpha={} s={} x={} margin={:e}", r.theorem_id, r.function, r.prm.alpha, r.prm.s, r.prm.x, r.margin);
    }
    for e in &res.errors {
        println!("ERROR {} {} alpha={} s={} x={}: {}", e.theorem_id, e.function, e.prm.alpha, e.prm.s, e.prm.x, e.message);
    }
    Ok(res.success())
}

fn reduce(args: ReduceArgs) -> Outcome {
    let theorems: Vec<TheoremId> = if args.theorem == "all" {
        TheoremId::FRACTIONAL.to_vec()
    } else {
        TheoremId::parse_group(&args.theorem).map_err(usage)?
    };
    let f = lookup(&args.function)?.function;
    let grid = ReductionGrid::default();
    let mut ok = true;
    for t in theorems {
        let dev = bounds::reduction_check(t, &grid, &f).map_err(classify)?;
        let pass = dev <= REDUCTION_TOL;
        ok &= pass;
        println!("{t}: max deviation {dev:.3e}  {}", if pass { "PASS" } else { "FAIL" });
    }
    Ok(ok)
}

fn catalog(args: CatalogArgs) -> Outcome {
    let mut ok = true;
    for entry in builtin_catalog() {
        let f = &entry.function;
        let (lo, hi) = f.domain();
        let m = funcatalog::derivative_bound(f);
        println!("{} on [{lo}, {hi}]  M = {} ({:?})", entry.name(), m.m, m.method);
        for c in &entry.claims {
            let what = match c.target {
                fracineq_core::Target::AbsDerivPow => format!("{}^{}", c.target, c.q),
                _ => c.target.to_string(),
            };
            if args.certify {
                let cert = funcatalog::certify(f, c.s, c.q, c.mode, c.target).map_err(classify)?;
                ok &= cert.passed();
                println!(
                    "  {what} {} s={}  max_violation {:.3e}  {}",
                    c.mode,
                    c.s,
                    cert.max_violation,
                    if cert.passed() { "PASS" } else { "FAIL" }
                );
            } else {
                println!("  {what} {} s={}", c.mode, c.s);
            }
        }
    }
    Ok(ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::CheckIdentity(a) => check_identity(a),
        Command::Verify(a) => verify(a),
        Command::Sweep(a) => sweep(a),
        Command::Reduce(a) => reduce(a),
        Command::Catalog(a) => catalog(a),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Check(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
