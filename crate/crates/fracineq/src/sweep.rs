//! Cartesian sweeps over functions, orders, convexity indices, exponents
//! and evaluation points.

use std::cmp::Ordering;

use fracineq_core::bounds::{self, Hypotheses};
use fracineq_core::identity;
use fracineq_core::{CatalogEntry, FracParams, IdentityResidual, InequalityReport, TheoremId};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::{ConfigError, Resolved, SweepConfig};

/// Identity check at one `(function, α, x)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityRecord {
    pub function: String,
    pub alpha: f64,
    pub x: f64,
    pub residual: Option<IdentityResidual>,
    pub passed: bool,
    pub error: Option<String>,
}

/// An evaluation that could not produce a report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointError {
    pub theorem_id: TheoremId,
    pub function: String,
    pub prm: FracParams,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    /// `passed + failed + skipped`.
    pub total: usize,
    pub passed: usize,
    /// Asserted violations plus evaluation errors.
    pub failed: usize,
    pub skipped: usize,
    pub errors: usize,
    /// Smallest margin among asserted reports.
    pub worst_margin: Option<f64>,
    pub identity_checks: usize,
    pub identity_failed: usize,
    pub worst_residual: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub config: SweepConfig,
    pub version: String,
    /// Seconds since the Unix epoch; absent unless requested so that
    /// report files stay byte-stable.
    pub timestamp: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub reports: Vec<InequalityReport>,
    pub residuals: Vec<IdentityRecord>,
    pub errors: Vec<PointError>,
    pub summary: Summary,
    pub provenance: Provenance,
}

impl SweepResult {
    /// No asserted violation, no evaluation error, no failed identity check.
    pub fn success(&self) -> bool {
        self.summary.failed == 0 && self.summary.identity_failed == 0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunOptions {
    pub parallel: bool,
    /// Worker cap; falls back to `FRACINEQ_THREADS`, then to rayon's default.
    pub threads: Option<usize>,
    pub stamp: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        Self {
            parallel: true,
            threads: None,
            stamp: false,
        }
    }
}

pub const THREADS_ENV: &str = "FRACINEQ_THREADS";

fn opt_key(v: Option<f64>) -> f64 {
    v.unwrap_or(f64::NEG_INFINITY)
}

/// `(theorem_id, function, alpha, s, p, x)`, then `q`.
pub fn report_order(l: &InequalityReport, r: &InequalityReport) -> Ordering {
    l.theorem_id
        .cmp(&r.theorem_id)
        .then_with(|| l.function.cmp(&r.function))
        .then_with(|| l.prm.alpha.total_cmp(&r.prm.alpha))
        .then_with(|| l.prm.s.total_cmp(&r.prm.s))
        .then_with(|| opt_key(l.prm.p).total_cmp(&opt_key(r.prm.p)))
        .then_with(|| l.prm.x.total_cmp(&r.prm.x))
        .then_with(|| opt_key(l.prm.q).total_cmp(&opt_key(r.prm.q)))
}

fn error_order(l: &PointError, r: &PointError) -> Ordering {
    l.theorem_id
        .cmp(&r.theorem_id)
        .then_with(|| l.function.cmp(&r.function))
        .then_with(|| l.prm.alpha.total_cmp(&r.prm.alpha))
        .then_with(|| l.prm.s.total_cmp(&r.prm.s))
        .then_with(|| opt_key(l.prm.p).total_cmp(&opt_key(r.prm.p)))
        .then_with(|| l.prm.x.total_cmp(&r.prm.x))
        .then_with(|| opt_key(l.prm.q).total_cmp(&opt_key(r.prm.q)))
}

fn residual_order(l: &IdentityRecord, r: &IdentityRecord) -> Ordering {
    l.function
        .cmp(&r.function)
        .then_with(|| l.alpha.total_cmp(&r.alpha))
        .then_with(|| l.x.total_cmp(&r.x))
}

/// One independent unit of work.
#[derive(Debug, Clone, Copy)]
enum Task {
    /// Fractional theorems and the identity at `(function, α, x)`.
    Fractional { f: usize, alpha: f64, x: f64 },
    /// Classical theorems, which do not depend on α.
    Classical { f: usize, x: f64 },
}

#[derive(Default)]
struct Partial {
    reports: Vec<InequalityReport>,
    residuals: Vec<IdentityRecord>,
    errors: Vec<PointError>,
}

struct Context<'a> {
    cfg: &'a Resolved,
    hyps: Vec<Hypotheses>,
}

impl Context<'_> {
    fn entry(&self, i: usize) -> &CatalogEntry {
        &self.cfg.functions[i]
    }

    /// Every parameter variant a theorem needs at one `(α, x)`.
    fn variants(&self, theorem: TheoremId, alpha: f64, x: f64) -> Vec<FracParams> {
        let c = self.cfg;
        let x = if theorem.uses_x() { x } else { 0.5 * (c.a + c.b) };
        let s_values: &[f64] = if theorem.uses_s() { &c.s_values } else { &[1.0] };
        let mut out = Vec::new();
        for &s in s_values {
            let base = FracParams::new(c.a, c.b, x, alpha, s);
            if theorem.uses_pq() {
                out.extend(c.pq_pairs.iter().map(|&(p, q)| base.with_pq(p, q)));
            } else {
                out.push(base);
            }
        }
        out
    }

    fn evaluate_into(&self, out: &mut Partial, f: usize, theorem: TheoremId, alpha: f64, x: f64) {
        let entry = self.entry(f);
        for prm in self.variants(theorem, alpha, x) {
            match bounds::evaluate(
                theorem,
                &entry.function,
                &prm,
                &self.hyps[f],
                &self.cfg.quadrature,
                &self.cfg.tolerances,
            ) {
                Ok(r) => out.reports.push(r),
                Err(e) => out.errors.push(PointError {
                    theorem_id: theorem,
                    function: entry.name().to_string(),
                    prm,
                    message: e.to_string(),
                }),
            }
        }
    }

    fn run(&self, task: Task) -> Partial {
        let mut out = Partial::default();
        match task {
            Task::Fractional { f, alpha, x } => {
                let entry = self.entry(f);
                let prm = FracParams::new(self.cfg.a, self.cfg.b, x, alpha, 1.0);
                let record = match identity::check_e1(&entry.function, &prm, &self.cfg.quadrature) {
                    Ok(r) => IdentityRecord {
                        function: entry.name().to_string(),
                        alpha,
                        x,
                        passed: r.passes(self.cfg.tolerances.identity_tol),
                        residual: Some(r),
                        error: None,
                    },
                    Err(e) => IdentityRecord {
                        function: entry.name().to_string(),
                        alpha,
                        x,
                        residual: None,
                        passed: false,
                        error: Some(e.to_string()),
                    },
                };
                out.residuals.push(record);
                for &t in self.cfg.theorems.iter().filter(|t| t.uses_alpha()) {
                    self.evaluate_into(&mut out, f, t, alpha, x);
                }
            }
            Task::Classical { f, x } => {
                for &t in self.cfg.theorems.iter().filter(|t| !t.uses_alpha()) {
                    // Theorems without an x are evaluated once, at the first point.
                    if !t.uses_x() && x != self.cfg.x_points[0] {
                        continue;
                    }
                    self.evaluate_into(&mut out, f, t, 1.0, x);
                }
            }
        }
        out
    }
}

fn thread_cap(opts: &RunOptions) -> Option<usize> {
    opts.threads.or_else(|| {
        std::env::var(THREADS_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
            .filter(|&n| n > 0)
    })
}

/// Runs the full grid. Evaluation failures are recorded per point; only
/// an invalid configuration is an error.
pub fn run_sweep(config: &SweepConfig, opts: &RunOptions) -> Result<SweepResult, ConfigError> {
    let resolved = config.validate()?;
    let q_values: Vec<f64> = {
        let mut q: Vec<f64> = resolved.pq_pairs.iter().map(|&(_, q)| q).collect();
        q.sort_by(f64::total_cmp);
        q.dedup();
        q
    };

    let mut problems = Vec::new();
    let mut hyps = Vec::new();
    for e in &resolved.functions {
        match Hypotheses::establish(&e.function, resolved.a, resolved.b, &resolved.s_values, &q_values, &resolved.certify) {
            Ok(h) => hyps.push(h),
            Err(err) => problems.push(format!("functions: `{}`: {err}", e.name())),
        }
    }
    if !problems.is_empty() {
        return Err(ConfigError { problems });
    }
    let ctx = Context { cfg: &resolved, hyps };

    let mut tasks = Vec::new();
    for f in 0..resolved.functions.len() {
        if resolved.theorems.iter().any(|t| t.uses_alpha()) {
            for &alpha in &resolved.alphas {
                for &x in &resolved.x_points {
                    tasks.push(Task::Fractional { f, alpha, x });
                }
            }
        }
        if resolved.theorems.iter().any(|t| !t.uses_alpha()) {
            for &x in &resolved.x_points {
                tasks.push(Task::Classical { f, x });
            }
        }
    }

    let partials: Vec<Partial> = if opts.parallel {
        let run = || tasks.par_iter().map(|&t| ctx.run(t)).collect();
        match thread_cap(opts) {
            Some(n) => rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .expect("thread pool")
                .install(run),
            None => run(),
        }
    } else {
        tasks.iter().map(|&t| ctx.run(t)).collect()
    };

    let mut all = Partial::default();
    for p in partials {
        all.reports.extend(p.reports);
        all.residuals.extend(p.residuals);
        all.errors.extend(p.errors);
    }
    all.reports.sort_by(report_order);
    all.residuals.sort_by(residual_order);
    all.errors.sort_by(error_order);

    let summary = summarize(&all.reports, &all.residuals, &all.errors);
    let timestamp = opts.stamp.then(|| {
        std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0)
    });
    Ok(SweepResult {
        reports: all.reports,
        residuals: all.residuals,
        errors: all.errors,
        summary,
        provenance: Provenance {
            config: config.clone(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            timestamp,
        },
    })
}

pub fn summarize(reports: &[InequalityReport], residuals: &[IdentityRecord], errors: &[PointError]) -> Summary {
    let skipped = reports.iter().filter(|r| !r.asserted()).count();
    let violated = reports.iter().filter(|r| r.violated()).count();
    let passed = reports.len() - skipped - violated;
    let worst_margin = reports.iter().filter(|r| r.asserted()).map(|r| r.margin).min_by(f64::total_cmp);
    let worst_residual = residuals
        .iter()
        .filter_map(|r| r.residual.map(|x| x.rel_residual))
        .max_by(f64::total_cmp);
    Summary {
        total: reports.len() + errors.len(),
        passed,
        failed: violated + errors.len(),
        skipped,
        errors: errors.len(),
        worst_margin,
        identity_checks: residuals.len(),
        identity_failed: residuals.iter().filter(|r| !r.passed).count(),
        worst_residual,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::XPoints;

    fn small() -> SweepConfig {
        SweepConfig {
            functions: vec!["square".into(), "three_halves".into()],
            alphas: vec![0.5, 1.0],
            s_values: vec![0.5, 1.0],
            pq_pairs: vec![(2.0, 2.0)],
            x_points: XPoints::Count(3),
            ..SweepConfig::default()
        }
    }

    #[test]
    fn counts_add_up() {
        let res = run_sweep(&small(), &RunOptions::default()).unwrap();
        let s = &res.summary;
        assert_eq!(s.total, s.passed + s.failed + s.skipped);
        assert_eq!(s.failed, 0);
        assert_eq!(s.identity_failed, 0);
        assert_eq!(s.identity_checks, 2 * 2 * 3);
        assert!(s.skipped > 0, "E9 on square is uncertified");
        assert!(res.success());
    }

    #[test]
    fn grid_shape() {
        let res = run_sweep(&small(), &RunOptions::default()).unwrap();
        let count = |t: TheoremId| res.reports.iter().filter(|r| r.theorem_id == t).count();
        // 2 functions × 2 α × 2 s × 3 x, times 1 pair where needed.
        assert_eq!(count(TheoremId::E6), 24);
        assert_eq!(count(TheoremId::E7), 24);
        assert_eq!(count(TheoremId::E1), 2 * 3);
        assert_eq!(count(TheoremId::E13Lower), 2 * 2);
        assert_eq!(count(TheoremId::E14), 2 * 2 * 3);
        assert_eq!(count(TheoremId::E8Printed), 0);
        assert!(res.reports.windows(2).all(|w| report_order(&w[0], &w[1]) != Ordering::Greater));
    }

    #[test]
    fn serial_matches_parallel() {
        let par = run_sweep(&small(), &RunOptions::default()).unwrap();
        let ser = run_sweep(&small(), &RunOptions { parallel: false, ..RunOptions::default() }).unwrap();
        assert_eq!(par, ser);
    }

    #[test]
    fn invalid_config_is_rejected() {
        let cfg = SweepConfig {
            functions: vec![],
            ..SweepConfig::default()
        };
        assert!(run_sweep(&cfg, &RunOptions::default()).is_err());
    }
}
