//! Acceptance gate: runs the eight criteria and prints one PASS/FAIL line
//! for each. Exits non-zero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use fracineq::config::{SweepConfig, XPoints};
use fracineq::report::csv_string;
use fracineq::sweep::{run_sweep, RunOptions};
use fracineq_core::bounds::{self, Hypotheses, ReductionGrid, REDUCTION_TOL};
use fracineq_core::fracint::{lemma_pair, oracle, rl_left, rl_right, Anchor, WeakKernel, ORACLE_PANELS};
use fracineq_core::funcatalog::{builtin_catalog, find, CertifyConfig, Function1D, Mode, Target};
use fracineq_core::identity::{check_classical_lemma, check_e1, CLASSICAL_AGREEMENT_TOL};
use fracineq_core::specfun::{beta, gamma};
use fracineq_core::{FracParams, QuadratureConfig, TheoremId, Tolerances};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Criterion = (&'static str, Duration, fn() -> Outcome);

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        ok,
        detail: detail.into(),
    }
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

fn special_functions() -> Outcome {
    let tol = 8e-13;
    let n = 500;
    let (lo, hi) = (0.1f64.ln(), 50f64.ln());
    let mut worst_rec: f64 = 0.0;
    for i in 1..=n {
        let z = (lo + (hi - lo) * i as f64 / n as f64).exp();
        let g1 = gamma(z + 1.0).unwrap();
        worst_rec = worst_rec.max((g1 - z * gamma(z).unwrap()).abs() / g1);
    }
    let mut worst_beta: f64 = 0.0;
    let grid: Vec<f64> = (1..=40).map(|i| 0.1 + 9.9 * i as f64 / 40.0).collect();
    for &x in &grid {
        for &y in &grid {
            let lhs = beta(x, y).unwrap() * gamma(x + y).unwrap();
            worst_beta = worst_beta.max(rel(lhs, gamma(x).unwrap() * gamma(y).unwrap()));
        }
    }
    let half = rel(gamma(0.5).unwrap(), std::f64::consts::PI.sqrt());
    outcome(
        worst_rec <= tol && worst_beta <= tol && half <= 1e-13,
        format!("recurrence {worst_rec:.2e}, beta-gamma {worst_beta:.2e}, gamma(1/2) {half:.2e}"),
    )
}

fn fractional_integrals() -> Outcome {
    let cfg = QuadratureConfig::default();
    let a = 0.0;
    let mut worst_power: f64 = 0.0;
    for beta_exp in [0.0, 0.5, 1.0, 2.0] {
        let f = Function1D::new(
            "power",
            a,
            4.0,
            move |t| if beta_exp == 0.0 { 1.0 } else { (t - a).powf(beta_exp) },
            move |t| if beta_exp == 0.0 { 0.0 } else { beta_exp * (t - a).powf(beta_exp - 1.0) },
        )
        .unwrap();
        for alpha in [0.5, 1.0, 1.5] {
            for x in [0.1, 0.5, 1.0, 2.0, 3.5] {
                let got = rl_left(&f, a, x, alpha, &cfg).unwrap().value;
                let want = gamma(beta_exp + 1.0).unwrap() / gamma(alpha + beta_exp + 1.0).unwrap() * (x - a).powf(alpha + beta_exp);
                worst_power = worst_power.max(rel(got, want));
            }
        }
    }

    let catalog = builtin_catalog();
    let mut rng = ChaCha8Rng::seed_from_u64(0x00AC_CE97);
    let mut worst_oracle: f64 = 0.0;
    for case in 0..50 {
        let f = &catalog[rng.random_range(0..catalog.len())].function;
        let alpha = rng.random_range(0.2..2.0);
        let x = rng.random_range(0.05..0.95);
        let (kernel, got) = match case % 4 {
            0 => (WeakKernel::new(0.0, x, alpha, Anchor::Upper), rl_left(f, 0.0, x, alpha, &cfg).unwrap().value),
            1 => (WeakKernel::new(x, 1.0, alpha, Anchor::Lower), rl_right(f, x, 1.0, alpha, &cfg).unwrap().value),
            k => {
                let (l, r) = lemma_pair(f, &FracParams::new(0.0, 1.0, x, alpha, 1.0), &cfg).unwrap();
                if k == 2 {
                    (WeakKernel::new(0.0, x, alpha, Anchor::Lower), l.value)
                } else {
                    (WeakKernel::new(x, 1.0, alpha, Anchor::Upper), r.value)
                }
            }
        };
        let want = oracle(f, &kernel.unwrap(), ORACLE_PANELS).unwrap();
        let err = if want.abs() < 1e-12 { (got - want).abs() } else { rel(got, want) };
        worst_oracle = worst_oracle.max(err);
    }
    outcome(
        worst_power <= 1e-9 && worst_oracle <= 1e-8,
        format!("power rule {worst_power:.2e} over 60 cases, oracle {worst_oracle:.2e} over 50 draws"),
    )
}

fn identity_grid() -> Outcome {
    let cfg = QuadratureConfig::default();
    let mut worst: f64 = 0.0;
    let mut worst_classical: f64 = 0.0;
    let mut checks = 0;
    for entry in builtin_catalog() {
        let f = &entry.function;
        for alpha in [0.25, 0.5, 0.75, 1.0, 1.5, 2.0] {
            for i in 1..=9 {
                let x = i as f64 / 10.0;
                let r = match check_e1(f, &FracParams::new(0.0, 1.0, x, alpha, 1.0), &cfg) {
                    Ok(r) => r,
                    Err(e) => return outcome(false, format!("{} alpha={alpha} x={x}: {e}", entry.name())),
                };
                worst = worst.max(r.rel_residual);
                checks += 1;
                if alpha == 1.0 {
                    let c = check_classical_lemma(f, 0.0, 1.0, x, &cfg).unwrap();
                    worst_classical = worst_classical.max(c.deviation).max(c.residual.rel_residual);
                }
            }
        }
    }
    outcome(
        worst <= 1e-8 && worst_classical <= CLASSICAL_AGREEMENT_TOL,
        format!("{checks} checks, worst residual {worst:.2e}, classical agreement {worst_classical:.2e}"),
    )
}

fn soundness() -> Outcome {
    let cfg = SweepConfig {
        theorems: ["E6", "E7", "E8proof", "E9"].iter().map(|s| s.to_string()).collect(),
        ..SweepConfig::default()
    };
    let res = run_sweep(&cfg, &RunOptions::default()).unwrap();
    let asserted = res.reports.iter().filter(|r| r.asserted()).count();
    let violated = res.reports.iter().filter(|r| r.violated()).count();
    let e9_family = res
        .reports
        .iter()
        .filter(|r| r.theorem_id == TheoremId::E9 && r.asserted() && r.function == "three_halves")
        .count();
    let worst = res.summary.worst_margin.unwrap_or(f64::NAN);
    outcome(
        violated == 0 && res.errors.is_empty() && e9_family > 0 && res.summary.identity_failed == 0,
        format!(
            "{} reports, {asserted} asserted, {violated} violated, {} errors, {e9_family} asserted E9 on three_halves, worst margin {worst:.3e}",
            res.reports.len(),
            res.errors.len()
        ),
    )
}

fn reductions() -> Outcome {
    let grid = ReductionGrid::default();
    let f = find("three_halves").unwrap().function;
    let mut parts = Vec::new();
    let mut ok = true;
    for t in TheoremId::FRACTIONAL {
        let dev = bounds::reduction_check(t, &grid, &f).unwrap();
        ok &= dev <= REDUCTION_TOL;
        parts.push(format!("{t} {dev:.1e}"));
    }
    outcome(ok, parts.join(", "))
}

fn sharpness() -> Outcome {
    let cfg = SweepConfig {
        functions: vec!["affine".into()],
        theorems: vec!["e1".into()],
        x_points: XPoints::List(vec![0.0, 1.0]),
        ..SweepConfig::default()
    };
    let res = run_sweep(&cfg, &RunOptions::default()).unwrap();
    let margins: Vec<f64> = res.reports.iter().map(|r| r.margin).collect();
    let ok = margins.len() == 2 && res.reports.iter().all(|r| r.asserted() && r.margin.abs() <= 1e-12);
    outcome(ok, format!("margins {margins:?}"))
}

fn hermite_hadamard() -> Outcome {
    let cfg = QuadratureConfig::default();
    let tol = Tolerances::default();
    let mut worst = f64::INFINITY;
    let mut count = 0;
    for entry in builtin_catalog() {
        let f = &entry.function;
        let s_values = entry.s_for(Mode::SConvex, Target::Value, 1.0);
        let hyp = Hypotheses::establish(f, 0.0, 1.0, &s_values, &[], &CertifyConfig::default()).unwrap();
        for s in s_values {
            for t in [TheoremId::E13Lower, TheoremId::E13Upper] {
                let r = bounds::evaluate(t, f, &FracParams::new(0.0, 1.0, 0.5, 1.0, s), &hyp, &cfg, &tol).unwrap();
                if !r.asserted() {
                    return outcome(false, format!("{} s={s}: hypothesis not certified", entry.name()));
                }
                worst = worst.min(r.margin);
                count += 1;
            }
        }
    }
    outcome(worst >= -1e-10, format!("{count} reports, worst margin {worst:.3e}"))
}

fn determinism() -> Outcome {
    let cfg = SweepConfig {
        seed: 2024,
        random_x: 4,
        ..SweepConfig::default()
    };
    let first = run_sweep(&cfg, &RunOptions::default()).unwrap();
    let second = run_sweep(&cfg, &RunOptions::default()).unwrap();
    let serial = run_sweep(&cfg, &RunOptions { parallel: false, ..RunOptions::default() }).unwrap();
    let (c1, c2, c3) = (csv_string(&first), csv_string(&second), csv_string(&serial));
    outcome(
        c1 == c2 && first == serial && c1 == c3,
        format!("{} rows, repeat identical: {}, serial identical: {}", first.reports.len(), c1 == c2, first == serial),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("special functions", Duration::from_secs(1), special_functions),
        ("fractional integral oracles", Duration::from_secs(30), fractional_integrals),
        ("identity", Duration::from_secs(60), identity_grid),
        ("inequality soundness", Duration::from_secs(120), soundness),
        ("alpha = 1 reductions", Duration::from_secs(1), reductions),
        ("Ostrowski sharpness", Duration::from_secs(60), sharpness),
        ("Hermite-Hadamard", Duration::from_secs(60), hermite_hadamard),
        ("harness determinism", Duration::from_secs(300), determinism),
    ];
    let mut failures = 0;
    for (i, (name, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let out = run();
        let elapsed = start.elapsed();
        let in_time = elapsed <= *budget;
        let ok = out.ok && in_time;
        if !ok {
            failures += 1;
        }
        println!(
            "criterion {}: {} [{name}] {} ({:.2?}{})",
            i + 1,
            if ok { "PASS" } else { "FAIL" },
            out.detail,
            elapsed,
            if in_time { String::new() } else { format!(", over budget {budget:?}") }
        );
    }
    if failures == 0 {
        println!("acceptance: all 8 criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failures} of 8 criteria failed");
        ExitCode::FAILURE
    }
}
