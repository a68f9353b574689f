#![allow(clippy::excessive_precision)]

use fracineq_core::specfun::{beta, gamma, ln_gamma, SpecFunAccuracy};
use fracineq_core::quad::adaptive;
use proptest::prelude::*;

const REL: f64 = 1e-13;

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

// Reference values computed with 40-digit arithmetic.
const GAMMA_TABLE: [(f64, f64, f64); 9] = [
    (0.1, 9.5135076986687318363, 2.2527126517342059599),
    (0.3, 2.9915689876875906283, 1.0957979948180755217),
    (0.75, 1.2254167024651776451, 0.20328095143129537148),
    (1.5, 0.88622692545275801365, -0.12078223763524522235),
    (2.5, 1.3293403881791370205, 0.28468287047291915963),
    (7.25, 1155.3810139199896872, 7.0521854507385394449),
    (20.5, 540624298233507504.47, 40.83150097453079811),
    (50.0, 6.0828186403426756087e62, 144.56574394634488601),
    (120.5, 6.1002949740240058744e197, 455.41760044623451043),
];

const BETA_TABLE: [(f64, f64, f64); 4] = [
    (0.3, 0.7, 3.8832220774509331547),
    (2.5, 4.25, 0.024312221966154755888),
    (10.0, 0.5, 0.56754638550304184979),
    (0.1, 9.5, 7.6322746312170615433),
];

#[test]
fn gamma_matches_reference() {
    for (z, g, lg) in GAMMA_TABLE {
        assert!(rel(gamma(z).unwrap(), g) <= 4.0 * REL, "gamma({z})");
        let err = (ln_gamma(z).unwrap() - lg).abs();
        assert!(err <= REL * lg.abs().max(1.0), "ln_gamma({z}): {err:e}");
    }
}

#[test]
fn beta_matches_reference() {
    for (x, y, v) in BETA_TABLE {
        assert!(rel(beta(x, y).unwrap(), v) <= 4.0 * REL, "beta({x}, {y})");
    }
}

#[test]
fn half_integer_and_integer_values() {
    let sqrt_pi = core::f64::consts::PI.sqrt();
    assert!(rel(gamma(0.5).unwrap(), sqrt_pi) <= REL);
    let mut fact = 1.0;
    for n in 1..=20u32 {
        assert!(rel(gamma(n as f64).unwrap(), fact) <= REL, "{n}");
        fact *= n as f64;
    }
}

#[test]
fn recurrence_on_log_grid() {
    let n = 400;
    let (lo, hi) = (0.1f64.ln(), 50f64.ln());
    for i in 0..n {
        let z = (lo + (hi - lo) * (i as f64 + 1.0) / n as f64).exp();
        let lhs = gamma(z + 1.0).unwrap();
        assert!((lhs - z * gamma(z).unwrap()).abs() <= 8.0 * REL * lhs, "z = {z}");
    }
}

#[test]
fn beta_as_integral() {
    let grid = [0.25, 0.5, 1.0, 1.5];
    for &alpha in &grid {
        for &s in &grid {
            let est = adaptive(|t: f64| t.powf(alpha) * (1.0 - t).powf(s), 0.0, 1.0, 1e-12, 1e-15, 4000).unwrap();
            let b = beta(alpha + 1.0, s + 1.0).unwrap();
            assert!(rel(est.value, b) <= 1e-10, "alpha={alpha} s={s}: {} vs {b}", est.value);
        }
    }
}

#[test]
fn accuracy_contract_is_validated() {
    assert!(SpecFunAccuracy::new(1e-13).is_ok());
    assert!(SpecFunAccuracy::new(0.0).is_err());
    assert!(SpecFunAccuracy::new(1e-6).is_err());
    assert_eq!(SpecFunAccuracy::default().rel_tol, 1e-13);
}

proptest! {
    #[test]
    fn beta_gamma_identity(x in 0.1f64..10.0, y in 0.1f64..10.0) {
        let lhs = beta(x, y).unwrap() * gamma(x + y).unwrap();
        let rhs = gamma(x).unwrap() * gamma(y).unwrap();
        prop_assert!(rel(lhs, rhs) <= 8.0 * REL, "x={} y={} rel={:e}", x, y, rel(lhs, rhs));
    }

    #[test]
    fn beta_is_symmetric(x in 0.01f64..30.0, y in 0.01f64..30.0) {
        prop_assert_eq!(beta(x, y).unwrap(), beta(y, x).unwrap());
    }

    #[test]
    fn recurrence_random(z in 0.1f64..50.0) {
        let lhs = gamma(z + 1.0).unwrap();
        prop_assert!((lhs - z * gamma(z).unwrap()).abs() <= 8.0 * REL * lhs);
    }

    #[test]
    fn non_positive_arguments_rejected(z in -50.0f64..=0.0) {
        prop_assert!(gamma(z).is_err());
        prop_assert!(ln_gamma(z).is_err());
        prop_assert!(beta(z, 1.0).is_err());
    }
}
