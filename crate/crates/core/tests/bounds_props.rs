use fracineq_core::bounds::{
    evaluate, lhs_frac, reduction_check, rhs_e1, rhs_thm1, rhs_thm2, rhs_thm3, rhs_thm4, Hypotheses, ReductionGrid,
    REDUCTION_TOL,
};
use fracineq_core::funcatalog::{builtin_catalog, certify_on, find, CertifyConfig, Function1D, Mode, Target, Q_GRID, S_GRID};
use fracineq_core::{FracParams, QuadratureConfig, TheoremId, Tolerances};
use proptest::prelude::*;

const PQ: [(f64, f64); 3] = [(2.0, 2.0), (3.0, 1.5), (1.25, 5.0)];

#[test]
fn closed_form_values() {
    let base = FracParams::new(0.0, 1.0, 0.5, 1.0, 1.0).with_m(2.0);
    assert!((rhs_thm1(&base).unwrap() - 0.5).abs() < 1e-15);
    assert!((rhs_thm2(&base.with_pq(2.0, 2.0)).unwrap() - 0.5773502691896258).abs() < 1e-15);
    assert!((rhs_thm3(&base.with_q(2.0)).unwrap() - 0.5).abs() < 1e-15);
    let corner = FracParams::new(0.0, 1.0, 0.0, 0.5, 0.5).with_m(1.0);
    assert!((rhs_thm1(&corner).unwrap() - (1.0 + std::f64::consts::FRAC_PI_4) / 2.0).abs() < 1e-13);

    let f = find("three_halves").unwrap().function;
    let prm = FracParams::new(0.0, 1.0, 0.5, 1.0, 1.0).with_pq(2.0, 2.0);
    let cert = certify_on(&f, 0.0, 1.0, 1.0, 2.0, Mode::SConcave, Target::AbsDerivPow, &CertifyConfig::default()).unwrap();
    let rhs = rhs_thm4(&f, &prm, Some(&cert)).unwrap();
    assert!((rhs - 0.19716).abs() < 1e-4);
    let lhs = lhs_frac(&f, &prm, &QuadratureConfig::default()).unwrap();
    assert!(rhs - lhs.value >= 0.0);
}

#[test]
fn square_midpoint_lhs_is_one_twelfth() {
    let sq = find("square").unwrap().function;
    let v = lhs_frac(&sq, &FracParams::new(0.0, 1.0, 0.5, 1.0, 1.0), &QuadratureConfig::default()).unwrap();
    assert!((v.value - 1.0 / 12.0).abs() < 1e-14);
}

#[test]
fn reductions_at_alpha_one() {
    let grid = ReductionGrid::default();
    for entry in builtin_catalog() {
        for t in TheoremId::FRACTIONAL {
            let dev = reduction_check(t, &grid, &entry.function).unwrap();
            assert!(dev <= REDUCTION_TOL, "{t} {}: {dev:e}", entry.name());
        }
    }
}

#[test]
fn ostrowski_equality_at_endpoints() {
    let cfg = QuadratureConfig::default();
    let tol = Tolerances::default();
    for (c0, c1, a, b) in [(0.0, 1.0, 0.0, 1.0), (0.5, 2.0, 0.0, 1.0), (-1.0, -3.0, 1.0, 4.0)] {
        let f = Function1D::affine(c0, c1, a, b).unwrap();
        let hyp = Hypotheses::establish(&f, a, b, &[1.0], &[], &CertifyConfig::default()).unwrap();
        for x in [a, b] {
            let r = evaluate(TheoremId::E1, &f, &FracParams::new(a, b, x, 1.0, 1.0), &hyp, &cfg, &tol).unwrap();
            assert!(r.asserted() && r.margin.abs() <= 1e-12, "{r:?}");
        }
    }
    let r = rhs_e1(&FracParams::new(0.0, 1.0, 0.0, 1.0, 1.0).with_m(1.0)).unwrap();
    assert_eq!(r, 0.5);
}

#[test]
fn hermite_hadamard_for_registered_s() {
    let cfg = QuadratureConfig::default();
    let tol = Tolerances::default();
    for entry in builtin_catalog() {
        let f = &entry.function;
        let s_values = entry.s_for(Mode::SConvex, Target::Value, 1.0);
        let hyp = Hypotheses::establish(f, 0.0, 1.0, &s_values, &[], &CertifyConfig::default()).unwrap();
        for s in s_values {
            for t in [TheoremId::E13Lower, TheoremId::E13Upper] {
                let r = evaluate(t, f, &FracParams::new(0.0, 1.0, 0.5, 1.0, s), &hyp, &cfg, &tol).unwrap();
                assert!(r.asserted() && r.margin >= -1e-10, "{} {t} s={s}: {r:?}", entry.name());
            }
        }
    }
}

/// A reduced version of the acceptance sweep: every certified hypothesis
/// on a coarser grid.
#[test]
fn soundness_on_catalog() {
    let cfg = QuadratureConfig::default();
    let tol = Tolerances::default();
    let mut asserted = 0;
    let mut e9_asserted = 0;
    for entry in builtin_catalog() {
        let f = &entry.function;
        let hyp = Hypotheses::establish(f, 0.0, 1.0, &S_GRID, &Q_GRID, &CertifyConfig::default()).unwrap();
        for alpha in [0.25, 1.0, 2.0] {
            for s in S_GRID {
                for (p, q) in PQ {
                    for x in [0.0, 0.3, 0.5, 1.0] {
                        let prm = FracParams::new(0.0, 1.0, x, alpha, s).with_pq(p, q);
                        for t in TheoremId::FRACTIONAL {
                            let r = evaluate(t, f, &prm, &hyp, &cfg, &tol).unwrap();
                            assert!(r.lhs >= 0.0);
                            if r.asserted() {
                                asserted += 1;
                                if t == TheoremId::E9 {
                                    e9_asserted += 1;
                                }
                                assert!(r.holds, "{} {t}: {r:?}", entry.name());
                            }
                        }
                    }
                }
            }
        }
    }
    assert!(asserted > 1000 && e9_asserted > 0, "{asserted} / {e9_asserted}");
}

#[test]
fn power_mean_at_q_one_is_thm1() {
    for alpha in [0.1, 0.5, 1.0, 2.5] {
        for s in S_GRID {
            let p = FracParams::new(0.0, 2.0, 0.7, alpha, s).with_m(3.0);
            assert_eq!(rhs_thm3(&p.with_q(1.0)).unwrap(), rhs_thm1(&p).unwrap());
        }
    }
}

proptest! {
    #[test]
    fn rhs_linear_in_m(
        alpha in 0.05f64..4.0,
        s in 0.01f64..=1.0,
        x in 0.0f64..=1.0,
        m in 0.01f64..100.0,
        pq in prop::sample::select(PQ.to_vec()),
    ) {
        let p = FracParams::new(0.0, 1.0, x, alpha, s).with_pq(pq.0, pq.1);
        for rhs in [rhs_thm1, rhs_thm2, rhs_thm3] {
            let one = rhs(&p.with_m(m)).unwrap();
            let two = rhs(&p.with_m(2.0 * m)).unwrap();
            prop_assert!((two - 2.0 * one).abs() <= 1e-14 * two.abs());
        }
    }

    #[test]
    fn endpoint_terms_vanish(alpha in 0.05f64..4.0, s in 0.01f64..=1.0, m in 0.1f64..10.0, a in 0.0f64..2.0, w in 0.1f64..3.0) {
        let b = a + w;
        let at_a = FracParams::new(a, b, a, alpha, s).with_m(m).with_pq(2.0, 2.0);
        let at_b = at_a.with_x(b);
        // Only one endpoint power survives, and it is the same (b−a)^(α+1) at either end.
        for rhs in [rhs_thm1, rhs_thm2, rhs_thm3] {
            let (ra, rb) = (rhs(&at_a).unwrap(), rhs(&at_b).unwrap());
            prop_assert!((ra - rb).abs() <= 1e-13 * ra.abs().max(1.0));
            let mid = rhs(&at_a.with_x(a + 0.5 * w)).unwrap();
            let expected = 2.0 * 0.5f64.powf(alpha + 1.0) * ra;
            prop_assert!((mid - expected).abs() <= 1e-12 * ra.abs().max(1.0));
        }
    }

    #[test]
    fn lhs_is_nonnegative(idx in 0usize..9, alpha in 0.1f64..3.0, x in 0.0f64..=1.0) {
        let f = &builtin_catalog()[idx].function;
        let v = lhs_frac(f, &FracParams::new(0.0, 1.0, x, alpha, 1.0), &QuadratureConfig::default()).unwrap();
        prop_assert!(v.value >= 0.0);
    }
}
