//! Numerical checks of the fractional Ostrowski identity
//!
//! ```text
//! ((x−a)^α + (b−x)^α)/(b−a)·f(x) − Γ(α+1)/(b−a)·[J_{x−}^α f(a) + J_{x+}^α f(b)]
//!   = (x−a)^(α+1)/(b−a) ∫_0^1 t^α f′(tx+(1−t)a) dt
//!   − (b−x)^(α+1)/(b−a) ∫_0^1 t^α f′(tx+(1−t)b) dt
//! ```
//!
//! together with its two one-sided halves and the classical `α = 1` case.

use alloc::format;

use crate::error::{Error, Result};
use crate::fracint::{self, FracParams, QuadratureConfig};
use crate::funcatalog::Function1D;
use crate::math::powf;
use crate::quad::Estimate;
use crate::specfun;

/// Default pass threshold on the relative residual.
pub const IDENTITY_TOL: f64 = 1e-8;

/// Both sides of an identity at one parameter point.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct IdentityResidual {
    pub lhs: f64,
    pub rhs: f64,
    /// `lhs − rhs`.
    pub residual: f64,
    /// `max(1, |lhs|, |rhs|)`.
    pub scale: f64,
    /// `|residual| / scale`.
    pub rel_residual: f64,
    /// Propagated quadrature error of both sides, divided by `scale` so it
    /// is comparable with `rel_residual`.
    pub quad_error_budget: f64,
}

impl IdentityResidual {
    pub fn new(lhs: f64, rhs: f64, abs_err: f64) -> Self {
        let residual = lhs - rhs;
        let scale = 1.0_f64.max(lhs.abs()).max(rhs.abs());
        Self {
            lhs,
            rhs,
            residual,
            scale,
            rel_residual: residual.abs() / scale,
            quad_error_budget: abs_err / scale,
        }
    }

    /// `rel_residual ≤ max(tol, 10·quad_error_budget)`.
    pub fn passes(&self, tol: f64) -> bool {
        self.rel_residual <= tol.max(10.0 * self.quad_error_budget)
    }
}

/// The pieces shared by the full identity and its two halves.
#[derive(Debug, Clone, Copy)]
struct Parts {
    /// `(x−a)^α f(x)/(b−a) − Γ(α+1)/(b−a)·J_{x−}^α f(a)`
    frac_left: Estimate,
    /// `−(b−x)^α f(x)/(b−a) + Γ(α+1)/(b−a)·J_{x+}^α f(b)`
    frac_right: Estimate,
    /// `(x−a)^(α+1)/(b−a) ∫_0^1 t^α f′(tx+(1−t)a) dt`
    int_left: Estimate,
    /// `(b−x)^(α+1)/(b−a) ∫_0^1 t^α f′(tx+(1−t)b) dt`
    int_right: Estimate,
}

fn validate(f: &Function1D, prm: &FracParams) -> Result<()> {
    let FracParams { a, b, x, alpha, .. } = *prm;
    if !(a < b) || !(x >= a && x <= b) {
        return Err(Error::InvalidParams(format!("need a <= x <= b with a < b, got a={a} x={x} b={b}")));
    }
    if !(alpha > 0.0) || !alpha.is_finite() {
        return Err(Error::InvalidParams(format!("alpha must be positive, got {alpha}")));
    }
    f.check_interval(a, b)
}

/// `∫_0^1 t^α f′(t·x + (1−t)·end) dt`.
fn weighted_deriv_integral(f: &Function1D, x: f64, end: f64, alpha: f64, cfg: &QuadratureConfig) -> Result<Estimate> {
    if x == end {
        return Ok(Estimate::ZERO);
    }
    cfg.integrate(
        |t| {
            let p = if alpha == 1.0 { t } else { powf(t, alpha) };
            p * f.derivative(t * x + (1.0 - t) * end)
        },
        0.0,
        1.0,
    )
}

fn parts(f: &Function1D, prm: &FracParams, cfg: &QuadratureConfig) -> Result<Parts> {
    validate(f, prm)?;
    let FracParams { a, b, x, alpha, .. } = *prm;
    let width = b - a;
    let (jl, jr) = fracint::lemma_pair(f, prm, cfg)?;
    let g1 = specfun::gamma(alpha + 1.0)?;
    let fx = f.value(x);
    let (dl, dr) = (x - a, b - x);

    let frac_left = Estimate {
        value: powf(dl, alpha) * fx / width - g1 / width * jl.value,
        abs_err: g1 / width * jl.abs_err,
        evals: jl.evals,
    };
    let frac_right = Estimate {
        value: -powf(dr, alpha) * fx / width + g1 / width * jr.value,
        abs_err: g1 / width * jr.abs_err,
        evals: jr.evals,
    };
    let int_left = weighted_deriv_integral(f, x, a, alpha, cfg)?.scaled(powf(dl, alpha + 1.0) / width);
    let int_right = weighted_deriv_integral(f, x, b, alpha, cfg)?.scaled(powf(dr, alpha + 1.0) / width);
    Ok(Parts {
        frac_left,
        frac_right,
        int_left,
        int_right,
    })
}

/// Left side of the identity (the fractional expression) with its
/// quadrature error.
pub fn fractional_side(f: &Function1D, prm: &FracParams, cfg: &QuadratureConfig) -> Result<Estimate> {
    validate(f, prm)?;
    let FracParams { a, b, x, alpha, .. } = *prm;
    let width = b - a;
    let (jl, jr) = fracint::lemma_pair(f, prm, cfg)?;
    let g1 = specfun::gamma(alpha + 1.0)?;
    let weight = (powf(x - a, alpha) + powf(b - x, alpha)) / width;
    Ok(Estimate {
        value: weight * f.value(x) - g1 / width * (jl.value + jr.value),
        abs_err: g1 / width * (jl.abs_err + jr.abs_err),
        evals: jl.evals + jr.evals,
    })
}

/// Checks the full identity. `lhs` is the fractional expression, `rhs` the
/// difference of the two weighted derivative integrals.
pub fn check_e1(f: &Function1D, prm: &FracParams, cfg: &QuadratureConfig) -> Result<IdentityResidual> {
    let p = parts(f, prm, cfg)?;
    let lhs = p.frac_left.value - p.frac_right.value;
    let rhs = p.int_left.value - p.int_right.value;
    Ok(IdentityResidual::new(
        lhs,
        rhs,
        p.frac_left.abs_err + p.frac_right.abs_err + p.int_left.abs_err + p.int_right.abs_err,
    ))
}

/// Checks the two one-sided identities separately. Each residual is
/// oriented like the full identity (fractional side minus integral side),
/// so the full residual equals the left residual minus the right one.
pub fn check_e4_e5(
    f: &Function1D,
    prm: &FracParams,
    cfg: &QuadratureConfig,
) -> Result<(IdentityResidual, IdentityResidual)> {
    let p = parts(f, prm, cfg)?;
    let left = IdentityResidual::new(p.frac_left.value, p.int_left.value, p.frac_left.abs_err + p.int_left.abs_err);
    let right = IdentityResidual::new(
        p.frac_right.value,
        p.int_right.value,
        p.frac_right.abs_err + p.int_right.abs_err,
    );
    Ok((left, right))
}

/// Classical identity
/// `f(x) − (1/(b−a))∫_a^b f = (x−a)²/(b−a)∫_0^1 t f′(tx+(1−t)a) dt − (b−x)²/(b−a)∫_0^1 t f′(tx+(1−t)b) dt`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ClassicalCheck {
    pub residual: IdentityResidual,
    /// The fractional identity evaluated at `α = 1`.
    pub fractional: IdentityResidual,
    /// `max(|Δlhs|, |Δrhs|)` between the two.
    pub deviation: f64,
}

/// Agreement required between the classical identity and the fractional
/// one at `α = 1`.
pub const CLASSICAL_AGREEMENT_TOL: f64 = 1e-12;

impl ClassicalCheck {
    pub fn passes(&self, tol: f64) -> bool {
        self.residual.passes(tol) && self.deviation <= CLASSICAL_AGREEMENT_TOL
    }
}

pub fn check_classical_lemma(f: &Function1D, a: f64, b: f64, x: f64, cfg: &QuadratureConfig) -> Result<ClassicalCheck> {
    let prm = FracParams::new(a, b, x, 1.0, 1.0);
    validate(f, &prm)?;
    let width = b - a;
    let mean = cfg.integrate(|t| f.value(t), a, b)?;
    let lhs = f.value(x) - mean.value / width;
    let il = weighted_deriv_integral(f, x, a, 1.0, cfg)?;
    let ir = weighted_deriv_integral(f, x, b, 1.0, cfg)?;
    let (dl, dr) = (x - a, b - x);
    let rhs = dl * dl / width * il.value - dr * dr / width * ir.value;
    let err = mean.abs_err / width + dl * dl / width * il.abs_err + dr * dr / width * ir.abs_err;
    let residual = IdentityResidual::new(lhs, rhs, err);
    let fractional = check_e1(f, &prm, cfg)?;
    let deviation = (residual.lhs - fractional.lhs)
        .abs()
        .max((residual.rhs - fractional.rhs).abs());
    Ok(ClassicalCheck {
        residual,
        fractional,
        deviation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fracint::Rule;

    fn cfg() -> QuadratureConfig {
        QuadratureConfig::default()
    }

    #[test]
    fn constant_sides_vanish() {
        let f = Function1D::constant(2.5, 0.0, 3.0).unwrap();
        for &(a, b, x, alpha) in &[(0.0, 1.0, 0.3, 0.5), (0.5, 3.0, 2.0, 1.5), (0.0, 3.0, 0.0, 0.25)] {
            let r = check_e1(&f, &FracParams::new(a, b, x, alpha, 1.0), &cfg()).unwrap();
            assert!(r.lhs.abs() < 1e-13, "{r:?}");
            assert_eq!(r.rhs, 0.0);
            assert!(r.passes(IDENTITY_TOL));
        }
    }

    #[test]
    fn linear_midpoint_is_symmetric() {
        let f = Function1D::affine(0.0, 1.0, 0.0, 1.0).unwrap();
        let r = check_e1(&f, &FracParams::new(0.0, 1.0, 0.5, 1.0, 1.0), &cfg()).unwrap();
        assert!(r.lhs.abs() < 1e-15);
        assert!(r.rhs.abs() < 1e-15);
    }

    #[test]
    fn square_with_half_order_under_oracle() {
        let f = Function1D::power(1.0, 2.0, 0.0, 1.0).unwrap();
        let prm = FracParams::new(0.0, 1.0, 0.5, 0.5, 1.0);
        let r = check_e1(&f, &prm, &cfg().with_rule(Rule::OracleMidpoint)).unwrap();
        assert!(r.rel_residual <= 1e-8, "{r:?}");
        let r = check_e1(&f, &prm, &cfg()).unwrap();
        assert!(r.rel_residual <= 1e-12, "{r:?}");
    }

    #[test]
    fn one_sided_examples() {
        let prm = FracParams::new(0.0, 1.0, 0.5, 1.0, 1.0);
        let one = Function1D::constant(1.0, 0.0, 1.0).unwrap();
        let (l, _) = check_e4_e5(&one, &prm, &cfg()).unwrap();
        assert_eq!(l.rhs, 0.0);
        assert!(l.lhs.abs() < 1e-15);

        let ident = Function1D::affine(0.0, 1.0, 0.0, 1.0).unwrap();
        let (l, _) = check_e4_e5(&ident, &prm, &cfg()).unwrap();
        assert!((l.rhs - 0.125).abs() < 1e-15);
        assert!((l.lhs - 0.125).abs() < 1e-15);

        let e = Function1D::exponential(0.0, 1.0).unwrap();
        let prm = FracParams::new(0.0, 1.0, 0.3, 0.75, 1.0);
        let oracle = cfg().with_rule(Rule::OracleMidpoint);
        let (l, r) = check_e4_e5(&e, &prm, &oracle).unwrap();
        assert!(l.rel_residual <= 1e-8 && r.rel_residual <= 1e-8, "{l:?} {r:?}");
    }

    #[test]
    fn full_residual_is_difference_of_halves() {
        let f = Function1D::exponential(0.0, 1.0).unwrap();
        let prm = FracParams::new(0.0, 1.0, 0.3, 0.75, 1.0);
        let full = check_e1(&f, &prm, &cfg()).unwrap();
        let (l, r) = check_e4_e5(&f, &prm, &cfg()).unwrap();
        assert!((full.residual - (l.residual - r.residual)).abs() < 1e-14);
    }

    #[test]
    fn classical_examples() {
        let sq = Function1D::power(1.0, 2.0, 0.0, 1.0).unwrap();
        let c = check_classical_lemma(&sq, 0.0, 1.0, 0.5, &cfg()).unwrap();
        assert!((c.residual.lhs + 1.0 / 12.0).abs() < 1e-14);
        assert!((c.residual.rhs + 1.0 / 12.0).abs() < 1e-10);
        assert!(c.passes(IDENTITY_TOL));

        let k = Function1D::constant(4.0, 0.0, 1.0).unwrap();
        let c = check_classical_lemma(&k, 0.0, 1.0, 0.3, &cfg()).unwrap();
        assert!(c.residual.lhs.abs() < 1e-14 && c.residual.rhs == 0.0);

        let ident = Function1D::affine(0.0, 1.0, 0.0, 3.0).unwrap();
        let (a, b) = (0.5, 2.5);
        let c = check_classical_lemma(&ident, a, b, a, &cfg()).unwrap();
        assert!((c.residual.lhs + (b - a) / 2.0).abs() < 1e-14);
        assert!((c.residual.rhs + (b - a) / 2.0).abs() < 1e-14);
    }

    #[test]
    fn rejects_bad_points() {
        let f = Function1D::power(1.0, 2.0, 0.0, 1.0).unwrap();
        assert!(check_e1(&f, &FracParams::new(0.0, 1.0, 1.5, 0.5, 1.0), &cfg()).is_err());
        assert!(check_e1(&f, &FracParams::new(0.0, 2.0, 0.5, 0.5, 1.0), &cfg()).is_err());
        assert!(check_e1(&f, &FracParams::new(0.0, 1.0, 0.5, 0.0, 1.0), &cfg()).is_err());
    }

    #[test]
    fn residual_record_invariants() {
        let r = IdentityResidual::new(3.0, 2.0, 0.3);
        assert_eq!(r.scale, 3.0);
        assert_eq!(r.residual, 1.0);
        assert!((r.rel_residual - 1.0 / 3.0).abs() < 1e-16);
        assert!((r.quad_error_budget - 0.1).abs() < 1e-16);
        assert!(r.passes(1e-8));
        let r = IdentityResidual::new(1e-3, 0.0, 0.0);
        assert_eq!(r.scale, 1.0);
        assert!(!r.passes(1e-8));
    }
}
