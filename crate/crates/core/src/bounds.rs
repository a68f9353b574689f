//! Left- and right-hand sides of the fractional Ostrowski inequalities and
//! of the classical results they generalize, with signed margins.
//!
//! Every inequality reads `lhs ≤ rhs`; the margin is `rhs − lhs`. A report
//! only counts toward pass/fail when the hypothesis of its theorem has been
//! certified for the function at hand. Otherwise it is informational.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};
use crate::fracint::{FracParams, QuadratureConfig, CONJUGATE_TOL};
use crate::funcatalog::{self, CertifyConfig, ConvexityCertificate, DerivBound, Function1D, Mode, Target};
use crate::identity;
use crate::math::powf;
use crate::quad::Estimate;
use crate::specfun;

/// Stable identifiers of every inequality the crate evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TheoremId {
    /// Fractional bound under s-convex `|f′|`.
    E6,
    /// Fractional Hölder bound under s-convex `|f′|^q`.
    E7,
    /// Fractional power-mean bound under s-convex `|f′|^q`, as derived in
    /// its proof.
    E8Proof,
    /// The printed power-mean statement, which duplicates `E7`. Diagnostic
    /// only, never asserted.
    E8Printed,
    /// Fractional bound under s-concave `|f′|^q`.
    E9,
    /// Classical Ostrowski inequality.
    E1,
    /// Lower Hermite–Hadamard inequality for s-convex `f`.
    E13Lower,
    /// Upper Hermite–Hadamard inequality for s-convex `f`.
    E13Upper,
    /// Ostrowski bound for s-convex `|f′|`.
    E14,
    /// Ostrowski power-mean bound for s-convex `|f′|^q`.
    T5_146,
    /// Ostrowski bound for s-concave `|f′|^q`.
    T6_147,
}

impl TheoremId {
    pub const ALL: [TheoremId; 11] = [
        TheoremId::E6,
        TheoremId::E7,
        TheoremId::E8Proof,
        TheoremId::E8Printed,
        TheoremId::E9,
        TheoremId::E1,
        TheoremId::E13Lower,
        TheoremId::E13Upper,
        TheoremId::E14,
        TheoremId::T5_146,
        TheoremId::T6_147,
    ];

    pub const FRACTIONAL: [TheoremId; 4] = [TheoremId::E6, TheoremId::E7, TheoremId::E8Proof, TheoremId::E9];

    pub const CLASSICAL: [TheoremId; 6] = [
        TheoremId::E1,
        TheoremId::E13Lower,
        TheoremId::E13Upper,
        TheoremId::E14,
        TheoremId::T5_146,
        TheoremId::T6_147,
    ];

    pub fn label(self) -> &'static str {
        match self {
            TheoremId::E6 => "E6",
            TheoremId::E7 => "E7",
            TheoremId::E8Proof => "E8proof",
            TheoremId::E8Printed => "E8printed",
            TheoremId::E9 => "E9",
            TheoremId::E1 => "e1",
            TheoremId::E13Lower => "e13_lower",
            TheoremId::E13Upper => "e13_upper",
            TheoremId::E14 => "e14",
            TheoremId::T5_146 => "t5_146",
            TheoremId::T6_147 => "t6_147",
        }
    }

    /// Parses a CLI token; `e13` names both Hermite–Hadamard inequalities.
    pub fn parse_group(token: &str) -> Result<Vec<TheoremId>> {
        if token == "e13" {
            return Ok(alloc::vec![TheoremId::E13Lower, TheoremId::E13Upper]);
        }
        token.parse().map(|t| alloc::vec![t])
    }

    pub fn is_fractional(self) -> bool {
        matches!(
            self,
            TheoremId::E6 | TheoremId::E7 | TheoremId::E8Proof | TheoremId::E8Printed | TheoremId::E9
        )
    }

    /// Whether the inequality involves the order α at all.
    pub fn uses_alpha(self) -> bool {
        self.is_fractional()
    }

    /// Whether the inequality involves the conjugate exponents.
    pub fn uses_pq(self) -> bool {
        matches!(
            self,
            TheoremId::E7 | TheoremId::E8Proof | TheoremId::E8Printed | TheoremId::E9 | TheoremId::T5_146 | TheoremId::T6_147
        )
    }

    pub fn uses_s(self) -> bool {
        !matches!(self, TheoremId::E1)
    }

    pub fn uses_x(self) -> bool {
        !matches!(self, TheoremId::E13Lower | TheoremId::E13Upper)
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TheoremId::ALL
            .iter()
            .copied()
            .find(|t| t.label() == s)
            .ok_or_else(|| Error::InvalidParams(format!("unknown theorem identifier `{s}`")))
    }
}

#[cfg(feature = "serde")]
impl serde::Serialize for TheoremId {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> core::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.label())
    }
}

#[cfg(feature = "serde")]
impl<'de> serde::Deserialize<'de> for TheoremId {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> core::result::Result<Self, D::Error> {
        let s = <alloc::borrow::Cow<'de, str>>::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Pass thresholds shared by the identity and inequality checks.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Tolerances {
    pub identity_tol: f64,
    pub margin_tol: f64,
    pub cert_tol: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            identity_tol: identity::IDENTITY_TOL,
            margin_tol: 1e-9,
            cert_tol: 1e-9,
        }
    }
}

/// Whether a report counts toward pass/fail.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(tag = "kind", content = "reason", rename_all = "kebab-case"))]
pub enum Verdict {
    Asserted,
    /// Hypothesis not established; the numbers are informational.
    Skipped(String),
}

/// One inequality at one parameter point.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct InequalityReport {
    pub theorem_id: TheoremId,
    pub function: String,
    pub prm: FracParams,
    pub lhs: f64,
    pub rhs: f64,
    /// `rhs − lhs`.
    pub margin: f64,
    /// `margin ≥ −max(margin_tol, 10·quad_error_budget)`.
    pub holds: bool,
    pub quad_error_budget: f64,
    pub verdict: Verdict,
}

impl InequalityReport {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        theorem_id: TheoremId,
        function: &str,
        prm: FracParams,
        lhs: f64,
        rhs: f64,
        quad_error_budget: f64,
        margin_tol: f64,
        verdict: Verdict,
    ) -> Self {
        let margin = rhs - lhs;
        let holds = margin >= -margin_tol.max(10.0 * quad_error_budget);
        Self {
            theorem_id,
            function: function.to_string(),
            prm,
            lhs,
            rhs,
            margin,
            holds,
            quad_error_budget,
            verdict,
        }
    }

    pub fn asserted(&self) -> bool {
        self.verdict == Verdict::Asserted
    }

    /// An asserted report whose inequality failed.
    pub fn violated(&self) -> bool {
        self.asserted() && !self.holds
    }
}

// ---------------------------------------------------------------------------
// Shared pieces

fn require(name: &'static str, v: Option<f64>) -> Result<f64> {
    v.ok_or(Error::MissingParam(name))
}

fn conjugate_pair(prm: &FracParams) -> Result<(f64, f64)> {
    let p = require("p", prm.p)?;
    let q = require("q", prm.q)?;
    if !(p > 1.0 && q > 1.0) || (1.0 / p + 1.0 / q - 1.0).abs() > CONJUGATE_TOL {
        return Err(Error::InvalidParams(format!(
            "need conjugate exponents p, q > 1, got p={p} q={q}"
        )));
    }
    Ok((p, q))
}

fn require_q(prm: &FracParams) -> Result<f64> {
    let q = require("q", prm.q)?;
    if !(q >= 1.0) {
        return Err(Error::InvalidParams(format!("q must be >= 1, got {q}")));
    }
    Ok(q)
}

fn check_core(prm: &FracParams) -> Result<()> {
    let FracParams { a, b, x, alpha, s, .. } = *prm;
    if !(a < b) || !(x >= a && x <= b) {
        return Err(Error::InvalidParams(format!("need a <= x <= b with a < b, got a={a} x={x} b={b}")));
    }
    if !(alpha > 0.0) {
        return Err(Error::InvalidParams(format!("alpha must be positive, got {alpha}")));
    }
    if !(s > 0.0 && s <= 1.0) {
        return Err(Error::InvalidParams(format!("s must lie in (0, 1], got {s}")));
    }
    Ok(())
}

/// `(x−a)^(α+1) + (b−x)^(α+1)`.
fn endpoint_powers(prm: &FracParams) -> f64 {
    let e = prm.alpha + 1.0;
    powf(prm.x - prm.a, e) + powf(prm.b - prm.x, e)
}

/// `M (1/(1+α))^(1−1/q) (1/(α+s+1))^(1/q) (1 + Γ(α+1)Γ(s+1)/Γ(α+s+1))^(1/q) · S/(b−a)`
/// with `S` the endpoint powers. At `q = 1` this is the s-convex bound.
fn power_mean_bound(m: f64, prm: &FracParams, q: f64) -> Result<f64> {
    let FracParams { a, b, alpha, s, .. } = *prm;
    let ratio = specfun::gamma_ratio(alpha, s)?;
    let inv_q = 1.0 / q;
    Ok(m * powf(1.0 / (1.0 + alpha), 1.0 - inv_q)
        * powf(1.0 / (alpha + s + 1.0), inv_q)
        * powf(1.0 + ratio, inv_q)
        * (endpoint_powers(prm) / (b - a)))
}

/// `M / (1+pα)^(1/p) · (2/(s+1))^(1/q) · S/(b−a)`.
fn holder_bound(m: f64, prm: &FracParams, p: f64, q: f64) -> f64 {
    let FracParams { a, b, alpha, s, .. } = *prm;
    m / powf(1.0 + p * alpha, 1.0 / p) * powf(2.0 / (s + 1.0), 1.0 / q) * (endpoint_powers(prm) / (b - a))
}

/// `2^((s−1)/q) / ((1+pα)^(1/p)(b−a)) · [(x−a)^(α+1)|f′((x+a)/2)| + (b−x)^(α+1)|f′((b+x)/2)|]`.
fn concave_bound(f: &Function1D, prm: &FracParams, p: f64, q: f64) -> f64 {
    let FracParams { a, b, x, alpha, s, .. } = *prm;
    let e = alpha + 1.0;
    let bracket = powf(x - a, e) * f.derivative(0.5 * (x + a)).abs() + powf(b - x, e) * f.derivative(0.5 * (b + x)).abs();
    powf(2.0, (s - 1.0) / q) / (powf(1.0 + p * alpha, 1.0 / p) * (b - a)) * bracket
}

// ---------------------------------------------------------------------------
// Fractional inequalities

/// `|((x−a)^α + (b−x)^α)/(b−a)·f(x) − Γ(α+1)/(b−a)·[J_{x−}^α f(a) + J_{x+}^α f(b)]|`,
/// shared by every fractional theorem.
pub fn lhs_frac(f: &Function1D, prm: &FracParams, cfg: &QuadratureConfig) -> Result<Estimate> {
    let e = identity::fractional_side(f, prm, cfg)?;
    Ok(Estimate {
        value: e.value.abs(),
        ..e
    })
}

/// Bound under s-convex `|f′|`:
/// `M/(b−a)·(1 + Γ(α+1)Γ(s+1)/Γ(α+s+1))·S/(α+s+1)`.
pub fn rhs_thm1(prm: &FracParams) -> Result<f64> {
    check_core(prm)?;
    power_mean_bound(require("M", prm.m)?, prm, 1.0)
}

/// Hölder bound under s-convex `|f′|^q`, conjugate `p, q > 1`.
pub fn rhs_thm2(prm: &FracParams) -> Result<f64> {
    check_core(prm)?;
    let (p, q) = conjugate_pair(prm)?;
    Ok(holder_bound(require("M", prm.m)?, prm, p, q))
}

/// Power-mean bound under s-convex `|f′|^q`, `q ≥ 1`; `p` is not used.
pub fn rhs_thm3(prm: &FracParams) -> Result<f64> {
    check_core(prm)?;
    let q = require_q(prm)?;
    power_mean_bound(require("M", prm.m)?, prm, q)
}

/// The power-mean theorem's printed right-hand side, textually the Hölder
/// bound. Needs a `p`; kept for diagnostics only.
pub fn rhs_thm3_printed(prm: &FracParams) -> Result<f64> {
    check_core(prm)?;
    let q = require_q(prm)?;
    let p = require("p", prm.p)?;
    if !(p > 1.0) {
        return Err(Error::InvalidParams(format!("p must exceed 1, got {p}")));
    }
    Ok(holder_bound(require("M", prm.m)?, prm, p, q))
}

/// Bound under s-concave `|f′|^q`. Refuses to evaluate without a passing
/// s-concavity certificate for `|f′|^q` on `[a, b]` at this `s` and `q`.
pub fn rhs_thm4(f: &Function1D, prm: &FracParams, cert: Option<&ConvexityCertificate>) -> Result<f64> {
    check_core(prm)?;
    let (p, q) = conjugate_pair(prm)?;
    let ok = cert.is_some_and(|c| c.covers(Mode::SConcave, Target::AbsDerivPow, prm.s, q, prm.a, prm.b));
    if !ok {
        return Err(Error::Hypothesis(format!(
            "|f'|^{q} is not certified {}-concave on [{}, {}] for {}",
            prm.s,
            prm.a,
            prm.b,
            f.name()
        )));
    }
    Ok(concave_bound(f, prm, p, q))
}

// ---------------------------------------------------------------------------
// Classical inequalities

/// `M(b−a)[1/4 + (x − (a+b)/2)²/(b−a)²]`.
pub fn rhs_e1(prm: &FracParams) -> Result<f64> {
    check_core(prm)?;
    let m = require("M", prm.m)?;
    let w = prm.b - prm.a;
    let d = prm.x - 0.5 * (prm.a + prm.b);
    Ok(m * w * (0.25 + d * d / (w * w)))
}

/// `M/(b−a)·((x−a)² + (b−x)²)/(s+1)`.
pub fn rhs_e14(prm: &FracParams) -> Result<f64> {
    check_core(prm)?;
    let m = require("M", prm.m)?;
    let (l, r) = (prm.x - prm.a, prm.b - prm.x);
    Ok(m / (prm.b - prm.a) * ((l * l + r * r) / (prm.s + 1.0)))
}

/// Hölder form consistent with the fractional Hölder bound at α = 1:
/// `M/(1+p)^(1/p)·(2/(s+1))^(1/q)·((x−a)² + (b−x)²)/(b−a)`.
pub fn rhs_holder_classical(prm: &FracParams) -> Result<f64> {
    check_core(prm)?;
    let (p, q) = conjugate_pair(prm)?;
    let m = require("M", prm.m)?;
    let (l, r) = (prm.x - prm.a, prm.b - prm.x);
    Ok(m / powf(1.0 + p, 1.0 / p) * powf(2.0 / (prm.s + 1.0), 1.0 / q) * ((l * l + r * r) / (prm.b - prm.a)))
}

/// `M(2/(s+1))^(1/q)·((x−a)² + (b−x)²)/(2(b−a))`.
pub fn rhs_t5_146(prm: &FracParams) -> Result<f64> {
    check_core(prm)?;
    let q = require_q(prm)?;
    let m = require("M", prm.m)?;
    let (l, r) = (prm.x - prm.a, prm.b - prm.x);
    Ok(m * powf(2.0 / (prm.s + 1.0), 1.0 / q) * ((l * l + r * r) / (2.0 * (prm.b - prm.a))))
}

/// `2^((s−1)/q)/((1+p)^(1/p)(b−a))·[(x−a)²|f′((x+a)/2)| + (b−x)²|f′((b+x)/2)|]`.
pub fn rhs_t6_147(f: &Function1D, prm: &FracParams) -> Result<f64> {
    check_core(prm)?;
    let (p, q) = conjugate_pair(prm)?;
    let (l, r) = (prm.x - prm.a, prm.b - prm.x);
    let bracket = l * l * f.derivative(0.5 * (prm.x + prm.a)).abs() + r * r * f.derivative(0.5 * (prm.b + prm.x)).abs();
    Ok(powf(2.0, (prm.s - 1.0) / q) / (powf(1.0 + p, 1.0 / p) * (prm.b - prm.a)) * bracket)
}

// ---------------------------------------------------------------------------
// Hypotheses and evaluation

/// Certificates and the derivative bound established for one function on
/// one interval.
#[derive(Debug, Clone, Default)]
pub struct Hypotheses {
    pub certificates: Vec<ConvexityCertificate>,
    pub deriv_bound: Option<DerivBound>,
    /// `f ≥ 0` on a sampled grid of `[a, b]`.
    pub nonnegative: bool,
}

impl Hypotheses {
    /// Certifies every (mode, target, s, q) combination the theorems can
    /// ask for on `[a, b]`.
    pub fn establish(
        f: &Function1D,
        a: f64,
        b: f64,
        s_values: &[f64],
        q_values: &[f64],
        cfg: &CertifyConfig,
    ) -> Result<Self> {
        let mut certificates = Vec::new();
        for &s in s_values {
            certificates.push(funcatalog::certify_on(f, a, b, s, 1.0, Mode::SConvex, Target::Value, cfg)?);
            certificates.push(funcatalog::certify_on(f, a, b, s, 1.0, Mode::SConvex, Target::AbsDeriv, cfg)?);
            for &q in q_values {
                for mode in [Mode::SConvex, Mode::SConcave] {
                    certificates.push(funcatalog::certify_on(f, a, b, s, q, mode, Target::AbsDerivPow, cfg)?);
                }
            }
        }
        Ok(Self {
            certificates,
            deriv_bound: Some(funcatalog::derivative_bound_on(f, a, b)),
            nonnegative: funcatalog::sampled_min(f, a, b, funcatalog::DERIV_GRID) >= 0.0,
        })
    }

    pub fn certificate(&self, mode: Mode, target: Target, s: f64, q: f64, a: f64, b: f64) -> Option<&ConvexityCertificate> {
        self.certificates.iter().find(|c| c.covers(mode, target, s, q, a, b))
    }

    /// `|f′|^q` certificate; `q = 1` also accepts a plain `|f′|` one.
    fn deriv_power(&self, mode: Mode, s: f64, q: f64, a: f64, b: f64) -> Option<&ConvexityCertificate> {
        self.certificate(mode, Target::AbsDerivPow, s, q, a, b).or_else(|| {
            if q == 1.0 {
                self.certificate(mode, Target::AbsDeriv, s, q, a, b)
            } else {
                None
            }
        })
    }
}

/// Evaluates one inequality at one point. The derivative bound defaults to
/// the one in `hyp` when `prm.m` is absent. Missing exponents are a
/// configuration error; an uncertified hypothesis yields a skipped report.
pub fn evaluate(
    theorem: TheoremId,
    f: &Function1D,
    prm: &FracParams,
    hyp: &Hypotheses,
    cfg: &QuadratureConfig,
    tol: &Tolerances,
) -> Result<InequalityReport> {
    let mut prm = *prm;
    if prm.m.is_none() {
        prm.m = hyp.deriv_bound.map(|d| d.m);
    }
    check_core(&prm)?;
    f.check_interval(prm.a, prm.b)?;
    let FracParams { a, b, s, .. } = prm;
    let width = b - a;

    let mut missing: Vec<String> = Vec::new();
    let mut need = |ok: bool, what: &dyn Fn() -> String| {
        if !ok {
            missing.push(what());
        }
    };
    let m_ok = prm.m.is_some();
    let cert = |mode: Mode, target: Target, q: f64| match target {
        Target::AbsDerivPow => hyp.deriv_power(mode, s, q, a, b).is_some(),
        _ => hyp.certificate(mode, target, s, q, a, b).is_some(),
    };

    let (lhs, rhs, budget) = match theorem {
        TheoremId::E6 => {
            need(m_ok, &|| "|f'| <= M".into());
            need(cert(Mode::SConvex, Target::AbsDeriv, 1.0), &|| format!("|f'| {s}-convex"));
            let l = lhs_frac(f, &prm, cfg)?;
            (l.value, rhs_thm1(&prm)?, l.abs_err)
        }
        TheoremId::E7 => {
            let (_, q) = conjugate_pair(&prm)?;
            need(m_ok, &|| "|f'| <= M".into());
            need(cert(Mode::SConvex, Target::AbsDerivPow, q), &|| format!("|f'|^{q} {s}-convex"));
            let l = lhs_frac(f, &prm, cfg)?;
            (l.value, rhs_thm2(&prm)?, l.abs_err)
        }
        TheoremId::E8Proof => {
            let q = require_q(&prm)?;
            need(m_ok, &|| "|f'| <= M".into());
            need(cert(Mode::SConvex, Target::AbsDerivPow, q), &|| format!("|f'|^{q} {s}-convex"));
            let l = lhs_frac(f, &prm, cfg)?;
            (l.value, rhs_thm3(&prm)?, l.abs_err)
        }
        TheoremId::E8Printed => {
            need(false, &|| "printed statement is diagnostic only".into());
            let l = lhs_frac(f, &prm, cfg)?;
            (l.value, rhs_thm3_printed(&prm)?, l.abs_err)
        }
        TheoremId::E9 => {
            let (p, q) = conjugate_pair(&prm)?;
            need(cert(Mode::SConcave, Target::AbsDerivPow, q), &|| format!("|f'|^{q} {s}-concave"));
            let l = lhs_frac(f, &prm, cfg)?;
            (l.value, concave_bound(f, &prm, p, q), l.abs_err)
        }
        TheoremId::E1 => {
            need(m_ok, &|| "|f'| <= M".into());
            let (dev, err) = ostrowski_deviation(f, &prm, cfg)?;
            (dev, rhs_e1(&prm)?, err)
        }
        TheoremId::E13Lower | TheoremId::E13Upper => {
            need(hyp.nonnegative, &|| "f >= 0".into());
            need(cert(Mode::SConvex, Target::Value, 1.0), &|| format!("f {s}-convex"));
            let mean = cfg.integrate(|t| f.value(t), a, b)?.scaled(1.0 / width);
            if theorem == TheoremId::E13Lower {
                (powf(2.0, s - 1.0) * f.value(0.5 * (a + b)), mean.value, mean.abs_err)
            } else {
                (mean.value, (f.value(a) + f.value(b)) / (s + 1.0), mean.abs_err)
            }
        }
        TheoremId::E14 => {
            need(m_ok, &|| "|f'| <= M".into());
            need(cert(Mode::SConvex, Target::AbsDeriv, 1.0), &|| format!("|f'| {s}-convex"));
            let (dev, err) = ostrowski_deviation(f, &prm, cfg)?;
            (dev, rhs_e14(&prm)?, err)
        }
        TheoremId::T5_146 => {
            let q = require_q(&prm)?;
            need(m_ok, &|| "|f'| <= M".into());
            need(cert(Mode::SConvex, Target::AbsDerivPow, q), &|| format!("|f'|^{q} {s}-convex"));
            let (dev, err) = ostrowski_deviation(f, &prm, cfg)?;
            (dev, rhs_t5_146(&prm)?, err)
        }
        TheoremId::T6_147 => {
            let (_, q) = conjugate_pair(&prm)?;
            need(cert(Mode::SConcave, Target::AbsDerivPow, q), &|| format!("|f'|^{q} {s}-concave"));
            let (dev, err) = ostrowski_deviation(f, &prm, cfg)?;
            (dev, rhs_t6_147(f, &prm)?, err)
        }
    };

    let verdict = if missing.is_empty() {
        Verdict::Asserted
    } else {
        Verdict::Skipped(format!("not established: {}", missing.join(", ")))
    };
    Ok(InequalityReport::new(theorem, f.name(), prm, lhs, rhs, budget, tol.margin_tol, verdict))
}

/// `|f(x) − (1/(b−a))∫_a^b f|` and its quadrature error.
fn ostrowski_deviation(f: &Function1D, prm: &FracParams, cfg: &QuadratureConfig) -> Result<(f64, f64)> {
    let width = prm.b - prm.a;
    let mean = cfg.integrate(|t| f.value(t), prm.a, prm.b)?.scaled(1.0 / width);
    Ok(((f.value(prm.x) - mean.value).abs(), mean.abs_err))
}

/// Every classical inequality whose parameters are present in `prm`.
pub fn classical_suite(
    f: &Function1D,
    prm: &FracParams,
    hyp: &Hypotheses,
    cfg: &QuadratureConfig,
    tol: &Tolerances,
) -> Result<Vec<InequalityReport>> {
    let mut out = Vec::new();
    for theorem in TheoremId::CLASSICAL {
        let skip = match theorem {
            TheoremId::T5_146 => prm.q.is_none(),
            TheoremId::T6_147 => prm.p.is_none() || prm.q.is_none() || prm.q == Some(1.0),
            _ => false,
        };
        if !skip {
            out.push(evaluate(theorem, f, prm, hyp, cfg, tol)?);
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// α = 1 reductions

/// Parameter grid for comparing the fractional bounds at α = 1 with their
/// classical counterparts.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ReductionGrid {
    pub a: f64,
    pub b: f64,
    pub x_points: Vec<f64>,
    pub s_values: Vec<f64>,
    /// q values for the power-mean comparison.
    pub q_values: Vec<f64>,
    pub pq_pairs: Vec<(f64, f64)>,
    pub m: f64,
}

impl Default for ReductionGrid {
    fn default() -> Self {
        Self {
            a: 0.0,
            b: 1.0,
            x_points: (0..11).map(|i| i as f64 / 10.0).collect(),
            s_values: funcatalog::S_GRID.to_vec(),
            q_values: alloc::vec![1.0, 2.0, 3.0],
            pq_pairs: alloc::vec![(2.0, 2.0), (3.0, 1.5), (1.25, 5.0)],
            m: 2.0,
        }
    }
}

/// Largest absolute difference between a fractional bound at α = 1 and
/// its classical counterpart over the grid. Pure closed-form arithmetic;
/// `f` only matters for the s-concave bound.
pub fn reduction_check(theorem: TheoremId, grid: &ReductionGrid, f: &Function1D) -> Result<f64> {
    let mut worst: f64 = 0.0;
    let base = |x: f64, s: f64| FracParams::new(grid.a, grid.b, x, 1.0, s).with_m(grid.m);
    for &s in &grid.s_values {
        for &x in &grid.x_points {
            match theorem {
                TheoremId::E6 => {
                    let prm = base(x, s);
                    worst = worst.max((rhs_thm1(&prm)? - rhs_e14(&prm)?).abs());
                }
                TheoremId::E7 => {
                    for &(p, q) in &grid.pq_pairs {
                        let prm = base(x, s).with_pq(p, q);
                        worst = worst.max((rhs_thm2(&prm)? - rhs_holder_classical(&prm)?).abs());
                    }
                }
                TheoremId::E8Proof => {
                    for &q in &grid.q_values {
                        let prm = base(x, s).with_q(q);
                        worst = worst.max((rhs_thm3(&prm)? - rhs_t5_146(&prm)?).abs());
                    }
                }
                TheoremId::E9 => {
                    for &(p, q) in &grid.pq_pairs {
                        let prm = base(x, s).with_pq(p, q);
                        worst = worst.max((concave_bound(f, &prm, p, q) - rhs_t6_147(f, &prm)?).abs());
                    }
                }
                other => {
                    return Err(Error::InvalidParams(format!("{other} has no classical counterpart to reduce to")));
                }
            }
        }
    }
    Ok(worst)
}

/// Agreement required of every reduction.
pub const REDUCTION_TOL: f64 = 1e-12;
