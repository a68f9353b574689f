//! Riemann–Liouville fractional integrals.
//!
//! Every operator here has the form `(1/Γ(α)) ∫_lo^hi |t − c|^(α−1) f(t) dt`
//! where the anchor `c` is one endpoint of the interval. With
//! `h = hi − lo` the substitution `u = (|t − c|/h)^α` turns it into
//!
//! ```text
//! h^α / Γ(α+1) · ∫_0^1 f(c ± h·u^(1/α)) du
//! ```
//!
//! whose integrand is bounded whenever `f` is, for every `α > 0`.

use alloc::format;

use crate::error::{Error, Result};
use crate::funcatalog::Function1D;
use crate::math::powf;
use crate::quad::{self, Estimate};
use crate::specfun;

/// Panels of the brute-force midpoint oracle.
pub const ORACLE_PANELS: usize = 1_000_000;

/// Integration rule used for the fractional integrals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum Rule {
    /// Power substitution followed by adaptive Gauss–Kronrod.
    TransformedAdaptive,
    /// Gauss–Jacobi rules carrying the kernel as their weight, doubled in
    /// order until two successive values agree.
    GaussJacobi,
    /// Transformed integrand on a fixed 10^6-panel midpoint grid.
    OracleMidpoint,
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct QuadratureConfig {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_subdivisions: usize,
    pub rule: Rule,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            rel_tol: 1e-10,
            abs_tol: 1e-12,
            max_subdivisions: 2000,
            rule: Rule::TransformedAdaptive,
        }
    }
}

impl QuadratureConfig {
    pub fn with_rule(mut self, rule: Rule) -> Self {
        self.rule = rule;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0 && self.abs_tol > 0.0) {
            return Err(Error::InvalidParams(format!(
                "quadrature tolerances must be positive, got rel {} abs {}",
                self.rel_tol, self.abs_tol
            )));
        }
        if self.max_subdivisions < 8 {
            return Err(Error::InvalidParams(format!(
                "max_subdivisions must be at least 8, got {}",
                self.max_subdivisions
            )));
        }
        Ok(())
    }

    /// Integrates a bounded integrand over `[lo, hi]` with the configured
    /// engine. Gauss–Jacobi has nothing to offer without a kernel, so it
    /// falls back to the adaptive rule here.
    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F, lo: f64, hi: f64) -> Result<Estimate> {
        match self.rule {
            Rule::TransformedAdaptive | Rule::GaussJacobi => {
                quad::adaptive(f, lo, hi, self.rel_tol, self.abs_tol, self.max_subdivisions)
            }
            Rule::OracleMidpoint => Ok(midpoint_estimate(&f, lo, hi, ORACLE_PANELS)),
        }
    }
}

/// Midpoint value with a Richardson error estimate from the half-resolution
/// grid (the rule is second order).
fn midpoint_estimate<F: Fn(f64) -> f64>(f: &F, lo: f64, hi: f64, panels: usize) -> Estimate {
    let fine = quad::midpoint(f, lo, hi, panels);
    let coarse = quad::midpoint(f, lo, hi, panels / 2);
    Estimate {
        value: fine,
        abs_err: (fine - coarse).abs() / 3.0,
        evals: panels + panels / 2,
    }
}

/// The full parameter tuple shared by the identity and every theorem.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct FracParams {
    pub a: f64,
    pub b: f64,
    pub x: f64,
    pub alpha: f64,
    pub s: f64,
    pub p: Option<f64>,
    pub q: Option<f64>,
    pub m: Option<f64>,
}

/// Tolerance on `1/p + 1/q = 1`.
pub const CONJUGATE_TOL: f64 = 1e-12;

impl FracParams {
    pub fn new(a: f64, b: f64, x: f64, alpha: f64, s: f64) -> Self {
        Self {
            a,
            b,
            x,
            alpha,
            s,
            p: None,
            q: None,
            m: None,
        }
    }

    pub fn with_pq(mut self, p: f64, q: f64) -> Self {
        self.p = Some(p);
        self.q = Some(q);
        self
    }

    pub fn with_q(mut self, q: f64) -> Self {
        self.q = Some(q);
        self
    }

    pub fn with_m(mut self, m: f64) -> Self {
        self.m = Some(m);
        self
    }

    pub fn with_x(mut self, x: f64) -> Self {
        self.x = x;
        self
    }

    pub fn with_alpha(mut self, alpha: f64) -> Self {
        self.alpha = alpha;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let FracParams { a, b, x, alpha, s, p, q, m } = *self;
        if !(a < b) || !a.is_finite() || !b.is_finite() {
            return Err(Error::InvalidParams(format!("need finite a < b, got a={a} b={b}")));
        }
        if !(x >= a && x <= b) {
            return Err(Error::InvalidParams(format!("x={x} outside [{a}, {b}]")));
        }
        if !(alpha > 0.0) || !alpha.is_finite() {
            return Err(Error::InvalidParams(format!("alpha must be positive, got {alpha}")));
        }
        if !(s > 0.0 && s <= 1.0) {
            return Err(Error::InvalidParams(format!("s must lie in (0, 1], got {s}")));
        }
        if let Some(q) = q {
            if !(q >= 1.0) {
                return Err(Error::InvalidParams(format!("q must be >= 1, got {q}")));
            }
        }
        if let Some(p) = p {
            if !(p > 1.0) {
                return Err(Error::InvalidParams(format!("p must exceed 1, got {p}")));
            }
        }
        if let (Some(p), Some(q)) = (p, q) {
            if (1.0 / p + 1.0 / q - 1.0).abs() > CONJUGATE_TOL {
                return Err(Error::InvalidParams(format!("p={p} and q={q} are not conjugate")));
            }
        }
        if let Some(m) = m {
            if !(m >= 0.0) {
                return Err(Error::InvalidParams(format!("M must be nonnegative, got {m}")));
            }
        }
        Ok(())
    }
}

/// Which end of the interval carries the `|t − c|^(α−1)` singularity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Anchor {
    Lower,
    Upper,
}

/// `(1/Γ(α)) ∫_lo^hi |t − c|^(α−1) f(t) dt` with `c` the anchored endpoint.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeakKernel {
    pub lo: f64,
    pub hi: f64,
    pub alpha: f64,
    pub anchor: Anchor,
}

impl WeakKernel {
    pub fn new(lo: f64, hi: f64, alpha: f64, anchor: Anchor) -> Result<Self> {
        if !(alpha > 0.0) || !alpha.is_finite() {
            return Err(Error::InvalidParams(format!("alpha must be positive, got {alpha}")));
        }
        if !(lo < hi) {
            return Err(Error::EmptyInterval { lo, hi });
        }
        Ok(Self { lo, hi, alpha, anchor })
    }

    /// `h^α / Γ(α+1)`.
    pub fn prefactor(&self) -> Result<f64> {
        Ok(powf(self.hi - self.lo, self.alpha) / specfun::gamma(self.alpha + 1.0)?)
    }

    /// Maps `u ∈ [0, 1]` to the point `t` of the original interval.
    #[inline]
    pub fn node(&self, u: f64) -> f64 {
        let h = self.hi - self.lo;
        let r = h * powf(u, 1.0 / self.alpha);
        match self.anchor {
            Anchor::Lower => (self.lo + r).min(self.hi),
            Anchor::Upper => (self.hi - r).max(self.lo),
        }
    }

    /// Bounded integrand on `[0, 1]` whose integral times [`prefactor`]
    /// is the fractional integral.
    ///
    /// [`prefactor`]: WeakKernel::prefactor
    pub fn transformed<'a>(&'a self, f: &'a Function1D) -> impl Fn(f64) -> f64 + 'a {
        move |u| f.value(self.node(u))
    }
}

/// Evaluates a weakly singular kernel integral with the configured rule.
pub fn integrate_kernel(f: &Function1D, kernel: &WeakKernel, cfg: &QuadratureConfig) -> Result<Estimate> {
    cfg.validate()?;
    f.check_interval(kernel.lo, kernel.hi)?;
    match cfg.rule {
        Rule::TransformedAdaptive | Rule::OracleMidpoint => {
            let inner = cfg.integrate(kernel.transformed(f), 0.0, 1.0)?;
            Ok(inner.scaled(kernel.prefactor()?))
        }
        Rule::GaussJacobi => gauss_jacobi_kernel(f, kernel, cfg),
    }
}

fn gauss_jacobi_kernel(f: &Function1D, kernel: &WeakKernel, cfg: &QuadratureConfig) -> Result<Estimate> {
    let (lo, hi, alpha) = (kernel.lo, kernel.hi, kernel.alpha);
    let half = 0.5 * (hi - lo);
    // t = lo + h(1+y)/2: the upper anchor gives weight (1−y)^(α−1), the
    // lower one (1+y)^(α−1).
    let (wa, wb) = match kernel.anchor {
        Anchor::Upper => (alpha - 1.0, 0.0),
        Anchor::Lower => (0.0, alpha - 1.0),
    };
    let scale = powf(half, alpha) / specfun::gamma(alpha)?;
    let at = |y: f64| f.value((lo + half * (1.0 + y)).clamp(lo, hi));

    let mut prev: Option<f64> = None;
    let mut evals = 0;
    let mut n = 16;
    loop {
        let rule = quad::gauss_jacobi(n, wa, wb)?;
        let value = scale * rule.apply(at);
        evals += n;
        if let Some(p) = prev {
            let err = (value - p).abs();
            if err <= cfg.abs_tol.max(cfg.rel_tol * value.abs()) {
                return Ok(Estimate { value, abs_err: err, evals });
            }
            if n >= 256 {
                return Err(Error::Convergence {
                    estimate: value,
                    abs_err: err,
                    subdivisions: n,
                });
            }
        }
        prev = Some(value);
        n *= 2;
    }
}

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParams(format!("alpha must be positive, got {alpha}")))
    }
}

/// Left-sided operator `J_{a+}^α f(x) = (1/Γ(α)) ∫_a^x (x−t)^(α−1) f(t) dt`.
pub fn rl_left(f: &Function1D, a: f64, x: f64, alpha: f64, cfg: &QuadratureConfig) -> Result<Estimate> {
    check_alpha(alpha)?;
    if !(x > a) {
        return Err(Error::EmptyInterval { lo: a, hi: x });
    }
    integrate_kernel(f, &WeakKernel::new(a, x, alpha, Anchor::Upper)?, cfg)
}

/// Right-sided operator `J_{b−}^α f(x) = (1/Γ(α)) ∫_x^b (t−x)^(α−1) f(t) dt`.
pub fn rl_right(f: &Function1D, x: f64, b: f64, alpha: f64, cfg: &QuadratureConfig) -> Result<Estimate> {
    check_alpha(alpha)?;
    if !(b > x) {
        return Err(Error::EmptyInterval { lo: x, hi: b });
    }
    integrate_kernel(f, &WeakKernel::new(x, b, alpha, Anchor::Lower)?, cfg)
}

/// The two operators of the Ostrowski identity:
///
/// * `J_{x−}^α f(a) = (1/Γ(α)) ∫_a^x (t−a)^(α−1) f(t) dt`
/// * `J_{x+}^α f(b) = (1/Γ(α)) ∫_x^b (b−t)^(α−1) f(t) dt`
///
/// Either one is zero when its interval is empty (`x = a` resp. `x = b`).
pub fn lemma_pair(f: &Function1D, prm: &FracParams, cfg: &QuadratureConfig) -> Result<(Estimate, Estimate)> {
    let FracParams { a, b, x, alpha, .. } = *prm;
    check_alpha(alpha)?;
    if !(a < b) || !(x >= a && x <= b) {
        return Err(Error::InvalidParams(format!("need a <= x <= b with a < b, got a={a} x={x} b={b}")));
    }
    let left = if x > a {
        integrate_kernel(f, &WeakKernel::new(a, x, alpha, Anchor::Lower)?, cfg)?
    } else {
        Estimate::ZERO
    };
    let right = if x < b {
        integrate_kernel(f, &WeakKernel::new(x, b, alpha, Anchor::Upper)?, cfg)?
    } else {
        Estimate::ZERO
    };
    Ok((left, right))
}

/// Brute-force reference: the transformed integrand on a fixed composite
/// midpoint grid with `panels` panels. Only meant for cross-validation.
pub fn oracle(f: &Function1D, kernel: &WeakKernel, panels: usize) -> Result<f64> {
    f.check_interval(kernel.lo, kernel.hi)?;
    Ok(kernel.prefactor()? * quad::midpoint(kernel.transformed(f), 0.0, 1.0, panels))
}
