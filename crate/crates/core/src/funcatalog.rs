//! Test functions with exact derivatives, s-convexity certification by dense
//! grid sampling, and derivative bounds.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::math::{cos, exp, powf, sin};

pub type RealFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// A differentiable scalar function on `[domain_lo, domain_hi]` with its
/// exact derivative.
#[derive(Clone)]
pub struct Function1D {
    name: String,
    eval: RealFn,
    deriv: RealFn,
    domain_lo: f64,
    domain_hi: f64,
    deriv_sup: Option<f64>,
}

impl fmt::Debug for Function1D {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Function1D")
            .field("name", &self.name)
            .field("domain", &(self.domain_lo, self.domain_hi))
            .field("deriv_sup", &self.deriv_sup)
            .finish()
    }
}

impl Function1D {
    pub fn new<F, D>(name: impl Into<String>, domain_lo: f64, domain_hi: f64, eval: F, deriv: D) -> Result<Self>
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
        D: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        if !(domain_lo < domain_hi) || !domain_lo.is_finite() || !domain_hi.is_finite() {
            return Err(Error::InvalidParams(format!(
                "function domain needs finite lo < hi, got [{domain_lo}, {domain_hi}]"
            )));
        }
        Ok(Self {
            name: name.into(),
            eval: Arc::new(eval),
            deriv: Arc::new(deriv),
            domain_lo,
            domain_hi,
            deriv_sup: None,
        })
    }

    /// Registers an analytic bound `sup |f′| ≤ m` over the whole domain.
    pub fn with_deriv_sup(mut self, m: f64) -> Self {
        self.deriv_sup = Some(m);
        self
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    #[inline]
    pub fn value(&self, t: f64) -> f64 {
        (self.eval)(t)
    }

    #[inline]
    pub fn derivative(&self, t: f64) -> f64 {
        (self.deriv)(t)
    }

    pub fn domain(&self) -> (f64, f64) {
        (self.domain_lo, self.domain_hi)
    }

    pub fn deriv_sup(&self) -> Option<f64> {
        self.deriv_sup
    }

    /// Errors unless `[lo, hi]` lies inside the domain.
    pub fn check_interval(&self, lo: f64, hi: f64) -> Result<()> {
        if lo >= self.domain_lo && hi <= self.domain_hi && lo <= hi {
            Ok(())
        } else {
            Err(Error::OutOfDomain {
                name: self.name.clone(),
                lo,
                hi,
                domain_lo: self.domain_lo,
                domain_hi: self.domain_hi,
            })
        }
    }

    pub fn constant(c: f64, lo: f64, hi: f64) -> Result<Self> {
        Ok(Self::new("constant", lo, hi, move |_| c, |_| 0.0)?.with_deriv_sup(0.0))
    }

    /// `t ↦ c0 + c1·t`.
    pub fn affine(c0: f64, c1: f64, lo: f64, hi: f64) -> Result<Self> {
        Ok(Self::new("affine", lo, hi, move |t| c0 + c1 * t, move |_| c1)?.with_deriv_sup(c1.abs()))
    }

    /// `t ↦ coef·t^exponent` on a domain inside `[0, ∞)`, `exponent ≥ 1` so
    /// the derivative stays bounded.
    pub fn power(coef: f64, exponent: f64, lo: f64, hi: f64) -> Result<Self> {
        if lo < 0.0 || exponent < 1.0 {
            return Err(Error::InvalidParams(format!(
                "power function needs domain in [0, inf) and exponent >= 1, got [{lo}, {hi}], {exponent}"
            )));
        }
        let e1 = exponent - 1.0;
        let f = Self::new(
            format!("power_{exponent}"),
            lo,
            hi,
            move |t| coef * powf(t, exponent),
            move |t| if e1 == 0.0 { coef } else { coef * exponent * powf(t, e1) },
        )?;
        // |f′| is monotone on [0, ∞), so its sup sits at an endpoint.
        let m = (coef * exponent * powf(lo, e1)).abs().max((coef * exponent * powf(hi, e1)).abs());
        Ok(f.with_deriv_sup(m))
    }

    pub fn exponential(lo: f64, hi: f64) -> Result<Self> {
        Ok(Self::new("exp", lo, hi, exp, exp)?.with_deriv_sup(exp(hi)))
    }

    pub fn sine(lo: f64, hi: f64) -> Result<Self> {
        Self::new("sine", lo, hi, sin, cos)
    }

    /// `c1·f + c2·g` on the intersection of both domains.
    pub fn linear_combination(c1: f64, f: &Function1D, c2: f64, g: &Function1D) -> Result<Self> {
        let lo = f.domain_lo.max(g.domain_lo);
        let hi = f.domain_hi.min(g.domain_hi);
        let (fe, fd, ge, gd) = (f.eval.clone(), f.deriv.clone(), g.eval.clone(), g.deriv.clone());
        let mut h = Self::new(
            format!("{c1}*{}+{c2}*{}", f.name, g.name),
            lo,
            hi,
            move |t| c1 * fe(t) + c2 * ge(t),
            move |t| c1 * fd(t) + c2 * gd(t),
        )?;
        if let (Some(mf), Some(mg)) = (f.deriv_sup, g.deriv_sup) {
            h.deriv_sup = Some(c1.abs() * mf + c2.abs() * mg);
        }
        Ok(h)
    }
}

/// Direction of the second-sense s-convexity inequality.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum Mode {
    SConvex,
    SConcave,
}

/// Which function of `f` is certified.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum Target {
    /// `f` itself (Hermite–Hadamard hypothesis).
    Value,
    /// `|f′|`.
    AbsDeriv,
    /// `|f′|^q`.
    AbsDerivPow,
}

impl Target {
    fn eval(self, f: &Function1D, q: f64, t: f64) -> f64 {
        match self {
            Target::Value => f.value(t),
            Target::AbsDeriv => f.derivative(t).abs(),
            Target::AbsDerivPow => powf(f.derivative(t).abs(), q),
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Target::Value => "f",
            Target::AbsDeriv => "|f'|",
            Target::AbsDerivPow => "|f'|^q",
        })
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::SConvex => "s-convex",
            Mode::SConcave => "s-concave",
        })
    }
}

/// Sampling resolution and acceptance tolerance of the certifier.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CertifyConfig {
    /// Points per axis (u, v and λ); at least 33.
    pub grid_size: usize,
    pub cert_tol: f64,
}

impl CertifyConfig {
    pub const MIN_GRID: usize = 33;
}

impl Default for CertifyConfig {
    fn default() -> Self {
        Self {
            grid_size: Self::MIN_GRID,
            cert_tol: 1e-9,
        }
    }
}

/// Outcome of sampling the s-convexity inequality on a grid.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ConvexityCertificate {
    pub function: String,
    pub s: f64,
    pub q: f64,
    pub mode: Mode,
    pub target: Target,
    pub lo: f64,
    pub hi: f64,
    /// Largest sampled value of `g(λu+(1−λ)v) − λ^s g(u) − (1−λ)^s g(v)`
    /// (negated for s-concavity).
    pub max_violation: f64,
    pub grid_size: usize,
    pub cert_tol: f64,
}

impl ConvexityCertificate {
    pub fn passed(&self) -> bool {
        self.passes_at(self.cert_tol)
    }

    pub fn passes_at(&self, tol: f64) -> bool {
        self.max_violation <= tol
    }

    /// True if this is a passing certificate for exactly this hypothesis on
    /// an interval containing `[lo, hi]`.
    pub fn covers(&self, mode: Mode, target: Target, s: f64, q: f64, lo: f64, hi: f64) -> bool {
        self.passed()
            && self.mode == mode
            && self.target == target
            && self.s == s
            && (target != Target::AbsDerivPow || self.q == q)
            && self.lo <= lo
            && self.hi >= hi
    }
}

fn uniform(lo: f64, hi: f64, n: usize, i: usize) -> f64 {
    if i + 1 == n {
        hi
    } else {
        lo + (hi - lo) * (i as f64) / ((n - 1) as f64)
    }
}

/// Certifies `target` of `f` on its whole domain with default sampling.
pub fn certify(f: &Function1D, s: f64, q: f64, mode: Mode, target: Target) -> Result<ConvexityCertificate> {
    let (lo, hi) = f.domain();
    certify_on(f, lo, hi, s, q, mode, target, &CertifyConfig::default())
}

/// Samples the second-sense s-convexity (or s-concavity) inequality of
/// `target` on `[lo, hi]² × [0, 1]`.
#[allow(clippy::too_many_arguments)]
pub fn certify_on(
    f: &Function1D,
    lo: f64,
    hi: f64,
    s: f64,
    q: f64,
    mode: Mode,
    target: Target,
    cfg: &CertifyConfig,
) -> Result<ConvexityCertificate> {
    if !(s > 0.0 && s <= 1.0) {
        return Err(Error::InvalidParams(format!("s must lie in (0, 1], got {s}")));
    }
    if !(q >= 1.0) {
        return Err(Error::InvalidParams(format!("q must be >= 1, got {q}")));
    }
    if lo < 0.0 {
        return Err(Error::InvalidParams(format!(
            "s-convexity is defined on [0, inf); interval starts at {lo}"
        )));
    }
    if !(lo < hi) {
        return Err(Error::EmptyInterval { lo, hi });
    }
    if cfg.grid_size < CertifyConfig::MIN_GRID {
        return Err(Error::InvalidParams(format!(
            "certification grid needs at least {} points per axis, got {}",
            CertifyConfig::MIN_GRID,
            cfg.grid_size
        )));
    }
    f.check_interval(lo, hi)?;

    let n = cfg.grid_size;
    let pts: Vec<f64> = (0..n).map(|i| uniform(lo, hi, n, i)).collect();
    let g: Vec<f64> = pts.iter().map(|&t| target.eval(f, q, t)).collect();
    let lambdas: Vec<(f64, f64, f64)> = (0..n)
        .map(|k| {
            let l = uniform(0.0, 1.0, n, k);
            (l, powf(l, s), powf(1.0 - l, s))
        })
        .collect();
    let sign = match mode {
        Mode::SConvex => 1.0,
        Mode::SConcave => -1.0,
    };

    let mut worst = f64::NEG_INFINITY;
    for (i, &u) in pts.iter().enumerate() {
        for (j, &v) in pts.iter().enumerate() {
            for &(l, ls, ms) in &lambdas {
                let mid = target.eval(f, q, l * u + (1.0 - l) * v);
                let gap = sign * (mid - ls * g[i] - ms * g[j]);
                if gap > worst || gap.is_nan() {
                    worst = if gap.is_nan() { f64::INFINITY } else { gap };
                }
            }
        }
    }

    Ok(ConvexityCertificate {
        function: f.name().to_string(),
        s,
        q: if target == Target::AbsDerivPow { q } else { 1.0 },
        mode,
        target,
        lo,
        hi,
        max_violation: worst,
        grid_size: n,
        cert_tol: cfg.cert_tol,
    })
}

/// Minimum of `f` over a uniform grid; the Hermite–Hadamard hypothesis
/// needs `f ≥ 0`.
pub fn sampled_min(f: &Function1D, lo: f64, hi: f64, points: usize) -> f64 {
    (0..points.max(2))
        .map(|i| f.value(uniform(lo, hi, points.max(2), i)))
        .fold(f64::INFINITY, f64::min)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum BoundMethod {
    Analytic,
    Sampled,
}

/// An upper bound `M` for `|f′|`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct DerivBound {
    pub m: f64,
    pub method: BoundMethod,
}

pub const DERIV_GRID: usize = 1001;
const SAMPLED_INFLATION: f64 = 1e-9;

/// `M` on the function's whole domain.
pub fn derivative_bound(f: &Function1D) -> DerivBound {
    let (lo, hi) = f.domain();
    derivative_bound_on(f, lo, hi)
}

/// The registered analytic bound if there is one, otherwise the maximum of
/// `|f′|` on a 1001-point grid inflated by a relative 1e-9.
pub fn derivative_bound_on(f: &Function1D, lo: f64, hi: f64) -> DerivBound {
    if let Some(m) = f.deriv_sup() {
        return DerivBound {
            m,
            method: BoundMethod::Analytic,
        };
    }
    let sup = (0..DERIV_GRID)
        .map(|i| f.derivative(uniform(lo, hi, DERIV_GRID, i)).abs())
        .fold(0.0, f64::max);
    DerivBound {
        m: (1.0 + SAMPLED_INFLATION) * sup,
        method: BoundMethod::Sampled,
    }
}

/// A hypothesis a catalog entry is registered to satisfy on its domain.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Claim {
    pub mode: Mode,
    pub target: Target,
    pub s: f64,
    pub q: f64,
}

/// A built-in test function with the hypotheses it is known to satisfy.
#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub function: Function1D,
    pub claims: Vec<Claim>,
}

impl CatalogEntry {
    pub fn name(&self) -> &str {
        self.function.name()
    }

    /// The s values for which `|f′|` is registered as s-convex.
    pub fn registered_s(&self) -> Vec<f64> {
        self.s_for(Mode::SConvex, Target::AbsDeriv, 1.0)
    }

    pub fn s_for(&self, mode: Mode, target: Target, q: f64) -> Vec<f64> {
        let mut s: Vec<f64> = self
            .claims
            .iter()
            .filter(|c| c.mode == mode && c.target == target && (target != Target::AbsDerivPow || c.q == q))
            .map(|c| c.s)
            .collect();
        s.sort_by(f64::total_cmp);
        s.dedup();
        s
    }

    pub fn analytic_m(&self) -> Option<f64> {
        self.function.deriv_sup()
    }
}

/// The s grid every sweep uses.
pub const S_GRID: [f64; 4] = [0.25, 0.5, 0.75, 1.0];
/// The q exponents of the conjugate pairs (2,2), (3,1.5), (1.25,5).
pub const Q_GRID: [f64; 3] = [2.0, 1.5, 5.0];

struct ClaimSet(Vec<Claim>);

impl ClaimSet {
    fn new() -> Self {
        Self(Vec::new())
    }

    fn add(mut self, mode: Mode, target: Target, q: f64, s: &[f64]) -> Self {
        self.0.extend(s.iter().map(|&s| Claim { mode, target, s, q }));
        self
    }

    /// `|f′|^q` is s-convex for the given s at each of the q values.
    fn pow_convex(mut self, q_s: &[(f64, &[f64])]) -> Self {
        for &(q, s) in q_s {
            self = self.add(Mode::SConvex, Target::AbsDerivPow, q, s);
        }
        self
    }

    fn pow_concave(mut self, q_s: &[(f64, &[f64])]) -> Self {
        for &(q, s) in q_s {
            self = self.add(Mode::SConcave, Target::AbsDerivPow, q, s);
        }
        self
    }
}

/// `t^(1+r)` with `|f′| = (1+r)t^r`: `c·t^k` is s-convex on `[0, ∞)` exactly
/// for `s ≤ min(k, 1)` and s-concave (second sense) only at `s = 1` with
/// `k ≤ 1`.
fn power_claims(r: f64) -> ClaimSet {
    let convex_s = |k: f64| -> Vec<f64> { S_GRID.iter().copied().filter(|&s| s <= k).collect() };
    let mut set = ClaimSet::new()
        .add(Mode::SConvex, Target::Value, 1.0, &S_GRID)
        .add(Mode::SConvex, Target::AbsDeriv, 1.0, &convex_s(r))
        .add(Mode::SConcave, Target::AbsDeriv, 1.0, &[1.0]);
    for q in Q_GRID {
        let k = r * q;
        set = set.add(Mode::SConvex, Target::AbsDerivPow, q, &convex_s(k));
        if k <= 1.0 {
            set = set.add(Mode::SConcave, Target::AbsDerivPow, q, &[1.0]);
        }
    }
    set
}

/// The built-in test functions, all on `[0, 1]`.
pub fn builtin_catalog() -> Vec<CatalogEntry> {
    let all: &[f64] = &S_GRID;
    let unit = |r: Result<Function1D>| r.expect("built-in catalog entry");
    let mut out = Vec::new();

    out.push(CatalogEntry {
        function: unit(Function1D::constant(1.0, 0.0, 1.0)),
        claims: ClaimSet::new()
            .add(Mode::SConvex, Target::Value, 1.0, all)
            .add(Mode::SConvex, Target::AbsDeriv, 1.0, all)
            .add(Mode::SConcave, Target::AbsDeriv, 1.0, all)
            .pow_convex(&[(2.0, all), (1.5, all), (5.0, all)])
            .pow_concave(&[(2.0, all), (1.5, all), (5.0, all)])
            .0,
    });
    out.push(CatalogEntry {
        function: unit(Function1D::affine(0.5, 2.0, 0.0, 1.0)),
        claims: ClaimSet::new()
            .add(Mode::SConvex, Target::Value, 1.0, all)
            .add(Mode::SConvex, Target::AbsDeriv, 1.0, all)
            .add(Mode::SConcave, Target::AbsDeriv, 1.0, &[1.0])
            .pow_convex(&[(2.0, all), (1.5, all), (5.0, all)])
            .pow_concave(&[(2.0, &[1.0]), (1.5, &[1.0]), (5.0, &[1.0])])
            .0,
    });
    out.push(CatalogEntry {
        function: unit(Function1D::power(1.0, 2.0, 0.0, 1.0)).with_name("square"),
        claims: ClaimSet::new()
            .add(Mode::SConvex, Target::Value, 1.0, all)
            .add(Mode::SConvex, Target::AbsDeriv, 1.0, all)
            .add(Mode::SConcave, Target::AbsDeriv, 1.0, &[1.0])
            .pow_convex(&[(2.0, all), (1.5, all), (5.0, all)])
            .0,
    });
    for (name, r) in [("pow_1p25", 0.25), ("pow_1p5", 0.5), ("pow_1p75", 0.75)] {
        out.push(CatalogEntry {
            function: unit(Function1D::power(1.0, 1.0 + r, 0.0, 1.0)).with_name(name),
            claims: power_claims(r).0,
        });
    }
    out.push(CatalogEntry {
        function: unit(Function1D::power(2.0 / 3.0, 1.5, 0.0, 1.0)).with_name("three_halves"),
        claims: power_claims(0.5).0,
    });
    out.push(CatalogEntry {
        function: unit(Function1D::exponential(0.0, 1.0)),
        claims: ClaimSet::new()
            .add(Mode::SConvex, Target::Value, 1.0, all)
            .add(Mode::SConvex, Target::AbsDeriv, 1.0, all)
            .pow_convex(&[(2.0, all), (1.5, all), (5.0, all)])
            .0,
    });
    out.push(CatalogEntry {
        function: unit(Function1D::sine(0.0, 1.0)).with_deriv_sup(1.0),
        claims: ClaimSet::new()
            .add(Mode::SConcave, Target::Value, 1.0, &[1.0])
            .add(Mode::SConcave, Target::AbsDeriv, 1.0, &[1.0])
            .0,
    });
    out
}

/// Looks up a built-in entry by name.
pub fn find(name: &str) -> Option<CatalogEntry> {
    builtin_catalog().into_iter().find(|e| e.name() == name)
}
