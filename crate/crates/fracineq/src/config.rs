//! Sweep configuration: a TOML file whose keys mirror [`SweepConfig`],
//! with command-line flags applied on top.
//!
//! ```toml
//! functions = ["square", "exp"]
//! alphas = [0.25, 0.5, 1.0]
//! s_values = [0.5, 1.0]
//! pq_pairs = [[2.0, 2.0], [3.0, 1.5]]
//! x_points = 11            # or an explicit list: [0.0, 0.5, 1.0]
//! interval = [0.0, 1.0]
//! theorems = ["E6", "E7", "E8proof", "E9", "e1", "e13", "e14", "t5_146", "t6_147"]
//! seed = 0
//! random_x = 0             # extra x points drawn from the seed
//!
//! [tolerances]
//! identity_tol = 1e-8
//! margin_tol = 1e-9
//! cert_tol = 1e-9
//! rel_tol = 1e-10
//! abs_tol = 1e-12
//! ```

use std::path::Path;

use fracineq_core::fracint::CONJUGATE_TOL;
use fracineq_core::funcatalog::{builtin_catalog, CatalogEntry, CertifyConfig, S_GRID};
use fracineq_core::{QuadratureConfig, Rule, TheoremId, Tolerances};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Either a count of uniformly spaced points on `[a, b]` (endpoints
/// included) or an explicit list.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum XPoints {
    Count(usize),
    List(Vec<f64>),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepTolerances {
    pub identity_tol: f64,
    pub margin_tol: f64,
    pub cert_tol: f64,
    pub rel_tol: f64,
    pub abs_tol: f64,
}

impl Default for SweepTolerances {
    fn default() -> Self {
        let t = Tolerances::default();
        let q = QuadratureConfig::default();
        Self {
            identity_tol: t.identity_tol,
            margin_tol: t.margin_tol,
            cert_tol: t.cert_tol,
            rel_tol: q.rel_tol,
            abs_tol: q.abs_tol,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepConfig {
    pub functions: Vec<String>,
    pub alphas: Vec<f64>,
    pub s_values: Vec<f64>,
    pub pq_pairs: Vec<(f64, f64)>,
    pub x_points: XPoints,
    pub interval: (f64, f64),
    pub tolerances: SweepTolerances,
    pub theorems: Vec<String>,
    pub rule: Rule,
    pub max_subdivisions: usize,
    pub seed: u64,
    pub random_x: usize,
}

pub const DEFAULT_ALPHAS: [f64; 6] = [0.25, 0.5, 0.75, 1.0, 1.5, 2.0];
pub const DEFAULT_PQ: [(f64, f64); 3] = [(2.0, 2.0), (3.0, 1.5), (1.25, 5.0)];
pub const DEFAULT_THEOREMS: [&str; 9] = ["E6", "E7", "E8proof", "E9", "e1", "e13", "e14", "t5_146", "t6_147"];

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            functions: builtin_catalog().iter().map(|e| e.name().to_string()).collect(),
            alphas: DEFAULT_ALPHAS.to_vec(),
            s_values: S_GRID.to_vec(),
            pq_pairs: DEFAULT_PQ.to_vec(),
            x_points: XPoints::Count(11),
            interval: (0.0, 1.0),
            tolerances: SweepTolerances::default(),
            theorems: DEFAULT_THEOREMS.iter().map(|s| s.to_string()).collect(),
            rule: Rule::TransformedAdaptive,
            max_subdivisions: QuadratureConfig::default().max_subdivisions,
            seed: 0,
            random_x: 0,
        }
    }
}

/// Every offending field of a rejected configuration.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("invalid sweep configuration:\n  {}", .problems.join("\n  "))]
pub struct ConfigError {
    pub problems: Vec<String>,
}

/// A validated configuration with everything resolved to core types.
#[derive(Debug, Clone)]
pub struct Resolved {
    pub functions: Vec<CatalogEntry>,
    pub alphas: Vec<f64>,
    pub s_values: Vec<f64>,
    pub pq_pairs: Vec<(f64, f64)>,
    pub x_points: Vec<f64>,
    pub a: f64,
    pub b: f64,
    pub theorems: Vec<TheoremId>,
    pub tolerances: Tolerances,
    pub quadrature: QuadratureConfig,
    pub certify: CertifyConfig,
}

impl SweepConfig {
    pub fn from_toml(text: &str) -> Result<Self, ConfigError> {
        toml::from_str(text).map_err(|e| ConfigError {
            problems: vec![e.to_string()],
        })
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|e| ConfigError {
            problems: vec![format!("{}: {e}", path.display())],
        })?;
        Self::from_toml(&text)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("sweep config serializes")
    }

    /// Checks every field and resolves names, collecting all problems.
    pub fn validate(&self) -> Result<Resolved, ConfigError> {
        let mut problems = Vec::new();
        let (a, b) = self.interval;

        let catalog = builtin_catalog();
        let mut functions = Vec::new();
        if self.functions.is_empty() {
            problems.push("functions: list is empty".to_string());
        }
        for name in &self.functions {
            match catalog.iter().find(|e| e.name() == name) {
                Some(e) => {
                    if let Err(err) = e.function.check_interval(a, b) {
                        problems.push(format!("functions: `{name}`: {err}"));
                    }
                    functions.push(e.clone());
                }
                None => problems.push(format!("functions: unknown catalog entry `{name}`")),
            }
        }

        if self.alphas.is_empty() {
            problems.push("alphas: list is empty".to_string());
        }
        for &alpha in &self.alphas {
            if !(alpha > 0.0 && alpha.is_finite()) {
                problems.push(format!("alphas: {alpha} is not a positive real"));
            }
        }
        if self.s_values.is_empty() {
            problems.push("s_values: list is empty".to_string());
        }
        for &s in &self.s_values {
            if !(s > 0.0 && s <= 1.0) {
                problems.push(format!("s_values: {s} is outside (0, 1]"));
            }
        }
        for &(p, q) in &self.pq_pairs {
            if !(p > 1.0 && q > 1.0) || (1.0 / p + 1.0 / q - 1.0).abs() > CONJUGATE_TOL {
                problems.push(format!("pq_pairs: ({p}, {q}) is not a conjugate pair"));
            }
        }

        if a >= b || !a.is_finite() || !b.is_finite() {
            problems.push(format!("interval: need a < b, got ({a}, {b})"));
        }

        let mut theorems = Vec::new();
        if self.theorems.is_empty() {
            problems.push("theorems: list is empty".to_string());
        }
        for token in &self.theorems {
            match TheoremId::parse_group(token) {
                Ok(ids) => theorems.extend(ids),
                Err(_) => problems.push(format!("theorems: unknown identifier `{token}`")),
            }
        }
        theorems.sort();
        theorems.dedup();
        if theorems.iter().any(|t| t.uses_pq()) && self.pq_pairs.is_empty() {
            problems.push("pq_pairs: list is empty but a theorem needs exponents".to_string());
        }
        if a < 0.0 && theorems.iter().any(|t| t.uses_s()) {
            problems.push(format!("interval: s-convexity hypotheses need a >= 0, got a = {a}"));
        }

        let mut x_points = match &self.x_points {
            XPoints::Count(0) => {
                problems.push("x_points: count must be at least 1".to_string());
                Vec::new()
            }
            XPoints::Count(1) => vec![0.5 * (a + b)],
            XPoints::Count(n) => (0..*n)
                .map(|i| if i + 1 == *n { b } else { a + (b - a) * i as f64 / (*n - 1) as f64 })
                .collect(),
            XPoints::List(xs) => {
                if xs.is_empty() {
                    problems.push("x_points: list is empty".to_string());
                }
                for &x in xs {
                    if !(x >= a && x <= b) {
                        problems.push(format!("x_points: {x} lies outside [{a}, {b}]"));
                    }
                }
                xs.clone()
            }
        };
        if a < b {
            let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
            x_points.extend((0..self.random_x).map(|_| rng.random_range(a..=b)));
        }
        x_points.sort_by(f64::total_cmp);
        x_points.dedup();

        let t = &self.tolerances;
        for (name, v) in [
            ("identity_tol", t.identity_tol),
            ("margin_tol", t.margin_tol),
            ("cert_tol", t.cert_tol),
            ("rel_tol", t.rel_tol),
            ("abs_tol", t.abs_tol),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                problems.push(format!("tolerances.{name}: {v} is not a positive real"));
            }
        }
        let quadrature = QuadratureConfig {
            rel_tol: t.rel_tol,
            abs_tol: t.abs_tol,
            max_subdivisions: self.max_subdivisions,
            rule: self.rule,
        };
        if let Err(e) = quadrature.validate() {
            problems.push(format!("quadrature: {e}"));
        }

        if !problems.is_empty() {
            return Err(ConfigError { problems });
        }
        Ok(Resolved {
            functions,
            alphas: self.alphas.clone(),
            s_values: self.s_values.clone(),
            pq_pairs: self.pq_pairs.clone(),
            x_points,
            a,
            b,
            theorems,
            tolerances: Tolerances {
                identity_tol: t.identity_tol,
                margin_tol: t.margin_tol,
                cert_tol: t.cert_tol,
            },
            quadrature,
            certify: CertifyConfig {
                cert_tol: t.cert_tol,
                ..CertifyConfig::default()
            },
        })
    }
}
