//! JSON run configuration and its translation into core objects.

use std::fmt;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use talenti_core::elliptic::RectilinearDomain;
use talenti_core::measure1d::ReducedMeasure;
use talenti_core::weights::{AxialPotential, PotentialSplit, TransversePotential, WeightProfile, DEFAULT_POWER_CUTOFF};

/// Unreadable, malformed or inconsistent configuration (exit code 1).
#[derive(Debug, Clone, PartialEq)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ConfigError {}

fn bad<T>(msg: impl Into<String>) -> Result<T, ConfigError> {
    Err(ConfigError(msg.into()))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case", deny_unknown_fields)]
pub enum WeightSpec {
    Constant {
        level: f64,
    },
    Exponential {
        a: f64,
    },
    ShiftedExponential {
        a: f64,
        b: f64,
    },
    Power {
        a: f64,
        #[serde(default = "default_cutoff")]
        cutoff: f64,
    },
    Tabulated {
        breakpoints: Vec<f64>,
        values: Vec<f64>,
    },
}

fn default_cutoff() -> f64 {
    DEFAULT_POWER_CUTOFF
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum AxialSpec {
    Zero,
    Gaussian { c: f64 },
    SignedParabola { c: f64 },
    Linear { c: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum TransverseSpec {
    Zero,
    Gaussian { c: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PotentialSpec {
    pub axial: AxialSpec,
    pub transverse: TransverseSpec,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum DomainSpec {
    /// `[x1₀, x1₁] × [x2₀, x2₁]`
    Rect { x1: [f64; 2], x2: [f64; 2] },
    /// rectangle minus the corner box `[notch₀, x1₁] × [notch₁, x2₁]`
    LShape { x1: [f64; 2], x2: [f64; 2], notch: [f64; 2] },
    /// `[x1₀, x1₁] × [−half_width, half_width]`
    Slab { x1: [f64; 2], half_width: f64 },
    /// rows of `#` (included) and `.` cells, bottom row first, cell size `hc`
    Mask { origin: [f64; 2], rows: Vec<String> },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum SourceSpec {
    Constant {
        value: f64,
    },
    GaussianBump {
        center: [f64; 2],
        width: f64,
        amplitude: f64,
    },
    /// `(c₀ + c₁ r² + c₂ r⁴ + …) e^{−r²/(2 width²)}`
    PolynomialGaussian {
        center: [f64; 2],
        width: f64,
        coefficients: Vec<f64>,
    },
}

impl SourceSpec {
    pub fn eval(&self, x1: f64, x2: f64) -> f64 {
        match self {
            SourceSpec::Constant { value } => *value,
            SourceSpec::GaussianBump { center, width, amplitude } => {
                let r2 = (x1 - center[0]).powi(2) + (x2 - center[1]).powi(2);
                amplitude * (-r2 / (2.0 * width * width)).exp()
            }
            SourceSpec::PolynomialGaussian { center, width, coefficients } => {
                let r2 = (x1 - center[0]).powi(2) + (x2 - center[1]).powi(2);
                let poly = coefficients.iter().rev().fold(0.0, |acc, c| acc * r2 + c);
                poly * (-r2 / (2.0 * width * width)).exp()
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    /// relative tail mass beyond the truncation abscissa
    pub quadrature: f64,
    /// relative residual of the linear solve
    pub solver: f64,
    /// absolute bound on `sup (u* − v)`
    pub comparison: f64,
    /// relative slack admitted in the gradient-norm comparison
    pub qnorm: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self { quadrature: 1e-12, solver: 1e-10, comparison: 5e-2, qnorm: 1e-2 }
    }
}

fn default_dimension() -> usize {
    2
}

fn default_hc() -> f64 {
    1.0 / 64.0
}

fn default_q() -> Vec<f64> {
    vec![0.5, 1.0, 2.0]
}

fn default_seed() -> u64 {
    42
}

fn default_trials() -> u64 {
    100
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default = "default_dimension")]
    pub dimension: usize,
    pub weight: WeightSpec,
    pub potential: PotentialSpec,
    #[serde(default)]
    pub domain: Option<DomainSpec>,
    #[serde(default = "default_hc")]
    pub hc: f64,
    #[serde(default)]
    pub source: Option<SourceSpec>,
    #[serde(default)]
    pub tolerances: Tolerances,
    #[serde(default = "default_q")]
    pub q: Vec<f64>,
    #[serde(default = "default_seed")]
    pub seed: u64,
    #[serde(default = "default_trials")]
    pub trials: u64,
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self, ConfigError> {
        let cfg: RunConfig = serde_json::from_str(text).map_err(|e| ConfigError(format!("malformed config: {e}")))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| ConfigError(format!("cannot read config {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    /// Structural checks that need no numerics.
    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.dimension < 2 {
            return bad(format!("dimension must be >= 2 (got {})", self.dimension));
        }
        if !(self.hc > 0.0 && self.hc.is_finite()) {
            return bad(format!("hc must be > 0 (got {})", self.hc));
        }
        if let Some(q) = self.q.iter().find(|q| !(**q > 0.0 && **q <= 2.0)) {
            return bad(format!("q = {q} lies outside (0, 2]"));
        }
        let t = &self.tolerances;
        for (name, v) in
            [("quadrature", t.quadrature), ("solver", t.solver), ("comparison", t.comparison), ("qnorm", t.qnorm)]
        {
            if !(v > 0.0 && v.is_finite()) {
                return bad(format!("tolerance {name} must be > 0 (got {v})"));
            }
        }
        if t.quadrature > 1e-6 {
            return bad(format!("quadrature tail fraction must be <= 1e-6 (got {})", t.quadrature));
        }
        Ok(())
    }

    /// SHA-256 of the canonical serialisation, defaults filled in.
    pub fn hash(&self) -> String {
        let canonical =
            serde_json::to_string(&serde_json::to_value(self).expect("config serialises")).expect("config serialises");
        let digest = Sha256::digest(canonical.as_bytes());
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn weight(&self) -> Result<WeightProfile<f64>, ConfigError> {
        let w = match &self.weight {
            WeightSpec::Constant { level } => WeightProfile::constant(*level),
            WeightSpec::Exponential { a } => WeightProfile::exponential(*a),
            WeightSpec::ShiftedExponential { a, b } => WeightProfile::shifted_exponential(*a, *b),
            WeightSpec::Power { a, cutoff } => WeightProfile::power(*a, *cutoff),
            WeightSpec::Tabulated { breakpoints, values } => {
                WeightProfile::tabulated(breakpoints.clone(), values.clone())
            }
        };
        w.map_err(|e| ConfigError(format!("weight: {e}")))
    }

    pub fn potential(&self) -> Result<PotentialSplit<f64>, ConfigError> {
        let axial = match self.potential.axial {
            AxialSpec::Zero => AxialPotential::Zero,
            AxialSpec::Gaussian { c } => AxialPotential::Gaussian { c },
            AxialSpec::SignedParabola { c } => AxialPotential::SignedParabola { c },
            AxialSpec::Linear { c } => AxialPotential::Linear { c },
        };
        let transverse = match self.potential.transverse {
            TransverseSpec::Zero => TransversePotential::Zero,
            TransverseSpec::Gaussian { c } => TransversePotential::Gaussian { c },
        };
        PotentialSplit::new(axial, transverse, self.dimension).map_err(|e| ConfigError(format!("potential: {e}")))
    }

    pub fn measure(&self) -> Result<ReducedMeasure<f64>, ConfigError> {
        let v = self.potential()?;
        let total = ReducedMeasure::build(&v, None).map_err(|e| ConfigError(format!("measure: {e}")))?.total();
        ReducedMeasure::build(&v, Some(self.tolerances.quadrature * total))
            .map_err(|e| ConfigError(format!("measure: {e}")))
    }

    pub fn domain(&self) -> Result<Arc<RectilinearDomain<f64>>, ConfigError> {
        self.domain_at(self.hc)
    }

    pub fn domain_at(&self, hc: f64) -> Result<Arc<RectilinearDomain<f64>>, ConfigError> {
        let Some(spec) = &self.domain else {
            return bad("this command needs a domain");
        };
        let d = match spec {
            DomainSpec::Rect { x1, x2 } => RectilinearDomain::rectangle(x1[0], x1[1], x2[0], x2[1], hc),
            DomainSpec::LShape { x1, x2, notch } => {
                RectilinearDomain::l_shape(x1[0], x1[1], x2[0], x2[1], notch[0], notch[1], hc)
            }
            DomainSpec::Slab { x1, half_width } => {
                RectilinearDomain::rectangle(x1[0], x1[1], -half_width, *half_width, hc)
            }
            DomainSpec::Mask { origin, rows } => {
                let n2 = rows.len();
                let n1 = rows.first().map(|r| r.chars().count()).unwrap_or(0);
                if rows.iter().any(|r| r.chars().count() != n1) {
                    return bad("mask rows must have equal length");
                }
                let mut mask = Vec::with_capacity(n1 * n2);
                for row in rows {
                    for ch in row.chars() {
                        match ch {
                            '#' => mask.push(true),
                            '.' => mask.push(false),
                            other => return bad(format!("mask cell {other:?} is neither '#' nor '.'")),
                        }
                    }
                }
                RectilinearDomain::new(*origin, hc, n1, n2, mask)
            }
        };
        let d = d.map_err(|e| ConfigError(format!("domain: {e}")))?;
        let w = self.weight()?;
        let (lo, hi) = d.x1_range();
        for x in [lo, hi] {
            w.check_domain(x).map_err(|e| ConfigError(format!("domain outside the weight's range: {e}")))?;
        }
        Ok(Arc::new(d))
    }

    pub fn source(&self) -> Result<&SourceSpec, ConfigError> {
        self.source.as_ref().ok_or_else(|| ConfigError("this command needs a source".into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = r#"{"weight": {"family": "exponential", "a": 2.0},
        "potential": {"axial": {"kind": "gaussian", "c": 1.0}, "transverse": {"kind": "gaussian", "c": 1.0}}}"#;

    #[test]
    fn defaults_fill_in() {
        let cfg = RunConfig::from_json(MINIMAL).unwrap();
        assert_eq!(cfg.dimension, 2);
        assert_eq!(cfg.hc, 1.0 / 64.0);
        assert_eq!(cfg.q, vec![0.5, 1.0, 2.0]);
        assert_eq!(cfg.tolerances, Tolerances::default());
    }

    #[test]
    fn hash_ignores_formatting_but_not_values() {
        let a = RunConfig::from_json(MINIMAL).unwrap();
        let b = RunConfig::from_json(&MINIMAL.replace([' ', '\n'], "")).unwrap();
        assert_eq!(a.hash(), b.hash());
        let c = RunConfig::from_json(&MINIMAL.replace("2.0", "3.0")).unwrap();
        assert_ne!(a.hash(), c.hash());
        assert_eq!(a.hash().len(), 64);
    }

    #[test]
    fn unknown_fields_rejected() {
        let text = MINIMAL.replacen('{', r#"{"extra": 1,"#, 1);
        assert!(RunConfig::from_json(&text).is_err());
    }

    #[test]
    fn mask_rows_bottom_first() {
        let mut cfg = RunConfig::from_json(MINIMAL).unwrap();
        cfg.hc = 0.25;
        cfg.domain = Some(DomainSpec::Mask { origin: [0.5, 0.0], rows: vec!["##.".into(), "###".into()] });
        let d = cfg.domain().unwrap();
        assert_eq!(d.cell_count(), 5);
        assert!(d.is_cell(2, 1));
        assert!(!d.is_cell(2, 0));
        cfg.domain = Some(DomainSpec::Mask { origin: [0.5, 0.0], rows: vec!["#x".into()] });
        assert!(cfg.domain().is_err());
    }

    #[test]
    fn source_profiles() {
        let bump = SourceSpec::GaussianBump { center: [1.0, 0.0], width: 0.5, amplitude: 2.0 };
        assert_eq!(bump.eval(1.0, 0.0), 2.0);
        assert!((bump.eval(1.5, 0.0) - 2.0 * (-0.5f64).exp()).abs() < 1e-15);
        let poly = SourceSpec::PolynomialGaussian { center: [0.0, 0.0], width: 1.0, coefficients: vec![1.0, 2.0] };
        assert!((poly.eval(1.0, 0.0) - 3.0 * (-0.5f64).exp()).abs() < 1e-15);
    }
}
