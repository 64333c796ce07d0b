use crate::corpus::trig_corpus;
use crate::error::{GlsError, Result};
use crate::psi::parse_psi;
use crate::source::registry::budget_override;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SuiteName {
    Norms,
    Duality,
    Operators,
    Sharpness,
    All,
}

impl SuiteName {
    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "norms" => Self::Norms,
            "duality" => Self::Duality,
            "operators" => Self::Operators,
            "sharpness" => Self::Sharpness,
            "all" => Self::All,
            _ => return Err(GlsError::Spec(format!("unknown suite `{s}` (norms, duality, operators, sharpness, all)"))),
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::Norms => "norms",
            Self::Duality => "duality",
            Self::Operators => "operators",
            Self::Sharpness => "sharpness",
            Self::All => "all",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Json,
    Csv,
}

impl Format {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Self::Json),
            "csv" => Ok(Self::Csv),
            _ => Err(GlsError::Spec(format!("unknown format `{s}` (json, csv)"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub suite: SuiteName,
    /// Trigonometric corpus for the torus checks.
    pub corpus: String,
    /// Relative tolerance of quadrature-based checks.
    pub tol: f64,
    pub psis: Vec<String>,
    /// Truncation budget for sequence witnesses; `GLSPACE_BUDGET` overrides the default.
    pub budget: Option<u64>,
    /// Restricts the suite to these jobs; `Some(vec![])` runs nothing.
    pub checks: Option<Vec<String>>,
    pub format: Format,
    pub output: Option<String>,
    /// Worker threads; never changes the numbers.
    pub threads: Option<usize>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            suite: SuiteName::All,
            corpus: "trig-small".into(),
            tol: 1e-6,
            psis: vec!["exp:0.5".into(), "power:1.2,6,1,1".into()],
            budget: budget_override(),
            checks: None,
            format: Format::Json,
            output: None,
            threads: None,
        }
    }
}

impl SuiteConfig {
    pub fn new(suite: SuiteName) -> Self {
        SuiteConfig { suite, ..Default::default() }
    }

    /// Resolves every spec before any computation.
    pub fn validate(&self) -> Result<()> {
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(GlsError::invalid(format!("tolerance must be positive, got {}", self.tol)));
        }
        trig_corpus(&self.corpus)?;
        for p in &self.psis {
            parse_psi(p)?;
        }
        if self.budget == Some(0) {
            return Err(GlsError::invalid("budget must be positive"));
        }
        if self.threads == Some(0) {
            return Err(GlsError::invalid("thread count must be positive"));
        }
        if let Some(list) = &self.checks {
            let known = super::runner::job_names(self.suite);
            for c in list {
                if !known.contains(&c.as_str()) {
                    return Err(GlsError::Spec(format!("suite `{}` has no check `{c}` (known: {})", self.suite.name(), known.join(", "))));
                }
            }
        }
        Ok(())
    }
}
