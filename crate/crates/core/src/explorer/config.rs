use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::cp::QuadratureSpec;
use crate::error::{Error, Result};
use crate::model::atom::AtomSpec;
use crate::model::units::UnitMode;

/// Grid of positive or zero values, written in a config as a single value,
/// an explicit list, or a log-spaced range.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged, deny_unknown_fields)]
pub enum Grid {
    Single { value: f64 },
    List { values: Vec<f64> },
    Log { min: f64, max: f64, count: usize },
}

impl Grid {
    pub fn validate(&self, name: &str) -> Result<()> {
        let bad = |msg: String| Err(Error::Input(format!("{name}: {msg}")));
        match self {
            Grid::Single { value } => {
                if !(value.is_finite() && *value >= 0.0) {
                    return bad(format!("value must be finite and non-negative, got {value}"));
                }
            }
            Grid::List { values } => {
                if values.is_empty() {
                    return bad("values must be non-empty".into());
                }
                if values.iter().any(|v| !(v.is_finite() && *v >= 0.0)) {
                    return bad("values must be finite and non-negative".into());
                }
            }
            Grid::Log { min, max, count } => {
                if !(min.is_finite() && max.is_finite() && *min > 0.0) {
                    return bad(format!("log grid needs 0 < min, finite bounds; got {min}..{max}"));
                }
                if !(min < max) {
                    return bad(format!("min must be below max, got {min}..{max}"));
                }
                if *count < 2 {
                    return bad(format!("count must be at least 2, got {count}"));
                }
            }
        }
        Ok(())
    }

    /// Grid points in ascending order, duplicates removed.
    pub fn points(&self) -> Vec<f64> {
        let mut v = match self {
            Grid::Single { value } => vec![*value],
            Grid::List { values } => values.clone(),
            Grid::Log { min, max, count } => {
                let (l0, l1) = (min.ln(), max.ln());
                let n = *count;
                (0..n)
                    .map(|i| match i {
                        0 => *min,
                        i if i + 1 == n => *max,
                        i => (l0 + (l1 - l0) * i as f64 / (n - 1) as f64).exp(),
                    })
                    .collect()
            }
        };
        v.sort_by(f64::total_cmp);
        v.dedup();
        v
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Contour,
    Oracle,
    Asymptotic,
}

/// A sweep as read from JSON. Relative paths are resolved against the
/// directory of the config file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub atom: PathBuf,
    #[serde(rename = "R_grid")]
    pub r_grid: Grid,
    pub a_grid: Grid,
    pub methods: Vec<Method>,
    #[serde(default)]
    pub quad: QuadratureSpec,
    #[serde(default = "default_units")]
    pub units: UnitMode,
    pub output_path: PathBuf,
    /// Worker threads; all available cores when absent.
    #[serde(default)]
    pub threads: Option<usize>,
}

fn default_units() -> UnitMode {
    UnitMode::Natural
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        self.r_grid.validate("R_grid")?;
        self.a_grid.validate("a_grid")?;
        if self.r_grid.points().contains(&0.0) {
            return Err(Error::Input("R_grid must not contain 0".into()));
        }
        if self.methods.is_empty() {
            return Err(Error::Input("methods must name at least one evaluator".into()));
        }
        if self.threads == Some(0) {
            return Err(Error::Input("threads must be at least 1".into()));
        }
        self.quad.validate()
    }

    pub fn from_json_str(s: &str, base: &Path) -> Result<Self> {
        let mut cfg: Self = serde_json::from_str(s)?;
        cfg.methods.sort();
        cfg.methods.dedup();
        for p in [&mut cfg.atom, &mut cfg.output_path] {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path)
            .map_err(|e| Error::Input(format!("cannot read config {}: {e}", path.display())))?;
        let base = path.parent().unwrap_or(Path::new(""));
        Self::from_json_str(&text, base)
    }

    pub fn load_atom(&self) -> Result<AtomSpec> {
        AtomSpec::from_json_file(&self.atom, self.units)
    }

    pub fn has(&self, m: Method) -> bool {
        self.methods.contains(&m)
    }
}
