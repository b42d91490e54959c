//! Atomic transition data and polarizabilities.

use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::units::{Constants, UnitMode};
use crate::error::{Error, Result};

/// Default linewidth as a fraction of the lowest transition frequency.
pub const DEFAULT_DAMPING_FRACTION: f64 = 1e-6;
/// Largest admissible linewidth as a fraction of the lowest transition frequency.
pub const MAX_DAMPING_FRACTION: f64 = 1e-3;

/// One dipole-allowed transition out of the ground state.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Transition {
    /// Angular frequency E_r0/ħ.
    pub omega: f64,
    /// Squared dipole matrix element μ²_r0.
    pub mu_sq: f64,
}

impl Transition {
    pub fn new(omega: f64, mu_sq: f64) -> Result<Self> {
        if !(omega.is_finite() && omega > 0.0) {
            return Err(Error::Input(format!(
                "transition frequency must be positive, got {omega}"
            )));
        }
        if !(mu_sq.is_finite() && mu_sq >= 0.0) {
            return Err(Error::Input(format!(
                "squared dipole element must be non-negative, got {mu_sq}"
            )));
        }
        Ok(Self { omega, mu_sq })
    }
}

/// A ground-state atom described by its transitions.
#[derive(Clone, Debug, PartialEq)]
pub struct AtomSpec {
    transitions: Vec<Transition>,
    damping: f64,
    units: UnitMode,
}

impl AtomSpec {
    /// Builds an atom; `damping` defaults to 1e-6 of the lowest transition frequency.
    pub fn new(transitions: Vec<Transition>, damping: Option<f64>, units: UnitMode) -> Result<Self> {
        if transitions.is_empty() {
            return Err(Error::Input("atom needs at least one transition".into()));
        }
        for t in &transitions {
            Transition::new(t.omega, t.mu_sq)?;
        }
        let omega0 = transitions
            .iter()
            .map(|t| t.omega)
            .fold(f64::INFINITY, f64::min);
        let damping = damping.unwrap_or(DEFAULT_DAMPING_FRACTION * omega0);
        if !(damping.is_finite() && damping > 0.0 && damping <= MAX_DAMPING_FRACTION * omega0) {
            return Err(Error::Input(format!(
                "damping must lie in (0, {:e}], got {damping:e}",
                MAX_DAMPING_FRACTION * omega0
            )));
        }
        let atom = Self {
            transitions,
            damping,
            units,
        };
        if !(alpha_static(&atom) > 0.0) {
            return Err(Error::Input(
                "static polarizability must be positive (all dipole elements vanish)".into(),
            ));
        }
        Ok(atom)
    }

    /// Single-transition atom from its frequency and static polarizability,
    /// with μ² = 3ħω₀α₀/2.
    pub fn two_level(omega0: f64, alpha0: f64, damping: Option<f64>, units: UnitMode) -> Result<Self> {
        if !(alpha0.is_finite() && alpha0 > 0.0) {
            return Err(Error::Input(format!(
                "static polarizability must be positive, got {alpha0}"
            )));
        }
        let hbar = units.constants().hbar;
        let mu_sq = 1.5 * hbar * omega0 * alpha0;
        Self::new(vec![Transition::new(omega0, mu_sq)?], damping, units)
    }

    pub fn from_json_str(s: &str, units: UnitMode) -> Result<Self> {
        let doc: AtomDocument = serde_json::from_str(s)?;
        doc.into_atom(units)
    }

    pub fn from_json_file(path: impl AsRef<Path>, units: UnitMode) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| {
            Error::Input(format!("cannot read atom file {}: {e}", path.display()))
        })?;
        Self::from_json_str(&text, units)
    }

    /// Explicit JSON form of this atom.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "transitions": self.transitions,
            "damping": self.damping,
        })
    }

    pub fn transitions(&self) -> &[Transition] {
        &self.transitions
    }

    pub fn damping(&self) -> f64 {
        self.damping
    }

    pub fn units(&self) -> UnitMode {
        self.units
    }

    pub fn constants(&self) -> Constants {
        self.units.constants()
    }

    /// Lowest transition, which anchors the near/far zone split.
    pub fn dominant_transition(&self) -> Transition {
        *self
            .transitions
            .iter()
            .min_by(|a, b| a.omega.total_cmp(&b.omega))
            .expect("non-empty by construction")
    }

    /// ω₀, the lowest transition frequency.
    pub fn omega0(&self) -> f64 {
        self.dominant_transition().omega
    }

    /// k_A = ω₀/c.
    pub fn wavenumber0(&self) -> f64 {
        self.omega0() / self.constants().c
    }

    /// Static polarizability contributed by one transition, 2μ²/(3ħω).
    pub fn partial_polarizability(&self, t: &Transition) -> f64 {
        2.0 * t.mu_sq / (3.0 * self.constants().hbar * t.omega)
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum AtomDocument {
    Explicit {
        transitions: Vec<Transition>,
        #[serde(default)]
        damping: Option<f64>,
    },
    TwoLevel {
        two_level: TwoLevelDocument,
        #[serde(default)]
        damping: Option<f64>,
    },
}

#[derive(Deserialize)]
struct TwoLevelDocument {
    omega0: f64,
    alpha0: f64,
}

impl AtomDocument {
    fn into_atom(self, units: UnitMode) -> Result<AtomSpec> {
        match self {
            AtomDocument::Explicit {
                transitions,
                damping,
            } => AtomSpec::new(transitions, damping, units),
            AtomDocument::TwoLevel { two_level, damping } => {
                AtomSpec::two_level(two_level.omega0, two_level.alpha0, damping, units)
            }
        }
    }
}

/// Static polarizability α(0) = (2/3ħ) Σ_r μ²_r0/ω_r0.
pub fn alpha_static(atom: &AtomSpec) -> f64 {
    atom.transitions()
        .iter()
        .map(|t| atom.partial_polarizability(t))
        .sum()
}

/// Polarizability on the imaginary frequency axis, α(iξ) = Σ α_r ω_r²/(ω_r² + c²ξ²).
pub fn alpha_imag(xi: f64, atom: &AtomSpec) -> Result<f64> {
    if !(xi >= 0.0) {
        return Err(Error::Domain(format!(
            "imaginary wavenumber must be non-negative, got {xi}"
        )));
    }
    let c = atom.constants().c;
    let w2 = (c * xi) * (c * xi);
    Ok(atom
        .transitions()
        .iter()
        .map(|t| atom.partial_polarizability(t) * t.omega * t.omega / (t.omega * t.omega + w2))
        .sum())
}

/// Damped dynamical polarizability on the real axis,
/// α(k) = Σ α_r ω_r²/(ω_r² − c²k² − iγck).
pub fn alpha_real(k: f64, atom: &AtomSpec) -> Result<Complex64> {
    if !(k >= 0.0) {
        return Err(Error::Domain(format!("wavenumber must be non-negative, got {k}")));
    }
    let ck = atom.constants().c * k;
    let gamma = atom.damping();
    Ok(atom
        .transitions()
        .iter()
        .map(|t| {
            let denom = Complex64::new(t.omega * t.omega - ck * ck, -gamma * ck);
            atom.partial_polarizability(t) * t.omega * t.omega / denom
        })
        .sum())
}
