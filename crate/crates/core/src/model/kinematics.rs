//! Proper acceleration, separation and the timescale window.

use serde::{Deserialize, Serialize};

use super::atom::AtomSpec;
use crate::error::{Error, Result};

/// Common proper acceleration of both atoms and their (orthogonal) separation.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct KinematicConfig {
    a: f64,
    r: f64,
}

impl KinematicConfig {
    pub fn new(a: f64, r: f64) -> Result<Self> {
        check_accel(a)?;
        check_separation(r)?;
        Ok(Self { a, r })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn r(&self) -> f64 {
        self.r
    }
}

pub(crate) fn check_accel(a: f64) -> Result<()> {
    if !(a.is_finite() && a >= 0.0) {
        return Err(Error::Domain(format!(
            "acceleration must be finite and non-negative, got {a}"
        )));
    }
    Ok(())
}

pub(crate) fn check_separation(r: f64) -> Result<()> {
    if !(r.is_finite() && r > 0.0) {
        return Err(Error::Domain(format!(
            "separation must be finite and positive, got {r}"
        )));
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Validity {
    /// ω₀c/a ≥ 10: the atoms stay in their ground state.
    Valid,
    /// 0.1 < ω₀c/a < 10.
    Marginal,
    /// ω₀c/a ≤ 0.1: spontaneous excitation dominates; use the high-acceleration law.
    Excited,
}

/// Ratio between the bath correlation time c/a and the atomic time 1/ω₀.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ValidityReport {
    /// ω₀c/a (infinite at a = 0).
    pub ratio: f64,
    /// Lower edge of the admissible timescale window, 1/ω₀.
    pub tau_min: f64,
    /// Upper edge, c/a (infinite at a = 0).
    pub tau_max: f64,
    pub flag: Validity,
}

pub const VALID_RATIO: f64 = 10.0;
pub const EXCITED_RATIO: f64 = 0.1;

pub fn validity_check(a: f64, atom: &AtomSpec) -> Result<ValidityReport> {
    check_accel(a)?;
    let omega0 = atom.omega0();
    let c = atom.constants().c;
    let (ratio, tau_max) = if a == 0.0 {
        (f64::INFINITY, f64::INFINITY)
    } else {
        (omega0 * c / a, c / a)
    };
    let flag = if ratio >= VALID_RATIO {
        Validity::Valid
    } else if ratio > EXCITED_RATIO {
        Validity::Marginal
    } else {
        Validity::Excited
    };
    Ok(ValidityReport {
        ratio,
        tau_min: 1.0 / omega0,
        tau_max,
        flag,
    })
}
