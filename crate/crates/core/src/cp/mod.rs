//! Interatomic potential of two equally accelerated atoms.
//!
//! Two independent evaluators are provided:
//!
//! * [`potential_numeric`] rotates the wavenumber integral onto the
//!   imaginary axis and picks up the Bose-factor poles (Matsubara-style sum);
//! * [`potential_oracle`] integrates along the real axis, indenting above the
//!   atomic resonances, with an Abel convergence factor extrapolated to zero.
//!
//! Both split the occupation as `½ + ½a²/c²ω² + (1 + a²/c²ω²)B` and report
//! the three corresponding energies separately.

mod contour;
mod oracle;
pub mod retardation;
pub mod spectral;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub use contour::{potential_inertial, potential_numeric, BoseRoute, ABEL_PLANA_MAX_ACCEL, ABEL_PLANA_MAX_AR};
pub use oracle::{potential_oracle, ORACLE_MAX_ACCEL};
pub use retardation::{u_factor, u_factor_with, UForm};

use crate::asymptotics::regime::Regime;
use crate::bath::mode_occupation;
use crate::error::{Error, Result};
use crate::model::atom::{alpha_real, AtomSpec};
use crate::quad::Tolerance;

fn default_rel_tol() -> f64 {
    1e-8
}
fn default_abs_tol() -> f64 {
    1e-300
}
fn default_max_subdivisions() -> usize {
    2000
}
fn default_matsubara_rel_cutoff() -> f64 {
    1e-12
}
fn default_matsubara_hard_cap() -> usize {
    100_000
}
fn default_origin_cutoff() -> f64 {
    1e-3
}
fn default_damping_schedule() -> Vec<f64> {
    vec![1e-2, 3e-3, 1e-3]
}

/// Numerical controls shared by both evaluators.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuadratureSpec {
    #[serde(default = "default_rel_tol")]
    pub rel_tol: f64,
    /// Absolute tolerance, in the energy unit of the atom.
    #[serde(default = "default_abs_tol")]
    pub abs_tol: f64,
    #[serde(default = "default_max_subdivisions")]
    pub max_subdivisions: usize,
    /// Stop the pole sum once a term falls below this fraction of the partial sum.
    #[serde(default = "default_matsubara_rel_cutoff")]
    pub matsubara_rel_cutoff: f64,
    #[serde(default = "default_matsubara_hard_cap")]
    pub matsubara_hard_cap: usize,
    /// Below `origin_cutoff · a/c²` the Bose integrand is replaced by its
    /// leading small-k expansion and integrated in closed form.
    #[serde(default = "default_origin_cutoff")]
    pub origin_cutoff: f64,
    /// Abel factors η (in units of ω₀/c) used by the oracle, strictly decreasing.
    #[serde(default = "default_damping_schedule")]
    pub damping_schedule: Vec<f64>,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            rel_tol: default_rel_tol(),
            abs_tol: default_abs_tol(),
            max_subdivisions: default_max_subdivisions(),
            matsubara_rel_cutoff: default_matsubara_rel_cutoff(),
            matsubara_hard_cap: default_matsubara_hard_cap(),
            origin_cutoff: default_origin_cutoff(),
            damping_schedule: default_damping_schedule(),
        }
    }
}

impl QuadratureSpec {
    pub fn validate(&self) -> Result<()> {
        let positive = |name: &str, v: f64| {
            if v.is_finite() && v > 0.0 {
                Ok(())
            } else {
                Err(Error::Input(format!("{name} must be positive, got {v}")))
            }
        };
        positive("rel_tol", self.rel_tol)?;
        positive("abs_tol", self.abs_tol)?;
        positive("matsubara_rel_cutoff", self.matsubara_rel_cutoff)?;
        positive("origin_cutoff", self.origin_cutoff)?;
        if self.origin_cutoff >= 1.0 {
            return Err(Error::Input("origin_cutoff must be below 1".into()));
        }
        if self.max_subdivisions == 0 || self.matsubara_hard_cap < 2 {
            return Err(Error::Input(
                "max_subdivisions must be ≥ 1 and matsubara_hard_cap ≥ 2".into(),
            ));
        }
        let s = &self.damping_schedule;
        if s.len() < 3 {
            return Err(Error::Input("damping_schedule needs at least three values".into()));
        }
        for &eta in s {
            positive("damping_schedule entry", eta)?;
        }
        if s.windows(2).any(|w| w[1] >= w[0]) {
            return Err(Error::Input("damping_schedule must be strictly decreasing".into()));
        }
        Ok(())
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let q: Self = serde_json::from_str(s)?;
        q.validate()?;
        Ok(q)
    }

    pub(crate) fn tolerance(&self) -> Tolerance {
        Tolerance::new(self.rel_tol, 0.0, self.max_subdivisions)
    }
}

/// Additive decomposition of the potential by occupation piece.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Parts {
    /// From the zero-point ½.
    pub vacuum: f64,
    /// From the non-thermal ½a²/c²ω².
    pub nonthermal_a2: f64,
    /// From the Bose factor (1 + a²/c²ω²)B.
    pub residue_sum: f64,
}

impl Parts {
    pub fn total(&self) -> f64 {
        self.vacuum + self.nonthermal_a2 + self.residue_sum
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PotentialResult {
    pub value: f64,
    pub error_estimate: f64,
    pub parts: Parts,
    pub regime: Regime,
    pub warnings: Vec<String>,
}

/// k⁴ n(ck) e^{2ikR} U(kR) α(k)² with the damped polarizability.
///
/// Negative `r` is accepted so that the R → −R reflection can be probed.
pub fn integrand(k: f64, r: f64, a: f64, atom: &AtomSpec, form: UForm) -> Result<Complex64> {
    if !(k.is_finite() && k > 0.0) {
        return Err(Error::Domain(format!("wavenumber must be positive, got {k}")));
    }
    if !(r.is_finite() && r != 0.0) {
        return Err(Error::Domain(format!("separation must be finite and non-zero, got {r}")));
    }
    let c = atom.constants().c;
    let n = mode_occupation(c * k, a, atom.constants())?.value;
    let al = alpha_real(k, atom)?;
    let x = k * r;
    let mut e = retardation::kernel(Complex64::new(x, 0.0), form);
    if form == UForm::Retarded {
        e.im = retardation::im_kernel(x);
    }
    let r2 = r * r;
    Ok(n * al * al * e / (r2 * r2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::units::UnitMode;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    fn atom(gamma: f64) -> AtomSpec {
        AtomSpec::two_level(1.0, 1.0, Some(gamma), UnitMode::Natural).unwrap()
    }

    #[test]
    fn quadrature_defaults_validate() {
        QuadratureSpec::default().validate().unwrap();
        let q = QuadratureSpec::from_json_str(r#"{"rel_tol":1e-8}"#).unwrap();
        assert_eq!(q.rel_tol, 1e-8);
        assert_eq!(q.damping_schedule, vec![1e-2, 3e-3, 1e-3]);
        assert!(QuadratureSpec::from_json_str(r#"{"damping_schedule":[1e-2,1e-3]}"#).is_err());
        assert!(QuadratureSpec::from_json_str(r#"{"damping_schedule":[1e-3,3e-3,1e-2]}"#).is_err());
        assert!(QuadratureSpec::from_json_str(r#"{"rel_tol":0}"#).is_err());
        assert!(QuadratureSpec::from_json_str(r#"{"bogus":1}"#).is_err());
    }

    #[test]
    fn vacuum_occupation_is_one_half() {
        let at = atom(1e-6);
        for k in [0.01, 0.3, 2.0] {
            let v = integrand(k, 3.0, 0.0, &at, UForm::Retarded).unwrap();
            let x = k * 3.0;
            let al = alpha_real(k, &at).unwrap();
            let direct = 0.5
                * k.powi(4)
                * (Complex64::i() * 2.0 * x).exp()
                * u_factor_with(Complex64::new(x, 0.0), UForm::Retarded).unwrap()
                * al
                * al;
            assert!((v - direct).norm() <= 1e-9 * direct.norm());
        }
    }

    #[test]
    fn reflection_flips_imaginary_part() {
        let at = atom(1e-30);
        for k in [0.05, 0.5, 3.0] {
            let p = integrand(k, 2.0, 0.3, &at, UForm::Retarded).unwrap();
            let m = integrand(k, -2.0, 0.3, &at, UForm::Retarded).unwrap();
            assert_relative_eq!(m.im, -p.im, max_relative = 1e-6);
        }
    }

    #[test]
    fn small_k_printed_form() {
        // Im ≈ (12/R³) α₀² a³/(2π) k⁻²: the printed kernel leaves an O(x) imaginary part.
        let at = atom(1e-30);
        let (r, a): (f64, f64) = (2.0, 0.5);
        let lead = 12.0 / r.powi(3) * a.powi(3) / (2.0 * PI);
        let ratios: Vec<f64> = [1e-4, 1e-5]
            .iter()
            .map(|&k| integrand(k, r, a, &at, UForm::Printed).unwrap().im * k * k / lead)
            .collect();
        for q in &ratios {
            assert_relative_eq!(*q, 1.0, max_relative = 1e-3);
        }
    }

    #[test]
    fn small_k_retarded_form() {
        // Retarded kernel: Im ≈ (22/15) R α₀² a³/(2π) k², integrable at the origin.
        let at = atom(1e-30);
        let (r, a): (f64, f64) = (2.0, 0.5);
        let lead = 22.0 / 15.0 * r * a.powi(3) / (2.0 * PI);
        for k in [1e-4, 1e-5] {
            let q = integrand(k, r, a, &at, UForm::Retarded).unwrap().im / (k * k) / lead;
            assert_relative_eq!(q, 1.0, max_relative = 1e-3);
        }
    }

    #[test]
    fn integrand_rejects_bad_arguments() {
        let at = atom(1e-6);
        assert!(integrand(0.0, 1.0, 0.0, &at, UForm::Retarded).is_err());
        assert!(integrand(1.0, 0.0, 0.0, &at, UForm::Retarded).is_err());
        assert!(integrand(1.0, 1.0, -1.0, &at, UForm::Retarded).is_err());
    }
}
