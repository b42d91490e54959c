//! Closed-form regime laws.

use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::regime::{classify_regime, AccelClass, ArClass, Zone};
use crate::bath::Approximation;
use crate::error::{Error, Result};
use crate::model::atom::{alpha_real, alpha_static, AtomSpec};
use crate::model::kinematics::{check_accel, check_separation};

/// The four closed-form laws.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Law {
    /// Inertial near zone, −C₆/R⁶.
    Near,
    /// Far zone at low acceleration, R⁻⁷ plus an a²R⁻⁵ correction.
    FarLow,
    /// aR/c² ≫ 1, linear in a and ∝ R⁻⁶.
    HighAr,
    /// a ≫ ω₀c, one atom spontaneously excited.
    HighAcc,
}

impl Law {
    pub const ALL: [Law; 4] = [Law::Near, Law::FarLow, Law::HighAr, Law::HighAcc];

    pub fn name(self) -> &'static str {
        match self {
            Law::Near => "near",
            Law::FarLow => "far-low",
            Law::HighAr => "high-ar",
            Law::HighAcc => "high-acc",
        }
    }

    /// Human-readable formula, used to label law values in outputs.
    pub fn formula(self) -> &'static str {
        match self {
            Law::Near => "V = -C6/R^6, C6 = (2/3) sum_rs mu_r^2 mu_s^2/(E_r + E_s)",
            Law::FarLow => "V = -23 hbar c alpha0^2/(4 R^7) - hbar a^2 alpha0^2/(4 pi c^3 R^5)",
            Law::HighAr => "V = -(6 hbar a alpha0^2/(pi c R^6)) (1/4 + pi^2/12)",
            Law::HighAcc => {
                "dE = -(2/3) muA^2 alphaB(kA) a^3 kA/(pi c^6 R^2) [1 + 1/(kA R)^2 + 3/(kA R)^4]"
            }
        }
    }
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Law {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Law::ALL
            .into_iter()
            .find(|l| l.name() == s)
            .ok_or_else(|| Error::Input(format!("unknown law {s:?} (near, far-low, high-ar, high-acc)")))
    }
}

/// C₆ = (2/3) Σ_{r,s} μ_r²μ_s²/(E_r + E_s), so that V = −C₆/R⁶.
pub fn near_zone_inertial(atom: &AtomSpec) -> f64 {
    let hbar = atom.constants().hbar;
    let ts = atom.transitions();
    let mut sum = 0.0;
    for r in ts {
        for s in ts {
            sum += r.mu_sq * s.mu_sq / (hbar * (r.omega + s.omega));
        }
    }
    2.0 / 3.0 * sum
}

/// Far-zone, low-acceleration law with its two terms kept apart.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FarLowAcc {
    /// −23ħcα₀²/(4R⁷), coefficient as printed.
    pub retarded: f64,
    /// −ħa²α₀²/(4πc³R⁵).
    pub unruh: f64,
    /// retarded + unruh.
    pub total: f64,
    /// −23ħcα₀²/(4πR⁷), the conventionally normalised retarded term.
    pub retarded_literature: f64,
    /// retarded_literature + unruh.
    pub total_literature: f64,
}

impl FarLowAcc {
    /// |unruh/retarded| = a²R²/(23πc⁴).
    pub fn correction_ratio(&self) -> f64 {
        if self.retarded == 0.0 {
            0.0
        } else {
            (self.unruh / self.retarded).abs()
        }
    }

    /// d ln|V|/d ln R of the printed total.
    pub fn log_slope(&self) -> f64 {
        (-7.0 * self.retarded - 5.0 * self.unruh) / self.total
    }
}

pub fn far_low_acc(r: f64, a: f64, atom: &AtomSpec) -> Result<FarLowAcc> {
    check_separation(r)?;
    check_accel(a)?;
    let k = atom.constants();
    let a0 = alpha_static(atom);
    let retarded = -23.0 * k.hbar * k.c * a0 * a0 / (4.0 * r.powi(7));
    let unruh = -k.hbar * a * a * a0 * a0 / (4.0 * PI * k.c.powi(3) * r.powi(5));
    Ok(FarLowAcc {
        retarded,
        unruh,
        total: retarded + unruh,
        retarded_literature: retarded / PI,
        total_literature: retarded / PI + unruh,
    })
}

/// The large-aR/c² law, −(6ħaα₀²/(πcR⁶))(1/4 + π²/12).
///
/// Besides aR/c² ≫ 1 the law assumes the atoms stay in their ground state,
/// a ≪ ω₀c; values outside either condition carry a warning.
pub fn high_ar(r: f64, a: f64, atom: &AtomSpec) -> Result<Approximation> {
    check_separation(r)?;
    check_accel(a)?;
    let k = atom.constants();
    let mut warnings = Vec::new();
    if a == 0.0 {
        warnings.push("high-aR law does not apply at a = 0".to_string());
        return Ok(Approximation { value: 0.0, warnings });
    }
    let reg = classify_regime(r, a, atom)?;
    if reg.ar_class != ArClass::Large {
        warnings.push(format!(
            "aR/c^2 = {:.3e} is not large; high-aR law outside its range",
            reg.a_r_over_c2
        ));
    }
    if reg.acceleration != AccelClass::Low {
        warnings.push(format!(
            "a/(omega0 c) = {:.3e} is not small; high-aR law assumes ground-state atoms",
            reg.a_over_omega_c
        ));
    }
    let a0 = alpha_static(atom);
    let value = -6.0 * k.hbar * a * a0 * a0 / (PI * r.powi(6) * k.c) * (0.25 + PI * PI / 12.0);
    Ok(Approximation { value, warnings })
}

/// 1 + 1/x² + 3/x⁴ with x = k_A R.
pub fn high_acc_bracket(x: f64) -> f64 {
    let y = 1.0 / (x * x);
    1.0 + y + 3.0 * y * y
}

/// d ln|ΔE|/d ln R of the high-acceleration law at x = k_A R.
pub fn high_acc_log_slope(x: f64) -> f64 {
    let y = 1.0 / (x * x);
    -2.0 - (2.0 * y + 12.0 * y * y) / high_acc_bracket(x)
}

/// −(2/3) μ_A² α_B a³ k_A/(πR²c⁶) · [1 + 1/(k_AR)² + 3/(k_AR)⁴].
pub fn potential_high_acc_closed(mu_a_sq: f64, alpha_b: f64, k_a: f64, a: f64, r: f64, c: f64) -> f64 {
    -2.0 / 3.0 * mu_a_sq * alpha_b * a.powi(3) * k_a / (PI * r * r * c.powi(6)) * high_acc_bracket(k_a * r)
}

/// High-acceleration energy shift with atom A (its dominant transition) as
/// the excited emitter and atom B responding at k_A.
pub fn potential_high_acc(r: f64, a: f64, atom_a: &AtomSpec, atom_b: &AtomSpec) -> Result<Approximation> {
    check_separation(r)?;
    check_accel(a)?;
    if atom_a.units() != atom_b.units() {
        return Err(Error::Input("both atoms must use the same unit system".into()));
    }
    if a == 0.0 {
        return Err(Error::Domain("high-acceleration law needs a > 0".into()));
    }
    let c = atom_a.constants().c;
    let t = atom_a.dominant_transition();
    let k_a = t.omega / c;
    let alpha_b = alpha_real(k_a, atom_b)?;
    let mut warnings = Vec::new();
    let gamma = atom_b.damping();
    if atom_b.transitions().iter().any(|s| (s.omega - t.omega).abs() <= gamma) {
        warnings.push(format!(
            "atom B has a resonance within its damping width of omega_A = {:e}; alpha_B is resonance-dominated",
            t.omega
        ));
    }
    if classify_regime(r, a, atom_a)?.acceleration != AccelClass::High {
        warnings.push("a is not large compared with omega0 c; high-acceleration law outside its range".into());
    }
    Ok(Approximation {
        value: potential_high_acc_closed(t.mu_sq, alpha_b.re, k_a, a, r, c),
        warnings,
    })
}

/// A law evaluated at one point.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LawValue {
    pub law: Law,
    pub formula: &'static str,
    pub value: f64,
    pub warnings: Vec<String>,
}

/// Evaluates `law` for two identical atoms. The near law ignores a; its a²
/// coefficient is only available numerically.
pub fn evaluate_law(law: Law, r: f64, a: f64, atom: &AtomSpec) -> Result<LawValue> {
    check_separation(r)?;
    check_accel(a)?;
    let (value, warnings) = match law {
        Law::Near => {
            let mut w = Vec::new();
            if a > 0.0 {
                w.push("near law gives the inertial term only; the a^2 correction is not included".into());
            }
            (-near_zone_inertial(atom) / r.powi(6), w)
        }
        Law::FarLow => (far_low_acc(r, a, atom)?.total, Vec::new()),
        Law::HighAr => {
            let v = high_ar(r, a, atom)?;
            (v.value, v.warnings)
        }
        Law::HighAcc => {
            let v = potential_high_acc(r, a, atom, atom)?;
            (v.value, v.warnings)
        }
    };
    Ok(LawValue {
        law,
        formula: law.formula(),
        value,
        warnings,
    })
}

/// The law that applies at (R, a), if the point lies inside one of the
/// regimes covered by a closed form.
pub fn law_for_point(r: f64, a: f64, atom: &AtomSpec) -> Result<Option<Law>> {
    let reg = classify_regime(r, a, atom)?;
    Ok(match (reg.zone, reg.acceleration, reg.ar_class) {
        (_, AccelClass::High, _) => Some(Law::HighAcc),
        (_, AccelClass::Low, ArClass::Large) => Some(Law::HighAr),
        (Zone::Far, AccelClass::Low, ArClass::Small) => Some(Law::FarLow),
        (Zone::Near, AccelClass::Low, ArClass::Small) => Some(Law::Near),
        _ => None,
    })
}
