//! Electromagnetic Unruh-bath occupation.
//!
//! For a uniformly accelerated observer the field modes are populated as
//!
//! ```text
//! n(ω) = ½ (1 + a²/c²ω²) (1 + 2B),   B = 1/(e^{2πcω/a} − 1)
//! ```
//!
//! which is the Planck spectrum at the Unruh temperature ħa/(2πck_B) times a
//! non-thermal factor that only the vector field carries.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::units::Constants;

/// Bose exponents beyond this are treated as zero occupation.
pub const EXP_OVERFLOW_GUARD: f64 = 700.0;

/// Occupation per mode with its additive breakdown; `value = ½ + thermal + nonthermal`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct OccupationValue {
    pub value: f64,
    /// Bose factor B.
    pub thermal_part: f64,
    /// ½(a²/c²ω²)(1 + 2B).
    pub nonthermal_part: f64,
}

/// A leading-order estimate that may be outside its range of validity.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Approximation {
    pub value: f64,
    pub warnings: Vec<String>,
}

/// 1/(eˣ − 1) for x > 0, returning 0 beyond the overflow guard.
pub fn bose(x: f64) -> f64 {
    if x > EXP_OVERFLOW_GUARD {
        0.0
    } else {
        let e = (-x).exp();
        e / -(-x).exp_m1()
    }
}

fn check_omega(omega: f64) -> Result<()> {
    if !(omega.is_finite() && omega > 0.0) {
        return Err(Error::Domain(format!("frequency must be positive, got {omega}")));
    }
    Ok(())
}

fn check_accel(a: f64) -> Result<()> {
    if !(a.is_finite() && a >= 0.0) {
        return Err(Error::Domain(format!(
            "acceleration must be finite and non-negative, got {a}"
        )));
    }
    Ok(())
}

pub fn mode_occupation(omega: f64, a: f64, consts: Constants) -> Result<OccupationValue> {
    check_omega(omega)?;
    check_accel(a)?;
    if a == 0.0 {
        return Ok(OccupationValue {
            value: 0.5,
            thermal_part: 0.0,
            nonthermal_part: 0.0,
        });
    }
    let c = consts.c;
    let b = bose(2.0 * std::f64::consts::PI * c * omega / a);
    let s = a / (c * omega);
    let nonthermal = 0.5 * s * s * (1.0 + 2.0 * b);
    Ok(OccupationValue {
        value: 0.5 + b + nonthermal,
        thermal_part: b,
        nonthermal_part: nonthermal,
    })
}

/// Resonant high-acceleration estimate a³/(2πc³ω³).
pub fn occupation_highacc(omega: f64, a: f64, consts: Constants) -> Result<Approximation> {
    check_omega(omega)?;
    check_accel(a)?;
    let mut warnings = Vec::new();
    if a == 0.0 {
        warnings.push("high-acceleration occupation is meaningless at a = 0".to_string());
    } else if a < 10.0 * consts.c * omega {
        warnings.push(format!(
            "a/(cω) = {:.3e} is not large; the resonant estimate is inaccurate",
            a / (consts.c * omega)
        ));
    }
    let y = a / (consts.c * omega);
    Ok(Approximation {
        value: y * y * y / (2.0 * std::f64::consts::PI),
        warnings,
    })
}

/// Positions n·a/c² (n = 1..=n_max) of the Bose-factor poles on the positive
/// imaginary wavenumber axis. Empty for a = 0.
pub fn bose_poles(a: f64, n_max: usize, consts: Constants) -> Result<Vec<f64>> {
    check_accel(a)?;
    if n_max == 0 {
        return Err(Error::Domain("n_max must be at least 1".into()));
    }
    if a == 0.0 {
        return Ok(Vec::new());
    }
    let step = a / (consts.c * consts.c);
    Ok((1..=n_max).map(|n| n as f64 * step).collect())
}

/// Unruh temperature expressed as an energy, k_B T = ħa/(2πc).
pub fn unruh_temperature(a: f64, consts: Constants) -> f64 {
    consts.hbar * a / (2.0 * std::f64::consts::PI * consts.c)
}

/// Planck occupation ½ + 1/(e^{ħω/k_BT} − 1) (zero-point included).
pub fn planck_occupation(omega: f64, k_t: f64, consts: Constants) -> Result<f64> {
    check_omega(omega)?;
    if k_t == 0.0 {
        return Ok(0.5);
    }
    if !(k_t > 0.0) {
        return Err(Error::Domain(format!("temperature must be non-negative, got {k_t}")));
    }
    Ok(0.5 + bose(consts.hbar * omega / k_t))
}
