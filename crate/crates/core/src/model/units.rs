//! Unit systems.
//!
//! Two modes are supported:
//!
//! | Mode      | ħ                    | c              | natural scale             |
//! |-----------|----------------------|----------------|---------------------------|
//! | `natural` | 1                    | 1              | lowest transition ω₀      |
//! | `si`      | 1.054571817e-34 J·s  | 299792458 m/s  | —                         |
//!
//! Microscopic quantities follow the Gaussian convention (no 4πε₀): the
//! polarizability is a volume and μ² has dimension energy × volume. In SI
//! mode these are therefore α/(4πε₀) in m³ and μ²/(4πε₀) in J·m³.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Reduced Planck constant, J·s (exact, SI 2019).
pub const HBAR_SI: f64 = 1.054_571_817e-34;
/// Speed of light in vacuum, m/s (exact).
pub const C_SI: f64 = 299_792_458.0;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum UnitMode {
    #[default]
    Natural,
    Si,
}

impl UnitMode {
    pub fn constants(self) -> Constants {
        match self {
            UnitMode::Natural => Constants::NATURAL,
            UnitMode::Si => Constants::SI,
        }
    }
}

impl FromStr for UnitMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "natural" => Ok(UnitMode::Natural),
            "si" => Ok(UnitMode::Si),
            other => Err(Error::Input(format!("unknown unit mode `{other}`"))),
        }
    }
}

impl fmt::Display for UnitMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UnitMode::Natural => f.write_str("natural"),
            UnitMode::Si => f.write_str("si"),
        }
    }
}

/// The two constants every formula needs.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Constants {
    pub hbar: f64,
    pub c: f64,
}

impl Constants {
    pub const NATURAL: Constants = Constants { hbar: 1.0, c: 1.0 };
    pub const SI: Constants = Constants {
        hbar: HBAR_SI,
        c: C_SI,
    };
}

/// Physical dimension of a quantity that crosses the natural/SI boundary.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Quantity {
    Frequency,
    Wavenumber,
    Time,
    Length,
    Acceleration,
    Energy,
    Polarizability,
    DipoleSquared,
}

/// Natural units anchored to a reference angular frequency (rad/s).
///
/// One natural unit of each quantity expressed in SI:
/// time 1/ω, length c/ω, acceleration cω, energy ħω, polarizability (c/ω)³,
/// squared dipole ħω·(c/ω)³.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NaturalScale {
    omega_ref: f64,
}

impl NaturalScale {
    pub fn new(omega_ref: f64) -> Result<Self> {
        if !(omega_ref.is_finite() && omega_ref > 0.0) {
            return Err(Error::Domain(format!(
                "reference frequency must be positive, got {omega_ref}"
            )));
        }
        Ok(Self { omega_ref })
    }

    pub fn omega_ref(&self) -> f64 {
        self.omega_ref
    }

    /// SI value of one natural unit of `q`.
    pub fn unit(&self, q: Quantity) -> f64 {
        let w = self.omega_ref;
        let length = C_SI / w;
        match q {
            Quantity::Frequency => w,
            Quantity::Wavenumber => w / C_SI,
            Quantity::Time => 1.0 / w,
            Quantity::Length => length,
            Quantity::Acceleration => C_SI * w,
            Quantity::Energy => HBAR_SI * w,
            Quantity::Polarizability => length * length * length,
            Quantity::DipoleSquared => HBAR_SI * w * length * length * length,
        }
    }

    pub fn to_si(&self, q: Quantity, natural: f64) -> f64 {
        natural * self.unit(q)
    }

    pub fn from_si(&self, q: Quantity, si: f64) -> f64 {
        si / self.unit(q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const ALL: [Quantity; 8] = [
        Quantity::Frequency,
        Quantity::Wavenumber,
        Quantity::Time,
        Quantity::Length,
        Quantity::Acceleration,
        Quantity::Energy,
        Quantity::Polarizability,
        Quantity::DipoleSquared,
    ];

    #[test]
    fn constants_positive() {
        for mode in [UnitMode::Natural, UnitMode::Si] {
            let k = mode.constants();
            assert!(k.hbar > 0.0 && k.c > 0.0);
        }
    }

    #[test]
    fn parse_modes() {
        assert_eq!("natural".parse::<UnitMode>().unwrap(), UnitMode::Natural);
        assert_eq!("SI".parse::<UnitMode>().unwrap(), UnitMode::Si);
        assert!("cgs".parse::<UnitMode>().is_err());
    }

    #[test]
    fn rejects_bad_reference() {
        assert!(NaturalScale::new(0.0).is_err());
        assert!(NaturalScale::new(-1.0).is_err());
        assert!(NaturalScale::new(f64::NAN).is_err());
    }

    #[test]
    fn polarizability_unit_is_cubed_length() {
        let s = NaturalScale::new(2.0e15).unwrap();
        let l = s.unit(Quantity::Length);
        assert!((s.unit(Quantity::Polarizability) / (l * l * l) - 1.0).abs() < 1e-15);
    }

    proptest! {
        #[test]
        fn natural_si_round_trip(log_w in 10.0f64..18.0, log_v in -30.0f64..30.0, idx in 0usize..8) {
            let s = NaturalScale::new(10f64.powf(log_w)).unwrap();
            let v = 10f64.powf(log_v);
            let q = ALL[idx];
            let back = s.from_si(q, s.to_si(q, v));
            prop_assert!(((back - v) / v).abs() <= 1e-12);
        }
    }
}
