//! Regime classification from the three dimensionless ratios.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::model::atom::AtomSpec;
use crate::model::kinematics::{check_accel, check_separation};

/// A ratio at or below this is "much smaller than one".
pub const SMALL: f64 = 0.1;
/// A ratio at or above this is "much larger than one".
pub const LARGE: f64 = 10.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Zone {
    Near,
    Crossover,
    Far,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AccelClass {
    Low,
    Crossover,
    High,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ArClass {
    Small,
    Crossover,
    Large,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Regime {
    pub zone: Zone,
    pub acceleration: AccelClass,
    pub ar_class: ArClass,
    /// Rω₀/c.
    pub r_omega_over_c: f64,
    /// a/(ω₀c).
    pub a_over_omega_c: f64,
    /// aR/c².
    pub a_r_over_c2: f64,
}

enum Band {
    Low,
    Mid,
    High,
}

fn band(x: f64) -> Band {
    if x <= SMALL {
        Band::Low
    } else if x >= LARGE {
        Band::High
    } else {
        Band::Mid
    }
}

impl Regime {
    pub fn from_ratios(r_omega_over_c: f64, a_over_omega_c: f64, a_r_over_c2: f64) -> Self {
        let zone = match band(r_omega_over_c) {
            Band::Low => Zone::Near,
            Band::Mid => Zone::Crossover,
            Band::High => Zone::Far,
        };
        let acceleration = match band(a_over_omega_c) {
            Band::Low => AccelClass::Low,
            Band::Mid => AccelClass::Crossover,
            Band::High => AccelClass::High,
        };
        let ar_class = match band(a_r_over_c2) {
            Band::Low => ArClass::Small,
            Band::Mid => ArClass::Crossover,
            Band::High => ArClass::Large,
        };
        Self {
            zone,
            acceleration,
            ar_class,
            r_omega_over_c,
            a_over_omega_c,
            a_r_over_c2,
        }
    }

    /// True when the classifications agree with the stored ratios.
    pub fn is_consistent(&self) -> bool {
        let again = Self::from_ratios(self.r_omega_over_c, self.a_over_omega_c, self.a_r_over_c2);
        again.zone == self.zone
            && again.acceleration == self.acceleration
            && again.ar_class == self.ar_class
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let zone = match self.zone {
            Zone::Near => "near",
            Zone::Crossover => "crossover",
            Zone::Far => "far",
        };
        let acc = match self.acceleration {
            AccelClass::Low => "low",
            AccelClass::Crossover => "crossover",
            AccelClass::High => "high",
        };
        let ar = match self.ar_class {
            ArClass::Small => "small",
            ArClass::Crossover => "crossover",
            ArClass::Large => "large",
        };
        write!(f, "{zone}/{acc}/{ar}")
    }
}

pub fn classify_regime(r: f64, a: f64, atom: &AtomSpec) -> Result<Regime> {
    check_separation(r)?;
    check_accel(a)?;
    let c = atom.constants().c;
    let w0 = atom.omega0();
    Ok(Regime::from_ratios(r * w0 / c, a / (w0 * c), a * r / (c * c)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::units::UnitMode;
    use proptest::prelude::*;

    fn atom() -> AtomSpec {
        AtomSpec::two_level(1.0, 1.0, None, UnitMode::Natural).unwrap()
    }

    #[test]
    fn examples() {
        let r = classify_regime(0.01, 0.0, &atom()).unwrap();
        assert_eq!((r.zone, r.acceleration, r.ar_class), (Zone::Near, AccelClass::Low, ArClass::Small));

        // thresholds are inclusive: aR/c² = 0.1 is still small
        let r = classify_regime(100.0, 1e-3, &atom()).unwrap();
        assert_eq!((r.zone, r.acceleration, r.ar_class), (Zone::Far, AccelClass::Low, ArClass::Small));
        assert!((r.a_r_over_c2 - 0.1).abs() < 1e-15);
        let r = classify_regime(200.0, 1e-3, &atom()).unwrap();
        assert_eq!((r.zone, r.acceleration, r.ar_class), (Zone::Far, AccelClass::Low, ArClass::Crossover));

        for a in [0.0, 1e-3, 1.0, 100.0] {
            assert_eq!(classify_regime(1.0, a, &atom()).unwrap().zone, Zone::Crossover);
        }
        assert_eq!(classify_regime(1.0, 0.0, &atom()).unwrap().to_string(), "crossover/low/small");
    }

    #[test]
    fn rejects_bad_input() {
        assert!(classify_regime(0.0, 0.0, &atom()).is_err());
        assert!(classify_regime(1.0, -1.0, &atom()).is_err());
    }

    proptest! {
        #[test]
        fn classification_is_consistent(lr in -4.0f64..4.0, la in -6.0f64..3.0) {
            let reg = classify_regime(10f64.powf(lr), 10f64.powf(la), &atom()).unwrap();
            prop_assert!(reg.is_consistent());
        }
    }
}
