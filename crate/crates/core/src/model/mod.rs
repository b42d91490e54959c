//! Atoms, kinematics and unit systems shared by every evaluator.

pub mod atom;
pub mod kinematics;
pub mod units;

pub use atom::{alpha_imag, alpha_real, alpha_static, AtomSpec, Transition};
pub use kinematics::{validity_check, KinematicConfig, Validity, ValidityReport};
pub use units::{Constants, NaturalScale, Quantity, UnitMode};
