//! Casimir-Polder interaction energy between two atoms sharing a uniform
//! proper acceleration, evaluated in the electromagnetic Unruh bath.
//!
//! The crate is organised bottom-up:
//!
//! * [`model`] — atoms, kinematics, units and the validity window;
//! * [`bath`] — Unruh-bath mode occupation and Bose-factor poles;
//! * [`cp`] — the potential itself, by contour rotation and by a real-axis oracle;
//! * [`asymptotics`] — regime classification and closed-form regime laws;
//! * [`explorer`] — grid sweeps, power-law fits and the comparison report.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod asymptotics;
pub mod bath;
pub mod cp;
pub mod error;
pub mod explorer;
pub mod model;
pub mod quad;

pub use error::{Error, Result};
