//! Closed-form regime laws, the regime classifier and the numerically
//! extracted near-zone a² coefficient.

mod fit;
mod laws;
pub mod regime;

pub use fit::{fit_a2_near_coefficient, A2Fit, A2_FIT_ACCEL, A2_FIT_SEPARATION, EXPONENT_TOL};
pub use laws::{
    evaluate_law, far_low_acc, high_acc_bracket, high_acc_log_slope, high_ar, law_for_point,
    near_zone_inertial, potential_high_acc, potential_high_acc_closed, FarLowAcc, Law, LawValue,
};
pub use regime::{classify_regime, AccelClass, ArClass, Regime, Zone};
