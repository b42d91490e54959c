//! Regime-law comparison report.
//!
//! Each check evaluates the numeric potential on its own fixed grid (in
//! units of the atom's ω₀) and compares against a closed form or an expected
//! power law. The configured sweep is run as well and its per-point failures
//! are listed.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::Serialize;

use super::config::{Method, SweepConfig};
use super::fit::fit_slope_xy;
use super::sweep::run_sweep;
use crate::asymptotics::{
    fit_a2_near_coefficient, high_ar, near_zone_inertial, potential_high_acc_closed, Law, EXPONENT_TOL,
};
use crate::cp::spectral::Scales;
use crate::cp::{potential_numeric, potential_oracle, QuadratureSpec};
use crate::error::Result;
use crate::model::atom::{alpha_static, AtomSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
    /// The check could not be computed; counts as a failure.
    Error,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub id: &'static str,
    /// Law under test, if any.
    pub law: Option<Law>,
    pub description: &'static str,
    pub status: Status,
    pub measured: Option<f64>,
    pub expected: Option<f64>,
    /// Pass threshold on |measured − expected| (absolute for exponents,
    /// relative otherwise; see `description`).
    pub tolerance: f64,
    pub detail: String,
}

impl Check {
    fn new(id: &'static str, law: Option<Law>, description: &'static str, tolerance: f64) -> Self {
        Self {
            id,
            law,
            description,
            status: Status::Skipped,
            measured: None,
            expected: None,
            tolerance,
            detail: String::new(),
        }
    }

    fn skipped(mut self, why: &str) -> Self {
        self.detail = why.to_string();
        self
    }

    fn judge(mut self, measured: f64, expected: f64, relative: bool) -> Self {
        let dev = if relative {
            ((measured - expected) / expected).abs()
        } else {
            (measured - expected).abs()
        };
        self.status = if dev <= self.tolerance { Status::Pass } else { Status::Fail };
        self.measured = Some(measured);
        self.expected = Some(expected);
        self.detail = format!("deviation {dev:e}");
        self
    }

    fn or_error(self, r: Result<Check>) -> Check {
        r.unwrap_or_else(|e| Check {
            status: Status::Error,
            detail: e.to_string(),
            ..self
        })
    }
}

/// Numeric far-zone coefficient against both normalisations of the
/// retarded R⁻⁷ term.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Normalization {
    pub measured: f64,
    /// Coefficient as printed in the closed-form law.
    pub printed: f64,
    /// Coefficient with the other placement of π.
    pub alternative: f64,
    pub ratio_to_printed: f64,
    pub ratio_to_alternative: f64,
    /// Normalisation the numeric evaluation supports, "printed" or "alternative".
    pub selected: &'static str,
}

impl Normalization {
    fn new(measured: f64, printed: f64, alternative: f64) -> Self {
        let rp = measured / printed;
        let ra = measured / alternative;
        Self {
            measured,
            printed,
            alternative,
            ratio_to_printed: rp,
            ratio_to_alternative: ra,
            selected: if (rp.ln()).abs() <= (ra.ln()).abs() { "printed" } else { "alternative" },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepSummary {
    pub rows: usize,
    /// Grid points where a requested method produced no value.
    pub failed_points: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub units: String,
    pub atom: serde_json::Value,
    pub quad: QuadratureSpec,
    /// lim R⁷V: the printed −23ħcα₀²/4 next to −23ħcα₀²/(4π).
    pub far_zone_inertial: Option<Normalization>,
    /// R⁻⁵ coefficient of V(R,a) − V(R,0): printed −ħa²α₀²/(4πc³) next to
    /// −ħa²α₀²/(4π²c³).
    pub far_zone_a2: Option<Normalization>,
    pub checks: Vec<Check>,
    pub sweep: SweepSummary,
    pub passed: bool,
}

impl Report {
    /// 0 when every executed check passed, 4 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.passed {
            0
        } else {
            4
        }
    }
}

fn log_points(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| lo * (hi / lo).powf(i as f64 / (n - 1) as f64))
        .collect()
}

/// Linear least squares y ≈ c₀ + c₁x, returning (c₀, c₁).
fn line(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let c1 = sxy / sxx;
    (my - c1 * mx, c1)
}

struct Ctx<'a> {
    atom: &'a AtomSpec,
    quad: &'a QuadratureSpec,
    s: Scales,
    alpha0: f64,
    hbar: f64,
    c: f64,
}

impl Ctx<'_> {
    /// Numeric potential at reduced (ρ, â) for each listed point.
    fn numeric(&self, pts: &[(f64, f64)]) -> Result<Vec<crate::cp::PotentialResult>> {
        pts.par_iter()
            .map(|&(rho, a)| potential_numeric(rho / self.s.k0, a * self.s.accel, self.atom, self.quad))
            .collect()
    }
}

const FAR_RHO: (f64, f64) = (50.0, 200.0);
const NEAR_RHO: [f64; 2] = [1e-2, 1e-3];
const DIFF_ACCEL: f64 = 1e-3;
const DIFF_RHO: (f64, f64) = (50.0, 500.0);
const HIGH_AR_ACCEL: f64 = 1e-2;
const HIGH_AR_PRODUCTS: [f64; 3] = [50.0, 100.0, 200.0];
const HIGH_ACC_KR: (f64, f64) = (10.0, 100.0);
const DUAL_ACCEL: (f64, f64) = (1e-3, 1e-1);
const DUAL_RHO: (f64, f64) = (0.1, 100.0);

fn inertial_far(cx: &Ctx) -> Result<(Check, Check, Normalization)> {
    let rhos = log_points(FAR_RHO.0, FAR_RHO.1, 7);
    let vals = cx.numeric(&rhos.iter().map(|&r| (r, 0.0)).collect::<Vec<_>>())?;
    let rs: Vec<f64> = rhos.iter().map(|r| r / cx.s.k0).collect();
    // R⁷V = C + D/R² + …
    let u: Vec<f64> = rs.iter().map(|r| 1.0 / (r * r)).collect();
    let y: Vec<f64> = rs.iter().zip(&vals).map(|(r, v)| r.powi(7) * v.value).collect();
    let (limit, _) = line(&u, &y);
    let printed = -23.0 * cx.hbar * cx.c * cx.alpha0 * cx.alpha0 / 4.0;
    let norm = Normalization::new(limit, printed, printed / PI);
    let coeff = Check::new(
        "inertial_far_coefficient",
        Some(Law::FarLow),
        "lim R^7 V at a = 0 over R omega0/c in [50, 200] vs -23 hbar c alpha0^2/(4 pi); relative",
        5e-3,
    )
    .judge(limit, printed / PI, true);
    let pts: Vec<(f64, Option<f64>)> = rs.iter().zip(&vals).map(|(&r, v)| (r, Some(v.value))).collect();
    let fit = fit_slope_xy(&pts, (rs[0], rs[rs.len() - 1]))?;
    let slope = Check::new(
        "inertial_far_slope",
        Some(Law::FarLow),
        "log-log slope of V at a = 0 over R omega0/c in [50, 200]; absolute",
        EXPONENT_TOL,
    )
    .judge(fit.slope, -7.0, false);
    Ok((coeff, slope, norm))
}

fn inertial_near(cx: &Ctx) -> Result<Check> {
    let c6 = near_zone_inertial(cx.atom);
    let vals = cx.numeric(&NEAR_RHO.iter().map(|&r| (r, 0.0)).collect::<Vec<_>>())?;
    let worst = NEAR_RHO
        .iter()
        .zip(&vals)
        .map(|(rho, v)| (rho / cx.s.k0).powi(6) * v.value)
        .max_by(|x, y| ((x + c6) / c6).abs().total_cmp(&((y + c6) / c6).abs()))
        .unwrap_or(f64::NAN);
    Ok(Check::new(
        "inertial_near_coefficient",
        Some(Law::Near),
        "R^6 V at a = 0 and R omega0/c in {1e-2, 1e-3} vs -C6; worst relative deviation",
        5e-3,
    )
    .judge(worst, -c6, true))
}

fn near_a2(cx: &Ctx) -> Check {
    let base = Check::new(
        "near_a2_exponents",
        None,
        "near-zone fit dV = -K a^2/R^6: R exponent vs -6 (absolute), a exponent within the same tolerance of 2, K > 0",
        EXPONENT_TOL,
    );
    base.clone().or_error(fit_a2_near_coefficient(cx.atom, cx.quad).map(|fit| {
        let mut c = base.clone().judge(fit.exponent_r, -6.0, false);
        let a_ok = (fit.exponent_a - 2.0).abs() <= EXPONENT_TOL;
        if !(a_ok && fit.coefficient > 0.0) {
            c.status = Status::Fail;
        }
        c.detail = format!(
            "exponent_a {:e}, exponent_r {:e}, K {:e} (reduced {:e}), residual {:e}",
            fit.exponent_a, fit.exponent_r, fit.coefficient, fit.coefficient_reduced, fit.residual
        );
        c
    }))
}

fn far_a2(cx: &Ctx) -> Result<(Check, Check, Normalization)> {
    let rhos = log_points(DIFF_RHO.0, DIFF_RHO.1, 9);
    let vals = cx.numeric(&rhos.iter().map(|&r| (r, DIFF_ACCEL)).collect::<Vec<_>>())?;
    let rs: Vec<f64> = rhos.iter().map(|r| r / cx.s.k0).collect();
    let delta: Vec<f64> = vals.iter().map(|v| v.parts.nonthermal_a2 + v.parts.residue_sum).collect();
    let pts: Vec<(f64, Option<f64>)> = rs.iter().zip(&delta).map(|(&r, &d)| (r, Some(d))).collect();
    let fit = fit_slope_xy(&pts, (rs[0], rs[rs.len() - 1]))?;
    let slope = Check::new(
        "far_a2_slope",
        Some(Law::FarLow),
        "log-log slope of V(R,a) - V(R,0) at a = 1e-3 omega0 c over R omega0/c in [50, 500]; absolute",
        0.1,
    )
    .judge(fit.slope, -5.0, false);

    // R⁵ΔV = C₅ + C₄R separates the R⁻⁵ term from the next order in aR/c².
    let y: Vec<f64> = rs.iter().zip(&delta).map(|(r, d)| r.powi(5) * d).collect();
    let (c5, _) = line(&rs, &y);
    let a = DIFF_ACCEL * cx.s.accel;
    let printed = -cx.hbar * a * a * cx.alpha0 * cx.alpha0 / (4.0 * PI * cx.c.powi(3));
    // The alternative carries the same 1/π as the alternative R⁻⁷ coefficient.
    let norm = Normalization::new(c5, printed, printed / PI);
    let coeff = Check::new(
        "far_a2_coefficient",
        Some(Law::FarLow),
        "R^-5 coefficient of V(R,a) - V(R,0) vs -hbar a^2 alpha0^2/(4 pi c^3); relative",
        5e-2,
    )
    .judge(c5, printed, true);
    Ok((slope, coeff, norm))
}

fn high_ar_checks(cx: &Ctx) -> Result<(Check, Check)> {
    let rhos: Vec<f64> = HIGH_AR_PRODUCTS.iter().map(|p| p / HIGH_AR_ACCEL).collect();
    let vals = cx.numeric(&rhos.iter().map(|&r| (r, HIGH_AR_ACCEL)).collect::<Vec<_>>())?;
    let a = HIGH_AR_ACCEL * cx.s.accel;
    let mut worst: (f64, f64, f64) = (0.0, f64::NAN, f64::NAN);
    let mut worst_residual: f64 = 0.0;
    for (rho, v) in rhos.iter().zip(&vals) {
        let r = rho / cx.s.k0;
        let law = high_ar(r, a, cx.atom)?.value;
        let dev = ((v.value - law) / law).abs();
        if !(dev <= worst.0) {
            worst = (dev, v.value, law);
        }
        // Diagnostic: the leading a³/R⁴ term of the numeric potential, which
        // the closed form does not contain.
        let cubic = -cx.hbar * a.powi(3) * cx.alpha0 * cx.alpha0 / (2.0 * PI * cx.c.powi(5) * r.powi(4));
        worst_residual = worst_residual.max(((v.value - cubic - law) / law).abs());
    }
    let mut agree = Check::new(
        "high_ar_agreement",
        Some(Law::HighAr),
        "numeric V vs the high-aR law at a = 1e-2 omega0 c, aR/c^2 in {50, 100, 200}; worst relative deviation",
        5e-2,
    )
    .judge(worst.1, worst.2, true);
    agree.detail = format!(
        "{}; after removing -hbar a^3 alpha0^2/(2 pi c^5 R^4) from the numeric value the worst deviation is {worst_residual:e}",
        agree.detail
    );
    let pts: Vec<(f64, Option<f64>)> = rhos
        .iter()
        .zip(&vals)
        .map(|(rho, v)| (rho / cx.s.k0, Some(v.value)))
        .collect();
    let fit = fit_slope_xy(&pts, (pts[0].0, pts[pts.len() - 1].0))?;
    let slope = Check::new(
        "high_ar_slope",
        Some(Law::HighAr),
        "log-log slope of numeric V at a = 1e-2 omega0 c, aR/c^2 in [50, 200]; absolute",
        0.1,
    )
    .judge(fit.slope, -6.0, false);
    Ok((agree, slope))
}

fn high_acc_slope(cx: &Ctx) -> Result<Check> {
    // α_B enters as a constant prefactor, so the static value stands in for it.
    let t = cx.atom.dominant_transition();
    let k_a = t.omega / cx.c;
    let a = 10.0 * cx.s.accel;
    let pts: Vec<(f64, Option<f64>)> = log_points(HIGH_ACC_KR.0, HIGH_ACC_KR.1, 11)
        .into_iter()
        .map(|x| {
            let r = x / k_a;
            (r, Some(potential_high_acc_closed(t.mu_sq, cx.alpha0, k_a, a, r, cx.c)))
        })
        .collect();
    let fit = fit_slope_xy(&pts, (pts[0].0, pts[pts.len() - 1].0))?;
    Ok(Check::new(
        "high_acc_far_slope",
        Some(Law::HighAcc),
        "log-log slope of the high-acceleration law over k_A R in [10, 100]; absolute",
        EXPONENT_TOL,
    )
    .judge(fit.slope, -2.0, false))
}

fn dual_method(cx: &Ctx) -> Result<Check> {
    let pts: Vec<(f64, f64)> = log_points(DUAL_ACCEL.0, DUAL_ACCEL.1, 5)
        .into_iter()
        .flat_map(|a| log_points(DUAL_RHO.0, DUAL_RHO.1, 5).into_iter().map(move |r| (r, a)))
        .collect();
    let diffs: Vec<f64> = pts
        .par_iter()
        .map(|&(rho, a)| {
            let (r, a) = (rho / cx.s.k0, a * cx.s.accel);
            let c = potential_numeric(r, a, cx.atom, cx.quad)?.value;
            let o = potential_oracle(r, a, cx.atom, cx.quad)?.value;
            Ok(((c - o) / c).abs())
        })
        .collect::<Result<_>>()?;
    let worst = diffs.iter().copied().fold(0.0, f64::max);
    let mut c = Check::new(
        "dual_method",
        None,
        "contour vs oracle on a 5x5 grid, a/(omega0 c) in [1e-3, 0.1], R omega0/c in [0.1, 100]; worst relative difference",
        1e-4,
    )
    .judge(worst, 0.0, false);
    c.detail = format!("worst relative difference {worst:e} over {} points", diffs.len());
    Ok(c)
}

/// Runs every check and the configured sweep.
pub fn compare_report(config: &SweepConfig) -> Result<Report> {
    config.validate()?;
    let atom = config.load_atom()?;
    let k = atom.constants();
    let cx = Ctx {
        atom: &atom,
        quad: &config.quad,
        s: Scales::of(&atom),
        alpha0: alpha_static(&atom),
        hbar: k.hbar,
        c: k.c,
    };
    let accelerated = config.a_grid.points().iter().any(|&a| a > 0.0);
    let mut checks = Vec::new();

    let far = inertial_far(&cx);
    let far_zone_inertial = match far {
        Ok((coeff, slope, norm)) => {
            checks.push(coeff);
            checks.push(slope);
            Some(norm)
        }
        Err(e) => {
            let c = Check::new("inertial_far_coefficient", Some(Law::FarLow), "far-zone inertial checks", 0.0);
            checks.push(c.or_error(Err(e)));
            None
        }
    };
    let near = Check::new("inertial_near_coefficient", Some(Law::Near), "near-zone inertial check", 5e-3);
    checks.push(near.or_error(inertial_near(&cx)));

    let mut far_zone_a2 = None;
    if accelerated {
        checks.push(near_a2(&cx));
        match far_a2(&cx) {
            Ok((slope, coeff, norm)) => {
                checks.push(slope);
                checks.push(coeff);
                far_zone_a2 = Some(norm);
            }
            Err(e) => {
                let c = Check::new("far_a2_slope", Some(Law::FarLow), "far-zone a^2 checks", 0.1);
                checks.push(c.or_error(Err(e)));
            }
        }
        match high_ar_checks(&cx) {
            Ok((agree, slope)) => {
                checks.push(agree);
                checks.push(slope);
            }
            Err(e) => {
                let c = Check::new("high_ar_agreement", Some(Law::HighAr), "high-aR checks", 5e-2);
                checks.push(c.or_error(Err(e)));
            }
        }
        let c = Check::new("high_acc_far_slope", Some(Law::HighAcc), "high-acceleration slope", EXPONENT_TOL);
        checks.push(c.or_error(high_acc_slope(&cx)));
        let c = Check::new("dual_method", None, "contour vs oracle", 1e-4);
        checks.push(c.or_error(dual_method(&cx)));
    } else {
        let why = "configuration has no non-zero acceleration";
        for (id, law) in [
            ("near_a2_exponents", None),
            ("far_a2_slope", Some(Law::FarLow)),
            ("far_a2_coefficient", Some(Law::FarLow)),
            ("high_ar_agreement", Some(Law::HighAr)),
            ("high_ar_slope", Some(Law::HighAr)),
            ("high_acc_far_slope", Some(Law::HighAcc)),
            ("dual_method", None),
        ] {
            checks.push(Check::new(id, law, "requires a > 0", 0.0).skipped(why));
        }
    }

    let rows = run_sweep(config)?;
    let failed_points = rows
        .iter()
        .filter(|r| {
            config.methods.iter().any(|m| match m {
                Method::Contour => r.v_contour.is_none(),
                Method::Oracle => r.v_oracle.is_none(),
                Method::Asymptotic => r.v_asymptotic.is_none(),
            })
        })
        .map(|r| format!("R={:e}, a={:e}: {}", r.r, r.a, r.warnings.join("; ")))
        .collect();
    if config.has(Method::Contour) && config.has(Method::Oracle) {
        let worst = rows
            .iter()
            .filter(|r| r.v_contour.is_some() && r.v_oracle.is_some())
            .filter_map(|r| r.rel_diff)
            .fold(None, |m: Option<f64>, d| Some(m.map_or(d, |m| m.max(d))));
        let c = Check::new(
            "sweep_dual_method",
            None,
            "contour vs oracle on the configured grid, points where both succeed; worst relative difference",
            1e-4,
        );
        checks.push(match worst {
            Some(w) => {
                let mut c = c.judge(w, 0.0, false);
                c.detail = format!("worst relative difference {w:e}");
                c
            }
            None => c.skipped("no grid point produced both values"),
        });
    }

    let passed = checks.iter().all(|c| matches!(c.status, Status::Pass | Status::Skipped));
    Ok(Report {
        units: config.units.to_string(),
        atom: atom.to_json(),
        quad: config.quad.clone(),
        far_zone_inertial,
        far_zone_a2,
        checks,
        sweep: SweepSummary {
            rows: rows.len(),
            failed_points,
        },
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn normalization_selects_closer() {
        let n = Normalization::new(-23.0 / (4.0 * PI), -23.0 / 4.0, -23.0 / (4.0 * PI));
        assert_eq!(n.selected, "alternative");
        assert_relative_eq!(n.ratio_to_alternative, 1.0);
        assert_relative_eq!(n.ratio_to_printed, 1.0 / PI);
    }

    #[test]
    fn line_fit() {
        let (c0, c1) = line(&[1.0, 2.0, 3.0], &[3.0, 5.0, 7.0]);
        assert_relative_eq!(c0, 1.0, epsilon = 1e-14);
        assert_relative_eq!(c1, 2.0, epsilon = 1e-14);
    }

    #[test]
    fn judge_relative_and_absolute() {
        let c = Check::new("x", None, "", 0.01).judge(1.005, 1.0, true);
        assert_eq!(c.status, Status::Pass);
        let c = Check::new("x", None, "", 0.01).judge(-6.02, -6.0, false);
        assert_eq!(c.status, Status::Fail);
    }
}
