//! Contour-rotated evaluation.
//!
//! With G(κ) = e^{2iκρ}Q(κρ)α(κ)²/ρ⁴ and P(ξ) = G(iξ), the three occupation
//! pieces give
//!
//! ```text
//! Im ∫ ½ G           =  ½ ∫₀^∞ P dξ
//! Im ∫ (a²/2κ²) G    = −(a²/2) ∫₀^∞ P'(ξ)/ξ dξ          (finite part of ∫P/ξ²)
//! Im ∫ n G  (total)  =  (a/2) Σ_{n≥2} (1 − 1/n²) P(na) + (π/2) Res_{κ=0}[nG]
//! ```
//!
//! The Bose piece is the total minus the first two. When aρ and a are both
//! small that difference cancels badly, and the Bose piece is integrated
//! directly on the real axis instead, where its integrand is regular and
//! exponentially cut off beyond κ ~ a (Abel–Plana form).

use std::f64::consts::PI;

use super::spectral::{ReducedAtom, Scales};
use super::{retardation::im_kernel, Parts, PotentialResult, QuadratureSpec};
use crate::asymptotics::regime::classify_regime;
use crate::bath::bose;
use crate::error::{Error, Result};
use crate::model::atom::AtomSpec;
use crate::model::kinematics::{check_accel, check_separation, validity_check, Validity};
use crate::quad::{integrate, integrate_to_infinity, Tolerance};

/// Largest a/(ω₀c) for which the Bose piece may be integrated on the real axis.
pub const ABEL_PLANA_MAX_ACCEL: f64 = 0.05;
/// Largest aR/c² for which the Bose piece may be integrated on the real axis.
pub const ABEL_PLANA_MAX_AR: f64 = 1.0;
/// The real-axis Bose integral stops at this multiple of a/c² (B ≈ e⁻⁵⁰ there).
const BOSE_WINDOW: f64 = 8.0;
/// Below this aR/c² the pole sum needs many terms.
const SLOW_SUM_AR: f64 = 1e-3;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoseRoute {
    /// Real-axis integral of the Bose piece.
    AbelPlana,
    /// Pole sum minus the imaginary-axis integrals.
    Matsubara,
}

impl BoseRoute {
    pub fn select(a_hat: f64, rho: f64) -> Self {
        if a_hat <= ABEL_PLANA_MAX_ACCEL && a_hat * rho <= ABEL_PLANA_MAX_AR {
            BoseRoute::AbelPlana
        } else {
            BoseRoute::Matsubara
        }
    }
}

/// Dimensionless Im-integrals (before the −2/(πρ²) prefactor).
#[derive(Clone, Copy, Debug, Default)]
pub(crate) struct ReducedParts {
    pub vacuum: f64,
    pub a2: f64,
    pub bose: f64,
    pub error: f64,
}

pub(crate) fn decay_scale(rho: f64) -> f64 {
    (0.5 / rho).min(1.0)
}

fn quad_err(tol: Tolerance) -> impl Fn(Error) -> Error {
    move |e| match e {
        Error::Numerical {
            message,
            partial,
            error,
        } => Error::Numerical {
            message: format!("{message} (rel_tol {:e})", tol.rel),
            partial,
            error,
        },
        other => other,
    }
}

pub(crate) fn vacuum_integral(red: &ReducedAtom, rho: f64, tol: Tolerance) -> Result<(f64, f64)> {
    let r = integrate_to_infinity(|xi: f64| red.p(xi, rho), 0.0, decay_scale(rho), tol)
        .map_err(quad_err(tol))?;
    Ok((0.5 * r.value, 0.5 * r.error))
}

pub(crate) fn a2_integral(red: &ReducedAtom, rho: f64, a: f64, tol: Tolerance) -> Result<(f64, f64)> {
    let r = integrate_to_infinity(|xi: f64| red.dp_over_xi(xi, rho), 0.0, decay_scale(rho), tol)
        .map_err(quad_err(tol))?;
    let f = 0.5 * a * a;
    Ok((-f * r.value, f * r.error))
}

/// Real-axis Bose integral ∫(1 + a²/κ²)B(κ)α(κ)²Im E(κρ)/ρ⁴ dκ.
fn bose_abel_plana(
    red: &ReducedAtom,
    rho: f64,
    a: f64,
    quad: &QuadratureSpec,
) -> Result<(f64, f64)> {
    let kc = quad.origin_cutoff * a;
    let r4 = rho.powi(4);
    let f = |k: f64| {
        let al = red.alpha_real(k);
        let s = a / k;
        (1.0 + s * s) * bose(2.0 * PI * k / a) * al * al * im_kernel(k * rho) / r4
    };
    let tol = quad.tolerance();
    let r = integrate(f, kc, BOSE_WINDOW * a, tol).map_err(quad_err(tol))?;
    // (1 + a²/κ²)B → a³/(2πκ³) − a²/(2κ²), Im E → (22/15)(κρ)⁵
    let a0 = red.alpha0();
    let lead = 22.0 / 15.0 * a0 * a0 * rho;
    let origin = lead * (a * a * a / (2.0 * PI) * kc.powi(3) / 3.0 - 0.5 * a * a * kc.powi(4) / 4.0);
    Ok((r.value + origin, r.error + 1e-3 * origin.abs()))
}

struct PoleSum {
    value: f64,
    error: f64,
    terms: usize,
    capped: bool,
}

/// (a/2) Σ_{n≥2}(1 − 1/n²)P(na) + (π/2)·Res₀, with an integral tail estimate.
fn pole_sum(red: &ReducedAtom, rho: f64, a: f64, quad: &QuadratureSpec) -> Result<PoleSum> {
    let origin = 0.5 * PI * red.origin_residue(a, rho);
    let mut sum = 0.0;
    let mut n = 2usize;
    let mut capped = true;
    while n <= quad.matsubara_hard_cap {
        let nf = n as f64;
        let term = 0.5 * a * (1.0 - 1.0 / (nf * nf)) * red.p(nf * a, rho);
        sum += term;
        if term.abs() < quad.matsubara_rel_cutoff * (sum + origin).abs() {
            capped = false;
            break;
        }
        n += 1;
    }
    let last = n.min(quad.matsubara_hard_cap);
    // Midpoint rule: (a/2)Σ_{n>N} f(na) ≈ ½∫_{(N+½)a}^∞ f
    let start = (last as f64 + 0.5) * a;
    let tol = quad.tolerance();
    let tail = integrate_to_infinity(
        |xi: f64| 0.5 * (1.0 - a * a / (xi * xi)) * red.p(xi, rho),
        start,
        decay_scale(rho).max(a),
        tol,
    )
    .map_err(quad_err(tol))?;
    let value = sum + tail.value + origin;
    let rounding = f64::EPSILON * (last as f64).sqrt() * (sum.abs() + origin.abs());
    Ok(PoleSum {
        value,
        error: tail.value.abs() + tail.error + rounding,
        terms: last,
        capped,
    })
}

pub(crate) fn reduced_parts(
    red: &ReducedAtom,
    rho: f64,
    a: f64,
    quad: &QuadratureSpec,
    warnings: &mut Vec<String>,
) -> Result<ReducedParts> {
    let tol = quad.tolerance();
    let (vacuum, e_vac) = vacuum_integral(red, rho, tol)?;
    if a == 0.0 {
        return Ok(ReducedParts {
            vacuum,
            a2: 0.0,
            bose: 0.0,
            error: e_vac,
        });
    }
    let (a2, e_a2) = a2_integral(red, rho, a, tol)?;
    let (bose, e_bose) = match BoseRoute::select(a, rho) {
        BoseRoute::AbelPlana => bose_abel_plana(red, rho, a, quad)?,
        BoseRoute::Matsubara => {
            if a * rho < SLOW_SUM_AR {
                warnings.push(format!(
                    "aR/c² = {:.3e} is small: the pole sum converges slowly",
                    a * rho
                ));
            }
            let s = pole_sum(red, rho, a, quad)?;
            if s.capped {
                warnings.push(format!(
                    "pole sum reached the hard cap of {} terms; tail estimated by quadrature",
                    s.terms
                ));
            }
            let cancel = f64::EPSILON * 4.0 * (vacuum.abs() + a2.abs());
            (s.value - vacuum - a2, s.error + e_vac + e_a2 + cancel)
        }
    };
    Ok(ReducedParts {
        vacuum,
        a2,
        bose,
        error: e_vac + e_a2 + e_bose,
    })
}

/// V(R) for two identical atoms at common proper acceleration `a`.
///
/// Rejects accelerations in the excited regime (a ≳ 10ω₀c), where the
/// ground-state description breaks down; use
/// [`crate::asymptotics::potential_high_acc`] there.
pub fn potential_numeric(
    r: f64,
    a: f64,
    atom: &AtomSpec,
    quad: &QuadratureSpec,
) -> Result<PotentialResult> {
    check_separation(r)?;
    check_accel(a)?;
    quad.validate()?;
    let mut warnings = Vec::new();
    let validity = validity_check(a, atom)?;
    match validity.flag {
        Validity::Excited => {
            return Err(Error::Regime(format!(
                "ω₀c/a = {:.3e}: spontaneous excitation dominates; use the high-acceleration law",
                validity.ratio
            )))
        }
        Validity::Marginal => warnings.push(format!(
            "ω₀c/a = {:.3e} is not large: ground-state treatment is marginal",
            validity.ratio
        )),
        Validity::Valid => {}
    }
    let regime = classify_regime(r, a, atom)?;
    let scales = Scales::of(atom);
    let red = ReducedAtom::new(atom);
    let rho = r * scales.k0;
    let a_hat = a / scales.accel;
    let p = reduced_parts(&red, rho, a_hat, quad, &mut warnings)?;
    Ok(assemble(p, rho, scales, regime, warnings))
}

pub(crate) fn assemble(
    p: ReducedParts,
    rho: f64,
    scales: Scales,
    regime: crate::asymptotics::regime::Regime,
    warnings: Vec<String>,
) -> PotentialResult {
    let pref = -2.0 / (PI * rho * rho) * scales.energy;
    // `+ 0.0` turns the −0 of absent pieces into +0.
    let parts = Parts {
        vacuum: pref * p.vacuum + 0.0,
        nonthermal_a2: pref * p.a2 + 0.0,
        residue_sum: pref * p.bose + 0.0,
    };
    PotentialResult {
        value: parts.total(),
        error_estimate: pref.abs() * p.error,
        parts,
        regime,
        warnings,
    }
}

/// V(R) for inertial atoms: the a = 0 case of [`potential_numeric`].
pub fn potential_inertial(r: f64, atom: &AtomSpec, quad: &QuadratureSpec) -> Result<PotentialResult> {
    potential_numeric(r, 0.0, atom, quad)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::units::UnitMode;
    use approx::assert_relative_eq;

    fn two_level() -> AtomSpec {
        AtomSpec::two_level(1.0, 1.0, None, UnitMode::Natural).unwrap()
    }

    #[test]
    fn far_zone_vacuum_closed_form() {
        // Constant α: ½∫e^{−2y}Q(iy)dy/ρ⁵ = 23/(8ρ⁵)
        let red = ReducedAtom::two_level(1.0);
        let rho = 1e4;
        let (v, _) = vacuum_integral(&red, rho, Tolerance::new(1e-12, 0.0, 500)).unwrap();
        assert_relative_eq!(v * rho.powi(5), 23.0 / 8.0, max_relative = 1e-3);
    }

    #[test]
    fn far_zone_a2_closed_form() {
        // Constant α: ∫P'/ξ = −(11/4)/ρ³
        let red = ReducedAtom::two_level(1.0);
        let rho = 1e4;
        let (v, _) = a2_integral(&red, rho, 1.0, Tolerance::new(1e-12, 0.0, 500)).unwrap();
        assert_relative_eq!(v * rho.powi(3), 0.5 * 11.0 / 4.0, max_relative = 1e-3);
    }

    #[test]
    fn bose_routes_agree_where_both_apply() {
        let red = ReducedAtom::two_level(1.0);
        let quad = QuadratureSpec {
            rel_tol: 1e-12,
            ..QuadratureSpec::default()
        };
        for (a, rho) in [(0.05, 20.0), (0.04, 10.0), (0.02, 40.0)] {
            let tol = quad.tolerance();
            let (vac, _) = vacuum_integral(&red, rho, tol).unwrap();
            let (a2, _) = a2_integral(&red, rho, a, tol).unwrap();
            let s = pole_sum(&red, rho, a, &quad).unwrap();
            let via_poles = s.value - vac - a2;
            let (direct, _) = bose_abel_plana(&red, rho, a, &quad).unwrap();
            // compare on the scale of the whole potential
            let total = s.value.abs();
            assert!(
                (via_poles - direct).abs() < 1e-8 * total,
                "a={a} ρ={rho}: {via_poles:e} vs {direct:e}"
            );
        }
    }

    #[test]
    fn vacuum_reduction_is_exact() {
        let at = two_level();
        let q = QuadratureSpec::default();
        for r in [0.05, 1.0, 30.0] {
            let a = potential_numeric(r, 0.0, &at, &q).unwrap();
            let b = potential_inertial(r, &at, &q).unwrap();
            assert_eq!(a, b);
            assert_eq!(a.parts.nonthermal_a2, 0.0);
            assert_eq!(a.parts.residue_sum, 0.0);
        }
    }

    #[test]
    fn excited_regime_is_rejected() {
        let at = two_level();
        let q = QuadratureSpec::default();
        assert!(matches!(potential_numeric(1.0, 100.0, &at, &q), Err(Error::Regime(_))));
        let m = potential_numeric(1.0, 1.0, &at, &q).unwrap();
        assert!(!m.warnings.is_empty());
    }

    #[test]
    fn parts_sum_to_value() {
        let at = two_level();
        let q = QuadratureSpec::default();
        for (r, a) in [(0.5, 0.01), (20.0, 0.2), (3.0, 1e-4)] {
            let v = potential_numeric(r, a, &at, &q).unwrap();
            assert!((v.parts.total() - v.value).abs() <= q.abs_tol.max(1e-15 * v.value.abs()));
            assert!(v.error_estimate >= 0.0);
            assert!(v.value < 0.0);
        }
    }

    #[test]
    fn raising_the_cap_is_inert_once_the_cutoff_triggers() {
        let at = two_level();
        let q = QuadratureSpec::default();
        let doubled = QuadratureSpec {
            matsubara_hard_cap: 2 * q.matsubara_hard_cap,
            ..q.clone()
        };
        let a = potential_numeric(5.0, 0.2, &at, &q).unwrap();
        let b = potential_numeric(5.0, 0.2, &at, &doubled).unwrap();
        assert!((a.value - b.value).abs() <= q.abs_tol);
    }
}
