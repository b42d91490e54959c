//! Real-axis oracle.
//!
//! The wavenumber integral is taken along the real axis with the undamped
//! polarizability, passing above each resonance on a small semicircle (the
//! γ → 0⁺ limit of the damped integrand). Beyond K = 2ω_max the integrand
//! no longer decays, so it is Abel-regularised with e^{−η(κ−K)} and the
//! remaining ray [K, ∞) is turned onto K + i[0, ∞), where e^{2iκρ} decays.
//! The values for each η of the schedule (and of the halved schedule) are
//! extrapolated to η = 0 by polynomial interpolation; the disagreement of
//! the two extrapolations is the reported spread.
//!
//! Nothing here shares code with the imaginary-axis evaluator beyond the
//! kernel and polarizability formulas.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::contour::{assemble, ReducedParts};
use super::retardation::{im_kernel, kernel, UForm};
use super::spectral::{ReducedAtom, Scales};
use super::{PotentialResult, QuadratureSpec};
use crate::asymptotics::regime::classify_regime;
use crate::error::{Error, Result};
use crate::model::atom::AtomSpec;
use crate::model::kinematics::{check_accel, check_separation};
use crate::quad::{integrate, integrate_to_infinity, neville_at_zero, Tolerance};

/// Largest a/(ω₀c) accepted by the oracle.
pub const ORACLE_MAX_ACCEL: f64 = 0.1;
/// Indentation radius as a fraction of the resonance frequency and of the
/// gap to its neighbours.
const INDENT_FRACTION: f64 = 0.3;
/// Per-panel relative tolerance; panels are summed with heavy cancellation
/// in the far zone, so each is resolved to near machine precision.
const PANEL_REL_TOL: f64 = 1e-13;
/// Absolute tolerance for the acceleration pieces, relative to Σ|vacuum contributions|.
const ABS_FLOOR: f64 = 1e-19;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Piece {
    Vacuum,
    NonThermal,
    Bose,
}

const PIECES: [Piece; 3] = [Piece::Vacuum, Piece::NonThermal, Piece::Bose];

fn complex_bose(z: Complex64, a: f64) -> Complex64 {
    let x = 2.0 * PI * z / a;
    if x.re > crate::bath::EXP_OVERFLOW_GUARD {
        return Complex64::new(0.0, 0.0);
    }
    let e = (-x).exp();
    e / (1.0 - e)
}

fn weight_real(piece: Piece, k: f64, a: f64) -> f64 {
    match piece {
        Piece::Vacuum => 0.5,
        Piece::NonThermal => 0.5 * (a / k) * (a / k),
        Piece::Bose => {
            if a == 0.0 {
                0.0
            } else {
                (1.0 + (a / k) * (a / k)) * crate::bath::bose(2.0 * PI * k / a)
            }
        }
    }
}

fn weight_complex(piece: Piece, z: Complex64, a: f64) -> Complex64 {
    let s = (a / z) * (a / z);
    match piece {
        Piece::Vacuum => Complex64::new(0.5, 0.0),
        Piece::NonThermal => 0.5 * s,
        Piece::Bose => {
            if a == 0.0 {
                Complex64::new(0.0, 0.0)
            } else {
                (1.0 + s) * complex_bose(z, a)
            }
        }
    }
}

struct Path {
    /// Real panels between indentations.
    panels: Vec<(f64, f64)>,
    /// (centre, radius) of each semicircle.
    indents: Vec<(f64, f64)>,
    /// Start of the vertical ray.
    k_ray: f64,
}

fn build_path(red: &ReducedAtom, rho: f64, a: f64) -> Path {
    let mut res: Vec<f64> = red.omega.clone();
    res.sort_by(f64::total_cmp);
    res.dedup_by(|x, y| (*x - *y).abs() <= 1e-12 * *y);
    let mut indents = Vec::with_capacity(res.len());
    for (i, &w) in res.iter().enumerate() {
        let mut gap = w;
        if i > 0 {
            gap = gap.min(0.5 * (w - res[i - 1]));
        }
        if i + 1 < res.len() {
            gap = gap.min(0.5 * (res[i + 1] - w));
        }
        indents.push((w, INDENT_FRACTION * gap));
    }
    let k_ray = 2.0 * red.omega_max();

    let mut stops = vec![0.0];
    if a > 0.0 {
        let window = 8.0 * a;
        if window < res[0] - indents[0].1 {
            stops.push(window);
        }
    }
    let mut segments = Vec::new();
    let mut left = 0.0;
    for &(w, r) in &indents {
        segments.push((left, w - r));
        left = w + r;
    }
    segments.push((left, k_ray));

    // Half-oscillation panels of e^{2iκρ}.
    let width = 0.5 * PI / rho;
    let mut panels = Vec::new();
    for (lo, hi) in segments {
        let mut cuts: Vec<f64> = stops.iter().copied().filter(|&s| s > lo && s < hi).collect();
        cuts.insert(0, lo);
        cuts.push(hi);
        for w in cuts.windows(2) {
            let n = ((w[1] - w[0]) / width).ceil().max(1.0) as usize;
            let h = (w[1] - w[0]) / n as f64;
            for j in 0..n {
                let x0 = w[0] + j as f64 * h;
                let x1 = if j + 1 == n { w[1] } else { x0 + h };
                panels.push((x0, x1));
            }
        }
    }
    Path {
        panels,
        indents,
        k_ray,
    }
}

struct Evaluated {
    /// η-independent part: real panels, semicircles and the ray at η = 0.
    fixed: [f64; 3],
    error: [f64; 3],
}

/// Integrals of one occupation piece along the η-independent part of the
/// path: the real panels, the semicircles and the unregularised ray.
/// Returns (value, error estimate, Σ|contribution|).
fn piece_fixed(
    red: &ReducedAtom,
    rho: f64,
    a: f64,
    path: &Path,
    piece: Piece,
    tol: Tolerance,
) -> Result<(f64, f64, f64)> {
    let r4 = rho.powi(4);
    let f = |k: f64| {
        let al = red.alpha_real(k);
        weight_real(piece, k, a) * al * al * im_kernel(k * rho) / r4
    };
    let mut vals = Vec::with_capacity(path.panels.len() + path.indents.len() + 1);
    let mut err = 0.0;
    for &(lo, hi) in &path.panels {
        let r = integrate(f, lo, hi, tol)?;
        vals.push(r.value);
        err += r.error;
    }
    for &(w, rad) in &path.indents {
        let g = |theta: f64| {
            let e = Complex64::new(0.0, -theta).exp();
            let z = w - rad * e;
            let dz = Complex64::new(0.0, rad) * e;
            let al = red.alpha_complex(z);
            weight_complex(piece, z, a) * al * al * kernel(z * rho, UForm::Retarded) / r4 * dz
        };
        let r = integrate(g, 0.0, PI, tol)?;
        vals.push(r.value.im);
        err += r.error;
    }
    let (ray, ray_err) = ray_part(red, rho, a, path.k_ray, piece, None, tol)?;
    vals.push(ray);
    err += ray_err;
    // Sum small contributions first to limit accumulation error.
    vals.sort_by(|x, y| x.abs().total_cmp(&y.abs()));
    let l1 = vals.iter().map(|v| v.abs()).sum();
    Ok((vals.iter().sum(), err, l1))
}

fn fixed_parts(red: &ReducedAtom, rho: f64, a: f64, path: &Path, max_sub: usize) -> Result<(Evaluated, f64)> {
    let tol = Tolerance::new(PANEL_REL_TOL, 0.0, max_sub);
    let (vac, vac_err, l1) = piece_fixed(red, rho, a, path, Piece::Vacuum, tol)?;
    let mut out = Evaluated {
        fixed: [vac, 0.0, 0.0],
        error: [vac_err, 0.0, 0.0],
    };
    if a > 0.0 {
        // The acceleration pieces only need resolving against the scale of
        // the vacuum integrand; this keeps exponentially small Bose
        // contributions from stalling the relative tolerance.
        let tol = Tolerance::new(PANEL_REL_TOL, ABS_FLOOR * l1, max_sub);
        for (idx, piece) in [(1, Piece::NonThermal), (2, Piece::Bose)] {
            let (v, e, _) = piece_fixed(red, rho, a, path, piece, tol)?;
            out.fixed[idx] = v;
            out.error[idx] = e;
        }
    }
    Ok((out, l1))
}

/// Ray contribution Im ∫₀^∞ w α² e^{2izρ}Q(zρ)/ρ⁴ · m(t) · i dt along
/// z = K + it. With `eta = None`, m = 1; with `Some(η)`, m = e^{−iηt} − 1,
/// the change brought by the Abel factor, evaluated without cancellation.
fn ray_part(
    red: &ReducedAtom,
    rho: f64,
    a: f64,
    k_ray: f64,
    piece: Piece,
    eta: Option<f64>,
    tol: Tolerance,
) -> Result<(f64, f64)> {
    let r4 = rho.powi(4);
    let g = |t: f64| {
        let z = Complex64::new(k_ray, t);
        let al = red.alpha_complex(z);
        let m = match eta {
            None => Complex64::new(1.0, 0.0),
            Some(eta) => {
                let h = 0.5 * eta * t;
                let s = h.sin();
                Complex64::new(-2.0 * s * s, -(eta * t).sin())
            }
        };
        weight_complex(piece, z, a) * al * al * kernel(z * rho, UForm::Retarded) / r4
            * m
            * Complex64::i()
    };
    let scale = (0.5 / rho).min(k_ray);
    let r = integrate_to_infinity(g, 0.0, scale, tol)?;
    Ok((r.value.im, r.error))
}

/// V(R) from the real-axis representation, for cross-checking
/// [`super::potential_numeric`]. Requires a ≤ 0.1ω₀c.
pub fn potential_oracle(
    r: f64,
    a: f64,
    atom: &AtomSpec,
    quad: &QuadratureSpec,
) -> Result<PotentialResult> {
    check_separation(r)?;
    check_accel(a)?;
    quad.validate()?;
    let regime = classify_regime(r, a, atom)?;
    let scales = Scales::of(atom);
    let a_hat = a / scales.accel;
    if a_hat > ORACLE_MAX_ACCEL {
        return Err(Error::Regime(format!(
            "a/(ω₀c) = {a_hat:.3e} exceeds the oracle limit {ORACLE_MAX_ACCEL}"
        )));
    }
    let red = ReducedAtom::new(atom);
    let rho = r * scales.k0;
    let path = build_path(&red, rho, a_hat);
    let (ev, l1) = fixed_parts(&red, rho, a_hat, &path, quad.max_subdivisions)?;

    let full: Vec<f64> = quad.damping_schedule.clone();
    let half: Vec<f64> = full.iter().map(|e| 0.5 * e).collect();
    let tol = Tolerance::new(PANEL_REL_TOL, ABS_FLOOR * l1, quad.max_subdivisions);
    let mut extrapolated = [[0.0; 3]; 2];
    let mut ray_err = [0.0; 3];
    for (idx, &piece) in PIECES.iter().enumerate() {
        if piece != Piece::Vacuum && a_hat == 0.0 {
            continue;
        }
        for (s, schedule) in [&full, &half].into_iter().enumerate() {
            let mut ys = Vec::with_capacity(schedule.len());
            for &eta in schedule {
                let (dv, e) = ray_part(&red, rho, a_hat, path.k_ray, piece, Some(eta), tol)?;
                ys.push(ev.fixed[idx] + dv);
                ray_err[idx] = f64::max(ray_err[idx], e);
            }
            extrapolated[s][idx] = neville_at_zero(schedule, &ys)?;
        }
    }

    let [coarse, fine] = extrapolated;
    let total_fine: f64 = fine.iter().sum();
    let total_coarse: f64 = coarse.iter().sum();
    let spread = (total_coarse - total_fine).abs();
    let quad_err: f64 = (0..3).map(|i| ev.error[i] + ray_err[i]).sum();

    let pref = 2.0 / (PI * rho * rho) * scales.energy;
    let limit = 10.0 * quad.rel_tol * total_fine.abs();
    if spread > limit {
        return Err(Error::OracleUnreliable {
            value: -pref * total_fine,
            spread: pref * spread,
            limit: pref * limit,
        });
    }
    let parts = ReducedParts {
        vacuum: fine[0],
        a2: fine[1],
        bose: fine[2],
        error: spread + quad_err,
    };
    Ok(assemble(parts, rho, scales, regime, Vec::new()))
}
