//! The potential in reduced units.
//!
//! Lengths are measured in c/ω₀, wavenumbers in ω₀/c, accelerations in ω₀c,
//! polarizabilities in (c/ω₀)³ and energies in ħω₀, where ω₀ is the lowest
//! transition frequency. In these units
//!
//! ```text
//! V(ρ) = −(2/πρ²) · Im ∫₀^∞ dκ n(κ) e^{2iκρ} Q(κρ) α(κ)² / ρ⁴
//! ```
//!
//! with `Q(x) = x⁴U(x)` and `n` the bath occupation.

use num_complex::Complex64;

use super::retardation::q_imag_axis;
use crate::model::atom::{alpha_static, AtomSpec};

/// Transition data rescaled to ω₀ = c = ħ = 1.
#[derive(Clone, Debug, PartialEq)]
pub struct ReducedAtom {
    /// Partial static polarizabilities α_r k₀³.
    pub alpha: Vec<f64>,
    /// Transition frequencies ω_r/ω₀ (all ≥ 1).
    pub omega: Vec<f64>,
}

/// Conversion factors between an atom's own units and reduced units.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Scales {
    /// k₀ = ω₀/c.
    pub k0: f64,
    /// ħω₀.
    pub energy: f64,
    /// ω₀c.
    pub accel: f64,
}

impl Scales {
    pub fn of(atom: &AtomSpec) -> Self {
        let k = atom.constants();
        let w0 = atom.omega0();
        Self {
            k0: w0 / k.c,
            energy: k.hbar * w0,
            accel: w0 * k.c,
        }
    }
}

impl ReducedAtom {
    pub fn new(atom: &AtomSpec) -> Self {
        let s = Scales::of(atom);
        let k3 = s.k0 * s.k0 * s.k0;
        let w0 = atom.omega0();
        let (alpha, omega) = atom
            .transitions()
            .iter()
            .map(|t| (atom.partial_polarizability(t) * k3, t.omega / w0))
            .unzip();
        let reduced = Self { alpha, omega };
        debug_assert!(
            (reduced.alpha0() - alpha_static(atom) * k3).abs() <= 1e-12 * reduced.alpha0()
        );
        reduced
    }

    /// Single transition at ω = 1 with static polarizability `alpha0`.
    pub fn two_level(alpha0: f64) -> Self {
        Self {
            alpha: vec![alpha0],
            omega: vec![1.0],
        }
    }

    pub fn alpha0(&self) -> f64 {
        self.alpha.iter().sum()
    }

    /// Σ α_r/ω_r², the κ² coefficient of α(κ) on the real axis.
    pub fn alpha_k2(&self) -> f64 {
        self.alpha
            .iter()
            .zip(&self.omega)
            .map(|(a, w)| a / (w * w))
            .sum()
    }

    pub fn omega_max(&self) -> f64 {
        self.omega.iter().copied().fold(1.0, f64::max)
    }

    /// α(iξ).
    pub fn alpha_imag(&self, xi: f64) -> f64 {
        let x2 = xi * xi;
        self.alpha
            .iter()
            .zip(&self.omega)
            .map(|(a, w)| a * w * w / (w * w + x2))
            .sum()
    }

    /// α'(iξ)/ξ (derivative with respect to ξ), regular at ξ = 0.
    pub fn alpha_imag_slope(&self, xi: f64) -> f64 {
        let x2 = xi * xi;
        -2.0 * self
            .alpha
            .iter()
            .zip(&self.omega)
            .map(|(a, w)| {
                let d = w * w + x2;
                a * w * w / (d * d)
            })
            .sum::<f64>()
    }

    /// Undamped α(κ) for real κ away from the resonances.
    pub fn alpha_real(&self, k: f64) -> f64 {
        let k2 = k * k;
        self.alpha
            .iter()
            .zip(&self.omega)
            .map(|(a, w)| a * w * w / (w * w - k2))
            .sum()
    }

    /// Undamped α(z) for complex z off the real resonances.
    pub fn alpha_complex(&self, z: Complex64) -> Complex64 {
        let z2 = z * z;
        self.alpha
            .iter()
            .zip(&self.omega)
            .map(|(a, w)| a * w * w / (w * w - z2))
            .sum()
    }

    /// P(ξ) = e^{−2ξρ} Q(iξρ) α(iξ)² / ρ⁴, the integrand continued to κ = iξ.
    pub fn p(&self, xi: f64, rho: f64) -> f64 {
        let y = xi * rho;
        let al = self.alpha_imag(xi);
        let r2 = rho * rho;
        (-2.0 * y).exp() * q_imag_axis(y) * al * al / (r2 * r2)
    }

    /// P'(ξ)/ξ, written so that no cancellation occurs at small ξ.
    pub fn dp_over_xi(&self, xi: f64, rho: f64) -> f64 {
        let y = xi * rho;
        let al = self.alpha_imag(xi);
        let slope = self.alpha_imag_slope(xi);
        let r2 = rho * rho;
        let poly = -2.0 * y * y * y - 4.0 * y - 2.0;
        (-2.0 * y).exp() * (r2 * poly * al * al + 2.0 * q_imag_axis(y) * al * slope) / (r2 * r2)
    }

    /// Residue of n(κ)·G(κ) at κ = 0, where n has the Laurent tail
    /// â³/(2πκ³) + (â/2π + πâ/6)/κ.
    pub fn origin_residue(&self, a: f64, rho: f64) -> f64 {
        use std::f64::consts::PI;
        let a0 = self.alpha0();
        let r4 = rho.powi(4);
        let f0 = 3.0 * a0 * a0 / r4;
        let f2 = (rho * rho * a0 * a0 + 6.0 * a0 * self.alpha_k2()) / r4;
        let n3 = a * a * a / (2.0 * PI);
        let n1 = a / (2.0 * PI) + PI * a / 6.0;
        n3 * f2 + n1 * f0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::atom::Transition;
    use crate::model::units::UnitMode;
    use approx::assert_relative_eq;

    #[test]
    fn reduction_of_si_atom() {
        let w0 = 2.0e15;
        let atom = AtomSpec::two_level(w0, 1e-30, None, UnitMode::Si).unwrap();
        let r = ReducedAtom::new(&atom);
        let k0 = w0 / crate::model::units::C_SI;
        assert_relative_eq!(r.alpha0(), 1e-30 * k0 * k0 * k0, max_relative = 1e-12);
        assert_eq!(r.omega, vec![1.0]);
    }

    #[test]
    fn multi_transition_reduction() {
        let atom = AtomSpec::new(
            vec![
                Transition::new(2.0, 3.0).unwrap(),
                Transition::new(5.0, 1.0).unwrap(),
            ],
            None,
            UnitMode::Natural,
        )
        .unwrap();
        let r = ReducedAtom::new(&atom);
        assert_eq!(r.omega, vec![1.0, 2.5]);
        // k₀ = 2 → α̂ = 8α
        assert_relative_eq!(r.alpha0(), 8.0 * alpha_static(&atom), max_relative = 1e-14);
    }

    #[test]
    fn derivative_identity() {
        let r = ReducedAtom {
            alpha: vec![0.7, 0.2],
            omega: vec![1.0, 3.0],
        };
        let rho = 0.8;
        for xi in [0.05, 0.4, 1.0, 3.0] {
            let h = 1e-5 * xi;
            let fd = (r.p(xi + h, rho) - r.p(xi - h, rho)) / (2.0 * h);
            assert_relative_eq!(r.dp_over_xi(xi, rho) * xi, fd, max_relative = 1e-7);
        }
    }

    #[test]
    fn slope_at_origin_vanishes() {
        let r = ReducedAtom::two_level(1.0);
        let rho = 2.0;
        let h = 1e-6;
        assert!(((r.p(h, rho) - r.p(0.0, rho)) / h).abs() < 1e-4 * r.p(0.0, rho));
    }

    #[test]
    fn complex_and_real_polarizability_agree() {
        let r = ReducedAtom {
            alpha: vec![0.7, 0.2],
            omega: vec![1.0, 3.0],
        };
        for k in [0.1, 0.9, 1.5, 4.0] {
            let c = r.alpha_complex(Complex64::new(k, 0.0));
            assert_relative_eq!(c.re, r.alpha_real(k), max_relative = 1e-14);
        }
        for xi in [0.0, 0.5, 2.0] {
            let c = r.alpha_complex(Complex64::new(0.0, xi));
            assert_relative_eq!(c.re, r.alpha_imag(xi), max_relative = 1e-14);
        }
    }
}
