//! Retardation factor U(x), x = kR, of the dispersion integrand.
//!
//! Two forms are provided. [`UForm::Printed`] is
//! `1 + 5x⁻² + 3x⁻⁴ + i(2x⁻¹ + 6x⁻³)`, the expression usually quoted for the
//! two-atom kernel. [`UForm::Retarded`] is `1 + 2i/x − 5/x² − 6i/x³ + 3/x⁴`,
//! the form obtained from the product of two retarded dipole propagators.
//! Only the retarded form makes `x⁴U(x)e^{2ix}` real up to O(x⁵) at the
//! origin and reproduces the inertial 23/(4π) far-zone constant and the
//! 3/4 near-zone constant, so the evaluators use it; the printed form is
//! kept for comparison.

use std::sync::OnceLock;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum UForm {
    Printed,
    #[default]
    Retarded,
}

/// Printed form of U(x). Errors at x = 0.
pub fn u_factor(x: Complex64) -> Result<Complex64> {
    u_factor_with(x, UForm::Printed)
}

pub fn u_factor_with(x: Complex64, form: UForm) -> Result<Complex64> {
    if x == Complex64::new(0.0, 0.0) || !(x.re.is_finite() && x.im.is_finite()) {
        return Err(Error::Domain(format!("U(x) needs finite x != 0, got {x}")));
    }
    let w = x.inv();
    let i = Complex64::i();
    let s = match form {
        UForm::Printed => 1.0,
        UForm::Retarded => -1.0,
    };
    // 1 + 2i w + s·5 w² + s·6i w³ + 3 w⁴
    Ok(1.0 + w * (2.0 * i + w * (s * 5.0 + w * (s * 6.0 * i + w * 3.0))))
}

/// Q(x) = x⁴U(x), an entire polynomial.
pub fn q_poly(x: Complex64, form: UForm) -> Complex64 {
    let i = Complex64::i();
    let s = match form {
        UForm::Printed => 1.0,
        UForm::Retarded => -1.0,
    };
    3.0 + x * (s * 6.0 * i + x * (s * 5.0 + x * (2.0 * i + x)))
}

/// e^{2ix}·Q(x) for complex x.
pub fn kernel(x: Complex64, form: UForm) -> Complex64 {
    (2.0 * Complex64::i() * x).exp() * q_poly(x, form)
}

/// Retarded Q on the imaginary axis, Q(iy) = y⁴ + 2y³ + 5y² + 6y + 3.
pub fn q_imag_axis(y: f64) -> f64 {
    3.0 + y * (6.0 + y * (5.0 + y * (2.0 + y)))
}

const SERIES_TERMS: usize = 24;

/// Taylor coefficients of Im[e^{2ix}Q(x)] for x⁵, x⁷, …, x^{5+2(N−1)}.
fn im_kernel_series() -> &'static [f64; SERIES_TERMS] {
    static COEFFS: OnceLock<[f64; SERIES_TERMS]> = OnceLock::new();
    COEFFS.get_or_init(|| {
        let q = retarded_coefficients();
        let mut out = [0.0; SERIES_TERMS];
        for (j, slot) in out.iter_mut().enumerate() {
            *slot = kernel_coefficient(&q, 5 + 2 * j).im;
        }
        out
    })
}

fn retarded_coefficients() -> [Complex64; 5] {
    let i = Complex64::i();
    [
        Complex64::new(3.0, 0.0),
        -6.0 * i,
        Complex64::new(-5.0, 0.0),
        2.0 * i,
        Complex64::new(1.0, 0.0),
    ]
}

/// Coefficient of xᵐ in e^{2ix}·Σ_p q_p x^p.
fn kernel_coefficient(q: &[Complex64; 5], m: usize) -> Complex64 {
    let two_i = Complex64::new(0.0, 2.0);
    let mut acc = Complex64::new(0.0, 0.0);
    for (p, qp) in q.iter().enumerate() {
        if p > m {
            break;
        }
        let j = m - p;
        let mut term = Complex64::new(1.0, 0.0);
        for l in 1..=j {
            term = term * two_i / l as f64;
        }
        acc += qp * term;
    }
    acc
}

/// Im[e^{2ix}Q(x)] for real x, retarded form. Below |x| = 1 the closed
/// form cancels to O(x⁵), so a Taylor series is used there.
pub fn im_kernel(x: f64) -> f64 {
    if x.abs() < 1.0 {
        let c = im_kernel_series();
        let x2 = x * x;
        let mut acc = 0.0;
        for coef in c.iter().rev() {
            acc = acc * x2 + coef;
        }
        acc * x2 * x2 * x
    } else {
        let (s, co) = (2.0 * x).sin_cos();
        let x2 = x * x;
        s * (x2 * x2 - 5.0 * x2 + 3.0) + co * x * (2.0 * x2 - 6.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn printed_form_examples() {
        let u = u_factor(c(1.0)).unwrap();
        assert_eq!((u.re, u.im), (9.0, 8.0));
        let u = u_factor(c(0.5)).unwrap();
        assert_relative_eq!(u.re, 69.0, max_relative = 1e-15);
        assert_relative_eq!(u.im, 52.0, max_relative = 1e-15);
        let u = u_factor(c(100.0)).unwrap();
        // exact real part is 1.00050003
        assert!((u.re - 1.0005).abs() < 5e-8);
        assert!((u.im - 0.020006).abs() < 5e-9);
        assert!(u_factor(c(0.0)).is_err());
    }

    #[test]
    fn plain_conjugation_is_not_a_symmetry() {
        let x = c(1.0);
        assert_ne!(u_factor(x.conj()).unwrap(), u_factor(x).unwrap().conj());
    }

    #[test]
    fn retarded_form_values() {
        let u = u_factor_with(c(1.0), UForm::Retarded).unwrap();
        assert_relative_eq!(u.re, -1.0, max_relative = 1e-15);
        assert_relative_eq!(u.im, -4.0, max_relative = 1e-15);
    }

    #[test]
    fn q_matches_u() {
        for form in [UForm::Printed, UForm::Retarded] {
            let x = Complex64::new(0.7, -0.3);
            let lhs = q_poly(x, form);
            let rhs = x.powi(4) * u_factor_with(x, form).unwrap();
            assert!((lhs - rhs).norm() < 1e-13);
        }
        for y in [0.0, 0.3, 2.0, 11.0] {
            let q = q_poly(Complex64::new(0.0, y), UForm::Retarded);
            assert_relative_eq!(q.re, q_imag_axis(y), max_relative = 1e-14);
            assert!(q.im.abs() < 1e-12 * q.re);
        }
    }

    #[test]
    fn kernel_low_order_coefficients() {
        let q = retarded_coefficients();
        let expect = [
            Complex64::new(3.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 22.0 / 15.0),
        ];
        for (m, e) in expect.iter().enumerate() {
            assert!((kernel_coefficient(&q, m) - e).norm() < 1e-14, "x^{m}");
        }
    }

    #[test]
    fn series_and_closed_form_agree_at_the_seam() {
        for x in [0.9_f64, 0.99, 0.999_999] {
            let (s, co) = (2.0 * x).sin_cos();
            let x2 = x * x;
            let closed = s * (x2 * x2 - 5.0 * x2 + 3.0) + co * x * (2.0 * x2 - 6.0);
            assert_relative_eq!(im_kernel(x), closed, max_relative = 1e-12);
        }
    }

    #[test]
    fn small_argument_is_fifth_order() {
        for x in [1e-3, 1e-6, 1e-9] {
            assert_relative_eq!(im_kernel(x) / x.powi(5), 22.0 / 15.0, max_relative = 1e-5);
        }
    }

    proptest! {
        #[test]
        fn reflection_symmetry(re in -50.0f64..50.0, im in -5.0f64..5.0) {
            // The odd powers carry i, so conjugation pairs x with −x̄.
            prop_assume!(re.abs() + im.abs() > 1e-3);
            let x = Complex64::new(re, im);
            for form in [UForm::Printed, UForm::Retarded] {
                let a = u_factor_with(-x.conj(), form).unwrap();
                let b = u_factor_with(x, form).unwrap().conj();
                prop_assert!((a - b).norm() <= 1e-12 * b.norm().max(1.0));
            }
        }

        #[test]
        fn real_kernel_matches_complex(x in -30.0f64..30.0) {
            let k = kernel(c(x), UForm::Retarded).im;
            prop_assert!((im_kernel(x) - k).abs() <= 1e-10 * (1.0 + x.abs().powi(4)));
            prop_assert!((im_kernel(-x) + im_kernel(x)).abs() <= 1e-12 * (1.0 + x.abs().powi(4)));
        }
    }
}
