//! Adaptive Gauss–Kronrod quadrature (21-point rule, QUADPACK error model)
//! for real and complex integrands, plus Neville extrapolation.

#![allow(clippy::excessive_precision)]

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Kronrod abscissae on [0, 1]; odd indices are the embedded Gauss nodes.
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_208_067_765_000,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

/// Gauss 10-point weights for XGK[1], XGK[3], …, XGK[9].
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

/// Scalar types the integrator can accumulate.
pub trait QuadValue:
    Copy + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self> + Send + Sync
{
    fn zero() -> Self;
    fn magnitude(&self) -> f64;
    fn is_finite_value(&self) -> bool;
}

impl QuadValue for f64 {
    fn zero() -> Self {
        0.0
    }
    fn magnitude(&self) -> f64 {
        self.abs()
    }
    fn is_finite_value(&self) -> bool {
        self.is_finite()
    }
}

impl QuadValue for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn magnitude(&self) -> f64 {
        self.norm()
    }
    fn is_finite_value(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerance {
    pub rel: f64,
    pub abs: f64,
    pub max_subdivisions: usize,
}

impl Tolerance {
    pub fn new(rel: f64, abs: f64, max_subdivisions: usize) -> Self {
        Self {
            rel,
            abs,
            max_subdivisions,
        }
    }

    fn target(&self, value: f64) -> f64 {
        self.abs.max(self.rel * value.abs())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadResult<T> {
    pub value: T,
    pub error: f64,
    pub evaluations: usize,
}

struct Rule<T> {
    value: T,
    error: f64,
    /// The error estimate is the roundoff floor; bisecting cannot lower it.
    at_floor: bool,
}

fn gk21<T: QuadValue, F: FnMut(f64) -> T>(f: &mut F, a: f64, b: f64) -> Rule<T> {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut resk = fc * WGK[10];
    let mut resg = T::zero();
    let mut resabs = WGK[10] * fc.magnitude();
    let mut fv1 = [T::zero(); 10];
    let mut fv2 = [T::zero(); 10];
    for j in 0..10 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        resk = resk + (f1 + f2) * WGK[j];
        resabs += WGK[j] * (f1.magnitude() + f2.magnitude());
        if j % 2 == 1 {
            resg = resg + (f1 + f2) * WG[j / 2];
        }
    }
    let mean = resk * 0.5;
    let mut resasc = WGK[10] * (fc - mean).magnitude();
    for j in 0..10 {
        resasc += WGK[j] * ((fv1[j] - mean).magnitude() + (fv2[j] - mean).magnitude());
    }
    let h = half.abs();
    let resabs = resabs * h;
    let resasc = resasc * h;
    let mut err = ((resk - resg) * half).magnitude();
    if resasc != 0.0 && err != 0.0 {
        err = resasc * (200.0 * err / resasc).powf(1.5).min(1.0);
    }
    let mut at_floor = false;
    if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        let floor = 50.0 * f64::EPSILON * resabs;
        if floor >= err {
            err = floor;
            at_floor = true;
        }
    }
    Rule {
        value: resk * half,
        error: err,
        at_floor,
    }
}

struct Segment<T> {
    a: f64,
    b: f64,
    value: T,
    error: f64,
    at_floor: bool,
}

impl<T> PartialEq for Segment<T> {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl<T> Eq for Segment<T> {}
impl<T> PartialOrd for Segment<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<T> Ord for Segment<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

/// Globally adaptive integration of `f` over the finite interval [a, b].
///
/// The interval with the largest error estimate is bisected until the total
/// error drops below `max(tol.abs, tol.rel·|I|)`. Intervals whose error is
/// already at the roundoff floor are retired rather than split, so a
/// roundoff-limited result is returned with its (larger) error estimate.
/// Exhausting `max_subdivisions`, or meeting a non-finite sample, returns
/// [`Error::Numerical`] carrying the partial estimate.
pub fn integrate<T, F>(mut f: F, a: f64, b: f64, tol: Tolerance) -> Result<QuadResult<T>>
where
    T: QuadValue,
    F: FnMut(f64) -> T,
{
    if a == b {
        return Ok(QuadResult {
            value: T::zero(),
            error: 0.0,
            evaluations: 0,
        });
    }
    let first = gk21(&mut f, a, b);
    let mut evaluations = 21;
    let mut total = first.value;
    let mut total_err = first.error;
    let mut heap = BinaryHeap::new();
    heap.push(Segment {
        a,
        b,
        value: first.value,
        error: first.error,
        at_floor: first.at_floor,
    });
    let mut frozen_err = 0.0;
    let mut frozen_value = T::zero();
    let mut subdivisions = 1;

    loop {
        if !total.is_finite_value() {
            return Err(Error::Numerical {
                message: format!("non-finite integrand on [{a:e}, {b:e}]"),
                partial: f64::NAN,
                error: f64::INFINITY,
            });
        }
        if total_err <= tol.target(total.magnitude()) {
            break;
        }
        let Some(worst) = heap.pop() else {
            break;
        };
        let mid = 0.5 * (worst.a + worst.b);
        let width = (worst.b - worst.a).abs();
        let tiny = width <= 64.0 * f64::EPSILON * worst.a.abs().max(worst.b.abs()).max(f64::MIN_POSITIVE);
        if tiny || worst.at_floor {
            // Cannot be resolved any further in double precision.
            frozen_err += worst.error;
            frozen_value = frozen_value + worst.value;
            continue;
        }
        if subdivisions >= tol.max_subdivisions {
            return Err(Error::Numerical {
                message: format!(
                    "adaptive quadrature on [{a:e}, {b:e}] exhausted {} subdivisions",
                    tol.max_subdivisions
                ),
                partial: total.magnitude(),
                error: total_err,
            });
        }
        let left = gk21(&mut f, worst.a, mid);
        let right = gk21(&mut f, mid, worst.b);
        evaluations += 42;
        subdivisions += 1;
        total = total - worst.value + left.value + right.value;
        heap.push(Segment {
            a: worst.a,
            b: mid,
            value: left.value,
            error: left.error,
            at_floor: left.at_floor,
        });
        heap.push(Segment {
            a: mid,
            b: worst.b,
            value: right.value,
            error: right.error,
            at_floor: right.at_floor,
        });
        total_err = frozen_err + heap.iter().map(|s| s.error).sum::<f64>();
    }

    // Re-sum from the leaves to shed the accumulated update roundoff.
    // Anything left above the target is roundoff-limited and reported as such
    // through `error`.
    let value = heap.iter().fold(frozen_value, |acc, s| acc + s.value);
    Ok(QuadResult {
        value,
        error: total_err,
        evaluations,
    })
}

/// ∫ₐ^∞ f(x) dx through x = a + λ·t/(1 − t); `scale` λ should match the
/// decay length of `f`.
pub fn integrate_to_infinity<T, F>(
    mut f: F,
    a: f64,
    scale: f64,
    tol: Tolerance,
) -> Result<QuadResult<T>>
where
    T: QuadValue,
    F: FnMut(f64) -> T,
{
    integrate(
        |t: f64| {
            let s = 1.0 - t;
            f(a + scale * t / s) * (scale / (s * s))
        },
        0.0,
        1.0,
        tol,
    )
}

/// Value at x = 0 of the polynomial interpolating `(xs[i], ys[i])` (Neville).
pub fn neville_at_zero(xs: &[f64], ys: &[f64]) -> Result<f64> {
    if xs.is_empty() || xs.len() != ys.len() {
        return Err(Error::Input(
            "extrapolation needs equally many abscissae and ordinates".into(),
        ));
    }
    let mut p = ys.to_vec();
    let n = xs.len();
    for m in 1..n {
        for i in 0..n - m {
            let (xi, xj) = (xs[i], xs[i + m]);
            if xi == xj {
                return Err(Error::Input("extrapolation abscissae must be distinct".into()));
            }
            p[i] = (xj * p[i] - xi * p[i + 1]) / (xj - xi);
        }
    }
    Ok(p[0])
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn tol() -> Tolerance {
        Tolerance::new(1e-12, 1e-300, 500)
    }

    #[test]
    fn kronrod_weights_integrate_constants() {
        let s: f64 = 2.0 * WGK[..10].iter().sum::<f64>() + WGK[10];
        assert_relative_eq!(s, 2.0, max_relative = 1e-15);
        let g: f64 = 2.0 * WG.iter().sum::<f64>();
        assert_relative_eq!(g, 2.0, max_relative = 1e-15);
    }

    #[test]
    fn polynomial_is_exact() {
        let r = integrate(|x: f64| x.powi(9) - 3.0 * x * x, 0.0, 2.0, tol()).unwrap();
        assert_relative_eq!(r.value, 102.4 - 8.0, max_relative = 1e-14);
    }

    #[test]
    fn endpoint_singularity() {
        let r = integrate(|x: f64| 1.0 / x.sqrt(), 0.0, 1.0, tol()).unwrap();
        assert_relative_eq!(r.value, 2.0, max_relative = 1e-10);
    }

    #[test]
    fn oscillatory_complex() {
        let r = integrate(|x: f64| Complex64::new(0.0, 20.0 * x).exp(), 0.0, 1.0, tol()).unwrap();
        let expect = (Complex64::new(0.0, 20.0).exp() - 1.0) / Complex64::new(0.0, 20.0);
        assert!((r.value - expect).norm() < 1e-12);
    }

    #[test]
    fn semi_infinite() {
        let r = integrate_to_infinity(|x: f64| (-x).exp() * x * x, 0.0, 1.0, tol()).unwrap();
        assert_relative_eq!(r.value, 2.0, max_relative = 1e-11);
        let r = integrate_to_infinity(|x: f64| 1.0 / (1.0 + x * x), 0.0, 1.0, tol()).unwrap();
        assert_relative_eq!(r.value, std::f64::consts::FRAC_PI_2, max_relative = 1e-11);
    }

    #[test]
    fn reversed_limits_flip_sign() {
        let r = integrate(|x: f64| x.exp(), 1.0, 0.0, tol()).unwrap();
        assert_relative_eq!(r.value, 1.0 - 1f64.exp(), max_relative = 1e-14);
    }

    #[test]
    fn budget_exhaustion_reports_partial() {
        let t = Tolerance::new(1e-15, 1e-300, 3);
        match integrate(|x: f64| (1.0 / x).sin() / x.sqrt(), 1e-6, 1.0, t) {
            Err(Error::Numerical { partial, error, .. }) => {
                assert!(partial.is_finite() && error > 0.0)
            }
            other => panic!("expected numerical failure, got {other:?}"),
        }
    }

    #[test]
    fn neville_recovers_polynomial_intercept() {
        let xs = [1e-2, 3e-3, 1e-3];
        let ys: Vec<f64> = xs.iter().map(|x| 4.0 - 2.0 * x + 7.0 * x * x).collect();
        assert_relative_eq!(neville_at_zero(&xs, &ys).unwrap(), 4.0, max_relative = 1e-13);
        assert!(neville_at_zero(&[1.0, 1.0], &[0.0, 1.0]).is_err());
    }
}
