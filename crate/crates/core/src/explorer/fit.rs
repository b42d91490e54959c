use serde::Serialize;

use super::sweep::SweepRow;
use crate::error::{Error, Result};

/// Straight-line fit of ln|y| against ln x.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SlopeFit {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
    pub points: usize,
}

/// OLS fit of ln|y| = intercept + slope·ln x over points with x inside the
/// closed `window`. Points with missing or zero y are skipped; y must not
/// change sign inside the window.
pub fn fit_slope_xy(points: &[(f64, Option<f64>)], window: (f64, f64)) -> Result<SlopeFit> {
    let (lo, hi) = window;
    if !(lo > 0.0 && lo <= hi) {
        return Err(Error::Fit(format!("window must satisfy 0 < min <= max, got {lo}..{hi}")));
    }
    let mut sign = 0.0;
    let mut lx = Vec::new();
    let mut ly = Vec::new();
    for &(x, y) in points {
        let Some(y) = y else { continue };
        if !(x >= lo && x <= hi) || y == 0.0 || !y.is_finite() {
            continue;
        }
        if sign == 0.0 {
            sign = y.signum();
        } else if y.signum() != sign {
            return Err(Error::Fit(format!("y changes sign inside the window {lo}..{hi}")));
        }
        lx.push(x.ln());
        ly.push(y.abs().ln());
    }
    let n = lx.len();
    if n < 3 {
        return Err(Error::Fit(format!("need at least 3 usable points in the window, found {n}")));
    }
    let nf = n as f64;
    let mx = lx.iter().sum::<f64>() / nf;
    let my = ly.iter().sum::<f64>() / nf;
    let (mut sxx, mut sxy, mut syy) = (0.0, 0.0, 0.0);
    for i in 0..n {
        let (dx, dy) = (lx[i] - mx, ly[i] - my);
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if sxx == 0.0 {
        return Err(Error::Fit("all x values in the window coincide".into()));
    }
    let slope = sxy / sxx;
    let ss_res: f64 = (0..n)
        .map(|i| (ly[i] - my - slope * (lx[i] - mx)).powi(2))
        .sum();
    let r_squared = if syy == 0.0 { 1.0 } else { 1.0 - ss_res / syy };
    Ok(SlopeFit {
        slope,
        intercept: my - slope * mx,
        r_squared,
        points: n,
    })
}

/// Slope of `y_field` against `x_field` over sweep rows (CSV column names).
pub fn fit_slope(rows: &[SweepRow], x_field: &str, y_field: &str, window: (f64, f64)) -> Result<SlopeFit> {
    let pts: Vec<(f64, Option<f64>)> = rows
        .iter()
        .map(|r| {
            r.field(x_field)
                .ok_or_else(|| Error::Input(format!("unknown or empty x column {x_field:?}")))
                .map(|x| (x, r.field(y_field)))
        })
        .collect::<Result<_>>()?;
    fit_slope_xy(&pts, window)
}
