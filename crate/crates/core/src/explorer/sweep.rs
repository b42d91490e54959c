use std::fs::File;
use std::io::{BufReader, Read, Write};
use std::path::Path;

use rayon::prelude::*;
use serde::Serialize;

use super::config::{Method, SweepConfig};
use crate::asymptotics::{classify_regime, evaluate_law, law_for_point};
use crate::cp::{potential_numeric, potential_oracle, Parts, PotentialResult, QuadratureSpec};
use crate::error::{Error, Result};
use crate::model::atom::AtomSpec;
use crate::model::units::UnitMode;

pub const CSV_COLUMNS: [&str; 11] = [
    "R",
    "a",
    "regime",
    "V_contour",
    "V_oracle",
    "V_asymptotic",
    "part_vacuum",
    "part_a2",
    "part_residue",
    "rel_diff",
    "warnings",
];

/// One grid point of a sweep. Energies are in the config's unit system.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepRow {
    pub r: f64,
    pub a: f64,
    pub regime: String,
    pub v_contour: Option<f64>,
    pub v_oracle: Option<f64>,
    pub v_asymptotic: Option<f64>,
    /// Breakdown from the contour evaluator, or from the oracle when the
    /// contour value is absent.
    pub parts: Option<Parts>,
    /// |contour − oracle| / |contour| when both are present, otherwise the
    /// relative difference of the two populated values.
    pub rel_diff: Option<f64>,
    pub warnings: Vec<String>,
}

impl SweepRow {
    /// Numeric value of a CSV column, if populated.
    pub fn field(&self, name: &str) -> Option<f64> {
        match name {
            "R" => Some(self.r),
            "a" => Some(self.a),
            "V_contour" => self.v_contour,
            "V_oracle" => self.v_oracle,
            "V_asymptotic" => self.v_asymptotic,
            "part_vacuum" => self.parts.map(|p| p.vacuum),
            "part_a2" => self.parts.map(|p| p.nonthermal_a2),
            "part_residue" => self.parts.map(|p| p.residue_sum),
            "rel_diff" => self.rel_diff,
            _ => None,
        }
    }
}

pub fn relative_difference(x: f64, y: f64) -> f64 {
    let scale = x.abs().max(y.abs());
    if scale == 0.0 {
        0.0
    } else {
        (x - y).abs() / scale
    }
}

fn run_method<F>(name: &str, warnings: &mut Vec<String>, f: F) -> Option<PotentialResult>
where
    F: FnOnce() -> Result<PotentialResult>,
{
    match f() {
        Ok(v) => {
            warnings.extend(v.warnings.iter().map(|w| format!("{name}: {w}")));
            Some(v)
        }
        Err(e) => {
            warnings.push(format!("{name}: {e}"));
            None
        }
    }
}

/// Evaluates the selected methods at one point. Failures become warnings.
pub fn evaluate_point(
    r: f64,
    a: f64,
    atom: &AtomSpec,
    methods: &[Method],
    quad: &QuadratureSpec,
) -> SweepRow {
    let mut warnings = Vec::new();
    let regime = match classify_regime(r, a, atom) {
        Ok(reg) => reg.to_string(),
        Err(e) => {
            warnings.push(e.to_string());
            String::new()
        }
    };
    let contour = if methods.contains(&Method::Contour) {
        run_method("contour", &mut warnings, || potential_numeric(r, a, atom, quad))
    } else {
        None
    };
    let oracle = if methods.contains(&Method::Oracle) {
        run_method("oracle", &mut warnings, || potential_oracle(r, a, atom, quad))
    } else {
        None
    };
    let mut v_asymptotic = None;
    if methods.contains(&Method::Asymptotic) {
        match law_for_point(r, a, atom) {
            Ok(Some(law)) => match evaluate_law(law, r, a, atom) {
                Ok(v) => {
                    warnings.extend(v.warnings.iter().map(|w| format!("asymptotic: {w}")));
                    v_asymptotic = Some(v.value);
                }
                Err(e) => warnings.push(format!("asymptotic: {e}")),
            },
            Ok(None) => warnings.push(format!("asymptotic: no closed-form law for regime {regime}")),
            Err(e) => warnings.push(format!("asymptotic: {e}")),
        }
    }

    let v_contour = contour.as_ref().map(|v| v.value);
    let v_oracle = oracle.as_ref().map(|v| v.value);
    let rel_diff = match (v_contour, v_oracle, v_asymptotic) {
        (Some(c), Some(o), _) => Some((c - o).abs() / c.abs()),
        (Some(x), None, Some(y)) | (None, Some(x), Some(y)) => Some(relative_difference(x, y)),
        _ => None,
    };
    SweepRow {
        r,
        a,
        regime,
        v_contour,
        v_oracle,
        v_asymptotic,
        parts: contour.or(oracle).map(|v| v.parts),
        rel_diff,
        warnings,
    }
}

/// Evaluates every (a, R) grid point, in parallel, returning rows ordered by
/// a and then R.
pub fn run_sweep(config: &SweepConfig) -> Result<Vec<SweepRow>> {
    config.validate()?;
    let atom = config.load_atom()?;
    let points: Vec<(f64, f64)> = config
        .a_grid
        .points()
        .into_iter()
        .flat_map(|a| config.r_grid.points().into_iter().map(move |r| (a, r)))
        .collect();
    let eval = || -> Vec<SweepRow> {
        points
            .par_iter()
            .map(|&(a, r)| evaluate_point(r, a, &atom, &config.methods, &config.quad))
            .collect()
    };
    match config.threads {
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| Error::Input(format!("cannot start {n} worker threads: {e}")))?;
            Ok(pool.install(eval))
        }
        None => Ok(eval()),
    }
}

fn units_line(units: UnitMode) -> &'static str {
    match units {
        UnitMode::Natural => "# units: natural (hbar = c = 1; R in 1/omega, a in omega, energies in hbar*omega)",
        UnitMode::Si => "# units: si (R in m, a in m/s^2, energies in J)",
    }
}

/// Shortest decimal that reads back to the same double.
fn num(x: f64) -> String {
    format!("{x:e}")
}

fn opt(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}

pub fn write_csv<W: Write>(rows: &[SweepRow], units: UnitMode, mut out: W) -> Result<()> {
    writeln!(out, "{}", units_line(units))?;
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
    w.write_record(CSV_COLUMNS)?;
    for row in rows {
        let p = row.parts;
        w.write_record([
            num(row.r),
            num(row.a),
            row.regime.clone(),
            opt(row.v_contour),
            opt(row.v_oracle),
            opt(row.v_asymptotic),
            opt(p.map(|p| p.vacuum)),
            opt(p.map(|p| p.nonthermal_a2)),
            opt(p.map(|p| p.residue_sum)),
            opt(row.rel_diff),
            row.warnings.join("; "),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_csv_file(rows: &[SweepRow], units: UnitMode, path: &Path) -> Result<()> {
    let f = File::create(path)
        .map_err(|e| Error::Input(format!("cannot create {}: {e}", path.display())))?;
    write_csv(rows, units, std::io::BufWriter::new(f))
}

/// Sweep CSV read back as named columns.
#[derive(Clone, Debug, PartialEq)]
pub struct CsvTable {
    pub units: Option<String>,
    pub headers: Vec<String>,
    pub records: Vec<Vec<String>>,
}

impl CsvTable {
    pub fn from_reader<R: Read>(r: R) -> Result<Self> {
        let mut text = String::new();
        BufReader::new(r).read_to_string(&mut text)?;
        let units = text
            .lines()
            .next()
            .and_then(|l| l.strip_prefix("# units:"))
            .map(|s| s.trim().to_string());
        let body = text.as_bytes();
        let mut rd = csv::ReaderBuilder::new().comment(Some(b'#')).from_reader(body);
        let headers = rd.headers()?.iter().map(str::to_string).collect();
        let mut records = Vec::new();
        for rec in rd.records() {
            records.push(rec?.iter().map(str::to_string).collect());
        }
        Ok(Self {
            units,
            headers,
            records,
        })
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let f = File::open(path).map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))?;
        Self::from_reader(f)
    }

    /// Column `name` parsed as numbers; empty cells become `None`.
    pub fn column(&self, name: &str) -> Result<Vec<Option<f64>>> {
        let idx = self
            .headers
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| Error::Input(format!("no column named {name:?}")))?;
        self.records
            .iter()
            .map(|rec| {
                let cell = rec.get(idx).map(String::as_str).unwrap_or("");
                if cell.is_empty() {
                    Ok(None)
                } else {
                    cell.parse()
                        .map(Some)
                        .map_err(|_| Error::Input(format!("column {name}: {cell:?} is not a number")))
                }
            })
            .collect()
    }
}
