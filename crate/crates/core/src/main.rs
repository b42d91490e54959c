use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use unruh_cp::asymptotics::{evaluate_law, potential_high_acc, Law, LawValue};
use unruh_cp::bath::{mode_occupation, occupation_highacc, Approximation, OccupationValue};
use unruh_cp::cp::{potential_numeric, potential_oracle, PotentialResult, QuadratureSpec};
use unruh_cp::explorer::{compare_report, fit_slope_xy, run_sweep, write_csv_file, CsvTable, Status, SweepConfig};
use unruh_cp::model::atom::AtomSpec;
use unruh_cp::model::units::UnitMode;
use unruh_cp::{Error, Result};

#[derive(Parser)]
#[command(name = "unruh-cp", version, about = "Casimir-Polder potential of two uniformly accelerated atoms")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum EvalMethod {
    Contour,
    Oracle,
    Both,
}

#[derive(Subcommand)]
enum Command {
    /// Mean occupation per field mode seen by the accelerated atoms.
    Occupation {
        #[arg(long)]
        omega: f64,
        #[arg(long)]
        accel: f64,
        #[arg(long, default_value = "natural")]
        units: UnitMode,
        /// Also report the leading high-acceleration expansion.
        #[arg(long)]
        highacc: bool,
    },
    /// Interatomic potential at one separation and acceleration.
    Eval {
        #[arg(long = "R", visible_alias = "r")]
        r: f64,
        #[arg(long)]
        accel: f64,
        #[arg(long)]
        atom: PathBuf,
        #[arg(long, value_enum, default_value = "contour")]
        method: EvalMethod,
        #[arg(long, default_value = "natural")]
        units: UnitMode,
        /// JSON file with quadrature settings.
        #[arg(long)]
        quad: Option<PathBuf>,
    },
    /// Closed-form regime law at one point.
    Asymptotic {
        #[arg(long)]
        law: Law,
        #[arg(long = "R", visible_alias = "r")]
        r: f64,
        #[arg(long)]
        accel: f64,
        #[arg(long)]
        atom: PathBuf,
        /// Partner atom for the high-acceleration law (defaults to --atom).
        #[arg(long)]
        atom_b: Option<PathBuf>,
        #[arg(long, default_value = "natural")]
        units: UnitMode,
    },
    /// Evaluate a grid of (R, a) points and write CSV.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        /// Override the config's output path.
        #[arg(long)]
        output: Option<PathBuf>,
        /// Override the config's worker thread count.
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Log-log slope of one CSV column against another.
    Fit {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        /// Window on x as `min,max`.
        #[arg(long)]
        window: String,
        /// Keep only rows where a column equals a value, e.g. `a=0.001`.
        #[arg(long)]
        select: Option<String>,
    },
    /// Run the regime-law checks and write a JSON report.
    Report {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

fn print_json<T: Serialize>(v: &T) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(v)?);
    Ok(())
}

#[derive(Serialize)]
struct OccupationOutput {
    occupation: OccupationValue,
    #[serde(skip_serializing_if = "Option::is_none")]
    high_acceleration: Option<Approximation>,
}

#[derive(Serialize)]
struct BothOutput {
    contour: PotentialResult,
    oracle: PotentialResult,
    rel_diff: f64,
}

fn parse_window(s: &str) -> Result<(f64, f64)> {
    let bad = || Error::Input(format!("window must be `min,max`, got {s:?}"));
    let (lo, hi) = s.split_once(',').ok_or_else(bad)?;
    Ok((lo.trim().parse().map_err(|_| bad())?, hi.trim().parse().map_err(|_| bad())?))
}

fn run(cmd: Command) -> Result<i32> {
    match cmd {
        Command::Occupation {
            omega,
            accel,
            units,
            highacc,
        } => {
            let k = units.constants();
            let out = OccupationOutput {
                occupation: mode_occupation(omega, accel, k)?,
                high_acceleration: if highacc { Some(occupation_highacc(omega, accel, k)?) } else { None },
            };
            print_json(&out)?;
        }
        Command::Eval {
            r,
            accel,
            atom,
            method,
            units,
            quad,
        } => {
            let atom = AtomSpec::from_json_file(&atom, units)?;
            let quad = match quad {
                Some(p) => QuadratureSpec::from_json_str(&fs::read_to_string(&p).map_err(|e| {
                    Error::Input(format!("cannot read {}: {e}", p.display()))
                })?)?,
                None => QuadratureSpec::default(),
            };
            match method {
                EvalMethod::Contour => print_json(&potential_numeric(r, accel, &atom, &quad)?)?,
                EvalMethod::Oracle => print_json(&potential_oracle(r, accel, &atom, &quad)?)?,
                EvalMethod::Both => {
                    let contour = potential_numeric(r, accel, &atom, &quad)?;
                    let oracle = potential_oracle(r, accel, &atom, &quad)?;
                    let rel_diff = ((contour.value - oracle.value) / contour.value).abs();
                    print_json(&BothOutput {
                        contour,
                        oracle,
                        rel_diff,
                    })?;
                }
            }
        }
        Command::Asymptotic {
            law,
            r,
            accel,
            atom,
            atom_b,
            units,
        } => {
            let a_atom = AtomSpec::from_json_file(&atom, units)?;
            let out = match (law, atom_b) {
                (Law::HighAcc, Some(b)) => {
                    let b_atom = AtomSpec::from_json_file(&b, units)?;
                    let v = potential_high_acc(r, accel, &a_atom, &b_atom)?;
                    LawValue {
                        law,
                        formula: law.formula(),
                        value: v.value,
                        warnings: v.warnings,
                    }
                }
                (_, Some(_)) => return Err(Error::Input("--atom-b only applies to the high-acc law".into())),
                (_, None) => evaluate_law(law, r, accel, &a_atom)?,
            };
            print_json(&out)?;
        }
        Command::Sweep {
            config,
            output,
            threads,
        } => {
            let mut cfg = SweepConfig::from_file(&config)?;
            if let Some(o) = output {
                cfg.output_path = o;
            }
            if threads.is_some() {
                cfg.threads = threads;
            }
            let rows = run_sweep(&cfg)?;
            write_csv_file(&rows, cfg.units, &cfg.output_path)?;
            let failed = rows.iter().filter(|r| !r.warnings.is_empty()).count();
            eprintln!(
                "wrote {} rows to {} ({failed} with warnings)",
                rows.len(),
                cfg.output_path.display()
            );
        }
        Command::Fit {
            input,
            x,
            y,
            window,
            select,
        } => {
            let table = CsvTable::from_path(&input)?;
            let keep: Vec<bool> = match select {
                Some(sel) => {
                    let bad = || Error::Input(format!("--select must be `column=value`, got {sel:?}"));
                    let (col, val) = sel.split_once('=').ok_or_else(bad)?;
                    let val: f64 = val.trim().parse().map_err(|_| bad())?;
                    table.column(col.trim())?.into_iter().map(|v| v == Some(val)).collect()
                }
                None => vec![true; table.records.len()],
            };
            let xs = table.column(&x)?;
            let ys = table.column(&y)?;
            let pts: Vec<(f64, Option<f64>)> = xs
                .into_iter()
                .zip(ys)
                .zip(keep)
                .filter_map(|((x, y), k)| if k { x.map(|x| (x, y)) } else { None })
                .collect();
            print_json(&fit_slope_xy(&pts, parse_window(&window)?)?)?;
        }
        Command::Report { config, out } => {
            let cfg = SweepConfig::from_file(&config)?;
            let report = compare_report(&cfg)?;
            let mut text = serde_json::to_string_pretty(&report)?;
            text.push('\n');
            fs::write(&out, text).map_err(|e| Error::Input(format!("cannot write {}: {e}", out.display())))?;
            for c in &report.checks {
                let tag = match c.status {
                    Status::Pass => "PASS",
                    Status::Fail => "FAIL",
                    Status::Skipped => "SKIP",
                    Status::Error => "ERROR",
                };
                println!("[{tag}] {}: {}", c.id, c.detail);
            }
            return Ok(report.exit_code());
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
