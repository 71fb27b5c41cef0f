//! Rendering of reports and the full output tree written by `qaks all`.
//!
//! Every renderer is a pure function of its inputs, so identical
//! configurations give byte-identical files.

use std::f64::consts::{PI, TAU};
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::angle::{phi_display, phi_label};
use crate::circuit::{Circuit, CostTable, ResourceReport};
use crate::error::{Error, Result};
use crate::experiments::{
    chain_experiment, qaks_label, AdderReport, ChainReport, ExperimentConfig, PropagationReport,
    SweepReport, CCX_LABEL,
};
use crate::format::{fmt_exact, fmt_sig};
use crate::gates::GateKind;
use crate::qaks::crosscheck::{build_report, ExperimentResults, UNITARITY_TOLERANCE};
use crate::qaks::{basis_label, build_qaks, kickback_amplitude, truth_table, InputClassification};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub phi: f64,
    pub experiment: ExperimentConfig,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            phi: PI,
            experiment: ExperimentConfig::default(),
        }
    }
}

fn json<T: Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

fn fmt_complex(re: f64, im: f64) -> String {
    let im_str = fmt_exact(im.abs());
    let sign = if im < 0.0 && im != 0.0 { '-' } else { '+' };
    format!("{}{sign}{im_str}i", fmt_exact(re))
}

#[derive(Serialize)]
struct MatrixJson {
    phi: f64,
    basis: Vec<String>,
    re: Vec<Vec<f64>>,
    im: Vec<Vec<f64>>,
}

/// The 8×8 unitary of QA-KS(φ), row-major with 17 significant digits.
pub fn render_matrix(phi: f64, format: OutputFormat) -> Result<String> {
    let gate = build_qaks(phi)?;
    let u = gate.unitary();
    let labels: Vec<String> = (0..8).map(|b| basis_label(b, 3)).collect();
    let clean = |x: f64| if x == 0.0 { 0.0 } else { x };
    Ok(match format {
        OutputFormat::Json => json(&MatrixJson {
            phi,
            basis: labels,
            re: (0..8).map(|r| (0..8).map(|c| clean(u.get(r, c).re)).collect()).collect(),
            im: (0..8).map(|r| (0..8).map(|c| clean(u.get(r, c).im)).collect()).collect(),
        })?,
        OutputFormat::Csv => {
            let mut out = String::from("row,col,re,im\n");
            for r in 0..8 {
                for c in 0..8 {
                    let z = u.get(r, c);
                    let _ = writeln!(out, "{},{},{},{}", labels[r], labels[c], fmt_exact(z.re), fmt_exact(z.im));
                }
            }
            out
        }
        OutputFormat::Text => {
            let mut out = format!(
                "# U(QA-KS(phi)), phi = {} ({}); rows = outputs, columns = inputs; q0 is the most significant bit\n",
                fmt_exact(phi),
                phi_display(phi)
            );
            let _ = writeln!(out, "# basis {}", labels.join(" "));
            for (r, label) in labels.iter().enumerate() {
                let entries: Vec<String> = (0..8)
                    .map(|c| {
                        let z = u.get(r, c);
                        fmt_complex(z.re, z.im)
                    })
                    .collect();
                let _ = writeln!(out, "{label} {}", entries.join(" "));
            }
            out
        }
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub phi: f64,
    pub unitarity_deviation: f64,
    pub co_unitarity_deviation: f64,
    pub tolerance: f64,
    pub passed: bool,
}

/// `max|U†U − I|` and `max|UU† − I|` for QA-KS(φ).
pub fn verify(phi: f64) -> Result<VerifyReport> {
    let u = build_qaks(phi)?.unitary().clone();
    let dev = u.unitarity_deviation();
    let co = u.matmul(&u.dagger())?.max_abs_deviation_from_identity();
    Ok(VerifyReport {
        phi,
        unitarity_deviation: dev,
        co_unitarity_deviation: co,
        tolerance: UNITARITY_TOLERANCE,
        passed: dev < UNITARITY_TOLERANCE && co < UNITARITY_TOLERANCE,
    })
}

pub fn render_verify(report: &VerifyReport, format: OutputFormat) -> Result<String> {
    Ok(match format {
        OutputFormat::Json => json(report)?,
        OutputFormat::Csv => format!(
            "phi,unitarity_deviation,co_unitarity_deviation,passed\n{},{},{},{}\n",
            fmt_exact(report.phi),
            fmt_sig(report.unitarity_deviation, 10),
            fmt_sig(report.co_unitarity_deviation, 10),
            report.passed
        ),
        OutputFormat::Text => format!(
            "phi = {} ({})\nmax|U†U - I| = {}\nmax|UU† - I| = {}\ntolerance    = {}\n{}\n",
            fmt_exact(report.phi),
            phi_display(report.phi),
            fmt_sig(report.unitarity_deviation, 6),
            fmt_sig(report.co_unitarity_deviation, 6),
            fmt_sig(report.tolerance, 3),
            if report.passed { "unitary" } else { "NOT UNITARY" }
        ),
    })
}

pub fn render_truth_table(phi: f64, format: OutputFormat) -> Result<String> {
    let rows = truth_table(phi)?;
    Ok(match format {
        OutputFormat::Json => json(&rows)?,
        OutputFormat::Csv => {
            let mut out = String::from("input,kind,component_count,output\n");
            for row in &rows {
                let _ = writeln!(out, "{},{:?},{},{}", row.basis_input, row.kind, row.component_count, describe_output(row));
            }
            out
        }
        OutputFormat::Text => {
            let mut out = format!("# QA-KS({}) basis-input classification\n", phi_display(phi));
            let _ = writeln!(out, "{:<7} {:<24} {:>5}  output", "input", "kind", "comps");
            for row in &rows {
                let _ = writeln!(
                    out,
                    "{:<7} {:<24} {:>5}  {}",
                    row.basis_input,
                    format!("{:?}", row.kind),
                    row.component_count,
                    describe_output(row)
                );
            }
            out
        }
    })
}

fn describe_output(row: &InputClassification) -> String {
    row.output
        .iter()
        .map(|c| {
            if c.im == 0.0 {
                format!("{}{}", fmt_sig(c.re, 4), c.basis)
            } else {
                let sign = if c.im < 0.0 { '-' } else { '+' };
                format!("({}{sign}{}i){}", fmt_sig(c.re, 4), fmt_sig(c.im.abs(), 4), c.basis)
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

/// `sin(φ/2)` and the simulated q0-flip magnitude on a uniform grid over
/// `[0, 2π]`.
pub fn render_kickback_csv(points: usize) -> Result<String> {
    if points < 2 {
        return Err(Error::InvalidArgument("kickback grid needs at least 2 points".into()));
    }
    let mut out = String::from("phi,kickback_amplitude,dynamic_amplitude\n");
    for k in 0..points {
        let phi = TAU * k as f64 / (points - 1) as f64;
        let gate = build_qaks(phi)?;
        let _ = writeln!(
            out,
            "{},{},{}",
            fmt_sig(phi, 10),
            fmt_sig(kickback_amplitude(phi), 10),
            fmt_sig(gate.dynamic_kickback(), 10)
        );
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct ResourceRow {
    pub label: String,
    pub report: ResourceReport,
}

/// Resource rows for CCX, QA-KS(π) and QA-KS(π/2).
pub fn resource_rows() -> Result<Vec<ResourceRow>> {
    let table = CostTable::default();
    let ccx = Circuit::new(3)?.with(GateKind::Ccx, &[0, 1, 2])?;
    let mut rows = vec![ResourceRow {
        label: CCX_LABEL.into(),
        report: ccx.resource_count(&table)?,
    }];
    for phi in [PI, std::f64::consts::FRAC_PI_2] {
        rows.push(ResourceRow {
            label: qaks_label(phi),
            report: build_qaks(phi)?.circuit().resource_count(&table)?,
        });
    }
    Ok(rows)
}

/// Resource row for an arbitrary family member.
pub fn resource_row_for(phi: f64) -> Result<ResourceRow> {
    Ok(ResourceRow {
        label: qaks_label(phi),
        report: build_qaks(phi)?.circuit().resource_count(&CostTable::default())?,
    })
}

pub fn render_resources(rows: &[ResourceRow], format: OutputFormat) -> Result<String> {
    Ok(match format {
        OutputFormat::Json => json(&rows)?,
        OutputFormat::Csv => {
            let mut out = String::from("gate,t_count,macro_layers,primitive_gate_count,qubit_count\n");
            for r in rows {
                let _ = writeln!(
                    out,
                    "{},{},{},{},{}",
                    r.label, r.report.t_count, r.report.macro_layers, r.report.primitive_gate_count, r.report.qubit_count
                );
            }
            out
        }
        OutputFormat::Text => {
            let mut out = format!("{:<22}", "resource");
            for r in rows {
                let _ = write!(out, " {:>14}", r.label);
            }
            out.push('\n');
            type Field = fn(&ResourceReport) -> u64;
            let lines: [(&str, Field); 4] = [
                ("t_count", |r| r.t_count),
                ("macro_layers", |r| r.macro_layers),
                ("primitive_gate_count", |r| r.primitive_gate_count),
                ("qubit_count", |r| r.qubit_count),
            ];
            for (name, get) in lines {
                let _ = write!(out, "{name:<22}");
                for r in rows {
                    let _ = write!(out, " {:>14}", get(&r.report));
                }
                out.push('\n');
            }
            out
        }
    })
}

pub fn render_sweep(report: &SweepReport, format: OutputFormat) -> Result<String> {
    Ok(match format {
        OutputFormat::Json => json(report)?,
        OutputFormat::Csv | OutputFormat::Text => report.csv(),
    })
}

pub fn render_chain(report: &ChainReport, format: OutputFormat) -> Result<String> {
    Ok(match format {
        OutputFormat::Json => json(report)?,
        OutputFormat::Csv => report.csv(),
        OutputFormat::Text => {
            let mut out = format!(
                "{} vs {}\nmax|U_CCX - U_QAKS|    = {}\nmax||U_CCX| - |U_QAKS|| = {}\n||U_CCX - U_QAKS||_F  = {}\n",
                report.ccx_label,
                report.qaks_label,
                fmt_sig(report.max_abs_diff, 6),
                fmt_sig(report.max_magnitude_diff, 6),
                fmt_sig(report.frobenius_diff, 6)
            );
            out.push_str("output fidelity per input:\n");
            for (label, f) in &report.per_input_fidelity {
                let _ = writeln!(out, "  {label} {}", fmt_sig(*f, 6));
            }
            out.push_str(&report.csv());
            out
        }
    })
}

pub fn render_propagation(report: &PropagationReport, format: OutputFormat) -> Result<String> {
    Ok(match format {
        OutputFormat::Json => json(report)?,
        OutputFormat::Csv | OutputFormat::Text => report.csv(),
    })
}

pub fn render_adder(report: &AdderReport, format: OutputFormat) -> Result<String> {
    Ok(match format {
        OutputFormat::Json => json(report)?,
        OutputFormat::Csv => report.csv(),
        OutputFormat::Text => format!(
            "netlist:\n{}gap CCX - QA-KS(pi) at p={}: {}\ngap CCX - QA-KS(pi/2) at p={}: {}\nmax |pi/2 - pi| over grid: {}\n{}",
            report.netlist,
            fmt_sig(report.gap_p, 3),
            fmt_sig(report.gap_at_1e_2, 6),
            fmt_sig(report.gap_p, 3),
            fmt_sig(report.gap_pi_2_at_1e_2, 6),
            fmt_sig(report.variant_curve_max_diff, 6),
            report.csv()
        ),
    })
}

/// Files written by [`write_all`], relative to the output directory.
#[derive(Clone, Debug)]
pub struct AllSummary {
    pub files: Vec<PathBuf>,
    pub mismatches: usize,
}

/// Runs every report into `out_dir`. Fails with
/// [`Error::InvariantViolation`] when a synthesized unitary is not unitary.
pub fn write_all(cfg: &RunConfig, out_dir: &Path) -> Result<AllSummary> {
    fs::create_dir_all(out_dir)?;
    let mut files = Vec::new();
    let mut write = |name: String, body: String| -> Result<()> {
        fs::write(out_dir.join(&name), body)?;
        files.push(PathBuf::from(name));
        Ok(())
    };
    let label = phi_label(cfg.phi);

    let v = verify(cfg.phi)?;
    if !v.passed {
        return Err(Error::InvariantViolation(format!(
            "QA-KS({}) unitarity deviation {:e}",
            phi_display(cfg.phi),
            v.unitarity_deviation
        )));
    }
    write(format!("verify_{label}.txt"), render_verify(&v, OutputFormat::Text)?)?;
    write(format!("matrix_{label}.txt"), render_matrix(cfg.phi, OutputFormat::Text)?)?;
    write(format!("matrix_{label}.json"), render_matrix(cfg.phi, OutputFormat::Json)?)?;
    write(format!("truth_table_{label}.txt"), render_truth_table(cfg.phi, OutputFormat::Text)?)?;
    write(format!("truth_table_{label}.json"), render_truth_table(cfg.phi, OutputFormat::Json)?)?;
    write("kickback_grid.csv".into(), render_kickback_csv(33)?)?;
    let rows = resource_rows()?;
    write("resources.txt".into(), render_resources(&rows, OutputFormat::Text)?)?;
    write("resources.json".into(), render_resources(&rows, OutputFormat::Json)?)?;

    let results = ExperimentResults::run(&cfg.experiment)?;
    for (name, dev) in [
        ("CCX chain", results.chain.ccx_unitarity_deviation),
        ("QA-KS chain", results.chain.qaks_unitarity_deviation),
    ] {
        if dev >= UNITARITY_TOLERANCE {
            return Err(Error::InvariantViolation(format!("{name} unitarity deviation {dev:e}")));
        }
    }
    write("sweep_gates.csv".into(), results.sweep.csv())?;
    write("sweep_gates.json".into(), json(&results.sweep)?)?;
    let chain = if cfg.phi == PI {
        results.chain.clone()
    } else {
        chain_experiment(cfg.phi, &cfg.experiment)?
    };
    write(format!("chain_{label}.csv"), chain.csv())?;
    write(format!("chain_{label}.json"), json(&chain)?)?;
    write("propagate_all.csv".into(), results.propagation.csv())?;
    write("propagate_all.json".into(), json(&results.propagation)?)?;
    write("adder_all.csv".into(), results.adder.csv())?;
    write("adder_all.json".into(), json(&results.adder)?)?;

    let report = build_report(&results)?;
    write("crosscheck.json".into(), report.to_json()?)?;
    write("crosscheck.txt".into(), report.to_text())?;

    Ok(AllSummary {
        files,
        mismatches: report.count(crate::qaks::crosscheck::Verdict::Mismatch),
    })
}
