use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use qaks_core::angle::{parse_phi, phi_label};
use qaks_core::artifacts::{
    render_adder, render_chain, render_kickback_csv, render_matrix, render_propagation,
    render_resources, render_sweep, render_truth_table, render_verify, resource_row_for,
    resource_rows, verify, write_all, OutputFormat, RunConfig,
};
use qaks_core::experiments::{
    adder_benchmark, chain_experiment, error_propagation, fidelity_sweep_experiment,
    ExperimentConfig,
};
use qaks_core::qaks::crosscheck::{crosscheck, Verdict, UNITARITY_TOLERANCE};
use qaks_core::qaks::CANONICAL_PHIS;
use qaks_core::{Error, PGrid};

#[derive(Parser)]
#[command(name = "qaks", version, about = "QA-KS(phi) gate simulator and verification harness")]
struct Cli {
    /// Phase angle: a decimal or an expression such as `pi`, `pi/2`, `3*pi/4`.
    #[arg(long, global = true, default_value = "pi", value_parser = phi_arg)]
    phi: f64,

    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,

    /// Haar-random input states per noise point.
    #[arg(long = "n-states", global = true, default_value_t = 20, value_parser = clap::value_parser!(u64).range(1..=100_000))]
    n_states: u64,

    /// Noise grid: `min:max:Nlog`, `min:max:Nlin` or a comma-separated list.
    #[arg(long = "p-grid", global = true, default_value = "1e-4:1e-1:10log", value_parser = grid_arg)]
    p_grid: PGrid,

    /// Write into this directory instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

impl Format {
    fn output(self) -> OutputFormat {
        match self {
            Format::Json => OutputFormat::Json,
            Format::Csv => OutputFormat::Csv,
            Format::Text => OutputFormat::Text,
        }
    }

    fn extension(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Csv => "csv",
            Format::Text => "txt",
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print the 8x8 unitary.
    Matrix,
    /// Unitarity deviations; exits 1 if the unitary check fails.
    Verify,
    /// Basis-input classification.
    TruthTable,
    /// Kickback amplitude over a uniform phi grid on [0, 2pi] (CSV).
    Kickback {
        #[arg(long, default_value_t = 33, value_parser = clap::value_parser!(u64).range(2..=100_000))]
        points: u64,
    },
    /// Average gate fidelity sweep for CCX, QA-KS(pi/2), QA-KS(pi).
    Sweep,
    /// Five-qubit two-gate chain against the CCX chain.
    Chain,
    /// Pauli injection on the target and its weight on the controls.
    Propagate,
    /// Two-bit adder with each Toffoli substitution.
    Adder,
    /// T-count, layers and qubit counts.
    Resources {
        /// Report one family member instead of the comparison table.
        #[arg(long, value_parser = phi_arg)]
        variant: Option<f64>,
    },
    /// Compare computed values against every published number.
    Crosscheck,
    /// Run everything into the output directory (default `out`).
    All,
}

fn phi_arg(s: &str) -> Result<f64, String> {
    parse_phi(s).map_err(|e| e.to_string())
}

fn grid_arg(s: &str) -> Result<PGrid, String> {
    PGrid::parse(s).map_err(|e| e.to_string())
}

fn emit(out: Option<&Path>, name: &str, body: &str) -> qaks_core::Result<()> {
    match out {
        Some(dir) => {
            fs::create_dir_all(dir)?;
            let path = dir.join(name);
            fs::write(&path, body)?;
            eprintln!("wrote {}", path.display());
        }
        None => print!("{body}"),
    }
    Ok(())
}

fn run(cli: Cli) -> qaks_core::Result<()> {
    let experiment = ExperimentConfig {
        seed: cli.seed,
        n_states: cli.n_states as usize,
        grid: cli.p_grid.clone(),
    };
    let format = cli.format.output();
    let ext = cli.format.extension();
    let label = phi_label(cli.phi);
    let out = cli.out.as_deref();

    match cli.command {
        Command::Matrix => emit(out, &format!("matrix_{label}.{ext}"), &render_matrix(cli.phi, format)?),
        Command::Verify => {
            let report = verify(cli.phi)?;
            emit(out, &format!("verify_{label}.{ext}"), &render_verify(&report, format)?)?;
            if !report.passed {
                return Err(Error::InvariantViolation(format!(
                    "unitarity deviation {:e}",
                    report.unitarity_deviation
                )));
            }
            Ok(())
        }
        Command::TruthTable => emit(
            out,
            &format!("truth_table_{label}.{ext}"),
            &render_truth_table(cli.phi, format)?,
        ),
        Command::Kickback { points } => {
            emit(out, "kickback_grid.csv", &render_kickback_csv(points as usize)?)
        }
        Command::Sweep => {
            let report = fidelity_sweep_experiment(&experiment)?;
            emit(out, &format!("sweep_gates.{ext}"), &render_sweep(&report, format)?)
        }
        Command::Chain => {
            let report = chain_experiment(cli.phi, &experiment)?;
            if report.qaks_unitarity_deviation.max(report.ccx_unitarity_deviation) >= UNITARITY_TOLERANCE {
                return Err(Error::InvariantViolation("chain unitary is not unitary".into()));
            }
            emit(out, &format!("chain_{label}.{ext}"), &render_chain(&report, format)?)
        }
        Command::Propagate => {
            let report = error_propagation(&CANONICAL_PHIS)?;
            emit(out, &format!("propagate_all.{ext}"), &render_propagation(&report, format)?)
        }
        Command::Adder => {
            let report = adder_benchmark(&experiment)?;
            emit(out, &format!("adder_all.{ext}"), &render_adder(&report, format)?)
        }
        Command::Resources { variant } => {
            let (rows, name) = match variant {
                Some(phi) => (vec![resource_row_for(phi)?], format!("resources_{}", phi_label(phi))),
                None => (resource_rows()?, "resources".to_string()),
            };
            emit(out, &format!("{name}.{ext}"), &render_resources(&rows, format)?)
        }
        Command::Crosscheck => {
            let report = crosscheck(&experiment)?;
            let body = match cli.format {
                Format::Json => report.to_json()?,
                Format::Csv | Format::Text => report.to_text(),
            };
            emit(out, &format!("crosscheck.{ext}"), &body)?;
            eprintln!(
                "{} MATCH, {} BAND_MATCH, {} MISMATCH",
                report.count(Verdict::Match),
                report.count(Verdict::BandMatch),
                report.count(Verdict::Mismatch)
            );
            Ok(())
        }
        Command::All => {
            let dir = out.map_or_else(|| PathBuf::from("out"), Path::to_path_buf);
            let summary = write_all(&RunConfig { phi: cli.phi, experiment }, &dir)?;
            println!(
                "wrote {} files to {} ({} cross-check mismatches)",
                summary.files.len(),
                dir.display(),
                summary.mismatches
            );
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
