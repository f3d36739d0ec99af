//! `tqft`: verify Frobenius-algebra axioms, Hermitian/unitary structure,
//! and cobordism evaluations from JSON algebra files.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use report::{fmt_matrix, Report};

#[derive(Parser)]
#[command(name = "tqft", version, about = "2D TQFTs as Frobenius algebras: axiom checks, Hermitian/unitary structure, cobordism evaluation")]
struct Cli {
    /// Relative tolerance for residual checks
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,

    /// Seed for randomized checks (classify's C* sampling)
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Emit a machine-readable JSON report on stdout
    #[arg(long, global = true)]
    json: bool,

    /// Suppress the report; communicate through the exit code only
    #[arg(long, global = true)]
    quiet: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify the Frobenius-algebra axioms of a file
    Check { file: PathBuf },
    /// Build the involution J with h(x, J(y)) = β(x, y) and report the
    /// Hermitian-axiom checks and the real form
    Hermitian { file: PathBuf },
    /// Classify unitary data: idempotent weights, handle spectrum, C* checks
    Classify {
        file: PathBuf,
        /// Number of random samples for the C*-identity sweep
        #[arg(long, default_value_t = 1000)]
        samples: usize,
    },
    /// Evaluate a cobordism expression as a matrix
    Eval {
        file: PathBuf,
        /// Expression, e.g. "comul ; mul" or "surf(2,1,1)"
        #[arg(short, long)]
        expr: String,
    },
    /// Closed-surface invariant of the given genus
    Surface {
        file: PathBuf,
        #[arg(short, long)]
        genus: usize,
    },
    /// Residual of the adjoint identity for Z(expr) and Z(expr*)
    Adjoint {
        file: PathBuf,
        #[arg(short, long)]
        expr: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Check { file } => commands::check(file, cli.tol),
        Command::Hermitian { file } => commands::hermitian(file, cli.tol),
        Command::Classify { file, samples } => {
            commands::classify(file, cli.tol, cli.seed, *samples)
        }
        Command::Eval { file, expr } => commands::eval(file, cli.tol, expr),
        Command::Surface { file, genus } => commands::surface(file, cli.tol, *genus),
        Command::Adjoint { file, expr } => commands::adjoint(file, cli.tol, expr),
    };
    match result {
        Ok(report) => {
            if !cli.quiet {
                print_report(&cli, &report);
            }
            if report.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(err) => {
            eprintln!("error: {}", err.message());
            ExitCode::from(err.exit_code() as u8)
        }
    }
}

fn print_report(cli: &Cli, report: &Report) {
    let text = if cli.json {
        format!("{}\n", report.to_json())
    } else if let (Command::Eval { .. }, Some(m)) = (&cli.command, matrix_from_report(report)) {
        // human eval output shows the matrix as a grid instead of raw pairs
        let mut out = String::from("command: eval\n");
        if let Some(expr) = report.data.get("expr").and_then(|v| v.as_str()) {
            out.push_str(&format!("expr: {expr}\n"));
        }
        out.push_str(&format!("matrix ({}x{}):\n", m.rows(), m.cols()));
        out.push_str(&fmt_matrix(&m));
        out.push_str(if report.pass { "PASS\n" } else { "FAIL\n" });
        out
    } else {
        report.to_text()
    };
    // tolerate closed pipes (e.g. piping into `head`)
    use std::io::Write;
    let _ = std::io::stdout().write_all(text.as_bytes());
}

fn matrix_from_report(report: &Report) -> Option<tqft_core::Matrix> {
    let rows = report.data.get("matrix")?.as_array()?;
    let mut out = Vec::with_capacity(rows.len());
    for row in rows {
        let mut r = Vec::new();
        for cell in row.as_array()? {
            let pair = cell.as_array()?;
            r.push(tqft_core::Scalar::new(pair[0].as_f64()?, pair[1].as_f64()?));
        }
        out.push(r);
    }
    tqft_core::Matrix::from_rows(out).ok()
}
