use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use fideq_cli::{
    run_check, run_generate, scan_csv, scan_records, scan_summary, summary_json, write_atomic,
};
use fideq_core::selftest::run_selftest;

/// Global vs local fidelity of pure bipartite 2×d states: check pairs,
/// scan random pairs, generate equality-family states, run self-tests.
#[derive(Parser)]
#[command(name = "fideq", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a state pair: fidelities, gap, and the equality conditions.
    ///
    /// Prints a JSON report. Exit 0 when the numeric and condition verdicts
    /// agree, 2 when they disagree, 1 on input errors.
    Check {
        /// Reference state file (state JSON schema)
        psi: PathBuf,
        /// Candidate state file (state JSON schema)
        phi: PathBuf,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Sample Haar-random pairs, write per-pair records as CSV, and print a
    /// summary JSON.
    ///
    /// Exit 0 iff every row respects the fidelity inequality (gap ≥ −1e−10)
    /// and the two verdicts agree.
    Scan {
        #[arg(long = "dim-b")]
        dim_b: usize,
        #[arg(long)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        /// Output CSV path (written atomically)
        #[arg(long)]
        out: PathBuf,
    },
    /// Generate an equality-family state and its reference from a parameter
    /// file, writing {"psi": …, "phi": …, "report": …}.
    ///
    /// Exit 0 iff the generated pair passes the equality verdict.
    Generate {
        /// Parameter file: {"lambda","k","p","theta01","theta10"} for an
        /// entangled reference, or {"c11","tail"} for the separable family
        #[arg(long)]
        params: PathBuf,
        #[arg(long = "dim-b")]
        dim_b: usize,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Run the built-in verification suites at fixed seeds.
    Selftest {
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        /// Flip one sign inside the identity suite (harness sanity check)
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Check { psi, phi, tol } => cmd_check(&psi, &phi, tol),
        Command::Scan {
            dim_b,
            samples,
            seed,
            tol,
            out,
        } => cmd_scan(dim_b, samples, seed, tol, &out),
        Command::Generate {
            params,
            dim_b,
            out,
            tol,
        } => cmd_generate(&params, dim_b, &out, tol),
        Command::Selftest { tol, inject_fault } => cmd_selftest(tol, inject_fault),
    };
    ExitCode::from(code)
}

fn cmd_check(psi: &Path, phi: &Path, tol: f64) -> u8 {
    let psi_text = match std::fs::read_to_string(psi) {
        Ok(t) => t,
        Err(e) => return input_error(&format!("{}: {e}", psi.display())),
    };
    let phi_text = match std::fs::read_to_string(phi) {
        Ok(t) => t,
        Err(e) => return input_error(&format!("{}: {e}", phi.display())),
    };
    let outcome = match run_check(&psi_text, &phi_text, tol) {
        Ok(o) => o,
        Err(e) => return input_error(&e.to_string()),
    };
    println!("{}", outcome.to_json());
    if outcome.verdicts_agree() {
        0
    } else {
        eprintln!(
            "verdict disagreement: numeric={} conditions={}",
            outcome.verdict_numeric, outcome.verdict_conditions
        );
        2
    }
}

fn cmd_scan(dim_b: usize, samples: u64, seed: u64, tol: f64, out: &Path) -> u8 {
    let records = match scan_records(dim_b, samples, seed, tol) {
        Ok(r) => r,
        Err(e) => return input_error(&e.to_string()),
    };
    if let Err(e) = write_atomic(out, &scan_csv(&records)) {
        return input_error(&format!("{}: {e}", out.display()));
    }
    let summary = scan_summary(&records);
    println!("{}", summary_json(&summary));
    if summary.all_ok {
        0
    } else {
        eprintln!("scan found an inequality violation or verdict disagreement");
        2
    }
}

fn cmd_generate(params: &Path, dim_b: usize, out: &Path, tol: f64) -> u8 {
    let text = match std::fs::read_to_string(params) {
        Ok(t) => t,
        Err(e) => return input_error(&format!("{}: {e}", params.display())),
    };
    let outcome = match run_generate(&text, dim_b, tol) {
        Ok(o) => o,
        Err(e) => return input_error(&e.to_string()),
    };
    if let Err(e) = write_atomic(out, &outcome.document) {
        return input_error(&format!("{}: {e}", out.display()));
    }
    println!("{}", outcome.report_json);
    if outcome.verdict {
        0
    } else {
        eprintln!("generated state failed the equality verdict");
        2
    }
}

fn cmd_selftest(tol: f64, inject_fault: bool) -> u8 {
    let suites = match run_selftest(tol, inject_fault) {
        Ok(s) => s,
        Err(e) => return input_error(&e.to_string()),
    };
    let mut ok = true;
    for suite in &suites {
        println!(
            "{}: {} ({} cases, {} failures, max residual {:e})",
            suite.name,
            if suite.passed() { "pass" } else { "FAIL" },
            suite.cases,
            suite.failures,
            suite.max_residual
        );
        ok &= suite.passed();
    }
    if ok {
        0
    } else {
        2
    }
}

fn input_error(msg: &str) -> u8 {
    eprintln!("error: {msg}");
    1
}
