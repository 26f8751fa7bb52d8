//! Batch command-line front end.
//!
//! Exit codes: 0 success, 1 verification failed, 2 parse error,
//! 3 semantic error, 4 resource cap exceeded.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::circuit::{count_gates, export_text, GateCounts};
use crate::error::Error;
use crate::fermion::{ExcitationOperator, JwConvention};
use crate::resources::{plan_shape, traditional_counts, worst_case_counts};
use crate::schemes::{compile, DecompositionPlan, Scheme};
use crate::sim::{deviation, StateVector, SIM_CAP};
use crate::synth::synth_ucc_factor;
use crate::verify::{self, EXACT_TOL};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_SEMANTIC: i32 = 3;
pub const EXIT_CAP: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "uccdecomp", version, about = "UCC factor synthesis and decomposition")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Synthesize the circuit of one UCC factor, e.g. `A[0,1->4,5]`.
    Synth {
        operator: String,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        theta: f64,
        /// Number of spin-orbitals (defaults to the highest orbital + 1).
        #[arg(long)]
        orbitals: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build and compile a decomposition plan.
    Decompose {
        scheme: String,
        operator: String,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        theta: f64,
        #[arg(long)]
        orbitals: Option<usize>,
        /// Circuit output path.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Plan listing output path; printed to stdout if absent.
        #[arg(long)]
        plan: Option<PathBuf>,
    },
    /// Check a scheme (or a single factor) against the exact factor.
    Verify {
        /// Scheme name, or an operator such as `A[0,1->2,3]`.
        target: String,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = 5)]
        thetas: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        orbitals: Option<usize>,
        /// Also sweep orbital orderings.
        #[arg(long)]
        orderings: bool,
        /// Random orderings added to the fixed ones.
        #[arg(long, default_value_t = 4)]
        random_orderings: usize,
    },
    /// Write the gate-count comparison CSV.
    Sweep {
        #[arg(long, value_delimiter = ',', default_value = "3,4,5,6")]
        ranks: Vec<usize>,
        #[arg(long, default_value_t = 8)]
        m_min: usize,
        #[arg(long, default_value_t = 64)]
        m_max: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug)]
enum Failure {
    Lib(Error),
    Io(std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

fn exit_code(e: &Failure) -> i32 {
    match e {
        Failure::Lib(Error::Parse(_)) => EXIT_PARSE,
        Failure::Lib(Error::CapExceeded { .. }) => EXIT_CAP,
        _ => EXIT_SEMANTIC,
    }
}

/// Parses `args` (program name first), runs the command, and returns the
/// exit code. Normal output goes to stdout, diagnostics to stderr.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    run_with_output(args, &mut out)
}

/// As [`run`], writing normal output to `out`.
pub fn run_with_output<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            match &e {
                Failure::Lib(err) => eprintln!("error: {err}"),
                Failure::Io(err) => eprintln!("error: {err}"),
            }
            exit_code(&e)
        }
    }
}

fn parse_operator(s: &str) -> Result<ExcitationOperator, Failure> {
    // Malformed text is a parse error; well-formed but invalid operators
    // (overlap, duplicates) are semantic errors.
    let op = s.parse::<ExcitationOperator>();
    match op {
        Ok(op) => Ok(op),
        Err(Error::Parse(m)) => Err(Error::Parse(m).into()),
        Err(e) => Err(e.into()),
    }
}

fn counts_line(n: &GateCounts) -> String {
    format!(
        "cnot={} rot={} clifford={} mcrz={}",
        n.cnot, n.single_qubit_rotation, n.single_qubit_clifford, n.multi_controlled_rotation
    )
}

fn write_or_print(path: Option<&PathBuf>, text: &str, out: &mut dyn Write) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> Result<i32, Failure> {
    match cmd {
        Command::Synth {
            operator,
            theta,
            orbitals,
            out: path,
        } => {
            let op = parse_operator(&operator)?;
            let m = orbitals.unwrap_or(op.max_orbital() + 1);
            let c = synth_ucc_factor(&op, theta, &JwConvention::identity(m))?;
            write_or_print(path.as_ref(), &export_text(&c)?, out)?;
            writeln!(out, "{}", counts_line(&count_gates(&c)))?;
            Ok(EXIT_OK)
        }
        Command::Decompose {
            scheme,
            operator,
            theta,
            orbitals,
            out: path,
            plan: plan_path,
        } => {
            let scheme: Scheme = scheme.parse()?;
            let op = parse_operator(&operator)?;
            let m = orbitals.unwrap_or(op.max_orbital() + 1);
            let plan = DecompositionPlan::new(scheme, &op, m)?;
            let compiled = compile(&plan, theta, &JwConvention::identity(plan.total_qubits()))?;
            write_or_print(plan_path.as_ref(), &plan.to_text(), out)?;
            if let Some(p) = &path {
                fs::write(p, export_text(&compiled.circuit)?)?;
            }
            let worst = worst_case_counts(&plan_shape(&plan), plan.fermionic_width());
            let trad = traditional_counts(op.rank(), m)?;
            writeln!(
                out,
                "decomposed_cnot={} traditional_cnot={} synthesized_cnot={} qubits={}",
                worst.cnot,
                trad.cnot,
                compiled.counts().cnot,
                plan.total_qubits()
            )?;
            Ok(EXIT_OK)
        }
        Command::Verify {
            target,
            trials,
            thetas,
            seed,
            orbitals,
            orderings,
            random_orderings,
        } => {
            if target.starts_with("A[") {
                return verify_factor(&target, trials, thetas, seed, orbitals, out);
            }
            let scheme: Scheme = target.parse()?;
            let n = scheme.rank();
            let m = orbitals.unwrap_or(2 * n);
            let op = ExcitationOperator::new((0..n).collect(), (n..2 * n).collect())?;
            let plan = DecompositionPlan::new(scheme, &op, m)?;
            if plan.total_qubits() > SIM_CAP {
                return Err(Error::CapExceeded {
                    n_qubits: plan.total_qubits(),
                    cap: SIM_CAP,
                }
                .into());
            }
            let report = verify::verify_plan(&plan, trials, thetas, seed)?;
            writeln!(
                out,
                "scheme={} qubits={} cases={} seed={} max_deviation={:.3e} max_leakage={:.3e} result={}",
                report.scheme,
                report.n_qubits,
                report.cases,
                report.seed,
                report.max_deviation,
                report.max_leakage,
                if report.passed() { "pass" } else { "fail" }
            )?;
            if scheme == Scheme::Uncontrolled {
                let e = verify::uncontrolled_exhibit(std::f64::consts::FRAC_PI_4, 1.0.into())?;
                writeln!(
                    out,
                    "counterexample |acxz> theta=pi/4: acxz={:.12} ac_eta1_eta2={:.12} leaked={:.12}",
                    e.acxz.re, e.ac_eta.re, e.leaked
                )?;
            }
            let mut ok = report.passed();
            if orderings {
                for (o, r) in verify::ordering_sweep(scheme, random_orderings, trials.min(10), thetas.min(3), seed)? {
                    writeln!(
                        out,
                        "ordering={} occ={:?} virt={:?} max_deviation={:.3e} max_leakage={:.3e} result={}",
                        o.label,
                        o.occupied,
                        o.virtual_,
                        r.max_deviation,
                        r.max_leakage,
                        if r.passed() { "pass" } else { "fail" }
                    )?;
                    ok &= r.passed();
                }
            }
            Ok(if ok { EXIT_OK } else { EXIT_VERIFY_FAILED })
        }
        Command::Sweep {
            ranks,
            m_min,
            m_max,
            out: path,
        } => {
            let csv = crate::resources::emit_sweep_csv(&ranks, m_min..=m_max)?;
            write_or_print(path.as_ref(), &csv, out)?;
            Ok(EXIT_OK)
        }
    }
}

fn verify_factor(
    text: &str,
    trials: usize,
    thetas: usize,
    seed: u64,
    orbitals: Option<usize>,
    out: &mut dyn Write,
) -> Result<i32, Failure> {
    let op = parse_operator(text)?;
    let m = orbitals.unwrap_or(op.max_orbital() + 1);
    if m > SIM_CAP {
        return Err(Error::CapExceeded {
            n_qubits: m,
            cap: SIM_CAP,
        }
        .into());
    }
    let conv = JwConvention::identity(m);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..thetas {
        let theta = rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI);
        let c = synth_ucc_factor(&op, theta, &conv)?;
        for _ in 0..trials {
            let input = StateVector::random(m, &mut rng)?;
            let mut a = input.clone();
            a.apply_circuit(&c)?;
            let mut b = input;
            b.apply_ucc_factor_exact(&op, theta, &conv)?;
            worst = worst.max(deviation(&a, &b));
        }
    }
    let ok = worst < EXACT_TOL;
    writeln!(
        out,
        "factor={op} qubits={m} cases={} seed={seed} max_deviation={worst:.3e} result={}",
        trials * thetas,
        if ok { "pass" } else { "fail" }
    )?;
    Ok(if ok { EXIT_OK } else { EXIT_VERIFY_FAILED })
}
