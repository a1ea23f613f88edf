//! `mltl` command-line tool.
//!
//! Exit codes: 0 success, 1 parse or usage error, 2 ill-formed interval,
//! 3 equivalence budget exceeded, 4 internal invariant violation.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use mltl::benchgen::{generate_suite, write_suite, GenConfig, TraceLenPolicy};
use mltl::properties::{run_selftest, SelftestConfig};
use mltl::{
    classify, complen, convert_nnf, equivalence_witness, evaluate, parse_formula, parse_trace,
    print_formula, print_trace, progress, progress_residuals, EquivBudget, Formula, MltlError,
    Trace, Verdict,
};

#[derive(Parser)]
#[command(name = "mltl", version, about = "Mission-time LTL evaluation, progression and benchmarks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct BudgetArgs {
    /// Largest proposition alphabet to enumerate over
    #[arg(long = "max-alpha", default_value_t = 4)]
    max_alpha: usize,
    /// Longest trace to enumerate
    #[arg(long = "max-len", default_value_t = 12)]
    max_len: usize,
    /// Refuse enumerations visiting more traces than this
    #[arg(long = "max-traces", default_value_t = EquivBudget::DEFAULT_MAX_TRACES)]
    max_traces: u64,
}

impl BudgetArgs {
    fn budget(self) -> EquivBudget {
        EquivBudget::new(self.max_alpha, self.max_len).with_max_traces(self.max_traces)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Parse a formula and check that every interval is well-defined
    Check { formula: String },
    /// Decide whether a trace satisfies a formula
    Eval { formula: String, trace: PathBuf },
    /// Progress a formula through a trace and print the residual
    Progress {
        formula: String,
        trace: PathBuf,
        /// Print the residual after every consumed state
        #[arg(long)]
        steps: bool,
    },
    /// Progress a formula and classify the residual as TRUE, FALSE or RESIDUAL
    Classify {
        formula: String,
        trace: PathBuf,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Convert a formula to negation normal form
    Nnf { formula: String },
    /// Print a formula's computation length
    Complen { formula: String },
    /// Decide semantic equivalence, printing a distinguishing trace if any
    Equiv {
        left: String,
        right: String,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Generate a labeled benchmark suite as JSON lines
    Gen {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        cases: usize,
        #[arg(long, default_value_t = 3)]
        depth: usize,
        #[arg(long, default_value_t = 3)]
        bound: usize,
        #[arg(long, default_value_t = 2)]
        props: usize,
        /// at, below, above or above:N
        #[arg(long, default_value = "at")]
        policy: TraceLenPolicy,
        /// Output file; stdout when omitted or "-"
        #[arg(long)]
        out: Option<PathBuf>,
        /// Worker threads; output does not depend on this
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Run the randomized correctness properties
    Selftest {
        #[arg(long, default_value_t = 1000)]
        cases: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

enum Failure {
    Lib(MltlError),
    Io(String),
    /// Already reported; carries the exit code.
    Reported(u8),
}

impl From<MltlError> for Failure {
    fn from(e: MltlError) -> Self {
        Failure::Lib(e)
    }
}

impl From<mltl::ParseError> for Failure {
    fn from(e: mltl::ParseError) -> Self {
        Failure::Lib(e.into())
    }
}

fn exit_code(e: &MltlError) -> u8 {
    match e {
        MltlError::Parse(_) | MltlError::PreconditionViolated(_) => 1,
        MltlError::IllFormedInterval(_) => 2,
        MltlError::BudgetExceeded(_) => 3,
        MltlError::DichotomyViolation { .. } | MltlError::CrossCheckFailed(_) => 4,
    }
}

fn read_input(path: &Path) -> Result<String, Failure> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Io(format!("stdin: {e}")))?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
    }
}

fn load_trace(path: &Path) -> Result<Trace, Failure> {
    Ok(parse_trace(&read_input(path)?)?)
}

fn formula(text: &str) -> Result<Formula, Failure> {
    Ok(parse_formula(text)?)
}

fn run(cmd: Command, out: &mut impl Write) -> Result<(), Failure> {
    let io_err = |e: io::Error| Failure::Io(e.to_string());
    match cmd {
        Command::Check { formula: text } => {
            let f = formula(&text)?;
            match f.first_ill_formed() {
                None => writeln!(out, "well-formed").map_err(io_err)?,
                Some(iv) => {
                    writeln!(out, "ill-formed").map_err(io_err)?;
                    eprintln!("error: interval {iv} has lower bound above upper bound");
                    return Err(Failure::Reported(2));
                }
            }
        }
        Command::Eval { formula: text, trace } => {
            let f = formula(&text)?;
            let t = load_trace(&trace)?;
            writeln!(out, "{}", evaluate(&t, &f)?).map_err(io_err)?;
        }
        Command::Progress {
            formula: text,
            trace,
            steps,
        } => {
            let f = formula(&text)?;
            let t = load_trace(&trace)?;
            if steps {
                for r in progress_residuals(&f, &t)? {
                    writeln!(out, "{}", print_formula(&r)).map_err(io_err)?;
                }
            } else {
                writeln!(out, "{}", print_formula(&progress(&f, &t)?)).map_err(io_err)?;
            }
        }
        Command::Classify {
            formula: text,
            trace,
            budget,
        } => {
            let f = formula(&text)?;
            let t = load_trace(&trace)?;
            match classify(&f, &t, &budget.budget())? {
                Verdict::ResolvedTrue => writeln!(out, "TRUE"),
                Verdict::ResolvedFalse => writeln!(out, "FALSE"),
                Verdict::Residual(r) => writeln!(out, "RESIDUAL {}", print_formula(&r)),
            }
            .map_err(io_err)?;
        }
        Command::Nnf { formula: text } => {
            let f = formula(&text)?;
            writeln!(out, "{}", print_formula(&convert_nnf(&f)?)).map_err(io_err)?;
        }
        Command::Complen { formula: text } => {
            writeln!(out, "{}", complen(&formula(&text)?)).map_err(io_err)?;
        }
        Command::Equiv { left, right, budget } => {
            let f = formula(&left)?;
            let g = formula(&right)?;
            match equivalence_witness(&f, &g, &budget.budget())? {
                None => writeln!(out, "equivalent").map_err(io_err)?,
                Some(w) => {
                    writeln!(out, "inequivalent").map_err(io_err)?;
                    write!(out, "{}", print_trace(&w)).map_err(io_err)?;
                }
            }
        }
        Command::Gen {
            seed,
            cases,
            depth,
            bound,
            props,
            policy,
            out: path,
            threads,
        } => {
            let cfg = GenConfig {
                seed,
                max_depth: depth,
                max_bound: bound,
                num_props: props,
                num_cases: cases,
                trace_len_policy: policy,
            };
            let records = generate_suite(&cfg, threads)?;
            match path {
                Some(p) if p.as_os_str() != "-" => {
                    let file = fs::File::create(&p).map_err(|e| Failure::Io(format!("{}: {e}", p.display())))?;
                    write_suite(&records, io::BufWriter::new(file)).map_err(io_err)?;
                    eprintln!("wrote {} records to {}", records.len(), p.display());
                }
                _ => write_suite(&records, &mut *out).map_err(io_err)?,
            }
        }
        Command::Selftest { cases, seed } => {
            let reports = run_selftest(&SelftestConfig { seed, cases });
            let mut failed = false;
            for r in &reports {
                let status = if r.ok() { "PASS" } else { "FAIL" };
                writeln!(out, "{status} {} passed={} failed={}", r.name, r.passed, r.failed).map_err(io_err)?;
                if let Some(d) = &r.first_failure {
                    eprintln!("{}: first failure: {d}", r.name);
                }
                failed |= !r.ok();
            }
            if failed {
                return Err(Failure::Reported(4));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let code = match run(cli.command, &mut out) {
        Ok(()) => 0,
        Err(Failure::Reported(code)) => code,
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            1
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    };
    let _ = out.flush();
    ExitCode::from(code)
}
