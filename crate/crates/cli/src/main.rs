//! `qdr`: command-line front end for the quantum exterior calculus engine.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use qdr_core::cohomology::{quantum_derham_table, quantum_dolbeault_table};
use qdr_core::equivariant::{equivariant_cohomology_table, GroupAction};
use qdr_core::exec::Exec;
use qdr_core::exterior::Symplectic;
use qdr_core::json::{form_from_json, parse_action, parse_connection, parse_model, AnyModel};
use qdr_core::report;
use qdr_core::scalar::{FourierCoeff, GRat, HLaurent, HPoly};
use qdr_core::suites::{run_model_suite, run_suite, SuiteOutcome, NEGATIVE_CONTROLS, SUITES};
use qdr_core::Error;

const EXIT_PROPERTY_FAILURE: u8 = 1;
const EXIT_BAD_INPUT: u8 = 2;

#[derive(Parser)]
#[command(name = "qdr", version, about = "Exact quantum exterior calculus on Poisson model spaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Clone)]
struct Common {
    /// Model file (JSON).
    #[arg(long, global = true)]
    model: Option<PathBuf>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Emit a LaTeX tabular instead of JSON where the command supports it.
    #[arg(long, global = true)]
    latex: bool,
    /// Evaluate independent pieces one at a time.
    #[arg(long, global = true)]
    sequential: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Ring {
    Polynomial,
    Laurent,
}

#[derive(Subcommand)]
enum Command {
    /// Run randomized property suites.
    Check {
        /// Suite name, or `all`.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Quantum de Rham cohomology of a torus model.
    Cohomology {
        #[arg(long, value_enum, default_value = "laurent")]
        ring: Ring,
        #[arg(long, default_value_t = 1)]
        mode_box: i64,
        #[arg(long, default_value_t = 4)]
        max_degree: i64,
    },
    /// Quantum Dolbeault cohomology of a complex torus model.
    Dolbeault {
        #[arg(long, default_value_t = 1)]
        mode_box: i64,
        /// Largest `p` and `q`; defaults to the complex dimension.
        #[arg(long)]
        max_degree: Option<i64>,
    },
    /// Truncated quantum equivariant cohomology under torus translations.
    Equivariant {
        /// Action file; the trivial action when omitted.
        #[arg(long)]
        action: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        mode_box: i64,
        /// Total degree cutoff.
        #[arg(long, default_value_t = 4)]
        max_degree: i64,
    },
    /// Spectra of M_h and M_h*, commutator identities and invertibility.
    Lefschetz {
        /// Graded pieces |k| ≤ max-degree; defaults to n.
        #[arg(long)]
        max_degree: Option<i64>,
    },
    /// Curvature and characteristic forms of a connection.
    Chern {
        #[arg(long)]
        connection: PathBuf,
    },
    /// Quantum integral of a form with the Stokes certificate.
    Integral {
        #[arg(long)]
        form: PathBuf,
    },
}

struct Failure {
    code: u8,
    kind: String,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure { code: EXIT_BAD_INPUT, kind: e.kind().into(), message: e.to_string() }
    }
}

fn io_failure(path: &Path, e: std::io::Error) -> Failure {
    Failure { code: EXIT_BAD_INPUT, kind: "io".into(), message: format!("{}: {e}", path.display()) }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| io_failure(path, e))
}

fn load_model(common: &Common) -> Result<AnyModel, Failure> {
    let path = common.model.as_ref().ok_or_else(|| Failure {
        code: EXIT_BAD_INPUT,
        kind: "usage".into(),
        message: "--model is required for this command".into(),
    })?;
    Ok(parse_model(&read(path)?)?)
}

enum Output {
    Json(Value),
    Text(String),
}

fn run(cli: &Cli) -> Result<(Output, bool), Failure> {
    let common = &cli.common;
    let exec = if common.sequential { Exec::Sequential } else { Exec::default() };
    let name = match &cli.command {
        Command::Check { .. } => "check",
        Command::Cohomology { .. } => "cohomology",
        Command::Dolbeault { .. } => "dolbeault",
        Command::Equivariant { .. } => "equivariant",
        Command::Lefschetz { .. } => "lefschetz",
        Command::Chern { .. } => "chern",
        Command::Integral { .. } => "integral",
    };
    let wrap = |body: Value| json!({"header": report::header(name), "result": body});
    match &cli.command {
        Command::Check { suite, trials, seed } => {
            let mut outcomes: Vec<SuiteOutcome> = Vec::new();
            if let Some(path) = &common.model {
                let model = parse_model(&read(path)?)?;
                outcomes.push(run_model_suite(&model, *trials, *seed, exec)?);
            }
            let names: Vec<&str> = match suite.as_str() {
                "all" => SUITES.to_vec(),
                s if SUITES.contains(&s) || NEGATIVE_CONTROLS.contains(&s) => vec![s],
                "model" if common.model.is_some() => Vec::new(),
                other => {
                    return Err(Failure {
                        code: EXIT_BAD_INPUT,
                        kind: "usage".into(),
                        message: format!("unknown suite {other:?}; available: all, {}", SUITES.join(", ")),
                    })
                }
            };
            for s in names {
                outcomes.push(run_suite(s, *trials, *seed, exec)?);
            }
            for o in &outcomes {
                for w in &o.failures {
                    eprintln!("FAIL {} trial {}: {}\n  input: {}", o.suite, w.trial, w.property, w.input);
                }
            }
            let ok = outcomes.iter().all(SuiteOutcome::passed);
            let body = json!({"passed": ok, "suites": outcomes.iter().map(SuiteOutcome::to_json).collect::<Vec<_>>()});
            Ok((Output::Json(wrap(body)), ok))
        }
        Command::Cohomology { ring, mode_box, max_degree } => {
            let model = load_model(common)?;
            let m = model.torus()?;
            let out = match ring {
                Ring::Laurent => {
                    let t = quantum_derham_table::<HLaurent<GRat>>(m, *mode_box, *max_degree, exec)?;
                    if common.latex {
                        Output::Text(report::derham_latex(&t))
                    } else {
                        Output::Json(wrap(report::derham_report(m, &t, *max_degree)?))
                    }
                }
                Ring::Polynomial => {
                    let t = quantum_derham_table::<HPoly<GRat>>(m, *mode_box, *max_degree, exec)?;
                    if common.latex {
                        Output::Text(report::derham_latex(&t))
                    } else {
                        Output::Json(wrap(report::derham_report(m, &t, *max_degree)?))
                    }
                }
            };
            Ok((out, true))
        }
        Command::Dolbeault { mode_box, max_degree } => {
            let model = load_model(common)?;
            let m = model.torus()?;
            let n = (m.dim() / 2) as i64;
            let t = quantum_dolbeault_table(m, *mode_box, max_degree.unwrap_or(n), exec)?;
            let out = if common.latex {
                Output::Text(report::dolbeault_latex(&t))
            } else {
                Output::Json(wrap(report::dolbeault_report(&t, n)))
            };
            Ok((out, true))
        }
        Command::Equivariant { action, mode_box, max_degree } => {
            let model = load_model(common)?;
            let m = model.torus()?;
            let action = match action {
                Some(p) => parse_action::<FourierCoeff>(m.dim(), &read(p)?)?,
                None => GroupAction::trivial(),
            };
            let t = equivariant_cohomology_table(m, &action, *max_degree, *mode_box, exec)?;
            let out = if common.latex {
                Output::Text(report::equivariant_latex(&t))
            } else {
                Output::Json(wrap(report::equivariant_report(&t)))
            };
            Ok((out, true))
        }
        Command::Lefschetz { max_degree } => {
            let model = load_model(common)?;
            let m = model.torus()?;
            let s = m.require_symplectic()?;
            if *s != Symplectic::darboux(s.n()) {
                return Err(Error::Precondition("Lefschetz report needs the Darboux symplectic form".into()).into());
            }
            let window = max_degree.unwrap_or(s.n() as i64);
            let out = if common.latex {
                Output::Text(report::lefschetz_latex(s.n(), window))
            } else {
                Output::Json(wrap(report::lefschetz_report(s.n(), window)))
            };
            Ok((out, true))
        }
        Command::Chern { connection } => {
            let model = load_model(common)?;
            let m = model.torus()?;
            let conn = parse_connection::<FourierCoeff>(m.dim(), &read(connection)?)?;
            Ok((Output::Json(wrap(report::chern_report(m, &conn))), true))
        }
        Command::Integral { form } => {
            let model = load_model(common)?;
            let m = model.torus()?;
            let text = read(form)?;
            let v: Value =
                serde_json::from_str(&text).map_err(|e| Failure::from(Error::Parse(format!("form file: {e}"))))?;
            let alpha = form_from_json::<FourierCoeff>(m.dim(), &v)?;
            Ok((Output::Json(wrap(report::integral_report(m, &alpha)?)), true))
        }
    }
}

fn emit(out: Output, path: Option<&Path>) -> Result<(), Failure> {
    let text = match out {
        Output::Json(v) => serde_json::to_string_pretty(&v).expect("serializable") + "\n",
        Output::Text(s) => s,
    };
    match path {
        Some(p) => fs::write(p, text).map_err(|e| io_failure(p, e)),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli).and_then(|(out, ok)| emit(out, cli.common.out.as_deref()).map(|_| ok));
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_PROPERTY_FAILURE),
        Err(f) => {
            let obj = json!({"error": {"kind": f.kind, "message": f.message, "exit_code": f.code}});
            eprintln!("{obj}");
            ExitCode::from(f.code)
        }
    }
}
