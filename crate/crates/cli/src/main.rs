use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hopfinv::action::{has_errors, validate_spec, Finding, Severity};
use hopfinv::invariants::{invariant_basis, DEFAULT_SIZE_CAP};
use hopfinv::report::{self, OutputFormat};
use hopfinv::specfile::parse_unvalidated;
use hopfinv::{
    build_prefix_invariant, classify_action, cn_eval, insert_closure_check, jair_verify, minimal_invariant_degree,
    parse_spec_file, probe_generation, ActionSpec, Error, FieldSpec, FreePoly, SizeCap,
};
use serde_json::{json, Value};

const SIZE_CAP_VAR: &str = "HOPFINV_SIZE_CAP";

#[derive(Parser)]
#[command(name = "hopfinv", version, about = "Invariants of free algebras under linear Hopf actions, degree by degree")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    output: Format,

    /// Lift the per-degree coordinate cap (default 10^6, or $HOPFINV_SIZE_CAP).
    #[arg(long, global = true)]
    allow_large: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Table,
    Json,
    Csv,
}

impl From<Format> for OutputFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Table => OutputFormat::Table,
            Format::Json => OutputFormat::Json,
            Format::Csv => OutputFormat::Csv,
        }
    }
}

#[derive(Args)]
struct SpecArg {
    /// JSON action-spec document.
    spec: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Check a spec document and list its findings.
    Validate(SpecArg),
    /// Report whether every generator acts as a scalar multiple of the identity.
    Classify(SpecArg),
    /// Least degree t with nonzero invariants, for a scalar action.
    MinimalDegree {
        #[command(flatten)]
        spec: SpecArg,
        #[arg(long, default_value_t = 64)]
        cap: usize,
    },
    /// Bases of the invariant components R^H_n.
    Invariants {
        #[command(flatten)]
        spec: SpecArg,
        #[arg(long, conflicts_with = "max_degree", required_unless_present = "max_degree")]
        degree: Option<usize>,
        #[arg(long)]
        max_degree: Option<usize>,
    },
    /// Invariant, decomposable and new-generator counts for degrees 1..=N.
    Probe {
        #[command(flatten)]
        spec: SpecArg,
        #[arg(long)]
        max_degree: usize,
    },
    /// Evaluate c_n(eta, mu) = sum_{i<n} eta^(n-1-i) mu^i.
    Cn {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        eta: String,
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
        /// `q` for the rationals, `p:N` for GF(N).
        #[arg(long, default_value = "q")]
        field: String,
    },
    /// Build the Jordan-block element for a skew-primitive and optionally verify it.
    Jair {
        #[command(flatten)]
        spec: SpecArg,
        #[arg(long)]
        delta: String,
        #[arg(long)]
        i: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        verify: bool,
        /// Compute delta(f^p) over GF(p).
        #[arg(long)]
        frobenius_check: bool,
    },
    /// Check that inserts of invariant basis elements stay invariant.
    InsertCheck {
        #[command(flatten)]
        spec: SpecArg,
        #[arg(long)]
        max_degree: usize,
    },
    /// Pump an invariant until x^k prefixes a word of its support.
    Prefix {
        #[command(flatten)]
        spec: SpecArg,
        /// File holding a homogeneous invariant, e.g. `x2*x2`.
        #[arg(long)]
        poly_file: PathBuf,
        #[arg(long)]
        x: usize,
        #[arg(long)]
        k: usize,
    },
}

enum Failure {
    Input(String),
    Engine(Error),
    Violation(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Engine(e)
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Input(_) => 1,
            Failure::Engine(Error::SizeCapExceeded { .. }) => 2,
            Failure::Engine(Error::CancellationDetected { .. }) => 3,
            Failure::Engine(_) => 1,
            Failure::Violation(_) => 3,
        }
    }

    fn report(&self) {
        match self {
            Failure::Input(msg) | Failure::Violation(msg) => eprintln!("error: {msg}"),
            Failure::Engine(Error::Validation(findings)) => {
                eprintln!("error: invalid spec");
                for f in findings {
                    eprintln!("  {}", finding_line(f));
                }
            }
            Failure::Engine(e) => eprintln!("error: {e}"),
        }
    }
}

type Outcome = Result<String, Failure>;

fn finding_line(f: &Finding) -> String {
    let level = match f.severity {
        Severity::Error => "error",
        Severity::Warning => "warning",
    };
    format!("{level}: {}", f.message)
}

fn size_cap(allow_large: bool) -> Result<SizeCap, Failure> {
    if allow_large {
        return Ok(SizeCap::unlimited());
    }
    match std::env::var(SIZE_CAP_VAR) {
        Ok(text) => text
            .trim()
            .parse::<u128>()
            .map(|cap| SizeCap(Some(cap)))
            .map_err(|_| Failure::Input(format!("{SIZE_CAP_VAR}={text:?} is not a non-negative integer"))),
        Err(_) => Ok(SizeCap(Some(DEFAULT_SIZE_CAP))),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load(arg: &SpecArg) -> Result<ActionSpec, Failure> {
    let (spec, warnings) = parse_spec_file(&read(&arg.spec)?)?;
    for w in &warnings {
        eprintln!("{}", finding_line(w));
    }
    Ok(spec)
}

fn validate(arg: &SpecArg, format: OutputFormat) -> Outcome {
    let spec = parse_unvalidated(&read(&arg.spec)?)?;
    let findings = validate_spec(&spec);
    let valid = !has_errors(&findings);
    let text = match format {
        OutputFormat::Table => {
            let mut out: String = findings.iter().map(|f| finding_line(f) + "\n").collect();
            out.push_str(if valid { "valid\n" } else { "invalid\n" });
            out
        }
        _ => report::render_record(
            &[
                ("valid", json!(valid)),
                ("findings", serde_json::to_value(&findings).expect("findings serialize")),
            ],
            format,
        ),
    };
    if valid {
        Ok(text)
    } else {
        print!("{text}");
        Err(Failure::Input(format!("{} has error findings", arg.spec.display())))
    }
}

fn cn(n: usize, eta: &str, mu: &str, field: &str, format: OutputFormat) -> Outcome {
    let field: FieldSpec = field.parse()?;
    let value = cn_eval(n, &field.parse_scalar(eta)?, &field.parse_scalar(mu)?)?;
    Ok(match format {
        OutputFormat::Table => format!("{value}\n"),
        _ => report::render_record(
            &[
                ("field", json!(field.label())),
                ("n", json!(n)),
                ("eta", json!(eta)),
                ("mu", json!(mu)),
                ("value", json!(value.to_string())),
            ],
            format,
        ),
    })
}

fn run(cli: Cli) -> Outcome {
    let format = OutputFormat::from(cli.output);
    match cli.command {
        Command::Validate(arg) => validate(&arg, format),
        Command::Classify(arg) => Ok(report::render_classification(&classify_action(&load(&arg)?), format)),
        Command::MinimalDegree { spec, cap } => {
            let t = minimal_invariant_degree(&load(&spec)?, cap)?;
            Ok(match format {
                OutputFormat::Table => t.map_or_else(|| format!("none up to {cap}\n"), |t| format!("{t}\n")),
                _ => report::render_record(&[("minimal_degree", json!(t)), ("cap", json!(cap))], format),
            })
        }
        Command::Invariants { spec, degree, max_degree } => {
            let s = load(&spec)?;
            let cap = size_cap(cli.allow_large)?;
            let degrees = match (degree, max_degree) {
                (Some(n), _) => n..=n,
                (None, Some(m)) => 1..=m,
                (None, None) => unreachable!("clap requires one of them"),
            };
            let bases = degrees
                .map(|n| Ok(report::degree_basis(n, &invariant_basis(&s, n, cap)?)))
                .collect::<Result<Vec<_>, Error>>()?;
            Ok(report::render_invariants(&s, &bases, format))
        }
        Command::Probe { spec, max_degree } => {
            let s = load(&spec)?;
            let r = probe_generation(&s, max_degree, size_cap(cli.allow_large)?)?;
            Ok(report::render_probe(&s, &r, format))
        }
        Command::Cn { n, eta, mu, field } => cn(n, &eta, &mu, &field, format),
        Command::Jair { spec, delta, i, n, verify, frobenius_check } => {
            let r = jair_verify(&load(&spec)?, &delta, i, n, frobenius_check)?;
            let text = report::render_jair(&r, verify, format);
            if verify && !r.holds() {
                print!("{text}");
                return Err(Failure::Violation("verification failed".into()));
            }
            Ok(text)
        }
        Command::InsertCheck { spec, max_degree } => {
            let c = insert_closure_check(&load(&spec)?, max_degree, size_cap(cli.allow_large)?)?;
            let text = report::render_insert_check(&c, format);
            if !c.violations.is_empty() {
                print!("{text}");
                return Err(Failure::Violation(format!("{} inserts are not invariant", c.violations.len())));
            }
            Ok(text)
        }
        Command::Prefix { spec, poly_file, x, k } => {
            let s = load(&spec)?;
            let f = FreePoly::parse(read(&poly_file)?.trim(), s.rank, s.field)?;
            let out = build_prefix_invariant(&s, &f, x, k)?;
            Ok(match format {
                OutputFormat::Table => format!("{out}\n"),
                _ => report::render_record(
                    &[
                        ("f", json!(f.to_string())),
                        ("x", json!(x)),
                        ("k", json!(k)),
                        ("result", Value::String(out.to_string())),
                    ],
                    format,
                ),
            })
        }
    }
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
    match run(cli) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(failure) => {
            failure.report();
            ExitCode::from(failure.exit_code())
        }
    }
}
