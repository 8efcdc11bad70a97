//! Command-line front end: argument parsing, document loading and report rendering.
//!
//! [`dispatch`] does all the work and returns the exit code with both output streams, so the
//! binary and the tests share one code path.

mod commands;
pub mod golden;
mod render;

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use realstack_core::schema::{SchemaError, SCHEMA};
use serde_json::{json, Value};

pub use render::{to_canonical_json, to_text};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(
    name = "realstack",
    version,
    about = "Real points and inertia of finite quotient stacks, stacky curves and split gerbes"
)]
struct Cli {
    /// Output format; JSON output is canonical and byte-stable.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Nonabelian H¹ of ℤ/2 acting on a finite group.
    H1 {
        /// Catalog name such as C2, D4, S3, Q8, C2^3 or C2xC4.
        #[arg(long)]
        group: String,
        /// `id`, `inv`, an index into the sorted involutions, or images like `0,2,1,3`.
        #[arg(long, default_value = "id")]
        sigma: String,
    },
    /// Real locus, inertia and fibers of a finite quotient stack.
    Quotient {
        #[arg(long)]
        space: PathBuf,
        /// Also count real points with the independent torsor enumeration.
        #[arg(long)]
        oracle: bool,
        /// Points whose fibers are reported; overrides the document.
        #[arg(long = "fiber")]
        fibers: Vec<usize>,
    },
    /// Smith–Thom comparison for a stacky curve or an abelian quotient.
    Curve {
        #[arg(long)]
        spec: PathBuf,
    },
    /// Real covers, inertia and the circle inequality for a split gerbe.
    Gerbe {
        #[arg(long)]
        spec: PathBuf,
        /// Report only this component in the component list.
        #[arg(long)]
        component: Option<usize>,
    },
    /// Seeded counterexample search.
    Search {
        #[arg(long)]
        kind: realstack_search::Kind,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        count: u64,
        #[arg(long)]
        max_order: Option<usize>,
        #[arg(long)]
        max_carrier: Option<usize>,
        #[arg(long)]
        max_rank: Option<u32>,
        #[arg(long)]
        max_genus: Option<u32>,
        /// Worker threads; defaults to the available parallelism.
        #[arg(long)]
        workers: Option<usize>,
        /// Write the summary here as well as to standard output.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Directory receiving one replay file per violation.
        #[arg(long)]
        violations_dir: Option<PathBuf>,
    },
    /// Run a golden example and compare with its stored output.
    Example {
        name: Option<String>,
        #[arg(long, conflicts_with = "name")]
        list: bool,
        /// Overwrite the stored output with the current one.
        #[arg(long)]
        bless: bool,
        #[arg(long)]
        golden_dir: Option<PathBuf>,
    },
}

/// Errors that stop a command before a verdict is reached. All exit with code 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    Usage(String),
    Io { path: String, message: String },
    Input(SchemaError),
}

impl CliError {
    fn to_json(&self) -> Value {
        let (kind, path, message) = match self {
            CliError::Usage(m) => ("usage", String::new(), m.clone()),
            CliError::Io { path, message } => ("io", path.clone(), message.clone()),
            CliError::Input(SchemaError::Malformed { path, message }) => {
                ("malformed", path.clone(), message.clone())
            }
            CliError::Input(SchemaError::Invalid { path, reason }) => {
                ("invariant_violated", path.clone(), reason.clone())
            }
            CliError::Input(e @ SchemaError::UnsupportedSchema { .. }) => {
                ("unsupported_schema", "schema".into(), e.to_string())
            }
        };
        json!({"schema": SCHEMA, "error": {"kind": kind, "path": path, "message": message}})
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Io { path, message } => write!(f, "cannot read {path}: {message}"),
            CliError::Input(e) => write!(f, "{e}"),
        }
    }
}

impl From<SchemaError> for CliError {
    fn from(e: SchemaError) -> Self {
        CliError::Input(e)
    }
}

/// Whether a report's checks passed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    Fails,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub value: Value,
    pub status: Status,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs one invocation; `args` excludes the program name.
pub fn dispatch<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let argv = std::iter::once(std::ffi::OsString::from("realstack"))
        .chain(args.into_iter().map(Into::into));
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    let format = cli.format;
    let result = match cli.command {
        Command::H1 { group, sigma } => commands::h1(&group, &sigma),
        Command::Quotient {
            space,
            oracle,
            fibers,
        } => commands::quotient(&space, oracle, &fibers),
        Command::Curve { spec } => commands::curve(&spec),
        Command::Gerbe { spec, component } => commands::gerbe(&spec, component),
        Command::Search {
            kind,
            seed,
            count,
            max_order,
            max_carrier,
            max_rank,
            max_genus,
            workers,
            out,
            violations_dir,
        } => {
            let mut c = realstack_search::Campaign::new(kind, seed, count);
            c.max_order = max_order.unwrap_or(c.max_order);
            c.max_carrier = max_carrier.unwrap_or(c.max_carrier);
            c.max_rank = max_rank.unwrap_or(c.max_rank);
            c.max_genus = max_genus.unwrap_or(c.max_genus);
            c.workers = workers
                .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
            commands::search(&c, out.as_deref(), violations_dir.as_deref())
        }
        Command::Example {
            name,
            list,
            bless,
            golden_dir,
        } => {
            let dir = golden_dir.unwrap_or_else(golden::default_dir);
            match (list, name) {
                (true, _) => golden::list(&dir),
                (false, Some(name)) => golden::run(&dir, &name, bless),
                (false, None) => Err(CliError::Usage("give an example name or --list".into())),
            }
        }
    };
    match result {
        Ok(report) => {
            let stdout = match format {
                Format::Json => to_canonical_json(&report.value),
                Format::Text => to_text(&report.value),
            };
            Outcome {
                code: if report.status == Status::Fails { 1 } else { 0 },
                stdout,
                stderr: String::new(),
            }
        }
        Err(e) => {
            let stderr = match format {
                Format::Json => to_canonical_json(&e.to_json()),
                Format::Text => format!("{e}\n"),
            };
            Outcome {
                code: 2,
                stdout: String::new(),
                stderr,
            }
        }
    }
}
