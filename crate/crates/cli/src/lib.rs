//! `wbt`: generate, check, search and export waterbomb tessellations.
//!
//! Exit codes: 0 success, 1 validation failed, 2 bad arguments or input,
//! 3 I/O error.

pub mod api;
pub mod server;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

use wbt_core::criteria::validate;
use wbt_core::export::{from_fold, to_fold, to_svg, SvgStyle};
use wbt_core::molecule::build_universal_molecule;
use wbt_core::search::{default_orientations, enumerate, sixfold_orientations, ContactRule, SearchParams};

use api::{ApiError, GenerateRequest, TriangleArg};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "wbt", version, about = "Waterbomb tessellation design engine")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a family pattern and write it as FOLD.
    Generate {
        #[arg(long)]
        family: String,
        /// `a,b,c` side lengths or `eq:<side>`.
        #[arg(long)]
        triangle: Option<String>,
        #[arg(long)]
        rows: Option<usize>,
        #[arg(long)]
        cols: Option<usize>,
        #[arg(long)]
        variant: Option<String>,
        #[arg(long)]
        hinge_edge: Option<usize>,
        /// Urchin patterns only.
        #[arg(long)]
        rings: Option<usize>,
        /// Output file; stdout when omitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check a FOLD file against the criteria.
    Validate {
        input: PathBuf,
        /// Print the report as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Enumerate periodic tilings of one triangle molecule as JSON lines.
    Search {
        #[arg(long)]
        triangle: String,
        /// Allowed active-hinge counts, comma separated.
        #[arg(long, value_delimiter = ',', default_value = "3")]
        hinges: Vec<usize>,
        #[arg(long, default_value_t = 2)]
        max_copies: usize,
        /// Seconds.
        #[arg(long, default_value_t = 30)]
        budget: u64,
        #[arg(long, value_enum, default_value_t = Orientations::HalfTurn)]
        orientations: Orientations,
        #[arg(long, value_enum, default_value_t = Contact::VertexAndFoot)]
        contact: Contact,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Convert a FOLD file to SVG, or rewrite it canonically.
    Export {
        input: PathBuf,
        /// `.svg` renders; anything else writes FOLD.
        #[arg(short, long)]
        output: PathBuf,
        /// Label vertices in the SVG.
        #[arg(long)]
        debug: bool,
        #[arg(long, default_value_t = 6)]
        precision: usize,
    },
    /// List the pattern families.
    Families {
        #[arg(long)]
        json: bool,
    },
    /// Run the HTTP service.
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        bind: String,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Orientations {
    /// Identity and half turn.
    HalfTurn,
    /// Multiples of 60 degrees.
    Six,
    /// Multiples of 60 degrees and their mirrors.
    SixMirror,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Contact {
    EdgeToEdge,
    VertexAndFoot,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

impl From<ApiError> for CliError {
    fn from(e: ApiError) -> Self {
        match e {
            ApiError::BadRequest { message, field: Some(f) } => CliError::Usage(format!("{f}: {message}")),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Io { .. } => EXIT_IO,
        }
    }
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.display().to_string(),
        source,
    }
}

fn read(path: &Path) -> Result<Vec<u8>, CliError> {
    std::fs::read(path).map_err(io_err(path))
}

fn write_out(path: Option<&Path>, bytes: &[u8]) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, bytes).map_err(io_err(p)),
        None => std::io::stdout()
            .write_all(bytes)
            .map_err(io_err(Path::new("<stdout>"))),
    }
}

fn load(path: &Path) -> Result<wbt_core::CreasePattern, CliError> {
    let data = read(path)?;
    from_fold(&data).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn init_logging() {
    let env = env_logger::Env::new().filter_or("WB_LOG_LEVEL", "warn");
    let _ = env_logger::Builder::from_env(env).try_init();
}

/// Runs one command line and returns the exit code.
pub fn run(argv: Vec<String>) -> i32 {
    init_logging();
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match execute(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.code()
        }
    }
}

fn execute(cmd: Command) -> Result<i32, CliError> {
    match cmd {
        Command::Generate {
            family,
            triangle,
            rows,
            cols,
            variant,
            hinge_edge,
            rings,
            output,
        } => {
            let triangle = triangle.as_deref().map(TriangleArg::parse).transpose()?;
            let cp = api::generate(&GenerateRequest {
                family,
                triangle,
                rows,
                cols,
                variant,
                hinge_edge,
                rings,
            })?;
            log::info!("generated {} placements, {} floors", cp.placements.len(), cp.floors.len());
            write_out(output.as_deref(), &to_fold(&cp))?;
            Ok(EXIT_OK)
        }
        Command::Validate { input, json } => {
            let cp = load(&input)?;
            let r = validate(&cp);
            if json {
                println!("{}", r.to_json());
            } else {
                println!("{}: {}", input.display(), if r.pass { "pass" } else { "FAIL" });
                for v in &r.violations {
                    let n = v.criterion.number().map_or(String::new(), |n| format!("criterion {n} "));
                    println!("  {n}({}) at {:?}: {}", v.criterion.tag(), v.location, v.message);
                }
                for w in &r.warnings {
                    println!("  warning: {w}");
                }
            }
            Ok(if r.pass { EXIT_OK } else { EXIT_INVALID })
        }
        Command::Search {
            triangle,
            hinges,
            max_copies,
            budget,
            orientations,
            contact,
            output,
        } => {
            let t = TriangleArg::parse(&triangle)?.polygon()?;
            let m = build_universal_molecule(&t).map_err(|e| CliError::Usage(format!("triangle: {e}")))?;
            let mut sp = SearchParams::new(Arc::new(m));
            sp.activations_allowed = hinges;
            sp.max_copies_per_cell = max_copies;
            sp.time_budget = Duration::from_secs(budget);
            sp.orientation_set = match orientations {
                Orientations::HalfTurn => default_orientations(),
                Orientations::Six => sixfold_orientations(false),
                Orientations::SixMirror => sixfold_orientations(true),
            };
            sp.contact_rule = match contact {
                Contact::EdgeToEdge => ContactRule::EdgeToEdge,
                Contact::VertexAndFoot => ContactRule::VertexAndFoot,
            };
            let out = enumerate(&sp).map_err(|e| CliError::Usage(e.to_string()))?;
            let mut text = String::new();
            for c in &out.candidates {
                text.push_str(&c.to_json_line());
                text.push('\n');
            }
            write_out(output.as_deref(), text.as_bytes())?;
            eprintln!(
                "{} candidates{}",
                out.candidates.len(),
                if out.exhausted { "" } else { " (time budget reached)" }
            );
            Ok(EXIT_OK)
        }
        Command::Export {
            input,
            output,
            debug,
            precision,
        } => {
            let cp = load(&input)?;
            let is_svg = output
                .extension()
                .is_some_and(|e| e.eq_ignore_ascii_case("svg"));
            let bytes = if is_svg {
                let style = SvgStyle {
                    debug,
                    precision,
                    ..SvgStyle::default()
                };
                to_svg(&cp, &style)
            } else {
                to_fold(&cp)
            };
            write_out(Some(&output), &bytes)?;
            Ok(EXIT_OK)
        }
        Command::Families { json } => {
            let list = api::families();
            if json {
                println!("{}", serde_json::to_string_pretty(&list).expect("catalog serializes"));
            } else {
                for f in list {
                    let counts: Vec<String> = f.hinge_counts.iter().map(|c| c.to_string()).collect();
                    println!(
                        "{:<11} {:<9} hinges {:<5} {}{}",
                        f.id,
                        f.name,
                        counts.join("/"),
                        f.floors,
                        if f.equilateral_only { " (equilateral only)" } else { "" }
                    );
                }
            }
            Ok(EXIT_OK)
        }
        Command::Serve { port, bind } => {
            let rt = tokio::runtime::Runtime::new().map_err(io_err(Path::new("<runtime>")))?;
            rt.block_on(server::serve(&bind, port))
                .map_err(|source| CliError::Io {
                    path: format!("{bind}:{port}"),
                    source,
                })?;
            Ok(EXIT_OK)
        }
    }
}
