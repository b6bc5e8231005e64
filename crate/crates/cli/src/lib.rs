//! The `platonic` command-line tool.
//!
//! Exit codes: 0 on success (and when `verify` finds every flag passing),
//! 1 on an internal error, 2 on usage or input errors, 3 when `verify` finds
//! a failed flag.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use platonic_core::catalog::{self, CatalogListing};
use platonic_core::theorems::full_report;
use platonic_core::unfolding::{monodromy_group, unfold, UnfoldingSummary};
use platonic_core::{io, Error, TiledSurface, VerificationReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_FLAG_FAILED: i32 = 3;

/// Environment variable naming a directory of extra surface files.
pub const CATALOG_DIR_VAR: &str = "PLATONIC_CATALOG_DIR";

#[derive(Debug, Parser)]
#[command(
    name = "platonic",
    version,
    about = "Unfoldings, monodromy groups and rotation groups of regular p-gon surfaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Args)]
struct Source {
    /// Catalog surface name
    #[arg(conflicts_with = "file")]
    name: Option<String>,
    /// Surface JSON file
    #[arg(long, value_name = "PATH")]
    file: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct Common {
    #[command(flatten)]
    source: Source,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List the built-in surfaces (and any in $PLATONIC_CATALOG_DIR)
    Catalog {
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Schläfli symbol, counts, genus and rotary flag
    Info(Common),
    /// Degree of the unfolding and number of sheets over the (double) p-gon
    Unfold(Common),
    /// Monodromy group order
    Monodromy {
        #[command(flatten)]
        common: Common,
        /// Print the generators in cycle notation
        #[arg(long)]
        generators: bool,
    },
    /// Rotation group order
    Rot {
        #[command(flatten)]
        common: Common,
        /// Print the generators in cycle notation
        #[arg(long)]
        generators: bool,
    },
    /// Run every check and print the verification report
    Verify {
        #[command(flatten)]
        common: Common,
        /// Verify every catalog surface
        #[arg(long, conflicts_with_all = ["name", "file"])]
        all: bool,
    },
}

struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Invariant(_) => EXIT_INTERNAL,
            _ => EXIT_INPUT,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure {
            code: EXIT_INTERNAL,
            message: e.to_string(),
        }
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure {
            code: EXIT_INTERNAL,
            message: e.to_string(),
        }
    }
}

type CliResult = Result<i32, Failure>;

/// Runs the tool on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> CliResult {
    match command {
        Command::Catalog { format } => cmd_catalog(format, out, err),
        Command::Info(c) => cmd_info(&c, out),
        Command::Unfold(c) => cmd_unfold(&c, out),
        Command::Monodromy { common, generators } => cmd_monodromy(&common, generators, out),
        Command::Rot { common, generators } => cmd_rot(&common, generators, out),
        Command::Verify { common, all } => cmd_verify(&common, all, out),
    }
}

fn catalog_dir() -> Option<PathBuf> {
    std::env::var_os(CATALOG_DIR_VAR).map(PathBuf::from)
}

/// `(name, path)` of every `*.json` file in the user catalog directory, sorted by name.
fn user_catalog(dir: &Path) -> std::io::Result<Vec<(String, PathBuf)>> {
    let mut files = Vec::new();
    for entry in std::fs::read_dir(dir)? {
        let path = entry?.path();
        if path.extension().is_some_and(|e| e == "json") {
            if let Some(stem) = path.file_stem().and_then(|s| s.to_str()) {
                files.push((stem.to_string(), path.clone()));
            }
        }
    }
    files.sort();
    Ok(files)
}

fn resolve(source: &Source) -> Result<(String, TiledSurface), Failure> {
    match (&source.name, &source.file) {
        (Some(name), None) => match catalog::lookup(name) {
            Ok(s) => Ok((name.clone(), s)),
            Err(Error::UnknownName(_)) => {
                if let Some(dir) = catalog_dir() {
                    if let Some((_, path)) = user_catalog(&dir)
                        .unwrap_or_default()
                        .into_iter()
                        .find(|(n, _)| n == name)
                    {
                        return Ok((name.clone(), io::load(path)?));
                    }
                }
                Err(Error::UnknownName(name.clone()).into())
            }
            Err(e) => Err(e.into()),
        },
        (None, Some(path)) => {
            let surface = io::load(path).map_err(|e| Failure {
                code: if matches!(e, Error::Invariant(_)) {
                    EXIT_INTERNAL
                } else {
                    EXIT_INPUT
                },
                message: format!("{}: {e}", path.display()),
            })?;
            Ok((path.display().to_string(), surface))
        }
        _ => Err(Failure {
            code: EXIT_INPUT,
            message: "give exactly one surface: a catalog name or --file PATH".to_string(),
        }),
    }
}

fn emit_json<T: Serialize>(value: &T, out: &mut dyn Write) -> CliResult {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)?;
    Ok(EXIT_OK)
}

fn cmd_catalog(format: Format, out: &mut dyn Write, err: &mut dyn Write) -> CliResult {
    let mut listing = Vec::new();
    for e in catalog::catalog() {
        listing.push(CatalogListing::new(&e.name, &e.surface)?);
    }
    if let Some(dir) = catalog_dir() {
        for (name, path) in user_catalog(&dir)? {
            match io::load(&path).and_then(|s| CatalogListing::new(&name, &s)) {
                Ok(l) => listing.push(l),
                Err(e) => writeln!(err, "warning: skipping {}: {e}", path.display())?,
            }
        }
    }
    if format == Format::Json {
        return emit_json(&listing, out);
    }
    writeln!(
        out,
        "{:<16} {:>3} {:>3} {:>6} {:>6}",
        "name", "p", "q", "faces", "genus"
    )?;
    for l in listing {
        let q = l.q.map_or_else(|| "-".to_string(), |q| q.to_string());
        writeln!(
            out,
            "{:<16} {:>3} {:>3} {:>6} {:>6}",
            l.name, l.p, q, l.faces, l.genus
        )?;
    }
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct Info {
    name: String,
    p: usize,
    q: Option<usize>,
    faces: usize,
    vertices: usize,
    edges: usize,
    euler_characteristic: i64,
    genus: i64,
    rotary: bool,
}

fn cmd_info(c: &Common, out: &mut dyn Write) -> CliResult {
    let (name, s) = resolve(&c.source)?;
    let info = Info {
        name,
        p: s.p(),
        q: s.schlafli().ok().map(|sym| sym.q),
        faces: s.face_count(),
        vertices: s.vertex_count(),
        edges: s.edge_count(),
        euler_characteristic: s.euler_characteristic()?,
        genus: s.genus()?,
        rotary: s.is_rotary()?,
    };
    if c.format == Format::Json {
        return emit_json(&info, out);
    }
    let symbol = match info.q {
        Some(q) => format!("{{{},{}}}", info.p, q),
        None => format!(
            "not regular (p = {}, degrees {:?})",
            info.p,
            s.vertex_degrees()
        ),
    };
    writeln!(out, "surface     {}", info.name)?;
    writeln!(out, "schlafli    {symbol}")?;
    writeln!(out, "faces       {}", info.faces)?;
    writeln!(out, "vertices    {}", info.vertices)?;
    writeln!(out, "edges       {}", info.edges)?;
    writeln!(out, "euler       {}", info.euler_characteristic)?;
    writeln!(out, "genus       {}", info.genus)?;
    writeln!(out, "rotary      {}", info.rotary)?;
    Ok(EXIT_OK)
}

fn cmd_unfold(c: &Common, out: &mut dyn Write) -> CliResult {
    let (_, s) = resolve(&c.source)?;
    let u = unfold(&s)?;
    let setup = platonic_core::unfolding::monodromy_generators(&u)?;
    let summary = UnfoldingSummary::new(&u, &setup);
    if c.format == Format::Json {
        return emit_json(&summary, out);
    }
    writeln!(out, "k {}", summary.k)?;
    writeln!(out, "n {}", summary.n)?;
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct MonodromyOutput {
    k: usize,
    n: usize,
    /// `None` when the order exceeds `u128`.
    order: Option<u128>,
    generators: Vec<String>,
}

fn cmd_monodromy(c: &Common, show_generators: bool, out: &mut dyn Write) -> CliResult {
    let (_, s) = resolve(&c.source)?;
    let u = unfold(&s)?;
    let (setup, group) = monodromy_group(&u)?;
    let summary = UnfoldingSummary::new(&u, &setup);
    if c.format == Format::Json {
        return emit_json(
            &MonodromyOutput {
                k: summary.k,
                n: summary.n,
                order: group.checked_order(),
                generators: summary.generators,
            },
            out,
        );
    }
    match group.checked_order() {
        Some(order) => writeln!(out, "order {order}")?,
        None => writeln!(out, "order > 2^128")?,
    }
    writeln!(out, "sheets {}", summary.n)?;
    writeln!(out, "generators {}", summary.generators.len())?;
    if show_generators {
        for (i, g) in summary.generators.iter().enumerate() {
            writeln!(out, "gen{i} {g}")?;
        }
    }
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct RotOutput {
    order: u128,
    degree: usize,
    generators: Vec<String>,
}

fn cmd_rot(c: &Common, show_generators: bool, out: &mut dyn Write) -> CliResult {
    let (_, s) = resolve(&c.source)?;
    let rot = s.rotation_group()?;
    let generators: Vec<String> = rot
        .generators()
        .iter()
        .map(|g| g.to_cycle_string())
        .collect();
    if c.format == Format::Json {
        return emit_json(
            &RotOutput {
                order: rot.order(),
                degree: rot.degree(),
                generators,
            },
            out,
        );
    }
    writeln!(out, "order {}", rot.order())?;
    if show_generators {
        for (i, g) in generators.iter().enumerate() {
            writeln!(out, "gen{i} {g}")?;
        }
    }
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct NamedReport {
    name: String,
    report: VerificationReport,
}

fn cmd_verify(c: &Common, all: bool, out: &mut dyn Write) -> CliResult {
    let reports: Vec<NamedReport> = if all {
        let mut v = Vec::new();
        for e in catalog::catalog() {
            v.push(NamedReport {
                report: full_report(&e.surface)?,
                name: e.name,
            });
        }
        v
    } else {
        let (name, s) = resolve(&c.source)?;
        vec![NamedReport {
            name,
            report: full_report(&s)?,
        }]
    };
    let pass = reports.iter().all(|r| r.report.all_pass());
    if c.format == Format::Json {
        if all {
            emit_json(&reports, out)?;
        } else {
            emit_json(&reports[0].report, out)?;
        }
    } else {
        for (i, r) in reports.iter().enumerate() {
            if i > 0 {
                writeln!(out)?;
            }
            writeln!(out, "{:<26}{}", "surface", r.name)?;
            write!(out, "{}", r.report)?;
        }
    }
    Ok(if pass { EXIT_OK } else { EXIT_FLAG_FAILED })
}
