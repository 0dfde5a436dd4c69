//! The `cellshell` command line: every command reads a complex document and
//! prints one JSON report on stdout.
//!
//! Exit codes: 0 for an affirmative or clean result, 1 for a negative one,
//! 2 for usage and input errors.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use cellshell::complex::{CellId, Chain, Complex};
use cellshell::filler::{self, AmbientGrid, FillOptions, FillStatus};
use cellshell::shelling::{self, Certificate, RunVerdict, ShellingRun, Verdict};
use cellshell::{betti_mod2, validate_manifold, ComplexDocument, Error};

#[derive(Debug, Parser)]
#[command(name = "cellshell", about = "Cell complexes: validation, shelling and fillings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Obj,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check the manifold axioms.
    Validate {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Mod-2 Betti numbers and Euler characteristic.
    Betti {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Decide simple connectedness by shelling.
    Decide {
        #[arg(long = "in")]
        input: PathBuf,
        /// Vertex (name or index) to try first.
        #[arg(long)]
        origin: Option<String>,
        #[arg(long, default_value_t = 3)]
        retries: usize,
        /// Write the certificate of a certified run here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-check a certificate written by `decide`.
    Replay {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        cert: PathBuf,
    },
    /// Split a closed manifold along a cycle of ridges.
    Separate {
        #[arg(long = "in")]
        input: PathBuf,
        /// Comma-separated indices of the ridges on the cycle.
        #[arg(long, conflicts_with = "cycle_vertices")]
        cycle: Option<String>,
        /// Comma-separated vertices (names or indices) of a closed edge loop.
        #[arg(long)]
        cycle_vertices: Option<String>,
    },
    /// Fill a closed cubical curve or surface.
    Fill {
        #[arg(long = "in")]
        input: PathBuf,
        /// `auto`, or bounds written `lo,lo,..:hi,hi,..`.
        #[arg(long, default_value = "auto", allow_hyphen_values = true)]
        grid: String,
        /// Layer limit for residual fills.
        #[arg(long)]
        depth: Option<usize>,
        /// Write the branch tree here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// OBJ mesh, or shelling frames as JSON.
    Export {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "obj")]
        format: Format,
        #[arg(long)]
        origin: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn report(code: i32, value: &Value) -> Self {
        let mut stdout = serde_json::to_string_pretty(value).expect("reports serialize");
        stdout.push('\n');
        Self {
            code,
            stdout,
            stderr: String::new(),
        }
    }

    fn failure(message: String) -> Self {
        Self {
            code: 2,
            stdout: String::new(),
            stderr: format!("{message}\n"),
        }
    }
}

enum Failure {
    Io(String),
    Core(Error),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Io(m) | Failure::Usage(m) => f.write_str(m),
            Failure::Core(e) => write!(f, "{e}"),
        }
    }
}

type Step<T> = std::result::Result<T, Failure>;

/// Runs one command line (including the program name).
pub fn run<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            return Outcome {
                code,
                stdout: if code == 0 { e.to_string() } else { String::new() },
                stderr: if code == 0 { String::new() } else { e.to_string() },
            };
        }
    };
    match dispatch(cli.command) {
        Ok(outcome) => outcome,
        Err(f) => Outcome::failure(format!("error: {f}")),
    }
}

fn read(path: &Path) -> Step<String> {
    fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Step<()> {
    fs::write(path, text).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Step<(ComplexDocument, Complex)> {
    let doc = ComplexDocument::parse(&read(path)?)?;
    let c = doc.to_complex()?;
    Ok((doc, c))
}

fn vertex(c: &Complex, token: &str) -> Step<CellId> {
    let token = token.trim();
    if let Some(v) = c.vertex_named(token) {
        return Ok(v);
    }
    match token.parse::<usize>() {
        Ok(i) if i < c.vertex_count() => Ok(CellId::vertex(i)),
        _ => Err(Failure::Usage(format!("no vertex named or numbered `{token}`"))),
    }
}

fn indices(list: &str) -> Step<Vec<usize>> {
    list.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| Failure::Usage(format!("`{t}` is not a cell index")))
        })
        .collect()
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

fn dispatch(command: Command) -> Step<Outcome> {
    match command {
        Command::Validate { input } => {
            let (_, c) = load(&input)?;
            let report = validate_manifold(&c);
            let code = if report.is_manifold { 0 } else { 1 };
            Ok(Outcome::report(code, &to_value(&report)))
        }
        Command::Betti { input } => {
            let (_, c) = load(&input)?;
            Ok(Outcome::report(0, &to_value(&betti_mod2(&c))))
        }
        Command::Decide {
            input,
            origin,
            retries,
            out,
        } => {
            let (_, c) = load(&input)?;
            let first = origin.map(|o| vertex(&c, &o)).transpose()?;
            let d = shelling::decide_simply_connected_from(&c, first, retries)?;
            let mut report = to_value(&d);
            if let (Some(path), Some(cert)) = (&out, &d.certificate) {
                let mut text = serde_json::to_string_pretty(cert).expect("certificates serialize");
                text.push('\n');
                write(path, &text)?;
                report["certificate_path"] = json!(path.display().to_string());
            }
            let code = if d.verdict == Verdict::SimplyConnected { 0 } else { 1 };
            Ok(Outcome::report(code, &report))
        }
        Command::Replay { input, cert } => {
            let (_, c) = load(&input)?;
            let text = read(&cert)?;
            let cert: Certificate = serde_json::from_str(&text).map_err(|e| {
                Failure::Usage(format!("{}: not a certificate: {e}", cert.display()))
            })?;
            let outcome = shelling::replay_certificate(&c, &cert);
            let code = if outcome.valid { 0 } else { 1 };
            Ok(Outcome::report(code, &to_value(&outcome)))
        }
        Command::Separate {
            input,
            cycle,
            cycle_vertices,
        } => {
            let (_, c) = load(&input)?;
            let m = c.dimension();
            let ridges = match (cycle, cycle_vertices) {
                (Some(list), None) => indices(&list)?,
                (None, Some(list)) => loop_edges(&c, &list)?,
                _ => {
                    return Err(Failure::Usage(
                        "give the cycle with --cycle or --cycle-vertices".into(),
                    ))
                }
            };
            let s = Chain::from_indices(m.saturating_sub(1), ridges);
            let result = shelling::separate(&c, &s)?;
            let sizes = result.sizes();
            let code = if sizes.len() == 2 { 0 } else { 1 };
            Ok(Outcome::report(
                code,
                &json!({
                    "components": sizes.len(),
                    "sizes": sizes,
                    "separator": s.indices().collect::<Vec<_>>(),
                }),
            ))
        }
        Command::Fill {
            input,
            grid,
            depth,
            out,
        } => {
            let (_, c) = load(&input)?;
            let grid = parse_grid(&grid, &c)?;
            let options = FillOptions {
                residual_depth: depth,
                ..FillOptions::default()
            };
            let r = filler::fill_with(&grid, &c, &options)?;
            if let Some(path) = &out {
                let mut text = r.tree.to_json();
                text.push('\n');
                write(path, &text)?;
            }
            let code = if r.status == FillStatus::Complete { 0 } else { 1 };
            let mut report = to_value(&r);
            report["cell_count"] = json!(r.fill.len());
            report["grid"] = to_value(&grid);
            Ok(Outcome::report(code, &report))
        }
        Command::Export {
            input,
            format,
            origin,
            out,
        } => {
            let (doc, c) = load(&input)?;
            let text = match format {
                Format::Obj => doc.to_obj()?,
                Format::Json => {
                    let mut s = serde_json::to_string_pretty(&frames(&c, origin.as_deref())?)
                        .expect("frames serialize");
                    s.push('\n');
                    s
                }
            };
            match out {
                Some(path) => {
                    write(&path, &text)?;
                    Ok(Outcome::report(
                        0,
                        &json!({ "path": path.display().to_string(), "bytes": text.len() }),
                    ))
                }
                None => Ok(Outcome {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                }),
            }
        }
    }
}

/// Edges of the closed loop through the listed vertices.
fn loop_edges(c: &Complex, list: &str) -> Step<Vec<usize>> {
    let vs: Vec<CellId> = list.split(',').map(|t| vertex(c, t)).collect::<Step<_>>()?;
    if vs.len() < 3 {
        return Err(Failure::Usage("a vertex loop needs at least three vertices".into()));
    }
    let mut out = Vec::with_capacity(vs.len());
    for (i, a) in vs.iter().enumerate() {
        let b = vs[(i + 1) % vs.len()];
        let edge = c
            .cells_at_vertex(a.index, 1)
            .iter()
            .copied()
            .find(|&e| c.vertices_of(CellId::new(1, e)).contains(&b.index))
            .ok_or_else(|| Failure::Usage(format!("no edge joins {a} and {b}")))?;
        out.push(edge);
    }
    Ok(out)
}

fn parse_grid(spec: &str, c: &Complex) -> Step<AmbientGrid> {
    if spec == "auto" {
        let (_, surface) = filler::surface_chain(c)?;
        return Ok(AmbientGrid::around(surface.iter(), 2)?);
    }
    let (lo, hi) = spec
        .split_once(':')
        .ok_or_else(|| Failure::Usage(format!("grid `{spec}` is not `auto` or `lo:hi`")))?;
    let coords = |s: &str| -> Step<Vec<i64>> {
        s.split(',')
            .map(|t| {
                t.trim()
                    .parse()
                    .map_err(|_| Failure::Usage(format!("`{t}` is not a coordinate")))
            })
            .collect()
    };
    Ok(AmbientGrid::new(coords(lo)?, coords(hi)?)?)
}

/// Every state of one shelling run, for plotting.
fn frames(c: &Complex, origin: Option<&str>) -> Step<Value> {
    let origin = match origin {
        Some(o) => vertex(c, o)?,
        None => shelling::spread_origins(c, 1)[0],
    };
    let mut run: ShellingRun = shelling::init_shelling(c, origin)?;
    let snapshot = |run: &ShellingRun, step: usize| {
        json!({
            "step": step,
            "removed": run.removed().last(),
            "boundary": run.boundary().indices().collect::<Vec<_>>(),
            "remaining": run.remaining().len(),
        })
    };
    let mut frames = vec![snapshot(&run, 0)];
    while run.verdict() == RunVerdict::InProgress {
        run.step()?;
        frames.push(snapshot(&run, frames.len()));
    }
    Ok(json!({
        "origin": origin,
        "verdict": run.verdict(),
        "frames": frames,
    }))
}
