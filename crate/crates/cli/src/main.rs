//! Command-line driver: build dual cube complexes of finite wallspaces,
//! check their structure, and run separation and group diagnostics.
//!
//! Exit codes: 0 success, 1 a check or validation failed, 2 bad input or
//! I/O, 3 a size cap was exceeded.

mod act;
mod diagnose;
mod output;
mod sweep;
mod verify;

use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use wallcube::dual::{build_dual, enumerate_all_orientations, BuildOptions};
use wallcube::generators;
use wallcube::io::{complex_to_dot, transversality_to_dot, ComplexDoc, WallspaceDoc};
use wallcube::{Caps, Wallspace};

use output::{csv_rows, pretty, with_meta, Failure, Meta};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "wallcube", version, about = "Dual cube complexes of finite wallspaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Seed for every sampled quantity; recorded in the output.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Largest number of dual vertices to construct.
    #[arg(long, global = true)]
    cap_vertices: Option<usize>,

    /// Largest ground set accepted.
    #[arg(long, global = true)]
    cap_points: Option<usize>,

    /// Largest number of walls accepted.
    #[arg(long, global = true)]
    cap_walls: Option<usize>,

    /// Output format; not every command supports every format.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check the wallspace axioms and report per-point betwixt counts.
    Validate {
        /// Wallspace JSON; `-` or absent reads stdin.
        input: Option<PathBuf>,
    },
    /// Build the dual cube complex.
    Build {
        input: Option<PathBuf>,
        /// Point whose canonical cube seeds the search (default: first point).
        #[arg(long)]
        basepoint: Option<String>,
        /// Fill cubes by literal skeleton completion.
        #[arg(long)]
        literal: bool,
        /// Enumerate all orientations instead of searching from a basepoint.
        #[arg(long)]
        all_orientations: bool,
    },
    /// Run structural checks on the dual complex, or on a supplied one.
    Verify {
        input: Option<PathBuf>,
        /// Complex JSON to check against the wallspace instead of building it.
        #[arg(long)]
        complex: Option<PathBuf>,
        #[arg(long)]
        basepoint: Option<String>,
        /// Comma-separated subset of the checks (default: all).
        #[arg(long, value_delimiter = ',')]
        checks: Vec<verify::Check>,
        /// Number of sampled closed loops to contract.
        #[arg(long, default_value_t = 200)]
        loops: usize,
    },
    /// Measure one separation or structure property.
    Diagnose {
        input: Option<PathBuf>,
        #[arg(long, value_enum)]
        property: diagnose::Property,
        /// JSON object of parameters, or `@file`.
        #[arg(long)]
        params: Option<String>,
        #[arg(long)]
        basepoint: Option<String>,
    },
    /// Emit a generated wallspace.
    Gen {
        /// fig3, nonHausdorff3, orderConverse, grid, rbad, geomPath, geomGrid, random.
        name: String,
        /// Size parameter for grid, rbad, geomPath, geomGrid.
        #[arg(long)]
        n: Option<usize>,
        /// Bounds for `random`.
        #[arg(long, default_value_t = 8)]
        max_points: usize,
        #[arg(long, default_value_t = 8)]
        max_walls: usize,
    },
    /// Build an H-wall system on a Cayley ball and analyse it.
    Act {
        /// Group action JSON: group, ball radius, H-walls.
        input: Option<PathBuf>,
        /// Emit only the generated wallspace document.
        #[arg(long)]
        wallspace_only: bool,
    },
    /// Run a generator family over several sizes and tabulate the results.
    Sweep {
        /// grid, rbad, geomPath, geomGrid, z2, f2.
        family: String,
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        #[arg(long, value_enum)]
        property: Option<diagnose::Property>,
        #[arg(long)]
        params: Option<String>,
    },
}

pub struct Ctx {
    pub seed: u64,
    pub caps: Caps,
    pub format: Option<Format>,
}

impl Ctx {
    pub fn opts(&self) -> BuildOptions {
        BuildOptions::with_caps(self.caps)
    }

    pub fn format(&self, default: Format, allowed: &[Format]) -> Result<Format, Failure> {
        let f = self.format.unwrap_or(default);
        if allowed.contains(&f) {
            Ok(f)
        } else {
            Err(Failure::input(format!("format {f:?} is not available for this command")))
        }
    }
}

pub fn read_input(path: Option<&PathBuf>) -> Result<Vec<u8>, Failure> {
    let mut buf = Vec::new();
    match path {
        Some(p) if p.as_os_str() != "-" => {
            buf = std::fs::read(p).map_err(|e| Failure::input(format!("{}: {e}", p.display())))?;
        }
        _ => {
            std::io::stdin()
                .read_to_end(&mut buf)
                .map_err(|e| Failure::input(format!("stdin: {e}")))?;
        }
    }
    Ok(buf)
}

/// Parses a wallspace document; any failure here is an input error.
pub fn parse_wallspace(bytes: &[u8], caps: &Caps) -> Result<Wallspace, Failure> {
    let text = std::str::from_utf8(bytes).map_err(|e| Failure::input(format!("input is not UTF-8: {e}")))?;
    let doc: WallspaceDoc = serde_json::from_str(text).map_err(|e| Failure::input(format!("wallspace: {e}")))?;
    caps.check_ground(doc.points.len(), doc.walls.len())?;
    doc.to_wallspace().map_err(|e| Failure::input(e.to_string()))
}

/// Parses and requires the axioms to hold.
pub fn load_valid(bytes: &[u8], caps: &Caps) -> Result<Wallspace, Failure> {
    let ws = parse_wallspace(bytes, caps)?;
    if let Some(e) = ws.validate().first_error() {
        return Err(Failure::domain(format!("invalid wallspace: {e}")));
    }
    Ok(ws)
}

pub fn basepoint(ws: &Wallspace, name: Option<&String>) -> Result<usize, Failure> {
    if ws.num_points() == 0 {
        return Err(Failure::domain("wallspace has no points"));
    }
    match name {
        Some(n) => Ok(ws.point(n)?),
        None => Ok(0),
    }
}

pub fn generate(name: &str, n: Option<usize>, seed: u64, max_points: usize, max_walls: usize) -> Result<Wallspace, Failure> {
    match name {
        "random" => Ok(generators::random_wallspace(
            &mut ChaCha8Rng::seed_from_u64(seed),
            max_points,
            max_walls,
        )),
        "geomGrid" => Ok(generators::geom_grid(n.ok_or_else(|| Failure::input("geomGrid needs --n"))?)?),
        _ => generators::by_name(name, n).map_err(|e| Failure::input(e.to_string())),
    }
}

/// Output text and whether the run counts as a success.
type Outcome = (String, bool);

fn run(cli: Cli) -> Result<Outcome, Failure> {
    let mut caps = Caps::default();
    caps.vertices = cli.cap_vertices.unwrap_or(caps.vertices);
    caps.points = cli.cap_points.unwrap_or(caps.points);
    caps.walls = cli.cap_walls.unwrap_or(caps.walls);
    let ctx = Ctx {
        seed: cli.seed,
        caps,
        format: cli.format,
    };
    match cli.command {
        Command::Validate { input } => {
            ctx.format(Format::Json, &[Format::Json])?;
            let bytes = read_input(input.as_ref())?;
            let meta = Meta::new(ctx.seed, ctx.caps, &bytes);
            let ws = parse_wallspace(&bytes, &ctx.caps)?;
            let report = ws.validate();
            let ok = report.ok;
            Ok((pretty(&with_meta(report, &meta)), ok))
        }
        Command::Build {
            input,
            basepoint: bp,
            literal,
            all_orientations,
        } => {
            let format = ctx.format(Format::Json, &[Format::Json, Format::Dot, Format::Csv])?;
            let bytes = read_input(input.as_ref())?;
            let meta = Meta::new(ctx.seed, ctx.caps, &bytes);
            let ws = load_valid(&bytes, &ctx.caps)?;
            let mut opts = ctx.opts();
            if literal {
                opts = opts.literal();
            }
            let cc = if all_orientations {
                enumerate_all_orientations(&ws, &opts)?
            } else {
                build_dual(&ws, basepoint(&ws, bp.as_ref())?, &opts)?
            };
            let text = match format {
                Format::Json => pretty(&with_meta(ComplexDoc::from_complex(&cc), &meta)),
                Format::Dot => meta.comment("//") + &complex_to_dot(&ws, &cc),
                Format::Csv => {
                    let rows: Vec<_> = cc
                        .counts_by_dim()
                        .iter()
                        .enumerate()
                        .map(|(dim, count)| json!({ "dim": dim, "count": count }))
                        .collect();
                    csv_rows(&rows, &meta)?
                }
            };
            Ok((text, true))
        }
        Command::Verify {
            input,
            complex,
            basepoint: bp,
            checks,
            loops,
        } => {
            ctx.format(Format::Json, &[Format::Json])?;
            let bytes = read_input(input.as_ref())?;
            let mut digest_input = bytes.clone();
            let supplied = match &complex {
                Some(path) => {
                    let text = read_input(Some(path))?;
                    digest_input.extend_from_slice(&text);
                    let doc: ComplexDoc = serde_json::from_slice(&text)
                        .map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
                    Some(doc.to_complex().map_err(|e| Failure::input(e.to_string()))?)
                }
                None => None,
            };
            let meta = Meta::new(ctx.seed, ctx.caps, &digest_input);
            let ws = parse_wallspace(&bytes, &ctx.caps)?;
            let bp = basepoint(&ws, bp.as_ref())?;
            let report = verify::run(&ws, supplied, bp, &checks, loops, &ctx)?;
            let ok = report.ok;
            Ok((pretty(&with_meta(report, &meta)), ok))
        }
        Command::Diagnose {
            input,
            property,
            params,
            basepoint: bp,
        } => {
            let format = ctx.format(Format::Json, &[Format::Json, Format::Csv])?;
            let bytes = read_input(input.as_ref())?;
            let meta = Meta::new(ctx.seed, ctx.caps, &bytes);
            let p = diagnose::Params::parse(params.as_deref())?;
            let ws = load_valid(&bytes, &ctx.caps)?;
            let bp = basepoint(&ws, bp.as_ref())?;
            let (value, ok) = diagnose::run(&ws, property, &p, ctx.seed, &ctx.opts(), bp)?;
            let text = match format {
                Format::Csv => csv_rows(&[value], &meta)?,
                _ => pretty(&with_meta(value, &meta)),
            };
            Ok((text, ok))
        }
        Command::Gen {
            name,
            n,
            max_points,
            max_walls,
        } => {
            let format = ctx.format(Format::Json, &[Format::Json, Format::Dot])?;
            let args = format!("gen {name} {n:?} {max_points} {max_walls}");
            let meta = Meta::new(ctx.seed, ctx.caps, args.as_bytes());
            let ws = generate(&name, n, ctx.seed, max_points, max_walls)?;
            ctx.caps.check_ground(ws.num_points(), ws.num_walls())?;
            let text = match format {
                Format::Dot => meta.comment("//") + &transversality_to_dot(&ws),
                _ => pretty(&with_meta(WallspaceDoc::from_wallspace(&ws), &meta)),
            };
            Ok((text, true))
        }
        Command::Act { input, wallspace_only } => {
            let format = ctx.format(Format::Json, &[Format::Json, Format::Dot])?;
            let bytes = read_input(input.as_ref())?;
            act::run(&bytes, &ctx, format, wallspace_only)
        }
        Command::Sweep {
            family,
            sizes,
            property,
            params,
        } => {
            let format = ctx.format(Format::Csv, &[Format::Csv, Format::Json])?;
            let args = format!("sweep {family} {sizes:?} {property:?} {params:?}");
            let meta = Meta::new(ctx.seed, ctx.caps, args.as_bytes());
            let p = diagnose::Params::parse(params.as_deref())?;
            let rows = sweep::run(&family, &sizes, property, &p, &ctx)?;
            let text = match format {
                Format::Json => pretty(&with_meta(json!({ "family": family, "rows": rows }), &meta)),
                _ => csv_rows(&rows, &meta)?,
            };
            Ok((text, true))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((text, ok)) => {
            let mut out = std::io::stdout().lock();
            if out.write_all(text.as_bytes()).and_then(|_| out.flush()).is_err() {
                return ExitCode::from(output::EXIT_INPUT as u8);
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(output::EXIT_DOMAIN as u8)
            }
        }
        Err(f) => {
            eprintln!("wallcube: {}", f.message);
            ExitCode::from(f.code as u8)
        }
    }
}
