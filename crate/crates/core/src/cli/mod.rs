//! The `regioncolor` command line.
//!
//! Exit codes: `0` success, `1` internal failure, `2` usage or input error.

pub mod format;
pub mod svg;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::colorspace::{self, ColorPoint, ColorSpace, Gamut};
use crate::error::Error;
use crate::optimizer::{optimize_multistart, random_baseline, OptimizerConfig};
use crate::quality::{quality, Coloring};
use crate::regiongraph::{GridPartition, RegionGraph};

pub use format::{parse_edge_list, EdgeListDocument, PaletteDocument, PaletteEntry};
pub use svg::render_grid_svg;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "regioncolor",
    version,
    about = "Assign well-separated colors to the regions of a map or graph"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Optimize a coloring by hill climbing.
    Optimize(OptimizeArgs),
    /// Write a random baseline coloring.
    Random(RandomArgs),
    /// Convert a single color between sRGB and Lab.
    Convert(ConvertArgs),
    /// Print separation statistics for a palette.
    Report(ReportArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SpaceArg {
    Srgb,
    Lab,
}

impl From<SpaceArg> for ColorSpace {
    fn from(s: SpaceArg) -> Self {
        match s {
            SpaceArg::Srgb => ColorSpace::Srgb,
            SpaceArg::Lab => ColorSpace::Lab,
        }
    }
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct InputArgs {
    /// Edge-list document.
    #[arg(long, value_name = "PATH")]
    graph: Option<PathBuf>,
    /// Grid partition: comma-separated integer labels, one row per line.
    #[arg(long, value_name = "PATH")]
    grid: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct OutputArgs {
    /// Corner-touching grid cells count as adjacent.
    #[arg(long)]
    diag: bool,
    #[arg(long, value_enum, default_value = "lab")]
    space: SpaceArg,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Palette output path; standard output when omitted.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    /// SVG rendering of the colored grid (requires --grid).
    #[arg(long, value_name = "PATH")]
    svg: Option<PathBuf>,
    #[arg(long, default_value_t = 20)]
    cell_px: u32,
    /// Draw thin black cell borders in the SVG.
    #[arg(long)]
    stroke: bool,
}

#[derive(Debug, Args)]
struct OptimizeArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    output: OutputArgs,
    /// Initial step as a fraction of the gamut diameter.
    #[arg(long, default_value_t = 0.1)]
    step_init: f64,
    #[arg(long, default_value_t = 0.5)]
    step_decay: f64,
    /// Stopping threshold as a fraction of the gamut diameter.
    #[arg(long, default_value_t = 1e-4)]
    step_min: f64,
    #[arg(long, default_value_t = 10_000)]
    max_iters: usize,
    /// Independent runs with seeds seed..seed+N; the best is written.
    #[arg(long, default_value_t = 1)]
    restarts: usize,
}

#[derive(Debug, Args)]
struct RandomArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct ConvertArgs {
    #[arg(long, value_enum)]
    from: SpaceArg,
    #[arg(long, value_enum)]
    to: SpaceArg,
    #[arg(num_args = 3, allow_negative_numbers = true, required = true)]
    coords: Vec<f64>,
}

#[derive(Debug, Args)]
struct ReportArgs {
    #[arg(long, value_name = "PATH")]
    palette: PathBuf,
    #[command(flatten)]
    input: InputArgs,
    #[arg(long)]
    diag: bool,
}

/// A failure classified by exit code.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Internal(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Internal(_) => EXIT_INTERNAL,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Internal(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::DegenerateGamut(_) => Failure::Internal(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    let result = match cli.command {
        Command::Optimize(args) => cmd_optimize(&args, stdout),
        Command::Random(args) => cmd_random(&args, stdout),
        Command::Convert(args) => cmd_convert(&args, stdout),
        Command::Report(args) => cmd_report(&args, stdout),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(failure) => {
            let _ = writeln!(
                stderr,
                "regioncolor: {}",
                failure.message().replace('\n', " ")
            );
            failure.code()
        }
    }
}

/// Entry point for the binary.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(args, &mut stdout.lock(), &mut stderr.lock())
}

fn read_input(path: &Path) -> CliResult<String> {
    fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))
}

fn write_output(path: &Path, contents: &str) -> CliResult<()> {
    fs::write(path, contents)
        .map_err(|e| Failure::Internal(format!("cannot write {}: {e}", path.display())))
}

/// Loaded region graph, with the grid when the input was one.
struct Input {
    graph: RegionGraph,
    grid: Option<GridPartition>,
}

fn load_input(input: &InputArgs, diagonal: bool) -> CliResult<Input> {
    match (&input.graph, &input.grid) {
        (Some(path), None) => Ok(Input {
            graph: parse_edge_list(&read_input(path)?)?,
            grid: None,
        }),
        (None, Some(path)) => {
            let grid = GridPartition::parse_csv(&read_input(path)?)?;
            Ok(Input {
                graph: RegionGraph::from_grid(&grid, diagonal),
                grid: Some(grid),
            })
        }
        _ => Err(Failure::Usage(
            "exactly one of --graph or --grid is required".into(),
        )),
    }
}

fn check_output_args(input: &InputArgs, output: &OutputArgs) -> CliResult<()> {
    if output.svg.is_some() && input.grid.is_none() {
        return Err(Failure::Usage("--svg requires --grid input".into()));
    }
    if output.cell_px == 0 {
        return Err(Failure::Usage("--cell-px must be positive".into()));
    }
    if i64::try_from(output.seed).is_err() {
        return Err(Failure::Usage(format!(
            "--seed must be at most {}",
            i64::MAX
        )));
    }
    Ok(())
}

fn emit(
    input: &Input,
    output: &OutputArgs,
    gamut: &Gamut,
    chi: &Coloring,
    q: f64,
    seed: u64,
    stdout: &mut dyn Write,
) -> CliResult<()> {
    let doc = PaletteDocument::from_coloring(chi, &input.graph, gamut, q, seed)?;
    let text = doc.to_toml()?;
    match &output.out {
        Some(path) => write_output(path, &text)?,
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Internal(e.to_string()))?,
    }
    if let (Some(path), Some(grid)) = (&output.svg, &input.grid) {
        let svg = render_grid_svg(grid, &doc.hex_colors(), output.cell_px, output.stroke);
        write_output(path, &svg)?;
    }
    Ok(())
}

fn cmd_optimize(args: &OptimizeArgs, stdout: &mut dyn Write) -> CliResult<()> {
    check_output_args(&args.input, &args.output)?;
    let space: ColorSpace = args.output.space.into();
    let config = OptimizerConfig {
        seed: args.output.seed,
        step_init_fraction: args.step_init,
        step_decay: args.step_decay,
        step_min_fraction: args.step_min,
        max_iterations: args.max_iters,
        space,
    };
    config.validate()?;
    if args.restarts == 0 {
        return Err(Failure::Usage("--restarts must be at least 1".into()));
    }
    let input = load_input(&args.input, args.output.diag)?;
    let gamut = colorspace::gamut_for(space);
    let (chi, report) = optimize_multistart(&input.graph, &gamut, &config, args.restarts)?;
    emit(
        &input,
        &args.output,
        &gamut,
        &chi,
        report.final_quality,
        report.seed,
        stdout,
    )
}

fn cmd_random(args: &RandomArgs, stdout: &mut dyn Write) -> CliResult<()> {
    check_output_args(&args.input, &args.output)?;
    let input = load_input(&args.input, args.output.diag)?;
    let gamut = colorspace::gamut_for(args.output.space.into());
    let chi = random_baseline(&input.graph, &gamut, args.output.seed);
    let q = quality(&chi, &input.graph, &gamut)?;
    emit(
        &input,
        &args.output,
        &gamut,
        &chi,
        q,
        args.output.seed,
        stdout,
    )
}

fn fmt4(v: f64) -> String {
    let s = format!("{v:.4}");
    if s == "-0.0000" {
        "0.0000".into()
    } else {
        s
    }
}

fn cmd_convert(args: &ConvertArgs, stdout: &mut dyn Write) -> CliResult<()> {
    let from: ColorSpace = args.from.into();
    let to: ColorSpace = args.to.into();
    let [a, b, c] = <[f64; 3]>::try_from(args.coords.as_slice())
        .map_err(|_| Failure::Usage("expected three coordinates".into()))?;
    let p = ColorPoint::new(from, [a, b, c])?;
    let out = match (from, to) {
        (ColorSpace::Srgb, ColorSpace::Lab) => colorspace::srgb_to_lab(&p)?,
        (ColorSpace::Lab, ColorSpace::Srgb) => colorspace::lab_to_srgb(&p)?,
        // Same-space conversion only validates the domain.
        (ColorSpace::Srgb, ColorSpace::Srgb) => {
            colorspace::srgb_to_lab(&p)?;
            p
        }
        (ColorSpace::Lab, ColorSpace::Lab) => {
            colorspace::lab_to_srgb(&p)?;
            p
        }
    };
    let line = out.coords().map(fmt4).join(" ");
    writeln!(stdout, "{line}").map_err(|e| Failure::Internal(e.to_string()))
}

/// Separation statistics of a coloring.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeparationStats {
    pub min_adjacent: Option<f64>,
    pub mean_adjacent: Option<f64>,
    pub min_pair: Option<f64>,
    pub mean_pair: Option<f64>,
}

/// Minimum and mean distances over adjacent pairs and over all pairs.
pub fn separation_stats(chi: &Coloring, graph: &RegionGraph) -> SeparationStats {
    let pts = chi.coords();
    let dist = |i: usize, j: usize| -> f64 {
        (0..3)
            .map(|k| (pts[i][k] - pts[j][k]).powi(2))
            .sum::<f64>()
            .sqrt()
    };
    let summarize = |ds: Vec<f64>| -> (Option<f64>, Option<f64>) {
        if ds.is_empty() {
            (None, None)
        } else {
            let min = ds.iter().cloned().fold(f64::INFINITY, f64::min);
            (Some(min), Some(ds.iter().sum::<f64>() / ds.len() as f64))
        }
    };
    let n = pts.len();
    let (min_adjacent, mean_adjacent) = summarize(graph.edges().map(|(i, j)| dist(i, j)).collect());
    let (min_pair, mean_pair) = summarize(
        (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .map(|(i, j)| dist(i, j))
            .collect(),
    );
    SeparationStats {
        min_adjacent,
        mean_adjacent,
        min_pair,
        mean_pair,
    }
}

fn cmd_report(args: &ReportArgs, stdout: &mut dyn Write) -> CliResult<()> {
    let doc = PaletteDocument::parse(&read_input(&args.palette)?)?;
    let input = load_input(&args.input, args.diag)?;
    if doc.colors.len() != input.graph.n() {
        return Err(Failure::Usage(format!(
            "palette has {} colors but the graph has {} regions",
            doc.colors.len(),
            input.graph.n()
        )));
    }
    if let Some(ids) = input.graph.region_ids() {
        for (entry, &id) in doc.colors.iter().zip(ids) {
            if entry.original_label.is_some_and(|label| label != id) {
                return Err(Failure::Usage(format!(
                    "palette region {} is labeled {:?} but the grid has {id}",
                    entry.region, entry.original_label
                )));
            }
        }
    }
    let chi = doc.to_coloring()?;
    let gamut = colorspace::gamut_for(doc.space);
    let q = quality(&chi, &input.graph, &gamut)?;
    let stats = separation_stats(&chi, &input.graph);
    let show = |v: Option<f64>| v.map_or_else(|| "-".to_string(), fmt4);
    let text = format!(
        "space: {}\nregions: {}\nedges: {}\nmin_adjacent_distance: {}\nmean_adjacent_distance: {}\nmin_pair_distance: {}\nmean_pair_distance: {}\nquality: {:e}\n",
        doc.space,
        input.graph.n(),
        input.graph.edge_count(),
        show(stats.min_adjacent),
        show(stats.mean_adjacent),
        show(stats.min_pair),
        show(stats.mean_pair),
        q
    );
    stdout
        .write_all(text.as_bytes())
        .map_err(|e| Failure::Internal(e.to_string()))
}
