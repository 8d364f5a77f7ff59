//! The `texseg` command-line tool: feature and dimension maps, histograms and
//! threshold segmentation over PGM images and FMAP intermediates.

pub mod fmap;

use std::fs;
use std::io::Write;
use std::num::NonZeroUsize;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{ArgGroup, Parser, Subcommand};
use texseg::fractal::Method;
use texseg::glcm::{feature_map, select_displacement};
use texseg::raster::{load_pgm, quantize, save_pgm};
use texseg::segmentation::{histogram, percentile_threshold, rescale_for_display, threshold_segment};
use texseg::{Displacement, Feature, GrayImage, HistogramF64, ScalarMapF64, WindowSpec};

pub const DEFAULT_WINDOW: usize = 17;
pub const DEFAULT_LEVELS: usize = 32;
pub const DEFAULT_BINS: usize = 64;

#[derive(Debug, Parser)]
#[command(name = "texseg", version, about = "Texture feature maps, local fractal dimension and threshold segmentation")]
pub struct Cli {
    /// Worker threads for map computation [default: machine parallelism]
    #[arg(long, global = true)]
    pub threads: Option<NonZeroUsize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Per-pixel co-occurrence feature map over sliding windows
    Glcm(GlcmArgs),
    /// Pick the displacement maximizing the chi-square statistic
    GlcmSelect(SelectArgs),
    /// Per-pixel local fractal dimension map
    Fractal(FractalArgs),
    /// Histogram of an FMAP as CSV
    Histogram(HistogramArgs),
    /// Threshold an FMAP into a black/white PGM
    Segment(SegmentArgs),
}

#[derive(Debug, clap::Args)]
pub struct GlcmArgs {
    /// energy, entropy, contrast, homogeneity or correlation
    #[arg(long)]
    pub feature: Feature,
    /// Row offset of the second pixel
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    pub dx: isize,
    /// Column offset of the second pixel
    #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
    pub dy: isize,
    /// Odd window side
    #[arg(long, default_value_t = DEFAULT_WINDOW)]
    pub window: usize,
    /// Gray levels after quantization (2..=256)
    #[arg(long, default_value_t = DEFAULT_LEVELS)]
    pub levels: usize,
    /// Write the exact map as FMAP
    #[arg(long)]
    pub out_map: Option<PathBuf>,
    /// Write a min-max rescaled PGM view
    #[arg(long)]
    pub out_view: Option<PathBuf>,
    /// Input PGM
    pub input: PathBuf,
}

#[derive(Debug, clap::Args)]
pub struct SelectArgs {
    /// Candidate displacements, e.g. "0,1;1,0;1,1"
    #[arg(long, allow_hyphen_values = true)]
    pub candidates: String,
    /// Gray levels after quantization (2..=256)
    #[arg(long, default_value_t = DEFAULT_LEVELS)]
    pub levels: usize,
    /// Input PGM
    pub input: PathBuf,
}

#[derive(Debug, clap::Args)]
pub struct FractalArgs {
    /// box, hurst or range
    #[arg(long)]
    pub method: Method,
    /// Write the exact map as FMAP
    #[arg(long)]
    pub out_map: Option<PathBuf>,
    /// Write a min-max rescaled PGM view
    #[arg(long)]
    pub out_view: Option<PathBuf>,
    /// Input PGM
    pub input: PathBuf,
}

#[derive(Debug, clap::Args)]
pub struct HistogramArgs {
    #[arg(long, default_value_t = DEFAULT_BINS)]
    pub bins: usize,
    /// CSV destination [default: standard output]
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Input FMAP
    pub input: PathBuf,
}

#[derive(Debug, clap::Args)]
#[command(group(ArgGroup::new("level").required(true).args(["threshold", "percentile"])))]
pub struct SegmentArgs {
    /// Absolute threshold h: black where value > h
    #[arg(long, allow_negative_numbers = true)]
    pub threshold: Option<f64>,
    /// Threshold at this nearest-rank percentile of the map (0..=100)
    #[arg(long)]
    pub percentile: Option<f64>,
    /// Output PGM
    #[arg(long)]
    pub out: PathBuf,
    /// Input FMAP
    pub input: PathBuf,
}

/// Parses `"dx,dy;dx,dy;..."`.
pub fn parse_candidates(spec: &str) -> Result<Vec<Displacement>> {
    let mut out = Vec::new();
    for part in spec.split(';').map(str::trim).filter(|p| !p.is_empty()) {
        let (a, b) = part.split_once(',').with_context(|| format!("candidate '{part}' is not of the form dx,dy"))?;
        let dx: isize = a.trim().parse().with_context(|| format!("bad dx in candidate '{part}'"))?;
        let dy: isize = b.trim().parse().with_context(|| format!("bad dy in candidate '{part}'"))?;
        out.push(Displacement::new(dx, dy).with_context(|| format!("candidate '{part}'"))?);
    }
    if out.is_empty() {
        bail!("--candidates lists no displacements");
    }
    Ok(out)
}

/// Formats with at least six significant digits, in plain decimal notation.
pub fn decimal(v: f64) -> String {
    if v == 0.0 || !v.is_finite() {
        return format!("{v:.6}");
    }
    let magnitude = v.abs().log10().floor() as i64;
    let places = (5 - magnitude).max(0) as usize;
    format!("{v:.places$}")
}

pub fn histogram_csv(h: &HistogramF64) -> String {
    let mut s = String::from("bin_lo,bin_hi,count\n");
    for (i, count) in h.counts().iter().enumerate() {
        let (lo, hi) = h.bin_edges(i);
        s.push_str(&format!("{},{},{}\n", decimal(lo), decimal(hi), count));
    }
    s
}

fn read_pgm(path: &Path) -> Result<GrayImage> {
    let bytes = fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    load_pgm(&bytes).with_context(|| format!("decoding {}", path.display()))
}

fn read_fmap(path: &Path) -> Result<ScalarMapF64> {
    let bytes = fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    fmap::decode(&bytes).with_context(|| format!("decoding {}", path.display()))
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<()> {
    fs::write(path, bytes).with_context(|| format!("writing {}", path.display()))
}

fn write_map_outputs(map: &ScalarMapF64, out_map: Option<&Path>, out_view: Option<&Path>) -> Result<()> {
    if let Some(path) = out_map {
        write_file(path, &fmap::encode(map)?)?;
    }
    if let Some(path) = out_view {
        write_file(path, &save_pgm(&rescale_for_display(map), false))?;
    }
    Ok(())
}

fn with_pool<R: Send>(threads: Option<NonZeroUsize>, f: impl FnOnce() -> R + Send) -> Result<R> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads {
        builder = builder.num_threads(n.get());
    }
    let pool = builder.build().context("starting worker pool")?;
    Ok(pool.install(f))
}

fn thread_label(threads: Option<NonZeroUsize>) -> String {
    threads.map_or_else(|| "auto".to_owned(), |n| n.to_string())
}

pub fn glcm_map(image: &GrayImage, args: &GlcmArgs, threads: Option<NonZeroUsize>) -> Result<ScalarMapF64> {
    let tau = Displacement::new(args.dx, args.dy).context("--dx/--dy")?;
    let window = WindowSpec::new(args.window).context("--window")?;
    let quantized = quantize(image, args.levels).context("--levels")?;
    Ok(with_pool(threads, || feature_map::<f64>(&quantized, args.feature, tau, window, args.levels))??)
}

pub fn fractal_map(image: &GrayImage, method: Method, threads: Option<NonZeroUsize>) -> Result<ScalarMapF64> {
    with_pool(threads, || method.dimension_map::<f64>(image))
}

fn cmd_glcm(args: &GlcmArgs, threads: Option<NonZeroUsize>, out: &mut dyn Write) -> Result<()> {
    writeln!(
        out,
        "# texseg glcm feature={} dx={} dy={} window={} levels={} threads={}",
        args.feature,
        args.dx,
        args.dy,
        args.window,
        args.levels,
        thread_label(threads)
    )?;
    let image = read_pgm(&args.input)?;
    let map = glcm_map(&image, args, threads)?;
    write_map_outputs(&map, args.out_map.as_deref(), args.out_view.as_deref())?;
    writeln!(out, "feature={} min={} max={}", args.feature, map.min(), map.max())?;
    Ok(())
}

fn cmd_glcm_select(args: &SelectArgs, out: &mut dyn Write) -> Result<()> {
    writeln!(out, "# texseg glcm-select candidates={} levels={}", args.candidates, args.levels)?;
    let candidates = parse_candidates(&args.candidates)?;
    let image = quantize(&read_pgm(&args.input)?, args.levels).context("--levels")?;
    let (best, chi) = select_displacement::<f64>(&image, &candidates, args.levels)?;
    writeln!(out, "{best} chi2={chi}")?;
    Ok(())
}

fn cmd_fractal(args: &FractalArgs, threads: Option<NonZeroUsize>, out: &mut dyn Write) -> Result<()> {
    writeln!(out, "# texseg fractal method={} threads={}", args.method, thread_label(threads))?;
    let image = read_pgm(&args.input)?;
    let map = fractal_map(&image, args.method, threads)?;
    write_map_outputs(&map, args.out_map.as_deref(), args.out_view.as_deref())?;
    writeln!(out, "method={} min={} max={}", args.method, map.min(), map.max())?;
    Ok(())
}

fn cmd_histogram(args: &HistogramArgs, out: &mut dyn Write) -> Result<()> {
    let map = read_fmap(&args.input)?;
    let h = histogram(&map, args.bins).context("--bins")?;
    let csv = histogram_csv(&h);
    match &args.out {
        Some(path) => {
            writeln!(out, "# texseg histogram bins={}", args.bins)?;
            write_file(path, csv.as_bytes())?;
            writeln!(out, "bins={} lo={} hi={}", args.bins, h.lo(), h.hi())?;
        }
        None => out.write_all(csv.as_bytes())?,
    }
    Ok(())
}

fn cmd_segment(args: &SegmentArgs, out: &mut dyn Write) -> Result<()> {
    let map = read_fmap(&args.input)?;
    let h = match (args.threshold, args.percentile) {
        (Some(h), None) => h,
        (None, Some(p)) => percentile_threshold(&map, p).context("--percentile")?,
        _ => bail!("give exactly one of --threshold or --percentile"),
    };
    let seg = threshold_segment(&map, h);
    write_file(&args.out, &save_pgm(&seg, false))?;
    let black = seg.pixels().iter().filter(|&&p| p == texseg::segmentation::BLACK).count();
    writeln!(out, "# texseg segment")?;
    writeln!(out, "threshold={h} black={black} white={}", seg.pixels().len() - black)?;
    Ok(())
}

/// Runs a parsed command, writing its report lines to `out`.
pub fn execute(cli: &Cli, out: &mut dyn Write) -> Result<()> {
    match &cli.command {
        Command::Glcm(a) => cmd_glcm(a, cli.threads, out),
        Command::GlcmSelect(a) => cmd_glcm_select(a, out),
        Command::Fractal(a) => cmd_fractal(a, cli.threads, out),
        Command::Histogram(a) => cmd_histogram(a, out),
        Command::Segment(a) => cmd_segment(a, out),
    }
}
