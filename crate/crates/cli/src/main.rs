//! `rlcseg` command-line tool.

mod io;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use rlcseg::{
    column_profile, cost_report, decompress, evaluate, mh_encode, row_profile, save_pbm,
    segment_document, synth_doc, BitImage, GroundTruth, LayoutSpec, RleDocument, SegmentConfig,
    SegmentationResult, Span, ThresholdMode,
};

use crate::io::{load_document, Format};

#[derive(Parser)]
#[command(
    name = "rlcseg",
    version,
    about = "Line, word and character segmentation on run-length compressed text pages"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Convert a page to run-length form (.rlc text or .mh bitstream)
    Compress(CompressArgs),
    /// Expand a .rlc or .mh page to PBM
    Decompress(DecompressArgs),
    /// Segment a page into lines, words and characters
    Segment(SegmentArgs),
    /// Print a row or column projection profile as CSV
    Profile(ProfileArgs),
    /// Render a synthetic page and its ground truth
    Synth(SynthArgs),
    /// Score a segmentation against ground truth
    Eval(EvalArgs),
    /// Report operation counts of the compressed path
    Bench(BenchArgs),
}

#[derive(Args)]
struct CompressArgs {
    #[arg(long = "in")]
    input: PathBuf,
    /// Input format; inferred from the extension when omitted
    #[arg(long, value_enum)]
    in_format: Option<Format>,
    /// Output format; inferred from --out, else rlc
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Output path; defaults to the input path with the new extension
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct DecompressArgs {
    #[arg(long = "in")]
    input: PathBuf,
    /// Input format; inferred from the extension when omitted
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Output PBM; defaults to the input path with a .pbm extension
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write plain (P1) rather than raw (P4) PBM
    #[arg(long)]
    ascii: bool,
}

#[derive(Args, Clone)]
struct SegmentOptions {
    /// Rows whose black count is <= tau separate lines
    #[arg(long, default_value_t = 0)]
    tau: u32,
    /// Word-space threshold: a positive integer, `auto` (per line) or `auto-page`
    #[arg(long, default_value = "auto")]
    threshold: ThresholdMode,
}

impl SegmentOptions {
    fn config(&self) -> SegmentConfig {
        SegmentConfig {
            tau: self.tau,
            threshold: self.threshold,
        }
    }
}

#[derive(Args)]
struct SegmentArgs {
    #[arg(
        long = "in",
        required_unless_present = "in_dir",
        conflicts_with = "in_dir"
    )]
    input: Option<PathBuf>,
    /// Segment every .pbm/.rlc/.mh file in a directory
    #[arg(long, requires = "out_dir")]
    in_dir: Option<PathBuf>,
    /// Where batch results go, one <stem>.json per input
    #[arg(long)]
    out_dir: Option<PathBuf>,
    /// Input format; inferred from the extension when omitted
    #[arg(long, value_enum)]
    format: Option<Format>,
    #[command(flatten)]
    options: SegmentOptions,
    /// JSON output path; stdout when omitted
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write a PBM with character boxes outlined
    #[arg(long, conflicts_with = "in_dir")]
    overlay: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum AxisArg {
    Row,
    Column,
}

#[derive(Args)]
struct ProfileArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long, value_enum)]
    format: Option<Format>,
    #[arg(long, value_enum, default_value = "row")]
    axis: AxisArg,
    /// Row band `start:end` (1-based, inclusive) for column profiles; whole page by default
    #[arg(long, value_parser = parse_band)]
    band: Option<Span>,
    /// CSV output path; stdout when omitted
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SynthArgs {
    #[arg(long, default_value_t = 3)]
    lines: usize,
    #[arg(long, default_value_t = 4)]
    words: usize,
    #[arg(long, default_value_t = 5)]
    chars: usize,
    #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u64).range(1..))]
    glyph_width: u64,
    #[arg(long, default_value_t = 9, value_parser = clap::value_parser!(u64).range(1..))]
    glyph_height: u64,
    /// Extra random glyph width, 0..=jitter columns
    #[arg(long, default_value_t = 0)]
    jitter: usize,
    #[arg(long, default_value_t = 1)]
    char_gap: usize,
    #[arg(long, default_value_t = 5)]
    word_gap: usize,
    #[arg(long, default_value_t = 6)]
    line_gap: usize,
    #[arg(long, default_value_t = 4)]
    margin: usize,
    /// Probability that an interior glyph pixel is white
    #[arg(long, default_value_t = 0.0)]
    perforation: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = "synth.pbm")]
    out: PathBuf,
    /// Ground-truth JSON path; defaults to the page path with .truth.json
    #[arg(long)]
    truth: Option<PathBuf>,
    #[arg(long)]
    ascii: bool,
}

#[derive(Args)]
struct EvalArgs {
    /// Segmentation result JSON
    #[arg(long)]
    pred: PathBuf,
    /// Ground-truth JSON
    #[arg(long)]
    truth: PathBuf,
    /// Allowed boundary error in pixels
    #[arg(long, default_value_t = 0)]
    tol: usize,
    /// Print metrics as JSON instead of a table
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long = "in", required = true, num_args = 1..)]
    inputs: Vec<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    #[command(flatten)]
    options: SegmentOptions,
    /// Emit CSV rows instead of JSON
    #[arg(long)]
    csv: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_band(s: &str) -> std::result::Result<Span, String> {
    let (a, b) = s
        .split_once(':')
        .ok_or_else(|| format!("band must look like START:END, got {s:?}"))?;
    let parse = |v: &str| {
        v.trim()
            .parse::<usize>()
            .map_err(|_| format!("bad row number {v:?}"))
    };
    Ok(Span::new(parse(a)?, parse(b)?))
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => io::write(path, text.as_bytes()),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn compress_cmd(args: CompressArgs) -> Result<()> {
    let in_format = Format::resolve(&args.input, args.in_format)?;
    let format = args
        .format
        .or_else(|| args.out.as_deref().and_then(Format::from_path))
        .unwrap_or(Format::Rlc);
    if format == Format::Pbm {
        bail!("compress writes rlc or mh; use `decompress` for PBM output");
    }
    let out = args
        .out
        .unwrap_or_else(|| io::with_extension(&args.input, format.extension()));
    let doc = load_document(&args.input, in_format)?;
    let bytes = match format {
        Format::Rlc => doc.to_rlc().into_bytes(),
        Format::Mh => mh_encode(&doc).to_bytes(),
        Format::Pbm => unreachable!(),
    };
    io::write(&out, &bytes)
}

fn decompress_cmd(args: DecompressArgs) -> Result<()> {
    let format = Format::resolve(&args.input, args.format)?;
    let out = args
        .out
        .unwrap_or_else(|| io::with_extension(&args.input, "pbm"));
    if out == args.input {
        bail!("refusing to overwrite the input {}", out.display());
    }
    let doc = load_document(&args.input, format)?;
    io::write(&out, &save_pbm(&decompress(&doc), args.ascii))
}

/// Outlines every character box one pixel outside its bounds.
fn overlay(doc: &RleDocument, result: &SegmentationResult) -> BitImage {
    let mut img = decompress(doc);
    let (h, w) = (img.height() as isize, img.width() as isize);
    let put = |r: isize, c: isize, img: &mut BitImage| {
        if r >= 1 && r <= h && c >= 1 && c <= w {
            img.set(r as usize, c as usize, true);
        }
    };
    for line in &result.lines {
        let top = line.rows.start as isize - 1;
        let bottom = line.rows.end as isize + 1;
        for ch in line.words.iter().flat_map(|w| &w.chars) {
            let left = ch.cols.start as isize - 1;
            let right = ch.cols.end as isize + 1;
            for c in left..=right {
                put(top, c, &mut img);
                put(bottom, c, &mut img);
            }
            for r in top..=bottom {
                put(r, left, &mut img);
                put(r, right, &mut img);
            }
        }
    }
    img
}

fn segment_cmd(args: SegmentArgs) -> Result<()> {
    let config = args.options.config();
    if let Some(dir) = &args.in_dir {
        return segment_batch(dir, args.out_dir.as_deref().unwrap(), args.format, &config);
    }
    let input = args.input.as_deref().unwrap();
    let format = Format::resolve(input, args.format)?;
    let doc = load_document(input, format)?;
    let result = segment_document(&doc, &config)
        .with_context(|| format!("segmenting {}", input.display()))?;
    let mut json = result.to_json();
    json.push('\n');
    emit(args.out.as_deref(), &json)?;
    if let Some(path) = &args.overlay {
        io::write(path, &save_pbm(&overlay(&doc, &result), false))?;
    }
    Ok(())
}

fn segment_batch(
    dir: &Path,
    out_dir: &Path,
    format: Option<Format>,
    config: &SegmentConfig,
) -> Result<()> {
    let mut inputs: Vec<PathBuf> = std::fs::read_dir(dir)
        .with_context(|| format!("listing {}", dir.display()))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file() && (format.is_some() || Format::from_path(p).is_some()))
        .collect();
    inputs.sort();
    std::fs::create_dir_all(out_dir).with_context(|| format!("creating {}", out_dir.display()))?;
    let results: Vec<Result<(PathBuf, usize)>> = inputs
        .par_iter()
        .map(|path| {
            let doc = load_document(path, Format::resolve(path, format)?)?;
            let result = segment_document(&doc, config)
                .with_context(|| format!("segmenting {}", path.display()))?;
            let stem = path.file_stem().unwrap_or_default();
            let out = out_dir.join(stem).with_extension("json");
            io::write(&out, format!("{}\n", result.to_json()).as_bytes())?;
            Ok((out, result.lines.len()))
        })
        .collect();
    for r in results {
        let (out, lines) = r?;
        println!("{}\t{lines} lines", out.display());
    }
    Ok(())
}

fn profile_cmd(args: ProfileArgs) -> Result<()> {
    let format = Format::resolve(&args.input, args.format)?;
    let doc = load_document(&args.input, format)?;
    let curve = match args.axis {
        AxisArg::Row => row_profile(&doc),
        AxisArg::Column => {
            let band = args.band.unwrap_or(Span::new(1, doc.height()));
            column_profile(&doc, band)?
        }
    };
    emit(args.out.as_deref(), &curve.to_csv())?;
    eprintln!("addition_count={}", curve.addition_count);
    Ok(())
}

fn synth_cmd(args: SynthArgs) -> Result<()> {
    let spec = LayoutSpec {
        lines: args.lines,
        words_per_line: args.words,
        chars_per_word: args.chars,
        glyph_width: args.glyph_width as usize,
        glyph_height: args.glyph_height as usize,
        glyph_width_jitter: args.jitter,
        char_gap: args.char_gap,
        word_gap: args.word_gap,
        line_gap: args.line_gap,
        margin: args.margin,
        perforation: args.perforation,
        page: None,
        seed: args.seed,
    };
    let (img, truth) = synth_doc(&spec)?;
    let truth_path = args
        .truth
        .unwrap_or_else(|| args.out.with_extension("truth.json"));
    io::write(&args.out, &save_pbm(&img, args.ascii))?;
    io::write(&truth_path, format!("{}\n", truth.to_json()).as_bytes())
}

fn load_layout(path: &Path) -> Result<GroundTruth> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    GroundTruth::from_json(&text).with_context(|| format!("parsing {}", path.display()))
}

fn eval_cmd(args: EvalArgs) -> Result<()> {
    let pred = load_layout(&args.pred)?;
    let truth = load_layout(&args.truth)?;
    let e = evaluate(&pred, &truth, args.tol)?;
    if args.json {
        println!("{}", serde_json::to_string_pretty(&e)?);
    } else {
        print!("{e}");
    }
    Ok(())
}

fn bench_cmd(args: BenchArgs) -> Result<()> {
    let config = args.options.config();
    let mut reports = Vec::with_capacity(args.inputs.len());
    for input in &args.inputs {
        let doc = load_document(input, Format::resolve(input, args.format)?)?;
        let result = segment_document(&doc, &config)?;
        reports.push((input, cost_report(&doc, &result)));
    }
    let text = if args.csv {
        let mut s = format!("file,{}\n", rlcseg::CostReport::CSV_HEADER);
        for (path, r) in &reports {
            s.push_str(&format!("{},{}\n", path.display(), r.to_csv_row()));
        }
        s
    } else {
        let items: Vec<_> = reports
            .iter()
            .map(|(path, r)| serde_json::json!({ "file": path.display().to_string(), "cost": r }))
            .collect();
        format!("{}\n", serde_json::to_string_pretty(&items)?)
    };
    emit(args.out.as_deref(), &text)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Compress(a) => compress_cmd(a),
        Command::Decompress(a) => decompress_cmd(a),
        Command::Segment(a) => segment_cmd(a),
        Command::Profile(a) => profile_cmd(a),
        Command::Synth(a) => synth_cmd(a),
        Command::Eval(a) => eval_cmd(a),
        Command::Bench(a) => bench_cmd(a),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
