//! Command-line front end: `segment`, `simulate`, and `scale`.
//!
//! Everything here is a thin shell over the library; outputs are flat
//! tab-separated tables meant for plotting elsewhere. Exit codes: 0 on
//! success, 1 on any pipeline error, 2 on usage errors.

use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{CommandFactory, Parser, Subcommand};

use hetseg::ingest::{
    parse_series_path, write_breaks_tsv, write_contrast_tsv, write_scales_tsv, IngestConfig,
    IntervalScheme, MissingPolicy, ParsedSeries,
};
use hetseg::pipeline::{analyze_named, AnalysisOptions};
use hetseg::robust::{scale_per_interval_named, ScaleOptions};
use hetseg::selection::Criterion;
use hetseg::sim::{run_grid, GridConfig, ModelKind, SimDesign};

#[derive(Parser)]
#[command(
    name = "hetseg",
    version,
    about = "Mean-shift detection in series with month-dependent noise levels",
    arg_required_else_help = true
)]
struct Cli {
    /// Input series: delimiter-separated text with a header row, dates as
    /// YYYY-MM-DD.
    #[arg(long, global = true, value_name = "FILE")]
    input: Option<PathBuf>,

    /// Header name of the date column.
    #[arg(long, global = true, default_value = "date", value_name = "NAME")]
    date_col: String,

    /// Header name of the value column.
    #[arg(long, global = true, default_value = "value", value_name = "NAME")]
    value_col: String,

    /// Take variance-interval labels from this column instead of pooling by
    /// calendar month.
    #[arg(long, global = true, value_name = "NAME")]
    label_col: Option<String>,

    /// What to do with rows that fail to parse: drop or error.
    #[arg(long, global = true, default_value = "drop", value_parser = parse_missing)]
    missing: MissingPolicy,

    /// Largest candidate segment count (default: n/5, capped at 100).
    #[arg(long, global = true, value_name = "K")]
    kmax: Option<usize>,

    /// Comma list of selection criteria from lav,bm1,bm2,mbic.
    #[arg(
        long,
        global = true,
        value_delimiter = ',',
        default_value = "lav,bm1,bm2,mbic",
        value_parser = parse_criterion
    )]
    criteria: Vec<Criterion>,

    /// Base seed for the simulation bench.
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,

    /// Substitute a tiny floor for zero interval scales instead of failing.
    #[arg(long, global = true)]
    zero_scale_floor: bool,

    /// Directory for the output tables.
    #[arg(long, global = true, default_value = ".", value_name = "DIR")]
    out_dir: PathBuf,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Estimate interval scales, segment the series, and choose the number
    /// of segments per criterion. Writes scales.tsv, contrast.tsv, and one
    /// breaks_<criterion>.tsv per criterion.
    Segment,
    /// Run the synthetic benchmark grid. Writes simgrid.tsv and prints
    /// per-setting median errors.
    Simulate {
        /// Series length; must be a positive multiple of 8.
        #[arg(long, default_value_t = 200)]
        n: usize,

        /// Replications per noise setting.
        #[arg(long, default_value_t = 100)]
        replications: u32,

        /// Noise level of odd months.
        #[arg(long, default_value_t = 0.5)]
        sigma1: f64,

        /// Comma list of even-month noise levels (default: 0.1 to 1.5 in
        /// steps of 0.2).
        #[arg(long, value_delimiter = ',', value_name = "S,S,...")]
        sigma2: Option<Vec<f64>>,

        /// Comma list of models from mfixedhetero,mhomo,mhetero.
        #[arg(
            long,
            value_delimiter = ',',
            default_value = "mfixedhetero,mhomo,mhetero",
            value_parser = parse_model
        )]
        models: Vec<ModelKind>,

        /// Hand the generator's true noise levels to the main model instead
        /// of estimating them.
        #[arg(long)]
        oracle_variances: bool,
    },
    /// Estimate and write the per-interval scale table only.
    Scale,
}

fn parse_criterion(s: &str) -> Result<Criterion, String> {
    Criterion::parse(s).map_err(|e| e.to_string())
}

fn parse_model(s: &str) -> Result<ModelKind, String> {
    ModelKind::parse(s).map_err(|e| e.to_string())
}

fn parse_missing(s: &str) -> Result<MissingPolicy, String> {
    MissingPolicy::parse(s).map_err(|e| e.to_string())
}

fn usage_error(msg: &str) -> ! {
    Cli::command().error(ErrorKind::InvalidValue, msg).exit()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: &Cli) -> hetseg::Result<()> {
    fs::create_dir_all(&cli.out_dir)?;
    match &cli.cmd {
        Cmd::Segment => cmd_segment(cli),
        Cmd::Scale => cmd_scale(cli),
        Cmd::Simulate {
            n,
            replications,
            sigma1,
            sigma2,
            models,
            oracle_variances,
        } => cmd_simulate(
            cli,
            *n,
            *replications,
            *sigma1,
            sigma2.clone(),
            models.clone(),
            *oracle_variances,
        ),
    }
}

fn load(cli: &Cli) -> hetseg::Result<ParsedSeries> {
    let Some(input) = cli.input.as_ref() else {
        usage_error("--input <FILE> is required for this command");
    };
    let cfg = IngestConfig {
        date_column: cli.date_col.clone(),
        value_column: cli.value_col.clone(),
        missing_policy: cli.missing,
        scheme: match &cli.label_col {
            Some(column) => IntervalScheme::ExplicitLabels {
                column: column.clone(),
            },
            None => IntervalScheme::CalendarMonth,
        },
    };
    let parsed = parse_series_path(input, &cfg)?;
    if parsed.dropped_rows > 0 {
        eprintln!("note: dropped {} unparseable rows", parsed.dropped_rows);
    }
    Ok(parsed)
}

fn create(cli: &Cli, name: &str) -> hetseg::Result<BufWriter<File>> {
    Ok(BufWriter::new(File::create(cli.out_dir.join(name))?))
}

fn cmd_segment(cli: &Cli) -> hetseg::Result<()> {
    let parsed = load(cli)?;
    let opts = AnalysisOptions {
        kmax: cli.kmax,
        criteria: cli.criteria.clone(),
        scale: ScaleOptions {
            zero_scale_floor: cli.zero_scale_floor,
        },
        ..AnalysisOptions::default()
    };
    let got = analyze_named(&parsed.series, &parsed.map, &parsed.interval_names, &opts)?;

    write_scales_tsv(
        create(cli, "scales.tsv")?,
        &parsed.interval_names,
        &got.scales,
    )?;
    write_contrast_tsv(create(cli, "contrast.tsv")?, got.fit.contrast())?;
    for (&criterion, &k) in &got.report.chosen {
        let name = format!("breaks_{criterion}.tsv");
        write_breaks_tsv(create(cli, &name)?, &parsed.series, got.fit.segmentation(k))?;
    }

    for w in &got.report.diagnostics.warnings {
        eprintln!("warning: {w}");
    }
    println!(
        "n = {}, intervals = {}, kmax = {}",
        parsed.series.len(),
        parsed.map.interval_count(),
        got.fit.kmax()
    );
    let dates = parsed.series.dates().expect("ingested series are dated");
    for (&criterion, &k) in &got.report.chosen {
        let seg = got.fit.segmentation(k);
        let breaks: Vec<String> = seg
            .breakpoints()
            .iter()
            .map(|&t| dates[t - 1].to_string())
            .collect();
        let breaks = if breaks.is_empty() {
            "none".to_string()
        } else {
            breaks.join(",")
        };
        println!("{criterion}: K = {k}, breaks after {breaks}");
    }
    Ok(())
}

fn cmd_scale(cli: &Cli) -> hetseg::Result<()> {
    let parsed = load(cli)?;
    let scale_opts = ScaleOptions {
        zero_scale_floor: cli.zero_scale_floor,
    };
    let scales = scale_per_interval_named(
        &parsed.series,
        &parsed.map,
        &scale_opts,
        &parsed.interval_names,
    )?;
    write_scales_tsv(create(cli, "scales.tsv")?, &parsed.interval_names, &scales)?;
    let mut stdout = std::io::stdout().lock();
    write_scales_tsv(&mut stdout, &parsed.interval_names, &scales)?;
    stdout.flush()?;
    Ok(())
}

fn cmd_simulate(
    cli: &Cli,
    n: usize,
    replications: u32,
    sigma1: f64,
    sigma2: Option<Vec<f64>>,
    models: Vec<ModelKind>,
    oracle_variances: bool,
) -> hetseg::Result<()> {
    let design = SimDesign::defaults(n, cli.seed).and_then(|mut d| {
        d.replications = replications;
        d.sigma1 = sigma1;
        if let Some(grid) = sigma2 {
            d.sigma2_grid = grid;
        }
        d.validate()?;
        Ok(d)
    });
    let design = match design {
        Ok(d) => d,
        Err(e) => usage_error(&format!("invalid simulation design: {e}")),
    };
    let cfg = GridConfig {
        models,
        criteria: cli.criteria.clone(),
        oracle_variances,
        kmax: cli.kmax,
    };
    let table = run_grid(&design, &cfg)?;
    table.write_tsv(create(cli, "simgrid.tsv")?)?;
    for f in &table.failures {
        eprintln!("warning: {f}");
    }

    println!("sigma2\tmodel\tcriterion\tmedianKErr\tmedianD1\tmedianD2\trows");
    for s in table.summaries() {
        println!(
            "{}\t{}\t{}\t{}\t{}\t{}\t{}",
            s.sigma2, s.model, s.criterion, s.median_k_err, s.median_d1, s.median_d2, s.rows
        );
    }
    Ok(())
}
