//! Command-line front end: dataset conversion, mining runs, and the
//! exhaustive reference miner, all emitting a single JSON report.

use std::fs;
use std::io::BufReader;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use tempomine::miner::{self, IsoKind, IsoMode, MinerConfig, Support};
use tempomine::oracle;
use tempomine::report::{self, ConfigEcho, RunReport, Timings};
use tempomine::temporal::{
    merge_contacts, parse_edge_list, parse_sociopatterns, split_by_window, DataSet,
};
use tempomine::vocab::Vocab;

#[derive(Parser)]
#[command(
    name = "tempomine",
    version,
    about = "Frequent pattern mining over continuous-time temporal networks"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Convert raw inputs into per-network edge-list files.
    Convert {
        /// Input file (one edge list or one SocioPatterns contact list).
        input: PathBuf,
        #[arg(long, value_enum)]
        format: Format,
        /// Contact sampling resolution in seconds (sociopatterns only).
        #[arg(long, default_value_t = 20.0)]
        resolution: f64,
        /// Window boundaries t1,t2,...; each output network covers
        /// [t_i, t_{i+1}).
        #[arg(long, value_delimiter = ',')]
        windows: Vec<f64>,
        /// Output directory for the edge-list files.
        #[arg(long)]
        out: PathBuf,
        /// Time epsilon for snapping parsed times (edgelist only).
        #[arg(long, default_value_t = 0.0)]
        time_eps: f64,
    },
    /// Mine frequent temporal patterns from a dataset directory.
    Mine(MineArgs),
    /// Exhaustive reference miner for small instances.
    Oracle {
        #[command(flatten)]
        args: MineArgs,
        /// Maximum temporal edges per network.
        #[arg(long, default_value_t = oracle::DEFAULT_EDGE_CAP)]
        edge_cap: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Edgelist,
    Sociopatterns,
}

#[derive(Clone, Copy, ValueEnum)]
enum Iso {
    E,
    I,
    Es,
    Is,
}

impl Iso {
    fn kind(self) -> IsoKind {
        match self {
            Iso::E => IsoKind::Exact,
            Iso::I => IsoKind::Inexact,
            Iso::Es => IsoKind::ExactSeq,
            Iso::Is => IsoKind::InexactSeq,
        }
    }
}

#[derive(Args)]
struct MineArgs {
    /// Directory of edge-list files, one network per file.
    #[arg(long)]
    data: PathBuf,
    /// Absolute count (N) or fraction of the network count (0.x).
    #[arg(long)]
    min_supp: String,
    #[arg(long, value_enum)]
    iso: Iso,
    /// Duration bin width, required for modes i/is.
    #[arg(long)]
    duration_bin: Option<f64>,
    /// Optional delay bin width (off by default).
    #[arg(long)]
    delay_bin: Option<f64>,
    /// Cap on temporal edges per pattern.
    #[arg(long)]
    max_edges: Option<usize>,
    /// Worker threads (0 = library default).
    #[arg(long, default_value_t = 0)]
    workers: usize,
    /// Time epsilon for snapping parsed times.
    #[arg(long, default_value_t = 0.0)]
    time_eps: f64,
    /// Report output path.
    #[arg(long)]
    out: PathBuf,
    /// Report concrete origin vertex ids instead of anonymized ones.
    #[arg(long)]
    with_support_ids: bool,
}

enum AppError {
    Usage(String),
    Data(String),
}

impl<E: std::error::Error> From<E> for AppError {
    fn from(e: E) -> Self {
        AppError::Data(e.to_string())
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    let code = match run(cli) {
        Ok(()) => 0,
        Err(AppError::Usage(msg)) => {
            eprintln!("error: {msg}");
            1
        }
        Err(AppError::Data(msg)) => {
            eprintln!("error: {msg}");
            2
        }
    };
    std::process::exit(code);
}

fn run(cli: Cli) -> Result<(), AppError> {
    match cli.cmd {
        Cmd::Convert {
            input,
            format,
            resolution,
            windows,
            out,
            time_eps,
        } => cmd_convert(&input, format, resolution, &windows, &out, time_eps),
        Cmd::Mine(args) => cmd_mine(args, None),
        Cmd::Oracle { args, edge_cap } => cmd_mine(args, Some(edge_cap)),
    }
}

fn network_stem(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "network".to_string())
}

fn cmd_convert(
    input: &Path,
    format: Format,
    resolution: f64,
    windows: &[f64],
    out: &Path,
    time_eps: f64,
) -> Result<(), AppError> {
    let mut vocab = Vocab::new();
    let name = network_stem(input);
    let file = fs::File::open(input)
        .map_err(|e| AppError::Data(format!("cannot read {}: {e}", input.display())))?;
    let reader = BufReader::new(file);
    let network = match format {
        Format::Edgelist => parse_edge_list(reader, &name, &mut vocab, time_eps)?,
        Format::Sociopatterns => {
            let contacts = parse_sociopatterns(reader, &mut vocab)?;
            merge_contacts(&contacts, resolution, &name, &mut vocab)?
        }
    };
    let networks = if windows.is_empty() {
        vec![network]
    } else {
        let split = split_by_window(&network, windows)?;
        if split.dropped > 0 {
            eprintln!("note: {} edges fell outside all windows", split.dropped);
        }
        split.data_set.networks
    };
    fs::create_dir_all(out)?;
    let mut written = 0usize;
    for n in &networks {
        if n.edges.is_empty() {
            continue;
        }
        let path = out.join(format!("{}.edges", n.name));
        fs::write(&path, n.to_edge_list(&vocab))?;
        println!(
            "{}: {} edges, {} vertices",
            n.name,
            n.edges.len(),
            n.vertices.len()
        );
        written += 1;
    }
    println!("wrote {written} network(s) to {}", out.display());
    Ok(())
}

fn load_dataset(dir: &Path, time_eps: f64) -> Result<(DataSet, Vocab), AppError> {
    let mut vocab = Vocab::new();
    let mut ds = DataSet::default();
    let mut paths: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(|e| AppError::Data(format!("cannot read {}: {e}", dir.display())))?
        .filter_map(|r| r.ok())
        .map(|e| e.path())
        .filter(|p| p.is_file())
        .collect();
    paths.sort();
    for path in paths {
        let file = fs::File::open(&path)?;
        let network = parse_edge_list(
            BufReader::new(file),
            &network_stem(&path),
            &mut vocab,
            time_eps,
        )?;
        ds.push(network)?;
    }
    if ds.networks.is_empty() {
        return Err(AppError::Data(format!(
            "no edge-list files found in {}",
            dir.display()
        )));
    }
    Ok((ds, vocab))
}

fn cmd_mine(args: MineArgs, edge_cap: Option<usize>) -> Result<(), AppError> {
    // All flag validation happens before any data is loaded.
    let min_supp: Support = args.min_supp.parse().map_err(AppError::Usage)?;
    let config = MinerConfig {
        min_supp,
        iso: IsoMode {
            kind: args.iso.kind(),
            duration_bin: args.duration_bin,
        },
        delay_bin: args.delay_bin,
        max_pattern_edges: args.max_edges,
        time_eps: args.time_eps,
        workers: args.workers,
    };
    config
        .validate()
        .map_err(|e| AppError::Usage(e.to_string()))?;

    let total_start = Instant::now();
    let (ds, vocab) = load_dataset(&args.data, args.time_eps)?;
    let load_secs = total_start.elapsed().as_secs_f64();

    let mine_start = Instant::now();
    let patterns = match edge_cap {
        None => miner::mine(&ds, &config).map_err(|e| AppError::Usage(e.to_string()))?,
        Some(cap) => oracle::mine_exhaustive(&ds, &config, cap)
            .map_err(|e| AppError::Data(e.to_string()))?,
    };
    let mine_secs = mine_start.elapsed().as_secs_f64();

    let echo = ConfigEcho {
        command: if edge_cap.is_some() { "oracle" } else { "mine" }.to_string(),
        data: args.data.display().to_string(),
        iso: args.iso.kind().flag().to_string(),
        min_supp: args.min_supp.clone(),
        duration_bin: args.duration_bin,
        delay_bin: args.delay_bin,
        max_edges: args.max_edges,
        workers: args.workers,
        time_eps: args.time_eps,
        with_support_ids: args.with_support_ids,
    };
    let timings = Timings {
        load_secs,
        mine_secs,
        total_secs: total_start.elapsed().as_secs_f64(),
    };
    let report = report::build_report(&ds, &vocab, &patterns, echo, timings);
    write_report(&report, &args.out)?;
    print_summary(&report);
    Ok(())
}

fn write_report(report: &RunReport, out: &Path) -> Result<(), AppError> {
    if let Some(parent) = out.parent() {
        if !parent.as_os_str().is_empty() {
            fs::create_dir_all(parent)?;
        }
    }
    let json = serde_json::to_string_pretty(report).map_err(|e| AppError::Data(e.to_string()))?;
    fs::write(out, json + "\n")?;
    Ok(())
}

fn print_summary(report: &RunReport) {
    println!(
        "{} patterns ({} networks scanned in {:.3}s, mined in {:.3}s)",
        report.patterns.len(),
        report
            .patterns
            .iter()
            .flat_map(|p| p.networks.iter())
            .collect::<std::collections::BTreeSet<_>>()
            .len(),
        report.timings.load_secs,
        report.timings.mine_secs
    );
    for (edges, count) in &report.histogram {
        println!("  |E| = {edges}: {count} pattern(s)");
    }
}
