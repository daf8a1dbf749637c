//! Subcommands of the `rnashapes` binary.
//!
//! Exit codes: 0 success, 1 usage error, 2 data error, 3 selftest failure.

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

use rnashapes::counting::{kappa_csv, kappa_table, pg_polynomial, shape_count, shape_polynomial, shape_total};
use rnashapes::oracle::{enumerate_shape_maps, OracleCaps, DEFAULT_MAX_EDGES};
use rnashapes::sampler::{sample_indices, BatchSummary, SamplerConfig, ShapeSampler, Tally};
use rnashapes::Shape;

use crate::acceptance::{self, Fault, SuiteOptions};
use crate::corpus::{project_line, Corpus};

/// Largest genus accepted by the counting and sampling commands.
pub const MAX_GENUS: usize = 6;

/// Samples generated and written per chunk by `sample`.
const SAMPLE_CHUNK: u64 = 1 << 14;

#[derive(Debug, Parser)]
#[command(name = "rnashapes", version, about = "Topological RNA shapes: counting, sampling and corpus analysis")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SampleFormat {
    Word,
    Arcs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum EnumerateFormat {
    Word,
    Map,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Shape polynomial S_g(z), or P_g(z) with --pg, with its coefficients.
    Poly {
        #[arg(long)]
        genus: usize,
        #[arg(long)]
        pg: bool,
    },
    /// Number of shapes of a genus, optionally with a fixed arc count.
    Count {
        #[arg(long)]
        genus: usize,
        #[arg(long)]
        arcs: Option<usize>,
    },
    /// Table of a_t and kappa_t as CSV.
    Kappa {
        #[arg(long)]
        genus: usize,
    },
    /// Uniform random shapes of a genus.
    Sample {
        #[arg(long)]
        genus: usize,
        #[arg(long)]
        count: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        arcs: Option<usize>,
        #[arg(long, value_enum, default_value_t = SampleFormat::Word)]
        format: SampleFormat,
        /// Append the uniformity summary (lines starting with `#`).
        #[arg(long)]
        stats: bool,
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Every shape with the given genus and arc count, by exhaustive search.
    Enumerate {
        #[arg(long)]
        genus: usize,
        #[arg(long)]
        arcs: usize,
        #[arg(long, value_enum, default_value_t = EnumerateFormat::Word)]
        format: EnumerateFormat,
        /// Edge cap of the search (a shape with n arcs needs n + 1).
        #[arg(long, env = "RNASHAPES_ORACLE_CAP", default_value_t = DEFAULT_MAX_EDGES)]
        max_edges: usize,
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Genus, shape word and arc count of every structure in a file.
    Project {
        /// Structure file, or `-` for standard input.
        #[arg(long)]
        input: PathBuf,
        /// Prefix every result with its input line number.
        #[arg(long)]
        per_line: bool,
    },
    /// Shape multiplicities of a structure file.
    Corpus {
        /// Structure file, or `-` for standard input.
        #[arg(long)]
        input: PathBuf,
    },
    /// Runs the acceptance checks.
    Selftest {
        /// Full sample sizes and the raised oracle cap.
        #[arg(long)]
        extended: bool,
        #[arg(long, value_enum, hide = true)]
        inject_fault: Option<Fault>,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Data(String),
    #[error("{0}")]
    Io(#[from] io::Error),
    #[error("selftest failed: {0}")]
    Selftest(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Data(_) | CliError::Io(_) => 2,
            CliError::Selftest(_) => 3,
        }
    }
}

fn check_genus(genus: usize) -> Result<(), CliError> {
    if !(1..=MAX_GENUS).contains(&genus) {
        return Err(CliError::Usage(format!("genus {genus} outside the supported range 1..={MAX_GENUS}")));
    }
    Ok(())
}

fn thread_pool(jobs: Option<usize>) -> Result<Option<rayon::ThreadPool>, CliError> {
    match jobs {
        None => Ok(None),
        Some(0) => Err(CliError::Usage("--jobs must be at least 1".into())),
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build()
            .map(Some)
            .map_err(|e| CliError::Usage(e.to_string())),
    }
}

fn in_pool<T: Send>(pool: Option<&rayon::ThreadPool>, f: impl FnOnce() -> T + Send) -> T {
    match pool {
        Some(p) => p.install(f),
        None => f(),
    }
}

fn read_input(path: &PathBuf) -> Result<String, CliError> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(|e| CliError::Data(format!("{}: {e}", path.display())))
}

/// Runs `command`, writing data to `out` and diagnostics to `err`.
pub fn run(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    match command {
        Command::Poly { genus, pg } => poly(genus, pg, out),
        Command::Count { genus, arcs } => {
            check_genus(genus)?;
            let c = match arcs {
                Some(n) => shape_count(genus, n),
                None => shape_total(genus),
            };
            writeln!(out, "{c}")?;
            Ok(())
        }
        Command::Kappa { genus } => {
            check_genus(genus)?;
            out.write_all(kappa_csv(&[kappa_table(genus)]).as_bytes())?;
            Ok(())
        }
        Command::Sample { genus, count, seed, arcs, format, stats, jobs } => {
            check_genus(genus)?;
            let cfg = SamplerConfig { genus, arcs, seed, count };
            let pool = thread_pool(jobs)?;
            sample_in(&cfg, format, stats, pool.as_ref(), out)
        }
        Command::Enumerate { genus, arcs, format, max_edges, jobs } => {
            let caps = OracleCaps { max_edges };
            let pool = thread_pool(jobs)?;
            enumerate(genus, arcs, format, caps, pool.as_ref(), out)
        }
        Command::Project { input, per_line } => project(&read_input(&input)?, per_line, out, err),
        Command::Corpus { input } => corpus(&read_input(&input)?, out, err),
        Command::Selftest { extended, inject_fault } => {
            let mut opts = if extended { SuiteOptions::full() } else { SuiteOptions::quick() };
            opts.fault = inject_fault;
            selftest(&opts, out)
        }
    }
}

fn poly(genus: usize, pg: bool, out: &mut dyn Write) -> Result<(), CliError> {
    check_genus(genus)?;
    if pg {
        let p = pg_polynomial(genus);
        writeln!(out, "{p}")?;
        writeln!(out, "genus,degree,coefficient")?;
        for (d, c) in p.terms() {
            writeln!(out, "{genus},{d},{c}")?;
        }
    } else {
        let s = shape_polynomial(genus);
        writeln!(out, "{s}")?;
        writeln!(out, "genus,arcs,count")?;
        for (n, c) in s.terms() {
            writeln!(out, "{genus},{n},{c}")?;
        }
        writeln!(out, "# total={}", s.total())?;
    }
    Ok(())
}

/// Writes one line per sample in index order, then the summary if asked.
pub fn sample(cfg: &SamplerConfig, format: SampleFormat, stats: bool, out: &mut dyn Write) -> Result<(), CliError> {
    sample_in(cfg, format, stats, None, out)
}

fn sample_in(
    cfg: &SamplerConfig,
    format: SampleFormat,
    stats: bool,
    pool: Option<&rayon::ThreadPool>,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    cfg.validate().map_err(|e| CliError::Usage(e.to_string()))?;
    if cfg.count == 0 {
        return Err(CliError::Usage("--count must be at least 1".into()));
    }
    let sampler = ShapeSampler::from_config(cfg).map_err(|e| CliError::Usage(e.to_string()))?;
    let mut tally = Tally::default();
    let total = cfg.count as u64;
    let mut start = 0;
    while start < total {
        let end = (start + SAMPLE_CHUNK).min(total);
        let chunk = in_pool(pool, || sample_indices(&sampler, cfg.seed, start..end)).map_err(|e| CliError::Data(e.to_string()))?;
        for s in &chunk {
            let word = s.shape.canonical_word();
            match format {
                SampleFormat::Word => writeln!(out, "{word}")?,
                SampleFormat::Arcs => writeln!(out, "{}", s.shape.pure_diagram().serialize())?,
            }
            if stats {
                tally.add_word(word, s.arcs);
            }
        }
        start = end;
    }
    if stats {
        write!(out, "{}", BatchSummary::from_tally(&sampler, &tally))?;
    }
    Ok(())
}

fn enumerate(
    genus: usize,
    arcs: usize,
    format: EnumerateFormat,
    caps: OracleCaps,
    pool: Option<&rayon::ThreadPool>,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let maps = in_pool(pool, || enumerate_shape_maps(arcs, genus, caps)).map_err(|e| CliError::Usage(e.to_string()))?;
    let mut lines: Vec<String> = maps
        .iter()
        .map(|m| match format {
            EnumerateFormat::Word => Shape::from_planted_map(m).map(|s| s.canonical_word()),
            EnumerateFormat::Map => Ok(m.map().to_string()),
        })
        .collect::<Result<_, _>>()
        .map_err(|e| CliError::Data(e.to_string()))?;
    lines.sort();
    for l in &lines {
        writeln!(out, "{l}")?;
    }
    writeln!(out, "genus,n,count")?;
    writeln!(out, "{genus},{arcs},{}", lines.len())?;
    Ok(())
}

fn project(text: &str, per_line: bool, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    let mut failures = 0;
    for (i, line) in text.lines().enumerate() {
        match project_line(i + 1, line) {
            None => {}
            Some(Ok(p)) if per_line => writeln!(out, "{}\t{} {} {}", p.line, p.genus, p.word, p.arcs)?,
            Some(Ok(p)) => writeln!(out, "{} {} {}", p.genus, p.word, p.arcs)?,
            Some(Err(e)) => {
                failures += 1;
                writeln!(err, "line {}: {}", e.line, e.error)?;
            }
        }
    }
    if failures > 0 {
        return Err(CliError::Data(format!("{failures} line(s) could not be parsed")));
    }
    Ok(())
}

fn corpus(text: &str, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    let (c, errors) = Corpus::from_text(text);
    for e in &errors {
        writeln!(err, "line {}: {}", e.line, e.error)?;
    }
    c.write_report(out)?;
    if !errors.is_empty() {
        return Err(CliError::Data(format!("{} line(s) could not be parsed", errors.len())));
    }
    Ok(())
}

fn selftest(opts: &SuiteOptions, out: &mut dyn Write) -> Result<(), CliError> {
    let mut failed = Vec::new();
    for id in acceptance::CRITERIA.iter().map(|c| c.id) {
        let o = acceptance::run_criterion(id, opts);
        writeln!(out, "{o}")?;
        out.flush()?;
        if !o.passed {
            failed.push(id.to_string());
        }
    }
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Selftest(format!("criteria {} failed", failed.join(", "))))
    }
}
