//! Run configuration and the stage commands behind the `flagtor` binary.
//!
//! Every command takes a [`RunConfig`] plus an output sink, so the same code
//! paths are exercised by the binary and by tests.

use crate::classify::{classify_graph, label_counts, report_row, ClassLabel, REPORT_HEADER};
use crate::generate::{GenConfig, Generator};
use crate::graph::Graph;
use crate::graph6::{self, to_graph6};
use crate::homology::has_h1_torsion;
use crate::pipeline::{
    has_cyclic_links, is_irreducible_torsion, run_stage_table, structure_check, LinkOracle,
    PipelineError, PipelineStats, RunOptions, Stage,
};
use crate::poset::verify_small_posets_report;
use clap::{Parser, Subcommand};
use std::fs::{File, OpenOptions};
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

/// Environment variable naming the default scratch directory for `table`.
pub const SCRATCH_ENV: &str = "FLAGTOR_SCRATCH";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    File { path: PathBuf, source: io::Error },
    #[error(transparent)]
    Pipeline(#[from] PipelineError),
    #[error(transparent)]
    Read(#[from] graph6::ReadError),
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// Inclusive vertex-count range, written `9` or `8-10`. `hi < lo` is empty.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NRange {
    pub lo: usize,
    pub hi: usize,
}

impl NRange {
    pub fn single(n: usize) -> Self {
        NRange { lo: n, hi: n }
    }

    pub fn iter(self) -> std::ops::RangeInclusive<usize> {
        self.lo..=self.hi
    }

    pub fn is_empty(self) -> bool {
        self.hi < self.lo
    }

    fn only(self) -> Result<usize, CliError> {
        if self.lo == self.hi {
            Ok(self.lo)
        } else {
            Err(CliError::Usage(format!(
                "this command takes a single --n, got {}-{}",
                self.lo, self.hi
            )))
        }
    }
}

impl FromStr for NRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let num = |t: &str| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| format!("bad vertex count {t:?}"))
        };
        match s.split_once('-') {
            Some((a, b)) => Ok(NRange {
                lo: num(a)?,
                hi: num(b)?,
            }),
            None => Ok(NRange::single(num(s)?)),
        }
    }
}

/// Everything a command needs to know.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub n: Option<NRange>,
    pub dmin: Option<usize>,
    pub dmax: Option<usize>,
    /// Last stage of the cascade to run (`table` only).
    pub stage: Option<Stage>,
    pub input: Option<PathBuf>,
    pub output: Option<PathBuf>,
    pub workers: usize,
    pub checkpoint_every: usize,
    pub extended: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        let opts = RunOptions::default();
        RunConfig {
            n: None,
            dmin: None,
            dmax: None,
            stage: None,
            input: None,
            output: None,
            workers: opts.workers,
            checkpoint_every: opts.checkpoint_every,
            extended: false,
        }
    }
}

impl RunConfig {
    fn single_n(&self) -> Result<usize, CliError> {
        self.n
            .ok_or_else(|| CliError::Usage("--n is required".into()))?
            .only()
    }

    fn run_options(&self) -> RunOptions {
        RunOptions {
            workers: self.workers.max(1),
            checkpoint_every: self.checkpoint_every.max(1),
            extended: self.extended,
            subtree_budget: None,
            last_stage: self.stage.unwrap_or(Stage::Irreducible),
        }
    }

    /// Scratch directory: `--out`, else the environment variable, else a local default.
    pub fn scratch_dir(&self) -> PathBuf {
        self.output
            .clone()
            .or_else(|| std::env::var_os(SCRATCH_ENV).map(PathBuf::from))
            .unwrap_or_else(|| PathBuf::from("flagtor-scratch"))
    }

    fn read_input(&self) -> Result<Vec<Graph>, CliError> {
        let path = self
            .input
            .as_ref()
            .ok_or_else(|| CliError::Usage("--in is required".into()))?;
        if path.as_os_str() == "-" {
            return Ok(graph6::read_graphs(io::stdin().lock())?);
        }
        let f = File::open(path).map_err(|source| CliError::File {
            path: path.clone(),
            source,
        })?;
        Ok(graph6::read_graphs(BufReader::new(f))?)
    }

    /// Writes `graphs` to `--out`, or to `fallback` when absent.
    fn write_graphs(&self, graphs: &[Graph], fallback: &mut dyn Write) -> Result<(), CliError> {
        match &self.output {
            Some(path) => {
                let f = File::create(path).map_err(|source| CliError::File {
                    path: path.clone(),
                    source,
                })?;
                let mut w = BufWriter::new(f);
                graph6::write_graphs(&mut w, graphs)?;
                w.flush()?;
                append_stats_row(path, graphs.len())?;
            }
            None => graph6::write_graphs(fallback, graphs)?,
        }
        Ok(())
    }
}

/// Appends `file\tcount` to `stats.tsv` beside a stage output file.
fn append_stats_row(out: &Path, count: usize) -> io::Result<()> {
    let dir = out
        .parent()
        .filter(|p| !p.as_os_str().is_empty())
        .unwrap_or(Path::new("."));
    let name = out
        .file_name()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    let mut f = OpenOptions::new()
        .create(true)
        .append(true)
        .open(dir.join("stats.tsv"))?;
    writeln!(f, "{name}\t{count}")
}

/// Connected `n`-vertex graphs with degrees in `[dmin, dmax]` (defaults `0`
/// and `n - 1`). Returns the count.
pub fn cmd_gen(cfg: &RunConfig, out: &mut dyn Write) -> Result<u64, CliError> {
    let n = cfg.single_n()?;
    if !(1..=16).contains(&n) {
        return Err(CliError::Usage(format!("--n must lie in 1..=16, got {n}")));
    }
    let gen_cfg = GenConfig::connected(n, cfg.dmin.unwrap_or(0), cfg.dmax.unwrap_or(n - 1));
    let mut graphs = Vec::new();
    let mut count = 0u64;
    let keep = cfg.output.is_some();
    let mut w = BufWriter::new(&mut *out);
    let mut err = None;
    Generator::new(gen_cfg).run(&mut |g| {
        count += 1;
        if keep {
            graphs.push(*g);
        } else if err.is_none() {
            if let Err(e) = writeln!(w, "{}", to_graph6(g)) {
                err = Some(e);
            }
        }
    });
    if let Some(e) = err {
        return Err(e.into());
    }
    w.flush()?;
    drop(w);
    if keep {
        cfg.write_graphs(&graphs, out)?;
    }
    Ok(count)
}

fn filter_stage<F>(
    cfg: &RunConfig,
    out: &mut dyn Write,
    mut keep: F,
) -> Result<(u64, u64), CliError>
where
    F: FnMut(&Graph) -> Result<bool, CliError>,
{
    let input = cfg.read_input()?;
    let mut kept = Vec::new();
    for g in &input {
        if keep(g)? {
            kept.push(*g);
        }
    }
    cfg.write_graphs(&kept, out)?;
    Ok((input.len() as u64, kept.len() as u64))
}

pub fn cmd_tame(cfg: &RunConfig, out: &mut dyn Write) -> Result<(u64, u64), CliError> {
    filter_stage(cfg, out, |g| Ok(g.is_tame()))
}

/// Cyclic-links filter; the oracle is built for the vertex count of the input.
pub fn cmd_links(cfg: &RunConfig, out: &mut dyn Write) -> Result<(u64, u64), CliError> {
    let mut oracle: Option<LinkOracle> = None;
    filter_stage(cfg, out, |g| {
        if oracle.as_ref().map(|o| o.n()) != Some(g.order()) {
            oracle = Some(LinkOracle::build(g.order())?);
        }
        Ok(has_cyclic_links(g, oracle.as_ref().expect("built above"))?)
    })
}

/// Torsion filter. Every survivor must pass the structural cross-check.
pub fn cmd_torsion(cfg: &RunConfig, out: &mut dyn Write) -> Result<(u64, u64), CliError> {
    filter_stage(cfg, out, |g| {
        if has_h1_torsion(g) {
            structure_check(g)?;
            Ok(true)
        } else {
            Ok(false)
        }
    })
}

pub fn cmd_irreducible(cfg: &RunConfig, out: &mut dyn Write) -> Result<(u64, u64), CliError> {
    filter_stage(cfg, out, |g| Ok(is_irreducible_torsion(g)))
}

/// Runs or resumes the cascade for every `n` in the range and prints TSV rows.
pub fn cmd_table(cfg: &RunConfig, out: &mut dyn Write) -> Result<Vec<PipelineStats>, CliError> {
    let range = cfg
        .n
        .ok_or_else(|| CliError::Usage("--n is required (e.g. --n 8-10)".into()))?;
    writeln!(out, "{}", PipelineStats::TSV_HEADER)?;
    let dir = cfg.scratch_dir();
    let opts = cfg.run_options();
    let mut rows = Vec::new();
    for n in range.iter() {
        let stats = run_stage_table(n, &dir, &opts)?;
        writeln!(out, "{}", stats.tsv_row())?;
        out.flush()?;
        rows.push(stats);
    }
    Ok(rows)
}

/// TSV classification report; returns counts in [`ClassLabel::ALL`] order.
pub fn cmd_classify(cfg: &RunConfig, out: &mut dyn Write) -> Result<[usize; 4], CliError> {
    let graphs = cfg.read_input()?;
    writeln!(out, "{REPORT_HEADER}")?;
    let mut labels = Vec::new();
    for g in &graphs {
        let c = classify_graph(g);
        writeln!(out, "{}", report_row(g, &c))?;
        labels.push(c.label);
    }
    let counts = label_counts(&labels);
    let summary: Vec<String> = ClassLabel::ALL
        .iter()
        .zip(counts)
        .map(|(l, c)| format!("{l}={c}"))
        .collect();
    writeln!(out, "# {}", summary.join(" "))?;
    Ok(counts)
}

/// Induced-C5 verdict per graph; returns (with C5, total).
pub fn cmd_c5check(cfg: &RunConfig, out: &mut dyn Write) -> Result<(usize, usize), CliError> {
    let graphs = cfg.read_input()?;
    let mut hits = 0;
    for g in &graphs {
        match g.find_induced_c5() {
            Some(s) => {
                hits += 1;
                let vs: Vec<String> = s.iter().map(|v| v.to_string()).collect();
                writeln!(out, "{}\tyes\t{}", to_graph6(g), vs.join(","))?;
            }
            None => writeln!(out, "{}\tno\t-", to_graph6(g))?,
        }
    }
    writeln!(out, "# {hits}/{} contain an induced C5", graphs.len())?;
    Ok((hits, graphs.len()))
}

/// Exhaustive order-complex check on posets of size `1..=n`.
pub fn cmd_posets(cfg: &RunConfig, out: &mut dyn Write) -> Result<bool, CliError> {
    let n = cfg.single_n()?;
    if !(1..=crate::poset::MAX_POSET).contains(&n) {
        return Err(CliError::Usage(format!(
            "posets supports --n in 1..=8, got {n}"
        )));
    }
    let levels = verify_small_posets_report(n);
    for l in &levels {
        writeln!(out, "{l}")?;
    }
    let ok = levels.iter().all(|l| l.torsion == 0);
    let last = levels.last().expect("n >= 1");
    writeln!(
        out,
        "torsion-free: {}, classes: {}",
        if ok { "yes" } else { "no" },
        last.classes
    )?;
    Ok(ok)
}

#[derive(Debug, Parser)]
#[command(
    name = "flagtor",
    version,
    about = "Search for flag complexes with torsion in H1"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Vertex count, or an inclusive range like 8-10 for `table`.
    #[arg(long, global = true)]
    pub n: Option<NRange>,
    /// Minimum degree for `gen` (default 0).
    #[arg(long, global = true)]
    pub dmin: Option<usize>,
    /// Maximum degree for `gen` (default n-1).
    #[arg(long, global = true)]
    pub dmax: Option<usize>,
    /// Last stage to run: connected, tame, links, torsion or irreducible.
    #[arg(long, global = true)]
    pub stage: Option<Stage>,
    /// Input graph6 file ("-" for stdin).
    #[arg(long = "in", global = true)]
    pub input: Option<PathBuf>,
    /// Output file, or the scratch directory for `table`.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads; defaults to the available parallelism.
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    /// Generation subtrees per checkpoint.
    #[arg(long, global = true)]
    pub checkpoint_every: Option<usize>,
    /// Permit the long runs (n >= 11).
    #[arg(long, global = true)]
    pub extended: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Generate connected graphs under degree bounds.
    Gen,
    /// Keep tame graphs.
    Tame,
    /// Keep graphs with cyclic links.
    Links,
    /// Keep graphs with torsion in H1.
    Torsion,
    /// Keep irreducible torsion graphs.
    Irreducible,
    /// Run the whole cascade and print one TSV row per n.
    Table,
    /// Classify clique complexes of the input graphs.
    Classify,
    /// Look for induced 5-cycles.
    C5check,
    /// Check every poset up to --n elements.
    Posets,
}

impl Cli {
    pub fn config(&self) -> RunConfig {
        let d = RunConfig::default();
        RunConfig {
            n: self.n,
            dmin: self.dmin,
            dmax: self.dmax,
            stage: self.stage,
            input: self.input.clone(),
            output: self.out.clone(),
            workers: self.workers.unwrap_or(d.workers),
            checkpoint_every: self.checkpoint_every.unwrap_or(d.checkpoint_every),
            extended: self.extended,
        }
    }
}

/// Dispatches one command. Status lines go to `err`; data to `out`.
/// Returns the process exit code.
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cfg = cli.config();
    let result: Result<String, CliError> = (|| {
        Ok(match cli.command {
            Command::Gen => format!("gen: {} graphs", cmd_gen(&cfg, out)?),
            Command::Tame => report_filter("tame", cmd_tame(&cfg, out)?),
            Command::Links => report_filter("links", cmd_links(&cfg, out)?),
            Command::Torsion => report_filter("torsion", cmd_torsion(&cfg, out)?),
            Command::Irreducible => report_filter("irreducible", cmd_irreducible(&cfg, out)?),
            Command::Table => format!("table: {} rows", cmd_table(&cfg, out)?.len()),
            Command::Classify => {
                let c = cmd_classify(&cfg, out)?;
                format!("classify: {} graphs", c.iter().sum::<usize>())
            }
            Command::C5check => {
                let (hits, total) = cmd_c5check(&cfg, out)?;
                format!("c5check: {hits}/{total}")
            }
            Command::Posets => {
                if !cmd_posets(&cfg, out)? {
                    return Err(CliError::Usage("found a poset with torsion".into()));
                }
                "posets: done".into()
            }
        })
    })();
    let _ = out.flush();
    match result {
        Ok(msg) => {
            let _ = writeln!(err, "{msg}");
            0
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                CliError::Usage(_) => 2,
                _ => 1,
            }
        }
    }
}

fn report_filter(stage: &str, (read, kept): (u64, u64)) -> String {
    format!("{stage}: kept {kept} of {read}")
}
