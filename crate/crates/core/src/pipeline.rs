//! The filter cascade: connected → tame → cyclic links → H1-torsion → irreducible.
//!
//! Phase one streams generated graphs through the connectivity, tameness and
//! cyclic-links filters, one generation subtree at a time, checkpointing after
//! each batch. Phase two computes homology on the much smaller survivor file.

use crate::canon::{canonical_form, CanonicalSet};
use crate::generate::{GenConfig, Generator};
use crate::graph::{Graph, VertexSet};
use crate::graph6::{self, to_graph6};
use crate::homology::{h1_clique, h1_nontrivial, has_h1_torsion};
use std::fmt;
use std::fs::{self, File, OpenOptions};
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

#[derive(Debug, thiserror::Error)]
pub enum PipelineError {
    #[error("vertex count {0} is outside the supported range {1}")]
    OutOfRange(usize, &'static str),
    #[error("n = {0} is only run in extended mode")]
    NeedsExtended(usize),
    #[error("graph {0} is not tame, its links may exceed the oracle size")]
    NotTame(String),
    #[error("graph has {graph} vertices, oracle was built for {oracle}")]
    SizeMismatch { graph: usize, oracle: usize },
    #[error("cross-check failed: {0}")]
    CrossCheck(String),
    #[error("bad manifest {path}: {reason}")]
    Manifest { path: PathBuf, reason: String },
    #[error(transparent)]
    Read(#[from] graph6::ReadError),
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// Canonical codes of `H + (n - k)` for every `k`-vertex graph `H` whose clique
/// complex has nontrivial `H_1`.
#[derive(Clone, Debug)]
pub struct LinkOracle {
    n: usize,
    k: usize,
    scanned: usize,
    cset: CanonicalSet,
}

impl LinkOracle {
    /// Oracle with link size `k = n - 4`, the largest link a tame graph can have.
    pub fn build(n: usize) -> Result<Self, PipelineError> {
        if !(8..=16).contains(&n) {
            return Err(PipelineError::OutOfRange(n, "8..=16"));
        }
        Ok(Self::with_link_size(n, n - 4))
    }

    /// Oracle over all `k`-vertex graphs, padded to `n >= k` vertices.
    pub fn with_link_size(n: usize, k: usize) -> Self {
        assert!(
            k <= n && n <= crate::graph::MAX_VERTICES,
            "need k <= n <= 16"
        );
        let mut scanned = 0;
        let mut members = Vec::new();
        if k > 0 {
            Generator::new(GenConfig::all(k)).run(&mut |h| {
                scanned += 1;
                if h1_nontrivial(h) {
                    members.push(h.pad(n - k).expect("n <= 16"));
                }
            });
        }
        LinkOracle {
            n,
            k,
            scanned,
            cset: CanonicalSet::from_iter(members.iter()),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn link_size(&self) -> usize {
        self.k
    }

    /// Number of `k`-vertex isomorphism classes examined.
    pub fn scanned(&self) -> usize {
        self.scanned
    }

    /// Number of those classes with nontrivial `H_1`.
    pub fn base_size(&self) -> usize {
        self.cset.len()
    }

    pub fn set(&self) -> &CanonicalSet {
        &self.cset
    }

    /// `link_padded(g, v)` has nontrivial `H_1`.
    pub fn link_is_cyclic(&self, g: &Graph, v: usize) -> bool {
        let padded = g.link_padded(v).expect("vertex in range");
        self.cset.contains_code(&canonical_form(&padded))
    }
}

/// Every vertex link of `g` has nontrivial `H_1` of its clique complex, decided
/// by oracle lookup of the padded links.
pub fn has_cyclic_links(g: &Graph, oracle: &LinkOracle) -> Result<bool, PipelineError> {
    if g.order() != oracle.n {
        return Err(PipelineError::SizeMismatch {
            graph: g.order(),
            oracle: oracle.n,
        });
    }
    if g.max_degree() > oracle.k {
        return Err(PipelineError::NotTame(to_graph6(g)));
    }
    Ok((0..g.order()).all(|v| oracle.link_is_cyclic(g, v)))
}

/// Same predicate computed directly: homology of every induced link.
pub fn has_cyclic_links_direct(g: &Graph) -> bool {
    (0..g.order()).all(|v| h1_nontrivial(&g.induced(g.neighbors(v))))
}

/// `g` is H1-torsion and no single vertex deletion is.
pub fn is_irreducible_torsion(g: &Graph) -> bool {
    g.order() >= 2
        && has_h1_torsion(g)
        && (0..g.order()).all(|v| !has_h1_torsion(&g.delete_vertex(v).expect("v < n")))
}

/// Some vertex deletion is isomorphic to a member of `known`.
pub fn contains_known_by_deletion(g: &Graph, known: &CanonicalSet) -> bool {
    (0..g.order()).any(|v| known.contains(&g.delete_vertex(v).expect("v < n")))
}

/// `(base / total)^n`: chance that `n` independent uniformly random link classes
/// are all cyclic. A sanity constant only.
pub fn heuristic_expectation(base: usize, total: usize, n: u32) -> f64 {
    if n == 0 {
        return 1.0;
    }
    (base as f64 / total as f64).powi(n as i32)
}

/// Checks the structural consequences every torsion survivor must satisfy:
/// connected, tame, and cyclic links computed by direct homology.
pub fn structure_check(g: &Graph) -> Result<(), PipelineError> {
    let fail = |what: &str| {
        Err(PipelineError::CrossCheck(format!(
            "{} is {what}",
            to_graph6(g)
        )))
    };
    if !g.is_connected() {
        return fail("disconnected");
    }
    if !g.is_tame() {
        return fail("not tame");
    }
    if !has_cyclic_links_direct(g) {
        return fail("missing cyclic links");
    }
    Ok(())
}

/// One row of per-stage counts.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct PipelineStats {
    pub n: usize,
    pub connected: u64,
    pub tame: u64,
    pub cyclic_links: u64,
    pub torsion: u64,
    pub irreducible: u64,
    /// Seconds spent per stage, same order as the counts.
    pub seconds: [f64; 5],
}

impl PartialEq<(u64, u64, u64, u64, u64)> for PipelineStats {
    fn eq(&self, o: &(u64, u64, u64, u64, u64)) -> bool {
        self.counts() == *o
    }
}

impl PipelineStats {
    pub const TSV_HEADER: &'static str =
        "n\tconnected\ttame\tcyclic_links\th1_torsion\tirreducible";

    pub fn counts(&self) -> (u64, u64, u64, u64, u64) {
        (
            self.connected,
            self.tame,
            self.cyclic_links,
            self.torsion,
            self.irreducible,
        )
    }

    pub fn is_monotone(&self) -> bool {
        let c = [
            self.connected,
            self.tame,
            self.cyclic_links,
            self.torsion,
            self.irreducible,
        ];
        c.windows(2).all(|w| w[0] >= w[1])
    }

    pub fn tsv_row(&self) -> String {
        format!(
            "{}\t{}\t{}\t{}\t{}\t{}",
            self.n, self.connected, self.tame, self.cyclic_links, self.torsion, self.irreducible
        )
    }

    pub fn parse_tsv_row(line: &str) -> Option<Self> {
        let v: Vec<u64> = line
            .split('\t')
            .map(|s| s.trim().parse().ok())
            .collect::<Option<_>>()?;
        if v.len() != 6 {
            return None;
        }
        Some(PipelineStats {
            n: v[0] as usize,
            connected: v[1],
            tame: v[2],
            cyclic_links: v[3],
            torsion: v[4],
            irreducible: v[5],
            seconds: [0.0; 5],
        })
    }
}

impl fmt::Display for PipelineStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.tsv_row())
    }
}

/// Stage whose survivors a file holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Stage {
    Connected,
    Tame,
    CyclicLinks,
    Torsion,
    Irreducible,
}

impl Stage {
    pub const ALL: [Stage; 5] = [
        Stage::Connected,
        Stage::Tame,
        Stage::CyclicLinks,
        Stage::Torsion,
        Stage::Irreducible,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Stage::Connected => "connected",
            Stage::Tame => "tame",
            Stage::CyclicLinks => "links",
            Stage::Torsion => "torsion",
            Stage::Irreducible => "irreducible",
        }
    }

    pub fn file_name(self, n: usize) -> String {
        format!("{}_n{n}.g6", self.name())
    }
}

impl std::str::FromStr for Stage {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Stage::ALL
            .into_iter()
            .find(|st| st.name() == s)
            .ok_or_else(|| format!("unknown stage {s:?}, expected one of connected, tame, links, torsion, irreducible"))
    }
}

/// Options for [`run_stage_table`].
#[derive(Clone, Debug)]
pub struct RunOptions {
    pub workers: usize,
    /// Generation subtrees per checkpoint.
    pub checkpoint_every: usize,
    /// Permits `n >= 11`.
    pub extended: bool,
    /// Stop after this many subtrees in the current invocation (for tests of
    /// the resume path); `None` runs to completion.
    pub subtree_budget: Option<usize>,
    /// Last stage to compute; later counts stay zero.
    pub last_stage: Stage,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            workers: std::thread::available_parallelism().map_or(1, |p| p.get()),
            checkpoint_every: 64,
            extended: false,
            subtree_budget: None,
            last_stage: Stage::Irreducible,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
struct Manifest {
    phase: String,
    cursor: usize,
    subtrees: usize,
    connected: u64,
    tame: u64,
    links: u64,
    torsion: u64,
    irreducible: u64,
    tame_bytes: u64,
    links_bytes: u64,
    seconds: [f64; 5],
}

impl Manifest {
    fn path(dir: &Path, n: usize) -> PathBuf {
        dir.join(format!("manifest_n{n}.txt"))
    }

    fn load(path: &Path) -> Result<Option<Manifest>, PipelineError> {
        let text = match fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(e.into()),
        };
        let bad = |reason: String| PipelineError::Manifest {
            path: path.to_path_buf(),
            reason,
        };
        let mut m = Manifest::default();
        for line in text.lines().filter(|l| !l.trim().is_empty()) {
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| bad(format!("no '=' in {line:?}")))?;
            let num = || {
                value
                    .parse::<u64>()
                    .map_err(|_| bad(format!("bad number in {line:?}")))
            };
            match key {
                "phase" => m.phase = value.to_string(),
                "cursor" => m.cursor = num()? as usize,
                "subtrees" => m.subtrees = num()? as usize,
                "connected" => m.connected = num()?,
                "tame" => m.tame = num()?,
                "cyclic_links" => m.links = num()?,
                "torsion" => m.torsion = num()?,
                "irreducible" => m.irreducible = num()?,
                "tame_bytes" => m.tame_bytes = num()?,
                "links_bytes" => m.links_bytes = num()?,
                "seconds" => {
                    let parts: Vec<f64> = value
                        .split(',')
                        .map(|s| {
                            s.parse()
                                .map_err(|_| bad(format!("bad seconds in {line:?}")))
                        })
                        .collect::<Result<_, _>>()?;
                    if parts.len() != 5 {
                        return Err(bad("expected five timings".into()));
                    }
                    m.seconds.copy_from_slice(&parts);
                }
                "n" => {}
                _ => return Err(bad(format!("unknown key {key:?}"))),
            }
        }
        Ok(Some(m))
    }

    fn store(&self, path: &Path, n: usize) -> io::Result<()> {
        let secs: Vec<String> = self.seconds.iter().map(|s| format!("{s:.3}")).collect();
        let text = format!(
            "n={n}\nphase={}\ncursor={}\nsubtrees={}\nconnected={}\ntame={}\ncyclic_links={}\ntorsion={}\nirreducible={}\ntame_bytes={}\nlinks_bytes={}\nseconds={}\n",
            self.phase,
            self.cursor,
            self.subtrees,
            self.connected,
            self.tame,
            self.links,
            self.torsion,
            self.irreducible,
            self.tame_bytes,
            self.links_bytes,
            secs.join(",")
        );
        let tmp = path.with_extension("tmp");
        fs::write(&tmp, text)?;
        fs::rename(tmp, path)
    }
}

/// Level at which generation is cut into checkpointable subtrees.
fn split_level(n: usize) -> usize {
    n.saturating_sub(3).max(1)
}

struct BatchResult {
    connected: u64,
    tame: Vec<Graph>,
    links: Vec<Graph>,
    gen_time: Duration,
    link_time: Duration,
}

fn process_subtrees(gen: &Generator, roots: &[Graph], oracle: &LinkOracle) -> BatchResult {
    let mut out = BatchResult {
        connected: 0,
        tame: Vec::new(),
        links: Vec::new(),
        gen_time: Duration::ZERO,
        link_time: Duration::ZERO,
    };
    let start = Instant::now();
    for root in roots {
        gen.run_subtree(root, &mut |g| {
            out.connected += 1;
            if g.is_tame() {
                out.tame.push(*g);
            }
        });
    }
    out.gen_time = start.elapsed();
    let start = Instant::now();
    for g in &out.tame {
        if has_cyclic_links(g, oracle).expect("tame graphs fit the oracle") {
            out.links.push(*g);
        }
    }
    out.link_time = start.elapsed();
    out
}

fn truncate_to(path: &Path, len: u64) -> io::Result<File> {
    let f = OpenOptions::new().create(true).append(true).open(path)?;
    f.set_len(len)?;
    Ok(f)
}

/// Filters the graphs of `input` into `output`, returning (read, kept).
pub fn filter_file<F>(input: &Path, output: &Path, mut keep: F) -> Result<(u64, u64), PipelineError>
where
    F: FnMut(&Graph) -> Result<bool, PipelineError>,
{
    let reader = BufReader::new(File::open(input)?);
    let mut writer = BufWriter::new(File::create(output)?);
    let (mut read, mut kept) = (0, 0);
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let g = graph6::from_graph6(&line).map_err(|source| graph6::ReadError::Parse {
            line: i + 1,
            source,
        })?;
        read += 1;
        if keep(&g)? {
            writeln!(writer, "{}", to_graph6(&g))?;
            kept += 1;
        }
    }
    writer.flush()?;
    Ok((read, kept))
}

/// Runs every stage for `n` vertices, persisting survivors under `dir`:
/// `tame_n{n}.g6`, `links_n{n}.g6`, `torsion_n{n}.g6`, `irreducible_n{n}.g6`,
/// plus a resumable `manifest_n{n}.txt`. A finished manifest makes reruns free.
///
/// The connected-graph count is kept in the manifest only; the full connected
/// family is not written out.
pub fn run_stage_table(
    n: usize,
    dir: &Path,
    opts: &RunOptions,
) -> Result<PipelineStats, PipelineError> {
    if !(8..=12).contains(&n) {
        return Err(PipelineError::OutOfRange(n, "8..=12"));
    }
    if n >= 11 && !opts.extended {
        return Err(PipelineError::NeedsExtended(n));
    }
    fs::create_dir_all(dir)?;
    let manifest_path = Manifest::path(dir, n);
    let mut m = Manifest::load(&manifest_path)?.unwrap_or_default();
    let tame_path = dir.join(Stage::Tame.file_name(n));
    let links_path = dir.join(Stage::CyclicLinks.file_name(n));
    let torsion_path = dir.join(Stage::Torsion.file_name(n));
    let irreducible_path = dir.join(Stage::Irreducible.file_name(n));

    if m.phase.is_empty() || m.phase == "generate" {
        let gen = Generator::new(GenConfig::connected(n, 0, n - 1));
        let roots = gen.subtree_roots(split_level(n));
        if m.phase.is_empty() {
            m = Manifest {
                phase: "generate".into(),
                subtrees: roots.len(),
                ..Manifest::default()
            };
        } else if m.subtrees != roots.len() {
            return Err(PipelineError::Manifest {
                path: manifest_path,
                reason: format!(
                    "{} subtrees recorded, generator has {}",
                    m.subtrees,
                    roots.len()
                ),
            });
        }
        let oracle = LinkOracle::build(n)?;
        let mut tame_out = BufWriter::new(truncate_to(&tame_path, m.tame_bytes)?);
        let mut links_out = BufWriter::new(truncate_to(&links_path, m.links_bytes)?);
        let workers = opts.workers.max(1);
        let batch = opts.checkpoint_every.max(1);
        let stop = opts
            .subtree_budget
            .map_or(roots.len(), |b| (m.cursor + b).min(roots.len()));
        while m.cursor < stop {
            let end = (m.cursor + batch).min(stop);
            let chunk = &roots[m.cursor..end];
            let results: Vec<BatchResult> = if workers == 1 || chunk.len() == 1 {
                vec![process_subtrees(&gen, chunk, &oracle)]
            } else {
                let per = chunk.len().div_ceil(workers);
                std::thread::scope(|s| {
                    let handles: Vec<_> = chunk
                        .chunks(per)
                        .map(|part| s.spawn(|| process_subtrees(&gen, part, &oracle)))
                        .collect();
                    handles
                        .into_iter()
                        .map(|h| h.join().expect("worker panicked"))
                        .collect()
                })
            };
            for r in results {
                m.connected += r.connected;
                m.tame += r.tame.len() as u64;
                m.links += r.links.len() as u64;
                m.seconds[0] += r.gen_time.as_secs_f64();
                m.seconds[2] += r.link_time.as_secs_f64();
                for g in &r.tame {
                    let line = to_graph6(g);
                    writeln!(tame_out, "{line}")?;
                    m.tame_bytes += line.len() as u64 + 1;
                }
                for g in &r.links {
                    let line = to_graph6(g);
                    writeln!(links_out, "{line}")?;
                    m.links_bytes += line.len() as u64 + 1;
                }
            }
            tame_out.flush()?;
            links_out.flush()?;
            tame_out.get_ref().sync_data()?;
            links_out.get_ref().sync_data()?;
            m.cursor = end;
            m.store(&manifest_path, n)?;
        }
        if m.cursor < roots.len() {
            return Ok(stats_from(n, &m));
        }
        m.phase = "torsion".into();
        m.store(&manifest_path, n)?;
    }
    if opts.last_stage <= Stage::CyclicLinks {
        return Ok(stats_from(n, &m));
    }

    if m.phase == "torsion" {
        let start = Instant::now();
        let (_, kept) = filter_file(&links_path, &torsion_path, |g| Ok(has_h1_torsion(g)))?;
        m.torsion = kept;
        m.seconds[3] = start.elapsed().as_secs_f64();
        // every torsion survivor must satisfy the structural necessary conditions
        for g in graph6::read_graphs(BufReader::new(File::open(&torsion_path)?))? {
            structure_check(&g)?;
        }
        m.phase = "irreducible".into();
        m.store(&manifest_path, n)?;
    }
    if opts.last_stage == Stage::Torsion {
        return Ok(stats_from(n, &m));
    }

    if m.phase == "irreducible" {
        let start = Instant::now();
        let (_, kept) = filter_file(&torsion_path, &irreducible_path, |g| {
            Ok(is_irreducible_torsion(g))
        })?;
        m.irreducible = kept;
        m.seconds[4] = start.elapsed().as_secs_f64();
        m.phase = "done".into();
        m.store(&manifest_path, n)?;
    }

    if m.phase != "done" {
        return Err(PipelineError::Manifest {
            path: manifest_path,
            reason: format!("unknown phase {:?}", m.phase),
        });
    }
    Ok(stats_from(n, &m))
}

fn stats_from(n: usize, m: &Manifest) -> PipelineStats {
    PipelineStats {
        n,
        connected: m.connected,
        tame: m.tame,
        cyclic_links: m.links,
        torsion: m.torsion,
        irreducible: m.irreducible,
        seconds: m.seconds,
    }
}

/// Whether a manifest under `dir` says the run for `n` finished.
pub fn is_complete(dir: &Path, n: usize) -> Result<bool, PipelineError> {
    Ok(Manifest::load(&Manifest::path(dir, n))?.is_some_and(|m| m.phase == "done"))
}

/// Cross-validates the two reducibility routes on `n`-vertex torsion survivors:
/// a survivor is reducible by definition iff some vertex deletion is one of the
/// irreducible `(n-1)`-vertex graphs in `smaller`.
pub fn check_reducibility_routes(
    survivors: &[Graph],
    smaller: &CanonicalSet,
) -> Result<(), PipelineError> {
    for g in survivors {
        let by_definition = !is_irreducible_torsion(g);
        let by_lookup = contains_known_by_deletion(g, smaller);
        if by_definition != by_lookup {
            return Err(PipelineError::CrossCheck(format!(
                "{}: reducible by definition = {by_definition}, by known subgraph = {by_lookup}",
                to_graph6(g)
            )));
        }
    }
    Ok(())
}

/// `H_1` summary for reports.
pub fn h1_summary(g: &Graph) -> String {
    h1_clique(g).to_string()
}

/// Vertices whose link fails the cyclic test, for diagnostics.
pub fn acyclic_link_vertices(g: &Graph) -> VertexSet {
    VertexSet::from_vertices((0..g.order()).filter(|&v| !h1_nontrivial(&g.induced(g.neighbors(v)))))
}
