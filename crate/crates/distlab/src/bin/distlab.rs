use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use distlab::format::{self, FormatError};
use distlab::{
    read_edge_list, slope_per_doubling, threads_from_env, verify_all_pairs, EdgeListError, RunReport, StepStats,
};
use distlab_core::bounds::{self, BoundError, LowerBoundParams};
use distlab_core::gen::{generate, GraphKind, SplitMix64};
use distlab_core::schemes::{build, build_lenient, graph_digest};
use distlab_core::{LabelSet, SchemeError, SchemeId, SchemeParams, StepCounter, WeightedGraph};

#[derive(Parser)]
#[command(name = "distlab", version, about = "Distance labeling schemes for weighted graphs")]
struct Cli {
    /// Report 0 seconds so reports are byte-identical across runs.
    #[arg(long, global = true)]
    no_time: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(clap::Args, Clone, Copy)]
struct SchemeArgs {
    #[arg(long, value_parser = parse_scheme)]
    scheme: SchemeId,
    #[arg(long, default_value_t = 0)]
    k: u16,
    #[arg(long = "D", alias = "d", default_value_t = 0)]
    d: u32,
    /// Micro tree size bound for constmicro (0 = default for n and W).
    #[arg(long, default_value_t = 0)]
    beta: u16,
}

impl SchemeArgs {
    fn params(&self) -> SchemeParams {
        SchemeParams::new(self.k, self.d, self.beta)
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Json,
    Csv,
    Table,
}

#[derive(Clone, Copy, ValueEnum)]
enum Base {
    Kn,
    Knn,
    File,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build labels for a graph and write them to a label file.
    Build {
        graph: PathBuf,
        #[command(flatten)]
        scheme: SchemeArgs,
        #[arg(long)]
        out: PathBuf,
        /// Label each connected component separately instead of rejecting
        /// disconnected input.
        #[arg(long)]
        lenient: bool,
    },
    /// Decode the distance between two nodes from a label file.
    Query {
        labels: PathBuf,
        x: u64,
        y: u64,
        /// Micro tables (constmicro); defaults to `<labels>.dtab`.
        #[arg(long)]
        tables: Option<PathBuf>,
    },
    /// Compare every pair of decoded distances against shortest paths.
    Verify {
        graph: PathBuf,
        labels: PathBuf,
        #[arg(long)]
        tables: Option<PathBuf>,
    },
    /// Build and measure labels over a sweep of generated graphs.
    Bench {
        #[command(flatten)]
        scheme: SchemeArgs,
        /// Comma-separated node counts.
        #[arg(long, value_delimiter = ',', default_value = "256,512,1024,2048")]
        n_sweep: Vec<usize>,
        #[arg(long = "W", alias = "w", default_value_t = 1)]
        w: u32,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Graph family; bipartite schemes default to `bipartite`.
        #[arg(long, value_parser = parse_kind)]
        kind: Option<GraphKind>,
        /// Pairs sampled for decode step counts.
        #[arg(long, default_value_t = 2000)]
        samples: usize,
        /// Also verify every pair against shortest paths.
        #[arg(long)]
        verify: bool,
        #[arg(long, value_enum, default_value = "json")]
        format: OutFormat,
    },
    /// Evaluate the counting lower bound, optionally checking it exhaustively.
    Bounds {
        #[arg(long)]
        g: u64,
        #[arg(long)]
        r: u64,
        #[arg(long = "W", alias = "w")]
        w: u64,
        #[arg(long, value_enum)]
        base: Base,
        /// Node count for `kn` / `knn`.
        #[arg(long, default_value_t = 4)]
        n: usize,
        /// Edge list for `--base file`.
        #[arg(long)]
        graph: Option<PathBuf>,
        #[arg(long)]
        verify: bool,
        #[arg(long, default_value_t = bounds::DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Build labels and answer `x y` queries read from stdin.
    Oracle {
        graph: PathBuf,
        #[command(flatten)]
        scheme: SchemeArgs,
    },
    /// Write a seeded random graph as an edge list.
    Generate {
        #[arg(long, value_parser = parse_kind, default_value = "er")]
        kind: GraphKind,
        #[arg(long)]
        n: usize,
        #[arg(long = "W", alias = "w", default_value_t = 1)]
        w: u32,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_scheme(s: &str) -> Result<SchemeId, String> {
    SchemeId::parse(s).ok_or_else(|| {
        let names: Vec<_> = SchemeId::ALL.iter().map(|s| s.name()).collect();
        format!("unknown scheme {s:?}; expected one of {}", names.join(", "))
    })
}

fn parse_kind(s: &str) -> Result<GraphKind, String> {
    GraphKind::parse(s).ok_or_else(|| {
        let names: Vec<_> = GraphKind::ALL.iter().map(|k| k.name()).collect();
        format!("unknown graph kind {s:?}; expected one of {}", names.join(", "))
    })
}

/// Failure with its exit code: 1 verification, 2 usage or parameters, 3 IO or format.
enum Failure {
    Verify(String),
    Usage(String),
    Io(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Verify(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Io(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Verify(m) | Failure::Usage(m) | Failure::Io(m) => m,
        }
    }
}

impl From<SchemeError> for Failure {
    fn from(e: SchemeError) -> Self {
        match e {
            SchemeError::Codec(_) | SchemeError::Malformed(_) | SchemeError::TableMismatch { .. } => {
                Failure::Io(e.to_string())
            }
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<FormatError> for Failure {
    fn from(e: FormatError) -> Self {
        match e {
            FormatError::NodeRange { .. } => Failure::Usage(e.to_string()),
            _ => Failure::Io(e.to_string()),
        }
    }
}

impl From<EdgeListError> for Failure {
    fn from(e: EdgeListError) -> Self {
        match e {
            EdgeListError::Graph(_) => Failure::Usage(e.to_string()),
            _ => Failure::Io(e.to_string()),
        }
    }
}

impl From<BoundError> for Failure {
    fn from(e: BoundError) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

type Res<T = ()> = Result<T, Failure>;

struct Clock {
    start: Instant,
    off: bool,
}

impl Clock {
    fn start(off: bool) -> Self {
        Clock { start: Instant::now(), off }
    }

    fn seconds(&self) -> f64 {
        if self.off {
            0.0
        } else {
            self.start.elapsed().as_secs_f64()
        }
    }
}

fn read_graph(path: &Path) -> Res<WeightedGraph> {
    let f = File::open(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    Ok(read_edge_list(BufReader::new(f))?)
}

fn emit(line: &str) -> Res {
    let mut out = io::stdout().lock();
    writeln!(out, "{line}")?;
    Ok(())
}

fn attach_tables(set: &mut LabelSet, labels: &Path, explicit: Option<&Path>) -> Res {
    if set.scheme != SchemeId::Constmicro {
        return Ok(());
    }
    let path = explicit.map_or_else(|| format::tables_path(labels), Path::to_path_buf);
    set.tables = Some(format::load_tables(&path)?);
    Ok(())
}

fn cmd_build(graph: &Path, s: SchemeArgs, out: &Path, lenient: bool, no_time: bool) -> Res {
    let g = read_graph(graph)?;
    let clock = Clock::start(no_time);
    let set = if lenient { build_lenient(&g, s.scheme, s.params())? } else { build(&g, s.scheme, s.params())? };
    let seconds = clock.seconds();
    format::save_labels(out, &set)?;
    if let Some(t) = &set.tables {
        format::save_tables(&format::tables_path(out), t)?;
    }
    emit(&RunReport::new("build", &set, seconds).to_json())
}

fn cmd_query(labels: &Path, x: u64, y: u64, tables: Option<&Path>) -> Res {
    let mut f = BufReader::new(File::open(labels)?);
    let (h, lx, ly) = format::read_label_pair(&mut f, x, y)?;
    let tables = if h.scheme == SchemeId::Constmicro {
        let path = tables.map_or_else(|| format::tables_path(labels), Path::to_path_buf);
        Some(format::load_tables(&path)?)
    } else {
        None
    };
    match distlab_core::schemes::decode(&lx, &ly, tables.as_ref(), &mut distlab_core::NoProbe) {
        Ok(d) => emit(&d.to_string()),
        Err(SchemeError::DifferentComponents) => emit("inf"),
        Err(e) => Err(e.into()),
    }
}

fn cmd_verify(graph: &Path, labels: &Path, tables: Option<&Path>, no_time: bool) -> Res {
    let g = read_graph(graph)?;
    let mut set = format::load_labels(labels)?;
    attach_tables(&mut set, labels, tables)?;
    if set.n != g.n() || set.w != g.max_weight() || graph_digest(&g, set.scheme, &set.params) != set.digest {
        return Err(Failure::Io("label file was not built from this graph (digest mismatch)".into()));
    }
    let clock = Clock::start(no_time);
    let oracle = g.all_pairs_oracle();
    let outcome = verify_all_pairs(&set, &oracle, threads_from_env());
    let mut report = RunReport::new("verify", &set, 0.0);
    report.seconds = clock.seconds();
    let pass = outcome.pass;
    let witness = outcome.witness.clone();
    report.verification = Some(outcome);
    emit(&report.to_json())?;
    if pass {
        Ok(())
    } else {
        let w = witness.expect("failing outcome has a witness");
        Err(Failure::Verify(format!(
            "verification failed at ({}, {}): expected {}, decoded {}",
            w.x,
            w.y,
            w.expected.map_or("inf".into(), |d| d.to_string()),
            w.decoded.map_or_else(|| w.error.clone().unwrap_or_default(), |d| d.to_string()),
        )))
    }
}

/// Decode step counts over `samples` seeded pairs (all pairs when fewer exist).
fn step_counts(set: &LabelSet, samples: usize, seed: u64) -> Res<Vec<u64>> {
    let n = set.n as u64;
    let mut rng = SplitMix64::new(seed ^ 0x5eed);
    let pairs: Vec<(usize, usize)> = if n * n <= samples as u64 {
        (0..set.n).flat_map(|x| (0..set.n).map(move |y| (x, y))).collect()
    } else {
        (0..samples).map(|_| (rng.below(n) as usize, rng.below(n) as usize)).collect()
    };
    pairs
        .into_iter()
        .map(|(x, y)| {
            let mut probe = StepCounter::new();
            set.decode_with(x, y, &mut probe)?;
            Ok(probe.count())
        })
        .collect()
}

#[derive(Serialize)]
struct BenchSummary {
    schema: &'static str,
    command: &'static str,
    scheme: SchemeId,
    sizes: Vec<usize>,
    /// Least-squares change in mean decode steps per doubling of n.
    step_slope: f64,
    max_steps: u64,
    /// Least-squares change in `residue / n` per doubling of n.
    residue_per_n_slope: f64,
}

#[allow(clippy::too_many_arguments)]
fn cmd_bench(
    s: SchemeArgs,
    sizes: &[usize],
    w: u32,
    seed: u64,
    kind: Option<GraphKind>,
    samples: usize,
    verify: bool,
    fmt: OutFormat,
    no_time: bool,
) -> Res {
    let kind =
        kind.unwrap_or(if s.scheme == SchemeId::HeavypathBipartite { GraphKind::Bipartite } else { GraphKind::Er });
    if sizes.is_empty() || sizes.contains(&0) {
        return Err(Failure::Usage("--n-sweep needs positive sizes".into()));
    }
    if w == 0 {
        return Err(Failure::Usage("W must be at least 1".into()));
    }
    let mut reports = Vec::new();
    for &n in sizes {
        let g = generate(kind, n, w, seed);
        let clock = Clock::start(no_time);
        let set = build(&g, s.scheme, s.params())?;
        let seconds = clock.seconds();
        let mut report = RunReport::new("bench", &set, seconds);
        report.decode_steps = StepStats::from_counts(&step_counts(&set, samples, seed)?);
        if verify {
            report.verification = Some(verify_all_pairs(&set, &g.all_pairs_oracle(), threads_from_env()));
        }
        reports.push(report);
    }
    let steps: Vec<(f64, f64)> = reports.iter().map(|r| (r.n as f64, r.decode_steps.map_or(0.0, |s| s.mean))).collect();
    let residues: Vec<(f64, f64)> = reports.iter().map(|r| (r.n as f64, r.residue / r.n as f64)).collect();
    let summary = BenchSummary {
        schema: distlab::report::REPORT_SCHEMA,
        command: "bench-summary",
        scheme: s.scheme,
        sizes: sizes.to_vec(),
        step_slope: slope_per_doubling(&steps),
        max_steps: reports.iter().filter_map(|r| r.decode_steps).map(|s| s.max).max().unwrap_or(0),
        residue_per_n_slope: slope_per_doubling(&residues),
    };
    let mut out = BufWriter::new(io::stdout().lock());
    match fmt {
        OutFormat::Json => {
            for r in &reports {
                writeln!(out, "{}", r.to_json())?;
            }
            writeln!(out, "{}", serde_json::to_string(&summary).expect("summary serializes"))?;
        }
        OutFormat::Csv | OutFormat::Table => {
            let header = [
                "scheme",
                "n",
                "W",
                "max_bits",
                "mean_bits",
                "leading_term",
                "residue",
                "mean_steps",
                "max_steps",
                "pass",
                "seconds",
            ];
            let rows: Vec<Vec<String>> = reports
                .iter()
                .map(|r| {
                    vec![
                        r.scheme.name().to_string(),
                        r.n.to_string(),
                        r.w.to_string(),
                        r.max_bits.to_string(),
                        format!("{:.2}", r.mean_bits),
                        format!("{:.2}", r.leading_term),
                        format!("{:.2}", r.residue),
                        r.decode_steps.map_or(String::new(), |s| format!("{:.2}", s.mean)),
                        r.decode_steps.map_or(String::new(), |s| s.max.to_string()),
                        r.verification.as_ref().map_or(String::new(), |v| v.pass.to_string()),
                        format!("{:.3}", r.seconds),
                    ]
                })
                .collect();
            if let OutFormat::Csv = fmt {
                writeln!(out, "{}", header.join(","))?;
                for row in &rows {
                    writeln!(out, "{}", row.join(","))?;
                }
            } else {
                let widths: Vec<usize> = (0..header.len())
                    .map(|i| rows.iter().map(|r| r[i].len()).chain([header[i].len()]).max().unwrap_or(0))
                    .collect();
                let line = |cells: Vec<&str>| {
                    cells.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect::<Vec<_>>().join("  ")
                };
                writeln!(out, "{}", line(header.to_vec()))?;
                for row in &rows {
                    writeln!(out, "{}", line(row.iter().map(String::as_str).collect()))?;
                }
                writeln!(out, "step slope per doubling: {:.4}", summary.step_slope)?;
            }
        }
    }
    out.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct BoundsReport {
    schema: &'static str,
    command: &'static str,
    params: LowerBoundParams,
    k: u64,
    ladder: Vec<u64>,
    n: usize,
    m: usize,
    total_bits: f64,
    per_label_bits: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    family_size: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    collisions: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<(u64, u64)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    verified: Option<bool>,
    seconds: f64,
}

#[allow(clippy::too_many_arguments)]
fn cmd_bounds(
    g: u64,
    r: u64,
    w: u64,
    base: Base,
    n: usize,
    graph: Option<&Path>,
    verify: bool,
    budget: u64,
    no_time: bool,
) -> Res {
    let params = LowerBoundParams::new(g, r, w)?;
    let ladder = bounds::weight_ladder(&params)?;
    let base_graph = match base {
        Base::Kn => {
            if n < 2 {
                return Err(Failure::Usage("--n must be at least 2".into()));
            }
            bounds::complete_graph(n)
        }
        Base::Knn => {
            if n < 2 || n % 2 == 1 {
                return Err(Failure::Usage("--base knn needs an even --n of at least 2".into()));
            }
            bounds::complete_bipartite_graph(n / 2, n / 2)
        }
        Base::File => read_graph(graph.ok_or_else(|| Failure::Usage("--base file needs --graph".into()))?)?,
    };
    let girth = bounds::girth(&base_graph);
    if girth.is_some_and(|a| (a as u64) < g) {
        return Err(BoundError::BaseGirth { actual: girth, required: g }.into());
    }
    let (total_bits, per_label_bits) = bounds::bound_bits(base_graph.m() as u64, base_graph.n() as u64, ladder.k);
    let clock = Clock::start(no_time);
    let mut report = BoundsReport {
        schema: distlab::report::REPORT_SCHEMA,
        command: "bounds",
        params,
        k: ladder.k,
        ladder: ladder.weights,
        n: base_graph.n(),
        m: base_graph.m(),
        total_bits,
        per_label_bits,
        family_size: None,
        collisions: None,
        witness: None,
        verified: None,
        seconds: 0.0,
    };
    if verify {
        let fam = bounds::enumerate_and_verify(&base_graph, &params, budget)?;
        report.family_size = Some(fam.family_size);
        report.collisions = Some(fam.collisions);
        report.witness = fam.witness;
        report.verified = Some(fam.verified);
        report.seconds = clock.seconds();
        emit(&serde_json::to_string(&report).expect("report serializes"))?;
        if !fam.verified {
            return Err(Failure::Verify(format!(
                "not verified: {} colliding pairs among {} realizations",
                fam.collisions, fam.family_size
            )));
        }
        eprintln!("verified, {} realizations", fam.family_size);
        return Ok(());
    }
    emit(&serde_json::to_string(&report).expect("report serializes"))
}

#[derive(Serialize)]
struct OracleReport {
    schema: &'static str,
    command: &'static str,
    scheme: SchemeId,
    n: usize,
    total_bits: usize,
    bits_per_n_squared: f64,
    queries: u64,
}

fn cmd_oracle(graph: &Path, s: SchemeArgs) -> Res {
    let g = read_graph(graph)?;
    let set = build_lenient(&g, s.scheme, s.params())?;
    let stdin = io::stdin().lock();
    let mut out = BufWriter::new(io::stdout().lock());
    let mut queries = 0u64;
    for (i, line) in stdin.lines().enumerate() {
        let line = line?;
        let body = line.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let ids: Vec<usize> = body
            .split_whitespace()
            .map(str::parse)
            .collect::<Result<_, _>>()
            .map_err(|_| Failure::Usage(format!("line {}: expected `x y`", i + 1)))?;
        let [x, y] = ids[..] else {
            return Err(Failure::Usage(format!("line {}: expected `x y`", i + 1)));
        };
        if x >= set.n || y >= set.n {
            return Err(Failure::Usage(format!("line {}: node out of range 0..{}", i + 1, set.n)));
        }
        match set.decode(x, y) {
            Ok(d) => writeln!(out, "{d}")?,
            Err(SchemeError::DifferentComponents) => writeln!(out, "inf")?,
            Err(e) => return Err(e.into()),
        }
        queries += 1;
    }
    out.flush()?;
    let total = set.total_bits();
    let report = OracleReport {
        schema: distlab::report::REPORT_SCHEMA,
        command: "oracle",
        scheme: set.scheme,
        n: set.n,
        total_bits: total,
        bits_per_n_squared: total as f64 / (set.n as f64).powi(2),
        queries,
    };
    eprintln!("{}", serde_json::to_string(&report).expect("report serializes"));
    Ok(())
}

fn cmd_generate(kind: GraphKind, n: usize, w: u32, seed: u64, out: Option<&Path>) -> Res {
    if n == 0 || w == 0 {
        return Err(Failure::Usage("n and W must be at least 1".into()));
    }
    let text = distlab::write_edge_list(&generate(kind, n, w, seed));
    match out {
        Some(p) => std::fs::write(p, text)?,
        None => io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn run(cli: Cli) -> Res {
    let nt = cli.no_time;
    match cli.cmd {
        Cmd::Build { graph, scheme, out, lenient } => cmd_build(&graph, scheme, &out, lenient, nt),
        Cmd::Query { labels, x, y, tables } => cmd_query(&labels, x, y, tables.as_deref()),
        Cmd::Verify { graph, labels, tables } => cmd_verify(&graph, &labels, tables.as_deref(), nt),
        Cmd::Bench { scheme, n_sweep, w, seed, kind, samples, verify, format } => {
            cmd_bench(scheme, &n_sweep, w, seed, kind, samples, verify, format, nt)
        }
        Cmd::Bounds { g, r, w, base, n, graph, verify, budget } => {
            cmd_bounds(g, r, w, base, n, graph.as_deref(), verify, budget, nt)
        }
        Cmd::Oracle { graph, scheme } => cmd_oracle(&graph, scheme),
        Cmd::Generate { kind, n, w, seed, out } => cmd_generate(kind, n, w, seed, out.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("distlab: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
