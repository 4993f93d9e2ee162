//! The `tesc` command line.
//!
//! Exit codes: 0 when the command ran to completion (whatever the
//! statistical decisions), 2 for usage, configuration and input errors,
//! 1 for runtime failures.

use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::seq::index::sample;
use serde::Serialize;

use crate::engine::{Engine, SamplerChoice, TestConfig};
use crate::graph::{
    load_edge_list, load_event_file, load_label_map, write_edge_list, EventMask, EventSet, Graph, LabelMap,
    LoadedGraph, NodeId, NodeSet, VicinityIndex,
};
use crate::report::{
    EventSummary, GraphSummary, LevelReport, RunReport, SeedSource, TransactionReport, SCHEMA_VERSION,
};
use crate::rng::{derive_seed_path, rng_from_seed, RNG_ALGORITHM};
use crate::simulation::{
    barabasi_albert, erdos_renyi, generate_pair, min_distance, pair_seed, verify_pair, watts_strogatz, Polarity,
    SimPairSpec,
};
use crate::stats::{tau_b_transaction, Tail};
use crate::Error;

#[derive(Debug, Parser)]
#[command(name = "tesc", version, about = "Two-event structural correlation on graphs")]
pub struct Cli {
    /// Worker threads; defaults to the available cores.
    #[arg(long, global = true, env = "TESC_THREADS")]
    pub threads: Option<usize>,
    /// Log progress to standard error (repeat for more).
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    pub verbose: u8,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Precompute h-vicinity sizes for every node.
    Index(IndexArgs),
    /// Test two event sets for structural correlation.
    Test(TestArgs),
    /// Generate simulated event pairs.
    Simulate(SimulateArgs),
    /// Time reference sampling for growing event unions.
    Bench(BenchArgs),
    /// Write a random graph as an edge list.
    Generate(GenerateArgs),
}

#[derive(Debug, Args)]
pub struct GraphArgs {
    /// Edge list, one `u v` pair per line.
    #[arg(long)]
    pub graph: PathBuf,
    /// Node count, overriding the file's header and the largest id.
    #[arg(long)]
    pub nodes: Option<usize>,
}

#[derive(Debug, Args)]
pub struct IndexArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub hmax: u32,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum TailArg {
    One,
    Two,
}

#[derive(Debug, Args)]
pub struct TestArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    #[arg(long)]
    pub events_a: PathBuf,
    #[arg(long)]
    pub events_b: PathBuf,
    /// Vicinity levels, comma separated.
    #[arg(long, value_delimiter = ',', required = true, value_parser = clap::value_parser!(u32).range(1..))]
    pub h: Vec<u32>,
    #[arg(long, default_value_t = 900)]
    pub n: usize,
    /// auto, batch-bfs, importance or whole-graph.
    #[arg(long, default_value = "auto")]
    pub sampler: SamplerChoice,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub batch_k: Option<u32>,
    #[arg(long, default_value_t = 0.05)]
    pub alpha: f64,
    #[arg(long, value_enum, default_value = "one")]
    pub tail: TailArg,
    /// Master seed; drawn from system entropy and printed when omitted.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Vicinity index written by `tesc index`.
    #[arg(long)]
    pub index: Option<PathBuf>,
    /// Also report transaction correlation over all nodes.
    #[arg(long)]
    pub tc: bool,
    /// `id label` file; event files may then name nodes by label.
    #[arg(long)]
    pub labels: Option<PathBuf>,
    /// Report path, `-` for standard output.
    #[arg(long, default_value = "-")]
    pub out: String,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    /// pos, neg or ind.
    #[arg(long)]
    pub polarity: Polarity,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub m: u64,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub h: u32,
    #[arg(long, default_value_t = 0.0)]
    pub noise: f64,
    #[arg(long)]
    pub pairs: usize,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Output directory for event files and `manifest.json`.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    /// Sizes of the event union, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    pub sizes: Vec<usize>,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub h: u32,
    #[arg(long, default_value = "batch-bfs")]
    pub sampler: SamplerChoice,
    #[arg(long)]
    pub repeats: usize,
    #[arg(long)]
    pub index: Option<PathBuf>,
    #[arg(long, default_value_t = 900)]
    pub n: usize,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub batch_k: Option<u32>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Also time density evaluation and the statistic.
    #[arg(long)]
    pub full: bool,
    #[arg(long, default_value = "-")]
    pub out: String,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Model {
    /// Watts–Strogatz small world.
    Ws,
    /// Barabási–Albert preferential attachment.
    Ba,
    /// Erdős–Rényi G(n, m).
    Er,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[arg(long, value_enum)]
    pub model: Model,
    #[arg(long)]
    pub nodes: usize,
    /// Mean degree (ws, er) or edges per new node (ba).
    #[arg(long)]
    pub k: usize,
    /// Rewiring probability (ws).
    #[arg(long, default_value_t = 0.1)]
    pub beta: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: PathBuf,
}

/// A failed command: exit code and message.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: 2, message: message.into() }
}

fn runtime(message: impl Into<String>) -> Failure {
    Failure { code: 1, message: message.into() }
}

/// Library errors from user inputs are usage errors; the rest are runtime.
fn classify(context: &str, e: Error) -> Failure {
    let code = match e {
        Error::Io(_) => 1,
        _ => 2,
    };
    Failure { code, message: format!("{context}: {e}") }
}

type CmdResult = std::result::Result<(), Failure>;

fn open(path: &Path, what: &str) -> std::result::Result<BufReader<File>, Failure> {
    File::open(path).map(BufReader::new).map_err(|e| usage(format!("cannot open {what} {}: {e}", path.display())))
}

fn load_graph(args: &GraphArgs) -> std::result::Result<LoadedGraph, Failure> {
    let t = Instant::now();
    let loaded = load_edge_list(open(&args.graph, "graph file")?, args.nodes)
        .map_err(|e| classify(&format!("graph {}", args.graph.display()), e))?;
    log::info!(
        "loaded {} nodes, {} edges in {:.1} ms",
        loaded.graph.node_count(),
        loaded.graph.edge_count(),
        t.elapsed().as_secs_f64() * 1e3
    );
    Ok(loaded)
}

fn load_index(path: &Path, g: &Graph) -> std::result::Result<VicinityIndex, Failure> {
    let idx = VicinityIndex::read_from(open(path, "index file")?)
        .map_err(|e| classify(&format!("index {}", path.display()), e))?;
    idx.check_graph(g).map_err(|e| classify(&format!("index {}", path.display()), e))?;
    Ok(idx)
}

fn load_events(path: &Path, g: &Graph, labels: Option<&LabelMap>) -> std::result::Result<EventSet, Failure> {
    let name = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "events".into());
    load_event_file(open(path, "event file")?, &name, g.node_count(), labels)
        .map_err(|e| classify(&format!("event file {}", path.display()), e))
}

fn resolve_seed(seed: Option<u64>, err: &mut (dyn Write + Send)) -> (u64, SeedSource) {
    match seed {
        Some(s) => (s, SeedSource::User),
        None => {
            let s: u64 = rand::random();
            let _ = writeln!(err, "seed: {s}");
            (s, SeedSource::Entropy)
        }
    }
}

fn output<'a>(path: &str, out: &'a mut (dyn Write + Send)) -> std::result::Result<Box<dyn Write + Send + 'a>, Failure> {
    if path == "-" {
        Ok(Box::new(out))
    } else {
        let f = File::create(path).map_err(|e| runtime(format!("cannot create {path}: {e}")))?;
        Ok(Box::new(BufWriter::new(f)))
    }
}

fn write_all(w: &mut (dyn Write + Send), text: &str) -> CmdResult {
    w.write_all(text.as_bytes()).and_then(|_| w.flush()).map_err(|e| runtime(format!("write failed: {e}")))
}

fn cmd_index(args: &IndexArgs, out: &mut (dyn Write + Send)) -> CmdResult {
    let loaded = load_graph(&args.graph)?;
    let g = &loaded.graph;
    let t = Instant::now();
    let idx = VicinityIndex::build(g, args.hmax).map_err(|e| classify("index", e))?;
    let build_ms = t.elapsed().as_secs_f64() * 1e3;
    idx.save(&args.out).map_err(|e| runtime(format!("cannot write {}: {e}", args.out.display())))?;
    let mut text = format!("nodes\t{}\nedges\t{}\nlevel\tmean_size\n", g.node_count(), g.edge_count());
    for h in 1..=args.hmax {
        text.push_str(&format!("{h}\t{:.3}\n", idx.mean_size(h).unwrap_or(0.0)));
    }
    text.push_str(&format!("wall_ms\t{build_ms:.1}\n"));
    write_all(out, &text)
}

fn tail(t: TailArg) -> Tail {
    match t {
        TailArg::One => Tail::One,
        TailArg::Two => Tail::Two,
    }
}

fn cmd_test(args: &TestArgs, argv: &[String], out: &mut (dyn Write + Send), err: &mut (dyn Write + Send)) -> CmdResult {
    if args.sampler == SamplerChoice::Importance && args.index.is_none() {
        return Err(usage("--sampler importance requires --index"));
    }
    let (seed, seed_source) = resolve_seed(args.seed, err);
    let cfg = TestConfig {
        h: args.h[0],
        n: args.n,
        alpha: args.alpha,
        tail: tail(args.tail),
        sampler: args.sampler,
        batch_k: args.batch_k,
        seed,
        ..TestConfig::default()
    };
    cfg.validate().map_err(|e| usage(e.to_string()))?;

    let loaded = load_graph(&args.graph)?;
    let g = &loaded.graph;
    let labels = match &args.labels {
        Some(p) => Some(load_label_map(open(p, "label file")?).map_err(|e| classify("label file", e))?),
        None => None,
    };
    let a = load_events(&args.events_a, g, labels.as_ref())?;
    let b = load_events(&args.events_b, g, labels.as_ref())?;
    let index = match &args.index {
        Some(p) => Some(load_index(p, g)?),
        None => None,
    };
    if let (SamplerChoice::Importance, Some(idx)) = (args.sampler, &index) {
        if let Some(&h) = args.h.iter().find(|&&h| h > idx.h_max()) {
            return Err(usage(format!("index holds levels up to {}, but h = {h} was requested", idx.h_max())));
        }
    }
    let engine = Engine::new(g, index.as_ref()).map_err(|e| classify("index", e))?;
    let results: Vec<LevelReport> =
        engine.sweep(&a, &b, &cfg, &args.h).into_iter().map(|(h, r)| LevelReport::from_result(h, r)).collect();

    let transaction_correlation = args.tc.then(|| {
        let mask = EventMask::new(g.node_count(), &a, &b);
        let ia: Vec<bool> = (0..g.node_count()).map(|v| mask.flags(v as NodeId) & EventMask::A != 0).collect();
        let ib: Vec<bool> = (0..g.node_count()).map(|v| mask.flags(v as NodeId) & EventMask::B != 0).collect();
        TransactionReport::from_result(tau_b_transaction(&ia, &ib))
    });

    let mut warnings = Vec::new();
    if loaded.stats.self_loops > 0 {
        warnings.push(format!("{} self-loops dropped", loaded.stats.self_loops));
    }
    if seed_source == SeedSource::Entropy {
        warnings.push(format!("seed {seed} drawn from system entropy"));
    }
    let report = RunReport {
        schema_version: SCHEMA_VERSION,
        tool_version: env!("CARGO_PKG_VERSION"),
        command: std::iter::once("tesc".to_string()).chain(argv.iter().skip(1).cloned()).collect(),
        rng: RNG_ALGORITHM,
        seed,
        seed_source,
        config: cfg,
        levels_requested: args.h.clone(),
        index: args.index.as_ref().map(|p| p.display().to_string()),
        graph: GraphSummary {
            path: args.graph.graph.display().to_string(),
            nodes: g.node_count(),
            edges: g.edge_count(),
            self_loops: loaded.stats.self_loops,
            duplicates: loaded.stats.duplicates,
        },
        events_a: EventSummary { path: args.events_a.display().to_string(), name: a.name().into(), size: a.len() },
        events_b: EventSummary { path: args.events_b.display().to_string(), name: b.name().into(), size: b.len() },
        results,
        transaction_correlation,
        warnings,
    };
    let mut w = output(&args.out, out)?;
    write_all(&mut *w, &(report.to_json() + "\n"))
}

#[derive(Debug, Serialize)]
struct ManifestEntry {
    index: usize,
    seed: u64,
    a_file: Option<String>,
    b_file: Option<String>,
    a_size: Option<usize>,
    b_size: Option<usize>,
    fallbacks: Option<usize>,
    relocated: Option<usize>,
    /// Noise-free construction guarantee re-checked on the output.
    verified: Option<bool>,
    min_distance: Option<u32>,
    error: Option<String>,
}

#[derive(Debug, Serialize)]
struct Manifest {
    schema_version: &'static str,
    graph: String,
    nodes: usize,
    polarity: Polarity,
    m: u64,
    h: u32,
    noise: f64,
    seed: u64,
    seed_source: SeedSource,
    rng: &'static str,
    pairs: Vec<ManifestEntry>,
}

fn write_event_file(path: &Path, e: &EventSet) -> CmdResult {
    let mut text = String::with_capacity(e.len() * 8);
    for v in e.nodes() {
        text.push_str(&v.to_string());
        text.push('\n');
    }
    std::fs::write(path, text).map_err(|err| runtime(format!("cannot write {}: {err}", path.display())))
}

fn cmd_simulate(args: &SimulateArgs, out: &mut (dyn Write + Send), err: &mut (dyn Write + Send)) -> CmdResult {
    if !(0.0..=1.0).contains(&args.noise) {
        return Err(usage(format!("--noise must lie in [0, 1], got {}", args.noise)));
    }
    let (seed, seed_source) = resolve_seed(args.seed, err);
    let loaded = load_graph(&args.graph)?;
    let g = &loaded.graph;
    std::fs::create_dir_all(&args.out).map_err(|e| runtime(format!("cannot create {}: {e}", args.out.display())))?;
    let engine = Engine::new(g, None).map_err(|e| classify("graph", e))?;
    let pool = engine.scratch_pool();
    let mut entries = Vec::with_capacity(args.pairs);
    for i in 0..args.pairs {
        let ps = pair_seed(seed, args.h, args.polarity, i as u64);
        let spec =
            SimPairSpec { m: args.m as usize, h: args.h, polarity: args.polarity, noise_p: args.noise, seed: ps };
        let mut entry = ManifestEntry {
            index: i,
            seed: ps,
            a_file: None,
            b_file: None,
            a_size: None,
            b_size: None,
            fallbacks: None,
            relocated: None,
            verified: None,
            min_distance: None,
            error: None,
        };
        match pool.with(|s| generate_pair(g, &spec, s)) {
            Ok(pair) => {
                let a_name = format!("pair-{i:04}-a.txt");
                let b_name = format!("pair-{i:04}-b.txt");
                write_event_file(&args.out.join(&a_name), &pair.a)?;
                write_event_file(&args.out.join(&b_name), &pair.b)?;
                if args.noise == 0.0 {
                    entry.verified = Some(pool.with(|s| verify_pair(g, &pair, s)));
                }
                if args.polarity == Polarity::Negative {
                    entry.min_distance = pool.with(|s| min_distance(g, &pair.a, &pair.b, args.h + 1, s));
                }
                entry.a_file = Some(a_name);
                entry.b_file = Some(b_name);
                entry.a_size = Some(pair.a.len());
                entry.b_size = Some(pair.b.len());
                entry.fallbacks = Some(pair.stats.fallbacks);
                entry.relocated = Some(pair.stats.relocated);
            }
            Err(e) => entry.error = Some(e.to_string()),
        }
        entries.push(entry);
    }
    let failed = entries.iter().filter(|e| e.error.is_some()).count();
    let manifest = Manifest {
        schema_version: "tesc-simulate/1",
        graph: args.graph.graph.display().to_string(),
        nodes: g.node_count(),
        polarity: args.polarity,
        m: args.m,
        h: args.h,
        noise: args.noise,
        seed,
        seed_source,
        rng: RNG_ALGORITHM,
        pairs: entries,
    };
    let path = args.out.join("manifest.json");
    let json = serde_json::to_string_pretty(&manifest).expect("manifest serializes") + "\n";
    std::fs::write(&path, json).map_err(|e| runtime(format!("cannot write {}: {e}", path.display())))?;
    write_all(out, &format!("pairs\t{}\nfailed\t{failed}\nmanifest\t{}\n", args.pairs, path.display()))?;
    if args.pairs > 0 && failed == args.pairs {
        return Err(runtime("every pair failed to generate; see the manifest"));
    }
    Ok(())
}

fn median(v: &mut [f64]) -> f64 {
    v.sort_by(f64::total_cmp);
    let k = v.len();
    if k % 2 == 1 {
        v[k / 2]
    } else {
        (v[k / 2 - 1] + v[k / 2]) / 2.0
    }
}

fn cmd_bench(args: &BenchArgs, out: &mut (dyn Write + Send), err: &mut (dyn Write + Send)) -> CmdResult {
    if args.repeats == 0 {
        return Err(usage("--repeats must be at least 1"));
    }
    if args.sampler == SamplerChoice::Importance && args.index.is_none() {
        return Err(usage("--sampler importance requires --index"));
    }
    let (seed, _) = resolve_seed(args.seed, err);
    let cfg = TestConfig {
        h: args.h,
        n: args.n,
        sampler: args.sampler,
        batch_k: args.batch_k,
        seed,
        ..TestConfig::default()
    };
    cfg.validate().map_err(|e| usage(e.to_string()))?;
    let loaded = load_graph(&args.graph)?;
    let g = &loaded.graph;
    if let Some(&s) = args.sizes.iter().find(|&&s| s > g.node_count() || s < 2) {
        return Err(usage(format!("size {s} must lie in [2, {}]", g.node_count())));
    }
    let index = match &args.index {
        Some(p) => Some(load_index(p, g)?),
        None => None,
    };
    let engine = Engine::new(g, index.as_ref()).map_err(|e| classify("index", e))?;
    let mut text = String::from(
        "size\tsampler\th\trepeats\tsampling_ms_median\tsampling_ms_mean\tdensity_ms_median\tstatistic_ms_median\tn\tsearches\n",
    );
    for (si, &size) in args.sizes.iter().enumerate() {
        let (mut samp, mut dens, mut stat) = (Vec::new(), Vec::new(), Vec::new());
        let (mut n_last, mut searches) = (0usize, 0u64);
        let mut kind = None;
        for r in 0..args.repeats {
            let s = derive_seed_path(seed, &[si as u64, r as u64]);
            let mut rng = rng_from_seed(s);
            let mut nodes: Vec<NodeId> =
                sample(&mut rng, g.node_count(), size).into_iter().map(|v| v as NodeId).collect();
            nodes.sort_unstable();
            let rcfg = TestConfig { seed: s, ..cfg.clone() };
            if args.full {
                let (left, right) = nodes.split_at(size / 2);
                let a = EventSet::new("a", left.to_vec(), g.node_count()).map_err(|e| classify("bench", e))?;
                let b = EventSet::new("b", right.to_vec(), g.node_count()).map_err(|e| classify("bench", e))?;
                match engine.run(&a, &b, &rcfg) {
                    Ok(run) => {
                        samp.push(run.result.timing.sampling_ms);
                        dens.push(run.result.timing.density_ms);
                        stat.push(run.result.timing.statistic_ms);
                        n_last = run.result.n;
                        searches = run.sample.searches;
                        kind = Some(run.result.sampler);
                    }
                    Err(e) => return Err(classify("bench", e)),
                }
            } else {
                let union = NodeSet::new(nodes, g.node_count());
                let t = Instant::now();
                let smp = engine.sample(&union, &rcfg).map_err(|e| classify("bench", e))?;
                samp.push(t.elapsed().as_secs_f64() * 1e3);
                n_last = smp.len();
                searches = smp.searches;
                kind = Some(smp.sampler);
            }
        }
        let mean = samp.iter().sum::<f64>() / samp.len() as f64;
        let fmt = |v: &mut Vec<f64>| if v.is_empty() { "NA".to_string() } else { format!("{:.3}", median(v)) };
        text.push_str(&format!(
            "{size}\t{}\t{}\t{}\t{}\t{mean:.3}\t{}\t{}\t{n_last}\t{searches}\n",
            kind.map(|k| k.name()).unwrap_or("NA"),
            args.h,
            args.repeats,
            fmt(&mut samp),
            fmt(&mut dens),
            fmt(&mut stat),
        ));
    }
    let mut w = output(&args.out, out)?;
    write_all(&mut *w, &text)
}

fn cmd_generate(args: &GenerateArgs) -> CmdResult {
    let g = match args.model {
        Model::Ws => watts_strogatz(args.nodes, args.k, args.beta, args.seed),
        Model::Ba => barabasi_albert(args.nodes, args.k, args.seed),
        Model::Er => erdos_renyi(args.nodes, args.nodes * args.k / 2, args.seed),
    }
    .map_err(|e| usage(e.to_string()))?;
    let f = File::create(&args.out).map_err(|e| runtime(format!("cannot create {}: {e}", args.out.display())))?;
    let mut w = BufWriter::new(f);
    write_edge_list(&g, &mut w)
        .and_then(|_| w.flush())
        .map_err(|e| runtime(format!("cannot write {}: {e}", args.out.display())))
}

fn dispatch(cli: &Cli, argv: &[String], out: &mut (dyn Write + Send), err: &mut (dyn Write + Send)) -> CmdResult {
    match &cli.command {
        Command::Index(a) => cmd_index(a, out),
        Command::Test(a) => cmd_test(a, argv, out, err),
        Command::Simulate(a) => cmd_simulate(a, out, err),
        Command::Bench(a) => cmd_bench(a, out, err),
        Command::Generate(a) => cmd_generate(a),
    }
}

/// Parses `argv` and runs the command, returning the process exit code.
pub fn run<I, T>(argv: I, out: &mut (dyn Write + Send), err: &mut (dyn Write + Send)) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<String>,
{
    let argv: Vec<String> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let level = match cli.verbose {
        0 => log::LevelFilter::Warn,
        1 => log::LevelFilter::Info,
        _ => log::LevelFilter::Debug,
    };
    let _ = env_logger::Builder::new().filter_level(level).parse_default_env().try_init();

    let threads = cli.threads.unwrap_or(0);
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: cannot start {threads} threads: {e}");
            return 1;
        }
    };
    match pool.install(|| dispatch(&cli, &argv, out, err)) {
        Ok(()) => 0,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

/// Entry point of the `tesc` binary.
pub fn main() -> i32 {
    run(std::env::args(), &mut io::stdout(), &mut io::stderr())
}

/// Reads lines from `path`, for tests and tooling over simulate output.
pub fn read_event_ids(path: &Path) -> io::Result<Vec<NodeId>> {
    let f = BufReader::new(File::open(path)?);
    let mut ids = Vec::new();
    for line in f.lines() {
        let line = line?;
        if let Ok(v) = line.trim().parse() {
            ids.push(v);
        }
    }
    Ok(ids)
}
