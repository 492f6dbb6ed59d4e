// SPDX-License-Identifier: Apache-2.0

use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use emulator_forge::gen::{generate, Connectivity, GraphSpec, WeightDist};
use emulator_forge::tz::{compare_bounds, threshold_table, write_threshold_csv};
use emulator_forge::verifier::{log_slope, size_report, PairSelection, SizeReport};
use emulator_forge::{
    build_alg1, build_alg2, build_fast, build_general, stretch_params, verify_stretch, BuildMeta, BuildMode, Emulator,
    Error, Graph, Hierarchy, HierarchyConfig, VerifyOptions,
};

const THREADS_ENV: &str = "EMULATOR_FORGE_THREADS";

#[derive(Parser)]
#[command(
    name = "emulator-forge",
    version,
    about = "Build and verify weighted graph emulators"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a random G(n, m) edge list.
    Gen(GenArgs),
    /// Build an emulator for a graph file.
    Build(BuildArgs),
    /// Check an emulator against exact distances.
    Verify(VerifyArgs),
    /// Measure emulator sizes over a grid of graph sizes.
    Bench(BenchArgs),
    /// Distance thresholds against the Thorup–Zwick bound.
    CompareTz(CompareTzArgs),
}

#[derive(Args)]
struct GenArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    m: usize,
    /// `uniform` for weights in (0, 1], `unit` for all ones.
    #[arg(long, default_value = "uniform")]
    weights: WeightDist,
    /// Accept disconnected graphs instead of resampling.
    #[arg(long)]
    allow_disconnected: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BuildSettings {
    /// Sparsity exponent; alg1 implies 3 and alg2 implies 4.
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, default_value = "general")]
    mode: BuildMode,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Comma-separated sampling exponents, one per level.
    #[arg(long, value_delimiter = ',')]
    betas: Option<Vec<f64>>,
}

#[derive(Args)]
struct BuildArgs {
    /// Input edge list.
    #[arg(long)]
    graph: PathBuf,
    #[command(flatten)]
    settings: BuildSettings,
    /// Emulator output file.
    #[arg(long)]
    out: PathBuf,
    /// Size report CSV; stdout when absent.
    #[arg(long)]
    size_out: Option<PathBuf>,
    /// Also write the sampled hierarchy here.
    #[arg(long)]
    dump_hierarchy: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    emulator: PathBuf,
    /// Shortest-path enumeration budget per pair.
    #[arg(long, default_value_t = 100_000)]
    cap: usize,
    /// `auto`, `all`, or a number of sampled pairs.
    #[arg(long, default_value = "auto")]
    pairs: String,
    /// Pair-sampling seed.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Per-pair CSV; only the summary is printed when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    /// Comma-separated vertex counts.
    #[arg(long, value_delimiter = ',', default_value = "256,512,1024,2048")]
    grid: Vec<usize>,
    #[command(flatten)]
    settings: BuildSettings,
    /// Edges per vertex of each generated graph.
    #[arg(long, default_value_t = 4)]
    m_per_n: usize,
    #[arg(long, default_value = "uniform")]
    weights: WeightDist,
    /// Seeds per grid point, counted up from `--seed`.
    #[arg(long, default_value_t = 5)]
    seeds: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CompareTzArgs {
    /// Largest k in the threshold table.
    #[arg(long, default_value_t = 4)]
    k: usize,
    /// Also compare both bounds at every distance 1..=N for each k.
    #[arg(long)]
    sweep: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Output of the distance sweep; stdout when absent.
    #[arg(long)]
    sweep_out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = configure_threads() {
        eprintln!("error: {e:#}");
        return ExitCode::from(2);
    }
    let result = match cli.command {
        Command::Gen(args) => cmd_gen(args),
        Command::Build(args) => cmd_build(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Bench(args) => cmd_bench(args),
        Command::CompareTz(args) => cmd_compare_tz(args),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            let capability = e
                .chain()
                .any(|c| matches!(c.downcast_ref::<Error>(), Some(Error::Capability(_))));
            ExitCode::from(if capability { 3 } else { 2 })
        }
    }
}

fn configure_threads() -> anyhow::Result<()> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let threads: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .with_context(|| format!("{THREADS_ENV} must be a positive integer, got `{raw}`"))?;
    rayon::ThreadPoolBuilder::new().num_threads(threads).build_global()?;
    Ok(())
}

fn output(path: Option<&Path>) -> anyhow::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("cannot create {}", p.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn read_graph(path: &Path) -> anyhow::Result<Graph> {
    let file = File::open(path).with_context(|| format!("cannot open {}", path.display()))?;
    Graph::read_edge_list(BufReader::new(file)).with_context(|| format!("reading {}", path.display()))
}

fn read_emulator(path: &Path) -> anyhow::Result<Emulator> {
    let file = File::open(path).with_context(|| format!("cannot open {}", path.display()))?;
    Emulator::read_emulator(BufReader::new(file)).with_context(|| format!("reading {}", path.display()))
}

fn cmd_gen(args: GenArgs) -> anyhow::Result<ExitCode> {
    let spec = GraphSpec {
        n: args.n,
        m: args.m,
        weights: args.weights,
        connectivity: if args.allow_disconnected {
            Connectivity::Any
        } else {
            Connectivity::RequireConnected
        },
        seed: args.seed,
    };
    let generated = generate(&spec)?;
    let mut out = output(args.out.as_deref())?;
    generated.graph.write_edge_list(&mut out)?;
    out.flush()?;
    eprintln!("attempts: {}", generated.attempts);
    Ok(ExitCode::SUCCESS)
}

impl BuildSettings {
    /// `k` after the mode/k compatibility check.
    fn resolve_k(&self) -> anyhow::Result<usize> {
        let fixed = match self.mode {
            BuildMode::Alg1 => Some(3),
            BuildMode::Alg2 => Some(4),
            _ => None,
        };
        match (fixed, self.k) {
            (Some(f), Some(k)) if f != k => bail!(Error::InvalidArgument(format!(
                "mode {} builds the k = {f} emulator, got --k {k}",
                self.mode
            ))),
            (Some(f), _) => Ok(f),
            (None, Some(k)) => Ok(k),
            (None, None) => bail!(Error::InvalidArgument(format!("mode {} needs --k", self.mode))),
        }
    }

    fn config(&self) -> anyhow::Result<HierarchyConfig> {
        let k = self.resolve_k()?;
        Ok(match &self.betas {
            Some(b) => HierarchyConfig::new(k, b.clone(), self.seed)?,
            None => HierarchyConfig::uniform(k, self.seed)?,
        })
    }

    fn build(&self, graph: &Graph) -> anyhow::Result<Emulator> {
        let config = self.config()?;
        let b = &config.betas;
        Ok(match self.mode {
            BuildMode::Alg1 => build_alg1(graph, b[0], b[1], config.seed)?,
            BuildMode::Alg2 => build_alg2(graph, [b[0], b[1], b[2]], config.seed)?,
            BuildMode::General => build_general(graph, config.k, Some(b.clone()), config.seed)?,
            BuildMode::Fast => build_fast(graph, config.k, Some(b.clone()), config.seed)?.0,
            BuildMode::Original => Emulator::from_graph(
                graph,
                BuildMeta {
                    k: config.k,
                    seed: config.seed,
                    mode: BuildMode::Original,
                    betas: config.betas.clone(),
                },
            ),
        })
    }
}

fn cmd_build(args: BuildArgs) -> anyhow::Result<ExitCode> {
    let graph = read_graph(&args.graph)?;
    let emulator = args.settings.build(&graph)?;
    let mut out = output(Some(&args.out))?;
    emulator.write_emulator(&mut out)?;
    out.flush()?;
    let mut size = output(args.size_out.as_deref())?;
    size_report(&emulator, &graph).write_csv(&mut size)?;
    size.flush()?;
    if let Some(path) = &args.dump_hierarchy {
        let h = Hierarchy::build(&graph, &args.settings.config()?)?;
        let mut dump = output(Some(path))?;
        h.write_dump(&mut dump)?;
        dump.flush()?;
    }
    Ok(ExitCode::SUCCESS)
}

fn parse_pairs(raw: &str) -> anyhow::Result<PairSelection> {
    Ok(match raw {
        "auto" => PairSelection::Auto,
        "all" => PairSelection::All,
        n => PairSelection::Sample(n.parse().ok().filter(|&x| x > 0).ok_or_else(|| {
            Error::InvalidArgument(format!("--pairs expects auto, all or a positive count, got `{n}`"))
        })?),
    })
}

fn cmd_verify(args: VerifyArgs) -> anyhow::Result<ExitCode> {
    let graph = read_graph(&args.graph)?;
    let emulator = read_emulator(&args.emulator)?;
    let meta = emulator.meta().clone();
    let params = stretch_params(meta.k)?;
    // The header carries k, seed and betas, which is enough to resample the
    // same hierarchy for case labels.
    let hierarchy = match meta.mode {
        BuildMode::Original => None,
        _ if emulator.n() == graph.n() => Some(Hierarchy::build(
            &graph,
            &HierarchyConfig::new(meta.k, meta.betas.clone(), meta.seed)?,
        )?),
        _ => None,
    };
    let options = VerifyOptions {
        enumeration_cap: args.cap,
        pairs: parse_pairs(&args.pairs)?,
        seed: args.seed,
        edge_levels: hierarchy.as_ref().map(|h| h.edge_levels()),
    };
    let report = verify_stretch(&graph, &emulator, params, options)?;
    if let Some(path) = &args.out {
        let mut out = output(Some(path))?;
        report.write_csv(&mut out)?;
        out.flush()?;
    }
    println!("{}", report.summary());
    Ok(if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_bench(args: BenchArgs) -> anyhow::Result<ExitCode> {
    let k = args.settings.resolve_k()?;
    let mut out = output(args.out.as_deref())?;
    writeln!(out, "n,m,k,mode,seed,edges,build_ms,tag_counts")?;
    let mut points = Vec::new();
    for &n in &args.grid {
        for offset in 0..args.seeds {
            let seed = args.settings.seed + offset;
            let graph = generate(&GraphSpec {
                n,
                m: args.m_per_n * n,
                weights: args.weights,
                connectivity: Connectivity::RequireConnected,
                seed,
            })?
            .graph;
            let settings = BuildSettings {
                k: Some(k),
                mode: args.settings.mode,
                seed,
                betas: args.settings.betas.clone(),
            };
            let start = Instant::now();
            let emulator = settings.build(&graph)?;
            let ms = start.elapsed().as_secs_f64() * 1e3;
            let report: SizeReport = size_report(&emulator, &graph);
            let tags: Vec<String> = report.tag_counts.iter().map(|(t, c)| format!("{t}={c}")).collect();
            writeln!(
                out,
                "{n},{},{k},{},{seed},{},{ms:.3},{}",
                graph.m(),
                args.settings.mode,
                report.edges,
                tags.join(";")
            )?;
            points.push((n, report.edges));
        }
    }
    out.flush()?;
    let slope = log_slope(&points).map_or_else(|| "n/a".to_string(), |s| format!("{s:.4}"));
    println!("slope: {slope} predicted: {:.4}", 1.0 + 1.0 / k as f64);
    Ok(ExitCode::SUCCESS)
}

fn cmd_compare_tz(args: CompareTzArgs) -> anyhow::Result<ExitCode> {
    let rows = threshold_table(args.k)?;
    let mut out = output(args.out.as_deref())?;
    write_threshold_csv(&rows, &mut out)?;
    out.flush()?;
    if let Some(max) = args.sweep {
        let mut sweep = output(args.sweep_out.as_deref())?;
        writeln!(sweep, "k,delta,ours,tz,winner")?;
        for k in 2..=args.k {
            for delta in 1..=max {
                let c = compare_bounds(delta, k)?;
                writeln!(sweep, "{k},{delta},{},{},{}", c.ours, c.tz, c.winner)?;
            }
        }
        sweep.flush()?;
    }
    Ok(ExitCode::SUCCESS)
}
