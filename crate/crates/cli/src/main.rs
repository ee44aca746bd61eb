//! Command-line front end for the sparse graph kernels: generate synthetic
//! grids, convert between edge-list formats, count triangles, extract
//! k-trusses, and run timed benchmarks with verification.
//!
//! Exit codes: 0 on success (and verified results), 1 when a verification or
//! cross-algorithm check fails, 2 on usage or input errors.

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use graphbench_core::bench::{
    builtin_triangle_count, emit_report, run_benchmark, BenchConfig, Correctness, Expected, Kernel,
    ReportFormat, ResultPayload,
};
use graphbench_core::generator::{grid_graph, triangle_count, GridSpec};
use graphbench_core::ingest::{
    normalize, parse_tsv, read_graph, write_mmio, write_tsv, FileFormat,
};
use graphbench_core::ktruss::{ktruss, truss_decomposition};
use graphbench_core::triangles::{
    count_hadamard, count_incidence, count_lu, enumerate_incidence, oracle_enumerate,
    TriangleAlgorithm,
};
use graphbench_core::Graph;

/// Vertex bound above which the exhaustive oracle is left out of `all` runs.
const ORACLE_VERTEX_LIMIT: usize = 2_000;

#[derive(Parser)]
#[command(
    name = "graphbench",
    version,
    about = "Sparse graph-kernel benchmark tool"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a synthetic 8-neighbor image-grid graph.
    Generate(GenerateArgs),
    /// Convert an edge-list file between TSV and MatrixMarket.
    Convert(ConvertArgs),
    /// Count triangles.
    Triangles(TrianglesArgs),
    /// Extract the k-truss of a graph.
    Ktruss(KtrussArgs),
    /// Full truss decomposition (maximal k per edge).
    Truss(TrussArgs),
    /// Run a timed benchmark and emit a metrics report.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Tsv,
    Mmio,
}

impl From<FormatArg> for FileFormat {
    fn from(f: FormatArg) -> FileFormat {
        match f {
            FormatArg::Tsv => FileFormat::Tsv,
            FormatArg::Mmio => FileFormat::Mmio,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgorithmArg {
    /// Masked square of the adjacency matrix.
    Hadamard,
    /// Masked product of the strict triangular parts.
    Lu,
    /// Edge-vertex product on adjacency and incidence.
    Incidence,
    /// Exhaustive triple enumeration (small graphs only).
    Oracle,
    /// Every algorithm, failing on any disagreement.
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum KernelArg {
    Triangles,
    Ktruss,
    Truss,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportArg {
    Csv,
    Json,
    Table,
}

impl From<ReportArg> for ReportFormat {
    fn from(r: ReportArg) -> ReportFormat {
        match r {
            ReportArg::Csv => ReportFormat::Csv,
            ReportArg::Json => ReportFormat::Json,
            ReportArg::Table => ReportFormat::Table,
        }
    }
}

#[derive(Args)]
struct GridSize {
    /// Grid side 2^n.
    #[arg(long, value_name = "N")]
    grid_exponent: Option<u32>,
    /// Grid side M directly (allows non-powers of two).
    #[arg(long, value_name = "M", conflicts_with = "grid_exponent")]
    side: Option<usize>,
}

impl GridSize {
    fn spec(&self) -> Option<GridSpec> {
        match (self.grid_exponent, self.side) {
            (Some(n), _) => Some(GridSpec::Exponent(n)),
            (_, Some(m)) => Some(GridSpec::Side(m)),
            (None, None) => None,
        }
    }
}

#[derive(Args)]
struct GenerateArgs {
    #[command(flatten)]
    size: GridSize,
    /// Output file (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "tsv")]
    format: FormatArg,
}

#[derive(Args)]
struct InputArgs {
    /// Input edge-list file.
    #[arg(long)]
    input: PathBuf,
    /// Input format; inferred from the extension when omitted.
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
    /// Vertex-count override (TSV files do not declare one).
    #[arg(long, value_name = "COUNT")]
    n: Option<usize>,
}

impl InputArgs {
    fn load(&self) -> Result<Graph> {
        let format = resolve_format(&self.input, self.format)?;
        let file = File::open(&self.input)
            .with_context(|| format!("cannot open {}", self.input.display()))?;
        read_graph(format, BufReader::new(file), self.n)
            .with_context(|| format!("reading {}", self.input.display()))
    }
}

#[derive(Args)]
struct ConvertArgs {
    /// Input edge-list file.
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum)]
    from: FormatArg,
    #[arg(long, value_enum)]
    to: FormatArg,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Vertex-count override.
    #[arg(long, value_name = "COUNT")]
    n: Option<usize>,
}

#[derive(Args)]
struct TrianglesArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, value_enum, default_value = "hadamard")]
    algorithm: AlgorithmArg,
    /// Also list the triangles (incidence and oracle algorithms only).
    #[arg(long)]
    enumerate: bool,
    /// Expected count; mismatches exit with status 1.
    #[arg(long, value_name = "COUNT")]
    expect: Option<u64>,
}

#[derive(Args)]
struct KtrussArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Truss order (k >= 2).
    #[arg(long)]
    k: u32,
    /// Report the maximal k per edge instead of one truss.
    #[arg(long)]
    decompose: bool,
    /// Output file (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct TrussArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    /// Input edge-list file (alternative to the grid options).
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
    /// Vertex-count override for file input.
    #[arg(long, value_name = "COUNT")]
    n: Option<usize>,
    #[command(flatten)]
    size: GridSize,
    #[arg(long, value_enum, default_value = "triangles")]
    kernel: KernelArg,
    /// Triangle algorithm (triangles kernel only).
    #[arg(long, value_enum, default_value = "hadamard")]
    algorithm: AlgorithmArg,
    /// Truss order (ktruss kernel only).
    #[arg(long)]
    k: Option<u32>,
    /// Kernel repetitions; the reported time is the mean.
    #[arg(long, default_value_t = 100)]
    reps: usize,
    #[arg(long, value_enum, default_value = "csv")]
    report: ReportArg,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Expected result: a count, or a file holding a count (triangles) or a
    /// TSV edge list (truss kernels).
    #[arg(long, value_name = "VALUE|FILE")]
    expect: Option<String>,
    /// Verify grid inputs against the analytic triangle count.
    #[arg(long, conflicts_with = "expect")]
    expect_oracle: bool,
    /// Externally measured energy, recorded as-is.
    #[arg(long, value_name = "JOULES")]
    energy_joules: Option<f64>,
    /// Processor description (detected from the host when omitted).
    #[arg(long)]
    processor: Option<String>,
    /// Dataset name for the report (defaults to the file stem or grid size).
    #[arg(long)]
    dataset: Option<String>,
}

fn resolve_format(path: &Path, flag: Option<FormatArg>) -> Result<FileFormat> {
    if let Some(f) = flag {
        return Ok(f.into());
    }
    FileFormat::from_extension(path).ok_or_else(|| {
        anyhow!(
            "cannot infer format of {} (use --format tsv|mmio)",
            path.display()
        )
    })
}

fn out_writer(out: &Option<PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match out {
        Some(path) => Box::new(BufWriter::new(
            File::create(path).with_context(|| format!("cannot create {}", path.display()))?,
        )),
        None => Box::new(BufWriter::new(std::io::stdout())),
    })
}

fn write_graph(g: &Graph, format: FileFormat, out: &Option<PathBuf>) -> Result<()> {
    let mut w = out_writer(out)?;
    match format {
        FileFormat::Tsv => write_tsv(g, &mut w)?,
        FileFormat::Mmio => write_mmio(g, &mut w)?,
    }
    w.flush()?;
    Ok(())
}

fn cmd_generate(args: GenerateArgs) -> Result<i32> {
    let spec = args
        .size
        .spec()
        .ok_or_else(|| anyhow!("one of --grid-exponent or --side is required"))?;
    let g = grid_graph(spec)?;
    write_graph(&g, args.format.into(), &args.out)?;
    Ok(0)
}

fn cmd_convert(args: ConvertArgs) -> Result<i32> {
    let file =
        File::open(&args.input).with_context(|| format!("cannot open {}", args.input.display()))?;
    let g = read_graph(args.from.into(), BufReader::new(file), args.n)
        .with_context(|| format!("reading {}", args.input.display()))?;
    write_graph(&g, args.to.into(), &args.out)?;
    Ok(0)
}

fn run_triangle_algorithm(g: &Graph, alg: TriangleAlgorithm) -> Result<u64> {
    let count = match alg {
        TriangleAlgorithm::HadamardSquare => count_hadamard(g.adjacency())?.count,
        TriangleAlgorithm::LuMasked => count_lu(g.adjacency())?.count,
        TriangleAlgorithm::AdjacencyIncidence => {
            count_incidence(g.adjacency(), g.incidence())?.count
        }
        TriangleAlgorithm::Oracle => oracle_enumerate(g).0.count,
    };
    Ok(count)
}

fn cmd_triangles(args: TrianglesArgs) -> Result<i32> {
    let g = args.input.load()?;

    if args.enumerate {
        let records = match args.algorithm {
            AlgorithmArg::Incidence => enumerate_incidence(g.adjacency(), g.incidence())?.1,
            AlgorithmArg::Oracle => oracle_enumerate(&g).1,
            _ => bail!("--enumerate requires --algorithm incidence or oracle"),
        };
        let stdout = std::io::stdout();
        let mut w = BufWriter::new(stdout.lock());
        for r in &records {
            writeln!(w, "{}\t{}\t{}", r.apex + 1, r.x + 1, r.y + 1)?;
        }
        w.flush()?;
        eprintln!("{} triangles", records.len());
        return Ok(0);
    }

    let count = match args.algorithm {
        AlgorithmArg::All => {
            let mut results = vec![
                (
                    TriangleAlgorithm::HadamardSquare,
                    run_triangle_algorithm(&g, TriangleAlgorithm::HadamardSquare)?,
                ),
                (
                    TriangleAlgorithm::LuMasked,
                    run_triangle_algorithm(&g, TriangleAlgorithm::LuMasked)?,
                ),
                (
                    TriangleAlgorithm::AdjacencyIncidence,
                    run_triangle_algorithm(&g, TriangleAlgorithm::AdjacencyIncidence)?,
                ),
            ];
            if g.vertex_count() <= ORACLE_VERTEX_LIMIT {
                results.push((
                    TriangleAlgorithm::Oracle,
                    run_triangle_algorithm(&g, TriangleAlgorithm::Oracle)?,
                ));
            } else {
                eprintln!(
                    "note: oracle skipped ({} vertices exceed the {} limit)",
                    g.vertex_count(),
                    ORACLE_VERTEX_LIMIT
                );
            }
            for (alg, count) in &results {
                println!("{alg}\t{count}");
            }
            if results.windows(2).any(|w| w[0].1 != w[1].1) {
                eprintln!("error: algorithms disagree");
                return Ok(1);
            }
            results[0].1
        }
        single => {
            let alg = match single {
                AlgorithmArg::Hadamard => TriangleAlgorithm::HadamardSquare,
                AlgorithmArg::Lu => TriangleAlgorithm::LuMasked,
                AlgorithmArg::Incidence => TriangleAlgorithm::AdjacencyIncidence,
                AlgorithmArg::Oracle => TriangleAlgorithm::Oracle,
                AlgorithmArg::All => unreachable!(),
            };
            let count = run_triangle_algorithm(&g, alg)?;
            println!("{count}");
            count
        }
    };

    if let Some(expected) = args.expect {
        if count != expected {
            eprintln!("verification failed: counted {count}, expected {expected}");
            return Ok(1);
        }
        eprintln!("verified: {count}");
    }
    Ok(0)
}

fn write_decomposition(g: &Graph, out: &Option<PathBuf>) -> Result<()> {
    let result = truss_decomposition(g.incidence())?;
    let max_k = result
        .per_edge_max_k
        .expect("decomposition always reports per-edge k");
    let mut w = out_writer(out)?;
    for (&(u, v), k) in g.edge_list().edges().iter().zip(max_k) {
        writeln!(w, "{}\t{}\t{}", u + 1, v + 1, k)?;
    }
    w.flush()?;
    Ok(())
}

fn cmd_ktruss(args: KtrussArgs) -> Result<i32> {
    let g = args.input.load()?;
    if args.decompose {
        write_decomposition(&g, &args.out)?;
        return Ok(0);
    }
    let result = ktruss(g.incidence(), args.k)?;
    eprintln!(
        "{}-truss: {} of {} edges survive",
        args.k,
        result.surviving_edges.edge_count(),
        g.edge_count()
    );
    write_graph(
        &Graph::new(result.surviving_edges),
        FileFormat::Tsv,
        &args.out,
    )?;
    Ok(0)
}

fn cmd_truss(args: TrussArgs) -> Result<i32> {
    let g = args.input.load()?;
    write_decomposition(&g, &args.out)?;
    Ok(0)
}

fn parse_expect(arg: &str, kernel: KernelArg) -> Result<Expected> {
    // A bare integer is an expected count; anything else is a sidecar file.
    if let Ok(count) = arg.parse::<u64>() {
        if !matches!(kernel, KernelArg::Triangles) {
            bail!("--expect <count> only applies to the triangles kernel");
        }
        return Ok(Expected::TriangleCount(count));
    }
    let path = Path::new(arg);
    let mut contents = String::new();
    File::open(path)
        .with_context(|| format!("--expect: cannot open {}", path.display()))?
        .read_to_string(&mut contents)?;
    match kernel {
        KernelArg::Triangles => {
            let count = contents.trim().parse::<u64>().with_context(|| {
                format!("--expect file {} must hold a single count", path.display())
            })?;
            Ok(Expected::TriangleCount(count))
        }
        KernelArg::Ktruss | KernelArg::Truss => {
            let g = normalize(&parse_tsv(BufReader::new(contents.as_bytes()))?);
            Ok(Expected::TrussEdges(g.edge_list().clone()))
        }
    }
}

fn cmd_bench(args: BenchArgs) -> Result<i32> {
    let (g, default_name, grid_side) = match (&args.input, args.size.spec()) {
        (Some(path), None) => {
            let format = resolve_format(path, args.format)?;
            let file =
                File::open(path).with_context(|| format!("cannot open {}", path.display()))?;
            let g = read_graph(format, BufReader::new(file), args.n)
                .with_context(|| format!("reading {}", path.display()))?;
            let stem = path
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| "dataset".into());
            (g, stem, None)
        }
        (None, Some(spec)) => {
            let side = spec.side()?;
            (grid_graph(spec)?, format!("grid-{side}"), Some(side))
        }
        (Some(_), Some(_)) => bail!("--input conflicts with the grid options"),
        (None, None) => bail!("provide --input or one of --grid-exponent/--side"),
    };

    let kernel = match args.kernel {
        KernelArg::Triangles => {
            let alg = match args.algorithm {
                AlgorithmArg::Hadamard => TriangleAlgorithm::HadamardSquare,
                AlgorithmArg::Lu => TriangleAlgorithm::LuMasked,
                AlgorithmArg::Incidence => TriangleAlgorithm::AdjacencyIncidence,
                AlgorithmArg::Oracle => TriangleAlgorithm::Oracle,
                AlgorithmArg::All => bail!("bench runs one algorithm at a time"),
            };
            Kernel::Triangles(alg)
        }
        KernelArg::Ktruss => Kernel::Ktruss {
            k: args
                .k
                .ok_or_else(|| anyhow!("--kernel ktruss requires --k"))?,
        },
        KernelArg::Truss => Kernel::TrussDecomposition,
    };

    let dataset = args.dataset.clone().unwrap_or(default_name);
    let expected = if let Some(expect) = &args.expect {
        parse_expect(expect, args.kernel)?
    } else if args.expect_oracle {
        match (grid_side, args.kernel) {
            (Some(side), KernelArg::Triangles) => Expected::TriangleCount(triangle_count(side)),
            (None, _) => bail!("--expect-oracle requires a generated grid input"),
            _ => bail!("--expect-oracle only applies to the triangles kernel"),
        }
    } else if matches!(args.kernel, KernelArg::Triangles) {
        builtin_triangle_count(&dataset)
            .map(Expected::TriangleCount)
            .unwrap_or_default()
    } else {
        Expected::None
    };

    let mut cfg = BenchConfig::new(dataset, kernel);
    cfg.reps = args.reps;
    cfg.expected = expected;
    cfg.energy_joules = args.energy_joules;
    cfg.processor = args.processor.clone();

    let record = run_benchmark(&g, &cfg)?;
    let failed = record.status == Correctness::Failed;
    if failed {
        let got = match &record.result {
            ResultPayload::Triangles { count } => format!("count {count}"),
            ResultPayload::Truss { k, surviving_edges } => {
                format!("{k}-truss with {surviving_edges} edges")
            }
        };
        let want = match &cfg.expected {
            Expected::TriangleCount(c) => format!("count {c}"),
            Expected::TrussEdges(e) => format!("{} edges", e.edge_count()),
            Expected::None => "nothing".into(),
        };
        eprintln!("verification failed: got {got}, expected {want}");
    }

    let report = emit_report(std::slice::from_ref(&record), args.report.into())?;
    let mut w = out_writer(&args.out)?;
    w.write_all(report.as_bytes())?;
    w.flush()?;

    Ok(if failed { 1 } else { 0 })
}

fn main() {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Generate(args) => cmd_generate(args),
        Command::Convert(args) => cmd_convert(args),
        Command::Triangles(args) => cmd_triangles(args),
        Command::Ktruss(args) => cmd_ktruss(args),
        Command::Truss(args) => cmd_truss(args),
        Command::Bench(args) => cmd_bench(args),
    };
    match outcome {
        Ok(code) => std::process::exit(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            std::process::exit(2);
        }
    }
}
