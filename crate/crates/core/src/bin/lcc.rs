use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use lcc_core::constructions::{cover_alpha2, cover_claw_free, cover_local_alpha, cover_max_clique};
use lcc_core::cover::{
    cp_exact, lcc_exact, scp_exact, ClaimedBound, CoverCertificate, Method, PARTITION_SOLVER_MAX_N,
};
use lcc_core::graph::Graph;
use lcc_core::harness::{
    check_conjectures, enumerate_labeled_graphs, run_construction_suite, InvariantCache,
    ReportFormat, ReportWriter, SweepOptions, SweepSummary, Which, EXHAUSTIVE_MAX_N,
};
use lcc_core::ng_bounds::{
    asymptotic_reference, cp_ng_bound, scp_ng_bound, NgBound, CP_SUM_COEFFICIENT,
    PRIOR_CP_SUM_COEFFICIENT, PRIOR_SCP_SUM_COEFFICIENT, SCP_SUM_COEFFICIENT,
    TRIANGLE_PACKING_DENSITY,
};

type Result<T> = std::result::Result<T, Box<dyn std::error::Error>>;

/// Local clique cover number: exact values, certified covers and sweeps.
///
/// The cache file for sweeps is taken from the LCC_CACHE environment variable.
#[derive(Parser)]
#[command(name = "lcc", version)]
struct Cli {
    /// Worker threads (0 = one per core).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print lcc(G) and a witness cover.
    Lcc {
        #[command(flatten)]
        graph: GraphInput,
        #[arg(long)]
        json: bool,
    },
    /// Build a cover with the given method and print its certificate as JSON.
    Cover {
        #[arg(long, value_enum)]
        method: MethodArg,
        #[command(flatten)]
        graph: GraphInput,
    },
    /// Check the lcc sum conjectures on a stream of graphs.
    ///
    /// Reads graph6 lines from --input, from stdin, or enumerates all
    /// labeled graphs on --n vertices with --exhaustive.
    Check {
        #[arg(long, value_enum, default_value = "both")]
        conjecture: ConjectureArg,
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long, value_enum, default_value = "csv")]
        format: FormatArg,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also check lcc(G + K_1) = lcc(G).
        #[arg(long)]
        lemma: bool,
    },
    /// Write a full report file for a sweep.
    Report {
        #[arg(long, value_enum)]
        format: FormatArg,
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        source: SourceArgs,
    },
    /// Realized scp(G) + scp(co-G) from a monochromatic triangle packing.
    ScpBound {
        #[command(flatten)]
        graph: GraphInput,
    },
    /// Realized cp(G) + cp(co-G) from a monochromatic triangle packing.
    CpBound {
        #[command(flatten)]
        graph: GraphInput,
    },
    /// Run a construction over a graph stream and verify every certificate.
    Suite {
        #[arg(long, value_enum)]
        method: MethodArg,
        #[command(flatten)]
        source: SourceArgs,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct GraphInput {
    /// Graph in graph6 format.
    graph6: Option<String>,
    /// Edge-list file: "n m" then one "u v" per line.
    #[arg(long)]
    edges: Option<PathBuf>,
}

#[derive(Args)]
struct SourceArgs {
    /// Number of vertices for --exhaustive.
    #[arg(long)]
    n: Option<usize>,
    /// Enumerate all labeled graphs on --n vertices.
    #[arg(long, requires = "n")]
    exhaustive: bool,
    /// Permit the 2^21-graph sweep at n = 7.
    #[arg(long)]
    allow_n7: bool,
    /// File of graph6 lines.
    #[arg(long, conflicts_with = "exhaustive")]
    input: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Alpha2,
    MaxClique,
    LocalAlpha,
    ClawFree,
    Exact,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Method {
        match m {
            MethodArg::Alpha2 => Method::Alpha2,
            MethodArg::MaxClique => Method::MaxClique,
            MethodArg::LocalAlpha => Method::LocalAlpha,
            MethodArg::ClawFree => Method::ClawFree,
            MethodArg::Exact => Method::Exact,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ConjectureArg {
    #[value(name = "1")]
    One,
    #[value(name = "2")]
    Two,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    JsonLines,
}

impl From<FormatArg> for ReportFormat {
    fn from(f: FormatArg) -> ReportFormat {
        match f {
            FormatArg::Csv => ReportFormat::Csv,
            FormatArg::JsonLines => ReportFormat::JsonLines,
        }
    }
}

impl GraphInput {
    fn load(&self) -> Result<Graph> {
        match (&self.graph6, &self.edges) {
            (Some(g6), _) => Ok(Graph::parse_graph6(g6.trim())?),
            (None, Some(path)) => Ok(Graph::parse_edge_list(&std::fs::read_to_string(path)?)?),
            (None, None) => unreachable!("clap requires one input"),
        }
    }
}

fn read_graph6_lines(reader: impl BufRead) -> impl Iterator<Item = Graph> {
    reader.lines().enumerate().filter_map(|(i, line)| {
        let line = match line {
            Ok(l) => l,
            Err(e) => {
                log::error!("line {}: {e}", i + 1);
                return None;
            }
        };
        let line = line.trim();
        if line.is_empty() || line.starts_with('>') {
            return None;
        }
        match Graph::parse_graph6(line) {
            Ok(g) => Some(g),
            Err(e) => {
                log::error!("line {}: {e}", i + 1);
                None
            }
        }
    })
}

impl SourceArgs {
    fn open(&self, threads: usize) -> Result<Box<dyn Iterator<Item = Graph>>> {
        if self.exhaustive {
            let n = self.n.expect("clap requires --n");
            if n > EXHAUSTIVE_MAX_N {
                return Err(format!("exhaustive mode supports n <= {EXHAUSTIVE_MAX_N}").into());
            }
            if n == EXHAUSTIVE_MAX_N {
                estimate_n7(threads)?;
                if !self.allow_n7 {
                    return Err("the n = 7 sweep needs --allow-n7".into());
                }
            }
            return Ok(Box::new(enumerate_labeled_graphs(n)?));
        }
        if let Some(path) = &self.input {
            return Ok(Box::new(read_graph6_lines(BufReader::new(File::open(
                path,
            )?))));
        }
        Ok(Box::new(read_graph6_lines(BufReader::new(io::stdin()))))
    }
}

/// Times an evenly spaced sample of n = 7 graphs and extrapolates.
fn estimate_n7(threads: usize) -> Result<()> {
    let all = enumerate_labeled_graphs(EXHAUSTIVE_MAX_N)?;
    let total = all.mask_count();
    let step = total / 512;
    let sample: Vec<Graph> = all.step_by(step as usize).collect();
    let opts = SweepOptions {
        threads: 1,
        ..SweepOptions::default()
    };
    let start = Instant::now();
    check_conjectures(sample.iter().cloned(), &opts, None, |_| Ok(()))?;
    let per_graph = start.elapsed().as_secs_f64() / sample.len() as f64;
    let workers = if threads == 0 {
        rayon::current_num_threads()
    } else {
        threads
    };
    eprintln!(
        "n = 7: {total} labeled graphs, estimated {:.0} s on {workers} threads (no cache)",
        per_graph * total as f64 / workers as f64
    );
    Ok(())
}

fn open_out(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn sweep(
    source: &SourceArgs,
    which: Which,
    format: ReportFormat,
    out: Option<&Path>,
    lemma: bool,
    threads: usize,
) -> Result<SweepSummary> {
    let graphs = source.open(threads)?;
    let cache = InvariantCache::from_env()?;
    let opts = SweepOptions {
        threads,
        lemma,
        stop_on_violation: false,
        which,
    };
    let mut writer = ReportWriter::new(open_out(out)?, format)?;
    let (summary, stats) = check_conjectures(graphs, &opts, cache.as_ref(), |r| writer.write(r))?;
    writer.finish(&summary)?;
    log::info!(
        "solver invocations {}, cache hits {}, audits {} ({} failed)",
        stats.solver_invocations,
        stats.cache_hits,
        stats.audits,
        stats.audit_failures
    );
    if stats.audit_failures > 0 {
        return Err(format!(
            "{} cache audit mismatches; delete the cache file",
            stats.audit_failures
        )
        .into());
    }
    eprintln!(
        "total {}  conj1 violations {}  conj2 violations {}  equality1 {}  equality2 {}  lemma failures {}  errors {}",
        summary.total,
        summary.conj1_violations,
        summary.conj2_violations,
        summary.equality1,
        summary.equality2,
        summary.lemma_failures,
        summary.errors
    );
    for g6 in &summary.counterexamples {
        eprintln!("COUNTEREXAMPLE {g6}");
    }
    Ok(summary)
}

fn certificate(g: &Graph, method: Method) -> Result<CoverCertificate> {
    Ok(match method {
        Method::Alpha2 => cover_alpha2(g)?,
        Method::MaxClique => cover_max_clique(g),
        Method::LocalAlpha => cover_local_alpha(g),
        Method::ClawFree => cover_claw_free(g)?,
        Method::Exact => {
            let (k, cover) = lcc_exact(g);
            CoverCertificate::certify(
                g,
                Method::Exact,
                ClaimedBound::MaxValency { limit: k },
                cover,
            )
        }
    })
}

fn ng_report(g: &Graph, b: &NgBound, scp: bool) -> Result<serde_json::Value> {
    let n = g.order();
    let k = b.packing.k();
    let (formula, exact, coef, prior) = if scp {
        let exact = if n <= PARTITION_SOLVER_MAX_N {
            let a = scp_exact(g)?.0;
            let c = scp_exact(&g.complement())?.0;
            Some(json!({ "scp": a, "scp_complement": c, "sum": a + c }))
        } else {
            None
        };
        (
            n * n.saturating_sub(1) - 3 * k,
            exact,
            SCP_SUM_COEFFICIENT,
            PRIOR_SCP_SUM_COEFFICIENT,
        )
    } else {
        let exact = if n <= PARTITION_SOLVER_MAX_N {
            let a = cp_exact(g)?.0;
            let c = cp_exact(&g.complement())?.0;
            Some(json!({ "cp": a, "cp_complement": c, "sum": a + c }))
        } else {
            None
        };
        (
            n * n.saturating_sub(1) / 2 - 2 * k,
            exact,
            CP_SUM_COEFFICIENT,
            PRIOR_CP_SUM_COEFFICIENT,
        )
    };
    Ok(json!({
        "graph6": g.to_graph6()?,
        "n": n,
        "k": k,
        "m": b.packing.m(),
        "realized": b.bound,
        "formula": formula,
        "valid": b.validate(g).is_ok(),
        "packing": b.packing,
        "partition": b.partition,
        "complement_partition": b.complement_partition,
        "exact": exact,
        "asymptotic_reference_only": {
            "triangle_density": format!("{}/{}", TRIANGLE_PACKING_DENSITY.0, TRIANGLE_PACKING_DENSITY.1),
            "coefficient": format!("{}/{}", coef.0, coef.1),
            "value": asymptotic_reference(coef, n),
            "prior_coefficient": format!("{}/{}", prior.0, prior.1),
            "prior_value": asymptotic_reference(prior, n),
        },
    }))
}

fn run(cli: Cli) -> Result<ExitCode> {
    let threads = cli.threads;
    let mut out = io::stdout().lock();
    match cli.command {
        Command::Lcc { graph, json } => {
            let g = graph.load()?;
            let (k, cover) = lcc_exact(&g);
            if json {
                writeln!(
                    out,
                    "{}",
                    json!({ "lcc": k, "valency": cover.valency(), "cover": cover })
                )?;
            } else {
                writeln!(out, "{k}")?;
                for c in cover.cliques() {
                    writeln!(
                        out,
                        "{}",
                        c.iter()
                            .map(|v| v.to_string())
                            .collect::<Vec<_>>()
                            .join(" ")
                    )?;
                }
            }
        }
        Command::Cover { method, graph } => {
            let g = graph.load()?;
            let cert = certificate(&g, method.into())?;
            writeln!(out, "{}", serde_json::to_string_pretty(&cert)?)?;
            if !cert.verdict {
                return Ok(ExitCode::FAILURE);
            }
        }
        Command::Check {
            conjecture,
            source,
            format,
            out,
            lemma,
        } => {
            let which = match conjecture {
                ConjectureArg::One => Which::One,
                ConjectureArg::Two => Which::Two,
                ConjectureArg::Both => Which::Both,
            };
            let s = sweep(
                &source,
                which,
                format.into(),
                out.as_deref(),
                lemma,
                threads,
            )?;
            if s.violations() > 0 || s.lemma_failures > 0 {
                return Ok(ExitCode::FAILURE);
            }
        }
        Command::Report {
            format,
            out,
            source,
        } => {
            let s = sweep(
                &source,
                Which::Both,
                format.into(),
                Some(&out),
                false,
                threads,
            )?;
            if s.violations() > 0 {
                return Ok(ExitCode::FAILURE);
            }
        }
        Command::ScpBound { graph } => {
            let g = graph.load()?;
            writeln!(
                out,
                "{}",
                serde_json::to_string_pretty(&ng_report(&g, &scp_ng_bound(&g), true)?)?
            )?;
        }
        Command::CpBound { graph } => {
            let g = graph.load()?;
            writeln!(
                out,
                "{}",
                serde_json::to_string_pretty(&ng_report(&g, &cp_ng_bound(&g), false)?)?
            )?;
        }
        Command::Suite { method, source } => {
            let s = run_construction_suite(source.open(threads)?, method.into(), threads)?;
            writeln!(out, "{}", serde_json::to_string_pretty(&s)?)?;
            if !s.failures.is_empty() {
                return Ok(ExitCode::FAILURE);
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

/// A reader closing stdout early (`| head`) is not an error.
fn is_broken_pipe(e: &(dyn std::error::Error + 'static)) -> bool {
    let mut cur = Some(e);
    while let Some(e) = cur {
        let io = match e.downcast_ref::<lcc_core::harness::HarnessError>() {
            Some(lcc_core::harness::HarnessError::Io(io)) => Some(io),
            _ => e.downcast_ref::<io::Error>(),
        };
        if io.is_some_and(|io| io.kind() == io::ErrorKind::BrokenPipe) {
            return true;
        }
        cur = e.source();
    }
    false
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) if is_broken_pipe(&*e) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
