use std::io::{self, BufRead, BufWriter, Write};
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use clap::{Args, Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use tightgraph::enumerate::BRUTE_FORCE_MAX_N;
use tightgraph::sparsity::first_rejected_edge;
use tightgraph::triangles::Scope;
use tightgraph::{
    compare, decompose, deconstruct, generate_by_moves, is_sparse, is_tight, random_tight_graph, read_graph6, replay, verify_decomposition,
    verify_lemmas, write_graph6, ConstructionSequence, Decomposition, Edge, SimpleGraph, SparsityParams,
};

/// Batch tools for (2,l)-tight graphs. Graphs are read from stdin as graph6,
/// one per line; results are written to stdout as JSON lines.
#[derive(Parser)]
#[command(name = "tightgraph", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct Level {
    /// Sparsity parameter l.
    #[arg(long = "l", value_parser = clap::value_parser!(u8).range(1..=3))]
    l: u8,
}

impl Level {
    fn params(self) -> SparsityParams {
        SparsityParams::new(self.l).expect("range checked by the parser")
    }
}

#[derive(Subcommand)]
enum Command {
    /// Sparse/tight verdict for each input graph.
    Check {
        #[command(flatten)]
        level: Level,
    },
    /// Certificate (construction sequence) for each tight input graph.
    Reduce {
        #[command(flatten)]
        level: Level,
        /// Certify this many random tight graphs instead of reading stdin.
        #[arg(long, requires = "n")]
        random: Option<usize>,
        /// Vertex count of the random graphs.
        #[arg(long)]
        n: Option<usize>,
        /// Seed for the random graphs.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Rebuild graphs from certificates read as JSON lines.
    Replay,
    /// Spanning tree decomposition of each tight input graph.
    Decompose {
        #[command(flatten)]
        level: Level,
        /// Added edge for l = 3, as `u,v`.
        #[arg(long, value_parser = parse_edge, conflicts_with = "seed")]
        extra: Option<Edge>,
        /// Choose the added edge for l = 3 at random with this seed.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Count tight graphs up to isomorphism, generated by moves.
    Enumerate {
        #[command(flatten)]
        level: Level,
        /// Largest vertex count.
        #[arg(long)]
        n: usize,
        /// Also enumerate by brute force and compare.
        #[arg(long)]
        oracle: bool,
        /// Print every class as graph6 instead of counts.
        #[arg(long)]
        graph6: bool,
        /// Worker threads (default: all cores).
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Check the triangle-sequence and closure properties over a corpus.
    VerifyLemmas {
        #[command(flatten)]
        level: Level,
        /// Use every tight graph with at most this many vertices; reads stdin otherwise.
        #[arg(long)]
        n: Option<usize>,
        /// Follow only the deterministic sequence from each seed triangle.
        #[arg(long)]
        greedy: bool,
        /// Worker threads (default: all cores).
        #[arg(long)]
        jobs: Option<usize>,
    },
}

fn parse_edge(s: &str) -> Result<Edge, String> {
    let (u, v) = s.split_once(',').ok_or("expected u,v")?;
    let u = u.trim().parse::<usize>().map_err(|e| e.to_string())?;
    let v = v.trim().parse::<usize>().map_err(|e| e.to_string())?;
    Ok((u, v))
}

/// Counts inputs that failed; any failure makes the exit status 1.
struct Run<W: Write> {
    out: W,
    failures: usize,
}

impl<W: Write> Run<W> {
    fn emit<T: Serialize>(&mut self, value: &T) -> Result<()> {
        serde_json::to_writer(&mut self.out, value)?;
        writeln!(self.out)?;
        Ok(())
    }

    fn fail(&mut self, line: usize, err: impl std::fmt::Display) {
        eprintln!("line {line}: {err}");
        self.failures += 1;
    }
}

fn graphs_from_stdin() -> impl Iterator<Item = (usize, Result<SimpleGraph>)> {
    io::stdin().lock().lines().enumerate().filter_map(|(i, line)| {
        let parsed = match line {
            Err(e) => Err(anyhow!(e)),
            Ok(text) if text.trim().is_empty() => return None,
            Ok(text) => read_graph6(text.trim_end()).map_err(|e| anyhow!("invalid graph6 at byte {}: {e}", e.offset())),
        };
        Some((i + 1, parsed))
    })
}

#[derive(Serialize)]
struct Verdict {
    graph6: String,
    l: u8,
    sparse: bool,
    tight: bool,
    verdict: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    rejected_edge: Option<Edge>,
}

#[derive(Serialize)]
struct DecomposeLine<'a> {
    graph6: String,
    l: u8,
    #[serde(flatten)]
    decomposition: &'a Decomposition,
}

#[derive(Serialize)]
struct CountLine {
    l: u8,
    n: usize,
    by_moves: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    brute_force: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    equal: Option<bool>,
}

#[derive(Serialize)]
struct LemmaLine<'a> {
    l: u8,
    graphs: usize,
    #[serde(flatten)]
    report: &'a tightgraph::LemmaReport,
}

fn set_threads(jobs: Option<usize>) -> Result<()> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(j) = jobs {
        builder = builder.num_threads(j.max(1));
    }
    builder.build_global().context("thread pool")
}

fn run<W: Write>(command: Command, r: &mut Run<W>) -> Result<()> {
    match command {
        Command::Check { level } => {
            set_threads(Some(1))?;
            let p = level.params();
            for (line, g) in graphs_from_stdin() {
                let g = match g {
                    Ok(g) => g,
                    Err(e) => {
                        r.fail(line, e);
                        continue;
                    }
                };
                let sparse = is_sparse(&g, p);
                let tight = sparse && is_tight(&g, p);
                let verdict = match (sparse, tight) {
                    (_, true) => "tight",
                    (true, false) => "sparse",
                    _ => "not_sparse",
                };
                let rejected_edge = if sparse { None } else { first_rejected_edge(&g, p) };
                r.emit(&Verdict { graph6: write_graph6(&g), l: p.l(), sparse, tight, verdict, rejected_edge })?;
            }
        }
        Command::Reduce { level, random, n, seed } => {
            set_threads(Some(1))?;
            let p = level.params();
            let inputs: Vec<(usize, Result<SimpleGraph>)> = match random {
                Some(count) => {
                    let n = n.expect("required by the parser");
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    (1..=count)
                        .map(|i| {
                            (i, random_tight_graph(&mut rng, p, n).ok_or_else(|| anyhow!("no (2,{})-tight graph on {n} vertices", p.l())))
                        })
                        .collect()
                }
                None => graphs_from_stdin().collect(),
            };
            for (line, g) in inputs {
                match g.and_then(|g| certify(&g, p)) {
                    Ok(seq) => r.emit(&seq)?,
                    Err(e) => r.fail(line, e),
                }
            }
        }
        Command::Replay => {
            set_threads(Some(1))?;
            for (i, line) in io::stdin().lock().lines().enumerate() {
                let text = line?;
                if text.trim().is_empty() {
                    continue;
                }
                let rebuilt = serde_json::from_str::<ConstructionSequence>(&text)
                    .map_err(|e| anyhow!("malformed certificate: {e}"))
                    .and_then(|seq| replay(&seq).map_err(|e| anyhow!(e)));
                match rebuilt {
                    Ok(g) => writeln!(r.out, "{}", write_graph6(&g))?,
                    Err(e) => r.fail(i + 1, e),
                }
            }
        }
        Command::Decompose { level, extra, seed } => {
            set_threads(Some(1))?;
            let p = level.params();
            let mut rng = seed.map(ChaCha8Rng::seed_from_u64);
            for (line, g) in graphs_from_stdin() {
                let result = g.and_then(|g| {
                    let chosen = match (&mut rng, p.l()) {
                        (Some(rng), 3) if g.vertex_count() >= 2 => {
                            let n = g.vertex_count();
                            let u = rng.gen_range(0..n);
                            Some((u, (u + 1 + rng.gen_range(0..n - 1)) % n))
                        }
                        _ => extra,
                    };
                    let d = decompose(&g, p, chosen)?;
                    if !verify_decomposition(&g, &d, p) {
                        return Err(anyhow!("decomposition failed verification"));
                    }
                    Ok((g, d))
                });
                match result {
                    Ok((g, d)) => r.emit(&DecomposeLine { graph6: write_graph6(&g), l: p.l(), decomposition: &d })?,
                    Err(e) => r.fail(line, e),
                }
            }
        }
        Command::Enumerate { level, n, oracle, graph6, jobs } => {
            set_threads(jobs)?;
            let p = level.params();
            if oracle && n > BRUTE_FORCE_MAX_N {
                return Err(Usage(format!("--oracle supports --n up to {BRUTE_FORCE_MAX_N}")).into());
            }
            if graph6 {
                for (_, forms) in generate_by_moves(n, p) {
                    for f in forms {
                        writeln!(r.out, "{}", f.as_graph6())?;
                    }
                }
            } else if oracle {
                let report = compare(n, p);
                for row in &report.rows {
                    let equal = row.missing_from_moves.is_empty() && row.extra_from_moves.is_empty();
                    r.emit(&CountLine {
                        l: p.l(),
                        n: row.n,
                        by_moves: row.by_moves,
                        brute_force: Some(row.brute_force),
                        equal: Some(equal),
                    })?;
                    for g6 in &row.missing_from_moves {
                        r.fail(row.n, format!("brute force only: {g6}"));
                    }
                    for g6 in &row.extra_from_moves {
                        r.fail(row.n, format!("moves only: {g6}"));
                    }
                }
            } else {
                for (k, forms) in generate_by_moves(n, p).into_iter().filter(|(k, _)| *k >= 2) {
                    r.emit(&CountLine { l: p.l(), n: k, by_moves: forms.len(), brute_force: None, equal: None })?;
                }
            }
        }
        Command::VerifyLemmas { level, n, greedy, jobs } => {
            set_threads(jobs)?;
            let p = level.params();
            let graphs: Vec<SimpleGraph> = match n {
                Some(n) => generate_by_moves(n, p).into_values().flatten().map(|f| f.to_graph()).collect(),
                None => {
                    let mut gs = Vec::new();
                    for (line, g) in graphs_from_stdin() {
                        match g {
                            Ok(g) if is_tight(&g, p) => gs.push(g),
                            Ok(g) => r.fail(line, format!("{} is not (2,{})-tight", write_graph6(&g), p.l())),
                            Err(e) => r.fail(line, e),
                        }
                    }
                    gs
                }
            };
            let scope = if greedy { Scope::Greedy } else { Scope::Exhaustive };
            for report in verify_lemmas(&graphs, p, scope) {
                for c in &report.failures {
                    eprintln!("{}: {} {}", report.lemma, c.graph6, c.detail);
                }
                r.failures += report.failures.len();
                r.emit(&LemmaLine { l: p.l(), graphs: graphs.len(), report: &report })?;
            }
        }
    }
    Ok(())
}

/// Deconstructs and replays, so every emitted certificate is known good.
fn certify(g: &SimpleGraph, p: SparsityParams) -> Result<ConstructionSequence> {
    let seq = deconstruct(g, p)?;
    let rebuilt = replay(&seq)?;
    if &rebuilt != g {
        return Err(anyhow!("replay rebuilt {} instead of {}", write_graph6(&rebuilt), write_graph6(g)));
    }
    Ok(seq)
}

#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut r = Run { out: BufWriter::new(stdout.lock()), failures: 0 };
    let result = run(cli.command, &mut r);
    let flushed = r.out.flush();
    match result.and(flushed.map_err(Into::into)) {
        Err(e) if e.is::<Usage>() => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
        Ok(()) if r.failures > 0 => ExitCode::from(1),
        Ok(()) => ExitCode::SUCCESS,
    }
}
