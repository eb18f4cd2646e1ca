use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use cubic_twist::diagram::{build_diagram, crossing_pairs, saturated_vertices, to_dot};
use cubic_twist::experiment::{monte_carlo_classes, sweep_csv, sweep_families, ExperimentReport, PerClass};
use cubic_twist::oracle::{
    exact_expected_classes, summarize, verify_property6, write_config_csv, Space, DEFAULT_ENUM_CAP_BITS,
};
use cubic_twist::properties::{check_embedding, Violation};
use cubic_twist::reduce::{
    greedy_reduce, matching_bound_embedding, plus_cascade, search_circular_exhaustive, DEFAULT_SEARCH_CAP,
};
use cubic_twist::twist::twist_recorded;
use cubic_twist::{
    classify_edges, count_classes, euler_characteristic, is_circular, is_orientable, named_graph, parse_graph,
    random_embedding, trace_faces, CubicGraph, Embedding,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

const EXIT_INPUT: u8 = 1;
const EXIT_FALSIFIED: u8 = 2;

/// Signed embeddings of bridgeless cubic graphs: faces, twists, facial
/// diagrams, reduction and exhaustive checks.
#[derive(Parser)]
#[command(name = "cubic-twist", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct GraphSource {
    /// Named graph: theta, k4, k33, petersen or prism_K.
    #[arg(long)]
    graph: Option<String>,
    /// Edge-list file: "n m" header, then one "u v" line per edge.
    #[arg(long)]
    graph_file: Option<PathBuf>,
}

#[derive(Args)]
struct EmbeddingSource {
    /// Embedding JSON file.
    #[arg(long)]
    embedding: Option<PathBuf>,
    /// Seed for a uniformly random embedding when no file is given.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// Trace the facial walks of an embedding.
    Faces {
        #[command(flatten)]
        graph: GraphSource,
        #[command(flatten)]
        emb: EmbeddingSource,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Classify every edge as regular, good singular or bad singular.
    Classify {
        #[command(flatten)]
        graph: GraphSource,
        #[command(flatten)]
        emb: EmbeddingSource,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Negate the signature of one edge.
    Twist {
        #[command(flatten)]
        graph: GraphSource,
        #[command(flatten)]
        emb: EmbeddingSource,
        #[arg(long)]
        edge: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build the facial diagram.
    Diagram {
        #[command(flatten)]
        graph: GraphSource,
        #[command(flatten)]
        emb: EmbeddingSource,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Also write the diagram as DOT to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Remove `-` links greedily; with --budget, continue with `+` twists.
    Reduce {
        #[command(flatten)]
        graph: GraphSource,
        #[command(flatten)]
        emb: EmbeddingSource,
        /// Total twist budget for the `+`-link cascade.
        #[arg(long)]
        budget: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Search all signatures over a fixed rotation for a circular embedding.
    Search {
        #[command(flatten)]
        graph: GraphSource,
        /// Embedding whose rotation is kept; the canonical rotation otherwise.
        #[arg(long)]
        embedding: Option<PathBuf>,
        /// Largest edge count searched.
        #[arg(long, default_value_t = DEFAULT_SEARCH_CAP)]
        cap: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Embedding whose faces include every cycle of a 2-factor.
    MatchingBound {
        #[command(flatten)]
        graph: GraphSource,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sweep every configuration and report exact statistics.
    Enumerate {
        #[command(flatten)]
        graph: GraphSource,
        /// Largest configuration bit count swept.
        #[arg(long, default_value_t = DEFAULT_ENUM_CAP_BITS)]
        cap: usize,
        /// Sweep signatures only, over the canonical rotation.
        #[arg(long)]
        signatures_only: bool,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        /// Also write one CSV row per configuration to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Monte Carlo estimate of class counts over random embeddings.
    Experiment {
        #[command(flatten)]
        graph: GraphSource,
        #[arg(long)]
        samples: u64,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        /// Also attach exact expectations when the full sweep fits this cap.
        #[arg(long)]
        cap: Option<usize>,
        /// Comma-separated vertex counts for a random-graph sweep instead.
        #[arg(long, value_delimiter = ',')]
        sweep: Vec<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the structural and twist properties; exits 2 on a violation.
    CheckProperties {
        #[command(flatten)]
        graph: GraphSource,
        #[command(flatten)]
        emb: EmbeddingSource,
        /// Number of random embeddings drawn from --seed.
        #[arg(long, default_value_t = 1)]
        samples: u64,
        /// Also check that minimum embeddings have no crossings, by
        /// exhaustive sweep under this bit cap.
        #[arg(long)]
        cap: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn load_graph(src: &GraphSource) -> Result<(CubicGraph, String)> {
    match (&src.graph, &src.graph_file) {
        (Some(name), _) => Ok((named_graph(name)?, name.clone())),
        (None, Some(path)) => {
            let text = fs::read_to_string(path).with_context(|| format!("reading graph file {}", path.display()))?;
            let g = parse_graph(&text).with_context(|| format!("graph file {}", path.display()))?;
            let id = path.file_stem().map_or_else(|| "file".into(), |s| s.to_string_lossy().into_owned());
            Ok((g, id))
        }
        (None, None) => bail!("one of --graph or --graph-file is required"),
    }
}

fn read_embedding(g: &CubicGraph, path: &Path) -> Result<Embedding> {
    let text = fs::read_to_string(path).with_context(|| format!("reading embedding file {}", path.display()))?;
    Embedding::from_json(g, &text).with_context(|| format!("embedding file {}", path.display()))
}

/// The embedding from file, or a random one drawn from the seed. The
/// returned generator continues the seeded stream.
fn load_embedding(g: &CubicGraph, src: &EmbeddingSource) -> Result<(Embedding, Option<ChaCha8Rng>)> {
    let mut rng = src.seed.map(ChaCha8Rng::seed_from_u64);
    let emb = match (&src.embedding, rng.as_mut()) {
        (Some(path), _) => read_embedding(g, path)?,
        (None, Some(rng)) => random_embedding(g, rng),
        (None, None) => bail!("an embedding is required: pass --embedding FILE or --seed N"),
    };
    Ok((emb, rng))
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            if !text.ends_with('\n') {
                stdout.write_all(b"\n")?;
            }
            Ok(())
        }
    }
}

fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("output serializes")
}

fn no_format(cmd: &str, format: Format, allowed: &[Format]) -> Result<()> {
    if allowed.contains(&format) {
        Ok(())
    } else {
        let name = format.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default();
        bail!("--format {name} is not supported by {cmd}")
    }
}

#[derive(Serialize)]
struct Classification {
    classes: Vec<cubic_twist::EdgeClass>,
    counts: cubic_twist::ClassCounts,
    faces: usize,
    euler_characteristic: i64,
    orientable: bool,
    circular: bool,
}

#[derive(Serialize)]
struct TwistOutput {
    embedding: Embedding,
    record: cubic_twist::twist::TwistRecord,
}

#[derive(Serialize)]
struct MatchingOutput {
    matching: cubic_twist::Matching,
    embedding: Embedding,
    counts: cubic_twist::ClassCounts,
    faces: usize,
}

#[derive(Serialize)]
struct PropertyReport {
    embeddings_checked: u64,
    minimum_checked: bool,
    violations: Vec<Violation>,
}

#[derive(Serialize)]
struct DiagramSummary<'a> {
    diagram: &'a cubic_twist::diagram::FacialDiagram,
    crossings: Vec<(usize, usize)>,
    saturated_vertices: Vec<usize>,
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Faces { graph, emb, out } => {
            let (g, _) = load_graph(&graph)?;
            let (e, _) = load_embedding(&g, &emb)?;
            emit(out.as_deref(), &trace_faces(&g, &e).to_json(&g))?;
        }
        Command::Classify { graph, emb, out } => {
            let (g, _) = load_graph(&graph)?;
            let (e, _) = load_embedding(&g, &emb)?;
            let fs = trace_faces(&g, &e);
            let report = Classification {
                classes: classify_edges(&fs),
                counts: count_classes(&fs),
                faces: fs.face_count(),
                euler_characteristic: euler_characteristic(&g, &fs),
                orientable: is_orientable(&g, &e),
                circular: is_circular(&fs),
            };
            emit(out.as_deref(), &json(&report))?;
        }
        Command::Twist { graph, emb, edge, out } => {
            let (g, _) = load_graph(&graph)?;
            let (e, _) = load_embedding(&g, &emb)?;
            let (embedding, record) = twist_recorded(&g, &e, edge).context("--edge")?;
            emit(out.as_deref(), &json(&TwistOutput { embedding, record }))?;
        }
        Command::Diagram { graph, emb, format, out } => {
            no_format("diagram", format, &[Format::Json, Format::Dot])?;
            let (g, _) = load_graph(&graph)?;
            let (e, _) = load_embedding(&g, &emb)?;
            let fd = build_diagram(&g, &trace_faces(&g, &e));
            if let Some(path) = &out {
                fs::write(path, to_dot(&fd)).with_context(|| format!("writing {}", path.display()))?;
            }
            let text = match format {
                Format::Dot => to_dot(&fd),
                _ => json(&DiagramSummary {
                    diagram: &fd,
                    crossings: crossing_pairs(&fd),
                    saturated_vertices: saturated_vertices(&fd, &g),
                }),
            };
            emit(None, &text)?;
        }
        Command::Reduce { graph, emb, budget, out } => {
            let (g, _) = load_graph(&graph)?;
            let (e, rng) = load_embedding(&g, &emb)?;
            let seq = match budget {
                None => greedy_reduce(&g, &e).1,
                Some(budget) => {
                    let Some(mut rng) = rng else {
                        bail!("--budget runs the randomized cascade and needs --seed");
                    };
                    plus_cascade(&g, &e, budget, &mut rng).1
                }
            };
            emit(out.as_deref(), &json(&seq))?;
        }
        Command::Search { graph, embedding, cap, out } => {
            let (g, _) = load_graph(&graph)?;
            let rotation = match &embedding {
                Some(path) => read_embedding(&g, path)?.rotation,
                None => Embedding::canonical(&g).rotation,
            };
            let outcome = search_circular_exhaustive(&g, &rotation, cap).context("--cap")?;
            emit(out.as_deref(), &json(&outcome))?;
        }
        Command::MatchingBound { graph, out } => {
            let (g, _) = load_graph(&graph)?;
            let (embedding, matching) = matching_bound_embedding(&g)?;
            let fs = trace_faces(&g, &embedding);
            let report = MatchingOutput { matching, counts: count_classes(&fs), faces: fs.face_count(), embedding };
            emit(out.as_deref(), &json(&report))?;
        }
        Command::Enumerate { graph, cap, signatures_only, workers, out } => {
            let (g, id) = load_graph(&graph)?;
            let space = if signatures_only { Space::SignaturesOnly } else { Space::Full };
            let summary = summarize(&g, &id, space, cap, workers).context("--cap")?;
            if let Some(path) = &out {
                let file = fs::File::create(path).with_context(|| format!("writing {}", path.display()))?;
                write_config_csv(&g, space, cap, std::io::BufWriter::new(file))?;
            }
            emit(None, &json(&summary))?;
        }
        Command::Experiment { graph, samples, seed, workers, format, cap, sweep, out } => {
            no_format("experiment", format, &[Format::Json, Format::Csv])?;
            if samples == 0 {
                bail!("--samples must be at least 1");
            }
            if !sweep.is_empty() {
                let rows = sweep_families(&sweep, samples, seed).context("--sweep")?;
                let text = if format == Format::Csv { sweep_csv(&rows) } else { json(&rows) };
                emit(out.as_deref(), &text)?;
                return Ok(0);
            }
            let (g, id) = load_graph(&graph)?;
            let mut report = monte_carlo_classes(&g, &id, samples, seed, workers);
            if let Some(cap) = cap {
                let exact = exact_expected_classes(&g, cap).context("--cap")?.as_f64();
                report.exact = Some(PerClass { bad: exact[0], good: exact[1], regular: exact[2] });
            }
            for (name, d) in ["bad", "good", "regular"].iter().zip(report.deviation().as_array()) {
                eprintln!("{name}: mean - m/3 = {d:+.6}");
            }
            let text = match format {
                Format::Csv => format!("{}\n{}\n", ExperimentReport::CSV_HEADER, report.csv_row()),
                _ => json(&report),
            };
            emit(out.as_deref(), &text)?;
        }
        Command::CheckProperties { graph, emb, samples, cap, out } => {
            let (g, _) = load_graph(&graph)?;
            let (first, rng) = load_embedding(&g, &emb)?;
            let mut violations = check_embedding(&g, &first);
            let mut checked = 1;
            if let Some(mut rng) = rng.filter(|_| emb.embedding.is_none()) {
                while checked < samples {
                    violations.extend(check_embedding(&g, &random_embedding(&g, &mut rng)));
                    checked += 1;
                }
            }
            if let Some(cap) = cap {
                violations.extend(verify_property6(&g, cap).context("--cap")?.as_violations());
            }
            let failed = !violations.is_empty();
            for v in &violations {
                eprintln!("falsified {:?}: {}", v.claim, v.detail);
            }
            let report = PropertyReport { embeddings_checked: checked, minimum_checked: cap.is_some(), violations };
            emit(out.as_deref(), &json(&report))?;
            if failed {
                return Ok(EXIT_FALSIFIED);
            }
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_INPUT) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}
