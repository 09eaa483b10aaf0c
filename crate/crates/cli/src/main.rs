//! Batch front end: graphs come from files, results go to stdout as JSON or
//! text, verification suites drive the exit code.
//!
//! Exit codes: 0 success / all checks pass, 1 check failure, 2 usage or
//! input error, 3 resource budget exceeded.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use bettiblocks::block::{block_structure, decompose};
use bettiblocks::classify::classify;
use bettiblocks::graph::{parse_graph, parse_graph6};
use bettiblocks::groebner::{binomial_generators, buchberger_initial_ideal, initial_ideal};
use bettiblocks::harness::{run_suite, summarize, CorpusSpec, Verdict, ALL_CHECKS};
use bettiblocks::resolutions::{betti_binomial, betti_monomial};
use bettiblocks::{Config, Error, Graph};

#[derive(Parser)]
#[command(
    name = "bettiblocks",
    about = "Binomial edge ideals of block graphs: Groebner bases, Betti tables, and \
             extremal-Betti verification",
    version
)]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GlobalOpts {
    /// Field characteristic (0 = rationals where supported, else a prime)
    #[arg(long = "char", global = true, default_value_t = 2)]
    characteristic: u32,
    /// Confirmation prime used by the verification suite
    #[arg(long, global = true, default_value_t = 32003)]
    confirm_char: u32,
    /// Worker threads for suite runs (0 = all cores)
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    /// Seed for generated corpora
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Include wall-clock timings in text output
    #[arg(long, global = true)]
    timings: bool,
    /// Budget: max lcm-lattice elements
    #[arg(long, global = true)]
    max_lattice: Option<usize>,
    /// Budget: max variables for the monomial engine
    #[arg(long, global = true)]
    max_monomial_vars: Option<usize>,
    /// Budget: max ring variables (2n) for Buchberger
    #[arg(long, global = true)]
    max_groebner_vars: Option<usize>,
    /// Budget: max ring variables (2n) for full binomial tables
    #[arg(long, global = true)]
    max_koszul_full_vars: Option<usize>,
    /// Budget: max ring variables (2n) for windowed binomial queries
    #[arg(long, global = true)]
    max_koszul_window_vars: Option<usize>,
    /// Budget: max nonzeros in one strand matrix
    #[arg(long, global = true)]
    max_matrix_nonzeros: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BettiSide {
    Monomial,
    Binomial,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GroebnerSide {
    Initial,
    Buchberger,
    Both,
}

#[derive(Subcommand)]
enum Command {
    /// Block structure and decomposition of a graph
    Analyze {
        #[arg(long)]
        graph: PathBuf,
        /// Input is graph6 rather than an edge list
        #[arg(long)]
        graph6: bool,
        /// Analyze each connected component separately
        #[arg(long)]
        per_component: bool,
        /// Write a DOT rendering of the graph to this path
        #[arg(long)]
        emit_dot: Option<PathBuf>,
    },
    /// Generators of the binomial edge ideal and its lex initial ideal
    Groebner {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        graph6: bool,
        /// Which initial-ideal route to print (both also cross-checks them)
        #[arg(long, value_enum, default_value_t = GroebnerSide::Both)]
        side: GroebnerSide,
    },
    /// Graded Betti tables of S/in(J_G) and S/J_G
    Betti {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        graph6: bool,
        #[arg(long, value_enum, default_value_t = BettiSide::Both)]
        side: BettiSide,
        /// Restrict the binomial side to positions "i,j;i,j;..."
        #[arg(long)]
        window: Option<String>,
        /// Write a DOT rendering of the graph to this path
        #[arg(long)]
        emit_dot: Option<PathBuf>,
    },
    /// Single-extremal-Betti classification of a block graph
    Classify {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        graph6: bool,
    },
    /// Run verification checks over a corpus
    Verify {
        /// Corpus spec: exhaustive:n<=6 | cliques:2..6 |
        /// random:count=100,nmax=12[,maxclique=5][,indecomposable] |
        /// named:k3,paw,...
        #[arg(long)]
        corpus: String,
        /// Comma-separated check names (default: all)
        #[arg(long)]
        checks: Option<String>,
    },
    /// Write a corpus of graphs to a directory
    Generate {
        #[arg(long)]
        corpus: String,
        #[arg(long)]
        out: PathBuf,
    },
}

fn load_graph(path: &PathBuf, graph6: bool) -> Result<Graph, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
    if graph6 {
        parse_graph6(&text)
    } else {
        parse_graph(&text)
    }
}

fn build_config(g: &GlobalOpts) -> Config {
    let mut cfg = Config::default();
    cfg.characteristic = g.characteristic;
    cfg.confirm_characteristic = g.confirm_char;
    cfg.threads = g.threads;
    cfg.seed = g.seed;
    let env_usize = |name: &str| -> Option<usize> {
        std::env::var(name).ok().and_then(|v| v.parse().ok())
    };
    cfg.max_lattice_elements = g
        .max_lattice
        .or_else(|| env_usize("BETTIBLOCKS_MAX_LATTICE"))
        .unwrap_or(cfg.max_lattice_elements);
    cfg.max_monomial_vars = g
        .max_monomial_vars
        .or_else(|| env_usize("BETTIBLOCKS_MAX_MONOMIAL_VARS"))
        .unwrap_or(cfg.max_monomial_vars);
    cfg.max_groebner_vars = g
        .max_groebner_vars
        .or_else(|| env_usize("BETTIBLOCKS_MAX_GROEBNER_VARS"))
        .unwrap_or(cfg.max_groebner_vars);
    cfg.max_koszul_full_vars = g
        .max_koszul_full_vars
        .or_else(|| env_usize("BETTIBLOCKS_MAX_KOSZUL_FULL_VARS"))
        .unwrap_or(cfg.max_koszul_full_vars);
    cfg.max_koszul_window_vars = g
        .max_koszul_window_vars
        .or_else(|| env_usize("BETTIBLOCKS_MAX_KOSZUL_WINDOW_VARS"))
        .unwrap_or(cfg.max_koszul_window_vars);
    cfg.max_matrix_nonzeros = g
        .max_matrix_nonzeros
        .or_else(|| env_usize("BETTIBLOCKS_MAX_MATRIX_NNZ"))
        .unwrap_or(cfg.max_matrix_nonzeros);
    cfg
}

fn parse_window(s: &str) -> Result<Vec<(usize, usize)>, Error> {
    s.split(';')
        .map(|pair| {
            let (i, j) = pair
                .split_once(',')
                .ok_or_else(|| Error::InvalidInput(format!("bad window entry {pair:?}")))?;
            Ok((
                i.trim()
                    .parse()
                    .map_err(|_| Error::InvalidInput(format!("bad window entry {pair:?}")))?,
                j.trim()
                    .parse()
                    .map_err(|_| Error::InvalidInput(format!("bad window entry {pair:?}")))?,
            ))
        })
        .collect()
}

fn run(cli: Cli) -> Result<i32, Error> {
    let cfg = build_config(&cli.global);
    let format = cli.global.format;
    match cli.command {
        Command::Analyze {
            graph,
            graph6,
            per_component,
            emit_dot,
        } => {
            let g = load_graph(&graph, graph6)?;
            if let Some(path) = emit_dot {
                std::fs::write(&path, g.to_dot())
                    .map_err(|e| Error::InvalidInput(format!("cannot write dot: {e}")))?;
            }
            let analyze_one = |h: &Graph| -> Result<serde_json::Value, Error> {
                let bs = block_structure(h)?;
                let dec = decompose(h)?;
                Ok(serde_json::json!({
                    "n": bs.n,
                    "edges": bs.edges,
                    "blocks": bs.blocks,
                    "cutpoints": bs.cutpoints,
                    "maximal_cliques": bs.maximal_cliques,
                    "cdeg": bs.cdeg,
                    "free_vertices": bs.free_vertices,
                    "inner_vertices": bs.inner_vertices,
                    "f": bs.f,
                    "i": bs.i,
                    "decomposition": {
                        "s": dec.s,
                        "gluing_vertices": dec.gluing_vertices,
                        "components": dec.components.iter().map(|c| serde_json::json!({
                            "n": c.graph.n(),
                            "edges": c.graph.edges(),
                            "labels": c.labels,
                        })).collect::<Vec<_>>(),
                    },
                }))
            };
            let out = if per_component {
                let comps = g.connected_components();
                let mut parts = Vec::new();
                for comp in comps {
                    let (h, labels) = g.induced_subgraph(&comp)?;
                    let mut v = analyze_one(&h)?;
                    v["labels"] = serde_json::json!(labels);
                    parts.push(v);
                }
                serde_json::json!({"components": parts})
            } else {
                analyze_one(&g)?
            };
            match format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&out).unwrap()),
                Format::Text => println!("{}", serde_json::to_string_pretty(&out).unwrap()),
            }
            Ok(0)
        }
        Command::Groebner { graph, graph6, side } => {
            let g = load_graph(&graph, graph6)?;
            let n = g.n();
            let gens = binomial_generators(&g);
            let mut out = serde_json::json!({
                "n": n,
                "binomial_generators": gens.iter().map(|b| b.render(n)).collect::<Vec<_>>(),
            });
            let ini = (side != GroebnerSide::Buchberger).then(|| initial_ideal(&g));
            if let Some(ini) = &ini {
                out["initial_ideal"] = serde_json::json!(ini.render(n));
            }
            if side != GroebnerSide::Initial {
                let bini = buchberger_initial_ideal(&g, &cfg)?;
                out["buchberger_initial_ideal"] = serde_json::json!(bini.render(n));
                if let Some(ini) = &ini {
                    let agree = *ini == bini;
                    out["oracle_agreement"] = serde_json::json!(agree);
                    if !agree {
                        println!("{}", serde_json::to_string_pretty(&out).unwrap());
                        return Ok(1);
                    }
                }
            }
            match format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&out).unwrap()),
                Format::Text => {
                    println!("binomial edge ideal generators:");
                    for s in out["binomial_generators"].as_array().unwrap() {
                        println!("  {}", s.as_str().unwrap());
                    }
                    if let Some(list) = out.get("initial_ideal") {
                        println!("lex initial ideal (admissible paths):");
                        for s in list.as_array().unwrap() {
                            println!("  {}", s.as_str().unwrap());
                        }
                    }
                    if let Some(list) = out.get("buchberger_initial_ideal") {
                        println!("lex initial ideal (Buchberger):");
                        for s in list.as_array().unwrap() {
                            println!("  {}", s.as_str().unwrap());
                        }
                    }
                }
            }
            Ok(0)
        }
        Command::Betti {
            graph,
            graph6,
            side,
            window,
            emit_dot,
        } => {
            let g = load_graph(&graph, graph6)?;
            if let Some(path) = emit_dot {
                std::fs::write(&path, g.to_dot())
                    .map_err(|e| Error::InvalidInput(format!("cannot write dot: {e}")))?;
            }
            let window = window.as_deref().map(parse_window).transpose()?;
            let mut out = serde_json::Map::new();
            let mut text = String::new();
            if side != BettiSide::Binomial {
                let mb = betti_monomial(&initial_ideal(&g), cfg.characteristic, &cfg)?;
                out.insert("monomial".into(), mb.table.to_json());
                text.push_str(&format!("S/in(J_G) over F_{}\n{}\n", cfg.characteristic, mb.table.render()));
            }
            if side != BettiSide::Monomial {
                let bb = betti_binomial(&g, cfg.characteristic, window.as_deref(), &cfg)?;
                out.insert("binomial".into(), bb.table.to_json());
                text.push_str(&format!("S/J_G over F_{}\n{}\n", cfg.characteristic, bb.table.render()));
            }
            match format {
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&serde_json::Value::Object(out)).unwrap()
                ),
                Format::Text => print!("{text}"),
            }
            Ok(0)
        }
        Command::Classify { graph, graph6 } => {
            let g = load_graph(&graph, graph6)?;
            let v = classify(&g)?;
            match format {
                Format::Json | Format::Text => {
                    println!("{}", serde_json::to_string_pretty(&v).unwrap())
                }
            }
            Ok(0)
        }
        Command::Verify { corpus, checks } => {
            let spec = CorpusSpec::parse(&corpus)?;
            let corpus = spec.build(cfg.seed)?;
            let checks: Vec<String> = match checks {
                None => ALL_CHECKS.iter().map(|s| s.to_string()).collect(),
                Some(list) => list.split(',').map(|s| s.trim().to_string()).collect(),
            };
            let reports = run_suite(&corpus, &checks, &cfg)?;
            for r in &reports {
                println!("{}", serde_json::to_string(r).unwrap());
            }
            let summary = summarize(&reports);
            if cli.global.timings || format == Format::Text {
                let mut per_claim: BTreeMap<&str, (usize, usize, usize, u128)> = BTreeMap::new();
                for r in &reports {
                    let e = per_claim.entry(r.claim.as_str()).or_insert((0, 0, 0, 0));
                    match r.verdict {
                        Verdict::Pass => e.0 += 1,
                        Verdict::Fail => e.1 += 1,
                        Verdict::SkippedBudget => e.2 += 1,
                    }
                    e.3 += r.wall_ms;
                }
                for (claim, (p, f, s, ms)) in per_claim {
                    eprintln!("{claim}: pass {p}, fail {f}, skipped {s} ({ms} ms)");
                }
            }
            eprintln!(
                "total: pass {}, fail {}, skipped {}",
                summary.pass, summary.fail, summary.skipped
            );
            Ok(if summary.fail > 0 { 1 } else { 0 })
        }
        Command::Generate { corpus, out } => {
            let spec = CorpusSpec::parse(&corpus)?;
            let graphs = spec.build(cfg.seed)?;
            std::fs::create_dir_all(&out)
                .map_err(|e| Error::InvalidInput(format!("cannot create {}: {e}", out.display())))?;
            let mut index = Vec::new();
            for (k, (g, seed)) in graphs.iter().enumerate() {
                let name = format!("g{k:04}.txt");
                std::fs::write(out.join(&name), g.to_edge_list())
                    .map_err(|e| Error::InvalidInput(format!("cannot write graph: {e}")))?;
                index.push(serde_json::json!({
                    "file": name,
                    "hash": g.instance_hash(),
                    "n": g.n(),
                    "edges": g.edge_count(),
                    "seed": seed,
                }));
            }
            std::fs::write(
                out.join("index.json"),
                serde_json::to_string_pretty(&index).unwrap(),
            )
            .map_err(|e| Error::InvalidInput(format!("cannot write index: {e}")))?;
            eprintln!("wrote {} graphs to {}", graphs.len(), out.display());
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            let code = match e {
                Error::Budget { .. } => 3,
                Error::Verification(_) => 1,
                _ => 2,
            };
            ExitCode::from(code)
        }
    }
}
