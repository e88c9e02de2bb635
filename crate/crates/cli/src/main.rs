mod report;

use std::process::ExitCode;
use std::time::Instant;

use anyhow::Result;
use chromix_core::format::{parse_any, parse_coloring, parse_nmgraph, serialize_nmgraph};
use chromix_core::generators::{kclique_gadget, random_low_mad, random_partial_2tree, GenSpec};
use chromix_core::graph::{NmGraph, Signature, UndirectedGraph};
use chromix_core::solver::{
    circular_hom, exact_chromatic, find_hom, two_tree_hom, ChromaticOutcome, HomOutcome,
    SearchConfig,
};
use chromix_core::sparsity::{acyclic_coloring_construct, arboricity, densest_subgraph};
use chromix_core::targets::{t03, t11, walecki_target};
use chromix_core::verify::{
    expansion_ok, forbidden_config_free, has_p21, is_acyclic_coloring, regularity_check,
    AcyclicViolation, Verdict,
};
use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use report::{Inputs, Outcome, Report, EXIT_BUDGET, EXIT_FALSE, EXIT_OK, EXIT_USAGE};

#[derive(Parser)]
#[command(
    name = "chromix",
    version,
    about = "Homomorphisms and colorings of (n,m)-graphs"
)]
struct Cli {
    /// Emit one JSON report on standard output.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for parallel checks.
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Search node budget.
    #[arg(long, global = true, default_value_t = 50_000_000)]
    budget: u64,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Emit a target graph.
    #[command(subcommand)]
    Target(TargetCmd),
    /// Check a structural property.
    #[command(subcommand)]
    Check(CheckCmd),
    /// Homomorphism search.
    #[command(subcommand)]
    Hom(HomCmd),
    /// Exact (n,m)-chromatic number.
    Chrom {
        graph: String,
        #[arg(long)]
        max_k: Option<usize>,
    },
    /// Maximum average degree.
    Mad { graph: String },
    /// Arboricity with a forest decomposition.
    Arboricity {
        graph: String,
        #[arg(long)]
        emit_forests: bool,
    },
    /// Acyclic coloring from digit layers.
    AcyclicColor {
        graph: String,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        m: u32,
    },
    /// Generate instances.
    #[command(subcommand)]
    Gen(GenCmd),
}

#[derive(Subcommand)]
enum TargetCmd {
    Walecki {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        m: u32,
    },
    T03,
    T11,
}

#[derive(Subcommand)]
enum CheckCmd {
    P21 {
        graph: String,
    },
    Expansion {
        graph: String,
    },
    Regular {
        graph: String,
        #[arg(long)]
        d: usize,
    },
    Forbidden {
        graph: String,
    },
    Acyclic {
        graph: String,
        coloring: String,
    },
}

#[derive(Subcommand)]
enum HomCmd {
    Find {
        source: String,
        target: String,
    },
    TwoTree {
        source: String,
        target: String,
    },
    Circular {
        graph: String,
        #[arg(long = "g")]
        g: usize,
    },
}

#[derive(Subcommand)]
enum GenCmd {
    Gadget {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        m: u32,
    },
    P2t {
        #[arg(long)]
        nv: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        m: u32,
        #[arg(long, default_value_t = 0.2)]
        delete_prob: f64,
    },
    Lowmad {
        #[arg(long)]
        nv: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        m: u32,
    },
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let started = Instant::now();
    let want_json = argv.iter().skip(1).any(|a| a == "--json");
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            if want_json && code == EXIT_USAGE {
                let report = Report {
                    command: argv,
                    inputs: Inputs::default(),
                    started,
                };
                let out = Outcome::new(json!({ "error": e.to_string() }), "", code);
                println!("{}", report.render(&out));
            }
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(w) = cli.workers {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(w)
            .build_global()
        {
            eprintln!("warning: {e}");
        }
    }
    let cfg = SearchConfig {
        node_budget: cli.budget,
        ..SearchConfig::default()
    };
    let mut inputs = Inputs::default();
    let outcome = run(&cli.cmd, &cfg, &mut inputs).unwrap_or_else(|e| {
        eprintln!("error: {e:#}");
        let budget = matches!(
            e.downcast_ref::<chromix_core::Error>(),
            Some(chromix_core::Error::BudgetExhausted(_))
        );
        let code = if budget { EXIT_BUDGET } else { EXIT_USAGE };
        Outcome::new(json!({ "error": format!("{e:#}") }), "", code)
    });
    if cli.json {
        let report = Report {
            command: argv,
            inputs,
            started,
        };
        println!("{}", report.render(&outcome));
    } else if !outcome.text.is_empty() {
        print!("{}", outcome.text);
        if !outcome.text.ends_with('\n') {
            println!();
        }
    }
    ExitCode::from(outcome.exit)
}

fn sig(n: u32, m: u32) -> Result<Signature> {
    Ok(Signature::new(n, m)?)
}

fn read_nm(inputs: &mut Inputs, path: &str) -> Result<NmGraph> {
    Ok(parse_nmgraph(&inputs.read(path)?)?)
}

fn read_undirected(inputs: &mut Inputs, path: &str) -> Result<UndirectedGraph> {
    Ok(parse_any(&inputs.read(path)?)?.underlying())
}

fn graph_outcome(g: &NmGraph) -> Outcome {
    let text = serialize_nmgraph(g);
    let s = g.signature();
    let result = json!({
        "signature": [s.n(), s.m()],
        "order": g.order(),
        "adjacencies": g.adjacency_count(),
        "graph": text,
    });
    Outcome::new(result, text, EXIT_OK)
}

fn verdict_outcome<W>(v: Verdict<W>, describe: impl FnOnce(&W) -> (Value, String)) -> Outcome {
    match v {
        Verdict::Holds => Outcome::new(json!({ "holds": true }), "holds: true\n", EXIT_OK),
        Verdict::Fails(w) => {
            let (value, text) = describe(&w);
            Outcome::new(
                json!({ "holds": false, "witness": value }),
                format!("holds: false\nwitness: {text}\n"),
                EXIT_FALSE,
            )
        }
    }
}

fn list(xs: &[usize]) -> String {
    xs.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn hom_outcome(out: HomOutcome) -> Outcome {
    match out {
        HomOutcome::Found(h) => Outcome::new(
            json!({ "outcome": "found", "map": h.map }),
            format!("outcome: found\nmap: {}\n", list(&h.map)),
            EXIT_OK,
        ),
        HomOutcome::NoHomomorphism => {
            Outcome::new(json!({ "outcome": "none" }), "outcome: none\n", EXIT_FALSE)
        }
        HomOutcome::BudgetExhausted => Outcome::new(
            json!({ "outcome": "budget" }),
            "outcome: budget\n",
            EXIT_BUDGET,
        ),
    }
}

fn run(cmd: &Cmd, cfg: &SearchConfig, inputs: &mut Inputs) -> Result<Outcome> {
    Ok(match cmd {
        Cmd::Target(t) => graph_outcome(&match t {
            TargetCmd::Walecki { n, m } => walecki_target(sig(*n, *m)?)?,
            TargetCmd::T03 => t03(),
            TargetCmd::T11 => t11(),
        }),
        Cmd::Check(c) => check(c, inputs)?,
        Cmd::Hom(h) => hom_outcome(match h {
            HomCmd::Find { source, target } => {
                let g = read_nm(inputs, source)?;
                let t = read_nm(inputs, target)?;
                find_hom(&g, &t, cfg)?
            }
            HomCmd::TwoTree { source, target } => {
                let g = read_nm(inputs, source)?;
                let t = read_nm(inputs, target)?;
                HomOutcome::Found(two_tree_hom(&g, &t)?)
            }
            HomCmd::Circular { graph, g } => {
                circular_hom(&read_undirected(inputs, graph)?, *g, cfg)?
            }
        }),
        Cmd::Chrom { graph, max_k } => {
            let g = read_nm(inputs, graph)?;
            match exact_chromatic(&g, max_k.unwrap_or(g.order()), cfg)? {
                ChromaticOutcome::Exact { k, certificate } => Outcome::new(
                    json!({ "outcome": "exact", "k": k, "partition": certificate.partition }),
                    format!("k: {k}\npartition: {}\n", list(&certificate.partition)),
                    EXIT_OK,
                ),
                ChromaticOutcome::ExceedsMaxK => Outcome::new(
                    json!({ "outcome": "exceeds_max_k" }),
                    "outcome: exceeds max k\n",
                    EXIT_FALSE,
                ),
                ChromaticOutcome::BudgetExhausted => Outcome::new(
                    json!({ "outcome": "budget" }),
                    "outcome: budget\n",
                    EXIT_BUDGET,
                ),
            }
        }
        Cmd::Mad { graph } => {
            let g = read_undirected(inputs, graph)?;
            let (set, density) = densest_subgraph(&g)?;
            let mad = density * 2;
            Outcome::new(
                json!({ "mad": mad.to_string(), "densest": set }),
                format!("mad: {mad}\ndensest: {}\n", list(&set)),
                EXIT_OK,
            )
        }
        Cmd::Arboricity {
            graph,
            emit_forests,
        } => {
            let g = read_undirected(inputs, graph)?;
            let dec = arboricity(&g)?;
            let forests: Vec<Vec<(usize, usize)>> = (1..=dec.r).map(|q| dec.forest(q)).collect();
            let mut text = format!("arboricity: {}\n", dec.r);
            let mut result = json!({ "arboricity": dec.r });
            if *emit_forests {
                for (q, f) in forests.iter().enumerate() {
                    let edges: Vec<String> = f.iter().map(|(u, v)| format!("{u}-{v}")).collect();
                    text.push_str(&format!("forest {}: {}\n", q + 1, edges.join(" ")));
                }
                result["forests"] = json!(forests);
            }
            Outcome::new(result, text, EXIT_OK)
        }
        Cmd::AcyclicColor { graph, n, m } => {
            let g = read_undirected(inputs, graph)?;
            let out = acyclic_coloring_construct(&g, sig(*n, *m)?, cfg)?;
            let colors = &out.coloring.colors;
            Outcome::new(
                json!({
                    "colors": colors,
                    "palette": out.coloring.palette,
                    "arboricity": out.decomposition.r,
                    "b": out.b,
                    "k": out.k,
                    "bound": out.palette_bound().to_string(),
                }),
                format!(
                    "palette: {}\nbound: {} (k={}, b={}, arboricity={})\ncolors: {}\n",
                    out.coloring.palette,
                    out.palette_bound(),
                    out.k,
                    out.b,
                    out.decomposition.r,
                    list(colors)
                ),
                EXIT_OK,
            )
        }
        Cmd::Gen(g) => graph_outcome(&match g {
            GenCmd::Gadget { k, n, m } => kclique_gadget(*k, sig(*n, *m)?)?,
            GenCmd::P2t {
                nv,
                seed,
                n,
                m,
                delete_prob,
            } => {
                let spec = GenSpec {
                    delete_prob: *delete_prob,
                    ..GenSpec::new(*seed, sig(*n, *m)?)
                };
                random_partial_2tree(*nv, &spec)?
            }
            GenCmd::Lowmad { nv, seed, n, m } => {
                random_low_mad(*nv, &GenSpec::new(*seed, sig(*n, *m)?))?
            }
        }),
    })
}

fn check(cmd: &CheckCmd, inputs: &mut Inputs) -> Result<Outcome> {
    Ok(match cmd {
        CheckCmd::P21 { graph } => verdict_outcome(has_p21(&read_nm(inputs, graph)?), |w| {
            (
                json!({ "u": w.u, "v": w.v, "alpha": w.alpha.value(), "beta": w.beta.value() }),
                format!("u={} v={} alpha={} beta={}", w.u, w.v, w.alpha, w.beta),
            )
        }),
        CheckCmd::Expansion { graph } => {
            verdict_outcome(expansion_ok(&read_nm(inputs, graph)?)?, |w| {
                (
                    json!({ "subset": w.subset, "alpha": w.alpha.value(), "neighborhood": w.neighborhood }),
                    format!(
                        "subset=[{}] alpha={} neighborhood=[{}]",
                        list(&w.subset),
                        w.alpha,
                        list(&w.neighborhood)
                    ),
                )
            })
        }
        CheckCmd::Regular { graph, d } => {
            verdict_outcome(regularity_check(&read_nm(inputs, graph)?, *d), |w| {
                (
                    json!({ "vertex": w.vertex, "alpha": w.alpha.value(), "count": w.count }),
                    format!("vertex={} alpha={} count={}", w.vertex, w.alpha, w.count),
                )
            })
        }
        CheckCmd::Forbidden { graph } => {
            verdict_outcome(forbidden_config_free(&read_nm(inputs, graph)?), |w| {
                (
                    json!({
                        "u": w.u, "y": w.y, "x": w.x, "z": w.z,
                        "alpha": w.alpha.value(), "gamma": w.gamma.value(),
                    }),
                    format!(
                        "u={} y={} x={} z={} alpha={} gamma={}",
                        w.u, w.y, w.x, w.z, w.alpha, w.gamma
                    ),
                )
            })
        }
        CheckCmd::Acyclic { graph, coloring } => {
            let g = read_undirected(inputs, graph)?;
            let colors = parse_coloring(&inputs.read(coloring)?)?;
            verdict_outcome(is_acyclic_coloring(&g, &colors)?, |w| match w {
                AcyclicViolation::NotProper { u, v, color } => (
                    json!({ "kind": "not_proper", "u": u, "v": v, "color": color }),
                    format!("not proper: {u} and {v} share color {color}"),
                ),
                AcyclicViolation::BichromaticCycle { colors, cycle } => (
                    json!({ "kind": "bichromatic_cycle", "colors": [colors.0, colors.1], "cycle": cycle }),
                    format!(
                        "cycle colored {} and {}: {}",
                        colors.0,
                        colors.1,
                        list(cycle)
                    ),
                ),
            })
        }
    })
}
