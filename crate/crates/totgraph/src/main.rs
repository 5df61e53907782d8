//! Command-line front end: ring inspection, graph/coloring/solver runs,
//! Latin-sum arrays, and the verification suites.

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use std::path::PathBuf;
use totgraph::coloring::{color_reg, color_reg_odd, color_total, verify_coloring, Coloring};
use totgraph::graph::{total_graph, Graph};
use totgraph::latin::{build_latin_sum, build_latin_sum_reg, is_latin_sum};
use totgraph::ring::{ring_from_spec, FiniteRing};
use totgraph::solver::{chromatic_number, clique_number, Budget};
use totgraph::verify::{
    explore_conjecture, verify_reg_theorems, verify_total_theorem, VerificationReport,
    VerifyOptions,
};

#[derive(Parser)]
#[command(
    name = "totgraph",
    about = "Total graphs of finite commutative rings: construction, coloring, certification"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Inspect rings
    Ring {
        #[command(subcommand)]
        cmd: RingCmd,
    },
    /// Build graphs and export them
    Graph {
        #[command(subcommand)]
        cmd: GraphCmd,
    },
    /// Run a coloring construction
    Color(ColorArgs),
    /// Run the exact solvers
    Solve(SolveArgs),
    /// Build and check a Latin-sum array
    Latin(LatinArgs),
    /// Certify the chromatic/clique values over a ring catalog
    Verify {
        #[command(subcommand)]
        cmd: VerifyCmd,
    },
    /// Gather evidence on rings outside the certified branches
    Explore {
        #[command(subcommand)]
        cmd: ExploreCmd,
    },
}

#[derive(Subcommand)]
enum RingCmd {
    /// Print order, units, zero-divisors, radical and maximal ideals
    Info {
        /// Ring spec, e.g. "Z12" or "Z4 x GF(9)"
        spec: String,
        /// Write the JSON description to a file ("-" for stdout)
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum GraphCmd {
    /// Build the total graph or an induced subgraph
    Build {
        #[arg(long)]
        ring: String,
        #[arg(long, value_enum, default_value_t = GraphKind::Total)]
        kind: GraphKind,
        /// Write DOT to this path ("-" for stdout)
        #[arg(long)]
        dot: Option<PathBuf>,
        /// Write JSON to this path ("-" for stdout)
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

#[derive(Args)]
struct ColorArgs {
    #[arg(long)]
    ring: String,
    #[arg(long, value_enum, default_value_t = GraphKind::Total)]
    kind: GraphKind,
    /// Write the coloring JSON to this path ("-" for stdout)
    #[arg(long)]
    json: Option<PathBuf>,
    /// Write DOT with per-vertex color attributes to this path
    #[arg(long)]
    dot: Option<PathBuf>,
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long)]
    ring: String,
    #[arg(long, value_enum, default_value_t = GraphKind::Total)]
    kind: GraphKind,
    #[arg(long, value_enum)]
    what: SolveWhat,
    /// Time budget in seconds
    #[arg(long, default_value_t = 30)]
    timeout: u64,
    /// Search-node budget
    #[arg(long, default_value_t = 10_000_000)]
    max_nodes: u64,
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args)]
struct LatinArgs {
    #[arg(long)]
    f1: String,
    #[arg(long)]
    f2: String,
    /// Build the array over the nonzero elements instead
    #[arg(long)]
    reg: bool,
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args, Clone)]
struct SuiteArgs {
    /// Block pool (comma separated specs); defaults to the standard pool
    #[arg(long, value_delimiter = ',')]
    pool: Option<Vec<String>>,
    #[arg(long)]
    max_order: Option<u64>,
    #[arg(long)]
    solver_cap: Option<u64>,
    /// Write the JSON report here
    #[arg(long)]
    report: Option<PathBuf>,
    /// Write a CSV report here
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// Total graph and zero-divisor subgraph values
    Total(SuiteArgs),
    /// Regular subgraph values
    Reg(SuiteArgs),
}

#[derive(Subcommand)]
enum ExploreCmd {
    /// Solver-assisted evidence for the conjectured identity
    Conjecture(SuiteArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GraphKind {
    Total,
    Zdiv,
    Reg,
}

impl GraphKind {
    fn name(self) -> &'static str {
        match self {
            GraphKind::Total => "total",
            GraphKind::Zdiv => "zdiv",
            GraphKind::Reg => "reg",
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SolveWhat {
    Chi,
    Omega,
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            std::process::exit(2);
        }
    }
}

fn write_out(path: &PathBuf, content: &str) -> Result<()> {
    if path.as_os_str() == "-" {
        print!("{content}");
        Ok(())
    } else {
        std::fs::write(path, content).with_context(|| format!("writing {}", path.display()))
    }
}

fn build_graph(ring: &FiniteRing, kind: GraphKind) -> Result<Graph> {
    let total = total_graph(ring)?;
    Ok(match kind {
        GraphKind::Total => total,
        GraphKind::Zdiv => total.induced(ring.zero_divisors()),
        GraphKind::Reg => total.induced(&ring.regular_elements()),
    })
}

/// The construction used by `color --kind`: total-graph dispatch, its
/// restriction for the zero-divisor subgraph, and the regular-subgraph
/// constructions with a solver fallback outside their hypotheses.
fn build_coloring(
    ring: &FiniteRing,
    kind: GraphKind,
    budget: &Budget,
) -> Result<(Graph, Coloring)> {
    let g = build_graph(ring, kind)?;
    let coloring = match kind {
        GraphKind::Total => color_total(ring, &g, budget),
        GraphKind::Zdiv => {
            let total = total_graph(ring)?;
            color_total(ring, &total, budget).restrict(ring.zero_divisors())
        }
        GraphKind::Reg => {
            let rf = ring.residue_fields();
            if rf.iter().all(|&(_, c)| c != 2) {
                color_reg_odd(ring)?
            } else if rf[0].1 == 2 {
                color_reg(ring)?
            } else {
                let out = chromatic_number(&g, budget);
                out.coloring
            }
        }
    };
    Ok((g, coloring))
}

fn run(cli: Cli) -> Result<i32> {
    match cli.cmd {
        Cmd::Ring {
            cmd: RingCmd::Info { spec, json },
        } => {
            let ring = ring_from_spec(&spec)?;
            let desc = ring.descriptor();
            println!("ring        {}", desc.canonical_string());
            println!("order       {}", ring.order());
            println!(
                "units       {}",
                ring.regular_elements()
                    .iter()
                    .map(|&x| ring.element_label(x))
                    .collect::<Vec<_>>()
                    .join(" ")
            );
            println!(
                "zerodivs    {}",
                ring.zero_divisors()
                    .iter()
                    .map(|&x| ring.element_label(x))
                    .collect::<Vec<_>>()
                    .join(" ")
            );
            println!(
                "jacobson    {}",
                ring.jacobson()
                    .members()
                    .iter()
                    .map(|&x| ring.element_label(x))
                    .collect::<Vec<_>>()
                    .join(" ")
            );
            for m in ring.maximal_ideals() {
                println!(
                    "maximal     size {} residue {} (char {}): {}",
                    m.ideal.len(),
                    m.residue_size,
                    m.residue_char,
                    m.ideal
                        .members()
                        .iter()
                        .map(|&x| ring.element_label(x))
                        .collect::<Vec<_>>()
                        .join(" ")
                );
            }
            if let Some(path) = json {
                write_out(&path, &serde_json::to_string_pretty(&ring.to_json())?)?;
            }
            Ok(0)
        }
        Cmd::Graph {
            cmd:
                GraphCmd::Build {
                    ring,
                    kind,
                    dot,
                    json,
                },
        } => {
            let r = ring_from_spec(&ring)?;
            let g = build_graph(&r, kind)?;
            println!(
                "{} graph of {}: {} vertices, {} edges",
                kind.name(),
                r.descriptor().canonical_string(),
                g.vertex_count(),
                g.edge_count()
            );
            if let Some(path) = dot {
                write_out(&path, &g.to_dot(Some(&r), None))?;
            }
            if let Some(path) = json {
                write_out(&path, &serde_json::to_string_pretty(&g.to_json(Some(&r)))?)?;
            }
            Ok(0)
        }
        Cmd::Color(args) => {
            let ring = ring_from_spec(&args.ring)?;
            let budget = Budget::default();
            let (g, coloring) = build_coloring(&ring, args.kind, &budget)?;
            let verdict = verify_coloring(&g, &coloring)?;
            println!(
                "{} graph of {}: {} colors ({})",
                args.kind.name(),
                ring.descriptor().canonical_string(),
                coloring.k(),
                coloring.provenance
            );
            for (c, class) in coloring.classes().iter().enumerate() {
                let members: Vec<String> = class
                    .iter()
                    .map(|&v| {
                        let e = g.labels().map_or(v, |l| l[v]);
                        ring.element_label(e)
                    })
                    .collect();
                println!("  color {c}: {}", members.join(" "));
            }
            match verdict {
                None => println!("proper: yes"),
                Some((u, v)) => println!("proper: NO, edge ({u}, {v})"),
            }
            if let Some(path) = args.json {
                let labels = g.labels().map(|l| l.to_vec());
                let value = coloring.to_json(
                    &ring.descriptor().canonical_string(),
                    args.kind.name(),
                    labels.as_deref(),
                );
                write_out(&path, &serde_json::to_string_pretty(&value)?)?;
            }
            if let Some(path) = args.dot {
                write_out(&path, &g.to_dot(Some(&ring), Some(coloring.colors())))?;
            }
            Ok(if verdict.is_none() { 0 } else { 1 })
        }
        Cmd::Solve(args) => {
            let ring = ring_from_spec(&args.ring)?;
            let g = build_graph(&ring, args.kind)?;
            let budget = Budget {
                max_nodes: args.max_nodes,
                max_millis: args.timeout * 1000,
            };
            let value = match args.what {
                SolveWhat::Chi => {
                    let out = chromatic_number(&g, &budget);
                    let witness: Vec<Vec<usize>> = out
                        .coloring
                        .classes()
                        .iter()
                        .map(|cl| cl.iter().map(|&v| g.labels().map_or(v, |l| l[v])).collect())
                        .collect();
                    if out.exact {
                        println!(
                            "chi = {} ({} nodes, {} ms)",
                            out.upper, out.nodes, out.elapsed_ms
                        );
                    } else {
                        println!(
                            "chi in [{}, {}] (budget exhausted: {} nodes, {} ms)",
                            out.lower, out.upper, out.nodes, out.elapsed_ms
                        );
                    }
                    if out.exact {
                        json!({
                            "what": "chi", "value": out.upper,
                            "witness": {"coloring_classes": witness},
                            "nodes_explored": out.nodes, "elapsed_ms": out.elapsed_ms,
                        })
                    } else {
                        json!({
                            "what": "chi", "bracket": [out.lower, out.upper],
                            "witness": {"coloring_classes": witness},
                            "nodes_explored": out.nodes, "elapsed_ms": out.elapsed_ms,
                        })
                    }
                }
                SolveWhat::Omega => {
                    let out = clique_number(&g, &budget);
                    let witness: Vec<usize> = out
                        .witness
                        .vertices
                        .iter()
                        .map(|&v| g.labels().map_or(v, |l| l[v]))
                        .collect();
                    if out.exact {
                        println!(
                            "omega = {} ({} nodes, {} ms)",
                            out.witness.size(),
                            out.nodes,
                            out.elapsed_ms
                        );
                    } else {
                        println!(
                            "omega >= {} (budget exhausted: {} nodes, {} ms)",
                            out.witness.size(),
                            out.nodes,
                            out.elapsed_ms
                        );
                    }
                    if out.exact {
                        json!({
                            "what": "omega", "value": out.witness.size(),
                            "witness": {"clique": witness},
                            "nodes_explored": out.nodes, "elapsed_ms": out.elapsed_ms,
                        })
                    } else {
                        json!({
                            "what": "omega", "bracket": [out.witness.size(), g.vertex_count()],
                            "witness": {"clique": witness},
                            "nodes_explored": out.nodes, "elapsed_ms": out.elapsed_ms,
                        })
                    }
                }
            };
            if let Some(path) = args.json {
                write_out(&path, &serde_json::to_string_pretty(&value)?)?;
            }
            Ok(0)
        }
        Cmd::Latin(args) => {
            let f1 = ring_from_spec(&args.f1)?;
            let f2 = ring_from_spec(&args.f2)?;
            let arr = if args.reg {
                build_latin_sum_reg(&f1, &f2)?
            } else {
                build_latin_sum(&f1, &f2)?
            };
            let col_heads: Vec<String> = arr
                .cols
                .labels
                .iter()
                .map(|&l| f2.element_label(l))
                .collect();
            println!("        {}", col_heads.join("\t"));
            for i in 0..arr.n_rows() {
                let cells: Vec<&str> = (0..arr.n_cols())
                    .map(|j| arr.symbol_names[arr.entry(i, j) as usize].as_str())
                    .collect();
                println!(
                    "{:>6}  {}",
                    f1.element_label(arr.rows.labels[i]),
                    cells.join("\t")
                );
            }
            println!("alphabet size {}", arr.alphabet_size);
            let valid = is_latin_sum(&arr).is_none();
            println!("latin-sum: {}", if valid { "valid" } else { "INVALID" });
            if let Some(path) = args.json {
                write_out(&path, &serde_json::to_string_pretty(&arr.to_json())?)?;
            }
            Ok(if valid { 0 } else { 1 })
        }
        Cmd::Verify { cmd } => {
            let (suite, report) = match cmd {
                VerifyCmd::Total(args) => (args.clone(), verify_total_theorem(&options_of(&args))?),
                VerifyCmd::Reg(args) => (args.clone(), verify_reg_theorems(&options_of(&args))?),
            };
            finish_suite(&suite, report)
        }
        Cmd::Explore { cmd } => {
            let ExploreCmd::Conjecture(args) = cmd;
            let report = explore_conjecture(&options_of(&args))?;
            finish_suite(&args, report)
        }
    }
}

fn options_of(args: &SuiteArgs) -> VerifyOptions {
    let mut options = VerifyOptions::default();
    if let Some(pool) = &args.pool {
        options.pool = pool.clone();
    }
    if let Some(m) = args.max_order {
        options.max_order = m;
    }
    if let Some(s) = args.solver_cap {
        options.solver_cap = s;
    }
    options
}

fn finish_suite(args: &SuiteArgs, report: VerificationReport) -> Result<i32> {
    for row in &report.rows {
        let solver = match &row.solver {
            Some(v) => format!(
                " solver chi={} omega={}",
                v.chi.map_or("?".into(), |x| x.to_string()),
                v.omega.map_or("?".into(), |x| x.to_string())
            ),
            None => String::new(),
        };
        println!(
            "{:<9} {:<24} {:<5} {:<9} predicted={} constructed={} omega={}{}",
            row.status.to_string(),
            row.ring,
            row.kind,
            row.branch,
            row.predicted,
            row.constructed_k,
            row.omega,
            solver
        );
    }
    let s = report.summary;
    println!(
        "summary: pass={} exception={} open={} fail={}",
        s.pass, s.exception, s.open, s.fail
    );
    if let Some(path) = &args.report {
        write_out(path, &report.to_json_string())?;
    }
    if let Some(path) = &args.csv {
        write_out(path, &report.to_csv_string())?;
    }
    if s.fail > 0 {
        bail!("{} FAIL rows", s.fail);
    }
    Ok(0)
}
