use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use matchkit_core::count::*;
use matchkit_core::gadgets::*;
use matchkit_core::mixing::*;
use matchkit_core::recognition::*;
use matchkit_core::*;
use serde_json::{json, Map, Value};

const SCHEMA: u32 = 1;

#[derive(Parser)]
#[command(name = "matchkit", version, about = "Perfect matchings, the switch chain and hereditary ergodicity")]
struct Cli {
    /// Search budget for exponential routines (overrides MATCHKIT_BUDGET).
    #[arg(long, global = true)]
    budget: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count perfect matchings exactly.
    Count(CountArgs),
    /// List all perfect matchings.
    Enumerate(EnumerateArgs),
    /// Decide class membership, with a witness for non-members.
    Recognize(RecognizeArgs),
    /// Run the switch chain.
    #[command(subcommand)]
    Chain(ChainCommand),
    /// Build or analyze the transition graph.
    #[command(subcommand)]
    Tgraph(TgraphCommand),
    /// Write a gadget graph as an edge list.
    Gadget(GadgetArgs),
    /// Mixing diagnostics.
    #[command(subcommand)]
    Mix(MixCommand),
}

#[derive(Args)]
struct GraphArg {
    /// Edge-list file: header "n m", then m lines "u v" (1-based).
    #[arg(long)]
    graph: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum Algorithm {
    Auto,
    Cograph,
    Treewidth,
    Cochain,
    Brute,
}

#[derive(Args)]
struct CountArgs {
    #[command(flatten)]
    graph: GraphArg,
    #[arg(long, value_enum, default_value = "auto")]
    algorithm: Algorithm,
    /// Tree decomposition in PACE format.
    #[arg(long)]
    td: Option<PathBuf>,
    /// Also report matchings of every size (cographs only).
    #[arg(long)]
    profile: bool,
}

#[derive(Args)]
struct EnumerateArgs {
    #[command(flatten)]
    graph: GraphArg,
    /// Print at most this many matchings.
    #[arg(long)]
    limit: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Class {
    Och,
    Switchable,
    Qmon,
    Mono,
    Chains,
    Quachains,
    Cograph,
    Cochain,
}

#[derive(Args)]
struct RecognizeArgs {
    #[command(flatten)]
    graph: GraphArg,
    #[arg(long, value_enum)]
    class: Class,
}

#[derive(Subcommand)]
enum ChainCommand {
    /// One trajectory from the first perfect matching.
    Run(ChainRunArgs),
    /// Final states of independent replicas.
    Sample(ChainSampleArgs),
}

#[derive(Args)]
struct ChainRunArgs {
    #[command(flatten)]
    graph: GraphArg,
    #[arg(long)]
    steps: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Include every state of the trajectory.
    #[arg(long)]
    trace: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Tsv,
}

#[derive(Args)]
struct ChainSampleArgs {
    #[command(flatten)]
    graph: GraphArg,
    #[arg(long)]
    steps: u64,
    #[arg(long)]
    samples: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Subcommand)]
enum TgraphCommand {
    /// Write nodes and adjacency to a JSON file.
    Build(TgraphBuildArgs),
    /// Report size, components, diameter and ergodicity.
    Analyze(GraphArg),
}

#[derive(Args)]
struct TgraphBuildArgs {
    #[command(flatten)]
    graph: GraphArg,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Mobius,
    Crossladder,
    Gk,
    Web,
    Annulus,
    Unitinterval,
    Permladder,
    Ladder,
    Fixture,
}

#[derive(Args)]
struct GadgetArgs {
    #[arg(long, value_enum)]
    family: Family,
    /// Size parameter (vertex count for mobius and unitinterval).
    #[arg(long)]
    k: Option<usize>,
    /// Fixture name.
    #[arg(long)]
    name: Option<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Subcommand)]
enum MixCommand {
    /// Conductance, spectral gap and an empirical TV series.
    Analyze(MixArgs),
}

#[derive(Args)]
struct MixArgs {
    #[command(flatten)]
    graph: GraphArg,
    /// "auto" for the exact minimum over all cuts, or a file of transition-graph node ids.
    #[arg(long, default_value = "auto")]
    cut: String,
    /// Comma-separated times for the TV series.
    #[arg(long, value_delimiter = ',')]
    tv: Vec<u64>,
    #[arg(long, default_value_t = 1000)]
    samples: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

enum Failure {
    Usage(String),
    Domain { kind: &'static str, message: String },
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let kind = match e {
            Error::Parse { .. } => "parse",
            Error::VertexOutOfRange { .. } => "vertex_out_of_range",
            Error::SelfLoop(_) => "self_loop",
            Error::DuplicateEdge(..) => "duplicate_edge",
            Error::InvalidMatching(_) => "invalid_matching",
            Error::NoPerfectMatching => "no_perfect_matching",
            Error::BudgetExceeded { .. } => "budget_exceeded",
            Error::NotInClass(_) => "not_in_class",
            Error::InvalidDecomposition(_) => "invalid_decomposition",
            Error::TooLarge { .. } => "too_large",
            Error::InvalidArgument(_) => "invalid_argument",
            Error::UnknownFixture(_) => "unknown_fixture",
        };
        Failure::Domain { kind, message: e.to_string() }
    }
}

type Outcome = std::result::Result<Map<String, Value>, Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn read_file(path: &Path) -> std::result::Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| Failure::Domain { kind: "io", message: format!("{}: {e}", path.display()) })
}

fn write_file(path: &Path, text: &str) -> std::result::Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| Failure::Domain { kind: "io", message: format!("{}: {e}", path.display()) })
}

fn load_graph(arg: &GraphArg) -> std::result::Result<Graph, Failure> {
    Ok(parse_edge_list(&read_file(&arg.graph)?)?)
}

fn one_based(vs: &[usize]) -> Value {
    json!(vs.iter().map(|v| v + 1).collect::<Vec<_>>())
}

fn matching_json(m: &PerfectMatching) -> Value {
    json!(m.edges().iter().map(|&(u, v)| [u + 1, v + 1]).collect::<Vec<_>>())
}

fn witness_json(w: &Witness) -> Value {
    match w {
        Witness::Cycle(c) => json!({ "kind": "cycle", "vertices": one_based(c.vertices()) }),
        Witness::Induced { pattern, vertices } => {
            json!({ "kind": "induced", "pattern": pattern, "vertices": one_based(vertices) })
        }
        Witness::Pre { pattern, vertices, right } => json!({
            "kind": "pre",
            "pattern": pattern,
            "vertices": one_based(vertices),
            "right": one_based(right),
        }),
    }
}

fn payload(pairs: Value) -> Map<String, Value> {
    match pairs {
        Value::Object(m) => m,
        _ => unreachable!("payloads are objects"),
    }
}

fn first_matching(g: &Graph, budget: Budget) -> std::result::Result<PerfectMatching, Failure> {
    find_perfect_matching(g, budget)?.ok_or(Failure::from(Error::NoPerfectMatching))
}

fn count(a: &CountArgs, budget: Budget) -> Outcome {
    let g = load_graph(&a.graph)?;
    if a.td.is_some() && !matches!(a.algorithm, Algorithm::Auto | Algorithm::Treewidth) {
        return Err(usage("--td applies only to --algorithm treewidth"));
    }
    if a.profile && !matches!(a.algorithm, Algorithm::Auto | Algorithm::Cograph) {
        return Err(usage("--profile applies only to --algorithm cograph"));
    }
    let algorithm = match a.algorithm {
        Algorithm::Auto if a.td.is_some() => Algorithm::Treewidth,
        Algorithm::Auto if a.profile => Algorithm::Cograph,
        other => other,
    };
    let mut out = Map::new();
    let (count, method) = match algorithm {
        Algorithm::Auto => {
            let (c, m) = count_pm_auto(&g, DEFAULT_WIDTH_CAP, budget)?;
            if m == CountMethod::Treewidth {
                out.insert("width".into(), json!(minfill_td(&g).width()));
            }
            (c, m)
        }
        Algorithm::Cograph => {
            let t = build_cotree(&g).map_err(|_| Error::NotInClass("cograph"))?;
            let profile = cograph_profile(&t)?;
            if a.profile {
                out.insert("profile".into(), json!(profile.counts.iter().map(|c| c.to_string()).collect::<Vec<_>>()));
            }
            (profile.perfect(), CountMethod::Cograph)
        }
        Algorithm::Cochain => {
            let m = recognize_cochain(&g).ok_or(Error::NotInClass("cochain"))?;
            (count_pm_cochain(&m), CountMethod::Cochain)
        }
        Algorithm::Treewidth => {
            let td = match &a.td {
                Some(path) => {
                    let (td, n) = parse_td(&read_file(path)?)?;
                    if n != g.n() {
                        return Err(Error::InvalidDecomposition(format!(
                            "decomposition has {n} vertices, graph has {}",
                            g.n()
                        ))
                        .into());
                    }
                    td
                }
                None => minfill_td(&g),
            };
            out.insert("width".into(), json!(td.width()));
            (count_pm_td(&g, &make_nice(&td)?)?, CountMethod::Treewidth)
        }
        Algorithm::Brute => (count_perfect_matchings_bruteforce(&g, budget)?.into(), CountMethod::Brute),
    };
    out.insert("count".into(), json!(count.to_string()));
    out.insert("method".into(), json!(method.name()));
    Ok(out)
}

fn enumerate(a: &EnumerateArgs, budget: Budget) -> Outcome {
    let g = load_graph(&a.graph)?;
    let all = enumerate_perfect_matchings(&g, budget)?;
    let shown = a.limit.unwrap_or(all.len()).min(all.len());
    Ok(payload(json!({
        "count": all.len().to_string(),
        "matchings": all[..shown].iter().map(matching_json).collect::<Vec<_>>(),
    })))
}

fn recognize(a: &RecognizeArgs, budget: Budget) -> Outcome {
    let g = load_graph(&a.graph)?;
    let (name, verdict) = match a.class {
        Class::Och => ("och", is_odd_chordal(&g, budget)?),
        Class::Switchable => ("switchable", is_switchable(&g, budget)?),
        Class::Qmon => ("qmon", is_quasimonotone(&g, budget)?),
        Class::Mono => ("mono", is_monotone(&g, budget)?),
        Class::Chains => ("chains", is_chains(&g)),
        Class::Quachains => ("quachains", is_qua_chains(&g)),
        Class::Cograph => ("cograph", is_cograph(&g)),
        Class::Cochain => ("cochain", is_cochain(&g)),
    };
    let mut out = payload(json!({ "class": name, "member": verdict.member }));
    if let Some(w) = &verdict.witness {
        out.insert("witness".into(), witness_json(w));
    }
    Ok(out)
}

fn chain_run(a: &ChainRunArgs, budget: Budget) -> Outcome {
    let g = load_graph(&a.graph)?;
    let m0 = first_matching(&g, budget)?;
    let cfg = ChainConfig { steps: a.steps, seed: a.seed, record_trajectory: a.trace };
    let run = run_chain(&g, &m0, &cfg)?;
    let mut out = payload(json!({
        "seed": a.seed,
        "steps": a.steps,
        "moves": run.moves,
        "start": matching_json(&m0),
        "final": matching_json(&run.final_state),
    }));
    if let Some(t) = &run.trajectory {
        out.insert("trajectory".into(), json!(t.iter().map(matching_json).collect::<Vec<_>>()));
    }
    Ok(out)
}

fn tsv_matching(m: &PerfectMatching) -> String {
    m.edges().iter().map(|&(u, v)| format!("{}-{}", u + 1, v + 1)).collect::<Vec<_>>().join(" ")
}

fn chain_sample(a: &ChainSampleArgs, budget: Budget) -> std::result::Result<Option<Map<String, Value>>, Failure> {
    let g = load_graph(&a.graph)?;
    let m0 = first_matching(&g, budget)?;
    let hist = sample_distribution(&g, &m0, a.steps, a.samples, a.seed)?;
    match a.format {
        Format::Tsv => {
            println!("# seed={} steps={} samples={}", a.seed, a.steps, a.samples);
            println!("count\tmatching");
            for (m, c) in &hist.counts {
                println!("{c}\t{}", tsv_matching(m));
            }
            Ok(None)
        }
        Format::Json => Ok(Some(payload(json!({
            "seed": a.seed,
            "steps": a.steps,
            "samples": a.samples,
            "histogram": hist
                .counts
                .iter()
                .map(|(m, c)| json!({ "matching": matching_json(m), "count": c }))
                .collect::<Vec<_>>(),
        })))),
    }
}

fn tgraph_build(a: &TgraphBuildArgs, budget: Budget) -> Outcome {
    let g = load_graph(&a.graph)?;
    let tg = build_transition_graph(&g, budget)?;
    let edges: Vec<[usize; 2]> =
        (0..tg.len()).flat_map(|i| tg.neighbors(i).iter().filter(move |&&j| i < j).map(move |&j| [i, j])).collect();
    let doc = json!({
        "schema": SCHEMA,
        "n": g.n(),
        "nodes": tg.nodes().iter().map(matching_json).collect::<Vec<_>>(),
        "edges": edges,
    });
    write_file(&a.out, &(doc.to_string() + "\n"))?;
    Ok(payload(json!({
        "num_matchings": tg.len(),
        "num_edges": tg.num_edges(),
        "out": a.out.display().to_string(),
    })))
}

fn tgraph_analyze(a: &GraphArg, budget: Budget) -> Outcome {
    let g = load_graph(a)?;
    let tg = build_transition_graph(&g, budget)?;
    Ok(payload(json!({
        "num_matchings": tg.len(),
        "num_edges": tg.num_edges(),
        "components": tg.components().len(),
        "diameter": diameter(&tg)?,
        "ergodic": tg.is_connected(),
    })))
}

fn gadget(a: &GadgetArgs) -> Outcome {
    let k = || a.k.ok_or_else(|| usage("--k is required for this family"));
    let mut out = Map::new();
    let g = match a.family {
        Family::Mobius => mobius_ladder(k()?)?,
        Family::Crossladder => {
            let (g, x, y) = cross_ladder(k()?)?;
            out.insert("x".into(), matching_json(&x));
            out.insert("y".into(), matching_json(&y));
            g
        }
        Family::Gk => {
            let g = slow_gk(k()?)?;
            out.insert("m0".into(), matching_json(&gk_base_matching(k()?)?));
            g
        }
        Family::Web => {
            let g = spiders_web(k()?)?;
            let (m1, m2) = web_special_matchings(k()?)?;
            out.insert("m1".into(), matching_json(&m1));
            out.insert("m2".into(), matching_json(&m2));
            g
        }
        Family::Annulus => {
            out.insert("radial".into(), matching_json(&annulus_radial_matching()));
            web_annulus()
        }
        Family::Unitinterval => {
            out.insert("seed".into(), json!(a.seed));
            GadgetSpec::UnitInterval { n: k()?, seed: a.seed }.build()?
        }
        Family::Permladder => permutation_ladder(k()?)?,
        Family::Ladder => ladder(k()?),
        Family::Fixture => {
            let name = a.name.as_deref().ok_or_else(|| usage("--name is required for --family fixture"))?;
            fixture(name)?
        }
    };
    write_file(&a.out, &write_edge_list(&g))?;
    out.insert("n".into(), json!(g.n()));
    out.insert("m".into(), json!(g.num_edges()));
    out.insert("out".into(), json!(a.out.display().to_string()));
    Ok(out)
}

fn parse_cut(text: &str, size: usize) -> std::result::Result<Vec<usize>, Failure> {
    let mut ids = Vec::new();
    for tok in text.split_whitespace() {
        let id: usize = tok.parse().map_err(|_| Error::InvalidArgument(format!("bad node id {tok:?} in cut file")))?;
        if id >= size {
            return Err(Error::InvalidArgument(format!("node id {id} out of range for {size} nodes")).into());
        }
        ids.push(id);
    }
    ids.sort_unstable();
    ids.dedup();
    Ok(ids)
}

fn mix_analyze(a: &MixArgs, budget: Budget) -> Outcome {
    let g = load_graph(&a.graph)?;
    let tg = build_transition_graph(&g, budget)?;
    let mut out = payload(json!({ "num_matchings": tg.len(), "seed": a.seed }));
    if a.cut == "auto" {
        if tg.len() >= 2 && tg.len() <= MAX_EXACT_CUT_NODES {
            out.insert("phi_exact".into(), json!(conductance_exact(&tg)?.to_string()));
        }
    } else {
        let cut = parse_cut(&read_file(Path::new(&a.cut))?, tg.len())?;
        let r = cut_flow(&tg, &cut)?;
        out.insert("phi_bound".into(), json!(r.conductance.to_string()));
        out.insert("crossing_edges".into(), json!(r.crossing_edges));
    }
    let gap = if tg.len() >= 2 && tg.len() <= MAX_SPECTRAL_NODES {
        Some(spectral_gap(&transition_matrix(&tg)?)?)
    } else {
        None
    };
    out.insert("gap".into(), json!(gap));
    let series = if a.tv.is_empty() {
        Vec::new()
    } else {
        let m0 = first_matching(&g, budget)?;
        tv_curve(&g, &m0, &a.tv, a.samples, a.seed, budget)?
    };
    out.insert(
        "tv_series".into(),
        json!(series.iter().map(|p| json!({ "t": p.t, "tv": p.tv, "std_err": p.std_err })).collect::<Vec<_>>()),
    );
    Ok(out)
}

fn budget_from(flag: Option<u64>) -> std::result::Result<Budget, Failure> {
    if let Some(b) = flag {
        return Ok(Budget(b));
    }
    match std::env::var("MATCHKIT_BUDGET") {
        Ok(v) => v.trim().parse().map(Budget).map_err(|_| usage(format!("MATCHKIT_BUDGET is not an integer: {v:?}"))),
        Err(_) => Ok(Budget::DEFAULT),
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Count(_) => "count",
        Command::Enumerate(_) => "enumerate",
        Command::Recognize(_) => "recognize",
        Command::Chain(ChainCommand::Run(_)) => "chain run",
        Command::Chain(ChainCommand::Sample(_)) => "chain sample",
        Command::Tgraph(TgraphCommand::Build(_)) => "tgraph build",
        Command::Tgraph(TgraphCommand::Analyze(_)) => "tgraph analyze",
        Command::Gadget(_) => "gadget",
        Command::Mix(MixCommand::Analyze(_)) => "mix analyze",
    }
}

fn dispatch(cli: &Cli) -> std::result::Result<Option<Map<String, Value>>, Failure> {
    let budget = budget_from(cli.budget)?;
    let out = match &cli.command {
        Command::Count(a) => count(a, budget)?,
        Command::Enumerate(a) => enumerate(a, budget)?,
        Command::Recognize(a) => recognize(a, budget)?,
        Command::Chain(ChainCommand::Run(a)) => chain_run(a, budget)?,
        Command::Chain(ChainCommand::Sample(a)) => return chain_sample(a, budget),
        Command::Tgraph(TgraphCommand::Build(a)) => tgraph_build(a, budget)?,
        Command::Tgraph(TgraphCommand::Analyze(a)) => tgraph_analyze(a, budget)?,
        Command::Gadget(a) => gadget(a)?,
        Command::Mix(MixCommand::Analyze(a)) => mix_analyze(a, budget)?,
    };
    Ok(Some(out))
}

fn emit_error(command: Option<&str>, kind: &str, message: &str) {
    let mut doc = payload(json!({
        "schema": SCHEMA,
        "status": "error",
        "error": { "kind": kind, "message": message },
    }));
    if let Some(c) = command {
        doc.insert("command".into(), json!(c));
    }
    println!("{}", Value::Object(doc));
}

fn main() -> ExitCode {
    let start = Instant::now();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let text = e.render().to_string();
            let msg: Vec<&str> = text
                .lines()
                .take_while(|l| !l.starts_with("Usage:"))
                .map(|l| l.trim().trim_start_matches("error: "))
                .filter(|l| !l.is_empty())
                .collect();
            emit_error(None, "usage", &msg.join(" "));
            eprint!("{text}");
            return ExitCode::from(2);
        }
    };
    let name = command_name(&cli.command);
    let code = match dispatch(&cli) {
        Ok(Some(body)) => {
            let mut doc = payload(json!({ "schema": SCHEMA, "status": "ok", "command": name }));
            doc.extend(body);
            println!("{}", Value::Object(doc));
            ExitCode::SUCCESS
        }
        Ok(None) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            emit_error(Some(name), "usage", &msg);
            ExitCode::from(2)
        }
        Err(Failure::Domain { kind, message }) => {
            emit_error(Some(name), kind, &message);
            ExitCode::from(1)
        }
    };
    eprintln!("elapsed_ms={}", start.elapsed().as_millis());
    code
}
