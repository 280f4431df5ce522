//! Command-line front-end: loads a topology (file or bundled fixture), runs
//! the requested solver, and prints the result as a table, JSON, or CSV.
//! Every subcommand is a thin adapter over the library — no numeric logic
//! lives here beyond formatting.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use compnet::cuts::{
    approx_comm_cut, approx_joint_cut, cut_lp_text, min_comm_cut_exact, min_comp_cut_exact,
    min_computation_cut, min_joint_cut_exact, CutMode, CutSolution,
};
use compnet::flow::{flow_lp_text, max_flow, FlowSolution};
use compnet::interdict::{
    budget_sweep, interdict_oracle_partial_sweep, solve_with_method, sweep_csv, sweep_json,
    InterdictionMode, InterdictionSolution, Method, SweepRow,
};
use compnet::lp::SolverLimits;
use compnet::model::{
    ComputingNetwork, CostMode, LayeredEdgeKind, NodeId, RandomNetworkSpec, Resource,
};
use compnet::testkit::{abilene_edges, cut_oracle, export_fixtures, fixture, manifest};

#[derive(Parser)]
#[command(
    name = "compnet",
    version,
    about = "Flow, cut, and interdiction analysis for networks with in-network processing"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Maximum processed source-to-destination flow
    Maxflow(MaxflowArgs),
    /// Minimum communication, computation, or joint cut
    Mincut(MincutArgs),
    /// Weaken resources under a budget to choke the flow
    Interdict(InterdictArgs),
    /// Interdiction residuals over a budget grid
    Sweep(SweepArgs),
    /// Seeded random topology generation
    Gen(GenArgs),
    /// List or export the bundled example networks
    Fixtures(FixturesArgs),
}

#[derive(Args)]
struct NetworkArgs {
    /// Topology JSON file
    #[arg(long, value_name = "PATH", conflicts_with = "fixture")]
    network: Option<PathBuf>,
    /// Bundled fixture name (see `compnet fixtures`)
    #[arg(long, value_name = "NAME")]
    fixture: Option<String>,
    /// Source node (defaults to the fixture's source)
    #[arg(long, value_name = "ID")]
    source: Option<String>,
    /// Destination node (defaults to the fixture's destination)
    #[arg(long, value_name = "ID")]
    dest: Option<String>,
}

impl NetworkArgs {
    fn load(&self) -> Result<(ComputingNetwork, NodeId, NodeId), String> {
        let (net, default_s, default_t) = match (&self.network, &self.fixture) {
            (Some(path), None) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
                let net = ComputingNetwork::from_json(&text)
                    .map_err(|e| format!("{}: {e}", path.display()))?;
                (net, None, None)
            }
            (None, Some(name)) => {
                let f = fixture(name).map_err(|e| e.to_string())?;
                (f.network, Some(f.source), Some(f.dest))
            }
            _ => return Err("exactly one of --network or --fixture is required".into()),
        };
        let source = match (&self.source, default_s) {
            (Some(id), _) => NodeId::new(id.clone()),
            (None, Some(id)) => id,
            (None, None) => return Err("--source is required with --network".into()),
        };
        let dest = match (&self.dest, default_t) {
            (Some(id), _) => NodeId::new(id.clone()),
            (None, Some(id)) => id,
            (None, None) => return Err("--dest is required with --network".into()),
        };
        Ok((net, source, dest))
    }
}

#[derive(Args)]
struct OutputArgs {
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Solver wall-clock limit in seconds (default 600, or COMPNET_TIME_LIMIT)
    #[arg(long, value_name = "SECS")]
    time_limit: Option<f64>,
}

impl OutputArgs {
    fn limits(&self) -> Result<SolverLimits, String> {
        let secs = match self.time_limit {
            Some(s) => s,
            None => match std::env::var("COMPNET_TIME_LIMIT") {
                Ok(v) => v
                    .parse::<f64>()
                    .map_err(|_| format!("COMPNET_TIME_LIMIT is not a number: {v:?}"))?,
                Err(_) => 600.0,
            },
        };
        if !secs.is_finite() || secs <= 0.0 {
            return Err(format!("time limit must be positive, got {secs}"));
        }
        Ok(SolverLimits::with_time_limit(Duration::from_secs_f64(secs)))
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    /// Link capacities only
    Comm,
    /// Node processing capacities only
    Comp,
    /// Links and nodes together
    Joint,
}

impl ModeArg {
    fn to_mode(self) -> CutMode {
        match self {
            ModeArg::Comm => CutMode::Communication,
            ModeArg::Comp => CutMode::Computation,
            ModeArg::Joint => CutMode::Joint,
        }
    }
}

#[derive(Args)]
struct MaxflowArgs {
    #[command(flatten)]
    net: NetworkArgs,
    /// Also print the computation-path decomposition
    #[arg(long)]
    decompose: bool,
    /// Also print nonzero shadow prices
    #[arg(long)]
    duals: bool,
    /// Dump the linear program in LP text form to stderr
    #[arg(long)]
    dump_lp: bool,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Clone, Copy, ValueEnum)]
enum CutMethodArg {
    /// Integer program over the layered expansion
    Exact,
    /// LP-rounding 2-approximation (comm and joint modes)
    Approx,
    /// Reachability algorithm (comp mode only)
    Fast,
    /// Subset enumeration referee (small networks only)
    Oracle,
}

#[derive(Args)]
struct MincutArgs {
    #[command(flatten)]
    net: NetworkArgs,
    /// Which resources the cut may remove
    #[arg(long, value_enum)]
    mode: ModeArg,
    /// Algorithm
    #[arg(long, value_enum, default_value_t = CutMethodArg::Exact)]
    method: CutMethodArg,
    /// Dump the cut program in LP text form to stderr
    #[arg(long)]
    dump_lp: bool,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Clone, Copy, ValueEnum)]
enum InterdictMethodArg {
    /// Budgeted integer program
    Exact,
    /// Shadow-price greedy (requires cost = capacity)
    Greedy,
    /// Cost-scaled greedy
    GreedyCost,
    /// Greedy with per-pick re-solves
    CostAware,
    /// Subset enumeration referee (small networks only)
    Oracle,
}

impl InterdictMethodArg {
    fn to_method(self) -> Method {
        match self {
            InterdictMethodArg::Exact => Method::Exact,
            InterdictMethodArg::Greedy => Method::Greedy,
            InterdictMethodArg::GreedyCost => Method::GreedyCost,
            InterdictMethodArg::CostAware => Method::GreedyCostAware,
            InterdictMethodArg::Oracle => Method::Oracle,
        }
    }
}

#[derive(Args)]
struct InterdictArgs {
    #[command(flatten)]
    net: NetworkArgs,
    /// Interdiction budget
    #[arg(long, value_name = "F")]
    budget: f64,
    /// Strategy
    #[arg(long, value_enum, default_value_t = InterdictMethodArg::Exact)]
    method: InterdictMethodArg,
    /// Allow fractional weakening instead of full removal
    #[arg(long)]
    partial: bool,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    net: NetworkArgs,
    /// Budget grid as lo:hi:step (hi < lo gives an empty grid)
    #[arg(long, value_name = "LO:HI:STEP")]
    budgets: String,
    /// Strategy
    #[arg(long, value_enum, default_value_t = InterdictMethodArg::Exact)]
    method: InterdictMethodArg,
    /// Allow fractional weakening instead of full removal
    #[arg(long)]
    partial: bool,
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Solver wall-clock limit in seconds (default 600, or COMPNET_TIME_LIMIT)
    #[arg(long, value_name = "SECS")]
    time_limit: Option<f64>,
}

#[derive(Args)]
struct GenArgs {
    /// Undirected edges as comma-separated pairs, e.g. a-b,b-c
    #[arg(long, value_name = "A-B,...", conflicts_with = "abilene")]
    edges: Option<String>,
    /// Use the bundled 11-node backbone topology
    #[arg(long)]
    abilene: bool,
    /// RNG seed
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Capacity range for directed links
    #[arg(long, value_name = "LO:HI", default_value = "0:1")]
    link_cap: String,
    /// Processing-capacity range for nodes
    #[arg(long, value_name = "LO:HI", default_value = "0:1")]
    node_cap: String,
    /// Draw interdiction costs independently instead of cost = capacity
    #[arg(long)]
    independent_costs: bool,
    /// Link cost range (with --independent-costs)
    #[arg(long, value_name = "LO:HI", default_value = "0:1")]
    link_cost: String,
    /// Node cost range (with --independent-costs)
    #[arg(long, value_name = "LO:HI", default_value = "0:1")]
    node_cost: String,
    /// Output file (stdout when omitted)
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct FixturesArgs {
    /// Write every topology plus manifest.json to this directory
    #[arg(long, value_name = "DIR")]
    export: Option<PathBuf>,
    /// Output format for the listing
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
}

fn main() -> ExitCode {
    // Die quietly when a pager or `head` closes the pipe instead of
    // panicking mid-print.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> Result<(), String> {
    match cli.command {
        Command::Maxflow(args) => cmd_maxflow(args),
        Command::Mincut(args) => cmd_mincut(args),
        Command::Interdict(args) => cmd_interdict(args),
        Command::Sweep(args) => cmd_sweep(args),
        Command::Gen(args) => cmd_gen(args),
        Command::Fixtures(args) => cmd_fixtures(args),
    }
}

fn lib_err(e: compnet::Error) -> String {
    e.to_string()
}

fn cmd_maxflow(args: MaxflowArgs) -> Result<(), String> {
    let (net, s, t) = args.net.load()?;
    if args.dump_lp {
        eprintln!("{}", flow_lp_text(&net, &s, &t).map_err(lib_err)?);
    }
    let sol = max_flow(&net, &s, &t, &args.out.limits()?).map_err(lib_err)?;
    match args.out.format {
        Format::Table => {
            println!("max flow: {:.6}", sol.value);
            if args.duals {
                print_duals(&net, &sol);
            }
            if args.decompose {
                print_decomposition(&sol)?;
            }
        }
        Format::Json => {
            let mut doc = json!({
                "command": "maxflow",
                "source": s.as_str(),
                "dest": t.as_str(),
                "value": sol.value,
                "edges": edge_flows_json(&net, &sol),
                "link_duals": sol.link_duals.iter()
                    .map(|(id, q)| (id.to_string(), json!(q)))
                    .collect::<serde_json::Map<_, _>>(),
                "node_duals": sol.node_duals.iter()
                    .map(|(id, q)| (id.to_string(), json!(q)))
                    .collect::<serde_json::Map<_, _>>(),
            });
            if args.decompose {
                let d = sol.decompose().map_err(lib_err)?;
                doc["paths"] = d
                    .paths
                    .iter()
                    .map(|p| {
                        json!({
                            "nodes": p.nodes.iter().map(NodeId::as_str).collect::<Vec<_>>(),
                            "processed_at": p.processed_at.as_str(),
                            "amount": p.amount,
                        })
                    })
                    .collect();
                doc["cycles"] = d
                    .cycles
                    .iter()
                    .map(|(nodes, amount)| {
                        json!({
                            "nodes": nodes.iter().map(NodeId::as_str).collect::<Vec<_>>(),
                            "amount": amount,
                        })
                    })
                    .collect();
            }
            println!("{}", serde_json::to_string_pretty(&doc).unwrap());
        }
        Format::Csv => {
            println!("metric,value");
            println!("max_flow,{:.6}", sol.value);
        }
    }
    Ok(())
}

fn print_duals(net: &ComputingNetwork, sol: &FlowSolution) {
    println!("shadow prices:");
    let mut any = false;
    for link in net.links() {
        let q = sol.link_dual(&link.id());
        if q.abs() > 1e-9 {
            println!("  link {}: {q:.6}", link.id());
            any = true;
        }
    }
    for node in net.computation_nodes() {
        let q = sol.node_dual(&node.id);
        if q.abs() > 1e-9 {
            println!("  node {}: {q:.6}", node.id);
            any = true;
        }
    }
    if !any {
        println!("  (all zero)");
    }
}

fn print_decomposition(sol: &FlowSolution) -> Result<(), String> {
    let d = sol.decompose().map_err(lib_err)?;
    println!("computation paths:");
    for p in &d.paths {
        let route = p
            .nodes
            .iter()
            .map(NodeId::as_str)
            .collect::<Vec<_>>()
            .join(" -> ");
        println!("  {:.6} via {route} (processed at {})", p.amount, p.processed_at);
    }
    if d.paths.is_empty() {
        println!("  (none)");
    }
    for (nodes, amount) in &d.cycles {
        let route = nodes.iter().map(NodeId::as_str).collect::<Vec<_>>().join(" -> ");
        println!("  cycle {amount:.6} via {route}");
    }
    Ok(())
}

fn edge_flows_json(net: &ComputingNetwork, sol: &FlowSolution) -> serde_json::Value {
    sol.layered
        .edges
        .iter()
        .zip(&sol.edge_flows)
        .map(|(edge, &flow)| {
            let desc = match edge.kind {
                LayeredEdgeKind::UpperLink(i) => {
                    format!("{} (unprocessed)", net.links()[i].id())
                }
                LayeredEdgeKind::LowerLink(i) => {
                    format!("{} (processed)", net.links()[i].id())
                }
                LayeredEdgeKind::Process(i) => format!("process {}", net.nodes()[i].id),
                LayeredEdgeKind::Return => "return".into(),
            };
            json!({ "edge": desc, "flow": flow })
        })
        .collect()
}

fn cmd_mincut(args: MincutArgs) -> Result<(), String> {
    let (net, s, t) = args.net.load()?;
    let mode = args.mode.to_mode();
    if args.dump_lp {
        eprintln!("{}", cut_lp_text(&net, &s, &t, mode).map_err(lib_err)?);
    }
    let limits = args.out.limits()?;
    let sol = match (args.method, mode) {
        (CutMethodArg::Exact, CutMode::Communication) => {
            min_comm_cut_exact(&net, &s, &t, &limits).map_err(lib_err)?
        }
        (CutMethodArg::Exact, CutMode::Computation) => {
            min_comp_cut_exact(&net, &s, &t, &limits).map_err(lib_err)?
        }
        (CutMethodArg::Exact, CutMode::Joint) => {
            min_joint_cut_exact(&net, &s, &t, &limits).map_err(lib_err)?
        }
        (CutMethodArg::Approx, CutMode::Communication) => {
            approx_comm_cut(&net, &s, &t).map_err(lib_err)?
        }
        (CutMethodArg::Approx, CutMode::Joint) => {
            approx_joint_cut(&net, &s, &t).map_err(lib_err)?
        }
        (CutMethodArg::Approx, CutMode::Computation) => {
            return Err(
                "no approximation for computation cuts; use --method exact or fast".into(),
            )
        }
        (CutMethodArg::Fast, CutMode::Computation) => {
            min_computation_cut(&net, &s, &t).map_err(lib_err)?
        }
        (CutMethodArg::Fast, _) => {
            return Err("--method fast only handles --mode comp".into());
        }
        (CutMethodArg::Oracle, _) => cut_oracle(&net, &s, &t, mode).map_err(lib_err)?,
    };
    print_cut(&sol, args.method, args.out.format);
    Ok(())
}

fn print_cut(sol: &CutSolution, method: CutMethodArg, format: Format) {
    let method = match method {
        CutMethodArg::Exact => "exact",
        CutMethodArg::Approx => "approx",
        CutMethodArg::Fast => "fast",
        CutMethodArg::Oracle => "oracle",
    };
    match format {
        Format::Table => {
            println!("minimum {} cut: {:.6}", sol.mode, sol.value);
            let links = sol
                .links
                .iter()
                .map(|l| l.to_string())
                .collect::<Vec<_>>()
                .join(", ");
            let nodes = sol
                .nodes
                .iter()
                .map(|n| n.to_string())
                .collect::<Vec<_>>()
                .join(", ");
            println!("links: {}", if links.is_empty() { "(none)" } else { &links });
            println!("nodes: {}", if nodes.is_empty() { "(none)" } else { &nodes });
            println!("optimal: {}", sol.optimal);
            println!("verified: {}", sol.verified);
        }
        Format::Json => {
            let doc = json!({
                "command": "mincut",
                "mode": sol.mode,
                "method": method,
                "value": sol.value,
                "links": sol.links.iter().map(|l| json!({
                    "from": l.from.as_str(),
                    "to": l.to.as_str(),
                })).collect::<Vec<_>>(),
                "nodes": sol.nodes.iter().map(|n| n.as_str()).collect::<Vec<_>>(),
                "optimal": sol.optimal,
                "verified": sol.verified,
            });
            println!("{}", serde_json::to_string_pretty(&doc).unwrap());
        }
        Format::Csv => {
            println!("metric,value");
            println!("min_{}_cut,{:.6}", sol.mode, sol.value);
        }
    }
}

fn cmd_interdict(args: InterdictArgs) -> Result<(), String> {
    if !args.budget.is_finite() || args.budget < 0.0 {
        return Err(format!("budget must be nonnegative, got {}", args.budget));
    }
    let (net, s, t) = args.net.load()?;
    let mode = if args.partial {
        InterdictionMode::Partial
    } else {
        InterdictionMode::Binary
    };
    let method = args.method.to_method();
    let sol = solve_with_method(&net, &s, &t, args.budget, method, mode, &args.out.limits()?)
        .map_err(lib_err)?;
    match args.out.format {
        Format::Table => {
            println!("residual flow: {:.6}", sol.residual_flow);
            println!("spent: {:.6} of budget {:.6}", sol.spent, args.budget);
            println!("optimal: {}", sol.optimal);
            if sol.removal.is_empty() {
                println!("removal: (nothing)");
            } else {
                println!("removal:");
                for (resource, fraction) in &sol.removal.fractions {
                    println!("  {resource}: {fraction:.6}");
                }
            }
        }
        Format::Json => {
            let mut doc = json!({
                "command": "interdict",
                "budget": args.budget,
                "method": method.label(),
                "partial": args.partial,
                "residual_flow": sol.residual_flow,
                "spent": sol.spent,
                "optimal": sol.optimal,
                "removal": removal_json(&sol),
            });
            if let Some(objective) = sol.objective {
                doc["objective"] = json!(objective);
            }
            println!("{}", serde_json::to_string_pretty(&doc).unwrap());
        }
        Format::Csv => {
            let row = to_sweep_row(args.budget, method, mode, &sol);
            print!("{}", sweep_csv(&[row]));
        }
    }
    Ok(())
}

fn removal_json(sol: &InterdictionSolution) -> serde_json::Value {
    sol.removal
        .fractions
        .iter()
        .map(|(resource, fraction)| {
            let mut entry = match resource {
                Resource::Link { from, to } => json!({
                    "kind": "link",
                    "from": from.as_str(),
                    "to": to.as_str(),
                }),
                Resource::Node { id } => json!({ "kind": "node", "id": id.as_str() }),
            };
            entry["fraction"] = json!(fraction);
            entry
        })
        .collect()
}

/// Label a single solve the way `budget_sweep` labels its rows.
fn to_sweep_row(
    budget: f64,
    method: Method,
    mode: InterdictionMode,
    sol: &InterdictionSolution,
) -> SweepRow {
    let label = match mode {
        InterdictionMode::Binary => method.label().to_string(),
        InterdictionMode::Partial => format!("partial_{}", method.label()),
    };
    SweepRow {
        budget,
        method: label,
        residual_flow: sol.residual_flow,
        spent: sol.spent,
        optimal: sol.optimal,
    }
}

fn parse_grid(text: &str) -> Result<Vec<f64>, String> {
    let parts: Vec<&str> = text.split(':').collect();
    let [lo, hi, step] = parts.as_slice() else {
        return Err(format!("budget grid must be lo:hi:step, got {text:?}"));
    };
    let parse = |s: &str| {
        s.parse::<f64>()
            .map_err(|_| format!("not a number in budget grid: {s:?}"))
    };
    let (lo, hi, step) = (parse(lo)?, parse(hi)?, parse(step)?);
    if !lo.is_finite() || lo < 0.0 {
        return Err(format!("budgets must be nonnegative, grid starts at {lo}"));
    }
    if hi < lo {
        return Ok(Vec::new());
    }
    if lo == hi {
        return Ok(vec![lo]);
    }
    if !step.is_finite() || step <= 0.0 {
        return Err(format!("grid step must be positive, got {step}"));
    }
    let count = ((hi - lo) / step + 1e-9).floor() as usize + 1;
    Ok((0..count).map(|i| lo + step * i as f64).collect())
}

fn cmd_sweep(args: SweepArgs) -> Result<(), String> {
    let (net, s, t) = args.net.load()?;
    let budgets = parse_grid(&args.budgets)?;
    let out = OutputArgs {
        format: args.format,
        time_limit: args.time_limit,
    };
    let limits = out.limits()?;
    let method = args.method.to_method();
    let mode = if args.partial {
        InterdictionMode::Partial
    } else {
        InterdictionMode::Binary
    };

    let rows = if method == Method::Oracle && args.partial {
        // One enumeration shared across the whole grid.
        let sols =
            interdict_oracle_partial_sweep(&net, &s, &t, &budgets, &limits).map_err(lib_err)?;
        budgets
            .iter()
            .zip(&sols)
            .map(|(&b, sol)| to_sweep_row(b, method, mode, sol))
            .collect()
    } else {
        budget_sweep(&net, &s, &t, &budgets, &[(method, mode)], &limits).map_err(lib_err)?
    };

    match args.format {
        Format::Csv => print!("{}", sweep_csv(&rows)),
        Format::Json => println!("{}", sweep_json(&rows)),
        Format::Table => {
            println!(
                "{:>10}  {:>16}  {:>12}  {:>10}  {}",
                "budget", "method", "residual", "spent", "optimal"
            );
            for row in &rows {
                println!(
                    "{:>10.6}  {:>16}  {:>12.6}  {:>10.6}  {}",
                    row.budget, row.method, row.residual_flow, row.spent, row.optimal
                );
            }
        }
    }
    Ok(())
}

fn parse_range(text: &str, what: &str) -> Result<(f64, f64), String> {
    let parts: Vec<&str> = text.split(':').collect();
    let [lo, hi] = parts.as_slice() else {
        return Err(format!("{what} must be lo:hi, got {text:?}"));
    };
    let parse = |s: &str| {
        s.parse::<f64>()
            .map_err(|_| format!("not a number in {what}: {s:?}"))
    };
    Ok((parse(lo)?, parse(hi)?))
}

fn cmd_gen(args: GenArgs) -> Result<(), String> {
    let undirected_edges: Vec<(String, String)> = if args.abilene {
        abilene_edges()
            .iter()
            .map(|&(a, b)| (a.to_string(), b.to_string()))
            .collect()
    } else if let Some(text) = &args.edges {
        let mut edges = Vec::new();
        for token in text.split(',').filter(|t| !t.is_empty()) {
            let parts: Vec<&str> = token.split('-').collect();
            let [a, b] = parts.as_slice() else {
                return Err(format!("edge must be a-b, got {token:?}"));
            };
            if a.is_empty() || b.is_empty() {
                return Err(format!("edge must name two nodes, got {token:?}"));
            }
            edges.push((a.to_string(), b.to_string()));
        }
        edges
    } else {
        return Err("one of --edges or --abilene is required".into());
    };

    let cost_mode = if args.independent_costs {
        CostMode::Independent {
            link_cost: parse_range(&args.link_cost, "--link-cost")?,
            node_cost: parse_range(&args.node_cost, "--node-cost")?,
        }
    } else {
        CostMode::EqualsCapacity
    };
    let spec = RandomNetworkSpec {
        undirected_edges,
        link_capacity: parse_range(&args.link_cap, "--link-cap")?,
        node_capacity: parse_range(&args.node_cap, "--node-cap")?,
        cost_mode,
        seed: args.seed,
    };
    let net = ComputingNetwork::gen_random(&spec).map_err(lib_err)?;
    let text = net.to_json();
    match &args.out {
        Some(path) => {
            std::fs::write(path, text + "\n")
                .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
            eprintln!(
                "wrote {} nodes, {} links to {}",
                net.nodes().len(),
                net.links().len(),
                path.display()
            );
        }
        None => println!("{text}"),
    }
    Ok(())
}

fn cmd_fixtures(args: FixturesArgs) -> Result<(), String> {
    if let Some(dir) = &args.export {
        export_fixtures(dir).map_err(lib_err)?;
        let n = manifest().fixtures.len();
        println!("wrote {n} topologies and manifest.json to {}", dir.display());
        return Ok(());
    }
    let manifest = manifest();
    match args.format {
        Format::Table => {
            for entry in &manifest.fixtures {
                println!(
                    "{:<8} {} -> {}  ({} expected values)",
                    entry.name, entry.source, entry.dest, entry.expected.len()
                );
                println!("         {}", entry.description);
            }
        }
        Format::Json => {
            println!("{}", serde_json::to_string_pretty(&manifest).unwrap());
        }
        Format::Csv => {
            println!("name,file,source,dest,expectations");
            let mut buf = String::new();
            for e in &manifest.fixtures {
                writeln!(
                    buf,
                    "{},{},{},{},{}",
                    e.name,
                    e.file,
                    e.source,
                    e.dest,
                    e.expected.len()
                )
                .unwrap();
            }
            print!("{buf}");
        }
    }
    Ok(())
}
