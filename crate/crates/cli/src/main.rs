use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Map, Value};

use colnum::battery::{self, CriterionReport};
use colnum::counterexample::{build_two_radii_graph, verify_claims, verify_facts, TwoRadiiParams};
use colnum::exact::{self, ExactOptions, DEFAULT_EXACT_CAP};
use colnum::reach::{self, DEFAULT_PATH_BUDGET};
use colnum::uniform::{self, InstanceFile, RunOptions, SigmaProvider, TieBreak, UniformReport};
use colnum::{Error, Graph, Ordering, Radius, ReachKind};

const EXIT_CHECK_FAILED: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_CAP: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "colnum", version, about = "Generalized coloring numbers: evaluation, exact search, uniform orderings")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Print a human-readable table instead of JSON on stdout.
    #[arg(long, global = true)]
    pretty: bool,
    /// Omit the `generated_at` field from reports.
    #[arg(long, global = true)]
    no_timestamp: bool,
    /// Increase log verbosity (repeatable).
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    verbose: u8,
    /// Write the JSON report to this file.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Largest vertex count for exact searches.
    #[arg(long, env = "COLNUM_CAP", global = true, default_value_t = DEFAULT_EXACT_CAP,
          value_parser = positive)]
    cap: usize,
    /// Candidate-path budget for admissibility evaluations.
    #[arg(long, global = true, default_value_t = DEFAULT_PATH_BUDGET,
          value_parser = positive)]
    budget: usize,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Reachability numbers of a graph under a given ordering.
    Eval {
        graph: PathBuf,
        ordering: PathBuf,
        /// Radii, comma separated; `inf` for unbounded.
        #[arg(long = "r", value_delimiter = ',', default_value = "1")]
        radii: Vec<Radius>,
        /// Kinds (weak, strong, adm), comma separated; default all.
        #[arg(long = "kind", value_delimiter = ',')]
        kinds: Vec<ReachKind>,
    },
    /// Optimal orderings by exact search, and the treewidth/treedepth oracles.
    Exact {
        graph: PathBuf,
        #[arg(long = "r", value_delimiter = ',')]
        radii: Vec<Radius>,
        #[arg(long = "kind", value_delimiter = ',')]
        kinds: Vec<ReachKind>,
        /// Also report treewidth.
        #[arg(long)]
        tw: bool,
        /// Also report treedepth.
        #[arg(long)]
        td: bool,
    },
    /// Build one ordering good for several radii or graphs at once.
    Uniform(UniformArgs),
    /// Build the two-radii counterexample graph and optionally verify it.
    #[command(name = "example21")]
    TwoRadii {
        t: usize,
        n: usize,
        r: usize,
        r_prime: usize,
        /// Edge-list output (default: two_radii_T_N_R_R'.g in the current directory).
        #[arg(long)]
        graph_out: Option<PathBuf>,
        /// Label sidecar output (default: next to the graph, `.labels.json`).
        #[arg(long)]
        labels_out: Option<PathBuf>,
        #[arg(long)]
        verify: bool,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run a verification suite by name (see `colnum verify --help`), or `all`.
    Verify {
        /// all, oracle, sandwich, widths, layered, collect, dyadic, multi, eps, two-radii.
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args, Debug)]
struct UniformArgs {
    /// Instance JSON, or graph edge lists with --dyadic / --eps / --multi.
    #[arg(required = true)]
    inputs: Vec<PathBuf>,
    /// Dyadic weights on radii 1..=floor(log2(n-2)).
    #[arg(long, conflicts_with_all = ["eps", "multi"])]
    dyadic: bool,
    /// ε-weighted schedule; accepts p/q or decimals.
    #[arg(long, conflicts_with = "multi")]
    eps: Option<String>,
    /// One layer per input graph, unit weights; radii from --r.
    #[arg(long)]
    multi: bool,
    /// Radii for --multi, one per graph (the last repeats).
    #[arg(long = "r", value_delimiter = ',')]
    radii: Vec<usize>,
    /// Source of the per-layer orderings: exact or degeneracy.
    #[arg(long, default_value = "exact")]
    sigma: String,
    /// Explicit per-layer ordering files (override --sigma; the last repeats).
    #[arg(long)]
    sigma_file: Vec<PathBuf>,
    /// `deterministic` or `seeded:SEED`.
    #[arg(long, default_value = "deterministic", value_parser = parse_tie)]
    tie_break: TieBreak,
    /// Also audit the per-vertex partition behind the bound.
    #[arg(long)]
    audit: bool,
    /// Write σ* here as an ordering file.
    #[arg(long)]
    order_out: Option<PathBuf>,
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be positive".into()),
        Ok(v) => Ok(v),
        Err(e) => Err(e.to_string()),
    }
}

fn parse_tie(s: &str) -> Result<TieBreak, String> {
    match s.split_once(':') {
        None if s == "deterministic" => Ok(TieBreak::Deterministic),
        Some(("seeded" | "seed", seed)) => seed
            .parse()
            .map(TieBreak::Seeded)
            .map_err(|e| format!("bad seed '{seed}': {e}")),
        _ => Err(format!("expected 'deterministic' or 'seeded:SEED', got '{s}'")),
    }
}

enum Failure {
    Lib(Error),
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Lib(Error::CapExceeded { .. } | Error::BudgetExceeded { .. }) => EXIT_CAP,
            Failure::Lib(Error::Invariant(_)) => EXIT_CHECK_FAILED,
            _ => EXIT_INPUT,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Lib(e) => write!(f, "{e}"),
            Failure::Input(m) => f.write_str(m),
        }
    }
}

type CmdResult = Result<Outcome, Failure>;

/// A finished command: its JSON report, a table view, and whether every
/// check it ran passed.
struct Outcome {
    report: Map<String, Value>,
    table: String,
    ok: bool,
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn with_path<T>(path: &Path, r: colnum::Result<T>) -> Result<T, Failure> {
    r.map_err(|e| match e {
        Error::Parse { .. } => Failure::Input(format!("{}: {e}", path.display())),
        other => Failure::Lib(other),
    })
}

fn load_graph(path: &Path) -> Result<Graph, Failure> {
    with_path(path, Graph::parse(&read(path)?))
}

fn load_ordering(path: &Path, n: usize) -> Result<Ordering, Failure> {
    with_path(path, Ordering::parse(&read(path)?, n))
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

fn kinds_or_all(kinds: &[ReachKind]) -> Vec<ReachKind> {
    if kinds.is_empty() {
        ReachKind::ALL.to_vec()
    } else {
        kinds.to_vec()
    }
}

fn cmd_eval(g: &Global, graph: &Path, ordering: &Path, radii: &[Radius], kinds: &[ReachKind]) -> CmdResult {
    let graph = load_graph(graph)?;
    let sigma = load_ordering(ordering, graph.n())?;
    let mut reports = Vec::new();
    let mut table = String::from("kind    r    value\n");
    for &r in radii {
        for kind in kinds_or_all(kinds) {
            let rep = reach::report_of_ordering(&graph, &sigma, r, kind, g.budget)?;
            table += &format!("{:<7} {:<4} {}\n", kind.to_string(), r.to_string(), rep.value);
            reports.push(rep);
        }
    }
    let mut report = Map::new();
    report.insert("command".into(), json!("eval"));
    report.insert("n".into(), json!(graph.n()));
    report.insert("reports".into(), to_value(&reports));
    Ok(Outcome { report, table, ok: true })
}

fn cmd_exact(g: &Global, graph: &Path, radii: &[Radius], kinds: &[ReachKind], tw: bool, td: bool) -> CmdResult {
    let graph = load_graph(graph)?;
    let opts = ExactOptions {
        cap: g.cap,
        path_budget: g.budget,
    };
    let radii: Vec<Radius> = if radii.is_empty() && !tw && !td {
        vec![Radius::Finite(1)]
    } else {
        radii.to_vec()
    };
    let mut results = Vec::new();
    let mut table = String::from("kind    r    value  ordering\n");
    for &r in &radii {
        for kind in kinds_or_all(kinds) {
            let res = exact::exact_min(&graph, r, kind, &opts)?;
            log::info!("{kind} r={r}: {} after {} nodes", res.value, res.explored);
            table += &format!(
                "{:<7} {:<4} {:<6} {}\n",
                kind.to_string(),
                r.to_string(),
                res.value,
                res.witness.to_text().trim()
            );
            results.push(res);
        }
    }
    let mut report = Map::new();
    report.insert("command".into(), json!("exact"));
    report.insert("n".into(), json!(graph.n()));
    report.insert("results".into(), to_value(&results));
    if tw {
        let v = exact::treewidth_oracle(&graph, g.cap)?;
        table += &format!("treewidth {v}\n");
        report.insert("treewidth".into(), json!(v));
    }
    if td {
        let v = exact::treedepth_oracle(&graph, g.cap)?;
        table += &format!("treedepth {v}\n");
        report.insert("treedepth".into(), json!(v));
    }
    Ok(Outcome { report, table, ok: true })
}

fn uniform_table(rep: &UniformReport) -> String {
    let mut t = format!(
        "mode {}  k {}  weights {:?}  rounds {}\nsigma* {}\n",
        rep.mode,
        rep.k,
        rep.weights,
        rep.rounds,
        rep.sigma_star.to_text().trim()
    );
    t += "layer  r  a  w   scol  bound        ok\n";
    for (i, c) in rep.layers.iter().enumerate() {
        let bound = format!("{}/{}", c.rhs_num, c.rhs_den);
        t += &format!("{:<6} {:<2} {:<2} {:<3} {:<5} {:<12} {}\n", i + 1, c.r, c.a, c.w, c.lhs, bound, c.ok);
    }
    if !rep.bounds.is_empty() {
        t += "r  w   scol  coefficient  ok\n";
        for b in &rep.bounds {
            let coeff = format!("{}/{}", b.coeff_num, b.coeff_den);
            t += &format!("{:<2} {:<3} {:<5} {:<12} {}\n", b.r, b.w, b.lhs, coeff, b.ok);
        }
    }
    t += &format!("all checks ok: {}\n", rep.ok);
    t
}

fn cmd_uniform(g: &Global, a: &UniformArgs) -> CmdResult {
    let exact_opts = ExactOptions {
        cap: g.cap,
        path_budget: g.budget,
    };
    let opts = RunOptions {
        tie: a.tie_break,
        audit: a.audit,
    };
    let graph_mode = a.dyadic || a.eps.is_some() || a.multi;
    if !a.multi && a.inputs.len() != 1 {
        return Err(Failure::Input("expected exactly one input file (use --multi for several graphs)".into()));
    }
    let graphs: Vec<Graph> = if graph_mode {
        a.inputs.iter().map(|p| load_graph(p)).collect::<Result<_, _>>()?
    } else {
        Vec::new()
    };
    let provider = if !a.sigma_file.is_empty() {
        let n = graphs.first().map_or(0, Graph::n);
        SigmaProvider::Fixed(a.sigma_file.iter().map(|p| load_ordering(p, n)).collect::<Result<_, _>>()?)
    } else {
        match a.sigma.as_str() {
            "exact" => SigmaProvider::Exact(exact_opts),
            "degeneracy" => SigmaProvider::Degeneracy,
            other => return Err(Failure::Input(format!("unknown --sigma '{other}' (expected exact or degeneracy)"))),
        }
    };
    let rep = if a.dyadic {
        uniform::uniform_single(&graphs[0], &provider, opts)?
    } else if let Some(eps) = &a.eps {
        let eps = uniform::parse_rational(eps)?;
        uniform::uniform_single_eps(&graphs[0], &eps, &provider, opts)?
    } else if a.multi {
        if a.radii.is_empty() {
            return Err(Failure::Input("--multi needs --r with one radius per graph".into()));
        }
        let pairs: Vec<(Graph, usize)> = graphs
            .into_iter()
            .enumerate()
            .map(|(i, gr)| (gr, *a.radii.get(i).unwrap_or(a.radii.last().unwrap())))
            .collect();
        uniform::uniform_multi(&pairs, &provider, opts)?
    } else {
        let path = &a.inputs[0];
        let file: InstanceFile = serde_json::from_str(&read(path)?)
            .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
        uniform::run_instance(file.into_instance(&exact_opts)?, opts)?
    };
    if let Some(path) = &a.order_out {
        fs::write(path, rep.sigma_star.to_text()).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    }
    let mut report = Map::new();
    report.insert("command".into(), json!("uniform"));
    report.insert("report".into(), to_value(&rep));
    Ok(Outcome {
        table: uniform_table(&rep),
        ok: rep.ok,
        report,
    })
}

fn cmd_two_radii(
    (t, n, r, r_prime): (usize, usize, usize, usize),
    graph_out: Option<PathBuf>,
    labels_out: Option<PathBuf>,
    verify: bool,
    samples: usize,
    seed: u64,
) -> CmdResult {
    let eg = build_two_radii_graph(TwoRadiiParams::new(t, n, r, r_prime)?)?;
    let graph_out = graph_out.unwrap_or_else(|| PathBuf::from(format!("two_radii_{t}_{n}_{r}_{r_prime}.g")));
    let labels_out = labels_out.unwrap_or_else(|| graph_out.with_extension("labels.json"));
    let io = |p: &Path, e: std::io::Error| Failure::Input(format!("{}: {e}", p.display()));
    fs::write(&graph_out, eg.graph.to_edge_list()).map_err(|e| io(&graph_out, e))?;
    let labels = json!({ "params": [t, n, r, r_prime], "labels": eg.labels });
    fs::write(&labels_out, serde_json::to_string_pretty(&labels).expect("json") + "\n").map_err(|e| io(&labels_out, e))?;

    let mut report = Map::new();
    report.insert("command".into(), json!("example21"));
    report.insert("params".into(), json!({ "t": t, "n": n, "r": r, "r_prime": r_prime }));
    report.insert("vertices".into(), json!(eg.graph.n()));
    report.insert("edges".into(), json!(eg.graph.edge_count()));
    report.insert("graph_file".into(), json!(graph_out.display().to_string()));
    report.insert("labels_file".into(), json!(labels_out.display().to_string()));
    let mut table = format!(
        "graph: {} vertices, {} edges -> {}\n",
        eg.graph.n(),
        eg.graph.edge_count(),
        graph_out.display()
    );
    let mut ok = true;
    if verify {
        let facts = verify_facts(&eg);
        let claims = verify_claims(&eg, samples, seed)?;
        table += &format!("facts E1 {} E2 {} E3 {}\n", facts.e1, facts.e2, facts.e3);
        table += &format!(
            "claim 1: scol_{} = {} <= {} {}\nclaim 2: scol_{} = {} <= {} {}\n",
            claims.zxy_bound.radius,
            claims.zxy_bound.value,
            claims.zxy_bound.bound,
            claims.zxy_bound.ok,
            claims.xzy_bound.radius,
            claims.xzy_bound.value,
            claims.xzy_bound.bound,
            claims.xzy_bound.ok
        );
        let held = claims.samples.iter().filter(|s| s.ok).count();
        table += &format!("claim 3: {held}/{} sampled orderings satisfy the disjunction\n", claims.samples.len());
        ok = facts.ok && claims.ok;
        report.insert("facts".into(), to_value(&facts));
        report.insert("claims".into(), to_value(&claims));
        report.insert("seed".into(), json!(seed));
    }
    report.insert("ok".into(), json!(ok));
    Ok(Outcome { report, table, ok })
}

fn verify_table(criteria: &[CriterionReport]) -> String {
    let mut t = String::new();
    for c in criteria {
        t += &format!(
            "{:<3} {:<4} {:<46} {} checks\n",
            c.id,
            if c.passed { "PASS" } else { "FAIL" },
            c.name,
            c.checked
        );
        for f in &c.failures {
            t += &format!("      {f}\n");
        }
    }
    t
}

fn cmd_verify(suite: &str, seed: u64) -> CmdResult {
    let criteria = battery::run(suite, seed)?;
    let ok = criteria.iter().all(|c| c.passed);
    let mut report = Map::new();
    report.insert("command".into(), json!("verify"));
    report.insert("suite".into(), json!(suite));
    report.insert("seed".into(), json!(seed));
    report.insert("criteria".into(), to_value(&criteria));
    report.insert("passed".into(), json!(ok));
    Ok(Outcome {
        table: verify_table(&criteria),
        report,
        ok,
    })
}

fn run(cli: &Cli) -> CmdResult {
    let g = &cli.global;
    match &cli.command {
        Command::Eval {
            graph,
            ordering,
            radii,
            kinds,
        } => cmd_eval(g, graph, ordering, radii, kinds),
        Command::Exact {
            graph,
            radii,
            kinds,
            tw,
            td,
        } => cmd_exact(g, graph, radii, kinds, *tw, *td),
        Command::Uniform(args) => cmd_uniform(g, args),
        Command::TwoRadii {
            t,
            n,
            r,
            r_prime,
            graph_out,
            labels_out,
            verify,
            samples,
            seed,
        } => cmd_two_radii(
            (*t, *n, *r, *r_prime),
            graph_out.clone(),
            labels_out.clone(),
            *verify,
            *samples,
            *seed,
        ),
        Command::Verify { suite, seed } => cmd_verify(suite, *seed),
    }
}

fn emit(g: &Global, mut outcome: Outcome) -> std::io::Result<()> {
    if !g.no_timestamp {
        let secs = SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs());
        outcome.report.insert("generated_at".into(), json!(secs));
    }
    let text = serde_json::to_string_pretty(&Value::Object(outcome.report)).expect("json") + "\n";
    if let Some(path) = &g.out {
        fs::write(path, &text)?;
    }
    let mut stdout = std::io::stdout().lock();
    if g.pretty {
        stdout.write_all(outcome.table.as_bytes())
    } else if g.out.is_none() {
        stdout.write_all(text.as_bytes())
    } else {
        Ok(())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = match cli.global.verbose {
        0 => log::LevelFilter::Warn,
        1 => log::LevelFilter::Info,
        2 => log::LevelFilter::Debug,
        _ => log::LevelFilter::Trace,
    };
    env_logger::Builder::new().filter_level(level).parse_default_env().init();

    let global = &cli.global;
    match run(&cli) {
        Ok(outcome) => {
            let ok = outcome.ok;
            if let Err(e) = emit(global, outcome) {
                eprintln!("error: writing report: {e}");
                return ExitCode::from(EXIT_INPUT);
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_CHECK_FAILED)
            }
        }
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.exit_code())
        }
    }
}
