//! `cohsupp`: support varieties of monomial ideals from the command line.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use cohsupp::diagram::{class_label, diagram_from_table, weak_grading};
use cohsupp::enumerate6::{self, GcdGraph, PipelineSettings};
use cohsupp::field::{is_prime, DEFAULT_PRIMES};
use cohsupp::groebner::{GbLimits, Ideal};
use cohsupp::minors::{MinorSettings, DEFAULT_MINOR_BUDGET};
use cohsupp::simplicial::{cohomology_ranks, delta_complex, reduced_cochain, taylor_block};
use cohsupp::support::{
    classify, support_symbolic, support_verify, Engine, Oracle, SupportSettings, VerifySettings,
};
use cohsupp::{Error, MonomialSeq, RatPoly, Subset, SubsetTable};

mod format;

#[derive(Parser, Debug)]
#[command(name = "cohsupp", version, about = "Cohomological support varieties of monomial ideals")]
struct Cli {
    #[command(flatten)]
    config: RunConfig,
    #[command(subcommand)]
    command: Command,
}

/// Settings shared by every command.
#[derive(Args, Debug, Clone)]
struct RunConfig {
    /// Prime for sampling (repeatable); defaults to three primes above 2^31.
    #[arg(long = "prime", global = true)]
    primes: Vec<u64>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Largest number of minors expanded before switching to sampling.
    #[arg(long, global = true, default_value_t = DEFAULT_MINOR_BUDGET)]
    minor_budget: usize,
    /// S-pair cap for Gröbner computations.
    #[arg(long, global = true, default_value_t = GbLimits::default().max_pairs)]
    groebner_cap: usize,
    /// Points sampled per prime and per check.
    #[arg(long, global = true, default_value_t = 200)]
    samples: usize,
    /// Worker threads (0: all cores).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
}

impl RunConfig {
    fn primes(&self) -> Result<Vec<u64>, Error> {
        if self.primes.is_empty() {
            return Ok(DEFAULT_PRIMES.to_vec());
        }
        for &p in &self.primes {
            if !is_prime(p) {
                return Err(Error::InvalidInput(format!("{p} is not prime")));
            }
        }
        Ok(self.primes.clone())
    }

    fn support(&self, engine: Engine) -> SupportSettings {
        let limits = GbLimits { max_pairs: self.groebner_cap, ..GbLimits::default() };
        SupportSettings {
            minors: MinorSettings { budget: self.minor_budget, limits, ..MinorSettings::default() },
            seed: self.seed,
            engine,
            ..SupportSettings::default()
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Symbolic support of an ideal such as "x1*x2,x2*x3".
    Compute {
        ideal: String,
        /// Use the 2-periodic complex directly; works without a weak grading.
        #[arg(long)]
        oracle_only: bool,
    },
    /// Compare the support with V(candidate) at random points.
    Verify {
        ideal: String,
        /// Comma-separated polynomials in a1..an.
        candidate: String,
    },
    /// Print the edge ideal of the n-cycle.
    EdgeCycle { n: usize },
    /// Dump the block of one subset J: Δ_J, cochain matrices, cohomology.
    Diagnose {
        ideal: String,
        /// 1-based generator indices, e.g. "1,3,5"; empty for J = ∅.
        #[arg(long, default_value = "")]
        subset: String,
    },
    /// Weak grading of the subcomplex diagram, or the obstructing cycle.
    WeakGrading { ideal: String },
    /// Enumerate and classify six-generator homogeneous ideals.
    Enumerate6 {
        /// Checkpoint file, one JSON line per finished graph.
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        /// Continue from this checkpoint, skipping recorded graphs.
        #[arg(long)]
        resume: Option<PathBuf>,
        /// Restrict to one graph: 15-character adjacency string or edge list "12,23".
        #[arg(long)]
        graph: Vec<String>,
        /// The fixed ten-graph subset.
        #[arg(long)]
        ci: bool,
        /// Only report graph, ray and pattern counts.
        #[arg(long)]
        dry_run: bool,
        #[arg(long, default_value_t = enumerate6::DEFAULT_CLOSURE_CAP)]
        closure_cap: usize,
    },
}

/// Errors mapped to process exit codes.
enum Failure {
    Core(Error),
    Disagree,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse { .. } | Error::InvalidInput(_) | Error::Inhomogeneous(_) => 2,
        Error::NotGradable(_) => 3,
        Error::ResourceCap(_) => 4,
        Error::Classification(_) => 5,
        _ => 1,
    }
}

fn parse_ideal(s: &str) -> Result<MonomialSeq, Error> {
    s.parse()
}

fn parse_candidate(s: &str) -> Result<Ideal, Error> {
    let polys = s.split(',').map(|p| p.trim().parse::<RatPoly>()).collect::<Result<Vec<_>, _>>()?;
    Ok(Ideal::new(polys))
}

fn parse_subset(s: &str, n: usize) -> Result<Subset, Error> {
    let mut idx = Vec::new();
    for tok in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let j: usize = tok.parse().map_err(|_| Error::InvalidInput(format!("bad index `{tok}`")))?;
        if j == 0 || j > n {
            return Err(Error::InvalidInput(format!("index {j} outside 1..{n}")));
        }
        idx.push(j);
    }
    Ok(Subset::from_indices(&idx))
}

fn print_json(v: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn cmd_compute(cfg: &RunConfig, ideal: &str, oracle_only: bool) -> Result<(), Failure> {
    let f = parse_ideal(ideal)?;
    let engine = if oracle_only { Engine::Chat } else { Engine::Totalization };
    let report = support_symbolic(&f, &cfg.support(engine))?;
    let class = classify(&report.variety);
    if cfg.json {
        let mut v = report.to_json();
        v["class"] = json!(class.to_string());
        print_json(&v);
    } else {
        println!("support: {}", report.variety);
        println!("class: {class}");
        match &report.certification {
            cohsupp::support::Certification::Certified => println!("certification: certified"),
            cohsupp::support::Certification::Randomized { reasons } => {
                println!("certification: randomized");
                for r in reasons {
                    println!("  {r}");
                }
            }
        }
        for c in &report.per_component {
            let status = if c.full_space { "not generically exact" } else { "generically exact" };
            println!("component {} ({} classes, dimension {}): {status}", c.id, c.classes.len(), c.dimension);
        }
    }
    Ok(())
}

fn cmd_verify(cfg: &RunConfig, ideal: &str, candidate: &str) -> Result<(), Failure> {
    let f = parse_ideal(ideal)?;
    let cand = parse_candidate(candidate)?;
    let oracle = Oracle::best(&f);
    let settings = VerifySettings { samples: cfg.samples, primes: cfg.primes()?, seed: cfg.seed };
    let report = support_verify(&oracle, &cand, &settings)?;
    if cfg.json {
        print_json(&serde_json::to_value(&report).map_err(Error::from)?);
    } else {
        for s in &report.stats {
            println!(
                "p = {}: {}/{} candidate points in support, {}/{} uniform points agree",
                s.p, s.on_candidate_agree, s.on_candidate, s.uniform_agree, s.uniform
            );
        }
        match &report.witness {
            None => println!("verdict: agree (failure probability <= 2^{:.1})", report.failure_log2),
            Some(w) => println!(
                "verdict: differ at {} (in support: {}, on candidate: {})",
                w.point, w.in_support, w.on_candidate
            ),
        }
    }
    if report.agree {
        Ok(())
    } else {
        Err(Failure::Disagree)
    }
}

fn cmd_diagnose(cfg: &RunConfig, ideal: &str, subset: &str) -> Result<(), Failure> {
    let f = parse_ideal(ideal)?;
    let j = parse_subset(subset, f.len())?;
    let table = SubsetTable::new(&f);
    let m = table.closure(j);
    let members = table.s_class(j);
    let delta = delta_complex(&table, j);
    let cochain = reduced_cochain(&delta);
    let ranks = cohomology_ranks(&delta, 0);
    if cfg.json {
        let mats: serde_json::Map<String, serde_json::Value> = cochain
            .iter()
            .map(|(d, mat)| (d.to_string(), json!(format::entries(mat))))
            .collect();
        print_json(&json!({
            "J": j.to_string(),
            "M_J": m.to_string(),
            "S_J": members.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
            "ksgn": members.iter().map(|&s| (s.to_string(), table.ksgn(s))).collect::<Vec<_>>(),
            "faces": delta.faces.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
            "cochain": mats,
            "cohomology": ranks,
        }));
        return Ok(());
    }
    println!("J = {j}");
    println!("f_J = {}", table.lcm(j));
    println!("M_J = {m}");
    let labels: Vec<String> = members.iter().map(|s| s.to_string()).collect();
    println!("S_J = {{{}}}", labels.join(", "));
    println!("ksgn:");
    for &s in &members {
        println!("  {s}: {:+}", table.ksgn(s));
    }
    println!("Δ_J = {}", delta.describe());
    for (d, mat) in &cochain {
        println!("C^{d} -> C^{} ({}x{}):", d + 1, mat.rows, mat.cols);
        print!("{}", format::matrix(&format::entries(mat)));
    }
    let blocks = taylor_block(&table, j);
    if !blocks.is_empty() {
        let sizes: Vec<String> = blocks.keys().map(|i| i.to_string()).collect();
        println!("Taylor block sizes with outgoing maps: {}", sizes.join(", "));
    }
    if ranks.is_empty() {
        println!("reduced cohomology: 0");
    } else {
        for (d, r) in &ranks {
            println!("reduced cohomology H^{d}: rank {r}");
        }
    }
    Ok(())
}

fn cmd_weak_grading(cfg: &RunConfig, ideal: &str) -> Result<(), Failure> {
    let f = parse_ideal(ideal)?;
    let table = SubsetTable::new(&f);
    let diag = diagram_from_table(&table);
    match weak_grading(&diag) {
        Ok(g) => {
            if cfg.json {
                let w: serde_json::Map<String, serde_json::Value> =
                    diag.classes.iter().map(|&c| (class_label(c), json!(g.weight(c)))).collect();
                print_json(&json!({ "gradable": true, "weights": w }));
            } else {
                for &c in &diag.classes {
                    println!("{}: {}", class_label(c), g.weight(c).expect("graded"));
                }
            }
            Ok(())
        }
        Err(o) => {
            if cfg.json {
                print_json(&json!({
                    "gradable": false,
                    "cycle": o.cycle.iter().map(|&c| class_label(c)).collect::<Vec<_>>(),
                }));
            }
            Err(Error::NotGradable(o.to_string()).into())
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_enumerate6(
    cfg: &RunConfig,
    checkpoint: Option<PathBuf>,
    resume: Option<PathBuf>,
    graph: &[String],
    ci: bool,
    dry_run: bool,
    closure_cap: usize,
) -> Result<(), Failure> {
    let mut graphs: Vec<GcdGraph> = graph.iter().map(|s| GcdGraph::parse(s)).collect::<Result<_, _>>()?;
    if ci {
        graphs.extend(enumerate6::ci_subset());
    }
    let selection = (!graphs.is_empty()).then_some(graphs);
    if dry_run {
        let pool = rayon_pool(cfg.threads)?;
        let rows = pool.install(|| enumerate6::dry_run(selection.as_deref(), closure_cap))?;
        if cfg.json {
            print_json(&serde_json::to_value(&rows).map_err(Error::from)?);
        } else {
            println!(
                "{} isomorphism classes, {} after filtering",
                enumerate6::GRAPH_CLASSES,
                enumerate6::enumerate_graphs().len()
            );
            println!("{:<17} {:<40} {:>7} {:>6} {:>6} {:>9}", "adjacency", "edges", "cliques", "kept", "rays", "patterns");
            for r in &rows {
                println!(
                    "{:<17} {:<40} {:>7} {:>6} {:>6} {:>9}",
                    r.canonical_adjacency, r.edges, r.cliques, r.pruned_cliques, r.rays, r.patterns
                );
            }
            println!("total patterns: {}", rows.iter().map(|r| r.patterns).sum::<usize>());
        }
        return Ok(());
    }
    let settings = PipelineSettings {
        support: cfg.support(Engine::Totalization),
        closure_cap,
        threads: cfg.threads,
        resume: resume.is_some(),
        checkpoint: resume.or(checkpoint),
        graphs: selection,
    };
    let summary = enumerate6::run_pipeline(&settings)?;
    if cfg.json {
        print_json(&json!({
            "graph_classes": summary.graph_classes,
            "graphs": summary.graphs,
            "processed": summary.records.len(),
            "resumed": summary.resumed,
            "tally": summary.tally,
            "records": summary.records,
        }));
    } else {
        print!("{}", summary.text_table());
    }
    summary.check()?;
    Ok(())
}

fn rayon_pool(threads: usize) -> Result<rayon::ThreadPool, Error> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::InvalidInput(format!("thread pool: {e}")))
}

fn run(cli: Cli) -> Result<(), Failure> {
    let cfg = &cli.config;
    match cli.command {
        Command::Compute { ideal, oracle_only } => cmd_compute(cfg, &ideal, oracle_only),
        Command::Verify { ideal, candidate } => cmd_verify(cfg, &ideal, &candidate),
        Command::EdgeCycle { n } => {
            let f = MonomialSeq::edge_cycle(n)?;
            println!("{}", format::cycle_order(&f));
            Ok(())
        }
        Command::Diagnose { ideal, subset } => cmd_diagnose(cfg, &ideal, &subset),
        Command::WeakGrading { ideal } => cmd_weak_grading(cfg, &ideal),
        Command::Enumerate6 { checkpoint, resume, graph, ci, dry_run, closure_cap } => {
            cmd_enumerate6(cfg, checkpoint, resume, &graph, ci, dry_run, closure_cap)
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Disagree) => ExitCode::from(1),
        Err(Failure::Core(e)) => {
            match &e {
                Error::NotGradable(w) => eprintln!("error: not weakly gradable; obstruction: {w}"),
                e => eprintln!("error: {e}"),
            }
            ExitCode::from(exit_code(&e))
        }
    }
}
