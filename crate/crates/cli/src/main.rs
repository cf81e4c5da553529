//! `kwc`: reproducible command-line experiments over the encoding engine,
//! the exact oracles, and the bound evaluators. All output is CSV on stdout;
//! witnesses of violated checks go to stderr.
//!
//! Exit codes: 0 success, 1 checked invariant or bound violated, 2 input
//! error, 3 resource cap exceeded.

mod verify;

use clap::{Args, Parser, Subcommand};
use kw_core::bounds::{self, format_sig};
use kw_core::error::ErrorClass;
use kw_core::{arithmetic, c4, kw, oracle, spectral};
use kw_core::{Graph, VertexSet};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Debug)]
enum CliError {
    Input(String),
    Resource(String),
    Violation(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Violation(_) => 1,
            CliError::Input(_) => 2,
            CliError::Resource(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Input(m) | CliError::Resource(m) | CliError::Violation(m) => m,
        }
    }
}

fn classify<E: std::fmt::Display>(class: ErrorClass, err: E) -> CliError {
    match class {
        ErrorClass::Input => CliError::Input(err.to_string()),
        ErrorClass::Resource => CliError::Resource(err.to_string()),
    }
}

macro_rules! impl_from_core_error {
    ($($ty:ty),+) => {$(
        impl From<$ty> for CliError {
            fn from(err: $ty) -> Self {
                classify(err.class(), err)
            }
        }
    )+};
}

impl_from_core_error!(
    kw_core::GraphError,
    kw_core::KwError,
    kw_core::OracleError,
    kw_core::bounds::BoundsError,
    kw_core::spectral::SpectralError,
    kw_core::arithmetic::ArithmeticError,
    kw_core::c4::C4Error
);

#[derive(Parser)]
#[command(
    name = "kwc",
    version,
    about = "Independent-set encoding toolkit: exact oracles, container bounds, and seeded experiments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact independent-set counts
    Is {
        #[command(subcommand)]
        cmd: IsCmd,
    },
    /// Encoding traces and container families
    Kw {
        #[command(subcommand)]
        cmd: KwCmd,
    },
    /// Closed-form bound evaluators (log base 2)
    Bounds {
        #[command(subcommand)]
        cmd: BoundsCmd,
    },
    /// Spectral checks for regular graphs
    Spectral {
        #[command(subcommand)]
        cmd: SpectralCmd,
    },
    /// Sum-free subsets of [n]
    Sumfree {
        #[command(subcommand)]
        cmd: SumfreeCmd,
    },
    /// C4-free graph counting pipeline
    C4 {
        #[command(subcommand)]
        cmd: C4Cmd,
    },
    /// Random delta-Roth experiments
    Roth {
        #[command(subcommand)]
        cmd: RothCmd,
    },
    /// Minimum 3-AP count over dense subsets of [n]
    Varnavides {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        delta: f64,
    },
    /// Run every cross-module invariant over the built-in catalog
    VerifySuite(verify::VerifySuiteArgs),
}

#[derive(Subcommand)]
enum IsCmd {
    /// Count independent sets by size
    Count(GraphArg),
    /// Print the independence number
    Alpha(GraphArg),
}

#[derive(Args)]
struct GraphArg {
    /// Edge-list file: header `n m`, then m lines `u v`
    #[arg(long)]
    graph: PathBuf,
}

#[derive(Subcommand)]
enum KwCmd {
    /// Run the encoding on an independent set and print the trace
    Trace {
        #[arg(long)]
        graph: PathBuf,
        /// Comma-separated vertex list, e.g. 0,2
        #[arg(long)]
        set: String,
        #[arg(long)]
        q: usize,
    },
    /// Enumerate the full container family for the given q
    Containers {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        q: usize,
        /// Node cap for the search tree
        #[arg(long, default_value_t = 10_000_000)]
        cap: usize,
    },
    /// Verify the density hypotheses and the bounds they imply
    Verify {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        q: usize,
        #[arg(long)]
        r: f64,
        /// Edge-density parameter for the counting hypothesis
        #[arg(long)]
        beta: Option<f64>,
        /// Average-degree parameter for the container hypothesis
        #[arg(long, value_name = "D")]
        avg_degree: Option<f64>,
        #[arg(long, default_value_t = 10_000_000)]
        cap: usize,
    },
}

#[derive(Subcommand)]
enum BoundsCmd {
    /// Trivial sandwich implied by the independence number
    Sandwich {
        #[arg(long)]
        alpha: usize,
        #[arg(long)]
        n: usize,
    },
    /// Regular-graph count bound exponent
    Sapozhenko {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        d: u64,
        #[arg(long, default_value_t = 1.0)]
        c: f64,
    },
    /// Tight regular-graph bound via complete bipartite blocks
    KahnZhao {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        d: u64,
    },
    /// C n^{3/2} exponent for labeled C4-free graphs
    C4 {
        #[arg(long)]
        n: u64,
        #[arg(long, default_value_t = 1.0)]
        c: f64,
    },
    /// Container bound on m-subsets of [n] with no 3-term AP
    ApFree {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        epsilon: f64,
    },
    /// Failure-probability bound for the random delta-Roth experiment
    RothFailure {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        m: u64,
        #[arg(long)]
        delta: f64,
        /// Defaults to delta / 6
        #[arg(long)]
        epsilon: Option<f64>,
    },
    /// The counting bound C(n,q) C(R, m-q)
    Container {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        q: usize,
        #[arg(long)]
        r: f64,
        #[arg(long)]
        m: usize,
    },
    /// log2 of a generalized binomial coefficient
    Binomial {
        #[arg(long)]
        a: f64,
        #[arg(long)]
        b: usize,
    },
}

#[derive(Subcommand)]
enum SpectralCmd {
    /// Print lambda, the Hoffman bound, alpha, and the worst subset slack
    Check(GraphArg),
}

#[derive(Subcommand)]
enum SumfreeCmd {
    /// Exact sum-free subset counts of [n]
    Count {
        #[arg(long)]
        n: u64,
    },
    /// Emit the shift graph for the given shift set as an edge list
    Gs {
        #[arg(long)]
        n: u64,
        /// Comma-separated shifts, e.g. 1,3
        #[arg(long)]
        s: String,
    },
}

#[derive(Subcommand)]
enum C4Cmd {
    /// Exact number of labeled C4-free graphs on n vertices
    Count {
        #[arg(long)]
        n: usize,
    },
    /// Count C4-free degree-d extensions of a C4-free graph
    Extensions {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        d: usize,
    },
    /// Assembled growth bound and its implied constant
    Bound {
        #[arg(long)]
        n: u64,
    },
}

#[derive(Subcommand)]
enum RothCmd {
    /// Estimate the probability that a random m-subset of [n] is delta-Roth
    Experiment {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        m: u64,
        #[arg(long)]
        delta: f64,
        #[arg(long)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Decide whether a concrete set is delta-Roth
    Check {
        /// Comma-separated positive integers, e.g. 1,3,5
        #[arg(long)]
        set: String,
        #[arg(long)]
        delta: f64,
    },
}

fn load_graph(path: &PathBuf) -> Result<Graph, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    Ok(Graph::parse_edge_list(&text)?)
}

fn parse_list<T: std::str::FromStr>(s: &str, what: &str) -> Result<Vec<T>, CliError> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|tok| {
            tok.trim()
                .parse::<T>()
                .map_err(|_| CliError::Input(format!("bad {what} entry `{tok}`")))
        })
        .collect()
}

fn vertex_set(g: &Graph, s: &str) -> Result<VertexSet, CliError> {
    let vertices: Vec<usize> = parse_list(s, "vertex")?;
    for &v in &vertices {
        if v >= g.n() {
            return Err(CliError::Input(format!(
                "vertex {v} out of range (n = {})",
                g.n()
            )));
        }
    }
    Ok(VertexSet::from_members(g.n(), vertices))
}

fn bound_csv(bound: &bounds::LogBound) -> String {
    format!("provenance,params,log2_value\n{}\n", bound.csv_row())
}

fn run(cli: Cli) -> Result<String, CliError> {
    match cli.command {
        Command::Is { cmd } => match cmd {
            IsCmd::Count(arg) => {
                let g = load_graph(&arg.graph)?;
                Ok(oracle::count_independent_sets(&g)?.to_csv())
            }
            IsCmd::Alpha(arg) => {
                let g = load_graph(&arg.graph)?;
                Ok(format!("alpha\n{}\n", oracle::independence_number(&g)?))
            }
        },
        Command::Kw { cmd } => match cmd {
            KwCmd::Trace { graph, set, q } => {
                let g = load_graph(&graph)?;
                let input = vertex_set(&g, &set)?;
                let trace = kw::kw_run(&g, &input, q)?;
                Ok(format!("{}\n", trace.to_line()))
            }
            KwCmd::Containers { graph, q, cap } => {
                let g = load_graph(&graph)?;
                let family = kw::enumerate_containers(&g, q, cap)?;
                let mut out = String::from("fingerprint; container\n");
                for (s, f) in family.entries() {
                    out.push_str(&format!("{s}; {f}\n"));
                }
                Ok(out)
            }
            KwCmd::Verify {
                graph,
                q,
                r,
                beta,
                avg_degree,
                cap,
            } => run_kw_verify(&load_graph(&graph)?, q, r, beta, avg_degree, cap),
        },
        Command::Bounds { cmd } => match cmd {
            BoundsCmd::Sandwich { alpha, n } => {
                if alpha > n {
                    return Err(CliError::Input("alpha must be at most n".into()));
                }
                let (lo, hi) = bounds::sandwich_bounds(alpha, n);
                Ok(format!(
                    "provenance,params,log2_value\nsandwich-lower,alpha={alpha} n={n},{}\nsandwich-upper,alpha={alpha} n={n},{}\n",
                    format_sig(lo, 12),
                    format_sig(hi, 12)
                ))
            }
            BoundsCmd::Sapozhenko { n, d, c } => {
                Ok(bound_csv(&bounds::sapozhenko_bound(n, d, c)?))
            }
            BoundsCmd::KahnZhao { n, d } => Ok(bound_csv(&bounds::kahn_zhao_bound(n, d)?)),
            BoundsCmd::C4 { n, c } => Ok(bound_csv(&bounds::c4_count_bound(n, c))),
            BoundsCmd::ApFree { n, m, epsilon } => {
                Ok(bound_csv(&bounds::three_ap_free_count_bound(n, m, epsilon)?))
            }
            BoundsCmd::RothFailure { n, m, delta, epsilon } => {
                let eps = epsilon.unwrap_or(delta / 6.0);
                let b = bounds::delta_roth_failure_bound(n, m, delta, eps);
                Ok(format!(
                    "provenance,params,log2_value\n{}\n{}\n",
                    b.chain.csv_row(),
                    b.simplified.csv_row()
                ))
            }
            BoundsCmd::Container { n, q, r, m } => {
                Ok(bound_csv(&kw::container_count_bound(n, q, r, m)?))
            }
            BoundsCmd::Binomial { a, b } => Ok(format!(
                "provenance,params,log2_value\nbinomial,a={} b={b},{}\n",
                format_sig(a, 12),
                format_sig(bounds::log2_binomial(a, b), 12)
            )),
        },
        Command::Spectral { cmd } => match cmd {
            SpectralCmd::Check(arg) => {
                let g = load_graph(&arg.graph)?;
                let profile = spectral::SpectralProfile::of(&g)?;
                let hoffman =
                    spectral::hoffman_bound(profile.n, profile.degree, profile.lambda_min)?;
                let alpha = oracle::independence_number(&g)?;
                let worst = spectral::alon_chung_worst_slack(&g)?;
                Ok(format!(
                    "lambda,hoffman,alpha,worst_slack\n{},{},{alpha},{}\n",
                    format_sig(profile.lambda_min, 12),
                    format_sig(hoffman, 12),
                    format_sig(worst, 12)
                ))
            }
        },
        Command::Sumfree { cmd } => match cmd {
            SumfreeCmd::Count { n } => Ok(oracle::count_sum_free(n)?.to_csv()),
            SumfreeCmd::Gs { n, s } => {
                let shifts: Vec<u64> = parse_list(&s, "shift")?;
                Ok(arithmetic::shift_graph(n, &shifts)?.to_edge_list())
            }
        },
        Command::C4 { cmd } => match cmd {
            C4Cmd::Count { n } => Ok(format!(
                "n,count\n{n},{}\n",
                oracle::count_c4_free_graphs(n)?
            )),
            C4Cmd::Extensions { graph, d } => {
                let g = load_graph(&graph)?;
                Ok(format!("d,count\n{d},{}\n", c4::count_c4_extensions(&g, d)?))
            }
            C4Cmd::Bound { n } => Ok(bound_csv(&c4::c4_graph_count_bound(n)?)),
        },
        Command::Roth { cmd } => match cmd {
            RothCmd::Experiment {
                n,
                m,
                delta,
                trials,
                seed,
            } => {
                let res = arithmetic::roth_random_experiment(n, m, delta, trials, seed)?;
                Ok(format!(
                    "n,m,delta,trials,seed,successes,rate\n{n},{m},{},{trials},{seed},{},{}\n",
                    format_sig(delta, 12),
                    res.successes,
                    format_sig(res.rate(), 12)
                ))
            }
            RothCmd::Check { set, delta } => {
                let vals: Vec<u64> = parse_list(&set, "set")?;
                let verdict = arithmetic::is_delta_roth(&vals, delta)?;
                let joined = vals
                    .iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join(";");
                Ok(format!(
                    "set,delta,delta_roth\n{joined},{},{verdict}\n",
                    format_sig(delta, 12)
                ))
            }
        },
        Command::Varnavides { n, delta } => {
            let (min_count, beta) = arithmetic::varnavides_profile(n, delta)?;
            Ok(format!(
                "n,delta,min_count,beta_estimate\n{n},{},{min_count},{}\n",
                format_sig(delta, 12),
                format_sig(beta, 12)
            ))
        }
        Command::VerifySuite(args) => verify::run_suite(&args),
    }
}

/// Checks the requested density hypotheses on a concrete graph and, where
/// they hold, the bounds they imply, against the exact oracle.
fn run_kw_verify(
    g: &Graph,
    q: usize,
    r: f64,
    beta: Option<f64>,
    avg_degree: Option<f64>,
    cap: usize,
) -> Result<String, CliError> {
    let n = g.n();
    let mut out = String::from("check,result\n");
    let mut violation: Option<String> = None;

    if let Some(beta) = beta {
        let density = kw::verify_density_beta(g, r, beta)?;
        out.push_str(&format!("density-beta,{density}\n"));
        let params = kw::DensityParams {
            q,
            r,
            beta,
            avg_degree: 0.0,
        };
        let hypothesis = params.count_hypothesis_holds(n);
        out.push_str(&format!("count-hypothesis,{hypothesis}\n"));
        if density && hypothesis {
            let table = oracle::count_independent_sets(g)?;
            let mut sound = true;
            for m in q..=table.max_size() {
                let bound = kw::container_count_bound(n as u64, q, r, m)?;
                let exact = bounds::log2_biguint(&table.count(m));
                if exact > bound.log2_value + 1e-9 {
                    sound = false;
                    violation = Some(format!(
                        "count bound fails at m={m}: log2 i(G,m) = {} > {}",
                        format_sig(exact, 12),
                        format_sig(bound.log2_value, 12)
                    ));
                }
            }
            out.push_str(&format!("count-bound-sound,{sound}\n"));
        }
    }

    if let Some(d) = avg_degree {
        let density = kw::verify_density_avg_degree(g, r, d)?;
        out.push_str(&format!("density-avg-degree,{density}\n"));
        let params = kw::DensityParams {
            q,
            r,
            beta: 0.0,
            avg_degree: d,
        };
        let hypothesis = params.container_hypothesis_holds(n);
        out.push_str(&format!("container-hypothesis,{hypothesis}\n"));
        if density && hypothesis && q >= 1 {
            let family = kw::enumerate_containers(g, q, cap)?;
            let max_size = family.max_container_size();
            let size_ok = max_size as f64 <= r;
            if !size_ok {
                violation = Some(format!(
                    "container of size {max_size} exceeds R = {}",
                    format_sig(r, 12)
                ));
            }
            let mut sandwich_ok = true;
            for mask in oracle::independent_set_masks(g)? {
                let members = VertexSet::from_members(
                    n,
                    (0..n).filter(|v| mask & (1 << v) != 0),
                );
                if members.len() < q {
                    continue;
                }
                let fp = kw::fingerprint(g, &members, q)?;
                let Some(container) = family.container_for(&fp) else {
                    sandwich_ok = false;
                    violation = Some(format!("fingerprint {fp} missing from the family"));
                    continue;
                };
                if !fp.is_subset_of(&members)
                    || !members.is_subset_of(&container.union(&fp))
                {
                    sandwich_ok = false;
                    violation = Some(format!("sandwich fails for independent set {members}"));
                }
            }
            out.push_str(&format!("container-size-bound,{size_ok}\n"));
            out.push_str(&format!("container-sandwich,{sandwich_ok}\n"));
        }
    }

    if let Some(witness) = violation {
        eprintln!("violation: {witness}");
        print!("{out}");
        return Err(CliError::Violation(witness));
    }
    Ok(out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(output) => {
            print!("{output}");
            ExitCode::SUCCESS
        }
        Err(err) => {
            if !matches!(err, CliError::Violation(_)) {
                eprintln!("error: {}", err.message());
            }
            ExitCode::from(err.exit_code())
        }
    }
}
