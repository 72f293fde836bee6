use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use bispectral::certify::{certify, Verdict, DEFAULT_CERTIFY_TOL};
use bispectral::enumerate::DEFAULT_SEED;
use bispectral::error::Error;
use bispectral::factors::{find_biregular_factor, maximum_matching, FactorOutcome};
use bispectral::graph::{
    make_complete, make_extremal, parse_graph, serialize_graph, BipartiteGraph, BitSet, Edge,
    ExtremalSpec,
};
use bispectral::packing::{nw_partition_check, pack_spanning_trees, tree_packing_number, NwOutcome};
use bispectral::spectral::{spectral_radius, DEFAULT_TOL};
use bispectral::theorems::{threshold, Theorem, TheoremParams};
use bispectral::trees::{find_degree_tree, leaves_in_y, DegreeDemand, TreeWitness};
use bispectral::verify::{
    verify_lemmas, verify_oracles, verify_theorem, LemmaGrid, OracleGrid, SampleOptions,
    SuiteReport, TheoremReport,
};

/// Spectral conditions for factors and spanning trees in bipartite graphs.
///
/// Graph files: a `bip m n` header, then one `e i j` line per edge joining
/// X-vertex i to Y-vertex j (1-based). `#` starts a comment.
#[derive(Parser)]
#[command(name = "bispectral", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Emit a complete or extremal graph file.
    Gen(GenArgs),
    /// Spectral radius of a graph.
    Rho {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Closed-form spectral threshold of a theorem.
    Threshold {
        #[arg(long, value_parser = parse_theorem)]
        theorem: Theorem,
        #[command(flatten)]
        params: ParamArgs,
    },
    /// (a,b)-biregular factor, or a pair (S,T) showing none exists.
    Factor {
        file: PathBuf,
        #[arg(short = 'a')]
        a: usize,
        #[arg(short = 'b')]
        b: usize,
    },
    /// Spanning tree with degree lower bounds on X, or a violating set.
    Tree(TreeArgs),
    /// Edge-disjoint spanning trees.
    Pack {
        file: PathBuf,
        /// Ask for k trees instead of computing the packing number.
        #[arg(short = 'k')]
        k: Option<usize>,
    },
    /// Maximum matching.
    Matching { file: PathBuf },
    /// Check a theorem on a graph and build the structure it guarantees.
    Certify {
        file: PathBuf,
        #[arg(long, value_parser = parse_theorem)]
        theorem: Theorem,
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value_t = DEFAULT_CERTIFY_TOL)]
        tol: f64,
        /// Write the JSON certificate here (`-` for stdout).
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = 100_000)]
        samples: usize,
        #[command(flatten)]
        params: ParamArgs,
        /// Print the full report as JSON.
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct GenArgs {
    /// K_{m,n}
    #[arg(long, num_args = 2, value_names = ["M", "N"])]
    complete: Option<Vec<usize>>,
    /// K_{m,n} minus the edges of K_{p,q}
    #[arg(long, num_args = 4, value_names = ["M", "N", "P", "Q"])]
    extremal: Option<Vec<usize>>,
}

#[derive(Args)]
struct TreeArgs {
    file: PathBuf,
    #[command(flatten)]
    demand: DemandArgs,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct DemandArgs {
    /// d_T(u) >= K for every X-vertex
    #[arg(long)]
    min_degree: Option<usize>,
    /// every leaf in Y (K = 2)
    #[arg(long)]
    leaves_in_y: bool,
    /// file with one demand per X-vertex
    #[arg(long)]
    demands: Option<PathBuf>,
}

#[derive(Args, Default)]
struct ParamArgs {
    #[arg(short = 'a', long = "a")]
    a: Option<usize>,
    #[arg(short = 'b', long = "b")]
    b: Option<usize>,
    #[arg(short = 'k', long = "k")]
    k: Option<usize>,
    #[arg(short = 'm', long = "m")]
    m: Option<usize>,
    #[arg(short = 'n', long = "n")]
    n: Option<usize>,
    #[arg(long)]
    delta: Option<usize>,
}

impl ParamArgs {
    fn params(&self) -> TheoremParams {
        TheoremParams {
            a: self.a,
            b: self.b,
            k: self.k,
            m: self.m,
            n: self.n,
            delta: self.delta,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    T1,
    T2,
    T3,
    T4,
    Lemmas,
    Oracles,
}

fn parse_theorem(s: &str) -> Result<Theorem, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

enum Failure {
    Input(String),
    Contradiction(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Contradiction(_) => Failure::Contradiction(e.to_string()),
            other => Failure::Input(other.to_string()),
        }
    }
}

type Outcome = Result<String, Failure>;

fn read_graph(path: &Path) -> Result<BipartiteGraph, Failure> {
    let text = read_text(path)?;
    parse_graph(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn read_text(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn vertex_list(prefix: char, set: &BitSet) -> String {
    let names: Vec<String> = set.iter().map(|v| format!("{prefix}{}", v + 1)).collect();
    if names.is_empty() {
        "{}".into()
    } else {
        format!("{{{}}}", names.join(", "))
    }
}

fn edge_lines(edges: &[Edge]) -> String {
    edges.iter().map(|e| format!("e {} {}\n", e.x + 1, e.y + 1)).collect()
}

fn subgraph_file(g: &BipartiteGraph, edges: &[Edge]) -> String {
    format!("bip {} {}\n{}", g.m(), g.n(), edge_lines(edges))
}

fn gen(args: &GenArgs) -> Outcome {
    let g = match (&args.complete, &args.extremal) {
        (Some(v), _) => make_complete(v[0], v[1])?,
        (_, Some(v)) => make_extremal(ExtremalSpec::new(v[0], v[1], v[2], v[3])?)?,
        _ => unreachable!("clap enforces one generator"),
    };
    Ok(serialize_graph(&g))
}

fn rho(file: &Path, tol: f64) -> Outcome {
    let g = read_graph(file)?;
    let est = spectral_radius(&g, tol)?;
    Ok(format!(
        "rho {:.12}\n# residual {:.3e} after {} iterations\n",
        est.value, est.residual, est.iterations
    ))
}

fn factor(file: &Path, a: usize, b: usize) -> Outcome {
    let g = read_graph(file)?;
    Ok(match find_biregular_factor(&g, a, b)? {
        FactorOutcome::Factor(f) => {
            format!("# ({a},{b})-biregular factor\n{}", subgraph_file(&g, &f.edges))
        }
        FactorOutcome::Violation(w) => format!(
            "# no ({a},{b})-biregular factor\n# S = {}\n# T = {}\n# delta(S,T) = {}\n",
            vertex_list('x', &w.s),
            vertex_list('y', &w.t),
            w.delta
        ),
    })
}

fn tree(args: &TreeArgs) -> Outcome {
    let g = read_graph(&args.file)?;
    let d = &args.demand;
    let witness = if d.leaves_in_y {
        leaves_in_y(&g)?
    } else if let Some(k) = d.min_degree {
        find_degree_tree(&g, &DegreeDemand::constant(g.m(), k)?)?
    } else {
        let path = d.demands.as_ref().expect("clap enforces one demand source");
        let f = DegreeDemand::parse(&read_text(path)?, g.m())?;
        find_degree_tree(&g, &f)?
    };
    Ok(match witness {
        TreeWitness::Tree(t) => format!("# spanning tree\n{}", subgraph_file(&g, &t.edges)),
        TreeWitness::Violation { s, deficiency } => format!(
            "# no qualifying spanning tree\n# S = {}\n# |N(S)| falls short of sum f(S) - |S| + 1 by {deficiency}\n",
            vertex_list('x', &s)
        ),
    })
}

fn pack(file: &Path, k: Option<usize>) -> Outcome {
    let g = read_graph(file)?;
    let blocks = |trees: &[bispectral::trees::SpanningTree]| {
        let mut s = String::new();
        for (i, t) in trees.iter().enumerate() {
            let _ = write!(s, "# tree {}\n{}", i + 1, edge_lines(&t.edges));
        }
        s
    };
    let mut out = format!("bip {} {}\n", g.m(), g.n());
    match k {
        None => {
            let (tau, packing) = tree_packing_number(&g);
            let _ = write!(out, "# tau = {tau}\n{}", blocks(&packing.trees));
        }
        Some(k) => match pack_spanning_trees(&g, k) {
            Some(p) => {
                let _ = write!(out, "# {k} edge-disjoint spanning trees\n{}", blocks(&p.trees));
            }
            None => {
                let _ = writeln!(out, "# fewer than {k} edge-disjoint spanning trees");
                if g.vertex_count() <= 12 {
                    if let NwOutcome::Violated(w) = nw_partition_check(&g, k)? {
                        let _ = writeln!(
                            out,
                            "# partition into {} parts with {} crossing edges < {}",
                            w.t,
                            w.crossing,
                            k * (w.t - 1)
                        );
                        for part in &w.parts {
                            let names: Vec<String> = part
                                .iter()
                                .map(|&v| {
                                    if v < g.m() {
                                        format!("x{}", v + 1)
                                    } else {
                                        format!("y{}", v - g.m() + 1)
                                    }
                                })
                                .collect();
                            let _ = writeln!(out, "#   {{{}}}", names.join(", "));
                        }
                    }
                }
            }
        },
    }
    Ok(out)
}

fn matching(file: &Path) -> Outcome {
    let g = read_graph(file)?;
    let m = maximum_matching(&g);
    Ok(format!("# matching number {}\n{}", m.len(), subgraph_file(&g, &m)))
}

fn certify_cmd(
    file: &Path,
    theorem: Theorem,
    params: &ParamArgs,
    tol: f64,
    json: Option<&Path>,
) -> Outcome {
    let g = read_graph(file)?;
    let cert = certify(&g, theorem, &params.params(), tol)?;
    let mut out = cert.summary();
    out.push('\n');
    match json {
        Some(p) if p == Path::new("-") => {
            out.push_str(&cert.to_json());
            out.push('\n');
        }
        Some(p) => std::fs::write(p, cert.to_json() + "\n")
            .map_err(|e| Failure::Input(format!("{}: {e}", p.display())))?,
        None => {}
    }
    if cert.verdict == Verdict::Contradiction {
        return Err(Failure::Contradiction(out));
    }
    Ok(out)
}

fn theorem_defaults(suite: Suite, p: &ParamArgs) -> (Theorem, TheoremParams) {
    let or = |v: Option<usize>, d: usize| Some(v.unwrap_or(d));
    match suite {
        Suite::T1 => (
            Theorem::T1,
            TheoremParams {
                a: or(p.a, 1),
                b: or(p.b, 2),
                m: or(p.m, 6),
                n: or(p.n, 3),
                ..Default::default()
            },
        ),
        Suite::T2 => (
            Theorem::T2,
            TheoremParams {
                k: or(p.k, 3),
                m: or(p.m, 4),
                n: or(p.n, 9),
                ..Default::default()
            },
        ),
        Suite::T3 => (
            Theorem::T3,
            TheoremParams {
                m: or(p.m, 3),
                n: or(p.n, 4),
                ..Default::default()
            },
        ),
        _ => (
            Theorem::T4,
            TheoremParams {
                k: or(p.k, 2),
                n: or(p.n, 6),
                m: p.m,
                ..Default::default()
            },
        ),
    }
}

fn theorem_report_text(r: &TheoremReport) -> String {
    let t = &r.tally;
    let mut s = format!(
        "suite {} ({})\ngraphs {}\nhypothesis-fail {}\nspectral-below {}\nextremal {}\nconstructed {}\ncontradictions {}\noracle disagreements {} of {}\n",
        r.theorem, r.mode, t.graphs, t.hypothesis_fail, t.spectral_below, t.extremal,
        t.constructed, t.contradictions, t.oracle_disagreements, t.oracle_checked
    );
    if let Some(seed) = r.seed {
        let _ = writeln!(s, "seed {seed}");
    }
    if let Some(e) = &r.extremal_check {
        let _ = writeln!(
            s,
            "extremal graph: rho {:.12}, threshold {:.12}, {}, {} -> {}",
            e.rho,
            e.threshold,
            e.evidence,
            e.verdict.as_str(),
            if e.passed { "ok" } else { "FAILED" }
        );
    }
    for ex in &t.examples {
        let _ = writeln!(s, "counterexample:\n{ex}");
    }
    s
}

fn suite_report_text(r: &SuiteReport) -> String {
    let mut s = format!("suite {}\n", r.suite);
    for c in &r.checks {
        let _ = writeln!(
            s,
            "[{}] {} {}/{}{}",
            if c.passed() { "ok" } else { "FAIL" },
            c.name,
            c.points - c.failures,
            c.points,
            c.note.as_ref().map_or(String::new(), |n| format!(" ({n})"))
        );
        for ex in &c.examples {
            let _ = writeln!(s, "  {}", ex.replace('\n', "\n  "));
        }
    }
    s
}

fn verify_cmd(suite: Suite, seed: u64, samples: usize, params: &ParamArgs, json: bool) -> Outcome {
    let (text, passed) = match suite {
        Suite::Lemmas => {
            let r = verify_lemmas(LemmaGrid {
                seed,
                fuzz_samples: samples,
                ..LemmaGrid::default()
            })?;
            let text = if json { to_json(&r) } else { suite_report_text(&r) };
            (text, r.passed())
        }
        Suite::Oracles => {
            let r = verify_oracles(OracleGrid::default())?;
            let text = if json { to_json(&r) } else { suite_report_text(&r) };
            (text, r.passed())
        }
        _ => {
            let (theorem, p) = theorem_defaults(suite, params);
            let r = verify_theorem(theorem, &p, SampleOptions { seed, samples })?;
            let text = if json { to_json(&r) } else { theorem_report_text(&r) };
            (text, r.passed())
        }
    };
    if passed {
        Ok(text)
    } else {
        Err(Failure::Contradiction(text))
    }
}

fn to_json<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("report serialises") + "\n"
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Gen(args) => gen(&args),
        Command::Rho { file, tol } => rho(&file, tol),
        Command::Threshold { theorem, params } => {
            let value = threshold(theorem, &params.params())?;
            Ok(format!("{}\n", significant(value, 12)))
        }
        Command::Factor { file, a, b } => factor(&file, a, b),
        Command::Tree(args) => tree(&args),
        Command::Pack { file, k } => pack(&file, k),
        Command::Matching { file } => matching(&file),
        Command::Certify {
            file,
            theorem,
            params,
            tol,
            json,
        } => certify_cmd(&file, theorem, &params, tol, json.as_deref()),
        Command::Verify {
            suite,
            seed,
            samples,
            params,
            json,
        } => verify_cmd(suite, seed, samples, &params, json),
    }
}

/// `v` rounded to `digits` significant digits, without exponent notation.
fn significant(v: f64, digits: usize) -> String {
    if v == 0.0 || !v.is_finite() {
        return v.to_string();
    }
    let magnitude = v.abs().log10().floor() as i64;
    let decimals = (digits as i64 - 1 - magnitude).max(0) as usize;
    format!("{v:.decimals$}")
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    // sweeps tally stalls themselves; per-graph warnings would drown the report
    let level = if matches!(cli.command, Command::Verify { .. }) { "error" } else { "warn" };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Contradiction(msg)) => {
            print!("{msg}");
            eprintln!("error: internal contradiction");
            ExitCode::from(3)
        }
    }
}
